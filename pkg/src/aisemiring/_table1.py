"""Multiplication tables of the 112 four-element ai-semirings S_(4,k),
276 <= k <= 387, over the shared additive order (two minimal elements 3 and 4,
coatom 1, top 2). Rows are left operands; entries are 1-based labels."""

MULTIPLICATION = {
    276: "1111 1111 1111 1111",
    277: "1111 1111 1111 1113",
    278: "1111 1111 1111 1114",
    279: "1111 1111 1113 1114",
    280: "1114 1114 1114 1114",
    281: "1111 1111 1111 1134",
    282: "1111 1111 1113 1134",
    283: "1111 1111 1131 1114",
    284: "1114 1114 1134 1114",
    285: "1111 1111 1134 1143",
    286: "1134 1134 1134 1134",
    287: "1111 1211 1111 1111",
    288: "1111 1211 1111 1113",
    289: "1111 1211 1111 1114",
    290: "1111 1211 1113 1114",
    291: "1114 1214 1114 1114",
    292: "1111 1211 1111 1134",
    293: "1111 1211 1113 1134",
    294: "1111 1211 1131 1114",
    295: "1114 1214 1134 1114",
    296: "1111 1211 1134 1143",
    297: "1134 1234 1134 1134",
    298: "1211 1211 1211 1211",
    299: "1211 1211 1211 1213",
    300: "1211 1211 1211 1214",
    301: "1211 1211 1213 1214",
    302: "1214 1214 1214 1214",
    303: "1211 1211 1211 1234",
    304: "1211 1211 1213 1234",
    305: "1211 1211 1231 1214",
    306: "1214 1214 1234 1214",
    307: "1211 1211 1234 1243",
    308: "1234 1234 1234 1234",
    309: "1111 1111 1111 4444",
    310: "1114 1114 1114 4444",
    311: "1111 1111 1131 4444",
    312: "1114 1114 1134 4444",
    313: "1111 1211 1111 4444",
    314: "1114 1214 1114 4444",
    315: "1111 1211 1131 4444",
    316: "1114 1214 1134 4444",
    317: "1214 1214 1214 4444",
    318: "1214 1214 1234 4444",
    319: "1111 1111 3333 4444",
    320: "1111 1211 3333 4444",
    321: "1111 2222 1111 1111",
    322: "1111 2222 1111 1113",
    323: "1111 2222 1111 1114",
    324: "1111 2222 1113 1114",
    325: "1111 2222 1111 1134",
    326: "1111 2222 1113 1134",
    327: "1111 2222 1131 1114",
    328: "1111 2222 1134 1143",
    329: "1211 2222 1211 1211",
    330: "1211 2222 1211 1213",
    331: "1211 2222 1211 1214",
    332: "1211 2222 1213 1214",
    333: "1214 2222 1214 1214",
    334: "1211 2222 1211 1234",
    335: "1211 2222 1213 1234",
    336: "1211 2222 1231 1214",
    337: "1214 2222 1234 1214",
    338: "1211 2222 1234 1243",
    339: "1234 2222 1234 1234",
    340: "1111 2222 1111 4444",
    341: "1114 2224 1114 4444",
    342: "1111 2222 1131 4444",
    343: "1114 2224 1134 4444",
    344: "1211 2222 1211 4244",
    345: "1214 2222 1214 4244",
    346: "1214 2224 1214 4244",
    347: "1211 2222 1231 4244",
    348: "1214 2222 1234 4244",
    349: "1214 2224 1234 4244",
    350: "1214 2222 1214 4444",
    351: "1214 2224 1214 4444",
    352: "1214 2222 1234 4444",
    353: "1214 2224 1234 4444",
    354: "1111 2222 3333 4444",
    355: "1211 2222 3233 4244",
    356: "2212 2222 1231 2212",
    357: "2212 2222 1234 2212",
    358: "2212 2222 1231 2242",
    359: "2212 2222 1234 2242",
    360: "2221 2222 1231 2224",
    361: "2222 2222 1231 2222",
    362: "2222 2222 1234 2222",
    363: "2224 2224 1234 2224",
    364: "2212 2222 2232 2212",
    365: "2212 2222 2232 2242",
    366: "2222 2222 2212 2221",
    367: "2222 2222 2212 2222",
    368: "2222 2222 2212 2224",
    369: "2222 2222 2221 2212",
    370: "2222 2222 2222 2212",
    371: "2222 2222 2222 2222",
    372: "2222 2222 2222 2223",
    373: "2222 2222 2222 2224",
    374: "2224 2224 2224 2224",
    375: "2222 2222 2232 2224",
    376: "2212 2222 2232 4444",
    377: "2222 2222 2222 4444",
    378: "2224 2224 2224 4444",
    379: "3133 1231 3333 3133",
    380: "3333 1231 3333 3333",
    381: "3233 2222 3233 3233",
    382: "3333 2222 3333 3333",
    383: "3133 3233 3333 3133",
    384: "3233 3233 3233 3233",
    385: "3333 3133 3333 3333",
    386: "3333 3233 3333 3333",
    387: "3333 3333 3333 3333",
}
