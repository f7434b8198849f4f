"""Finite identity bases for sixteen of the four-element algebras.

Each basis is a list of schemes tagged ``"<algebra>.<i>"`` in display order.
``DERIVED_RULES`` holds consequences used as rewrite rules by the derivation
corpus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import Identity, IdentityScheme, expand_scheme, parse_identity

_BASES: dict[int, list[str]] = {
    277: [
        "xy = x^2 + y^2",
        "x + x^2 = x + x^3",
        "x1x2x3 = x1x2x3 + y1y2",
    ],
    372: [
        "xy = x^2 + y^2",
        "x1x2x3 = x1x2x3 + y",
        "x + xy = x + xy + y",
    ],
    281: [
        "x^2y = xy",
        "x^2y^2 = x^2 + y^2",
        "x + y^2 = x + xy^2",
        "x + yz = x + yz + yx",
        "x^2 + yz = x^2 + yz + xy",
    ],
    357: [
        "xyz = yxz",
        "xy = xy + y",
        "x^2y + z = x^2y + z + xz",
        "x1x2 + x2x3 + x4x5 = x1x2 + x2x3 + x4x5 + x4; optional: x1",
        "x1x2 + x2x3 + x1x3 = x1x2 + x2x3 + x1x3 + x1x2x3",
        "x1x3 + x2x3 + x1x2x4 = x1x3 + x2x3 + x1x2x4 + x1x2x3",
        "x1x2 + x2x3 + x4x5x6x7 = x1x2 + x2x3 + x4x5x6x7 + x5x6; optional: x1, x4, x7",
        "x1x2 + x2x3 + x4x5^2x6 + x7x8x9 = x1x2 + x2x3 + x4x5^2x6 + x7x8x9 + x5x8;"
        " optional: x1, x4, x6, x7, x9",
    ],
    362: [
        "x^2y = xy",
        "x^2y^2 = x^2 + y^2",
        "x + yz = yx + yz",
    ],
    285: [
        "x^3y = xy",
        "xy = yx",
        "xy^2 = xy^2 + x^3",
        "x + y + z = x + y + z + xyz",
    ],
    379: [
        "xy = yx",
        "xy = x^2y + xy^2",
        "xy = xy + xyz",
        "x + yz = x + yz + xz",
    ],
    380: [
        "xyz = yxz",
        "x^2y = xy",
        "x1 + x2x3 = x1 + x2x3 + x1x4 + x5x1",
    ],
    385: [
        "xy = yx",
        "x^2 = x^2 + xy",
        "xy = xy + x1x2x3",
        "x1x2x3 + y1 = x1x2x3 + y1 + y1y2",
    ],
    360: [
        "xyz = xyz + y; optional: x, z",
        "xyz = xy + yz + xz",
        "xy + yz = xy + yz + xz",
    ],
    363: [
        "xy = xy + y",
        "xyz = xz + yz",
        "xy + yz = xy + yz + xz",
    ],
    366: [
        "xy = yx",
        "xy = xy + x",
        "xy = xy + x^2",
        "x1x2x3 = x1x2x3 + y",
        "xy + yz = xy + yz + xz",
    ],
    368: [
        "xy = yx",
        "xy = xy + x",
        "xy = xy + x^2",
        "xy + yz = xy + yz + xz",
        "xy + yy1y2 = xyy1y2",
        "x1x2x3 + y1y2y3 = x1x2x3y1y2y3",
    ],
    369: [
        "xy = yx",
        "x^2 = x^2 + y",
        "xy = xy + x",
        "x1x2x3 = x1x2x3 + x4",
        "x1x2 + x2x3 + x3x4 = x1x2 + x2x3 + x3x4 + x1x4",
    ],
    370: [
        "x^2 = x^2 + y",
        "xy = xy + x",
        "xy = xy + y",
        "xy + yz = xyz",
        "x1x2x3 = x1x2x3 + x4",
        "x1x2 + x3x4 = x1x2 + x3x4 + x1x4",
    ],
    375: [
        "xy = yx",
        "xy = xy + x",
        "xy = xy + x^2",
        "xyz = xy + yz + xz",
        "xy + yz = xy + yz + xz",
    ],
}

BASIS_HOSTS = tuple(sorted(_BASES))

# Consequences of the bases, used as named rewrite rules.
DERIVED_RULES: dict[str, str] = {
    "281.swap": "xyz = yxz",
    "362.swap": "xyz = yxz",
    "372.comm": "xy = yx",
    "379.cube": "x^3 = x^2",
}


@dataclass(frozen=True)
class BasisEntry:
    tag: str
    host: int
    scheme: IdentityScheme

    def instances(self) -> list[Identity]:
        return expand_scheme(self.scheme)


def basis(host: int) -> list[BasisEntry]:
    try:
        lines = _BASES[int(host)]
    except KeyError:
        raise KeyError(f"no basis recorded for S_(4,{host}); known: {list(BASIS_HOSTS)}") from None
    return [BasisEntry(f"{host}.{i}", int(host), IdentityScheme.parse(s)) for i, s in enumerate(lines, 1)]


def all_bases() -> dict[int, list[BasisEntry]]:
    return {h: basis(h) for h in BASIS_HOSTS}


def rule(tag: str) -> Identity:
    """Look up a basis member (plain, no optional variables) or a derived rule."""
    if tag in DERIVED_RULES:
        return parse_identity(DERIVED_RULES[tag])
    host, _, idx = tag.partition(".")
    try:
        entry = basis(int(host))[int(idx) - 1]
    except (ValueError, IndexError):
        raise KeyError(f"unknown rule tag {tag!r}") from None
    if entry.scheme.optional:
        raise KeyError(f"rule {tag!r} has optional variables; name a concrete instance")
    return Identity(entry.scheme.lhs, entry.scheme.rhs)


def rule_tags() -> list[str]:
    tags = [e.tag for entries in all_bases().values() for e in entries if not e.scheme.optional]
    return tags + list(DERIVED_RULES)
