"""Compare the numba kernels with their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is run once to compile (numba) and then timed; outputs of the
two backends are checked for equality.
"""

import argparse
import time

import numpy as np

from aisemiring import kernels
from aisemiring._jit import HAVE_NUMBA
from aisemiring.bases import basis
from aisemiring.catalog import figure1_addition, full_registry
from aisemiring.enumeration import join_endomorphisms
from aisemiring.satisfaction import _encode, bounded_words, join_rows, variables_for
from aisemiring.sweeps import PairFamily


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases(registry):
    S = registry["S_(4,357)"]
    variables = variables_for(3)
    index = {x: i for i, x in enumerate(variables)}
    words = bounded_words(3, 4)
    flat, off = kernels.encode_words([tuple(index[x] for x in w.letters) for w in words])
    yield "word_table", "120 words, 3 vars", (S.mul, flat, off, 4, 3), kernels.word_table_numba, kernels.word_table_numpy

    family = PairFamily(3, 4, 3)
    wv = kernels.word_table_numpy(S.mul, flat, off, 4, 3)
    tv = join_rows(S.add, wv, family.members)
    yield (
        "inclusion_matrix",
        f"{len(family):,} terms x {len(words)} words",
        (S.add, tv, wv),
        kernels.inclusion_matrix_numba,
        kernels.inclusion_matrix_numpy,
    )

    # a nine-variable basis member that holds: every assignment is visited
    ident = next(i for e in basis(357) if e.tag == "357.8" for i in e.instances())
    vs = sorted(ident.variables)
    ix = {x: i for i, x in enumerate(vs)}
    lf, lo = _encode(ident.lhs, ix)
    rf, ro = _encode(ident.rhs, ix)
    yield (
        "first_counterexample",
        f"{len(vs)} vars, {4 ** len(vs):,} assignments",
        (S.add, S.mul, lf, lo, rf, ro, 4, len(vs)),
        kernels.first_counterexample_numba,
        kernels.first_counterexample_numpy,
    )

    add = figure1_addition()
    yield (
        "ai_tables",
        "figure-1 addition",
        (add, join_endomorphisms(add)),
        kernels.ai_tables_numba,
        kernels.ai_tables_numpy,
    )


def same(a, b):
    if isinstance(a, np.ndarray):
        if a.ndim == 3:  # table sets: order may differ between backends
            key = lambda t: sorted(map(bytes, t.reshape(t.shape[0], -1).astype(np.int8)))
            return key(a) == key(b)
        return np.array_equal(a, b)
    return a == b


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    registry = full_registry()
    print(f"{'kernel':<22}{'input':<32}{'numpy s':>10}{'numba s':>10}{'speedup':>9}  agree")
    for name, desc, inputs, fast, slow in cases(registry):
        t_np, out_np = best_of(lambda: slow(*inputs), args.repeat)
        if HAVE_NUMBA and fast is not None:
            fast(*inputs)  # compile
            t_nb, out_nb = best_of(lambda: fast(*inputs), args.repeat)
            agree = same(out_nb, out_np)
            print(f"{name:<22}{desc:<32}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x  {agree}")
        else:
            print(f"{name:<22}{desc:<32}{t_np:>10.4f}{'-':>10}{'-':>9}  -")


if __name__ == "__main__":
    main()
