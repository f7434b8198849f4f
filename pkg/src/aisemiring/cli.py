"""Command-line entry point.

Exit codes: 0 when everything checked passes, 1 when something fails,
2 on usage or data errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time

import numpy as np

from . import __version__
from . import algebra as alg
from .catalog import (
    CATALOG_ENV,
    CatalogError,
    CatalogValidationError,
    complete,
    default_registry,
    entry_to_json,
    full_registry,
    load_catalog,
    save_catalog,
)
from .enumeration import MAX_SEMILATTICE_ORDER, enumerate_ai_semirings, enumerate_semilattices, match_catalog
from .oracles import Kind, Result, normalize_oracle_id, oracle
from .satisfaction import VariableBudgetError, inclusion_decomposition, satisfies
from .suite import GROUPS, SuiteAbort, SuiteOptions, verify_paper_suite
from .terms import IdentityScheme, ParseError, expand_scheme, parse_identity

LEMMAS = ("s2", "s4", "s10", "s44", "s46", "s47", "s53", "s56", "s57", "s59", "s60")


class UsageError(Exception):
    pass


def _registry(args):
    if getattr(args, "catalog", None):
        return complete(load_catalog(args.catalog))
    return default_registry()


def _table(rows) -> str:
    return "\n".join("  " + " ".join(str(v + 1) for v in r) for r in rows)


def cmd_validate(args) -> int:
    source = args.catalog or os.environ.get(CATALOG_ENV) or "built-in catalog"
    try:
        registry = _registry(args)
    except CatalogValidationError as exc:
        print(f"invalid: {exc}")
        return 1
    bad = 0
    for e in registry.entries():
        r = alg.validate_axioms(e.algebra.add, e.algebra.mul)
        if not r.ok:
            bad += 1
            print(f"invalid: {e.name}: {r.axiom} fails: {r.detail}")
    print(f"{source}: {len(registry) - bad} of {len(registry)} entries valid")
    return 1 if bad else 0


def cmd_show(args) -> int:
    registry = _registry(args)
    try:
        e = registry.entry(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    S = e.algebra
    print(f"{e.name} (order {S.order}, {e.provenance})")
    print("addition:")
    print(_table(S.add))
    print("multiplication:")
    print(_table(S.mul))
    return 0


def cmd_check(args) -> int:
    registry = _registry(args)
    try:
        S = registry[args.semiring]
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    ident = parse_identity(args.identity)
    if args.optional:
        optional = [x.strip() for x in args.optional.split(",") if x.strip()]
        instances = expand_scheme(IdentityScheme.of(ident, optional))
    else:
        instances = [ident]
    failed = 0
    for inst in instances:
        v = satisfies(S, inst)
        failed += not v.holds
        print(f"{S.name}: {v.describe()}")
    return 1 if failed else 0


def cmd_oracle(args) -> int:
    name = normalize_oracle_id(args.lemma)
    o = oracle(name)
    ident = parse_identity(args.identity)
    pairs = inclusion_decomposition(ident)
    verdicts = [o(u, q) for u, q in pairs]
    for (u, q), v in zip(pairs, verdicts):
        print(f"{u} = {u} + {q}: {v}")
    if not pairs:
        print(f"{ident}: trivial")
        return 0
    kind = verdicts[0].kind
    if any(v.fails for v in verdicts):
        print(f"{ident}: fails")
        return 1
    if kind is Kind.EXACT and all(v.result is Result.HOLDS for v in verdicts):
        print(f"{ident}: holds")
    else:
        print(f"{ident}: necessary conditions passed")
    return 0


def _catalog_addition(add: np.ndarray, registry) -> np.ndarray:
    """An isomorphic relabelling of ``add`` used by the catalog, else ``add``."""
    n = add.shape[0]
    seen = []
    for e in registry.entries():
        other = e.algebra.add
        if other.shape != add.shape or any(np.array_equal(other, t) for t in seen):
            continue
        seen.append(other)
        for p in itertools.permutations(range(n)):
            p = np.array(p)
            if np.array_equal(p[add], other[np.ix_(p, p)]):
                return other
    return add


def cmd_enumerate(args) -> int:
    n = args.order
    if not 1 <= n <= MAX_SEMILATTICE_ORDER:
        raise UsageError(f"--order must be between 1 and {MAX_SEMILATTICE_ORDER}")
    lattices = enumerate_semilattices(n)
    if args.semilattice is not None:
        if not 1 <= args.semilattice <= len(lattices):
            raise UsageError(f"order {n} has {len(lattices)} semilattices; --semilattice must be 1..{len(lattices)}")
        chosen = [(args.semilattice, lattices[args.semilattice - 1])]
    elif n >= 4 and not args.full_866:
        raise UsageError("order 4 and above needs --semilattice K or --full-866")
    else:
        chosen = list(enumerate(lattices, 1))
    registry = _registry(args) if args.match else None
    total = 0
    for k, s in chosen:
        t = time.perf_counter()
        # matching needs the catalog's own labelling of the addition
        add = _catalog_addition(s.add, registry) if registry is not None else s.add
        classes = enumerate_ai_semirings(add, name_prefix=f"n{n}-s{k}")
        total += len(classes)
        print(f"semilattice {k} ({s.describe()}): {len(classes)} classes in {time.perf_counter() - t:.2f} s")
        if args.match:
            names = [e.name for e in registry.entries() if np.array_equal(e.algebra.add, add)]
            if names:
                print("  " + match_catalog(classes, registry, names).summary())
            else:
                print("  no catalog entry has this addition")
        if args.tables:
            for c in classes:
                print(f"  {c.representative.name}:")
                print(_table(c.representative.mul))
    print(f"total: {total}")
    return 0


def cmd_derive_catalog(args) -> int:
    registry = complete(load_catalog(args.catalog)) if args.catalog else full_registry()
    if args.output:
        save_catalog(registry, args.output)
        print(f"wrote {len(registry)} entries to {args.output}")
    else:
        print(json.dumps([entry_to_json(e) for e in registry.entries()], indent=1))
    for name, why in sorted(registry.unresolved.items()):
        print(f"unresolved {name}: {why}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    only = tuple(args.only) if args.only else None
    log = None if args.json or args.quiet else (lambda s: print(s, file=sys.stderr, flush=True))
    opts = SuiteOptions(only=only, seed=args.seed, jobs=args.jobs, full_866=args.full_866, log=log)
    registry = _registry(args)
    try:
        report = verify_paper_suite(registry, opts)
    except SuiteAbort as exc:
        report = exc.report
    print(report.to_json() if args.json else report.render())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aisemiring", description="finite ai-semiring workbench")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", metavar="PATH", help=f"catalog JSON (default: ${CATALOG_ENV} or built-in)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate every catalog entry")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("show", parents=[common], help="print the tables of one algebra")
    s.add_argument("name")
    s.set_defaults(func=cmd_show)

    s = sub.add_parser("check", parents=[common], help="model-check an identity")
    s.add_argument("--semiring", required=True)
    s.add_argument("--identity", required=True)
    s.add_argument("--optional", metavar="VARS", help="comma-separated variables that may be empty")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("oracle", parents=[common], help="run a syntactic criterion on an identity")
    s.add_argument("--lemma", required=True, type=str.lower, choices=LEMMAS)
    s.add_argument("--identity", required=True)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate ai-semirings up to isomorphism")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--semilattice", type=int, metavar="K", help="1-based index of the additive semilattice")
    s.add_argument("--full-866", action="store_true", help="allow all semilattices of order 4")
    s.add_argument("--match", action="store_true", help="match classes against the catalog")
    s.add_argument("--tables", action="store_true", help="print the multiplication tables")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("derive-catalog", parents=[common], help="write the catalog with derived entries")
    s.add_argument("--output", metavar="PATH")
    s.set_defaults(func=cmd_derive_catalog)

    s = sub.add_parser("verify-paper", parents=[common], help="run the full verification suite")
    s.add_argument("--only", action="append", choices=GROUPS, metavar="GROUP", help=f"one of {', '.join(GROUPS)}")
    s.add_argument("--json", action="store_true")
    s.add_argument("--seed", type=int, default=SuiteOptions.seed)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--full-866", action="store_true", help="include the order-4 count")
    s.add_argument("--quiet", action="store_true", help="no progress on stderr")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, ParseError, CatalogError, VariableBudgetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
