"""Command-line front end.

Subcommands:

* ``splitting``     stable wedge decomposition of a spec file
* ``bracket``       [Sigma^k M, Top/O] for a spec file and k
* ``concordance``   the concordance structure set C(M x S^k)
* ``inertia``       the concordance inertia group I_c(M x S^k)
* ``tables``        dump the group/image tables with citations
* ``classify-cp2``  the curated diffeomorphism classification of
                    manifolds homeomorphic to CP^2 x S^k, k = 3..6
* ``check``         run every golden-table sweep and the closed-form
                    vs. summand-assembly cross-check

Exit codes: 0 success, 1 validation or spec-file error, 2 out-of-range
query, 3 internal cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from .abgroup import FinAbGroup, TRIVIAL, canonicalize, cyclic
from . import tables
from .tables import TableRangeError
from .brackets import (
    ExtensionAmbiguous,
    Known,
    OutOfRange,
    closed_form_cM4,
    moore_bracket,
    result_to_dict,
    splitting_bracket,
    susp_cp2_bracket,
)
from .inertia import CrossCheckError, concordance_inertia, concordance_set
from .manifold import (
    ConeEtaTilde,
    ManifoldSpec,
    SpecFormatError,
    SpecValidationError,
    Sphere,
    SuspCP2,
    SuspMoore,
    load_spec,
    stable_splitting,
    validate,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RANGE = 2
EXIT_CROSS_CHECK = 3


# ---------------------------------------------------------------------------
# CP^2 x S^k classification reports (curated data with citations; the
# surgery-theoretic arguments behind them are not recomputed here).


@dataclass(frozen=True)
class ClassificationReport:
    k: int
    diffeo_class_count: int
    representatives: tuple[str, ...]
    inertia_group: FinAbGroup
    notes: tuple[str, ...]

    def __post_init__(self):
        if self.diffeo_class_count != len(self.representatives):
            raise ValueError("class count must match the representative list")


def classify_cp2(k: int) -> ClassificationReport:
    """Diffeomorphism classes of manifolds homeomorphic to CP^2 x S^k, k = 3..6."""
    if k == 3:
        return ClassificationReport(
            3,
            1,
            ("CP^2 x S^3",),
            tables.theta(7),
            (
                "the inertia group of CP^2 x S^3 is all of Theta_7",
                "every manifold tangentially homotopy equivalent to CP^2 x S^3"
                " is diffeomorphic to CP^2 x S^3",
            ),
        )
    if k == 4:
        return ClassificationReport(
            4,
            1,
            ("CP^2 x S^4",),
            tables.theta(8),
            (
                "every manifold homeomorphic to CP^2 x S^4 is oriented"
                " diffeomorphic to CP^2 x S^4",
                "the inertia group equals Theta_8",
            ),
        )
    if k == 5:
        return ClassificationReport(
            5,
            1,
            ("CP^2 x S^5",),
            tables.theta(9),
            (
                "every manifold homeomorphic to CP^2 x S^5 is oriented"
                " diffeomorphic to CP^2 x S^5",
                "the inertia group equals Theta_9",
            ),
        )
    if k == 6:
        return ClassificationReport(
            6,
            3,
            (
                "CP^2 x S^6",
                "(CP^2 x S^6) # S(alpha)",
                "(CP^2 x S^6) # S(alpha)^-1",
            ),
            cyclic(2),
            (
                "S(alpha) is the order-3 exotic 10-sphere; the three connected"
                " sums are pairwise non-diffeomorphic",
                "the inertia group of CP^2 x S^6 is Z/2",
                "the same three manifolds classify up to tangential homotopy"
                " equivalence",
            ),
        )
    raise TableRangeError(f"classification is curated for k = 3..6, got {k}")


# ---------------------------------------------------------------------------
# Rendering


def _summand_dict(s) -> dict:
    if isinstance(s, Sphere):
        return {"type": "sphere", "n": s.n}
    if isinstance(s, SuspMoore):
        return {"type": "moore", "b": s.b, "s": s.s}
    if isinstance(s, SuspCP2):
        return {"type": "cp2", "s": s.s}
    assert isinstance(s, ConeEtaTilde)
    return {"type": "cone_eta_tilde", "r": s.r}


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _result_exit(res) -> int:
    return EXIT_RANGE if isinstance(res, OutOfRange) else EXIT_OK


def _print_result(res, args, extra: dict | None = None) -> int:
    if args.format == "machine":
        payload = {"result": result_to_dict(res)}
        if extra:
            payload.update(extra)
        _emit(payload)
    else:
        print(str(res))
    return _result_exit(res)


# ---------------------------------------------------------------------------
# Subcommand handlers


def _load(args) -> ManifoldSpec:
    spec = load_spec(args.spec)
    report = validate(spec)
    if not report.ok:
        raise SpecValidationError(report.violations)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return spec


def _cmd_splitting(args) -> int:
    spec = _load(args)
    splitting = stable_splitting(spec)
    if args.format == "machine":
        _emit(
            {
                "spec": spec.to_dict(),
                "summands": [_summand_dict(s) for s in splitting.summands],
            },
        )
    else:
        print(str(splitting))
    return EXIT_OK


def _cmd_bracket(args) -> int:
    spec = _load(args)
    res = splitting_bracket(spec, args.k)
    return _print_result(res, args, {"spec": spec.to_dict(), "k": args.k})


def _cmd_concordance(args) -> int:
    spec = _load(args)
    res = concordance_set(spec, args.k)
    return _print_result(res, args, {"spec": spec.to_dict(), "k": args.k})


def _cmd_inertia(args) -> int:
    spec = _load(args)
    res = concordance_inertia(spec, args.k)
    if args.format == "machine":
        payload = {
            "spec": spec.to_dict(),
            "k": args.k,
            "result": result_to_dict(res.value),
            "derivation": res.derivation,
            "cross_check": None
            if res.cross_check is None
            else {
                "expected": res.cross_check.expected.to_dict(),
                "matches": res.cross_check.matches,
                "citation": res.cross_check.citation,
            },
        }
        _emit(payload)
    else:
        line = f"I_c = {res.value}"
        if res.cross_check is not None:
            line += " (cross-checked)" if res.cross_check.matches else " (NO cross-check match)"
        print(line)
    return _result_exit(res.value)


def _table_rows(name: str):
    if name in tables.TABLES:
        return list(tables.TABLES[name].rows())
    if name == "pi_g_top":
        return list(tables.pi_g_top_rows())
    if name == "eta_tilde":
        return list(tables.eta_tilde_rows())
    raise TableRangeError(f"no table named {name!r}; known: {', '.join(_table_names())}")


def _table_names():
    return sorted(list(tables.TABLES) + ["pi_g_top", "eta_tilde"])


def _cmd_tables(args) -> int:
    if args.tables_dump:
        os.makedirs(args.tables_dump, exist_ok=True)
        for name in _table_names():
            records = [
                {"key": key, "group": group.to_dict(), "rendered": str(group), "citation": cite}
                for key, group, cite in _table_rows(name)
            ]
            path = os.path.join(args.tables_dump, f"{name}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump({"name": name, "entries": records}, fh, indent=2, ensure_ascii=False)
        print(f"wrote {len(_table_names())} tables to {args.tables_dump}")
        return EXIT_OK
    names = [args.name] if args.name else _table_names()
    for name in names:
        rows = _table_rows(name)
        if args.format == "machine":
            _emit(
                {
                    "name": name,
                    "entries": [
                        {"key": key, "group": group.to_dict(), "citation": cite}
                        for key, group, cite in rows
                    ],
                }
            )
        else:
            print(f"== {name}")
            width = max(len(key) for key, _, _ in rows)
            gwidth = max(len(str(group)) for _, group, _ in rows)
            for key, group, cite in rows:
                print(f"  {key:>{width}}  {str(group):<{gwidth}}  {cite}")
    return EXIT_OK


def _cmd_classify(args) -> int:
    report = classify_cp2(args.k)
    if args.format == "machine":
        _emit(
            {
                "k": report.k,
                "diffeo_class_count": report.diffeo_class_count,
                "representatives": list(report.representatives),
                "inertia_group": report.inertia_group.to_dict(),
                "notes": list(report.notes),
            },
        )
    else:
        print(
            f"manifolds homeomorphic to CP^2 x S^{report.k}:"
            f" {report.diffeo_class_count} diffeomorphism class(es)"
        )
        for rep in report.representatives:
            print(f"  - {rep}")
        print(f"inertia group: {report.inertia_group}")
        for note in report.notes:
            print(f"note: {note}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# The full golden sweep


def random_4dim_spec(rng: random.Random) -> ManifoldSpec:
    spin = rng.random() < 0.5
    torsion = tuple(
        rng.choice([2, 2, 4, 8, 3, 9, 7, 49, 5, 31]) for _ in range(rng.randrange(0, 4))
    )
    return ManifoldSpec(
        dimension=4,
        spin=spin,
        h1_free_rank=rng.randrange(0, 3),
        h2_free_rank=rng.randrange(1 if not spin else 0, 4),
        h2_torsion=torsion,
    )


def random_spin_spec(rng: random.Random) -> ManifoldSpec:
    dim = rng.choice([4, 5])
    torsion = tuple(
        rng.choice([2, 4, 16, 3, 27, 7, 5, 125, 11]) for _ in range(rng.randrange(0, 4))
    )
    return ManifoldSpec(
        dimension=dim,
        spin=True,
        h1_free_rank=rng.randrange(0, 3) if dim == 4 else 0,
        h2_free_rank=rng.randrange(0, 4),
        h2_torsion=torsion,
    )


def run_check(count: int = 120, seed: int = 7, out=print) -> int:
    """Golden sweeps and the oracle cross-check; returns an exit code."""
    failures = []

    def sweep(label, fn):
        try:
            fn()
        except (AssertionError, CrossCheckError) as exc:
            failures.append((label, str(exc)))
            out(f"FAIL {label}: {exc}")
        else:
            out(f"ok   {label}")

    def inertia_tables():
        nonspin4 = ManifoldSpec(4, False, 0, 1)
        for k in range(1, 17):
            concordance_inertia(nonspin4, k)  # raises CrossCheckError on mismatch
        for r in (1, 2, 3, 5):
            spec = ManifoldSpec(5, False, 0, 0, (2 ** r, 9))
            for k in range(1, 11):
                concordance_inertia(spec, k)
        no2 = ManifoldSpec(5, False, 0, 1, (3,))
        for k in range(1, 11):
            concordance_inertia(no2, k)

    def spin_triviality():
        rng = random.Random(seed)
        for _ in range(count):
            spec = random_spin_spec(rng)
            for k in range(1, 13):
                res = concordance_inertia(spec, k)
                assert isinstance(res.value, Known) and res.value.group == TRIVIAL, (spec, k)

    def cp2_table():
        expected = {
            2: TRIVIAL,
            3: cyclic(28),
            4: cyclic(2),
            5: canonicalize([2, 56]),
            6: cyclic(3),
            8: cyclic(3),
            9: canonicalize([3, 992]),
            10: cyclic(2),
        }
        for s, value in expected.items():
            res = susp_cp2_bracket(s)
            assert isinstance(res, Known) and res.group == value, (s, res)
        res = susp_cp2_bracket(7)
        assert isinstance(res, ExtensionAmbiguous) and res.sub == cyclic(496), res

    def moore_tables():
        for r in (1, 2, 3):
            for s in range(1, 18):
                want3 = cyclic(3) if s in (9, 10, 12, 13) else TRIVIAL
                assert moore_bracket(3, r, s).group == want3, (3, r, s)
                want7 = cyclic(7) if s in (6, 7) else TRIVIAL
                assert moore_bracket(7, r, s).group == want7, (7, r, s)
            assert moore_bracket(31, r, 11).group == cyclic(31)
            assert moore_bracket(2, r, 6).group == (cyclic(2) if r == 1 else cyclic(4))
            assert moore_bracket(2, r, 7).group == canonicalize([2, 2 if r == 1 else 4])
            assert moore_bracket(2, r, 9).group == (
                canonicalize([4, 2, 2]) if r == 1 else canonicalize([2, 2, 2, 2])
            )
            assert moore_bracket(2, r, 11).group == cyclic(2 ** min(r, 5))
        assert moore_bracket(2, 1, 8).group == canonicalize([4, 2, 2])
        assert moore_bracket(2, 1, 10).group == canonicalize([2, 2])

    def oracle_sweep():
        rng = random.Random(seed + 1)
        for _ in range(count):
            spec = random_4dim_spec(rng)
            for k in range(1, 6):
                left = splitting_bracket(spec, k)
                right = closed_form_cM4(spec, k)
                assert isinstance(left, Known), (spec, k, left)
                assert left.group == right.group, (spec, k, left, right)

    def endgame():
        cp2 = ManifoldSpec(4, False, 0, 1)
        assert concordance_set(cp2, 6).group == cyclic(3)
        assert concordance_set(cp2, 4).group == cyclic(2)
        counts = {3: 1, 4: 1, 5: 1, 6: 3}
        inert = {3: cyclic(28), 4: cyclic(2), 5: canonicalize([2, 2, 2]), 6: cyclic(2)}
        for k in (3, 4, 5, 6):
            rep = classify_cp2(k)
            assert rep.diffeo_class_count == counts[k], rep
            assert rep.inertia_group == inert[k], rep

    sweep("inertia golden tables (4- and 5-dimensional, all branches)", inertia_tables)
    sweep(f"spin triviality on {count} random profiles", spin_triviality)
    sweep("suspended-CP^2 bracket table, suspensions 2..10", cp2_table)
    sweep("Moore bracket tables (p = 2, 3, 7, 31)", moore_tables)
    sweep(f"closed form vs. summand assembly on {count} random 4-dim profiles", oracle_sweep)
    sweep("CP^2 x S^k endgame values", endgame)

    if failures:
        out(f"{len(failures)} sweep(s) failed")
        return EXIT_CROSS_CHECK
    out("all sweeps passed")
    return EXIT_OK


def _cmd_check(args) -> int:
    return run_check(count=args.count, seed=args.seed)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concordance",
        description="concordance structure sets and inertia groups of M x S^k"
        " from the homology profile of M",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, spec=True, k=False):
        p.add_argument("--format", choices=("text", "machine"), default="text")
        if spec:
            p.add_argument("--spec", required=True, help="manifold spec file (JSON)")
        if k:
            p.add_argument("-k", type=int, required=True, help="sphere factor dimension")

    p = sub.add_parser("splitting", help="stable wedge decomposition")
    add_common(p)
    p.set_defaults(func=_cmd_splitting)

    p = sub.add_parser("bracket", help="[Sigma^k M, Top/O]")
    add_common(p, k=True)
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("concordance", help="concordance structure set C(M x S^k)")
    add_common(p, k=True)
    p.set_defaults(func=_cmd_concordance)

    p = sub.add_parser("inertia", help="concordance inertia group I_c(M x S^k)")
    add_common(p, k=True)
    p.set_defaults(func=_cmd_inertia)

    p = sub.add_parser("tables", help="dump group/image tables with citations")
    add_common(p, spec=False)
    p.add_argument("name", nargs="?", help="table name; omit for all")
    p.add_argument("--tables-dump", metavar="DIR", help="write every table to DIR as JSON")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("classify-cp2", help="diffeomorphism classes of CP^2 x S^k")
    add_common(p, spec=False, k=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("check", help="run all golden sweeps")
    add_common(p, spec=False)
    p.add_argument("--count", type=int, default=120, help="random profiles per sweep")
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecFormatError, SpecValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TableRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except CrossCheckError as exc:
        print(f"internal cross-check mismatch: {exc}", file=sys.stderr)
        return EXIT_CROSS_CHECK


if __name__ == "__main__":
    sys.exit(main())
