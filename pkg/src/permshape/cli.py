"""
Command line front end.

Subcommands:

* ``map PERM``     - Dyck word, shape, borders, statistics and tableau of one
                     permutation.
* ``dist``         - exact distribution tables over S_n (or an avoidance
                     class), shape censuses, parity summaries, and optional
                     cross-checks against the generating polynomials.
* ``verify``       - run the exhaustive verification suites.

Output goes to stdout, diagnostics to stderr.  Exit codes: 0 on success,
1 when a verification suite fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import oracle, verify
from .genfun import lbsum_polynomial, q_catalan, quad_polynomial
from .permutations import Permutation, parse_permutation, stat_vector
from .shapes import ShapePartition, count_permutations_with_shape, dyck_path, shape
from .tableaux import encode_tableau, tableau_to_json

__all__ = ["RunConfig", "main", "map_report", "predicted_distribution"]

FORMATS = ("plain", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation; exactly one subcommand is populated."""

    subcommand: str
    permutation: str | None = None
    n: int = 0
    statistic: str | None = None
    avoid: str | None = None
    shape_text: str | None = None
    fmt: str = "plain"
    check: bool = False
    parity: bool = False
    order: int = 8
    max_n: int = 7
    workers: int = 1
    selection: tuple[str, ...] = ("all",)


def map_report(p: Permutation) -> dict:
    """Everything the ``map`` subcommand prints, as one plain dict."""
    sv = stat_vector(p.entries)
    t = encode_tableau(p)
    return {
        "permutation": list(p.entries),
        "dyck_word": dyck_path(p),
        "shape": shape(p).to_text(),
        "left_borders": list(p.left_border_numbers()),
        "right_borders": list(p.right_border_numbers()),
        "stats": {
            "des": sv.des,
            "maj": sv.maj,
            "lrmax": sv.lrmax,
            "maxdes": sv.maxdes,
            "lbsum": sv.lbsum,
            "inv": sv.inv,
            "descent_set": sorted(sv.descent_set),
        },
        "tableau": tableau_to_json(t),
    }


def predicted_distribution(
    n: int, statistic: str, avoid: str | None
) -> dict[int, int] | None:
    """
    The generating-polynomial prediction for a distribution, or None when no
    closed recursion covers the requested combination.
    """
    if statistic == "lbsum" and avoid is None:
        return lbsum_polynomial(n).to_counts()
    if statistic == "lbsum" and avoid in ("132", "231"):
        return q_catalan(n).to_counts()
    if statistic == "inv" and avoid == "132":
        return q_catalan(n).to_counts()
    if avoid is None and statistic in ("des", "maxdes", "lrmax"):
        variable = {"des": "y", "maxdes": "p", "lrmax": "q"}[statistic]
        marginal = quad_polynomial(n).marginal(variable).to_counts()
        if statistic == "lrmax":
            return {n - e: c for e, c in marginal.items()}
        return marginal
    return None


def _print_map(config: RunConfig) -> int:
    report = map_report(parse_permutation(config.permutation or ""))
    if config.fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    elif config.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["field", "value"])
        for key in sorted(report):
            value = report[key]
            writer.writerow([key, json.dumps(value, sort_keys=True)])
        sys.stdout.write(buf.getvalue())
    else:
        for key in (
            "permutation",
            "dyck_word",
            "shape",
            "left_borders",
            "right_borders",
        ):
            value = report[key]
            if isinstance(value, list):
                value = ",".join(map(str, value))
            print(f"{key}: {value}")
        stats = report["stats"]
        print(
            "stats: "
            + " ".join(f"{k}={stats[k]}" for k in ("des", "maj", "lrmax", "maxdes", "lbsum", "inv"))
        )
        print(f"descent_set: {','.join(map(str, stats['descent_set']))}")
        print(f"tableau: {json.dumps(report['tableau'], sort_keys=True)}")
    return 0


def _dist_rows(config: RunConfig) -> tuple[list[tuple[str, int]], dict]:
    """(sorted rows of (key, count), metadata) for the dist subcommand."""
    meta: dict = {"n": config.n, "statistic": config.statistic, "filter": config.avoid}
    if config.statistic == "shape":
        census = oracle.shape_census(config.n, workers=config.workers)
        if config.shape_text is not None:
            wanted = ShapePartition.from_text(config.shape_text, n=config.n)
            key = wanted.to_text()
            rows = [(key, census.get(key, 0))]
        else:
            rows = sorted(census.items())
        if config.check:
            predictions = {
                key: count_permutations_with_shape(
                    ShapePartition.from_text(key, n=config.n)
                )
                for key, _ in rows
            }
            meta["check"] = {
                "source": "rectangle binomial product",
                "match": all(predictions[k] == c for k, c in rows),
            }
            meta["predicted"] = {k: str(v) for k, v in predictions.items()}
        return rows, meta
    dist = oracle.distribution(
        config.n, config.statistic or "", avoid=config.avoid, workers=config.workers
    )
    rows = [(str(v), c) for v, c in sorted(dist.counts.items())]
    if config.parity:
        even, odd = dist.parity_split()
        meta["parity"] = {"even": str(even), "odd": str(odd), "delta": str(even - odd)}
    if config.check:
        predicted = predicted_distribution(config.n, config.statistic or "", config.avoid)
        if predicted is None:
            raise ValueError(
                f"no generating-polynomial prediction for statistic "
                f"{config.statistic!r} with filter {config.avoid!r}"
            )
        meta["check"] = {
            "source": "generating polynomial",
            "match": predicted == dist.counts,
        }
        meta["predicted"] = {str(v): str(c) for v, c in sorted(predicted.items())}
    return rows, meta


def _print_dist(config: RunConfig) -> int:
    rows, meta = _dist_rows(config)
    if config.fmt == "json":
        payload = dict(meta)
        payload["rows"] = [[key, str(count)] for key, count in rows]
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif config.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["value", "count"])
        for key, count in rows:
            writer.writerow([key, str(count)])
        sys.stdout.write(buf.getvalue())
    else:
        width = max(5, max((len(key) for key, _ in rows), default=5))
        print(f"{'value'.ljust(width)}  count")
        for key, count in rows:
            print(f"{key.ljust(width)}  {count}")
        if "parity" in meta:
            p = meta["parity"]
            print(f"parity: even={p['even']} odd={p['odd']} delta={p['delta']}")
        if "check" in meta:
            verdict = "match" if meta["check"]["match"] else "MISMATCH"
            print(f"check against {meta['check']['source']}: {verdict}")
    if meta.get("check", {}).get("match") is False:
        return 1
    return 0


def _print_verify(config: RunConfig) -> int:
    results = verify.run_suites(
        list(config.selection), config.max_n, config.workers, config.order
    )
    if config.fmt == "json":
        print(verify.report_to_json(results))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.name:<11} checks={r.checks:<9} {r.seconds:.2f}s")
            for message in r.failures[:1]:
                print(f"     first counterexample: {message}")
        print("result:", "ok" if all(r.passed for r in results) else "FAILED")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permshape",
        description="Permutation statistics through Dyck paths and shapes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_map = sub.add_parser("map", help="map one permutation to all its views")
    p_map.add_argument("permutation", help="one-line notation, e.g. 53148276")
    p_map.add_argument("--format", choices=FORMATS, default="plain")

    p_dist = sub.add_parser("dist", help="exact distribution tables")
    p_dist.add_argument("--n", type=int, required=True)
    p_dist.add_argument(
        "--stat",
        required=True,
        choices=sorted(oracle.STATISTICS) + ["shape"],
    )
    p_dist.add_argument("--avoid", choices=["132", "231"], default=None)
    p_dist.add_argument("--shape", default=None, help="restrict to one shape")
    p_dist.add_argument("--format", choices=FORMATS, default="plain")
    p_dist.add_argument("--check", action="store_true")
    p_dist.add_argument("--parity", action="store_true")
    p_dist.add_argument("--workers", type=int, default=1)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument(
        "selection",
        nargs="*",
        default=["all"],
        choices=list(verify.SUITE_NAMES) + ["all"],
    )
    p_verify.add_argument("--max-n", type=int, default=7)
    p_verify.add_argument("--order", type=int, default=8)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--format", choices=("plain", "json"), default="plain")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.subcommand == "map":
        return RunConfig("map", permutation=args.permutation, fmt=args.format)
    if args.subcommand == "dist":
        return RunConfig(
            "dist",
            n=args.n,
            statistic=args.stat,
            avoid=args.avoid,
            shape_text=args.shape,
            fmt=args.format,
            check=args.check,
            parity=args.parity,
            workers=args.workers,
        )
    return RunConfig(
        "verify",
        selection=tuple(args.selection or ["all"]),
        max_n=args.max_n,
        order=args.order,
        workers=args.workers,
        fmt=args.format,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    try:
        if config.subcommand == "map":
            return _print_map(config)
        if config.subcommand == "dist":
            return _print_dist(config)
        return _print_verify(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
