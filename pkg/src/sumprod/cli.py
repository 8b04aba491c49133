"""Command-line entry point: classify, sigma, incidence, scan.

Exit codes: 0 success, 1 assertion or floor violation (including refused
hypotheses), 2 usage error, 3 degree cap exceeded. Every run given --out
writes a manifest.json echoing the resolved configuration; wall-clock timing
lives only in the manifest so the data files stay byte-reproducible.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classify import (
    decompose_fully,
    is_composite,
    is_degenerate,
    normalize_orientation,
)
from .errors import DegreeCapExceeded, HypothesisViolated, SumprodError
from .explorer import (
    ApSpec,
    GpSpec,
    RandomIntSpec,
    RatSet,
    generate_set,
    run_scan,
)
from .factor import DEFAULT_DEGREE_CAP
from .geometry import check_class_bound, incidence_report
from .parsing import PolyParseError, format_bipoly, format_unipoly, load_poly
from .spectrum import DEFAULT_SWEEP_HEIGHT, sigma_candidates, sigma_scan

_SPEC_RE = re.compile(r"^(ap|gp|randomint|random)\(([^)]*)\)$", re.IGNORECASE)


def _parse_rat(text: str) -> Fraction:
    return Fraction(text.strip())


def parse_set_spec(text: str, default_seed: int):
    """Parse generator specs like AP(8,1,1), GP(8,1,2), RandomInt(8,1,100,7)."""
    m = _SPEC_RE.match(text.strip())
    if not m:
        raise ValueError(f"unrecognized set spec {text!r}")
    kind = m.group(1).lower()
    args = [a.strip() for a in m.group(2).split(",") if a.strip()]
    if kind == "ap":
        n, start, step = int(args[0]), _parse_rat(args[1]), _parse_rat(args[2])
        return ApSpec(n, start, step)
    if kind == "gp":
        n, first, ratio = int(args[0]), _parse_rat(args[1]), _parse_rat(args[2])
        return GpSpec(n, first, ratio)
    n = int(args[0])
    lo, hi = int(args[1]), int(args[2])
    seed = int(args[3]) if len(args) > 3 else default_seed
    return RandomIntSpec(n, lo, hi, seed)


def load_set(source: str, default_seed: int) -> RatSet:
    """A set from a generator spec or a file of one rational per line."""
    path = Path(source)
    if path.exists() and path.is_file():
        elems = sorted(
            {Fraction(line.strip()) for line in path.read_text().splitlines() if line.strip()}
        )
        return RatSet(tuple(elems), f"file({source})")
    return generate_set(parse_set_spec(source, default_seed))


def _fraction_str(v: Fraction) -> str:
    return str(v)


def _write_manifest(outdir: Path, payload: dict) -> None:
    payload = dict(payload)
    payload["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    payload["version"] = __version__
    (outdir / "manifest.json").write_text(json.dumps(payload, indent=2, sort_keys=True))


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    payload = dict(payload)
    payload["config"] = _resolved_config(args)
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / f"{args.command}.json").write_text(
            json.dumps(payload, indent=2, sort_keys=True)
        )
        _write_manifest(outdir, {"argv_config": _resolved_config(args)})


def _resolved_config(args) -> dict:
    skip = {"func"}
    return {
        k: (str(v) if isinstance(v, Fraction) else v)
        for k, v in sorted(vars(args).items())
        if k not in skip
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    f = load_poly(args.poly)
    oriented, swapped = normalize_orientation(f)
    payload: dict = {
        "input": format_bipoly(f),
        "oriented": format_bipoly(oriented),
        "swapped": swapped,
    }
    lines = [f"polynomial: {format_bipoly(f)}"]
    if swapped:
        lines.append(f"oriented:   {format_bipoly(oriented)} (variables swapped)")
    dec = is_degenerate(oriented)
    if dec is not None:
        payload["degenerate"] = {
            "outer": format_unipoly(dec.outer, "t"),
            "linear_form": format_bipoly(dec.inner),
        }
        lines.append(
            f"degenerate: yes, outer {format_unipoly(dec.outer, 't')} of "
            f"linear form {format_bipoly(dec.inner)}"
        )
    else:
        payload["degenerate"] = None
        lines.append("degenerate: no")
    if oriented.total_degree < 2:
        payload["composite"] = {"verdict": False, "reason": "degree below 2"}
        lines.append("composite:  no (degree below 2)")
    else:
        verdict = is_composite(oriented)
        if verdict.composite:
            payload["composite"] = {
                "verdict": True,
                "witness_lambdas": [str(v) for v in verdict.witness_lambdas],
                "univariate": verdict.univariate,
            }
            lines.append(
                "composite:  yes"
                + (
                    f" (all fibers at {', '.join(str(v) for v in verdict.witness_lambdas)} reducible)"
                    if verdict.witness_lambdas
                    else " (single-variable polynomial)"
                )
            )
        else:
            payload["composite"] = {
                "verdict": False,
                "certificate_lambda": str(verdict.certificate_lambda),
            }
            lines.append(
                f"composite:  no (fiber at {verdict.certificate_lambda} is absolutely irreducible)"
            )
        if dec is None and verdict.composite:
            core, chain = decompose_fully(oriented)
            payload["decomposition"] = {
                "core": format_bipoly(core),
                "chain": [format_unipoly(q, "t") for q in chain],
            }
            lines.append(
                f"chain:      {' o '.join(format_unipoly(q, 't') for q in chain)}"
                f" o ({format_bipoly(core)})"
            )
        elif dec is None and not verdict.composite:
            payload["decomposition"] = {"core": format_bipoly(oriented), "chain": []}
    _emit(args, payload, lines)
    return 0


def cmd_sigma(args) -> int:
    f = load_poly(args.poly)
    extra = tuple(Fraction(v) for v in args.extra_candidates.split(",") if v)
    cands = sigma_candidates(f, extra=extra, sweep_height=args.sweep_height)
    report = sigma_scan(f, cands, cap=args.degree_cap)
    payload = report.to_dict()
    lines = [
        f"polynomial: {format_bipoly(f)} (degree {report.degree_k})",
        f"candidates tested: {report.candidate_count}",
        f"reducible fibers found: {len(report.found)}"
        + (f" at {', '.join(str(v) for v in report.found_values)}" if report.found else ""),
        f"Stein bound respected: {report.stein_bound_respected}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_incidence(args) -> int:
    from sumprod.spectrum import SigmaReport

    f = load_poly(args.poly)
    A = load_set(args.set, args.seed)
    if f.total_degree >= 2:
        cands = sigma_candidates(f, sweep_height=args.sweep_height)
        sigma = sigma_scan(f, cands, cap=args.degree_cap)
    else:
        sigma = SigmaReport(
            degree_k=f.total_degree, found=(), candidate_count=0,
            stein_bound_respected=True,
        )
    report, family = incidence_report(f, A.elements, sigma)
    degenerate = is_degenerate(f) is not None
    verdict = is_composite(f) if (f.total_degree >= 2 and not degenerate) else None
    composite = bool(verdict.composite) if verdict else False
    # the class-size ceiling only applies off the degenerate/composite cases
    bound = check_class_bound(family, family.degree, composite or degenerate)
    payload = {
        "polynomial": format_bipoly(f),
        "set": A.provenance,
        "set_size": len(A),
        "removed_rows": [str(b) for b in family.removed_b],
        "degenerate": degenerate,
        "composite": composite,
        "incidence": report.to_dict(),
        "class_histogram": family.histogram(),
        "max_class_size": bound.max_class_size,
        "class_count": bound.class_count,
    }
    lines = [
        f"polynomial: {format_bipoly(f)}",
        f"set: {A.provenance} (|A|={len(A)}, removed rows: {len(family.removed_b)})",
        f"points: {report.point_count}  curves: {report.curve_count}  incidences: {report.incidences}",
        f"per-curve minimum: {report.per_curve_min}",
        f"szekely ratio: {report.szekely_ratio:.6f}",
        "class histogram (size,count): "
        + " ".join(f"{s},{c}" for s, c in family.histogram()),
    ]
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        with open(outdir / "histogram.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["class_size", "count"])
            for size, count in family.histogram():
                w.writerow([size, count])
    _emit(args, payload, lines)
    return 0


_FAMILIES = {"AP", "GP", "random"}


def cmd_scan(args) -> int:
    if not args.out:
        raise ValueError("scan writes csv/json artifacts and needs --out DIR")
    f = load_poly(args.poly)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if not sizes:
        raise ValueError("need at least one size")
    if args.family not in _FAMILIES:
        raise ValueError(f"family must be one of {sorted(_FAMILIES)}")
    lo, hi = (int(v) for v in args.range.split(":"))
    specs = []
    for n in sizes:
        if args.family == "AP":
            specs.append(ApSpec(n, Fraction(1), Fraction(1)))
        elif args.family == "GP":
            specs.append(GpSpec(n, Fraction(1), Fraction(2)))
        else:
            specs.append(RandomIntSpec(n, lo, hi, args.seed))
    floor = Fraction(args.floor) if args.floor else None
    result = run_scan(f, specs, floor_c=floor, poly_id=format_bipoly(f))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "records.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            [
                "poly_id",
                "set_kind",
                "n",
                "sumset",
                "image",
                "product",
                "ratio_decimal",
                "removed_rows",
                "runtime_ms",
            ]
        )
        for r in result.records:
            # timing goes to the manifest; the csv stays byte-reproducible
            w.writerow(
                [
                    r.poly_id,
                    r.provenance,
                    r.n,
                    r.sumset_size,
                    r.image_size,
                    r.product,
                    r.ratio_decimal,
                    r.removed_rows,
                    "",
                ]
            )
    summary = {
        "poly": format_bipoly(f),
        "family": args.family,
        "sizes": sizes,
        "min_ratio": result.summary.min_ratio_decimal,
        "max_ratio": result.summary.max_ratio_decimal,
        "min_ratio_squared": list(result.summary.min_ratio_squared),
        "max_ratio_squared": list(result.summary.max_ratio_squared),
        "slope": result.summary.slope,
        "violations": result.summary.violations,
    }
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True))
    _write_manifest(
        outdir,
        {
            "argv_config": _resolved_config(args),
            "set_provenance": [r.provenance for r in result.records],
            "timings_ms": {r.provenance: r.runtime_ms for r in result.records},
        },
    )
    lines = [
        f"scan of {format_bipoly(f)} over {args.family} at sizes {sizes}",
        f"min ratio {result.summary.min_ratio_decimal}, "
        f"max ratio {result.summary.max_ratio_decimal}, slope {result.summary.slope:.4f}",
        f"records written to {outdir / 'records.csv'}",
    ]
    if not args.json:
        for line in lines:
            print(line)
    else:
        print(json.dumps(summary, indent=2, sort_keys=True))
    if result.summary.violations:
        print(
            f"floor violation in {result.summary.violations} record(s)", file=sys.stderr
        )
        return 1
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumprod",
        description="Exact toolkit for polynomial sum-product growth experiments.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON to stdout")
        p.add_argument("--out", default=None, help="directory for output artifacts")
        p.add_argument("--seed", type=int, default=0, help="seed for random generators")
        p.add_argument(
            "--degree-cap",
            type=int,
            default=DEFAULT_DEGREE_CAP,
            help="total-degree cap for the factorization oracle",
        )

    p = sub.add_parser("classify", help="degeneracy / compositeness with certificates")
    p.add_argument("--poly", required=True, help="polynomial text, JSON, or file")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sigma", help="scan for reducible fibers f - lambda")
    p.add_argument("--poly", required=True)
    p.add_argument("--extra-candidates", default="", help="comma-separated rationals")
    p.add_argument("--sweep-height", type=int, default=DEFAULT_SWEEP_HEIGHT)
    common(p)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("incidence", help="translated-curve incidence statistics")
    p.add_argument("--poly", required=True)
    p.add_argument("--set", required=True, help="generator spec like AP(8,1,1) or a file")
    p.add_argument("--sweep-height", type=int, default=DEFAULT_SWEEP_HEIGHT)
    common(p)
    p.set_defaults(func=cmd_incidence)

    p = sub.add_parser("scan", help="sum-product growth scan over a set family")
    p.add_argument("--poly", required=True)
    p.add_argument("--family", required=True, help="AP, GP, or random")
    p.add_argument("--sizes", default="8,16,32,64", help="comma-separated set sizes")
    p.add_argument("--floor", default=None, help="regression floor c (rational)")
    p.add_argument("--range", default="1:10000", help="lo:hi for the random family")
    common(p)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegreeCapExceeded as exc:
        print(f"degree cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (HypothesisViolated, SumprodError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (PolyParseError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
