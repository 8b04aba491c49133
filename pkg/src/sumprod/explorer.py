"""Set families, exact sumsets and image sets, and the growth regression.

Everything asserted here is integer arithmetic: the comparison
|A+A| * |f(A,A)| >= c * |A|^(5/2) is carried out as product^2 >= c^2 * n^5,
so no irrational number ever enters a checked fact. Decimal renderings are
display-only.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass
from fractions import Fraction

from .classify import is_degenerate
from .errors import DegenerateSpec, HypothesisViolated
from .poly import BiPoly


@dataclass(frozen=True)
class ApSpec:
    n: int
    start: Fraction
    step: Fraction

    def describe(self) -> str:
        return f"AP(n={self.n},start={self.start},step={self.step})"


@dataclass(frozen=True)
class GpSpec:
    n: int
    first: Fraction
    ratio: Fraction

    def describe(self) -> str:
        return f"GP(n={self.n},first={self.first},ratio={self.ratio})"


@dataclass(frozen=True)
class RandomIntSpec:
    n: int
    lo: int
    hi: int
    seed: int

    def describe(self) -> str:
        return f"RandomInt(n={self.n},lo={self.lo},hi={self.hi},seed={self.seed})"


@dataclass(frozen=True)
class UnionSpec:
    parts: tuple

    def describe(self) -> str:
        inner = ",".join(p.describe() for p in self.parts)
        return f"Union({inner})"


SetSpec = ApSpec | GpSpec | RandomIntSpec | UnionSpec


@dataclass(frozen=True)
class RatSet:
    """A finite set of rationals plus enough provenance to regenerate it."""

    elements: tuple[Fraction, ...]
    provenance: str

    def __post_init__(self):
        elems = tuple(self.elements)
        if any(elems[i] >= elems[i + 1] for i in range(len(elems) - 1)):
            raise ValueError("elements must be strictly increasing")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def generate_set(spec: SetSpec) -> RatSet:
    """Materialize a generator spec; deterministic for a fixed seed."""
    if isinstance(spec, ApSpec):
        if spec.n < 1:
            raise DegenerateSpec("need n >= 1")
        if not spec.step:
            raise DegenerateSpec("zero step collapses the progression")
        elems = sorted(Fraction(spec.start) + Fraction(spec.step) * i for i in range(spec.n))
    elif isinstance(spec, GpSpec):
        if spec.n < 1:
            raise DegenerateSpec("need n >= 1")
        if not spec.first:
            raise DegenerateSpec("zero first term collapses the progression")
        if spec.ratio in (0, 1, -1):
            raise DegenerateSpec("ratio must avoid 0 and +-1")
        elems = sorted(Fraction(spec.first) * Fraction(spec.ratio) ** i for i in range(spec.n))
    elif isinstance(spec, RandomIntSpec):
        population = spec.hi - spec.lo + 1
        if spec.n < 1 or population < spec.n:
            raise DegenerateSpec(
                f"cannot draw {spec.n} distinct integers from [{spec.lo},{spec.hi}]"
            )
        rng = random.Random(spec.seed)
        elems = sorted(Fraction(v) for v in rng.sample(range(spec.lo, spec.hi + 1), spec.n))
    elif isinstance(spec, UnionSpec):
        merged = set()
        for part in spec.parts:
            merged.update(generate_set(part).elements)
        elems = sorted(merged)
    else:
        raise TypeError(f"unknown spec {spec!r}")
    if len(set(elems)) != len(elems):
        raise DegenerateSpec("generator produced duplicate elements")
    return RatSet(tuple(elems), spec.describe())


def sumset(A: RatSet) -> RatSet:
    vals = sorted({a + b for a in A.elements for b in A.elements})
    return RatSet(tuple(vals), f"sumset({A.provenance})")


def image_set(f: BiPoly, A: RatSet) -> RatSet:
    """All values f(a, a') over ordered pairs from A."""
    out = set()
    for b in A.elements:
        pb = f.specialize_y(b)
        for a in A.elements:
            out.add(pb(a))
    return RatSet(tuple(sorted(out)), f"image({A.provenance})")


@dataclass(frozen=True)
class ExperimentRecord:
    poly_id: str
    provenance: str
    n: int
    sumset_size: int
    image_size: int
    product: int
    ratio_squared: tuple[int, int]  # (product^2, n^5), compared exactly
    ratio_decimal: str
    removed_rows: int
    runtime_ms: float
    floor_violation: bool


@dataclass(frozen=True)
class ScanSummary:
    min_ratio_squared: tuple[int, int]
    max_ratio_squared: tuple[int, int]
    min_ratio_decimal: str
    max_ratio_decimal: str
    slope: float
    violations: int


@dataclass(frozen=True)
class ScanResult:
    records: tuple[ExperimentRecord, ...]
    summary: ScanSummary


def _ratio_decimal(product: int, n: int) -> str:
    return f"{product / n**2.5:.6f}"


def run_scan(
    f: BiPoly,
    specs: list[SetSpec],
    floor_c: Fraction | None = None,
    poly_id: str = "f",
) -> ScanResult:
    """One record per spec plus a growth summary for the size ladder.

    Refuses degenerate polynomials: an arithmetic progression keeps both
    |A+A| and |f(A,A)| linear in |A| for those, so the lower bound under test
    simply does not apply.
    """
    if f.is_constant or is_degenerate(f) is not None:
        raise HypothesisViolated("scan requires a non-degenerate polynomial")
    records = []
    for spec in specs:
        t0 = time.perf_counter()
        A = generate_set(spec)
        n = len(A)
        s = len(sumset(A))
        i = len(image_set(f, A))
        removed = sum(1 for b in A.elements if f.specialize_y(b).is_zero)
        product = s * i
        violation = False
        if floor_c is not None:
            c = Fraction(floor_c)
            violation = (
                product * product * c.denominator**2 < c.numerator**2 * n**5
            )
        records.append(
            ExperimentRecord(
                poly_id=poly_id,
                provenance=A.provenance,
                n=n,
                sumset_size=s,
                image_size=i,
                product=product,
                ratio_squared=(product * product, n**5),
                ratio_decimal=_ratio_decimal(product, n),
                removed_rows=removed,
                runtime_ms=(time.perf_counter() - t0) * 1000.0,
                floor_violation=violation,
            )
        )
    records.sort(key=lambda r: (r.poly_id, r.n, r.provenance))
    ratios = [Fraction(p2, n5) for r in records for (p2, n5) in [r.ratio_squared]]
    lo = min(ratios)
    hi = max(ratios)
    if len({r.n for r in records}) >= 2:
        fit = statistics.linear_regression(
            [math.log(r.n) for r in records], [math.log(r.product) for r in records]
        )
        slope = fit.slope
    else:
        slope = float("nan")
    summary = ScanSummary(
        min_ratio_squared=(lo.numerator, lo.denominator),
        max_ratio_squared=(hi.numerator, hi.denominator),
        min_ratio_decimal=f"{math.sqrt(lo):.6f}",
        max_ratio_decimal=f"{math.sqrt(hi):.6f}",
        slope=slope,
        violations=sum(1 for r in records if r.floor_violation),
    )
    return ScanResult(tuple(records), summary)


@dataclass(frozen=True)
class CoreInequalityReport:
    image_f: int
    image_core: int
    chain_degree: int
    ok: bool


def check_core_inequality(f: BiPoly, A: RatSet) -> CoreInequalityReport:
    """Verify |f(A,A)| >= |core(A,A)| / (product of outer degrees) exactly."""
    from .classify import decompose_fully

    core, chain = decompose_fully(f)
    deg = 1
    for q in chain:
        deg *= q.degree
    img_f = len(image_set(f, A))
    img_core = len(image_set(core, A))
    return CoreInequalityReport(
        image_f=img_f,
        image_core=img_core,
        chain_degree=deg,
        ok=img_f * deg >= img_core,
    )
