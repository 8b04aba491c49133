"""Translated-curve families and incidence statistics.

For each pair (a, b) from a finite set the curve is the graph of
T(x) = f(x - a, b). Two pairs are equivalent exactly when those univariate
polynomials coincide, so curves are keyed by their coefficient vectors. For a
non-composite f of degree k every equivalence class has at most k^3 members;
a composite f can concentrate whole diagonals into one class, which is
reported as a witness instead of a violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundViolated, DegenerateSystem
from .factor import FactorList, factor_rational, rational_roots
from .poly import BiPoly, UniPoly, bi_gcd, resultant_eliminating, uni_gcd
from .spectrum import SigmaReport, remove_sigma_rows

CurveKey = tuple[Fraction, ...]


def curve_key(f: BiPoly, a: Fraction, b: Fraction) -> CurveKey:
    """Coefficient vector of x -> f(x - a, b), ascending degree."""
    shifted = f.specialize_y(b).shift(-a)
    return tuple(shifted.coeff_list())


@dataclass(frozen=True)
class CurveFamily:
    classes: dict[CurveKey, tuple[tuple[Fraction, Fraction], ...]]
    removed_b: tuple[Fraction, ...]
    base: tuple[Fraction, ...]
    degree: int

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def max_class_size(self) -> int:
        return max((len(v) for v in self.classes.values()), default=0)

    def histogram(self) -> list[tuple[int, int]]:
        """(class size, number of classes) pairs, ascending size."""
        counts: dict[int, int] = {}
        for members in self.classes.values():
            counts[len(members)] = counts.get(len(members), 0) + 1
        return sorted(counts.items())


def build_family(f: BiPoly, A) -> CurveFamily:
    """Group all (a, b) pairs over the pruned set by their curve key.

    Rows b with f(x, b) identically zero are dropped first; a degree-k
    polynomial admits at most k such rows, and the pruned set replaces A in
    both coordinates.
    """
    if f.is_constant:
        raise ValueError("family needs a nonconstant polynomial")
    k = f.total_degree
    elements = sorted(set(Fraction(v) for v in A))
    removed = tuple(b for b in elements if f.specialize_y(b).is_zero)
    assert len(removed) <= k, "zero-row count exceeds the degree bound"
    kept = tuple(b for b in elements if b not in set(removed))
    classes: dict[CurveKey, list[tuple[Fraction, Fraction]]] = {}
    specialized = {b: f.specialize_y(b) for b in kept}
    for b in kept:
        pb = specialized[b]
        for a in kept:
            key = tuple(pb.shift(-a).coeff_list())
            classes.setdefault(key, []).append((a, b))
    frozen = {key: tuple(sorted(v)) for key, v in classes.items()}
    return CurveFamily(classes=frozen, removed_b=removed, base=kept, degree=k)


@dataclass(frozen=True)
class ClassBoundReport:
    max_class_size: int
    class_count: int
    size_bound: int
    count_floor_num: int  # |A'|^2, compared as class_count * k^3 >= |A'|^2
    composite_witness: tuple[CurveKey, tuple] | None
    ok: bool


def check_class_bound(family: CurveFamily, k: int, composite: bool) -> ClassBoundReport:
    """Check the k^3 class-size ceiling and the |A'|^2/k^3 class-count floor.

    For a composite polynomial the bounds can fail legitimately; the largest
    class is returned as the witness instead.
    """
    n = len(family.base)
    bound = k**3
    mx = family.max_class_size
    cnt = family.class_count
    if composite:
        witness = None
        if family.classes:
            key = max(family.classes, key=lambda kk: (len(family.classes[kk]), kk))
            witness = (key, family.classes[key])
        return ClassBoundReport(mx, cnt, bound, n * n, witness, ok=True)
    if mx > bound:
        key = max(family.classes, key=lambda kk: len(family.classes[kk]))
        raise BoundViolated(
            f"class of size {mx} exceeds {bound} for a non-composite polynomial",
            witness=(key, family.classes[key]),
        )
    if cnt * bound < n * n:
        raise BoundViolated(
            f"class count {cnt} below the floor {n * n}/{bound}", witness=None
        )
    return ClassBoundReport(mx, cnt, bound, n * n, None, ok=True)


@dataclass(frozen=True)
class IncidenceReport:
    point_count: int
    curve_count: int
    incidences: int
    alpha: int
    beta: int
    szekely_terms: tuple[float, float, float]
    szekely_ratio: float
    per_curve_min: int
    removed_points: int

    def to_dict(self) -> dict:
        return {
            "point_count": self.point_count,
            "curve_count": self.curve_count,
            "incidences": self.incidences,
            "alpha": self.alpha,
            "beta": self.beta,
            "szekely_terms": list(self.szekely_terms),
            "szekely_ratio": self.szekely_ratio,
            "per_curve_min": self.per_curve_min,
            "removed_points": self.removed_points,
        }


def incidence_report(f: BiPoly, A, sigma: SigmaReport) -> tuple[IncidenceReport, CurveFamily]:
    """Count exact incidences between the pruned grid and the curve family.

    Points are (sum, value) pairs from (A'+A') x f(A', A') minus the rows
    whose value is a certified reducible-fiber lambda. Each curve is a graph,
    so it meets a column of the grid at most once and the count per curve is
    the number of sums s with T(s) a kept value.
    """
    family = build_family(f, A)
    kept = family.base
    k = family.degree
    sums = sorted({a + b for a in kept for b in kept})
    values = sorted({f(a, b) for a in kept for b in kept})
    grid = remove_sigma_rows(sums, values, sigma)
    value_set = set(grid.kept_values)
    per_curve = []
    total = 0
    for key in sorted(family.classes):
        curve = UniPoly(dict(enumerate(key)))
        cnt = sum(1 for s in grid.sums if curve(s) in value_set)
        per_curve.append(cnt)
        total += cnt
    alpha = k
    beta = k * k
    P = grid.point_count
    L = family.class_count
    terms = (
        (alpha**0.5) * (beta ** (1 / 3)) * (P ** (2 / 3)) * (L ** (2 / 3)),
        float(L),
        float(beta * P),
    )
    bound = sum(terms)
    report = IncidenceReport(
        point_count=P,
        curve_count=L,
        incidences=total,
        alpha=alpha,
        beta=beta,
        szekely_terms=terms,
        szekely_ratio=(total / bound) if bound else 0.0,
        per_curve_min=min(per_curve, default=0),
        removed_points=grid.removed_count,
    )
    return report, family


@dataclass(frozen=True)
class SolutionCount:
    """Rational common solutions of the two-curve system (an undercount of
    the complex Bezout total, which still tests the k^2 ceiling)."""

    count: int
    solutions: tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class CommonFactor:
    factors: FactorList


def curve_pair_solutions(
    f: BiPoly, p1: tuple[Fraction, Fraction], p2: tuple[Fraction, Fraction]
) -> SolutionCount | CommonFactor:
    """Solve {f(x0 - a, b) = y0, f(x0' - a, b) = y0'} for pairs (a, b).

    With no common factor the curves meet in at most k^2 points; the rational
    solutions are found by eliminating a with a resultant and
    back-substituting. A nonconstant gcd is returned as a factorization
    certificate instead.
    """
    if p1 == p2:
        raise ValueError("points must be distinct")
    (x0, y0), (x1, y1) = p1, p2
    k = f.total_degree
    F1 = f.subst_x_affine(Fraction(x0), Fraction(-1)) - BiPoly.const(Fraction(y0))
    F2 = f.subst_x_affine(Fraction(x1), Fraction(-1)) - BiPoly.const(Fraction(y1))
    if F1.is_zero or F2.is_zero:
        raise DegenerateSystem("a curve equation collapsed to zero")
    g = bi_gcd(F1, F2)
    if not g.is_constant:
        return CommonFactor(factor_rational(g))
    if F1.deg_x <= 0 and F2.deg_x <= 0:
        # both equations constrain y alone and share no root
        return SolutionCount(0, ())
    elim = resultant_eliminating(F1, F2, "x")
    assert not elim.is_zero, "coprime curves have a nonzero eliminant"
    solutions = []
    if elim.degree >= 1:
        ys = rational_roots(elim)
    else:
        ys = []
    for yv in ys:
        u1 = F1.specialize_y(yv)
        u2 = F2.specialize_y(yv)
        if u1.is_zero and u2.is_zero:
            raise AssertionError("common line despite constant gcd")
        if u1.is_zero:
            shared = u2
        elif u2.is_zero:
            shared = u1
        else:
            shared = uni_gcd(u1, u2)
        if shared.degree >= 1:
            for xv in rational_roots(shared):
                solutions.append((xv, yv))
    count = len(solutions)
    if count > k * k:
        raise BoundViolated(
            f"{count} rational solutions exceed the ceiling {k * k}",
            witness=tuple(solutions),
        )
    return SolutionCount(count, tuple(sorted(solutions)))
