"""Certified factorization over the rationals and absolute-factor counting.

Rational factorization uses Kronecker's method: univariate factors are found
by interpolating through divisor tuples of integer evaluations, bivariate
inputs are reduced to the univariate case by the substitution y -> x^D with
D above the x-degree. The method is exponential, so a hard degree cap (and an
internal search budget) turns pathological inputs into a clear error instead
of a hang. Every returned factorization is certified by re-expansion before
it leaves this module.

Counting factors over the complex numbers uses the Ruppert/Gao criterion: for
squarefree f the dimension of the solution space of

    f * (g_y - h_x) = f_y * g - f_x * h

over polynomial unknowns g (x-degree < deg_x f, y-degree <= deg_y f) and
h (x-degree <= deg_x f, y-degree < deg_y f) equals the number of absolutely
irreducible factors of f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import integers, linalg
from .errors import DegreeCapExceeded, NotSquarefree, UnivariateInput
from .poly import BiPoly, UniPoly, bi_divexact, bi_gcd, grlex_key

DEFAULT_DEGREE_CAP = 8

# combined cap on divisor-tuple attempts inside one univariate factor search
_SEARCH_BUDGET = 400_000


@dataclass(frozen=True)
class FactorList:
    """A certified factorization: constant * prod(factor^multiplicity).

    Factors are primitive with positive graded-lex leading coefficient and
    are stored with x/y exponents even when univariate.
    """

    constant: Fraction
    factors: tuple[tuple[BiPoly, int], ...]

    def expand(self) -> BiPoly:
        out = BiPoly.const(self.constant)
        for p, mult in self.factors:
            out = out * p**mult
        return out

    def nontrivial_pieces(self) -> int:
        """Total factor count with multiplicity, constants excluded."""
        return sum(m for p, m in self.factors if not p.is_constant)

    def verify(self, original: BiPoly) -> bool:
        return self.expand() == original


@dataclass(frozen=True)
class AbsReducibleWitness:
    """Certificate that a polynomial splits over the complex numbers.

    Either the solution-space dimension of the Ruppert/Gao system (>= 2), or
    the degree of a univariate polynomial (any degree >= 2 splits over C).
    """

    kind: str  # "nullspace" or "univariate"
    value: int

    def revalidate(self, fiber: BiPoly) -> bool:
        if self.kind == "univariate":
            try:
                p, _ = fiber.to_unipoly()
            except ValueError:
                return False
            return p.degree == self.value and self.value >= 2
        return count_abs_factors(fiber) == self.value and self.value >= 2


# ---------------------------------------------------------------------------
# squarefree part


def gcd_with_gradient(f: BiPoly) -> BiPoly:
    """gcd(f, f_x, f_y); constant exactly when f is squarefree."""
    g = bi_gcd(f, f.derivative("x"))
    return bi_gcd(g, f.derivative("y"))


def is_squarefree(f: BiPoly) -> bool:
    return gcd_with_gradient(f).is_constant


def squarefree_part(f: BiPoly) -> BiPoly:
    """Product of the distinct irreducible factors of f, multiplicity one."""
    if f.is_zero:
        raise ValueError("squarefree part of zero polynomial")
    if f.is_constant:
        return BiPoly.const(1)
    g = gcd_with_gradient(f)
    if g.is_constant:
        return f.normalized()
    out = bi_divexact(f, g)
    assert out is not None, "gcd with gradient must divide f"
    return out.normalized()


# ---------------------------------------------------------------------------
# absolute-factor counting (Ruppert/Gao)


def count_abs_factors(f: BiPoly) -> int:
    """Number of absolutely irreducible factors of a squarefree bivariate f."""
    if f.is_constant:
        raise ValueError("factor count of a constant")
    dx, dy = f.deg_x, f.deg_y
    if dx < 1 or dy < 1:
        raise UnivariateInput("input must involve both variables")
    if not is_squarefree(f):
        raise NotSquarefree("input has a repeated factor")
    f = f.normalized()
    fx = f.derivative("x")
    fy = f.derivative("y")
    g_monomials = [(i, j) for i in range(dx) for j in range(dy + 1)]
    h_monomials = [(i, j) for i in range(dx + 1) for j in range(dy)]
    columns = []
    for (i, j) in g_monomials:
        mono = BiPoly({(i, j): 1})
        columns.append(f * mono.derivative("y") - fy * mono)
    for (i, j) in h_monomials:
        mono = BiPoly({(i, j): 1})
        columns.append(fx * mono - f * mono.derivative("x"))
    rows_index: dict[tuple[int, int], int] = {}
    for col in columns:
        for key in col.t:
            rows_index.setdefault(key, len(rows_index))
    matrix = [
        [Fraction(0)] * len(columns) for _ in range(len(rows_index))
    ]
    for cidx, col in enumerate(columns):
        for key, v in col.t.items():
            matrix[rows_index[key]][cidx] = v
    int_rows = linalg.scale_rows_to_int(matrix)
    # certified fast path: a modular rank is a lower bound, and the solution
    # space always contains one vector, so full modular rank pins dim = 1
    if linalg.rank_mod_prime(int_rows) == len(columns) - 1:
        return 1
    rank = linalg.rank_int(int_rows)
    dim = len(columns) - rank
    assert dim >= 1, "solution space always contains the gradient solution"
    return dim


# ---------------------------------------------------------------------------
# univariate factorization (Kronecker)


def rational_roots(p: UniPoly) -> list[Fraction]:
    """Distinct rational roots, via the rational root theorem."""
    if p.is_zero:
        raise ValueError("every rational is a root of the zero polynomial")
    prim, _ = p.primitive()
    roots = []
    low = min(prim.c)
    if low > 0:
        roots.append(Fraction(0))
        prim = UniPoly({d - low: v for d, v in prim.c.items()})
    if prim.degree == 0:
        return sorted(roots)
    a0 = int(prim.coeff(0))
    an = int(prim.lc)
    if a0 == 0:
        # constant stripped above, so a0 != 0 unless prim was a monomial
        return sorted(roots)
    for num in integers.divisors(a0):
        for den in integers.divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if prim(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _interpolate(points: list[tuple[int, Fraction]]) -> UniPoly:
    """Lagrange interpolation through (integer node, value) pairs."""
    out = UniPoly.zero()
    for idx, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = UniPoly.const(yi)
        den = Fraction(1)
        for jdx, (xj, _) in enumerate(points):
            if jdx == idx:
                continue
            num = num * UniPoly({1: 1, 0: -xj})
            den *= xi - xj
        out = out + num * (1 / den)
    return out


def _strip_linear_factors(p: UniPoly) -> tuple[UniPoly, list[tuple[UniPoly, int]]]:
    found: dict[UniPoly, int] = {}
    for r in rational_roots(p):
        lin = UniPoly({1: r.denominator, 0: -r.numerator})
        while True:
            q, rem = p.divrem(lin)
            if not rem.is_zero:
                break
            p = q
            found[lin] = found.get(lin, 0) + 1
            if p.degree == 0:
                break
    return p, list(found.items())


def _signed_divisors(v: int) -> list[int]:
    ds = integers.divisors(v)
    out = []
    for d in ds:
        out.append(d)
        out.append(-d)
    return out


def _search_degree_r_factor(p: UniPoly, r: int, budget: list[int]) -> UniPoly | None:
    """Find one degree-r integer factor of primitive integer p, or None.

    Interpolates candidates through divisor tuples of the values of p at
    r+1 small integer nodes, pruned by the congruence (x_i - x_j) | (d_i - d_j)
    that any integer polynomial must satisfy.
    """
    nodes = []
    t = 0
    while len(nodes) < r + 5:
        v = p(t)
        assert v != 0, "rational roots were stripped first"
        nodes.append((t, int(v)))
        t = -t if t > 0 else -t + 1
    nodes.sort(key=lambda nv: (abs(nv[1]), nv[0]))
    nodes = nodes[: r + 1]
    lead = int(p.lc)

    divisor_lists = [_signed_divisors(v) for _, v in nodes]

    def recurse(level: int, chosen: list[int]):
        if budget[0] <= 0:
            raise DegreeCapExceeded("factor search budget exhausted")
        if level == len(nodes):
            cand = _interpolate([(x, Fraction(d)) for (x, _), d in zip(nodes, chosen)])
            if cand.degree != r:
                return None
            if any(v.denominator != 1 for v in cand.c.values()):
                return None
            if lead % int(cand.lc) != 0:
                return None
            q, rem = p.divrem(cand)
            if rem.is_zero and all(v.denominator == 1 for v in q.c.values()):
                return cand
            return None
        xi = nodes[level][0]
        for d in divisor_lists[level]:
            budget[0] -= 1
            if budget[0] <= 0:
                raise DegreeCapExceeded("factor search budget exhausted")
            ok = True
            for lv in range(level):
                xj = nodes[lv][0]
                if (d - chosen[lv]) % (xi - xj) != 0:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(d)
            got = recurse(level + 1, chosen)
            chosen.pop()
            if got is not None:
                return got
        return None

    return recurse(0, [])


def factor_univariate(p: UniPoly) -> tuple[Fraction, list[tuple[UniPoly, int]]]:
    """Complete factorization over Q into primitive irreducibles.

    Returns (constant, [(factor, multiplicity), ...]) with the product
    reproducing p exactly; factors have positive leading coefficients.
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    prim, scale = p.primitive()
    if prim.degree == 0:
        return scale, []
    factors: dict[UniPoly, int] = {}
    low = min(prim.c)
    if low > 0:
        factors[UniPoly({1: 1})] = low
        prim = UniPoly({d - low: v for d, v in prim.c.items()})
    prim, linear = _strip_linear_factors(prim)
    for f, m in linear:
        factors[f] = factors.get(f, 0) + m
    budget = [_SEARCH_BUDGET]
    while prim.degree >= 2:
        found = None
        for r in range(2, prim.degree // 2 + 1):
            found = _search_degree_r_factor(prim, r, budget)
            if found is not None:
                break
        if found is None:
            break  # irreducible
        fac = found.normalized()
        while True:
            q, rem = prim.divrem(fac)
            if not rem.is_zero:
                break
            prim = q
            factors[fac] = factors.get(fac, 0) + 1
    if prim.degree >= 1:
        fac, s = prim.primitive()
        factors[fac] = factors.get(fac, 0) + 1
        scale *= s
    elif not prim.is_zero:
        scale *= prim.coeff(0)
    # certification
    check = UniPoly.const(scale)
    for f, m in factors.items():
        check = check * f**m
    assert check == p, "univariate factorization failed certification"
    return scale, sorted(factors.items(), key=lambda fm: (fm[0].degree, sorted(fm[0].c.items())))


# ---------------------------------------------------------------------------
# bivariate factorization (Kronecker substitution)


def _kronecker_substitute(f: BiPoly, D: int) -> UniPoly:
    return UniPoly({i + D * j: v for (i, j), v in f.t.items()})


def _kronecker_invert(u: UniPoly, D: int, dy: int) -> BiPoly | None:
    terms = {}
    for e, v in u.c.items():
        i, j = e % D, e // D
        if j > dy:
            return None
        terms[(i, j)] = v
    return BiPoly(terms)


def _find_bivariate_factor(f: BiPoly) -> BiPoly | None:
    """One irreducible proper factor of a primitive, genuinely bivariate f."""
    dx, dy = f.deg_x, f.deg_y
    D = dx + 1
    fhat = _kronecker_substitute(f, D)
    _, uni_factors = factor_univariate(fhat)
    pieces = []
    for p, m in uni_factors:
        pieces.extend([p] * m)
    if len(pieces) > 20:
        raise DegreeCapExceeded("too many univariate pieces for subset search")
    total_deg = fhat.degree
    combos = []
    for mask in range(1, 2 ** len(pieces) - 1):
        deg = sum(pieces[b].degree for b in range(len(pieces)) if mask >> b & 1)
        if 0 < deg < total_deg:
            combos.append((deg, mask))
    seen: set = set()
    for _, mask in sorted(combos):
        u = UniPoly.const(1)
        for b in range(len(pieces)):
            if mask >> b & 1:
                u = u * pieces[b]
        cand = _kronecker_invert(u, D, dy)
        if cand is None:
            continue
        cand = cand.normalized()
        if cand.is_constant or cand in seen:
            continue
        seen.add(cand)
        if bi_divexact(f, cand) is not None:
            return cand
    return None


def factor_rational(f: BiPoly, cap: int = DEFAULT_DEGREE_CAP) -> FactorList:
    """Complete factorization of f into factors irreducible over Q.

    Raises DegreeCapExceeded when the total degree is above `cap`; the
    Kronecker search is exponential and the cap keeps failures explicit.
    """
    if f.is_zero or f.is_constant:
        raise ValueError("factorization needs a nonconstant polynomial")
    if f.total_degree > cap:
        raise DegreeCapExceeded(
            f"total degree {f.total_degree} exceeds cap {cap}"
        )
    original = f
    prim, scale = f.primitive()
    factors: dict[BiPoly, int] = {}

    def add(p: BiPoly, mult: int = 1):
        if mult and not p.is_constant:
            factors[p] = factors.get(p, 0) + mult

    # monomial content
    vx = min(i for i, _ in prim.t)
    vy = min(j for _, j in prim.t)
    if vx or vy:
        prim = BiPoly({(i - vx, j - vy): v for (i, j), v in prim.t.items()})
        add(BiPoly.x(), vx)
        add(BiPoly.y(), vy)

    def add_univariate(p: UniPoly, var: str):
        nonlocal scale
        s, facs = factor_univariate(p)
        scale *= s
        for q, m in facs:
            add(q.to_bipoly(var), m)

    # contents pure in one variable
    if prim.deg_x == 0:
        add_univariate(prim.to_unipoly()[0], "y")
        prim = BiPoly.const(1)
    elif prim.deg_y == 0:
        add_univariate(prim.to_unipoly()[0], "x")
        prim = BiPoly.const(1)
    else:
        from .poly import content_x, primitive_part_x

        cont = content_x(prim)
        if cont.degree >= 1:
            add_univariate(cont, "y")
            prim = primitive_part_x(prim)
        if prim.deg_y == 0 and not prim.is_constant:
            add_univariate(prim.to_unipoly()[0], "x")
            prim = BiPoly.const(1)

    while not prim.is_constant:
        fac = _find_bivariate_factor(prim)
        if fac is None:
            p, s = prim.primitive()
            add(p)
            scale *= s
            prim = BiPoly.const(1)
            break
        mult = 0
        while True:
            q = bi_divexact(prim, fac)
            if q is None:
                break
            prim = q
            mult += 1
        add(fac, mult)
    if prim.is_constant and not prim.is_zero:
        scale *= prim.coeff(0, 0)

    ordered = tuple(
        sorted(
            factors.items(),
            key=lambda fm: (
                fm[0].total_degree,
                sorted(fm[0].t.items(), key=lambda kv: grlex_key(kv[0])),
            ),
        )
    )
    result = FactorList(constant=scale, factors=ordered)
    assert result.verify(original), "factorization failed certification"
    return result


# ---------------------------------------------------------------------------
# fiber reducibility (shared by the compositeness test and the sigma scan)


@dataclass(frozen=True)
class FiberStatus:
    """Reducibility of one polynomial over C, with how it was decided."""

    reducible: bool
    kind: str  # "irreducible", "repeated-factor", "nullspace", "univariate"
    abs_count: int | None = None


def fiber_reducibility(fiber: BiPoly) -> FiberStatus:
    """Decide whether `fiber` factors nontrivially over the complex numbers.

    Degree >= 2 is assumed. Univariate inputs of degree >= 2 always split
    over C; a repeated factor is a nontrivial factorization; otherwise the
    Ruppert/Gao count decides.
    """
    if fiber.deg_x <= 0 or fiber.deg_y <= 0:
        p, _ = fiber.to_unipoly()
        return FiberStatus(reducible=p.degree >= 2, kind="univariate")
    if not is_squarefree(fiber):
        return FiberStatus(reducible=True, kind="repeated-factor")
    n = count_abs_factors(fiber)
    if n >= 2:
        return FiberStatus(reducible=True, kind="nullspace", abs_count=n)
    return FiberStatus(reducible=False, kind="irreducible", abs_count=1)
