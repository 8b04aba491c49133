"""Classification of bivariate polynomials by composition structure.

A polynomial is *degenerate* when it is an outer univariate polynomial applied
to a linear form a*x + b*y, and *composite* when it is an outer polynomial of
degree >= 2 applied to any inner bivariate polynomial. Degeneracy is decided
by gradient proportionality with a verified certificate. Compositeness is
decided through the Stein bound: a non-composite polynomial of total degree k
has fewer than k reducible fibers f - lambda, so testing k distinct fibers is
conclusive in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import ConstantPolynomial, HypothesisViolated, InsufficientSamples
from .factor import fiber_reducibility
from .poly import BiPoly, UniPoly, grlex_key


@dataclass(frozen=True)
class LinearForm:
    """A nonzero form alpha*x + beta*y, scaled so the first nonzero entry is 1."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if not self.alpha and not self.beta:
            raise ValueError("zero linear form")
        lead = self.alpha if self.alpha else self.beta
        if lead != 1:
            object.__setattr__(self, "alpha", self.alpha / lead)
            object.__setattr__(self, "beta", self.beta / lead)

    def to_bipoly(self) -> BiPoly:
        return BiPoly({(1, 0): self.alpha, (0, 1): self.beta})


@dataclass(frozen=True)
class Decomposition:
    """A verified composition f = outer(inner)."""

    outer: UniPoly
    inner: BiPoly
    kind: str  # "degenerate" or "composite"
    linear: LinearForm | None = None

    def expand(self) -> BiPoly:
        return self.outer.compose_bi(self.inner)

    def verify(self, f: BiPoly) -> bool:
        if self.kind == "composite" and self.outer.degree < 2:
            return False
        return self.expand() == f


@dataclass(frozen=True)
class ShiftSamples:
    """Rows (a_i, b_i) with pairwise distinct a_i."""

    pairs: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        avals = [a for a, _ in self.pairs]
        if len(set(avals)) != len(avals):
            raise ValueError("sample rows must have pairwise distinct a values")


@dataclass(frozen=True)
class CompositenessVerdict:
    composite: bool
    witness_lambdas: tuple[Fraction, ...] = ()
    certificate_lambda: Fraction | None = None
    univariate: bool = False


def normalize_orientation(f: BiPoly) -> tuple[BiPoly, bool]:
    """Swap the variables when deg_x < deg_y; the image set over A x A is unchanged."""
    if f.is_constant:
        raise ConstantPolynomial("orientation of a constant is undefined")
    if f.deg_x < f.deg_y:
        return f.swap(), True
    return f, False


def is_degenerate(f: BiPoly) -> Decomposition | None:
    """Certificate that f is an outer polynomial of a linear form, or None.

    When both partial derivatives are nonzero, f has this shape exactly when
    f_x is a constant multiple c of f_y, and then f = Q(x + y/c) with Q read
    off the specialization y = 0. The certificate is re-expanded before it is
    returned.
    """
    if f.is_constant:
        raise ConstantPolynomial("cannot classify a constant")
    fx = f.derivative("x")
    fy = f.derivative("y")
    if fy.is_zero:
        outer = UniPoly({i: v for (i, _), v in f.t.items()})
        dec = Decomposition(outer, BiPoly.x(), "degenerate", LinearForm(Fraction(1), Fraction(0)))
        assert dec.verify(f)
        return dec
    if fx.is_zero:
        outer = UniPoly({j: v for (_, j), v in f.t.items()})
        dec = Decomposition(outer, BiPoly.y(), "degenerate", LinearForm(Fraction(0), Fraction(1)))
        assert dec.verify(f)
        return dec
    key, lead = max(fy.t.items(), key=lambda kv: grlex_key(kv[0]))
    c = fx.coeff(*key) / lead
    if not c or fx != fy * c:
        return None
    form = LinearForm(c, Fraction(1))  # canonicalizes to x + y/c
    outer = f.specialize_y(0)
    dec = Decomposition(outer, form.to_bipoly(), "degenerate", form)
    if not dec.verify(f):
        return None
    return dec


def is_composite(
    f: BiPoly, lam_schedule: tuple[Fraction, ...] | None = None
) -> CompositenessVerdict:
    """Decide whether f = Q(g) for some outer Q of degree >= 2.

    Tests k = total-degree distinct fibers f - lambda for reducibility over
    the complex numbers. A composite polynomial has every fiber reducible; a
    non-composite one has fewer than k reducible fibers in total, so some
    sampled fiber is irreducible and certifies the verdict.
    """
    k = f.total_degree
    if k < 2:
        raise ValueError("compositeness needs total degree >= 2")
    if f.deg_x <= 0 or f.deg_y <= 0:
        # a one-variable polynomial of degree >= 2 is its own outer polynomial
        return CompositenessVerdict(composite=True, univariate=True)
    if lam_schedule is not None:
        lams = [Fraction(v) for v in lam_schedule]
        if len(set(lams)) != k:
            raise ValueError(f"schedule must contain exactly {k} distinct values")
    else:
        lams = [Fraction(j) for j in range(1, k + 1)]
    from .errors import SumprodError

    witnesses = []
    next_extra = max(lams) + 1
    for lam in lams:
        while True:
            try:
                status = fiber_reducibility(f - BiPoly.const(lam))
                break
            except SumprodError:
                # slide past a fiber the oracle rejects, keeping k distinct rows
                lam = next_extra
                next_extra += 1
        if not status.reducible:
            return CompositenessVerdict(composite=False, certificate_lambda=lam)
        witnesses.append(lam)
    return CompositenessVerdict(composite=True, witness_lambdas=tuple(witnesses))


# ---------------------------------------------------------------------------
# constructive decomposition


def _divisors_ascending(n: int) -> list[int]:
    return [d for d in range(2, n // 2 + 1) if n % d == 0]


def _jacobian_kernel(f: BiPoly, d: int) -> list[BiPoly]:
    """Basis of {h : deg h <= d, f_x * h_y = f_y * h_x}.

    Every solution is a polynomial in a common inner of f, so a nonconstant
    kernel element of minimal degree is an inner polynomial of f.
    """
    fx = f.derivative("x")
    fy = f.derivative("y")
    monomials = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    columns = []
    for (i, j) in monomials:
        mono = BiPoly({(i, j): 1})
        columns.append(fx * mono.derivative("y") - fy * mono.derivative("x"))
    rows_index: dict[tuple[int, int], int] = {}
    for col in columns:
        for key in col.t:
            rows_index.setdefault(key, len(rows_index))
    matrix = [[Fraction(0)] * len(columns) for _ in range(len(rows_index))]
    for cidx, col in enumerate(columns):
        for key, v in col.t.items():
            matrix[rows_index[key]][cidx] = v
    basis = linalg.nullspace_basis(matrix, len(columns))
    return [BiPoly(dict(zip(monomials, vec))) for vec in basis]


def _solve_outer(f: BiPoly, g: BiPoly, m: int) -> UniPoly | None:
    """Solve f = sum u_i g^i for scalar coefficients u_0..u_m."""
    powers = [BiPoly.const(1)]
    for _ in range(m):
        powers.append(powers[-1] * g)
    rows_index: dict[tuple[int, int], int] = {}
    for p in powers + [f]:
        for key in p.t:
            rows_index.setdefault(key, len(rows_index))
    matrix = [[Fraction(0)] * (m + 1) for _ in range(len(rows_index))]
    rhs = [Fraction(0)] * len(rows_index)
    for cidx, p in enumerate(powers):
        for key, v in p.t.items():
            matrix[rows_index[key]][cidx] = v
    for key, v in f.t.items():
        rhs[rows_index[key]] = v
    sol = linalg.solve_exact(matrix, rhs)
    if sol is None:
        return None
    outer = UniPoly(dict(enumerate(sol)))
    return outer if outer.compose_bi(g) == f else None


def _split_right(u: UniPoly, s: int) -> tuple[UniPoly, UniPoly] | None:
    """Find u = P(S) with deg S = s, S monic and S(0) = 0, if one exists.

    The top coefficients of u pin S uniquely under this normalization; the
    S-adic digits of u then either are all constants (giving P) or rule the
    split out.
    """
    n = u.degree
    p = n // s
    w = u.monic()
    S = UniPoly({s: 1})
    for i in range(1, s):
        t = S**p
        delta = w.coeff(n - i) - t.coeff(n - i)
        if delta:
            S = S + UniPoly({s - i: delta / p})
    digits = []
    rem = u
    while not rem.is_zero:
        rem, digit = rem.divrem(S)
        if digit.degree > 0:
            return None
        digits.append(digit.coeff(0))
    P = UniPoly(dict(enumerate(digits)))
    if P.compose(S) != u:
        return None
    return P, S


def decompose_chain(u: UniPoly) -> list[UniPoly]:
    """Split a univariate polynomial into indecomposable compositional pieces.

    Returns [q1, q2, ..., qr] with u = q1(q2(...qr...)); a polynomial with no
    proper split comes back as a one-element chain.
    """
    n = u.degree
    if n < 2:
        return [u]
    for s in range(2, n // 2 + 1):
        if n % s:
            continue
        got = _split_right(u, s)
        if got is not None:
            P, S = got
            return decompose_chain(P) + [S]
    return [u]


def recompose(chain: list[UniPoly], core: BiPoly) -> BiPoly:
    acc = core
    for q in reversed(chain):
        acc = q.compose_bi(acc)
    return acc


def decompose_fully(f: BiPoly) -> tuple[BiPoly, list[UniPoly]]:
    """Strip outer univariate layers down to a non-composite core.

    Returns (core, chain) with f = chain[0] o ... o chain[-1] o core; the
    chain is empty when f is already non-composite. Requires a non-degenerate
    input, since a degenerate polynomial bottoms out in a linear form rather
    than a bivariate core.
    """
    if is_degenerate(f) is not None:
        raise HypothesisViolated("decomposition core requires a non-degenerate input")
    k = f.total_degree
    if k < 2 or not is_composite(f).composite:
        return f, []
    for d in _divisors_ascending(k):
        kernel = _jacobian_kernel(f, d)
        inner = None
        for h in kernel:
            h = h - BiPoly.const(h.coeff(0, 0))
            if not h.is_zero:
                inner = h.normalized()
                break
        if inner is None:
            continue
        assert inner.total_degree == d, "kernel element degree must match the divisor"
        outer = _solve_outer(f, inner, k // d)
        assert outer is not None, "composite verdict guarantees an outer polynomial"
        chain = decompose_chain(outer)
        assert recompose(chain, inner) == f
        return inner, chain
    raise AssertionError("composite polynomial without an extractable inner")


def reconstruct_shift_decomposition(
    f: BiPoly, outer: UniPoly, samples: ShiftSamples
) -> BiPoly | None:
    """Rebuild the inner polynomial x + b(y) from shifted-fiber samples.

    Given rows satisfying f(x, a_i) = outer(x + b_i) for more than
    (total degree)^2 distinct a_i, the coefficient of x^(m-1) in f determines
    b(y) = (that coefficient - q_{m-1}) / (m * q_m) with m = deg outer, and
    the reconstruction is verified by exact re-expansion. Returns None when
    verification fails.
    """
    k = f.total_degree
    if k < 2:
        raise ValueError("reconstruction needs total degree >= 2")
    m = outer.degree
    if m < 1:
        raise ValueError("outer polynomial must be nonconstant")
    if len(samples.pairs) < k * k + 1:
        raise InsufficientSamples(
            f"need at least {k * k + 1} rows, got {len(samples.pairs)}"
        )
    for a, b in samples.pairs:
        if f.specialize_y(a) != outer.shift(b):
            raise HypothesisViolated(
                f"row a={a}, b={b} fails the shifted-fiber relation"
            )
    coeff_m1 = UniPoly(
        {j: v for (i, j), v in f.t.items() if i == m - 1}
    )
    b_of_y = (coeff_m1 - UniPoly.const(outer.coeff(m - 1))) * (
        Fraction(1) / (outer.coeff(m) * m)
    )
    inner = BiPoly.x() + BiPoly({(0, j): v for j, v in b_of_y.c.items()})
    if outer.compose_bi(inner) != f:
        return None
    return inner
