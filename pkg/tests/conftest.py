"""Shared fixtures and independent oracle helpers.

The oracles here deliberately avoid the package's polynomial machinery:
expansion is a plain dict convolution, evaluation goes through hand-written
lambdas, and incidence counting is a full double loop. Expected values in the
tests are either frozen from these oracles or recomputed by them in place.
"""

from fractions import Fraction as F

import pytest

from sumprod import BiPoly
from sumprod.parsing import parse_poly


# hand-coded evaluators, one per corpus member (independent of BiPoly.eval)
CORPUS_EVAL = {
    "x y": lambda a, b: a * b,
    "x^2 + y": lambda a, b: a * a + b,
    "x^2 + x y + y^2": lambda a, b: a * a + a * b + b * b,
    "x^2 + y^2": lambda a, b: a * a + b * b,
    "x^3 + x y": lambda a, b: a**3 + a * b,
}

CORPUS = list(CORPUS_EVAL)

# certified non-composite polynomials spanning total degrees 2 through 5
# (none admits an outer factor of degree >= 2: gradients are never
# proportional and every degree split is ruled out by the fiber test)
NON_COMPOSITE = [
    "x y",
    "x^2 + y",
    "x^2 + y^2",
    "x^2 + x y + y^2",
    "x^2 - y^2",
    "x^3 + x y",
    "x^3 + y",
    "x^3 + x + y",
    "x^4 + y",
    "x^5 + y",
]


@pytest.fixture
def P():
    return parse_poly


def naive_mul(a: dict, b: dict) -> dict:
    """Dict-of-terms convolution, the expansion oracle."""
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, F(0)) + c1 * c2
    return {k: v for k, v in out.items() if v}


def naive_pow(a: dict, n: int) -> dict:
    out = {(0, 0): F(1)}
    for _ in range(n):
        out = naive_mul(out, a)
    return out


def to_terms(f: BiPoly) -> dict:
    return dict(f.t)


def naive_eval(terms: dict, a: F, b: F) -> F:
    return sum((c * a**i * b**j for (i, j), c in terms.items()), F(0))


def naive_sumset(A) -> set:
    return {a + b for a in A for b in A}


def naive_image(fn, A) -> set:
    return {fn(a, b) for a in A for b in A}


def double_loop_incidences(curve_keys, points) -> tuple[int, list[int]]:
    """Exhaustive point-by-curve membership count."""
    per = []
    for key in curve_keys:
        cnt = 0
        for (s, v) in points:
            val = F(0)
            for d in range(len(key) - 1, -1, -1):
                val = val * s + key[d]
            if val == v:
                cnt += 1
        per.append(cnt)
    return sum(per), per


def conic_abs_count(f: BiPoly) -> int:
    """Absolutely irreducible factor count of a squarefree conic.

    A conic a x^2 + b xy + c y^2 + d x + e y + g splits into two lines over C
    exactly when the symmetric 3x3 determinant vanishes.
    """
    a = f.coeff(2, 0)
    b = f.coeff(1, 1)
    c = f.coeff(0, 2)
    d = f.coeff(1, 0)
    e = f.coeff(0, 1)
    g = f.coeff(0, 0)
    m = [
        [a, b / 2, d / 2],
        [b / 2, c, e / 2],
        [d / 2, e / 2, g],
    ]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return 1 if det != 0 else 2


def _int_divisors_signed(v: int) -> list[int]:
    v = abs(v)
    out = []
    for d in range(1, v + 1):
        if v % d == 0:
            out.extend((d, -d))
    return out


def _uni_lagrange(points: list[tuple[int, F]]) -> list[F]:
    """Coefficients (ascending) of the interpolating polynomial."""
    deg = len(points) - 1
    coeffs = [F(0)] * (deg + 1)
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = [F(1)]
        den = F(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            nxt = [F(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                nxt[t + 1] += c
                nxt[t] += c * (-xj)
            basis = nxt
            den *= xi - xj
        for t, c in enumerate(basis):
            coeffs[t] += c * yi / den
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _uni_eval(coeffs: list[F], x: F) -> F:
    acc = F(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _uni_divides(num: list[F], den: list[F]) -> bool:
    if not den:
        return False
    r = list(num)
    while r and len(r) >= len(den):
        q = r[-1] / den[-1]
        off = len(r) - len(den)
        for t, c in enumerate(den):
            r[off + t] -= q * c
        while r and r[-1] == 0:
            r.pop()
    return not r


def _bi_divides_dict(fd: dict, gd: dict) -> bool:
    """Naive exact-division test in Q[x, y], dict-of-terms representation."""

    def deg_x(d):
        return max((i for i, _ in d), default=-1)

    def coeffs_in_x(d):
        out = {}
        for (i, j), c in d.items():
            out.setdefault(i, {})[j] = c
        return out

    def y_div(a: dict, b: dict):
        # univariate division in y on sparse dicts; None when inexact
        r = dict(a)
        q = {}
        db = max(b)
        while r:
            dr = max(r)
            if dr < db:
                return None
            t = r[dr] / b[db]
            q[dr - db] = t
            for j, c in b.items():
                nd = j + dr - db
                nv = r.get(nd, F(0)) - t * c
                if nv:
                    r[nd] = nv
                else:
                    r.pop(nd, None)
        return q

    def y_mul(a: dict, b: dict):
        out = {}
        for j1, c1 in a.items():
            for j2, c2 in b.items():
                out[j1 + j2] = out.get(j1 + j2, F(0)) + c1 * c2
        return {j: c for j, c in out.items() if c}

    fx = coeffs_in_x(fd)
    gx = coeffs_in_x(gd)
    dg = deg_x(gd)
    glead = gx[dg]
    rem = {i: dict(cs) for i, cs in fx.items()}
    while rem:
        dr = max(rem)
        if dr < dg:
            return False
        qc = y_div(rem[dr], glead)
        if qc is None:
            return False
        for i2, c2 in gx.items():
            nd = i2 + dr - dg
            prod = y_mul(qc, c2)
            cur = rem.get(nd, {})
            for j, c in prod.items():
                nv = cur.get(j, F(0)) - c
                if nv:
                    cur[j] = nv
                else:
                    cur.pop(j, None)
            if cur:
                rem[nd] = cur
            else:
                rem.pop(nd, None)
    return True


def grid_factor_exists(f: BiPoly) -> bool:
    """Exhaustive per-bidegree factor search over integer evaluation grids.

    Independent of the package's factorization path: an integer-coefficient
    factor of bidegree (r, s) takes divisor values at grid nodes, so its row
    slices are interpolated from divisor tuples, filtered by exact univariate
    division against the row polynomial, and the surviving slice combinations
    are interpolated in y and checked by a local bivariate division.
    """
    import math

    terms = to_terms(f)
    L = 1
    for c in terms.values():
        L = L * c.denominator // math.gcd(L, c.denominator)
    g = 0
    for c in terms.values():
        g = math.gcd(g, abs(int(c * L)))
    prim = {k: F(int(c * L) // g) for k, c in terms.items()}
    dx = max(i for i, _ in prim)
    dy = max(j for _, j in prim)

    def value(x, y):
        return naive_eval(prim, F(x), F(y))

    def slice_in_x(y) -> list[F]:
        out = [F(0)] * (dx + 1)
        for (i, j), c in prim.items():
            out[i] += c * F(y) ** j
        while out and out[-1] == 0:
            out.pop()
        return out

    def next_node(t):
        return -t if t > 0 else -t + 1

    def single_var_factor_exists(coeff_polys: list[list[F]], max_deg: int) -> bool:
        """Factor in one variable only: must divide every coefficient poly."""
        base = next((p for p in coeff_polys if p), None)
        if base is None:
            return False
        for s in range(1, max_deg + 1):
            if s > len(base) - 1:
                break
            nodes = []
            t = 0
            while len(nodes) < s + 1:
                if _uni_eval(base, F(t)) != 0:
                    nodes.append(t)
                t = next_node(t)
            divisor_lists = [
                _int_divisors_signed(int(_uni_eval(base, F(t)))) for t in nodes
            ]
            found = []

            def fill(idx, chosen):
                if found:
                    return
                if idx == len(nodes):
                    coeffs = _uni_lagrange(list(zip(nodes, map(F, chosen))))
                    if len(coeffs) - 1 != s:
                        return
                    if any(c.denominator != 1 for c in coeffs):
                        return
                    if all(_uni_divides(p, coeffs) for p in coeff_polys if p):
                        found.append(tuple(coeffs))
                    return
                for d in divisor_lists[idx]:
                    if all(
                        (d - chosen[i]) % (nodes[idx] - nodes[i]) == 0
                        for i in range(idx)
                    ):
                        chosen.append(d)
                        fill(idx + 1, chosen)
                        chosen.pop()

            fill(0, [])
            if found:
                return True
        return False

    # factors in y alone divide every x-direction coefficient
    x_coeffs: dict[int, list[F]] = {}
    for (i, j), c in prim.items():
        col = x_coeffs.setdefault(i, [F(0)] * (dy + 1))
        col[j] += c
    cols = []
    for i in range(dx + 1):
        col = x_coeffs.get(i, [])
        while col and col[-1] == 0:
            col.pop()
        cols.append(col)
    if dy >= 1 and single_var_factor_exists(cols, dy):
        return True
    # factors in x alone divide every y-direction coefficient
    y_coeffs: dict[int, list[F]] = {}
    for (i, j), c in prim.items():
        row = y_coeffs.setdefault(j, [F(0)] * (dx + 1))
        row[i] += c
    rows_ = []
    for j in range(dy + 1):
        row = y_coeffs.get(j, [])
        while row and row[-1] == 0:
            row.pop()
        rows_.append(row)
    if dx >= 1 and single_var_factor_exists(rows_, dx):
        return True

    for r in range(1, dx + 1):
        for s in range(1, dy + 1):
            if (r, s) == (dx, dy):
                continue
            ys = []
            t = 0
            while len(ys) < s + 1:
                if slice_in_x(t):
                    ys.append(t)
                t = next_node(t)
            xs = []
            t = 0
            while len(xs) < r + 1:
                if all(value(t, yj) != 0 for yj in ys):
                    xs.append(t)
                t = next_node(t)
            # per-row slice candidates: integer divisor interpolants that
            # divide the row polynomial
            row_cands = []
            for yj in ys:
                row_poly = slice_in_x(yj)
                values = [int(value(xi, yj)) for xi in xs]
                divisor_lists = [_int_divisors_signed(v) for v in values]
                cands = []

                def fill(idx, chosen):
                    if idx == len(xs):
                        coeffs = _uni_lagrange(list(zip(xs, map(F, chosen))))
                        if len(coeffs) - 1 > r:
                            return
                        if any(c.denominator != 1 for c in coeffs):
                            return
                        if _uni_divides(row_poly, coeffs):
                            cands.append(tuple(coeffs))
                        return
                    for d in divisor_lists[idx]:
                        ok = True
                        for prev_i in range(idx):
                            gap = xs[idx] - xs[prev_i]
                            if (d - chosen[prev_i]) % gap != 0:
                                ok = False
                                break
                        if ok:
                            chosen.append(d)
                            fill(idx + 1, chosen)
                            chosen.pop()

                fill(0, [])
                row_cands.append(sorted(set(cands)))
                if not cands:
                    break
            if len(row_cands) < s + 1:
                continue

            import itertools

            for combo in itertools.product(*row_cands):
                cand_terms = {}
                for i in range(r + 1):
                    pts = [
                        (yj, slice_coeffs[i] if i < len(slice_coeffs) else F(0))
                        for yj, slice_coeffs in zip(ys, combo)
                    ]
                    for j, c in enumerate(_uni_lagrange(pts)):
                        if c:
                            cand_terms[(i, j)] = c
                if not cand_terms or set(cand_terms) == {(0, 0)}:
                    continue
                if any(c.denominator != 1 for c in cand_terms.values()):
                    continue
                if _bi_divides_dict(prim, cand_terms):
                    return True
    return False
