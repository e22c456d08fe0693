"""Independent reference computations used only by the tests.

None of these call into the code they check beyond the exact scalar/subspace kernel.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import comb

from hodge_limits.linalg import Matrix, Scalar, Subspace, image, kernel


# ---------------------------------------------------------------------------
# weight filtration by exhaustive flag search

def jordan_matrix(blocks) -> Matrix:
    n = sum(blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b - 1):
            rows[off + i][off + i + 1] = 1
        off += b
    return Matrix(rows, n)


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def random_conjugate(N: Matrix, rng: random.Random) -> Matrix:
    n = N.nrows
    while True:
        g = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n)
        if g.rank() == n:
            return g @ N @ g.inverse()


def _power(N: Matrix, k: int) -> Matrix:
    out = Matrix.identity(N.nrows)
    for _ in range(k):
        out = out @ N
    return out


def candidate_subspaces(N: Matrix) -> list[Subspace]:
    """Closure under sums of all ``ker N^a ∩ im N^b``."""
    n = N.nrows
    gens = set()
    for a in range(n + 1):
        K = kernel(_power(N, a))
        for b in range(n + 1):
            gens.add(K & image(_power(N, b)))
    found = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for A in frontier:
            for B in gens:
                C = A + B
                if C not in found:
                    found.add(C)
                    nxt.append(C)
        frontier = nxt
    return sorted(found, key=lambda U: (U.dim, str(U.basis)))


def brute_force_flags(N: Matrix, m: int) -> list[tuple]:
    """All increasing flags ``W_0..W_{2m}`` built from candidate subspaces that satisfy
    ``N W_l ⊆ W_{l-2}`` and ``N^l : Gr_{m+l} ≅ Gr_{m-l}``."""
    n = N.nrows
    cands = candidate_subspaces(N)
    zero, full = Subspace.zero(n), Subspace.full(n)
    powers = [_power(N, l) for l in range(m + 2)]
    out = []

    def W(flag, l):
        if l < 0:
            return zero
        return flag[l]

    def ok_iso(flag, l):
        lo, hi = m - l, m + l
        a = W(flag, hi).dim - W(flag, hi - 1).dim
        b = W(flag, lo).dim - W(flag, lo - 1).dim
        if a != b:
            return False
        img = W(flag, hi).apply(powers[l]) + W(flag, lo - 1)
        return img == W(flag, lo)

    def dfs(flag):
        l = len(flag)
        if l == 2 * m + 1:
            if flag[-1] == full:
                out.append(tuple(flag))
            return
        prev = flag[-1] if flag else zero
        for U in cands:
            if not prev <= U:
                continue
            if l == 2 * m and U != full:
                continue
            if not U.apply(N) <= W(flag, l - 2):
                continue
            new = flag + [U]
            if l > m and not ok_iso(new, l - m):
                continue
            if l == m and m == 0 and U != full:
                continue
            dfs(new)

    dfs([])
    return out


# ---------------------------------------------------------------------------
# Schubert calculus on Gr(2,6) via Schur polynomials in two variables

def _schur2(a: int, b: int) -> dict:
    """``s_{a,b}(x1,x2) = (x1 x2)^b h_{a-b}(x1,x2)``."""
    return {(b + i, b + a - b - i): 1 for i in range(a - b + 1)}


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (a, b), c in p.items():
        for (d, e), f in q.items():
            out[(a + d, b + e)] = out.get((a + d, b + e), 0) + c * f
    return {k: v for k, v in out.items() if v}


def schur_product_gr26(lam, mu) -> dict:
    """``σ_λ σ_μ`` in ``H^*(Gr(2,6))`` as ``{(a, b): coefficient}``."""
    p = _mul(_schur2(*lam), _schur2(*mu))
    out = {}
    while p:
        a, b = max(p)                   # lex-leading monomial x1^a x2^b with a >= b
        c = p[(a, b)]
        out[(a, b)] = c
        for k, v in _schur2(a, b).items():
            p[k] = p.get(k, 0) - c * v
            if not p[k]:
                del p[k]
    return {k: v for k, v in out.items() if k[0] <= 4}


# ---------------------------------------------------------------------------
# representation dimensions

def hook_content_dim(shape, n: int) -> int:
    """``dim`` of the GL_n Schur functor for a partition ``shape`` (hook-content formula)."""
    num, den = 1, 1
    conj = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    for i, r in enumerate(shape):
        for j in range(r):
            num *= n + j - i
            den *= (r - j) + (conj[j] - i) - 1
    return num // den


def e6_dimension(coeffs) -> int:
    """Weyl formula for E6 with roots realized in ``R^8`` (the E8 roots with
    ``x6 = x7 = -x8``)."""
    half = Fraction(1, 2)
    roots = []
    for i, j in itertools.combinations(range(8), 2):
        for si in (1, -1):
            for sj in (1, -1):
                v = [Fraction(0)] * 8
                v[i], v[j] = Fraction(si), Fraction(sj)
                roots.append(tuple(v))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(half * s for s in signs))
    roots = [r for r in roots if r[5] == r[6] == -r[7]]
    assert len(roots) == 72
    simple = [
        (half, -half, -half, -half, -half, -half, -half, half),
        (1, 1, 0, 0, 0, 0, 0, 0),
        (-1, 1, 0, 0, 0, 0, 0, 0),
        (0, -1, 1, 0, 0, 0, 0, 0),
        (0, 0, -1, 1, 0, 0, 0, 0),
        (0, 0, 0, -1, 1, 0, 0, 0),
    ]
    simple = [tuple(Fraction(x) for x in s) for s in simple]

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    # fundamental weights: solve <w_i, alpha_j> = delta_ij inside span(simple)
    G = [[dot(a, b) for b in simple] for a in simple]
    Ginv = Matrix(G, 6).inverse()
    fund = []
    for i in range(6):
        c = [Ginv[j, i] for j in range(6)]
        fund.append(tuple(sum((Fraction(int(c[j].re.numerator), int(c[j].re.denominator))
                               * simple[j][t] for j in range(6)), Fraction(0))
                          for t in range(8)))
    positive = [r for r in roots if _positive(r, simple, Ginv)]
    assert len(positive) == 36
    rho = tuple(sum(w[t] for w in fund) for t in range(8))
    lam = tuple(sum(coeffs[i] * fund[i][t] for i in range(6)) for t in range(8))
    lr = tuple(a + b for a, b in zip(lam, rho))
    num = Fraction(1)
    for a in positive:
        num *= dot(lr, a) / dot(rho, a)
    assert num.denominator == 1
    return int(num)


def _positive(r, simple, Ginv) -> bool:
    b = [sum((x * y for x, y in zip(r, s)), Fraction(0)) for s in simple]
    c = [sum((Ginv[i, j] * Scalar(b[j].numerator, 0) / Scalar(b[j].denominator, 0)
              for j in range(6)), Scalar(0)) for i in range(6)]
    vals = [x.re for x in c]
    return all(v >= 0 for v in vals) and any(v > 0 for v in vals)


def sym3_dim(n: int) -> int:
    return comb(n + 2, 3)


# ---------------------------------------------------------------------------
# Euler characteristic of a (3,3) divisor in P2 x P2 by direct series expansion

def chi_bidegree_33() -> int:
    """Coefficient extraction for ``(1+a)^3 (1+b)^3 (1+3a+3b)^{-1} (3a+3b)`` at ``a^2 b^2``."""
    def mul(p, q):
        out = {}
        for (i, j), c in p.items():
            for (k, l), d in q.items():
                if i + k <= 2 and j + l <= 2:
                    out[(i + k, j + l)] = out.get((i + k, j + l), 0) + c * d
        return out

    one_a = {(0, 0): 1, (1, 0): 1}
    one_b = {(0, 0): 1, (0, 1): 1}
    cT = {(0, 0): 1}
    for _ in range(3):
        cT = mul(mul(cT, one_a), one_b)
    V = {(1, 0): 3, (0, 1): 3}
    inv = {(0, 0): 1}
    term = {(0, 0): 1}
    for _ in range(5):
        term = mul(term, {k: -v for k, v in V.items()})
        for k, v in term.items():
            inv[k] = inv.get(k, 0) + v
    total = mul(cT, inv)
    c3 = {k: v for k, v in total.items() if sum(k) == 3}
    return mul(c3, V).get((2, 2), 0)


# ---------------------------------------------------------------------------
# cubic hypersurfaces

def cubic_middle_betti(m: int) -> int:
    """``b_m`` of a smooth cubic ``X ⊂ P^{m+1}`` (``m`` odd) from ``χ = 3 [h^m] (1+h)^{m+2}/(1+3h)``."""
    coeff = sum(comb(m + 2, j) * (-3) ** (m - j) for j in range(m + 1))
    chi = 3 * coeff
    return (m + 1) - chi


def fermat_cubic_hodge(m: int) -> dict:
    """Jacobian-ring count for the Fermat cubic: squarefree monomials in ``m + 2``
    variables of degree ``3(m - p + 1) - (m + 2)``."""
    out = {}
    for p in range(m + 1):
        t = 3 * (m - p + 1) - (m + 2)
        c = sum(1 for s in itertools.combinations(range(m + 2), t)) if 0 <= t <= m + 2 else 0
        if c:
            out[(p, m - p)] = c
    return out
