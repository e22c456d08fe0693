"""Mixed Hodge structures over Q(i): validation, Deligne splitting, the delta operator
and polarization.

The standard basis of the ambient space is declared real, so complex conjugation is
entrywise.  A subspace of a graded quotient ``Gr_k = W_k / W_{k-1}`` is always handled
through its lift ``U`` with ``W_{k-1} ⊆ U ⊆ W_k``.

Hodge–Riemann sign convention
-----------------------------
On the primitive piece ``P^{p,q}_{m+l}`` of a polarized MHS centered at ``m`` the
Hermitian form

    h(u, v) = (-1)^m * i^(p-q) * S(u, N^l conj(v))

is required to be positive definite.  With ``N = 0`` this is the pure condition for a
weight ``m`` structure.  The constant is chosen so that the weight-one model
``S = [[0, 1], [-1, 0]]``, ``N = [[0, 1], [0, 0]]``, ``F^1 = span(e2)`` and its
nilpotent orbit ``exp(iN) F`` are both polarized.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import (I, ZERO, BilinearForm, Matrix, Scalar, Subspace, as_scalar,
                     exp_nilpotent, is_positive_definite_hermitian, quotient_basis)
from .verdict import Verdict, VerdictBuilder
from .weight_filtration import (CenteredWeightFiltration, NilpotentOperator,
                                monodromy_weight_filtration, primitive_lift)


class HodgeError(ValueError):
    pass


@dataclass(frozen=True)
class RationalStructure:
    """Real structure on ``Q(i)^n`` for which the standard basis is real."""

    dim: int

    def conj_vector(self, v):
        return tuple(as_scalar(x).conj() for x in v)

    def conj_subspace(self, U: Subspace) -> Subspace:
        return U.conj()

    def conj_matrix(self, M: Matrix) -> Matrix:
        return M.conj()

    def is_rational(self, v) -> bool:
        return all(as_scalar(x).is_real for x in v)


@dataclass(frozen=True)
class HodgeFiltration:
    """Decreasing filtration; ``steps[i] = F^{p_min + i}``.

    ``F^p`` is the full space for ``p < p_min`` and zero past the last step.
    """

    p_min: int
    steps: tuple

    def __post_init__(self):
        if not self.steps:
            raise HodgeError("a Hodge filtration needs at least one step")
        n = self.steps[0].ambient_dim
        for a, b in zip(self.steps, self.steps[1:]):
            if b.ambient_dim != n or not b <= a:
                raise HodgeError("Hodge filtration is not decreasing")

    @classmethod
    def from_steps(cls, p_min: int, steps) -> "HodgeFiltration":
        steps = list(steps)
        n = steps[0].ambient_dim
        if steps[0].dim != n:
            steps.insert(0, Subspace.full(n))
            p_min -= 1
        while len(steps) > 1 and steps[-1].dim == 0 and steps[-2].dim == 0:
            steps.pop()
        return cls(p_min, tuple(steps))

    @property
    def ambient_dim(self) -> int:
        return self.steps[0].ambient_dim

    @property
    def p_end(self) -> int:
        """First index past the stored steps (``F^p = 0`` from here on)."""
        return self.p_min + len(self.steps)

    def __getitem__(self, p: int) -> Subspace:
        if p < self.p_min:
            return Subspace.full(self.ambient_dim)
        if p >= self.p_end:
            return Subspace.zero(self.ambient_dim)
        return self.steps[p - self.p_min]

    def conj(self) -> "HodgeFiltration":
        return HodgeFiltration(self.p_min, tuple(s.conj() for s in self.steps))

    def apply(self, g: Matrix) -> "HodgeFiltration":
        return HodgeFiltration(self.p_min, tuple(s.apply(g) for s in self.steps))

    def index_range(self) -> range:
        return range(self.p_min, self.p_end + 1)

    def __eq__(self, other):
        if not isinstance(other, HodgeFiltration):
            return NotImplemented
        lo = min(self.p_min, other.p_min)
        hi = max(self.p_end, other.p_end)
        return all(self[p] == other[p] for p in range(lo, hi + 1))

    def __hash__(self):
        return hash(tuple(self[p] for p in range(self.p_min, self.p_end)))


@dataclass(frozen=True)
class HodgeNumbers:
    weight: int
    h: dict

    @property
    def total(self) -> int:
        return sum(self.h.values())

    def __getitem__(self, pq) -> int:
        return self.h.get(tuple(pq), 0)

    def vector(self) -> list[int]:
        """``h^{k,0}, h^{k-1,1}, ...`` restricted to the nonzero window, high p first."""
        if not self.h:
            return []
        ps = [p for (p, q), v in self.h.items() if v]
        if not ps:
            return []
        return [self[(p, self.weight - p)] for p in range(max(ps), min(ps) - 1, -1)]

    def is_symmetric(self) -> bool:
        return all(self[(q, p)] == v for (p, q), v in self.h.items())

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.h.items(), reverse=True) if v}

    def to_json(self) -> dict:
        return {"weight": self.weight,
                "h": {f"{p},{q}": v for (p, q), v in sorted(self.h.items(), reverse=True) if v}}


@dataclass(frozen=True)
class MixedHodgeStructure:
    W: CenteredWeightFiltration
    F: HodgeFiltration

    def __post_init__(self):
        if self.W.ambient_dim != self.F.ambient_dim:
            raise HodgeError("W and F live on spaces of different dimension")

    @property
    def dim(self) -> int:
        return self.W.ambient_dim


# ---------------------------------------------------------------------------
# graded pieces

def graded_step(F: HodgeFiltration, W: CenteredWeightFiltration, k: int, p: int) -> Subspace:
    """Lift of the induced ``F^p Gr_k``: ``F^p ∩ W_k + W_{k-1}``."""
    return (F[p] & W[k]) + W[k - 1]


def _p_window(F: HodgeFiltration, k: int) -> range:
    lo = min(F.p_min, k - F.p_end) - 1
    hi = max(F.p_end, k - F.p_min) + 2
    return range(lo, hi)


def _check_graded(F: HodgeFiltration, lower: Subspace, upper: Subspace, k: int):
    """Hodge decomposition test on ``upper/lower`` at weight ``k``.

    Returns ``(ok, HodgeNumbers | None, witness)``.
    """
    base = lower.dim
    gdim = upper.dim - base

    def step(p):
        return (F[p] & upper) + lower

    h = {}
    for p in _p_window(F, k):
        A = step(p)
        B = step(k - p + 1).conj()
        if (A + B).dim != upper.dim or (A.dim - base) + (B.dim - base) != gdim:
            return False, None, {"weight": k, "p": p,
                                 "dim_Fp": A.dim - base, "dim_conjF": B.dim - base,
                                 "dim_gr": gdim}
        d = A.dim - step(p + 1).dim
        if d:
            h[(p, k - p)] = d
    return True, HodgeNumbers(k, h), None


def validate_pure(F: HodgeFiltration, k: int) -> Verdict:
    n = F.ambient_dim
    ok, hn, wit = _check_graded(F, Subspace.zero(n), Subspace.full(n), k)
    vb = VerdictBuilder(f"pure Hodge structure of weight {k}")
    vb.add("F^p + conj F^(k-p+1) = H, direct", ok,
           "" if ok else f"fails at p = {wit['p']}", wit)
    if ok:
        vb.data["hodge_numbers"] = hn
    return vb.build()


def validate_mhs(W: CenteredWeightFiltration, F: HodgeFiltration) -> Verdict:
    vb = VerdictBuilder("mixed Hodge structure")
    if W.ambient_dim != F.ambient_dim:
        vb.add("dimensions", False, f"W on {W.ambient_dim}, F on {F.ambient_dim}")
        return vb.build()
    vb.add("dimensions", True)
    graded = {}
    for k in range(2 * W.center + 1):
        if not W.graded_dim(k):
            continue
        ok, hn, wit = _check_graded(F, W[k - 1], W[k], k)
        if not ok:
            vb.add(f"Gr_{k} pure of weight {k}", False,
                   f"first failure at weight {k}, p = {wit['p']}", wit)
            vb.data["first_failed_weight"] = k
            return vb.build()
        graded[k] = hn
    vb.add("every Gr_k pure of weight k", True)
    vb.data["graded_hodge_numbers"] = graded
    return vb.build()


def graded_hodge_numbers(W: CenteredWeightFiltration, F: HodgeFiltration) -> dict:
    v = validate_mhs(W, F)
    if not v.passed:
        raise HodgeError(f"not a mixed Hodge structure: {v.first_failure()}")
    return v.data["graded_hodge_numbers"]


# ---------------------------------------------------------------------------
# Deligne splitting

@dataclass(frozen=True)
class BigradedSplitting:
    ambient_dim: int
    pieces: dict = field(default_factory=dict)  # (a, b) -> Subspace, nonzero only

    def __getitem__(self, ab) -> Subspace:
        return self.pieces.get(tuple(ab), Subspace.zero(self.ambient_dim))

    def dims(self) -> dict:
        return {k: v.dim for k, v in sorted(self.pieces.items())}

    def weight_filtration(self, center: int) -> CenteredWeightFiltration:
        n = self.ambient_dim
        steps = []
        for l in range(2 * center + 1):
            acc = Subspace.zero(n)
            for (a, b), U in self.pieces.items():
                if a + b <= l:
                    acc = acc + U
            steps.append(acc)
        return CenteredWeightFiltration(center, tuple(steps))

    def hodge_filtration(self) -> HodgeFiltration:
        n = self.ambient_dim
        if not self.pieces:
            return HodgeFiltration(0, (Subspace.full(n),))
        lo = min(a for a, _ in self.pieces)
        hi = max(a for a, _ in self.pieces)
        steps = []
        for p in range(lo, hi + 1):
            acc = Subspace.zero(n)
            for (a, _), U in self.pieces.items():
                if a >= p:
                    acc = acc + U
            steps.append(acc)
        return HodgeFiltration(lo, tuple(steps))

    def lower(self, p: int, q: int) -> Subspace:
        """``⊕_{a<p, b<q} I^{a,b}``."""
        acc = Subspace.zero(self.ambient_dim)
        for (a, b), U in self.pieces.items():
            if a < p and b < q:
                acc = acc + U
        return acc

    def grading_basis(self):
        """Adapted basis (columns) and the bidegree of each column."""
        cols, degs = [], []
        for (a, b), U in sorted(self.pieces.items()):
            for v in U.basis:
                cols.append(v)
                degs.append((a, b))
        return Matrix.from_columns(cols), degs

    def is_direct(self) -> bool:
        total = sum(U.dim for U in self.pieces.values())
        acc = Subspace.zero(self.ambient_dim)
        for U in self.pieces.values():
            acc = acc + U
        return total == self.ambient_dim and acc.dim == self.ambient_dim

    def conjugation_congruence(self) -> Verdict:
        vb = VerdictBuilder("conjugation congruence")
        bad = []
        for (p, q), U in self.pieces.items():
            L = self.lower(p, q)
            if U + L != self[(q, p)].conj() + L:
                bad.append((p, q))
        vb.add("I^{p,q} = conj I^{q,p} mod lower", not bad, "", bad or None)
        return vb.build()

    def to_json(self) -> dict:
        return {f"{a},{b}": U for (a, b), U in sorted(self.pieces.items())}


def deligne_splitting(W: CenteredWeightFiltration, F: HodgeFiltration,
                      check: bool = True) -> BigradedSplitting:
    if check:
        v = validate_mhs(W, F)
        if not v.passed:
            raise HodgeError(f"not a mixed Hodge structure: {v.first_failure()}")
    n = W.ambient_dim
    Fbar = F.conj()
    pieces = {}
    lo = F.p_min - 1
    hi = F.p_end
    for k in range(2 * W.center + 1):
        if not W.graded_dim(k):
            continue
        for a in range(lo, hi + 1):
            b = k - a
            A = F[a] & W[k]
            if not A.dim:
                continue
            B = Fbar[b] & W[k]
            j = 1
            while k - j - 1 >= 0:
                B = B + (Fbar[b - j] & W[k - j - 1])
                j += 1
            U = A & B
            if U.dim:
                pieces[(a, b)] = U
    sp = BigradedSplitting(n, pieces)
    if check:
        if not sp.is_direct():
            raise HodgeError("Deligne pieces do not form a direct sum")
        if sp.weight_filtration(W.center) != W or sp.hodge_filtration() != F:
            raise HodgeError("Deligne pieces do not recover (W, F)")
    return sp


def is_r_split(splitting: BigradedSplitting) -> bool:
    return all(U == splitting[(q, p)].conj() for (p, q), U in splitting.pieces.items())


def mhs_from_bigrading(pieces: dict, center: int) -> MixedHodgeStructure:
    """Reverse-engineering constructor: ``W`` and ``F`` generated by chosen pieces."""
    n = next(iter(pieces.values())).ambient_dim
    sp = BigradedSplitting(n, {k: v for k, v in pieces.items() if v.dim})
    if not sp.is_direct():
        raise HodgeError("pieces are not a direct sum decomposition")
    return MixedHodgeStructure(sp.weight_filtration(center), sp.hodge_filtration())


# ---------------------------------------------------------------------------
# the delta operator

def _grading_operator(sp: BigradedSplitting):
    B, degs = sp.grading_basis()
    Binv = B.inverse()
    weights = [a + b for a, b in degs]
    Y = B @ Matrix.diag(weights) @ Binv
    return Y, B, Binv, degs


def _degree_part(X: Matrix, weights, t: int) -> Matrix:
    n = X.nrows
    return Matrix([[X[i, j] if weights[i] - weights[j] == t else ZERO for j in range(n)]
                   for i in range(n)], n)


def _exp_ad(eps: Matrix, Y: Matrix, depth: int) -> Matrix:
    out = Y
    term = Y
    for k in range(1, depth + 1):
        term = eps.commutator(term).scale(Scalar(1) / k)
        if term.is_zero():
            break
        out = out + term
    return out


def solve_grading_transport(B: Matrix, weights, target: Matrix) -> Matrix | None:
    """Find ``X`` lowering the grading with ``exp(ad X) Y = target``.

    ``Y`` is the semisimple operator with eigenvalue ``weights[j]`` on column ``j`` of
    ``B``.  The equation is triangular in the ``ad Y`` degree, so ``X`` is found degree
    by degree and is unique among operators of negative degree.  Returns ``None`` when
    no such ``X`` exists.
    """
    n = B.nrows
    T = B.inverse() @ target @ B
    Y0 = Matrix.diag(weights)
    span = (max(weights) - min(weights)) if weights else 0
    eps = Matrix.zeros(n)
    for s in range(1, span + 1):
        cur = _exp_ad(eps, Y0, span + 1)
        resid = _degree_part(T - cur, weights, -s)
        eps = eps + resid.scale(Scalar(1) / s)
    if _exp_ad(eps, Y0, span + 1) != T:
        return None
    return B @ eps @ B.inverse()


@dataclass(frozen=True)
class DeltaResult:
    delta: Matrix
    split_filtration: HodgeFiltration
    splitting: BigradedSplitting
    split_splitting: BigradedSplitting


def r_split_delta(W: CenteredWeightFiltration, F: HodgeFiltration) -> DeltaResult:
    """The real operator ``delta``, strictly lowering the bigrading, with
    ``(W, exp(-i delta) F)`` split over R.

    Writing ``Y`` for the grading by ``p + q`` on the Deligne pieces, conjugation
    gives ``conj(Y) = exp(ad eps) Y`` with ``eps = -2i delta``.  In a basis adapted to
    the pieces the equation is triangular in the ``ad Y`` degree and is solved degree
    by degree.
    """
    sp = deligne_splitting(W, F)
    Y, B, Binv, degs = _grading_operator(sp)
    weights = [a + b for a, b in degs]
    eps_std = solve_grading_transport(B, weights, Y.conj())
    if eps_std is None:
        raise HodgeError("delta equation has no solution; the input is not a valid MHS")
    delta = eps_std.scale(I / 2)
    if not delta.is_real():
        raise HodgeError("computed delta is not real")
    g = exp_nilpotent(delta, Scalar(0, -1))
    F_split = F.apply(g)
    sp2 = deligne_splitting(W, F_split)
    if not is_r_split(sp2):
        raise HodgeError("exp(-i delta) F is not split over R")
    for (p, q), U in sp.pieces.items():
        if not U.apply(delta) <= sp.lower(p, q):
            raise HodgeError("delta does not lower the bigrading")
    return DeltaResult(delta, F_split, sp, sp2)


def lowers_bigrading(op: Matrix, sp: BigradedSplitting) -> bool:
    return all(U.apply(op) <= sp.lower(p, q) for (p, q), U in sp.pieces.items())


# ---------------------------------------------------------------------------
# polarization

def _hr_constant(m: int, p: int, q: int) -> Scalar:
    sign = -1 if m % 2 else 1
    return (I ** ((p - q) % 4)) * sign


def hodge_riemann_gram(S: BilinearForm, N: NilpotentOperator, W: CenteredWeightFiltration,
                       F: HodgeFiltration, l: int, p: int) -> Matrix | None:
    """Hermitian Gram matrix of ``h`` on ``P^{p,q}_{m+l}``; ``None`` if that piece is 0."""
    m = W.center
    k = m + l
    q = k - p
    lower = W[k - 1]
    Fp = graded_step(F, W, k, p)
    Fq = graded_step(F, W, k, q).conj()
    piece = Fp & Fq & primitive_lift(N, W, l)
    us = quotient_basis(lower, piece)
    if not us:
        return None
    Nl = N.power(l)
    c = _hr_constant(m, p, q)
    ws = [[(j, x) for j, x in enumerate(Nl @ tuple(x.conj() for x in v)) if x] for v in us]
    GT = S.gram.T()
    rows = []
    for u in us:
        uG = GT @ u                     # entries (u^T G)_j
        rows.append([c * sum((uG[j] * x for j, x in w), ZERO) for w in ws])
    return Matrix(rows, len(us))


def validate_pmhs(S: BilinearForm, N: NilpotentOperator | Matrix,
                  W: CenteredWeightFiltration, F: HodgeFiltration) -> Verdict:
    """All five conditions of a polarized MHS, each reported separately."""
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    m = W.center
    vb = VerdictBuilder("polarized mixed Hodge structure")
    expected = BilinearForm.SYMMETRIC if m % 2 == 0 else BilinearForm.ANTISYMMETRIC
    if S.symmetry != expected:
        vb.add("form symmetry", False, f"weight {m} needs a {expected} form")
        return vb.build()
    vb.add("form symmetry", True)
    mhs = validate_mhs(W, F)
    vb.add("mixed Hodge structure", mhs.passed,
           "" if mhs.passed else str(mhs.first_failure().detail),
           None if mhs.passed else mhs.first_failure().witness)
    # (1)
    vb.add("(1) N^(m+1) = 0", N.nilpotency_index <= m, f"index {N.nilpotency_index}")
    # (2)
    try:
        WN = monodromy_weight_filtration(N, m)
        vb.add("(2) W = W(N)", WN == W)
    except ValueError as exc:
        vb.add("(2) W = W(N)", False, str(exc))
    # (3)
    bad = [p for p in F.index_range() if not F[p].apply(N.matrix) <= F[p - 1]]
    vb.add("(3) N F^p ⊆ F^(p-1)", not bad, f"fails at p in {bad}" if bad else "", bad or None)
    # (4)
    bad = []
    for p in F.index_range():
        A, B = F[p], F[m - p + 1]
        for u in A.basis:
            for v in B.basis:
                if S(u, v):
                    bad.append({"p": p, "u": u, "v": v})
                    break
            if bad:
                break
        if bad:
            break
    vb.add("(4) S(F^p, F^(m-p+1)) = 0", not bad, "", bad[0] if bad else None)
    # (5)
    if not mhs.passed or not vb.build().passed:
        vb.add("(5) Hodge-Riemann positivity", False, "skipped: earlier condition failed")
        return vb.build()
    bad = []
    prim = {}
    for l in range(m + 1):
        if not W.graded_dim(m + l):
            continue
        for p in _p_window(F, m + l):
            G = hodge_riemann_gram(S, N, W, F, l, p)
            if G is None:
                continue
            prim[(m + l, p, m + l - p)] = G.nrows
            if not is_positive_definite_hermitian(G):
                bad.append({"weight": m + l, "p": p, "q": m + l - p, "gram": G})
    vb.add("(5) Hodge-Riemann positivity", not bad,
           "" if not bad else f"not positive on P^{{{bad[0]['p']},{bad[0]['q']}}}_{bad[0]['weight']}",
           bad[0] if bad else None)
    vb.data["primitive_hodge_numbers"] = prim
    return vb.build()


def validate_pure_polarized(S: BilinearForm, F: HodgeFiltration, k: int) -> Verdict:
    """Pure weight ``k`` structure polarized by ``S`` (the ``N = 0`` case)."""
    n = F.ambient_dim
    zero = NilpotentOperator.from_matrix(Matrix.zeros(n))
    W = CenteredWeightFiltration(k, tuple(Subspace.zero(n) if l < k else Subspace.full(n)
                                          for l in range(2 * k + 1)))
    return validate_pmhs(S, zero, W, F)


__all__ = [
    "HodgeError", "RationalStructure", "HodgeFiltration", "HodgeNumbers",
    "MixedHodgeStructure", "BigradedSplitting", "DeltaResult", "validate_pure",
    "validate_mhs", "graded_hodge_numbers", "deligne_splitting", "is_r_split",
    "mhs_from_bigrading", "r_split_delta", "lowers_bigrading", "validate_pmhs",
    "validate_pure_polarized", "hodge_riemann_gram", "graded_step",
    "solve_grading_transport",
]
