"""Hand-built structures with known answers, used by tests, the CLI and the boundary code."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import I, BilinearForm, Matrix, Scalar, Subspace, exp_nilpotent
from .mixed_hodge import BigradedSplitting, HodgeFiltration, MixedHodgeStructure
from .weight_filtration import CenteredWeightFiltration, NilpotentOperator


@dataclass(frozen=True)
class PolarizedModel:
    """A candidate limit ``(S, N, W, F)`` centered at ``m``."""

    S: BilinearForm
    N: NilpotentOperator
    W: CenteredWeightFiltration
    F: HodgeFiltration
    m: int

    @property
    def dim(self) -> int:
        return self.S.dim


def weight_one_model() -> PolarizedModel:
    """``S = [[0,1],[-1,0]]``, ``N = [[0,1],[0,0]]``, ``F^1 = span(e2)``."""
    S = BilinearForm(Matrix([[0, 1], [-1, 0]]), BilinearForm.ANTISYMMETRIC)
    N = NilpotentOperator.from_matrix(Matrix([[0, 1], [0, 0]]))
    e1 = Subspace.coordinate(2, [0])
    W = CenteredWeightFiltration(1, (e1, e1, Subspace.full(2)))
    F = HodgeFiltration(0, (Subspace.full(2), Subspace.coordinate(2, [1])))
    return PolarizedModel(S, N, W, F, 1)


def index_one_model(m: int, middle: dict, rank_two: bool = False) -> PolarizedModel:
    """Index-one limit of odd weight ``m``: ``Q(-(m-1)/2) ⊕ middle ⊕ Q(-(m+1)/2)``.

    ``middle`` maps ``p`` to ``h^{p, m-p}`` of a pure weight ``m`` piece (only ``p > m/2``
    is read; the conjugate numbers follow).  Coordinates: ``e_0`` spans ``W_{m-1}``, the
    middle occupies real blocks ``(a, b)`` with ``a + ib`` of type ``(p, q)``, and the last
    coordinate maps onto ``e_0`` under ``N``.  With ``rank_two`` the Tate part is doubled,
    producing an invalid input for the index-one routines.
    """
    if m % 2 == 0:
        raise ValueError("index-one models are built at odd weight")
    tate = 2 if rank_two else 1
    blocks = []
    for p in sorted((p for p in middle if 2 * p > m), reverse=True):
        blocks += [p] * int(middle[p])
    n = 2 * tate + 2 * len(blocks)
    lo = list(range(tate))
    hi = list(range(n - tate, n))
    G = [[0] * n for _ in range(n)]
    Nm = [[0] * n for _ in range(n)]
    for a, b in zip(lo, hi):
        G[a][b], G[b][a] = 1, -1
        Nm[a][b] = 1
    # middle pieces: V^{p,q} = span(a + ib), V^{q,p} = span(a - ib)
    hodge_vecs = []  # (p, vector)
    for t, p in enumerate(blocks):
        a, b = tate + 2 * t, tate + 2 * t + 1
        r = (2 * p - m - 1) // 2
        s = -1 if r % 2 == 0 else 1
        G[a][b], G[b][a] = s, -s
        u = [Scalar(0)] * n
        ub = [Scalar(0)] * n
        u[a], u[b] = Scalar(1), I
        ub[a], ub[b] = Scalar(1), -I
        hodge_vecs.append((p, u))
        hodge_vecs.append((m - p, ub))
    S = BilinearForm(Matrix(G), BilinearForm.ANTISYMMETRIC)
    N = NilpotentOperator.from_matrix(Matrix(Nm))
    low = Subspace.coordinate(n, lo)
    mid = Subspace.coordinate(n, range(n - tate))
    steps = []
    for l in range(2 * m + 1):
        steps.append(Subspace.zero(n) if l < m - 1 else low if l == m - 1
                     else mid if l == m else Subspace.full(n))
    W = CenteredWeightFiltration(m, tuple(steps))
    j_lo, j_hi = (m - 1) // 2, (m + 1) // 2
    ps = [p for p, _ in hodge_vecs] + [j_lo, j_hi]
    p_min, p_max = min(ps), max(ps)
    fsteps = []
    for p in range(p_min, p_max + 2):
        vecs = [v for q, v in hodge_vecs if q >= p]
        if j_lo >= p:
            vecs += [[1 if c == i else 0 for c in range(n)] for i in lo]
        if j_hi >= p:
            vecs += [[1 if c == i else 0 for c in range(n)] for i in hi]
        fsteps.append(Subspace.span(vecs, n))
    F = HodgeFiltration(p_min, tuple(fsteps))
    return PolarizedModel(S, N, W, F, m)


def pure_model(k: int, numbers: dict) -> tuple[BilinearForm, HodgeFiltration]:
    """Polarized pure structure of odd weight ``k`` with ``h^{p,k-p} = numbers[p]``."""
    model = index_one_model(k, numbers)
    n = model.dim
    keep = list(range(1, n - 1))
    S = BilinearForm(model.S.gram.block(keep, keep), BilinearForm.ANTISYMMETRIC)
    steps = []
    for st in model.F.steps:
        vecs = [tuple(v[i] for i in keep) for v in st.basis]
        steps.append(Subspace.span(vecs, n - 2))
    return S, HodgeFiltration(model.F.p_min, tuple(steps))


# ---------------------------------------------------------------------------
# random reverse-engineered mixed Hodge structures

def _rand_q(rng: random.Random, size: int = 3) -> Scalar:
    return Scalar(rng.randint(-size, size))


def _random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        M = Matrix([[_rand_q(rng) for _ in range(n)] for _ in range(n)])
        if M.rank() == n:
            return M


@dataclass(frozen=True)
class ReverseEngineered:
    """A mixed Hodge structure built from chosen Deligne pieces."""

    mhs: MixedHodgeStructure
    pieces: BigradedSplitting        # the Deligne splitting of ``mhs``
    split_pieces: BigradedSplitting  # the R-split structure it was moved from
    delta: Matrix                    # pieces = exp(i delta) split_pieces


def random_types(rng: random.Random, max_dim: int, center: int) -> list:
    """Random multiset of bidegrees closed under ``(p,q) -> (q,p)``, total at most ``max_dim``."""
    types: list = []
    budget = rng.randint(1, max_dim)
    while budget > 0:
        w = rng.randint(0, 2 * center)
        p = rng.randint(0, w)
        q = w - p
        cost = 1 if p == q else 2
        if cost > budget:
            if budget == 1:
                p = q = rng.randint(0, center)
                types.append((p, q))
            break
        types.append((p, q))
        if p != q:
            types.append((q, p))
        budget -= cost
    return types


def reverse_engineered_mhs(rng: random.Random, max_dim: int = 6, center: int = 2,
                           split: bool = False, types: list | None = None) -> ReverseEngineered:
    types = types if types is not None else random_types(rng, max_dim, center)
    n = len(types)
    R = _random_invertible(rng, n)
    cols = R.columns()
    vecs: dict = {}
    c = 0
    # assign real columns: (p,p) one column, conjugate pairs two columns a +- ib
    order = sorted(range(n), key=lambda i: types[i])
    pending: dict = {}
    for i in order:
        p, q = types[i]
        if p == q:
            vecs.setdefault((p, q), []).append(cols[c])
            c += 1
        elif p > q:
            pending.setdefault((p, q), 0)
            pending[(p, q)] += 1
    for (p, q), cnt in sorted(pending.items()):
        for _ in range(cnt):
            a, b = cols[c], cols[c + 1]
            c += 2
            vecs.setdefault((p, q), []).append(tuple(x + I * y for x, y in zip(a, b)))
            vecs.setdefault((q, p), []).append(tuple(x - I * y for x, y in zip(a, b)))
    split_sp = BigradedSplitting(n, {k: Subspace.span(v, n) for k, v in vecs.items()})
    # adapted basis for building a lowering operator
    basis_cols, bideg = [], []
    for k, v in sorted(vecs.items()):
        for x in v:
            basis_cols.append(x)
            bideg.append(k)
    B = Matrix.from_columns(basis_cols)
    if split:
        delta = Matrix.zeros(n)
    else:
        X = [[Scalar(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if bideg[i][0] < bideg[j][0] and bideg[i][1] < bideg[j][1]:
                    X[i][j] = Scalar(rng.randint(-2, 2), rng.randint(-2, 2))
        Xs = B @ Matrix(X, n) @ B.inverse()
        delta = (Xs + Xs.conj()).scale(Scalar(1) / 2)
        if not delta.is_real():
            raise AssertionError("real part construction failed")
    g = exp_nilpotent(delta, I) if not delta.is_zero() else Matrix.identity(n)
    pieces = BigradedSplitting(n, {k: U.apply(g) for k, U in split_sp.pieces.items()})
    W = pieces.weight_filtration(center)
    F = pieces.hodge_filtration()
    return ReverseEngineered(MixedHodgeStructure(W, F), pieces, split_sp, delta)


def two_dim_family(x, y) -> MixedHodgeStructure:
    """``W_0 = span(e1)``, ``Gr_2`` spanned by ``e2``, ``F^1 = span(e2 + (x + iy) e1)``."""
    c = Scalar(x) + I * Scalar(y)
    e1 = Subspace.coordinate(2, [0])
    W = CenteredWeightFiltration(1, (e1, e1, Subspace.full(2)))
    F = HodgeFiltration(0, (Subspace.full(2), Subspace.span([[c, 1]], 2)))
    return MixedHodgeStructure(W, F)


__all__ = [
    "PolarizedModel", "weight_one_model", "index_one_model", "pure_model",
    "ReverseEngineered", "random_types", "reverse_engineered_mhs", "two_dim_family",
]
