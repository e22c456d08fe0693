"""Gradings, sl(2)-triples and nilpotent orbits ``exp(zN) F``.

Bracket conventions follow the basis ``n_-, y, n_+`` of sl(2):
``[y, n_-] = -2 n_-``, ``[y, n_+] = 2 n_+``, ``[n_+, n_-] = y``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import (I, BilinearForm, Matrix, Scalar, Subspace, exp_nilpotent, image,
                     kernel, solve)
from .mixed_hodge import (BigradedSplitting, HodgeFiltration, deligne_splitting,
                          is_r_split, solve_grading_transport, validate_pmhs,
                          validate_pure_polarized)
from .verdict import Verdict, VerdictBuilder
from .weight_filtration import (CenteredWeightFiltration, NilpotentOperator,
                                monodromy_weight_filtration)


class Sl2Error(ValueError):
    pass


@dataclass(frozen=True)
class GradingElement:
    y: Matrix
    eigenspaces: dict  # eigenvalue -> Subspace

    def basis(self):
        """Columns adapted to the eigenspaces, with their eigenvalues."""
        cols, ws = [], []
        for lam in sorted(self.eigenspaces):
            for v in self.eigenspaces[lam].basis:
                cols.append(v)
                ws.append(lam)
        return Matrix.from_columns(cols), ws

    def grades(self, W: CenteredWeightFiltration, shift: int) -> bool:
        """``W_l = ⊕_{λ <= l - shift} H_λ`` for every ``l``."""
        n = self.y.nrows
        for l in range(2 * W.center + 1):
            acc = Subspace.zero(n)
            for lam, U in self.eigenspaces.items():
                if lam <= l - shift:
                    acc = acc + U
            if acc != W[l]:
                return False
        return True


@dataclass(frozen=True)
class Sl2Triple:
    n_minus: Matrix
    y: Matrix
    n_plus: Matrix

    def relations(self) -> dict:
        N, Y, Np = self.n_minus, self.y, self.n_plus
        return {
            "[Y,N-] = -2N-": Y.commutator(N) == N.scale(-2),
            "[Y,N+] = 2N+": Y.commutator(Np) == Np.scale(2),
            "[N+,N-] = Y": Np.commutator(N) == Y,
        }

    def is_valid(self) -> bool:
        return all(self.relations().values())

    def x_minus(self) -> Matrix:
        """``N + iY + N+``: the image of the lowering element after the Cayley move."""
        return self.n_minus + self.y.scale(I) + self.n_plus


@dataclass(frozen=True)
class CSpace:
    dim: int
    basis: tuple  # tuple of Matrix

    def contains(self, X: Matrix) -> bool:
        n = X.nrows
        flat = [X[i, j] for i in range(n) for j in range(n)]
        span = Subspace.span([[M[i, j] for i in range(n) for j in range(n)] for M in self.basis],
                             n * n)
        return span.contains(flat)


def eigenspaces(Y: Matrix) -> dict:
    """Integer-eigenvalue eigenspaces of a diagonalizable ``Y`` (raises otherwise)."""
    n = Y.nrows
    out = {}
    total = 0
    for a in range(2 * n + 3):
        for lam in ((0,) if a == 0 else (-a, a)):
            K = kernel(Y - Matrix.identity(n).scale(lam))
            if K.dim:
                out[lam] = K
                total += K.dim
        if total == n:
            break
    if total != n:
        raise Sl2Error("operator is not diagonalizable with small integer eigenvalues")
    return out


def canonical_grading(splitting: BigradedSplitting, k: int) -> GradingElement:
    """``Y`` acting by ``p + q - k`` on ``I^{p,q}``."""
    if not is_r_split(splitting):
        raise Sl2Error("splitting is not R-split; the grading would not be real")
    n = splitting.ambient_dim
    cols, ws = [], []
    spaces: dict = {}
    for (p, q), U in sorted(splitting.pieces.items()):
        lam = p + q - k
        spaces[lam] = spaces.get(lam, Subspace.zero(n)) + U
        for v in U.basis:
            cols.append(v)
            ws.append(lam)
    B = Matrix.from_columns(cols)
    Y = B @ Matrix.diag(ws) @ B.inverse()
    if not Y.is_real():
        raise Sl2Error("grading is not real")
    return GradingElement(Y, spaces)


def complete_sl2_triple(N: NilpotentOperator | Matrix, Y: Matrix) -> Sl2Triple:
    """Solve for the unique ``N+`` with ``[Y, N+] = 2N+`` and ``[N+, N] = Y``."""
    Nm = N.matrix if isinstance(N, NilpotentOperator) else N
    n = Nm.nrows
    if Y.commutator(Nm) != Nm.scale(-2):
        raise Sl2Error("[Y, N] != -2N")
    G = GradingElement(Y, eigenspaces(Y))
    B, ws = G.basis()
    Binv = B.inverse()
    Na = Binv @ Nm @ B
    Ya = Matrix.diag(ws)
    # unknowns: entries of N+ (adapted coordinates) raising the degree by 2
    slots = [(i, j) for i in range(n) for j in range(n) if ws[i] - ws[j] == 2]
    col = {s: c for c, s in enumerate(slots)}
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            # ([X, N])_{ij} = sum_k X_ik N_kj - N_ik X_kj
            coeffs = [0] * len(slots)
            for k in range(n):
                if (i, k) in col and Na[k, j]:
                    coeffs[col[(i, k)]] = coeffs[col[(i, k)]] + Na[k, j]
                if (k, j) in col and Na[i, k]:
                    coeffs[col[(k, j)]] = coeffs[col[(k, j)]] - Na[i, k]
            if any(coeffs) or Ya[i, j]:
                rows.append(coeffs)
                rhs.append(Ya[i, j])
    if slots:
        x = solve(Matrix(rows, len(slots)), rhs) if rows else tuple(Scalar(0) for _ in slots)
    else:
        x = () if not any(rhs) else None
    if x is None:
        raise Sl2Error("no N+ exists for this (N, Y) pair")
    Xa = [[Scalar(0)] * n for _ in range(n)]
    for (i, j), c in zip(slots, x):
        Xa[i][j] = c
    Np = B @ Matrix(Xa, n) @ Binv
    t = Sl2Triple(Nm, Y, Np)
    if not t.is_valid():
        raise Sl2Error("no N+ exists for this (N, Y) pair")
    return t


def _ad_matrix(N: Matrix) -> Matrix:
    """Matrix of ``X -> NX - XN`` on row-major flattened ``n x n`` matrices."""
    n = N.nrows
    size = n * n
    rows = [[Scalar(0)] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            r = i * n + j
            for k in range(n):
                if N[i, k]:
                    rows[r][k * n + j] = rows[r][k * n + j] + N[i, k]
                if N[k, j]:
                    rows[r][i * n + k] = rows[r][i * n + k] - N[k, j]
    return Matrix(rows, size)


def compute_c_space(N: NilpotentOperator | Matrix) -> CSpace:
    """Basis of ``ker(ad N) ∩ im(ad N)`` inside ``End(H)``."""
    Nm = N.matrix if isinstance(N, NilpotentOperator) else N
    n = Nm.nrows
    A = _ad_matrix(Nm)
    C = kernel(A) & image(A)
    basis = tuple(Matrix([[v[i * n + j] for j in range(n)] for i in range(n)], n)
                  for v in C.basis)
    return CSpace(C.dim, basis)


def grading_transport(G0: GradingElement, Y1: Matrix) -> Matrix | None:
    """``X`` lowering the ``G0``-degree with ``exp(X) Y0 exp(-X) = Y1``."""
    B, ws = G0.basis()
    return solve_grading_transport(B, ws, Y1)


def nilpotent_orbit_eval(N: NilpotentOperator | Matrix, F: HodgeFiltration, z) -> HodgeFiltration:
    Nm = N.matrix if isinstance(N, NilpotentOperator) else N
    return F.apply(exp_nilpotent(Nm, z))


def hodge_pieces(F: HodgeFiltration, k: int) -> dict:
    """``V^{p,q} = F^p ∩ conj F^q`` of a pure weight ``k`` structure."""
    Fb = F.conj()
    out = {}
    for p in range(F.p_min - 1, F.p_end + 1):
        U = F[p] & Fb[k - p]
        if U.dim:
            out[(p, k - p)] = U
    return out


def check_orbit_correspondence(S: BilinearForm, N: NilpotentOperator | Matrix,
                               F: HodgeFiltration, m: int) -> Verdict:
    """Forward direction: an R-split PMHS moves under ``exp(iN)`` to a polarized pure
    structure on which the sl(2) lowering element is horizontal."""
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    vb = VerdictBuilder("SL(2)-orbit correspondence")
    try:
        W = monodromy_weight_filtration(N, m)
    except ValueError as exc:
        vb.add("weight filtration", False, str(exc))
        return vb.build()
    pm = validate_pmhs(S, N, W, F)
    vb.add("limit is a PMHS", pm.passed, "" if pm.passed else pm.first_failure().name)
    if not pm.passed:
        return vb.build()
    sp = deligne_splitting(W, F)
    split = is_r_split(sp)
    vb.add("limit is R-split", split)
    if not split:
        return vb.build()
    Fi = nilpotent_orbit_eval(N, F, I)
    pure = validate_pure_polarized(S, Fi, m)
    vb.add("exp(iN)F is polarized pure of weight m", pure.passed,
           "" if pure.passed else pure.first_failure().name)
    orth = all(not S(u, v) for p in Fi.index_range()
               for u in Fi[p].basis for v in Fi[m - p + 1].basis)
    vb.add("S(F^p, F^(m-p+1)) = 0 after the move", orth)
    G = canonical_grading(sp, m)
    try:
        trip = complete_sl2_triple(N, G.y)
        vb.add("sl2 relations", trip.is_valid())
    except Sl2Error as exc:
        vb.add("sl2 relations", False, str(exc))
        return vb.build()
    if pure.passed:
        X = trip.x_minus()
        pieces = hodge_pieces(Fi, m)
        n = N.dim
        bad = [pq for pq, U in pieces.items()
               if not U.apply(X) <= pieces.get((pq[0] - 1, pq[1] + 1), Subspace.zero(n))]
        vb.add("X- shifts the bigrading by (-1, 1)", not bad, "", bad or None)
        vb.data["moved_hodge_numbers"] = pure.data.get("primitive_hodge_numbers")
    vb.data["triple"] = {"N-": trip.n_minus, "Y": trip.y, "N+": trip.n_plus}
    return vb.build()


__all__ = [
    "Sl2Error", "GradingElement", "Sl2Triple", "CSpace", "eigenspaces",
    "canonical_grading", "complete_sl2_triple", "compute_c_space", "grading_transport",
    "nilpotent_orbit_eval", "hodge_pieces", "check_orbit_correspondence",
]
