"""Monodromy weight filtrations of nilpotent operators.

For a nilpotent ``N`` with ``N^(m+1) = 0`` there is exactly one increasing
filtration ``0 = W_{-1} ⊆ W_0 ⊆ ... ⊆ W_{2m} = H`` with

1. ``N W_l ⊆ W_{l-2}``, and
2. ``N^l : Gr_{m+l} -> Gr_{m-l}`` an isomorphism for every ``l >= 0``.

It is computed in closed form as
``W_{m+j} = sum_{b >= max(0, -j)} ker N^(j+b+1) ∩ im N^b`` and every result is
checked against (1) and (2) before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from gmpy2 import mpq

from .linalg import (BilinearForm, Matrix, Subspace, annihilator, exp_nilpotent, image,
                     kernel, quotient_basis)
from .verdict import Verdict, VerdictBuilder


class WeightFiltrationError(ValueError):
    pass


def _nilpotency_index(M: Matrix) -> int | None:
    """Smallest k with M^(k+1) = 0, or None if M is not nilpotent."""
    if M.is_zero():
        return 0
    P = M
    for k in range(1, M.nrows + 1):
        P = P @ M
        if P.is_zero():
            return k
    return None


@dataclass(frozen=True)
class NilpotentOperator:
    matrix: Matrix
    nilpotency_index: int

    @classmethod
    def from_matrix(cls, M) -> "NilpotentOperator":
        if not isinstance(M, Matrix):
            M = Matrix(M)
        if not M.is_square():
            raise WeightFiltrationError("operator must be square")
        k = _nilpotency_index(M)
        if k is None:
            raise WeightFiltrationError("operator is not nilpotent")
        return cls(M, k)

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    @cached_property
    def _powers(self) -> list[Matrix]:
        out = [Matrix.identity(self.dim)]
        for _ in range(self.nilpotency_index + 1):
            out.append(out[-1] @ self.matrix)
        return out

    def power(self, k: int) -> Matrix:
        if k < 0:
            raise ValueError("negative power")
        if k > self.nilpotency_index:
            return Matrix.zeros(self.dim)
        return self._powers[k]

    def rank(self) -> int:
        return self.matrix.rank()

    def exp(self, z=1) -> Matrix:
        return exp_nilpotent(self.matrix, z)


@dataclass(frozen=True)
class UnipotentOperator:
    matrix: Matrix
    unipotency_index: int

    @classmethod
    def from_matrix(cls, T) -> "UnipotentOperator":
        if not isinstance(T, Matrix):
            T = Matrix(T)
        if not T.is_square():
            raise WeightFiltrationError("operator must be square")
        E = T - Matrix.identity(T.nrows)
        k = _nilpotency_index(E)
        if k is None:
            n = T.nrows
            raise WeightFiltrationError(
                f"operator is not unipotent: (T - I)^{n} = {(E ** n)!r} is nonzero")
        return cls(T, k)


def log_unipotent(T: UnipotentOperator | Matrix) -> NilpotentOperator:
    """``N = log T = -sum_{n>=1} (I - T)^n / n``, a finite sum."""
    if not isinstance(T, UnipotentOperator):
        T = UnipotentOperator.from_matrix(T)
    n = T.matrix.nrows
    A = Matrix.identity(n) - T.matrix
    N = Matrix.zeros(n)
    P = Matrix.identity(n)
    for k in range(1, T.unipotency_index + 1):
        P = P @ A
        N = N - P.scale(mpq(1, k))
    return NilpotentOperator.from_matrix(N)


@dataclass(frozen=True)
class CenteredWeightFiltration:
    """``W_0 ⊆ ... ⊆ W_{2m}``; indices outside ``0..2m`` give ``0`` or the full space."""

    center: int
    steps: tuple

    def __post_init__(self):
        if self.center < 0:
            raise WeightFiltrationError("center must be non-negative")
        if len(self.steps) != 2 * self.center + 1:
            raise WeightFiltrationError(
                f"expected {2 * self.center + 1} steps, got {len(self.steps)}")
        n = self.ambient_dim
        for a, b in zip(self.steps, self.steps[1:]):
            if not a <= b:
                raise WeightFiltrationError("weight filtration is not increasing")
        if self.steps[-1].dim != n:
            raise WeightFiltrationError("top step must be the full space")

    @property
    def ambient_dim(self) -> int:
        return self.steps[0].ambient_dim

    def __getitem__(self, l: int) -> Subspace:
        if l < 0:
            return Subspace.zero(self.ambient_dim)
        if l > 2 * self.center:
            return Subspace.full(self.ambient_dim)
        return self.steps[l]

    def graded_dim(self, k: int) -> int:
        return self[k].dim - self[k - 1].dim

    def graded_dims(self) -> dict[int, int]:
        return {k: self.graded_dim(k) for k in range(2 * self.center + 1)}

    def dims(self) -> list[int]:
        return [s.dim for s in self.steps]

    def graded_basis(self, k: int) -> list[tuple]:
        """Vectors of ``W_k`` whose classes form a basis of ``Gr_k``."""
        return quotient_basis(self[k - 1], self[k])

    def shifted(self, k: int) -> "ShiftedWeightFiltration":
        return ShiftedWeightFiltration(self, k)

    def jumps(self) -> list[int]:
        return [k for k in range(2 * self.center + 1) if self.graded_dim(k)]


@dataclass(frozen=True)
class ShiftedWeightFiltration:
    """Reindexing view ``W[k]_l = W_{l+k}``; no subspaces are copied."""

    base: CenteredWeightFiltration
    shift: int

    def __getitem__(self, l: int) -> Subspace:
        return self.base[l + self.shift]

    def graded_dim(self, l: int) -> int:
        return self.base.graded_dim(l + self.shift)


def weight_filtration_from_steps(center: int, steps) -> CenteredWeightFiltration:
    return CenteredWeightFiltration(center, tuple(steps))


def monodromy_weight_filtration(N: NilpotentOperator | Matrix, m: int,
                                verify: bool = True) -> CenteredWeightFiltration:
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    if m < 0:
        raise WeightFiltrationError("center must be non-negative")
    if N.nilpotency_index > m:
        raise WeightFiltrationError(
            f"N^{m + 1} != 0: nilpotency index {N.nilpotency_index} exceeds center {m}")
    n = N.dim
    top = N.nilpotency_index
    kers = [kernel(N.power(a)) for a in range(top + 2)]
    ims = [image(N.power(b)) for b in range(top + 1)]

    def ker(a):
        return kers[a] if a <= top + 1 else kers[top + 1]

    steps = []
    for j in range(-m, m + 1):
        acc = Subspace.zero(n)
        for b in range(max(0, -j), top + 1):
            a = j + b + 1
            if a <= 0:
                continue
            acc = acc + (ker(a) & ims[b])
        steps.append(acc)
    W = CenteredWeightFiltration(m, tuple(steps))
    if verify:
        v = verify_weight_conditions(N, W)
        if not v.passed:
            raise WeightFiltrationError(f"constructed filtration failed: {v.first_failure()}")
    return W


def verify_weight_conditions(N: NilpotentOperator | Matrix,
                             W: CenteredWeightFiltration) -> Verdict:
    """Check the two defining conditions of ``W(N)``."""
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    m = W.center
    vb = VerdictBuilder("weight filtration")
    vb.add("ambient", W.ambient_dim == N.dim, f"W on dim {W.ambient_dim}, N on dim {N.dim}")
    if W.ambient_dim != N.dim:
        return vb.build()
    vb.add("nilpotency", N.nilpotency_index <= m,
           f"index {N.nilpotency_index}, center {m}")
    ok = True
    for l in range(2 * m + 1):
        img = W[l].apply(N.matrix)
        if not img <= W[l - 2]:
            bad = next(b for b in W[l].basis if not W[l - 2].contains(N.matrix @ b))
            vb.add("N lowers W by 2", False, f"N(W_{l}) not in W_{l - 2}", bad)
            ok = False
            break
    if ok:
        vb.add("N lowers W by 2", True)
    ok = True
    for l in range(0, m + 1):
        Nl = N.power(l)
        # surjectivity onto Gr_{m-l} together with equal dimensions gives an isomorphism
        lhs = W[m + l].apply(Nl) + W[m - l - 1]
        if lhs != W[m - l] or W.graded_dim(m + l) != W.graded_dim(m - l):
            vb.add("N^l iso Gr_{m+l} -> Gr_{m-l}", False, f"fails at l = {l}",
                   {"l": l, "dim_gr_plus": W.graded_dim(m + l),
                    "dim_gr_minus": W.graded_dim(m - l)})
            ok = False
            break
    if ok:
        vb.add("N^l iso Gr_{m+l} -> Gr_{m-l}", True)
    return vb.build()


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """Primitive parts and Lefschetz summands, both as lifts ``W_{k-1} ⊆ U ⊆ W_k``."""

    center: int
    parts: dict = field(default_factory=dict)      # weight -> lift subspace
    summands: dict = field(default_factory=dict)   # weight k -> [(i, lift of N^i P_{k+2i})]
    graded_dims: dict = field(default_factory=dict)

    def part_dim(self, k: int, W: CenteredWeightFiltration) -> int:
        if k not in self.parts:
            return 0
        return self.parts[k].dim - W[k - 1].dim

    def primitive_dims(self, W: CenteredWeightFiltration) -> dict[int, int]:
        return {k: self.part_dim(k, W) for k in sorted(self.parts)}

    def summand_dims(self, W: CenteredWeightFiltration) -> dict[int, list[int]]:
        return {k: [U.dim - W[k - 1].dim for _, U in lst] for k, lst in self.summands.items()}


def primitive_lift(N: NilpotentOperator, W: CenteredWeightFiltration, l: int) -> Subspace:
    """Lift of ``P_{m+l} = ker(N^(l+1) : Gr_{m+l} -> Gr_{m-l-2})``."""
    m = W.center
    if l < 0:
        return W[m + l - 1]
    return W[m + l] & W[m - l - 3].preimage(N.power(l + 1))


def primitive_decomposition(N: NilpotentOperator | Matrix,
                            W: CenteredWeightFiltration) -> PrimitiveDecomposition:
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    v = verify_weight_conditions(N, W)
    if not v.passed:
        raise WeightFiltrationError(f"(N, W) mismatch: {v.first_failure()}")
    m = W.center
    parts = {m + l: primitive_lift(N, W, l) for l in range(m + 1)}
    summands: dict[int, list] = {}
    for k in range(2 * m + 1):
        lst = []
        for i in range(0, m + 1):
            src = k + 2 * i
            if src not in parts or src - m < i:
                continue
            lift = parts[src].apply(N.power(i)) + W[k - 1]
            lst.append((i, lift))
        summands[k] = lst
        total = sum(U.dim - W[k - 1].dim for _, U in lst)
        acc = W[k - 1]
        for _, U in lst:
            acc = acc + U
        if total != W.graded_dim(k) or acc != W[k]:
            raise WeightFiltrationError(f"Lefschetz summands fail to be direct at weight {k}")
    return PrimitiveDecomposition(m, parts, summands, W.graded_dims())


def kernel_graded_decomposition(N: NilpotentOperator | Matrix, W: CenteredWeightFiltration,
                                k: int) -> list[int]:
    """``[dim Gr_{k-2a}(ker N) for a = 0, 1, ...]``; their sum equals ``dim Gr_k H``."""
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    m = W.center
    if k > m:
        raise WeightFiltrationError(f"k = {k} exceeds the center {m}")
    K = kernel(N.matrix)
    out = []
    j = k
    while j >= 0:
        out.append((W[j] & K).dim - (W[j - 1] & K).dim)
        j -= 2
    if sum(out) != W.graded_dim(k):
        raise WeightFiltrationError(
            f"kernel decomposition mismatch at k = {k}: {out} vs dim Gr_k = {W.graded_dim(k)}")
    return out


def infinitesimal_isometry_witness(N: Matrix, S: BilinearForm):
    """First ``(i, j)`` with ``S(N e_i, e_j) + S(e_i, N e_j) != 0``, or ``None``."""
    M = N.T() @ S.gram + S.gram @ N
    for i, j, a in M.nonzero_entries():
        return (i, j, a)
    return None


def graded_form(N: NilpotentOperator, S: BilinearForm, W: CenteredWeightFiltration,
                l: int, basis=None) -> tuple[list, Matrix]:
    """Gram matrix of ``S(u, N^l v)`` on a basis of ``Gr_{m+l}``."""
    m = W.center
    us = basis if basis is not None else W.graded_basis(m + l)
    Nl = N.power(l)
    return us, Matrix([[S(u, Nl @ v) for v in us] for u in us], len(us))


def check_polarization_compat(N: NilpotentOperator | Matrix, S: BilinearForm,
                              W: CenteredWeightFiltration) -> Verdict:
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    vb = VerdictBuilder("polarization compatibility")
    wit = infinitesimal_isometry_witness(N.matrix, S)
    if wit is not None:
        i, j, a = wit
        n = N.dim
        e = lambda t: tuple(1 if s == t else 0 for s in range(n))
        vb.add("infinitesimal isometry", False,
               f"S(N e{i}, e{j}) + S(e{i}, N e{j}) = {a}", {"u": e(i), "v": e(j)})
        return vb.build()
    vb.add("infinitesimal isometry", True)
    if not S.is_nondegenerate():
        vb.add("nondegenerate", False, "polarizing form is degenerate")
        return vb.build()
    m = W.center
    bad = [l for l in range(2 * m + 1) if annihilator(S, W[l]) != W[2 * m - l - 1]]
    vb.add("W_l^perp = W_{2m-l-1}", not bad, f"fails for l in {bad}" if bad else "",
           bad or None)
    bad = []
    for l in range(m + 1):
        us, G = graded_form(N, S, W, l)
        if G.rank() != len(us):
            bad.append(l)
    vb.add("S(., N^l .) nondegenerate on Gr_{m+l}", not bad,
           f"degenerate for l in {bad}" if bad else "", bad or None)
    return vb.build()
