"""Boundary components of index-one degenerations and the graded limit point."""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import BilinearForm, Matrix, Subspace, quotient_basis, solve
from .mixed_hodge import (HodgeFiltration, HodgeNumbers, graded_hodge_numbers,
                          validate_pmhs, validate_pure_polarized)
from .verdict import Verdict, VerdictBuilder
from .weight_filtration import (CenteredWeightFiltration, NilpotentOperator,
                                monodromy_weight_filtration)


class BoundaryError(ValueError):
    pass


def primitive_numbers(h: HodgeNumbers) -> dict:
    """``{λ: HodgeNumbers}`` of primitive numbers for an index-one degeneration of weight ``k``.

    The middle weight loses one at ``a = (k±1)/2``; the outer weights carry a single
    Tate class each.
    """
    k = h.weight
    if k % 2 == 0:
        raise BoundaryError(f"weight {k} is even; index-one primitive numbers need odd k")
    lo, hi = (k - 1) // 2, (k + 1) // 2
    for a in (lo, hi):
        if h[(a, k - a)] < 1:
            raise BoundaryError(f"h^{{{a},{k - a}}} = 0: the index-one shape is impossible")
    mid = {pq: v for pq, v in h.h.items()}
    for a in (lo, hi):
        mid[(a, k - a)] -= 1
    return {k - 1: HodgeNumbers(k - 1, {(lo, lo): 1}),
            k: HodgeNumbers(k, {pq: v for pq, v in mid.items() if v}),
            k + 1: HodgeNumbers(k + 1, {(hi, hi): 1})}


def _sign(x) -> int:
    if not x.is_real or not x.re:
        raise BoundaryError(f"psi value {x} is not a non-zero rational")
    return 1 if x.re > 0 else -1


@dataclass(frozen=True)
class BoundaryDatum:
    """``B(W, p, ψ)``: the isotropic rational line, the primitive table, the sign class of ψ."""

    line: Subspace
    primitive: dict
    psi_sign: int

    def __eq__(self, other):
        if not isinstance(other, BoundaryDatum):
            return NotImplemented
        return (self.line == other.line and self.psi_sign == other.psi_sign
                and {k: v.nonzero() for k, v in self.primitive.items()}
                == {k: v.nonzero() for k, v in other.primitive.items()})

    def __hash__(self):
        return hash((self.line, self.psi_sign))

    def to_json(self) -> dict:
        return {"line": [[str(x) for x in v] for v in self.line.basis],
                "psi_sign": self.psi_sign,
                "primitive": {str(k): v.to_json() for k, v in sorted(self.primitive.items())}}


@dataclass(frozen=True)
class GradedLimitPoint:
    weight: int
    basis: tuple              # lifts in the ambient space of a basis of Gr_k
    F: HodgeFiltration        # on Gr_k, in the coordinates of ``basis``
    form: BilinearForm
    hodge_numbers: HodgeNumbers
    verdict: Verdict

    def to_json(self) -> dict:
        from .serialization import form_to_json, hodge_to_json

        return {"weight": self.weight, "hodge_numbers": self.hodge_numbers.to_json(),
                "F": hodge_to_json(self.F), "form": form_to_json(self.form),
                "pure_polarized": self.verdict.passed}


@dataclass(frozen=True)
class BoundaryPoint:
    datum: BoundaryDatum
    point: GradedLimitPoint
    psi_value: object
    verdict: Verdict

    def to_json(self) -> dict:
        return {"datum": self.datum.to_json(), "graded_point": self.point.to_json(),
                "psi_value": str(self.psi_value), "verdict": self.verdict.to_json()}


def _graded_coordinates(basis, lower: Subspace) -> Matrix:
    """Matrix taking ``v`` in ``span(basis) + lower`` to its coordinates in ``basis`` mod ``lower``."""
    C = Matrix.from_columns(list(basis) + list(lower.basis), lower.ambient_dim)
    Ch = C.H()
    L = (Ch @ C).inverse() @ Ch
    return L.block(range(len(basis)), range(L.ncols))


def induced_graded(F: HodgeFiltration, W: CenteredWeightFiltration, k: int, basis) -> HodgeFiltration:
    upper = W[k]
    P = _graded_coordinates(basis, W[k - 1])
    steps = []
    for p in range(F.p_min, F.p_end + 1):
        piece = F[p] & upper
        steps.append(Subspace.span([P @ v for v in piece.basis], len(basis)))
    return HodgeFiltration.from_steps(F.p_min, steps)


def graded_limit_point(S: BilinearForm, W: CenteredWeightFiltration, F: HodgeFiltration,
                       k: int) -> GradedLimitPoint:
    basis = tuple(quotient_basis(W[k - 1], W[k]))
    r = len(basis)
    gram = Matrix([[S(a, b) for b in basis] for a in basis])
    form = BilinearForm(gram, S.symmetry)
    Fg = induced_graded(F, W, k, basis)
    h = HodgeNumbers(k, {(p, k - p): Fg[p].dim - Fg[p + 1].dim
                         for p in range(Fg.p_min, Fg.p_end) if Fg[p].dim - Fg[p + 1].dim})
    v = validate_pure_polarized(form, Fg, k) if r else VerdictBuilder("empty").build()
    return GradedLimitPoint(k, basis, Fg, form, h, v)


def boundary_point(S: BilinearForm, N: NilpotentOperator | Matrix, F: HodgeFiltration,
                   k: int, W: CenteredWeightFiltration | None = None) -> BoundaryPoint:
    if not isinstance(N, NilpotentOperator):
        N = NilpotentOperator.from_matrix(N)
    if N.matrix.is_zero() or not N.power(2).is_zero() or N.rank() != 1:
        raise BoundaryError(f"index-one condition fails: need N != 0, N^2 = 0, rank N = 1 "
                            f"(rank N = {N.rank()}, index {N.nilpotency_index})")
    W = W or monodromy_weight_filtration(N, k)
    pm = validate_pmhs(S, N, W, F)
    if not pm.passed:
        f = pm.first_failure()
        raise BoundaryError(f"not a polarized MHS: {f.name}: {f.detail}")
    line = W[k - 1]
    if line.dim != 1:
        raise BoundaryError(f"dim W_(k-1) = {line.dim}, expected 1")
    e = line.basis[0]
    if S(e, e):
        raise BoundaryError("W_(k-1) is not isotropic")
    y = solve(N.matrix, e)
    if y is None:
        raise BoundaryError("W_(k-1) is not in the image of N")
    psi = S(y, e)
    sign = _sign(psi)

    vb = VerdictBuilder("boundary point")
    vb.add("index-one condition", True, "N != 0, N^2 = 0, rank N = 1")
    vb.add("W_(k-1) isotropic", True)
    vb.add("W_(k-1) rational", all(x.is_real for x in e))
    graded = graded_hodge_numbers(W, F)
    n = F.ambient_dim
    total = HodgeNumbers(k, {(p, k - p): F[p].dim - F[p + 1].dim
                             for p in range(F.p_min, F.p_end) if F[p].dim - F[p + 1].dim})
    try:
        table = primitive_numbers(total)
    except BoundaryError as exc:
        raise BoundaryError(f"primitive table: {exc}") from exc
    for lam in (k - 1, k, k + 1):
        got = graded.get(lam)
        got = got.nonzero() if got is not None else {}
        vb.add(f"primitive numbers at weight {lam}", got == table[lam].nonzero(),
               f"limit {got} vs table {table[lam].nonzero()}")
    point = graded_limit_point(S, W, F, k)
    vb.add("graded point is pure polarized", point.verdict.passed,
           point.verdict.first_failure().name if not point.verdict.passed else "")
    vb.add("boundary component matches the graded type",
           point.hodge_numbers.nonzero() == table[k].nonzero())
    vb.data.update({"dim": n, "psi": str(psi), "psi_sign": sign})
    return BoundaryPoint(BoundaryDatum(line, table, sign), point, psi, vb.build())


def reference_vs_limit_graded(F_limit: HodgeFiltration, F_reference: HodgeFiltration,
                              W: CenteredWeightFiltration) -> Verdict:
    """Both filtrations induce literally the same subspaces on every ``Gr^W_λ``."""
    vb = VerdictBuilder("reference and limit agree on Gr^W")
    lo = min(F_limit.p_min, F_reference.p_min)
    hi = max(F_limit.p_end, F_reference.p_end)
    for lam in range(2 * W.center + 1):
        if not W.graded_dim(lam):
            continue
        ok = all((F_limit[p] & W[lam]) + W[lam - 1] == (F_reference[p] & W[lam]) + W[lam - 1]
                 for p in range(lo, hi + 1))
        vb.add(f"Gr_{lam}", ok)
    return vb.build()


__all__ = ["BoundaryError", "BoundaryDatum", "GradedLimitPoint", "BoundaryPoint",
           "primitive_numbers", "boundary_point", "graded_limit_point", "induced_graded",
           "reference_vs_limit_graded"]
