"""Semistable central fibers: weight spectral sequence, Clemens-Schmid bookkeeping,
quadric-fiber stalks and the involution pairing on a double cover.

Geometric inputs that cannot be derived here are stored as *axioms*, each with a
provenance string, so that every number used downstream can be traced.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology_rings import FiberMiddleData, coker_rho_rank, load_ring
from .linalg import BilinearForm, LinalgError, Matrix
from .verdict import Verdict, VerdictBuilder


class DegenerationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# weight spectral sequence for a two-level SNC fiber

@dataclass(frozen=True)
class SncCentralFiber:
    """Components ``Y_i`` and their double locus, Betti numbers indexed by degree.

    ``d1[q]`` is either an integer rank or an exact matrix of the restriction
    difference ``⊕ H^q(Y_i) -> H^q(double locus)``; missing degrees mean rank 0.
    """

    components: tuple          # ((name, betti), ...)
    double_locus: tuple        # (name, betti)
    d1: dict = field(default_factory=dict)
    name: str = "central fiber"
    provenance: dict = field(default_factory=dict)

    def b_components(self, q: int) -> int:
        return sum(b[q] if q < len(b) else 0 for _, b in self.components)

    def b_double(self, q: int) -> int:
        b = self.double_locus[1]
        return b[q] if q < len(b) else 0

    @property
    def top_degree(self) -> int:
        return max(len(b) for _, b in (*self.components, self.double_locus)) - 1

    def d1_rank(self, q: int) -> int:
        entry = self.d1.get(q, 0)
        src, tgt = self.b_components(q), self.b_double(q)
        if isinstance(entry, Matrix):
            if (entry.nrows, entry.ncols) != (tgt, src):
                raise DegenerationError(
                    f"d1 in degree {q} is {entry.nrows}x{entry.ncols}, expected {tgt}x{src}")
            return entry.rank()
        r = int(entry)
        if r < 0 or r > min(src, tgt):
            raise DegenerationError(f"declared rank {r} of d1 in degree {q} exceeds min({src},{tgt})")
        return r


@dataclass(frozen=True)
class E2Page:
    e1: dict            # (p, q) -> dim
    e2: dict            # (p, q) -> dim
    ranks: dict         # q -> rank d1

    def graded(self, m: int) -> dict:
        """``Gr^W_k H^m(X_0) = E_2^{m-k, k}``."""
        return {k: self.e2.get((m - k, k), 0) for k in range(m + 1) if self.e2.get((m - k, k), 0)}


def e1_to_e2(fiber: SncCentralFiber) -> E2Page:
    e1, e2, ranks = {}, {}, {}
    for q in range(fiber.top_degree + 1):
        a, b = fiber.b_components(q), fiber.b_double(q)
        r = fiber.d1_rank(q)
        ranks[q] = r
        e1[(0, q)], e1[(1, q)] = a, b
        e2[(0, q)], e2[(1, q)] = a - r, b - r
    return E2Page(e1, e2, ranks)


def check_e2(fiber: SncCentralFiber, page: E2Page | None = None) -> Verdict:
    page = page or e1_to_e2(fiber)
    vb = VerdictBuilder(f"E1 -> E2 for {fiber.name}")
    for q in sorted(page.ranks):
        chi1 = page.e1[(0, q)] - page.e1[(1, q)]
        chi2 = page.e2[(0, q)] - page.e2[(1, q)]
        vb.add(f"row q={q} Euler characteristic", chi1 == chi2, f"{chi1} vs {chi2}")
    tot1 = sum((-1) ** (p + q) * v for (p, q), v in page.e1.items())
    tot2 = sum((-1) ** (p + q) * v for (p, q), v in page.e2.items())
    vb.add("total Euler characteristic", tot1 == tot2, f"{tot1} vs {tot2}")
    vb.add("non-negative E2", all(v >= 0 for v in page.e2.values()))
    return vb.build()


def fiber_from_json(obj: dict) -> SncCentralFiber:
    from .serialization import matrix_from_json

    d1 = {}
    for q, entry in obj.get("d1", {}).items():
        d1[int(q)] = matrix_from_json(entry["matrix"]) if "matrix" in entry else int(entry["rank"])
    return SncCentralFiber(
        tuple((c["name"], tuple(c["betti"])) for c in obj["components"]),
        (obj["double_locus"]["name"], tuple(obj["double_locus"]["betti"])),
        d1, obj.get("name", "central fiber"), obj.get("provenance", {}))


def fiber_to_json(f: SncCentralFiber) -> dict:
    from .serialization import matrix_to_json

    d1 = {str(q): ({"matrix": matrix_to_json(v)} if isinstance(v, Matrix) else {"rank": int(v)})
          for q, v in sorted(f.d1.items())}
    return {"name": f.name,
            "components": [{"name": n, "betti": list(b)} for n, b in f.components],
            "double_locus": {"name": f.double_locus[0], "betti": list(f.double_locus[1])},
            "d1": d1, "provenance": dict(f.provenance)}


# ---------------------------------------------------------------------------
# Clemens-Schmid

CS_WEIGHT_SHIFTS = {"alpha": "(n+1, n+1)", "i_star": "(0, 0)", "N": "(-1, -1)", "beta": "(-n, -n)"}


@dataclass(frozen=True)
class ClemensSchmidInstance:
    """``H_{2n+2-m}(X_0) -α-> H^m(X_0) -i*-> H^m_lim -N-> H^m_lim -β-> H_{2n-m}(X_0)``."""

    n: int
    m: int
    central: dict                     # weight -> dim Gr^W H^m(X_0)
    limit: dict                       # weight -> dim Gr^W H^m_lim
    ranks: dict                       # alpha, i_star, N, beta
    homology_in_dim: int | None = None
    homology_out_dim: int | None = None
    N_power_ranks: tuple | None = None  # rank N^k for k = 0, 1, 2, ...
    name: str = "instance"
    provenance: dict = field(default_factory=dict)

    @property
    def central_dim(self) -> int:
        return sum(self.central.values())

    @property
    def limit_dim(self) -> int:
        return sum(self.limit.values())

    def central_W(self, k: int) -> int:
        return sum(v for w, v in self.central.items() if w <= k)

    def to_json(self) -> dict:
        obj = {"name": self.name, "n": self.n, "m": self.m,
               "central": {"graded": {str(k): v for k, v in sorted(self.central.items())}},
               "limit": {"graded": {str(k): v for k, v in sorted(self.limit.items())}},
               "ranks": dict(self.ranks), "provenance": dict(self.provenance)}
        if self.N_power_ranks is not None:
            obj["limit"]["N_power_ranks"] = list(self.N_power_ranks)
        if self.homology_in_dim is not None:
            obj["homology_in_dim"] = self.homology_in_dim
        if self.homology_out_dim is not None:
            obj["homology_out_dim"] = self.homology_out_dim
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ClemensSchmidInstance":
        lim = obj["limit"]
        return cls(int(obj["n"]), int(obj["m"]),
                   {int(k): int(v) for k, v in obj["central"]["graded"].items()},
                   {int(k): int(v) for k, v in lim["graded"].items()},
                   {k: int(v) for k, v in obj["ranks"].items()},
                   obj.get("homology_in_dim"), obj.get("homology_out_dim"),
                   tuple(lim["N_power_ranks"]) if "N_power_ranks" in lim else None,
                   obj.get("name", "instance"), obj.get("provenance", {}))


def _limit_power_ranks(limit: dict, m: int) -> list[int]:
    """``rank N^k`` read off the Jordan strings of a weight filtration centered at ``m``."""
    top = max((w - m for w in limit if limit[w]), default=0)
    prim = {l: limit.get(m + l, 0) - limit.get(m + l + 2, 0) for l in range(top + 1)}
    return [sum(p * max(0, l + 1 - k) for l, p in prim.items()) for k in range(top + 2)]


def clemens_schmid_check(inst: ClemensSchmidInstance) -> Verdict:
    m, r = inst.m, inst.ranks
    vb = VerdictBuilder(f"Clemens-Schmid for {inst.name}")
    L = inst.limit
    vb.add("limit weights symmetric about m",
           all(L.get(m + j, 0) == L.get(m - j, 0) for j in range(m + 1)),
           f"graded dims {dict(sorted(L.items()))}")
    vb.add("limit weights hard-Lefschetz monotone",
           all(L.get(m + j, 0) >= L.get(m + j + 2, 0) for j in range(m + 1)))
    powers = _limit_power_ranks(L, m)
    if inst.N_power_ranks is not None:
        given = list(inst.N_power_ranks)
        vb.add("declared N power ranks match the weight filtration",
               given[:len(powers)] == powers[:len(given)], f"{given} vs {powers}")
    rank_N = powers[1] if len(powers) > 1 else 0
    vb.add("rank N from the limit", r["N"] == rank_N, f"declared {r['N']}, filtration gives {rank_N}")
    bounds = {"alpha": (inst.homology_in_dim, inst.central_dim),
              "i_star": (inst.central_dim, inst.limit_dim),
              "N": (inst.limit_dim, inst.limit_dim),
              "beta": (inst.limit_dim, inst.homology_out_dim)}
    for key, (a, b) in bounds.items():
        cap = min(x for x in (a, b) if x is not None)
        vb.add(f"rank {key} within bounds", 0 <= r[key] <= cap, f"{r[key]} <= {cap}")
    vb.add("exact at H^m(X_0) [alpha stage]", r["alpha"] + r["i_star"] == inst.central_dim,
           f"{r['alpha']} + {r['i_star']} vs {inst.central_dim}")
    vb.add("exact at H^m_lim [i* stage]", r["i_star"] == inst.limit_dim - r["N"],
           f"{r['i_star']} vs {inst.limit_dim} - {r['N']}")
    vb.add("exact at H^m_lim [N stage]", r["N"] + r["beta"] == inst.limit_dim,
           f"{r['N']} + {r['beta']} vs {inst.limit_dim}")
    # weights of im(alpha) are >= m, so i* is injective on W_{m-1} and preserves weights
    ker_graded = {k: L.get(k, 0) - L.get(k - 2, 0) for k in range(m + 1)}
    low = all(inst.central.get(k, 0) == ker_graded.get(k, 0) for k in range(m))
    vb.add("Gr_k H^m(X_0) = Gr_k ker N for k < m", low,
           f"central {dict(sorted(inst.central.items()))}, ker N {ker_graded}")
    vb.add("central weights at most m", all(w <= m for w, v in inst.central.items() if v))
    bic = []
    for k in range(1, m + 1):
        nk_zero = (powers[k] if k < len(powers) else 0) == 0
        w_zero = inst.central_W(m - k) == 0
        bic.append((k, nk_zero, w_zero))
    vb.add("N^k = 0 iff W_{m-k} H^m(X_0) = 0", all(a == b for _, a, b in bic),
           "; ".join(f"k={k}: N^k=0 {a}, W=0 {b}" for k, a, b in bic if a != b) or "all k")
    index = next((k for k, a, _ in bic if a), m + 1) - 1
    if inst.central_W(m - 2) == 0:
        forced = inst.central.get(m - 1, 0)
        vb.add("index <= 1 forces rank N = dim W_{m-1}", r["N"] == forced,
               f"forced {forced}, declared {r['N']}")
        vb.data["forced_rank_N"] = forced
    vb.data.update({"weight_shifts": CS_WEIGHT_SHIFTS, "N_power_ranks": powers,
                    "nilpotency_index": index})
    return vb.build()


# ---------------------------------------------------------------------------
# quadric fibers

@dataclass(frozen=True)
class StalkRow:
    q: int
    label: str          # "Z/2", "Z" or "0"

    def to_json(self) -> dict:
        return {"q": self.q, "label": self.label}


def quadric_table(fiber_dim: int, s: int) -> list[StalkRow]:
    """Primitive quotient of the stalk cohomology at a point where the quadric has ``s``
    extra singular directions, for an odd fiber dimension ``2n-1``."""
    if fiber_dim < 1 or fiber_dim % 2 == 0:
        raise DegenerationError("fiber dimension must be odd and positive")
    if s not in (0, 1):
        raise DegenerationError("s must be 0 or 1")
    mid = fiber_dim + s
    rows = []
    for q in range(2 * fiber_dim + 1):
        if q % 2:
            label = "0"
        elif q > mid:
            label = "Z/2"
        elif q == mid:
            label = "Z"
        else:
            label = "0"
        rows.append(StalkRow(q, label))
    return rows


def quadric_betti(fiber_dim: int, middle_rank_two: bool = True) -> list[int]:
    b = [1 if q % 2 == 0 else 0 for q in range(2 * fiber_dim + 1)]
    if fiber_dim % 2 == 0 and middle_rank_two:
        b[fiber_dim] = 2
    return b


def quadric_bundle_betti(base_betti, fiber_dim: int, middle_rank_two: bool = True) -> list[int]:
    """Betti numbers of a smooth quadric bundle (Leray-Hirsch)."""
    fb = quadric_betti(fiber_dim, middle_rank_two)
    out = [0] * (len(base_betti) + len(fb) - 1)
    for i, a in enumerate(base_betti):
        for j, b in enumerate(fb):
            out[i + j] += a * b
    return out


def projective_bundle_betti(base_betti, rank: int) -> list[int]:
    """Betti numbers of a ``P^{rank}``-bundle."""
    out = [0] * (len(base_betti) + 2 * rank)
    for i, a in enumerate(base_betti):
        for j in range(rank + 1):
            out[i + 2 * j] += a
    return out


@dataclass(frozen=True)
class InvolutionPairing:
    n: int
    sign: int
    doubled: Matrix       # form on H(V) ⊕ H(V)
    quotient: Matrix      # (z1, z2) -> z1 - z2
    descended: Matrix     # Gram matrix on the quotient
    verdict: Verdict


def involution_pairing_model(form: BilinearForm | Matrix, n: int) -> InvolutionPairing:
    """Double cover with swapping involution ``ι``; the pairing is
    ``(-1)^n <a, b - ι b>`` on ``H(V) ⊕ H(V)``, which descends along ``z1 - z2``."""
    G = form.gram if isinstance(form, BilinearForm) else form
    k = G.nrows
    try:
        if G.rank() != k:
            raise DegenerationError("the form on H(V) is degenerate")
    except LinalgError as exc:
        raise DegenerationError(str(exc)) from exc
    sign = -1 if n % 2 else 1
    Z = Matrix.zeros(k, k)
    I = Matrix.identity(k)
    D = Matrix.from_blocks([[G, Z], [Z, G]])
    swap = Matrix.from_blocks([[Z, I], [I, Z]])
    Psi = (D @ (Matrix.identity(2 * k) - swap)).scale(sign)
    Q = Matrix.from_blocks([[I, -I]])
    lift = Matrix.from_blocks([[I], [Z]])
    desc = lift.T() @ Psi @ lift
    vb = VerdictBuilder(f"involution pairing, n = {n}")
    vb.add("kills the invariant part", (Psi @ (Matrix.identity(2 * k) + swap)).is_zero()
           and ((Matrix.identity(2 * k) + swap).T() @ Psi).is_zero())
    vb.add("factors through z1 - z2", Psi == (Q.T() @ G @ Q).scale(sign))
    vb.add("descends to (-1)^n times the form", desc == G.scale(sign), f"sign {sign:+d}")
    return InvolutionPairing(n, sign, Psi, Q, desc, vb.build())


# ---------------------------------------------------------------------------
# assembled central fibers

@dataclass(frozen=True)
class AssembledFiber:
    fiber: SncCentralFiber
    page: E2Page
    graded: dict
    cs: ClemensSchmidInstance
    axioms: dict
    verdict: Verdict


HYPERPLANE = {"P2xP2": "H1+H2", "Gr26": "s1"}


def assemble_central_fiber(name: str = "Segre") -> AssembledFiber:
    """Weight-graded ``H^m`` of the central fiber of a secant-cubic degeneration.

    Only linear bookkeeping is done here; the geometric facts about ``E`` and ``X0bar``
    enter as axioms with provenance.
    """
    from .severi import get_datum, limit_mhs_summary

    datum = get_datum(name)
    d, m = datum.d, datum.m
    if datum.ring_name not in HYPERPLANE:
        raise DegenerationError(f"{name}: no multiplicative ring data to compute coker rho")
    ring = load_ring(datum.ring_name)
    summary = limit_mhs_summary(datum)
    b_V = summary.V_hodge.total
    qn = datum.quadric_n
    axioms = {
        f"H^{2 * qn + d - 1}(E) = H^{d - 1}(V)":
            (b_V, "E is a quadric bundle over V; only the primitive middle class contributes"),
        f"H^{2 * qn + d - 3}(E) = 0": (0, "vanishing in degree m - 2 for E"),
        "H^odd(X0bar) = 0": (0, "X0bar is a projective bundle over a space with even cohomology"),
        "E0 = quadric bundle over S": (d // 2, "smooth even-dimensional quadric fibers of dim d/2"),
    }
    S_betti = [ring.dim(q) for q in range(2 * d + 1)]
    e0_betti = quadric_bundle_betti(S_betti, d // 2)
    divisor = ring.element(HYPERPLANE[datum.ring_name]).scale(3)
    coker = coker_rho_rank(ring, divisor, FiberMiddleData(d))
    rho_rank = e0_betti[m - 1] - coker.rank
    top = 2 * m

    def even_like_e0():
        return [e0_betti[q] if q < len(e0_betti) and q % 2 == 0 else 0 for q in range(top + 1)]

    x0_betti = even_like_e0()
    e_betti = even_like_e0()
    e_betti[m] = b_V
    fiber = SncCentralFiber(
        (("X0bar", tuple(x0_betti)), ("E", tuple(e_betti))), ("E0", tuple(e0_betti)),
        {m - 1: rho_rank, m: 0}, f"{name} central fiber",
        {k: v[1] for k, v in axioms.items()})
    page = e1_to_e2(fiber)
    graded = page.graded(m)
    low = graded.get(m - 1, 0)
    limit = {m - 1: low, m: graded.get(m, 0), m + 1: low}
    rank_N = low
    lim_dim = sum(limit.values())
    central_dim = sum(graded.values())
    cs = ClemensSchmidInstance(
        n=m, m=m, central=graded, limit=limit,
        ranks={"alpha": central_dim - (lim_dim - rank_N), "i_star": lim_dim - rank_N,
               "N": rank_N, "beta": lim_dim - rank_N},
        name=name, provenance={"central": "weight spectral sequence E2",
                               "limit": "graded dims symmetric about m with the central W_{m-1}"})
    vb = VerdictBuilder(f"assembled {name} central fiber")
    vb.add("coker rho has rank 1", coker.rank == 1, f"rank {coker.rank}")
    vb.add("Gr_{m-1} = 1", low == 1, str(graded))
    vb.add("Gr_m = b_{d-1}(V)", graded.get(m, 0) == b_V, f"{graded.get(m, 0)} vs {b_V}")
    vb.add("Gr_k = 0 for k < m-1", all(not v for k, v in graded.items() if k < m - 1))
    vb.add("dim H_lim = dim of cubic middle cohomology", lim_dim == summary.cubic.total,
           f"{lim_dim} vs {summary.cubic.total}")
    vb.extend(check_e2(fiber, page), "E2: ")
    cs_verdict = clemens_schmid_check(cs)
    vb.extend(cs_verdict, "CS: ")
    vb.data.update({"graded": graded, "b_E0": e0_betti, "rank_rho": rho_rank,
                    "forced_rank_N": cs_verdict.data.get("forced_rank_N"),
                    "cs_ranks": dict(cs.ranks), "limit_dim": lim_dim})
    return AssembledFiber(fiber, page, graded, cs, axioms, vb.build())


def assemble_segre_central_fiber() -> AssembledFiber:
    return assemble_central_fiber("Segre")


__all__ = [
    "DegenerationError", "SncCentralFiber", "E2Page", "e1_to_e2", "check_e2",
    "fiber_from_json", "fiber_to_json", "ClemensSchmidInstance", "clemens_schmid_check",
    "CS_WEIGHT_SHIFTS", "StalkRow", "quadric_table", "quadric_betti", "quadric_bundle_betti",
    "projective_bundle_betti", "InvolutionPairing", "involution_pairing_model",
    "AssembledFiber", "assemble_central_fiber", "assemble_segre_central_fiber",
]
