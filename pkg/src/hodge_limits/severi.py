"""The four Severi varieties and the arithmetic of the limits of their secant cubics.

Every number stored in ``data/severi.json`` is recomputed at load time from binomials,
the Weyl dimension formula and the Chern-class pipeline; a mismatch is a load error.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb
from pathlib import Path

from .cohomology_rings import chern_hypersurface, load_ring
from .mixed_hodge import HodgeNumbers
from .verdict import Verdict, VerdictBuilder
from .weyl import group_dimension, rep_dimension

CATALOGUE_ENV = "HODGE_LIMITS_CATALOGUE"
CATALOGUE_VERSION = 1
SEVERI_NAMES = ("Veronese", "Segre", "Gr26", "OP2")


class CatalogueError(ValueError):
    pass


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class SeveriDatum:
    name: str
    d: int
    m: int
    ambient_proj_dim: int
    dim_G: int
    dim_H: int
    stabilizer_group: str
    rep_dim_sym3: int
    sections_dim: int
    sections_weight: tuple          # (group, weight string)
    ring_name: str
    betti: tuple                    # Betti numbers of S in degrees 0, 1, ..., 2d
    V_hodge_expected: tuple | None  # (h^{d-1,0}, ..., h^{d/2,d/2-1}) of V
    chi_V_expected: int | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def twist(self) -> int:
        """Tate twist relating weight ``m`` and the geometric weight ``d - 1``."""
        return (self.m - self.d + 1) // 2

    @property
    def quadric_n(self) -> int:
        """``n`` with ``2n - 1 = d/2 + 1``, the odd quadric fiber dimension of E."""
        return self.d // 4 + 1

    @property
    def polarization_sign(self) -> int:
        return -1 if self.quadric_n % 2 else 1


def cubic_hodge_numbers(m: int) -> HodgeNumbers:
    """``h^{p, m-p} = C(m+2, 2m+1-3p)`` for a smooth cubic of odd dimension ``m``."""
    if m % 2 == 0:
        raise ValueError(f"m = {m} is even; the formula is used for odd m only")
    if m < 3:
        raise ValueError("m must be at least 3")
    return HodgeNumbers(m, {(p, m - p): binom(m + 2, 2 * m + 1 - 3 * p) for p in range(m + 1)
                            if binom(m + 2, 2 * m + 1 - 3 * p)})


@dataclass(frozen=True)
class LimitMhsSummary:
    name: str
    m: int
    d: int
    weight_filtration_dims: tuple       # dims of W_{m-1}, W_m, W_{m+1}
    graded: dict                        # weight -> HodgeNumbers
    tate_labels: dict                   # weight -> "Q(j)"
    twist: int
    V_hodge: HodgeNumbers               # geometric, weight d - 1
    V_hodge_vector: tuple               # h^{d-1,0}, ..., h^{d/2, d/2-1}
    polarization_sign: int
    cubic: HodgeNumbers

    def to_json(self) -> dict:
        return {
            "name": self.name, "m": self.m, "d": self.d,
            "weight_filtration_dims": list(self.weight_filtration_dims),
            "graded_hodge_numbers": {str(k): v.to_json() for k, v in sorted(self.graded.items())},
            "tate_labels": {str(k): v for k, v in sorted(self.tate_labels.items())},
            "twist": self.twist,
            "V_hodge": self.V_hodge.to_json(),
            "V_hodge_vector": list(self.V_hodge_vector),
            "polarization_sign": self.polarization_sign,
        }


def _half_vector(h: HodgeNumbers) -> tuple:
    k = h.weight
    return tuple(h[(p, k - p)] for p in range(k, (k - 1) // 2, -1))


def limit_mhs_summary(s: SeveriDatum) -> LimitMhsSummary:
    if s.d <= 2:
        raise ValueError(f"{s.name}: dim S = {s.d}; the index-one theorem needs dim S > 2")
    m = s.m
    cubic = cubic_hodge_numbers(m)
    lo, hi = (m - 1) // 2, (m + 1) // 2
    middle = dict(cubic.h)
    for p in (lo, hi):
        if middle.get((p, m - p), 0) < 1:
            raise ValueError(f"h^{{{p},{m - p}}} = 0; no room for the Tate pieces")
        middle[(p, m - p)] -= 1
    middle = {k: v for k, v in middle.items() if v}
    graded = {m - 1: HodgeNumbers(m - 1, {(lo, lo): 1}),
              m: HodgeNumbers(m, middle),
              m + 1: HodgeNumbers(m + 1, {(hi, hi): 1})}
    t = s.twist
    V = HodgeNumbers(s.d - 1, {(p - t, q - t): v for (p, q), v in middle.items()})
    if any(p < 0 or q < 0 for p, q in V.h):
        raise ValueError("twisted Hodge numbers fall outside the geometric range")
    total = sum(graded[k].total for k in graded)
    if total != cubic.total:
        raise AssertionError("dimension conservation failed")
    return LimitMhsSummary(
        s.name, m, s.d, (1, 1 + graded[m].total, total), graded,
        {m - 1: f"Q({(1 - m) // 2})", m + 1: f"Q({-(1 + m) // 2})"},
        t, V, _half_vector(V), s.polarization_sign, cubic)


def segre_cy_crosscheck(datum: SeveriDatum | None = None) -> Verdict:
    """Euler characteristic of ``V`` from Chern classes versus the limit arithmetic."""
    datum = datum or get_datum("Segre")
    ring = load_ring("P2xP2")
    V = ring.element("3*H1+3*H2")
    res = chern_hypersurface(ring, None, V)
    chi = res.euler
    h11, h30 = 2, 1
    # chi = 2 + 2 h11 - 2 (h30 + h21)
    h21 = (2 + 2 * h11 - chi) // 2 - h30
    summary = limit_mhs_summary(datum)
    vb = VerdictBuilder("Segre Calabi-Yau cross-check")
    vb.add("chi(V) = -162", chi == -162, f"chi = {chi}")
    vb.add("h^{2,1} = 83", h21 == 83, f"h21 = {h21}")
    vb.add("agrees with the limit summary", summary.V_hodge_vector == (h30, h21),
           f"summary {summary.V_hodge_vector}")
    vb.add("83 = C(9,3) - 1", binom(9, 3) - 1 == h21)
    vb.data.update({"chi": chi, "h21": h21, "c2": str(res.classes[2]), "c3": str(res.classes[3])})
    return vb.build()


def luna_slice_check(s: SeveriDatum) -> Verdict:
    """``(dim Sym^3 W - 1) - (dim G - dim H) = dim Γ(O_S(3))`` with every term recomputed."""
    vb = VerdictBuilder(f"Luna slice dimension identity for {s.name}")
    sym3 = binom(s.m + 4, 3)
    dim_G = group_dimension(f"A{s.m + 1}")
    dim_H = group_dimension(s.stabilizer_group)
    sections = rep_dimension(*s.sections_weight)
    vb.add("dim Sym^3 W", sym3 == s.rep_dim_sym3, f"{sym3} vs stored {s.rep_dim_sym3}")
    vb.add("dim G", dim_G == s.dim_G == (s.m + 2) ** 2 - 1, f"{dim_G} vs stored {s.dim_G}")
    vb.add("dim H", dim_H == s.dim_H, f"{dim_H} vs stored {s.dim_H}")
    vb.add("dim sections", sections == s.sections_dim, f"{sections} vs stored {s.sections_dim}")
    vb.add("identity", (sym3 - 1) - (dim_G - dim_H) == sections,
           f"({sym3} - 1) - ({dim_G} - {dim_H}) = {(sym3 - 1) - (dim_G - dim_H)} vs {sections}")
    vb.data.update({"sym3": sym3, "dim_G": dim_G, "dim_H": dim_H,
                    "orbit_codim_term": dim_G - dim_H, "sections": sections})
    return vb.build()


# ---------------------------------------------------------------------------
# catalogue

def default_catalogue_path() -> Path:
    env = os.environ.get(CATALOGUE_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("hodge_limits") / "data" / "severi.json"))


def _datum_from_json(rec: dict) -> SeveriDatum:
    try:
        return SeveriDatum(
            name=rec["name"], d=int(rec["d"]), m=int(rec["m"]),
            ambient_proj_dim=int(rec["ambient_proj_dim"]), dim_G=int(rec["dim_G"]),
            dim_H=int(rec["dim_H"]), stabilizer_group=rec["stabilizer_group"],
            rep_dim_sym3=int(rec["rep_dim_sym3"]), sections_dim=int(rec["sections_dim"]),
            sections_weight=tuple(rec["sections_weight"]), ring_name=rec["ring_name"],
            betti=tuple(int(b) for b in rec["betti"]),
            V_hodge_expected=tuple(rec["V_hodge_expected"]) if rec.get("V_hodge_expected")
            else None,
            chi_V_expected=rec.get("chi_V_expected"),
            notes=tuple(rec.get("notes", ())),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogueError(f"malformed catalogue record: {exc}") from exc


def validate_datum(s: SeveriDatum) -> Verdict:
    """Recompute every stored number of one record from first principles."""
    vb = VerdictBuilder(f"catalogue record {s.name}")
    vb.add("d = 2(m-1)/3", 3 * s.d == 2 * (s.m - 1), f"d = {s.d}, m = {s.m}")
    vb.add("ambient P^{m+1}", s.ambient_proj_dim == s.m + 1)
    ring = load_ring(s.ring_name)
    betti_ring = []
    for deg in range(2 * s.d + 1):
        betti_ring.append(ring.dim(deg))
    vb.add("Betti numbers match the ring", tuple(betti_ring) == s.betti,
           f"ring {betti_ring} vs stored {list(s.betti)}")
    vb.extend(luna_slice_check(s), "luna: ")
    if s.V_hodge_expected is not None:
        summ = limit_mhs_summary(s)
        vb.add("Hodge numbers of V", summ.V_hodge_vector == s.V_hodge_expected,
               f"computed {list(summ.V_hodge_vector)} vs stored {list(s.V_hodge_expected)}")
    if s.chi_V_expected is not None:
        if s.name != "Segre":
            vb.add("chi(V)", False, "Euler characteristic only recomputable for Segre")
        else:
            cc = segre_cy_crosscheck(s)
            vb.add("chi(V)", cc.data["chi"] == s.chi_V_expected,
                   f"computed {cc.data['chi']} vs stored {s.chi_V_expected}")
    return vb.build()


@lru_cache(maxsize=8)
def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CatalogueError(f"cannot read catalogue {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogueError(f"catalogue {path} is not valid JSON: {exc}") from exc
    from .schemas import validate_instance
    validate_instance("severi_catalogue", data)
    if data.get("version") != CATALOGUE_VERSION:
        raise CatalogueError(f"unsupported catalogue version {data.get('version')!r}")
    out = {}
    for rec in data["entries"]:
        s = _datum_from_json(rec)
        v = validate_datum(s)
        if not v.passed:
            raise CatalogueError(f"catalogue record {s.name} failed validation: "
                                 f"{v.first_failure().name}: {v.first_failure().detail}")
        out[s.name] = s
    return out


def load_catalogue(path: str | Path | None = None) -> dict:
    return dict(_load(str(path or default_catalogue_path())))


def get_datum(name: str, path: str | Path | None = None) -> SeveriDatum:
    aliases = {"P2": "Veronese", "P2xP2": "Segre", "Gr(2,6)": "Gr26", "Cayley": "OP2",
               "E6": "OP2"}
    cat = load_catalogue(path)
    key = aliases.get(name, name)
    if key not in cat:
        raise CatalogueError(f"unknown Severi variety {name!r}; known: {', '.join(cat)}")
    return cat[key]


def verify_all(path: str | Path | None = None, workers: int = 4) -> dict:
    """Re-verify every catalogue entry (concurrently) plus the Segre cross-check."""
    from concurrent.futures import ThreadPoolExecutor

    cat = load_catalogue(path)
    names = list(cat)
    with ThreadPoolExecutor(max_workers=workers) as ex:
        verdicts = list(ex.map(lambda n: validate_datum(cat[n]), names))
    out = {n: v for n, v in zip(names, verdicts)}
    out["Segre cross-check"] = segre_cy_crosscheck(cat["Segre"])
    return out


def catalogue_records() -> list[dict]:
    """The records written to ``data/severi.json`` by ``scripts/build_catalogue.py``."""
    return [
        {"name": "Veronese", "d": 2, "m": 4, "ambient_proj_dim": 5, "dim_G": 35, "dim_H": 8,
         "stabilizer_group": "A2", "rep_dim_sym3": 56, "sections_dim": 28,
         "sections_weight": ["A2", "6w1"], "ring_name": "P2", "betti": [1, 0, 1, 0, 1],
         "V_hodge_expected": None,
         "notes": ["excluded from the index-one theorem (dim S = 2)"]},
        {"name": "Segre", "d": 4, "m": 7, "ambient_proj_dim": 8, "dim_G": 80, "dim_H": 16,
         "stabilizer_group": "A2xA2", "rep_dim_sym3": 165, "sections_dim": 100,
         "sections_weight": ["A2xA2", "3w1+3w3"], "ring_name": "P2xP2",
         "betti": [1, 0, 2, 0, 3, 0, 2, 0, 1], "V_hodge_expected": [1, 83],
         "chi_V_expected": -162},
        {"name": "Gr26", "d": 8, "m": 13, "ambient_proj_dim": 14, "dim_G": 224, "dim_H": 35,
         "stabilizer_group": "A5", "rep_dim_sym3": 680, "sections_dim": 490,
         "sections_weight": ["A5", "3w2"], "ring_name": "Gr26",
         "betti": [1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 2, 0, 2, 0, 1, 0, 1],
         "V_hodge_expected": [0, 1, 455, 5004]},
        {"name": "OP2", "d": 16, "m": 25, "ambient_proj_dim": 26, "dim_G": 728, "dim_H": 78,
         "stabilizer_group": "E6", "rep_dim_sym3": 3654, "sections_dim": 3003,
         "sections_weight": ["E6", "3w1"], "ring_name": "OP2",
         "betti": [x for b in [1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1] for x in (b, 0)][:-1],
         "V_hodge_expected": [0, 0, 0, 1, 2925, 296010, 4686825, 17383859],
         "notes": ["ring is a Betti shell; Schubert calculus cited, not stored"]},
    ]


def build_catalogue_json() -> dict:
    return {"version": CATALOGUE_VERSION, "entries": catalogue_records()}


__all__ = [
    "CATALOGUE_ENV", "SEVERI_NAMES", "CatalogueError", "SeveriDatum", "LimitMhsSummary",
    "binom", "cubic_hodge_numbers", "limit_mhs_summary", "segre_cy_crosscheck",
    "luna_slice_check", "load_catalogue", "get_datum", "verify_all", "validate_datum",
    "default_catalogue_path", "build_catalogue_json",
]
