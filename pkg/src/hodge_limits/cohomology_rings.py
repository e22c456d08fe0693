"""Graded cohomology rings of the Severi varieties with integer structure constants.

Degrees are real cohomological degrees (a hyperplane class has degree 2).  The ring
data lives in ``data/rings.json``; it is produced once by :func:`generate_catalogue`
(``scripts/build_catalogue.py``) and audited every time it is loaded.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path

from .linalg import Matrix, Subspace

RING_NAMES = ("P2", "P2xP2", "Gr26", "OP2")
RINGS_FORMAT_VERSION = 1


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class GradedRing:
    name: str
    top_degree: int
    basis: dict            # degree -> tuple of symbols
    products: dict         # (a, b) -> {symbol: int}; both orders stored
    point: str | None      # top-degree class integrating to 1
    tangent_total: dict | None = None
    shell: bool = False
    annotations: tuple = ()
    degree_of: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.degree_of:
            object.__setattr__(self, "degree_of",
                               {s: d for d, syms in self.basis.items() for s in syms})

    # -- basic data -------------------------------------------------------
    @property
    def symbols(self) -> list[str]:
        return [s for d in sorted(self.basis) for s in self.basis[d]]

    def betti(self) -> list[int]:
        """Betti numbers in even degrees ``0, 2, ..., top``."""
        return [len(self.basis.get(2 * i, ())) for i in range(self.top_degree // 2 + 1)]

    def dim(self, degree: int) -> int:
        return len(self.basis.get(degree, ()))

    @property
    def has_products(self) -> bool:
        return not self.shell

    def element(self, coeffs: dict | str) -> "RingElement":
        if isinstance(coeffs, str):
            return parse_element(self, coeffs)
        for s in coeffs:
            if s not in self.degree_of:
                raise RingError(f"{s!r} is not a basis symbol of {self.name}")
        return RingElement(self, {s: int(c) for s, c in coeffs.items() if c})

    def one(self) -> "RingElement":
        return self.element({self.basis[0][0]: 1})

    def gen(self, sym: str) -> "RingElement":
        return self.element({sym: 1})

    def basis_product(self, a: str, b: str) -> dict:
        if self.shell:
            raise RingError(f"{self.name} is a Betti shell without multiplication data")
        d = self.degree_of[a] + self.degree_of[b]
        if d > self.top_degree:
            return {}
        try:
            return self.products[(a, b)]
        except KeyError:
            raise RingError(f"missing product {a}*{b} in {self.name}") from None

    def integrate(self, x: "RingElement") -> int:
        if self.point is None:
            raise RingError(f"{self.name} has no point class")
        return x.coeffs.get(self.point, 0)

    # -- audit ------------------------------------------------------------
    def audit(self) -> dict:
        """Commutativity, associativity and unimodular Poincaré duality."""
        if self.shell:
            return {"commutative": None, "associative": None, "unimodular": None}
        syms = self.symbols
        comm = all(self.basis_product(a, b) == self.basis_product(b, a)
                   for a in syms for b in syms)
        assoc = True
        for a, b, c in product(syms, repeat=3):
            if self.degree_of[a] + self.degree_of[b] + self.degree_of[c] > self.top_degree:
                continue
            x, y, z = self.gen(a), self.gen(b), self.gen(c)
            if (x * y) * z != x * (y * z):
                assoc = False
                break
        unimod = True
        for d in sorted(self.basis):
            rows = self.basis[d]
            cols = self.basis.get(self.top_degree - d, ())
            if len(rows) != len(cols):
                unimod = False
                break
            G = Matrix([[self.integrate(self.gen(a) * self.gen(b)) for b in cols] for a in rows])
            if _int_det(G) not in (1, -1):
                unimod = False
                break
        return {"commutative": comm, "associative": assoc, "unimodular": unimod}


def _int_det(M: Matrix) -> int:
    n = M.nrows
    a = [[M[i, j] for j in range(n)] for i in range(n)]
    det = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = a[c][c] * det
        inv = a[c][c].inverse()
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det.re)


@dataclass(frozen=True)
class RingElement:
    ring: GradedRing
    coeffs: dict

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, 0) + c
        return RingElement(self.ring, {s: c for s, c in out.items() if c})

    def __neg__(self):
        return RingElement(self.ring, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "RingElement":
        return RingElement(self.ring, {s: k * c for s, c in self.coeffs.items() if k * c})

    def __rmul__(self, k: int):
        return self.scale(k)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same(other)
        out: dict = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                for s, c in self.ring.basis_product(a, b).items():
                    out[s] = out.get(s, 0) + ca * cb * c
        return RingElement(self.ring, {s: c for s, c in out.items() if c})

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring.name == other.ring.name and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.name, tuple(sorted(self.coeffs.items()))))

    def _same(self, other):
        if not isinstance(other, RingElement) or other.ring.name != self.ring.name:
            raise RingError("elements of different rings")

    def part(self, degree: int) -> "RingElement":
        return RingElement(self.ring, {s: c for s, c in self.coeffs.items()
                                       if self.ring.degree_of[s] == degree})

    def degrees(self) -> list[int]:
        return sorted({self.ring.degree_of[s] for s in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self, degree: int) -> list[int]:
        return [self.coeffs.get(s, 0) for s in self.ring.basis.get(degree, ())]

    def __str__(self):
        return format_element(self)

    def to_json(self) -> str:
        return format_element(self)


def format_element(x: RingElement) -> str:
    if not x.coeffs:
        return "0"
    parts = []
    for s in x.ring.symbols:
        c = x.coeffs.get(s, 0)
        if not c:
            continue
        if s == "1":
            term = str(abs(c))
        else:
            term = s if abs(c) == 1 else f"{abs(c)}*{s}"
        parts.append(("-" if c < 0 else "+") + term)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def parse_element(ring: GradedRing, text: str) -> RingElement:
    """Parse strings like ``"3*H1+3*H2"``, ``"s3 - 2*s21"`` or ``"1+H"``."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return RingElement(ring, {})
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "*":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out: dict = {}
    for t in terms:
        sign = 1
        if t[0] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
        if "*" in t and t.split("*", 1)[0].isdigit():
            c, sym = t.split("*", 1)
            coef = int(c)
        elif t.isdigit():
            coef, sym = int(t), "1"
        else:
            coef, sym = 1, t
        if sym not in ring.degree_of:
            raise RingError(f"unknown symbol {sym!r} in {ring.name}")
        out[sym] = out.get(sym, 0) + sign * coef
    return RingElement(ring, {k: v for k, v in out.items() if v})


# ---------------------------------------------------------------------------
# generation of the frozen structure constants

def _monomial_ring(name: str, nvars: int, max_exp: int, sym) -> dict:
    exps = [e for e in product(range(max_exp + 1), repeat=nvars)]
    basis: dict = {}
    for e in sorted(exps, key=lambda e: (sum(e), tuple(-x for x in e))):
        basis.setdefault(2 * sum(e), []).append(sym(e))
    prods = {}
    for a in exps:
        for b in exps:
            c = tuple(x + y for x, y in zip(a, b))
            prods[f"{sym(a)}*{sym(b)}"] = {sym(c): 1} if max(c) <= max_exp else {}
    top = sym(tuple([max_exp] * nvars))
    return {"top_degree": 2 * max_exp * nvars, "basis": {str(k): v for k, v in basis.items()},
            "products": prods, "point": top}


def _p2_sym(e):
    return {0: "1", 1: "H", 2: "H^2"}[e[0]]


def _p2p2_sym(e):
    if e == (0, 0):
        return "1"
    out = ""
    for i, x in enumerate(e, 1):
        if x == 1:
            out += f"H{i}"
        elif x == 2:
            out += f"H{i}^2"
    return out


GR26_ROWS, GR26_COLS = 2, 4  # partitions in a 2 x 4 box


def _gr_sym(lam) -> str:
    a, b = lam
    if a == 0:
        return "1"
    return f"s{a}" if b == 0 else f"s{a}{b}"


def _gr_parts():
    return [(a, b) for a in range(GR26_COLS + 1) for b in range(a + 1)]


def _pieri(lam, k) -> dict:
    """``sigma_lam * sigma_k`` in Gr(2,6): add ``k`` boxes, at most one per column."""
    a, b = lam
    out = {}
    for na in range(a, GR26_COLS + 1):
        nb = a + b + k - na
        if b <= nb <= a and nb <= na:
            out[(na, nb)] = 1
    return out


def _lin_mul_special(vec: dict, k: int) -> dict:
    out: dict = {}
    for lam, c in vec.items():
        if k == 0:
            out[lam] = out.get(lam, 0) + c
            continue
        if k < 0 or k > GR26_COLS:
            continue
        for nu, d in _pieri(lam, k).items():
            out[nu] = out.get(nu, 0) + c * d
    return {k_: v for k_, v in out.items() if v}


def _gr_product(lam, mu) -> dict:
    """Two-row Giambelli: ``sigma_(a,b) = sigma_a sigma_b - sigma_(a+1) sigma_(b-1)``."""
    a, b = mu
    base = {lam: 1}
    first = _lin_mul_special(_lin_mul_special(base, a), b)
    if b == 0:
        return first
    second = _lin_mul_special(_lin_mul_special(base, a + 1), b - 1)
    out = dict(first)
    for k, v in second.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def _gr26_ring() -> dict:
    parts = _gr_parts()
    basis: dict = {}
    for lam in sorted(parts, key=lambda l: (sum(l), -l[0])):
        basis.setdefault(2 * sum(lam), []).append(_gr_sym(lam))
    prods = {}
    for lam in parts:
        for mu in parts:
            prods[f"{_gr_sym(lam)}*{_gr_sym(mu)}"] = {
                _gr_sym(nu): c for nu, c in sorted(_gr_product(lam, mu).items())}
    return {"top_degree": 16, "basis": {str(k): v for k, v in basis.items()},
            "products": prods, "point": "s44"}


OP2_BETTI = [1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1]


def generate_catalogue() -> dict:
    p2 = _monomial_ring("P2", 1, 2, _p2_sym)
    p2["tangent_total"] = "1+3*H+3*H^2"
    p2p2 = _monomial_ring("P2xP2", 2, 2, _p2p2_sym)
    # (1 + H1)^3 (1 + H2)^3 truncated
    p2p2["tangent_total"] = ("1+3*H1+3*H2+3*H1^2+9*H1H2+3*H2^2+9*H1^2H2+9*H1H2^2"
                             "+9*H1^2H2^2")
    gr = _gr26_ring()
    op2 = {
        "top_degree": 32,
        "basis": {str(2 * i): [f"x{2 * i}_{j}" for j in range(b)] for i, b in enumerate(OP2_BETTI)},
        "shell": True,
        "point": None,
        "annotations": ["multiplication pattern in middle degrees is the same as for G(1,5)"
                        " (cited, not verified; no structure constants stored)"],
    }
    return {"version": RINGS_FORMAT_VERSION,
            "rings": {"P2": p2, "P2xP2": p2p2, "Gr26": gr, "OP2": op2}}


# ---------------------------------------------------------------------------
# loading

def _ring_from_json(name: str, data: dict) -> GradedRing:
    basis = {int(k): tuple(v) for k, v in data["basis"].items()}
    prods = {}
    for key, val in data.get("products", {}).items():
        a, b = key.split("*", 1)
        prods[(a, b)] = {s: int(c) for s, c in val.items()}
    ring = GradedRing(name, int(data["top_degree"]), basis, prods, data.get("point"),
                      None, bool(data.get("shell", False)), tuple(data.get("annotations", ())))
    if data.get("tangent_total"):
        object.__setattr__(ring, "tangent_total", parse_element(ring, data["tangent_total"]))
    return ring


def default_rings_path() -> Path:
    return Path(str(resources.files("hodge_limits") / "data" / "rings.json"))


@lru_cache(maxsize=None)
def _load_all(path: str) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if data.get("version") != RINGS_FORMAT_VERSION:
        raise RingError(f"unsupported rings file version {data.get('version')!r}")
    rings = {}
    for name, rd in data["rings"].items():
        ring = _ring_from_json(name, rd)
        audit = ring.audit()
        if not ring.shell and not all(audit.values()):
            raise RingError(f"ring {name} failed its load-time audit: {audit}")
        rings[name] = ring
    return rings


def load_ring(name: str, path: str | Path | None = None) -> GradedRing:
    aliases = {"OP2-shell": "OP2", "G26": "Gr26", "Gr(2,6)": "Gr26"}
    key = aliases.get(name, name)
    if key not in RING_NAMES:
        raise RingError(f"unknown ring {name!r}; expected one of {', '.join(RING_NAMES)}")
    rings = _load_all(str(path or default_rings_path()))
    return rings[key]


# ---------------------------------------------------------------------------
# Chern classes and the Gysin cokernel

@dataclass(frozen=True)
class ChernResult:
    total: RingElement          # c(T_V) as a class on S, truncated to degree 2(dim S - 1)
    classes: dict               # i -> c_i(V)
    euler: int | None           # integral of c_top(T_V) * [V]
    degenerate: bool


def inverse_one_plus(x: RingElement) -> RingElement:
    """``(1 + x)^{-1}`` for ``x`` of positive degree (finite geometric series)."""
    ring = x.ring
    if any(ring.degree_of[s] == 0 for s in x.coeffs):
        raise RingError("divisor class must have positive degree")
    out = ring.one()
    term = ring.one()
    for _ in range(ring.top_degree // 2 + 1):
        term = term * (-x)
        if term.is_zero():
            break
        out = out + term
    return out


def chern_hypersurface(ring: GradedRing, tangent_total: RingElement | None,
                       divisor: RingElement) -> ChernResult:
    if ring.shell:
        raise RingError(f"{ring.name} has no multiplication data")
    cT = tangent_total if tangent_total is not None else ring.tangent_total
    if cT is None:
        raise RingError(f"no tangent class available for {ring.name}")
    if cT.part(0) != ring.one():
        raise RingError("total Chern class must start with 1")
    dim_s = ring.top_degree // 2
    if divisor.is_zero():
        classes = {i: cT.part(2 * i) for i in range(dim_s + 1)}
        return ChernResult(cT, classes, None, True)
    if divisor.degrees() != [2]:
        raise RingError("the hypersurface class must be a divisor (degree 2)")
    total = cT * inverse_one_plus(divisor)
    top = dim_s - 1
    classes = {i: total.part(2 * i) for i in range(top + 1)}
    trunc = classes[0]
    for i in range(1, top + 1):
        trunc = trunc + classes[i]
    euler = ring.integrate(classes[top] * divisor)
    return ChernResult(trunc, classes, euler, False)


def cup_matrix(ring: GradedRing, divisor: RingElement, source_deg: int) -> Matrix:
    """Matrix of ``x -> x * [V]`` from degree ``source_deg`` to ``source_deg + 2``."""
    if ring.shell:
        raise RingError(f"{ring.name} is a Betti shell; products are not available")
    src = ring.basis.get(source_deg, ())
    tgt = ring.basis.get(source_deg + 2, ())
    cols = [(ring.gen(s) * divisor).vector(source_deg + 2) for s in src]
    if not cols:
        return Matrix.zeros(len(tgt), 0)
    return Matrix.from_columns(cols)


def cup_with_divisor_image(ring: GradedRing, divisor: RingElement, source_deg: int) -> Subspace:
    M = cup_matrix(ring, divisor, source_deg)
    n = ring.dim(source_deg + 2)
    return Subspace.span(M.columns(), n)


@dataclass(frozen=True)
class FiberMiddleData:
    """Middle cohomology of an even-dimensional quadric fiber: ``λ1, λ2`` with
    ``η^{d/4} = λ1 + λ2``."""

    d: int
    symbols: tuple = ("l1", "l2")

    @property
    def eta_power(self) -> tuple:
        return (1, 1)


@dataclass(frozen=True)
class CokerResult:
    rank: int
    target_dim: int
    image_rank: int
    representative: str | None


def coker_rho_rank(ring: GradedRing, divisor: RingElement, fiber: FiberMiddleData) -> CokerResult:
    if ring.shell:
        raise RingError(f"{ring.name} has no stored multiplication; the needed Schubert "
                        "calculus is only cited externally")
    d = fiber.d
    if ring.top_degree // 2 != d:
        raise RingError(f"fiber data is for dim S = {d}, ring has dim {ring.top_degree // 2}")
    tgt = ring.basis.get(d, ())
    b = len(tgt)
    image = cup_with_divisor_image(ring, divisor, d - 2)
    vecs = []
    for v in image.basis:
        vecs.append(list(v) + [0] * b)      # image ⊗ λ1
        vecs.append([0] * b + list(v))      # image ⊗ λ2
    eta = fiber.eta_power
    for i in range(b):
        e = [1 if j == i else 0 for j in range(b)]
        vecs.append([eta[0] * x for x in e] + [eta[1] * x for x in e])
    span = Subspace.span(vecs, 2 * b)
    rank = 2 * b - span.dim
    rep = None
    if rank:
        for i, s in enumerate(tgt):
            e = [1 if j == i else 0 for j in range(b)] + [0] * b
            if not span.contains(e):
                rep = f"{s} ⊗ {fiber.symbols[0]}"
                break
    return CokerResult(rank, 2 * b, image.dim, rep)


__all__ = [
    "RING_NAMES", "RingError", "GradedRing", "RingElement", "ChernResult", "CokerResult",
    "FiberMiddleData", "load_ring", "parse_element", "format_element", "generate_catalogue",
    "chern_hypersurface", "inverse_one_plus", "cup_matrix", "cup_with_divisor_image",
    "coker_rho_rank", "default_rings_path",
]
