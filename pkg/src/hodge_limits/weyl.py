"""Weyl dimension formula over exact rationals, with root systems built from Cartan matrices.

Cartan convention: ``A[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``.
Labels follow Bourbaki; for E6 the branch node is 2, attached to 4.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class WeylError(ValueError):
    pass


def cartan_A(n: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def cartan_E6() -> list[list[int]]:
    edges = {(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)}
    A = [[0] * 6 for _ in range(6)]
    for i in range(6):
        A[i][i] = 2
    for a, b in edges:
        A[a - 1][b - 1] = A[b - 1][a - 1] = -1
    return A


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def cartan_matrix(group: str) -> list[list[int]]:
    """Cartan matrix for ``A<n>``, ``E6`` or ``x``-separated products such as ``A2xA2``."""
    factors = group.split("x")
    blocks = []
    for f in factors:
        m = re.fullmatch(r"A(\d+)", f)
        if m and int(m.group(1)) >= 1:
            blocks.append(cartan_A(int(m.group(1))))
        elif f == "E6":
            blocks.append(cartan_E6())
        else:
            raise WeylError(f"unsupported root system factor {f!r}")
    return _block_diag(blocks)


@dataclass(frozen=True)
class RootSystem:
    name: str
    cartan: tuple
    positive_roots: tuple   # simple-root coordinates
    root_lengths: tuple     # (alpha_i, alpha_i) for the simple roots

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def pairing(self, weight, root) -> Fraction:
        """``<lambda, alpha^vee>`` for ``lambda`` in fundamental-weight coordinates."""
        num = sum(Fraction(c * w * self.root_lengths[j], 2) for j, (c, w) in enumerate(zip(root, weight)))
        return 2 * num / self.norm(root)

    def norm(self, root) -> Fraction:
        A = self.cartan
        n = self.rank
        tot = Fraction(0)
        for i in range(n):
            if not root[i]:
                continue
            for j in range(n):
                if root[j]:
                    # (alpha_i, alpha_j) = A[i][j] (alpha_i, alpha_i) / 2
                    tot += root[i] * root[j] * Fraction(A[i][j] * self.root_lengths[i], 2)
        return tot


def _symmetrizer(A) -> list[Fraction]:
    """Squared lengths ``d_i`` with ``d_i A[i][j] = d_j A[j][i]`` (connected components scaled to 2)."""
    n = len(A)
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(2)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] and d[j] is None:
                    d[j] = d[i] * Fraction(A[i][j], A[j][i])
                    stack.append(j)
    return d


@lru_cache(maxsize=None)
def root_system(group: str) -> RootSystem:
    A = cartan_matrix(group)
    n = len(A)
    lengths = _symmetrizer(A)
    simple = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # <beta, alpha_i^vee> = sum_j c_j A[i][j]
                pair = sum(beta[j] * A[i][j] for j in range(n))
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                if q - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    ordered = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    return RootSystem(group, tuple(tuple(r) for r in A), ordered, tuple(lengths))


def parse_weight(text: str, rank: int) -> tuple[int, ...]:
    """Parse ``"3w2"``, ``"3w1+3w3"``, ``"w1"`` or a comma list ``"0,3,0,0,0"``."""
    s = text.replace(" ", "")
    if re.fullmatch(r"-?\d+(,-?\d+)*", s):
        vals = [int(x) for x in s.split(",")]
        if len(vals) != rank:
            raise WeylError(f"weight needs {rank} coordinates, got {len(vals)}")
        return tuple(vals)
    out = [0] * rank
    for term in s.split("+"):
        m = re.fullmatch(r"(-?\d*)\*?[wω](\d+)", term)
        if not m:
            raise WeylError(f"cannot parse weight term {term!r}")
        c = int(m.group(1)) if m.group(1) not in ("", "-") else (-1 if m.group(1) == "-" else 1)
        i = int(m.group(2))
        if not 1 <= i <= rank:
            raise WeylError(f"fundamental weight index {i} out of range 1..{rank}")
        out[i - 1] += c
    return tuple(out)


def rep_dimension(group: str, highest_weight) -> int:
    """Weyl dimension formula ``prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>``."""
    R = root_system(group)
    lam = parse_weight(highest_weight, R.rank) if isinstance(highest_weight, str) \
        else tuple(highest_weight)
    if len(lam) != R.rank:
        raise WeylError(f"weight has {len(lam)} coordinates, rank is {R.rank}")
    if any(c < 0 for c in lam):
        raise WeylError(f"weight {lam} is not dominant")
    rho = (1,) * R.rank
    lr = tuple(a + 1 for a in lam)
    num = Fraction(1)
    for alpha in R.positive_roots:
        num *= R.pairing(lr, alpha) / R.pairing(rho, alpha)
    if num.denominator != 1:
        raise WeylError("Weyl formula returned a non-integer (bad root data)")
    return int(num)


def group_dimension(group: str) -> int:
    R = root_system(group)
    return R.rank + 2 * len(R.positive_roots)


__all__ = ["WeylError", "RootSystem", "cartan_matrix", "root_system", "parse_weight",
           "rep_dimension", "group_dimension"]
