"""JSON round-tripping for exact matrices, filtrations and instance files.

Scalars are strings ``"a/b"`` or ``"a/b+c/d*i"``; plain integers are also accepted on input.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .linalg import BilinearForm, LinalgError, Matrix, Scalar, Subspace
from .mixed_hodge import HodgeFiltration
from .weight_filtration import CenteredWeightFiltration, monodromy_weight_filtration


class InstanceError(ValueError):
    """Semantically malformed instance (well-typed JSON that cannot be built)."""


class InstanceFileError(OSError):
    pass


def scalar_to_json(x) -> str:
    return str(x if isinstance(x, Scalar) else Scalar.parse(x))


def matrix_to_json(M: Matrix) -> list:
    return [[str(x) for x in row] for row in M.rows]


def matrix_from_json(rows) -> Matrix:
    try:
        M = Matrix([[Scalar.parse(x) for x in row] for row in rows])
    except LinalgError as exc:
        raise InstanceError(str(exc)) from exc
    return M


def vectors_to_json(vs) -> list:
    return [[str(x) for x in v] for v in vs]


def subspace_to_json(U: Subspace) -> list:
    return vectors_to_json(U.basis)


def subspace_from_json(vectors, n: int) -> Subspace:
    vecs = []
    for v in vectors:
        if len(v) != n:
            raise InstanceError(f"vector of length {len(v)} in a space of dimension {n}")
        try:
            vecs.append([Scalar.parse(x) for x in v])
        except LinalgError as exc:
            raise InstanceError(str(exc)) from exc
    return Subspace.span(vecs, n)


def hodge_to_json(F: HodgeFiltration) -> dict:
    return {"p_min": F.p_min, "steps": [subspace_to_json(s) for s in F.steps]}


def hodge_from_json(obj: dict, n: int) -> HodgeFiltration:
    steps = [subspace_from_json(s, n) for s in obj["steps"]]
    try:
        return HodgeFiltration(int(obj["p_min"]), tuple(steps))
    except ValueError as exc:
        raise InstanceError(f"Hodge filtration: {exc}") from exc


def weight_to_json(W: CenteredWeightFiltration) -> dict:
    return {"center": W.center, "steps": [subspace_to_json(s) for s in W.steps]}


def weight_from_json(obj: dict, n: int) -> CenteredWeightFiltration:
    steps = [subspace_from_json(s, n) for s in obj["steps"]]
    try:
        return CenteredWeightFiltration(int(obj["center"]), tuple(steps))
    except ValueError as exc:
        raise InstanceError(f"weight filtration: {exc}") from exc


def form_from_json(obj, weight: int | None = None) -> BilinearForm:
    if isinstance(obj, dict):
        gram, sym = matrix_from_json(obj["matrix"]), obj.get("symmetry")
    else:
        gram, sym = matrix_from_json(obj), None
    if sym is None:
        if weight is None:
            raise InstanceError("form symmetry is neither given nor implied by a weight")
        sym = BilinearForm.SYMMETRIC if weight % 2 == 0 else BilinearForm.ANTISYMMETRIC
    try:
        return BilinearForm(gram, sym)
    except LinalgError as exc:
        raise InstanceError(f"form: {exc}") from exc


def form_to_json(S: BilinearForm) -> dict:
    return {"matrix": matrix_to_json(S.gram), "symmetry": S.symmetry}


def read_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InstanceFileError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceFileError(f"{path} is not valid JSON: {exc}") from exc


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()


# ---------------------------------------------------------------------------
# instance builders

def load_limit_instance(obj: dict) -> dict:
    """Build ``(S, N, W, F, m)`` pieces from an instance; missing ``W`` is computed from ``N``."""
    n = int(obj["dim"])
    out: dict = {"dim": n}
    m = obj.get("m")
    if "N" in obj:
        N = matrix_from_json(obj["N"])
        if N.nrows != n or N.ncols != n:
            raise InstanceError(f"N is {N.nrows}x{N.ncols}, expected {n}x{n}")
        out["N"] = N
    if "S" in obj:
        out["S"] = form_from_json(obj["S"], m)
        if out["S"].dim != n:
            raise InstanceError("form has the wrong size")
    if "W" in obj:
        out["W"] = weight_from_json(obj["W"], n)
        m = out["W"].center if m is None else m
    elif "N" in obj:
        if m is None:
            raise InstanceError("need 'm' to build the weight filtration from N")
        try:
            out["W"] = monodromy_weight_filtration(out["N"], int(m))
        except ValueError as exc:
            raise InstanceError(str(exc)) from exc
    if "F" in obj:
        out["F"] = hodge_from_json(obj["F"], n)
    out["m"] = None if m is None else int(m)
    return out


def limit_instance_to_json(S: BilinearForm | None, N: Matrix | None, W, F, m: int) -> dict:
    n = (W.ambient_dim if W is not None else F.ambient_dim)
    obj: dict = {"dim": n, "m": m}
    if S is not None:
        obj["S"] = form_to_json(S)
    if N is not None:
        obj["N"] = matrix_to_json(N if isinstance(N, Matrix) else N.matrix)
    if W is not None:
        obj["W"] = weight_to_json(W)
    if F is not None:
        obj["F"] = hodge_to_json(F)
    return obj


__all__ = [
    "InstanceError", "InstanceFileError", "matrix_to_json", "matrix_from_json",
    "subspace_to_json", "subspace_from_json", "hodge_to_json", "hodge_from_json",
    "weight_to_json", "weight_from_json", "form_to_json", "form_from_json", "read_json",
    "canonical_dumps", "digest", "load_limit_instance", "limit_instance_to_json",
]
