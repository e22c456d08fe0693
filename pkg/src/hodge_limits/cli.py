"""``hodge-limits`` command line: every operation behind one executable.

Exit codes: 0 all verdicts pass, 1 a verdict fails (or a mathematical precondition is
violated), 2 usage error, 3 schema or malformed instance, 4 file error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .schemas import SCHEMA_VERSION, SCHEMAS, SchemaError, validate_instance
from .serialization import (InstanceError, InstanceFileError, canonical_dumps, digest,
                            hodge_to_json, load_limit_instance, matrix_to_json, read_json,
                            weight_to_json)
from .verdict import Verdict, VerdictBuilder, _jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCHEMA, EXIT_FILE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    verdicts: list = field(default_factory=list)
    golden: list = field(default_factory=list)
    result: object = None
    error: str | None = None
    exit_status: int = EXIT_OK
    table: list = field(default_factory=list)   # (label, value) rows for humans

    def add_verdict(self, v: Verdict):
        self.verdicts.append(v)

    def add_golden(self, name: str, expected, actual):
        self.golden.append({"name": name, "expected": _jsonable(expected),
                            "actual": _jsonable(actual), "passed": expected == actual})

    def row(self, label: str, value):
        self.table.append((label, value))

    def finalize(self) -> int:
        if self.error is None:
            ok = all(v.passed for v in self.verdicts) and all(g["passed"] for g in self.golden)
            self.exit_status = EXIT_OK if ok else EXIT_FAIL
        return self.exit_status

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "command": self.command,
                "inputs_digest": digest(self.inputs),
                "verdicts": [v.to_json() for v in self.verdicts],
                "golden": self.golden, "result": _jsonable(self.result),
                "exit_status": self.exit_status, "error": self.error}

    def render(self) -> str:
        lines = [f"# {self.command}"]
        width = max((len(a) for a, _ in self.table), default=0)
        for label, value in self.table:
            lines.append(f"{label.ljust(width)}  {value}")
        for g in self.golden:
            mark = "PASS" if g["passed"] else "FAIL"
            lines.append(f"[{mark}] golden {g['name']}: expected {g['expected']}, got {g['actual']}")
        for v in self.verdicts:
            lines.append(f"[{'PASS' if v.passed else 'FAIL'}] {v.subject}")
            for c in v.checks:
                if not c.passed:
                    lines.append(f"    failed: {c.name}" + (f" ({c.detail})" if c.detail else ""))
        if self.error:
            lines.append(f"error: {self.error}")
        lines.append(f"exit status {self.exit_status}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# helpers

def _load(path: str, kind: str) -> dict:
    obj = json.load(sys.stdin) if path == "-" else read_json(path)
    validate_instance(kind, obj)
    return obj


def _limit(path: str, rep: Report) -> dict:
    obj = _load(path, "limit_instance")
    rep.inputs["file"] = obj
    if "T" in obj and "N" not in obj:
        from .serialization import matrix_from_json
        from .weight_filtration import log_unipotent

        obj = dict(obj)
        obj["N"] = matrix_to_json(log_unipotent(matrix_from_json(obj.pop("T"))).matrix)
    return load_limit_instance(obj)


def _need(inst: dict, *keys):
    missing = [k for k in keys if k not in inst or inst[k] is None]
    if missing:
        raise InstanceError(f"instance lacks {', '.join(missing)}")


# ---------------------------------------------------------------------------
# commands

def cmd_mwf(a, rep: Report):
    from .weight_filtration import primitive_decomposition, verify_weight_conditions

    inst = _limit(a.file, rep)
    _need(inst, "N", "W")
    W = inst["W"]
    rep.result = {"W": weight_to_json(W), "dims": W.dims(), "graded": W.graded_dims()}
    rep.row("center", W.center)
    rep.row("dim W_l", W.dims())
    rep.row("graded dims", {k: v for k, v in W.graded_dims().items() if v})
    pd = primitive_decomposition(inst["N"], W)
    rep.row("primitive dims", {k: v for k, v in pd.primitive_dims(W).items() if v})
    if a.verify:
        rep.add_verdict(verify_weight_conditions(inst["N"], W))


def cmd_mhs(a, rep: Report):
    from .mixed_hodge import (deligne_splitting, is_r_split, r_split_delta, validate_mhs,
                              validate_pmhs)

    inst = _limit(a.file, rep)
    _need(inst, "W", "F")
    W, F = inst["W"], inst["F"]
    if a.action == "validate":
        if "S" in inst and "N" in inst:
            v = validate_pmhs(inst["S"], inst["N"], W, F)
        else:
            v = validate_mhs(W, F)
        rep.add_verdict(v)
        gh = v.data.get("graded_hodge_numbers", {})
        for k, h in sorted(gh.items()):
            rep.row(f"Gr_{k}", h.nonzero() if hasattr(h, "nonzero") else h)
        rep.result = {"graded_hodge_numbers": gh}
        return
    mv = validate_mhs(W, F)
    if not mv.passed:
        rep.add_verdict(mv)
        return
    if a.action == "split":
        sp = deligne_splitting(W, F, check=False)
        r = is_r_split(sp)
        rep.row("I^{p,q} dims", {f"{p},{q}": d for (p, q), d in sorted(sp.dims().items())})
        rep.row("R-split", r)
        vb = VerdictBuilder("Deligne splitting")
        vb.add("direct sum", sp.is_direct())
        vb.extend(sp.conjugation_congruence())
        rep.add_verdict(vb.build())
        rep.result = {"pieces": sp.to_json(), "r_split": r}
    else:
        res = r_split_delta(W, F)
        rep.row("delta", [[str(x) for x in row] for row in res.delta.rows])
        rep.row("delta = 0", res.delta.is_zero())
        vb = VerdictBuilder("R-split move")
        vb.add("exp(-i delta) F is R-split", is_r_split(res.split_splitting))
        rep.add_verdict(vb.build())
        rep.result = {"delta": matrix_to_json(res.delta),
                      "split_F": hodge_to_json(res.split_filtration)}


def cmd_sl2(a, rep: Report):
    from .linalg import Scalar
    from .mixed_hodge import deligne_splitting, is_r_split, r_split_delta, validate_pure_polarized
    from .sl2_orbit import (canonical_grading, check_orbit_correspondence, complete_sl2_triple,
                            nilpotent_orbit_eval)

    inst = _limit(a.file, rep)
    if a.action == "complete":
        _need(inst, "N", "W", "F")
        sp = deligne_splitting(inst["W"], inst["F"])
        if not is_r_split(sp):
            sp = r_split_delta(inst["W"], inst["F"]).split_splitting
        G = canonical_grading(sp, inst["W"].center)
        t = complete_sl2_triple(inst["N"], G.y)
        vb = VerdictBuilder("sl2 triple")
        for name, ok in t.relations().items():
            vb.add(name, ok)
        rep.add_verdict(vb.build())
        rep.result = {"N-": matrix_to_json(t.n_minus), "Y": matrix_to_json(t.y),
                      "N+": matrix_to_json(t.n_plus)}
        rep.row("Y", rep.result["Y"])
        rep.row("N+", rep.result["N+"])
    elif a.action == "orbit-eval":
        _need(inst, "N", "F")
        z = Scalar.parse(a.z)
        Fz = nilpotent_orbit_eval(inst["N"], inst["F"], z)
        rep.result = {"F": hodge_to_json(Fz), "z": str(z)}
        rep.row("dim F^p", {p: Fz[p].dim for p in range(Fz.p_min, Fz.p_end)})
        if "S" in inst and inst["m"] is not None:
            rep.add_verdict(validate_pure_polarized(inst["S"], Fz, inst["m"]))
    else:
        _need(inst, "S", "N", "F", "m")
        rep.add_verdict(check_orbit_correspondence(inst["S"], inst["N"], inst["F"], inst["m"]))


def cmd_ring(a, rep: Report):
    from .cohomology_rings import (FiberMiddleData, chern_hypersurface, coker_rho_rank,
                                   format_element, load_ring, parse_element)

    ring = load_ring(a.ring)
    rep.inputs["ring"] = ring.name
    if a.action == "mult":
        x, y = parse_element(ring, a.a), parse_element(ring, a.b)
        prod = x * y
        rep.result = {"product": format_element(prod)}
        rep.row(f"({a.a}) * ({a.b})", format_element(prod))
    elif a.action == "chern":
        V = parse_element(ring, a.divisor)
        res = chern_hypersurface(ring, None, V)
        rep.result = {"classes": {str(i): format_element(c) for i, c in res.classes.items()},
                      "euler": res.euler}
        for i, c in sorted(res.classes.items()):
            rep.row(f"c_{i}", format_element(c))
        rep.row("chi", res.euler)
        if ring.name == "P2xP2" and V == ring.element("3*H1+3*H2"):
            rep.add_golden("chi(V)", -162, res.euler)
    else:
        V = parse_element(ring, a.divisor)
        res = coker_rho_rank(ring, V, FiberMiddleData(ring.top_degree // 2))
        rep.result = {"rank": res.rank, "target_dim": res.target_dim,
                      "image_rank": res.image_rank, "representative": res.representative}
        rep.row("coker rank", res.rank)
        rep.row("representative", res.representative)


def cmd_repdim(a, rep: Report):
    from .severi import load_catalogue
    from .weyl import rep_dimension

    d = rep_dimension(a.group, a.weight)
    rep.result = {"group": a.group, "weight": a.weight, "dim": d}
    rep.row(f"dim V({a.weight}) of {a.group}", d)
    for s in load_catalogue().values():
        if tuple(s.sections_weight) == (a.group, a.weight):
            rep.add_golden(f"{s.name} sections", s.sections_dim, d)


def cmd_severi(a, rep: Report):
    from .degeneration import assemble_central_fiber, fiber_to_json
    from .severi import get_datum, limit_mhs_summary, verify_all

    if a.action == "limit-mhs":
        s = get_datum(a.name)
        summ = limit_mhs_summary(s)
        rep.result = summ.to_json()
        for k, h in sorted(summ.graded.items()):
            rep.row(f"Gr_{k}", h.nonzero())
        rep.row("twist", summ.twist)
        rep.row("polarization sign", summ.polarization_sign)
        rep.row("V Hodge vector", list(summ.V_hodge_vector))
        if s.V_hodge_expected is not None:
            rep.add_golden(f"{s.name} Hodge numbers of V", list(s.V_hodge_expected),
                           list(summ.V_hodge_vector))
    elif a.action == "verify-all":
        res = verify_all(workers=a.workers)
        for name in sorted(res):
            rep.add_verdict(res[name])
            rep.row(name, "pass" if res[name].passed else "FAIL")
        rep.result = {"entries": sorted(res)}
    else:
        asm = assemble_central_fiber(a.name)
        rep.add_verdict(asm.verdict)
        rep.result = {"snc_fiber": fiber_to_json(asm.fiber), "cs_instance": asm.cs.to_json(),
                      "axioms": {k: {"value": v[0], "provenance": v[1]}
                                 for k, v in asm.axioms.items()}}
        rep.row("Gr^W H^m(X_0)", asm.graded)
        rep.row("CS ranks", asm.cs.ranks)


def cmd_cs_check(a, rep: Report):
    from .degeneration import ClemensSchmidInstance, clemens_schmid_check

    obj = _load(a.file, "cs_instance")
    rep.inputs["file"] = obj
    inst = ClemensSchmidInstance.from_json(obj)
    v = clemens_schmid_check(inst)
    rep.add_verdict(v)
    rep.result = v.data
    rep.row("ranks", inst.ranks)
    rep.row("N power ranks", v.data["N_power_ranks"])


def cmd_snc_e2(a, rep: Report):
    from .degeneration import check_e2, e1_to_e2, fiber_from_json

    obj = _load(a.file, "snc_fiber")
    rep.inputs["file"] = obj
    fiber = fiber_from_json(obj)
    page = e1_to_e2(fiber)
    rep.add_verdict(check_e2(fiber, page))
    out = {"E2": {f"{p},{q}": v for (p, q), v in sorted(page.e2.items()) if v}}
    if "m" in obj:
        out["graded"] = page.graded(int(obj["m"]))
        rep.row("Gr^W H^m", out["graded"])
    rep.row("E2", out["E2"])
    rep.result = out


def cmd_boundary(a, rep: Report):
    from .boundary import boundary_point

    inst = _limit(a.file, rep)
    _need(inst, "S", "N", "F", "m")
    bp = boundary_point(inst["S"], inst["N"], inst["F"], inst["m"], inst.get("W"))
    rep.add_verdict(bp.verdict)
    rep.result = bp.to_json()
    rep.row("W_(k-1)", rep.result["datum"]["line"])
    rep.row("psi sign", bp.datum.psi_sign)
    rep.row("graded Hodge numbers", bp.point.hodge_numbers.nonzero())


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the JSON report")
    p = _Parser(prog="hodge-limits", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--schema", nargs="?", const="all", metavar="NAME",
                   help="print the JSON schemas (or one of them) and exit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("mwf", parents=[common], help="monodromy weight filtration")
    s.add_argument("file")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_mwf)

    s = sub.add_parser("mhs", parents=[common], help="mixed Hodge structures")
    s.add_argument("action", choices=["validate", "split", "delta"])
    s.add_argument("file")
    s.set_defaults(func=cmd_mhs)

    s = sub.add_parser("sl2", parents=[common], help="sl2 triples and nilpotent orbits")
    s.add_argument("action", choices=["complete", "orbit-eval", "verify"])
    s.add_argument("file")
    s.add_argument("--z", default="i", help="orbit parameter, e.g. 'i' or '1/2+3*i'")
    s.set_defaults(func=cmd_sl2)

    s = sub.add_parser("ring", parents=[common], help="cohomology rings")
    rs = s.add_subparsers(dest="action", parser_class=_Parser, required=True)
    r = rs.add_parser("mult", parents=[common])
    r.add_argument("ring")
    r.add_argument("a")
    r.add_argument("b")
    for name in ("chern", "coker-rho"):
        r = rs.add_parser(name, parents=[common])
        r.add_argument("ring")
        r.add_argument("divisor")
    s.set_defaults(func=cmd_ring)

    s = sub.add_parser("repdim", parents=[common], help="Weyl dimension formula")
    s.add_argument("group")
    s.add_argument("weight")
    s.set_defaults(func=cmd_repdim)

    s = sub.add_parser("severi", parents=[common], help="Severi variety catalogue")
    ss = s.add_subparsers(dest="action", parser_class=_Parser, required=True)
    r = ss.add_parser("limit-mhs", parents=[common])
    r.add_argument("name")
    r = ss.add_parser("verify-all", parents=[common])
    r.add_argument("--workers", type=int, default=4)
    r = ss.add_parser("assemble", parents=[common])
    r.add_argument("name")
    s.set_defaults(func=cmd_severi)

    s = sub.add_parser("cs-check", parents=[common], help="Clemens-Schmid bookkeeping")
    s.add_argument("file")
    s.set_defaults(func=cmd_cs_check)

    s = sub.add_parser("snc-e2", parents=[common], help="weight spectral sequence E2")
    s.add_argument("file")
    s.set_defaults(func=cmd_snc_e2)

    s = sub.add_parser("boundary", parents=[common], help="boundary component of a limit")
    bs = s.add_subparsers(dest="action", parser_class=_Parser, required=True)
    r = bs.add_parser("from-limit", parents=[common])
    r.add_argument("file")
    s.set_defaults(func=cmd_boundary)
    return p


def _command_string(args) -> str:
    parts = [args.command]
    for key in ("action", "name", "ring", "group", "weight", "a", "b", "divisor", "file"):
        v = getattr(args, key, None)
        if v is not None:
            parts.append(str(v))
    return " ".join(parts)


def run(argv: list[str] | None = None) -> tuple[Report | None, int, str]:
    """Execute one invocation; returns (report, exit code, text to print)."""
    from .boundary import BoundaryError
    from .cohomology_rings import RingError
    from .degeneration import DegenerationError
    from .linalg import LinalgError
    from .severi import CatalogueError
    from .weyl import WeylError

    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return None, EXIT_USAGE, f"usage error: {exc}\n{parser.format_usage()}"
    if args.schema:
        if args.schema != "all" and args.schema not in SCHEMAS:
            return None, EXIT_USAGE, f"usage error: unknown schema {args.schema!r}"
        obj = SCHEMAS if args.schema == "all" else SCHEMAS[args.schema]
        return None, EXIT_OK, json.dumps(obj, indent=1, sort_keys=True)
    if not args.command:
        return None, EXIT_USAGE, parser.format_usage()
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json")}
    rep = Report(_command_string(args), inputs)
    try:
        args.func(args, rep)
        rep.finalize()
    except (SchemaError, InstanceError, LinalgError) as exc:
        rep.error, rep.exit_status = str(exc), EXIT_SCHEMA
    except (InstanceFileError, CatalogueError) as exc:
        rep.error, rep.exit_status = str(exc), EXIT_FILE
    except (WeylError, RingError) as exc:
        rep.error, rep.exit_status = str(exc), EXIT_USAGE
    except (BoundaryError, DegenerationError, ValueError) as exc:
        rep.error, rep.exit_status = str(exc), EXIT_FAIL
    except json.JSONDecodeError as exc:
        rep.error, rep.exit_status = f"stdin is not valid JSON: {exc}", EXIT_FILE
    text = canonical_dumps(rep.to_json()) if getattr(args, "json", False) else rep.render()
    return rep, rep.exit_status, text


def main(argv: list[str] | None = None) -> int:
    _, code, text = run(argv)
    stream = sys.stderr if code == EXIT_USAGE and text.startswith("usage") else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
