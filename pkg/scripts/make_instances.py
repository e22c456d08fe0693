"""Write small JSON instances for the CLI into instances/."""
import json
import random
import sys
from pathlib import Path

from hodge_limits.degeneration import assemble_segre_central_fiber, fiber_to_json
from hodge_limits.models import (index_one_model, reverse_engineered_mhs, two_dim_family,
                                 weight_one_model)
from hodge_limits.serialization import limit_instance_to_json


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    items = {}
    M = weight_one_model()
    items["weight_one.json"] = limit_instance_to_json(M.S, M.N, M.W, M.F, 1)
    M = index_one_model(3, {3: 1, 2: 1})
    items["index_one_m3.json"] = limit_instance_to_json(M.S, M.N, None, M.F, 3)
    M = index_one_model(3, {2: 1}, rank_two=True)
    items["rank_two_m3.json"] = limit_instance_to_json(M.S, M.N, None, M.F, 3)
    mhs = two_dim_family(1, 2)
    items["two_dim_family.json"] = limit_instance_to_json(None, None, mhs.W, mhs.F, 1)
    r = reverse_engineered_mhs(random.Random(11), max_dim=6)
    items["reverse_engineered.json"] = limit_instance_to_json(None, None, r.mhs.W, r.mhs.F, 2)
    asm = assemble_segre_central_fiber()
    fiber = fiber_to_json(asm.fiber)
    fiber["m"] = asm.cs.m
    items["segre_snc_fiber.json"] = fiber
    items["segre_cs.json"] = asm.cs.to_json()
    for name, obj in items.items():
        (out / name).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "instances")
