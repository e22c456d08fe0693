"""Regenerate the frozen ring tables and the Severi catalogue under src/hodge_limits/data."""
import json
from pathlib import Path

from hodge_limits.cohomology_rings import default_rings_path, generate_catalogue
from hodge_limits.severi import build_catalogue_json

DATA = Path(default_rings_path()).parent


def write(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    write(DATA / "rings.json", generate_catalogue())
    write(DATA / "severi.json", build_catalogue_json())
