#!/usr/bin/env python3
"""Regenerate the shipped .san documents under models/ from the builders.

Run after changing a builder or the default intensity catalog:

    python scripts/regen_models.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from edgeavail.document import serialize_model  # noqa: E402
from edgeavail.models import builtin_models  # noqa: E402


def main():
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "models"
    out_dir.mkdir(exist_ok=True)
    for name, model in builtin_models().items():
        path = out_dir / f"{name}.san"
        path.write_text(serialize_model(model), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
