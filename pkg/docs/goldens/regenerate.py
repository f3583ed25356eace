#!/usr/bin/env python3
"""Rebuild every golden file from manifest.json.

Run from anywhere: python3 docs/goldens/regenerate.py
Each manifest entry pins --dim explicitly so SU11_DEFAULT_DIM cannot
change the output.
"""

import json
import pathlib
import sys

from su11.cli import main

HERE = pathlib.Path(__file__).resolve().parent


def run() -> int:
    manifest = json.loads((HERE / "manifest.json").read_text())
    for name, argv in manifest.items():
        code = main(list(argv) + ["--out", str(HERE / name)])
        if code != 0:
            print(f"regeneration failed for {name} (exit {code})", file=sys.stderr)
            return code
        print(f"wrote {name}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
