#!/usr/bin/env python3
"""Render example cone figures to SVG via the command line module."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


EXAMPLES = {
    "collapsing_pair.svg": {"generators": ["a1", "c2"]},
    "pointed_cone.svg": {"generators": ["g1", "g2"]},
    "background_only.svg": {"generators": []},
}

INSTANCE = {
    "schema": "desir/1",
    "omega": ["up", "down"],
    "gambles": {
        "g1": ["1", "-1"],
        "g2": ["-1", "2"],
        "a1": ["-17/10", "4/5"],
        "c2": ["1", "-11/10"],
    },
    "assessment": [],
    "query": {},
}


def main(outdir: str = ".") -> int:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, query in EXAMPLES.items():
        instance = dict(INSTANCE, query=query)
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as handle:
            json.dump(instance, handle)
            path = handle.name
        result = subprocess.run(
            [sys.executable, "-m", "gamblesets", "render", path, "--out", str(out / name)],
            capture_output=True,
            text=True,
        )
        Path(path).unlink()
        if result.returncode != 0:
            print(result.stderr, file=sys.stderr)
            return result.returncode
        print(result.stdout.strip())
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1] if len(sys.argv) > 1 else "."))
