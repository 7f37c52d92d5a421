"""
The formalnf command line
=========================

Writes a germ file, normalizes it, verifies the result and asks for a
complement and a resonance table. Same as running the ``formalnf`` script.
"""

import json
import tempfile
from pathlib import Path

from formalnf.cli import main

work = Path(tempfile.mkdtemp())
germ = {
    "format": "formalnf-germ",
    "n": 2,
    "truncation": 5,
    "lambda": {"kind": "zero"},
    "terms": [
        {"coord": 0, "exponents": [2, 0], "coeff": {"re": "1", "im": "0"}},
        {"coord": 1, "exponents": [1, 1], "coeff": {"re": "1", "im": "0"}},
        {"coord": 1, "exponents": [3, 0], "coeff": {"re": "1/2", "im": "1"}},
        {"coord": 0, "exponents": [0, 4], "coeff": {"re": "-3", "im": "0"}},
    ],
}
(work / "germ.json").write_text(json.dumps(germ))

print("$ formalnf normalize")
main(["normalize", "--input", str(work / "germ.json"), "--output", str(work / "result.json")])
print((work / "result.json").read_text()[:400], "...")

print("$ formalnf verify")
main(["verify", "--input", str(work / "germ.json"), "--normal-form", str(work / "result.json")])

print("$ formalnf complement --case 1_10 --lambda identity --degree 3")
main(["complement", "--case", "1_10", "--lambda", "identity", "--degree", "3"])

print("$ formalnf resonance --rho 3/2 --max-degree 6")
main(["resonance", "--rho", "3/2", "--max-degree", "6"])
