"""Regenerate src/tpoly/data/catalog.json from representative polygons.

The MMLPs, invariants and fingerprints are derived here and frozen; the
printed sequences and closed-form descriptors are reference data.
"""

import json
import sys
from pathlib import Path

from tpoly.catalog import ClosedForm, build_entry


def cf(prefactor, indices, exponent, numerator, denominator, constraints=()):
    return ClosedForm(prefactor, tuple(indices), exponent, tuple(numerator), tuple(denominator), tuple(constraints))


d = {"d": 1}
ENTRIES = [
    (1, [(-2, -9), (1, 0), (1, 6), (-2, -3)],
     [1, 0, 10260, 2021280, 618874020, 184450426560],
     cf(60, "d", d, [{"d": 6}], [d, {"d": 2}, {"d": 3}])),
    (2, [(-1, -4), (1, 0), (1, 4), (-1, 0)],
     [1, 0, 276, 6816, 314532, 12853440, 569409360],
     cf(12, "d", d, [{"d": 4}], [d, d, {"d": 2}])),
    (3, [(-1, -1), (2, -1), (-1, 2)],
     [1, 0, 54, 492, 9882, 158760, 2879640],
     cf(6, "d", d, [{"d": 3}], [d, d, d])),
    (4, [(1, 1), (-1, 1), (-1, -1), (1, -1)],
     [1, 0, 20, 96, 1188, 10560, 111440],
     cf(4, "d", d, [{"d": 2}, {"d": 2}], [d, d, d, d])),
    (5, [(-2, 1), (0, -1), (1, -1), (1, 0), (0, 1)],
     [1, 0, 10, 30, 270, 1560, 11350],
     cf(3, "lm", {"l": 1, "m": 1}, [{"l": 1, "m": 2}, {"l": 1, "m": 1}],
        [{"l": 1}, {"l": 1}, {"m": 1}, {"m": 1}, {"m": 1}])),
    (6, [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
     [1, 0, 6, 12, 90, 360],
     cf(0, "abcd", {"a": 1, "b": 2, "c": 2, "d": 1}, [{"a": 1, "b": 2, "c": 2, "d": 1}],
        [{"a": 1}, {"b": 1}, {"c": 1}, {"d": 1}, {"a": 1, "b": 1, "d": -1}, {"c": 1, "d": 1, "a": -1}],
        [{"a": 1, "b": 1, "d": -1}, {"c": 1, "d": 1, "a": -1}])),
    (7, [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)],
     [1, 0, 4, 6, 36, 120],
     cf(0, "lmn", {"l": 1, "m": 1, "n": 1}, [{"l": 1, "m": 1, "n": 1}],
        [{"l": 1}, {"m": 1}, {"l": 1, "m": 1, "n": -1}, {"n": 1, "l": -1}, {"n": 1, "m": -1}],
        [{"n": 1, "l": -1}, {"n": 1, "m": -1}, {"l": 1, "m": 1, "n": -1}])),
    (8, [(1, 0), (0, 1), (-1, -1), (0, -1)],
     [1, 0, 2, 6, 6, 60, 110],
     cf(0, "lm", {"l": 1, "m": 2}, [{"l": 1, "m": 2}],
        [{"l": 1}, {"l": 1}, {"m": 1, "l": -1}, {"m": 1}], [{"m": 1, "l": -1}])),
    (9, [(1, 0), (0, 1), (-1, 0), (0, -1)],
     [1, 0, 4, 0, 36, 0, 400],
     cf(0, "lm", {"l": 2, "m": 2}, [{"l": 2, "m": 2}], [{"l": 1}, {"l": 1}, {"m": 1}, {"m": 1}])),
    (10, [(1, 0), (0, 1), (-1, -1)],
     [1, 0, 0, 1, 0, 0, 6, 0, 0, 90],
     cf(0, "d", {"d": 3}, [{"d": 3}], [d, d, d])),
]


def main(out=None):
    out = Path(out or Path(__file__).resolve().parents[1] / "src" / "tpoly" / "data" / "catalog.json")
    entries = [build_entry(*row) for row in ENTRIES]
    out.write_text(json.dumps([e.to_json() for e in entries], indent=1) + "\n")
    print(f"wrote {len(entries)} entries to {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
