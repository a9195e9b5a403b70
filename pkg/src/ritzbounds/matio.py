"""JSON serialization of complex matrices.

Format: an object with the shape and a row-major list of [re, im] pairs.
Square matrices are written with a single "d" field, rectangular ones with
"rows"/"cols"; the loader accepts both. Floats go through repr, so a
save/load round trip is bit-identical.
"""

import json

import numpy as np

from .errors import ParseError
from .linalg import as_matrix


def save_matrix(path, M):
    M = as_matrix(M)
    rows, cols = M.shape
    entries = [[float(z.real), float(z.imag)] for z in M.ravel()]
    doc = {"d": rows} if rows == cols else {"rows": rows, "cols": cols}
    doc["entries"] = entries
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_matrix(path):
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}",
                         location=f"line {exc.lineno}, column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object", location="document root")
    if "d" in doc:
        rows = cols = _positive_int(doc["d"], "d")
    else:
        if "rows" not in doc or "cols" not in doc:
            raise ParseError("missing dimension fields", location="field 'd' or 'rows'/'cols'")
        rows = _positive_int(doc["rows"], "rows")
        cols = _positive_int(doc["cols"], "cols")
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise ParseError("missing or non-list entries", location="field 'entries'")
    if len(entries) != rows * cols:
        raise ParseError(
            f"expected {rows * cols} entries, found {len(entries)}", location="field 'entries'"
        )
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (not isinstance(pair, list)) or len(pair) != 2 or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair
        ):
            raise ParseError("entry must be a [re, im] pair of numbers",
                             location=f"entries[{i}]")
        out[i] = complex(pair[0], pair[1])
    M = out.reshape(rows, cols)
    if not np.all(np.isfinite(M)):
        raise ParseError("matrix contains non-finite values", location="field 'entries'")
    return M


def _positive_int(value, name):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"{name} must be a positive integer", location=f"field '{name}'")
    return value
