"""Deterministic JSON and CSV writing with round-trip float formatting.

The stdlib json module writes repr(float); file formats here promise 17
significant digits so reruns are byte-identical across platforms, hence
this small formatter.
"""

import json

import numpy as np


def format_float(x):
    return "%.17g" % float(x)


def _dumps(obj, indent):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key, val in obj.items():
            items.append('%s  "%s": %s' % (pad, key, _dumps(val, indent + 1)))
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = np.asarray(obj).tolist() if isinstance(obj, np.ndarray) else list(obj)
        parts = [_dumps(v, indent + 1) for v in seq]
        body = ", ".join(parts)
        if len(body) <= 72:
            return "[" + body + "]"
        return "[\n" + ",\n".join("%s  %s" % (pad, p) for p in parts) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not np.isfinite(obj):
            raise ValueError("non-finite value in JSON output")
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError("cannot serialize %r" % type(obj))


def dumps(obj):
    return _dumps(obj, 0) + "\n"


def dump_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_csv(path, header, rows):
    """Write rows of numbers; floats get 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = []
            for v in row:
                if isinstance(v, (int, np.integer)):
                    cells.append(str(int(v)))
                else:
                    cells.append(format_float(v))
            fh.write(",".join(cells) + "\n")
