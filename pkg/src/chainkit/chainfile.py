"""Reading and writing chain files (JSON or CSV).

JSON holds ``{"vertices": [[x, y], ...]}``; CSV holds one ``x,y`` pair per
line with an optional header. Numbers are written with ``repr`` so a
read-back reproduces every coordinate exactly.
"""

import csv
import io
import json
import os

from .chain import PolygonalChain
from .exceptions import ChainFileError, InvalidParams

FORMATS = ("json", "csv")


def infer_format(path, fmt=None):
    if fmt:
        if fmt not in FORMATS:
            raise ChainFileError(f"unknown chain format {fmt!r}")
        return fmt
    ext = os.path.splitext(str(path))[1].lower().lstrip(".")
    return ext if ext in FORMATS else "json"


def dumps(P, fmt="json"):
    V = P.vertices.tolist()
    if fmt == "json":
        return json.dumps({"vertices": V}) + "\n"
    if fmt == "csv":
        lines = ["x,y"] + [f"{x!r},{y!r}" for x, y in V]
        return "\n".join(lines) + "\n"
    raise ChainFileError(f"unknown chain format {fmt!r}")


def loads(text, fmt="json"):
    try:
        if fmt == "json":
            doc = json.loads(text)
            if not isinstance(doc, dict) or "vertices" not in doc:
                raise ChainFileError('JSON chain must be an object with a "vertices" array')
            rows = doc["vertices"]
            if not isinstance(rows, list) or not all(
                    isinstance(r, list) and len(r) == 2
                    and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in r)
                    for r in rows):
                raise ChainFileError('"vertices" must be an array of [x, y] number pairs')
        elif fmt == "csv":
            rows = [r for r in csv.reader(io.StringIO(text)) if r and any(f.strip() for f in r)]
            if rows and not _numeric(rows[0]):
                rows = rows[1:]
            if not all(len(r) == 2 and _numeric(r) for r in rows):
                raise ChainFileError("CSV chain must hold one x,y pair per line")
            rows = [[float(x), float(y)] for x, y in rows]
        else:
            raise ChainFileError(f"unknown chain format {fmt!r}")
        return PolygonalChain(rows)
    except json.JSONDecodeError as exc:
        raise ChainFileError(f"malformed JSON: {exc}") from exc
    except InvalidParams as exc:
        raise ChainFileError(str(exc)) from exc


def _numeric(row):
    try:
        [float(x) for x in row]
    except ValueError:
        return False
    return True


def read_chain(path, fmt=None):
    fmt = infer_format(path, fmt)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ChainFileError(f"cannot read {path}: {exc}") from exc
    return loads(text, fmt)


def write_chain(P, path, fmt=None):
    fmt = infer_format(path, fmt)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(P, fmt))
