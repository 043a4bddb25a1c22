"""CMAP on-disk format, text and JSON mirrors.

Text format, bit exact::

    CMAP 1
    E <m>
    I <k>
    A1 <a> <b>        (2m lines, a < b, sorted ascending by a)

The pair lines must cover every cross in ``0 .. 4m-1`` exactly once.  The
parser rejects any deviation: wrong header, reordered or badly spaced lines,
missing coverage.  The JSON mirror carries the same data under fixed keys
with the same ordering rule.
"""

from __future__ import annotations

import json
import re

from .errors import FormatError
from .mapmodel import Map, from_pairs

_HEADER = "CMAP 1"
_INT = re.compile(r"(0|[1-9][0-9]*)\Z")


def _parse_int(tok: str, what: str) -> int:
    if not _INT.match(tok):
        raise FormatError(f"malformed {what}: {tok!r}")
    return int(tok)


def dumps(m: Map) -> str:
    lines = [_HEADER, f"E {m.edges}", f"I {m.isolated}"]
    lines.extend(f"A1 {a} {b}" for a, b in m.alpha1_pairs())
    return "\n".join(lines) + "\n"


def loads(text: str) -> Map:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3:
        raise FormatError("truncated CMAP input")
    if lines[0] != _HEADER:
        raise FormatError(f"bad header: {lines[0]!r}")
    em = re.fullmatch(r"E (0|[1-9][0-9]*)", lines[1])
    if not em:
        raise FormatError(f"bad edge line: {lines[1]!r}")
    im = re.fullmatch(r"I (0|[1-9][0-9]*)", lines[2])
    if not im:
        raise FormatError(f"bad isolated line: {lines[2]!r}")
    edges = int(em.group(1))
    isolated = int(im.group(1))
    body = lines[3:]
    if len(body) != 2 * edges:
        raise FormatError(f"expected {2 * edges} pair lines, found {len(body)}")
    pairs = []
    prev_a = -1
    for ln in body:
        pm = re.fullmatch(r"A1 (0|[1-9][0-9]*) (0|[1-9][0-9]*)", ln)
        if not pm:
            raise FormatError(f"bad pair line: {ln!r}")
        a, b = int(pm.group(1)), int(pm.group(2))
        if a >= b:
            raise FormatError(f"pair not increasing: {ln!r}")
        if a <= prev_a:
            raise FormatError(f"pair lines not sorted at: {ln!r}")
        prev_a = a
        pairs.append((a, b))
    try:
        return from_pairs(edges, pairs, isolated)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def to_json_obj(m: Map) -> dict:
    return {
        "format": "cmap-1",
        "edges": m.edges,
        "isolated": m.isolated,
        "alpha1": [[a, b] for a, b in m.alpha1_pairs()],
    }


def dumps_json(m: Map) -> str:
    return json.dumps(to_json_obj(m), separators=(",", ":"), sort_keys=False)


def from_json_obj(obj) -> Map:
    if not isinstance(obj, dict):
        raise FormatError("JSON payload must be an object")
    if obj.get("format") != "cmap-1":
        raise FormatError(f"bad format tag: {obj.get('format')!r}")
    if set(obj) != {"format", "edges", "isolated", "alpha1"}:
        raise FormatError(f"unexpected keys: {sorted(obj)}")
    edges, isolated, pairs = obj["edges"], obj["isolated"], obj["alpha1"]
    if not isinstance(edges, int) or not isinstance(isolated, int):
        raise FormatError("edges and isolated must be integers")
    if not isinstance(pairs, list) or len(pairs) != 2 * edges:
        raise FormatError("alpha1 must list exactly 2*edges pairs")
    prev_a = -1
    clean = []
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p)):
            raise FormatError(f"bad pair entry: {p!r}")
        a, b = p
        if a >= b or a <= prev_a:
            raise FormatError(f"pair ordering violated at: {p!r}")
        prev_a = a
        clean.append((a, b))
    try:
        return from_pairs(edges, clean, isolated)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def loads_json(text: str) -> Map:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_json_obj(obj)


def read_path(path: str) -> Map:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if path.endswith(".json"):
        return loads_json(text)
    return loads(text)


def write_path(path: str, m: Map) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_json(m) + "\n" if path.endswith(".json") else dumps(m))
