"""The homomorphism order on cores: construction, reduction, export.

Nodes are the cores of a catalog, deduplicated up to isomorphism; the order
is homomorphism existence, antisymmetric on cores.  The export keeps the
covering relations (transitive reduction) plus invariant summaries, in a
byte-stable DOT and JSON form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cmapio import to_json_obj
from .cores import core
from .homs import hom_exists
from .mapmodel import Map, canonical_key, canonical_map, invariants


@dataclass(frozen=True)
class PosetExport:
    nodes: tuple  # canonical core maps
    bundles: tuple  # InvariantBundle per node
    leq: tuple  # full order matrix: leq[i][j] iff node i -> node j
    covers: tuple  # transitive reduction edges (i, j)


def build_core_poset(catalog) -> PosetExport:
    """Cores of the catalog members, ordered by homomorphism existence."""
    nodes = {}
    for m in catalog:
        c, _h = core(m)
        key = canonical_key(c)
        if key not in nodes:
            nodes[key] = canonical_map(c)
    ordered = sorted(nodes.values(), key=lambda x: (x.edges, x.alpha1, x.isolated))
    n = len(ordered)
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                leq[i][j] = True
            else:
                leq[i][j] = hom_exists(ordered[i], ordered[j]) is not None
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise AssertionError("distinct cores compare both ways")
    covers = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if any(k not in (i, j) and leq[i][k] and leq[k][j] for k in range(n)):
                continue
            covers.append((i, j))
    return PosetExport(
        tuple(ordered),
        tuple(invariants(x) for x in ordered),
        tuple(tuple(row) for row in leq),
        tuple(covers),
    )


def is_connected_poset(p: PosetExport) -> bool:
    n = len(p.nodes)
    if n <= 1:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for y in range(n):
            if y not in seen and (p.leq[x][y] or p.leq[y][x]):
                seen.add(y)
                frontier.append(y)
    return len(seen) == n


def interval(p: PosetExport, i: int, j: int) -> list:
    """Cores between node i and node j inclusive (empty if incomparable)."""
    if not p.leq[i][j]:
        return []
    return [k for k in range(len(p.nodes)) if p.leq[i][k] and p.leq[k][j]]


def export_dot(p: PosetExport) -> str:
    lines = ["digraph cores {"]
    for i, b in enumerate(p.bundles):
        lines.append(f'  n{i} [label="n{i} v={b.v},e={b.e},sg={b.sg}"];')
    for i, j in p.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(p: PosetExport) -> str:
    obj = {
        "nodes": [
            {
                "id": i,
                "v": b.v,
                "e": b.e,
                "f": b.f,
                "k": b.k,
                "sg": b.sg,
                "cmap": to_json_obj(m),
            }
            for i, (m, b) in enumerate(zip(p.nodes, p.bundles))
        ],
        "covers": [list(c) for c in p.covers],
    }
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"
