"""Deletion, contraction, submaps and the eleven-way edge classification.

An edge is a link / non-twisted loop / twisted loop according to how its
crosses sit in the vertex permutation; the dual type is read the same way
from the face permutation.  Bridges and dual bridges (the connectivity
refinements) give eleven combinations in total, which is exactly the
information needed to track the Euler characteristic, Euler genus and
orientability through deletion and contraction.

Contraction is implemented through duality -- ``M/e`` is the dual of
``(dual M) \\ e`` -- so deletion is the only hand-written rewrite and the
face-permutation table becomes a test oracle instead of a second code path.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import EdgeOutOfRange, VertexNotIsolatedAfterDeletion
from .mapmodel import (
    Map,
    cells,
    components,
    dual,
    edge_of,
    signed_genus,
    tau_tuple,
)

LINK = "link"
NONTWISTED_LOOP = "non-twisted-loop"
TWISTED_LOOP = "twisted-loop"
DUAL_LINK = "dual-link"
DUAL_NONTWISTED_LOOP = "dual-non-twisted-loop"
DUAL_TWISTED_LOOP = "dual-twisted-loop"


@dataclass(frozen=True)
class EdgeType:
    primal: str
    dual_type: str
    is_bridge: bool
    is_dual_bridge: bool

    def label(self) -> str:
        s = f"{self.primal}/{self.dual_type}"
        if self.is_bridge:
            s += " bridge"
        if self.is_dual_bridge:
            s += " dual-bridge"
        return s


def _primal_type(m: Map, e: int) -> str:
    cs = cells(m)
    c = 4 * e
    if cs.vertex_id[c] != cs.vertex_id[c ^ 1]:
        return LINK
    if cs.vertex_cycle[c] == cs.vertex_cycle[c ^ 1]:
        return TWISTED_LOOP
    return NONTWISTED_LOOP


def _dual_type(m: Map, e: int) -> str:
    cs = cells(m)
    c = 4 * e
    if cs.face_id[c] != cs.face_id[c ^ 2]:
        return DUAL_LINK
    if cs.face_cycle[c] == cs.face_cycle[c ^ 2]:
        return DUAL_TWISTED_LOOP
    return DUAL_NONTWISTED_LOOP


@functools.lru_cache(maxsize=65536)
def classify_edge(m: Map, e: int) -> EdgeType:
    """Primal type, dual type, and the bridge / dual-bridge flags of ``e``.

    Bridgeness is decided by recounting components after deleting
    (respectively contracting) the edge: O(m) and trivially correct.
    """
    if not (0 <= e < m.edges):
        raise EdgeOutOfRange(e)
    et = EdgeType(
        _primal_type(m, e),
        _dual_type(m, e),
        components(delete(m, e)).count == components(m).count + 1,
        components(contract(m, e)).count == components(m).count + 1,
    )
    if et.is_bridge and not (et.primal == LINK and et.dual_type == DUAL_NONTWISTED_LOOP):
        raise AssertionError("a bridge must be a link and dual non-twisted loop")
    if et.is_dual_bridge and not (et.primal == NONTWISTED_LOOP and et.dual_type == DUAL_LINK):
        raise AssertionError("a dual bridge must be a non-twisted loop and dual link")
    return et


def _renumber_after_delete(m_edges: int, removed: frozenset):
    """Cross relabelling for surviving edges, keeping their relative order."""
    new_of_edge = {}
    j = 0
    for i in range(m_edges):
        if i not in removed:
            new_of_edge[i] = j
            j += 1
    return new_of_edge


def delete(m: Map, e: int) -> Map:
    """Remove edge ``e``: splice its crosses out of every vertex cycle.

    Vertices left with no crosses become isolated (their cycle pair turns
    empty).  Surviving edges are renumbered downward preserving order.
    """
    if not (0 <= e < m.edges):
        raise EdgeOutOfRange(e)
    return _delete_many(m, frozenset([e]))


@functools.lru_cache(maxsize=65536)
def _delete_many(m: Map, removed: frozenset) -> Map:
    n = 4 * m.edges
    gone = [False] * n
    for e in removed:
        for x in range(4):
            gone[4 * e + x] = True
    t = tau_tuple(m)
    # splice removed crosses out of tau, then recover alpha1 = tau' . alpha2
    spliced = {}
    for c in range(n):
        if gone[c]:
            continue
        nxt = t[c]
        while gone[nxt]:
            nxt = t[nxt]
        spliced[c] = nxt
    # vertices fully supported on removed edges turn into isolated vertices
    lost_cycles = 0
    seen = [False] * n
    for c in range(n):
        if not gone[c] or seen[c]:
            continue
        inside = True
        cyc = [c]
        seen[c] = True
        x = t[c]
        while x != c:
            if not gone[x]:
                inside = False
            seen[x] = True
            cyc.append(x)
            x = t[x]
        if inside:
            lost_cycles += 1
    new_of_edge = _renumber_after_delete(m.edges, removed)

    def rn(c):
        return 4 * new_of_edge[c >> 2] + (c & 3)

    img = [0] * (n - 4 * len(removed))
    for c, _ in spliced.items():
        img[rn(c)] = rn(spliced[c ^ 2])
    return Map(m.edges - len(removed), tuple(img), m.isolated + lost_cycles // 2)


def delete_edges(m: Map, edges) -> Map:
    """Delete a set of edges (order immaterial)."""
    removed = frozenset(edges)
    for e in removed:
        if not (0 <= e < m.edges):
            raise EdgeOutOfRange(e)
    if not removed:
        return m
    return _delete_many(m, removed)


def contract(m: Map, e: int) -> Map:
    """Contract ``e`` through duality: dual, delete, dual back."""
    if not (0 <= e < m.edges):
        raise EdgeOutOfRange(e)
    return dual(delete(dual(m), e))


def contract_edges(m: Map, edges) -> Map:
    return dual(delete_edges(dual(m), edges))


def surviving_edge_map(m_edges: int, removed) -> dict:
    """Old edge index -> new edge index after deleting ``removed``."""
    return _renumber_after_delete(m_edges, frozenset(removed))


def cross_map_after_delete(m_edges: int, removed) -> dict:
    """Old cross -> new cross for crosses on surviving edges."""
    ne = _renumber_after_delete(m_edges, frozenset(removed))
    out = {}
    for old, new in ne.items():
        for x in range(4):
            out[4 * old + x] = 4 * new + x
    return out


# ---------------------------------------------------------------------------
# Vertex deletion and submaps
# ---------------------------------------------------------------------------


def vertex_list(m: Map) -> list:
    """Vertex handles: edge-bearing cycle pairs first, then isolated indices."""
    cs = cells(m)
    return list(range(len(cs.vertices) + m.isolated))


def edges_at_vertex(m: Map, v: int) -> list:
    cs = cells(m)
    if v >= len(cs.vertices):
        return []
    return sorted({edge_of(c) for c in cs.vertices[v].forward + cs.vertices[v].backward})


def delete_vertex(m: Map, v: int) -> Map:
    """Delete all edges incident with ``v``, then drop the empty cycle pair."""
    cs = cells(m)
    nv = len(cs.vertices)
    if not (0 <= v < nv + m.isolated):
        raise EdgeOutOfRange(v)
    if v >= nv:
        return Map(m.edges, m.alpha1, m.isolated - 1)
    out = delete_edges(m, edges_at_vertex(m, v))
    if out.isolated < 1:
        raise AssertionError("vertex did not become isolated after deleting its edges")
    return Map(out.edges, out.alpha1, out.isolated - 1)


@dataclass(frozen=True)
class SubmapSpec:
    """Edges to delete plus vertices (of the original map) to remove after.

    The removed vertices must be isolated once the edges are gone; isolated
    vertices of the original map are addressed by indices past the
    edge-bearing vertex list.
    """

    deleted_edges: tuple
    deleted_vertices: tuple = ()


def apply_submap(m: Map, spec: SubmapSpec) -> Map:
    cs = cells(m)
    nv = len(cs.vertices)
    out = delete_edges(m, spec.deleted_edges)
    a = frozenset(spec.deleted_edges)
    drop = 0
    for v in spec.deleted_vertices:
        if not (0 <= v < nv + m.isolated):
            raise EdgeOutOfRange(v)
        if v < nv:
            if any(edge_of(c) not in a for c in cs.vertices[v].forward):
                raise VertexNotIsolatedAfterDeletion(v)
        drop += 1
    if drop > out.isolated:
        raise VertexNotIsolatedAfterDeletion(-1)
    return Map(out.edges, out.alpha1, out.isolated - drop)


def enumerate_submaps(m: Map, require_sg: bool = False):
    """All (SubmapSpec, submap) pairs, down to the empty map.

    When ``require_sg`` is set only submaps with the same signed genus as
    ``m`` are produced (deleting edges never raises the Euler genus, and the
    signed genus survives exactly when the Euler genus does).
    """
    cs = cells(m)
    nv = len(cs.vertices)
    want = signed_genus(m) if require_sg else None
    for r in range(m.edges + 1):
        for a in itertools.combinations(range(m.edges), r):
            base = delete_edges(m, a)
            aset = frozenset(a)
            iso_verts = [
                v for v in range(nv)
                if all(edge_of(c) in aset for c in cs.vertices[v].forward)
            ]
            iso_verts.extend(range(nv, nv + m.isolated))
            for s in range(len(iso_verts) + 1):
                for u in itertools.combinations(iso_verts, s):
                    sub = Map(base.edges, base.alpha1, base.isolated - s)
                    if want is not None and signed_genus(sub) != want:
                        continue
                    yield SubmapSpec(tuple(a), tuple(u)), sub
