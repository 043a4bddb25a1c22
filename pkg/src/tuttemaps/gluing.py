"""Riffling and the four derived operations.

Riffling two crosses conjugates the stored involution by their transposition.
Under the right incidence conditions this realises vertex gluing (merge two
vertices, preserving genus and orientability), vertex splitting (its
inverse), and together with edge splitting / duplicate-edge gluing it
generates every map homomorphism in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EdgeOutOfRange,
    IneligibleGluing,
    NotCoincidentVertex,
    NotDuplicate,
    SameCross,
)
from .edgeops import delete, cross_map_after_delete
from .mapmodel import Map, cells, components, edge_of, phi


def riffle(m: Map, a: int, b: int) -> Map:
    """Conjugate the vertex-joining involution by the transposition (a b).

    Riffling the same pair twice returns the original map, and riffling
    ``(alpha1 a, alpha1 b)`` produces the same map as riffling ``(a, b)``.
    """
    n = 4 * m.edges
    if not (0 <= a < n):
        raise EdgeOutOfRange(a)
    if not (0 <= b < n):
        raise EdgeOutOfRange(b)
    if a == b:
        raise SameCross(a)

    def t(c):
        return b if c == a else a if c == b else c

    img = tuple(t(m.alpha1[t(c)]) for c in range(n))
    return Map(m.edges, img, m.isolated)


SAME_FACE_DISTINCT_VERTICES = "same-face-distinct-vertices"
DIFFERENT_COMPONENTS = "different-components"
ISOLATED_VERTEX_CASE = "isolated-vertex"
INELIGIBLE = "ineligible"


@dataclass(frozen=True)
class GluingEligibility:
    verdict: str
    reason: str = ""

    def __bool__(self):
        return self.verdict != INELIGIBLE


def gluing_eligibility(m: Map, a: int, b: int) -> GluingEligibility:
    """Whether riffling (a, b) is a genus-preserving vertex gluing.

    Eligible when the crosses sit on distinct vertices and share a face
    cycle, or when they lie in different connected components.  Sharing a
    face means the same forward cycle of the face permutation, not merely the
    same face pair; callers wanting the conjugate cycle riffle
    ``(alpha1 a, alpha1 b)`` instead.
    """
    n = 4 * m.edges
    if a == b or not (0 <= a < n) or not (0 <= b < n):
        return GluingEligibility(INELIGIBLE, "same-cross" if a == b else "out-of-range")
    cs = cells(m)
    comp = components(m)
    if comp.cross_component[a] != comp.cross_component[b]:
        return GluingEligibility(DIFFERENT_COMPONENTS)
    if cs.vertex_id[a] == cs.vertex_id[b]:
        return GluingEligibility(INELIGIBLE, "same-vertex")
    if cs.face_cycle[a] != cs.face_cycle[b]:
        return GluingEligibility(INELIGIBLE, "no-common-face-cycle")
    return GluingEligibility(SAME_FACE_DISTINCT_VERTICES)


def glue_vertices(m: Map, a: int, b: int) -> Map:
    """Glue the vertices of ``a`` and ``b``; signed genus is preserved.

    Through a shared face the face splits in two; across components the two
    faces merge.  Either way the vertex count drops by one.
    """
    el = gluing_eligibility(m, a, b)
    if not el:
        raise IneligibleGluing(el.reason)
    return riffle(m, a, b)


def delete_isolated_vertex(m: Map) -> Map:
    """Glue one isolated vertex onto another vertex, i.e. delete it.

    Isolated vertices are indistinguishable, so no index is needed; a partner
    vertex must exist.
    """
    if m.isolated < 1:
        raise IneligibleGluing("no isolated vertex")
    if m.edges == 0 and m.isolated < 2:
        raise IneligibleGluing("no partner vertex to glue with")
    return Map(m.edges, m.alpha1, m.isolated - 1)


# ---------------------------------------------------------------------------
# Duplicate edges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DuplicatePair:
    """Two distinct edges bounding a common face of degree two."""

    e: int
    f: int
    witness: int  # cross a with phi(a) on the other edge of the 2-face


def duplicate_pairs(m: Map) -> list:
    """All duplicate pairs, each with its least witness cross."""
    out = []
    for face in cells(m).faces:
        if face.degree != 2:
            continue
        a, b = face.forward
        if edge_of(a) == edge_of(b):
            continue
        out.append(DuplicatePair(min(edge_of(a), edge_of(b)), max(edge_of(a), edge_of(b)), a))
    return out


def is_duplicate_witness(m: Map, a: int) -> bool:
    n = 4 * m.edges
    if not (0 <= a < n):
        return False
    b = phi(m, a)
    return b != a and phi(m, b) == a and edge_of(a) != edge_of(b)


def glue_duplicate(m: Map, a: int):
    """Glue the duplicate pair witnessed by ``a``; the witness edge is kept.

    Returns ``(map, cross_map)`` where ``cross_map`` sends every cross of the
    input onto a cross of the output: crosses of the removed edge fold onto
    the kept edge, all others just follow the renumbering.  The result equals
    deleting the other edge of the pair, and the signed genus is unchanged.
    """
    if not is_duplicate_witness(m, a):
        raise NotDuplicate(a)
    b = phi(m, a)
    f = edge_of(b)
    out = delete(m, f)
    rn = cross_map_after_delete(m.edges, [f])
    cmap = {}
    for c in range(4 * m.edges):
        if edge_of(c) == f:
            cmap[c] = rn[a ^ 3 ^ (c ^ b)]
        else:
            cmap[c] = rn[c]
    return out, cmap


def split_edge(m: Map, e: int) -> Map:
    """Split ``e`` into two edges bounding a new face of degree two.

    The new edge takes index ``m.edges`` and crosses ``4m .. 4m+3``; the
    crosses ``4e+2, 4e+3`` of the split edge move onto it.  Gluing the new
    degree-two face back (witness ``4e+2``) restores the map exactly.
    """
    if not (0 <= e < m.edges):
        raise EdgeOutOfRange(e)
    n = 4 * m.edges

    def o2n(c):
        if c == 4 * e + 2:
            return n
        if c == 4 * e + 3:
            return n + 1
        return c

    img = [0] * (n + 4)
    for c in range(n):
        img[o2n(c)] = o2n(m.alpha1[c])
    img[4 * e + 2] = n + 2
    img[n + 2] = 4 * e + 2
    img[4 * e + 3] = n + 3
    img[n + 3] = 4 * e + 3
    return Map(m.edges + 1, tuple(img), m.isolated)


def split_edge_cross_map(m: Map, e: int) -> dict:
    """Old cross -> new cross under :func:`split_edge` (old crosses only)."""
    n = 4 * m.edges
    out = {c: c for c in range(n)}
    out[4 * e + 2] = n
    out[4 * e + 3] = n + 1
    return out


def split_vertex(m: Map, a: int, b: int) -> Map:
    """Split the vertex that ``a`` and ``b`` are coincident with.

    Requires the two crosses on one cycle of a common vertex.  When they
    front distinct faces the component count and signed genus survive; when
    they front one face the split either disconnects (signed genus kept) or
    lowers the Euler genus by two.
    """
    n = 4 * m.edges
    if a == b or not (0 <= a < n) or not (0 <= b < n):
        raise NotCoincidentVertex(a, b)
    cs = cells(m)
    if cs.vertex_cycle[a] != cs.vertex_cycle[b]:
        raise NotCoincidentVertex(a, b)
    return riffle(m, a, b)
