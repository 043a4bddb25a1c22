"""Core representation of combinatorial maps.

A map on a closed surface is encoded by three fixed-point-free involutions
acting on the set of *crosses* (quarter-edges).  Two of the involutions are
frozen into a standard frame so that a map is determined by a single
involution plus an isolated-vertex count:

* edge ``i`` owns the four crosses ``4i .. 4i+3``;
* ``alpha0`` flips a cross along its edge and pairs ``(4i, 4i+1)`` and
  ``(4i+2, 4i+3)`` -- in code simply ``c ^ 1``;
* ``alpha2`` flips a cross across its edge and pairs ``(4i, 4i+2)`` and
  ``(4i+1, 4i+3)`` -- in code ``c ^ 2``;
* ``alpha1`` joins consecutive edge ends around vertices and is the stored
  data.

With that convention ``alpha0`` and ``alpha2`` commute by construction and
every map is isomorphic to one in standard frame, so nothing is lost.  Each
edge appears in the edge permutation as the transposition pair
``(4i, 4i+3)(4i+1, 4i+2)``.

The vertex permutation is ``tau = alpha1 . alpha2`` and the face permutation
is ``phi = alpha1 . alpha0`` (composition right to left).  Vertices and faces
are *pairs* of mutually inverse cycles of those permutations; the two cycles
of a pair traverse the same cell in opposite directions.

Maps are immutable hashable values; all operations in this package are pure
functions returning fresh maps, so values can be shared freely between
workers.  Derived structure (cycles, components, invariants, canonical forms)
is memoised per map value.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

from .errors import DuplicatePair, FixedPoint, NotInvolution, OutOfRange


def alpha0(c: int) -> int:
    """Flip a cross along its edge (standard frame)."""
    return c ^ 1


def alpha2(c: int) -> int:
    """Flip a cross across its edge (standard frame)."""
    return c ^ 2


def edge_of(c: int) -> int:
    """Edge owning cross ``c``."""
    return c >> 2


@dataclass(frozen=True)
class Map:
    """A combinatorial map in standard frame.

    ``alpha1`` is stored as an image tuple: ``alpha1[c]`` is the cross paired
    with ``c``.  ``isolated`` counts vertices with no incident edge; they
    contribute a pair of empty cycles to both the vertex and face
    permutations.
    """

    edges: int
    alpha1: tuple
    isolated: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha1", tuple(self.alpha1))
        validate(self)

    @property
    def n_crosses(self) -> int:
        return 4 * self.edges

    def alpha1_pairs(self) -> list:
        """The involution as sorted pairs ``(a, b)`` with ``a < b``."""
        return [(c, self.alpha1[c]) for c in range(self.n_crosses) if c < self.alpha1[c]]

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Map(e={self.edges}, a1={self.alpha1_pairs()}, i={self.isolated})"


def validate(m: Map) -> Map:
    """Check the map axioms, raising a specific error on the first violation."""
    n = 4 * m.edges
    if m.edges < 0 or m.isolated < 0:
        raise OutOfRange(-1)
    if len(m.alpha1) != n:
        raise OutOfRange(len(m.alpha1))
    for c in range(n):
        t = m.alpha1[c]
        if not isinstance(t, int) or t < 0 or t >= n:
            raise OutOfRange(c)
        if t == c:
            raise FixedPoint(c)
    for c in range(n):
        if m.alpha1[m.alpha1[c]] != c:
            raise NotInvolution(c)
    return m


def from_pairs(edges: int, pairs, isolated: int = 0) -> Map:
    """Build a map from an unordered pair list for ``alpha1``."""
    n = 4 * edges
    img = [-1] * n
    for a, b in pairs:
        if not (0 <= a < n) or not (0 <= b < n):
            raise OutOfRange(a if not (0 <= a < n) else b)
        if a == b:
            raise FixedPoint(a)
        if img[a] != -1:
            raise DuplicatePair(a)
        if img[b] != -1:
            raise DuplicatePair(b)
        img[a] = b
        img[b] = a
    for c in range(n):
        if img[c] == -1:
            raise OutOfRange(c)
    return Map(edges, tuple(img), isolated)


# ---------------------------------------------------------------------------
# Derived permutations and cells
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=65536)
def tau_tuple(m: Map) -> tuple:
    """Vertex permutation ``tau = alpha1 . alpha2`` as an image tuple."""
    a1 = m.alpha1
    return tuple(a1[c ^ 2] for c in range(4 * m.edges))


@functools.lru_cache(maxsize=65536)
def phi_tuple(m: Map) -> tuple:
    """Face permutation ``phi = alpha1 . alpha0`` as an image tuple."""
    a1 = m.alpha1
    return tuple(a1[c ^ 1] for c in range(4 * m.edges))


def tau(m: Map, c: int) -> int:
    return m.alpha1[c ^ 2]


def phi(m: Map, c: int) -> int:
    return m.alpha1[c ^ 1]


def _cycles(perm: tuple) -> list:
    seen = [False] * len(perm)
    out = []
    for c in range(len(perm)):
        if seen[c]:
            continue
        cyc = [c]
        seen[c] = True
        t = perm[c]
        while t != c:
            cyc.append(t)
            seen[t] = True
            t = perm[t]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class CyclePair:
    """A cell as a pair of mutually inverse cross cycles.

    For a vertex the backward cycle is ``alpha2`` applied to the reversed
    forward cycle; for a face it is ``alpha0`` applied to the reversed forward
    cycle.  The degree of the cell is the forward length.
    """

    forward: tuple
    backward: tuple

    @property
    def degree(self) -> int:
        return len(self.forward)


def _pair_cycles(cycles: list, conj) -> list:
    """Group cycles of a vertex/face permutation into conjugate pairs."""
    index = {}
    for i, cyc in enumerate(cycles):
        for c in cyc:
            index[c] = i
    paired = [False] * len(cycles)
    pairs = []
    for i, cyc in enumerate(cycles):
        if paired[i]:
            continue
        j = index[conj(cyc[0])]
        if i == j or paired[j]:
            # cannot happen for a valid involution triple; see tests
            raise AssertionError("cell cycles failed to pair up")
        paired[i] = paired[j] = True
        both = cyc + cycles[j]
        start = min(both)
        fwd = cyc if start in cyc else cycles[j]
        k = fwd.index(start)
        fwd = fwd[k:] + fwd[:k]
        back = tuple(conj(x) for x in reversed(fwd))
        pairs.append(CyclePair(fwd, back))
    pairs.sort(key=lambda p: p.forward[0])
    return pairs


@dataclass(frozen=True)
class Cells:
    vertices: tuple
    edge_cells: tuple
    faces: tuple
    vertex_id: tuple  # cross -> vertex index
    face_id: tuple  # cross -> face index
    vertex_cycle: tuple  # cross -> id of its single tau-cycle
    face_cycle: tuple  # cross -> id of its single phi-cycle


@functools.lru_cache(maxsize=16384)
def cells(m: Map) -> Cells:
    """Vertices, edges and faces of ``m`` as conjugate cycle pairs.

    Isolated vertices are not listed (they carry no crosses); their count is
    ``m.isolated`` and they add empty cycle pairs to both permutations.
    """
    n = 4 * m.edges
    vparts = _pair_cycles(_cycles(tau_tuple(m)), alpha2)
    fparts = _pair_cycles(_cycles(phi_tuple(m)), alpha0)
    edge_cells = tuple(
        CyclePair((4 * i, 4 * i + 3), (4 * i + 1, 4 * i + 2)) for i in range(m.edges)
    )
    vid = [-1] * n
    fid = [-1] * n
    vcyc = [-1] * n
    fcyc = [-1] * n
    for i, p in enumerate(vparts):
        for c in p.forward:
            vid[c] = i
            vcyc[c] = 2 * i
        for c in p.backward:
            vid[c] = i
            vcyc[c] = 2 * i + 1
    for i, p in enumerate(fparts):
        for c in p.forward:
            fid[c] = i
            fcyc[c] = 2 * i
        for c in p.backward:
            fid[c] = i
            fcyc[c] = 2 * i + 1
    return Cells(
        tuple(vparts), edge_cells, tuple(fparts),
        tuple(vid), tuple(fid), tuple(vcyc), tuple(fcyc),
    )


def vertex_count(m: Map) -> int:
    return len(cells(m).vertices) + m.isolated


def face_count(m: Map) -> int:
    return len(cells(m).faces) + m.isolated


# ---------------------------------------------------------------------------
# Components and orientability
# ---------------------------------------------------------------------------


class _DSU:
    __slots__ = ("p",)

    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[rb] = ra


@dataclass(frozen=True)
class Components:
    count: int  # including isolated vertices
    cross_component: tuple  # cross -> component index (edge-bearing only)
    crosses: tuple  # per edge-bearing component, tuple of its crosses


@functools.lru_cache(maxsize=16384)
def components(m: Map) -> Components:
    """Orbits of the group generated by the three involutions.

    Every isolated vertex is its own component and is counted but carries no
    crosses.
    """
    n = 4 * m.edges
    dsu = _DSU(n)
    a1 = m.alpha1
    for c in range(n):
        dsu.union(c, c ^ 1)
        dsu.union(c, c ^ 2)
        dsu.union(c, a1[c])
    roots = {}
    comp = [-1] * n
    groups = []
    for c in range(n):
        r = dsu.find(c)
        if r not in roots:
            roots[r] = len(groups)
            groups.append([])
        comp[c] = roots[r]
        groups[roots[r]].append(c)
    return Components(len(groups) + m.isolated, tuple(comp), tuple(tuple(g) for g in groups))


@functools.lru_cache(maxsize=16384)
def component_orientability(m: Map) -> tuple:
    """Per edge-bearing component: 2 if orientable, 1 if not.

    The value is the number of orbits of the group generated by
    ``alpha0.alpha2`` and the vertex permutation on the component's crosses.
    """
    n = 4 * m.edges
    comp = components(m)
    dsu = _DSU(n)
    t = tau_tuple(m)
    for c in range(n):
        dsu.union(c, c ^ 3)
        dsu.union(c, t[c])
    orbit_roots = [set() for _ in comp.crosses]
    for c in range(n):
        orbit_roots[comp.cross_component[c]].add(dsu.find(c))
    out = []
    for s in orbit_roots:
        if len(s) not in (1, 2):
            raise AssertionError("orientation orbit count must be 1 or 2")
        out.append(len(s))
    return tuple(out)


def orientability(m: Map) -> int:
    """Overall orientability: minimum over components; edgeless parts give 2."""
    per = component_orientability(m)
    vals = list(per)
    if m.isolated:
        vals.append(2)
    return min(vals) if vals else 2


@dataclass(frozen=True)
class InvariantBundle:
    v: int
    e: int
    f: int
    k: int
    chi: int
    eg: int
    o: int
    g: int
    sg: int

    def as_tuple(self):
        return (self.v, self.e, self.f, self.k, self.chi, self.eg, self.o, self.g, self.sg)


def _bundle(v, e, f, k, o):
    chi = v - e + f
    eg = 2 * k - chi
    if eg < 0:
        raise AssertionError("euler genus must be non-negative")
    if o == 2:
        if eg % 2:
            raise AssertionError("orientable map with odd euler genus")
        g = eg // 2
    else:
        g = eg
    sg = (2 * o - 3) * g
    return InvariantBundle(v, e, f, k, chi, eg, o, g, sg)


@functools.lru_cache(maxsize=65536)
def invariants(m: Map) -> InvariantBundle:
    """Counts, Euler characteristic, Euler genus, orientability, signed genus."""
    cs = cells(m)
    return _bundle(
        len(cs.vertices) + m.isolated,
        m.edges,
        len(cs.faces) + m.isolated,
        components(m).count,
        orientability(m),
    )


@functools.lru_cache(maxsize=16384)
def component_invariants(m: Map) -> tuple:
    """InvariantBundle per component: edge-bearing ones first, then isolated."""
    cs = cells(m)
    comp = components(m)
    per_o = component_orientability(m)
    out = []
    for i, crosses in enumerate(comp.crosses):
        vset = {cs.vertex_id[c] for c in crosses}
        fset = {cs.face_id[c] for c in crosses}
        eset = {edge_of(c) for c in crosses}
        out.append(_bundle(len(vset), len(eset), len(fset), 1, per_o[i]))
    for _ in range(m.isolated):
        out.append(_bundle(1, 0, 1, 1, 2))
    return tuple(out)


def signed_genus(m: Map) -> int:
    return invariants(m).sg


def is_plane(m: Map) -> bool:
    """Every component embeds in the sphere."""
    return invariants(m).eg == 0


def is_connected(m: Map) -> bool:
    return components(m).count == 1


# ---------------------------------------------------------------------------
# Duality and relabelling
# ---------------------------------------------------------------------------

_DUAL_OFFSET = (0, 2, 1, 3)


def _dual_cross(c: int) -> int:
    return (c & ~3) | _DUAL_OFFSET[c & 3]


def dual(m: Map) -> Map:
    """Geometric dual: swap the roles of ``alpha0`` and ``alpha2``.

    Re-expressed in standard frame by the in-block relabelling that exchanges
    the two frame involutions.  Edge indices are preserved; vertices and faces
    swap, so does the number of each, while the signed genus is unchanged.
    """
    n = 4 * m.edges
    img = [0] * n
    a1 = m.alpha1
    for c in range(n):
        img[_dual_cross(c)] = _dual_cross(a1[c])
    return Map(m.edges, tuple(img), m.isolated)


def relabel(m: Map, beta) -> Map:
    """Apply a frame-respecting cross bijection ``beta`` (cross -> cross)."""
    n = 4 * m.edges
    img = [0] * n
    for c in range(n):
        img[beta[c]] = beta[m.alpha1[c]]
    return Map(m.edges, tuple(img), m.isolated)


def frame_relabelling(edge_perm, masks) -> list:
    """Cross bijection from an edge permutation and per-edge frame masks.

    A bijection commutes with both frame involutions exactly when it sends
    edge blocks to edge blocks and acts inside a block as XOR by a mask in
    ``{0,1,2,3}``.
    """
    beta = [0] * (4 * len(edge_perm))
    for i, j in enumerate(edge_perm):
        r = masks[i]
        for x in range(4):
            beta[4 * i + x] = 4 * j + (x ^ r)
    return beta


def random_frame_relabelling(edges: int, rng: random.Random) -> list:
    perm = list(range(edges))
    rng.shuffle(perm)
    masks = [rng.randrange(4) for _ in range(edges)]
    return frame_relabelling(perm, masks)


# ---------------------------------------------------------------------------
# Canonical form and isomorphism
# ---------------------------------------------------------------------------


def _bfs_signature(alpha1: tuple, start: int):
    """Deterministic frame-respecting relabelling of ``start``'s component.

    Breadth-first over the generators in the fixed order (alpha0, alpha2,
    alpha1): each newly reached cross opens the next edge block and its three
    frame partners take the remaining block slots.  Returns the relabelled
    pair list of the component and the label map.
    """
    labels = {}
    order = []

    def open_block(c):
        base = 4 * (len(labels) // 4)
        for x in range(4):
            labels[c ^ x] = base + x
            order.append(c ^ x)

    open_block(start)
    qi = 0
    while qi < len(order):
        c = order[qi]
        qi += 1
        t = alpha1[c]
        if t not in labels:
            open_block(t)
    sig = sorted(
        (labels[c], labels[alpha1[c]]) for c in labels if labels[c] < labels[alpha1[c]]
    )
    return tuple(sig), labels


@functools.lru_cache(maxsize=65536)
def _canonical(m: Map):
    comp = components(m)
    best = []
    for crosses in comp.crosses:
        sig_best = None
        lab_best = None
        for s in crosses:
            sig, lab = _bfs_signature(m.alpha1, s)
            if sig_best is None or sig < sig_best:
                sig_best, lab_best = sig, lab
        best.append((len(crosses) // 4, sig_best, lab_best))
    best.sort(key=lambda t: (t[0], t[1]))
    beta = [0] * (4 * m.edges)
    pairs = []
    offset = 0
    for ne, sig, lab in best:
        for c, l in lab.items():
            beta[c] = l + 4 * offset
        pairs.extend((a + 4 * offset, b + 4 * offset) for a, b in sig)
        offset += ne
    canon = from_pairs(m.edges, pairs, m.isolated)
    return canon, tuple(beta)


def canonical_form(m: Map):
    """Canonically labelled copy of ``m`` plus the relabelling used.

    The output is invariant under every frame-respecting relabelling, so two
    maps are isomorphic exactly when their canonical forms (and isolated
    counts) coincide.
    """
    return _canonical(m)


def canonical_map(m: Map) -> Map:
    return _canonical(m)[0]


def canonical_key(m: Map):
    c = _canonical(m)[0]
    return (c.edges, c.alpha1, c.isolated)


def isomorphic(m1: Map, m2: Map) -> bool:
    return canonical_key(m1) == canonical_key(m2)


def isomorphism_witness(m1: Map, m2: Map):
    """A cross bijection commuting with all three involutions, or ``None``."""
    c1, b1 = _canonical(m1)
    c2, b2 = _canonical(m2)
    if (c1, m1.isolated) != (c2, m2.isolated):
        return None
    inv2 = [0] * len(b2)
    for c, l in enumerate(b2):
        inv2[l] = c
    return tuple(inv2[b1[c]] for c in range(4 * m1.edges))


# Frequently used example maps (smallest one-edge maps).

def plane_link() -> Map:
    """One edge joining two distinct vertices, embedded in the sphere."""
    return from_pairs(1, [(0, 2), (1, 3)])


def plane_loop() -> Map:
    """One non-twisted loop in the sphere."""
    return from_pairs(1, [(0, 1), (2, 3)])


def twisted_loop() -> Map:
    """One twisted loop: the projective-plane embedding."""
    return from_pairs(1, [(0, 3), (1, 2)])
