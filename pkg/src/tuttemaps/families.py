"""Named map families and exhaustive small-map enumeration.

Families: plane cycles, bouquets from a vertex-cycle signature, the unitary
one-vertex-one-face normal forms per signed genus, the theta maps with two
subdividing paths, and the antichain gadget chains built from a fixed plane
block.  Enumeration produces one representative per isomorphism class of
maps with a given edge count, optionally filtered by signed genus and
connectivity; the labelled search is split on the partner of cross 0 and can
fan out over processes capped by ``TUTTEMAPS_THREADS``.
"""

from __future__ import annotations

import functools
import itertools
import multiprocessing
import os
import random

from .errors import BadSpec, SizeBoundExceeded
from .mapmodel import (
    Map,
    _bfs_signature,
    canonical_key,
    canonical_map,
    cells,
    from_pairs,
    signed_genus,
)

ENUMERATION_BOUND = 4  # (4m-1)!! labelled involutions; 2 027 025 at m=4


def point_map() -> Map:
    """The edgeless map on one vertex."""
    return Map(0, (), 1)


def _map_from_forward_cycles(edges: int, cycles) -> Map:
    """Map whose vertex permutation has the given forward cycles.

    Each forward cycle must pick exactly one cross per conjugate slot; the
    conjugate cycles are implied, and the joining involution is recovered as
    ``tau . alpha2``.
    """
    n = 4 * edges
    t = [-1] * n
    for cyc in cycles:
        for i, c in enumerate(cyc):
            t[c] = cyc[(i + 1) % len(cyc)]
        conj = [c ^ 2 for c in reversed(cyc)]
        for i, c in enumerate(conj):
            t[c] = conj[(i + 1) % len(conj)]
    if any(x < 0 for x in t):
        raise BadSpec("forward cycles do not cover the cross set")
    return Map(edges, tuple(t[c ^ 2] for c in range(n)))


def cycle_map(n: int) -> Map:
    """The plane cycle with ``n`` vertices and ``n`` edges (a loop at n=1)."""
    if n < 1:
        raise BadSpec("cycle length must be at least 1")
    pairs = []
    for i in range(n):
        j = (i - 1) % n
        pairs.append((4 * j + 1, 4 * i))
        pairs.append((4 * j + 3, 4 * i + 2))
    return from_pairs(n, pairs)


def bouquet(visits, twisted=()) -> Map:
    """One-vertex map from its vertex-cycle signature.

    ``visits`` lists loop indices in rotational order, each exactly twice;
    loops in ``twisted`` reenter through the edge-flipped cross, the others
    through the doubly flipped one.  The signature determines the map
    completely.
    """
    visits = list(visits)
    m = len(visits) // 2
    seen = {}
    order = []
    for v in visits:
        seen[v] = seen.get(v, 0) + 1
        if v not in order:
            order.append(v)
    if sorted(order) != list(range(m)) or any(c != 2 for c in seen.values()):
        raise BadSpec("each loop index must appear exactly twice, contiguously numbered")
    twisted = set(twisted)
    cyc = []
    first = set()
    for v in visits:
        if v not in first:
            first.add(v)
            cyc.append(4 * v)
        else:
            cyc.append(4 * v + 1 if v in twisted else 4 * v + 3)
    return _map_from_forward_cycles(m, [cyc])


def canonical_orientable(g: int) -> Map:
    """The unitary map of genus ``g`` in the orientable surface.

    One vertex, ``2g`` edges, one face; the vertex cycle assembles the loop
    pairs of each handle interlaced.  ``g = 0`` is the single vertex.
    """
    if g < 0:
        raise BadSpec("genus must be non-negative")
    if g == 0:
        return point_map()
    visits = []
    for h in range(g):
        visits.extend([2 * h, 2 * h + 1, 2 * h, 2 * h + 1])
    return bouquet(visits)


def canonical_nonorientable(g: int) -> Map:
    """The unitary map of non-orientable genus ``g``: ``g`` crosscaps."""
    if g < 1:
        raise BadSpec("non-orientable genus must be at least 1")
    visits = []
    for h in range(g):
        visits.extend([h, h])
    return bouquet(visits, twisted=range(g))


def map_from_rotations(rotations) -> Map:
    """Orientable map from a rotation system.

    ``rotations`` lists, per vertex, the cyclic order of its edge ends as
    ``(edge, end)`` pairs with ``end`` 0 or 1; every edge contributes both
    ends.  End 0 enters on cross ``4e``, end 1 on ``4e+3``, which keeps one
    orientation class consistent, so the construction cannot produce twisted
    loops.
    """
    ends = [(e, s) for rot in rotations for (e, s) in rot]
    edges = len(ends) // 2
    if sorted(ends) != sorted((e, s) for e in range(edges) for s in (0, 1)):
        raise BadSpec("rotation system must list each edge end exactly once")
    cycles = []
    for rot in rotations:
        cycles.append(tuple(4 * e if s == 0 else 4 * e + 3 for (e, s) in rot))
    return _map_from_forward_cycles(edges, cycles)


def theta_map(i: int, j: int) -> Map:
    """Plane 4-cycle with an inner path of length ``i`` and an outer path of
    length ``j`` joining opposite corners; faces come in degrees ``i+2`` and
    ``j+2``, twice each."""
    if i < 1 or j < 1:
        raise BadSpec("path lengths must be at least 1")
    # vertices: 0..3 the square corners a,b,c,d; then i-1 inner, j-1 outer
    ring = [(0, 0), (1, 0), (2, 0), (3, 0)]  # a-b, b-c, c-d, d-a
    p_edges = [4 + t for t in range(i)]  # a .. c through the inner path
    q_edges = [4 + i + t for t in range(j)]  # b .. d through the outer path
    rot = {
        0: [(0, 0), (p_edges[0], 0), (3, 1)],
        1: [(1, 0), (0, 1), (q_edges[0], 0)],
        2: [(2, 0), (p_edges[-1], 1), (1, 1)],
        3: [(3, 0), (2, 1), (q_edges[-1], 1)],
    }
    rotations = [rot[v] for v in range(4)]
    for t in range(i - 1):
        rotations.append([(p_edges[t], 1), (p_edges[t + 1], 0)])
    for t in range(j - 1):
        rotations.append([(q_edges[t], 1), (q_edges[t + 1], 0)])
    m = map_from_rotations(rotations)
    degs = sorted(f.degree for f in cells(m).faces)
    if degs != sorted([i + 2, i + 2, j + 2, j + 2]) or signed_genus(m) != 0:
        raise AssertionError(f"theta construction broke: faces {degs}")
    return m


# ---------------------------------------------------------------------------
# Antichain gadgets
# ---------------------------------------------------------------------------


def _u_block_rotations(k: int):
    """Rotation system of the plane block: a (6k-3)-cycle with a hub joined
    to three equally spaced rim vertices.  Returns (rotations, u, v) with the
    anchor vertices: u on the rim at a spoke, v halfway along one arc."""
    ln = 3 * (2 * k - 1)
    rim = [(t, 0) for t in range(ln)]  # edge t: rim vertex t -> t+1
    spokes = {0: ln, 2 * k - 1: ln + 1, 2 * (2 * k - 1): ln + 2}
    rotations = []
    for t in range(ln):
        r = [(t, 0), ((t - 1) % ln, 1)]
        if t in spokes:
            r.insert(1, (spokes[t], 0))
        rotations.append(r)
    rotations.append([(ln, 1), (ln + 1, 1), (ln + 2, 1)])  # hub
    u = 0
    v = (2 * k - 1) + (k - 1)
    return rotations, u, v


def u_block(k: int) -> Map:
    """The plane antichain block for odd girth ``2k+1``; all faces odd."""
    if k < 3 or k % 2 == 0:
        raise BadSpec("block parameter must be odd and at least 3")
    rotations, _u, _v = _u_block_rotations(k)
    m = map_from_rotations(rotations)
    if signed_genus(m) != 0 or any(f.degree % 2 == 0 for f in cells(m).faces):
        raise AssertionError("block construction broke")
    return m


def _chain_rotations(k: int, n_copies: int, flipped: set, close: bool):
    """Chain (or ring) of blocks glued anchor-to-anchor.

    A flipped copy represents a reversed edge of the direction pattern: its
    anchors swap (head on the left), which in the closed ring turns its
    off-arc bulge to the other side of the circle.  Rotations are kept as
    drawn; swapping anchors alone realises the reflection relative to the
    neighbours.
    """
    base, u, v = _u_block_rotations(k)
    nv = len(base)
    ne = 3 * (2 * k - 1) + 3
    rotations = []
    vid = {}  # (copy, local vertex) -> global vertex
    for t in range(n_copies):
        flip = t in flipped
        left_local = v if flip else u
        for lv in range(nv):
            key = (t, lv)
            if lv == left_local and t > 0:
                prev_right = (t - 1, (u if (t - 1) in flipped else v))
                vid[key] = vid[prev_right]
            elif lv == left_local and t == 0 and close:
                vid[key] = None  # resolved after the loop
            else:
                vid[key] = len(rotations)
                rotations.append([])
    first_left = (0, (v if 0 in flipped else u))
    last_right = (n_copies - 1, (u if (n_copies - 1) in flipped else v))
    if close:
        vid[first_left] = vid[last_right]
    for t in range(n_copies):
        for lv in range(nv):
            shifted = [(e + ne * t, s) for (e, s) in base[lv]]
            rotations[vid[(t, lv)]].extend(shifted)
    return rotations, vid


def antichain_gadget(n: int, k: int):
    """The common target ``B`` and the antichain members ``A_1 .. A_n``.

    Each member is a chain of ``n + 4`` blocks, all facing one way except
    the ``i+2``-nd; the target is the closed ring of ``n + 4`` blocks with
    one block facing inward.  For even ``n`` every face of the ring has odd
    degree, and one vertex gluing of a chain's free anchors lands exactly on
    the ring.
    """
    if n < 2 or n % 2:
        raise BadSpec("the family size must be even and at least 2")
    if k < 3 or k % 2 == 0:
        raise BadSpec("block parameter must be odd and at least 3")
    copies = n + 4
    rot_b, _ = _chain_rotations(k, copies, {2}, close=True)
    b = map_from_rotations(rot_b)
    if any(f.degree % 2 == 0 for f in cells(b).faces):
        raise AssertionError("ring construction broke: an even face appeared")
    members = []
    for i in range(1, n + 1):
        rot_a, _ = _chain_rotations(k, copies, {i + 1}, close=False)
        members.append(map_from_rotations(rot_a))
    return b, members


def chain_anchor_crosses(k: int, n_copies: int, flipped: set):
    """Crosses at the two free anchors of an open chain, for gluing tests."""
    rotations, vid = _chain_rotations(k, n_copies, flipped, close=False)
    m = map_from_rotations(rotations)
    base, u, v = _u_block_rotations(k)
    first_left = vid[(0, (v if 0 in flipped else u))]
    last_right = vid[(n_copies - 1, (u if (n_copies - 1) in flipped else v))]
    cs = cells(m)
    crosses_left = [c for c in range(4 * m.edges) if cs.vertex_id[c] == first_left]
    crosses_right = [c for c in range(4 * m.edges) if cs.vertex_id[c] == last_right]
    return m, crosses_left, crosses_right


def odd_girth(m: Map):
    """Odd girth of the underlying graph, or None if bipartite."""
    cs = cells(m)
    nv = len(cs.vertices)
    adj = [[] for _ in range(nv)]
    for e in range(m.edges):
        a, b = cs.vertex_id[4 * e], cs.vertex_id[4 * e + 1]
        adj[a].append(b)
        adj[b].append(a)
    best = None
    for s in range(nv):
        dist = {(s, 0): 0}
        frontier = [(s, 0)]
        while frontier:
            nxt = []
            for (x, p) in frontier:
                for y in adj[x]:
                    st = (y, p ^ 1)
                    if st not in dist:
                        dist[st] = dist[(x, p)] + 1
                        nxt.append(st)
            frontier = nxt
        if (s, 1) in dist:
            cand = dist[(s, 1)]
            if best is None or cand < best:
                best = cand
    return best


# ---------------------------------------------------------------------------
# Enumeration of all small maps up to isomorphism
# ---------------------------------------------------------------------------


def _involutions(n: int, first_partner: int = None):
    """Fixed-point-free involutions on ``range(n)`` as image lists.

    Pairs the smallest unpaired element with every available partner; when
    ``first_partner`` is given, the partner of 0 is pinned (used to split the
    scan into independent chunks).
    """
    buf = [-1] * n

    def rec(lo):
        i = lo
        while i < n and buf[i] != -1:
            i += 1
        if i == n:
            yield buf
            return
        for j in range(i + 1, n):
            if buf[j] == -1:
                buf[i] = j
                buf[j] = i
                yield from rec(i + 1)
                buf[i] = -1
                buf[j] = -1

    if n == 0:
        yield buf
        return
    if first_partner is None:
        yield from rec(0)
    else:
        buf[0] = first_partner
        buf[first_partner] = 0
        yield from rec(1)


def _quick_connected(alpha1, m: int) -> bool:
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in range(4 * m):
        a, b = find(c >> 2), find(alpha1[c] >> 2)
        if a != b:
            parent[b] = a
    return sum(1 for x in range(m) if find(x) == x) == 1


def _quick_sg(alpha1, m: int):
    """(signed genus, connected) computed from a raw involution list."""
    n = 4 * m
    tau = [alpha1[c ^ 2] for c in range(n)]
    phi = [alpha1[c ^ 1] for c in range(n)]

    def ncycles(perm):
        seen = bytearray(n)
        cnt = 0
        for c in range(n):
            if seen[c]:
                continue
            cnt += 1
            x = c
            while not seen[x]:
                seen[x] = 1
                x = perm[x]
        return cnt

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for c in range(n):
        union(c, c ^ 1)
        union(c, c ^ 2)
        union(c, alpha1[c])
    comp_roots = {find(c) for c in range(n)}
    k = len(comp_roots)
    parent2 = list(range(n))

    def find2(x):
        while parent2[x] != x:
            parent2[x] = parent2[parent2[x]]
            x = parent2[x]
        return x

    for c in range(n):
        a, b = find2(c), find2(c ^ 3)
        if a != b:
            parent2[b] = a
        a, b = find2(c), find2(tau[c])
        if a != b:
            parent2[b] = a
    orient_roots = {}
    for c in range(n):
        orient_roots.setdefault(find(c), set()).add(find2(c))
    v = ncycles(tau) // 2
    f = ncycles(phi) // 2
    chi = v - m + f
    eg = 2 * k - chi
    o = min(len(s) for s in orient_roots.values())
    sg = eg // 2 if o == 2 else -eg
    return sg, k == 1


def _canonical_raw(alpha1, m: int):
    """Canonical alpha1 pair tuple for a connected raw involution."""
    best = None
    for s in range(4 * m):
        sig, _ = _bfs_signature(tuple(alpha1), s)
        if best is None or sig < best:
            best = sig
    return best


def _scan_chunk(args):
    m, first_partner, sg_filter, connected_only = args
    found = {}
    for alpha1 in _involutions(4 * m, first_partner):
        if connected_only and not _quick_connected(alpha1, m):
            continue
        sg, conn = _quick_sg(alpha1, m)
        if sg_filter is not None and sg != sg_filter:
            continue
        if connected_only:
            key = _canonical_raw(alpha1, m)
        else:
            key = tuple(canonical_map(Map(m, tuple(alpha1), 0)).alpha1_pairs())
        if key not in found:
            found[key] = True
    return sorted(found.keys())


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("TUTTEMAPS_THREADS", "1")))
    except ValueError:
        return 1


@functools.lru_cache(maxsize=64)
def enumerate_maps(m: int, sg: int = None, connected_only: bool = False) -> tuple:
    """One representative per isomorphism class of ``m``-edge maps.

    Edge-bearing maps carry no isolated vertices; ``m = 0`` yields the point
    map (when the filters admit it).  Classes come back canonically labelled
    in a fixed order.  The labelled scan is exhaustive over all
    ``(4m-1)!!`` fixed-point-free involutions, so ``m`` is capped.
    """
    if m > ENUMERATION_BOUND:
        raise SizeBoundExceeded(f"enumeration capped at {ENUMERATION_BOUND} edges")
    if m == 0:
        pm = point_map()
        if (sg is None or sg == 0):
            return (pm,)
        return ()
    chunks = [(m, j, sg, connected_only) for j in range(1, 4 * m)]
    nw = worker_count()
    if nw > 1 and m >= 3:
        with multiprocessing.Pool(nw) as pool:
            results = pool.map(_scan_chunk, chunks)
    else:
        results = [_scan_chunk(c) for c in chunks]
    keys = set()
    for r in results:
        keys.update(tuple(k) for k in r)
    if connected_only:
        canon = [canonical_map(from_pairs(m, list(k))) for k in sorted(keys)]
    else:
        canon = [from_pairs(m, list(k)) for k in sorted(keys)]
    canon.sort(key=lambda x: (x.alpha1, x.isolated))
    return tuple(canon)


def catalog(max_edges: int, sg: int = None, connected_only: bool = False) -> tuple:
    """Classes with at most ``max_edges`` edges (point map included)."""
    out = []
    for m in range(0, max_edges + 1):
        out.extend(enumerate_maps(m, sg, connected_only))
    return tuple(out)


def random_connected_maps(m: int, count: int, seed: int) -> list:
    """Deterministic sample of connected ``m``-edge maps (may repeat classes)."""
    rng = random.Random(seed)
    out = []
    n = 4 * m
    while len(out) < count:
        crosses = list(range(n))
        rng.shuffle(crosses)
        img = [0] * n
        for i in range(0, n, 2):
            a, b = crosses[i], crosses[i + 1]
            img[a] = b
            img[b] = a
        if _quick_connected(img, m):
            out.append(Map(m, tuple(img), 0))
    return out


def bouquet_signatures(m: int):
    """All one-vertex maps with ``m`` loops, up to isomorphism."""
    positions = list(range(2 * m))
    seen = {}

    def pairings(avail):
        if not avail:
            yield []
            return
        a = avail[0]
        for idx in range(1, len(avail)):
            b = avail[idx]
            rest = avail[1:idx] + avail[idx + 1 :]
            for more in pairings(rest):
                yield [(a, b)] + more

    for pairing in pairings(positions):
        for twist_mask in range(2 ** m):
            visits = [0] * (2 * m)
            for li, (a, b) in enumerate(pairing):
                visits[a] = visits[b] = li
            twisted = {li for li in range(m) if twist_mask >> li & 1}
            bq = bouquet(visits, twisted)
            key = canonical_key(bq)
            if key not in seen:
                seen[key] = canonical_map(bq)
    return sorted(seen.values(), key=lambda x: (x.edges, x.alpha1))
