"""Cross-circuits, cutting, and the separating / contractible / prefacial
classification.

A cross-circuit is a closed walk recorded as a pair of mutually inverse
cross cycles; it repeats no cross.  Cutting around a non-self-intersecting
circuit splits every traversed edge in order and then splits the visited
vertices by riffling, producing two new facial walks (the two banks of the
cut).  The circuit separates when the cut raises the component count, is
contractible when one bank closes off a plane piece, and is prefacial when
the piece holding the circuit is plane and the circuit-side bank traverses a
cycle of that piece's underlying graph.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import NotACircuit, NotSeparating, SelfIntersecting
from .gluing import glue_duplicate, riffle, split_edge, split_edge_cross_map
from .mapmodel import (
    Map,
    cells,
    components,
    edge_of,
    phi,
    phi_tuple,
    tau_tuple,
)


@dataclass(frozen=True)
class CrossCircuit:
    """A closed walk as its forward cross cycle.

    The conjugate cycle (the same walk backwards) is implied: it lists the
    edge partners in reverse.  Most operations below accept a plain cross
    tuple just as well.
    """

    forward: tuple

    def __post_init__(self):
        object.__setattr__(self, "forward", tuple(self.forward))

    @property
    def backward(self) -> tuple:
        return tuple(c ^ 1 for c in reversed(self.forward))

    @property
    def length(self) -> int:
        return len(self.forward)

    def __iter__(self):
        return iter(self.forward)

    def __len__(self):
        return len(self.forward)


def circuit_key(kappa):
    """Canonical representative: least rotation of the walk or its reverse.

    A circuit and its reversed conjugate (the other cycle of the pair) are
    the same walk, so both collapse to one key.
    """

    def min_rotation(seq):
        return min(seq[i:] + seq[:i] for i in range(len(seq)))

    fwd = min_rotation(tuple(kappa))
    rev = min_rotation(tuple(c ^ 1 for c in reversed(kappa)))
    return min(fwd, rev)


def validate_circuit(m: Map, kappa) -> tuple:
    """Check the closed-walk conditions and return the circuit as a tuple.

    Each step must land in the tau-orbit of the face-permutation image of
    the previous cross, and no cross may repeat among the walk's crosses and
    their edge partners (so an edge is traversed at most twice).
    """
    kappa = tuple(kappa)
    if not kappa:
        raise NotACircuit("empty circuit")
    n = 4 * m.edges
    used = set()
    for c in kappa:
        if not (0 <= c < n):
            raise NotACircuit(f"cross {c} out of range")
        if c in used or (c ^ 1) in used:
            raise NotACircuit(f"cross {c} repeated")
        used.add(c)
        used.add(c ^ 1)
    cs = cells(m)
    for i, c in enumerate(kappa):
        step = phi(m, kappa[i - 1])
        if cs.vertex_cycle[step] != cs.vertex_cycle[c]:
            raise NotACircuit(f"step {i} leaves the tau-orbit")
    return kappa


def rotation_cycle(m: Map, c: int) -> list:
    """All crosses at the vertex of ``c`` in rotational order.

    Going once around the vertex one meets, per edge end, both of its side
    crosses: the order interleaves the forward tau-cycle with its conjugate
    as ``x, alpha2 x, tau x, alpha2 tau x, ...``.
    """
    t = tau_tuple(m)
    out = []
    x = c
    while True:
        out.append(x)
        out.append(x ^ 2)
        x = t[x]
        if x == c:
            return out


def _interlace(pos: dict, p, q) -> bool:
    a, b = sorted((pos[p[0]], pos[p[1]]))
    inside = sum(1 for x in q if a < pos[x] < b)
    return inside == 1


def is_non_self_intersecting(m: Map, kappa) -> bool:
    """No two through-vertex strands of the walk cross each other.

    Each step connects the returning cross ``alpha0 c_{i-1}`` to ``c_i``
    through their common vertex; the walk is simple exactly when no two such
    chords interlace in the vertex's rotation cycle.
    """
    kappa = validate_circuit(m, kappa)
    cs = cells(m)
    by_vertex = {}
    for i in range(len(kappa)):
        pair = (kappa[i - 1] ^ 1, kappa[i])
        by_vertex.setdefault(cs.vertex_id[kappa[i]], []).append(pair)
    for pairs in by_vertex.values():
        if len(pairs) < 2:
            continue
        cyc = rotation_cycle(m, pairs[0][1])
        pos = {x: i for i, x in enumerate(cyc)}
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                if _interlace(pos, pairs[i], pairs[j]):
                    return False
    return True


@dataclass(frozen=True)
class CutResult:
    cut_map: Map
    rho: tuple  # original cross -> its position in the cut map
    kappa_lower: tuple  # facial walk along the circuit bank
    kappa_upper: tuple  # facial walk along the opposite bank
    separating: bool
    lower_crosses: frozenset  # component of the cut map holding kappa_lower
    upper_crosses: frozenset
    split_records: tuple  # (new edge index, reglue witness cross) per split


@functools.lru_cache(maxsize=16384)
def cut_around(m: Map, kappa: tuple) -> CutResult:
    """Cut ``m`` open along a non-self-intersecting circuit.

    Splits the traversed edges in order, then riffles the bank crosses
    around each visited vertex.  The component count stays or grows by one;
    when it grows the two banks lie in different components.
    """
    kappa = validate_circuit(m, kappa)
    if not is_non_self_intersecting(m, kappa):
        raise SelfIntersecting("circuit crosses itself at a vertex")
    w = m
    rho = list(range(4 * m.edges))
    records = []
    for c in kappa:
        e = edge_of(rho[c])
        cm = split_edge_cross_map(w, e)
        records.append((w.edges, 4 * e + 2))
        w = split_edge(w, e)
        rho = [cm[x] for x in rho]
    mprime = w
    ln = len(kappa)
    pairs = []
    for i in range(ln):
        ci = rho[kappa[i]]
        cnext = rho[kappa[(i + 1) % ln]]
        pairs.append(((ci ^ 1) ^ 2, mprime.alpha1[cnext ^ 2]))
    for a, b in pairs:
        w = riffle(w, a, b)
    kappa_lower = tuple(rho[c] ^ 2 for c in kappa)
    kappa_upper = tuple(mprime.alpha1[rho[c] ^ 2] for c in kappa)
    pt = phi_tuple(w)
    for seq in (kappa_lower, kappa_upper):
        for i in range(ln):
            if pt[seq[i]] != seq[(i + 1) % ln]:
                raise AssertionError("cut bank is not a facial walk")
    before = components(m).count
    comp = components(w)
    if comp.count not in (before, before + 1):
        raise AssertionError("cutting must keep or increment the component count")
    low = comp.cross_component[kappa_lower[0]]
    up = comp.cross_component[kappa_upper[0]]
    return CutResult(
        cut_map=w,
        rho=tuple(rho),
        kappa_lower=kappa_lower,
        kappa_upper=kappa_upper,
        separating=comp.count == before + 1,
        lower_crosses=frozenset(comp.crosses[low]),
        upper_crosses=frozenset(comp.crosses[up]),
        split_records=tuple(records),
    )


def reglue(m: Map, kappa) -> Map:
    """Undo a cut exactly: inverse riffles, then glue the split faces back."""
    kappa = validate_circuit(m, kappa)
    cut = cut_around(m, kappa)
    # replay the edge splits on a scratch copy to recover the riffle pairs
    scratch = m
    rho = list(range(4 * m.edges))
    for c in kappa:
        e = edge_of(rho[c])
        cm = split_edge_cross_map(scratch, e)
        scratch = split_edge(scratch, e)
        rho = [cm[x] for x in rho]
    ln = len(kappa)
    done = []
    for i in range(ln):
        ci = rho[kappa[i]]
        cnext = rho[kappa[(i + 1) % ln]]
        done.append(((ci ^ 1) ^ 2, scratch.alpha1[cnext ^ 2]))
    v = cut.cut_map
    for a, b in reversed(done):
        v = riffle(v, a, b)
    if v != scratch:
        raise AssertionError("inverse riffles did not restore the split map")
    for new_edge, witness in reversed(cut.split_records):
        if v.edges - 1 != new_edge:
            raise AssertionError("split records out of order")
        v, _ = glue_duplicate(v, witness)
    return v


@dataclass(frozen=True)
class CircuitClass:
    non_self_intersecting: bool
    separating: bool
    contractible: bool
    prefacial: bool

    def label(self) -> str:
        if self.prefacial:
            return "prefacial"
        if self.contractible:
            return "contractible"
        if self.separating:
            return "separating"
        return "non-separating"


def _side_euler_genus(m_cut: Map, crosses: frozenset) -> int:
    cs = cells(m_cut)
    v = len({cs.vertex_id[c] for c in crosses})
    f = len({cs.face_id[c] for c in crosses})
    e = len({edge_of(c) for c in crosses})
    return 2 - (v - e + f)


def _bank_is_graph_cycle(m_cut: Map, bank: tuple) -> bool:
    cs = cells(m_cut)
    edges = {edge_of(c) for c in bank}
    verts = {cs.vertex_id[c ^ 1] for c in bank}
    return len(edges) == len(bank) and len(verts) == len(bank)


def classify_circuit(m: Map, kappa) -> CircuitClass:
    """Separating / contractible / prefacial flags of a circuit."""
    kappa = validate_circuit(m, kappa)
    if not is_non_self_intersecting(m, kappa):
        raise SelfIntersecting("circuit crosses itself at a vertex")
    cut = cut_around(m, kappa)
    if not cut.separating:
        return CircuitClass(True, False, False, False)
    low_eg = _side_euler_genus(cut.cut_map, cut.lower_crosses)
    up_eg = _side_euler_genus(cut.cut_map, cut.upper_crosses)
    contractible = low_eg == 0 or up_eg == 0
    prefacial = low_eg == 0 and _bank_is_graph_cycle(cut.cut_map, cut.kappa_lower)
    return CircuitClass(True, True, contractible, prefacial)


def enumerate_circuits(m: Map, max_len: int = None, nss_only: bool = False):
    """All cross-circuits of ``m`` up to the length bound, one per class.

    Complete depth-first search over the step choices; a cross and its edge
    partner are consumed together so each edge is traversed at most twice.
    Circuits are deduplicated against rotation and the reversed conjugate;
    the representative yielded is the canonical key, in sorted order.

    With ``nss_only`` the search prunes as soon as two through-vertex strands
    of the partial walk cross: a crossing never disappears under extension,
    so only non-self-intersecting circuits are produced and the search stays
    polynomially small even at high vertex degrees.
    """
    n = 4 * m.edges
    bound = 2 * m.edges if max_len is None else min(max_len, 2 * m.edges)
    t = tau_tuple(m)
    cs = cells(m) if nss_only else None
    orbit_of = {}
    seen_start = [False] * n
    for c in range(n):
        if seen_start[c]:
            continue
        cyc = [c]
        x = t[c]
        while x != c:
            cyc.append(x)
            x = t[x]
        for y in cyc:
            seen_start[y] = True
            orbit_of[y] = cyc
    pos = {}
    if nss_only:
        done = set()
        for c in range(n):
            v = cs.vertex_id[c]
            if v in done:
                continue
            done.add(v)
            for i, x in enumerate(rotation_cycle(m, c)):
                pos[x] = i

    def crossing(chords, vertex, pair):
        a, b = sorted((pos[pair[0]], pos[pair[1]]))
        for q in chords.get(vertex, ()):
            inside = sum(1 for x in q if a < pos[x] < b)
            if inside == 1:
                return True
        return False

    out = set()

    def dfs(start, path, used, chords):
        step = phi(m, path[-1])
        for cand in orbit_of[step]:
            pair = (path[-1] ^ 1, cand)
            if cand == start:
                if not nss_only or not crossing(chords, cs.vertex_id[cand], pair):
                    out.add(circuit_key(tuple(path)))
            elif len(path) < bound and cand > start and cand not in used and (cand ^ 1) not in used:
                if nss_only:
                    v = cs.vertex_id[cand]
                    if crossing(chords, v, pair):
                        continue
                    chords.setdefault(v, []).append(pair)
                used.add(cand)
                path.append(cand)
                dfs(start, path, used, chords)
                path.pop()
                used.remove(cand)
                if nss_only:
                    chords[v].pop()

    for start in range(n):
        dfs(start, [start], {start}, {})
    yield from sorted(out, key=lambda k: (len(k), k))


def facial_circuits(m: Map) -> list:
    """The facial walk of each face, as a circuit (its forward cycle)."""
    return [f.forward for f in cells(m).faces]


def is_facial(m: Map, kappa) -> bool:
    key = circuit_key(tuple(kappa))
    return any(circuit_key(f) == key for f in facial_circuits(m))


def faces_contained(m: Map, kappa) -> list:
    """Faces of ``m`` that land on the circuit side of the cut.

    Only separating circuits enclose anything.  Cutting never reshapes the
    faces of ``m`` (the banks are brand-new faces), so each original face
    survives intact on one side; returned as (face index, degree) pairs.
    """
    kappa = validate_circuit(m, kappa)
    cut = cut_around(m, kappa)
    if not cut.separating:
        raise NotSeparating("circuit does not separate")
    out = []
    for i, face in enumerate(cells(m).faces):
        if cut.rho[face.forward[0]] in cut.lower_crosses:
            out.append((i, face.degree))
    return out


def side_original_crosses(m: Map, kappa, lower: bool = True) -> frozenset:
    """Crosses of ``m`` whose image lies in the chosen bank component."""
    cut = cut_around(m, tuple(kappa))
    side = cut.lower_crosses if lower else cut.upper_crosses
    return frozenset(c for c in range(4 * m.edges) if cut.rho[c] in side)


def extract_side(m: Map, kappa, lower: bool = True):
    """The bank component as a standalone map plus the cross relocation."""
    cut = cut_around(m, tuple(kappa))
    side = cut.lower_crosses if lower else cut.upper_crosses
    sub_edges = sorted({edge_of(c) for c in side})
    index = {e: i for i, e in enumerate(sub_edges)}
    remap = {c: 4 * index[edge_of(c)] + (c & 3) for c in side}
    img = [0] * (4 * len(sub_edges))
    for c in side:
        img[remap[c]] = remap[cut.cut_map.alpha1[c]]
    return Map(len(sub_edges), tuple(img), 0), remap


def circuit_precedes(m: Map, lam, mu) -> bool:
    """Enclosure order on contractible circuits of one map.

    ``lam`` precedes ``mu`` when ``lam`` still reads as a circuit inside the
    piece closed off by ``mu`` and everything inside ``lam`` lies inside
    ``mu``'s piece (the new bank faces excepted: they carry no original
    crosses).
    """
    lam = validate_circuit(m, lam)
    mu = validate_circuit(m, mu)
    side_mu = side_original_crosses(m, mu)
    if any(c not in side_mu for c in lam):
        return False
    sub, remap = extract_side(m, mu)
    cut_mu = cut_around(m, mu)
    try:
        relocated = tuple(remap[cut_mu.rho[c]] for c in lam)
        validate_circuit(sub, relocated)
    except (KeyError, NotACircuit):
        return False
    return side_original_crosses(m, lam) <= side_mu
