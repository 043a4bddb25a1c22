"""Map homomorphisms: gluing sequences, search, restriction, composition.

An epimorphism folds a map onto an image by vertex gluings followed by
duplicate-edge gluings (any interleaved sequence reorders into this normal
form); a monomorphism embeds a map as a submap; a homomorphism is an
epimorphism onto a submap of the target followed by that embedding.  All of
it is confined to a fixed signed genus.

Search is exhaustive and memoised on canonical forms: complete at desk
scale, deterministic, and with no heuristic shortcuts.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import EndpointMismatch, SgMismatch, StepIneligible
from .edgeops import (
    SubmapSpec,
    apply_submap,
    cross_map_after_delete,
    enumerate_submaps,
)
from .gluing import (
    delete_isolated_vertex,
    duplicate_pairs,
    glue_duplicate,
    glue_vertices,
    gluing_eligibility,
    is_duplicate_witness,
    riffle,
)
from .mapmodel import (
    Map,
    canonical_key,
    cells,
    components,
    edge_of,
    invariants,
    isomorphism_witness,
    phi,
    signed_genus,
    tau,
    vertex_count,
)


@dataclass(frozen=True)
class VertexGlue:
    a: int
    b: int

    def line(self):
        return f"GV {self.a} {self.b}"


@dataclass(frozen=True)
class IsolatedDelete:
    v: int = 0

    def line(self):
        return f"ID {self.v}"


@dataclass(frozen=True)
class DuplicateGlue:
    a: int

    def line(self):
        return f"GE {self.a}"


def parse_step(line: str):
    parts = line.split()
    if parts and parts[0] == "GV" and len(parts) == 3:
        return VertexGlue(int(parts[1]), int(parts[2]))
    if parts and parts[0] == "ID" and len(parts) == 2:
        return IsolatedDelete(int(parts[1]))
    if parts and parts[0] == "GE" and len(parts) == 2:
        return DuplicateGlue(int(parts[1]))
    raise StepIneligible(-1, f"unparseable step line: {line!r}")


@dataclass(frozen=True)
class ApplyResult:
    image: Map
    cross_map: tuple  # source cross -> image cross
    edge_origin: tuple  # image edge -> source edge
    glued_pairs: tuple  # (kept source edge, removed source edge) per GE step


def apply_epimorphism(m: Map, steps) -> ApplyResult:
    """Fold ``m`` by the step sequence, checking eligibility at each step.

    Step coordinates refer to the evolving map: vertex gluings never relabel
    crosses, duplicate gluings renumber the surviving edges downward.
    """
    w = m
    cmap = list(range(4 * m.edges))
    origin = list(range(m.edges))
    glued = []
    for i, st in enumerate(steps):
        if isinstance(st, VertexGlue):
            el = gluing_eligibility(w, st.a, st.b)
            if not el:
                raise StepIneligible(i, el.reason)
            w = riffle(w, st.a, st.b)
        elif isinstance(st, IsolatedDelete):
            if w.isolated < 1:
                raise StepIneligible(i, "no isolated vertex")
            if w.edges == 0 and w.isolated < 2:
                raise StepIneligible(i, "no partner vertex")
            w = delete_isolated_vertex(w)
        elif isinstance(st, DuplicateGlue):
            if not is_duplicate_witness(w, st.a):
                raise StepIneligible(i, "not a duplicate witness")
            kept = edge_of(st.a)
            removed = edge_of(phi(w, st.a))
            glued.append((origin[kept], origin[removed]))
            w, gm = glue_duplicate(w, st.a)
            cmap = [gm[c] for c in cmap]
            origin = [o for e, o in enumerate(origin) if e != removed]
        else:
            raise StepIneligible(i, f"unknown step {st!r}")
    return ApplyResult(w, tuple(cmap), tuple(origin), tuple(glued))


@dataclass(frozen=True)
class Epimorphism:
    source: Map
    steps: tuple
    target: Map
    target_iso: tuple  # image cross -> target cross

    def witness_lines(self):
        return [s.line() for s in self.steps]


@dataclass(frozen=True)
class Monomorphism:
    source: Map
    target: Map
    spec: SubmapSpec
    embedding: tuple  # source cross -> target cross


@dataclass(frozen=True)
class Homomorphism:
    epi: Epimorphism
    mono: Monomorphism

    @property
    def source(self) -> Map:
        return self.epi.source

    @property
    def target(self) -> Map:
        return self.mono.target

    @property
    def image(self) -> Map:
        return self.epi.target

    @functools.cached_property
    def cross_map(self) -> tuple:
        """Total function: source crosses to target crosses."""
        res = apply_epimorphism(self.epi.source, self.epi.steps)
        out = []
        for c in range(4 * self.epi.source.edges):
            out.append(self.mono.embedding[self.epi.target_iso[res.cross_map[c]]])
        return tuple(out)

    def vertex_map(self) -> dict:
        """Source vertex index -> target vertex index (isolated ones pooled)."""
        src, dst = self.source, self.target
        out = {}
        for v, pair in enumerate(cells(src).vertices):
            out[v] = cells(dst).vertex_id[self.cross_map[pair.forward[0]]]
        nv = len(cells(src).vertices)
        for v in range(nv, nv + src.isolated):
            out[v] = 0
        return out

    def edge_map(self) -> dict:
        return {
            e: edge_of(self.cross_map[4 * e]) for e in range(self.source.edges)
        }


def _move_pairs(m: Map):
    """Eligible vertex-gluing riffles, one per pair of equivalent riffles."""
    n = 4 * m.edges
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            alt = tuple(sorted((m.alpha1[a], m.alpha1[b])))
            if alt < (a, b):
                continue
            if gluing_eligibility(m, a, b):
                out.append((a, b))
    return out


def _dup_witnesses(m: Map):
    return [p.witness for p in duplicate_pairs(m)]


def find_epimorphism(m: Map, n: Map):
    """Search for a fold of ``m`` isomorphic to ``n``.

    Depth-first over vertex gluings (vertex count must land exactly), then
    over duplicate-edge gluings; states are collapsed by canonical form, so
    the search is complete for its size.  Returns ``None`` when no
    epimorphism exists.
    """
    if signed_genus(m) != signed_genus(n):
        return None
    target_key = canonical_key(n)
    vn, en, kn = vertex_count(n), n.edges, components(n).count
    seen_v = set()
    seen_d = set()

    def dup_phase(state, steps):
        if state.edges == en:
            if canonical_key(state) == target_key:
                return list(steps)
            return None
        if state.edges < en:
            return None
        for wit in _dup_witnesses(state):
            child, _ = glue_duplicate(state, wit)
            key = canonical_key(child)
            if key in seen_d:
                continue
            seen_d.add(key)
            got = dup_phase(child, steps + [DuplicateGlue(wit)])
            if got is not None:
                return got
        return None

    def search(state, steps):
        sv = vertex_count(state)
        if sv == vn and components(state).count == kn and state.isolated == n.isolated:
            got = dup_phase(state, steps)
            if got is not None:
                return got
        if sv <= vn or components(state).count < kn or state.edges < en:
            return None
        for a, b in _move_pairs(state):
            child = glue_vertices(state, a, b)
            key = canonical_key(child)
            if key in seen_v:
                continue
            seen_v.add(key)
            got = search(child, steps + [VertexGlue(a, b)])
            if got is not None:
                return got
        if state.isolated >= 1 and vertex_count(state) >= 2:
            child = delete_isolated_vertex(state)
            key = canonical_key(child)
            if key not in seen_v:
                seen_v.add(key)
                got = search(child, steps + [IsolatedDelete(0)])
                if got is not None:
                    return got
        return None

    steps = search(m, [])
    if steps is None:
        return None
    res = apply_epimorphism(m, steps)
    iso = isomorphism_witness(res.image, n)
    if iso is None:
        raise AssertionError("search returned a non-matching fold")
    return Epimorphism(m, tuple(steps), n, tuple(iso))


def submap_standalone(m: Map, spec: SubmapSpec):
    """The submap as its own map plus the embedding back into ``m``."""
    sub = apply_submap(m, spec)
    cm = cross_map_after_delete(m.edges, spec.deleted_edges)
    back = [0] * (4 * sub.edges)
    for old, new in cm.items():
        back[new] = old
    return sub, tuple(back)


def find_monomorphism(n: Map, mp: Map):
    """Embed ``n`` as a submap of ``mp``: exhaustive scan with profile pruning."""
    want = (vertex_count(n), n.edges, components(n).count, canonical_key(n))
    for spec, sub in enumerate_submaps(mp):
        if (vertex_count(sub), sub.edges, components(sub).count) != want[:3]:
            continue
        if canonical_key(sub) != want[3]:
            continue
        sub_map, back = submap_standalone(mp, spec)
        w = isomorphism_witness(n, sub_map)
        if w is None:
            raise AssertionError("canonical keys matched but no witness found")
        emb = tuple(back[w[c]] for c in range(4 * n.edges))
        return Monomorphism(n, mp, spec, emb)
    return None


def candidate_images(m: Map, mp: Map):
    """Submaps of ``mp`` that could be the image of a homomorphism from ``m``.

    Same signed genus, and no more vertices, edges or components than ``m``;
    deduplicated up to isomorphism, largest first so the identity-like
    candidates are tried before deep folds.
    """
    bm = invariants(m)
    seen = set()
    cands = []
    for spec, sub in enumerate_submaps(mp, require_sg=False):
        bs = invariants(sub)
        if bs.sg != bm.sg or bs.v > bm.v or bs.e > bm.e or bs.k > bm.k:
            continue
        key = canonical_key(sub)
        if key in seen:
            continue
        seen.add(key)
        cands.append((bs.v, bs.e, key, spec, sub))
    cands.sort(key=lambda t: (-t[0], -t[1], t[2], t[3].deleted_edges, t[3].deleted_vertices))
    for _, _, _, spec, sub in cands:
        yield spec, sub


def hom_exists(m: Map, mp: Map):
    """A homomorphism ``m -> mp`` or ``None``; complete at desk scale."""
    if signed_genus(m) != signed_genus(mp):
        return None
    for spec, sub in candidate_images(m, mp):
        sub_map, back = submap_standalone(mp, spec)
        epi = find_epimorphism(m, sub_map)
        if epi is None:
            continue
        mono = Monomorphism(sub_map, mp, spec, back)
        return Homomorphism(epi, mono)
    return None


def identity_hom(m: Map) -> Homomorphism:
    ident = tuple(range(4 * m.edges))
    epi = Epimorphism(m, (), m, ident)
    mono = Monomorphism(m, m, SubmapSpec((), ()), ident)
    return Homomorphism(epi, mono)


def induces_graph_hom(h: Homomorphism) -> bool:
    """Do the derived vertex and edge functions preserve incidences."""
    src, dst = h.source, h.target
    vm = h.vertex_map()
    em = h.edge_map()
    cs, cd = cells(src), cells(dst)
    for e in range(src.edges):
        ends = (cs.vertex_id[4 * e], cs.vertex_id[4 * e + 1])
        ends_img = (cd.vertex_id[4 * em[e]], cd.vertex_id[4 * em[e] + 1])
        if {vm[x] for x in ends} != set(ends_img):
            return False
    return True


# ---------------------------------------------------------------------------
# Restriction and composition
# ---------------------------------------------------------------------------


def _advance_to_surviving(m: Map, c: int, banned: frozenset):
    """Least tau-power of ``c`` on a surviving edge, or None if the whole
    vertex cycle sits on deleted edges."""
    x = c
    for _ in range(4 * m.edges):
        if edge_of(x) not in banned:
            return x
        x = tau(m, x)
        if x == c:
            return None
    return None


def restrict_hom(h: Homomorphism, spec: SubmapSpec) -> Homomorphism:
    """Restrict ``h`` to the submap of its source given by ``spec``.

    The submap must have the same signed genus as the source (the very
    reason restriction works); otherwise ``SgMismatch`` is raised.  Vertex
    gluings are translated by advancing each cross with the source's vertex
    permutation until it survives; duplicate gluings touching deleted edges
    are dropped, the rest are replayed on the matching surviving edges.
    """
    m = h.source
    n_map, back = submap_standalone(m, spec)
    if signed_genus(n_map) != signed_genus(m):
        raise SgMismatch("restriction target changes the signed genus")
    banned = frozenset(spec.deleted_edges)
    ren = cross_map_after_delete(m.edges, spec.deleted_edges)
    origin_pairs = apply_epimorphism(m, h.epi.steps).glued_pairs
    new_steps = []
    gi = 0
    seen_ge = False
    w_orig = m  # the fold replayed alongside: advances use the current state
    for st in h.epi.steps:
        if isinstance(st, (VertexGlue, IsolatedDelete)) and seen_ge:
            raise StepIneligible(gi, "steps are not in vertex-first normal form")
        if isinstance(st, DuplicateGlue):
            seen_ge = True
        if isinstance(st, VertexGlue):
            a = _advance_to_surviving(w_orig, st.a, banned)
            b = _advance_to_surviving(w_orig, st.b, banned)
            if a is not None and b is not None:
                new_steps.append(VertexGlue(ren[a], ren[b]))
            else:
                new_steps.append(IsolatedDelete(0))
            w_orig = riffle(w_orig, st.a, st.b)
        elif isinstance(st, IsolatedDelete):
            new_steps.append(st)
            w_orig = delete_isolated_vertex(w_orig)
        elif isinstance(st, DuplicateGlue):
            kept, removed = origin_pairs[gi]
            gi += 1
            w_orig, _ = glue_duplicate(w_orig, st.a)
            if kept in banned or removed in banned:
                continue
            new_steps.append(("GE-origin", kept, removed))
    # replay with checking, resolving origin-tagged duplicate gluings and
    # skipping isolated deletions that have no vertex left to delete
    w = n_map
    cross_trace = list(range(4 * n_map.edges))  # submap cross -> current cross
    origin = sorted(set(range(m.edges)) - banned)
    final_steps = []
    for st in new_steps:
        if isinstance(st, tuple) and st[0] == "GE-origin":
            _, kept, removed = st
            wit = None
            for p in duplicate_pairs(w):
                oe, of = origin[p.e], origin[p.f]
                if {oe, of} == {kept, removed}:
                    wit = p.witness if origin[edge_of(p.witness)] == kept else phi(w, p.witness)
                    break
            if wit is None:
                raise StepIneligible(len(final_steps), "restricted duplicate pair vanished")
            removed_now = edge_of(phi(w, wit))
            w, gm = glue_duplicate(w, wit)
            cross_trace = [gm[x] for x in cross_trace]
            origin = [o for e, o in enumerate(origin) if e != removed_now]
            final_steps.append(DuplicateGlue(wit))
        elif isinstance(st, IsolatedDelete):
            if w.isolated >= 1 and vertex_count(w) >= 2:
                w = delete_isolated_vertex(w)
                final_steps.append(st)
        else:
            el = gluing_eligibility(w, st.a, st.b)
            if not el:
                raise StepIneligible(len(final_steps), el.reason)
            w = riffle(w, st.a, st.b)
            final_steps.append(st)
    mono = _embedding_from_fold(w, cross_trace, back, h) or find_monomorphism(
        w, h.target
    )
    if mono is None:
        raise AssertionError("restricted image does not embed in the target")
    epi = Epimorphism(n_map, tuple(final_steps), mono.source, tuple(range(4 * w.edges)))
    return Homomorphism(epi, mono)


def _embedding_from_fold(w: Map, cross_trace, back, h: Homomorphism):
    """Embedding of the restricted image that agrees with ``h``.

    Every image cross descends from a submap cross; pushing that cross
    through the original homomorphism gives its target position.  The result
    is used only when it is a genuine embedding (the theory says it is; a
    caller falls back to a fresh search otherwise).
    """
    target = h.target
    hmap = h.cross_map
    emb = [-1] * (4 * w.edges)
    for n_cross, img in enumerate(cross_trace):
        cand = hmap[back[n_cross]]
        if emb[img] not in (-1, cand):
            return None
        emb[img] = cand
    if -1 in emb or len(set(emb)) != len(emb):
        return None
    for c in range(4 * w.edges):
        if emb[c ^ 1] != emb[c] ^ 1 or emb[c ^ 2] != emb[c] ^ 2:
            return None
    image_edges = {edge_of(x) for x in emb}
    deleted = tuple(sorted(set(range(target.edges)) - image_edges))
    base = apply_submap(target, SubmapSpec(deleted, ()))
    drop = base.isolated - w.isolated
    if drop < 0:
        return None
    cs_t = cells(target)
    hit_vertices = {cs_t.vertex_id[x] for x in emb}
    stray = [
        v
        for v, pair in enumerate(cs_t.vertices)
        if v not in hit_vertices
        and all(edge_of(c) in set(deleted) for c in pair.forward)
    ]
    stray += list(range(len(cs_t.vertices), len(cs_t.vertices) + target.isolated))[
        : max(0, drop - len(stray))
    ]
    if len(stray) < drop:
        return None
    spec = SubmapSpec(deleted, tuple(stray[:drop]))
    sub, sub_back = submap_standalone(target, spec)
    ren = {old: new for new, old in enumerate(sub_back)}
    try:
        iso = [ren[x] for x in emb]
    except KeyError:
        return None
    # the embedding must be an isomorphism onto the submap, whose joining
    # involution is the spliced one (not the raw restriction of the target's)
    for c in range(4 * w.edges):
        if iso[w.alpha1[c]] != sub.alpha1[iso[c]]:
            return None
    if w.isolated != sub.isolated:
        return None
    return Monomorphism(w, target, spec, tuple(emb))


def transport_steps(steps, orig_start: Map, new_start: Map, iso):
    """Carry a step sequence across an isomorphism of its starting map.

    ``iso`` sends crosses of ``orig_start`` (the map the steps were written
    for) to crosses of ``new_start``.  Both runs are replayed side by side so
    the bijection survives the relabelling done by duplicate gluings.
    """
    w_orig, w_new = orig_start, new_start
    cur = list(iso)
    out = []
    for st in steps:
        if isinstance(st, VertexGlue):
            ns = VertexGlue(cur[st.a], cur[st.b])
            w_orig = riffle(w_orig, st.a, st.b)
            w_new = riffle(w_new, ns.a, ns.b)
            out.append(ns)
        elif isinstance(st, IsolatedDelete):
            w_orig = delete_isolated_vertex(w_orig)
            w_new = delete_isolated_vertex(w_new)
            out.append(st)
        elif isinstance(st, DuplicateGlue):
            wit = cur[st.a]
            if not is_duplicate_witness(w_new, wit):
                raise StepIneligible(len(out), "transported witness invalid")
            w_orig, gmo = glue_duplicate(w_orig, st.a)
            w_new, gmn = glue_duplicate(w_new, wit)
            nxt = [-1] * (4 * w_orig.edges)
            for x, y in gmo.items():
                img = gmn[cur[x]]
                if nxt[y] not in (-1, img):
                    raise AssertionError("transported fold is inconsistent")
                nxt[y] = img
            cur = nxt
            out.append(DuplicateGlue(wit))
        else:
            raise StepIneligible(len(out), f"unknown step {st!r}")
    return out, w_new


def compose_homs(h: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """Composite homomorphism ``h2 . h`` with concatenated gluing steps.

    The second map's fold is restricted to the image of the first, then
    transported onto that image and appended.
    """
    if h.target != h2.source:
        raise EndpointMismatch("middle maps differ")
    r = restrict_hom(h2, h.mono.spec)
    sub_map, _back = submap_standalone(h.target, h.mono.spec)
    if r.epi.source != sub_map:
        raise AssertionError("restriction source is not the extracted submap")
    # the transported steps continue from the fold of h's own steps, whose
    # labels differ from the stated image by the epimorphism witness
    fold = apply_epimorphism(h.source, h.epi.steps).image
    iso_fold_to_sub = isomorphism_witness(fold, sub_map)
    if iso_fold_to_sub is None:
        raise AssertionError("image of h does not match its monomorphism")
    inv = [0] * len(iso_fold_to_sub)
    for c, l in enumerate(iso_fold_to_sub):
        inv[l] = c
    moved, _final = transport_steps(r.epi.steps, sub_map, fold, inv)
    total = tuple(h.epi.steps) + tuple(moved)
    res = apply_epimorphism(h.source, total)
    iso = isomorphism_witness(res.image, r.epi.target)
    if iso is None:
        raise AssertionError("composite fold does not match the restricted image")
    epi = Epimorphism(h.source, total, r.epi.target, tuple(iso))
    return Homomorphism(epi, r.mono)


# ---------------------------------------------------------------------------
# Inverse closure: every map mapping into a target
# ---------------------------------------------------------------------------


def maps_mapping_into(target: Map, max_edges: int):
    """All connected maps with at most ``max_edges`` edges admitting a
    homomorphism into ``target``, up to isomorphism.

    Closure of the same-genus connected submaps of ``target`` under the
    inverses of the gluing moves: edge splitting and genus-preserving,
    connectivity-preserving vertex splitting.  Any connected map with a
    homomorphism into ``target`` folds onto such a submap through
    intermediate maps that never exceed its own vertex and edge counts, so
    the closure is complete for the stated bound.
    """
    from .gluing import split_edge
    from .mapmodel import canonical_map

    seeds = {}
    for _spec, sub in enumerate_submaps(target, require_sg=True):
        if components(sub).count != 1 or sub.edges > max_edges:
            continue
        cm = canonical_map(sub)
        seeds[canonical_key(sub)] = cm
    frontier = list(seeds.values())
    seen = set(seeds.keys())
    out = dict(seeds)
    while frontier:
        cur = frontier.pop()
        children = []
        if cur.edges < max_edges:
            for e in range(cur.edges):
                children.append(split_edge(cur, e))
        csc = cells(cur)
        inv = invariants(cur)
        n = 4 * cur.edges
        for a in range(n):
            for b in range(a + 1, n):
                if csc.vertex_cycle[a] != csc.vertex_cycle[b]:
                    continue
                child = riffle(cur, a, b)
                ci = invariants(child)
                if ci.k != inv.k or ci.sg != inv.sg:
                    continue
                children.append(child)
        for child in children:
            key = canonical_key(child)
            if key in seen:
                continue
            seen.add(key)
            cm = canonical_map(child)
            out[key] = cm
            frontier.append(cm)
    return sorted(out.values(), key=lambda x: (x.edges, x.alpha1, x.isolated))
