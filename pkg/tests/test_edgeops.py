import itertools

import pytest

from tuttemaps import (
    Map,
    cells,
    components,
    dual,
    from_pairs,
    invariants,
    isomorphic,
    plane_link,
    plane_loop,
    twisted_loop,
)
from tuttemaps.edgeops import (
    DUAL_LINK,
    DUAL_NONTWISTED_LOOP,
    DUAL_TWISTED_LOOP,
    LINK,
    NONTWISTED_LOOP,
    TWISTED_LOOP,
    SubmapSpec,
    apply_submap,
    classify_edge,
    contract,
    contract_edges,
    delete,
    delete_edges,
    delete_vertex,
    enumerate_submaps,
)
from tuttemaps.errors import EdgeOutOfRange, VertexNotIsolatedAfterDeletion
from tuttemaps.families import cycle_map, enumerate_maps


# Change of the Euler characteristic under deletion and contraction, indexed
# by (primal type, dual type); deletion first, contraction second.
CHI_TABLE = {
    (LINK, DUAL_LINK): (0, 0),
    (LINK, DUAL_NONTWISTED_LOOP): (2, 0),
    (LINK, DUAL_TWISTED_LOOP): (1, 0),
    (NONTWISTED_LOOP, DUAL_LINK): (0, 2),
    (NONTWISTED_LOOP, DUAL_NONTWISTED_LOOP): (2, 2),
    (NONTWISTED_LOOP, DUAL_TWISTED_LOOP): (1, 2),
    (TWISTED_LOOP, DUAL_LINK): (0, 1),
    (TWISTED_LOOP, DUAL_NONTWISTED_LOOP): (2, 1),
    (TWISTED_LOOP, DUAL_TWISTED_LOOP): (1, 1),
}


def eg_deltas(et):
    """Change of the Euler genus under deletion and contraction.

    Deleting keeps the Euler genus exactly for dual links and bridges;
    contracting keeps it for links and dual bridges; the drop is 2 for the
    non-twisted and 1 for the twisted variants.
    """
    if et.dual_type == DUAL_LINK or et.is_bridge:
        d_del = 0
    elif et.dual_type == DUAL_NONTWISTED_LOOP:
        d_del = -2
    else:
        d_del = -1
    if et.primal == LINK or et.is_dual_bridge:
        d_con = 0
    elif et.primal == NONTWISTED_LOOP:
        d_con = -2
    else:
        d_con = -1
    return d_del, d_con


class TestClassify:
    def test_plane_loop_edge(self):
        et = classify_edge(plane_loop(), 0)
        assert (et.primal, et.dual_type) == (NONTWISTED_LOOP, DUAL_LINK)
        assert not et.is_bridge and et.is_dual_bridge

    def test_plane_link_edge(self):
        et = classify_edge(plane_link(), 0)
        assert (et.primal, et.dual_type) == (LINK, DUAL_NONTWISTED_LOOP)
        assert et.is_bridge and not et.is_dual_bridge

    def test_twisted_loop_edge(self):
        et = classify_edge(twisted_loop(), 0)
        assert (et.primal, et.dual_type) == (TWISTED_LOOP, DUAL_TWISTED_LOOP)
        assert not et.is_bridge and not et.is_dual_bridge

    def test_dual_type_is_primal_in_dual(self):
        base = {LINK: DUAL_LINK, NONTWISTED_LOOP: DUAL_NONTWISTED_LOOP,
                TWISTED_LOOP: DUAL_TWISTED_LOOP}
        for m in enumerate_maps(2):
            dm = dual(m)
            for e in range(m.edges):
                assert base[classify_edge(dm, e).primal] == classify_edge(m, e).dual_type

    def test_out_of_range(self):
        with pytest.raises(EdgeOutOfRange):
            classify_edge(plane_loop(), 1)


class TestDeleteContract:
    def test_delete_link_two_isolated(self):
        out = delete(plane_link(), 0)
        assert out == Map(0, (), 2)

    def test_delete_cycle_edge_gives_path(self):
        out = delete(cycle_map(3), 0)
        b = invariants(out)
        assert (b.v, b.e, b.f, b.chi) == (3, 2, 1, 2)

    def test_contract_loop_splits_vertex(self):
        assert contract(plane_loop(), 0) == Map(0, (), 2)

    def test_contract_link_single_vertex(self):
        assert contract(plane_link(), 0) == Map(0, (), 1)

    def test_contract_twisted_loop_keeps_vertex(self):
        out = contract(twisted_loop(), 0)
        assert out == Map(0, (), 1)
        assert invariants(out).v == 1

    def test_contract_is_dual_delete(self):
        for m in enumerate_maps(2):
            for e in range(m.edges):
                assert dual(contract(m, e)) == delete(dual(m), e)

    def test_chi_table_small(self):
        for m_edges in (1, 2):
            for m in enumerate_maps(m_edges):
                chi = invariants(m).chi
                for e in range(m.edges):
                    et = classify_edge(m, e)
                    want = CHI_TABLE[(et.primal, et.dual_type)]
                    got = (invariants(delete(m, e)).chi - chi,
                           invariants(contract(m, e)).chi - chi)
                    assert got == want, (m, e, et)

    def test_eg_table_small(self):
        for m_edges in (1, 2):
            for m in enumerate_maps(m_edges):
                eg = invariants(m).eg
                for e in range(m.edges):
                    et = classify_edge(m, e)
                    want = eg_deltas(et)
                    got = (invariants(delete(m, e)).eg - eg,
                           invariants(contract(m, e)).eg - eg)
                    assert got == want, (m, e, et)

    def test_sg_preserved_iff_dual_link_or_bridge(self):
        from tuttemaps.mapmodel import signed_genus

        for m in enumerate_maps(2):
            sg = signed_genus(m)
            for e in range(m.edges):
                et = classify_edge(m, e)
                keep_del = signed_genus(delete(m, e)) == sg
                assert keep_del == (et.dual_type == DUAL_LINK or et.is_bridge)
                keep_con = signed_genus(contract(m, e)) == sg
                assert keep_con == (et.primal == LINK or et.is_dual_bridge)

    def test_orientability_preserved_cases(self):
        from tuttemaps.mapmodel import orientability

        for m in enumerate_maps(2, connected_only=True):
            o = orientability(m)
            for e in range(m.edges):
                et = classify_edge(m, e)
                if o == 2:
                    assert orientability(delete(m, e)) == 2
                    assert orientability(contract(m, e)) == 2
                if et.dual_type == DUAL_LINK:
                    assert orientability(delete(m, e)) == o
                if et.primal == LINK:
                    assert orientability(contract(m, e)) == o
                if et.is_bridge or et.is_dual_bridge:
                    assert orientability(delete(m, e)) == o
                    assert orientability(contract(m, e)) == o

    def test_nonorientable_to_orientable_halves_genus(self):
        for m in enumerate_maps(3, connected_only=True):
            b = invariants(m)
            if b.o == 2:
                continue
            for e in range(m.edges):
                bd = invariants(delete(m, e))
                if bd.o == 2 and components(delete(m, e)).count == b.k:
                    assert 2 * bd.g < b.g

    def test_deletion_contraction_commute(self):
        for m in enumerate_maps(3, connected_only=True):
            for a, b in itertools.permutations(range(m.edges), 2):
                left = contract_edges(delete_edges(m, [a]), [b if b < a else b - 1])
                right = delete_edges(contract_edges(m, [b]), [a if a < b else a - 1])
                assert isomorphic(left, right)


class TestSubmaps:
    def test_delete_vertex_of_link(self):
        assert delete_vertex(plane_link(), 0) == Map(0, (), 1)

    def test_delete_isolated_vertex(self):
        assert delete_vertex(Map(0, (), 2), 1) == Map(0, (), 1)

    def test_apply_submap_identity(self):
        m = cycle_map(4)
        assert apply_submap(m, SubmapSpec((), ())) == m

    def test_apply_submap_stranded_vertex(self):
        c5 = cycle_map(5)
        out = apply_submap(c5, SubmapSpec((0, 1), (1,)))
        b = invariants(out)
        assert (b.v, b.e) == (4, 3)

    def test_apply_submap_rejects_live_vertex(self):
        with pytest.raises(VertexNotIsolatedAfterDeletion):
            apply_submap(cycle_map(3), SubmapSpec((0,), (0,)))

    def test_enumerate_counts(self):
        c3 = cycle_map(3)
        subs = list(enumerate_submaps(c3))
        full = [s for spec, s in subs if s.edges == 3]
        assert len(full) == 1
        # spanning submaps: every edge subset once, with no vertices removed
        spanning = [spec for spec, _ in subs if not spec.deleted_vertices]
        assert len(spanning) == 8

    def test_submap_euler_genus_monotone(self):
        for m in enumerate_maps(2):
            eg = invariants(m).eg
            for _spec, sub in enumerate_submaps(m):
                assert invariants(sub).eg <= eg

    def test_require_sg_on_torus_bouquet(self):
        tb = from_pairs(2, [(0, 5), (1, 7), (2, 4), (3, 6)])
        kept = [s for _spec, s in enumerate_submaps(tb, require_sg=True)]
        assert len(kept) == 1 and kept[0] == tb

    def test_sg_equal_iff_eg_equal(self):
        for m in enumerate_maps(2):
            b = invariants(m)
            for _spec, sub in enumerate_submaps(m):
                bs = invariants(sub)
                assert (bs.eg == b.eg) == (bs.sg == b.sg)

    def test_empty_submap_of_point(self):
        subs = list(enumerate_submaps(Map(0, (), 1)))
        assert len(subs) == 2  # itself and the empty map
