import pytest

from tuttemaps import (
    Map,
    cells,
    from_pairs,
    invariants,
    isomorphic,
    plane_link,
    plane_loop,
)
from tuttemaps.cores import (
    collapse_interior,
    core,
    core_oracle,
    is_core,
    interior_submap_spec,
    prefacial_circuits,
)
from tuttemaps.edgeops import apply_submap
from tuttemaps.errors import SizeBoundExceeded
from tuttemaps.families import (
    cycle_map,
    enumerate_maps,
    map_from_rotations,
    theta_map,
)
from tuttemaps.homs import apply_epimorphism, find_monomorphism, hom_exists
from tuttemaps.mapmodel import signed_genus


def torus_bouquet():
    return from_pairs(2, [(0, 5), (1, 7), (2, 4), (3, 6)])


def half_theta():
    """A 4-cycle with an inner path of length 3: folds onto a 5-cycle."""
    return map_from_rotations(
        [
            [(0, 0), (4, 0), (3, 1)],
            [(1, 0), (0, 1)],
            [(2, 0), (6, 1), (1, 1)],
            [(3, 0), (2, 1)],
            [(4, 1), (5, 0)],
            [(5, 1), (6, 0)],
        ]
    )


def fig_triangle_with_tail():
    """A triangle plus a parallel edge whose lens holds a two-edge path.

    The submap induced on the triangle's vertices keeps the parallel edge,
    which turns duplicate only once the lens path is folded away: the core
    (a triangle) is not an induced submap.
    """
    return map_from_rotations(
        [
            [(0, 0), (4, 0), (3, 0), (2, 1)],  # a: triangle, tail, parallel
            [(1, 0), (3, 1), (6, 1), (0, 1)],  # b
            [(2, 0), (1, 1)],  # c
            [(4, 1), (5, 0)],  # d on the tail
            [(5, 1), (6, 0)],  # e on the tail
        ]
    )


class TestIsCore:
    def test_odd_cycles_are_cores(self):
        assert is_core(cycle_map(3))[0]
        assert is_core(cycle_map(5))[0]

    def test_doubled_edge_is_not(self):
        ok, viol = is_core(cycle_map(2))
        assert not ok
        kappa, z = viol
        assert cells(cycle_map(2)).faces[z].degree == 2

    def test_even_cycle_not_core(self):
        assert not is_core(cycle_map(4))[0]

    def test_torus_bouquet_is_core(self):
        assert is_core(torus_bouquet())[0]

    def test_lollipop_not_core(self):
        m = from_pairs(2, [(0, 1), (2, 4), (3, 6), (5, 7)])
        assert not is_core(m)[0]

    def test_cutoff_argument(self):
        ok, _ = is_core(cycle_map(3), max_len=2)
        assert ok  # no short violating circuit

    def test_disconnected_routes_to_oracle(self):
        pairs = cycle_map(2).alpha1_pairs()
        pairs += [(a + 8, b + 8) for a, b in cycle_map(3).alpha1_pairs()]
        m = from_pairs(5, pairs)
        assert not is_core(m)[0]
        good = from_pairs(
            3, cycle_map(3).alpha1_pairs()
        )
        assert is_core(Map(3, good.alpha1, 0))[0]


class TestCollapse:
    def test_degree_two_face_single_gluing(self):
        m = cycle_map(2)
        _ok, (lam, z) = is_core(m)
        steps, image = collapse_interior(m, lam, z)
        assert [type(s).__name__ for s in steps] == ["DuplicateGlue"]
        assert isomorphic(image, plane_link())

    def test_facial_circuit_identity(self):
        c3 = cycle_map(3)
        f = cells(c3).faces[0]
        steps, image = collapse_interior(c3, f.forward, 0)
        assert steps == [] and image == c3

    def test_half_theta_fold_matches_search(self):
        ht = half_theta()
        _ok, (lam, z) = is_core(ht)
        steps, image = collapse_interior(ht, lam, z)
        assert isomorphic(image, cycle_map(5))
        h = hom_exists(ht, cycle_map(5))
        assert h is not None and isomorphic(h.image, image)

    def test_image_is_interior_removal(self):
        ht = half_theta()
        _ok, (lam, z) = is_core(ht)
        _steps, image = collapse_interior(ht, lam, z)
        assert isomorphic(image, apply_submap(ht, interior_submap_spec(ht, lam)))


class TestCore:
    def test_core_fixes_cores(self):
        for m in (cycle_map(3), cycle_map(5), torus_bouquet()):
            c, h = core(m)
            assert isomorphic(c, m)
            assert h.epi.steps == ()

    def test_core_of_even_cycles_is_link(self):
        for n in (2, 4):
            c, _ = core(cycle_map(n))
            assert isomorphic(c, plane_link())

    def test_core_witness_replays(self):
        ht = half_theta()
        c, h = core(ht)
        res = apply_epimorphism(ht, h.epi.steps)
        assert isomorphic(res.image, c)
        assert signed_genus(c) == signed_genus(ht)

    def test_core_is_submap_of_source(self):
        ht = half_theta()
        c, _ = core(ht)
        assert find_monomorphism(c, ht) is not None

    def test_triangle_with_tail(self):
        m = fig_triangle_with_tail()
        assert signed_genus(m) == 0
        c, _ = core(m)
        assert isomorphic(c, cycle_map(3))
        # the submap induced on the triangle's vertices keeps four edges, so
        # the core is not induced
        cs = cells(m)
        tri_vertices = {cs.vertex_id[0], cs.vertex_id[4], cs.vertex_id[8]}
        kept = [
            e
            for e in range(m.edges)
            if {cs.vertex_id[4 * e], cs.vertex_id[4 * e + 1]} <= tri_vertices
        ]
        assert len(kept) == 4

    def test_idempotent_on_catalog_sample(self):
        for m in enumerate_maps(2, connected_only=True):
            c, _ = core(m)
            c2, _ = core(c)
            assert isomorphic(c, c2)

    def test_disconnected_core(self):
        # a 3-cycle next to a doubled edge: the plane part folds into a cycle
        pairs = cycle_map(3).alpha1_pairs()
        off = 12
        pairs += [(a + off, b + off) for a, b in cycle_map(2).alpha1_pairs()]
        m = from_pairs(5, pairs)
        c, _h = core(m)
        assert isomorphic(c, core_oracle(m))
        assert isomorphic(c, cycle_map(3))

    def test_point_plus_cycle(self):
        m = Map(3, cycle_map(3).alpha1, 1)
        c, _ = core(m)
        assert isomorphic(c, cycle_map(3))


class TestOracle:
    def test_agrees_exhaustively_small(self):
        for m_edges in (1, 2):
            for m in enumerate_maps(m_edges, connected_only=True):
                assert is_core(m)[0] == isomorphic(core_oracle(m), m)
                assert isomorphic(core(m)[0], core_oracle(m))

    def test_doubled_edge_oracle(self):
        assert isomorphic(core_oracle(cycle_map(2)), plane_link())

    def test_quasi_tree_oracle(self):
        assert isomorphic(core_oracle(torus_bouquet()), torus_bouquet())

    def test_size_bound(self):
        with pytest.raises(SizeBoundExceeded):
            core_oracle(cycle_map(7))


class TestSubmapCircuitCorrespondence:
    def _connected_same_sg_submaps(self, m):
        from tuttemaps.edgeops import enumerate_submaps
        from tuttemaps.homs import submap_standalone
        from tuttemaps.mapmodel import is_connected

        for spec, sub in enumerate_submaps(m, require_sg=True):
            if sub.edges == 0 or not is_connected(sub):
                continue
            sub_map, back = submap_standalone(m, spec)
            yield spec, sub_map, back

    def test_submap_faces_are_prefacial(self):
        from tuttemaps.circuits import classify_circuit, validate_circuit

        for m in enumerate_maps(2, connected_only=True):
            for _spec, sub, back in self._connected_same_sg_submaps(m):
                for f in cells(sub).faces:
                    lifted = tuple(back[c] for c in f.forward)
                    validate_circuit(m, lifted)
                    assert classify_circuit(m, lifted).prefacial

    def test_prefacial_circuits_bound_a_submap(self):
        # removing a prefacial circuit's interior leaves a same-genus submap
        # with the circuit facial
        from tuttemaps.circuits import circuit_key, is_facial
        from tuttemaps.edgeops import cross_map_after_delete

        for m in enumerate_maps(2, connected_only=True):
            for kappa in prefacial_circuits(m):
                spec = interior_submap_spec(m, kappa)
                sub = apply_submap(m, spec)
                assert signed_genus(sub) == signed_genus(m)
                ren = cross_map_after_delete(m.edges, spec.deleted_edges)
                moved = tuple(ren[c] for c in kappa)
                assert is_facial(sub, moved)

    def test_outside_edges_lie_in_one_face_piece(self):
        from tuttemaps.circuits import side_original_crosses, validate_circuit
        from tuttemaps.mapmodel import edge_of

        for m in enumerate_maps(2, connected_only=True):
            for _spec, sub, back in self._connected_same_sg_submaps(m):
                sub_edges = {edge_of(back[4 * e]) for e in range(sub.edges)}
                outside = set(range(m.edges)) - sub_edges
                for e in outside:
                    holders = 0
                    for f in cells(sub).faces:
                        lifted = tuple(back[c] for c in f.forward)
                        validate_circuit(m, lifted)
                        side = side_original_crosses(m, lifted)
                        kap_edges = {edge_of(c) for c in lifted}
                        inner = {edge_of(c) for c in side} - kap_edges
                        if e in inner:
                            holders += 1
                    assert holders == 1, (m, e)


class TestThetaChain:
    def test_folds_down_the_chain(self):
        from tuttemaps.homs import find_epimorphism

        for (i, j), (i2, j2) in (
            ((1, 3), (1, 1)),
            ((1, 5), (1, 3)),
            ((3, 3), (3, 1)),
            ((3, 5), (3, 3)),
            ((5, 5), (5, 3)),
        ):
            assert find_epimorphism(theta_map(i, j), theta_map(i2, j2)) is not None

    def test_odd_thetas_are_cores(self):
        for i, j in ((1, 1), (1, 3), (3, 3), (1, 5), (3, 5)):
            assert is_core(theta_map(i, j))[0]


class TestAntichainCutoff:
    def test_ring_passes_the_cutoff_core_check(self):
        from tuttemaps.families import antichain_gadget

        b, _members = antichain_gadget(2, 3)
        ok, _ = is_core(b, max_len=4)
        assert ok


class TestCycleCores:
    def test_odd_cycles_core(self):
        for n in (1, 3, 5, 7):
            assert is_core(cycle_map(n))[0]

    def test_even_cycles_fold_to_link(self):
        for n in (2, 4, 6):
            c, _ = core(cycle_map(n))
            assert isomorphic(c, plane_link())


class TestCharacterizationApplications:
    def test_bouquet_core_iff_no_duplicates(self):
        from tuttemaps.families import bouquet_signatures
        from tuttemaps.gluing import duplicate_pairs

        for m in bouquet_signatures(3):
            assert is_core(m)[0] == (not duplicate_pairs(m))

    def test_quasi_tree_criterion(self):
        from tuttemaps.families import bouquet_signatures
        from tuttemaps.mapmodel import dual, is_plane

        for b in bouquet_signatures(3):
            qt = dual(b)
            assert invariants(qt).f == 1
            degs = [v.degree for v in cells(qt).vertices]
            if is_plane(qt):
                expect = qt.edges == 1
            else:
                expect = all(d != 1 for d in degs)
            assert is_core(qt)[0] == expect

    def test_theta_maps_are_cores(self):
        assert is_core(theta_map(1, 3))[0]
        assert is_core(theta_map(3, 3))[0]
