"""Subgroup enumeration, cover relation, Sylow and Frobenius queries."""

import pytest

from relcomm import groups as G
from relcomm.errors import LatticeCapExceeded, NoSuchPrime
from relcomm.lattice import (
    all_subgroups,
    all_subgroups_two_generated,
    cached_all_subgroups,
    is_normal,
)
from relcomm.numutil import factorize, omega, p_part


def f20():
    action = G.action_from_generator_images(
        G.cyclic(5), G.cyclic(4), {1: [0, 2, 4, 1, 3]})
    return G.semidirect_product(G.cyclic(5), G.cyclic(4), action, name="F20")


class TestEnumeration:
    def test_s4_has_30_subgroups(self):
        s4 = G.symmetric(4)
        lat = all_subgroups(s4)
        assert len(lat) == 30
        # independent second algorithm agrees
        assert all_subgroups_two_generated(s4) == {s.mask for s in lat.subgroups}
        # and the 30 split into the 11 known conjugacy classes of subgroups
        masks = {s.mask for s in lat.subgroups}
        classes = 0
        seen = set()
        for m in sorted(masks):
            if m in seen:
                continue
            classes += 1
            orbit = set()
            sub_elems = [i for i in range(24) if m >> i & 1]
            for t in range(24):
                conj = 0
                for x in sub_elems:
                    conj |= 1 << s4.conjugate(t, x)
                orbit.add(conj)
            seen |= orbit
        assert classes == 11

    def test_prime_cyclic_has_two_subgroups(self):
        assert len(all_subgroups(G.cyclic(13))) == 2

    def test_q8_has_six_subgroups(self):
        lat = all_subgroups(G.dicyclic(2))
        assert len(lat) == 6
        assert sorted(s.order for s in lat.subgroups) == [1, 2, 4, 4, 4, 8]

    def test_every_member_order_divides(self):
        lat = all_subgroups(G.symmetric(4))
        assert all(24 % s.order == 0 for s in lat.subgroups)

    def test_closed_under_intersection(self):
        lat = all_subgroups(G.dihedral(6))
        masks = {s.mask for s in lat.subgroups}
        for a in masks:
            for b in masks:
                assert a & b in masks

    def test_contains_trivial_and_whole(self):
        lat = all_subgroups(G.alternating(4))
        masks = {s.mask for s in lat.subgroups}
        assert 1 in masks and (1 << 12) - 1 in masks

    def test_cap(self):
        with pytest.raises(LatticeCapExceeded):
            all_subgroups(G.cyclic(100), cap=64)

    def test_second_pass_agrees_on_catalog_to_64(self, catalog64):
        for name, g in catalog64:
            lat = cached_all_subgroups(g)
            assert all_subgroups_two_generated(g) == \
                {s.mask for s in lat.subgroups}, name


class TestMaximalAndChains:
    def test_d8_maximal(self):
        maxs = all_subgroups(G.dihedral(4)).maximal_subgroups()
        assert sorted(s.order for s in maxs) == [4, 4, 4]

    def test_cp2_single_maximal(self):
        maxs = all_subgroups(G.cyclic(49)).maximal_subgroups()
        assert [s.order for s in maxs] == [7]

    def test_a4_maximal(self):
        maxs = all_subgroups(G.alternating(4)).maximal_subgroups()
        assert sorted(s.order for s in maxs) == [3, 3, 3, 3, 4]

    def test_chain_length_prime_powers(self):
        assert all_subgroups(G.cyclic(32)).max_chain_length() == 5
        assert all_subgroups(G.cyclic(27)).max_chain_length() == 3

    def test_chain_length_s4(self):
        assert all_subgroups(G.symmetric(4)).max_chain_length() == 4

    def test_chain_length_trivial(self):
        assert all_subgroups(G.cyclic(1)).max_chain_length() == 0

    def test_chain_equals_omega_below_60(self, catalog64):
        # all groups of order < 60 are solvable, where equality holds
        for name, g in catalog64:
            if g.order < 60:
                lat = cached_all_subgroups(g)
                assert lat.max_chain_length() == omega(g.order), name


class TestSylowAndNormality:
    def test_sylow_s4(self):
        lat = all_subgroups(G.symmetric(4))
        assert lat.sylow_subgroup(2).order == 8
        assert lat.sylow_subgroup(3).order == 3

    def test_sylow_c6(self):
        lat = all_subgroups(G.cyclic(6))
        syl = lat.sylow_subgroup(3)
        assert syl.order == 3 and lat.is_normal(syl)

    def test_sylow_f20(self):
        lat = all_subgroups(f20())
        assert lat.sylow_subgroup(5).order == 5
        assert lat.is_normal(lat.sylow_subgroup(5))
        assert lat.sylow_subgroup(2).order == 4
        assert not lat.is_normal(lat.sylow_subgroup(2))

    def test_no_such_prime(self):
        lat = all_subgroups(G.cyclic(6))
        with pytest.raises(NoSuchPrime):
            lat.sylow_subgroup(5)
        with pytest.raises(NoSuchPrime):
            lat.sylow_subgroup(4)

    def test_sylow_counts_mod_p(self, catalog48, lattices48):
        for name, g in catalog48:
            lat = lattices48[name]
            for p in factorize(g.order):
                full = p_part(g.order, p)
                count = sum(1 for s in lat.subgroups if s.order == full)
                assert count % p == 1, (name, p)

    def test_normality_center_always(self):
        for g in (G.dihedral(8), G.dicyclic(4), G.symmetric(4)):
            assert is_normal(g, g.center())


class TestFrobenius:
    def test_d18(self):
        shape = all_subgroups(G.dihedral(9)).frobenius_shape()
        assert shape is not None
        assert shape.kernel.order == 9
        assert shape.complement_order == 2
        assert not shape.is_minimal  # kernel C9 is not elementary abelian

    def test_a4_minimal(self):
        shape = all_subgroups(G.alternating(4)).frobenius_shape()
        assert shape is not None
        assert shape.kernel.order == 4
        assert shape.complement_order == 3
        assert shape.is_minimal

    def test_q8_none(self):
        assert all_subgroups(G.dicyclic(2)).frobenius_shape() is None

    def test_abelian_none(self):
        assert all_subgroups(G.cyclic(12)).frobenius_shape() is None

    def test_f20(self):
        shape = all_subgroups(f20()).frobenius_shape()
        assert shape is not None
        assert (shape.kernel.order, shape.complement_order) == (5, 4)

    def test_prime_complement_fixed_point_free(self, catalog48, lattices48):
        from relcomm.numutil import is_prime
        for name, g in catalog48:
            shape = lattices48[name].frobenius_shape()
            if shape is not None and is_prime(shape.complement_order):
                assert shape.kernel.order % shape.complement_order == 1, name
