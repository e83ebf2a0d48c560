"""Group-ring modules and truncated free resolutions.

Oracles: known cohomology/homology of small cyclic and dihedral groups, and
agreement between independent resolution constructions (bar vs periodic vs
tensor) of the same groups.
"""

import pytest

from u4class import resolutions
from u4class.groups import odd_normal_complement, orientation_characters, \
    parse_group
from u4class.linalg import AbelianGroup, homology_at
from u4class.modules import (GModule, module_from_abelian_group,
                             mod2_integers, pullback_module,
                             trivial_integers, twisted_integers)
from u4class.resolutions import (BarResolution, FeasibilityError,
                                 PeriodicResolution, Resolution,
                                 TensorResolution, default_resolution)


def cohomology_groups(res, module, upto):
    out = []
    for n in range(upto + 1):
        d_in = res.coboundary_matrix(module, n - 1)
        d_out = res.coboundary_matrix(module, n)
        out.append(homology_at(d_in, d_out))
    return out


def homology_groups(res, module, upto):
    out = []
    for n in range(upto + 1):
        d_in = res.chain_matrix(module, n + 1)
        d_out = res.chain_matrix(module, n)
        out.append(homology_at(d_in, d_out))
    return out


class TestModules:
    def test_twisted_integers_signs(self):
        g = parse_group("C2")
        ch = orientation_characters(g)[0]
        m = twisted_integers(ch)
        assert m.rank_one_signs() == (1, -1)
        assert m.is_rank_one_free

    def test_trivial_and_mod2(self):
        g = parse_group("C6")
        assert trivial_integers(g).rank_one_signs() == (1,) * 6
        m2 = mod2_integers(g)
        assert not m2.is_free
        assert m2.is_elementary_two
        assert str(m2.underlying_group()) == "Z/2"

    def test_bad_action_rejected(self):
        g = parse_group("C2")
        from u4class.linalg import IntMatrix
        with pytest.raises(ValueError):
            # "multiplication by 2" is not an involution on Z
            GModule(g, 1, IntMatrix.zeros(1, 0), [((1,),), ((2,),)])

    def test_action_must_respect_relations(self):
        g = parse_group("C2")
        ab = AbelianGroup(0, (4,))
        with pytest.raises(ValueError):
            # sending the Z/4 generator to 2x is not invertible mod 4
            module_from_abelian_group(g, ab,
                                      action_matrices=[[[1]], [[2]]])

    def test_module_from_abelian_group_shape(self):
        g = parse_group("C2")
        ab = AbelianGroup(1, (2, 4))
        m = module_from_abelian_group(g, ab)
        assert m.ngens == 3
        assert m.underlying_group() == ab

    def test_pullback_through_projection(self):
        d = odd_normal_complement(parse_group("C6"))
        ch = orientation_characters(d.quotient)[0]
        m = pullback_module(d.project, twisted_integers(ch))
        assert m.group is d.project.source
        signs = m.rank_one_signs()
        assert signs.count(-1) == 3
        # pullback of twisted integers along a surjection is still twisted
        from u4class.modules import TwistedIntegers
        assert isinstance(m, TwistedIntegers)


class TestBarResolution:
    def test_ranks(self):
        c2 = BarResolution(parse_group("C2"), 4)
        assert c2.ranks == [1, 1, 1, 1, 1, 1]
        c3 = BarResolution(parse_group("C3"), 2)
        assert c3.ranks == [1, 2, 4, 8]

    def test_dd_zero(self):
        for spec, deg in [("C2", 4), ("C4", 3), ("D3", 3), ("C2xC2", 3)]:
            BarResolution(parse_group(spec), deg).verify()

    def test_fast_and_generic_assembly_agree(self):
        g = parse_group("C4")
        res = BarResolution(g, 3)
        ch = orientation_characters(g)[0]
        for module in [trivial_integers(g), twisted_integers(ch)]:
            for n in range(4):
                fast = res.coboundary_matrix(module, n)
                generic = Resolution.coboundary_matrix(res, module, n)
                assert fast == generic
                fast = res.chain_matrix(module, n)
                generic = Resolution.chain_matrix(res, module, n)
                assert fast == generic

    def test_feasibility_bound(self):
        with pytest.raises(FeasibilityError):
            BarResolution(parse_group("C18"), 4)

    def test_feasibility_bound_env_override(self, monkeypatch):
        monkeypatch.setenv("U4CLASS_MAX_GENERATORS", "10")
        with pytest.raises(FeasibilityError):
            BarResolution(parse_group("C3"), 2)
        monkeypatch.setenv("U4CLASS_MAX_GENERATORS", "2000000")
        BarResolution(parse_group("C18"), 4)


class TestPeriodicResolution:
    def test_requires_cyclic(self):
        with pytest.raises(ValueError):
            PeriodicResolution(parse_group("D3"), 3)

    def test_dd_zero(self):
        for spec in ["C2", "C3", "C6", "C12"]:
            PeriodicResolution(parse_group(spec), 5).verify()

    def test_known_cohomology_c2(self):
        g = parse_group("C2")
        res = PeriodicResolution(g, 4)
        names = [str(h) for h in
                 cohomology_groups(res, trivial_integers(g), 4)]
        assert names == ["Z", "0", "Z/2", "0", "Z/2"]
        tw = twisted_integers(orientation_characters(g)[0])
        names = [str(h) for h in cohomology_groups(res, tw, 4)]
        assert names == ["0", "Z/2", "0", "Z/2", "0"]

    def test_known_cohomology_c6_twisted(self):
        g = parse_group("C6")
        res = PeriodicResolution(g, 4)
        tw = twisted_integers(orientation_characters(g)[0])
        names = [str(h) for h in cohomology_groups(res, tw, 4)]
        assert names == ["0", "Z/2", "0", "Z/2", "0"]


class TestAgreementAcrossResolutions:
    def test_bar_matches_periodic(self):
        for spec in ["C2", "C3", "C4", "C6"]:
            g = parse_group(spec)
            bar = BarResolution(g, 3)
            per = PeriodicResolution(g, 3)
            mods = [trivial_integers(g), mod2_integers(g)]
            mods += [twisted_integers(ch)
                     for ch in orientation_characters(g)]
            for m in mods:
                a = [h for h in cohomology_groups(bar, m, 3)]
                b = [h for h in cohomology_groups(per, m, 3)]
                assert a == b, (spec, str(m))

    def test_homology_gives_abelianization(self):
        for spec, h1 in [("C6", "Z/6"), ("D3", "Z/2"),
                         ("C2xC2", "Z/2 + Z/2")]:
            g = parse_group(spec)
            res = default_resolution(g, 2)
            res.verify()
            hs = homology_groups(res, trivial_integers(g), 1)
            assert str(hs[0]) == "Z"
            assert str(hs[1]) == h1


class TestTensorResolution:
    def test_dd_zero_and_agreement_with_bar(self):
        g = parse_group("C2xC4")
        res = default_resolution(g, 3)
        assert isinstance(res, TensorResolution)
        res.verify()
        bar = BarResolution(g, 3)
        for m in [trivial_integers(g),
                  twisted_integers(orientation_characters(g)[0])]:
            a = [h for h in cohomology_groups(res, m, 3)]
            b = [h for h in cohomology_groups(bar, m, 3)]
            assert a == b

    def test_klein_four_cohomology(self):
        g = parse_group("C2xC2")
        res = default_resolution(g, 4)
        res.verify()
        names = [str(h) for h in
                 cohomology_groups(res, trivial_integers(g), 4)]
        # classical: H^* (Z/2 x Z/2; Z) = Z, 0, (Z/2)^2, Z/2, (Z/2)^3
        assert names == ["Z", "0", "Z/2 + Z/2", "Z/2",
                         "Z/2 + Z/2 + Z/2"]

    def test_nested_product(self):
        g = parse_group("C2xC2xC5")
        res = default_resolution(g, 2)
        res.verify()
        hs = homology_groups(res, trivial_integers(g), 1)
        assert str(hs[1]) == "Z/2 + Z/10"

    def test_large_cyclic_pair_feasible(self):
        # C5 x C10 would need 49^5 bar generators; the tensor route stays
        # tiny
        g = parse_group("C5xC10")
        res = default_resolution(g, 4)
        assert max(res.ranks) <= 6
        res.verify()

    def test_factor_mismatch_rejected(self):
        g = parse_group("C2xC3")
        ra = PeriodicResolution(parse_group("C5"), 3)
        rb = PeriodicResolution(parse_group("C3"), 3)
        with pytest.raises(ValueError):
            TensorResolution(ra, rb, g)


class TestRelabeledAbelian:
    """Subgroups lose product provenance; abelian ones must still get a
    structured resolution via the cyclic decomposition."""

    def test_decomposition_orders(self):
        from u4class.groups import abelian_cyclic_decomposition
        g = parse_group("C3xC6")
        gens = abelian_cyclic_decomposition(g)
        assert sorted(g.element_order(x) for x in gens) == [3, 6]
        with pytest.raises(ValueError):
            abelian_cyclic_decomposition(parse_group("D3"))

    def test_extracted_kernel_uses_tensor_route(self):
        from u4class.groups import odd_normal_complement
        from u4class.resolutions import RelabeledResolution
        d = odd_normal_complement(parse_group("C3xC6"))
        res = default_resolution(d.kernel, 5)   # C3 x C3, order 9
        assert isinstance(res, RelabeledResolution)
        assert max(res.ranks) <= 7
        res.verify()

    def test_relabeled_matches_bar(self):
        from u4class.groups import odd_normal_complement
        d = odd_normal_complement(parse_group("C3xC6"))
        k = d.kernel
        fast = default_resolution(k, 2)
        slow = BarResolution(k, 2)
        mod = trivial_integers(k)
        for res in (fast, slow):
            res.verify()
        fast_h = homology_groups(fast, mod, 2)
        slow_h = homology_groups(slow, mod, 2)
        assert [str(h) for h in fast_h] == [str(h) for h in slow_h]


class TestDefaultPolicy:
    def test_policy(self):
        assert isinstance(default_resolution(parse_group("C12"), 3),
                          PeriodicResolution)
        assert isinstance(default_resolution(parse_group("C2xC4"), 3),
                          TensorResolution)
        assert isinstance(default_resolution(parse_group("D3"), 3),
                          BarResolution)

    def test_bound_reader(self, monkeypatch):
        monkeypatch.delenv("U4CLASS_MAX_GENERATORS", raising=False)
        assert resolutions.max_generators() == 10**6
        monkeypatch.setenv("U4CLASS_MAX_GENERATORS", "42")
        assert resolutions.max_generators() == 42
