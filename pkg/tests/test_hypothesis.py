"""Hypothesis checker: action triviality and Thom-spectrum applicability.

Oracles: duality of the conjugation action on degree-2 cohomology for
abelian kernels (multiplication by a on H^2(C_m; Z) = Z/m for t -> t^a),
and the cross-module invariant that applicability implies inflation is an
isomorphism through degree 4.
"""

import pytest

from u4class.cohomology import inflation_map
from u4class.groups import GroupHom, odd_normal_complement, parse_group
from u4class.hypothesis import (action_witness_in_degree,
                                check_action_trivial,
                                thom_simplification_applicable)

C7_SEMI_C6 = "perm[(1 2 3 4 5 6 7), (2 3 5)(4 7 6), (2 7)(3 6)(4 5)]"


class TestActionWitness:
    def test_identity_moves_nothing(self):
        k = parse_group("C5")
        ident = GroupHom(k, k, tuple(range(5)))
        assert action_witness_in_degree(k, ident, 2) is None

    def test_inversion_on_c5_moves_degree_two(self):
        k = parse_group("C5")
        inv = GroupHom(k, k, tuple(k.inverse(x) for x in range(5)))
        assert action_witness_in_degree(k, inv, 2) is not None

    def test_power_automorphism_matches_dual_formula(self):
        # t -> t^a acts as multiplication by a on H^2(C_m; Z) = Z/m, so a
        # witness exists exactly when a != 1 mod m
        for m, a in [(5, 2), (5, 4), (7, 2), (7, 6), (9, 4), (15, 2)]:
            k = parse_group(f"C{m}")
            gen = k.cyclic_generator()
            # the automorphism sending each x to x^a
            mapping = []
            for x in range(k.order):
                y = 0
                for _ in range(a):
                    y = k.multiply(y, x)
                mapping.append(y)
            alpha = GroupHom(k, k, tuple(mapping))
            witness = action_witness_in_degree(k, alpha, 2)
            assert (witness is not None) == (a % m != 1), (m, a)

    def test_odd_degree_unmoved_for_cyclic(self):
        # H^1 and H^3 of an odd cyclic group vanish or are fixed
        k = parse_group("C5")
        inv = GroupHom(k, k, tuple(k.inverse(x) for x in range(5)))
        assert action_witness_in_degree(k, inv, 1) is None


class TestCheckActionTrivial:
    def test_c6_trivial(self):
        g = parse_group("C6")
        v = check_action_trivial(g, odd_normal_complement(g))
        assert v.kind == "proved_trivial"

    def test_c3xc2_trivial(self):
        g = parse_group("C3xC2")
        v = check_action_trivial(g, odd_normal_complement(g))
        assert v.kind == "proved_trivial"

    def test_d5_nontrivial_degree_two(self):
        g = parse_group("D5")
        v = check_action_trivial(g, odd_normal_complement(g))
        assert v.kind == "proved_nontrivial"
        assert v.degree == 2
        assert v.witness
        assert v.acting_element is not None

    def test_abelian_two_mod_four_always_trivial(self):
        for spec in ["C2", "C6", "C10", "C14", "C18", "C22", "C26", "C30",
                     "C34", "C38", "C42", "C46", "C50", "C3xC6", "C5xC10",
                     "C2xC25"]:
            g = parse_group(spec)
            assert g.is_abelian and g.order % 4 == 2
            v = check_action_trivial(g, odd_normal_complement(g))
            assert v.kind == "proved_trivial", spec

    def test_nonabelian_bounded_verdict(self):
        g = parse_group(C7_SEMI_C6)
        assert g.order == 42
        d = odd_normal_complement(g)
        assert d is not None and not d.kernel.is_abelian
        v = check_action_trivial(g, d)
        # inversion on the 7-part first moves cohomology in degree 6, so
        # the bounded check finds nothing and must not overclaim
        assert v.kind == "trivial_up_to"
        assert v.checked_up_to >= 2


class TestApplicability:
    def test_c6(self):
        r = thom_simplification_applicable(parse_group("C6"))
        assert r.applicable
        assert r.kernel_order == 3 and r.quotient_order == 2
        assert "reduce" in r.conclusion

    def test_c2_identity_reduction(self):
        r = thom_simplification_applicable(parse_group("C2"))
        assert r.applicable and r.kernel_order == 1

    def test_d5_not_applicable(self):
        r = thom_simplification_applicable(parse_group("D5"))
        assert not r.applicable
        assert r.verdict.kind == "proved_nontrivial"

    def test_a4_no_decomposition(self):
        r = thom_simplification_applicable(
            parse_group("perm[(1 2 3), (1 2)(3 4)]"))
        assert not r.has_decomposition and not r.applicable

    def test_nonabelian_undetermined(self):
        r = thom_simplification_applicable(parse_group(C7_SEMI_C6))
        assert not r.applicable
        assert r.verdict.kind == "trivial_up_to"
        assert "undetermined" in r.conclusion

    def test_json_shape(self):
        data = thom_simplification_applicable(parse_group("C6")).to_json()
        assert data["applicable"] is True
        assert data["verdict"]["kind"] == "proved_trivial"

    def test_applicable_implies_inflation_isomorphism(self):
        for spec in ["C6", "C10", "C18", "C3xC6"]:
            g = parse_group(spec)
            r = thom_simplification_applicable(g)
            assert r.applicable, spec
            inf = inflation_map(odd_normal_complement(g).project, 4)
            assert inf.isomorphism_degrees() == (0, 1, 2, 3, 4), spec
