"""Classification tables: normal 1-types, automorphism orbits, class
counts and labels.

Oracles: Burnside counting for the orbit enumeration, and the
independence-of-group property (tables depend only on the category once
the hypothesis passes).
"""

import pytest

from u4class.bordism import bordism_group
from u4class.classify import (HypothesisFailure, aut_orbits,
                              classification_json, classify_group,
                              enumerate_normal_one_types, smooth_to_top_pin,
                              stable_classes)
from u4class.groups import parse_group
from u4class.linalg import AbelianGroup


class TestNormalOneTypes:
    def test_three_types_smooth(self):
        types = enumerate_normal_one_types(parse_group("C6"), "smooth")
        assert [t.structure for t in types] == ["Pin-", "Pin+", "O"]
        assert all(t.group_name == "C6" for t in types)

    def test_three_types_top(self):
        types = enumerate_normal_one_types(parse_group("C10"), "top")
        assert [t.structure for t in types] == ["TopPin-", "TopPin+",
                                                "Top"]

    def test_hypothesis_failure_forwarded(self):
        with pytest.raises(HypothesisFailure) as exc:
            enumerate_normal_one_types(parse_group("D5"), "smooth")
        assert exc.value.report.group_name == "D5"
        assert not exc.value.report.applicable

    def test_wrong_order_rejected(self):
        # C4 passes the action hypothesis trivially but is 0 mod 4
        with pytest.raises(HypothesisFailure):
            enumerate_normal_one_types(parse_group("C4"), "smooth")

    def test_bad_category(self):
        with pytest.raises(ValueError):
            enumerate_normal_one_types(parse_group("C6"), "pl")


class TestAutOrbits:
    def test_pin_plus_nine_orbits(self):
        orb = aut_orbits("Pin+", AbelianGroup(0, (16,)))
        assert orb.action == "negation"
        assert orb.count == 9
        sizes = sorted(len(o) for o in orb.orbits)
        assert sizes == [1, 1, 2, 2, 2, 2, 2, 2, 2]
        reps = sorted(min(o)[0] for o in orb.orbits)
        assert reps == [0, 1, 2, 3, 4, 5, 6, 7, 8]

    def test_top_pin_plus_ten_orbits(self):
        orb = aut_orbits("TopPin+", AbelianGroup(0, (2, 8)))
        assert orb.count == 10

    def test_trivial_action_counts(self):
        assert aut_orbits("O", AbelianGroup(0, (2, 2))).count == 4
        assert aut_orbits("Top", AbelianGroup(0, (2, 2, 2))).count == 8
        assert aut_orbits("TopPin-", AbelianGroup(0, (2,))).count == 2
        assert aut_orbits("Pin-", AbelianGroup(0, ())).count == 1

    def test_orbits_partition(self):
        orb = aut_orbits("TopPin+", AbelianGroup(0, (2, 8)))
        seen = [x for o in orb.orbits for x in o]
        assert len(seen) == len(set(seen)) == 16

    def test_infinite_group_rejected(self):
        with pytest.raises(ValueError):
            aut_orbits("STop", AbelianGroup(1, (2,)))


class TestStableClasses:
    def test_smooth_counts(self):
        tables = classify_group(parse_group("C6"), "smooth")
        assert [t.count for t in tables] == [1, 9, 4]

    def test_top_counts(self):
        tables = classify_group(parse_group("C6"), "top")
        assert [t.count for t in tables] == [2, 10, 8]

    def test_eta_labels(self):
        tables = classify_group(parse_group("C10"), "smooth")
        pin_plus = next(t for t in tables
                        if t.normal_type.structure == "Pin+")
        assert [c.invariants["eta_prime"] for c in pin_plus.classes] == \
            list(range(9))

    def test_counts_emerge_from_pipeline(self):
        # cross-check: count equals the orbit count of the tabulated group
        for cat in ("smooth", "top"):
            for t in classify_group(parse_group("C6"), cat):
                entry = bordism_group(t.normal_type.structure, 4)
                assert t.count == aut_orbits(t.normal_type.structure,
                                             entry.group).count
                assert t.count == len(t.orbit_structure.orbits)

    def test_labels_distinct(self):
        for cat in ("smooth", "top"):
            for t in classify_group(parse_group("C2"), cat):
                labels = [c.label for c in t.classes]
                assert len(set(labels)) == len(labels)

    def test_independence_of_group(self):
        def stripped(spec, cat):
            # table json carries no group field; only the wrapper does
            return classification_json(parse_group(spec), cat)["types"]

        for cat in ("smooth", "top"):
            assert stripped("C6", cat) == stripped("C30", cat)
            assert stripped("C6", cat) == stripped("C3xC6", cat)

    def test_refuses_failing_groups(self):
        for spec in ("D3", "D5"):
            with pytest.raises(HypothesisFailure):
                classify_group(parse_group(spec), "smooth")

    def test_json_schema(self):
        data = classification_json(parse_group("C6"), "top")
        assert set(data) == {"group", "category", "types"}
        assert len(data["types"]) == 3
        t = data["types"][1]
        for key in ("flavor", "structure", "bordism", "orbits", "classes",
                    "count", "completeness", "citations"):
            assert key in t
        assert t["count"] == len(t["classes"])
        assert all(t["citations"])


class TestComparisonMap:
    def test_formula(self):
        assert smooth_to_top_pin(1) == (0, 1)
        assert smooth_to_top_pin(9) == (0, 1)
        assert smooth_to_top_pin(15) == (0, 7)

    def test_surjects_onto_s_factor(self):
        image = {smooth_to_top_pin(k) for k in range(16)}
        assert {s for _, s in image} == set(range(8))

    def test_never_hits_e8_class(self):
        # the E8 manifold has ks = 1; the comparison image has ks = 0
        assert all(smooth_to_top_pin(k)[0] == 0 for k in range(16))

    def test_identifies_rp4_and_q(self):
        table = stable_classes(enumerate_normal_one_types(
            parse_group("C2"), "top")[1])
        reps = {c.representative for c in table.classes}
        assert smooth_to_top_pin(1) in reps    # RP4's class
        assert smooth_to_top_pin(9) == smooth_to_top_pin(1)
