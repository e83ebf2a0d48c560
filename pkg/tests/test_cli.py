"""CLI behavior: subcommand outputs, exit codes, JSON round-trips, and
catalog determinism."""

import json

import pytest

from u4class.cli import builtin_catalog_specs, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if code == 0 else None), err


class TestClassify:
    def test_smooth_counts(self, capsys):
        code, out, _ = run(capsys, "classify", "C6", "--category",
                           "smooth")
        assert code == 0
        assert "total: 14 classes (1/9/4)" in out

    def test_top_counts(self, capsys):
        code, out, _ = run(capsys, "classify", "C10", "--category", "top")
        assert code == 0
        assert "total: 20 classes (2/10/8)" in out

    def test_json_round_trip(self, capsys):
        code, data, _ = run_json(capsys, "classify", "C6", "--category",
                                 "top")
        assert code == 0
        assert data["schema"] == 1
        counts = [t["count"] for t in data["result"]["types"]]
        assert counts == [2, 10, 8]
        assert data["citations"]

    def test_failing_group_exit_one(self, capsys):
        code, _, err = run(capsys, "classify", "D3")
        assert code == 1
        assert "not applicable" in err
        code, _, err = run(capsys, "classify", "D5")
        assert code == 1

    def test_unparseable_group_exit_two(self, capsys):
        code, _, err = run(capsys, "classify", "Zorp")
        assert code == 2


class TestHypothesisAndCohomology:
    def test_check_hypothesis_d5(self, capsys):
        code, out, _ = run(capsys, "check-hypothesis", "D5")
        assert code == 0
        assert "not applicable" in out
        assert "witness degree: 2" in out

    def test_cohomology_twisted(self, capsys):
        code, out, _ = run(capsys, "cohomology", "C6", "--coeff", "Zw")
        assert code == 0
        assert "H^1 = Z/2" in out and "H^2 = 0" in out

    def test_cohomology_twisted_undefined(self, capsys):
        code, _, err = run(capsys, "cohomology", "C3", "--coeff", "Zw")
        assert code == 1
        assert "orientation character" in err

    def test_cohomology_mod2(self, capsys):
        code, data, _ = run_json(capsys, "cohomology", "C2", "--coeff",
                                 "Z2", "--degree", "3")
        assert code == 0
        assert len(data["result"]["groups"]) == 4


class TestSpectral:
    def test_lhs(self, capsys):
        code, out, _ = run(capsys, "lhs", "C6")
        assert code == 0
        assert "E2^{1,0} = Z/2" in out

    def test_lhs_no_decomposition(self, capsys):
        # the alternating group on 4 letters has no odd normal complement
        code, _, err = run(capsys, "lhs", "perm[(1 2 3), (1 2)(3 4)]")
        assert code == 1
        assert "odd normal complement" in err

    def test_ahss_diagonal_bound(self, capsys):
        code, out, _ = run(capsys, "ahss", "C2", "--coeff", "STop",
                           "--diagonal", "4")
        assert code == 0
        assert "order bound 8" in out
        assert "collapse certified: True" in out

    def test_ahss_missing_degree_exit_one(self, capsys):
        code, _, err = run(capsys, "ahss", "C2", "--coeff", "Top",
                           "--range", "5")
        assert code == 1


class TestCompare:
    def test_flagship(self, capsys):
        code, out, _ = run(capsys, "compare", "RP4", "Q", "--category",
                           "smooth", "--structure", "pin+")
        assert code == 0
        assert "NOT stably equivalent" in out
        code, out, _ = run(capsys, "compare", "RP4(+)", "Q(+)",
                           "--category", "top", "--structure", "pin+")
        assert code == 0
        assert "NOT" not in out

    def test_bad_expression_exit_two(self, capsys):
        code, _, err = run(capsys, "compare", "RP4 # Q", "S4",
                           "--category", "top", "--structure", "none")
        assert code == 2


class TestTablesAndCatalog:
    def test_tables(self, capsys):
        code, data, _ = run_json(capsys, "tables")
        assert code == 0
        assert len(data["result"]) == 10
        assert data["result"]["Pin+"][4]["group"] == {"rank": 0,
                                                      "torsion": [16]}

    def test_catalog_small(self, capsys):
        code, out, _ = run(capsys, "catalog", "--max-order", "10")
        assert code == 0
        lines = [ln.split()[0] for ln in out.splitlines()[1:]]
        assert lines == ["C2", "C6", "D3", "C10", "D5"]
        assert out.count("PASS") == 3 and out.count("fail") == 2

    def test_catalog_order_two(self, capsys):
        code, data, _ = run_json(capsys, "catalog", "--max-order", "2")
        assert code == 0
        assert [r["spec"] for r in data["result"]["rows"]] == ["C2"]

    def test_catalog_counts_and_determinism(self, capsys):
        code, a, _ = run_json(capsys, "catalog", "--max-order", "30")
        code2, b, _ = run_json(capsys, "catalog", "--max-order", "30")
        assert code == code2 == 0
        a.pop("timing"), b.pop("timing")
        assert a == b
        for row in a["result"]["rows"]:
            if row["applicable"]:
                assert sum(row["counts"]["smooth"]) == 14
                assert sum(row["counts"]["top"]) == 20

    def test_catalog_bound(self, capsys):
        code, _, err = run(capsys, "catalog", "--max-order", "999")
        assert code == 2

    def test_spec_list_sorted(self):
        specs = builtin_catalog_specs(50)
        from u4class.groups import parse_group
        orders = [parse_group(s).order for s in specs]
        assert orders == sorted(orders)
        assert all(o % 4 == 2 for o in orders)


class TestUsage:
    def test_no_subcommand(self, capsys):
        assert run(capsys, )[0] == 2

    def test_bad_flag(self, capsys):
        assert run(capsys, "classify", "C6", "--category", "pl")[0] == 2
