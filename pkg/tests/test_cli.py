import json

import pytest

from talex.algebra import (
    LaurentPolynomial,
    RationalFunction,
    equal_up_to_unit,
    prime_field,
    rational_normalize,
)
from talex.cli import main
from talex.groups import cyclic


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


class TestAlexander:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "alexander", "--knot", "3_1")
        assert code == 0
        assert out.strip() == "3_1: t^2 - t + 1"

    def test_json_machine_form(self, capsys):
        code, report, _ = run_json(capsys, "alexander", "--knot", "3_1")
        assert code == 0
        assert report["command"] == "alexander"
        assert report["results"][0]["polynomial"] == {
            "minExponent": 0, "coefficients": [1, -1, 1]}

    def test_unknown_knot(self, capsys):
        code, _, err = run(capsys, "alexander", "--knot", "9_99")
        assert code == 3
        assert "unknown knot" in err

    def test_all_knots(self, capsys):
        code, report, _ = run_json(capsys, "alexander", "--all-knots")
        assert code == 0
        assert [r["knot"] for r in report["results"]] == \
            ["3_1", "4_1", "5_2", "6_1", "7_4", "8_18"]

    def test_empty_knot_list(self, capsys):
        code, report, _ = run_json(capsys, "alexander")
        assert code == 0 and report["results"] == []


class TestCompute:
    def test_c2_regular(self, capsys):
        code, report, _ = run_json(capsys, "compute", "--knot", "3_1",
                                   "--group", "C2")
        assert code == 0
        inv = report["results"][0]["invariants"][0]
        num = LaurentPolynomial.from_json(inv["normalized"]["numerator"])
        den = LaurentPolynomial.from_json(inv["normalized"]["denominator"])
        # Delta(t) Delta(-t) / ((t-1)(t+1)) up to unit
        expect = RationalFunction(
            LaurentPolynomial.make(num.domain, 0, (1, 0, 1, 0, 1)),
            LaurentPolynomial.make(num.domain, 0, (-1, 0, 1)))
        assert equal_up_to_unit(RationalFunction(num, den), expect)

    def test_no_surjection_exit_code(self, capsys):
        code, _, _ = run(capsys, "compute", "--knot", "4_1", "--group", "D3")
        assert code == 2

    def test_d9_trefoil_has_no_surjection(self, capsys):
        # no surjection G(3_1) -> D_9 exists (H_1 of the double branched
        # cover is Z/3); the CLI reports the empty search faithfully
        code, out, _ = run(capsys, "compute", "--knot", "3_1",
                           "--group", "D9")
        assert code == 2
        assert "no surjection" in out

    def test_mod_flag(self, capsys):
        code, report, _ = run_json(capsys, "compute", "--knot", "3_1",
                                   "--group", "D3", "--mod", "3",
                                   "--up-to-conjugacy")
        assert code == 0
        [res] = report["results"]
        assert res["modulus"] == 3 and res["surjections_found"] == 1

    def test_bad_group_spec(self, capsys):
        code, _, err = run(capsys, "compute", "--knot", "3_1",
                           "--group", "Q8")
        assert code == 3 and "unrecognized group spec" in err

    def test_even_dihedral_hint(self, capsys):
        code, _, err = run(capsys, "compute", "--knot", "3_1",
                           "--group", "D4")
        assert code == 3
        assert "not normally generated" in err

    def test_even_dicyclic_hint(self, capsys):
        code, _, err = run(capsys, "compute", "--knot", "3_1",
                           "--group", "Dic4")
        assert code == 3
        assert "not normally generated" in err

    def test_budget_exceeded(self, capsys):
        code, _, _ = run(capsys, "compute", "--knot", "8_18",
                         "--group", "D3", "--budget", "10")
        assert code == 4

    def test_composite_modulus_rejected(self, capsys):
        code, _, err = run(capsys, "compute", "--knot", "3_1",
                           "--group", "C2", "--mod", "6")
        assert code == 3 and "not prime" in err

    def test_cayley_file_group(self, capsys, tmp_path):
        path = tmp_path / "c5.json"
        path.write_text(json.dumps(cyclic(5).to_json()))
        code, report, _ = run_json(capsys, "compute", "--knot", "3_1",
                                   "--group", f"cayley:{path}")
        assert code == 0
        assert report["results"][0]["surjections_found"] == 4


class TestVerify:
    def test_dihedral_all_true(self, capsys):
        code, report, _ = run_json(capsys, "verify", "--case", "dihedral",
                                   "--p", "3", "--n", "1", "--knot", "3_1")
        assert code == 0
        [rec] = report["results"]
        assert rec["verdicts"] == [True]
        assert set(rec) >= {"knot", "group", "parameters",
                            "surjections_found", "verdicts", "lhs", "rhs",
                            "modulus", "elapsed_ms"}

    def test_cyclic_all_knots(self, capsys):
        code, report, _ = run_json(capsys, "verify", "--case", "cyclic",
                                   "--n", "3", "--all-knots")
        assert code == 0
        assert len(report["results"]) == 6
        for rec in report["results"]:
            assert all(rec["verdicts"])

    def test_bad_parameters(self, capsys):
        code, _, err = run(capsys, "verify", "--case", "dihedral", "--p",
                           "4", "--knot", "3_1")
        assert code == 3 and "odd prime" in err

    def test_missing_case(self, capsys):
        code, _, err = run(capsys, "verify", "--knot", "3_1")
        assert code == 3 and "needs --case" in err

    def test_mod_override_conflicts(self, capsys):
        code, _, err = run(capsys, "verify", "--case", "dihedral", "--p",
                           "3", "--mod", "5", "--knot", "3_1")
        assert code == 3 and "conflicts" in err

    def test_mod_override_on_cyclic_allowed(self, capsys):
        code, report, _ = run_json(capsys, "verify", "--case", "cyclic",
                                   "--n", "2", "--mod", "5",
                                   "--knot", "3_1")
        assert code == 0
        assert report["results"][0]["modulus"] == 5

    def test_conjecture_needs_flag(self, capsys):
        code, _, err = run(capsys, "verify", "--case", "conjecture",
                           "--p", "3", "--knot", "3_1")
        assert code == 3 and "experimental" in err

    def test_conjecture_with_flag(self, capsys):
        code, report, _ = run_json(capsys, "verify", "--case", "conjecture",
                                   "--p", "3", "--knot", "3_1",
                                   "--experimental")
        assert code == 0
        assert report["results"][0]["surjections_found"] == 0

    def test_json_roundtrip_normal_forms(self, capsys):
        code, report, _ = run_json(capsys, "verify", "--case", "dihedral",
                                   "--p", "3", "--knot", "6_1")
        assert code == 0
        [rec] = report["results"]
        dom = prime_field(rec["modulus"])
        rhs_rf = RationalFunction.from_json(rec["rhs"], dom)
        assert rational_normalize(rhs_rf) == rhs_rf
        for entry in rec["lhs"]:
            lhs_rf = RationalFunction.from_json(entry, dom)
            assert rational_normalize(lhs_rf) == lhs_rf
            assert equal_up_to_unit(lhs_rf, rhs_rf)


class TestSurjections:
    def test_counts_both_ways(self, capsys):
        code, out, _ = run(capsys, "surjections", "--knot", "3_1",
                           "--group", "D3")
        assert code == 0
        assert "6 surjections (1 up to conjugacy)" in out

    def test_text_and_json_agree(self, capsys):
        _, out, _ = run(capsys, "surjections", "--knot", "3_1",
                        "--group", "D3")
        code, report, _ = run_json(capsys, "surjections", "--knot", "3_1",
                                   "--group", "D3")
        assert code == 0
        [rec] = report["results"]
        assert f"{rec['count']} surjections" in out
        assert f"({rec['count_up_to_conjugacy']} up to conjugacy)" in out
        assert rec["count"] == 6 and rec["count_up_to_conjugacy"] == 1

    def test_klein_four_rejected_with_hint(self, capsys):
        code, _, err = run(capsys, "surjections", "--knot", "3_1",
                           "--group", "C2xC2")
        assert code == 2
        assert "not normally generated by one element" in err

    def test_no_surjection_exit(self, capsys):
        code, _, _ = run(capsys, "surjections", "--knot", "4_1",
                         "--group", "D3")
        assert code == 2

    def test_empty_knot_list(self, capsys):
        code, report, _ = run_json(capsys, "surjections", "--group", "D3")
        assert code == 0 and report["results"] == []


class TestGroupsList:
    def test_lists_catalog(self, capsys):
        code, report, _ = run_json(capsys, "groups", "list")
        assert code == 0
        assert len(report["results"]) == 35
        specs = {r["spec"] for r in report["results"]}
        assert {"C1", "C23", "D9", "Dic5", "G(3,7|2)", "A4",
                "D3sC3", "D3xC3"} <= specs

    def test_text_mentions_orders(self, capsys):
        code, out, _ = run(capsys, "groups", "list")
        assert code == 0
        assert "D9" in out and "order  18" in out


class TestTableSources:
    def test_table_flag(self, capsys, tmp_path):
        path = tmp_path / "mini.json"
        path.write_text(json.dumps({"knots": [
            {"name": "tiny", "pd": [[1, 4, 2, 5], [3, 6, 4, 1],
                                    [5, 2, 6, 3]]}]}))
        code, report, _ = run_json(capsys, "alexander", "--all-knots",
                                   "--table", str(path))
        assert code == 0
        assert [r["knot"] for r in report["results"]] == ["tiny"]

    def test_env_override(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "mini.json"
        path.write_text(json.dumps({"knots": [
            {"name": "only", "pd": [[1, 4, 2, 5], [3, 6, 4, 1],
                                    [5, 2, 6, 3]]}]}))
        monkeypatch.setenv("TALEX_TABLE", str(path))
        code, report, _ = run_json(capsys, "alexander", "--all-knots")
        assert code == 0
        assert [r["knot"] for r in report["results"]] == ["only"]

    def test_bad_table_path(self, capsys):
        code, _, err = run(capsys, "alexander", "--knot", "3_1",
                           "--table", "/nonexistent/table.json")
        assert code == 3 and "cannot load knot table" in err
