"""Tests for cst/cli.py: subcommands and exit codes."""
import json

import pytest

from cst.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, build_parser, main


class TestSuiteCommands:
    def test_laws_pass(self, descriptor_path, capsys):
        code = main(["laws", descriptor_path("vector2.json"), "--seed", "7", "--cases", "30"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "PASS deformed-associativity seed=7 case=all" in out

    def test_laws_fail(self, descriptor_path, capsys):
        code = main(["laws", descriptor_path("corrupted_table.json"), "--cases", "100"])
        out = capsys.readouterr().out
        assert code == EXIT_FAIL
        assert "FAIL deformed-associativity" in out

    def test_same_seed_same_bytes(self, descriptor_path, capsys):
        args = ["laws", descriptor_path("corrupted_table.json"), "--seed", "5", "--cases", "50"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first

    def test_monad(self, descriptor_path, capsys):
        assert main(["monad", descriptor_path("free_abc.json"), "--cases", "10"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "PASS algebra-associativity" in out
        assert "PASS coefficient-flatten" in out

    def test_lawvere(self, descriptor_path, capsys):
        assert main(["lawvere", descriptor_path("divisors36.json"), "--cases", "10"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "PASS lawvere-functoriality" in out
        assert "PASS roundtrip-structure" in out

    def test_single_suite(self, descriptor_path, capsys):
        assert main(["suite", "roundtrip", descriptor_path("lottery.json"), "--cases", "10"]) == EXIT_OK

    def test_inline_descriptor(self, capsys):
        assert main(["laws", '{"kind": "simplex", "n": 3}', "--cases", "10"]) == EXIT_OK

    def test_record_and_history(self, descriptor_path, patched_db, capsys):
        assert main(["laws", descriptor_path("corrupted_table.json"), "--cases", "100",
                     "--record"]) == EXIT_FAIL
        capsys.readouterr()
        assert main(["history", "--limit", "5"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "laws corrupted-table seed=" in out
        assert "exit=1" in out

    def test_exports(self, descriptor_path, tmp_path, capsys):
        csv_path, xlsx_path = tmp_path / "r.csv", tmp_path / "r.xlsx"
        main(["laws", descriptor_path("face_classifier.json"), "--cases", "10",
              "--csv", str(csv_path), "--xlsx", str(xlsx_path)])
        assert csv_path.exists() and xlsx_path.exists()


class TestErrors:
    def test_bad_descriptor_syntax(self, capsys):
        assert main(["laws", '{"kind": ']) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_invalid_semilattice(self, capsys):
        descriptor = '{"kind": "semilattice", "elements": ["a", "b"], "meet": [[0, 0], [1, 1]]}'
        assert main(["laws", descriptor]) == EXIT_USAGE
        assert "commutativity" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["laws", str(tmp_path / "nope.json")]) == EXIT_USAGE

    def test_zero_cases(self, descriptor_path, capsys):
        assert main(["laws", descriptor_path("vector2.json"), "--cases", "0"]) == EXIT_USAGE

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["frobnicate"])
        assert exc.value.code == 2


class TestEval:
    def test_free_space(self, descriptor_path, capsys):
        combination = json.dumps([[[["a", "1/1"]], "1/3"], [[["b", "1/1"]], "2/3"]])
        assert main(["eval", descriptor_path("free_abc.json"), "--combination", combination]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == [["a", "1/3"], ["b", "2/3"]]

    def test_semilattice(self, descriptor_path, capsys):
        combination = '[[12, "1/2"], [18, "1/2"]]'
        assert main(["eval", descriptor_path("divisors36.json"), "--combination", combination]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "6"

    def test_bad_weights(self, descriptor_path, capsys):
        combination = '[[12, "1/2"], [18, "1/3"]]'
        assert main(["eval", descriptor_path("divisors36.json"), "--combination", combination]) == EXIT_USAGE

    def test_bad_json(self, descriptor_path, capsys):
        assert main(["eval", descriptor_path("divisors36.json"), "--combination", "[["]) == EXIT_USAGE

    @pytest.mark.parametrize("combination", ["5", '[["a"]]', "[12, 18]", '{"12": "1/2"}'])
    def test_combination_shape(self, combination, descriptor_path, capsys):
        code = main(["eval", descriptor_path("divisors36.json"), "--combination", combination])
        assert code == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_fibered_scalar_transport(self, capsys):
        descriptor = json.dumps({
            "kind": "fibered",
            "base": {"elements": ["i", "f"], "meet": [[0, 0], [0, 1]]},
            "fibers": {"f": {"kind": "line"}, "i": {"kind": "line"}},
            "transports": [{"from": "f", "to": "i", "matrix": [["2"]]}],
        })
        combination = '[[["f", "3/1"], "1/2"], [["i", "1/1"], "1/2"]]'
        assert main(["eval", descriptor, "--combination", combination]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == ["i", "7/2"]

    def test_fibered_transport_width(self, capsys):
        descriptor = json.dumps({
            "kind": "fibered",
            "base": {"elements": ["i", "f"], "meet": [[0, 0], [0, 1]]},
            "fibers": {"f": {"kind": "line"}, "i": {"kind": "line"}},
            "transports": [{"from": "f", "to": "i", "matrix": [["1", "2"]]}],
        })
        assert main(["laws", descriptor, "--cases", "5"]) == EXIT_USAGE
        assert "matrix" in capsys.readouterr().err


class TestWorkedExamples:
    def test_friction(self, capsys):
        assert main(["friction", "--cells", "1000"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("cells=1000 F=0.4142")

    def test_friction_with_highs(self, capsys):
        assert main(["friction", "--cells", "100", "--lp"]) == EXIT_OK
        assert "highs F=" in capsys.readouterr().out

    def test_fidelity(self, capsys):
        code = main(["fidelity", "--psi1", "1+0i,0+0i", "--psi2", "0.6+0i,0.8+0i"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.startswith("direct=0.800000000")

    def test_fidelity_unnormalized(self, capsys):
        assert main(["fidelity", "--psi1", "1+0i,1+0i", "--psi2", "1+0i,0+0i"]) == EXIT_USAGE

    def test_schur_horn_inside(self, capsys):
        assert main(["schur-horn", "--diag", "1/3,1/3,1/3", "--eig", "1,0,0"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "inside majorized=true"

    def test_schur_horn_outside(self, capsys):
        assert main(["schur-horn", "--diag", "0.9,0.2,-0.1", "--eig", "1,0,0"]) == EXIT_FAIL
        assert capsys.readouterr().out.strip() == "outside majorized=false"

    def test_schur_horn_negative_diagonal(self, capsys):
        assert main(["schur-horn", "--diag=-1/3,2/3,2/3", "--eig", "1,0,0"]) == EXIT_FAIL
        assert capsys.readouterr().out.strip() == "outside majorized=false"
