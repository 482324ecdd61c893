import json

import pytest

from nsatop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def sierp(tmp_path):
    path = tmp_path / "sierp.json"
    path.write_text(json.dumps({"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}))
    return str(path)


@pytest.fixture
def disc3(tmp_path):
    opens = [[], ["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["b", "c"], ["a", "b", "c"]]
    path = tmp_path / "disc3.json"
    path.write_text(json.dumps({"points": ["a", "b", "c"], "opens": opens}))
    return str(path)


@pytest.fixture
def fan3(tmp_path):
    opens = [[], ["0"], ["0", "1"], ["0", "2"], ["0", "1", "2"]]
    path = tmp_path / "fan3.json"
    path.write_text(json.dumps({"points": ["0", "1", "2"], "opens": opens}))
    return str(path)


class TestHyper:
    def test_eval_report(self, capsys):
        code, got = run_json(capsys, "hyper", "eval", "(2+e)/(1+3*e)")
        assert code == 0
        assert got["classification"] == "appreciable"
        assert got["st"] == "2"
        assert got["decomposition"]["real_part"] == "2"

    def test_eval_infinite(self, capsys):
        code, got = run_json(capsys, "hyper", "eval", "1/e")
        assert code == 0
        assert got["classification"] == "infinite" and got["st"] == "+infinity"
        assert "decomposition" not in got

    def test_zero_denominator_exits_2(self, capsys):
        code, got = run_json(capsys, "hyper", "eval", "(1)/(0)")
        assert code == 2
        assert got["error"]["type"] == "ZeroDenominator"

    def test_parse_error_exits_2(self, capsys):
        code, got = run_json(capsys, "hyper", "st", "2 +")
        assert code == 2
        assert got["error"]["type"] == "ExprSyntaxError"

    def test_root(self, capsys):
        code, got = run_json(capsys, "hyper", "root", "4*e^2", "2")
        assert code == 0 and got["root"] == "2*e"

    def test_unrepresentable_root_exits_1(self, capsys):
        code, got = run_json(capsys, "hyper", "root", "1+e", "2")
        assert code == 1 and got["root_exists"] is False


class TestGerm:
    def test_compare_lt(self, capsys):
        code, got = run_json(capsys, "germ", "compare", "rf(1/n)", "ep([];[0])", "lt")
        assert code == 1
        assert got["verdict"] == "false-ae"

    def test_compare_dependent(self, capsys):
        code, got = run_json(capsys, "germ", "compare", "ep([];[0,1])", "ep([];[0])", "eq")
        assert code == 1 and got["verdict"] == "ultrafilter-dependent"

    def test_compare_true(self, capsys):
        code, got = run_json(capsys, "germ", "compare", "rf(1/n)", "1/1000000", "lt")
        assert code == 0 and got["verdict"] == "true-ae"

    def test_mixed_classes_exit_2(self, capsys):
        code, got = run_json(capsys, "germ", "compare", "rf(n)", "ep([];[0,1])", "eq")
        assert code == 2 and got["error"]["type"] == "MixedClasses"

    def test_classify(self, capsys):
        code, got = run_json(capsys, "germ", "classify", "rf((2*n+1)/(n+3))")
        assert code == 0
        assert got["classification"] == "appreciable" and got["st"] == "2"

    def test_classify_residues(self, capsys):
        code, got = run_json(capsys, "germ", "classify", "ep([];[0,1])")
        assert code == 0
        assert got["classification"] == "per-residue-class"
        assert got["residues"] == {"0": "zero", "1": "appreciable"}

    def test_los(self, capsys):
        code, got = run_json(capsys, "germ", "los", "x < x*x", "--bind", "x=rf(n)")
        assert code == 0 and got["verdict"] == "true-ae"


class TestBqf:
    def test_eval_true(self, capsys):
        code, got = run_json(
            capsys, "bqf", "eval", "(forall x in A)(x in B)",
            "--bind", 'A=["a"]', "--bind", 'B=["a","b"]',
        )
        assert code == 0 and got["value"] is True and got["transfer_holds"] is True

    def test_eval_false_exits_1(self, capsys):
        code, got = run_json(
            capsys, "bqf", "eval", "(forall x in A)(x in B)",
            "--bind", 'A=["a","b"]', "--bind", 'B=["a"]',
        )
        assert code == 1 and got["value"] is False

    def test_unbounded_exits_2(self, capsys):
        code, got = run_json(capsys, "bqf", "eval", "(forall x)(x = x)")
        assert code == 2 and got["error"]["type"] == "UnboundedQuantifier"

    def test_define(self, capsys):
        code, got = run_json(
            capsys, "bqf", "define", "(x = a or x = b)",
            "--bound", '["a","b","c"]', "--bind", 'a="a"', "--bind", 'b="b"',
        )
        assert code == 0 and sorted(got["subset"]) == ["a", "b"]


class TestTopo:
    def test_check_single_property(self, capsys, sierp):
        code, got = run_json(capsys, "topo", "check", sierp, "--property", "regular")
        assert code == 1
        verdict = got["properties"]["regular"]
        assert verdict["holds"] is False and verdict["agree"] is True
        assert verdict["witness"] == ["a", ["b"]]

    def test_check_all_discrete(self, capsys, disc3):
        code, got = run_json(capsys, "topo", "check", disc3)
        assert code == 0
        assert all(v["holds"] for v in got["properties"].values())

    def test_malformed_space_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"points": ["a", "b"], "opens": [[], ["a"]]}))
        code, got = run_json(capsys, "topo", "check", str(bad))
        assert code == 2 and got["error"]["type"] == "MissingEmptyOrFull"

    def test_hull_stone_cech(self, capsys, fan3):
        code, got = run_json(capsys, "topo", "hull", fan3, "--stone-cech")
        assert code == 0
        assert got["hull"]["classes"] == [["0", "1", "2"]]

    def test_hull_with_family(self, capsys, disc3, tmp_path):
        fam = tmp_path / "fam.json"
        fam.write_text(json.dumps({"f": {"a": "0", "b": "0", "c": "1"}}))
        code, got = run_json(capsys, "topo", "hull", disc3, str(fam))
        assert code == 0
        assert got["hull"]["classes"] == [["a", "b"], ["c"]]

    def test_discontinuous_family_exits_2(self, capsys, sierp, tmp_path):
        fam = tmp_path / "fam.json"
        fam.write_text(json.dumps({"f": {"a": "0", "b": "1"}}))
        code, got = run_json(capsys, "topo", "hull", sierp, str(fam))
        assert code == 2
        assert got["error"]["type"] == "DiscontinuousFamilyMember"
        assert got["error"]["witness"]["monad"] == ["a", "b"]

    def test_reflect(self, capsys, sierp):
        code, got = run_json(capsys, "topo", "reflect", sierp)
        assert code == 0
        assert got["checks"]["weakly_hausdorff_iff_reflection_hausdorff"] is True

    def test_dot(self, capsys, fan3):
        code, out = run(capsys, "topo", "dot", fan3)
        assert code == 0
        assert out.startswith("digraph") and '"0" -> "1";' in out


class TestAudit:
    def test_audit_three_points(self, capsys):
        code, got = run_json(capsys, "audit", "--max-points", "3")
        assert code == 0
        assert got["all_passed"] is True
        assert got["topology_counts"] == {"1": 1, "2": 4, "3": 29}

    def test_audit_too_large(self, capsys):
        code, got = run_json(capsys, "audit", "--max-points", "9")
        assert code == 2 and got["error"]["type"] == "TooLarge"


class TestDeterminism:
    def test_byte_identical_output(self, capsys, fan3):
        _, first = run(capsys, "topo", "check", fan3)
        _, second = run(capsys, "topo", "check", fan3)
        assert first == second
        _, a1 = run(capsys, "audit", "--max-points", "2", "--seed", "7")
        _, a2 = run(capsys, "audit", "--max-points", "2", "--seed", "7")
        assert a1 == a2

    def test_table_format(self, capsys):
        code, out = run(capsys, "--format", "table", "hyper", "eval", "e")
        assert code == 0
        assert "classification: infinitesimal" in out
