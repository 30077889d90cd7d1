import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

from joinperm import reals, topology, uv
from joinperm.cli import build_glue, main
from joinperm.join import Collection, constant_range, jp_bruteforce, sjp_bruteforce
from joinperm.prf import glue_eval

INST = Path(__file__).resolve().parent.parent / "instances"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    text = out.getvalue() or err.getvalue()
    return code, json.loads(text), text


def write(tmp_path, obj, name="inst.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


def test_check_theorem_indiscrete():
    code, rep, _ = run("check-theorem", INST / "indiscrete-sierpinski.json")
    assert code == 0
    assert rep == {"criterion": False, "bruteforce": False, "converse_applicable": True}


def test_check_theorem_discrete_matches_library():
    code, rep, _ = run("check-theorem", INST / "discrete-sierpinski.json")
    X = topology.FiniteTopology.discrete(["a", "b"])
    Y = topology.FiniteTopology([0, 1], [set(), {0}, {0, 1}])
    lib = topology.theorem_tcont_check([{"a"}, {"b"}], X, Y)
    assert code == 0 and rep == lib.as_dict() and rep["criterion"]


def test_one_element_range_instance():
    code, rep, _ = run("check-sjp", INST / "one-element-range.json", "--class", "constant-range")
    assert code == 0 and rep["verdict"] is False
    assert rep["counterexample"] == [[0, 0], [2, 1]]
    code, rep, _ = run("check-sjp", INST / "one-element-range.json", "--class", "constant-range", "--mode", "jp")
    assert code == 0 and rep["verdict"] is True


def test_check_sjp_matches_library():
    A = Collection([{0, 1}, {1, 2}])
    for mode, fn in (("sjp", sjp_bruteforce), ("jp", jp_bruteforce)):
        _, rep, _ = run("check-sjp", INST / "one-element-range.json", "--class", "constant-range", "--mode", mode)
        lib = fn(A, constant_range, [0, 1])
        assert rep["verdict"] == lib.verdict and rep["checked"] == lib.checked


def test_check_sjp_uv_default_class():
    code, rep, _ = run("check-sjp", INST / "uv-split.json")
    lib = sjp_bruteforce(Collection([{"p"}, {"q"}]), uv.uv_class([{"p", "q"}], [{0}, {1}]), [0, 1])
    assert code == 0 and rep["class"] == "uv" and rep["verdict"] == lib.verdict is False


def test_check_sep_uv():
    code, rep, _ = run("check-sep", INST / "uv-split.json")
    assert code == 0 and rep["holds"] is False and rep["failures"] == [1, 2]
    code, rep, _ = run("check-sep", INST / "one-element-range.json", "--include-trivial")
    assert rep["holds"] is True and set(rep["separators"]) == {"0", "1", "2", "3"}


def test_check_sep_topology():
    _, rep, _ = run("check-sep", INST / "indiscrete-sierpinski.json")
    assert rep["holds"] is False
    _, rep, _ = run("check-sep", INST / "discrete-sierpinski.json")
    assert rep["holds"] is True and rep["separators"] == {"1": ["a"], "2": ["b"]}


def test_check_sep_prf_and_real():
    code, rep, _ = run("check-sep", INST / "pairs-overlap.json")
    assert code == 0 and rep["holds"] is True
    code, rep, _ = run("check-sep", INST / "partition.json", "--include-trivial")
    assert code == 0 and len(rep["separators"]) == 8
    assert rep["separators"]["1"] == "OpenSet((-inf, 0))"
    assert rep["separators"]["7"] == "OpenSet((-inf, inf))"


def test_glue_eval_matches_library():
    data = json.loads((INST / "evens-odds.json").read_text())
    G = build_glue(data)
    for x in (0, 7, 48, 49):
        code, rep, _ = run("glue-eval", INST / "evens-odds.json", "--x", x, "--budget", 500)
        assert code == 0 and rep["result"] == glue_eval(G, (x,), 500)
    code, rep, _ = run("glue-eval", INST / "evens-odds.json", "--x", 77, "--budget", 300)
    assert code == 0 and rep["result"] == "diverged"


def test_glue_eval_pairs():
    code, rep, _ = run("glue-eval", INST / "pairs-overlap.json", "--x", "0,1", "--budget", 500)
    assert code == 0 and rep["result"] == 6 and rep["x"] == [0, 1]
    code, rep, _ = run("glue-eval", INST / "pairs-overlap.json", "--x", "3", "--budget", 50)
    assert code == 2 and rep["error"] == "schema"


def test_arctan_command():
    code, rep, _ = run("arctan", "--x", "1", "--eps", "1/1000000")
    assert code == 0
    lo, hi = (Fraction(v) for v in rep["interval"])
    assert hi - lo <= Fraction(1, 10**6)
    pi4 = mpmath.pi / 4
    assert mpmath.mpf(lo.numerator) / lo.denominator < pi4 < mpmath.mpf(hi.numerator) / hi.denominator
    lib = reals.eval_to_precision(reals.arctan_name(reals.rat_name(1)), Fraction(1, 10**6))
    assert rep["interval"] == list(lib.as_strings())


def test_cases_command():
    code, rep, _ = run("cases", "--x", 1, "--t", 2, "--y", 5, "--z", 9, "--eps", "1/1000000")
    assert code == 0 and rep["status"] == "ok"
    lo, hi = (Fraction(v) for v in rep["interval"])
    assert lo < 5 < hi
    code, rep, _ = run("cases", "--x", 2, "--t", 2, "--y", 0, "--z", 1, "--eps", "1/2", "--budget", 20_000)
    assert code == 4 and rep["status"] == "budget-exhausted"
    assert Fraction(rep["narrowest_width"]) > 1


def test_budget_exit_for_arctan():
    code, rep, _ = run("arctan", "--x", "1", "--eps", "1/1000000000000", "--budget", "5")
    assert code == 4 and rep["status"] == "budget-exhausted"


def test_schema_errors(tmp_path):
    bad = write(tmp_path, {"kind": "topology", "space": {"carrier": ["a"]}})
    code, rep, _ = run("check-theorem", bad)
    assert code == 2 and rep["error"] == "schema"
    code, rep, _ = run("check-theorem", INST / "evens-odds.json")
    assert code == 2
    notjson = tmp_path / "x.json"
    notjson.write_text("{")
    assert run("check-sep", notjson)[0] == 2
    assert run("arctan", "--x", "abc", "--eps", "1")[0] == 2
    assert run("arctan", "--x", "1", "--eps", "0")[0] == 2
    stray = write(tmp_path, {"kind": "topology",
                             "space": {"carrier": ["a"], "opens": [[], ["a", "z"]]},
                             "target": {"carrier": [0], "opens": [[], [0]]},
                             "collection": [["a"]]}, "stray.json")
    assert run("check-sep", stray)[0] == 2


def test_too_large_exit(tmp_path):
    pts = list(range(12))
    inst = write(tmp_path, {"kind": "uv_desk", "U": [[x] for x in pts], "V": [[v] for v in range(4)],
                            "collection": [pts[:7], pts[5:]]})
    code, rep, _ = run("check-sjp", inst, "--cap", 1000)
    assert code == 3 and rep["error"] == "instance-too-large"


def test_reports_are_byte_deterministic():
    argvs = [("check-theorem", INST / "one-element-range.json"),
             ("check-sep", INST / "partition.json"),
             ("check-sjp", INST / "discrete-sierpinski.json"),
             ("arctan", "--x=-7/3", "--eps", "1/1000")]
    for argv in argvs:
        assert run(*argv)[2] == run(*argv)[2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "joinperm", "check-theorem",
                           str(INST / "indiscrete-sierpinski.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["converse_applicable"] is True


def test_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([], stdout=io.StringIO(), stderr=io.StringIO())
    assert exc.value.code == 2
