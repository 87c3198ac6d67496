import json

import pytest
from helpers.context import TestContext
from helpers.objects import fork_omega, sierpinski, two_point_scheme
from helpers.utils import run_cli

from borelkit.broom import Handle
from borelkit.config import BoundsArgs
from borelkit.ordinal import OMEGA, Ordinal
from borelkit.random import make_rng
from borelkit.serialize.metadata import save_counterexample
from borelkit.trees.canonical import canonical_tree
from borelkit.trees.expr import Point, Ray
from borelkit.verify.suites import generate_ordinal


@pytest.fixture
def context():
    return TestContext()


def test_ord_show(capsys):
    code, out, _ = run_cli(capsys, "ord", "show", "w^2 + 5")
    assert code == 0
    assert out == {
        "ordinal": "w^2*1 + 5",
        "limit": "w^2*1",
        "n": 2,
        "parity": 1,
        "alpha_prime": "w^2*1 + 2",
    }


def test_ord_arithmetic(capsys):
    assert run_cli(capsys, "ord", "add", "1", "w")[1] == {"sum": "w^1*1"}
    assert run_cli(capsys, "ord", "add", "w", "1")[1] == {"sum": "w^1*1 + 1"}
    assert run_cli(capsys, "ord", "pi", "w", "--n", "3")[1] == {"value": "3"}
    assert run_cli(capsys, "ord", "index", "w", "3")[1] == {"index": 3}


def test_parse_error_exits_with_2(capsys):
    code, out, err = run_cli(capsys, "ord", "show", "w^")
    assert code == 2
    assert out is None
    error = json.loads(err)
    assert error["error"] == "ParseError"
    assert "cannot parse ordinal term" in error["message"]


def test_precondition_error_exits_with_3(capsys):
    code, _, err = run_cli(capsys, "ord", "pi", "3")
    assert code == 3
    assert json.loads(err)["error"] == "PreconditionError"

    code, _, err = run_cli(capsys, "tree", "canonical", "--alpha", "2", "--c", "--n", "3")
    assert code == 3
    assert "only allowed for odd ordinals" in json.loads(err)["message"]


def test_rank_of_a_canonical_tree(capsys, context):
    path = context.save(canonical_tree(OMEGA + 1), "canonical.json")
    assert run_cli(capsys, "rank", "--kind", "l", "--tree", path) == (0, {"rank": "w^1*1 + 1"}, "")
    assert run_cli(capsys, "rank", "--kind", "i", "--tree", path)[1] == {"rank": "w^1*1 + 1"}


def test_rank_of_an_ill_founded_tree(capsys, context):
    path = context.save(Ray(0), "ray.json")
    code, _, err = run_cli(capsys, "rank", "--kind", "l", "--tree", path)
    assert code == 3
    assert json.loads(err)["error"] == "IllFoundedTreeError"
    assert run_cli(capsys, "rank", "--kind", "iie", "--tree", path)[1] == {"rank": "0"}


def test_tree_member(capsys, context):
    path = context.save(canonical_tree(2), "t2.json")
    assert run_cli(capsys, "tree", "member", "--tree", path, "--seq", "0,1")[1] == {"member": True}
    assert run_cli(capsys, "tree", "member", "--tree", path, "--seq", "0,1,2")[1] == {"member": False}
    assert run_cli(capsys, "tree", "member", "--tree", path)[1] == {"member": True}
    assert run_cli(capsys, "tree", "member", "--tree", path, "--seq", "a,b")[0] == 2


def test_wrong_document_type(capsys, context):
    path = context.save(sierpinski(), "space.json")
    code, _, err = run_cli(capsys, "rank", "--tree", path)
    assert code == 2
    assert "should hold a TreeExpr" in json.loads(err)["message"]


def test_dot_output(capsys):
    code, out, _ = run_cli(
        capsys, "--format", "dot", "--depth", "1", "--width", "2", "tree", "canonical", "--alpha", "1"
    )
    assert code == 0
    assert isinstance(out, str)
    assert out.startswith("digraph T {")
    assert out.count("->") == 2


def test_dot_output_needs_a_tree_or_a_space(capsys):
    code, _, err = run_cli(capsys, "--format", "dot", "ord", "show", "1")
    assert code == 3
    assert "DOT output is only available" in json.loads(err)["message"]


def test_out_file(capsys, context):
    path = context.get_auto_remove_tmp_dir() / "nested" / "sum.json"
    code, out, _ = run_cli(capsys, "--out", path, "ord", "add", "1", "1")
    assert code == 0
    assert out is None
    assert json.loads(path.read_text()) == {"sum": "2"}


def test_rt_commands(capsys, context):
    scheme = context.save(two_point_scheme(), "scheme.json")
    point = context.save(Point(), "point.json")
    assert run_cli(capsys, "rt", "member", "--scheme", scheme, "--tree", point, "--point", "a")[1] == {"member": True}
    code, out, _ = run_cli(capsys, "rt", "member", "--scheme", scheme, "--tree", point, "--point", "a", "--head", "1")
    assert (code, out) == (0, {"member": False})
    assert run_cli(capsys, "rt", "suslin-op", "--scheme", scheme)[1] == {"value": ["a", "b"]}
    code, _, err = run_cli(capsys, "rt", "member", "--scheme", scheme, "--tree", point, "--point", "z")
    assert code == 3


def test_broom_classify(capsys, context):
    assert run_cli(capsys, "broom", "classify", "--in", context.save(fork_omega(), "fork.json"))[1] == {"rank": "2"}
    path = context.save(Handle((1,), fork_omega()), "handle.json")
    assert run_cli(capsys, "broom", "classify", "--in", path)[1] == {"rank": "3"}


def test_broom_extend_is_deterministic(capsys, context):
    path = context.save(fork_omega(), "fork.json")
    first = run_cli(capsys, "broom", "extend", "--in", path)
    second = run_cli(capsys, "broom", "extend", "--in", path)
    assert first[0] == 0
    assert first == second
    assert run_cli(capsys, "broom", "classify", "--in", path)[1] == {"rank": "2"}


def test_w_operator(capsys, context):
    path = context.save(sierpinski(), "space.json")
    code, out, _ = run_cli(capsys, "topo", "w-op", "--space", path, "--p", '["i"]', "--g", '["i"]')
    assert (code, out) == (0, {"value": ["i", "p"]})
    code, out, _ = run_cli(capsys, "topo", "w-op", "--space", path, "--p", '["i"]')
    assert code == 0
    assert all(out["laws"].values())
    assert run_cli(capsys, "topo", "w-op", "--space", path, "--p", '["i"')[0] == 2


def test_verify_suite(capsys, context):
    directory = context.get_auto_remove_tmp_dir()
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "ordinal", "--cases", "3", "--seed", "7", "--counterexample-dir", directory
    )
    assert code == 0
    assert out["suite"] == "ordinal"
    assert out["seed"] == 7
    assert out["cases"] == 3
    assert out["passed"]
    assert out["counterexample"] is None


def test_verify_needs_a_known_suite(capsys):
    assert run_cli(capsys, "verify")[0] == 2
    code, _, err = run_cli(capsys, "verify", "--suite", "nope")
    assert code == 2
    assert "suite should be a string selected in" in json.loads(err)["message"]


def test_verify_rerun(capsys, context):
    directory = context.get_auto_remove_tmp_dir()
    inputs = generate_ordinal(make_rng(0, 0), BoundsArgs())
    good = save_counterexample(directory, "good.json", "ordinal", 0, 0, "none", inputs)
    assert run_cli(capsys, "verify", "--rerun", good)[1] == {"counterexample": str(good), "passed": True}

    # pi_lambda of a successor ordinal is out of its precondition
    bad = save_counterexample(directory, "bad.json", "ordinal", 0, 0, "none", {**inputs, "lam": Ordinal.of(3)})
    code, _, err = run_cli(capsys, "verify", "--rerun", bad)
    assert code == 4
    error = json.loads(err)
    assert error["error"] == "PropertyFailure"
    assert error["counterexample"] == str(bad)
    assert "PreconditionError" in error["message"]


def test_log_lines_go_to_stderr(capsys, context):
    path = context.save(canonical_tree(2), "t2.json")
    code, out, err = run_cli(capsys, "--log-level", "debug", "rank", "--tree", path)
    assert (code, out) == (0, {"rank": "2"})
    assert "[DEBUG|borelkit]: r_l = 2" in err
    run_cli(capsys, "--log-level", "warning", "ord", "show", "1")
