import json
import os
import subprocess

import pytest

CLI = os.environ.get("NERON_CLI", os.path.join(os.path.dirname(__file__), "../../build/neron_cli"))


def run(*args, stdin=None):
    p = subprocess.run([CLI, *args], input=stdin, capture_output=True, text=True, timeout=300)
    return p.returncode, p.stdout, p.stderr


def run_json(*args, stdin=None):
    code, out, err = run(*args, stdin=stdin)
    return code, (json.loads(out) if out.strip() else None), err


def test_delta():
    code, out, _ = run_json("delta", "--group", '{"2":[2,1]}')
    assert code == 0
    assert out == {"delta": 4, "delta_prime": 4}
    code, out, _ = run_json("delta", "--json", "{}")
    assert code == 0 and out["delta"] == 0
    code, out, _ = run_json("delta", stdin='{"3":[2,2]}')
    assert code == 0 and out == {"delta": 16, "delta_prime": 12}


def test_delta_bad_input():
    assert run("delta", "--group", '{"4":[1]}')[0] == 2
    assert run("delta", "--group", "{not json")[0] == 2
    assert run("delta", "--group", '{"2":[1,2]}')[0] == 2


def test_realizable():
    code, out, _ = run_json("realizable", "--group", '{"3":[2]}', "--u", "2")
    assert code == 0 and out["realizable"] is True and out["rhs"] == "2"
    code, out, _ = run_json("realizable", "--group", '{"3":[2]}', "--u", "1")
    assert code == 1 and out["realizable"] is False
    code, out, _ = run_json("realizable", "--json", '{"group":{"2":[1]},"t":1,"a":0,"u":0}')
    assert code == 0
    assert run("realizable", "--group", '{"5":[1]}', "--u", "4", "--p", "5")[0] == 2
    assert run("realizable", "--group", '{}', "--u", "1", "--d", "3")[0] == 2


def test_plan_round_trip(tmp_path):
    code, plan, _ = run_json("plan", "--group", '{"2":[2,1],"3":[1]}', "--t", "1", "--u", "2")
    assert code == 0
    assert [b["kind"] for b in plan["blocks"]] == ["tate_product", "cyclic2_single", "unipotent_pad"]
    f = tmp_path / "plan.json"
    f.write_text(json.dumps(plan))
    code, v, _ = run_json("verify-plan", "--file", str(f))
    assert code == 0 and v["ok"] is True
    code, v, _ = run_json("end-to-end", "--file", str(f))
    assert code == 0 and v["ok"] is True
    plan["blocks"].pop(1)
    code, v, _ = run_json("verify-plan", "--json", json.dumps(plan))
    assert code == 1 and v["ok"] is False and v["diagnostics"]


def test_plan_unrealizable():
    code, out, _ = run_json("plan", "--group", '{"3":[2]}', "--u", "1")
    assert code == 1 and out["realizable"] is False


def test_example_piped_to_phi():
    code, model, _ = run_json("example", "ex53", "--l", "3", "--i", "2")
    assert code == 0 and model["l"] == 3
    code, out, _ = run_json("phi", "--check", stdin=json.dumps(model))
    assert code == 0
    assert out["phi"] == [2]
    assert out["graded"] == [[], [2], [], []]
    assert all(p["ok"] for p in out["thm33"])


@pytest.mark.parametrize(
    "args,phi",
    [
        (["ex51", "--ns", "2,4", "--l", "2"], [2, 1]),
        (["ex52", "--l", "2", "--i", "2"], [3, 1]),
        (["ex54", "--l", "2", "--r", "1", "--s", "1"], [3]),
        (["ex55", "--l", "3", "--r", "1"], [2]),
        (["klein"], [1, 1]),
        (["cyclic2"], [1]),
        (["unipotent_pad", "--n", "2"], []),
    ],
)
def test_examples(args, phi):
    code, out, _ = run("example", *args)
    assert code == 0
    code, rep, _ = run_json("phi", stdin=out)
    assert code == 0 and rep["phi"] == phi


def test_precision_error():
    code, out, _ = run("--precision", "3", "example", "ex54", "--l", "2", "--r", "1", "--s", "1")
    assert code == 0
    code, _, err = run("phi", stdin=out)
    assert code == 3
    assert "precision" in err


def test_unknown_example():
    assert run("example", "ex99")[0] == 2


def test_smith_and_coker():
    m = '{"rows":2,"cols":2,"entries":[[2,0],[0,3]]}'
    code, out, _ = run_json("smith", "--json", m)
    assert code == 0 and out["diagonal"] == ["1", "6"] and out["rank"] == 2
    code, out, _ = run_json("coker", "--json", m)
    assert code == 0 and out["invariants"] == ["6"] and out["free_rank"] == 0
    code, out, _ = run_json("coker", "--json", m, "--l", "3")
    assert code == 0 and out["torsion"] == [1] and out["corank"] == 0
    code, out, _ = run_json("coker", "--json", '{"rows":1,"cols":1,"entries":[[0]]}')
    assert code == 0 and out["free_rank"] == 1
    assert run("smith", "--json", '{"rows":2,"cols":2,"entries":[[1]]}')[0] == 2


def test_verify_suite():
    code, out, _ = run_json("verify", "lemma43", "--budget", "7")
    assert code == 0 and out["violations"] == 0 and out["checks"] > 0
    code, out, _ = run_json("--seed", "3", "verify", "lemma45", "--budget", "10")
    assert code == 0 and out["seed"] == 3


def test_verify_lemma43_literal_form_fails():
    code, out, _ = run_json("verify", "lemma43")
    assert code == 1 and out["violations"] == 10
    assert out["stats"]["majorization_violations"] == 0


def test_unknown_suite_and_usage():
    assert run("verify", "nope")[0] == 2
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
