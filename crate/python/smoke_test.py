"""Smoke test for the Python bindings and the gtkit command-line tool.

Run after `pip install -e crates/py --no-build-isolation` and `cargo build`:

    python python/smoke_test.py
"""

import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema

import gtkit

ROOT = Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "crates" / "cli" / "schema"


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


def check_bindings():
    sigma3 = gtkit.System.family("sigma", 3)
    assert len(sigma3) == 2, sigma3
    assert sigma3.krull_dimension() == 3
    cert = sigma3.regular_sequence()
    assert cert["verdict"]["kind"] == "regular", cert
    assert sigma3.equidimensional()["concluded_dim"] == 3
    jsonschema.validate(json.loads(sigma3.to_json()), schema("system.schema.json"))

    s = gtkit.System(["x11", "x12"], ["x11^2", "x11*x12"])
    assert not s.contains("x11")
    assert s.contains("x11", radical=True)
    assert sorted(s.quotient("x11").generators) == ["x11", "x12"]
    assert s.koszul(4)["verdict"]["kind"] == "homology_found_at"
    assert gtkit.System.from_json(s.to_json()).generators == s.generators

    modular = gtkit.System.family("gamma", 3, field="GF(101)")
    assert modular.field == "GF(101)"
    assert modular.krull_dimension() == 3

    try:
        gtkit.System.family("gamma", 3).groebner_basis(budget_pairs=1)
    except gtkit.BudgetExceeded:
        pass
    else:
        raise AssertionError("pair budget of 1 should be exceeded")

    try:
        gtkit.System(["x11"], ["x22"])
    except ValueError:
        pass
    else:
        raise AssertionError("unknown variable accepted")

    cycle = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert not gtkit.strongly_nilpotent(cycle)
    assert gtkit.strongly_nilpotent([[0, Fraction(1, 2)], [0, 0]])
    assert gtkit.phi(cycle) == [["0"], ["0", "0"], ["0", "0", "-1"]]

    probe = gtkit.fiber_probe(3, 2, trials=10, seed=4)
    assert probe["difference_check"] and probe["full_rank_count"] == 10

    report = gtkit.verify("ovsienko", n=2)
    jsonschema.validate(report, schema("report.schema.json"))
    assert report["verdict"] == "verified_exact"
    assert report["artifacts"]["concluded_dim"] == 1
    assert gtkit.verify("components", n=3)["verdict"] == "FAILED"
    assert gtkit.verify("gl4", checks=["homs"])["verdict"] == "verified_modular"
    print("bindings: ok")


def find_cli():
    for profile in ("release", "debug"):
        exe = ROOT / "target" / profile / "gtkit"
        if exe.exists():
            return exe
    return None


def check_cli():
    exe = find_cli()
    if exe is None:
        print("cli: skipped (run `cargo build -p gtkit` first)")
        return
    env = {k: v for k, v in os.environ.items() if k != "GTKIT_BUDGET_SECONDS"}

    def run(*args):
        p = subprocess.run([str(exe), *args], capture_output=True, text=True, env=env)
        return p.returncode, (json.loads(p.stdout) if p.stdout.strip() else None)

    out_schema = schema("output.schema.json")
    code, out = run("verify", "--claim", "ovsienko", "--n", "2")
    assert code == 0, code
    jsonschema.validate(out, out_schema)
    jsonschema.validate(out["result"], schema("report.schema.json"))

    code, out = run("gen", "--family", "chi", "--n", "3")
    assert code == 0
    jsonschema.validate(out["result"], schema("system.schema.json"))

    code, out = run("verify", "--claim", "components", "--n", "3")
    assert code == 1 and out["status"] == "FAILED"
    code, _ = run("verify", "--claim", "weak", "--n", "9")
    assert code == 3
    print("cli: ok")


if __name__ == "__main__":
    check_bindings()
    check_cli()
    sys.exit(0)
