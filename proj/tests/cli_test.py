#!/usr/bin/env python3
"""End-to-end checks of the heraklit command line: output and exit codes."""
import os
import subprocess
import sys
import tempfile
from pathlib import Path

exe, fixtures, validator = sys.argv[1], Path(sys.argv[2]), sys.argv[3]
phils = str(fixtures / "philosophers.hkl")
prod = str(fixtures / "production.hkl")
failures = []


def run(*args, env=None):
    return subprocess.run([exe, *args], capture_output=True, text=True, env=env)


def expect(name, cond, proc=None):
    if not cond:
        extra = f"\n  rc={proc.returncode}\n  out={proc.stdout[:400]}\n  err={proc.stderr[:400]}" if proc else ""
        failures.append(name + extra)


p = run("iso", phils, "forks_in_a_cycle", "phils_in_a_cycle")
expect("iso cycles", p.returncode == 0 and p.stdout.startswith("ISOMORPHIC 25 nodes"), p)

p = run("iso", phils, "fork", "phil")
expect("iso different", p.returncode == 1 and p.stdout.strip() == "NOT-ISOMORPHIC", p)

p = run("eval", phils, "no_such_name")
expect("unbound name", p.returncode == 2 and "UnboundName" in p.stderr, p)

p = run("reach", phils, "phils_in_a_cycle")
expect("reach", p.returncode == 0 and p.stdout.startswith("11 markings"), p)

p = run("reach", phils, "phils_in_a_cycle", "--invariant", "eating <= 1")
expect("reach invariant violated", p.returncode == 1 and "invariant violated" in p.stdout, p)

p = run("reach", phils, "phils_in_a_cycle", "--invariant", "available >= 1")
expect("reach invariant holds", p.returncode == 0 and "invariant holds" in p.stdout, p)

p = run("reach", phils, "phils_in_a_cycle", "--invariant", "bogus > 1")
expect("reach bad predicate", p.returncode == 2, p)

p = run("reach", phils, "phils_in_a_cycle", "--max-markings", "4")
expect("reach truncated", p.returncode == 1 and "(truncated)" in p.stdout, p)

p = run("factorize", phils, "forks_in_a_cycle")
expect("factorize", p.returncode == 0 and p.stdout.startswith("10 atoms") and "isomorphic to the net" in p.stdout, p)

p = run("factorize", prod, "production")
expect("factorize production", p.returncode == 0, p)

for f in (phils, prod):
    p = run("check", f)
    expect("check " + f, p.returncode == 0 and "FAIL" not in p.stdout, p)

a, b = run("eval", phils, "phils_in_a_cycle"), run("eval", phils, "phils_in_a_cycle")
expect("eval deterministic", a.returncode == 0 and a.stdout == b.stdout and '"format": "heraklit-module/1"' in a.stdout, a)

with tempfile.TemporaryDirectory() as d:
    out = os.path.join(d, "line.pnml")
    p = run("export-pnml", prod, "line", out)
    expect("export-pnml", p.returncode == 0 and os.path.exists(out), p)
    v = subprocess.run([sys.executable, validator, out], capture_output=True, text=True)
    expect("exported PNML validates", v.returncode == 0, v)

    dot = os.path.join(d, "think.dot")
    p = run("render", phils, "think", "--dot", dot)
    expect("render", p.returncode == 0 and Path(dot).read_text().startswith("digraph"), p)

    dumped = os.path.join(d, "fork.json")
    p = run("dump", phils, "fork", "-o", dumped)
    expect("dump to file", p.returncode == 0 and Path(dumped).read_text() == run("eval", phils, "fork").stdout, p)

p = run("export-pnml", prod, "line")
expect("missing argument", p.returncode == 2, p)

p = run("frobnicate")
expect("unknown command", p.returncode == 2, p)

with tempfile.NamedTemporaryFile("w", suffix=".hkl", delete=False) as bad:
    bad.write("alphabet { places: p }\nx := x . x\n")
p = run("check", bad.name)
expect("recursive definition", p.returncode == 2 and "RecursiveDefinition" in p.stderr, p)
os.unlink(bad.name)

p = run("export-pnml", phils, "fork", "-")
expect("pnml to stdout", p.returncode == 0 and "<pnml" in p.stdout, p)

p = run("selftest", "--seed", "3", "--count", "30")
expect("selftest", p.returncode == 0 and p.stdout.startswith("seed 3") and p.stdout.count("PASS") == 5, p)

env = dict(os.environ, HERAKLIT_SEED="99")
p = run("selftest", "--seed", "3", "--count", "10", env=env)
expect("selftest seed override", p.returncode == 0 and p.stdout.startswith("seed 99"), p)

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
