"""CLI behaviour: outputs, exit codes, filters and load errors."""
import cmath
import json
import os
import subprocess
import sys
import tempfile

CLI, ROOT = sys.argv[1], sys.argv[2]
FIELDS = os.path.join(ROOT, "data", "fields")
failures = []


def run(*args, cwd=FIELDS):
    p = subprocess.run([CLI, *args], cwd=cwd, capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def check(ok, what):
    print(("ok   " if ok else "FAIL ") + what)
    if not ok:
        failures.append(what)


code, out, _ = run("resolve", "--dim", "2", "--max-steps", "40", "cusp3.field", "--dot")
check(code == 0 and out.startswith("digraph"), "resolve --dot exits 0 with a digraph")
check(all(f"weight {w}" in out for w in (-3, -2, -1)), "cusp tree carries weights -3, -2, -1")
check(out.count("shape=ellipse") == 3, "cusp tree has three divisor nodes")

code, out, _ = run("classify", "xabc.field")
rep = json.loads(out)["report"]
check(code == 0 and rep["class"] == "saddle_node(1)" and rep["saddle_node_rank"] == 1, "classify X_abc: saddle-node rank 1")
check(sorted(r["value"] for r in rep["eigen"]["roots"]) == ["-1", "0", "1"], "classify X_abc: exact eigenvalues")

code, out, _ = run("dynamics", "holonomy", "--loop-radius", "0.1", "--base", "y", "saddle13.field")
re_, im_ = json.loads(out)["ratio"][0]
check(code == 0 and abs(complex(re_, im_) - cmath.exp(-2j * cmath.pi / 3)) < 1e-4, "holonomy of the (1, -3) saddle")

with tempfile.TemporaryDirectory() as tmp:
    csv = os.path.join(tmp, "lift.csv")
    code, _, _ = run("dynamics", "holonomy", "--base", "y", "--csv", csv, "saddle12.field")
    with open(csv) as f:
        rows = f.read().splitlines()
    check(code == 0 and rows[0] == "t,re_x,im_x,re_y,im_y" and len(rows) >= 65, "holonomy --csv writes samples")

code, out, _ = run("dynamics", "time-form", "--path", "arc:0,0,0.1,0,pi", "x_square.field")
v = json.loads(out)["value"]
check(code == 0 and abs(complex(*v) - 20) < 2e-5, "time-form of x^2 over a half circle")
code, out, _ = run("dynamics", "semicomplete", "x_cube.field")
check(code == 0 and json.loads(out)["verdict"] == "not_semicomplete", "semicomplete verdict for x^3")
code, out, _ = run("dynamics", "trace", "--F", "x", "--H", "1", "--start", "0.3,0.4", "--t-max", "1")
check(code == 0 and json.loads(out)["stop"] == "t_max", "trace runs to t_max")
code, out, _ = run("dynamics", "lift", "--base", "x", "--path", "ray:0.1,0,5", "--fiber", "0.01", "--fiber", "0.01", "siegel3.field")
check(code == 0 and not json.loads(out)["escaped"], "lift along a ray")

code, out, _ = run("integrals", "two_integrals.field", "--integral", "x*z", "--integral", "(y^2 - x^3)*z^2")
j = json.loads(out)
check(code == 0 and all(c["invariant"] for c in j["candidates"]) and j["independent"], "integrals: both candidates invariant")
code, _, _ = run("integrals", "cusp3_printed.field", "--integral", "x^3 - y^2")
check(code == 1, "integrals: a non-invariant candidate exits 1")

code, out, _ = run("resolve", "--max-steps", "12", "--no-weighted", "sancho_sanz.field")
check(code == 1 and json.loads(out)["status"] == "budget_exhausted", "budget exhausted exits 1")
code, out, _ = run("resolve", "sancho_sanz.field")
j = json.loads(out)
check(code == 0 and j["weighted_blowups"] == 1 and j["persistent_nilpotent"]["matched"], "resolve 3-D with one weighted blow-up")

code, out, _ = run("blowup", "--center", "curve", "--free-var", "z", "--chart-var", "x", "--weights", "2,1", "weighted_pole.field")
check(code == 0 and json.loads(out)["charts"][0]["pole_order"] == 1, "weighted blow-up reports the pole")

code, out, _ = run("corpus", "--dir", os.path.join(ROOT, "corpus"), "--filter", "jouanolou")
names = [f["name"] for f in json.loads(out)["fixtures"]]
check(code == 0 and len(names) == 4 and all(n.startswith("jouanolou") for n in names), "corpus --filter jouanolou")

with tempfile.TemporaryDirectory() as tmp:
    bad = os.path.join(tmp, "broken.json")
    with open(bad, "w") as f:
        f.write('{"name": "broken", "group": ')
    code, _, err = run("corpus", "--dir", tmp)
    check(code == 2 and "broken.json" in err, "corrupted fixture: exit 2 naming the file")
    src = os.path.join(tmp, "bad.field")
    with open(src, "w") as f:
        f.write("vars: x, y\nkind: field\nx + * y\ny\n")
    code, _, err = run("classify", src)
    check(code == 2 and "line 3" in err, "parse error: exit 2 with line and column")

code, _, _ = run("classify")
check(code == 2, "missing argument: exit 2")
code, _, _ = run("frobnicate")
check(code == 2, "unknown subcommand: exit 2")

# Round trip: render(parse(f)) is a fixed point for every corpus field.
for name in sorted(os.listdir(FIELDS)):
    code, once, _ = run("render", name)
    with tempfile.NamedTemporaryFile("w", suffix=".field", delete=False) as f:
        f.write(once)
    code2, twice, _ = run("render", f.name)
    os.unlink(f.name)
    check(code == 0 and code2 == 0 and once == twice, "render round trip " + name)

sys.exit(1 if failures else 0)
