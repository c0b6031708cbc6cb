"""Every JSON output of the CLI validates against its shipped schema."""
import json
import os
import subprocess
import sys

import jsonschema

CLI, ROOT = sys.argv[1], sys.argv[2]
FIELDS = os.path.join(ROOT, "data", "fields")
failures = []


def schema(name):
    with open(os.path.join(ROOT, "schemas", name + ".schema.json")) as f:
        return json.load(f)


def validate(name, doc, what):
    try:
        jsonschema.validate(doc, schema(name))
        print("ok   " + what)
    except jsonschema.ValidationError as e:
        print("FAIL " + what + ": " + e.message)
        failures.append(what)


def cli(*args):
    p = subprocess.run([CLI, *args], cwd=FIELDS, capture_output=True, text=True)
    return json.loads(p.stdout)


fields = sorted(f for f in os.listdir(FIELDS) if f.endswith(".field"))
for f in fields:
    validate("classify", cli("classify", f), "classify " + f)

for f in ["cusp3.field", "cusp5.field", "saddle13.field", "sancho_sanz.field", "airy.field", "homogeneous2.field"]:
    validate("tree", cli("resolve", f), "resolve " + f)
validate("tree", cli("resolve", "--max-steps", "3", "--no-weighted", "sancho_sanz.field"), "resolve with a small budget")

validate("blowup", cli("blowup", "--all-charts", "cusp3.field"), "blowup cusp3")
validate("blowup", cli("blowup", "--center", "curve", "--free-var", "z", "--weights", "2,1", "--all-charts", "weighted_pole.field"),
         "weighted blowup")
validate("integrals", cli("integrals", "xabc.field", "--jet-degree", "4"), "integrals xabc")
validate("integrals", cli("integrals", "two_integrals.field", "--integral", "x*z", "--integral", "(y^2 - x^3)*z^2"),
         "integrals with candidates")
validate("holonomy", cli("dynamics", "holonomy", "--base", "y", "saddle13.field"), "holonomy")
validate("lift", cli("dynamics", "lift", "--path", "circle:0,0,0.1", "--fiber", "0.01", "saddle12.field"), "lift")
validate("quadrature", cli("dynamics", "time-form", "--path", "arc:0,0,0.1,0,pi", "x_cube.field"), "time-form")
for f in ["x_square.field", "x_cube.field"]:
    validate("semicomplete", cli("dynamics", "semicomplete", f), "semicomplete " + f)
validate("trajectory", cli("dynamics", "trace", "--F", "x", "--H", "1", "--theta", "0.7", "--start", "0.5"), "trace")
validate("report", cli("corpus", "--dir", os.path.join(ROOT, "corpus")), "corpus report")

corpus = os.path.join(ROOT, "corpus")
for f in sorted(os.listdir(corpus)):
    with open(os.path.join(corpus, f)) as fh:
        validate("fixture", json.load(fh), "fixture " + f)

sys.exit(1 if failures else 0)
