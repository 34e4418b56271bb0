"""CLI contract checks: JSON outputs validate against the shipped schemas,
table mode carries the same data, exit codes and error objects."""

import json
import pathlib
import subprocess
import sys

import jsonschema

BIN = sys.argv[1]
ROOT = pathlib.Path(sys.argv[2])
SCHEMAS = {p.name[: -len(".schema.json")]: json.loads(p.read_text()) for p in (ROOT / "schemas").glob("*.schema.json")}
FIX = ROOT / "fixtures"
failures = []


def run(args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env, timeout=300)


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


def scalars(value, out):
    if isinstance(value, dict):
        for v in value.values():
            scalars(v, out)
    elif isinstance(value, list):
        for v in value:
            scalars(v, out)
    elif isinstance(value, bool):
        out.add("true" if value else "false")
    elif value is not None:
        out.add(str(value))
    return out


CASES = [
    ["height", "--field", "F3", "--point", "[t^2+1 : t]"],
    ["height", "--field", "F4", "--point", "[t : 1]", "--ext", "2"],
    ["local-heights", "--field", "F5", "--point", "[t^2 : t*(t+1)]"],
    ["canheight", "--field", "F2", "--map", "z^2", "--point", "[t:1]", "--eps", "1/1000"],
    ["canheight", "--field", "F2", "--map", "z^2+t", "--point", "[0:1]", "--polarization", "2"],
    ["prep", "--field", "F3", "--map", "z^2-1", "--point", "[1:1]"],
    ["prep", "--field", "F2", "--map", "z^2+t", "--point", "[0:1]"],
    ["prep-scan", "--field", "F2", "--map", "z^2", "--height", "1", "--ext", "2"],
    ["nt-height", "--field", "F5", "--curve", "[t^2+3, 1]", "--point", "(0, 1)"],
    ["nt-pair", "--field", "F5", "--curve", "[t^2+3, 1]", "--point", "(0, 1)", "--point", "(1, t)"],
    ["torsion", "--field", "F5", "--curve", "[0, t^2]", "--point", "(0, t)"],
    ["gram", "--field", "F5", "--curve", "[t^2+3, 1]", "--point", "(0, 1)", "--point", "(1, t)", "--threads", "2"],
    ["fiber-check", "--type", "I3"],
    ["fiber-check", "--fiber", '{"matrix": [[1]], "mult": [1]}'],
    ["flatten", "--model", str(FIX / "elliptic_one_i2.json"), "--divisor", str(FIX / "divisor_p_minus_o.json")],
    ["pair", "--model", str(FIX / "trivial_p1.json"), "--divisor", str(FIX / "divisor_trivial.json")],
    ["fh-check", "--model", str(FIX / "elliptic_one_i2.json"), "--divisor", str(FIX / "divisor_p_minus_o.json")],
    ["rigidity", "--field", "F4", "--map", "z^2", "--map2", "z^3", "--height", "1"],
    ["polarization", "--field", "F2", "--map", "z^2+t", "--degree", "3", "--sample", "4", "--point", "[0:1]"],
]

for args in CASES:
    name = " ".join(args[:1])
    res = run(args)
    check(res.returncode == 0, f"{args}: exit {res.returncode}: {res.stderr}")
    if res.returncode:
        continue
    out = json.loads(res.stdout)
    try:
        jsonschema.validate(out, SCHEMAS[args[0]])
    except jsonschema.ValidationError as e:
        check(False, f"{args}: schema: {e.message}")
    check(out["config"]["seed"] == 20240521, f"{args}: seed recorded")
    table = run([*args, "--format", "table"])
    check(table.returncode == 0, f"{args}: table mode exit")
    missing = [s for s in scalars(out, set()) if s not in table.stdout]
    check(not missing, f"{args}: table mode lacks {missing[:5]}")

# Worked examples.
out = json.loads(run(CASES[3]).stdout)["result"]["height"]
check(out["value"] == "1" and out["exact"], "canheight z^2 at [t:1] is 1, exact")
out = json.loads(run(["fiber-check", "--type", "I3"]).stdout)["result"]
check(out["pass"] and out["kernel"] == [["1", "1", "1"]], "fiber-check I3 kernel (1,1,1)")
out = json.loads(run(CASES[0]).stdout)["result"]
check(out["height"] == 2, "height [t^2+1 : t] = 2")
out = json.loads(run(CASES[13]).stdout)["result"]
check(not out["pass"], "fiber-check [[1]] fails")

# Seeds and threads are honoured and recorded.
out = json.loads(run([*CASES[2], "--seed", "7", "--threads", "3"]).stdout)
check(out["config"]["seed"] == 7 and out["config"]["threads"] == 3, "seed/threads recorded")

# Errors: exit codes and the stderr error object.
ERRORS = [
    (["height", "--field", "F3", "--point", "[t : "], 1, "validation"),
    (["canheight", "--field", "F2", "--map", "z", "--point", "[t:1]"], 1, "domain"),
    (["prep-scan", "--field", "F2", "--map", "z^2", "--height", "6", "--enum-cap", "100"], 2, "resource"),
    (["canheight", "--field", "F2", "--map", "z^2+t", "--point", "[0:1]", "--iter-cap", "2"], 2, "resource"),
    (["height", "--field", "F6", "--point", "[t:1]"], 1, None),
    (["pair", "--model", str(FIX / "elliptic_one_i2.json"), "--divisor", '{"horizontal": {"P": 1}}'], 1, "domain"),
    (["fiber-check", "--fiber", '{"matrix": [[-2, 1], [0, -2]], "mult": [1, 1]}'], 1, "validation"),
]
for args, code, kind in ERRORS:
    res = run(args)
    check(res.returncode == code, f"{args}: exit {res.returncode}, expected {code}")
    try:
        err = json.loads(res.stderr)
        jsonschema.validate(err, SCHEMAS["error"])
        if kind:
            check(err["error"]["kind"] == kind, f"{args}: error kind {err['error']['kind']}")
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        check(False, f"{args}: error object: {e}")

env = {"FFDYN_ENUM_CAP": "10", "PATH": "/usr/bin:/bin"}
res = run(["prep-scan", "--field", "F2", "--map", "z^2", "--height", "2"], env=env)
check(res.returncode == 2, "FFDYN_ENUM_CAP caps the scan")
res = run(["prep-scan", "--field", "F2", "--map", "z^2", "--height", "2", "--enum-cap", "1000"], env=env)
check(res.returncode == 0, "--enum-cap wins over FFDYN_ENUM_CAP")
res = run(["height", "--point", "[t:1]"], env={"FFDYN_ITER_CAP": "zero", "PATH": "/usr/bin:/bin"})
check(res.returncode == 1, "bad env var is a validation error")

for args in (["nosuch"], ["height", "--nosuch"], ["canheight", "--point", "[t:1]"], ["height", "--format", "xml"]):
    check(run(args).returncode == 64, f"{args}: usage error")

# --emit-schema reproduces the shipped files.
res = run(["--emit-schema"])
check(res.returncode == 0 and json.loads(res.stdout) == SCHEMAS, "--emit-schema prints every shipped schema")
res = run(["--emit-schema=canheight"])
check(res.returncode == 0 and json.loads(res.stdout) == SCHEMAS["canheight"], "--emit-schema NAME")

# Input fixtures validate against the input schemas.
for f in FIX.glob("*.json"):
    data = json.loads(f.read_text())
    schema = SCHEMAS["divisor" if f.name.startswith("divisor") else "model"]
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as e:
        check(False, f"{f.name}: {e.message}")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
