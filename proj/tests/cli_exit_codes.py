"""Runs the CLI on corpus files and checks exit codes and output formats."""
import json
import pathlib
import subprocess
import sys
import tempfile

exe, root = sys.argv[1], pathlib.Path(sys.argv[2])
corpus = root / "corpus"


def run(*args):
    return subprocess.run([exe, "decide", *map(str, args)], capture_output=True, text=True)


def expect(cond, what):
    if not cond:
        sys.exit("FAIL: " + what)


r = run(corpus / "fibonacci_mod6.skl", "--format", "json")
expect(r.returncode == 0, "fibonacci exit code")
report = json.loads(r.stdout)
expect(report["verdict"] == "HAS_ZERO" and report["witness"] == "0", "fibonacci verdict")

r = run(corpus / "powers_of_two_mod3.skl")
expect(r.returncode == 0 and "NO_ZERO" in r.stdout, "no-zero verdict")

r = run(corpus / "no_zero_bounded.skl")
expect(r.returncode == 2 and "UNKNOWN_BOUNDED" in r.stdout, "bounded verdict")

r = run(corpus / "derksen.skl", "--backend", "certify", "--certify-bound", "256", "--emit-zero-set", "--format", "json")
expect(r.returncode == 0, "derksen exit code")
report = json.loads(r.stdout)
expect(report["certification"]["bound"] == "256", "certify bound override")
expect(report["zero_set"][0]["set"]["kind"] == "p-normal", "emitted zero set")

r = run(corpus / "derksen.skl", "--backend", "finite")
expect(r.returncode == 3, "finite backend on an infinite ring")

r = run(corpus / "missing.skl")
expect(r.returncode == 3, "missing file")

with tempfile.NamedTemporaryFile("w", suffix=".skl", delete=False) as f:
    f.write("[ring]\ncharacteristic = 0\n[lrs]\ncoefficients = 1\ninitial = 1\n")
r = run(f.name)
expect(r.returncode == 3 and ":2:18:" in r.stderr, "characteristic zero diagnostic")

r = run(corpus / "fibonacci_mod6.skl", "--format", "xml")
expect(r.returncode == 3, "bad option")
print("cli ok")
