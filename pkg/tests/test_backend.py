import json
import os
import subprocess
import sys

SCRIPT = """
import json
from starrees import BACKEND
from starrees.star import rank_condition_sweep
from starrees.suites import run_suite
sweep = rank_condition_sweep(3, 2, 2)
rep = run_suite("rees")
print(json.dumps({"backend": BACKEND, "sweep": [sweep.total, sweep.agree], "rees": rep.passed}))
"""


def _run(flag):
    env = dict(os.environ)
    env.pop("STARREES_NO_NUMBA", None)
    if flag:
        env["STARREES_NO_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def test_fallback_matches_compiled_backend():
    fallback = _run(True)
    default = _run(False)
    assert fallback["backend"] == "numpy"
    assert fallback["sweep"] == default["sweep"]
    assert fallback["sweep"][0] == fallback["sweep"][1]
    assert fallback["rees"] and default["rees"]
