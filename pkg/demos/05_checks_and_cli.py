"""
Verification suite and command line
===================================

Every closed form and series is compared against quadrature by
``grd.run_suite``, which is also what ``grd check`` prints.
"""

# %%
import subprocess

import grd

report = grd.run_suite()
print("all checks passed:", report["passed"])
for check in report["checks"][:6]:
    print(f"  {check['name']:<28} rel err {check['rel_error']:.1e}")

# %%
# The same flows from a shell.
commands = [
    ["grd", "validate", "--params", "[-3,0.5,1]"],
    ["grd", "calibrate", "--target", "[0.5,0.3,0.2]"],
    ["grd", "loggap", "--params", "[-3,2]", "--moment", "[1]"],
    ["grd", "sample", "--params", "[-3,2]", "--n", "3", "--seed", "7"],
]
for cmd in commands:
    res = subprocess.run(cmd, capture_output=True, text=True)
    print("$", " ".join(cmd))
    print(res.stdout.strip())
