"""Colon identities and the closure threshold for J = (x^a, y^a, z^a)."""

import sys

from infnear.harness import check_section4
from infnear.harness.pure_powers import threshold_holds, threshold_witness

a = int(sys.argv[1]) if len(sys.argv) > 1 else 3
exps = [a, a, a]
rep = check_section4(exps)
print(f"J = (x^{a}, y^{a}, z^{a}): {rep.verdict} in {rep.seconds:.2f}s")
for t, equal in rep.details["threshold"].items():
    t = int(t)
    w = None if equal else threshold_witness(exps, t)
    print(f"  t={t}: J cl(J^{t - 1}) == cl(J^{t}) is {equal}, predicted {threshold_holds(3, t, a)}"
          + (f", witness {w}" if w else ""))
