"""Orders of W(alpha, alpha, gamma) by sympy coset enumeration on <X, Y, Z>.

Relations: X^Z = X^alpha, Z Y Z^-1 = Y^alpha, Z^gamma = [X, Y].
Output is frozen into tests/oracle/frozen_orders.inc.
"""

import sys
import time

from sympy.combinatorics.free_groups import free_group
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup

F, X, Y, Z = free_group("X Y Z")


def w_order(alpha, gamma, max_cosets):
    rels = [
        Z**-1 * X * Z * X**-alpha,
        Z * Y * Z**-1 * Y**-alpha,
        Z**gamma * (X**-1 * Y**-1 * X * Y) ** -1,
    ]
    C = coset_enumeration_r(FpGroup(F, rels), [], max_cosets=max_cosets)
    C.compress()
    return len(C.table)


if __name__ == "__main__":
    cases = [tuple(int(v) for v in a.split(",")) for a in sys.argv[1:]]
    for alpha, gamma in cases:
        t = time.time()
        print(f"{{{alpha}, {gamma}, {w_order(alpha, gamma, 4000000)}}},  // {time.time() - t:.1f}s", flush=True)
