#!/usr/bin/env python3
"""Walk through the classic two-generator example over Z_35.

N = 35 = 5 * 7, g1 = 13, g2 = 19, witness (3, 1). The script computes the
true generator orders, prints the product table (including the row where
the commonly quoted reference values are wrong), runs the hardness checks,
and then breaks the instance with the collapse attack.
"""

from mdlp import (
    Modulus,
    attack_collapse,
    hardness_report,
    make_instance,
    multiplicative_order,
    solve_exhaustive,
    solve_mitm,
    truth_table,
    verify,
)
from mdlp.instance import REFERENCE_TABLE_N35

N = 35
G1, G2 = 13, 19

print(f"modulus N = {N} = 5 * 7")
m = Modulus.from_int(N)
r1 = multiplicative_order(G1, m)
r2 = multiplicative_order(G2, m)
print(f"ord({G1}) = {r1}")
print(f"ord({G2}) = {r2}   <- computed, not assumed; 19**4 = {pow(19, 4, 35)} != 1")

print("\nproduct table g1**k1 * g2**k2 mod 35 (k1 across, k2 down):")
rows = truth_table(N, G1, G2, range(1, 5), range(1, 5))
print("      " + "".join(f"k1={k1:<4}" for k1 in range(1, 5)))
for k2, row in zip(range(1, 5), rows):
    marks = [
        f"{v}{'*' if REFERENCE_TABLE_N35[(k1, k2)] != v else ' '}"
        for k1, v in zip(range(1, 5), row)
    ]
    print(f"k2={k2}   " + "".join(f"{s:<7}" for s in marks))
print("(* = differs from the reference table, whose last row assumed ord(19) = 4)")

inst = make_instance(N, [G1, G2], witness=(3, 1))
print(f"\ninstance: beta = {inst.beta}, witness {inst.witness}, orders {inst.orders}")

report = hardness_report(inst)
print(f"collapse-resistant: {report.collapse.resistant}")
print(f"  common exponent:  {report.collapse.collapse_exponent}")
print(f"peel-resistant:     {report.peel.resistant}")
print(f"verdict:            {report.verdict}")

print("\nso one discrete log recovers everything:")
sol = attack_collapse(inst)
print(f"  product generator 13*19 mod 35 = {13 * 19 % 35}")
print(f"  beta = 2**k mod 35 gives k = 7; k mod (4, 6) = {sol.exponents}")
print(f"  verified: {verify(inst, sol.exponents)}")

print("\ncross-check with the box scans:")
print(f"  exhaustive: {solve_exhaustive(inst).exponents}")
print(f"  mitm:       {solve_mitm(inst).exponents}")

print("\na witness like (1, 0) resists the collapse (gcd(4,6) does not divide 1):")
hard = make_instance(N, [G1, G2], witness=(1, 0))
print(f"  collapse attack result: {attack_collapse(hard)}")
print(f"  exhaustive still works: {solve_exhaustive(hard).exponents}")
