#!/usr/bin/env python3
"""Simultaneous congruences with non-coprime moduli.

Solvability of x = b1 (mod m1), x = b2 (mod m2) comes down to whether
gcd(m1, m2) divides b1 - b2; the solution is then unique mod lcm(m1, m2).
This is the engine behind both the collapse attack and its detector.
"""

from mdlp import Congruence, UnsolvableSystem, solvable_pair, solve_system, split_exponent

print("x = 3 (mod 4) and x = 1 (mod 6): gcd(4,6) = 2 divides 3-1 = 2")
sol = solve_system([Congruence(3, 4), Congruence(1, 6)])
print(f"  -> x = {sol.residue} (mod {sol.modulus})")
print("  scan of 0..11:", [x for x in range(12) if x % 4 == 3 and x % 6 == 1])

print("\nx = 1 (mod 4) and x = 0 (mod 6): 2 does not divide 1")
print("  solvable_pair:", solvable_pair(Congruence(1, 4), Congruence(0, 6)))
try:
    solve_system([Congruence(1, 4), Congruence(0, 6)])
except UnsolvableSystem as exc:
    print(f"  solve_system raises: {exc}")

print("\nlarger systems merge pairwise, the modulus accumulating as an lcm:")
sys_ = [Congruence(3, 4), Congruence(1, 6), Congruence(7, 12), Congruence(2, 5)]
sol = solve_system(sys_)
print(f"  {[(c.residue, c.modulus) for c in sys_]}")
print(f"  -> x = {sol.residue} (mod {sol.modulus})")
for c in sys_:
    assert c.holds_for(sol.residue)

print("\nsplitting one exponent across several orders and merging it back:")
k, orders = 7, [4, 6]
parts = split_exponent(k, orders)
print(f"  k = {k}, orders {orders} -> residues {parts}")
merged = solve_system([Congruence(p, r) for p, r in zip(parts, orders)])
print(f"  merged back: {merged.residue} (mod {merged.modulus})")
