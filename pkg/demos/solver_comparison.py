#!/usr/bin/env python3
"""Generate a spread of instances and race the solver methods.

Shows where each route applies: the collapse attack only when the witness
residues are pairwise compatible, the peel attack only when some prime of
N sees all but one generator as 1, and the box scans always (with
meet-in-the-middle trading memory for a much smaller work count).
"""

import math

from mdlp import attack_collapse, attack_peel, generate, hardness_report, solve_exhaustive, solve_mitm

print(f"{'seed':>6} {'n':>8} {'orders':>14} {'box':>7} "
      f"{'collapse':>9} {'peel':>9} {'mitm':>7} {'exhaust':>8}  verdict")

for seed in range(20):
    inst = generate(seed, bits=14, t=2, max_order_product=50_000)
    box = math.prod(inst.orders)

    collapse = attack_collapse(inst)
    peel = attack_peel(inst)
    mitm = solve_mitm(inst)
    exhaustive = solve_exhaustive(inst)

    assert mitm.exponents == exhaustive.exponents
    assert collapse is None or collapse.exponents == mitm.exponents

    peel_cell = peel.solution.work if peel.solution else "-"
    print(
        f"{seed:>6} {inst.n:>8} {str(inst.orders):>14} {box:>7} "
        f"{collapse.work if collapse else '-':>9} "
        f"{peel_cell:>9} "
        f"{mitm.work:>7} {exhaustive.work:>8}  "
        f"{hardness_report(inst).verdict}"
    )

print("\nwork = group operations; '-' = method not applicable to that instance")
