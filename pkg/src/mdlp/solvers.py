"""Exponent-recovery methods.

Five routes to the witness tuple of an instance:

* exhaustive scan of the exponent box, lexicographic order, optionally
  skipping the diagonal tuples (k mod r_1, ..., k mod r_t);
* meet-in-the-middle over the same box (table on the first half of the
  generators, scan over the second half);
* single-DLP solving by Pohlig-Hellman decomposition with baby-step
  giant-step per prime power (the classical stand-in for a quantum
  period-finder throughout this package);
* the collapse attack: solve beta = (g_1 ... g_t)**k as one DLP and split
  k mod each order, which works exactly when the witness residues are
  pairwise compatible;
* the peel attack: where every other generator is 1 mod a prime p of N,
  beta = g_i**k_i (mod p) leaks k_i modulo the local order, and the
  leaked congruences shrink the remaining search box.

Every returned Solution is verified against the instance before it leaves
this module. Work counters tally group operations (modular multiplications
and powerings) and, for block-partitioned scans, are defined canonically
from the hit position so any worker count reports the same number.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import Modulus, factorize, multiplicative_order
from .congruence import Congruence, CrtSolution, solve_system, split_exponent
from .errors import AllMethodsExhausted, BudgetExceeded, UnsolvableSystem
from .instance import Instance, verify

METHOD_EXHAUSTIVE = "exhaustive"
METHOD_MITM = "mitm"
METHOD_COLLAPSE = "collapse"
METHOD_PEEL = "peel+recurse"
METHOD_SINGLE_DLP = "single-dlp"

DEFAULT_SEARCH_BUDGET = 5_000_000
DEFAULT_MEMORY_CAP = 1 << 22
DEFAULT_PEEL_BUDGET = 1_000_000


@dataclass(frozen=True)
class Solution:
    exponents: tuple[int, ...]
    method: str
    work: int


@dataclass(frozen=True)
class DlpTask:
    """Solve base**x = target (mod modulus) for x in [0, order)."""

    base: int
    target: int
    modulus: int
    order: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        object.__setattr__(self, "base", self.base % self.modulus)
        object.__setattr__(self, "target", self.target % self.modulus)
        if pow(self.base, self.order, self.modulus) != 1:
            raise ValueError(
                f"{self.base}**{self.order} != 1 mod {self.modulus}: bad order"
            )


# ---------------------------------------------------------------------------
# Single DLP: baby-step giant-step under Pohlig-Hellman


def _bsgs(base: int, target: int, modulus: int, order: int, ops: list[int]) -> Optional[int]:
    """Smallest x in [0, order) with base**x = target, or None."""
    base %= modulus
    target %= modulus
    if order == 1 or base == 1:
        return 0 if target == 1 % modulus else None
    m = math.isqrt(order - 1) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * base % modulus
    ops[0] += m
    stride = pow(cur, -1, modulus)  # cur == base**m at this point
    cur_t = target
    for i in range(m):
        ops[0] += 1
        j = table.get(cur_t)
        if j is not None:
            return (i * m + j) % order
        cur_t = cur_t * stride % modulus
    return None


def _prime_power_log(
    base: int, target: int, modulus: int, q: int, e: int, ops: list[int]
) -> Optional[int]:
    """Digit-by-digit log in the subgroup of order q**e."""
    gamma = pow(base, q ** (e - 1), modulus)  # order q (or 1)
    x = 0
    for j in range(e):
        h = pow(target * pow(base, -x, modulus) % modulus, q ** (e - 1 - j), modulus)
        ops[0] += 2
        d = _bsgs(gamma, h, modulus, q, ops)
        if d is None:
            return None
        x += d * q**j
    return x


def solve_dlp(task: DlpTask, ops: Optional[list[int]] = None) -> Optional[int]:
    """x in [0, order) with base**x = target, or None when target is
    outside <base>. Pohlig-Hellman over the factored order, BSGS per
    prime power, recombined by CRT. ``ops`` (a one-cell list) accumulates
    the group-operation count when supplied.
    """
    if ops is None:
        ops = [0]
    if task.order == 1:
        return 0 if task.target == 1 % task.modulus else None
    parts = []
    for q, e in factorize(task.order):
        qe = q**e
        co = task.order // qe
        b = pow(task.base, co, task.modulus)
        t = pow(task.target, co, task.modulus)
        x = _prime_power_log(b, t, task.modulus, q, e, ops)
        if x is None:
            return None
        parts.append(Congruence(x, qe))
    x = solve_system(parts).residue
    if pow(task.base, x, task.modulus) != task.target:
        return None
    return x


# ---------------------------------------------------------------------------
# Exponent-box scans


def _pow_tables(inst: Instance) -> list[list[int]]:
    n = inst.n
    tables = []
    for g, r in zip(inst.generators, inst.orders):
        row = [1] * r
        for e in range(1, r):
            row[e] = row[e - 1] * g % n
        tables.append(row)
    return tables


def _decode(idx: int, radices: Sequence[int]) -> list[int]:
    digits = [0] * len(radices)
    for i in range(len(radices) - 1, -1, -1):
        digits[i] = idx % radices[i]
        idx //= radices[i]
    return digits


def _scan_block(args) -> tuple[Optional[int], int]:
    """Scan exponent indices [start, end) for beta; first hit index.

    Returns (hit index or None, candidates examined). Runs in worker
    processes for parallel scans, so everything arrives as one tuple.
    """
    n, beta, tables, radices, start, end, skip = args
    t = len(radices)
    digits = _decode(start, radices)
    prefix = [1] * t
    acc = 1
    for i in range(t):
        acc = acc * tables[i][digits[i]] % n
        prefix[i] = acc
    examined = 0
    idx = start
    while idx < end:
        if skip is None or idx not in skip:
            examined += 1
            if prefix[t - 1] == beta:
                return idx, examined
        # Odometer increment from the least significant digit.
        i = t - 1
        digits[i] += 1
        while digits[i] == radices[i]:
            digits[i] = 0
            i -= 1
            if i < 0:
                return None, examined
            digits[i] += 1
        acc = prefix[i - 1] if i > 0 else 1
        for j in range(i, t):
            acc = acc * tables[j][digits[j]] % n
            prefix[j] = acc
        idx += 1
    return None, examined


def _diagonal_indices(orders: Sequence[int]) -> list[int]:
    """Sorted scan indices of the tuples (k mod r_1, ..., k mod r_t)."""
    lcm = math.lcm(*orders)
    out = set()
    for k in range(lcm):
        idx = 0
        for r, d in zip(orders, split_exponent(k, orders)):
            idx = idx * r + d
        out.add(idx)
    return sorted(out)


def solve_exhaustive(
    inst: Instance,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
    skip_diagonal: bool = False,
    workers: int = 1,
) -> Optional[Solution]:
    """Lexicographically smallest exponent tuple mapping to beta, or None.

    ``skip_diagonal`` leaves out the lcm(r_i) diagonal tuples first and
    only walks the diagonal (as powers of the product generator) when the
    box scan misses; the reported work excludes the skipped tuples either
    way. ``workers`` > 1 fans fixed-stride blocks out to a process pool;
    results and reported work are identical for any worker count.
    """
    radices = inst.orders
    total = math.prod(radices)
    if total > budget:
        raise BudgetExceeded(f"exhaustive box of {total} tuples exceeds budget {budget}")
    tables = _pow_tables(inst)
    diag: Optional[list[int]] = None
    skip = None
    if skip_diagonal:
        diag = _diagonal_indices(radices)
        skip = frozenset(diag)

    hit = None
    if workers <= 1 or total < 4096:
        hit, _ = _scan_block((inst.n, inst.beta, tables, radices, 0, total, skip))
    else:
        block = max(1024, -(-total // (workers * 8)))
        spans = [(s, min(s + block, total)) for s in range(0, total, block)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for w in range(0, len(spans), workers):
                wave = spans[w : w + workers]
                args = [
                    (inst.n, inst.beta, tables, radices, s, e, skip) for s, e in wave
                ]
                for (idx, _), _span in zip(pool.map(_scan_block, args), wave):
                    if idx is not None:
                        hit = idx
                        break
                if hit is not None:
                    break

    if hit is not None:
        work = hit + 1
        if diag is not None:
            work -= bisect_right(diag, hit)
        sol = Solution(tuple(_decode(hit, radices)), METHOD_EXHAUSTIVE, work)
        assert verify(inst, sol.exponents)
        return sol

    work = total - (len(diag) if diag is not None else 0)
    if skip_diagonal:
        # The answer may live on the skipped diagonal: walk it as powers
        # of the product of all generators.
        g_all = 1
        for g in inst.generators:
            g_all = g_all * g % inst.n
        cur = 1
        for k in range(math.lcm(*radices)):
            work += 1
            if cur == inst.beta:
                sol = Solution(
                    tuple(split_exponent(k, radices)), METHOD_EXHAUSTIVE, work
                )
                assert verify(inst, sol.exponents)
                return sol
            cur = cur * g_all % inst.n
    return None


def find_all_solutions(inst: Instance, budget: int = DEFAULT_SEARCH_BUDGET) -> list[tuple[int, ...]]:
    """Every exponent tuple in the box mapping to beta (uniqueness probe)."""
    radices = inst.orders
    total = math.prod(radices)
    if total > budget:
        raise BudgetExceeded(f"{total} tuples exceed budget {budget}")
    tables = _pow_tables(inst)
    out = []
    start = 0
    while True:
        hit, _ = _scan_block((inst.n, inst.beta, tables, radices, start, total, None))
        if hit is None:
            return out
        out.append(tuple(_decode(hit, radices)))
        start = hit + 1


def solve_mitm(
    inst: Instance,
    *,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Optional[Solution]:
    """Meet-in-the-middle over the exponent box; same answer as exhaustive.

    Tabulates partial products over the first ceil(t/2) generators, then
    scans the remaining half, matching beta * (right half)**-1 against the
    table. Returns the lexicographically smallest matching tuple.
    """
    n, beta = inst.n, inst.beta
    t = inst.t
    h = (t + 1) // 2
    left_rad = inst.orders[:h]
    right_rad = inst.orders[h:]
    left_total = math.prod(left_rad)
    right_total = math.prod(right_rad)
    if left_total > memory_cap:
        raise BudgetExceeded(f"mitm table of {left_total} entries exceeds cap {memory_cap}")
    if left_total + right_total > budget:
        raise BudgetExceeded(
            f"mitm scan of {left_total + right_total} candidates exceeds budget {budget}"
        )
    tables = _pow_tables(inst)

    # Left half: value -> first (lexicographically smallest) index.
    table: dict[int, int] = {}
    digits = [0] * h
    prefix = [1] * h
    acc = 1
    for i in range(h):
        acc = acc * tables[i][digits[i]] % n
        prefix[i] = acc
    for idx in range(left_total):
        table.setdefault(prefix[h - 1] if h else 1, idx)
        i = h - 1
        digits[i] += 1
        while digits[i] == left_rad[i]:
            digits[i] = 0
            i -= 1
            if i < 0:
                break
            digits[i] += 1
        else:
            acc = prefix[i - 1] if i > 0 else 1
            for j in range(i, h):
                acc = acc * tables[j][digits[j]] % n
                prefix[j] = acc

    # Right half: scan with inverse-generator power tables.
    inv_tables = []
    for g, r in zip(inst.generators[h:], right_rad):
        gi = pow(g, -1, n)
        row = [1] * r
        for e in range(1, r):
            row[e] = row[e - 1] * gi % n
        inv_tables.append(row)

    best: Optional[tuple[int, int]] = None
    rt = len(right_rad)
    digits = [0] * rt
    prefix = [1] * rt
    for idx in range(right_total):
        needed = beta
        if rt:
            needed = beta * prefix[rt - 1] % n
        lidx = table.get(needed)
        if lidx is not None and (best is None or (lidx, idx) < best):
            best = (lidx, idx)
        if not rt:
            break
        i = rt - 1
        digits[i] += 1
        while digits[i] == right_rad[i]:
            digits[i] = 0
            i -= 1
            if i < 0:
                break
            digits[i] += 1
        else:
            acc = prefix[i - 1] if i > 0 else 1
            for j in range(i, rt):
                acc = acc * inv_tables[j][digits[j]] % n
                prefix[j] = acc

    if best is None:
        return None
    exps = tuple(_decode(best[0], left_rad) + _decode(best[1], right_rad)) if rt else tuple(
        _decode(best[0], left_rad)
    )
    sol = Solution(exps, METHOD_MITM, left_total + right_total)
    assert verify(inst, sol.exponents)
    return sol


# ---------------------------------------------------------------------------
# Reduction attacks


def attack_collapse(inst: Instance) -> Optional[Solution]:
    """Try beta = (g_1 g_2 ... g_t)**k as a single DLP and split k.

    Applicable exactly when beta lies in the cyclic group generated by the
    product of all generators; then k mod r_i recovers each exponent.
    Returns None (not applicable) otherwise. With a single generator there
    is nothing to split and the method reports itself as a plain DLP.
    """
    n = inst.n
    g_all = 1
    for g in inst.generators:
        g_all = g_all * g % n
    order = multiplicative_order(g_all, inst.modulus)
    ops = [0]
    k = solve_dlp(DlpTask(g_all, inst.beta, n, order), ops)
    if k is None:
        return None
    exps = tuple(split_exponent(k, inst.orders))
    method = METHOD_SINGLE_DLP if inst.t == 1 else METHOD_COLLAPSE
    sol = Solution(exps, method, ops[0])
    assert verify(inst, sol.exponents)
    return sol


@dataclass(frozen=True)
class PeelResult:
    """Outcome of the peel attack.

    status is one of:
      * "solved": full tuple recovered (and verified);
      * "partial": some exponents pinned only to residue classes and the
        remaining box exceeded the enumeration budget;
      * "not-applicable": no prime of N has every other generator = 1;
      * "not-found": the reduced box was searched and beta never appeared.
    congruences maps generator index -> recovered residue class of k_i.
    """

    status: str
    congruences: dict[int, CrtSolution]
    solution: Optional[Solution]
    work: int


def attack_peel(inst: Instance, *, budget: int = DEFAULT_PEEL_BUDGET) -> PeelResult:
    """Leak exponent residues through primes where the other generators
    vanish, then enumerate what remains of the exponent box.

    At a prime p with g_l = 1 (mod p) for every l != i, the target
    satisfies beta = g_i**k_i (mod p), so a local DLP pins k_i modulo the
    order of g_i mod p. Residues from several primes merge by CRT. The
    reduction is attacker-checkable: it never peeks at the witness.
    """
    n = inst.n
    ops = [0]
    congruences: dict[int, CrtSolution] = {}
    candidate_sets: list[list[int]] = []
    for i, (g, r) in enumerate(zip(inst.generators, inst.orders)):
        entries = []
        for p in inst.modulus.factorization.primes:
            if any(inst.generators[l] % p != 1 for l in range(inst.t) if l != i):
                continue
            h = g % p
            if h == 1 or p < 3:
                continue
            local_order = multiplicative_order(h, Modulus.from_int(p))
            x = solve_dlp(DlpTask(h, inst.beta % p, p, local_order), ops)
            if x is None:
                continue
            entries.append(Congruence(x, local_order))
        if entries:
            try:
                merged = solve_system(entries)
            except UnsolvableSystem:
                candidate_sets.append(list(range(r)))
                continue
            congruences[i] = merged
            candidate_sets.append(list(range(merged.residue % merged.modulus, r, merged.modulus)))
        else:
            candidate_sets.append(list(range(r)))

    if not congruences:
        return PeelResult("not-applicable", {}, None, ops[0])

    remaining = math.prod(len(c) for c in candidate_sets)
    if remaining > budget:
        return PeelResult("partial", congruences, None, ops[0])

    for exps in itertools.product(*candidate_sets):
        ops[0] += 1
        acc = 1
        for g, k in zip(inst.generators, exps):
            acc = acc * pow(g, k, n) % n
        if acc == inst.beta:
            sol = Solution(tuple(exps), METHOD_PEEL, ops[0])
            assert verify(inst, sol.exponents)
            return PeelResult("solved", congruences, sol, ops[0])
    return PeelResult("not-found", congruences, None, ops[0])


# ---------------------------------------------------------------------------
# Orchestrator

STRATEGIES = ("auto", "exhaustive", "mitm", "collapse", "peel")


def solve(
    inst: Instance,
    strategy: str = "auto",
    *,
    workers: int = 1,
    budget: int = DEFAULT_SEARCH_BUDGET,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> Optional[Solution]:
    """Recover the exponent tuple; None means definitively not found.

    "auto" tries collapse, then peel, then meet-in-the-middle, then the
    exhaustive scan, and raises AllMethodsExhausted (with per-method
    diagnostics) when nothing could decide the instance.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "exhaustive":
        return solve_exhaustive(inst, budget=budget, workers=workers)
    if strategy == "mitm":
        return solve_mitm(inst, memory_cap=memory_cap, budget=budget)
    if strategy == "collapse":
        return attack_collapse(inst)
    if strategy == "peel":
        return attack_peel(inst, budget=budget).solution

    diagnostics: dict[str, str] = {}
    sol = attack_collapse(inst)
    if sol is not None:
        return sol
    diagnostics["collapse"] = "not-applicable"

    peel = attack_peel(inst, budget=budget)
    if peel.solution is not None:
        return peel.solution
    diagnostics["peel"] = peel.status
    if peel.status == "not-found":
        return None

    try:
        sol = solve_mitm(inst, memory_cap=memory_cap, budget=budget)
        return sol  # a full scan ran: None here is definitive
    except BudgetExceeded as exc:
        diagnostics["mitm"] = str(exc)

    try:
        return solve_exhaustive(inst, budget=budget, workers=workers)
    except BudgetExceeded as exc:
        diagnostics["exhaustive"] = str(exc)

    raise AllMethodsExhausted(diagnostics)
