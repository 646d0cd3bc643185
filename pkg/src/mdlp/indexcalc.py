"""Index-calculus discrete logs over prime fields, and the rank-1
demonstrator for why the technique cannot separate several unknown
exponents at once.

The classic pipeline over F_p with base alpha of order n:

1. pick a factor base S = all primes <= B;
2. for random k, keep alpha**k mod p whenever it factors entirely over S,
   which yields the linear relation k = sum a_i * log_alpha p_i (mod n);
3. collect |S| + slack verified relations and solve for the base logs,
   eliminating per prime-power factor of n and recombining by CRT;
4. hunt a shift delta with beta * alpha**delta smooth over S;
5. read off log_alpha beta = -delta + sum b_i * log_alpha p_i (mod n).

Applied to a multi-generator target the same machinery produces one
equation log beta = sum k_i log g_i per choice of base, but switching the
base only rescales the whole equation by log of the new base: every row is
proportional, the system has rank 1, and the k_i stay entangled. The
demonstrator at the bottom makes that executable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import Modulus, is_probable_prime, multiplicative_order, primes_up_to, factorize
from .congruence import Congruence, solve_system
from .errors import BudgetExceeded, RankDeficient
from .solvers import DlpTask, solve_dlp

DEFAULT_BOUND = 50
DEFAULT_SLACK = 10
DEFAULT_RELATION_TRIALS = 200_000
DEFAULT_SHIFT_TRIALS = 50_000


@dataclass(frozen=True)
class FactorBase:
    primes: tuple[int, ...]
    bound: int

    def __len__(self):
        return len(self.primes)


def build_factor_base(p: int, bound: int) -> FactorBase:
    """All primes <= bound, ascending. p itself is left out."""
    if bound < 2:
        raise ValueError(f"smoothness bound must be >= 2, got {bound}")
    return FactorBase(tuple(q for q in primes_up_to(bound) if q != p), bound)


def try_smooth(x: int, fb: FactorBase) -> tuple[list[int], int]:
    """Trial-divide x over the factor base.

    Returns (exponent vector, cofactor); x is smooth iff the cofactor is 1.
    """
    if x < 1:
        raise ValueError(f"smoothness test needs x >= 1, got {x}")
    exps = [0] * len(fb.primes)
    rest = x
    for i, q in enumerate(fb.primes):
        while rest % q == 0:
            rest //= q
            exps[i] += 1
    return exps, rest


@dataclass(frozen=True)
class Relation:
    """alpha**k = prod p_i**exponents_i (mod p): one usable linear relation."""

    k: int
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class RelationMatrix:
    p: int
    alpha: int
    order: int
    fb: FactorBase
    rows: tuple[Relation, ...]


def relation_holds(p: int, alpha: int, fb: FactorBase, rel: Relation) -> bool:
    rhs = 1
    for q, a in zip(fb.primes, rel.exponents):
        rhs = rhs * pow(q, a, p) % p
    return pow(alpha, rel.k, p) == rhs


def collect_relations(
    p: int,
    alpha: int,
    fb: FactorBase,
    slack: int = DEFAULT_SLACK,
    seed: int = 0,
    order: Optional[int] = None,
    max_trials: int = DEFAULT_RELATION_TRIALS,
) -> RelationMatrix:
    """At least len(fb) + slack verified relations, deterministic in seed.

    Rows are deduped and sorted before assembly so the downstream solve is
    stable no matter how the collection was scheduled.
    """
    n = order if order is not None else multiplicative_order(alpha, Modulus.from_int(p))
    rng = random.Random(seed)
    want = len(fb) + slack
    found: set[Relation] = set()
    for _ in range(max_trials):
        k = rng.randrange(n)
        exps, cofactor = try_smooth(pow(alpha, k, p), fb)
        if cofactor != 1:
            continue
        rel = Relation(k, tuple(exps))
        assert relation_holds(p, alpha, fb, rel)
        found.add(rel)
        if len(found) >= want:
            rows = tuple(sorted(found, key=lambda r: (r.k, r.exponents)))
            return RelationMatrix(p, alpha, n, fb, rows)
    raise BudgetExceeded(
        f"only {len(found)}/{want} relations after {max_trials} trials "
        f"(bound {fb.bound} too small for p={p}?)"
    )


def _solve_mod_prime_power(
    rows: Sequence[tuple[Sequence[int], int]], ncols: int, q: int, e: int
) -> list[int]:
    """Unique solution of A x = b mod q**e, pivoting only on units mod q."""
    qe = q**e
    aug = [[c % qe for c in coeffs] + [rhs % qe] for coeffs, rhs in rows]
    row_at: dict[int, int] = {}
    pivot = 0
    for col in range(ncols):
        sel = next(
            (r for r in range(pivot, len(aug)) if aug[r][col] % q != 0), None
        )
        if sel is None:
            raise RankDeficient(f"no unit pivot for column {col} mod {q}**{e}")
        aug[pivot], aug[sel] = aug[sel], aug[pivot]
        inv = pow(aug[pivot][col], -1, qe)
        aug[pivot] = [c * inv % qe for c in aug[pivot]]
        for r in range(len(aug)):
            if r != pivot and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(cr - f * cp) % qe for cr, cp in zip(aug[r], aug[pivot])]
        row_at[col] = pivot
        pivot += 1
    for r in range(pivot, len(aug)):
        if aug[r][ncols] % qe != 0:
            raise RankDeficient(f"inconsistent relation system mod {q}**{e}")
    return [aug[row_at[col]][ncols] for col in range(ncols)]


def solve_base_logs(mat: RelationMatrix) -> list[int]:
    """log_alpha p_i mod the group order, for every factor-base prime.

    Solved separately mod each prime-power factor of the order, CRT
    recombined, and each log re-verified by powering; a RankDeficient
    error means the caller should collect more relations (or the base does
    not generate all of the factor base).
    """
    m = len(mat.fb)
    rows = [(rel.exponents, rel.k) for rel in mat.rows]
    components = []
    for q, e in factorize(mat.order):
        components.append((q**e, _solve_mod_prime_power(rows, m, q, e)))
    logs = []
    for i in range(m):
        sol = solve_system([Congruence(x[i], qe) for qe, x in components])
        logs.append(sol.residue % mat.order)
    for q, log in zip(mat.fb.primes, logs):
        if pow(mat.alpha, log, mat.p) != q % mat.p:
            raise RankDeficient(
                f"solved log of {q} fails verification; {q} may be outside <alpha>"
            )
    return logs


def dlp_via_index_calculus(
    p: int,
    alpha: int,
    beta: int,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    slack: int = DEFAULT_SLACK,
    relation_trials: int = DEFAULT_RELATION_TRIALS,
    shift_trials: int = DEFAULT_SHIFT_TRIALS,
) -> int:
    """log_alpha beta mod p by the five-step pipeline above.

    beta must lie in <alpha>; the returned exponent is verified by
    powering before it is returned. Raises BudgetExceeded when smoothness
    retries run out.
    """
    if not is_probable_prime(p):
        raise ValueError(f"index calculus here works over prime fields; {p} is composite")
    if math.gcd(alpha, p) != 1 or math.gcd(beta, p) != 1:
        raise ValueError("alpha and beta must be units mod p")
    alpha %= p
    beta %= p
    n = multiplicative_order(alpha, Modulus.from_int(p))
    fb = build_factor_base(p, bound)

    logs = None
    for round_ in range(4):
        mat = collect_relations(
            p, alpha, fb,
            slack=slack + 10 * round_,
            seed=seed + round_,
            order=n,
            max_trials=relation_trials,
        )
        try:
            logs = solve_base_logs(mat)
            break
        except RankDeficient:
            continue
    if logs is None:
        raise BudgetExceeded(
            f"base logs stayed rank-deficient after retries (p={p}, B={bound})"
        )

    rng = random.Random(f"shift:{seed}")
    for _ in range(shift_trials):
        delta = rng.randrange(n)
        shifted = beta * pow(alpha, delta, p) % p
        if shifted == 0:
            continue
        exps, cofactor = try_smooth(shifted, fb)
        if cofactor != 1:
            continue
        x = (-delta + sum(b * l for b, l in zip(exps, logs))) % n
        if pow(alpha, x, p) == beta:
            return x
    raise BudgetExceeded(
        f"no smooth shift of beta found in {shift_trials} trials (p={p}, B={bound})"
    )


# ---------------------------------------------------------------------------
# Rank demonstrator


def _rank_mod_prime(rows: Sequence[Sequence[int]], q: int) -> int:
    mat = [[c % q for c in row] for row in rows]
    rank = 0
    for col in range(len(mat[0]) if mat else 0):
        sel = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = pow(mat[rank][col], -1, q)
        mat[rank] = [c * inv % q for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % q for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class RankDemoReport:
    """One log-relation equation per base, and how they compare.

    When the bases share an order r, ``factors[j]`` is log of base j in
    base 0 and every equation j rescaled by it reproduces equation 0, so
    ``proportional`` is True and each rank in ``ranks`` (keyed by the
    prime factors of r) comes out <= 1: the equations never pin down the
    individual exponents. Mismatched orders short-circuit with a note,
    since the equations then live modulo different numbers and cannot be
    combined at all.
    """

    p: int
    orders: tuple[int, ...]
    equal_orders: bool
    note: str
    target_logs: Optional[tuple[int, ...]] = None
    generator_logs: Optional[tuple[tuple[int, ...], ...]] = None
    factors: Optional[tuple[int, ...]] = None
    proportional: bool = False
    ranks: Optional[dict[int, int]] = None


def relation_rank_demo(
    p: int, alphas: Sequence[int], generators: Sequence[int], beta: int
) -> RankDemoReport:
    """Build the per-base linear equations for a multi-generator target
    and report their pairwise proportionality and rank.
    """
    if not alphas:
        raise ValueError("at least one base is required")
    mod = Modulus.from_int(p)
    orders = tuple(multiplicative_order(a, mod) for a in alphas)
    if len(set(orders)) != 1:
        return RankDemoReport(
            p, orders, False,
            "bases have different orders, so their equations are taken "
            "modulo different numbers and cannot be combined into one system",
        )
    r = orders[0]

    def log_base(a: int, x: int) -> int:
        got = solve_dlp(DlpTask(a, x, p, r))
        if got is None:
            raise ValueError(f"{x} is outside the group generated by {a} mod {p}")
        return got

    target_logs = tuple(log_base(a, beta) for a in alphas)
    gen_logs = tuple(tuple(log_base(a, g) for g in generators) for a in alphas)
    factors = tuple(log_base(alphas[0], a) for a in alphas)

    proportional = True
    for j in range(len(alphas)):
        u = factors[j]
        rowj = (target_logs[j],) + gen_logs[j]
        row0 = (target_logs[0],) + gen_logs[0]
        if any((u * cj - c0) % r for cj, c0 in zip(rowj, row0)):
            proportional = False
    ranks = {
        q: _rank_mod_prime([row for row in gen_logs], q)
        for q, _ in factorize(r)
    }
    return RankDemoReport(
        p, orders, True, "", target_logs, gen_logs, factors, proportional, ranks
    )
