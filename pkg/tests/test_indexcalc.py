import math
import random

import pytest

from mdlp.arith import factorize, primes_up_to
from mdlp.errors import BudgetExceeded, RankDeficient
from mdlp.indexcalc import (
    Relation,
    RelationMatrix,
    build_factor_base,
    collect_relations,
    dlp_via_index_calculus,
    relation_holds,
    relation_rank_demo,
    solve_base_logs,
    try_smooth,
)
from mdlp.solvers import DlpTask, solve_dlp


def primitive_root(p):
    lam = p - 1
    qs = [q for q, _ in factorize(lam)]
    for g in range(2, p):
        if all(pow(g, lam // q, p) != 1 for q in qs):
            return g
    raise AssertionError(f"no primitive root found for {p}")


class TestFactorBase:
    def test_bound_ten(self):
        assert build_factor_base(997, 10).primes == (2, 3, 5, 7)

    def test_bound_two(self):
        assert build_factor_base(997, 2).primes == (2,)

    def test_bound_seven(self):
        assert build_factor_base(107, 7).primes == (2, 3, 5, 7)

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            build_factor_base(107, 1)


class TestTrySmooth:
    def test_smooth(self):
        exps, cofactor = try_smooth(84, build_factor_base(997, 7))
        assert exps == [2, 1, 0, 1]  # 84 = 2**2 * 3 * 7
        assert cofactor == 1

    def test_not_smooth_reports_cofactor(self):
        exps, cofactor = try_smooth(44, build_factor_base(997, 5))
        assert cofactor == 11
        assert exps == [2, 0, 0]

    def test_one(self):
        exps, cofactor = try_smooth(1, build_factor_base(997, 10))
        assert exps == [0, 0, 0, 0] and cofactor == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            try_smooth(0, build_factor_base(997, 10))


class TestCollectRelations:
    def test_enough_verified_rows(self):
        fb = build_factor_base(107, 7)
        mat = collect_relations(107, 2, fb, slack=3, seed=5)
        assert len(mat.rows) >= len(fb) + 3
        for rel in mat.rows:
            assert relation_holds(107, 2, fb, rel)

    def test_deterministic(self):
        fb = build_factor_base(107, 7)
        a = collect_relations(107, 2, fb, slack=3, seed=9)
        b = collect_relations(107, 2, fb, slack=3, seed=9)
        assert a == b

    def test_zero_exponent_relation_is_valid(self):
        fb = build_factor_base(107, 7)
        assert relation_holds(107, 2, fb, Relation(0, (0, 0, 0, 0)))

    def test_budget_when_bound_hopeless(self):
        p = 99991
        with pytest.raises(BudgetExceeded):
            collect_relations(p, primitive_root(p), build_factor_base(p, 2),
                              slack=3, seed=1, max_trials=200)


class TestSolveBaseLogs:
    def test_logs_verify_and_match_oracle(self):
        p, alpha = 107, 2
        fb = build_factor_base(p, 7)
        mat = collect_relations(p, alpha, fb, slack=5, seed=1)
        logs = solve_base_logs(mat)
        for q, log in zip(fb.primes, logs):
            assert pow(alpha, log, p) == q
            assert log == solve_dlp(DlpTask(alpha, q, p, p - 1))

    def test_log_of_base_is_one(self):
        p, alpha = 107, 2
        fb = build_factor_base(p, 7)
        logs = solve_base_logs(collect_relations(p, alpha, fb, slack=5, seed=2))
        assert logs[fb.primes.index(2)] == 1

    def test_rank_deficient_rows(self):
        fb = build_factor_base(107, 7)
        rows = tuple(Relation(0, (0, 0, 0, 0)) for _ in range(8))
        with pytest.raises(RankDeficient):
            solve_base_logs(RelationMatrix(107, 2, 106, fb, rows))


class TestDlpViaIndexCalculus:
    def test_constructed_exponent(self):
        assert dlp_via_index_calculus(107, 2, 61, bound=7) == 10

    def test_base_itself(self):
        assert dlp_via_index_calculus(107, 2, 2, bound=7) == 1

    def test_composite_modulus_rejected(self):
        with pytest.raises(ValueError):
            dlp_via_index_calculus(105, 2, 8, bound=7)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            dlp_via_index_calculus(107, 107, 61, bound=7)

    def test_deterministic(self):
        a = dlp_via_index_calculus(10007, 5, 1234, bound=30, seed=4)
        b = dlp_via_index_calculus(10007, 5, 1234, bound=30, seed=4)
        assert a == b

    def test_agrees_with_bsgs_oracle(self):
        rng = random.Random(71)
        primes = [p for p in primes_up_to(10_000) if p > 500]
        for i in range(20):
            p = rng.choice(primes)
            alpha = primitive_root(p)
            x = rng.randrange(1, p - 1)
            beta = pow(alpha, x, p)
            got = dlp_via_index_calculus(p, alpha, beta, bound=30, seed=i)
            assert got == solve_dlp(DlpTask(alpha, beta, p, p - 1)) == x


class TestRankDemo:
    def test_same_base_factor_one(self):
        rep = relation_rank_demo(107, [2, 2], [3, 5], 15)
        assert rep.equal_orders
        assert rep.factors == (1, 1)
        assert rep.proportional
        assert rep.target_logs[0] == rep.target_logs[1]

    def test_shifted_base_factor_five(self):
        # 2**5 = 32 also has order 106 mod 107
        rep = relation_rank_demo(107, [2, 32], [3, 5], 15)
        assert rep.equal_orders
        assert rep.factors == (1, 5)
        assert rep.factors[1] == solve_dlp(DlpTask(2, 32, 107, 106))
        assert rep.proportional

    def test_rank_one_for_two_generator_instance(self):
        p = 107
        alpha = 2
        g1, g2 = pow(alpha, 9, p), pow(alpha, 25, p)
        beta = g1 * pow(g2, 3, p) % p
        rep = relation_rank_demo(p, [alpha, pow(alpha, 3, p)], [g1, g2], beta)
        assert rep.proportional
        assert set(rep.ranks) == {2, 53}
        assert all(rank == 1 for rank in rep.ranks.values())

    def test_mismatched_orders_branch(self):
        # 4 = 2**2 has order 53 mod 107 while 2 has order 106
        rep = relation_rank_demo(107, [2, 4], [3, 5], 15)
        assert not rep.equal_orders
        assert rep.orders == (106, 53)
        assert not rep.proportional
        assert rep.note

    def test_proportionality_factor_matches_oracle_on_random_pairs(self):
        rng = random.Random(73)
        primes = [p for p in primes_up_to(2000) if p > 100]
        for _ in range(10):
            p = rng.choice(primes)
            alpha = primitive_root(p)
            u = rng.randrange(1, p - 1)
            while math.gcd(u, p - 1) != 1:
                u = rng.randrange(1, p - 1)
            alpha2 = pow(alpha, u, p)
            gens = [pow(alpha, rng.randrange(1, p - 1), p) for _ in range(2)]
            beta = gens[0] * gens[1] % p
            rep = relation_rank_demo(p, [alpha, alpha2], gens, beta)
            assert rep.equal_orders and rep.proportional
            assert rep.factors[1] == u % (p - 1)

    def test_target_outside_group_rejected(self):
        with pytest.raises(ValueError):
            relation_rank_demo(107, [4], [3], 2)  # ord(4) = 53; 2 not in <4>
