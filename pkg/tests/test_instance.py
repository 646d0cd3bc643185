import itertools
import json
import math
import random

import pytest

from mdlp.congruence import Congruence, solve_system
from mdlp.errors import (
    BudgetExceeded,
    GenerationFailed,
    IndependenceViolation,
    NotAUnit,
    UnsolvableSystem,
)
from mdlp.instance import (
    REFERENCE_TABLE_N35,
    VERDICT_BOTH,
    VERDICT_COLLAPSE,
    VERDICT_PEEL,
    VERDICT_RESISTS,
    check_collapse_resistance,
    check_peel_resistance,
    flat_table,
    from_json_dict,
    generate,
    hardness_report,
    make_instance,
    reference_divergences,
    to_json_dict,
    truth_table,
    verify,
)


@pytest.fixture
def worked_example():
    return make_instance(35, [13, 19], witness=(3, 1))


class TestMakeInstance:
    def test_worked_example(self, worked_example):
        inst = worked_example
        assert inst.orders == (4, 6)
        assert inst.beta == 23
        assert inst.witness == (3, 1)
        assert inst.independence_verified

    def test_zero_exponents(self):
        inst = make_instance(35, [13, 19], witness=(0, 0))
        assert inst.beta == 1

    def test_dependent_generators_rejected(self):
        with pytest.raises(IndependenceViolation) as exc:
            make_instance(35, [13, 29], witness=(1, 1))
        i, v = exc.value.witness
        gens = (13, 29)
        assert pow(gens[i], v, 35) in {pow(gens[1 - i], e, 35) for e in range(12)}

    def test_non_unit_generator(self):
        with pytest.raises(NotAUnit):
            make_instance(35, [5, 19], witness=(1, 1))

    def test_witness_reduced_mod_orders(self):
        inst = make_instance(35, [13, 19], witness=(7, 13))
        assert inst.witness == (3, 1)
        assert inst.beta == 23

    def test_beta_only_instance(self):
        inst = make_instance(35, [13, 19], beta=22)
        assert inst.witness is None
        assert inst.beta == 22

    def test_requires_witness_or_beta(self):
        with pytest.raises(ValueError):
            make_instance(35, [13, 19])

    def test_beta_witness_disagreement(self):
        with pytest.raises(ValueError):
            make_instance(35, [13, 19], witness=(3, 1), beta=22)


class TestVerify:
    def test_witness_tuple(self, worked_example):
        assert verify(worked_example, (3, 1))

    def test_other_published_cell(self, worked_example):
        # (1, 3) maps to 22, not 23
        assert not verify(worked_example, (1, 3))

    def test_reduction_mod_orders(self, worked_example):
        assert verify(worked_example, (3 + 4, 1 + 6))

    def test_length_checked(self, worked_example):
        with pytest.raises(ValueError):
            verify(worked_example, (3,))


class TestCollapseResistance:
    def test_worked_example_is_collapsible(self, worked_example):
        chk = check_collapse_resistance(worked_example)
        assert not chk.resistant
        assert chk.collapse_exponent.residue == 7
        assert chk.collapse_exponent.modulus == 12

    def test_equal_witness_entries_always_collapsible(self):
        inst = make_instance(35, [13, 19], witness=(1, 1))
        assert not check_collapse_resistance(inst).resistant

    def test_incompatible_residues_resist(self):
        inst = make_instance(35, [13, 19], witness=(1, 0))
        chk = check_collapse_resistance(inst)
        assert chk.resistant
        assert chk.witness_pair == (0, 1)
        # exhaustive confirmation: no single k matches both residues
        assert all(
            (k % 4, k % 6) != (1, 0) for k in range(math.lcm(4, 6))
        )

    def test_requires_witness(self):
        inst = make_instance(35, [13, 19], beta=22)
        with pytest.raises(ValueError):
            check_collapse_resistance(inst)

    def test_matches_congruence_solvability(self):
        rng = random.Random(41)
        for i in range(60):
            inst = generate(7000 + i, bits=12, t=2, max_order_product=4000)
            chk = check_collapse_resistance(inst)
            items = [Congruence(k, r) for k, r in zip(inst.witness, inst.orders)]
            try:
                solve_system(items)
                solvable = True
            except UnsolvableSystem:
                solvable = False
            assert chk.resistant == (not solvable)


class TestPeelResistance:
    def test_worked_example_resists(self, worked_example):
        # 19 and 13**3 are both != 1 mod 5 and mod 7
        assert check_peel_resistance(worked_example).resistant

    def test_zero_witness_elsewhere_violates(self):
        # omitting g1 leaves 19**0 = 1 mod everything
        inst = make_instance(35, [13, 19], witness=(3, 0))
        chk = check_peel_resistance(inst)
        assert not chk.resistant
        assert chk.violation == (0, 5)

    def test_violation_is_real(self):
        rng = random.Random(43)
        for i in range(40):
            inst = generate(8000 + i, bits=12, t=2, max_order_product=4000)
            chk = check_peel_resistance(inst)
            if chk.resistant:
                continue
            i_, p = chk.violation
            omitted = 1
            for l, (g, k) in enumerate(zip(inst.generators, inst.witness)):
                if l != i_:
                    omitted = omitted * pow(g, k, p) % p
            assert omitted == 1


class TestHardnessReport:
    def test_worked_example_verdict(self, worked_example):
        rep = hardness_report(worked_example)
        assert not rep.collapse.resistant
        assert rep.peel.resistant
        assert rep.verdict == VERDICT_COLLAPSE

    def test_verdict_table(self):
        cases = {
            (True, True): VERDICT_RESISTS,
            (False, True): VERDICT_COLLAPSE,
            (True, False): VERDICT_PEEL,
            (False, False): VERDICT_BOTH,
        }
        seen = set()
        for i in range(400):
            inst = generate(9000 + i, bits=12, t=2, max_order_product=4000)
            rep = hardness_report(inst)
            key = (rep.collapse.resistant, rep.peel.resistant)
            assert rep.verdict == cases[key]
            seen.add(key)
            if len(seen) == 4:
                break
        assert len(seen) >= 3

    def test_stable_under_generator_permutation(self):
        for i in range(30):
            inst = generate(9500 + i, bits=12, t=3, max_order_product=4000)
            perm = [2, 0, 1]
            permuted = make_instance(
                inst.modulus,
                [inst.generators[j] for j in perm],
                witness=[inst.witness[j] for j in perm],
            )
            assert hardness_report(permuted).verdict == hardness_report(inst).verdict


class TestTruthTable:
    def test_published_rows(self):
        rows = truth_table(35, 13, 19, range(1, 5), range(1, 4))
        assert rows == [[2, 26, 23, 19], [3, 4, 17, 11], [22, 6, 8, 34]]

    def test_true_row_four_diverges_from_reference(self):
        (row,) = truth_table(35, 13, 19, range(1, 5), [4])
        assert row == [33, 9, 12, 16]
        assert [REFERENCE_TABLE_N35[(k1, 4)] for k1 in range(1, 5)] == [13, 29, 27, 1]

    def test_all_ones(self):
        rows = truth_table(101, 1, 1, range(1, 4), range(1, 4))
        assert all(v == 1 for row in rows for v in row)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            truth_table(35, 13, 19, range(1, 200), range(1, 200), cell_budget=100)

    def test_degenerate_modulus(self):
        with pytest.raises(ValueError):
            truth_table(1, 1, 1, range(1, 3), range(1, 3))

    def test_divergences_only_in_row_four(self):
        assert reference_divergences(35, 13, 19, range(1, 5), range(1, 4)) == []
        divs = reference_divergences(35, 13, 19, range(1, 5), range(1, 5))
        assert [(k1, k2) for k1, k2, _, _ in divs] == [(1, 4), (2, 4), (3, 4), (4, 4)]
        assert [(got, ref) for _, _, got, ref in divs] == [
            (33, 13), (9, 29), (12, 27), (16, 1)
        ]

    def test_divergences_other_parameters_empty(self):
        assert reference_divergences(77, 13, 19, range(1, 5), range(1, 5)) == []

    def test_flat_table_matches_grid(self):
        flat = dict(flat_table(35, [13, 19], [range(1, 5), range(1, 4)]))
        rows = truth_table(35, 13, 19, range(1, 5), range(1, 4))
        for i2, k2 in enumerate(range(1, 4)):
            for i1, k1 in enumerate(range(1, 5)):
                assert flat[(k1, k2)] == rows[i2][i1]


class TestUniquenessAndDegeneracy:
    def test_unique_witness_small_sweep(self):
        for i in range(25):
            inst = generate(11_000 + i, bits=12, t=2, max_order_product=600)
            hits = [
                exps
                for exps in itertools.product(*(range(r) for r in inst.orders))
                if verify(inst, exps)
            ]
            assert hits == [inst.witness]

    def test_no_smaller_representation(self):
        for i in range(25):
            inst = generate(12_000 + i, bits=12, t=2, max_order_product=600)
            for drop in range(inst.t):
                if inst.witness[drop] == 0:
                    continue
                kept = [j for j in range(inst.t) if j != drop]
                for exps in itertools.product(*(range(inst.orders[j]) for j in kept)):
                    acc = 1
                    for j, e in zip(kept, exps):
                        acc = acc * pow(inst.generators[j], e, inst.n) % inst.n
                    assert acc != inst.beta

    def test_diagonal_tuple_count_is_lcm(self):
        for i in range(25):
            inst = generate(13_000 + i, bits=12, t=2, max_order_product=2000)
            lcm = math.lcm(*inst.orders)
            diag = {tuple(k % r for r in inst.orders) for k in range(lcm)}
            assert len(diag) == lcm


class TestGenerate:
    def test_deterministic(self):
        a = generate(123, bits=13, t=2)
        b = generate(123, bits=13, t=2)
        assert a == b

    def test_requested_bits(self):
        for i in range(10):
            inst = generate(200 + i, bits=15, t=2)
            assert inst.n.bit_length() == 15

    def test_constraints_hold(self):
        inst = generate(7, bits=13, t=2,
                        require_collapse_resistant=True,
                        require_peel_resistant=True)
        rep = hardness_report(inst)
        assert rep.verdict == VERDICT_RESISTS

    def test_vulnerable_constraint(self):
        inst = generate(8, bits=13, t=2, require_collapse_resistant=False)
        assert not check_collapse_resistance(inst).resistant

    def test_impossible_constraint_fails_cleanly(self):
        # one generator cannot have pairwise-incompatible residues
        with pytest.raises(GenerationFailed):
            generate(9, bits=12, t=1, require_collapse_resistant=True,
                     max_attempts=50)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            generate(1, t=0)
        with pytest.raises(ValueError):
            generate(1, bits=4)


class TestSerialization:
    def test_round_trip_document_identity(self, worked_example):
        doc = to_json_dict(worked_example)
        again = to_json_dict(from_json_dict(doc))
        assert doc == again

    def test_round_trip_with_provenance(self):
        inst = generate(55, bits=13, t=2)
        doc = to_json_dict(inst)
        assert doc["provenance"]["seed"] == 55
        assert to_json_dict(from_json_dict(doc)) == doc

    def test_json_text_round_trip(self, worked_example):
        from mdlp.instance import dumps, loads

        text = dumps(worked_example)
        doc = json.loads(text)
        assert doc["n"] == "35"
        assert doc["generators"] == ["13", "19"]
        inst = loads(text)
        assert inst.beta == worked_example.beta

    def test_tampered_beta_rejected(self, worked_example):
        doc = to_json_dict(worked_example)
        doc["beta"] = "22"
        with pytest.raises(ValueError):
            from_json_dict(doc)

    def test_tampered_orders_rejected(self, worked_example):
        doc = to_json_dict(worked_example)
        doc["orders"] = ["4", "4"]
        with pytest.raises(ValueError):
            from_json_dict(doc)

    def test_bad_factors_rejected(self, worked_example):
        doc = to_json_dict(worked_example)
        doc["factors"] = [["5", 1], ["11", 1]]
        with pytest.raises(ValueError):
            from_json_dict(doc)

    def test_witness_out_of_range_rejected(self, worked_example):
        doc = to_json_dict(worked_example)
        doc["witness"] = ["7", "13"]
        with pytest.raises(ValueError):
            from_json_dict(doc)

    def test_unknown_version_rejected(self, worked_example):
        doc = to_json_dict(worked_example)
        doc["version"] = 99
        with pytest.raises(ValueError):
            from_json_dict(doc)

    def test_missing_field_rejected(self, worked_example):
        doc = to_json_dict(worked_example)
        del doc["generators"]
        with pytest.raises(ValueError):
            from_json_dict(doc)
