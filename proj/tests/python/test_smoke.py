"""Smoke tests for the python module built from the C++ core."""

from fractions import Fraction

import pytest

import dmdp


def fractions(strings):
    return [Fraction(s) for s in strings]


def test_hard_instance_structure():
    inst = dmdp.worst_case_instance(3)
    assert inst.num_vertices == 6
    assert inst.num_edges == 24
    assert inst.max_abs_weight == 16
    assert inst.size_bits == 78
    assert inst.names == ["t1", "b1", "b2", "b3", "t2", "t3"]
    assert dmdp.loop_weight(3, 3) == 15
    assert dmdp.lane_weight(3) == 16


def test_round_trip():
    inst = dmdp.worst_case_instance(4)
    again = dmdp.Dmdp.parse(inst.serialize())
    assert again == inst
    with pytest.raises(ValueError):
        dmdp.Dmdp.parse("vertex lonely")


def test_solve_hard_instance():
    inst = dmdp.worst_case_instance(3)
    result = dmdp.solve(inst)
    assert result["iterations"] == 12
    assert set(result["val"]) == {"15"}

    greedy = dmdp.solve(inst, init="greedy")
    assert greedy["iterations"] == 11

    tiny = dmdp.solve(dmdp.worst_case_instance(1))
    assert tiny["iterations"] == 1


def test_expected_sequence_matches_run():
    for n in (1, 2, 5, 8):
        inst = dmdp.worst_case_instance(n)
        run = dmdp.run_howard(inst, dmdp.initial_policy(inst, "lowest"), include_trace=True)
        seq = dmdp.expected_policy_sequence(n)
        assert run["iterations"] == dmdp.expected_iterations(n) == len(seq)
        assert [step["policy"] for step in run["trace"]] == seq


def test_evaluation_values_are_exact_rationals():
    inst = dmdp.worst_case_instance(3)
    mid = dmdp.evaluate(inst, dmdp.funnel_policy(3, 2))
    val = dict(zip(inst.names, fractions(mid["val"])))
    pot = dict(zip(inst.names, fractions(mid["pot"])))
    assert val["t1"] == 13
    assert val["b2"] == 14
    assert pot["b2"] == -14
    assert pot["t2"] == 0

    run = dmdp.decompose(inst, dmdp.funnel_policy(3, 2), inst.names.index("t3"))
    assert run["path"] == [inst.names.index("t3")]
    assert run["cycle"] == [inst.names.index("t2")]


def test_oracles_agree_with_solver():
    for seed in range(25):
        inst = dmdp.random_dmdp(n=6, degree_min=1, degree_max=3,
                                weight_min=-9, weight_max=9, seed=seed)
        solved = dmdp.solve(inst, init="greedy")
        assert fractions(solved["val"]) == fractions(dmdp.optimal_values(inst))
        assert fractions(solved["val"]) == fractions(dmdp.brute_force_values(inst))


def test_verification_helpers():
    report = dmdp.verify_trajectory(6, "lowest")
    assert report["matched"]
    assert report["iterations"] == dmdp.expected_iterations(6) == 36
    assert report["first_divergence"] is None

    transitions = dmdp.verify_transitions(5)
    assert transitions["all_pass"]
    assert {item["item"] for item in transitions["items"]} == {
        "funnel-to-lane", "lane-advance", "lane-to-takeover",
        "takeover-to-funnel", "terminal-fixpoint",
    }

    assert dmdp.check_weight_inequalities(12)["all_hold"]


def test_bellman_step_and_tie_breaking():
    inst = dmdp.worst_case_instance(5)
    # at depth 1 -> 2, t3 keeps the lane edge to its own position
    after, switched = dmdp.bellman(inst, dmdp.lane_policy(5, 5, 1))
    assert after == dmdp.lane_policy(5, 5, 2)
    t3 = inst.names.index("t3")
    b3 = inst.names.index("b3")
    assert after[t3] == b3
    assert t3 not in switched
