"""Brute-force reference computations."""
from fractions import Fraction

import pytest

from tlcond import (BudgetExceededError, Value3, algebra,
                    brute_joint, brute_pr_n, brute_pr_series,
                    brute_reverse_check, parse_cond)
from tlcond.markov import ProbAssignment

from corpus import ALG_AB, CORPUS, SKEWED_AB, UNIFORM_AB

F, T, U = Value3.FALSE, Value3.TRUE, Value3.UNDEF


def test_simple_conditional_at_time_one():
    c = parse_cond("(a|b)", ALG_AB)
    assert brute_pr_n(c, UNIFORM_AB, 1) == \
        (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))


def test_always_true_conditional():
    c = parse_cond("(true|true)", ALG_AB)
    for n in (1, 3, 5):
        assert brute_pr_n(c, UNIFORM_AB, n) == (1, 0, 0)


def test_series_matches_single_queries():
    c = parse_cond("(O a | true)", ALG_AB)
    series = brute_pr_series(c, SKEWED_AB, 4)
    for n in (1, 2, 3, 4):
        assert brute_pr_n(c, SKEWED_AB, n) == series[n - 1]


def test_budget_guard():
    c = parse_cond("(a|b)", ALG_AB)
    with pytest.raises(BudgetExceededError):
        brute_pr_n(c, UNIFORM_AB, 4, budget=100)


def test_joint_of_identical_processes_is_diagonal():
    c = parse_cond("(a|true)", ALG_AB)
    joint = brute_joint(c, c, UNIFORM_AB, 1)
    assert joint == {((T,), (T,)): Fraction(1, 2), ((F,), (F,)): Fraction(1, 2)}


def test_joint_factorizes_for_disjoint_generators():
    alg = algebra("a b c d")
    p = ProbAssignment.independent(alg, {n: Fraction(1, 2) for n in "abcd"})
    c1 = parse_cond("(a|b)", alg)
    c2 = parse_cond("(c|d)", alg)
    for n in (1, 2, 3):
        joint = brute_joint(c1, c2, p, n)
        marg1: dict = {}
        marg2: dict = {}
        for (s1, s2), m in joint.items():
            marg1[s1] = marg1.get(s1, Fraction(0)) + m
            marg2[s2] = marg2.get(s2, Fraction(0)) + m
        for (s1, s2), m in joint.items():
            assert m == marg1[s1] * marg2[s2]


def test_shifted_copy_factorizes_at_fixed_time_but_not_jointly():
    """(a|true) against (Y a|Y true): the time-n marginals are independent,
    the length-2 history is not."""
    c1 = parse_cond("(a|true)", ALG_AB)
    c2 = parse_cond("(Y a|Y true)", ALG_AB)
    n = 2
    joint = brute_joint(c1, c2, UNIFORM_AB, n)

    # marginal pair distribution at the last position factorizes
    last: dict = {}
    m1: dict = {}
    m2: dict = {}
    for (s1, s2), m in joint.items():
        key = (s1[-1], s2[-1])
        last[key] = last.get(key, Fraction(0)) + m
        m1[s1[-1]] = m1.get(s1[-1], Fraction(0)) + m
        m2[s2[-1]] = m2.get(s2[-1], Fraction(0)) + m
    for (v1, v2), m in last.items():
        assert m == m1[v1] * m2[v2]

    # the full length-2 joint does not factorize
    marg1: dict = {}
    marg2: dict = {}
    for (s1, s2), m in joint.items():
        marg1[s1] = marg1.get(s1, Fraction(0)) + m
        marg2[s2] = marg2.get(s2, Fraction(0)) + m
    assert any(joint.get((s1, s2), Fraction(0)) != marg1[s1] * marg2[s2]
               for s1 in marg1 for s2 in marg2)


def test_reverse_masses_agree_on_corpus():
    for _, c in CORPUS:
        for n in (1, 2, 3, 4):
            assert brute_reverse_check(c, SKEWED_AB, n)


def test_reverse_check_on_first_occurrence_conditional():
    c = parse_cond("(O a and not Y O a | true)", ALG_AB)
    for n in range(1, 6):
        assert brute_reverse_check(c, SKEWED_AB, n)
