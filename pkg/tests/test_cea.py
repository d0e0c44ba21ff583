"""The conditional event algebras: present-tense reduction, the product-space
interpretations, independence, tautologies."""
import random
from fractions import Fraction

import pytest

from tlcond import (CondObject, TRUE, Value3, algebra, brute_joint,
                    compile_cond, embed_ps, minimize, parse_cea, parse_cond,
                    parse_tl, present_indep, pretty, prob_present, prob_ps,
                    reduce_present, reduce_syntactic, strong_indep,
                    weak_tautology)
from tlcond.cea import (SimpleConditional, _event_mask, cond_asymptotic,
                        first_machine, lift_defined, simple_to_cond)
from tlcond.markov import ProbAssignment
from tlcond.syntax import collect_simples

from corpus import ALG_AB, UNIFORM_AB

F, T, U = Value3.FALSE, Value3.TRUE, Value3.UNDEF

ABCD = algebra("a b c d")
HALF4 = ProbAssignment.independent(ABCD, {n: Fraction(1, 2) for n in "abcd"})


def _mask(text, alg):
    return _event_mask(parse_tl(text, alg), alg)


# ---------------------------------------------------------------------------
# Present-tense reduction


def test_simple_conditional_normal_form():
    s = reduce_present(parse_cea("(a|b)", ALG_AB), ALG_AB, "sac")
    assert s.yes_set == _mask("a and b", ALG_AB)
    assert s.def_set == _mask("b", ALG_AB)


def test_sac_conjunction_reduction():
    e = parse_cea("(a|b) and (c|d)", ABCD)
    s = reduce_present(e, ABCD, "sac")
    assert s.yes_set == _mask("(a and b and c and d) or (a and b and not d) "
                              "or (c and d and not b)", ABCD)
    assert s.def_set == _mask("b or d", ABCD)


def test_gnw_conjunction_reduction():
    e = parse_cea("(a|b) and (c|d)", ABCD)
    s = reduce_present(e, ABCD, "gnw")
    assert s.yes_set == _mask("a and b and c and d", ABCD)
    assert s.def_set == _mask("(not a and b) or (not c and d) "
                              "or (a and b and c and d)", ABCD)


def test_pointwise_and_syntactic_reductions_agree():
    rng = random.Random(31)
    sides = ["a", "b", "c", "d", "a or c", "not b", "b and d", "true"]

    def random_flat(depth):
        if depth == 0 or rng.random() < 0.4:
            return f"({rng.choice(sides)} | {rng.choice(sides)})"
        if rng.random() < 0.25:
            return f"~{random_flat(depth - 1)}"
        op = rng.choice([" and ", " or "])
        return f"({random_flat(depth - 1)}{op}{random_flat(depth - 1)})"

    for _ in range(60):
        e = parse_cea(random_flat(3), ABCD, dialect="flat")
        for which in ("sac", "gnw", "sch"):
            assert reduce_present(e, ABCD, which) == \
                reduce_syntactic(e, ABCD, which)


def test_reconditioning_unsupported_for_sch():
    e = parse_cea("((a|b) | (c|d))", ABCD)
    with pytest.raises(ValueError, match="re-conditioning"):
        reduce_present(e, ABCD, "sch")


def test_simple_conditional_requires_containment():
    with pytest.raises(ValueError):
        SimpleConditional(ALG_AB, yes_set=0b1111, def_set=0b0011)


def test_prob_present_base_case_is_conditional_probability():
    e = parse_cea("(a|b)", ALG_AB)
    assert prob_present(e, UNIFORM_AB, "sac") == Fraction(1, 2)


def test_prob_present_sch_conjunction():
    e = parse_cea("(a|b) and (c|d)", ABCD)
    assert prob_present(e, HALF4, "sch") == Fraction(1, 4)


def test_prob_present_sac_and_gnw_conjunction_values():
    e = parse_cea("(a|b) and (c|d)", ABCD)
    assert prob_present(e, HALF4, "sac") == Fraction(5, 12)
    assert prob_present(e, HALF4, "gnw") == Fraction(1, 8)


def test_prob_present_undefined_when_never_defined():
    e = parse_cea("(a|false)", ALG_AB)
    assert prob_present(e, UNIFORM_AB, "sac") is None


def test_prob_present_agrees_with_machine_pipeline():
    """The event-mass ratio equals the limiting probability of the reduced
    conditional's machine, distribution by distribution."""
    rng = random.Random(41)
    sides = ["a", "b", "c", "a or b", "not c", "b and c"]
    for _ in range(25):
        n_leaves = rng.randint(1, 3)
        leaves = [f"({rng.choice(sides)} | {rng.choice(sides)})"
                  for _ in range(n_leaves)]
        text = leaves[0]
        for leaf in leaves[1:]:
            text = f"({text}{rng.choice([' and ', ' or '])}{leaf})"
        alg = algebra("a b c")
        e = parse_cea(text, alg, dialect="flat")
        weights = [rng.randint(0, 5) for _ in range(alg.num_atoms)]
        if sum(weights) == 0:
            weights[0] = 1
        p = ProbAssignment(alg, tuple(
            Fraction(w, sum(weights)) for w in weights))
        for which in ("sac", "gnw", "sch"):
            direct = prob_present(e, p, which)
            c = simple_to_cond(reduce_present(e, alg, which))
            via_chain = cond_asymptotic(c, alg, p)
            assert direct == via_chain, (text, which)


# ---------------------------------------------------------------------------
# Product-space interpretations


def test_first_embedding_of_simple_conditional():
    c = embed_ps(parse_cea("(a|b)", ALG_AB), "first")
    assert c == parse_cond("(O (a and b and not Y O b) | true)", ALG_AB)
    m = minimize(compile_cond(c, ALG_AB))
    assert m.n_states == 3


def test_reverse_embedding_of_conjunction():
    c = embed_ps(parse_cea("(a|b) and (c|d)", ABCD), "reverse")
    want = parse_cond("((not b S (a and b)) and (not d S (c and d)) | true)",
                      ABCD)
    assert c == want


def test_sparse_interpretation_guard():
    c = embed_ps(parse_cea("(false|a)", ALG_AB), "sparse")
    assert c.den == parse_tl("a or not O a", ALG_AB)
    c2 = embed_ps(parse_cea("(a|b) and (c|d)", ABCD), "sparse")
    assert c2.den == parse_tl("(b or not O b) or (d or not O d)", ABCD)


def test_embeddings_reject_reconditioning_and_variables():
    with pytest.raises(ValueError, match="re-conditioning"):
        embed_ps(parse_cea("((a|b) | (c|d))", ABCD), "first")
    with pytest.raises(ValueError, match="variable"):
        embed_ps(parse_cea("p and q", None, dialect="flat"), "first")


def test_independent_conjunction_probability_is_the_product():
    e = parse_cea("(a|b) and (c|d)", ABCD)
    assert prob_ps(e, HALF4, "first") == Fraction(1, 4)


def test_shared_condition_conjunction():
    # both conditionals resolve at the first b; win needs a and c there
    e = parse_cea("(a|b) and (c|b)", ABCD)
    assert prob_ps(e, HALF4, "first") == Fraction(1, 4)


def test_three_interpretations_agree_spot():
    for text in ("(a|b)", "(a|b) and (c|d)", "~(a|b) or (c and d|b or d)"):
        e = parse_cea(text, ABCD, dialect="flat")
        values = {prob_ps(e, HALF4, w) for w in ("first", "reverse", "sparse")}
        assert len(values) == 1, text


def test_degenerate_conditional_has_probability_zero():
    e = parse_cea("(a|false)", ALG_AB)
    for which in ("first", "reverse", "sparse"):
        assert prob_ps(e, UNIFORM_AB, which) == 0


def test_interpretations_agree_when_a_condition_is_impossible():
    alg = algebra("a b c")
    p = ProbAssignment.independent(
        alg, {"a": Fraction(1, 2), "b": Fraction(0), "c": Fraction(2, 3)})
    e = parse_cea("(a|b) or (a|c)", alg)
    values = {prob_ps(e, p, w) for w in ("first", "reverse", "sparse")}
    assert len(values) == 1


# ---------------------------------------------------------------------------
# Independence


def test_disjoint_generators_are_present_independent():
    c1 = parse_cond("(a|b)", ABCD)
    c2 = parse_cond("(c|d)", ABCD)
    ok, checks = present_indep(c1, c2, HALF4)
    assert ok, checks


def test_a_variable_is_not_independent_of_itself():
    c = parse_cond("(a|true)", ALG_AB)
    ok, checks = present_indep(c, c, UNIFORM_AB)
    assert not ok
    assert any(not chk["holds"] for chk in checks)


def test_shifted_copy_present_tense_independent_at_fixed_time():
    c1 = parse_cond("(a|true)", ALG_AB)
    c2 = parse_cond("(Y a|Y true)", ALG_AB)
    ok, _ = present_indep(c1, c2, UNIFORM_AB, n=3)
    assert ok
    strong, witness = strong_indep(c1, c2, UNIFORM_AB)
    assert not strong and witness is not None


def test_both_sides_undefined_convention():
    """At time 1 the delayed copy is undefined almost surely, so two of the
    four equations compare undefined with undefined and count as holding."""
    c1 = parse_cond("(a|true)", ALG_AB)
    c2 = parse_cond("(Y a|Y true)", ALG_AB)
    ok, checks = present_indep(c1, c2, UNIFORM_AB, n=1)
    assert ok
    undefined_eqs = {chk["eq"] for chk in checks
                     if chk["lhs"] is None and chk["rhs"] is None}
    assert undefined_eqs == {"i1", "i3"}


def test_disjoint_generators_are_strongly_independent():
    c1 = parse_cond("(a|b)", ABCD)
    c2 = parse_cond("(c|d)", ABCD)
    ok, witness = strong_indep(c1, c2, HALF4)
    assert ok, witness


def test_anything_is_strongly_independent_of_a_constant():
    c1 = parse_cond("(a S b | O a)", ALG_AB)
    c2 = parse_cond("(true|true)", ALG_AB)
    assert strong_indep(c1, c2, UNIFORM_AB)[0]


def test_strong_independence_matches_brute_force_sequences():
    """For small minimal machines (m, n states), factorization of the joint
    chain agrees with the defining sequence condition checked out to time
    m*n + 1 by enumeration."""
    cases = [
        ("(a|true)", "(b|true)"),
        ("(a|true)", "(a|true)"),
        ("(a|true)", "(not a|true)"),
        ("(a|true)", "(a and b|true)"),
        ("(true|true)", "(a|b)"),
    ]
    for t1, t2 in cases:
        c1, c2 = parse_cond(t1, ALG_AB), parse_cond(t2, ALG_AB)
        m = minimize(compile_cond(c1, ALG_AB)).n_states
        n = minimize(compile_cond(c2, ALG_AB)).n_states
        horizon = min(m * n + 1, 6)  # enumeration cap
        got, _ = strong_indep(c1, c2, UNIFORM_AB)
        joint = brute_joint(c1, c2, UNIFORM_AB, horizon)
        marg1: dict = {}
        marg2: dict = {}
        for (s1, s2), w in joint.items():
            marg1[s1] = marg1.get(s1, Fraction(0)) + w
            marg2[s2] = marg2.get(s2, Fraction(0)) + w
        factorizes = all(
            joint.get((s1, s2), Fraction(0)) == marg1[s1] * marg2[s2]
            for s1 in marg1 for s2 in marg2)
        assert got == factorizes, (t1, t2)


def test_strong_independence_implies_present_independence():
    rng = random.Random(77)
    pool = ["a", "b", "a and b", "a or b", "not a", "true"]
    strong_seen = 0
    for _ in range(40):
        c1 = parse_cond(f"({rng.choice(pool)} | {rng.choice(pool)})", ALG_AB)
        c2 = parse_cond(f"({rng.choice(pool)} | {rng.choice(pool)})", ALG_AB)
        weights = [rng.randint(0, 5) for _ in range(4)]
        if sum(weights) == 0:
            weights[3] = 1
        p = ProbAssignment(ALG_AB, tuple(
            Fraction(w, sum(weights)) for w in weights))
        if strong_indep(c1, c2, p)[0]:
            strong_seen += 1
            assert present_indep(c1, c2, p)[0]
            for n in (1, 2, 3):
                assert present_indep(c1, c2, p, n)[0]
    assert strong_seen > 0


def test_lift_defined():
    c = parse_cond("(a|b)", ALG_AB)
    assert lift_defined(c) == CondObject(parse_tl("b", ALG_AB), TRUE)


# ---------------------------------------------------------------------------
# Weak tautologies


def test_conditional_of_a_thing_on_itself_is_a_weak_tautology():
    e = parse_cea("(p|p)", None)
    for which in ("sac", "gnw"):
        ok, witness = weak_tautology(e, which)
        assert ok and witness is None


def test_bare_variable_is_not_a_weak_tautology():
    e = parse_cea("p", None, dialect="flat")
    ok, witness = weak_tautology(e, "sac")
    assert not ok
    assert witness == {"p": F}


def test_variable_cap_is_enforced():
    e = parse_cea(" and ".join(f"p{i}" for i in range(9)), None, dialect="flat")
    with pytest.raises(ValueError, match="cap"):
        weak_tautology(e, "sac")


def test_excluded_middle_is_weak_only_in_sac():
    e = parse_cea("p or ~p", None, dialect="flat")
    ok_sac, _ = weak_tautology(e, "sac")
    ok_gnw, witness = weak_tautology(e, "gnw")
    assert ok_sac          # undefined side is ignored
    assert ok_gnw          # 0 or 1 -> 1; bottom or bottom -> bottom
    e2 = parse_cea("p or q", None, dialect="flat")
    assert not weak_tautology(e2, "sac")[0]


# ---------------------------------------------------------------------------
# Helpers


def test_simple_to_cond_round_trip():
    s = reduce_present(parse_cea("(a|b)", ALG_AB), ALG_AB, "sac")
    c = simple_to_cond(s)
    s2 = reduce_present(parse_cea(f"({pretty(c.num)} | {pretty(c.den)})",
                                  ALG_AB), ALG_AB, "sac")
    assert s == s2


def test_collect_simples_order():
    e = parse_cea("(a|b) and ~((c|d) or (a|d))", ABCD, dialect="flat")
    pairs = [(pretty(s.num_event), pretty(s.den_event))
             for s in collect_simples(e)]
    assert pairs == [("a", "b"), ("c", "d"), ("a", "d")]


def test_first_machine_component_count_and_asymptotic_path():
    e = parse_cea("(a|b) and (c|d)", ABCD)
    m = first_machine(e, ABCD)
    assert m.n_states <= 9
    c = embed_ps(e, "first")
    assert cond_asymptotic(c, ABCD, HALF4) == Fraction(1, 4)


def test_reverse_conjunction_machine_shape():
    """The reverse interpretation of a conjunction only needs the pair of
    most-recent values: four states, one labeled 1."""
    e = parse_cea("(a|b) and (c|d)", ABCD)
    m = minimize(compile_cond(embed_ps(e, "reverse"), ABCD))
    assert m.n_states == 4
    assert sorted(v.symbol for v in m.labels) == ["0", "0", "0", "1"]


def test_sparse_conjunction_machine_shape():
    """The sparse interpretation adds a waiting part (some condition never
    seen: five states, all false) and, once both conditions have occurred,
    an undefined twin for each value pair."""
    e = parse_cea("(a|b) and (c|d)", ABCD)
    m = minimize(compile_cond(embed_ps(e, "sparse"), ABCD))
    assert m.n_states == 13
    from collections import Counter
    assert Counter(v.symbol for v in m.labels) == {"0": 8, "1": 1, "⊥": 4}


def test_sparse_interpretation_is_not_an_embedding():
    """(never|a) and (never|b) are one conditional in the product space, and
    indeed their first interpretations coincide; their sparse interpretations
    are different objects (only probabilities agree)."""
    from tlcond import isomorphic
    ab = algebra("a b")
    p = ProbAssignment.independent(ab, {"a": Fraction(1, 2), "b": Fraction(1, 3)})

    def machine(text, which):
        return minimize(compile_cond(
            embed_ps(parse_cea(text, ab, dialect="flat"), which), ab))

    assert isomorphic(machine("(false|a)", "first"), machine("(false|b)", "first"))
    assert not isomorphic(machine("(false|a)", "sparse"), machine("(false|b)", "sparse"))
    for which in ("first", "reverse", "sparse"):
        assert prob_ps(parse_cea("(false|a)", ab), p, which) == 0
        assert prob_ps(parse_cea("(false|b)", ab), p, which) == 0


def test_monolithic_and_product_pipelines_agree():
    """Compiling the whole first-interpretation formula and taking the
    product of per-conditional machines give the same minimal machine."""
    from tlcond import isomorphic
    for text in ("(a|b) and (c|d)", "~(a|b) or (c|b)", "(a or c|b) and ~(d|c)"):
        e = parse_cea(text, ABCD, dialect="flat")
        via_formula = minimize(compile_cond(embed_ps(e, "first"), ABCD))
        via_product = minimize(first_machine(e, ABCD))
        assert isomorphic(via_formula, via_product), text
