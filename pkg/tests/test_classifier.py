import math
from itertools import combinations, permutations, product

import pytest

from seifert_flip.classifier import (OracleStatus, Outcome, Rule, classify_flippability,
                                     oracle_consistency_check)
from seifert_flip.errors import (InconsistentDescriptor, LensParameterUnknown, RelatorViolation,
                                 WrongCase)
from seifert_flip.nielsen import cyclic_group, generates, permutation_group
from seifert_flip.presentations import X
from seifert_flip.seifert import SeifertInvariants, lens_space, normalize
from seifert_flip.splittings import (Case, SplittingDescriptor, VerticalSplitting,
                                     enumerate_vertical)

BRIESKORN = SeifertInvariants(0, -1, [(3, 1), (5, 1), (7, 1)])


def vertical(*h1, case=Case.GENERIC):
    return SplittingDescriptor.of(VerticalSplitting(case, tuple(h1)))


def lens_verdict(p, q):
    inv = lens_space(p, q)
    return classify_flippability(inv, SplittingDescriptor.of(enumerate_vertical(inv)[0]), (p, q))


def test_trace_lists_every_rule_up_to_decision():
    v = classify_flippability(BRIESKORN, vertical(1))
    assert v.outcome is Outcome.NOT_FLIPPABLE
    assert [f.rule for f in v.trace] == list(Rule)[:6]
    assert [f.matched for f in v.trace] == [False] * 5 + [True]
    assert v.trace[-1].theorem_tag.startswith("Theorem noflip")


def test_l41_flips():
    v = lens_verdict(4, 1)
    assert (v.outcome, v.deciding_rule) == (Outcome.FLIPPABLE, Rule.LENS)


def test_l72_does_not_flip():
    v = lens_verdict(7, 2)
    assert (v.outcome, v.deciding_rule) == (Outcome.NOT_FLIPPABLE, Rule.LENS)


def test_l_p_minus_one_is_not_flippable():
    v = lens_verdict(7, 6)
    assert v.outcome is Outcome.NOT_FLIPPABLE


def test_s3_genus_one_flips():
    assert lens_verdict(1, 0).outcome is Outcome.FLIPPABLE


def test_lens_q_normalized_before_rule():
    inv = lens_space(5, 1)
    d = SplittingDescriptor.of(enumerate_vertical(inv)[0])
    assert classify_flippability(inv, d, (5, 11)).outcome is Outcome.FLIPPABLE
    assert classify_flippability(inv, d, (5, -4)).outcome is Outcome.FLIPPABLE


def test_derived_lens_space():
    inv = SeifertInvariants(0, 1, [(5, 2)])   # p = 7, q = 5
    v = classify_flippability(inv, SplittingDescriptor.of(enumerate_vertical(inv)[0]))
    assert (v.outcome, v.deciding_rule) == (Outcome.NOT_FLIPPABLE, Rule.LENS)
    assert "L(7,5)" in v.trace[-1].detail


def test_two_fiber_lens_needs_override():
    inv = SeifertInvariants(0, 0, [(3, 1), (5, 1)])   # |H_1| = 8
    with pytest.raises(LensParameterUnknown):
        classify_flippability(inv, vertical(1))
    assert classify_flippability(inv, vertical(1), (8, 3)).outcome is Outcome.NOT_FLIPPABLE
    assert classify_flippability(inv, vertical(1), (8, 1)).outcome is Outcome.FLIPPABLE
    # R1/R2 still decide without q
    assert classify_flippability(inv, SplittingDescriptor.horizontal()).outcome \
        is Outcome.FLIPPABLE


def test_lens_override_inconsistent():
    with pytest.raises(InconsistentDescriptor):
        classify_flippability(BRIESKORN, vertical(1), (5, 2))
    with pytest.raises(InconsistentDescriptor):
        classify_flippability(lens_space(5, 2), vertical(1, case=Case.SINGLE_SPINE), (7, 2))
    with pytest.raises(InconsistentDescriptor):
        classify_flippability(lens_space(5, 2), vertical(1, case=Case.SINGLE_SPINE), (5, 5))


def test_noflip_with_genus():
    inv = SeifertInvariants(1, 0, [(3, 1), (5, 1)])
    v = classify_flippability(inv, vertical(1))
    assert (v.outcome, v.deciding_rule) == (Outcome.NOT_FLIPPABLE, Rule.VERTICAL_COPRIME)


def test_circle_bundle_single_spine():
    inv = SeifertInvariants(1, 2)
    v = classify_flippability(inv, vertical(case=Case.SINGLE_SPINE))
    assert (v.outcome, v.deciding_rule) == (Outcome.FLIPPABLE, Rule.CIRCLE_BUNDLE)


def test_paired_duos_undetermined():
    inv = SeifertInvariants(0, 1, [(3, 1), (3, 2), (5, 1), (5, 2)])
    v = classify_flippability(inv, vertical(1, 3))
    assert (v.outcome, v.deciding_rule) == (Outcome.UNDETERMINED, Rule.FALLBACK)
    assert "nearest R6" in v.trace[-1].detail


def test_stabilized_precedes_everything():
    for inv in (BRIESKORN, lens_space(7, 2), SeifertInvariants(2, 0)):
        base = SplittingDescriptor.of(enumerate_vertical(inv)[0])
        v = classify_flippability(inv, SplittingDescriptor.stabilize(base, 1))
        assert (v.outcome, v.deciding_rule, len(v.trace)) == (Outcome.FLIPPABLE, Rule.STABILIZED, 1)


def test_horizontal_flips():
    v = classify_flippability(BRIESKORN, SplittingDescriptor.horizontal())
    assert (v.outcome, v.deciding_rule) == (Outcome.FLIPPABLE, Rule.HORIZONTAL)


def test_fg_prime_rule_fires():
    # n = 1 alpha equal to 2, m = 7 exponents >= 3, coprime 3 | 5 split
    alphas = [2, 3, 5, 7, 11, 13, 17, 19]
    inv = SeifertInvariants(0, 0, [(a, 1) for a in alphas])
    v = classify_flippability(inv, vertical(1, 2))
    assert (v.outcome, v.deciding_rule) == (Outcome.NOT_FLIPPABLE, Rule.VERTICAL_FG_PRIME)
    assert "m = #{alpha >= 3} = 7" in v.trace[-1].detail


def test_fg_prime_threshold_not_met():
    # n = 1 odd needs m >= 7; m = 6 here
    inv = SeifertInvariants(0, 0, [(a, 1) for a in [2, 3, 5, 7, 11, 13, 17]])
    v = classify_flippability(inv, vertical(1, 2))
    assert v.outcome is Outcome.UNDETERMINED
    assert "nearest R7" in v.trace[-1].detail


def test_fg_prime_needs_split_coprime_pair():
    # n = 2 even, m = 5; only fibers with alpha 2 in H_1 -> no coprime pair across
    inv = SeifertInvariants(0, 0, [(a, 1) for a in [2, 2, 3, 5, 7, 11, 13]])
    assert classify_flippability(inv, vertical(1, 2)).outcome is Outcome.UNDETERMINED
    assert classify_flippability(inv, vertical(1, 3)).deciding_rule is Rule.VERTICAL_FG_PRIME


def test_verdict_invariant_under_relabeling():
    inv = SeifertInvariants(1, -2, [(3, 1), (4, 1), (5, 2), (7, 3)])
    for perm in permutations(range(4)):
        relabeled = SeifertInvariants(inv.genus, inv.euler_b, [inv.fibers[i] for i in perm])
        where = {old + 1: new + 1 for new, old in enumerate(perm)}
        for s in enumerate_vertical(inv):
            moved = vertical(*sorted(where[i] for i in s.h1_fibers))
            a = classify_flippability(inv, SplittingDescriptor.of(s))
            b = classify_flippability(relabeled, moved)
            assert (a.outcome, a.deciding_rule) == (b.outcome, b.deciding_rule)


def test_partition_and_complement_agree():
    d1, d2 = vertical(1), vertical(2, 3)
    assert classify_flippability(BRIESKORN, d1) == classify_flippability(BRIESKORN, d2)


def test_r6_guard_sweep():
    """R6 never fires with an alpha of 2 or a shared factor."""
    alphas_pool = [2, 3, 4, 5, 6, 7, 9]
    for l in (2, 3, 4):
        for alphas in combinations(alphas_pool, l):
            for g in (0, 1):
                inv = SeifertInvariants(g, 1, [(a, 1) for a in alphas])
                coprime = all(math.gcd(a, b) == 1 for a, b in combinations(alphas, 2))
                for s in enumerate_vertical(inv):
                    try:
                        v = classify_flippability(inv, SplittingDescriptor.of(s))
                    except LensParameterUnknown:
                        continue
                    if v.deciding_rule is Rule.VERTICAL_COPRIME:
                        assert min(alphas) >= 3 and coprime and (l >= 3 or g >= 1)


def test_regular_fibers_folded_before_rules():
    inv = SeifertInvariants(0, -2, [(3, 1), (1, 1), (5, 1), (7, 1)])
    v = classify_flippability(inv, vertical(1))
    assert v.deciding_rule is Rule.VERTICAL_COPRIME
    assert normalize(inv) == BRIESKORN


def test_verdict_json_shape():
    obj = classify_flippability(BRIESKORN, vertical(1)).to_json()
    assert obj["outcome"] == "NotFlippable"
    assert set(obj["trace"][0]) == {"rule", "theorem", "matched", "detail"}
    assert obj["trace"][-1]["rule"] == "R6"


# oracle


def lens_check(p, q, image):
    inv = lens_space(p, q)
    d = SplittingDescriptor.of(enumerate_vertical(inv)[0])
    return oracle_consistency_check(inv, d, cyclic_group(p), {X(1): image}, (p, q))


def test_oracle_lens_examples():
    r = lens_check(5, 2, 2)
    assert r.verdict.outcome is Outcome.NOT_FLIPPABLE
    assert r.status is OracleStatus.NOT_EQUIVALENT and (r.first, r.second) == ((2,), (1,))
    r = lens_check(5, 1, 1)
    assert r.status is OracleStatus.EQUIVALENT and not r.contradiction
    r = lens_check(5, 4, 4)
    assert r.verdict.outcome is Outcome.NOT_FLIPPABLE
    assert r.status is OracleStatus.EQUIVALENT and (r.first, r.second) == ((4,), (1,))
    assert any("necessary-condition only" in n for n in r.notes)


def test_oracle_relator_violation():
    inv = lens_space(5, 2)
    d = SplittingDescriptor.of(enumerate_vertical(inv)[0])
    with pytest.raises(RelatorViolation):
        oracle_consistency_check(inv, d, cyclic_group(3), {X(1): 1}, (5, 2))


def test_oracle_vertical_trivial_quotient():
    r = oracle_consistency_check(BRIESKORN, vertical(1), cyclic_group(1),
                                 {X(1): 0, X(2): 0, X(3): 0})
    assert r.status is OracleStatus.EQUIVALENT and not r.contradiction
    with pytest.raises(RelatorViolation):
        oracle_consistency_check(BRIESKORN, vertical(1), cyclic_group(3),
                                 {X(1): 1, X(2): 0, X(3): 0})


def test_oracle_needs_generic_vertical():
    with pytest.raises(WrongCase):
        oracle_consistency_check(BRIESKORN, SplittingDescriptor.horizontal(), cyclic_group(1), {})


def a5_triangle_assignment():
    """Images of x1, x2, x3 in A5 with orders 2, 3, 5 and x1 x2 x3 = 1."""
    G = permutation_group([(1, 0, 3, 2, 4), (0, 2, 4, 3, 1)], "A5")

    def order(x):
        k, y = 1, x
        while y:
            y, k = G.mul[y][x], k + 1
        return k

    for a, b in product(range(G.order), repeat=2):
        c = G.inv[G.mul[a][b]]
        if (order(a), order(b), order(c)) == (2, 3, 5) and generates(G, (a, b)):
            return G, {X(1): a, X(2): b, X(3): c}
    raise AssertionError("no (2,3,5) generating triple found")


def test_oracle_vertical_a5():
    inv = SeifertInvariants(0, -1, [(2, 1), (3, 1), (5, 1)])   # Poincare sphere
    G, assignment = a5_triangle_assignment()
    r = oracle_consistency_check(inv, vertical(1), G, assignment, exponents=[1, 1, 1])
    assert r.verdict.outcome is Outcome.UNDETERMINED
    assert r.status is OracleStatus.EQUIVALENT
    assert len(r.first) == len(r.second) == 2


def test_oracle_vertical_a5_nontrivial_exponents():
    inv = SeifertInvariants(0, -1, [(2, 1), (3, 1), (5, 1)])
    G, assignment = a5_triangle_assignment()
    # (x1, x3) against (x3^2, x1)
    r = oracle_consistency_check(inv, vertical(1), G, assignment, exponents=[1, 1, 2])
    assert r.status in (OracleStatus.EQUIVALENT, OracleStatus.NOT_EQUIVALENT)
    assert not r.contradiction


def test_oracle_exhausted():
    inv = SeifertInvariants(0, -1, [(2, 1), (3, 1), (5, 1)])
    G, assignment = a5_triangle_assignment()
    r = oracle_consistency_check(inv, vertical(1), G, assignment, exponents=[1, 1, 2],
                                 node_cap=5)
    assert r.status is OracleStatus.EXHAUSTED
