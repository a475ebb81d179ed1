from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from seifert_flip.errors import InvalidMultiplicity, LensParameterUnknown, NonCoprimeSlope
from seifert_flip.seifert import (INFINITE, ExceptionalFiber, ManifoldKind, SeifertInvariants,
                                  classify_manifold, euler_number, first_homology_order,
                                  lens_space, normalize, validate)

from .strategies import invariants

BRIESKORN = SeifertInvariants(0, -1, [(3, 1), (5, 1), (7, 1)])


def test_validate_accepts_coprime_fibers():
    assert validate(BRIESKORN) is BRIESKORN


def test_validate_rejects_non_coprime_slope():
    with pytest.raises(NonCoprimeSlope):
        validate(SeifertInvariants(0, 0, [(4, 2)]))


def test_validate_accepts_empty_fiber_list():
    inv = SeifertInvariants(1, 0)
    assert validate(inv) == inv


@pytest.mark.parametrize("alpha", [0, -3])
def test_validate_rejects_bad_multiplicity(alpha):
    with pytest.raises(InvalidMultiplicity):
        validate(SeifertInvariants(0, 0, [(alpha, 1)]))


def test_alpha_one_accepts_any_beta():
    validate(SeifertInvariants(0, 0, [(1, 0), (1, 6)]))


def test_normalize_folds_regular_fibers():
    inv = SeifertInvariants(1, 2, [(1, 3), (5, 2), (1, -1)])
    assert normalize(inv) == SeifertInvariants(1, 4, [(5, 2)])


def test_euler_number():
    assert euler_number(SeifertInvariants(0, 2)) == 2
    assert euler_number(SeifertInvariants(0, 1, [(2, 1)])) == Fraction(3, 2)
    # independent summation over a common denominator
    expected = Fraction(-105 + 35 + 21 + 15, 105)
    assert euler_number(BRIESKORN) == expected == Fraction(-34, 105)


def test_first_homology_order_examples():
    assert first_homology_order(SeifertInvariants(1, 0)) == INFINITE
    assert first_homology_order(SeifertInvariants(0, 1, [(2, 1)])) == 3
    assert first_homology_order(BRIESKORN) == 34


def test_first_homology_order_vanishing_determinant():
    # S^2 x S^1 with two cancelling fibers
    assert first_homology_order(SeifertInvariants(0, 0, [(2, 1), (2, -1)])) == INFINITE
    assert first_homology_order(SeifertInvariants(0, 0)) == INFINITE


def test_homology_order_is_euler_number_times_alphas():
    # |H_1| = |e| * prod(alpha) for genus 0
    for inv in (BRIESKORN, SeifertInvariants(0, 2, [(2, 1), (3, -1), (4, 3)])):
        e = euler_number(inv)
        prod = 1
        for a in inv.alphas:
            prod *= a
        assert first_homology_order(inv) == abs(e * prod)


@given(invariants(max_genus=2))
def test_invariant_under_fiber_permutation(inv):
    base = (euler_number(inv), first_homology_order(inv))
    for perm in list(permutations(inv.fibers))[:24]:
        other = SeifertInvariants(inv.genus, inv.euler_b, perm)
        assert (euler_number(other), first_homology_order(other)) == base


def test_classify_examples():
    assert classify_manifold(SeifertInvariants(2, 0)).kind is ManifoldKind.PRODUCT
    assert classify_manifold(SeifertInvariants(1, 3)).kind is ManifoldKind.CIRCLE_BUNDLE
    lens = classify_manifold(SeifertInvariants(0, 1, [(2, 1)]))
    assert (lens.kind, lens.p) == (ManifoldKind.LENS_SPACE, 3)
    assert classify_manifold(BRIESKORN).kind is ManifoldKind.GENERAL


def test_classify_lens_q_is_alpha_mod_p():
    cls = classify_manifold(SeifertInvariants(0, 1, [(5, 2)]))
    assert (cls.p, cls.q) == (7, 5)
    assert 0 < cls.q < cls.p


def test_classify_two_fiber_lens_needs_explicit_q():
    with pytest.raises(LensParameterUnknown):
        classify_manifold(SeifertInvariants(0, 0, [(2, 1), (3, 1)]))


def test_classify_two_fiber_infinite_is_general():
    cls = classify_manifold(SeifertInvariants(0, 0, [(2, 1), (2, -1)]))
    assert cls.kind is ManifoldKind.GENERAL


def test_classify_regular_fiber_counts_as_bundle():
    cls = classify_manifold(SeifertInvariants(2, 0, [(1, 4)]))
    assert cls.kind is ManifoldKind.CIRCLE_BUNDLE


@given(invariants(max_genus=2))
def test_classify_is_total_except_lens_unknown(inv):
    n = normalize(inv)
    try:
        cls = classify_manifold(inv)
    except LensParameterUnknown:
        assert n.genus == 0 and n.l == 2
        return
    assert cls.kind in ManifoldKind


@pytest.mark.parametrize("p,q", [(1, 0), (2, 1), (7, 3), (30, 29)])
def test_lens_space_round_trip(p, q):
    inv = lens_space(p, q)
    assert first_homology_order(inv) == p
    if q > 1:
        cls = classify_manifold(inv)
        assert (cls.p, cls.q) == (p, q)


def test_json_round_trip():
    obj = {"genus": 0, "b": -1, "fibers": [[3, 1], [5, 1], [7, 1]]}
    inv = SeifertInvariants.from_json(obj)
    assert inv == BRIESKORN
    assert inv.to_json() == obj
    assert inv.fibers[0] == ExceptionalFiber(3, 1)
