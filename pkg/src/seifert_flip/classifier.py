"""
Flippability verdicts for Heegaard splittings of Seifert fibered spaces.

Rules are tried in a fixed order and the first one that matches decides the
outcome.  Every rule evaluated along the way is recorded in the verdict's
trace, so a caller can see exactly why a splitting was (or was not) decided.

    R1  stabilized splitting            -> Flippable
    R2  horizontal splitting            -> Flippable
    R3  product S x S^1                 -> Flippable
    R4  circle bundle                   -> Flippable
    R5  genus-1 splitting of L(p, q)    -> Flippable iff q = 1 mod p
    R6  vertical, pairwise coprime alpha_i >= 3, l >= 3 or g >= 1
                                        -> NotFlippable
    R7  vertical, some alpha_i = 2, enough larger exponents, and two fibers
        with coprime alpha_i >= 3 on opposite sides
                                        -> NotFlippable
    R8  otherwise                       -> Undetermined

R6 and R7 assume the splitting is irreducible.  The only computable
reducibility test available is "stabilized", which R1 has already excluded.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations

from . import nielsen
from .errors import (InconsistentDescriptor, LensParameterUnknown, RelatorViolation,
                     SearchExhausted, WrongCase)
from .presentations import X, gen, quotient_by_h
from .seifert import (INFINITE, ManifoldClass, ManifoldKind, SeifertInvariants,
                      classify_manifold, first_homology_order, normalize, normalize_lens_q,
                      validate)
from .splittings import (Case, Kind, SplittingDescriptor, canonical_descriptor,
                         check_descriptor, descriptor_genus, induced_generating_systems,
                         is_stabilized)


class Outcome(enum.Enum):
    FLIPPABLE = "Flippable"
    NOT_FLIPPABLE = "NotFlippable"
    UNDETERMINED = "Undetermined"


class Rule(enum.Enum):
    STABILIZED = "R1"
    HORIZONTAL = "R2"
    PRODUCT = "R3"
    CIRCLE_BUNDLE = "R4"
    LENS = "R5"
    VERTICAL_COPRIME = "R6"
    VERTICAL_FG_PRIME = "R7"
    FALLBACK = "R8"


THEOREM_TAGS = {
    Rule.STABILIZED: "Theorem stabilized: stabilized splittings are flippable",
    Rule.HORIZONTAL: "Theorem hori: horizontal splittings are flippable",
    Rule.PRODUCT: "Theorem prodflip: splittings of products are flippable",
    Rule.CIRCLE_BUNDLE: "Theorem bundles: splittings of circle bundles are flippable",
    Rule.LENS: "Theorem lpq: genus 1 splitting of L(p,q) flips iff q = 1 mod p",
    Rule.VERTICAL_COPRIME: "Theorem noflip: irreducible vertical splittings do not flip",
    Rule.VERTICAL_FG_PRIME: "Theorem Fg': coprime fibers in opposite handlebodies",
    Rule.FALLBACK: "none",
}


@dataclass(frozen=True)
class RuleFiring:
    rule: Rule
    matched: bool
    detail: str = ""

    @property
    def theorem_tag(self) -> str:
        return THEOREM_TAGS[self.rule]

    def to_json(self) -> dict:
        return {"rule": self.rule.value, "theorem": self.theorem_tag,
                "matched": self.matched, "detail": self.detail}


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    trace: tuple[RuleFiring, ...]

    @property
    def deciding_rule(self) -> Rule:
        return self.trace[-1].rule

    def to_json(self) -> dict:
        return {"outcome": self.outcome.value, "trace": [f.to_json() for f in self.trace]}


def _lens_class(inv: SeifertInvariants, lens_override) -> ManifoldClass:
    p, q = (int(v) for v in lens_override)
    if inv.genus != 0 or inv.l > 2:
        raise InconsistentDescriptor(
            f"lens parameters given for {inv}, which is not a genus-0 space with at most "
            "two exceptional fibers")
    try:
        q = normalize_lens_q(p, q)
    except ValueError as exc:
        raise InconsistentDescriptor(str(exc)) from None
    order = first_homology_order(inv)
    if order != p:
        shown = "infinite" if order == INFINITE else order
        raise InconsistentDescriptor(f"L({p},{q}) has |H_1| = {p}, but {inv} has |H_1| = {shown}")
    return ManifoldClass(ManifoldKind.LENS_SPACE, p, q)


def _vertical_generic(d: SplittingDescriptor) -> bool:
    return d.kind is Kind.VERTICAL and d.vertical.case is Case.GENERIC


def _noflip_hypotheses(inv: SeifertInvariants) -> tuple[bool, str]:
    alphas = inv.alphas
    if inv.l < 2:
        return False, f"needs l >= 2 exceptional fibers, have {inv.l}"
    if inv.l < 3 and inv.genus < 1:
        return False, f"needs l >= 3 or g >= 1, have l = {inv.l}, g = {inv.genus}"
    small = [a for a in alphas if a < 3]
    if small:
        return False, f"needs every alpha_i >= 3, have {list(alphas)}"
    shared = [(a, b) for a, b in combinations(alphas, 2) if math.gcd(a, b) != 1]
    if shared:
        return False, f"alphas not pairwise coprime: {shared[0]} share a factor"
    return True, f"alphas {list(alphas)} pairwise coprime, all >= 3"


def _fg_prime_hypotheses(inv: SeifertInvariants, h1: tuple) -> tuple[bool, str]:
    alphas = inv.alphas
    m = sum(1 for a in alphas if a >= 3)
    n = sum(1 for a in alphas if a == 2)
    reading = f"reading m = #{{alpha >= 3}} = {m}, n = #{{alpha = 2}} = {n}"
    if n == 0:
        return False, f"{reading}; needs n > 0"
    need = 5 if n % 2 == 0 else 7
    if m < need:
        return False, f"{reading}; n {'even' if need == 5 else 'odd'} needs m >= {need}"
    inside = [i for i in range(1, inv.l + 1) if i in h1]
    outside = [j for j in range(1, inv.l + 1) if j not in h1]
    for i in inside:
        for j in outside:
            a, b = alphas[i - 1], alphas[j - 1]
            if a >= 3 and b >= 3 and math.gcd(a, b) == 1:
                return True, (f"{reading}; fibers {i} (alpha {a}) and {j} (alpha {b}) are "
                              "coprime and lie in opposite handlebodies")
    return False, f"{reading}; no coprime pair alpha >= 3 splits across the handlebodies"


def classify_flippability(inv: SeifertInvariants, d: SplittingDescriptor,
                          lens_override=None) -> Verdict:
    """Decide whether the splitting ``d`` of ``inv`` is flippable.

    Fiber indices in ``d`` refer to the exceptional fibers left after
    alpha = 1 fibers are folded into b.  ``lens_override`` is an explicit
    (p, q) for genus-0 manifolds with at most two exceptional fibers.
    """
    inv = normalize(validate(inv))
    check_descriptor(d, inv)
    d = canonical_descriptor(d, inv)

    lens_error = None
    if lens_override is not None:
        cls = _lens_class(inv, lens_override)
    else:
        try:
            cls = classify_manifold(inv)
        except LensParameterUnknown as exc:
            cls, lens_error = None, exc
    kind = cls.kind if cls else ManifoldKind.LENS_SPACE

    trace = []

    def fire(rule, matched, detail, outcome=None):
        trace.append(RuleFiring(rule, matched, detail))
        if matched:
            return Verdict(outcome, tuple(trace))
        return None

    stabilized = is_stabilized(d, inv)
    if v := fire(Rule.STABILIZED, stabilized,
                 f"{d} is {'' if stabilized else 'not '}stabilized", Outcome.FLIPPABLE):
        return v
    horizontal = d.kind is Kind.HORIZONTAL
    if v := fire(Rule.HORIZONTAL, horizontal,
                 "splitting is horizontal" if horizontal else "splitting is vertical",
                 Outcome.FLIPPABLE):
        return v
    if v := fire(Rule.PRODUCT, kind is ManifoldKind.PRODUCT,
                 f"{inv} is {'a' if kind is ManifoldKind.PRODUCT else 'not a'} product",
                 Outcome.FLIPPABLE):
        return v
    if v := fire(Rule.CIRCLE_BUNDLE, kind is ManifoldKind.CIRCLE_BUNDLE,
                 f"{inv} is {'a' if kind is ManifoldKind.CIRCLE_BUNDLE else 'not a'} circle bundle",
                 Outcome.FLIPPABLE):
        return v

    if kind is ManifoldKind.LENS_SPACE:
        if lens_error is not None:
            raise lens_error
        genus = descriptor_genus(d, inv)
        if genus == 1:
            flips = cls.q % cls.p == 1 % cls.p
            detail = (f"L({cls.p},{cls.q}), genus 1 splitting: "
                      f"q {'=' if flips else '!='} 1 mod {cls.p}")
            return fire(Rule.LENS, True, detail,
                        Outcome.FLIPPABLE if flips else Outcome.NOT_FLIPPABLE)
        fire(Rule.LENS, False, f"L({cls.p},{cls.q}) but splitting has genus {genus}")
    else:
        fire(Rule.LENS, False, f"{inv} is not a lens space")

    if _vertical_generic(d):
        ok6, why6 = _noflip_hypotheses(inv)
        if v := fire(Rule.VERTICAL_COPRIME, ok6, why6, Outcome.NOT_FLIPPABLE):
            return v
        ok7, why7 = _fg_prime_hypotheses(inv, d.vertical.h1_fibers)
        if v := fire(Rule.VERTICAL_FG_PRIME, ok7, why7, Outcome.NOT_FLIPPABLE):
            return v
        nearest = Rule.VERTICAL_FG_PRIME if 2 in inv.alphas else Rule.VERTICAL_COPRIME
        reason = why7 if nearest is Rule.VERTICAL_FG_PRIME else why6
    else:
        why = f"{d} is not a generic vertical splitting"
        fire(Rule.VERTICAL_COPRIME, False, why)
        fire(Rule.VERTICAL_FG_PRIME, False, why)
        nearest, reason = Rule.LENS, trace[-3].detail
    return fire(Rule.FALLBACK, True, f"no rule decides; nearest {nearest.value}: {reason}",
                Outcome.UNDETERMINED)


class OracleStatus(enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    EXHAUSTED = "Exhausted"
    CONTRADICTION = "Contradiction"


@dataclass
class ConsistencyReport:
    verdict: Verdict
    status: OracleStatus
    first: tuple
    second: tuple
    notes: list = field(default_factory=list)

    @property
    def contradiction(self) -> bool:
        return self.status is OracleStatus.CONTRADICTION

    def to_json(self) -> dict:
        return {"status": self.status.value, "verdict": self.verdict.to_json(),
                "first_system": list(self.first), "second_system": list(self.second),
                "notes": list(self.notes)}


def _check_relators(G, assignment, relators):
    for r in relators:
        value = nielsen.evaluate_word(G, assignment, r)
        if value != 0:
            raise RelatorViolation(f"relator {r} maps to element {value}, not the identity")


def oracle_consistency_check(inv: SeifertInvariants, d: SplittingDescriptor,
                             G: nielsen.FiniteGroupTable, assignment: dict,
                             lens_override=None, exponents=None, omit=None,
                             node_cap: int = nielsen.DEFAULT_NODE_CAP) -> ConsistencyReport:
    """Cross-check a verdict against Nielsen equivalence in a finite quotient.

    If a splitting flips, the generating systems its two handlebodies induce
    are Nielsen equivalent, and so are their images in any quotient.  A
    Flippable verdict with non-equivalent images is therefore a
    contradiction.  The converse proves nothing: equivalent images never
    refute NotFlippable.

    For a genus 1 splitting of L(p, q) the group is <x | x^p> with x the
    core of one solid torus; the other core is x^(q^-1 mod p).  Otherwise
    ``d`` must be a generic vertical splitting and ``assignment`` must map
    the generators of pi_1(M)/<h> into ``G``.
    """
    verdict = classify_flippability(inv, d, lens_override)
    inv = normalize(inv)
    notes = []
    lens = None
    if d.kind is Kind.VERTICAL:
        if lens_override is not None:
            lens = _lens_class(inv, lens_override)
        elif verdict.trace[-1].rule is Rule.LENS:
            lens = classify_manifold(inv)

    if lens is not None:
        x = X(1)
        _check_relators(G, assignment, [gen(x, lens.p)])
        back = pow(lens.q, -1, lens.p) if lens.p > 1 else 1
        first = (nielsen.evaluate_word(G, assignment, gen(x)),)
        second = (nielsen.evaluate_word(G, assignment, gen(x, back)),)
    else:
        if not _vertical_generic(d):
            raise WrongCase("the oracle needs a generic vertical splitting or a lens space")
        _check_relators(G, assignment, quotient_by_h(inv).relators)
        sys_a, sys_b = induced_generating_systems(d.vertical.canonicalize(inv.l), inv,
                                                  exponents, omit)
        first = tuple(nielsen.evaluate_word(G, assignment, w) for w in sys_a)
        second = tuple(nielsen.evaluate_word(G, assignment, w) for w in sys_b)

    try:
        equivalent = nielsen.nielsen_equivalent_finite(G, first, second, node_cap)
    except SearchExhausted as exc:
        notes.append(str(exc))
        return ConsistencyReport(verdict, OracleStatus.EXHAUSTED, first, second, notes)

    if equivalent:
        status = OracleStatus.EQUIVALENT
        if verdict.outcome is Outcome.NOT_FLIPPABLE:
            notes.append("oracle is necessary-condition only: equivalent images do not "
                         "refute NotFlippable")
    elif verdict.outcome is Outcome.FLIPPABLE:
        status = OracleStatus.CONTRADICTION
        notes.append("Flippable verdict but the induced systems are not Nielsen equivalent")
    else:
        status = OracleStatus.NOT_EQUIVALENT
    return ConsistencyReport(verdict, status, first, second, notes)
