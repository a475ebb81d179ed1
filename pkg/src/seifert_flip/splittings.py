"""
Vertical, horizontal and stabilized Heegaard splittings.

A vertical splitting is recorded only by which exceptional fibers its first
handlebody contains; the arcs of the spine are not modelled.  Partitions are
unordered, so each one is stored canonically as the part containing fiber 1
(equivalently the lexicographically smaller part).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from .errors import ExponentCountMismatch, InconsistentDescriptor, WrongCase
from .presentations import A, B, X, gen
from .seifert import SeifertInvariants, normalize


class Case(enum.Enum):
    PRODUCT = "product"
    GENERIC = "generic"
    SINGLE_SPINE = "single"


@dataclass(frozen=True)
class VerticalSplitting:
    case: Case
    h1_fibers: tuple[int, ...] = ()
    canonical: bool = True

    def complement(self, l: int) -> tuple[int, ...]:
        return tuple(i for i in range(1, l + 1) if i not in self.h1_fibers)

    def canonicalize(self, l: int) -> "VerticalSplitting":
        if self.case is not Case.GENERIC:
            return VerticalSplitting(self.case, self.h1_fibers, True)
        part = min(tuple(sorted(self.h1_fibers)), self.complement(l))
        return VerticalSplitting(self.case, part, True)


class Kind(enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    STABILIZED = "stabilized"


@dataclass(frozen=True)
class SplittingDescriptor:
    kind: Kind
    vertical: VerticalSplitting | None = None
    base: "SplittingDescriptor | None" = None
    extra_genus: int = 0

    def __post_init__(self):
        if self.kind is Kind.VERTICAL and self.vertical is None:
            raise ValueError("a vertical descriptor needs its VerticalSplitting")
        if self.kind is Kind.STABILIZED:
            if self.base is None:
                raise ValueError("a stabilized descriptor needs a base splitting")
            if self.extra_genus < 1:
                raise ValueError(f"extra_genus must be >= 1, got {self.extra_genus}")

    @classmethod
    def of(cls, v: VerticalSplitting) -> "SplittingDescriptor":
        return cls(Kind.VERTICAL, vertical=v)

    @classmethod
    def horizontal(cls) -> "SplittingDescriptor":
        return cls(Kind.HORIZONTAL)

    @classmethod
    def stabilize(cls, base: "SplittingDescriptor", extra_genus: int = 1) -> "SplittingDescriptor":
        return cls(Kind.STABILIZED, base=base, extra_genus=extra_genus)

    def to_json(self) -> dict:
        if self.kind is Kind.VERTICAL:
            return {"kind": "vertical", "h1_fibers": list(self.vertical.h1_fibers),
                    "case": self.vertical.case.value}
        if self.kind is Kind.HORIZONTAL:
            return {"kind": "horizontal"}
        return {"kind": "stabilized", "base": self.base.to_json(), "extra_genus": self.extra_genus}

    @classmethod
    def from_json(cls, obj: dict, inv: SeifertInvariants | None = None) -> "SplittingDescriptor":
        """Parse a descriptor.  For vertical splittings without an explicit
        ``case`` the case is inferred from ``inv``."""
        kind = Kind(obj["kind"])
        if kind is Kind.HORIZONTAL:
            return cls.horizontal()
        if kind is Kind.STABILIZED:
            return cls.stabilize(cls.from_json(obj["base"], inv), int(obj.get("extra_genus", 1)))
        h1 = tuple(sorted(int(i) for i in obj.get("h1_fibers", [])))
        if "case" in obj:
            case = Case(obj["case"])
        elif inv is not None:
            case = vertical_case(inv)
        else:
            raise ValueError("vertical descriptor needs a 'case' when no invariants are given")
        return cls.of(VerticalSplitting(case, h1, canonical=False))

    def __str__(self):
        if self.kind is Kind.VERTICAL:
            v = self.vertical
            if v.case is Case.GENERIC:
                return f"vertical {set(v.h1_fibers)}"
            return f"vertical ({v.case.value})"
        if self.kind is Kind.HORIZONTAL:
            return "horizontal"
        return f"{self.base} + {self.extra_genus} stabilization(s)"


def vertical_case(inv: SeifertInvariants) -> Case:
    inv = normalize(inv)
    if inv.l == 0 and inv.euler_b == 0:
        return Case.PRODUCT
    if inv.l <= 1:
        return Case.SINGLE_SPINE
    return Case.GENERIC


def enumerate_vertical(inv: SeifertInvariants) -> list[VerticalSplitting]:
    """All vertical splittings, one per unordered partition of the fibers.

    With l >= 2 exceptional fibers there are 2^(l-1) - 1 of them, listed in
    lexicographic order of the canonical part.
    """
    inv = normalize(inv)
    case = vertical_case(inv)
    if case is Case.PRODUCT:
        return [VerticalSplitting(Case.PRODUCT)]
    if case is Case.SINGLE_SPINE:
        return [VerticalSplitting(Case.SINGLE_SPINE, (1,) if inv.l == 1 else ())]
    l = inv.l
    rest = range(2, l + 1)
    parts = [(1,) + c for k in range(0, l - 1) for c in combinations(rest, k)]
    return [VerticalSplitting(Case.GENERIC, p) for p in sorted(parts)]


def genus_of(s: VerticalSplitting, inv: SeifertInvariants) -> int:
    """Genus of the handlebody N(spine), i.e. the rank of the spine graph."""
    inv = normalize(inv)
    surface = 2 * inv.genus
    if s.case is not Case.GENERIC:
        # a single circle (product: a regular fiber) plus the surface arcs
        return 1 + surface
    n = len(s.h1_fibers)
    # n fiber loops joined by n - 1 tree arcs, plus l - n - 1 extra fiber arcs
    loops = n
    extra_arcs = inv.l - n - 1
    return loops + extra_arcs + surface


def check_vertical(s: VerticalSplitting, inv: SeifertInvariants) -> None:
    """Raise InconsistentDescriptor unless ``s`` is a splitting of ``inv``."""
    inv = normalize(inv)
    expected = vertical_case(inv)
    if s.case is not expected:
        raise InconsistentDescriptor(
            f"{s.case.value} vertical splitting given, but {inv} admits only {expected.value}")
    if s.case is Case.GENERIC:
        bad = [i for i in s.h1_fibers if not 1 <= i <= inv.l]
        if bad:
            raise InconsistentDescriptor(f"h1_fibers {bad} out of range 1..{inv.l}")
        if len(set(s.h1_fibers)) != len(s.h1_fibers):
            raise InconsistentDescriptor(f"h1_fibers {list(s.h1_fibers)} has repeats")
        if not 1 <= len(s.h1_fibers) <= inv.l - 1:
            raise InconsistentDescriptor(
                "a generic vertical splitting needs a proper nonempty subset of the fibers")
    elif s.case is Case.SINGLE_SPINE:
        allowed = {(), (1,)} if inv.l == 1 else {()}
        if s.h1_fibers not in allowed:
            raise InconsistentDescriptor(f"h1_fibers {list(s.h1_fibers)} invalid for {inv}")
    elif s.h1_fibers:
        raise InconsistentDescriptor("a product splitting contains no exceptional fibers")


def check_descriptor(d: SplittingDescriptor, inv: SeifertInvariants) -> None:
    if d.kind is Kind.VERTICAL:
        check_vertical(d.vertical, inv)
    elif d.kind is Kind.STABILIZED:
        check_descriptor(d.base, inv)


def canonical_descriptor(d: SplittingDescriptor, inv: SeifertInvariants) -> SplittingDescriptor:
    inv = normalize(inv)
    if d.kind is Kind.VERTICAL:
        return SplittingDescriptor.of(d.vertical.canonicalize(inv.l))
    if d.kind is Kind.STABILIZED:
        return SplittingDescriptor.stabilize(canonical_descriptor(d.base, inv), d.extra_genus)
    return d


def induced_generating_systems(s: VerticalSplitting, inv: SeifertInvariants,
                               exponents=None, omit: int | None = None):
    """Generating systems of pi_1(M)/<h> induced by the two handlebodies.

    The first system holds x_i^nu_i for the fibers in H_1 and plain x_j for
    the other fibers; the second swaps the roles.  One fiber index outside
    H_1 (``omit``, by default the smallest) appears in neither.  Both end with
    a_1, b_1, ..., a_g, b_g, so each has 2g + l - 1 entries.
    """
    inv = normalize(inv)
    if s.case is not Case.GENERIC:
        raise WrongCase(f"induced systems need a generic vertical splitting, got {s.case.value}")
    if exponents is None:
        exponents = [1] * inv.l
    exponents = list(exponents)
    if len(exponents) != inv.l:
        raise ExponentCountMismatch(f"expected {inv.l} exponents, got {len(exponents)}")
    inside = tuple(sorted(s.h1_fibers))
    outside = s.complement(inv.l)
    if omit is None:
        omit = outside[0]
    elif omit not in outside:
        raise WrongCase(f"omitted index {omit} must lie outside H_1 {list(inside)}")
    outside = tuple(j for j in outside if j != omit)
    surface = [gen(g(i)) for i in range(1, inv.genus + 1) for g in (A, B)]

    first = [gen(X(i), exponents[i - 1]) for i in inside] + [gen(X(j)) for j in outside]
    second = ([gen(X(j), exponents[j - 1]) for j in reversed(outside)]
              + [gen(X(i)) for i in reversed(inside)])
    return tuple(first + surface), tuple(second + surface)


def is_stabilized(d: SplittingDescriptor, inv: SeifertInvariants) -> bool:
    if d.kind is Kind.STABILIZED:
        return True
    if d.kind is Kind.HORIZONTAL:
        return False
    minimum = min(genus_of(s, inv) for s in enumerate_vertical(inv))
    return genus_of(d.vertical, inv) > minimum


def descriptor_genus(d: SplittingDescriptor, inv: SeifertInvariants) -> int | None:
    """Genus of the splitting surface, None when unknown (horizontal)."""
    if d.kind is Kind.VERTICAL:
        return genus_of(d.vertical, inv)
    if d.kind is Kind.STABILIZED:
        base = descriptor_genus(d.base, inv)
        return None if base is None else base + d.extra_genus
    return None

