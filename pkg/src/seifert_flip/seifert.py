"""
Seifert invariants of totally orientable Seifert fibered spaces.

A manifold is described by the tuple <g, b, (a_1, b_1), ..., (a_l, b_l)>:
the genus of the (orientable) base surface, the integer Euler number and
one (alpha, beta) pair per exceptional fiber.  Everything here is a pure
function of immutable values.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidMultiplicity, LensParameterUnknown, NonCoprimeSlope

INFINITE = math.inf


@dataclass(frozen=True)
class ExceptionalFiber:
    alpha: int
    beta: int

    @property
    def is_regular(self) -> bool:
        return self.alpha == 1


@dataclass(frozen=True)
class SeifertInvariants:
    genus: int
    euler_b: int
    fibers: tuple[ExceptionalFiber, ...] = ()

    def __post_init__(self):
        # accept lists of pairs as a convenience
        fibers = tuple(f if isinstance(f, ExceptionalFiber) else ExceptionalFiber(*f)
                       for f in self.fibers)
        object.__setattr__(self, "fibers", fibers)

    @property
    def l(self) -> int:
        return len(self.fibers)

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(f.alpha for f in self.fibers)

    @classmethod
    def from_json(cls, obj: dict) -> "SeifertInvariants":
        return cls(int(obj["genus"]), int(obj["b"]),
                   tuple(ExceptionalFiber(int(a), int(b)) for a, b in obj.get("fibers", [])))

    def to_json(self) -> dict:
        return {"genus": self.genus, "b": self.euler_b,
                "fibers": [[f.alpha, f.beta] for f in self.fibers]}

    def __str__(self):
        parts = [str(self.genus), str(self.euler_b)]
        parts += [f"({f.alpha},{f.beta})" for f in self.fibers]
        return "<" + ", ".join(parts) + ">"


class ManifoldKind(enum.Enum):
    PRODUCT = "Product"
    CIRCLE_BUNDLE = "CircleBundle"
    LENS_SPACE = "LensSpace"
    GENERAL = "General"


@dataclass(frozen=True)
class ManifoldClass:
    kind: ManifoldKind
    p: int | None = None
    q: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is ManifoldKind.LENS_SPACE:
            out.update(p=self.p, q=self.q)
        return out


def validate(raw: SeifertInvariants) -> SeifertInvariants:
    if raw.genus < 0:
        raise ValueError(f"genus must be non-negative, got {raw.genus}")
    for i, f in enumerate(raw.fibers, start=1):
        if f.alpha < 1:
            raise InvalidMultiplicity(f"fiber {i}: alpha={f.alpha} must be >= 1")
        if f.alpha > 1 and math.gcd(f.alpha, abs(f.beta)) != 1:
            raise NonCoprimeSlope(
                f"fiber {i}: gcd(alpha={f.alpha}, beta={f.beta}) = "
                f"{math.gcd(f.alpha, abs(f.beta))} != 1")
    return raw


def normalize(inv: SeifertInvariants) -> SeifertInvariants:
    """Fold every fiber with alpha = 1 into the Euler number.

    A (1, beta) fiber is a regular fiber; removing it and adding beta to b
    gives the same manifold.
    """
    b = inv.euler_b + sum(f.beta for f in inv.fibers if f.is_regular)
    fibers = tuple(f for f in inv.fibers if not f.is_regular)
    if b == inv.euler_b and len(fibers) == inv.l:
        return inv
    return SeifertInvariants(inv.genus, b, fibers)


def euler_number(inv: SeifertInvariants) -> Fraction:
    """Rational Euler number b + sum(beta_i / alpha_i), no global sign flip."""
    return inv.euler_b + sum((Fraction(f.beta, f.alpha) for f in inv.fibers), Fraction(0))


def _homology_determinant(inv: SeifertInvariants) -> int:
    # b * prod(alpha) + sum_i beta_i * prod_{j != i} alpha_j
    total = inv.euler_b * math.prod(inv.alphas)
    for i, f in enumerate(inv.fibers):
        total += f.beta * math.prod(a for j, a in enumerate(inv.alphas) if j != i)
    return total


def first_homology_order(inv: SeifertInvariants) -> int | float:
    """Order of H_1(M); ``INFINITE`` when the base has positive genus or the
    determinant vanishes."""
    if inv.genus > 0:
        return INFINITE
    det = abs(_homology_determinant(inv))
    return det if det else INFINITE


def classify_manifold(inv: SeifertInvariants) -> ManifoldClass:
    """Coarse dispatch into Product / CircleBundle / LensSpace / General.

    Regular (alpha = 1) fibers are folded into b first.  The lens parameter q
    is only derived with a single exceptional fiber: q = alpha_1 mod p.  With
    two exceptional fibers LensParameterUnknown is raised and callers must
    supply (p, q) themselves.
    """
    inv = normalize(inv)
    if inv.l == 0:
        if inv.euler_b == 0:
            return ManifoldClass(ManifoldKind.PRODUCT)
        return ManifoldClass(ManifoldKind.CIRCLE_BUNDLE)
    if inv.genus == 0 and inv.l <= 2:
        p = first_homology_order(inv)
        if p == INFINITE:
            return ManifoldClass(ManifoldKind.GENERAL)
        if inv.l == 2:
            raise LensParameterUnknown(
                f"{inv} is a lens space with |H_1| = {p}, but q is not derived for "
                "two exceptional fibers; supply (p, q) explicitly")
        return ManifoldClass(ManifoldKind.LENS_SPACE, p, normalize_lens_q(p, inv.fibers[0].alpha))
    return ManifoldClass(ManifoldKind.GENERAL)


def normalize_lens_q(p: int, q: int) -> int:
    """Reduce q into 0 < q < p (q = 0 only for p = 1, the 3-sphere)."""
    if p < 1:
        raise ValueError(f"lens parameter p must be positive, got {p}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"lens parameters must be coprime, got p={p}, q={q}")
    return q % p


def lens_space(p: int, q: int) -> SeifertInvariants:
    """Invariants <0, 0, (q, p)> realising L(p, q) under the q = alpha convention."""
    q = normalize_lens_q(p, q)
    return validate(SeifertInvariants(0, 0, (ExceptionalFiber(q if q else 1, p),)))
