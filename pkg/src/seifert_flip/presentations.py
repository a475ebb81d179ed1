"""
Presentations of the fundamental group of a Seifert fibered space.

Words are tuples of syllables ``(generator, exponent)``.  Nothing here
solves the word problem: the only group-theoretic computation is the
abelianization, via the Smith normal form of the exponent-sum matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import WrongFiberCount
from .seifert import INFINITE, SeifertInvariants

_KIND_ORDER = {"x": 0, "a": 1, "b": 2, "h": 3}


@dataclass(frozen=True, order=True)
class Generator:
    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "h" and self.index != 0:
            raise ValueError("h carries no index")
        if self.kind != "h" and self.index < 1:
            raise ValueError(f"{self.kind} generators are 1-based, got index {self.index}")

    @property
    def name(self) -> str:
        return "h" if self.kind == "h" else f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, name: str) -> "Generator":
        if name == "h":
            return H
        kind, digits = name[:1], name[1:]
        if kind not in ("x", "a", "b") or not digits.isdigit():
            raise ValueError(f"cannot parse generator name {name!r}")
        return cls(kind, int(digits))

    def __str__(self):
        return self.name


def X(i):
    return Generator("x", i)


def A(i):
    return Generator("a", i)


def B(i):
    return Generator("b", i)


H = Generator("h")


def free_reduce(syllables) -> tuple:
    """Merge adjacent powers of the same generator and drop zero exponents."""
    out = []
    for g, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e == 0:
                continue
        out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    syllables: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", free_reduce(self.syllables))

    @classmethod
    def of(cls, *syllables) -> "Word":
        """``Word.of(x, (h, 2))`` -- bare generators get exponent 1."""
        return cls(tuple(s if isinstance(s, tuple) else (s, 1) for s in syllables))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** -n
        return Word(self.syllables * n)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def generators(self) -> set:
        return {g for g, _ in self.syllables}

    def exponent_sum(self, g: Generator) -> int:
        return sum(e for s, e in self.syllables if s == g)

    def to_json(self) -> list:
        return [[g.name, e] for g, e in self.syllables]

    @classmethod
    def from_json(cls, obj) -> "Word":
        return cls(tuple((Generator.parse(name), int(e)) for name, e in obj))

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(g.name if e == 1 else f"{g.name}^{e}" for g, e in self.syllables)


IDENTITY = Word()


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def gen(g: Generator, e: int = 1) -> Word:
    return Word(((g, e),))


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relators:
            stray = r.generators() - known
            if stray:
                raise ValueError(f"relator {r} uses generators outside the presentation: "
                                 f"{sorted(g.name for g in stray)}")

    def to_json(self) -> dict:
        return {"generators": [g.name for g in self.generators],
                "relators": [r.to_json() for r in self.relators]}

    @classmethod
    def from_json(cls, obj: dict) -> "FinitePresentation":
        return cls(tuple(Generator.parse(n) for n in obj["generators"]),
                   tuple(Word.from_json(r) for r in obj["relators"]))

    def __str__(self):
        gens = ", ".join(g.name for g in self.generators)
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def _surface_part(genus: int) -> Word:
    w = IDENTITY
    for i in range(1, genus + 1):
        w = w * commutator(gen(A(i)), gen(B(i)))
    return w


def _fiber_product(l: int) -> Word:
    return Word(tuple((X(i), 1) for i in range(1, l + 1)))


def _base_generators(inv: SeifertInvariants) -> tuple:
    xs = tuple(X(i) for i in range(1, inv.l + 1))
    ab = tuple(g for i in range(1, inv.genus + 1) for g in (A(i), B(i)))
    return xs + ab


def _drop_trivial(words) -> tuple:
    return tuple(w for w in words if w)


def fundamental_group(inv: SeifertInvariants) -> FinitePresentation:
    """The standard presentation of pi_1(M).

    Relators, in order: h^-b prod[a_i, b_i] prod x_i; [a_i, h], [b_i, h] for
    each i; [x_i, h] for each fiber; x_i^alpha_i h^beta_i for each fiber.
    An empty first relator (g = l = b = 0) is dropped.
    """
    h = gen(H)
    rels = [gen(H, -inv.euler_b) * _surface_part(inv.genus) * _fiber_product(inv.l)]
    for i in range(1, inv.genus + 1):
        rels.append(commutator(gen(A(i)), h))
        rels.append(commutator(gen(B(i)), h))
    rels += [commutator(gen(X(i)), h) for i in range(1, inv.l + 1)]
    rels += [gen(X(i), f.alpha) * gen(H, f.beta) for i, f in enumerate(inv.fibers, start=1)]
    return FinitePresentation(_base_generators(inv) + (H,), _drop_trivial(rels))


def quotient_by_h(inv: SeifertInvariants) -> FinitePresentation:
    """pi_1(M) / <h>: the orbifold group of the base."""
    rels = [_surface_part(inv.genus) * _fiber_product(inv.l)]
    rels += [gen(X(i), f.alpha) for i, f in enumerate(inv.fibers, start=1)]
    return FinitePresentation(_base_generators(inv), _drop_trivial(rels))


def quotient_by_horizontal(inv: SeifertInvariants) -> int | float:
    """Order of pi_1(M) / <a_1, b_1, ..., a_g, b_g> for a single exceptional
    fiber; the quotient is cyclic of order |b alpha_1 + beta_1|."""
    if inv.l != 1:
        raise WrongFiberCount(f"the horizontal quotient needs exactly one fiber, got {inv.l}")
    f = inv.fibers[0]
    order = abs(inv.euler_b * f.alpha + f.beta)
    return order if order else INFINITE


def relation_matrix(pres: FinitePresentation) -> list[list[int]]:
    return [[r.exponent_sum(g) for g in pres.generators] for r in pres.relators]


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns min(rows, cols) non-negative entries d_1 | d_2 | ..., padded with
    zeros.  Pure Python integers, so no overflow.
    """
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return diag + [0] * (min(rows, cols) - t)
            i, j = pivot
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                dirty |= m[i][t] != 0
            for j in range(t + 1, cols):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                dirty |= m[t][j] != 0
            if dirty:
                continue
            # divisibility: fold an offending row into row t and retry
            bad = next((i for i in range(t + 1, rows)
                        if any(m[i][j] % p for j in range(t + 1, cols))), None)
            if bad is None:
                diag.append(abs(p))
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad])]
    return diag


def abelianization(pres: FinitePresentation) -> list[int]:
    """Invariant factors of the abelianization, 0 standing for a Z factor.

    Trivial factors (1) are omitted, so the trivial group gives [].
    """
    n = len(pres.generators)
    diag = smith_diagonal(relation_matrix(pres)) if pres.relators else []
    diag = diag + [0] * (n - len(diag))
    factors = [d for d in diag if d != 1]
    # torsion first, then free part
    return sorted(d for d in factors if d) + [d for d in factors if not d]


def abelian_order(factors: list[int]) -> int | float:
    if any(d == 0 for d in factors):
        return INFINITE
    return math.prod(factors)
