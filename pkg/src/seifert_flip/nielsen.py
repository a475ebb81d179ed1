"""
Nielsen moves on tuples of elements of a finite group.

Groups are given by multiplication tables with element 0 the identity.
Nielsen equivalence in a finite group is decided exactly by a breadth-first
search of the orbit, which is finite; the search stops with SearchExhausted
once more than ``node_cap`` tuples have been visited.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .errors import (InvalidGroupTable, LengthMismatch, NotGenerating, SearchExhausted,
                     UnassignedGenerator)

DEFAULT_NODE_CAP = 10**7
_EXHAUSTIVE_ASSOCIATIVITY = 64


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = ""
    elements: tuple | None = None  # concrete labels, e.g. permutations

    def __repr__(self):
        return f"FiniteGroupTable({self.name or 'order ' + str(self.order)})"

    def power(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv[x], -e
        e %= self.order  # element orders divide |G|
        result = 0
        for _ in range(e):
            result = self.mul[result][x]
        return result

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(a + 1, n))


def group_from_table(mul, name: str = "", check_associativity: bool = True,
                     elements=None) -> FiniteGroupTable:
    """Build a table, deriving inverses and checking the group axioms.

    Associativity is checked exhaustively up to order 64 and on a fixed
    random sample of triples above that.
    """
    n = len(mul)
    if n < 1:
        raise InvalidGroupTable("a group needs at least one element")
    rows = tuple(tuple(int(x) for x in row) for row in mul)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidGroupTable(f"row {i} has length {len(row)}, expected {n}")
        if any(not 0 <= x < n for x in row):
            raise InvalidGroupTable(f"row {i} has entries outside 0..{n - 1}")
        if sorted(row) != list(range(n)):
            raise InvalidGroupTable(f"row {i} is not a permutation of the elements")
    for x in range(n):
        if rows[0][x] != x or rows[x][0] != x:
            raise InvalidGroupTable(f"element 0 is not the identity (fails at {x})")
    inv = []
    for x in range(n):
        candidates = [y for y in range(n) if rows[x][y] == 0]
        if len(candidates) != 1 or rows[candidates[0]][x] != 0:
            raise InvalidGroupTable(f"element {x} has no two-sided inverse")
        inv.append(candidates[0])
    if check_associativity:
        if n <= _EXHAUSTIVE_ASSOCIATIVITY:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            rng = random.Random(n)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(20000))
        for a, b, c in triples:
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise InvalidGroupTable(f"associativity fails for ({a}, {b}, {c})")
    return FiniteGroupTable(n, rows, tuple(inv), name, elements)


def group_from_json(obj: dict) -> FiniteGroupTable:
    mul = obj["mul"]
    if int(obj["order"]) != len(mul):
        raise InvalidGroupTable(f"order {obj['order']} does not match table size {len(mul)}")
    return group_from_table(mul, obj.get("name", ""))


def group_to_json(G: FiniteGroupTable) -> dict:
    return {"order": G.order, "mul": [list(row) for row in G.mul]}


def cyclic_group(m: int) -> FiniteGroupTable:
    if m < 1:
        raise ValueError(f"cyclic group order must be positive, got {m}")
    mul = tuple(tuple((a + b) % m for b in range(m)) for a in range(m))
    inv = tuple((-a) % m for a in range(m))
    return FiniteGroupTable(m, mul, inv, f"Z_{m}")


def _compose(p, q):
    # apply q first, then p
    return tuple(p[i] for i in q)


def permutation_group(generators, name: str = "") -> FiniteGroupTable:
    """Closure of a set of permutations (tuples on range(n)) as a table.

    Element ids follow breadth-first discovery order from the identity.
    """
    generators = [tuple(g) for g in generators]
    degree = len(generators[0]) if generators else 1
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for g in generators:
            r = _compose(p, g)
            if r not in index:
                index[r] = len(elements)
                elements.append(r)
                queue.append(r)
    mul = [[index[_compose(p, q)] for q in elements] for p in elements]
    return group_from_table(mul, name, check_associativity=False, elements=tuple(elements))


def symmetric_group(n: int) -> FiniteGroupTable:
    return permutation_group(list(permutations(range(n))), f"S_{n}")


def dihedral_group(n: int) -> FiniteGroupTable:
    """Symmetries of the regular n-gon, order 2n (n >= 3)."""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return permutation_group([rotation, reflection], f"D_{n}")


def evaluate_word(G: FiniteGroupTable, assignment: dict, w) -> int:
    """Image of a word under a map from generators to element ids, read left
    to right."""
    result = 0
    for g, e in w:
        if g not in assignment:
            raise UnassignedGenerator(f"generator {g} has no image")
        result = G.mul[result][G.power(assignment[g], e)]
    return result


def nielsen_neighbors(t: tuple, G: FiniteGroupTable) -> list[tuple]:
    """Tuples one elementary move away: swaps, inversions, and x_i -> x_i x_j.

    Duplicates are removed, first occurrence kept.
    """
    t = tuple(t)
    k = len(t)
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            s = list(t)
            s[i], s[j] = s[j], s[i]
            out.append(tuple(s))
    for i in range(k):
        s = list(t)
        s[i] = G.inv[s[i]]
        out.append(tuple(s))
    for i in range(k):
        for j in range(k):
            if i != j:
                s = list(t)
                s[i] = G.mul[t[i]][t[j]]
                out.append(tuple(s))
    return list(dict.fromkeys(out))


def extended_neighbors(t: tuple, G: FiniteGroupTable) -> list[tuple]:
    """The basic moves plus x_i -> x_j x_i, x_i x_j^-1 and x_j^-1 x_i."""
    out = nielsen_neighbors(t, G)
    k = len(t)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            for value in (G.mul[t[j]][t[i]], G.mul[t[i]][G.inv[t[j]]], G.mul[G.inv[t[j]]][t[i]]):
                s = list(t)
                s[i] = value
                out.append(tuple(s))
    return list(dict.fromkeys(out))


def generates(G: FiniteGroupTable, t) -> bool:
    seen = {0}
    frontier = [0]
    gens = set(t)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == G.order


def _check_tuple(G, t, label):
    t = tuple(t)
    if not t:
        raise ValueError(f"{label} tuple is empty")
    if any(not 0 <= x < G.order for x in t):
        raise ValueError(f"{label} tuple {t} has ids outside 0..{G.order - 1}")
    return t


def nielsen_orbit(G: FiniteGroupTable, t, node_cap: int = DEFAULT_NODE_CAP,
                  moves=nielsen_neighbors, target=None) -> set:
    """Breadth-first orbit of ``t``; stops early if ``target`` is reached."""
    t = _check_tuple(G, t, "start")
    seen = {t}
    queue = deque([t])
    while queue:
        cur = queue.popleft()
        if cur == target:
            break
        for nb in moves(cur, G):
            if nb not in seen:
                seen.add(nb)
                if len(seen) > node_cap:
                    raise SearchExhausted(len(seen), node_cap)
                queue.append(nb)
    return seen


def nielsen_equivalent_finite(G: FiniteGroupTable, a, b, node_cap: int = DEFAULT_NODE_CAP,
                              moves=nielsen_neighbors) -> bool:
    a = _check_tuple(G, a, "first")
    b = _check_tuple(G, b, "second")
    if len(a) != len(b):
        raise LengthMismatch(f"tuples have lengths {len(a)} and {len(b)}")
    for label, t in (("first", a), ("second", b)):
        if not generates(G, t):
            raise NotGenerating(f"{label} tuple {t} does not generate {G!r}")
    return b in nielsen_orbit(G, a, node_cap, moves, target=b)
