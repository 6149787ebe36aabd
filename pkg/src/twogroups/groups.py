"""Finite groups given by multiplication tables.

Elements are the integers ``0..n-1``.  These are only used as raw material
for the 2-group generators, so the API stays small.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    @classmethod
    def from_table(cls, table, name: str = "G") -> "FiniteGroup":
        table = tuple(tuple(int(v) for v in row) for row in table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise ValueError(f"{name}: multiplication table must be square and nonempty")
        if any(not 0 <= v < n for row in table for v in row):
            raise ValueError(f"{name}: table entry out of range")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise ValueError(f"{name}: not associative at {(a, b, c)}")
        units = [e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n))]
        if not units:
            raise ValueError(f"{name}: no identity element")
        e = units[0]
        inverses = []
        for a in range(n):
            inv = [b for b in range(n) if table[a][b] == e == table[b][a]]
            if not inv:
                raise ValueError(f"{name}: element {a} has no inverse")
            inverses.append(inv[0])
        return cls(name, table, e, tuple(inverses))

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def is_homomorphism(self, target: "FiniteGroup", f) -> bool:
        return all(
            f[self.mul(a, b)] == target.mul(f[a], f[b])
            for a in self.elements()
            for b in self.elements()
        )


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}")


def trivial() -> FiniteGroup:
    return cyclic(1)


def symmetric(k: int) -> FiniteGroup:
    """S_k with elements in lexicographic order of permutations; 0 is the identity.

    Product is ``(p*q)(i) = p(q(i))``.
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return FiniteGroup.from_table(table, f"S{k}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    n = g.order * m
    table = [
        [g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(n)]
        for a in range(n)
    ]
    return FiniteGroup.from_table(table, f"{g.name}x{h.name}")


def parse_group(name: str) -> FiniteGroup:
    """Parse ``Z<n>``, ``S<k>``, ``trivial`` or products like ``Z2xZ2``."""
    name = name.strip()
    if "x" in name:
        parts = name.split("x")
        group = parse_group(parts[0])
        for part in parts[1:]:
            group = direct_product(group, parse_group(part))
        return group
    if name in ("trivial", "1"):
        return trivial()
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"S(\d+)", name)
    if m and 1 <= int(m.group(1)) <= 5:
        return symmetric(int(m.group(1)))
    raise ValueError(f"unknown group {name!r}")
