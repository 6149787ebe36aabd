"""Finite categories, functors and natural transformations as explicit tables.

Composition is written in diagrammatic order: ``compose(f, g)`` is "f then g"
and is defined exactly when ``cod(f) == dom(g)``.  Objects and morphisms are
plain integer indices; names are reporting metadata only.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

NONE = -1  # sentinel for non-composable pairs in the composition table


class StructuralError(ValueError):
    """Malformed data (bad sizes, dangling ids, mistyped components)."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass
class ValidationReport:
    """Law violations and structural errors, each a ``(tag, witness)`` pair.

    ``counts`` records how many instances of each law were checked.
    """

    violations: list = field(default_factory=list)
    structural: list = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.structural

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, tag: str, *witness) -> None:
        self.violations.append((tag, tuple(witness)))

    def error(self, tag: str, *witness) -> None:
        self.structural.append((tag, tuple(witness)))

    def tick(self, tag: str, n: int = 1) -> None:
        self.counts[tag] += n

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        self.violations.extend(other.violations)
        self.structural.extend(other.structural)
        self.counts.update(other.counts)
        return self

    def copy(self) -> "ValidationReport":
        return ValidationReport(list(self.violations), list(self.structural), Counter(self.counts))

    def tags(self) -> set[str]:
        return {t for t, _ in self.violations} | {t for t, _ in self.structural}

    def lines(self) -> list[str]:
        out = [f"STRUCTURAL {tag} {' '.join(map(str, w))}".rstrip() for tag, w in self.structural]
        out += [f"VIOLATION {tag} {' '.join(map(str, w))}".rstrip() for tag, w in self.violations]
        return out


@dataclass(frozen=True)
class FinCategory:
    n_objects: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    identity: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def build(cls, n_objects, arrows, identity, compose, names=None) -> "FinCategory":
        """Tabulate a category from ``arrows = [(dom, cod), ...]`` and a compose callable."""
        dom = tuple(a for a, _ in arrows)
        cod = tuple(b for _, b in arrows)
        m = len(arrows)
        table = tuple(
            tuple(compose(f, g) if cod[f] == dom[g] else NONE for g in range(m))
            for f in range(m)
        )
        return cls(n_objects, dom, cod, tuple(identity), table,
                   tuple(names) if names is not None else None)

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    def objects(self) -> range:
        return range(self.n_objects)

    def morphisms(self) -> range:
        return range(len(self.dom))

    def composable(self, f: int, g: int) -> bool:
        return self.cod[f] == self.dom[g]

    def compose(self, f: int, g: int) -> int:
        h = self.table[f][g]
        if h == NONE or self.cod[f] != self.dom[g]:
            raise ValueError(f"morphisms {f} and {g} are not composable")
        return h

    def chain(self, *fs: int) -> int:
        h = fs[0]
        for g in fs[1:]:
            h = self.compose(h, g)
        return h

    def hom(self, x: int, y: int) -> list[int]:
        return [f for f in self.morphisms() if self.dom[f] == x and self.cod[f] == y]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(
            NONE if (g := is_isomorphism(self, f)) is None else g for f in self.morphisms()
        )

    def inverse(self, f: int) -> int:
        g = self.inverses[f]
        if g == NONE:
            raise ValueError(f"morphism {f} is not invertible")
        return g

    @cached_property
    def np_table(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.n_morphisms, self.n_morphisms)

    def name(self, f: int) -> str:
        return self.names[f] if self.names else str(f)


@dataclass(frozen=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    ob_map: tuple[int, ...]
    mor_map: tuple[int, ...]


@dataclass(frozen=True)
class NatTransform:
    source: FinFunctor
    target: FinFunctor
    components: tuple[int, ...]


def _category_structure(C: FinCategory, report: ValidationReport) -> None:
    n, m = C.n_objects, C.n_morphisms
    if len(C.cod) != m or len(C.identity) != n or len(C.table) != m:
        report.error("SIZE", "category tables have inconsistent sizes")
        return
    for f in range(m):
        if not (0 <= C.dom[f] < n and 0 <= C.cod[f] < n):
            report.error("DANGLING", "morphism", f)
        if len(C.table[f]) != m:
            report.error("SIZE", "compose row", f)
    for x in range(n):
        if not 0 <= C.identity[x] < m:
            report.error("DANGLING", "identity", x)
    if report.structural:
        return
    for f, g in itertools.product(range(m), repeat=2):
        h = C.table[f][g]
        if C.cod[f] != C.dom[g]:
            if h != NONE:
                report.error("COMPOSE_DOMAIN", f, g)
        elif not 0 <= h < m:
            report.error("DANGLING", "compose", f, g)
    for x in range(n):
        i = C.identity[x]
        if C.dom[i] != x or C.cod[i] != x:
            report.error("IDENTITY_TYPING", x)


def validate_category(C: FinCategory) -> ValidationReport:
    report = ValidationReport()
    _category_structure(C, report)
    if report.structural:
        return report
    m = C.n_morphisms
    t, dom, cod = C.table, C.dom, C.cod
    for f, g in itertools.product(range(m), repeat=2):
        if cod[f] == dom[g]:
            h = t[f][g]
            report.tick("COMPOSE_TYPING")
            if dom[h] != dom[f] or cod[h] != cod[g]:
                report.fail("COMPOSE_TYPING", f, g)
    if report.violations:
        return report
    for f in range(m):
        report.tick("CAT_UNIT")
        if t[C.identity[dom[f]]][f] != f:
            report.fail("CAT_UNIT_LEFT", f)
        if t[f][C.identity[cod[f]]] != f:
            report.fail("CAT_UNIT_RIGHT", f)
    for f, g in itertools.product(range(m), repeat=2):
        if cod[f] != dom[g]:
            continue
        fg = t[f][g]
        for h in range(m):
            if cod[g] == dom[h]:
                report.tick("CAT_ASSOC")
                if t[fg][h] != t[f][t[g][h]]:
                    report.fail("CAT_ASSOC", f, g, h)
    return report


@lru_cache(maxsize=64)
def product_category(C: FinCategory, D: FinCategory) -> FinCategory:
    """Objects ``(c, d)`` have index ``c*|Ob D| + d``; morphisms ``(f, g)`` index ``f*|Mor D| + g``."""
    nD, mC, mD = D.n_objects, C.n_morphisms, D.n_morphisms
    dom = tuple(C.dom[f] * nD + D.dom[g] for f in range(mC) for g in range(mD))
    cod = tuple(C.cod[f] * nD + D.cod[g] for f in range(mC) for g in range(mD))
    identity = tuple(C.identity[x] * mD + D.identity[y] for x in C.objects() for y in D.objects())
    A = np.repeat(np.repeat(C.np_table, mD, axis=0), mD, axis=1)
    B = np.tile(D.np_table, (mC, mC))
    table = np.where((A >= 0) & (B >= 0), A * mD + B, NONE)
    return FinCategory(C.n_objects * nD, dom, cod, identity, tuple(map(tuple, table.tolist())))


def opposite(C: FinCategory) -> FinCategory:
    m = C.n_morphisms
    table = tuple(tuple(C.table[g][f] for g in range(m)) for f in range(m))
    return FinCategory(C.n_objects, C.cod, C.dom, C.identity, table, C.names)


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, tuple(C.objects()), tuple(C.morphisms()))


def compose_functors(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    """``F`` then ``G``."""
    return FinFunctor(
        F.source,
        G.target,
        tuple(G.ob_map[y] for y in F.ob_map),
        tuple(G.mor_map[g] for g in F.mor_map),
    )


def validate_functor(F: FinFunctor) -> ValidationReport:
    report = ValidationReport()
    C, D = F.source, F.target
    if len(F.ob_map) != C.n_objects or len(F.mor_map) != C.n_morphisms:
        report.error("SIZE", "functor map tables have the wrong size")
        return report
    if any(not 0 <= y < D.n_objects for y in F.ob_map) or any(
        not 0 <= g < D.n_morphisms for g in F.mor_map
    ):
        report.error("DANGLING", "functor maps outside the target")
        return report
    ob, mor = F.ob_map, F.mor_map
    for f in C.morphisms():
        if D.dom[mor[f]] != ob[C.dom[f]] or D.cod[mor[f]] != ob[C.cod[f]]:
            report.error("FUNCTOR_DOMCOD", f)
    if report.structural:
        return report
    for x in C.objects():
        report.tick("FUNCTOR_ID")
        if mor[C.identity[x]] != D.identity[ob[x]]:
            report.fail("FUNCTOR_ID", x)
    # composition, vectorised: the product categories built for tensor
    # functors have hundreds of thousands of composable pairs
    Ct = C.np_table
    fs, gs = np.nonzero(Ct >= 0)
    mor_arr = np.asarray(mor, dtype=np.int64)
    lhs = mor_arr[Ct[fs, gs]]
    rhs = D.np_table[mor_arr[fs], mor_arr[gs]]
    report.tick("FUNCTOR_COMP", len(fs))
    for k in np.nonzero(lhs != rhs)[0]:
        report.fail("FUNCTOR_COMP", int(fs[k]), int(gs[k]))
    return report


def validate_nat(t: NatTransform) -> ValidationReport:
    report = ValidationReport()
    F, G = t.source, t.target
    if F.source is not G.source and F.source != G.source or (
        F.target is not G.target and F.target != G.target
    ):
        report.error("NOT_PARALLEL", "functors have different boundary categories")
        return report
    C, D = F.source, F.target
    if len(t.components) != C.n_objects:
        report.error("MISSING_COMPONENT", len(t.components), C.n_objects)
        return report
    for x in C.objects():
        c = t.components[x]
        if not 0 <= c < D.n_morphisms or D.dom[c] != F.ob_map[x] or D.cod[c] != G.ob_map[x]:
            report.error("NAT_TYPING", x)
    if report.structural:
        return report
    for f in C.morphisms():
        x, y = C.dom[f], C.cod[f]
        report.tick("NATURALITY")
        if D.table[F.mor_map[f]][t.components[y]] != D.table[t.components[x]][G.mor_map[f]]:
            report.fail("NATURALITY", f)
    return report


def is_isomorphism(C: FinCategory, f: int) -> int | None:
    x, y = C.dom[f], C.cod[f]
    ix, iy = C.identity[x], C.identity[y]
    for g in C.morphisms():
        if C.dom[g] == y and C.cod[g] == x and C.table[f][g] == ix and C.table[g][f] == iy:
            return g
    return None


# small categories used by generators and tests

def deloop_category(group) -> FinCategory:
    """One object; morphisms are group elements; composition is the group law."""
    n = group.order
    return FinCategory.build(1, [(0, 0)] * n, [group.identity], group.mul)


def discrete_category(n: int) -> FinCategory:
    return FinCategory.build(n, [(x, x) for x in range(n)], list(range(n)), lambda f, g: f)


def terminal_category() -> FinCategory:
    return discrete_category(1)


def free_arrow_category() -> FinCategory:
    """Objects 0, 1; morphisms id0, id1 and a single arrow 0 -> 1 (index 2)."""
    arrows = [(0, 0), (1, 1), (0, 1)]

    def compose(f, g):
        return g if f in (0, 1) else f

    return FinCategory.build(2, arrows, [0, 1], compose)
