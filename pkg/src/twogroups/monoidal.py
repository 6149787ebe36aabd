"""Weak monoidal structure on a finite category and its coherence checks.

Structure components are dense tables: ``assoc`` is flat with index
``(x*n + y)*n + z``, ``lunit``/``runit`` are indexed by object.  Every
composite below is written in diagrammatic order (first map first).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import cached_property

from .fincat import (
    FinCategory,
    FinFunctor,
    StructuralError,
    ValidationReport,
    product_category,
    validate_category,
    validate_functor,
)


@dataclass(frozen=True)
class MonoidalStructure:
    base: FinCategory
    tensor: FinFunctor
    unit: int
    assoc: tuple[int, ...]
    lunit: tuple[int, ...]
    runit: tuple[int, ...]

    @classmethod
    def from_tables(cls, base, tensor_ob, tensor_mor, unit, assoc, lunit, runit):
        """Build from nested ``tensor_ob[x][y]``, ``tensor_mor[f][g]`` and
        ``assoc[x][y][z]`` tables (flat sequences are accepted too)."""
        def flat(t):
            t = list(t)
            while t and isinstance(t[0], (list, tuple)):
                t = [v for row in t for v in row]
            return tuple(int(v) for v in t)

        tensor = FinFunctor(product_category(base, base), base, flat(tensor_ob), flat(tensor_mor))
        return cls(base, tensor, int(unit), flat(assoc), flat(lunit), flat(runit))

    def replace(self, **changes) -> "MonoidalStructure":
        """Copy with some tables swapped; ``tensor_ob``/``tensor_mor`` accept flat tables."""
        tensor = self.tensor
        if "base" in changes:
            base = changes["base"]
            tensor = replace(tensor, source=product_category(base, base), target=base)
        if "tensor_ob" in changes:
            tensor = replace(tensor, ob_map=tuple(changes.pop("tensor_ob")))
        if "tensor_mor" in changes:
            tensor = replace(tensor, mor_map=tuple(changes.pop("tensor_mor")))
        return replace(self, tensor=tensor, **changes)

    # table lookups

    @property
    def n(self) -> int:
        return self.base.n_objects

    def ob(self, x: int, y: int) -> int:
        return self.tensor.ob_map[x * self.base.n_objects + y]

    def mor(self, f: int, g: int) -> int:
        return self.tensor.mor_map[f * self.base.n_morphisms + g]

    def a(self, x: int, y: int, z: int) -> int:
        n = self.base.n_objects
        return self.assoc[(x * n + y) * n + z]

    def l(self, x: int) -> int:  # noqa: E743
        return self.lunit[x]

    def r(self, x: int) -> int:
        return self.runit[x]

    def id(self, x: int) -> int:
        return self.base.identity[x]

    def inv(self, f: int) -> int:
        return self.base.inverse(f)

    def comp(self, *fs: int) -> int:
        return self.base.chain(*fs)

    def dom(self, f: int) -> int:
        return self.base.dom[f]

    def cod(self, f: int) -> int:
        return self.base.cod[f]

    def left(self, f: int, x: int) -> int:
        """``f ⊗ 1_x``"""
        return self.mor(f, self.id(x))

    def right(self, x: int, f: int) -> int:
        """``1_x ⊗ f``"""
        return self.mor(self.id(x), f)

    @cached_property
    def memo(self) -> dict:
        """Scratch cache for derived morphisms (the tables themselves are immutable)."""
        return {}

    @cached_property
    def all_invertible(self) -> bool:
        return all(g >= 0 for g in self.base.inverses)


def tensor_ob(M: MonoidalStructure, x: int, y: int) -> int:
    return M.ob(x, y)


def tensor_mor(M: MonoidalStructure, f: int, g: int) -> int:
    return M.mor(f, g)


def _structure_checks(M: MonoidalStructure, report: ValidationReport) -> None:
    C = M.base
    n, m = C.n_objects, C.n_morphisms
    report.merge(validate_category(C))
    if report.structural or report.violations:
        return
    if not 0 <= M.unit < n:
        report.error("DANGLING", "unit", M.unit)
    if len(M.assoc) != n ** 3 or len(M.lunit) != n or len(M.runit) != n:
        report.error("SIZE", "structure tables have the wrong size")
    if len(M.tensor.ob_map) != n * n or len(M.tensor.mor_map) != m * m:
        report.error("SIZE", "tensor tables have the wrong size")
    if M.tensor.source != product_category(C, C) or M.tensor.target != C:
        report.error("TENSOR_BOUNDARY", "tensor does not run from base × base to base")
    if report.structural:
        return
    tens = validate_functor(M.tensor)
    for tag, w in tens.structural:
        report.error("TENSOR_" + tag, *w)
    if report.structural:
        return
    for tag, w in tens.violations:
        report.fail("TENSOR_" + tag, *w)
    report.counts.update({"TENSOR_" + k: v for k, v in tens.counts.items()})
    comps = list(M.assoc) + list(M.lunit) + list(M.runit)
    if any(not 0 <= f < m for f in comps):
        report.error("DANGLING", "structure component out of range")
        return
    for x, y, z in itertools.product(range(n), repeat=3):
        f = M.a(x, y, z)
        if C.dom[f] != M.ob(M.ob(x, y), z) or C.cod[f] != M.ob(x, M.ob(y, z)):
            report.error("ASSOC_TYPING", x, y, z)
    for x in range(n):
        if C.dom[M.l(x)] != M.ob(M.unit, x) or C.cod[M.l(x)] != x:
            report.error("LUNIT_TYPING", x)
        if C.dom[M.r(x)] != M.ob(x, M.unit) or C.cod[M.r(x)] != x:
            report.error("RUNIT_TYPING", x)


def check_pentagon(M: MonoidalStructure) -> ValidationReport:
    report = ValidationReport()
    n = M.n
    for x, y, z, w in itertools.product(range(n), repeat=4):
        report.tick("PENTAGON")
        lhs = M.comp(
            M.left(M.a(x, y, z), w),
            M.a(x, M.ob(y, z), w),
            M.right(x, M.a(y, z, w)),
        )
        rhs = M.comp(M.a(M.ob(x, y), z, w), M.a(x, y, M.ob(z, w)))
        if lhs != rhs:
            report.fail("PENTAGON", x, y, z, w)
    return report


def check_triangle(M: MonoidalStructure) -> ValidationReport:
    report = ValidationReport()
    n = M.n
    for x, y in itertools.product(range(n), repeat=2):
        report.tick("TRIANGLE")
        lhs = M.comp(M.a(x, M.unit, y), M.right(x, M.l(y)))
        if lhs != M.mor(M.r(x), M.id(y)):
            report.fail("TRIANGLE", x, y)
    return report


def _check_naturality(M: MonoidalStructure, report: ValidationReport) -> None:
    C = M.base
    ms = C.morphisms()
    for f, g, h in itertools.product(ms, repeat=3):
        report.tick("ASSOC_NATURAL")
        x, y, z = C.dom[f], C.dom[g], C.dom[h]
        x2, y2, z2 = C.cod[f], C.cod[g], C.cod[h]
        lhs = M.comp(M.mor(M.mor(f, g), h), M.a(x2, y2, z2))
        rhs = M.comp(M.a(x, y, z), M.mor(f, M.mor(g, h)))
        if lhs != rhs:
            report.fail("ASSOC_NATURAL", f, g, h)
    one = M.id(M.unit)
    for f in ms:
        report.tick("UNIT_NATURAL")
        x, y = C.dom[f], C.cod[f]
        if M.comp(M.mor(one, f), M.l(y)) != M.comp(M.l(x), f):
            report.fail("LUNIT_NATURAL", f)
        if M.comp(M.mor(f, one), M.r(y)) != M.comp(M.r(x), f):
            report.fail("RUNIT_NATURAL", f)


def validate_monoidal(M: MonoidalStructure) -> ValidationReport:
    """Category laws, tensor functoriality (which is the interchange law),
    component typing and invertibility, naturality, pentagon and triangle.

    The result is cached on ``M`` (which is immutable); callers get a copy.
    """
    if "validate" not in M.memo:
        M.memo["validate"] = _validate_monoidal(M)
    return M.memo["validate"].copy()


def _validate_monoidal(M: MonoidalStructure) -> ValidationReport:
    report = ValidationReport()
    _structure_checks(M, report)
    if report.structural:
        return report
    if report.violations:
        # laws below compose through the tensor table; skip them once it is broken
        return report
    inv = M.base.inverses
    n = M.n
    for x, y, z in itertools.product(range(n), repeat=3):
        if inv[M.a(x, y, z)] < 0:
            report.fail("ASSOC_ISO", x, y, z)
    for x in range(n):
        if inv[M.l(x)] < 0:
            report.fail("LUNIT_ISO", x)
        if inv[M.r(x)] < 0:
            report.fail("RUNIT_ISO", x)
    _check_naturality(M, report)
    report.merge(check_pentagon(M))
    report.merge(check_triangle(M))
    return report


def is_strict(M: MonoidalStructure) -> bool:
    ids = set(M.base.identity)
    return all(f in ids for f in itertools.chain(M.assoc, M.lunit, M.runit))


# Bracketed words.  A tree is an object index (leaf), ``None`` for a formal
# unit, or a pair ``(left, right)``.

def tree_object(M: MonoidalStructure, t) -> int:
    if t is None:
        return M.unit
    if isinstance(t, tuple):
        return M.ob(tree_object(M, t[0]), tree_object(M, t[1]))
    return t


def left_normal(M: MonoidalStructure, word) -> int:
    """Object ``((w0 ⊗ w1) ⊗ w2) ...``; the empty word is the unit."""
    if not word:
        return M.unit
    x = word[0]
    for y in word[1:]:
        x = M.ob(x, y)
    return x


def leaves(t) -> list:
    if t is None:
        return []
    if isinstance(t, tuple):
        return leaves(t[0]) + leaves(t[1])
    return [t]


def _merge(M: MonoidalStructure, A: list, B: list) -> int:
    """``LN(A) ⊗ LN(B) -> LN(A + B)``."""
    if not B:
        return M.r(left_normal(M, A))
    if not A:
        return M.l(left_normal(M, B))
    if len(B) == 1:
        return M.id(M.ob(left_normal(M, A), B[0]))
    rest, b = B[:-1], B[-1]
    step = M.inv(M.a(left_normal(M, A), left_normal(M, rest), b))
    return M.comp(step, M.left(_merge(M, A, rest), b))


def to_left_normal(M: MonoidalStructure, t) -> tuple[int, list]:
    """Structural isomorphism from the object of ``t`` to its left-normal,
    unit-free form, together with the unit-free leaf word."""
    key = ("left_normal", t)
    hit = M.memo.get(key)
    if hit is None:
        hit = M.memo[key] = _to_left_normal(M, t)
    return hit[0], list(hit[1])


def _to_left_normal(M: MonoidalStructure, t) -> tuple[int, list]:
    if t is None:
        return M.id(M.unit), []
    if not isinstance(t, tuple):
        return M.id(t), [t]
    fa, wa = to_left_normal(M, t[0])
    fb, wb = to_left_normal(M, t[1])
    return M.comp(M.mor(fa, fb), _merge(M, wa, wb)), wa + wb


def _moves(M: MonoidalStructure, t):
    """Single applications of a, ℓ, r anywhere inside ``t``."""
    if not isinstance(t, tuple):
        return
    A, B = t
    if isinstance(A, tuple):
        yield (A[0], (A[1], B)), M.a(tree_object(M, A[0]), tree_object(M, A[1]), tree_object(M, B))
    if A is None:
        yield B, M.l(tree_object(M, B))
    if B is None:
        yield A, M.r(tree_object(M, A))
    idB, idA = M.id(tree_object(M, B)), M.id(tree_object(M, A))
    for A2, f in _moves(M, A):
        yield (A2, B), M.mor(f, idB)
    for B2, f in _moves(M, B):
        yield (A, B2), M.mor(idA, f)


def _trees(items):
    if len(items) == 1:
        yield items[0]
        return
    for k in range(1, len(items)):
        for left in _trees(items[:k]):
            for right in _trees(items[k:]):
                yield (left, right)


def coherence_spot_check(M: MonoidalStructure, max_len: int = 4) -> ValidationReport:
    """Check that all structural diagrams over short words commute.

    For each unit-free word, the graph of bracketings (with formal units
    inserted, total length ≤ ``max_len``) joined by single a/ℓ/r moves is
    explored from one root; each edge must agree with the spanning-tree
    potential, which is equivalent to every closed structural diagram
    commuting.
    """
    report = ValidationReport()
    n = M.n
    for k in range(0, max_len + 1):
        for word in itertools.product(range(n), repeat=k):
            seqs = set()
            for extra in range(0, max_len - k + 1):
                if k + extra == 0:
                    continue
                for pos in itertools.combinations_with_replacement(range(k + 1), extra):
                    seq = list(word)
                    for p in sorted(pos, reverse=True):
                        seq.insert(p, None)
                    seqs.add(tuple(seq))
            nodes = [t for s in seqs for t in _trees(list(s))]
            edges = [(t, t2, f) for t in nodes for t2, f in _moves(M, t)]
            adj: dict = {t: [] for t in nodes}
            for t, t2, f in edges:
                adj[t].append((t2, f))
                adj[t2].append((t, M.inv(f)))
            potential: dict = {}
            for root in nodes:
                if root in potential:
                    continue
                potential[root] = M.id(tree_object(M, root))
                stack = [root]
                while stack:
                    t = stack.pop()
                    for t2, f in adj[t]:
                        if t2 not in potential:
                            potential[t2] = M.comp(potential[t], f)
                            stack.append(t2)
            for t, t2, f in edges:
                report.tick("COHERENCE")
                if M.comp(potential[t], f) != potential[t2]:
                    report.fail("COHERENCE", word, t, t2)
    return report


def require_valid(M: MonoidalStructure) -> None:
    report = validate_monoidal(M)
    if report.structural:
        raise StructuralError("malformed monoidal structure: " + "; ".join(report.lines()[:3]), report)
