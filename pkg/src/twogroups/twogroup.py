"""Weak and coherent 2-groups, zig-zag checks, the ⁻¹, * and inv functors,
and the instance generators."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .fincat import (
    FinCategory,
    FinFunctor,
    StructuralError,
    ValidationReport,
    discrete_category,
    deloop_category,
    opposite,
    validate_functor,
)
from .groups import FiniteGroup, cyclic, parse_group, trivial
from .monoidal import MonoidalStructure, validate_monoidal


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class CoherentData:
    """Per object: chosen dual, ``i_x: 1 -> x⊗x̄`` and ``e_x: x̄⊗x -> 1``."""

    dual: tuple[int, ...]
    unit_i: tuple[int, ...]
    counit_e: tuple[int, ...]

    def entry(self, x: int) -> tuple[int, int, int]:
        return self.dual[x], self.unit_i[x], self.counit_e[x]


@dataclass(frozen=True)
class WeakTwoGroup:
    M: MonoidalStructure
    witnesses: tuple  # per object: (y, gamma: x⊗y -> 1, xi: y⊗x -> 1)
    inverses: tuple[int, ...]


@dataclass(frozen=True)
class CoherentTwoGroup:
    M: MonoidalStructure
    data: CoherentData


def _isos(M: MonoidalStructure, x: int, y: int) -> list[int]:
    inv = M.base.inverses
    return [f for f in M.base.hom(x, y) if inv[f] >= 0]


def find_weak_inverse(M: MonoidalStructure, x: int):
    for y in M.base.objects():
        gammas = _isos(M, M.ob(x, y), M.unit)
        xis = _isos(M, M.ob(y, x), M.unit)
        if gammas and xis:
            return y, gammas[0], xis[0]
    return None


def check_weak_2group(M: MonoidalStructure, report: ValidationReport | None = None):
    """Certified :class:`WeakTwoGroup`, or ``None`` (reasons go to ``report``)."""
    report = report if report is not None else ValidationReport()
    inverses = M.base.inverses
    for f in M.base.morphisms():
        if inverses[f] < 0:
            report.fail("MORPHISM_NOT_INVERTIBLE", f)
    witnesses = []
    for x in M.base.objects():
        w = find_weak_inverse(M, x)
        if w is None:
            report.fail("NO_WEAK_INVERSE", x)
        witnesses.append(w)
    if report.violations:
        return None
    return WeakTwoGroup(M, tuple(witnesses), inverses)


def check_data_typing(M: MonoidalStructure, data: CoherentData, report: ValidationReport) -> None:
    n, m = M.n, M.base.n_morphisms
    if not (len(data.dual) == len(data.unit_i) == len(data.counit_e) == n):
        report.error("SIZE", "dual data tables have the wrong size")
        return
    for x in range(n):
        d, i, e = data.entry(x)
        if not (0 <= d < n and 0 <= i < m and 0 <= e < m):
            report.error("DANGLING", "dual data", x)
            continue
        if M.dom(i) != M.unit or M.cod(i) != M.ob(x, d):
            report.error("UNIT_I_TYPING", x)
        if M.dom(e) != M.ob(d, x) or M.cod(e) != M.unit:
            report.error("COUNIT_E_TYPING", x)


def zigzag1_holds(M: MonoidalStructure, data: CoherentData, x: int) -> bool:
    """``ℓ_x ; r_x⁻¹ = (i_x⊗1) ; a_{x,x̄,x} ; (1⊗e_x)`` as maps ``1⊗x -> x⊗1``."""
    d, i, e = data.entry(x)
    lhs = M.comp(M.l(x), M.inv(M.r(x)))
    rhs = M.comp(M.left(i, x), M.a(x, d, x), M.right(x, e))
    return lhs == rhs


def zigzag2_holds(M: MonoidalStructure, data: CoherentData, x: int) -> bool:
    """``r_x̄ ; ℓ_x̄⁻¹ = (1⊗i_x) ; a⁻¹_{x̄,x,x̄} ; (e_x⊗1)`` as maps ``x̄⊗1 -> 1⊗x̄``."""
    d, i, e = data.entry(x)
    lhs = M.comp(M.r(d), M.inv(M.l(d)))
    rhs = M.comp(M.right(d, i), M.inv(M.a(d, x, d)), M.left(e, d))
    return lhs == rhs


def check_zigzags(M: MonoidalStructure, data: CoherentData) -> ValidationReport:
    report = ValidationReport()
    check_data_typing(M, data, report)
    if report.structural:
        return report
    for x in M.base.objects():
        report.tick("ZIGZAG1")
        report.tick("ZIGZAG2")
        if not zigzag1_holds(M, data, x):
            report.fail("ZIGZAG1", x)
        if not zigzag2_holds(M, data, x):
            report.fail("ZIGZAG2", x)
    return report


def validate_coherent(G: CoherentTwoGroup) -> ValidationReport:
    M, data = G.M, G.data
    report = validate_monoidal(M)
    if not report.ok:
        return report
    check_data_typing(M, data, report)
    if report.structural:
        return report
    inverses = M.base.inverses
    for f in M.base.morphisms():
        if inverses[f] < 0:
            report.fail("MORPHISM_NOT_INVERTIBLE", f)
    for x in M.base.objects():
        if inverses[data.unit_i[x]] < 0:
            report.fail("UNIT_I_NOT_INVERTIBLE", x)
        if inverses[data.counit_e[x]] < 0:
            report.fail("COUNIT_E_NOT_INVERTIBLE", x)
    if report.violations:
        return report
    return report.merge(check_zigzags(M, data))


# the functors ⁻¹, * and inv

def _require_invertible(M: MonoidalStructure) -> None:
    if not M.all_invertible:
        bad = [f for f, g in enumerate(M.base.inverses) if g < 0]
        raise PreconditionError(f"morphisms {bad} are not invertible")


def inverse_functor(M: MonoidalStructure) -> FinFunctor:
    """Contravariant ``f ↦ f⁻¹``, as a functor out of the opposite category."""
    _require_invertible(M)
    C = M.base
    return FinFunctor(opposite(C), C, tuple(C.objects()), tuple(C.inverses))


def star(M: MonoidalStructure, data: CoherentData, f: int) -> int:
    """``*(f): ȳ -> x̄`` for ``f: x -> y``:
    ``r⁻¹ ; 1⊗i_x ; 1⊗(f⊗1) ; a⁻¹ ; e_y⊗1 ; ℓ``."""
    x, y = M.dom(f), M.cod(f)
    xb, yb = data.dual[x], data.dual[y]
    return M.comp(
        M.inv(M.r(yb)),
        M.right(yb, data.unit_i[x]),
        M.right(yb, M.left(f, xb)),
        M.inv(M.a(yb, y, xb)),
        M.left(data.counit_e[y], xb),
        M.l(xb),
    )


def star_functor(M: MonoidalStructure, data: CoherentData) -> FinFunctor:
    C = M.base
    return FinFunctor(opposite(C), C, tuple(data.dual), tuple(star(M, data, f) for f in C.morphisms()))


def inv_functor(M: MonoidalStructure, data: CoherentData) -> FinFunctor:
    """Covariant ``inv(f) = *(f⁻¹): x̄ -> ȳ``."""
    _require_invertible(M)
    C = M.base
    return FinFunctor(C, C, tuple(data.dual), tuple(star(M, data, M.inv(f)) for f in C.morphisms()))


def check_inv_functorial(M: MonoidalStructure, data: CoherentData) -> ValidationReport:
    rep = validate_functor(inv_functor(M, data))
    report = ValidationReport()
    for tag, w in rep.structural:
        report.error("INV_" + tag, *w)
    for tag, w in rep.violations:
        report.fail("INV_" + tag, *w)
    report.counts.update({"INV_" + k: v for k, v in rep.counts.items()})
    return report


# generators

def _strict_tables(C: FinCategory, ob, mor, unit: int):
    n = C.n_objects
    ids = C.identity
    assoc = [ids[ob(ob(x, y), z)] for x in range(n) for y in range(n) for z in range(n)]
    return MonoidalStructure.from_tables(
        C,
        [ob(x, y) for x in range(n) for y in range(n)],
        [mor(f, g) for f in C.morphisms() for g in C.morphisms()],
        unit,
        assoc,
        list(ids),
        list(ids),
    )


def from_group(group: FiniteGroup) -> CoherentTwoGroup:
    """Discrete strict 2-group: objects are group elements, only identities."""
    C = discrete_category(group.order)
    M = _strict_tables(C, group.mul, group.mul, group.identity)
    one = tuple(C.identity[group.identity] for _ in group.elements())
    data = CoherentData(group.inverses, one, one)
    return CoherentTwoGroup(M, data)


def deloop_abelian(group: FiniteGroup, i_choice: int, e_choice: int):
    """One object, morphisms the group, tensor = composition; structure maps trivial."""
    if not group.is_abelian():
        raise ValueError(f"{group.name} is not abelian; the interchange law would fail")
    C = deloop_category(group)
    M = _strict_tables(C, lambda x, y: 0, group.mul, 0)
    n = group.order
    if not (0 <= i_choice < n and 0 <= e_choice < n):
        raise ValueError("unit/counit choice outside the group")
    return M, CoherentData((0,), (i_choice,), (e_choice,))


@lru_cache(maxsize=None)
def cocycle_2group(n: int, k: int = 1, coherent: bool = False) -> CoherentTwoGroup:
    """Skeletal 2-group with objects ``Z_n``, automorphisms ``Z_n`` at every
    object and associator given by the 3-cocycle ``k·x·⌊(y+z)/n⌋``.

    Morphism ``(g, a): g -> g`` has index ``g*n + a``.  The default dual
    data ``(−x, 0, 0)`` violates the zig-zags for ``x ≠ 0`` whenever the
    cocycle is nontrivial; ``coherent=True`` picks ``e_x = −ω(x, −x, x)``.
    """
    arrows = [(g, g) for g in range(n) for _ in range(n)]
    C = FinCategory.build(
        n, arrows, [g * n for g in range(n)], lambda f, h: (f // n) * n + (f % n + h % n) % n
    )

    def omega(x, y, z):
        return (k * x * ((y + z) // n)) % n

    def mor(f, h):
        return ((f // n + h // n) % n) * n + (f % n + h % n) % n

    M = MonoidalStructure.from_tables(
        C,
        [(x + y) % n for x in range(n) for y in range(n)],
        [mor(f, h) for f in range(n * n) for h in range(n * n)],
        0,
        [((x + y + z) % n) * n + omega(x, y, z) for x in range(n) for y in range(n) for z in range(n)],
        [g * n for g in range(n)],
        [g * n for g in range(n)],
    )
    dual = tuple((-x) % n for x in range(n))
    e = tuple((-omega(x, (-x) % n, x)) % n if coherent else 0 for x in range(n))
    return CoherentTwoGroup(M, CoherentData(dual, tuple(0 for _ in range(n)), e))


@dataclass(frozen=True)
class CrossedModule:
    G: FiniteGroup
    H: FiniteGroup
    t: tuple[int, ...]
    alpha: tuple[tuple[int, ...], ...]  # alpha[g][h]

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        G, H, t, al = self.G, self.H, self.t, self.alpha
        if len(t) != H.order or len(al) != G.order or any(len(r) != H.order for r in al):
            report.error("SIZE", "crossed module tables have the wrong size")
            return report
        if not H.is_homomorphism(G, t):
            report.fail("XMOD_T_HOM")
        for g in G.elements():
            if not H.is_homomorphism(H, al[g]) or sorted(al[g]) != list(H.elements()):
                report.fail("XMOD_AUTOMORPHISM", g)
        for g, g2, h in itertools.product(G.elements(), G.elements(), H.elements()):
            if al[G.mul(g, g2)][h] != al[g][al[g2][h]]:
                report.fail("XMOD_ACTION", g, g2, h)
        for g, h in itertools.product(G.elements(), H.elements()):
            if t[al[g][h]] != G.mul(G.mul(g, t[h]), G.inv(g)):
                report.fail("XMOD_EQUIVARIANCE", g, h)
        for h, h2 in itertools.product(H.elements(), repeat=2):
            if al[t[h]][h2] != H.mul(H.mul(h, h2), H.inv(h)):
                report.fail("XMOD_PEIFFER", h, h2)
        return report


def crossed_module(G: FiniteGroup, H: FiniteGroup, t: str = "trivial", alpha: str = "trivial") -> CrossedModule:
    """Crossed modules named by kind: ``t`` in {trivial, id}, ``alpha`` in {trivial, conj}."""
    if t == "trivial":
        tt = tuple(G.identity for _ in H.elements())
    elif t == "id":
        if G != H:
            raise ValueError("t = id needs H = G")
        tt = tuple(H.elements())
    else:
        raise ValueError(f"unknown boundary map {t!r}")
    if alpha == "trivial":
        al = tuple(tuple(H.elements()) for _ in G.elements())
    elif alpha == "conj":
        if G != H:
            raise ValueError("alpha = conj needs H = G")
        al = tuple(tuple(G.mul(G.mul(g, h), G.inv(g)) for h in H.elements()) for g in G.elements())
    else:
        raise ValueError(f"unknown action {alpha!r}")
    return CrossedModule(G, H, tt, al)


def from_crossed_module(X: CrossedModule) -> CoherentTwoGroup:
    """Strict 2-group: objects ``G``; morphism ``(h, g): g -> t(h)·g`` with index ``h*|G| + g``."""
    rep = X.validate()
    if not rep.ok:
        raise StructuralError("crossed module axioms fail: " + "; ".join(rep.lines()[:3]), rep)
    G, H, t, al = X.G, X.H, X.t, X.alpha
    nG = G.order
    arrows = [(g, G.mul(t[h], g)) for h in H.elements() for g in G.elements()]

    def compose(f1, f2):
        return H.mul(f2 // nG, f1 // nG) * nG + f1 % nG

    C = FinCategory.build(nG, arrows, [H.identity * nG + g for g in G.elements()], compose)

    def mor(f1, f2):
        h1, g1, h2, g2 = f1 // nG, f1 % nG, f2 // nG, f2 % nG
        return H.mul(h1, al[g1][h2]) * nG + G.mul(g1, g2)

    M = _strict_tables(C, G.mul, mor, G.identity)
    data = CoherentData(G.inverses, tuple(C.identity[G.identity] for _ in G.elements()),
                        tuple(C.identity[G.identity] for _ in G.elements()))
    return CoherentTwoGroup(M, data)


def generate(directive: str):
    """Instance from a generator directive.

    ``group:Z3``, ``deloop:Z3:i:e``, ``xmod:G:H:t:alpha`` or ``cocycle:Zn[:k]``.
    Returns ``(MonoidalStructure, CoherentData)``.
    """
    parts = directive.strip().split(":")
    kind, args = parts[0], parts[1:]
    if kind == "group" and len(args) == 1:
        G = from_group(parse_group(args[0]))
        return G.M, G.data
    if kind == "deloop" and len(args) in (1, 3):
        i, e = (int(args[1]), int(args[2])) if len(args) == 3 else (0, 0)
        return deloop_abelian(parse_group(args[0]), i, e)
    if kind == "xmod" and len(args) == 4:
        G = from_crossed_module(crossed_module(parse_group(args[0]), parse_group(args[1]), args[2], args[3]))
        return G.M, G.data
    if kind == "cocycle" and len(args) in (1, 2):
        group = parse_group(args[0])
        if group != cyclic(group.order) and group != trivial():
            raise ValueError("cocycle generator needs a cyclic group Zn")
        G = cocycle_2group(group.order, int(args[1]) if len(args) == 2 else 1)
        return G.M, G.data
    raise ValueError(f"unknown generator {directive!r}")
