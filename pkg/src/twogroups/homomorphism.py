"""Weak monoidal functors, monoidal natural transformations, and F₋₁."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import FinFunctor, NatTransform, ValidationReport, compose_functors, identity_functor, validate_functor, validate_nat
from .monoidal import MonoidalStructure
from .twogroup import CoherentData, PreconditionError


@dataclass(frozen=True)
class MonoidalFunctor:
    source: MonoidalStructure
    target: MonoidalStructure
    F: FinFunctor
    F2: tuple[int, ...]  # index x*n + y: F(x)⊗F(y) -> F(x⊗y)
    F0: int  # 1' -> F(1)

    def ob(self, x: int) -> int:
        return self.F.ob_map[x]

    def mor(self, f: int) -> int:
        return self.F.mor_map[f]

    def f2(self, x: int, y: int) -> int:
        return self.F2[x * self.source.n + y]


@dataclass(frozen=True)
class MonoidalNatTransform:
    source: MonoidalFunctor
    target: MonoidalFunctor
    components: tuple[int, ...]


def identity_monoidal_functor(M: MonoidalStructure) -> MonoidalFunctor:
    n = M.n
    return MonoidalFunctor(
        M, M, identity_functor(M.base),
        tuple(M.id(M.ob(x, y)) for x in range(n) for y in range(n)), M.id(M.unit),
    )


def validate_monoidal_functor(Fm: MonoidalFunctor) -> ValidationReport:
    S, T = Fm.source, Fm.target
    report = ValidationReport()
    if Fm.F.source != S.base or Fm.F.target != T.base:
        report.error("BOUNDARY", "functor does not run between the base categories")
        return report
    report.merge(validate_functor(Fm.F))
    if not report.ok:
        return report
    n, m = S.n, T.base.n_morphisms
    if len(Fm.F2) != n * n:
        report.error("SIZE", "F2 table has the wrong size")
        return report
    if not 0 <= Fm.F0 < m or any(not 0 <= f < m for f in Fm.F2):
        report.error("DANGLING", "F2/F0 outside the target")
        return report
    ob = Fm.ob
    for x, y in itertools.product(range(n), repeat=2):
        f = Fm.f2(x, y)
        if T.dom(f) != T.ob(ob(x), ob(y)) or T.cod(f) != ob(S.ob(x, y)):
            report.error("F2_TYPING", x, y)
    if T.dom(Fm.F0) != T.unit or T.cod(Fm.F0) != ob(S.unit):
        report.error("F0_TYPING")
    if report.structural:
        return report
    inv = T.base.inverses
    for x, y in itertools.product(range(n), repeat=2):
        if inv[Fm.f2(x, y)] < 0:
            report.fail("F2_ISO", x, y)
    if inv[Fm.F0] < 0:
        report.fail("F0_ISO")
    C = S.base
    for f, g in itertools.product(C.morphisms(), repeat=2):
        report.tick("F2_NATURAL")
        lhs = T.comp(T.mor(Fm.mor(f), Fm.mor(g)), Fm.f2(C.cod[f], C.cod[g]))
        rhs = T.comp(Fm.f2(C.dom[f], C.dom[g]), Fm.mor(S.mor(f, g)))
        if lhs != rhs:
            report.fail("F2_NATURAL", f, g)
    for x, y, z in itertools.product(range(n), repeat=3):
        report.tick("HOM_ASSOC")
        lhs = T.comp(
            T.left(Fm.f2(x, y), ob(z)), Fm.f2(S.ob(x, y), z), Fm.mor(S.a(x, y, z))
        )
        rhs = T.comp(
            T.a(ob(x), ob(y), ob(z)), T.right(ob(x), Fm.f2(y, z)), Fm.f2(x, S.ob(y, z))
        )
        if lhs != rhs:
            report.fail("HOM_ASSOC", x, y, z)
    for x in range(n):
        report.tick("HOM_UNIT")
        lhs = T.comp(T.left(Fm.F0, ob(x)), Fm.f2(S.unit, x), Fm.mor(S.l(x)))
        if lhs != T.l(ob(x)):
            report.fail("HOM_LUNIT", x)
        lhs = T.comp(T.right(ob(x), Fm.F0), Fm.f2(x, S.unit), Fm.mor(S.r(x)))
        if lhs != T.r(ob(x)):
            report.fail("HOM_RUNIT", x)
    return report


def validate_monoidal_nat(t: MonoidalNatTransform) -> ValidationReport:
    Fm, Gm = t.source, t.target
    report = validate_nat(NatTransform(Fm.F, Gm.F, t.components))
    if report.structural:
        return report
    S, T = Fm.source, Fm.target
    th = t.components
    for x, y in itertools.product(range(S.n), repeat=2):
        report.tick("MONOIDAL_NAT_TENSOR")
        lhs = T.comp(T.mor(th[x], th[y]), Gm.f2(x, y))
        rhs = T.comp(Fm.f2(x, y), th[S.ob(x, y)])
        if lhs != rhs:
            report.fail("MONOIDAL_NAT_TENSOR", x, y)
    report.tick("MONOIDAL_NAT_UNIT")
    if T.comp(Fm.F0, th[S.unit]) != Gm.F0:
        report.fail("MONOIDAL_NAT_UNIT")
    return report


def compose_monoidal_functors(Fm: MonoidalFunctor, Gm: MonoidalFunctor) -> MonoidalFunctor:
    """``Fm`` then ``Gm``: F₂ is ``G₂ ; G(F₂)`` and F₀ is ``G₀ ; G(F₀)``."""
    if Fm.target != Gm.source:
        raise ValueError("functors do not compose: boundary categories differ")
    S, U = Fm.source, Gm.target
    n = S.n
    F2 = tuple(
        U.comp(Gm.f2(Fm.ob(x), Fm.ob(y)), Gm.mor(Fm.f2(x, y)))
        for x in range(n)
        for y in range(n)
    )
    return MonoidalFunctor(S, U, compose_functors(Fm.F, Gm.F), F2, U.comp(Gm.F0, Gm.mor(Fm.F0)))


def preserved_weak_inverse(Fm: MonoidalFunctor, x: int, y: int, gamma: int, xi: int) -> tuple[int, int]:
    """Given ``γ: x⊗y -> 1`` and ``ξ: y⊗x -> 1``, return
    ``(F₂;F(ξ);F₀⁻¹, F₂;F(γ);F₀⁻¹)``, witnessing ``F(y)`` as a weak inverse of ``F(x)``."""
    S, T = Fm.source, Fm.target
    for f, (a, b) in ((gamma, (x, y)), (xi, (y, x))):
        if S.dom(f) != S.ob(a, b) or S.cod(f) != S.unit:
            raise PreconditionError(f"morphism {f} is not typed {a}⊗{b} -> 1")
    F0inv = T.inv(Fm.F0)
    return (
        T.comp(Fm.f2(y, x), Fm.mor(xi), F0inv),
        T.comp(Fm.f2(x, y), Fm.mor(gamma), F0inv),
    )


def _fm1_setup(Fm: MonoidalFunctor, x: int, src: CoherentData, tgt: CoherentData):
    if src is None or tgt is None:
        raise PreconditionError("F₋₁ needs chosen dual data on both sides")
    Fx = Fm.ob(x)
    return Fx, src.dual[x], tgt.dual[Fx], tgt.unit_i[Fx], tgt.counit_e[Fx]


def _f1_tail(Fm: MonoidalFunctor, x: int, src: CoherentData, tgt: CoherentData) -> tuple:
    """Shared last six legs of F1 and F1′, from ``ȳ⊗1'`` to ``F(x̄)``."""
    T = Fm.target
    Fx, xb, yb, _, e2 = _fm1_setup(Fm, x, src, tgt)
    Fxb = Fm.ob(xb)
    return (
        T.right(yb, Fm.F0),
        T.right(yb, Fm.mor(src.unit_i[x])),
        T.right(yb, T.inv(Fm.f2(x, xb))),
        T.inv(T.a(yb, Fx, Fxb)),
        T.left(e2, Fxb),
        T.l(Fxb),
    )


def f_minus_one_F1(Fm: MonoidalFunctor, x: int, src: CoherentData, tgt: CoherentData) -> int:
    """Ten-leg composite from the target's chosen dual of ``F(x)`` to ``F(x̄)``."""
    T = Fm.target
    Fx, _, yb, i2, e2 = _fm1_setup(Fm, x, src, tgt)
    return T.comp(
        T.inv(T.l(yb)),
        T.left(T.inv(e2), yb),
        T.a(yb, Fx, yb),
        T.right(yb, T.inv(i2)),
        *_f1_tail(Fm, x, src, tgt),
    )


def f_minus_one_F1prime(Fm: MonoidalFunctor, x: int, src: CoherentData, tgt: CoherentData) -> int:
    """F1 with its first four legs replaced by ``r⁻¹``."""
    T = Fm.target
    yb = _fm1_setup(Fm, x, src, tgt)[2]
    return T.comp(T.inv(T.r(yb)), *_f1_tail(Fm, x, src, tgt))


def f_minus_one_F2(Fm: MonoidalFunctor, x: int, src: CoherentData, tgt: CoherentData) -> int:
    """Composite through ``F(e_x⁻¹)⊗1``, built on the right of the target's dual."""
    S, T = Fm.source, Fm.target
    Fx, xb, yb, i2, e2 = _fm1_setup(Fm, x, src, tgt)
    Fxb = Fm.ob(xb)
    return T.comp(
        T.inv(T.r(yb)),
        T.right(yb, i2),
        T.inv(T.a(yb, Fx, yb)),
        T.left(e2, yb),
        T.left(Fm.F0, yb),
        T.left(Fm.mor(S.inv(src.counit_e[x])), yb),
        T.left(T.inv(Fm.f2(xb, x)), yb),
        T.a(Fxb, Fx, yb),
        T.right(Fxb, T.inv(i2)),
        T.r(Fxb),
    )


def check_H1(Fm: MonoidalFunctor, x: int, fm1: int, src: CoherentData, tgt: CoherentData) -> bool:
    """``i_{F(x)} ; (1⊗fm1) ; F₂ = F₀ ; F(i_x)``"""
    T = Fm.target
    Fx, xb, yb, i2, _ = _fm1_setup(Fm, x, src, tgt)
    if T.dom(fm1) != yb or T.cod(fm1) != Fm.ob(xb):
        return False
    lhs = T.comp(i2, T.right(Fx, fm1), Fm.f2(x, xb))
    return lhs == T.comp(Fm.F0, Fm.mor(src.unit_i[x]))


def check_H2(Fm: MonoidalFunctor, x: int, fm1: int, src: CoherentData, tgt: CoherentData) -> bool:
    """``(fm1⊗1) ; F₂ ; F(e_x) = e_{F(x)} ; F₀``"""
    T = Fm.target
    Fx, xb, yb, _, e2 = _fm1_setup(Fm, x, src, tgt)
    if T.dom(fm1) != yb or T.cod(fm1) != Fm.ob(xb):
        return False
    lhs = T.comp(T.left(fm1, Fx), Fm.f2(xb, x), Fm.mor(src.counit_e[x]))
    return lhs == T.comp(e2, Fm.F0)


def check_f_minus_one(Fm: MonoidalFunctor, src: CoherentData, tgt: CoherentData) -> ValidationReport:
    """For every object: F1 = F1′ = F2, and the common value satisfies H1 and H2."""
    report = ValidationReport()
    for x in Fm.source.base.objects():
        v1 = f_minus_one_F1(Fm, x, src, tgt)
        v1p = f_minus_one_F1prime(Fm, x, src, tgt)
        v2 = f_minus_one_F2(Fm, x, src, tgt)
        report.tick("FM1_AGREE")
        if v1 != v1p:
            report.fail("FM1_F1_NE_F1PRIME", x, v1, v1p)
        if v1 != v2:
            report.fail("FM1_F1_NE_F2", x, v1, v2)
        report.tick("H1")
        report.tick("H2")
        if not check_H1(Fm, x, v1, src, tgt):
            report.fail("H1", x, v1)
        if not check_H2(Fm, x, v1, src, tgt):
            report.fail("H2", x, v1)
    return report
