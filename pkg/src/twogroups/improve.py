"""Improving a weak 2-group to a coherent one, forgetting back, and the
identity homomorphism between two choices of dual data."""
from __future__ import annotations

from .fincat import StructuralError, ValidationReport, identity_functor
from .homomorphism import MonoidalFunctor
from .monoidal import MonoidalStructure, validate_monoidal
from .twogroup import (
    CoherentData,
    CoherentTwoGroup,
    PreconditionError,
    WeakTwoGroup,
    check_data_typing,
    validate_coherent,
)

# A choice of weak inverse with unit and counit isomorphisms; the zig-zag
# identities are not assumed.  Same shape as CoherentData.
InverseChoice = CoherentData


class ImprovementError(RuntimeError):
    """The improved data failed validation.  Never expected; carries the report."""

    def __init__(self, message: str, report: ValidationReport):
        super().__init__(message)
        self.report = report


def choose_inverse_data(W: WeakTwoGroup) -> InverseChoice:
    M = W.M
    duals, units, counits = [], [], []
    for y, gamma, xi in W.witnesses:
        duals.append(y)
        units.append(M.inv(gamma))
        counits.append(xi)
    return InverseChoice(tuple(duals), tuple(units), tuple(counits))


def improved_unit(M: MonoidalStructure, ch: InverseChoice, x: int) -> int:
    """The eight-leg composite ``i′_x: 1 -> x⊗x̄``."""
    xb, i, e = ch.entry(x)
    xxb = M.ob(x, xb)
    return M.comp(
        i,
        M.right(x, M.inv(M.l(xb))),
        M.right(x, M.left(M.inv(e), xb)),
        M.right(x, M.a(xb, x, xb)),
        M.inv(M.a(x, xb, xxb)),
        M.left(M.inv(i), xxb),
        M.inv(M.a(M.unit, x, xb)),
        M.left(M.l(x), xb),
    )


def improve(M: MonoidalStructure, ch: InverseChoice) -> CoherentTwoGroup:
    """Keep duals and counits, replace every unit by ``i′``."""
    report = validate_monoidal(M)
    check_data_typing(M, ch, report)
    if report.structural:
        raise StructuralError("cannot improve: " + "; ".join(report.lines()[:3]), report)
    if report.violations:
        raise PreconditionError("cannot improve: " + "; ".join(report.lines()[:3]))
    if not M.all_invertible:
        raise PreconditionError("cannot improve: some morphism is not invertible")
    inv = M.base.inverses
    if any(inv[f] < 0 for f in ch.unit_i + ch.counit_e):
        raise PreconditionError("cannot improve: unit or counit is not invertible")
    units = tuple(improved_unit(M, ch, x) for x in M.base.objects())
    G = CoherentTwoGroup(M, CoherentData(ch.dual, units, ch.counit_e))
    result = validate_coherent(G)
    if not result.ok:
        raise ImprovementError(
            "improved data fails the coherence check: " + "; ".join(result.lines()), result
        )
    return G


def forget(G: CoherentTwoGroup) -> WeakTwoGroup:
    M, data = G.M, G.data
    witnesses = tuple(
        (data.dual[x], M.inv(data.unit_i[x]), data.counit_e[x]) for x in M.base.objects()
    )
    return WeakTwoGroup(M, witnesses, M.base.inverses)


def roundtrip_homomorphism(G: CoherentTwoGroup, G2: CoherentTwoGroup) -> MonoidalFunctor:
    """Identity functor with identity F₂, F₀ from ``G`` to ``G2`` (same monoidal structure)."""
    if G.M != G2.M:
        raise ValueError("round trip needs the same underlying monoidal structure")
    M = G.M
    n = M.n
    return MonoidalFunctor(
        M, M, identity_functor(M.base),
        tuple(M.id(M.ob(x, y)) for x in range(n) for y in range(n)), M.id(M.unit),
    )
