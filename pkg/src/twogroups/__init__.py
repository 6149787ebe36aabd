"""Finite weak and coherent 2-groups: law checkers, improvement of inverse
data, monoidal functors, and a rewriting engine for string diagrams."""
from .fincat import FinCategory, FinFunctor, NatTransform, StructuralError, ValidationReport
from .groups import FiniteGroup, cyclic, parse_group, symmetric
from .monoidal import MonoidalStructure, check_pentagon, check_triangle, validate_monoidal
from .twogroup import (
    CoherentData,
    CoherentTwoGroup,
    PreconditionError,
    WeakTwoGroup,
    check_inv_functorial,
    check_weak_2group,
    cocycle_2group,
    crossed_module,
    deloop_abelian,
    from_crossed_module,
    from_group,
    generate,
    validate_coherent,
)
from .homomorphism import (
    MonoidalFunctor,
    check_f_minus_one,
    f_minus_one_F1,
    f_minus_one_F1prime,
    f_minus_one_F2,
    validate_monoidal_functor,
)
from .improve import InverseChoice, choose_inverse_data, forget, improve, roundtrip_homomorphism
from .diagram import Diagram, RewriteTrace, equivalent, evaluate, replay

__version__ = "0.1.0"
