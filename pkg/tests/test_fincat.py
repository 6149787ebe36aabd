import itertools

from hypothesis import given, strategies as st

from twogroups.fincat import (
    NONE,
    FinCategory,
    FinFunctor,
    NatTransform,
    compose_functors,
    deloop_category,
    discrete_category,
    free_arrow_category,
    identity_functor,
    is_isomorphism,
    opposite,
    product_category,
    terminal_category,
    validate_category,
    validate_functor,
    validate_nat,
)
from twogroups.groups import cyclic, symmetric


def patched(C: FinCategory, f: int, g: int, value: int) -> FinCategory:
    rows = [list(r) for r in C.table]
    rows[f][g] = value
    return FinCategory(C.n_objects, C.dom, C.cod, C.identity, tuple(map(tuple, rows)))


def brute_assoc_failures(C):
    """Independent oracle: every composable triple where (fg)h != f(gh)."""
    out = []
    for f, g, h in itertools.product(C.morphisms(), repeat=3):
        if C.cod[f] == C.dom[g] and C.cod[g] == C.dom[h]:
            if C.table[C.table[f][g]][h] != C.table[f][C.table[g][h]]:
                out.append((f, g, h))
    return out


def test_single_identity_category():
    assert validate_category(terminal_category()).ok


def test_deloop_z3_valid():
    C = deloop_category(cyclic(3))
    assert C.n_objects == 1 and C.n_morphisms == 3
    assert all(C.table[a][b] == (a + b) % 3 for a in range(3) for b in range(3))
    assert validate_category(C).ok


def test_patched_deloop_z3_reports_triple():
    C = patched(deloop_category(cyclic(3)), 1, 1, 0)
    report = validate_category(C)
    assert not report.ok and not report.structural
    witnesses = {w for tag, w in report.violations if tag == "CAT_ASSOC"}
    assert witnesses == set(brute_assoc_failures(C))
    assert witnesses


def test_dangling_entry_is_structural():
    C = patched(deloop_category(cyclic(3)), 1, 1, 7)
    report = validate_category(C)
    assert report.structural and not report.violations


def test_composition_of_noncomposable_is_structural_or_typed():
    C = patched(free_arrow_category(), 2, 0, 2)
    assert not validate_category(C).ok


def test_product_with_terminal():
    C = deloop_category(cyclic(3))
    P = product_category(terminal_category(), C)
    assert P.n_objects == C.n_objects and P.n_morphisms == C.n_morphisms
    assert P.table == C.table


def test_product_z2_z2():
    Z2 = deloop_category(cyclic(2))
    P = product_category(Z2, Z2)
    assert P.n_objects == 1 and P.n_morphisms == 4
    for f, g in itertools.product(range(4), repeat=2):
        (a, b), (c, d) = divmod(f, 2), divmod(g, 2)
        assert P.table[f][g] == ((a + c) % 2) * 2 + (b + d) % 2
    assert validate_category(P).ok


def test_product_object_count():
    P = product_category(deloop_category(cyclic(2)), discrete_category(2))
    assert P.n_objects == 2
    assert validate_category(P).ok


def test_identity_functor_valid():
    for C in (deloop_category(symmetric(3)), free_arrow_category(), discrete_category(3)):
        assert validate_functor(identity_functor(C)).ok


def test_doubling_functor():
    C = deloop_category(cyclic(3))
    assert validate_functor(FinFunctor(C, C, (0,), (0, 2, 1))).ok


def test_constant_functor_breaks_identity():
    C = deloop_category(cyclic(3))
    report = validate_functor(FinFunctor(C, C, (0,), (1, 1, 1)))
    assert "FUNCTOR_ID" in report.tags()


def test_functor_wrong_size_structural():
    C = deloop_category(cyclic(3))
    assert validate_functor(FinFunctor(C, C, (0,), (0, 1))).structural


def test_nat_identity():
    C = deloop_category(cyclic(3))
    F = identity_functor(C)
    assert validate_nat(NatTransform(F, F, (0,))).ok
    assert validate_nat(NatTransform(F, F, (1,))).ok


def test_nat_noncommuting_s3():
    S3 = symmetric(3)
    C = deloop_category(S3)
    F = identity_functor(C)
    t = next(g for g in S3.elements() if g != S3.identity and S3.mul(g, g) == S3.identity)
    report = validate_nat(NatTransform(F, F, (t,)))
    bad = {w[0] for tag, w in report.violations if tag == "NATURALITY"}
    assert bad == {f for f in S3.elements() if S3.mul(f, t) != S3.mul(t, f)}
    assert bad


def test_nat_missing_component_structural():
    C = discrete_category(2)
    F = identity_functor(C)
    assert validate_nat(NatTransform(F, F, (0,))).structural


def test_isomorphisms():
    C = deloop_category(cyclic(3))
    assert is_isomorphism(C, 0) == 0
    assert is_isomorphism(C, 1) == 2
    A = free_arrow_category()
    assert is_isomorphism(A, 2) is None
    assert A.inverses[2] == NONE


def test_opposite_and_composite_functor():
    C = deloop_category(symmetric(3))
    assert validate_category(opposite(C)).ok
    F = identity_functor(C)
    assert compose_functors(F, F) == F


@given(st.sampled_from(["Z2", "Z3", "S3", "Z2xZ2"]), st.sampled_from(["Z1", "Z2", "Z3"]))
def test_product_of_valid_is_valid(a, b):
    from twogroups.groups import parse_group
    P = product_category(deloop_category(parse_group(a)), deloop_category(parse_group(b)))
    assert validate_category(P).ok


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_single_cell_mutation_detected(f, g, value):
    C = deloop_category(symmetric(3))
    if C.table[f][g] == value:
        value = (value + 1) % 6
    assert not validate_category(patched(C, f, g, value)).ok


@given(st.sampled_from(["Z4", "S3", "Z2xZ2"]), st.integers(0, 23))
def test_inverse_is_two_sided(name, k):
    from twogroups.groups import parse_group
    C = deloop_category(parse_group(name))
    f = k % C.n_morphisms
    g = is_isomorphism(C, f)
    assert C.table[f][g] == C.identity[C.dom[f]] and C.table[g][f] == C.identity[C.cod[f]]
