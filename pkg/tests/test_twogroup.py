import itertools

import pytest
from hypothesis import given, strategies as st

from twogroups.fincat import StructuralError, discrete_category, free_arrow_category, opposite, validate_functor
from twogroups.groups import cyclic, parse_group, symmetric, trivial
from twogroups.monoidal import MonoidalStructure, is_strict, validate_monoidal
from twogroups.twogroup import (
    CoherentData,
    CoherentTwoGroup,
    CrossedModule,
    PreconditionError,
    check_inv_functorial,
    check_weak_2group,
    check_zigzags,
    cocycle_2group,
    crossed_module,
    deloop_abelian,
    find_weak_inverse,
    from_crossed_module,
    from_group,
    generate,
    inv_functor,
    inverse_functor,
    star,
    star_functor,
    validate_coherent,
    zigzag1_holds,
    zigzag2_holds,
)


def idempotent_monoid():
    """Discrete strict monoidal category on {1, s} with s⊗s = s."""
    C = discrete_category(2)
    ob = [[0, 1], [1, 1]]
    return MonoidalStructure.from_tables(C, ob, ob, 0, [C.identity[ob[ob[x][y]][z]] for x in range(2)
                                                        for y in range(2) for z in range(2)],
                                         [0, 1], [0, 1])


def test_weak_2group_discrete_z2():
    W = check_weak_2group(from_group(cyclic(2)).M)
    assert W is not None
    assert [w[0] for w in W.witnesses] == [0, 1]
    assert all(w[1] == w[2] == W.M.id(W.M.unit) for w in W.witnesses)


def test_weak_2group_deloop():
    M, _ = deloop_abelian(cyclic(3), 0, 0)
    W = check_weak_2group(M)
    assert W.witnesses == ((0, 0, 0),)


def test_idempotent_monoid_not_weak():
    M = idempotent_monoid()
    assert validate_monoidal(M).ok
    assert find_weak_inverse(M, 1) is None
    assert check_weak_2group(M) is None


def test_find_weak_inverse_of_unit():
    for M in (from_group(cyclic(3)).M, deloop_abelian(cyclic(5), 0, 0)[0]):
        u = M.unit
        assert find_weak_inverse(M, u) == (u, M.l(u), M.l(u))
    assert find_weak_inverse(from_group(cyclic(2)).M, 1) == (1, 0, 0)


def test_zigzag_examples():
    G = from_group(symmetric(3))
    assert check_zigzags(G.M, G.data).ok
    M, data = deloop_abelian(cyclic(3), 1, 2)
    assert check_zigzags(M, data).ok
    M, data = deloop_abelian(cyclic(3), 1, 1)
    assert check_zigzags(M, data).tags() == {"ZIGZAG1", "ZIGZAG2"}


def test_zigzag_mistyped_data_structural():
    M, _ = deloop_abelian(cyclic(3), 0, 0)
    assert check_zigzags(M, CoherentData((0,), (5,), (0,))).structural
    G = from_group(cyclic(2))
    bad = CoherentData(G.data.dual, (1, 1), G.data.counit_e)
    assert "UNIT_I_TYPING" in check_zigzags(G.M, bad).tags()


def test_validate_coherent_examples():
    assert validate_coherent(from_group(cyclic(2))).ok
    assert validate_coherent(CoherentTwoGroup(*deloop_abelian(cyclic(3), 1, 2))).ok
    report = validate_coherent(CoherentTwoGroup(*deloop_abelian(cyclic(3), 1, 1)))
    assert report.tags() == {"ZIGZAG1", "ZIGZAG2"}


def test_inverse_functor():
    M, _ = deloop_abelian(cyclic(3), 0, 0)
    F = inverse_functor(M)
    assert F.mor_map == (0, 2, 1)
    assert validate_functor(F).ok
    assert F.source == opposite(M.base)
    # (1·1)⁻¹ = 2⁻¹ = 1 and 1⁻¹·1⁻¹ = 2+2 = 1
    assert F.mor_map[M.comp(1, 1)] == M.comp(F.mor_map[1], F.mor_map[1]) == 1


def test_inverse_functor_needs_invertible():
    # only the base matters: the precondition is checked before the tensor is read
    M = idempotent_monoid().replace(base=free_arrow_category())
    with pytest.raises(PreconditionError):
        inverse_functor(M)


def test_star_examples():
    G = from_group(cyclic(3))
    for x in range(3):
        f = G.M.id(x)
        assert star(G.M, G.data, f) == G.M.id(G.data.dual[x])
    M, data = deloop_abelian(cyclic(3), 1, 2)
    assert [star(M, data, f) for f in range(3)] == [0, 1, 2]
    M, data = deloop_abelian(cyclic(3), 1, 1)
    assert [star(M, data, f) for f in range(3)] == [2, 0, 1]
    assert star_functor(M, data).ob_map == data.dual


def test_inv_examples():
    M, data = deloop_abelian(cyclic(3), 1, 2)
    assert inv_functor(M, data).mor_map == (0, 2, 1)
    G = from_group(cyclic(2))
    F = inv_functor(G.M, G.data)
    assert F.ob_map == (0, 1) and F.mor_map == (0, 1)
    assert check_inv_functorial(G.M, G.data).ok


@pytest.mark.parametrize("n", [3, 5])
def test_inv_functorial_iff_zigzag2_deloop(n):
    for i, e in itertools.product(range(n), repeat=2):
        M, data = deloop_abelian(cyclic(n), i, e)
        z2 = zigzag2_holds(M, data, 0)
        assert check_inv_functorial(M, data).ok == z2 == ((i + e) % n == 0)


def test_deloop_rejects_nonabelian():
    with pytest.raises(ValueError):
        deloop_abelian(symmetric(3), 0, 0)


def test_from_group_instances():
    for name, size in (("Z2", 2), ("Z3", 3), ("S3", 6)):
        G = from_group(parse_group(name))
        assert G.M.n == size and is_strict(G.M)
        assert validate_coherent(G).ok


def test_crossed_module_degenerate_cases():
    G = from_crossed_module(crossed_module(cyclic(2), trivial()))
    assert G.M == from_group(cyclic(2)).M
    assert G.data == from_group(cyclic(2)).data
    G = from_crossed_module(crossed_module(trivial(), cyclic(3)))
    M, data = deloop_abelian(cyclic(3), 0, 0)
    assert G.M == M and G.data == data


def test_crossed_module_z2_id():
    G = from_crossed_module(crossed_module(cyclic(2), cyclic(2), "id", "trivial"))
    assert G.M.n == 2 and G.M.base.n_morphisms == 4
    assert validate_coherent(G).ok and is_strict(G.M)


def test_crossed_module_s3_conj():
    G = from_crossed_module(crossed_module(symmetric(3), symmetric(3), "id", "conj"))
    assert validate_coherent(G).ok and is_strict(G.M)


def test_bad_crossed_module_rejected():
    Z2 = cyclic(2)
    X = CrossedModule(Z2, Z2, (0, 1), ((0, 1), (0, 1)))
    assert X.validate().ok
    # Peiffer fails for S3 with t = id and trivial action
    S3 = symmetric(3)
    X = crossed_module(S3, S3, "id", "trivial")
    assert "XMOD_PEIFFER" in X.validate().tags()
    with pytest.raises(StructuralError):
        from_crossed_module(X)


def test_generate_specs():
    for spec in ("group:Z3", "deloop:Z4:1:3", "xmod:Z2:Z2:id:trivial", "cocycle:Z3", "cocycle:Z4:2"):
        M, data = generate(spec)
        assert validate_monoidal(M).ok
    with pytest.raises(ValueError):
        generate("nonsense:Z3")
    with pytest.raises(ValueError):
        generate("cocycle:S3")


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cocycle_zigzag_oracle(n):
    """Zig-zag 1 at x reduces to i + e + ω(x, −x, x) = 0 in Z_n."""
    for coherent in (False, True):
        G = cocycle_2group(n, 1, coherent)
        M, data = G.M, G.data
        for x in range(n):
            omega = x * ((n - x) % n + x) // n % n
            want = (data.unit_i[x] % n + data.counit_e[x] % n + omega) % n == 0
            assert zigzag1_holds(M, data, x) == want == zigzag2_holds(M, data, x)
        assert validate_coherent(G).ok == coherent


@given(st.sampled_from([3, 5]), st.integers(0, 4), st.integers(0, 4))
def test_zigzag_closed_form_deloop(n, i, e):
    i, e = i % n, e % n
    M, data = deloop_abelian(cyclic(n), i, e)
    ok = (i + e) % n == 0
    assert zigzag1_holds(M, data, 0) == zigzag2_holds(M, data, 0) == ok
    assert [star(M, data, f) for f in range(n)] == [(i + f + e) % n for f in range(n)]


@given(st.sampled_from(["Z2", "Z3", "S3", "Z2xZ2"]))
def test_weak_inverse_found_when_coherent(name):
    G = from_group(parse_group(name))
    assert validate_coherent(G).ok
    for x in G.M.base.objects():
        assert find_weak_inverse(G.M, x) is not None


@given(st.sampled_from([("Z2", "Z2", "id", "trivial"), ("S3", "S3", "id", "conj"),
                        ("Z3", "Z3", "trivial", "trivial"), ("Z2", "Z4", "trivial", "trivial")]))
def test_crossed_module_output_strict_and_coherent(args):
    G, H, t, al = args
    T = from_crossed_module(crossed_module(parse_group(G), parse_group(H), t, al))
    assert is_strict(T.M) and validate_coherent(T).ok


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_zigzags_and_inv_agree_on_perturbed_cocycle_data(n, draw):
    G = cocycle_2group(n, 1)
    labels = st.lists(st.integers(0, n - 1), min_size=n, max_size=n)
    ch = CoherentData(G.data.dual, tuple(draw.draw(labels)), tuple(draw.draw(labels)))
    z1 = [zigzag1_holds(G.M, ch, x) for x in range(n)]
    z2 = [zigzag2_holds(G.M, ch, x) for x in range(n)]
    assert z1 == z2
    assert check_inv_functorial(G.M, ch).ok == all(z2)
