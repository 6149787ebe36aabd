import random
import time

import pytest
from hypothesis import given, strategies as st

from twogroups import diagram as dg
from twogroups.diagram import D, U, Diagram, DiagramError, RewriteTrace, Step
from twogroups.groups import cyclic
from twogroups.improve import improved_unit
from twogroups.twogroup import CoherentData, cocycle_2group, deloop_abelian

PLAIN_ZIGZAG = Diagram.make((D,), [("CUPI", "ID+"), ("ID+", "CAPE")], (D,))


def weak_instances():
    out = [deloop_abelian(cyclic(3), 1, 1) + (0,)]
    for n in (3, 4):
        G = cocycle_2group(n, 1)
        ch = CoherentData(G.data.dual, (1,) * n, (1,) * n)
        out += [(G.M, ch, x) for x in range(n)]
    return out


def coherent_instances():
    out = [deloop_abelian(cyclic(n), i, (-i) % n) + (0,) for n in (3, 5) for i in range(n)]
    for n in (2, 3, 4, 5):
        G = cocycle_2group(n, 1, True)
        out += [(G.M, G.data, x) for x in range(n)]
    return out


def test_validate_diagram_examples():
    assert dg.validate_diagram(dg.wire(D))
    assert dg.validate_diagram(Diagram.make((), [("CUPI",)], (D, U)))
    assert not dg.validate_diagram(Diagram.make((), [("CUPI",)], (U, D)))
    assert not dg.validate_diagram(Diagram.make((D,), [("ID-",)], (U,)))
    assert not dg.validate_diagram(Diagram.make((D,), [("BOGUS",)], (D,)))


def test_rewrite_rules_shape():
    rules = dg.rewrite_rules()
    assert [r.tag for r in rules] == list(dg.RULE_TAGS)
    by_tag = {r.tag: r for r in rules}
    assert by_tag["LOOP_I"].lhs == ((("CUPI", 0), ("CAPI'", 0)),) and by_tag["LOOP_I"].rhs == ()
    assert by_tag["CANCEL_E"].boundary == (U, D)
    assert by_tag["CANCEL_I"].boundary == (D, U)
    assert by_tag["SLIDE_E"].sides == ("L", "R")
    # every pattern maps its boundary word back to itself
    for r in rules:
        for pat in r.lhs + (r.rhs,):
            assert dg.words(r.boundary, pat)[-1] == r.boundary


def test_apply_rule_loop_removal():
    d = Diagram.make((), [("CUPI",), ("CAPI'",)], ())
    out = dg.apply_rule(d, "LOOP_I", (0, 0), "fwd")
    assert out == Diagram((), (), ())


def test_apply_rule_loop_insertion():
    d = Diagram.make((D,), [("ID+",)], (D,))
    out = dg.apply_rule(d, "LOOP_I", (0, 0), "bwd")
    assert len(out.layers) == 3 and dg.validate_diagram(out)
    assert out.layers[:2] == (("CUPI", "ID+"), ("CAPI'", "ID+"))


def test_apply_rule_no_match():
    with pytest.raises(DiagramError):
        dg.apply_rule(dg.zigzag1_diagram(), "LOOP_E", (0, 0), "fwd")


def test_slide_on_iprime_zigzag():
    """Bringing e⁻¹ next to e and sliding gives the stacked e;e⁻¹ form."""
    d = dg.zigzag1_diagram()
    trace = dg.equivalent(d, dg.wire(D), max_steps=12)
    k = next(n for n, s in enumerate(trace.steps) if s.tag == "SLIDE_E")
    before = dg.replay(d, RewriteTrace(trace.steps[:k]))
    after = dg.apply_step(before, trace.steps[k])
    gens = dg.to_gens(after)
    assert any(a[0] == "CAPE" and b == ("CUPE'", a[1]) for a, b in zip(gens, gens[1:]))
    for M, ch, x in coherent_instances() + weak_instances():
        assert dg.evaluate(before, M, ch, x) == dg.evaluate(after, M, ch, x)


def test_equivalent_trivial_and_mismatch():
    d = dg.zigzag1_diagram()
    assert dg.equivalent(d, d).steps == ()
    with pytest.raises(DiagramError):
        dg.equivalent(dg.wire(D), dg.wire(U))


@pytest.mark.parametrize("name,target,bound", [("zigzag1", D, 12), ("zigzag2", U, 24)])
def test_equivalent_finds_zigzag_proofs(name, target, bound):
    d = dg.NAMED[name]()
    start = time.perf_counter()
    trace = dg.equivalent(d, dg.wire(target), max_steps=bound)
    assert time.perf_counter() - start < 10
    assert trace is not None and trace.rule_count <= bound
    assert dg.replay(d, trace) == dg.wire(target)


def test_plain_zigzag_is_inconclusive():
    # (i ⊗ 1) ; (1 ⊗ e) equals the wire only under the zig-zag law, which is not a rule
    assert dg.equivalent(PLAIN_ZIGZAG, dg.wire(D), max_steps=8) is None
    M, ch, x = weak_instances()[0]
    assert dg.evaluate(PLAIN_ZIGZAG, M, ch, x) != dg.evaluate(dg.wire(D), M, ch, x)


def test_iprime_diagram():
    d = dg.iprime_diagram()
    assert dg.validate_diagram(d)
    assert d.top == () and d.bottom == (D, U)
    assert d.generator_count() == 3
    M, ch = deloop_abelian(cyclic(3), 1, 1)
    assert dg.evaluate(d, M, ch, 0) == 2 == improved_unit(M, ch, 0)


def test_iprime_evaluation_matches_composite_everywhere():
    for M, ch, x in coherent_instances() + weak_instances():
        assert dg.evaluate(dg.iprime_diagram(), M, ch, x) == improved_unit(M, ch, x)


def test_evaluate_basics():
    for M, ch, x in coherent_instances() + weak_instances():
        assert dg.evaluate(dg.wire(D), M, ch, x) == M.id(x)
        assert dg.evaluate(Diagram.make((), [("CUPI",)], (D, U)), M, ch, x) == ch.unit_i[x]


def test_trace_text_round_trip():
    trace = dg.equivalent(dg.zigzag2_diagram(), dg.wire(U))
    text = "\n".join(trace.lines())
    assert RewriteTrace.parse(text) == trace
    assert Step.parse("STEP SLIDE_E fwd 1 0 R") == Step("SLIDE_E", "fwd", 1, 0, "R")
    with pytest.raises(ValueError):
        Step.parse("STEP NOPE fwd 1 0 -")


def test_trace_inverse_replays_back():
    d = dg.zigzag1_diagram()
    trace = dg.equivalent(d, dg.wire(D))
    assert dg.replay(dg.wire(D), trace.inverse()) == d


def test_canonicalize_idempotent():
    gens = dg.to_gens(dg.zigzag2_diagram())
    c, _ = dg.canonicalize(gens)
    assert dg.canonicalize(c)[0] == c


@given(st.integers(0, 10_000), st.integers(1, 5))
def test_random_walk_trace_replays_exactly(seed, size):
    rng = random.Random(seed)
    d = dg.random_diagram(rng, size)
    d2, trace = dg.random_walk(d, rng, 2)
    assert dg.validate_diagram(d2)
    assert dg.replay(d, trace) == d2


@given(st.integers(0, 10_000), st.integers(0, 4))
def test_evaluate_ignores_identity_layers(seed, where):
    rng = random.Random(seed)
    d = dg.random_diagram(rng, 3)
    words = [d.top] + [dg.layer_io(layer)[1] for layer in d.layers]
    k = where % (len(d.layers) + 1)
    ident = tuple(dg.IDENTITY_CELL[w] for w in words[k])
    padded = Diagram(d.top, d.layers[:k] + (ident,) + d.layers[k:], d.bottom)
    for M, ch, x in weak_instances()[:3]:
        assert dg.evaluate(padded, M, ch, x) == dg.evaluate(d, M, ch, x)


@given(st.integers(0, 10_000))
def test_single_rule_sound_on_weak_data(seed):
    """Every rule uses only invertibility, so one step preserves the value even off the zig-zags."""
    rng = random.Random(seed)
    d = dg.random_diagram(rng, rng.randint(1, 4))
    d2, trace = dg.random_walk(d, rng, 1)
    for M, ch, x in weak_instances():
        assert dg.evaluate(d, M, ch, x) == dg.evaluate(d2, M, ch, x)


def test_search_finds_short_random_pairs(rng):
    for _ in range(10):
        d = dg.random_diagram(rng, 3)
        d2, _ = dg.random_walk(d, rng, 3)
        trace = dg.equivalent(d, d2, max_steps=32)
        assert trace is not None and dg.replay(d, trace) == d2
