import random

import pytest
from hypothesis import given, strategies as st

from twogroups import diagram as dg
from twogroups.fileformat import (
    Instance,
    ParseError,
    parse_diagram,
    parse_functor,
    parse_instance,
    serialize_diagram,
    serialize_functor,
    serialize_instance,
)
from twogroups.fincat import StructuralError
from twogroups.homomorphism import identity_monoidal_functor
from twogroups.twogroup import generate

DIRECTIVES = ["group:Z2", "group:S3", "deloop:Z3:1:1", "deloop:Z5", "xmod:Z2:Z2:id:trivial", "cocycle:Z3", "cocycle:Z4:3"]


@pytest.mark.parametrize("directive", DIRECTIVES)
def test_instance_round_trip_expanded(directive):
    inst = parse_instance(f"GENERATOR {directive}\n")
    text = serialize_instance(inst, expand=True)
    again = parse_instance(text)
    assert again.M == inst.M and again.data == inst.data
    assert serialize_instance(again) == text


@pytest.mark.parametrize("directive", DIRECTIVES)
def test_generator_round_trip(directive):
    inst = parse_instance(f"# comment\nGENERATOR {directive}  # trailing\n")
    assert inst.generator == directive
    assert parse_instance(serialize_instance(inst)) == inst


def test_comments_and_line_breaks_ignored():
    text = serialize_instance(parse_instance("GENERATOR deloop:Z3:1:2"), expand=True)
    noisy = "# header\n" + text.replace("\n", "   # note\n")
    assert parse_instance(noisy).M == parse_instance(text).M


def test_compose_sentinel_written_as_dot():
    text = serialize_instance(parse_instance("GENERATOR group:Z2"), expand=True)
    assert ". " in text or " ." in text


def test_dual_sections_optional():
    text = serialize_instance(Instance(parse_instance("GENERATOR group:Z2").M), expand=True)
    assert "DUAL" not in text
    assert parse_instance(text).data is None


@pytest.mark.parametrize("mutate,error", [
    (lambda t: t[: len(t) // 2], ParseError),
    (lambda t: t.replace("UNIT 0", ""), ParseError),
    (lambda t: "GENERATOR group:Z2\n" + t, ParseError),
    (lambda t: t.replace("OBJECTS", "OBJETS"), ParseError),
    (lambda t: t.replace("\nCOUNIT_E\n0 0\n", "\n"), ParseError),
    (lambda t: t.replace("\n1 1 1\n", "\n1 1 7\n", 1), StructuralError),
    (lambda t: t.replace("IDENTITY\n0 1", "IDENTITY\n0 x"), ParseError),
])
def test_malformed_instances(mutate, error):
    text = serialize_instance(parse_instance("GENERATOR group:Z2"), expand=True)
    with pytest.raises(error):
        parse_instance(mutate(text))


def test_bad_generator():
    with pytest.raises(ParseError):
        parse_instance("GENERATOR deloop:S3")
    with pytest.raises(ParseError):
        parse_instance("GENERATOR a b")


def test_functor_round_trip_and_generators():
    M, data = generate("cocycle:Z3")
    Fm = identity_monoidal_functor(M)
    assert parse_functor(serialize_functor(Fm), M, M) == Fm
    assert parse_functor("GENERATOR identity", M, M) == Fm
    Z3, _ = generate("deloop:Z3")
    F = parse_functor("GENERATOR deloop:1:2", Z3, Z3)
    assert F.F2 == (1,) and F.F0 == 2
    with pytest.raises(ParseError):
        parse_functor("GENERATOR deloop:1:2", M, M)
    with pytest.raises(ParseError):
        parse_functor("OB_MAP 0 1 2\nMOR_MAP 0", M, M)


def test_diagram_round_trip_named():
    for name, make in dg.NAMED.items():
        d = make()
        assert parse_diagram(serialize_diagram(d)) == d


def test_empty_diagram_round_trip():
    d = dg.Diagram((), (), ())
    assert parse_diagram(serialize_diagram(d)) == d


def test_diagram_parse_errors():
    for text in ("TOP D\nLAYER ID+\n", "LAYER ID+\nTOP D\nBOTTOM D", "TOP D\nLAYER FOO\nBOTTOM D",
                 "TOP X\nBOTTOM X", "TOP D\nBOTTOM D\nBOTTOM D"):
        with pytest.raises(ParseError):
            parse_diagram(text)


@given(st.integers(0, 100_000), st.integers(0, 6))
def test_random_diagram_round_trip(seed, size):
    d = dg.random_diagram(random.Random(seed), size)
    text = serialize_diagram(d)
    assert parse_diagram(text) == d
    assert serialize_diagram(parse_diagram(text)) == text
