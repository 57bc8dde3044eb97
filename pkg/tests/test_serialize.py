import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcomplex.algebra import FiniteBooleanAlgebra, Homomorphism
from cutcomplex.cuts import complex_graph
from cutcomplex.serialize import (
    DecodeError,
    algebra_from_json,
    algebra_to_json,
    clopen_from_json,
    clopen_to_json,
    element_from_json,
    element_to_json,
    graph_to_dot,
    graph_to_json,
    homomorphism_from_json,
    homomorphism_to_json,
    space_from_json,
    space_to_json,
)
from cutcomplex.space import Cantor, Convergent, Finite, Subspace, Union

leaf = st.one_of(st.integers(1, 6).map(Finite), st.just(Cantor()), st.just(Convergent()))
spaces = st.recursive(leaf, lambda inner: st.tuples(inner, inner).map(lambda t: Union(*t)), max_leaves=4)


@given(spaces)
def test_space_roundtrip(spec):
    assert space_from_json(json.dumps(space_to_json(spec))) == spec


def test_space_examples():
    assert space_from_json('{"space":{"type":"finite","n":5}}') == Finite(5)
    sub = space_from_json('{"type":"subspace","base":{"type":"cantor"},"window":["0","10"]}')
    assert sub == Subspace(Cantor(), ("0", "10"))
    assert space_to_json(sub)["window"] == ["0", "10"]


@pytest.mark.parametrize(
    "bad",
    ['{"type":"finite"}', '{"type":"finite","n":0}', '{"type":"torus"}', "[1,2]", "{", '{"type":"finite","n":true}'],
)
def test_space_errors(bad):
    with pytest.raises(DecodeError):
        space_from_json(bad)


def test_clopen_roundtrip():
    u = clopen_from_json(Cantor(), '["10","0","11"]')
    assert clopen_to_json(u) == [""]
    with pytest.raises(DecodeError):
        clopen_from_json(Cantor(), '["2"]')


def test_algebra_encodings():
    A = algebra_from_json('{"atoms":3}')
    assert algebra_to_json(A) == {"atoms": 3}
    e = element_from_json(A, "[2,0]")
    assert element_to_json(e) == [0, 2]
    B = FiniteBooleanAlgebra(2)
    g = homomorphism_from_json(A, B, '{"atom_map":[2,1]}')
    assert g == Homomorphism(A, B, (2, 1))
    assert homomorphism_to_json(g) == {"atom_map": [2, 1]}
    with pytest.raises(DecodeError):
        homomorphism_from_json(A, B, '{"atom_map":[5,1]}')
    with pytest.raises(DecodeError):
        element_from_json(A, "[7]")


def test_petersen_dot():
    g = complex_graph(Finite(5))
    dot = graph_to_dot(g)
    lines = dot.splitlines()
    assert sum("label=" in line for line in lines) == 10
    assert sum(" -- " in line for line in lines) == 15
    assert len(graph_to_json(g)["edges"]) == 15


def test_exports_are_deterministic():
    a = graph_to_dot(complex_graph(Finite(6)))
    b = graph_to_dot(complex_graph(Finite(6)))
    assert a == b
    assert json.dumps(graph_to_json(complex_graph(Cantor(), 2))) == json.dumps(graph_to_json(complex_graph(Cantor(), 2)))
