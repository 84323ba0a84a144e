from itertools import product

from hypothesis import given, strategies as st

from bruhatcup import bits
from bruhatcup.bits import parse
from bruhatcup.chains import (
    Chain,
    TensorChain,
    boundary,
    face_of_term,
    tensor_boundary,
    term_of_face,
    transpose,
)

from conftest import tc

simplices = st.integers(1, (1 << 7) - 1)
tensors = st.lists(st.tuples(simplices, simplices, st.integers(-3, 3)), max_size=6).map(
    lambda ts: sum((TensorChain.term(x, y, c) for x, y, c in ts), TensorChain())
)


def test_boundary_of_triangle():
    assert boundary(Chain.simplex("012")) == Chain({parse("12"): 1, parse("02"): -1, parse("01"): 1})


def test_boundary_of_vertex_vanishes():
    assert not boundary(Chain.simplex("5"))


@given(st.lists(st.tuples(simplices, st.integers(-3, 3)), max_size=6))
def test_boundary_squares_to_zero(items):
    c = Chain(items)
    assert not boundary(boundary(c))


def test_chain_arithmetic_cancels():
    a = Chain.simplex("01")
    assert not (a - a)
    assert 2 * a == a + a
    assert str(a - 3 * Chain.simplex("12")) == "01 - 3·12"


def test_tensor_boundary_example():
    expected = tc("1⊗012 - 0⊗012 - 01⊗12 + 01⊗02 - 01⊗01")
    assert tensor_boundary(tc("01⊗012")) == expected


def test_tensor_boundary_of_vertices():
    assert not tensor_boundary(tc("0⊗1"))


@given(tensors)
def test_tensor_boundary_squares_to_zero(t):
    assert not tensor_boundary(tensor_boundary(t))
    assert not tensor_boundary(tensor_boundary(tc("012⊗34")))


def test_transpose_examples():
    d0 = tc("0⊗012 + 01⊗12 + 012⊗2")
    assert transpose(d0) == tc("012⊗0 - 12⊗01 + 2⊗012")
    assert transpose(tc("0⊗1")) == tc("1⊗0")


@given(tensors)
def test_transpose_is_an_involution_commuting_with_boundary(t):
    assert transpose(transpose(t)) == t
    assert tensor_boundary(transpose(t)) == transpose(tensor_boundary(t))


@given(tensors, tensors)
def test_tensor_arithmetic(a, b):
    assert a + b == b + a
    assert not (a - a)
    assert -(-a) == a
    for (X, Y), c in (a + b).items():
        assert c == a.coefficient(X, Y) + b.coefficient(X, Y)
    assert TensorChain.from_json((a + b).to_json()) == a + b


def test_canonical_string_and_json():
    t = tc("012⊗12 - 02⊗012 + 012⊗01")
    assert str(t) == "012⊗01 + 012⊗12 - 02⊗012"
    assert t.to_json() == {
        "terms": [
            {"coef": 1, "left": [0, 1, 2], "right": [0, 1]},
            {"coef": 1, "left": [0, 1, 2], "right": [1, 2]},
            {"coef": -1, "left": [0, 2], "right": [0, 1, 2]},
        ]
    }


def test_face_of_term_examples():
    F = face_of_term(parse("02"), parse("012"))
    assert (F.L, F.A, F.B) == (parse("02"), 0, parse("1"))
    G = face_of_term(parse("012"), parse("012"))
    assert (G.L, G.A, G.B) == (parse("012"), 0, 0)


def test_face_term_bijection_on_four_simplex():
    ground = bits.full(4)
    seen = set()
    pairs = list(product(bits.nonempty_subsets(ground), repeat=2))
    for X, Y in pairs:
        F = face_of_term(X, Y)
        assert term_of_face(F) == (X, Y)
        assert F.L | F.A | F.B == X | Y
        seen.add(F)
    assert len(seen) == len(pairs)


def test_disjoint_term_is_a_vertex():
    F = face_of_term(parse("0"), parse("1"))
    assert F.L == 0 and F.A == parse("0")
