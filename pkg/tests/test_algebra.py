import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcomplex.algebra import (
    AlgebraError,
    FiniteBooleanAlgebra,
    Homomorphism,
    apply_connective,
    atoms,
    clopen_algebra,
    clopen_element,
    dual_map,
    extend_filter,
    finite_subcover,
    random_homomorphism,
    stone_dual,
    ultrafilters,
    verify_dual_map,
    verify_epsilon,
)
from cutcomplex.space import Finite, finite_points

algebras = st.integers(1, 5).map(FiniteBooleanAlgebra)


@st.composite
def elements(draw, n=3):
    A = draw(algebras)
    return A, [A.elements()[draw(st.integers(0, A.full))] for _ in range(n)]


@given(elements())
def test_lattice_axioms(args):
    A, (a, b, c) = args
    assert a & b == b & a and a | b == b | a
    assert (a & b) & c == a & (b & c)
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)
    assert a & (a | b) == a and a | (a & b) == a
    assert a & ~a == A.zero and a | ~a == A.one
    assert ~(a & b) == ~a | ~b
    assert (a <= b) == (a & b == a)


def test_connectives():
    A = FiniteBooleanAlgebra(3)
    a, b = A.element([0]), A.element([0, 1])
    assert apply_connective("meet", a, b) == a
    assert apply_connective("join", a, b) == b
    assert apply_connective("not", a) == A.element([1, 2])
    assert apply_connective("leq", a, b)
    with pytest.raises(AlgebraError):
        apply_connective("xor", a, b)
    with pytest.raises(AlgebraError):
        apply_connective("not", a, b)


def _brute_ultrafilters(A):
    # every subset of elements satisfying the ultrafilter axioms
    elems = A.elements()
    found = []
    for bits in range(1 << len(elems)):
        F = {e.mask for i, e in enumerate(elems) if bits >> i & 1}
        if 0 in F or A.full not in F:
            continue
        if any(a & b not in F for a in F for b in F):
            continue
        if any(b not in F for a in F for b in range(A.full + 1) if a | b == b):
            continue
        if all((m in F) != ((A.full & ~m) in F) for m in range(A.full + 1)):
            found.append(F)
    return found


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ultrafilters_match_brute_force(k):
    A = FiniteBooleanAlgebra(k)
    brute = _brute_ultrafilters(A)
    ours = [{a.mask for a in w.members()} for w in ultrafilters(A)]
    assert sorted(map(sorted, brute)) == sorted(map(sorted, ours))
    assert len(ours) == len(atoms(A)) == k


@given(elements(1))
def test_extend_filter_contains_generator(args):
    A, (a,) = args
    if a == A.zero:
        with pytest.raises(AlgebraError):
            extend_filter(A, a)
    else:
        assert a in extend_filter(A, a)


@given(algebras)
def test_eta_is_isomorphism(A):
    dual = stone_dual(A)
    images = {a.mask: dual.eta(a) for a in A.elements()}
    assert len(set(images.values())) == len(A)
    for a, b in itertools.product(A.elements(), repeat=2):
        assert dual.eta(a & b) == dual.eta(a) & dual.eta(b)
        assert dual.eta(a | b) == dual.eta(a) | dual.eta(b)
    assert dual.as_space() == Finite(A.atom_count)


@pytest.mark.parametrize("n", range(1, 7))
def test_epsilon_bijective(n):
    assert verify_epsilon(Finite(n))


def test_clopen_element_roundtrip():
    omega = clopen_algebra(Finite(4))
    assert clopen_element(omega, finite_points(4, [1, 3])) == omega.element([1, 3])


@given(st.integers(0, 2**32 - 1))
def test_random_homomorphisms_dualise(seed):
    rng = random.Random(seed)
    A = FiniteBooleanAlgebra(rng.randint(1, 4))
    B = FiniteBooleanAlgebra(rng.randint(1, 4))
    g = random_homomorphism(rng, A, B)
    assert g.preserves_structure()
    assert verify_dual_map(g)


@given(st.integers(0, 2**32 - 1))
def test_dual_map_is_contravariant(seed):
    rng = random.Random(seed)
    A, B, C = (FiniteBooleanAlgebra(rng.randint(1, 4)) for _ in range(3))
    g = random_homomorphism(rng, A, B)
    h = random_homomorphism(rng, B, C)
    gh = g.then(h)
    star_g, star_h, star_gh = dual_map(g), dual_map(h), dual_map(gh)
    for w in ultrafilters(C):
        assert star_gh[w] == star_g[star_h[w]]


def test_identity_dual_is_identity():
    A = FiniteBooleanAlgebra(4)
    star = dual_map(Homomorphism.identity(A))
    assert all(k == v for k, v in star.items())


def test_from_element_map_rejects_non_homomorphisms():
    A, B = FiniteBooleanAlgebra(2), FiniteBooleanAlgebra(2)
    g = Homomorphism(A, B, (1, 0))
    table = {m: g(A.elements()[m]).mask for m in range(4)}
    assert Homomorphism.from_element_map(A, B, table) == g
    table[3] = 1
    with pytest.raises(AlgebraError):
        Homomorphism.from_element_map(A, B, table)


def test_homomorphism_validation():
    A, B = FiniteBooleanAlgebra(2), FiniteBooleanAlgebra(3)
    with pytest.raises(AlgebraError):
        Homomorphism(A, B, (0, 1))
    with pytest.raises(AlgebraError):
        Homomorphism(A, B, (0, 1, 2))


def test_finite_subcover():
    A = FiniteBooleanAlgebra(4)
    family = [A.element([0, 1]), A.element([1, 2]), A.element([3]), A.element([2])]
    cover = finite_subcover(A, family)
    assert cover is not None and len(cover) <= 4
    assert all(any(a in w for a in cover) for w in ultrafilters(A))
    assert finite_subcover(A, [A.element([0, 1])]) is None


def test_empty_algebra_rejected():
    with pytest.raises(AlgebraError):
        FiniteBooleanAlgebra(0)
