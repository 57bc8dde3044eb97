import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcomplex.space import (
    INFINITE,
    Cantor,
    Convergent,
    Finite,
    Frame,
    PrefixMap,
    SpaceError,
    Subspace,
    Union,
    apply_prefix_map,
    canonicalize,
    count_cylinder,
    exactly,
    finite_point_address,
    finite_points,
    points_at_depth,
)

binary = st.text(alphabet="01", max_size=7)


# independent oracles: each point as a long prefix of its infinite string


def finite_points_oracle(n, length=12):
    return [("1" * i + "0" * length)[:length] for i in range(n)]


def count_oracle(points, s):
    return sum(1 for p in points if p.startswith(s))


def members(u, n):
    pts = finite_points_oracle(n)
    return {i for i, p in enumerate(pts) if any(p.startswith(s) for s in u.strings)}


@given(st.integers(1, 8), binary)
def test_finite_counts_match_point_oracle(n, s):
    assert count_cylinder(Finite(n), s) == exactly(count_oracle(finite_points_oracle(n), s))


@given(binary)
def test_convergent_counts(s):
    c = count_cylinder(Convergent(), s)
    if set(s) <= {"1"}:
        assert c == INFINITE
    else:
        # points 1^k 0^ω with k < 20 cover every cylinder of length < 20
        assert c == exactly(count_oracle(finite_points_oracle(20, 30), s))


@given(binary)
def test_cantor_counts_are_infinite(s):
    assert count_cylinder(Cantor(), s) == INFINITE


@given(st.integers(1, 5), st.integers(1, 5), binary)
def test_union_counts_split_by_first_bit(a, b, s):
    spec = Union(Finite(a), Finite(b))
    if not s:
        assert count_cylinder(spec, s) == exactly(a + b)
    else:
        side = Finite(a) if s[0] == "0" else Finite(b)
        assert count_cylinder(spec, s) == count_cylinder(side, s[1:])


def test_subspace_counts_only_window_points():
    spec = Subspace(Finite(6), ("0", "10"))
    assert spec.size == exactly(2)
    assert Subspace(Convergent(), ("111",)).size == INFINITE


def test_points_at_depth_uses_canonical_strings():
    assert [s for s, _ in points_at_depth(Finite(3), 3)] == ["0", "10", "11"]


@given(st.integers(1, 8), st.data())
def test_finite_point_addresses_isolate(n, data):
    i = data.draw(st.integers(0, n - 1))
    u = canonicalize(Finite(n), [finite_point_address(n, i)])
    assert members(u, n) == {i}
    assert u.count() == exactly(1)


point_sets = st.integers(2, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, n - 1)), st.sets(st.integers(0, n - 1)))
)


@given(point_sets)
def test_clopen_boolean_ops_match_sets(args):
    n, a, b = args
    u, v = finite_points(n, a), finite_points(n, b)
    assert members(u & v, n) == a & b
    assert members(u | v, n) == a | b
    assert members(u.complement(), n) == set(range(n)) - a
    assert members(u - v, n) == a - b
    assert u.issubset(v) == (a <= b)
    assert (u & v).count() == exactly(len(a & b))


def _refine(strings, rng_bits):
    # split each string into both children: same set, different description
    out = []
    for s, bit in zip(strings, rng_bits):
        out += [s + "0", s + "1"] if bit else [s]
    return out


@given(st.lists(binary, max_size=6), st.lists(st.booleans(), min_size=6, max_size=6))
def test_canonical_form_is_unique(strings, bits):
    for spec in (Cantor(), Convergent(), Finite(5)):
        assert canonicalize(spec, strings) == canonicalize(spec, _refine(strings, bits))


@given(st.lists(binary, max_size=5), st.lists(binary, max_size=5))
def test_cantor_ops_match_truncated_oracle(a, b):
    depth = 8
    words = ["".join(t) for t in itertools.product("01", repeat=depth)]

    def cover(strings):
        return {w for w in words if any(w.startswith(s) for s in strings)}

    u, v = canonicalize(Cantor(), a), canonicalize(Cantor(), b)
    assert cover((u & v).strings) == cover(a) & cover(b)
    assert cover((u | v).strings) == cover(a) | cover(b)
    assert cover(u.complement().strings) == set(words) - cover(a)


@given(st.lists(binary, max_size=5))
def test_complement_is_involution(strings):
    for spec in (Cantor(), Convergent(), Union(Cantor(), Finite(3))):
        u = canonicalize(spec, strings)
        assert u.complement().complement() == u
        assert (u | u.complement()) == spec.whole()
        assert (u & u.complement()).is_empty()


def test_canonical_examples():
    assert canonicalize(Cantor(), ["0", "1"]).strings == ("",)
    assert canonicalize(Finite(3), ["11"]).strings == ("11",)
    assert canonicalize(Finite(2), ["0", "1"]).strings == ("",)
    with pytest.raises(SpaceError):
        canonicalize(Cantor(), ["012"])


@given(st.sampled_from([Cantor(), Convergent(), Finite(6), Union(Convergent(), Finite(2))]), st.integers(0, 4), st.data())
def test_frame_mask_roundtrip(spec, depth, data):
    frame = Frame(spec, depth)
    m = data.draw(st.integers(0, frame.full))
    assert frame.mask_of(frame.clopen(m)) == m
    assert frame.count(m) == frame.clopen(m).count()


def test_frame_finite_puts_point_i_at_bit_i():
    frame = Frame.finite(5)
    for i in range(5):
        assert frame.mask_of(finite_points(5, [i])) == 1 << i


def test_prefix_map_roundtrip():
    h = PrefixMap.from_pairs([("0", "10"), ("10", "110"), ("110", "0"), ("111", "111")])
    u = canonicalize(Convergent(), ["0", "110"])
    v = apply_prefix_map(h, u)
    assert apply_prefix_map(h.inverse(), v) == u
    assert v.count() == u.count()


def test_prefix_map_rejects_incomplete_code():
    with pytest.raises(SpaceError):
        PrefixMap.from_pairs([("0", "0"), ("10", "1")])


def test_prefix_map_must_preserve_space():
    h = PrefixMap.from_pairs([("0", "1"), ("1", "0")])
    with pytest.raises(SpaceError):
        apply_prefix_map(h, canonicalize(Convergent(), ["0"]))
    swapped = apply_prefix_map(h, canonicalize(Cantor(), ["01"]))
    assert swapped.strings == ("11",)


def test_invalid_specs():
    with pytest.raises(SpaceError):
        Finite(0)
    with pytest.raises(SpaceError):
        Subspace(Finite(2), ("111",))
