import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutcomplex.cuts import CutError, complex_graph
from cutcomplex.systems import (
    FIXTURES,
    StoneSpaceSystem,
    SystemError_,
    cone,
    cone_vertices,
    induced_map,
    is_system_homeo,
    pair_experiment,
    run_fixture,
    strong7,
    strong_complex,
    system_homeo_order,
    system_homeos,
    weak5,
    weak_complex,
)


def brute_partitions(n, keep):
    # unordered bipartitions {A, B} with both parts nonempty, filtered by ``keep``
    out = set()
    pts = range(n)
    for r in range(1, n):
        for a in itertools.combinations(pts, r):
            b = tuple(i for i in pts if i not in a)
            if keep(set(a)) and keep(set(b)):
                out.add(min(a, b))
    return out


def test_strong7_vertex_count_oracle():
    e3 = {0, 1, 2, 3, 4}
    assert len(brute_partitions(7, lambda s: len(s & e3) >= 2)) == 40
    assert len(strong_complex(strong7())) == 40


def test_weak5_vertices():
    sys = weak5()
    e2 = {0, 1}
    oracle = brute_partitions(5, lambda s: len(s) >= 2 or bool(s & e2))
    g = weak_complex(sys)
    assert len(g) == len(oracle) == 12
    assert len(cone_vertices(g)) == 2


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_pass(name):
    rep = run_fixture(name)
    assert rep.ok, rep.checks


def test_unknown_fixture():
    with pytest.raises(SystemError_):
        run_fixture("weak6")


@pytest.mark.parametrize("n", [5, 6])
def test_cone_counts(n):
    rep = run_fixture(f"cone{n}")
    assert rep.details["aut_order"] == math.factorial(n)
    assert rep.details["system_homeo_order"] == math.factorial(n - 1)
    g = weak_complex(cone(n))
    assert len(g) == len(complex_graph(cone(n).spec)) + 1


def test_is_system_homeo_examples():
    sys = strong7()
    assert is_system_homeo(tuple(range(7)), sys)
    assert not is_system_homeo((0, 1, 2, 3, 4, 6, 5), sys)
    assert is_system_homeo((1, 0, 2, 3, 4, 5, 6), sys)
    with pytest.raises(SystemError_):
        is_system_homeo((0, 0, 1, 2, 3, 4, 5), sys)


nested = st.integers(4, 7).flatmap(
    lambda n: st.lists(st.integers(1, n - 1), min_size=1, max_size=3, unique=True).map(
        lambda sizes: StoneSpaceSystem.of(n, *[range(s) for s in sorted(sizes, reverse=True)])
    )
)


@given(nested)
def test_homeo_order_formula(sys):
    assert len(system_homeos(sys)) == system_homeo_order(sys)


@given(nested)
def test_vertex_nesting(sys):
    full = (1 << sys.n) - 1

    def norm(g):
        return {min(m, full & ~m) for m in g.masks}

    plain = norm(complex_graph(sys.spec)) if sys.n >= 4 and len(complex_graph(sys.spec)) else set()
    weak = norm(weak_complex(sys))
    assert plain <= weak
    try:
        strong = norm(strong_complex(sys))
    except CutError:
        strong = set()
    assert strong <= plain


@given(nested)
def test_system_homeos_induce_automorphisms(sys):
    g = weak_complex(sys)
    for p in system_homeos(sys):
        phi = induced_map(p, g)
        assert phi is not None and phi.is_valid()


def test_system_validation():
    with pytest.raises(SystemError_):
        StoneSpaceSystem(3, (frozenset({0, 1, 2}),))
    with pytest.raises(SystemError_):
        StoneSpaceSystem.of(4, [0, 1], [0, 1])
    with pytest.raises(SystemError_):
        StoneSpaceSystem.of(4, [0, 1], [2])


def test_json_descriptor():
    sys = StoneSpaceSystem.from_json('{"n":7,"nested":[[0,1,2,3,4,5],[0,1,2,3,4]]}')
    assert sys == strong7()
    assert sys.to_dict() == {"n": 7, "nested": [[0, 1, 2, 3, 4, 5], [0, 1, 2, 3, 4]]}
    with pytest.raises(SystemError_):
        StoneSpaceSystem.from_json('{"n":3,"nested":[[5]]}')


def test_pair_experiment_reports_without_asserting():
    out = pair_experiment(StoneSpaceSystem.of(6, [0, 1, 2, 3]))
    assert set(out) == {"system", "strong_vertices", "strong_aut_order", "system_homeo_order"}
    assert out["system_homeo_order"] == 48
