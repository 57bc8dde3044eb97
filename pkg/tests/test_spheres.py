import itertools

import pytest

from cutcomplex.cuts import Cut, make_cut
from cutcomplex.space import Cantor, Convergent, Finite, Frame, Union, canonicalize, finite_points
from cutcomplex.spheres import (
    SphereError,
    build_exhaustion,
    check_exhaustion,
    interior_cuts,
    inverse_limit_check,
    is_interior,
    link_intersection_masks,
    make_sphere,
    quotient_space,
    recognize_sphere,
    restriction_map,
    sphere_components,
    triple_condition_check,
    verify_triangle,
)


def fp(n, pts):
    return finite_points(n, pts)


def test_make_sphere_counts():
    s = make_sphere(Finite(9), [fp(9, [0, 1, 2]), fp(9, [3, 4, 5])])
    assert (s.n, s.k) == (3, 2)
    assert len(s.pieces()) == 5


def test_make_sphere_errors():
    with pytest.raises(SphereError, match="overlap"):
        make_sphere(Finite(7), [fp(7, [0, 1, 2]), fp(7, [2, 3])])
    with pytest.raises(SphereError, match="peripheral"):
        make_sphere(Finite(7), [fp(7, [0])])
    with pytest.raises(SphereError, match="infinite"):
        make_sphere(Cantor(), [["00"]])
    with pytest.raises(SphereError):
        make_sphere(Cantor(), [])


def test_quotient_labels_and_projection():
    s = make_sphere(Finite(8), [fp(8, [0, 1, 2])])
    q = quotient_space(s)
    assert q.labels == ("U1", "3", "4", "5", "6", "7")
    assert q.space == Finite(6)
    assert q.project("0") == 0


def test_restriction_map_is_surjective():
    ex = build_exhaustion(Convergent(), 5)
    for inner, outer in zip(ex.spheres, ex.spheres[1:]):
        r = restriction_map(inner, outer)
        assert set(r) == set(range(len(inner.pieces())))
        assert verify_triangle(Convergent(), inner, outer)


def test_interior_cuts_are_interior():
    s = make_sphere(Finite(7), [fp(7, [0, 1])])
    cuts = interior_cuts(s)
    assert cuts
    assert all(is_interior(c, s) for c in cuts)
    assert not is_interior(s.boundary[0], s)


@pytest.mark.parametrize(
    "spec,levels,depths",
    [(Cantor(), 3, (3, 5)), (Cantor(), 5, (3, 5, 7)), (Convergent(), 5, (4, 7, 10))],
)
def test_exhaustion_depths(spec, levels, depths):
    ex = build_exhaustion(spec, levels)
    assert ex.depths == depths
    rep = check_exhaustion(ex, levels)
    assert rep.ok
    assert all(v >= 5 for row in rep.complexity for v in row)


def test_exhaustion_union():
    ex = build_exhaustion(Union(Cantor(), Cantor()), 3)
    assert check_exhaustion(ex, 3).ok


@pytest.mark.parametrize("spec,gran", [(Cantor(), 5), (Convergent(), 7)])
def test_inverse_limit(spec, gran):
    ex = build_exhaustion(spec, 5)
    rep = inverse_limit_check(ex, 5)
    assert rep.ok and rep.granularity == gran
    assert rep.threads == rep.classes


def test_inverse_limit_needs_depth():
    ex = build_exhaustion(Cantor(), 3)
    with pytest.raises(SphereError):
        inverse_limit_check(ex, 50)


@pytest.mark.parametrize(
    "spec,sides,depth,expected",
    [
        (Cantor(), [["00"], ["01"], ["10"], ["110"], ["111"]], 5, (0, 5, 2)),
        (Cantor(), [["00"], ["01"], ["10"], ["11"]], 4, (0, 4, 1)),
        (Union(Cantor(), Finite(3)), [["0"]], None, (3, 1, 1)),
        (Convergent(), [["1111"]], None, (4, 1, None)),
        (Finite(9), [[0, 1, 2], [3, 4, 5]], None, (3, 2, None)),
        (Finite(8), [[0, 1, 2]], None, (5, 1, None)),
    ],
)
def test_recognition_fixtures(spec, sides, depth, expected):
    if isinstance(spec, Finite):
        sides = [fp(spec.n, s) for s in sides]
    rec = recognize_sphere(spec, sides, depth)
    n, k, clique = expected
    assert rec.is_sphere and (rec.n, rec.k) == (n, k)
    assert rec.components == k + 1
    if clique is not None:
        assert rec.clique == clique
    # n + k - 4 is the dimension of the interior simplices
    assert rec.n + rec.k - 4 == rec.clique - 1


@pytest.mark.parametrize(
    "spec,sides",
    [
        (Cantor(), [["0"], ["10"], ["11"]]),
        (Cantor(), [["0"], ["1"]]),
        (Finite(7), [[0, 1], [2, 3]]),
    ],
)
def test_non_spheres(spec, sides):
    if isinstance(spec, Finite):
        sides = [fp(spec.n, s) for s in sides]
    assert not recognize_sphere(spec, sides).is_sphere


@pytest.mark.parametrize("n", [7, 8, 9])
def test_component_bound_on_finite_spheres(n):
    for k in (1, 2, 3):
        for sizes in itertools.product(range(2, 5), repeat=k):
            if sum(sizes) > n or any(n - s < 2 for s in sizes):
                continue
            sides, start = [], 0
            for s in sizes:
                sides.append(fp(n, range(start, start + s)))
                start += s
            _, _, comps = sphere_components(Finite(n), sides)
            assert len(comps) <= k + 1


def test_brute_and_structural_agree():
    sides = [canonicalize(Cantor(), [s]) for s in ("00", "01", "10", "11")]
    frame = Frame(Cantor(), 4)
    brute = sorted(link_intersection_masks(frame, sides, "brute"))
    structural = sorted(link_intersection_masks(frame, sides, "structural"))
    assert brute == structural


def test_triple_condition():
    n = 6
    cuts = [make_cut(Finite(n), fp(n, s).strings) for s in ([0, 1], [2, 3], [4, 5])]
    rep = triple_condition_check(cuts)
    assert rep.triangle and not rep.triple_nonempty and not rep.hypothesis and rep.holds
    cuts7 = [make_cut(Finite(7), fp(7, s).strings) for s in ([0, 1], [2, 3], [4, 5])]
    rep7 = triple_condition_check(cuts7)
    assert rep7.triangle and rep7.triple_nonempty and rep7.holds
    cantor = [Cut.from_side(canonicalize(Cantor(), [s])) for s in ("00", "01", "10")]
    repc = triple_condition_check(cantor)
    assert repc.triangle and repc.triple_nonempty and repc.components == 4 and repc.holds
