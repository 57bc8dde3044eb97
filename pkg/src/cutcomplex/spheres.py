"""Spheres, principal spherical exhaustions, quotients and sphere recognition.

A sphere is given by pairwise disjoint *outer sides* ``U_1..U_k``; the
boundary cuts are ``U_i | V_i`` and the punctures are the finitely many
points of ``V_1 ∩ … ∩ V_k``.  Collapsing every outer side to a point gives
the finite quotient ``S̄ = Finite(n + k)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import bitvec, graphs
from .cuts import Cut, CutError, CutGraph, compatible, is_nonperipheral, masks_cross
from .space import (
    ClopenSet,
    Finite,
    Frame,
    SpaceSpec,
    canonicalize,
    count_cylinder,
    exactly,
    finite_point_address,
    points_at_depth,
)

__all__ = [
    "SphereError",
    "Sphere",
    "Quotient",
    "Exhaustion",
    "ExhaustionReport",
    "Recognition",
    "TripleReport",
    "make_sphere",
    "is_interior",
    "interior_cuts",
    "quotient_space",
    "restriction_map",
    "verify_triangle",
    "build_exhaustion",
    "check_exhaustion",
    "inverse_limit_check",
    "link_intersection_masks",
    "sphere_components",
    "recognize_sphere",
    "orient_family",
    "triple_condition_check",
]


class SphereError(CutError):
    pass


def _as_clopen(spec: SpaceSpec, side) -> ClopenSet:
    if isinstance(side, ClopenSet):
        if side.space != spec:
            raise SphereError("side from a different space")
        return side
    return canonicalize(spec, list(side))


def _split_points(spec: SpaceSpec, strings: Sequence[str]) -> list[str]:
    """Isolating strings of the points of a finite clopen set."""
    out = []
    stack = list(strings)
    while stack:
        s = stack.pop()
        c = count_cylinder(spec, s)
        if c.is_zero:
            continue
        if c == exactly(1):
            out.append(s)
        elif c.infinite:
            raise SphereError("residual set is infinite")
        else:
            stack += [s + "0", s + "1"]
    return sorted(out)


class _PrefixIndex:
    """Locate the piece containing a cylinder among pairwise disjoint antichains."""

    def __init__(self, pieces: Sequence[ClopenSet]):
        self.owner: dict[str, int] = {}
        for i, p in enumerate(pieces):
            for s in p.strings:
                self.owner[s] = i

    def find(self, s: str) -> int | None:
        for i in range(len(s) + 1):
            hit = self.owner.get(s[:i])
            if hit is not None:
                return hit
        return None

    def overlaps(self, s: str) -> bool:
        """Some piece string is a prefix of, or extends, ``s``."""
        if self.find(s) is not None:
            return True
        return any(t.startswith(s) for t in self.owner)


@dataclass(frozen=True, eq=False)
class Sphere:
    spec: SpaceSpec
    outer: tuple[ClopenSet, ...]
    boundary: tuple[Cut, ...]
    punctures: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.outer)

    @property
    def n(self) -> int:
        return len(self.punctures)

    @property
    def depth(self) -> int:
        return max([u.depth for u in self.outer] + [len(p) for p in self.punctures])

    def pieces(self) -> list[ClopenSet]:
        """Outer sides first, then one singleton per puncture."""
        return list(self.outer) + [canonicalize(self.spec, [p]) for p in self.punctures]

    def __repr__(self) -> str:
        sides = [list(u.strings) for u in self.outer]
        return f"Sphere(n={self.n}, k={self.k}, sides={sides})"


def make_sphere(spec: SpaceSpec, sides: Sequence) -> Sphere:
    """Build a sphere from its outer sides, naming the first violated condition."""
    if not sides:
        raise SphereError("a sphere needs at least one boundary component")
    outer = tuple(_as_clopen(spec, s) for s in sides)
    owner: dict[str, int] = {}
    for i, u in enumerate(outer):
        if u.is_empty():
            raise SphereError(f"outer side {i} is empty")
        for s in u.strings:
            owner[s] = i
    for i, j in itertools.combinations(range(len(outer)), 2):
        if not outer[i].isdisjoint(outer[j]):
            raise SphereError(f"outer sides {i} and {j} overlap")
    boundary = []
    for i, u in enumerate(outer):
        if u.complement().is_empty():
            raise SphereError(f"outer side {i} is the whole space")
        c = Cut.from_side(u)
        if not is_nonperipheral(c):
            raise SphereError(f"boundary cut {i} is peripheral")
        boundary.append(c)
    everything = canonicalize(spec, list(owner))
    residual = everything.complement()
    if residual.count().infinite:
        raise SphereError("residual set V_1 ∩ … ∩ V_k is infinite")
    return Sphere(spec, outer, tuple(boundary), tuple(_split_points(spec, residual.strings)))


def _splits(side: ClopenSet, u: ClopenSet) -> bool:
    return not (side & u).is_empty() and not (u - side).is_empty()


def is_interior(gamma: Cut, sphere: Sphere) -> bool:
    """``γ`` differs from every boundary cut and splits no outer side."""
    if gamma.space != sphere.spec:
        raise SphereError("cut from a different space")
    if gamma in sphere.boundary:
        return False
    return not any(_splits(gamma.first, u) for u in sphere.outer)


def interior_cuts(sphere: Sphere) -> list[Cut]:
    """Interior cuts, one per non-peripheral cut of the quotient."""
    pieces = sphere.pieces()
    m = len(pieces)
    out = []
    for r in range(1, 1 << (m - 1)):
        idx = [i for i in range(m) if r >> i & 1]
        rest = [i for i in range(m) if not r >> i & 1]
        if len(idx) >= 2 and len(rest) >= 2:
            side = canonicalize(sphere.spec, [s for i in idx for s in pieces[i].strings])
            out.append(Cut.from_side(side))
    return out


@dataclass(frozen=True, eq=False)
class Quotient:
    """``S̄``: point ``i`` is ``pieces[i]`` collapsed; ``labels`` name them."""

    sphere: Sphere
    labels: tuple[str, ...]
    pieces: tuple[ClopenSet, ...]
    _index: _PrefixIndex = field(repr=False)

    @property
    def space(self) -> Finite:
        return Finite(len(self.pieces))

    def cover(self, s: str) -> set[int]:
        """Pieces meeting the cylinder ``[s]``."""
        hit = self._index.find(s)
        if hit is not None:
            return {hit}
        return {i for t, i in self._index.owner.items() if t.startswith(s)}

    def project(self, s: str) -> int:
        """Quotient point of the cylinder ``[s]``, which must lie in one piece."""
        hit = self._index.find(s)
        if hit is not None:
            return hit
        inside = {i for t, i in self._index.owner.items() if t.startswith(s)}
        total = exactly(0)
        for t, i in self._index.owner.items():
            if t.startswith(s):
                total = total + count_cylinder(self.sphere.spec, t)
        if len(inside) == 1 and total == count_cylinder(self.sphere.spec, s):
            return inside.pop()
        raise SphereError(f"cylinder {s!r} is not inside a single piece")


def quotient_space(sphere: Sphere) -> Quotient:
    pieces = sphere.pieces()
    labels = [f"U{i + 1}" for i in range(sphere.k)]
    if isinstance(sphere.spec, Finite):
        addr = {finite_point_address(sphere.spec.n, i): str(i) for i in range(sphere.spec.n)}
        labels += [addr[p] for p in sphere.punctures]
    else:
        labels += list(sphere.punctures)
    return Quotient(sphere, tuple(labels), tuple(pieces), _PrefixIndex(pieces))


def restriction_map(inner: Sphere, outer: Sphere) -> tuple[int, ...]:
    """``S̄_{i+1} → S̄_i``: each piece of ``outer`` goes to the piece of ``inner`` containing it."""
    if inner.spec != outer.spec:
        raise SphereError("spheres over different spaces")
    qi = quotient_space(inner)
    out = []
    for j, piece in enumerate(outer.pieces()):
        targets = set()
        for s in piece.strings:
            try:
                targets.add(qi.project(s))
            except SphereError:
                raise SphereError(f"piece {j} of the larger sphere is not nested in the smaller") from None
        if len(targets) != 1:
            raise SphereError(f"piece {j} of the larger sphere straddles several pieces")
        out.append(targets.pop())
    return tuple(out)


def verify_triangle(spec: SpaceSpec, inner: Sphere, outer: Sphere, depth: int | None = None) -> bool:
    """``E → S̄_i`` equals ``E → S̄_{i+1} → S̄_i`` on every depth class."""
    depth = max(depth or 0, inner.depth, outer.depth)
    r = restriction_map(inner, outer)
    qi, qo = quotient_space(inner), quotient_space(outer)
    for s, _ in points_at_depth(spec, depth):
        if qi.project(s) != r[qo.project(s)]:
            return False
    return True


@dataclass(frozen=True, eq=False)
class Exhaustion:
    spec: SpaceSpec
    spheres: tuple[Sphere, ...]
    depths: tuple[int, ...]
    target_depth: int

    def __len__(self) -> int:
        return len(self.spheres)


def _pieces_at(spec: SpaceSpec, depth: int, within: str = "") -> tuple[list[str], list[str]]:
    """Infinite classes and isolated points of ``[within]`` at ``depth``."""
    infinite, points = [], []
    for s, c in points_at_depth(spec, depth):
        if not s.startswith(within) and not within.startswith(s):
            continue
        if not s.startswith(within):
            # an isolated point named by a string shorter than ``within``
            points.append(s)
        elif c.infinite:
            infinite.append(s)
        else:
            points += _split_points(spec, [s])
    return infinite, points


def build_exhaustion(spec: SpaceSpec, levels: int, max_step: int = 64) -> Exhaustion:
    """Spheres on cylinder classes, deepening until every outer side splits into ≥ 4 pieces.

    Outer sides of ``S_i`` are the infinite depth-``D_i`` classes; isolated
    points above them are punctures.  Levels are added until ``D_m ≥ levels``
    and then one more, so every cut of depth ``≤ levels`` is interior to a
    sphere.
    """
    if spec.is_finite:
        raise SphereError("exhaustions are only built for infinite spaces")
    if levels < 1:
        raise SphereError("levels must be positive")
    d = 0
    while True:
        inf, pts = _pieces_at(spec, d)
        if inf and len(inf) + len(pts) >= 5:
            break
        d += 1
        if d > max_step:
            raise SphereError("no depth gives a first sphere with n + k >= 5")
    depths = [d]
    spheres = [make_sphere(spec, [[s] for s in inf])]
    extra = 0
    while depths[-1] < levels or extra < 1:
        if depths[-1] >= levels:
            extra += 1
        prev = spheres[-1]
        for nd in range(depths[-1] + 1, depths[-1] + max_step + 1):
            ok = True
            for u in prev.outer:
                i, p = _pieces_at(spec, nd, u.strings[0])
                if not i or len(i) + len(p) < 4:
                    ok = False
                    break
            if ok:
                break
        else:
            raise SphereError(f"outer sides at depth {depths[-1]} never split into 4 pieces")
        inf, _ = _pieces_at(spec, nd)
        depths.append(nd)
        spheres.append(make_sphere(spec, [[s] for s in inf]))
    return Exhaustion(spec, tuple(spheres), tuple(depths), levels)


@dataclass(frozen=True)
class ExhaustionReport:
    increasing: bool
    complexity: list[list[int]]
    complexity_ok: bool
    infinite_complement: bool
    exhaustion_depth: int
    exhaustion_ok: bool
    exhaustion_method: str
    triangles_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.increasing
            and self.complexity_ok
            and self.infinite_complement
            and self.exhaustion_ok
            and self.triangles_ok
        )

    def to_dict(self) -> dict:
        return {
            "increasing": self.increasing,
            "complexity": self.complexity,
            "complexity_ok": self.complexity_ok,
            "infinite_complement": self.infinite_complement,
            "exhaustion_depth": self.exhaustion_depth,
            "exhaustion_ok": self.exhaustion_ok,
            "exhaustion_method": self.exhaustion_method,
            "triangles_ok": self.triangles_ok,
            "ok": self.ok,
        }


def _inter_complexity(inner: Sphere, outer: Sphere) -> list[int]:
    """``n + k`` of the sphere cut out of each outer side of ``inner`` by ``outer``."""
    r = restriction_map(inner, outer)
    out = []
    for j in range(inner.k):
        out.append(1 + sum(1 for t in r if t == j))
    return out


def _interior_mask(m: int, us: Sequence[int], full: int) -> bool:
    for u in us:
        if m & u and u & ~m:
            return False
        if m == u or m == full & ~u:
            return False
    return True


def check_exhaustion(ex: Exhaustion, depth: int | None = None) -> ExhaustionReport:
    """Recheck all four defining properties; (Exhaustion) up to ``depth``."""
    depth = ex.target_depth if depth is None else depth
    spheres = ex.spheres
    increasing = all(
        is_interior(c, spheres[i + 1]) for i in range(len(spheres) - 1) for c in spheres[i].boundary
    )
    complexity = [[spheres[0].n + spheres[0].k]]
    complexity += [_inter_complexity(spheres[i], spheres[i + 1]) for i in range(len(spheres) - 1)]
    complexity_ok = all(v >= 5 for row in complexity for v in row)
    infinite = all(u.count().infinite for s in spheres for u in s.outer)
    frame = Frame(ex.spec, depth)
    if frame.size <= 16:
        method = "enumeration"
        tests = []
        for s in spheres:
            big = Frame(ex.spec, max(depth, s.depth))
            table = bitvec.refinement(frame, big)
            us = _side_masks(big, s.outer)
            tests.append((table, us, big.full))
        exhausted = all(
            any(_interior_mask(bitvec.lift(m, table), us, full) for table, us, full in tests)
            for m in frame.cut_masks()
        )
    else:
        method = "refinement"
        exhausted = False
        # outer sides inside single depth classes: depth cuts split none of them
        for i, s in enumerate(spheres[:-1]):
            if all(u.depth >= depth and len(u.strings) == 1 for u in s.outer):
                exhausted = True
                break
    triangles = all(verify_triangle(ex.spec, spheres[i], spheres[i + 1]) for i in range(len(spheres) - 1))
    return ExhaustionReport(
        increasing=increasing,
        complexity=complexity,
        complexity_ok=complexity_ok,
        infinite_complement=infinite,
        exhaustion_depth=depth,
        exhaustion_ok=exhausted,
        exhaustion_method=method,
        triangles_ok=triangles,
    )


@dataclass(frozen=True)
class InverseLimitReport:
    granularity: int
    levels_used: int
    threads: int
    classes: int
    bijective: bool
    separates: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.separates


def inverse_limit_check(ex: Exhaustion, depth: int) -> InverseLimitReport:
    """Threads through ``S̄_1 ← … ← S̄_m`` against the point classes of E.

    ``m`` is the first level with ``D_m ≥ depth``.  Threads must biject with
    the depth-``D_m`` classes, and distinct depth-``depth`` classes must get
    distinct threads.
    """
    m = next((i for i, d in enumerate(ex.depths) if d >= depth), None)
    if m is None:
        raise SphereError(f"exhaustion does not reach depth {depth}")
    spheres = ex.spheres[: m + 1]
    quotients = [quotient_space(s) for s in spheres]
    maps = [restriction_map(spheres[i], spheres[i + 1]) for i in range(m)]
    threads: list[tuple[int, ...]] = [(x,) for x in range(len(quotients[0].pieces))]
    for i, r in enumerate(maps):
        threads = [t + (y,) for t in threads for y in range(len(r)) if r[y] == t[-1]]
    thread_set = set(threads)
    gran = ex.depths[m]
    hit: dict[tuple, str] = {}
    bijective = True
    for s, _ in points_at_depth(ex.spec, gran):
        t = tuple(q.project(s) for q in quotients)
        if t not in thread_set or t in hit:
            bijective = False
        hit[t] = s
    bijective = bijective and len(hit) == len(thread_set)
    coarse: dict[str, set] = {}
    for t, s in hit.items():
        key = next(c for c, _ in points_at_depth(ex.spec, depth) if s.startswith(c) or c.startswith(s))
        coarse.setdefault(key, set()).add(t)
    separates = all(a.isdisjoint(b) for a, b in itertools.combinations(coarse.values(), 2))
    return InverseLimitReport(gran, m + 1, len(thread_set), len(hit), bijective, separates)


# ---------------------------------------------------------------- recognition


def _side_masks(frame: Frame, sides: Sequence[ClopenSet]) -> list[int]:
    return [frame.mask_of(u) for u in sides]


def link_intersection_masks(frame: Frame, sides: Sequence[ClopenSet], method: str = "auto") -> list[int]:
    """Side masks (top class clear) of cuts compatible with every ``U_i | V_i``.

    ``method="brute"`` tests every cut of the frame; ``"structural"`` lists
    only region unions and proper subsets of a single outer side, which is
    exactly the link intersection when the sides are pairwise disjoint.
    """
    full = frame.full
    us = _side_masks(frame, sides)
    top = 1 << (frame.size - 1)
    gammas = {u if not u & top else full & ~u for u in us}
    if method == "auto":
        method = "brute" if frame.size <= 20 else "structural"
    if method == "brute":
        allm = bitvec.all_cut_masks(frame)
        dt = allm.dtype.type
        keep = np.ones(len(allm), dtype=bool)
        for u in us:
            keep &= ~bitvec.cross(allm, dt(u), dt(full))
        out = {int(m) for m in allm[keep]}
    elif method == "structural":
        out = set()
        rest = full
        for u in us:
            rest &= ~u
        regions = us + [1 << i for i in graphs.bits(rest)]
        for r in range(1, 1 << len(regions)):
            m = 0
            for i in range(len(regions)):
                if r >> i & 1:
                    m |= regions[i]
            if m != full:
                out.add(m)
        for u in us:
            sub = u
            while sub:
                sub = (sub - 1) & u
                if sub:
                    out.add(sub)
        out = {m if not m & top else full & ~m for m in out}
        out = {m for m in out if frame.nonperipheral(m)}
    else:
        raise SphereError(f"unknown method {method!r}")
    return sorted(out - gammas)


def _atomic(frame: Frame, m: int) -> bool:
    """One side is a single infinite class: an artifact of the depth cut-off."""
    for side in (m, frame.full & ~m):
        if graphs.popcount(side) == 1 and frame.counts[side.bit_length() - 1].infinite:
            return True
    return False


def _opposite_components(masks: Sequence[int], full: int) -> list[list[int]]:
    adj = []
    for i, a in enumerate(masks):
        row = 0
        for j, b in enumerate(masks):
            if i != j and masks_cross(a, b, full):
                row |= 1 << j
        adj.append(row)
    return graphs.components(adj)


def _frame_for_family(spec: SpaceSpec, sides: Sequence[ClopenSet], depth: int | None) -> Frame:
    if isinstance(spec, Finite):
        return Frame.finite(spec.n)
    need = max(u.depth for u in sides) + 2
    residual = canonicalize(spec, [t for u in sides for t in u.strings]).complement()
    if not residual.count().infinite:
        need = max([need] + [len(p) for p in _split_points(spec, residual.strings)])
    if depth is None:
        depth = need
    if depth < need:
        raise SphereError(f"depth {depth} is too shallow; sides need depth >= {need}")
    return Frame(spec, depth)


def sphere_components(
    spec: SpaceSpec, sides: Sequence, depth: int | None = None, method: str = "auto"
) -> tuple[Frame, list[int], list[list[int]]]:
    """Frame, link-intersection masks and opposite-graph components (index lists)."""
    sides = [_as_clopen(spec, s) for s in sides]
    frame = _frame_for_family(spec, sides, depth)
    masks = link_intersection_masks(frame, sides, method)
    if not isinstance(spec, Finite):
        masks = [m for m in masks if not _atomic(frame, m)]
    return frame, masks, _opposite_components(masks, frame.full)


@dataclass(frozen=True)
class Recognition:
    """Verdict of :func:`recognize_sphere`; ``failed`` names the broken condition."""

    is_sphere: bool
    n: int | None
    k: int
    depth: int
    components: int
    clique: int | None = None
    failed: str | None = None

    def to_dict(self) -> dict:
        return {
            "is_sphere": self.is_sphere,
            "n": self.n,
            "k": self.k,
            "depth": self.depth,
            "components": self.components,
            "clique": self.clique,
            "failed": self.failed,
        }


def _adjacency_witness(frame: Frame, gms: Sequence[int], i: int, j: int, regions: Sequence[int]) -> bool:
    full = frame.full
    if frame.size <= 16:
        allm = bitvec.all_cut_masks(frame)
        dt = allm.dtype.type
        hits = [bitvec.cross(allm, dt(g), dt(full)) for g in gms]
        good = hits[i] & hits[j]
        for t, h in enumerate(hits):
            if t not in (i, j):
                good &= ~h
        return bool(good.any())
    # halves of regions: out / lower half / all, for every region
    options = []
    for r in regions:
        bs = list(graphs.bits(r))
        half = sum(1 << b for b in bs[: len(bs) // 2]) if len(bs) > 1 else None
        options.append([0, r] + ([half] if half else []))
    for choice in itertools.product(*options):
        m = 0
        for c in choice:
            m |= c
        if m in (0, full) or not frame.nonperipheral(m):
            continue
        crossed = [t for t, g in enumerate(gms) if masks_cross(m, g, full)]
        if crossed == sorted((i, j)):
            return True
    return False


def _max_clique_compat(masks: Sequence[int], full: int) -> int:
    adj = []
    for a_i, a in enumerate(masks):
        row = 0
        for b_i, b in enumerate(masks):
            if a_i != b_i and not masks_cross(a, b, full):
                row |= 1 << b_i
        adj.append(row)
    return graphs.max_clique_size(adj)


def _resolved_below(m: int, blocks: list[int]) -> bool:
    return all(m & b in (0, b) for b in blocks)


def recognize_sphere(spec: SpaceSpec, sides: Sequence, depth: int | None = None, g: CutGraph | None = None) -> Recognition:
    """Read ``(n, k)`` off graph data for a pairwise compatible family.

    Conditions: complete adjacency graph; ``(∩ L(γ_i))^⊥`` with ``k + 1``
    components, exactly one finite; for ``k > 1`` every side infinite.  On
    infinite spaces "finite component" means no member needs a
    depth-``depth`` string; on finite spaces the interior component is
    located by set arithmetic instead.
    """
    sides = [_as_clopen(spec, s) for s in sides]
    k = len(sides)
    cuts = [Cut.from_side(u) for u in sides]
    for a, b in itertools.combinations(cuts, 2):
        if not compatible(a, b):
            raise SphereError("family is not pairwise compatible")
    frame = _frame_for_family(spec, sides, depth)
    finite_space = isinstance(spec, Finite)
    if g is not None:
        if g.frame.spec != spec:
            raise SphereError("graph over a different space")
        common = (1 << len(g)) - 1
        for c in cuts:
            common &= g.adj[g.index(c)]
        masks = [frame.mask_of(g.vertices[i].first) for i in graphs.bits(common)]
        if not finite_space:
            masks = [m for m in masks if not _atomic(frame, m)]
        comps = _opposite_components(masks, frame.full)
    else:
        frame, masks, comps = sphere_components(spec, sides, frame.depth)
    ncomp = len(comps)

    def verdict(ok: bool, failed: str | None = None, n=None, clique=None) -> Recognition:
        return Recognition(ok, n, k, frame.depth, ncomp, clique, failed)

    gms = _side_masks(frame, sides)
    rest = frame.full
    for u in gms:
        rest &= ~u
    regions = gms + [1 << b for b in graphs.bits(rest)]
    for i, j in itertools.combinations(range(k), 2):
        if not _adjacency_witness(frame, gms, i, j, regions):
            return verdict(False, "adjacency")
    if k > 1 and not all(s.count().infinite for c in cuts for s in c.sides):
        if not finite_space:
            return verdict(False, "infinite sides")
    if ncomp != k + 1:
        return verdict(False, "components")
    if finite_space:
        region_union = [
            ci for ci, comp in enumerate(comps)
            if any(not any(masks[v] & u and masks[v] & u != u for u in gms) for v in comp)
        ]
        finite = region_union
    else:
        coarse = Frame(spec, frame.depth - 1)
        # isolated points are exact at any depth; only infinite classes get truncated
        blocks = [b for b, c in zip(bitvec.refinement(coarse, frame), coarse.counts) if c.infinite]
        finite = [ci for ci, comp in enumerate(comps) if all(_resolved_below(masks[v], blocks) for v in comp)]
    if len(finite) != 1:
        return verdict(False, "finite component")
    comp = [masks[v] for v in comps[finite[0]]]
    clique = _max_clique_compat(comp, frame.full)
    n = clique + 3 - k
    return verdict(True, None, n, clique)


def orient_family(cuts: Sequence[Cut]) -> list[ClopenSet] | None:
    """Outer sides ``U_i`` of a pairwise compatible family, pairwise disjoint if possible.

    For ``k ≥ 2`` the outer side of ``γ_i`` is the side containing no side of
    another member; for ``k = 1`` the infinite (else larger) side.
    """
    if len(cuts) == 1:
        c = cuts[0]
        big = [s for s in c.sides if s.count().infinite]
        return [big[0] if big else max(c.sides, key=lambda s: s.count().value)]
    out = []
    for i, c in enumerate(cuts):
        choice = None
        for s in c.sides:
            others = [o for j, o in enumerate(cuts) if j != i]
            if all(not any(t.issubset(s) for t in o.sides) for o in others):
                choice = s
                break
        if choice is None:
            return None
        out.append(choice)
    for a, b in itertools.combinations(out, 2):
        if not a.isdisjoint(b):
            return None
    return out


@dataclass(frozen=True)
class TripleReport:
    triangle: bool
    orientation: list[list[str]] | None
    triple_nonempty: bool
    components: int
    hypothesis: bool

    @property
    def holds(self) -> bool:
        """The lemma's implication: k+1 components and a triangle force the orientation."""
        if not (self.hypothesis and self.triangle):
            return True
        return self.orientation is not None and self.triple_nonempty

    def to_dict(self) -> dict:
        return {
            "triangle": self.triangle,
            "orientation": self.orientation,
            "triple_nonempty": self.triple_nonempty,
            "components": self.components,
            "hypothesis": self.hypothesis,
            "holds": self.holds,
        }


def triple_condition_check(cuts: Sequence[Cut], depth: int | None = None) -> TripleReport:
    """The third item of the k+1-components lemma for one triple."""
    if len(cuts) != 3:
        raise SphereError("triple_condition_check takes three cuts")
    spec = cuts[0].space
    for a, b in itertools.combinations(cuts, 2):
        if not compatible(a, b):
            raise SphereError("triple is not pairwise compatible")
    sides = orient_family(cuts)
    if isinstance(spec, Finite):
        frame = Frame.finite(spec.n)
    else:
        frame = Frame(spec, depth if depth is not None else max(c.depth for c in cuts) + 2)
    gms = [frame.mask_of(c.first) for c in cuts]
    regions = [1 << b for b in range(frame.size)] if frame.size <= 16 else gms
    triangle = all(_adjacency_witness(frame, gms, i, j, regions) for i, j in itertools.combinations(range(3), 2))
    if sides is None:
        orientation, nonempty, ncomp = None, False, 0
    else:
        orientation = [list(u.strings) for u in sides]
        v = sides[0].complement() & sides[1].complement() & sides[2].complement()
        nonempty = not v.is_empty()
        masks = link_intersection_masks(frame, sides, "brute" if frame.size <= 20 else "structural")
        if not isinstance(spec, Finite):
            masks = [m for m in masks if not _atomic(frame, m)]
        ncomp = len(_opposite_components(masks, frame.full))
    return TripleReport(triangle, orientation, nonempty, ncomp, ncomp == 4)
