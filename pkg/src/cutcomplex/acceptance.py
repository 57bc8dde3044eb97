"""The thirteen acceptance criteria as runnable checks.

Each criterion returns a :class:`CriterionResult`; :func:`run_all` runs a
selection and returns them in criterion order.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bitvec, graphs
from .algebra import (
    FiniteBooleanAlgebra,
    random_homomorphism,
    stone_dual,
    ultrafilters,
    verify_dual_map,
    verify_epsilon,
)
from .cuts import Cut, compatible, complex_graph, crosses, diameter, short_path
from .pants import (
    finite_complex,
    is_outermost,
    is_peripheral_pair,
    peripheral_pair_check,
    standard_cantor_pants,
    valence_criterion_check,
    valence_one_check,
    verify_pants_bounded,
)
from .reconstruction import (
    GraphAutomorphism,
    _all_perms,
    _mask_images,
    automorphisms,
    image_of_action,
    kernel_of_action,
    reconstruct,
    stabilizer_check,
)
from .space import Cantor, Convergent, Finite, Frame
from .spheres import (
    SphereError,
    build_exhaustion,
    check_exhaustion,
    inverse_limit_check,
    make_sphere,
    recognize_sphere,
    sphere_components,
)
from .systems import FIXTURES, run_fixture


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


KLEIN = {(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)}


def c1_four_points(seed: int = 0) -> tuple[bool, dict]:
    g = complex_graph(Finite(4))
    image = image_of_action(Finite(4))
    kernel = set(kernel_of_action(Finite(4)))
    ok = len(g) == 3 and g.edge_count() == 0 and len(image) == 6 and kernel == KLEIN
    return ok, {"vertices": len(g), "edges": g.edge_count(), "image_order": len(image), "kernel": sorted(kernel)}


def c2_petersen(seed: int = 0) -> tuple[bool, dict]:
    g = complex_graph(Finite(5))
    order = automorphisms(g).order
    d = {
        "vertices": len(g),
        "edges": g.edge_count(),
        "regular3": graphs.is_regular(g.adj, 3),
        "triangle_free": graphs.triangle_free(g.adj),
        "diameter": diameter(g),
        "aut_order": order,
    }
    ok = d["vertices"] == 10 and d["edges"] == 15 and d["regular3"] and d["triangle_free"] and d["diameter"] == 2 and order == 120
    return ok, d


def c3_main_theorem(seed: int = 0, sizes: tuple[int, ...] = (5, 6, 7, 8)) -> tuple[bool, dict]:
    out = {}
    ok = True
    for n in sizes:
        g = finite_complex(n).graph
        group = automorphisms(g)
        perms = _all_perms(n)
        imgs = _mask_images(g.masks, perms, n)
        index = g.mask_index()
        induced = {tuple(int(x) for x in p): tuple(index[int(m)] for m in row) for p, row in zip(perms, imgs)}
        elements = set()
        faithful = True
        for e in group.elements():
            elements.add(e)
            f = reconstruct(GraphAutomorphism(g, e), Finite(n))
            if induced[f] != e:
                faithful = False
        image = set(induced.values())
        bijective = len(image) == math.factorial(n) and image == elements
        row = {
            "aut_order": group.order,
            "reconstruct_all": faithful,
            "bijective": bijective,
        }
        out[n] = row
        ok &= group.order == math.factorial(n) and faithful and bijective
    return ok, out


def _path_valid(path, a, b) -> bool:
    if path[0] != a or path[-1] != b or len(path) - 1 > 4:
        return False
    return all(x != y and compatible(x, y) for x, y in zip(path, path[1:]))


def c4_diameter(seed: int = 0, sizes: tuple[int, ...] = (5, 6, 7, 8, 9)) -> tuple[bool, dict]:
    out = {}
    ok = True
    for n in sizes:
        g = finite_complex(n).graph
        d = diameter(g)
        bad = 0
        pairs = 0
        for a, b in itertools.combinations(g.vertices, 2):
            pairs += 1
            if not _path_valid(short_path(a, b), a, b):
                bad += 1
        out[n] = {"diameter": d, "paths": pairs, "invalid_paths": bad}
        ok &= d is not None and d <= 4 and bad == 0
    return ok, out


def _infinite_diameter_sweep(depth: int, rng: random.Random, spot: int = 200, block: int = 1024) -> dict:
    frame = Frame(Cantor(), depth)
    masks = bitvec.all_cut_masks(frame)
    dt = masks.dtype.type
    full = dt(frame.full)
    lut = bitvec.capped_counts(frame, np.arange(1 << frame.size, dtype=np.uint64).astype(masks.dtype)).astype(np.uint8)
    crossing = 0
    bad = 0
    # unordered pairs: row block against itself and every later column
    for start in range(0, len(masks), block):
        a = masks[start:start + block, None]
        b = masks[None, start:]
        shape = (a.shape[0], b.shape[1])
        scratch = np.empty(shape, dtype=masks.dtype)
        x = bitvec.cross_into(a, b, full, scratch, np.empty(shape, dtype=bool))
        x &= np.arange(start, start + a.shape[0])[:, None] < np.arange(start, len(masks))[None, :]
        # midpoint on the quadrant a ∩ b: nested in both ends
        mid = a & b
        good = lut[mid] >= 2
        good &= lut[full & ~mid] >= 2
        y = np.empty(shape, dtype=bool)
        good &= ~bitvec.cross_into(mid, a, full, scratch, y)
        good &= ~bitvec.cross_into(mid, b, full, scratch, y)
        good &= (mid != a) & (mid != b)
        crossing += int(x.sum())
        bad += int((x & ~good).sum())
    # exact oracle on a sample of crossing pairs
    spot_bad = 0
    idx = rng.sample(range(len(masks)), min(len(masks), 64))
    checked = 0
    for i, j in itertools.product(idx, idx):
        if checked >= spot:
            break
        a, b = int(masks[i]), int(masks[j])
        if not bitvec.cross(a, b, frame.full):
            continue
        checked += 1
        ca, cb = Cut.from_side(frame.clopen(a)), Cut.from_side(frame.clopen(b))
        cm = Cut.from_side(frame.clopen(a & b))
        if not crosses(ca, cb) or crosses(cm, ca) or crosses(cm, cb):
            spot_bad += 1
    return {"vertices": int(len(masks)), "crossing_pairs": crossing, "unbridged": bad, "spot_checked": checked, "spot_bad": spot_bad}


def c5_infinite_diameter(seed: int = 0, depths: tuple[int, ...] = (2, 3, 4)) -> tuple[bool, dict]:
    rng = random.Random(seed)
    out = {}
    ok = True
    for d in depths:
        t = time.perf_counter()
        row = _infinite_diameter_sweep(d, rng)
        row["seconds"] = round(time.perf_counter() - t, 2)
        out[d] = row
        ok &= row["unbridged"] == 0 and row["spot_bad"] == 0 and row["seconds"] < 30
    return ok, out


def c6_pants(seed: int = 0) -> tuple[bool, dict]:
    pants = standard_cantor_pants(6)
    rep = verify_pants_bounded(pants, Cantor(), 4)
    d = rep.to_dict()
    return rep.ok and rep.max_crossing <= 14, d


def c7_valence(seed: int = 0) -> tuple[bool, dict]:
    r7 = valence_criterion_check(7)
    r6 = valence_criterion_check(6)
    ok = r7.decompositions == 945 and r7.biconditional_holds and not r6.biconditional_holds and r6.valence_at_most_two_always
    return ok, {"n7": r7.to_dict(), "n6": r6.to_dict()}


def c8_peripheral(seed: int = 0) -> tuple[bool, dict]:
    out = {}
    ok = True
    for n in (7, 8):
        r = peripheral_pair_check(n)
        out[f"pairs_n{n}"] = {"checked": r.pairs_checked, "peripheral": r.peripheral_pairs, "mismatches": r.mismatches[:5]}
        ok &= r.ok and r.pairs_checked > 0
    v = valence_one_check(7)
    out["valence_one_n7"] = {"cases": v.cases, "violations": v.violations[:5]}
    ok &= v.ok and v.cases > 0
    return ok, out


def _finite_sphere_fixtures(n: int):
    for k in range(1, n // 2 + 1):
        for sizes in itertools.combinations_with_replacement(range(2, n + 1), k):
            if sum(sizes) > n:
                continue
            sides, start = [], 0
            for s in sorted(sizes, reverse=True):
                sides.append(list(range(start, start + s)))
                start += s
            yield sides


def _set_partitions(items: list):
    if not items:
        yield []
        return
    head, tail = items[0], items[1:]
    for part in _set_partitions(tail):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]
        yield [[head]] + part


def _cantor_sphere_fixtures():
    classes = ["00", "01", "10", "11"]
    for part in _set_partitions(classes):
        if len(part) >= 2:
            yield part, 4
    yield [["00"], ["01"], ["10"], ["110"], ["111"]], 5


def _sphere_law(spec, sides, depth=None) -> tuple[bool, dict]:
    from .space import finite_points

    if isinstance(spec, Finite):
        clopens = [finite_points(spec.n, s) for s in sides]
    else:
        from .space import canonicalize

        clopens = [canonicalize(spec, s) for s in sides]
    try:
        sphere = make_sphere(spec, clopens)
    except SphereError:
        return True, {"skipped": "not a sphere"}
    frame, masks, comps = sphere_components(spec, clopens, depth)
    k = sphere.k
    row = {"sides": [list(map(str, s)) for s in sides], "n": sphere.n, "k": k, "components": len(comps)}
    ok = len(comps) <= k + 1
    if len(comps) == k + 1:
        outermost = any(is_outermost(c) for c in sphere.boundary)
        pp = any(
            is_peripheral_pair(a, b)
            for a, b in itertools.combinations(sphere.boundary, 2)
            if compatible(a, b) and a != b
        )
        rec = recognize_sphere(spec, clopens, frame.depth)
        row.update(outermost=outermost, peripheral_pair=pp, recognized=rec.to_dict())
        ok &= not outermost and not pp
        ok &= rec.is_sphere and rec.n == sphere.n and rec.k == k and sphere.n + k - 4 == rec.clique - 1
    return ok, row


def c9_spheres(seed: int = 0) -> tuple[bool, dict]:
    rows = []
    ok = True
    for n in (7, 8, 9):
        for sides in _finite_sphere_fixtures(n):
            good, row = _sphere_law(Finite(n), sides)
            row["space"] = f"Finite({n})"
            rows.append(row)
            ok &= good
    for sides, depth in _cantor_sphere_fixtures():
        good, row = _sphere_law(Cantor(), sides, depth)
        row["space"] = f"Cantor@{depth}"
        rows.append(row)
        ok &= good
    failures = [r for r in rows if "recognized" in r and not r["recognized"]["is_sphere"]]
    recognized = sum(1 for r in rows if "recognized" in r)
    return ok, {"fixtures": len(rows), "recognized": recognized, "unrecognized_with_k_plus_1": failures[:5]}


def c10_duality(seed: int = 0, homomorphisms: int = 120) -> tuple[bool, dict]:
    out = {}
    ok = True
    for k in range(1, 6):
        A = FiniteBooleanAlgebra(k)
        dual = stone_dual(A)
        ufs = ultrafilters(A)
        pos = {w: i for i, w in enumerate(dual.points)}

        def eta_mask(a):
            return sum(1 << pos[w] for w in dual.eta(a))

        elems = A.elements()
        images = [eta_mask(a) for a in elems]
        iso = len(set(images)) == len(elems) == 1 << len(dual.points)
        iso &= all(
            eta_mask(a & b) == eta_mask(a) & eta_mask(b) and eta_mask(a | b) == eta_mask(a) | eta_mask(b)
            for a, b in itertools.product(elems, repeat=2)
        )
        iso &= all(eta_mask(~a) == ((1 << len(ufs)) - 1) & ~eta_mask(a) for a in elems)
        eps = verify_epsilon(Finite(k))
        out[k] = {"ultrafilters": len(ufs), "eta_iso": iso, "epsilon_bijective": eps}
        ok &= len(ufs) == k and iso and eps
    rng = random.Random(seed)
    good = 0
    for _ in range(homomorphisms):
        A = FiniteBooleanAlgebra(rng.randint(1, 5))
        B = FiniteBooleanAlgebra(rng.randint(1, 5))
        g = random_homomorphism(rng, A, B)
        good += g.preserves_structure() and verify_dual_map(g)
    out["homomorphisms"] = {"tested": homomorphisms, "passed": good, "seed": seed}
    ok &= good == homomorphisms >= 100
    return ok, out


def c11_exhaustion(seed: int = 0, depth: int = 5) -> tuple[bool, dict]:
    out = {}
    ok = True
    for spec in (Cantor(), Convergent()):
        ex = build_exhaustion(spec, depth)
        rep = check_exhaustion(ex, depth)
        inv = inverse_limit_check(ex, depth)
        out[type(spec).__name__] = {
            "depths": list(ex.depths),
            "report": rep.to_dict(),
            "inverse_limit": {"granularity": inv.granularity, "threads": inv.threads, "bijective": inv.bijective, "separates": inv.separates},
        }
        ok &= rep.ok and inv.ok
    return ok, out


def c12_systems(seed: int = 0) -> tuple[bool, dict]:
    reports = [run_fixture(name) for name in FIXTURES]
    return all(r.ok for r in reports), {r.name: r.to_dict() for r in reports}


def _stabilizer_pairs(n: int, count: int, rng: random.Random) -> list[tuple[list[int], list[int]]]:
    pairs = []
    # both recipes are exercised: small and large U
    for size in range(1, n):
        for extra in range(0, n - size):
            U = list(range(size + extra))
            if len(U) >= n:
                continue
            pairs.append((list(range(size)), U))
    rng.shuffle(pairs)
    return pairs[:count]


def c13_faithful(seed: int = 0, per_n: int = 12) -> tuple[bool, dict]:
    out = {}
    ok = True
    for n in (5, 6, 7, 8):
        ker = kernel_of_action(Finite(n))
        out[f"kernel_n{n}"] = len(ker)
        ok &= ker == [tuple(range(n))]
    rng = random.Random(seed)
    for n in (6, 7, 8):
        pairs = _stabilizer_pairs(n, per_n, rng)
        results = [stabilizer_check(Finite(n), K, U) for K, U in pairs]
        recipes = sorted({r.recipe for r in results})
        out[f"stab_n{n}"] = {"pairs": len(pairs), "verified": sum(r.verified for r in results), "recipes": recipes}
        ok &= len(pairs) >= 10 and all(r.verified for r in results)
    return ok, out


CRITERIA: dict[int, tuple[str, Callable[..., tuple[bool, dict]]]] = {
    1: ("four-point complex and Klein kernel", c1_four_points),
    2: ("Petersen graph", c2_petersen),
    3: ("automorphisms are induced, n = 5..8", c3_main_theorem),
    4: ("finite diameter at most four", c4_diameter),
    5: ("infinite diameter two", c5_infinite_diameter),
    6: ("pants certificates", c6_pants),
    7: ("outermost valence lemma", c7_valence),
    8: ("peripheral pairs and valence one", c8_peripheral),
    9: ("sphere laws", c9_spheres),
    10: ("Stone duality", c10_duality),
    11: ("exhaustion and inverse limit", c11_exhaustion),
    12: ("Stone space system fixtures", c12_systems),
    13: ("faithfulness and stabilizers", c13_faithful),
}


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    title, fn = CRITERIA[number]
    t = time.perf_counter()
    try:
        passed, detail = fn(seed)
    except Exception as exc:  # a crash is a failure, reported rather than raised
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t)


def _run_one(args: tuple[int, int]) -> CriterionResult:
    return run_criterion(*args)


def run_all(numbers: list[int] | None = None, seed: int = 0, jobs: int = 1) -> list[CriterionResult]:
    numbers = sorted(numbers or CRITERIA)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, [(n, seed) for n in numbers]))
    return [run_criterion(n, seed) for n in numbers]
