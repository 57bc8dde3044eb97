"""Command-line entry point.

Exit codes: 0 success, 1 a checked property failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import acceptance, serialize
from .algebra import stone_dual, verify_dual_map, verify_epsilon
from .cuts import CutError, complex_graph, diameter, enumerate_cuts
from .pants import finite_complex, restrict_pants, standard_cantor_pants, valence_criterion_check, verify_pants_bounded
from .reconstruction import (
    GraphAutomorphism,
    automorphisms,
    kernel_of_action,
    reconstruct,
    stabilizer_check,
)
from .serialize import DecodeError
from .space import Finite, SpaceError
from .spheres import (
    build_exhaustion,
    check_exhaustion,
    inverse_limit_check,
    make_sphere,
    quotient_space,
    recognize_sphere,
    restriction_map,
)
from .systems import FIXTURES, StoneSpaceSystem, pair_experiment, run_fixture


@dataclass(frozen=True)
class Defaults:
    enumeration_depth: int = 3
    probe_depth: int = 4
    pants_depth: int = 6


DEFAULTS = Defaults()


class UsageError(Exception):
    """Invalid flag combination; mapped to exit code 2."""


class Output:
    def __init__(self, stream) -> None:
        self.stream = stream

    def emit(self, fmt: str, data, text: Callable[[], str] | None = None) -> None:
        if fmt == "json" or text is None:
            self.stream.write(serialize.dumps(data))
        else:
            self.stream.write(text().rstrip("\n") + "\n")


def _space(args):
    if args.space is None:
        raise UsageError("--space is required")
    return serialize.space_from_json(args.space)


def _depth_for(spec, args, default: int | None = None):
    if args.depth is not None:
        if args.depth < 0:
            raise UsageError("--depth must be nonnegative")
        return args.depth
    if isinstance(spec, Finite):
        return None
    return DEFAULTS.enumeration_depth if default is None else default


def _graph(args):
    spec = _space(args)
    return complex_graph(spec, _depth_for(spec, args))


def _load_json_arg(value: str, flag: str):
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"{flag}: malformed JSON ({exc.msg})") from None


def _text_format(args, allowed=("text", "json")) -> str:
    fmt = args.format or "text"
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} is not available here; choose from {', '.join(allowed)}")
    return fmt


# ---------------------------------------------------------------- commands


def cmd_cuts(args, out: Output) -> int:
    spec = _space(args)
    cuts = enumerate_cuts(spec, _depth_for(spec, args))
    fmt = _text_format(args)
    data = {"count": len(cuts), "cuts": [serialize.cut_to_json(c) for c in cuts]}
    out.emit(fmt, data, lambda: "\n".join([f"{len(cuts)} cuts"] + [c.label() + " | " + ",".join(c.second.strings) for c in cuts]))
    return 0


def cmd_graph(args, out: Output) -> int:
    g = _graph(args)
    fmt = args.format or "json"
    if fmt == "dot":
        out.stream.write(serialize.graph_to_dot(g))
    elif fmt == "json":
        out.stream.write(serialize.dumps(serialize.graph_to_json(g)))
    else:
        out.stream.write(f"{len(g)} vertices, {g.edge_count()} edges\n")
    return 0


def cmd_diameter(args, out: Output) -> int:
    g = _graph(args)
    d = diameter(g)
    fmt = _text_format(args)
    out.emit(fmt, {"vertices": len(g), "diameter": d, "connected": d is not None}, lambda: "disconnected" if d is None else str(d))
    return 0


class _PlainGraph:
    def __init__(self, adj: list[int]) -> None:
        self.adj = tuple(adj)

    def __len__(self) -> int:
        return len(self.adj)


def _graph_from_file(path: str) -> _PlainGraph:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"--graph: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DecodeError(f"--graph: malformed JSON ({exc.msg})") from None
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise DecodeError("--graph: expected {\"vertices\": [...], \"edges\": [[i, j], ...]}")
    n = len(data["vertices"])
    if n == 0:
        raise DecodeError("--graph: empty graph")
    adj = [0] * n
    for e in data["edges"]:
        i, j = e
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise DecodeError(f"--graph: bad edge {e}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return _PlainGraph(adj)


def cmd_aut(args, out: Output) -> int:
    if (args.space is None) == (args.graph is None):
        raise UsageError("give exactly one of --space and --graph")
    g = _graph(args) if args.space is not None else _graph_from_file(args.graph)
    group = automorphisms(g)
    fmt = _text_format(args)
    data = group.to_dict()
    out.emit(fmt, data, lambda: f"order {group.order}\n{len(data['generators'])} generators")
    return 0


def cmd_reconstruct(args, out: Output) -> int:
    if args.n is None or args.perm is None:
        raise UsageError("--n and --perm are required")
    spec = Finite(args.n)
    perm = _load_json_arg(args.perm, "--perm")
    if not isinstance(perm, list) or not all(isinstance(x, int) for x in perm):
        raise DecodeError("--perm must be an array of vertex indices")
    g = finite_complex(args.n).graph
    if len(perm) != len(g):
        raise UsageError(f"--perm has {len(perm)} entries; the complex has {len(g)} vertices")
    f = reconstruct(GraphAutomorphism(g, tuple(perm)), spec)
    out.emit(_text_format(args), {"bijection": list(f)}, lambda: " ".join(map(str, f)))
    return 0


def cmd_kernel(args, out: Output) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    ker = kernel_of_action(Finite(args.n))
    out.emit(_text_format(args), {"n": args.n, "order": len(ker), "kernel": [list(p) for p in ker]},
             lambda: f"kernel order {len(ker)}\n" + "\n".join(" ".join(map(str, p)) for p in ker))
    return 0


def cmd_stabcheck(args, out: Output) -> int:
    if args.n is None or args.K is None or args.U is None:
        raise UsageError("--n, --K and --U are required")
    K = _load_json_arg(args.K, "--K")
    U = _load_json_arg(args.U, "--U")
    res = stabilizer_check(Finite(args.n), K, U)
    out.emit(_text_format(args), res.to_dict(),
             lambda: f"recipe {res.recipe}: {len(res.cuts)} cuts, stabiliser order {res.stabilizer_order}, verified {res.verified}")
    return 0 if res.verified else 1


def cmd_pants(args, out: Output) -> int:
    spec = _space(args)
    fmt = args.report or args.format or "text"
    if fmt not in ("text", "json"):
        raise UsageError("--report must be text or json")
    if isinstance(spec, Finite):
        if args.probe_depth is not None:
            raise UsageError("--probe-depth applies to infinite spaces only")
        rep = valence_criterion_check(spec.n)
        data = rep.to_dict()
        out.emit(fmt, data, lambda: f"{rep.decompositions} pants decompositions; outermost iff valence <= 2: {rep.biconditional_holds}")
        return 0
    depth = args.depth if args.depth is not None else DEFAULTS.pants_depth
    probe = args.probe_depth if args.probe_depth is not None else DEFAULTS.probe_depth
    pants = restrict_pants(spec, standard_cantor_pants(depth))
    rep = verify_pants_bounded(pants, spec, probe)
    out.emit(fmt, rep.to_dict(), lambda: "\n".join(f"{k}: {v}" for k, v in rep.to_dict().items() if k != "uncrossed"))
    return 0 if rep.ok else 1


def cmd_spheres(args, out: Output) -> int:
    spec = _space(args)
    if (args.sides is None) == (args.levels is None):
        raise UsageError("give exactly one of --sides and --levels")
    fmt = _text_format(args)
    if args.sides is not None:
        sides = _load_json_arg(args.sides, "--sides")
        if not isinstance(sides, list) or not all(isinstance(s, list) for s in sides):
            raise DecodeError("--sides must be an array of string arrays")
        clopens = [serialize.clopen_from_json(spec, s) for s in sides]
        sphere = make_sphere(spec, clopens)
        rec = recognize_sphere(spec, clopens, args.depth)
        data = {"n": sphere.n, "k": sphere.k, "punctures": list(sphere.punctures), "recognition": rec.to_dict()}
        ok = rec.is_sphere and rec.n == sphere.n
        out.emit(fmt, data, lambda: f"(n, k) = ({sphere.n}, {sphere.k}); recognized {rec.is_sphere} as ({rec.n}, {rec.k})")
        return 0 if ok or not rec.is_sphere else 1
    ex = build_exhaustion(spec, args.levels)
    rep = check_exhaustion(ex, args.levels)
    inv = inverse_limit_check(ex, args.levels)
    levels = []
    for i, s in enumerate(ex.spheres):
        q = quotient_space(s)
        row = {"depth": ex.depths[i], "n": s.n, "k": s.k, "labels": list(q.labels)}
        if i + 1 < len(ex.spheres):
            row["map_to_previous_of_next"] = list(restriction_map(s, ex.spheres[i + 1]))
        levels.append(row)
    data = {"levels": levels, "certificate": rep.to_dict(), "inverse_limit": {"bijective": inv.bijective, "separates": inv.separates, "granularity": inv.granularity}}
    ok = rep.ok and inv.ok
    out.emit(fmt, data, lambda: "\n".join([f"level {i + 1}: depth {r['depth']}, (n, k) = ({r['n']}, {r['k']})" for i, r in enumerate(levels)] + [f"certificate ok: {ok}"]))
    return 0 if ok else 1


def cmd_duality(args, out: Output) -> int:
    if args.algebra is None:
        raise UsageError("--algebra is required")
    A = serialize.algebra_from_json(args.algebra)
    dual = stone_dual(A)
    data = {"atoms": A.atom_count, "ultrafilters": len(dual.points), "epsilon_bijective": verify_epsilon(Finite(A.atom_count))}
    ok = data["ultrafilters"] == A.atom_count and data["epsilon_bijective"]
    if args.hom is not None:
        if args.target is None:
            raise UsageError("--hom needs --target")
        B = serialize.algebra_from_json(args.target)
        g = serialize.homomorphism_from_json(A, B, args.hom)
        data["dual_map_ok"] = verify_dual_map(g)
        ok &= data["dual_map_ok"]
    elif args.target is not None:
        raise UsageError("--target needs --hom")
    out.emit(_text_format(args), data, lambda: "\n".join(f"{k}: {v}" for k, v in data.items()))
    return 0 if ok else 1


def cmd_systems(args, out: Output) -> int:
    if (args.fixture is None) == (args.system is None):
        raise UsageError("give exactly one of --fixture and --system")
    fmt = _text_format(args)
    if args.fixture is not None:
        if args.fixture not in FIXTURES:
            raise UsageError(f"--fixture must be one of {', '.join(FIXTURES)}")
        rep = run_fixture(args.fixture)
        out.emit(fmt, rep.to_dict(), lambda: "\n".join(
            [f"{rep.name}: {'PASS' if rep.ok else 'FAIL'}"] + [f"  {k}: {v}" for k, v in rep.checks.items()]))
        return 0 if rep.ok else 1
    sys_ = StoneSpaceSystem.from_json(_load_json_arg(args.system, "--system"))
    data = pair_experiment(sys_)
    out.emit(fmt, data, lambda: "\n".join(f"{k}: {v}" for k, v in data.items()))
    return 0


def cmd_acceptance(args, out: Output) -> int:
    only = None
    if args.only:
        try:
            only = sorted({int(x) for x in args.only.split(",")})
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
        if any(n not in acceptance.CRITERIA for n in only):
            raise UsageError("--only: criteria are numbered 1 to 13")
    results = acceptance.run_all(only, seed=args.seed, jobs=args.jobs)
    fmt = _text_format(args)
    out.emit(fmt, [r.to_dict() for r in results], lambda: "\n".join(r.line() for r in results))
    return 0 if all(r.passed for r in results) else 1


def cmd_export(args, out: Output) -> int:
    if args.out is None:
        raise UsageError("--out is required")
    fmt = args.format or "dot"
    if fmt not in ("dot", "json"):
        raise UsageError("--format for export must be dot or json")
    g = _graph(args)
    text = serialize.graph_to_dot(g) if fmt == "dot" else serialize.dumps(serialize.graph_to_json(g))
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        raise UsageError(f"--out: cannot write {args.out}: {exc.strerror}") from None
    out.stream.write(f"wrote {len(g)} vertices, {g.edge_count()} edges to {args.out}\n")
    return 0


COMMANDS: dict[str, tuple[Callable, str]] = {
    "cuts": (cmd_cuts, "list non-peripheral cuts"),
    "graph": (cmd_graph, "print the complex of cuts"),
    "diameter": (cmd_diameter, "exact diameter of the complex"),
    "aut": (cmd_aut, "automorphism group order and generators"),
    "reconstruct": (cmd_reconstruct, "point bijection from a complex automorphism"),
    "kernel": (cmd_kernel, "kernel of Sym(n) acting on the complex"),
    "stabcheck": (cmd_stabcheck, "stabiliser containment check"),
    "pants": (cmd_pants, "pants decomposition certificates"),
    "spheres": (cmd_spheres, "sphere recognition and exhaustions"),
    "duality": (cmd_duality, "Stone duality checks on finite algebras"),
    "systems": (cmd_systems, "Stone space system fixtures"),
    "acceptance": (cmd_acceptance, "run the acceptance criteria"),
    "export": (cmd_export, "write the complex as DOT or JSON"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"))
    common.add_argument("--depth", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    parser = argparse.ArgumentParser(prog="cutcomplex", description="Cut complexes of Stone spaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    ps = {}
    for name, (_, help_) in COMMANDS.items():
        ps[name] = sub.add_parser(name, parents=[common], help=help_)
    for name in ("cuts", "graph", "diameter", "aut", "pants", "spheres", "export"):
        ps[name].add_argument("--space")
    ps["aut"].add_argument("--graph")
    for name in ("reconstruct", "kernel", "stabcheck"):
        ps[name].add_argument("--n", type=int)
    ps["reconstruct"].add_argument("--perm")
    ps["stabcheck"].add_argument("--K")
    ps["stabcheck"].add_argument("--U")
    ps["pants"].add_argument("--probe-depth", type=int)
    ps["pants"].add_argument("--report", choices=("text", "json"))
    ps["spheres"].add_argument("--sides")
    ps["spheres"].add_argument("--levels", type=int, help="build an exhaustion certified to this depth")
    ps["duality"].add_argument("--algebra")
    ps["duality"].add_argument("--target")
    ps["duality"].add_argument("--hom")
    ps["systems"].add_argument("--fixture")
    ps["systems"].add_argument("--system")
    ps["acceptance"].add_argument("--only")
    ps["export"].add_argument("--out")
    return parser


def dispatch(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        stderr.write("error: --jobs must be at least 1\n")
        return 2
    fn = COMMANDS[args.command][0]
    try:
        return fn(args, Output(stdout))
    except (UsageError, DecodeError, SpaceError, CutError, ValueError) as exc:
        # ReconstructionError and the other domain errors subclass these
        stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
