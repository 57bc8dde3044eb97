"""JSON and DOT encodings for spaces, algebras, cuts and graphs.

All writers sort their output so identical inputs give identical bytes.
"""
from __future__ import annotations

import json
from typing import Any, Sequence

from .algebra import AlgebraElement, FiniteBooleanAlgebra, Homomorphism
from .cuts import Cut, CutGraph
from .space import Cantor, ClopenSet, Convergent, Finite, SpaceError, SpaceSpec, Subspace, Union, canonicalize


class DecodeError(ValueError):
    """Malformed JSON input."""


def _load(obj: str | Any) -> Any:
    if isinstance(obj, str):
        try:
            return json.loads(obj)
        except json.JSONDecodeError as exc:
            raise DecodeError(f"malformed JSON: {exc.msg}") from None
    return obj


def space_from_json(obj: str | dict) -> SpaceSpec:
    data = _load(obj)
    if isinstance(data, dict) and "space" in data and "type" not in data:
        data = data["space"]
    if not isinstance(data, dict) or "type" not in data:
        raise DecodeError("space descriptor must be an object with a 'type'")
    kind = data["type"]
    try:
        if kind == "finite":
            n = data["n"]
            if not isinstance(n, int) or isinstance(n, bool):
                raise DecodeError("finite space needs an integer 'n'")
            return Finite(n)
        if kind == "cantor":
            return Cantor()
        if kind == "convergent":
            return Convergent()
        if kind == "union":
            return Union(space_from_json(data["left"]), space_from_json(data["right"]))
        if kind == "subspace":
            window = data["window"]
            if not isinstance(window, list) or not all(isinstance(s, str) for s in window):
                raise DecodeError("subspace window must be an array of binary strings")
            return Subspace(space_from_json(data["base"]), tuple(window))
    except KeyError as exc:
        raise DecodeError(f"space descriptor of type {kind!r} is missing {exc.args[0]!r}") from None
    except SpaceError as exc:
        raise DecodeError(str(exc)) from None
    raise DecodeError(f"unknown space type {kind!r}")


def space_to_json(spec: SpaceSpec) -> dict:
    if isinstance(spec, Finite):
        return {"type": "finite", "n": spec.n}
    if isinstance(spec, Cantor):
        return {"type": "cantor"}
    if isinstance(spec, Convergent):
        return {"type": "convergent"}
    if isinstance(spec, Union):
        return {"type": "union", "left": space_to_json(spec.left), "right": space_to_json(spec.right)}
    if isinstance(spec, Subspace):
        return {"type": "subspace", "base": space_to_json(spec.base), "window": list(spec.window)}
    raise DecodeError(f"cannot encode {spec!r}")


def clopen_from_json(spec: SpaceSpec, obj: str | list) -> ClopenSet:
    data = _load(obj)
    if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
        raise DecodeError("clopen set must be an array of binary strings")
    try:
        return canonicalize(spec, data)
    except SpaceError as exc:
        raise DecodeError(str(exc)) from None


def clopen_to_json(u: ClopenSet) -> list[str]:
    return sorted(u.strings)


def cut_to_json(c: Cut) -> list[list[str]]:
    return [clopen_to_json(c.first), clopen_to_json(c.second)]


def algebra_from_json(obj: str | dict) -> FiniteBooleanAlgebra:
    data = _load(obj)
    if not isinstance(data, dict) or not isinstance(data.get("atoms"), int):
        raise DecodeError("algebra must be {\"atoms\": k}")
    try:
        return FiniteBooleanAlgebra(data["atoms"])
    except ValueError as exc:
        raise DecodeError(str(exc)) from None


def algebra_to_json(a: FiniteBooleanAlgebra) -> dict:
    return {"atoms": a.atom_count}


def element_from_json(algebra: FiniteBooleanAlgebra, obj: str | list) -> AlgebraElement:
    data = _load(obj)
    if not isinstance(data, list) or not all(isinstance(i, int) for i in data):
        raise DecodeError("element must be an array of atom indices")
    try:
        return algebra.element(data)
    except ValueError as exc:
        raise DecodeError(str(exc)) from None


def element_to_json(a: AlgebraElement) -> list[int]:
    return sorted(a.indices())


def homomorphism_from_json(source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra, obj: str | dict) -> Homomorphism:
    data = _load(obj)
    if not isinstance(data, dict) or not isinstance(data.get("atom_map"), list):
        raise DecodeError("homomorphism must be {\"atom_map\": [...]}")
    try:
        return Homomorphism(source, target, tuple(int(i) for i in data["atom_map"]))
    except (TypeError, ValueError) as exc:
        raise DecodeError(str(exc)) from None


def homomorphism_to_json(g: Homomorphism) -> dict:
    return {"atom_map": list(g.atom_map)}


def graph_to_json(g: CutGraph) -> dict:
    return {
        "vertices": [c.label() for c in g.vertices],
        "edges": [[i, j] for i, j in sorted(g.edges())],
    }


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def graph_to_dot(g: CutGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for i, c in enumerate(g.vertices):
        lines.append(f'  {i} [label="{_dot_escape(c.label())}"];')
    for i, j in sorted(g.edges()):
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def adjacency_to_json(labels: Sequence[str], edges: Sequence[tuple[int, int]]) -> dict:
    return {"vertices": list(labels), "edges": sorted([min(e), max(e)] for e in edges)}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
