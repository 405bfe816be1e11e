"""Sequence definition files (JSON).

Example::

    {
      "base": 2,
      "digit_order": "lsb",
      "states": ["even", "odd"],
      "initial": "even",
      "transitions": {"even": ["even", "odd"], "odd": ["odd", "even"]},
      "output": {"even": {"mag": "1", "phase": "0"}, "odd": {"mag": "1", "phase": "1/2"}}
    }

``transitions[s][d]`` is the successor of ``s`` on digit ``d``. Outputs are
``"0"`` or ``{"mag", "phase"}``; plain value strings such as ``"-1"`` or
``"i"`` are accepted on input. Dumping is canonical: states in
first-reachability order, fractions in lowest terms.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .dfao import Dfao, DfaoError, validate
from .values import parse_value

__all__ = ["SequenceFileError", "dump", "dumps", "load", "loads", "from_dict", "to_dict"]

REQUIRED = ("base", "states", "initial", "transitions", "output", "digit_order")


class SequenceFileError(ValueError):
    pass


def from_dict(doc: dict) -> Dfao:
    if not isinstance(doc, dict):
        raise SequenceFileError("sequence file must hold a JSON object")
    for key in REQUIRED:
        if key not in doc:
            raise SequenceFileError(f"missing field '{key}'")
    if doc["digit_order"] != "lsb":
        raise SequenceFileError(
            f"digit_order must be 'lsb' (got {doc['digit_order']!r}); MSB-first machines are not supported"
        )
    base = doc["base"]
    if not isinstance(base, int) or isinstance(base, bool) or base < 2:
        raise SequenceFileError(f"field 'base' must be an integer >= 2, got {base!r}")
    names = [str(s) for s in doc["states"]]
    if not names or len(set(names)) != len(names):
        raise SequenceFileError("field 'states' must be a nonempty list of distinct names")
    index = {s: i for i, s in enumerate(names)}
    if str(doc["initial"]) not in index:
        raise SequenceFileError(f"field 'initial' names unknown state {doc['initial']!r}")
    trans, outs = doc["transitions"], doc["output"]
    delta, out = [], []
    for s in names:
        if s not in trans:
            raise SequenceFileError(f"missing field 'transitions.{s}'")
        row = trans[s]
        if not isinstance(row, list) or len(row) != base:
            raise SequenceFileError(f"field 'transitions.{s}' must list exactly {base} successors")
        try:
            delta.append(tuple(index[str(t)] for t in row))
        except KeyError as exc:
            raise SequenceFileError(f"field 'transitions.{s}' names unknown state {exc.args[0]!r}") from None
        if s not in outs:
            raise SequenceFileError(f"missing field 'output.{s}'")
        try:
            out.append(parse_value(outs[s]))
        except ValueError as exc:
            raise SequenceFileError(f"field 'output.{s}': {exc}") from None
    try:
        return validate(Dfao(base, tuple(delta), tuple(out), index[str(doc["initial"])], tuple(names)))
    except DfaoError as exc:
        raise SequenceFileError(str(exc)) from None


def to_dict(a: Dfao) -> dict:
    a = validate(a)
    names = list(a.names) if a.names is not None else [f"s{i}" for i in range(a.num_states)]
    return {
        "base": a.base,
        "digit_order": "lsb",
        "states": names,
        "initial": names[a.initial],
        "transitions": {names[s]: [names[t] for t in a.delta[s]] for s in range(a.num_states)},
        "output": {names[s]: a.out[s].to_json() for s in range(a.num_states)},
    }


def loads(text: str) -> Dfao:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFileError(f"not valid JSON: {exc}") from None
    return from_dict(doc)


def load(path: Union[str, Path]) -> Dfao:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(a: Dfao) -> str:
    return json.dumps(to_dict(a), indent=2, sort_keys=True) + "\n"


def dump(a: Dfao, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(a), encoding="utf-8")
