"""Reading groups, lattices and tori from JSON records or built-in names.

Records::

    group   {"degree": 4, "generators": [[1, 0, 3, 2], ...], "name": "..."}
    lattice {"rank": 3, "generator_actions": [[[...], ...], ...]}
    torus   {"group": <group>, "lattice": <lattice>, "label": "..."}

Integers may be JSON numbers or decimal strings.  Built-in names:
``norm_one:<group>``, ``theorem13:{2,3}``, ``split:<group>``, ``circle``.
"""

from __future__ import annotations

import json
import os
import re

from .groups import FiniteGroup, GroupOrderError, catalog_group
from .lattices import GLattice, LatticeError, lattice_from_dict, validate
from .tori import Torus, circle_torus, norm_one_torus, split_torus, theorem13_torus


class ParseError(ValueError):
    """Input could not be read as a record or a built-in name."""


class ValidationError(ValueError):
    """Input parsed but describes an invalid group or lattice."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


def _int(x) -> int:
    if isinstance(x, bool):
        raise ParseError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and re.fullmatch(r"[+-]?\d+", x.strip()):
        return int(x)
    raise ParseError(f"expected an integer, got {x!r}")


def _ints(x):
    if isinstance(x, list):
        return [_ints(y) for y in x]
    return _int(x)


def group_from_record(data) -> FiniteGroup:
    if not isinstance(data, dict) or "degree" not in data:
        raise ParseError("group record needs 'degree' and 'generators'")
    try:
        degree = _int(data["degree"])
        gens = _ints(data.get("generators", []))
    except (TypeError, KeyError) as e:
        raise ParseError(f"malformed group record: {e}") from None
    try:
        return FiniteGroup(degree, gens, name=str(data.get("name", "")))
    except GroupOrderError:
        raise
    except ValueError as e:
        raise ValidationError(str(e)) from None


def lattice_from_record(G: FiniteGroup, data) -> GLattice:
    if not isinstance(data, dict) or "rank" not in data:
        raise ParseError("lattice record needs 'rank' and 'generator_actions'")
    try:
        clean = {"rank": _int(data["rank"]),
                 "generator_actions": _ints(data.get("generator_actions", []))}
    except TypeError as e:
        raise ParseError(f"malformed lattice record: {e}") from None
    try:
        M = lattice_from_dict(G, clean, name=str(data.get("name", "")))
    except (LatticeError, ValueError) as e:
        raise ValidationError(str(e)) from None
    report = validate(M)
    if not report.ok:
        raise ValidationError(report.message, report)
    return M


def torus_from_record(data) -> Torus:
    if not isinstance(data, dict) or "group" not in data or "lattice" not in data:
        raise ParseError("torus record needs 'group' and 'lattice'")
    G = group_from_record(data["group"])
    M = lattice_from_record(G, data["lattice"])
    return Torus(G, M, label=str(data.get("label", "")))


def torus_to_record(T: Torus) -> dict:
    return {"group": T.group.to_dict(),
            "lattice": T.character_lattice.to_dict(),
            "label": T.label}


_BUILTIN = re.compile(r"(norm_one|split|theorem13):(.*)")


def builtin_torus(name: str) -> Torus:
    if name == "circle":
        return circle_torus()
    m = _BUILTIN.fullmatch(name.strip())
    if not m:
        raise ParseError(f"unknown built-in {name!r}")
    family, arg = m.groups()
    if family == "theorem13":
        body = arg.strip().strip("{}")
        try:
            primes = [int(p) for p in body.split(",") if p.strip()]
        except ValueError:
            raise ParseError(f"bad prime list {arg!r}") from None
        return theorem13_torus(primes)
    try:
        G = catalog_group(arg)
    except KeyError as e:
        raise ParseError(str(e.args[0])) from None
    return norm_one_torus(G) if family == "norm_one" else split_torus(G)


def read_text(source: str) -> str:
    if source == "-":
        import sys
        return sys.stdin.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def load_torus(source: str) -> tuple[Torus, str]:
    """A torus from a built-in name, a JSON file, or '-' for stdin; also returns the raw text."""
    if source == "circle" or (_BUILTIN.fullmatch(source) and not os.path.exists(source)):
        return builtin_torus(source), source
    try:
        text = read_text(source)
    except OSError as e:
        raise ParseError(f"cannot read {source}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: {e}") from None
    if isinstance(data, dict) and "group" not in data and "degree" in data:
        raise ParseError("expected a torus record (group + lattice), got a bare group")
    return torus_from_record(data), text
