"""JSON forms of points, coordinate vectors, operators, relations and families.

Rational entries are written as ``"a"`` or ``"a/b"`` strings and finite
field entries as integers.  Readers accept both forms and ignore unknown
keys, so annotated output (an ``index`` next to a point, say) reads back.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import SatoGrError
from .field import Field, PrimeField, field_from_name
from .laurent import LaurentVector
from .linalg import ExactMatrix
from .maya import IndexSet
from .operators import BandOperator, MulOperator, WindowOperator
from .points import GrassPoint, PluckerVector
from .projgeo import PencilFamily


class FormatError(SatoGrError, ValueError):
    """Input that does not match the expected JSON shape."""


def _field(data: dict, default: Field | None = None) -> Field:
    name = data.get("field")
    if name is None:
        if default is None:
            raise FormatError("missing 'field'")
        return default
    try:
        return field_from_name(str(name))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _entry(field: Field, x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"entry {x!r} is neither an integer nor a string")
    try:
        return field.parse(x) if isinstance(x, str) else field(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"bad entry {x!r}: {exc}") from None


def _level(data: dict) -> int:
    lvl = data.get("level")
    if isinstance(lvl, bool) or not isinstance(lvl, int) or lvl < 1:
        raise FormatError(f"'level' must be a positive integer, got {lvl!r}")
    return lvl


def point_to_json(p: GrassPoint, **extra) -> dict:
    out: dict[str, Any] = {
        "level": p.level,
        "field": str(p.field),
        "rows": [[p.field.format(x) for x in row] for row in p.rows],
    }
    out.update(extra)
    return out


def point_from_json(data: Any) -> GrassPoint:
    """Read a point; a rank-deficient basis raises :class:`RankDeficientError`."""
    if not isinstance(data, dict):
        raise FormatError("a point is a JSON object")
    lvl = _level(data)
    f = _field(data)
    rows = data.get("rows")
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise FormatError("'rows' must be a list of lists")
    for r in rows:
        if len(r) != 2 * lvl:
            raise FormatError(f"rows of a level {lvl} point have {2 * lvl} entries, got {len(r)}")
    m = ExactMatrix(f, tuple(tuple(_entry(f, x) for x in r) for r in rows), 2 * lvl)
    return GrassPoint(lvl, m)


def vector_to_json(v: PluckerVector) -> dict:
    return {
        "level": v.level,
        "field": str(v.field),
        "coords": {str(t): v.field.format(x) for t, x in v.coords.items()},
    }


def vector_from_json(data: Any) -> PluckerVector:
    if not isinstance(data, dict):
        raise FormatError("a coordinate vector is a JSON object")
    lvl = _level(data)
    f = _field(data)
    coords = data.get("coords")
    if isinstance(coords, list):
        from .maya import enumerate_level

        sets = enumerate_level(lvl)
        if len(coords) != len(sets):
            raise FormatError(f"dense coordinates need {len(sets)} entries")
        coords = {str(t): x for t, x in zip(sets, coords)}
    if not isinstance(coords, dict):
        raise FormatError("'coords' must be an object or a dense list")
    parsed = {}
    for key, x in coords.items():
        try:
            t = IndexSet.parse(key, lvl)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        parsed[t] = _entry(f, x)
    try:
        return PluckerVector(lvl, f, parsed)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def operator_to_json(g: WindowOperator) -> dict:
    f = g.field
    if isinstance(g, MulOperator):
        return {
            "kind": "mul",
            "field": str(f),
            "unit": {str(a): f.format(c) for a, c in g.unit.support},
        }
    return {
        "kind": "band",
        "field": str(f),
        "bandwidth": g.bandwidth,
        "columns": sorted(g.columns),
        "block": {f"[{r},{c}]": f.format(v) for (r, c), v in g.entries.items()},
    }


def operator_from_json(data: Any, default_field: Field | None = None) -> WindowOperator:
    if not isinstance(data, dict):
        raise FormatError("an operator is a JSON object")
    f = _field(data, default_field)
    kind = data.get("kind")
    if kind == "mul":
        unit = data.get("unit")
        if not isinstance(unit, dict) or not unit:
            raise FormatError("'unit' must be a nonempty object exponent -> coefficient")
        try:
            coeffs = {int(a): _entry(f, c) for a, c in unit.items()}
        except ValueError:
            raise FormatError("unit exponents must be integers") from None
        return MulOperator(LaurentVector.from_dict(f, coeffs))
    if kind == "band":
        bw = data.get("bandwidth", 0)
        block = data.get("block", {})
        if isinstance(bw, bool) or not isinstance(bw, int) or bw < 0:
            raise FormatError("'bandwidth' must be a nonnegative integer")
        if not isinstance(block, dict):
            raise FormatError("'block' must be an object")
        entries = {}
        cols = set(int(c) for c in data.get("columns", []))
        for key, x in block.items():
            try:
                r, c = json.loads(key)
                r, c = int(r), int(c)
            except (ValueError, TypeError):
                raise FormatError(f"block keys look like '[r,c]', got {key!r}") from None
            entries[(r, c)] = _entry(f, x)
            cols.add(c)
        return BandOperator(f, entries, bw, frozenset(cols))
    raise FormatError(f"unknown operator kind {kind!r}")


def family_to_json(fam: PencilFamily, points=None) -> dict:
    out: dict[str, Any] = {
        "level": fam.level,
        "field": str(fam.top.field),
        "k": fam.k,
        "bottom": point_to_json(fam.bottom),
        "top": point_to_json(fam.top),
    }
    if points is not None:
        out["points"] = [point_to_json(p) for p in points]
    return out


def point_to_text(p: GrassPoint) -> str:
    lines = [f"level {p.level} over {p.field}, dim {p.dim}"]
    for row in p.rows:
        lines.append("  " + " ".join(str(p.field.format(x)) for x in row))
    return "\n".join(lines)


def vector_to_text(v: PluckerVector) -> str:
    return "\n".join(f"X{t} = {v.field.format(x)}" for t, x in v.coords.items())


def dumps(obj) -> str:
    """Stable JSON text: sorted keys are avoided so coordinate order stays canonical."""
    return json.dumps(obj, separators=(", ", ": "))


def is_prime_field(f: Field) -> bool:
    return isinstance(f, PrimeField)
