"""JSON law files and family requests.

A law file looks like::

    {"dim": 6, "brackets": [{"i": 1, "j": 3, "value": ["0", "1", "0", "0", "0", "0"]}, ...]}

Omitted pairs are zero brackets.  Rationals are strings "p" or "p/q";
plain JSON integers are accepted on input.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .exact import MPoly, format_rational, q
from .laws import ParamSpec, ParamValues
from .lie import StructureConstants


class LawFileError(ValueError):
    """Malformed input; the message names the offending position."""


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise LawFileError(f"{where}: expected a rational string, got {value!r}")
    try:
        return q(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise LawFileError(f"{where}: bad rational {value!r} ({exc})") from None


def _int(obj: Mapping, key: str, where: str) -> int:
    if key not in obj:
        raise LawFileError(f"{where}: missing key {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise LawFileError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def loads_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LawFileError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def law_from_obj(obj: Any) -> StructureConstants:
    if not isinstance(obj, dict):
        raise LawFileError("law file: top level must be an object")
    n = _int(obj, "dim", "law file")
    if n < 1:
        raise LawFileError(f"law file.dim: must be positive, got {n}")
    brackets = obj.get("brackets", [])
    if not isinstance(brackets, list):
        raise LawFileError("law file.brackets: expected a list")
    table = {}
    for idx, entry in enumerate(brackets):
        where = f"brackets[{idx}]"
        if not isinstance(entry, dict):
            raise LawFileError(f"{where}: expected an object")
        i, j = _int(entry, "i", where), _int(entry, "j", where)
        if not (1 <= i < j <= n):
            raise LawFileError(f"{where}: need 1 <= i < j <= {n}, got i={i}, j={j}")
        if (i, j) in table:
            raise LawFileError(f"{where}: duplicate bracket ({i},{j})")
        value = entry.get("value")
        if not isinstance(value, list) or len(value) != n:
            raise LawFileError(f"{where}.value: expected a list of {n} rationals")
        table[(i, j)] = tuple(_rational(c, f"{where}.value[{h}]") for h, c in enumerate(value))
    return StructureConstants(n, table)


def parse_law(text: str, source: str = "<input>") -> StructureConstants:
    return law_from_obj(loads_json(text, source))


def _coeff_str(c) -> str:
    return c.to_infix() if isinstance(c, MPoly) else format_rational(c)


def law_to_obj(L: StructureConstants) -> dict:
    return {
        "dim": L.dim,
        "brackets": [
            {"i": i, "j": j, "value": [_coeff_str(c) for c in vec]}
            for (i, j), vec in sorted(L.table.items())
        ],
    }


def serialize_law(L: StructureConstants) -> str:
    return json.dumps(law_to_obj(L), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------

SYMBOLIC = "sym"


def _param(value: Any, name: str, variables) -> object:
    if value == SYMBOLIC:
        return MPoly.var(name, variables)
    return _rational(value, name)


def request_from_obj(obj: Any) -> tuple[ParamSpec, ParamValues]:
    """Family request ``{"z1", "z2", "n", "alpha", "gamma", "beta"}``.

    Any entry may be the string "sym" for a symbolic parameter, and each of
    alpha, gamma, beta may itself be "sym" to make the whole group symbolic.
    Missing beta keys default to 0.
    """
    if not isinstance(obj, dict):
        raise LawFileError("request: top level must be an object")
    z1, z2, n = (_int(obj, k, "request") for k in ("z1", "z2", "n"))
    try:
        spec = ParamSpec(z1, z2, n)
    except ValueError as exc:
        raise LawFileError(f"request: {exc}") from None
    variables = spec.variables

    def group(key: str, count: int) -> list:
        raw = obj.get(key, [] if count == 0 else None)
        if raw == SYMBOLIC:
            raw = [SYMBOLIC] * count
        if not isinstance(raw, list) or len(raw) != count:
            raise LawFileError(f"request.{key}: expected {count} entries for {spec.triple}")
        prefix = "a" if key == "alpha" else "g"
        return [_param(v, f"{prefix}{i}", variables) for i, v in enumerate(raw, start=1)]

    alpha = group("alpha", spec.alpha_count)
    gamma = group("gamma", spec.gamma_count)
    raw_beta = obj.get("beta", {})
    if raw_beta == SYMBOLIC:
        raw_beta = {f"{k},{l}": SYMBOLIC for k, l in spec.beta_index_set}
    if not isinstance(raw_beta, dict):
        raise LawFileError("request.beta: expected an object keyed by \"k,l\"")
    valid = set(spec.beta_index_set)
    beta = {kl: Fraction(0) for kl in spec.beta_index_set}
    for key, v in raw_beta.items():
        try:
            k, l = (int(part) for part in key.split(","))
        except ValueError:
            raise LawFileError(f"request.beta: bad key {key!r}, expected \"k,l\"") from None
        if (k, l) not in valid:
            raise LawFileError(f"request.beta: ({k},{l}) is not a parameter of {spec.triple}")
        beta[(k, l)] = _param(v, f"b_{k}_{l}", variables)
    return spec, ParamValues(tuple(alpha), tuple(gamma), beta)
