"""JSON schemas and parsers for charts, polynomials, matrices and complexes.

Exact rationals travel as decimal strings "p/q" (or "p" for integers);
complex numbers as {"re": "...", "im": "..."} with decimal strings.  A
polynomial is {"arity": n, "terms": [{"coeff": "p/q", "exps": [...]}]}; an
exponential series adds "marker_var"/"trunc" and a per-term "marker".  Charts
carry {"n", "eta", "charge_d", "unity_index", "potential", "euler"}.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .charts import FMChart
from .errors import ValidationError
from .poly import MultiPoly
from .series import ExpSeries


def frac_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def frac_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValidationError(f"expected exact rational string, got {type(s).__name__}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {s!r}: {exc}") from exc


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": repr(z.real), "im": repr(z.imag)}


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, str):
        try:
            return complex(obj.replace(" ", ""))
        except ValueError as exc:
            raise ValidationError(f"bad complex literal {obj!r}") from exc
    if isinstance(obj, dict) and "re" in obj and "im" in obj:
        try:
            return complex(float(obj["re"]), float(obj["im"]))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad complex object {obj!r}") from exc
    raise ValidationError(f"cannot parse complex from {obj!r}")


def frac_matrix_to_json(rows) -> list:
    return [[frac_to_str(x) for x in row] for row in rows]


def frac_matrix_from_json(obj, what="matrix") -> tuple:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ValidationError(f"{what} must be a list of rows")
    return tuple(tuple(frac_from_str(x) for x in row) for row in obj)


def poly_to_json(p: MultiPoly) -> dict:
    return {
        "arity": p.arity,
        "terms": [
            {"coeff": frac_to_str(c), "exps": list(e)} for e, c in sorted(p.items())
        ],
    }


def poly_from_json(obj) -> MultiPoly:
    if not isinstance(obj, dict) or "arity" not in obj or "terms" not in obj:
        raise ValidationError("polynomial JSON needs 'arity' and 'terms'")
    arity = obj["arity"]
    terms = {}
    for t in obj["terms"]:
        exps = tuple(int(x) for x in t["exps"])
        if len(exps) != arity:
            raise ValidationError(f"exponent vector {exps} does not match arity {arity}")
        terms[exps] = terms.get(exps, Fraction(0)) + frac_from_str(t["coeff"])
    return MultiPoly(arity, terms)


def series_to_json(s: ExpSeries) -> dict:
    terms = []
    for k in sorted(s.parts):
        for e, c in sorted(s.parts[k].items()):
            terms.append({"coeff": frac_to_str(c), "exps": list(e), "marker": k})
    return {
        "arity": s.arity,
        "marker_var": s.marker_var,
        "trunc": s.trunc,
        "terms": terms,
    }


def series_from_json(obj) -> ExpSeries:
    for key in ("arity", "marker_var", "trunc", "terms"):
        if key not in obj:
            raise ValidationError(f"series JSON needs {key!r}")
    arity = obj["arity"]
    parts: dict[int, dict] = {}
    for t in obj["terms"]:
        k = int(t.get("marker", 0))
        exps = tuple(int(x) for x in t["exps"])
        if len(exps) != arity:
            raise ValidationError(f"exponent vector {exps} does not match arity {arity}")
        bucket = parts.setdefault(k, {})
        bucket[exps] = bucket.get(exps, Fraction(0)) + frac_from_str(t["coeff"])
    return ExpSeries(
        arity,
        int(obj["marker_var"]),
        int(obj["trunc"]),
        {k: MultiPoly(arity, d) for k, d in parts.items()},
    )


def potential_to_json(p) -> dict:
    return series_to_json(p) if isinstance(p, ExpSeries) else poly_to_json(p)


def potential_from_json(obj):
    if isinstance(obj, dict) and "marker_var" in obj:
        return series_from_json(obj)
    return poly_from_json(obj)


def chart_to_json(chart: FMChart) -> dict:
    return {
        "n": chart.n,
        "eta": frac_matrix_to_json(chart.eta),
        "charge_d": frac_to_str(chart.charge_d),
        "unity_index": chart.unity_index,
        "potential": potential_to_json(chart.potential),
        "euler": {
            "linear": frac_matrix_to_json(chart.euler_linear),
            "const": [frac_to_str(x) for x in chart.euler_const],
        },
    }


def chart_from_json(obj) -> FMChart:
    if not isinstance(obj, dict):
        raise ValidationError("chart JSON must be an object")
    for key in ("n", "eta", "charge_d", "potential", "euler"):
        if key not in obj:
            raise ValidationError(f"chart JSON is missing {key!r}")
    euler = obj["euler"]
    if not isinstance(euler, dict) or "linear" not in euler or "const" not in euler:
        raise ValidationError("chart euler field needs 'linear' and 'const'")
    return FMChart(
        n=int(obj["n"]),
        eta=frac_matrix_from_json(obj["eta"], "eta"),
        potential=potential_from_json(obj["potential"]),
        euler_linear=frac_matrix_from_json(euler["linear"], "euler.linear"),
        euler_const=tuple(frac_from_str(x) for x in euler["const"]),
        charge_d=frac_from_str(obj["charge_d"]),
        unity_index=int(obj.get("unity_index", 1)),
    )


def load_chart(path: str) -> FMChart:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    return chart_from_json(obj)


def dump_json(obj, path: str | None) -> str:
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def complex_vector_from_string(s: str) -> list[complex]:
    """Parse 'a, b, c' with python complex literals (1+2j) per entry."""
    out = []
    for piece in s.split(","):
        piece = piece.strip().replace(" ", "")
        if not piece:
            continue
        try:
            out.append(complex(piece))
        except ValueError as exc:
            raise ValidationError(f"bad complex literal {piece!r}") from exc
    if not out:
        raise ValidationError("empty vector")
    return out


def waypoint_list_from_string(s: str) -> list[list[complex]]:
    """Parse 'u1,u2,..; u1,u2,..; ...' into a list of u-waypoints."""
    return [complex_vector_from_string(seg) for seg in s.split(";") if seg.strip()]


def complex_matrix_from_json(obj, what="matrix") -> list[list[complex]]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ValidationError(f"{what} must be a list of rows")
    return [[complex_from_json(x) for x in row] for row in obj]


def complex_matrix_to_json(rows) -> list:
    return [[complex_to_json(x) for x in row] for row in rows]
