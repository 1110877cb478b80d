"""JSON problem files: parsing, validation and encoding.

Complex scalars are written as [re, im]; plain numbers are accepted on input.
Matrices are row-major nested lists.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
import numpy as np

from .config import DEFAULT_K_MAX, DEFAULT_TOLERANCES, Tolerances
from .errors import ParseError, PHTripletError
from .opspec import EvenOrderOperatorPair, Interval, SkewOperator


def load_schema():
    text = resources.files("phtriplet").joinpath("schema/problem.schema.json").read_text("utf-8")
    return json.loads(text)


_VALIDATOR = None


def _validator():
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(load_schema())
    return _VALIDATOR


# -- encoding ----------------------------------------------------------------


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def encode_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        return [encode_complex(z) for z in m]
    return [[encode_complex(z) for z in row] for row in m]


def decode_complex(v):
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def decode_matrix(rows, name="matrix"):
    if len(rows) == 0:
        return np.zeros((0, 0), dtype=complex)
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError(f"{name}: rows have different lengths {sorted(widths)}")
    return np.array([[decode_complex(v) for v in r] for r in rows], dtype=complex)


# -- problem ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    pair: EvenOrderOperatorPair
    skew: SkewOperator | None = None
    boundary_conditions: dict | None = None
    tolerances: Tolerances = DEFAULT_TOLERANCES
    k_max: int = DEFAULT_K_MAX
    name: str | None = None
    parameters: dict = field(default_factory=dict)


def _decode_stack(raw, name, count, n):
    mats = [decode_matrix(m, f"{name}[{i}]") for i, m in enumerate(raw)]
    if len(mats) != count:
        raise ParseError(f"{name} needs {count} matrices, got {len(mats)}")
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            raise ParseError(f"{name}[{i}] has shape {m.shape}, expected {(n, n)}")
    return mats


def problem_from_dict(data):
    """Validate against the schema and build a ProblemSpec."""
    errors = sorted(_validator().iter_errors(data), key=lambda e: list(e.path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.path) or "<root>"
        raise ParseError(f"invalid problem at {where}: {first.message}")
    n, N = data["n"], data["N"]
    a, b = data["interval"]
    try:
        interval = Interval(float(a), float(b))
    except PHTripletError as exc:
        raise ParseError(str(exc)) from exc
    pair = EvenOrderOperatorPair(
        _decode_stack(data["P"], "P", N + 1, n), _decode_stack(data["S"], "S", N + 1, n), interval
    )
    skew = None
    if "J" in data:
        skew = SkewOperator(_decode_stack(data["J"], "J", data["M"] + 1, n), interval)
    bcs = None
    if "boundary_conditions" in data:
        raw = data["boundary_conditions"]
        bcs = {"form": raw["form"]}
        for key, val in raw.items():
            if key != "form":
                bcs[key] = decode_matrix(val, key)
    try:
        tols = DEFAULT_TOLERANCES.updated(**data.get("tolerances", {}))
    except KeyError as exc:
        raise ParseError(str(exc)) from exc
    return ProblemSpec(
        pair=pair,
        skew=skew,
        boundary_conditions=bcs,
        tolerances=tols,
        k_max=data.get("k_max", DEFAULT_K_MAX),
        name=data.get("name"),
        parameters=dict(data.get("parameters", {})),
    )


def parse_problem(text):
    if not text.strip():
        raise ParseError("empty problem file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return problem_from_dict(data)


def load_problem(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_problem(text)


def problem_to_dict(problem):
    pair = problem.pair
    out = {}
    if problem.name:
        out["name"] = problem.name
    out.update({
        "interval": [pair.interval.a, pair.interval.b],
        "n": pair.n,
        "N": pair.order,
        "P": [encode_matrix(m) for m in pair.p_coeffs],
        "S": [encode_matrix(m) for m in pair.s_coeffs],
    })
    if problem.skew is not None:
        out["M"] = problem.skew.order
        out["J"] = [encode_matrix(m) for m in problem.skew.j_coeffs]
    if problem.parameters:
        out["parameters"] = dict(problem.parameters)
    if problem.boundary_conditions:
        out["boundary_conditions"] = {
            k: (v if k == "form" else encode_matrix(v)) for k, v in problem.boundary_conditions.items()
        }
    changed = {
        k: v for k, v in problem.tolerances.as_dict().items() if DEFAULT_TOLERANCES.as_dict()[k] != v
    }
    if changed:
        out["tolerances"] = changed
    if problem.k_max != DEFAULT_K_MAX:
        out["k_max"] = problem.k_max
    return out


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
