"""Algebra specification documents (schema_version 1).

A specification is a JSON document:

    {
      "schema_version": 1,
      "name": "ode2-point",
      "algebra": {
        "basis": [{"name": "X1", "degree": -1}, ...],
        "brackets": [{"left": "X1", "right": "X2", "terms": [["X3", 1]]}]
      },
      "g0": {"mode": "lines", "lines": [[1, 0], [0, 1]]},
      "options": {"max_degree": 10}
    }

"algebra" may instead be {"preset": "heisenberg:1"}; presets are
heisenberg:n, free:r:mu and abelian:n.  g0 modes and payloads:

    full        no payload; all grading-preserving derivations
    orthogonal  "q": symmetric positive-definite matrix on the degree -1 basis
    lines       "lines": two independent degree -1 vectors
    span        "maps": square matrices, either over the full basis in input
                order (block-diagonal in the grading) or over the degree -1
                basis alone, in which case the action is extended through
                the relations; entry [r][c] is the coefficient of basis
                element r in the image of basis element c

Every rational is an integer or a "p/q" string; floats are rejected, so a
document round-trips with no precision loss.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import symbols
from .algebra import BasisElement, DegreeZeroAlgebra, GradedLieAlgebra
from .freenil import free_nilpotent

SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class SpecError(ValueError):
    """A located problem with a specification document."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def parse_rational(value, where: str) -> Fraction:
    if type(value) is int:
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value.strip()):
            raise SpecError(f"not a rational (use integers or 'p/q' strings): {value!r}", where)
        return Fraction(value.strip())
    if isinstance(value, float):
        raise SpecError("floats are not allowed; use integers or 'p/q' strings", where)
    raise SpecError(f"not a rational: {value!r}", where)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _expect(doc, key, kind, where, optional=False, default=None):
    if key not in doc:
        if optional:
            return default
        raise SpecError(f"missing required field {key!r}", where)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SpecError(f"field {key!r} has the wrong type", where)
    return value


@dataclass
class AlgebraSpec:
    name: str
    preset: str | None
    basis: list[tuple[str, int]] | None
    brackets: list[tuple[str, str, list[tuple[str, Fraction]]]] | None
    g0_mode: str
    g0_payload: dict = field(default_factory=dict)
    max_degree: int = 10


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise SpecError("the document must be a JSON object")
    return doc


def parse_spec(doc: dict) -> AlgebraSpec:
    version = _expect(doc, "schema_version", int, "document")
    if version != SCHEMA_VERSION:
        raise SpecError(f"unsupported schema_version {version}", "document")
    name = _expect(doc, "name", str, "document")
    algebra = _expect(doc, "algebra", dict, "document")

    preset = None
    basis = None
    brackets = None
    if "preset" in algebra:
        preset = _expect(algebra, "preset", str, "algebra")
    else:
        raw_basis = _expect(algebra, "basis", list, "algebra")
        basis = []
        for i, entry in enumerate(raw_basis):
            where = f"algebra.basis[{i}]"
            if not isinstance(entry, dict):
                raise SpecError("basis entries must be objects", where)
            bname = _expect(entry, "name", str, where)
            degree = _expect(entry, "degree", int, where)
            if degree >= 0:
                raise SpecError("symbol degrees must be negative", where)
            basis.append((bname, degree))
        raw_brackets = _expect(algebra, "brackets", list, "algebra", optional=True, default=[])
        brackets = []
        for i, entry in enumerate(raw_brackets):
            where = f"algebra.brackets[{i}]"
            if not isinstance(entry, dict):
                raise SpecError("bracket entries must be objects", where)
            left = _expect(entry, "left", str, where)
            right = _expect(entry, "right", str, where)
            raw_terms = _expect(entry, "terms", list, where)
            terms = []
            for j, term in enumerate(raw_terms):
                term_where = f"{where}.terms[{j}]"
                if not isinstance(term, list) or len(term) != 2 or not isinstance(term[0], str):
                    raise SpecError("terms must be [basis-name, rational] pairs", term_where)
                terms.append((term[0], parse_rational(term[1], term_where)))
            brackets.append((left, right, terms))

    g0 = _expect(doc, "g0", dict, "document")
    mode = _expect(g0, "mode", str, "g0")
    if mode not in ("full", "orthogonal", "lines", "span"):
        raise SpecError(f"unknown g0 mode {mode!r}", "g0")
    payload: dict = {}
    if mode == "orthogonal":
        raw = _expect(g0, "q", list, "g0")
        payload["q"] = _parse_matrix(raw, "g0.q")
    elif mode == "lines":
        raw = _expect(g0, "lines", list, "g0")
        if len(raw) != 2:
            raise SpecError("exactly two line vectors required", "g0.lines")
        payload["lines"] = [
            [parse_rational(v, f"g0.lines[{i}][{j}]") for j, v in enumerate(line)]
            for i, line in enumerate(raw)
        ]
    elif mode == "span":
        raw = _expect(g0, "maps", list, "g0")
        payload["maps"] = [_parse_matrix(mat, f"g0.maps[{i}]") for i, mat in enumerate(raw)]

    options = _expect(doc, "options", dict, "document", optional=True, default={})
    max_degree = _expect(options, "max_degree", int, "options", optional=True, default=10)
    if max_degree < 1:
        raise SpecError("max_degree must be at least 1", "options")
    return AlgebraSpec(name, preset, basis, brackets, mode, payload, max_degree)


def _parse_matrix(raw, where):
    if not isinstance(raw, list) or not raw:
        raise SpecError("expected a non-empty matrix (list of rows)", where)
    out = []
    for r, row in enumerate(raw):
        if not isinstance(row, list):
            raise SpecError("matrix rows must be lists", f"{where}[{r}]")
        out.append([parse_rational(v, f"{where}[{r}][{c}]") for c, v in enumerate(row)])
    return out


_PRESET_RE = re.compile(r"^(heisenberg|abelian|free):(\d+)(?::(\d+))?$")


def build_symbol(spec: AlgebraSpec) -> GradedLieAlgebra:
    if spec.preset is not None:
        match = _PRESET_RE.match(spec.preset)
        if not match:
            raise SpecError(f"unknown preset {spec.preset!r}", "algebra.preset")
        kind, first, second = match.group(1), int(match.group(2)), match.group(3)
        if kind == "free":
            if second is None:
                raise SpecError("free preset needs two parameters, free:r:mu", "algebra.preset")
            if first < 1 or int(second) < 1:
                raise SpecError("free preset needs r >= 1 and mu >= 1", "algebra.preset")
            return free_nilpotent(first, int(second))
        if second is not None:
            raise SpecError(f"{kind} preset takes a single parameter", "algebra.preset")
        if first < 1:
            raise SpecError(f"{kind} preset needs n >= 1", "algebra.preset")
        return symbols.heisenberg(first) if kind == "heisenberg" else symbols.abelian(first)

    elements = [BasisElement(name, degree) for name, degree in spec.basis]
    try:
        index = {}
        for i, (name, _) in enumerate(spec.basis):
            if name in index:
                raise SpecError(f"duplicate basis name {name!r}", "algebra.basis")
            index[name] = i
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for entry_no, (left, right, terms) in enumerate(spec.brackets):
            where = f"algebra.brackets[{entry_no}]"
            for name in (left, right):
                if name not in index:
                    raise SpecError(f"unknown basis name {name!r}", where)
            a, b = index[left], index[right]
            if a == b:
                raise SpecError("left and right must differ", where)
            sign = 1
            if a > b:
                a, b = b, a
                sign = -1
            if (a, b) in table:
                raise SpecError(f"bracket for pair ({left}, {right}) given twice", where)
            resolved: dict[int, Fraction] = {}
            for name, coeff in terms:
                if name not in index:
                    raise SpecError(f"unknown basis name {name!r}", where)
                resolved[index[name]] = resolved.get(index[name], Fraction(0)) + sign * coeff
            table[(a, b)] = resolved
        return GradedLieAlgebra(elements, table)
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc), "algebra") from exc


def build_g0(spec: AlgebraSpec, symbol: GradedLieAlgebra) -> DegreeZeroAlgebra:
    """Construct the degree-zero subalgebra; mathematical failures (non
    positive-definite form, dependent lines, non-derivations, non-closure)
    raise plain ValueError and count as validation errors."""
    mode = spec.g0_mode
    if mode == "full":
        return symbols.degree_zero_derivations(symbol)
    if mode == "orthogonal":
        q = spec.g0_payload["q"]
        if len(q) != symbol.dim_of_degree(-1) or any(len(row) != len(q) for row in q):
            raise SpecError("q must be square of the degree -1 dimension", "g0.q")
        return symbols.orthogonal_derivations(symbol, symbols.EuclideanForm(q))
    if mode == "lines":
        lines = spec.g0_payload["lines"]
        if any(len(line) != symbol.dim_of_degree(-1) for line in lines):
            raise SpecError("line vectors must match the degree -1 dimension", "g0.lines")
        return symbols.line_preserving_derivations(symbol, symbols.LinePair(*lines))
    return symbols.custom_g0(symbol, spec.g0_payload["maps"])


def symbol_to_document(symbol: GradedLieAlgebra, name: str, g0_mode: str = "full",
                       max_degree: int = 10) -> dict:
    """Serialize a symbol into a specification document."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "algebra": {
            "basis": [{"name": e.name, "degree": e.degree} for e in symbol.basis],
            "brackets": [
                {
                    "left": symbol.basis[a].name,
                    "right": symbol.basis[b].name,
                    "terms": [
                        [symbol.basis[c].name, format_rational(v)]
                        for c, v in sorted(symbol.bracket_basis(a, b).items())
                    ],
                }
                for a, b in symbol.bracket_pairs()
            ],
        },
        "g0": {"mode": g0_mode},
        "options": {"max_degree": max_degree},
    }
    return doc


def free_spec_document(r: int, mu: int) -> dict:
    if r < 1 or mu < 1:
        raise ValueError("need r >= 1 and mu >= 1")
    return symbol_to_document(free_nilpotent(r, mu), f"free-{r}-{mu}")


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"
