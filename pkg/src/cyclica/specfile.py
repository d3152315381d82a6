"""JSON spec files for algebras, Hopf algebras, actions and subalgebras.

Layout (every scalar is a fraction string such as ``"-3/4"`` or a JSON
integer; floats are rejected)::

    {
      "name": "dual-numbers",
      "field": "rational",
      "algebra": {"dim": 2, "labels": ["1", "x"], "unit": ["1", "0"],
                  "mul": [[i, j, k, "c"], ...]},
      "hopf": {"algebra": {...}, "coproduct": [[i, j, k, "c"], ...],
               "counit": [...], "antipode": [[...], ...],
               "antipode_inverse": [[...], ...], "semisimple": true},
      "action": [[h, a, k, "c"], ...],
      "subalgebra": {"dim": 1, "labels": ["1"], "embed": [["1"], ["0"]]}
    }

``mul`` entries mean ``e_i e_j += c e_k``; coproduct entries mean
``Delta(e_i) += c e_j (x) e_k``; action entries mean ``h_h(a_a) += c a_k``.
Antipode matrices and ``embed`` are row lists with images in the columns.
Without ``action`` the Hopf structure may omit its own ``algebra`` block and
then lives on the top-level algebra; with ``action`` the top-level algebra
is the one acted on and the Hopf block must carry its own algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .algebra import (
    StructureConstantAlgebra,
    SubalgebraInclusion,
    ValidationReport,
    induced_subalgebra,
    validate_algebra,
    validate_inclusion,
)
from .hopf import HopfAlgebraData, ModuleAlgebraAction, validate_action, validate_hopf
from .linalg import Scalar, SparseMatrix, format_scalar


class ParseError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


class ValidationError(ValueError):
    def __init__(self, axiom: str, witness: Tuple, report: Optional[ValidationReport] = None):
        w = ",".join(str(x) for x in witness)
        super().__init__(f"axiom {axiom} fails at ({w})")
        self.axiom = axiom
        self.witness = tuple(witness)
        self.report = report


@dataclass
class SpecFile:
    name: str
    algebra: StructureConstantAlgebra
    hopf: Optional[HopfAlgebraData] = None
    action: Optional[ModuleAlgebraAction] = None
    subalgebra: Optional[SubalgebraInclusion] = None

    def validation_reports(self) -> List[ValidationReport]:
        reps = [validate_algebra(self.algebra)]
        if self.hopf is not None:
            reps.append(validate_hopf(self.hopf))
        if self.action is not None:
            reps.append(validate_action(self.action))
        if self.subalgebra is not None:
            reps.append(validate_algebra(self.subalgebra.small))
            reps.append(validate_inclusion(self.subalgebra))
        return reps


# scalars and shapes --------------------------------------------------------------

def parse_scalar(value: Any, where: str) -> Scalar:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(where, f"expected an exact scalar, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            f = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(where, f"bad scalar {value!r} ({exc})") from None
        if "." in value or "e" in value.lower():
            raise ParseError(where, f"decimal notation is not exact enough: {value!r}")
        return int(f) if f.denominator == 1 else f
    raise ParseError(where, f"expected a scalar string, got {type(value).__name__}")


def _obj(node: Any, where: str) -> Dict[str, Any]:
    if not isinstance(node, dict):
        raise ParseError(where, "expected an object")
    return node


def _list(node: Any, where: str, length: Optional[int] = None) -> List[Any]:
    if not isinstance(node, list):
        raise ParseError(where, "expected a list")
    if length is not None and len(node) != length:
        raise ParseError(where, f"expected {length} entries, got {len(node)}")
    return node


def _int(node: Any, where: str, lo: int = 0, hi: Optional[int] = None) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        raise ParseError(where, f"expected an integer, got {node!r}")
    if node < lo or (hi is not None and node >= hi):
        raise ParseError(where, f"index {node} out of range")
    return node


def _require(obj: Dict[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise ParseError(where, f"missing field {key!r}")
    return obj[key]


def _vector(node: Any, dim: int, where: str) -> List[Scalar]:
    return [parse_scalar(x, f"{where}[{i}]") for i, x in enumerate(_list(node, where, dim))]


def _matrix(node: Any, nrows: int, ncols: int, where: str) -> SparseMatrix:
    rows = _list(node, where, nrows)
    dense = [_vector(r, ncols, f"{where}[{i}]") for i, r in enumerate(rows)]
    return SparseMatrix.from_dense(dense, ncols)


def _triples(node: Any, dims: Tuple[int, int, int], where: str) -> List[Tuple[int, int, int, Scalar]]:
    out = []
    seen = set()
    for n, entry in enumerate(_list(node, where)):
        w = f"{where}[{n}]"
        e = _list(entry, w, 4)
        i, j, k = (_int(e[p], f"{w}[{p}]", 0, dims[p]) for p in range(3))
        if (i, j, k) in seen:
            raise ParseError(w, f"duplicate entry ({i}, {j}, {k})")
        seen.add((i, j, k))
        out.append((i, j, k, parse_scalar(e[3], f"{w}[3]")))
    return out


def _algebra(node: Any, where: str, name: str) -> StructureConstantAlgebra:
    obj = _obj(node, where)
    dim = _int(_require(obj, "dim", where), f"{where}.dim", 1)
    labels = obj.get("labels")
    if labels is not None:
        labels = [str(x) for x in _list(labels, f"{where}.labels", dim)]
    unit = _vector(_require(obj, "unit", where), dim, f"{where}.unit")
    entries = _triples(_require(obj, "mul", where), (dim, dim, dim), f"{where}.mul")
    return StructureConstantAlgebra.from_entries(dim, entries, unit, labels, name=str(obj.get("name", name)))


def _hopf(node: Any, where: str, alg: StructureConstantAlgebra) -> HopfAlgebraData:
    obj = _obj(node, where)
    d = alg.dim
    coproduct: Dict[int, Dict[Tuple[int, int], Scalar]] = {}
    for i, j, k, c in _triples(_require(obj, "coproduct", where), (d, d, d), f"{where}.coproduct"):
        coproduct.setdefault(i, {})[(j, k)] = c
    counit = _vector(_require(obj, "counit", where), d, f"{where}.counit")
    s = _matrix(_require(obj, "antipode", where), d, d, f"{where}.antipode")
    s_inv = _matrix(_require(obj, "antipode_inverse", where), d, d, f"{where}.antipode_inverse")
    flag = obj.get("semisimple")
    if flag is not None and not isinstance(flag, bool):
        raise ParseError(f"{where}.semisimple", "expected true or false")
    return HopfAlgebraData(alg, coproduct, counit, s, s_inv, semisimple=flag, name=alg.name)


def _subalgebra(node: Any, where: str, big: StructureConstantAlgebra) -> SubalgebraInclusion:
    obj = _obj(node, where)
    dim = _int(_require(obj, "dim", where), f"{where}.dim", 1)
    labels = obj.get("labels")
    if labels is not None:
        labels = [str(x) for x in _list(labels, f"{where}.labels", dim)]
    embed = _matrix(_require(obj, "embed", where), big.dim, dim, f"{where}.embed")
    vectors = [embed.T.row(j) for j in range(dim)]
    name = str(obj.get("name", "sub"))
    try:
        return induced_subalgebra(big, vectors, labels, name=name)
    except ValueError as exc:
        raise ValidationError("subalgebra", (name,)) from exc


# entry points --------------------------------------------------------------------

def _first_violation(rep: ValidationReport) -> None:
    if rep.violations:
        v = rep.violations[0]
        raise ValidationError(v.axiom, v.witness, rep)


def parse_spec(source: Union[str, Path], *, validate: bool = True) -> SpecFile:
    """Parse a spec from a path or from JSON text.

    Raises :class:`ParseError` for malformed input and, with ``validate``,
    :class:`ValidationError` naming the first failing axiom and its witness.
    """
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(str(path), f"cannot read file ({exc.strerror})") from None
    else:
        text = str(source)
    try:
        data = json.loads(text, parse_float=lambda s: float(s))
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    root = _obj(data, "$")
    name = str(root.get("name", "spec"))
    fld = root.get("field", "rational")
    if fld != "rational":
        raise ParseError("$.field", f"only the rational field is supported, got {fld!r}")
    alg = _algebra(_require(root, "algebra", "$"), "$.algebra", name)
    hopf = None
    action = None
    if "hopf" in root:
        hnode = _obj(root["hopf"], "$.hopf")
        if "algebra" in hnode:
            halg = _algebra(hnode["algebra"], "$.hopf.algebra", f"{name}:hopf")
        elif "action" in root:
            raise ParseError("$.hopf", "an action needs the Hopf block to carry its own algebra")
        else:
            halg = alg
        hopf = _hopf(hnode, "$.hopf", halg)
    if "action" in root:
        if hopf is None:
            raise ParseError("$.action", "an action needs a hopf block")
        table: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for h, a, k, c in _triples(root["action"], (hopf.dim, alg.dim, alg.dim), "$.action"):
            table.setdefault((h, a), {})[k] = c
        action = ModuleAlgebraAction(hopf, alg, table, name=name)
    sub = None
    if validate:
        _first_violation(validate_algebra(alg))
        if hopf is not None:
            _first_violation(validate_hopf(hopf))
        if action is not None:
            _first_violation(validate_action(action))
    if "subalgebra" in root:
        sub = _subalgebra(root["subalgebra"], "$.subalgebra", alg)
    spec = SpecFile(name, alg, hopf, action, sub)
    if validate and sub is not None:
        _first_violation(validate_inclusion(sub))
    return spec


def _s(x: Scalar) -> str:
    return format_scalar(x)


def _dump_algebra(alg: StructureConstantAlgebra) -> Dict[str, Any]:
    return {
        "dim": alg.dim,
        "labels": list(alg.labels),
        "unit": [_s(alg.unit.get(i, 0)) for i in range(alg.dim)],
        "mul": [[i, j, k, _s(c)] for i, j, k, c in alg.entries()],
    }


def _dump_matrix(m: SparseMatrix) -> List[List[str]]:
    return [[_s(x) for x in row] for row in m.to_dense()]


def _dump_hopf(h: HopfAlgebraData, with_algebra: bool) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    if with_algebra:
        out["algebra"] = _dump_algebra(h.alg)
    out["coproduct"] = [[i, j, k, _s(c)] for i, j, k, c in h.coproduct_entries()]
    out["counit"] = [_s(h.counit.get(i, 0)) for i in range(h.dim)]
    out["antipode"] = _dump_matrix(h.antipode)
    out["antipode_inverse"] = _dump_matrix(h.antipode_inverse)
    if h.semisimple is not None:
        out["semisimple"] = h.semisimple
    return out


def serialize(obj: Union[SpecFile, StructureConstantAlgebra, HopfAlgebraData, ModuleAlgebraAction],
              name: Optional[str] = None) -> str:
    """JSON text for a spec (or a bare algebra / Hopf algebra / action) that :func:`parse_spec` reads back."""
    if isinstance(obj, StructureConstantAlgebra):
        obj = SpecFile(name or obj.name, obj)
    elif isinstance(obj, HopfAlgebraData):
        obj = SpecFile(name or obj.name, obj.alg, hopf=obj)
    elif isinstance(obj, ModuleAlgebraAction):
        obj = SpecFile(name or obj.name, obj.alg, hopf=obj.hopf, action=obj)
    root: Dict[str, Any] = {"name": name or obj.name, "field": "rational", "algebra": _dump_algebra(obj.algebra)}
    if obj.hopf is not None:
        root["hopf"] = _dump_hopf(obj.hopf, with_algebra=obj.action is not None or obj.hopf.alg is not obj.algebra)
    if obj.action is not None:
        root["action"] = [[h, a, k, _s(c)] for h, a, k, c in obj.action.entries()]
    if obj.subalgebra is not None:
        sub = obj.subalgebra
        root["subalgebra"] = {"dim": sub.small.dim, "labels": list(sub.small.labels), "name": sub.name,
                              "embed": _dump_matrix(sub.embed)}
    return json.dumps(root, indent=2) + "\n"
