"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import LinearSubspace, Row, Scalar, SparseMatrix, rank, scalar

Vector = Dict[int, Scalar]


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple
    detail: str = ""

    def __str__(self) -> str:
        w = ",".join(str(x) for x in self.witness)
        return f"{self.axiom}[{w}]" + (f": {self.detail}" if self.detail else "")


@dataclass
class ValidationReport:
    """Outcome of a total (not fail-fast) axiom check."""

    subject: str
    checked: List[str] = field(default_factory=list)
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, axiom: str, witness: Tuple, detail: str = "") -> None:
        self.violations.append(Violation(axiom, tuple(witness), detail))

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.checked.extend(f"{other.subject}:{c}" for c in other.checked)
        self.violations.extend(other.violations)
        return self

    def failed_axioms(self) -> List[str]:
        return sorted({v.axiom for v in self.violations})

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checked": list(self.checked),
            "violations": [{"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                           for v in self.violations],
        }


# sparse vector helpers ---------------------------------------------------

def vadd(target: Vector, v: Mapping[int, Scalar], c: Scalar = 1) -> Vector:
    for k, x in v.items():
        y = target.get(k, 0) + c * x
        if y:
            target[k] = y
        else:
            target.pop(k, None)
    return target


def vclean(v: Mapping[int, Scalar]) -> Vector:
    return {k: x for k, x in v.items() if x}


def to_dense(v: Mapping[int, Scalar], dim: int) -> List[Scalar]:
    return [v.get(i, 0) for i in range(dim)]


def to_sparse(v: Sequence, dim: int) -> Vector:
    if len(v) != dim:
        raise ValueError(f"vector of length {len(v)} does not match dimension {dim}")
    return {i: scalar(x) for i, x in enumerate(v) if scalar(x)}


class StructureConstantAlgebra:
    """Algebra with basis ``e_0..e_{dim-1}`` and ``e_i e_j = sum_k mul[i,j,k] e_k``."""

    def __init__(self, dim: int, mul: Mapping[Tuple[int, int], Mapping[int, Scalar]],
                 unit: Mapping[int, Scalar], labels: Optional[Sequence[str]] = None, name: str = ""):
        if dim < 1:
            raise ValueError("algebra dimension must be positive")
        self.dim = dim
        self.name = name
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError(f"{len(self.labels)} labels for dimension {dim}")
        table: Dict[Tuple[int, int], Vector] = {}
        for (i, j), vec in mul.items():
            for k in vec:
                if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                    raise IndexError(f"structure constant ({i}, {j}, {k}) out of range for dim {dim}")
            clean = {k: scalar(c) for k, c in vec.items() if scalar(c)}
            if clean:
                table[(i, j)] = clean
        self._mul = table
        self.unit: Vector = vclean({k: scalar(c) for k, c in unit.items()})
        for k in self.unit:
            if not 0 <= k < dim:
                raise IndexError(f"unit coordinate {k} out of range")

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[Tuple[int, int, int, Scalar]], unit: Sequence,
                     labels: Optional[Sequence[str]] = None, name: str = "") -> "StructureConstantAlgebra":
        mul: Dict[Tuple[int, int], Vector] = {}
        for i, j, k, c in entries:
            slot = mul.setdefault((i, j), {})
            if k in slot:
                raise ValueError(f"duplicate structure constant ({i}, {j}, {k})")
            slot[k] = scalar(c)
        return cls(dim, mul, to_sparse(unit, dim), labels, name)

    def entries(self) -> List[Tuple[int, int, int, Scalar]]:
        return [(i, j, k, c) for (i, j) in sorted(self._mul) for k, c in sorted(self._mul[(i, j)].items())]

    def basis_product(self, i: int, j: int) -> Mapping[int, Scalar]:
        return self._mul.get((i, j), {})

    def product(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                vadd(out, self._mul.get((i, j), {}), a * b)
        return out

    def multiply(self, u: Sequence, v: Sequence) -> List[Scalar]:
        """Product of two dense coordinate vectors."""
        return to_dense(self.product(to_sparse(u, self.dim), to_sparse(v, self.dim)), self.dim)

    def left_matrix(self, u: Mapping[int, Scalar]) -> SparseMatrix:
        """Matrix of ``x -> u x``."""
        rows: Dict[int, Row] = {}
        for j in range(self.dim):
            for k, c in self.product(u, {j: 1}).items():
                rows.setdefault(k, {})[j] = c
        return SparseMatrix(self.dim, self.dim, rows)

    def is_commutative(self) -> bool:
        return all(self.basis_product(i, j) == self.basis_product(j, i)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructureConstantAlgebra):
            return NotImplemented
        return (self.dim == other.dim and self._mul == other._mul and self.unit == other.unit
                and self.labels == other.labels)

    def __repr__(self) -> str:
        return f"StructureConstantAlgebra({self.name or '?'}, dim={self.dim})"


def validate_algebra(a: StructureConstantAlgebra) -> ValidationReport:
    """Check associativity on every basis triple and the two unit laws."""
    rep = ValidationReport(a.name or "algebra", checked=["associativity", "unit"])
    d = a.dim
    for i in range(d):
        for j in range(d):
            ij = a.basis_product(i, j)
            for k in range(d):
                left = a.product(ij, {k: 1})
                right = a.product({i: 1}, a.basis_product(j, k))
                diff = vadd(dict(left), right, -1)
                for l in sorted(diff):
                    rep.fail("associativity", (i, j, k, l),
                             f"(e{i}e{j})e{k} and e{i}(e{j}e{k}) differ at coordinate {l}")
    if not a.unit:
        rep.fail("unit", (), "unit vector is zero")
    for j in range(d):
        if a.product(a.unit, {j: 1}) != {j: 1}:
            rep.fail("unit", ("left", j), f"1*e{j} != e{j}")
        if a.product({j: 1}, a.unit) != {j: 1}:
            rep.fail("unit", ("right", j), f"e{j}*1 != e{j}")
    return rep


class SubalgebraInclusion:
    """An injective unital algebra map ``small -> big`` given by its matrix (columns = images)."""

    def __init__(self, small: StructureConstantAlgebra, big: StructureConstantAlgebra, embed: SparseMatrix,
                 name: str = ""):
        if embed.shape != (big.dim, small.dim):
            raise ValueError(f"embedding has shape {embed.shape}, expected {(big.dim, small.dim)}")
        self.small = small
        self.big = big
        self.embed = embed
        self.name = name

    def image_vectors(self) -> List[Mapping[int, Scalar]]:
        """Images of the small basis, as vectors in the big algebra."""
        t = self.embed.T
        return [t.row(j) for j in range(self.small.dim)]

    def image(self) -> LinearSubspace:
        return LinearSubspace.span(self.big.dim, self.image_vectors())

    def map(self, v: Mapping[int, Scalar]) -> Vector:
        return dict(self.embed.apply(v))


def validate_inclusion(inc: SubalgebraInclusion) -> ValidationReport:
    rep = ValidationReport(inc.name or "inclusion", checked=["injective", "unital", "multiplicative"])
    r = rank(inc.embed)
    if r != inc.small.dim:
        rep.fail("injective", (r, inc.small.dim), f"embedding rank {r} < {inc.small.dim}")
    if inc.map(inc.small.unit) != inc.big.unit:
        rep.fail("unital", (), "embedding does not send 1 to 1")
    imgs = inc.image_vectors()
    for i in range(inc.small.dim):
        for j in range(inc.small.dim):
            lhs = inc.map(inc.small.basis_product(i, j))
            rhs = inc.big.product(imgs[i], imgs[j])
            if lhs != rhs:
                rep.fail("multiplicative", (i, j), f"embed(e{i}e{j}) != embed(e{i})embed(e{j})")
    return rep


def induced_subalgebra(big: StructureConstantAlgebra, vectors: Sequence[Mapping[int, Scalar]],
                       labels: Optional[Sequence[str]] = None, name: str = "") -> SubalgebraInclusion:
    """Inclusion of the subalgebra spanned by ``vectors`` with pulled-back structure constants.

    The vectors must be linearly independent, span a set closed under the
    product, and contain the unit of ``big``.
    """
    n = len(vectors)
    rows: Dict[int, Row] = {}
    for j, v in enumerate(vectors):
        for i, c in v.items():
            rows.setdefault(i, {})[j] = c
    embed = SparseMatrix(big.dim, n, rows)
    if rank(embed) != n:
        raise ValueError("subalgebra spanning vectors are linearly dependent")
    span = SparseMatrix.from_row_vectors(big.dim, list(vectors))
    solver = _Solver(span)
    mul: Dict[Tuple[int, int], Vector] = {}
    for i in range(n):
        for j in range(n):
            coords = solver.solve(big.product(vectors[i], vectors[j]))
            if coords is None:
                raise ValueError(f"span is not closed under multiplication at ({i}, {j})")
            mul[(i, j)] = coords
    unit = solver.solve(big.unit)
    if unit is None:
        raise ValueError("span does not contain the unit")
    small = StructureConstantAlgebra(n, mul, unit, labels, name=name or f"sub({big.name})")
    return SubalgebraInclusion(small, big, embed, name=name)


class _Solver:
    """Express vectors in terms of a fixed independent family."""

    def __init__(self, rows: SparseMatrix):
        # augment each spanning vector with a tag coordinate to recover coefficients
        self.n = rows.nrows
        self.width = rows.ncols
        aug = []
        for k in range(self.n):
            v = {j: c for j, c in rows.row(k).items()}
            v[self.width + k] = 1
            aug.append(v)
        from .linalg import Echelon
        e = Echelon()
        for v in aug:
            e.add(v)
        self.reduced = e.rref()

    def solve(self, target: Mapping[int, Scalar]) -> Optional[Vector]:
        r = dict(target)
        for c in sorted(self.reduced):
            if c >= self.width:
                break
            x = r.get(c)
            if x:
                vadd(r, self.reduced[c], -x)
        if any(j < self.width for j in r):
            return None
        # r = target - sum coeffs*rows, encoded in the tag coordinates with a minus sign
        return {j - self.width: -x for j, x in r.items()}
