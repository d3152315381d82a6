"""The standard cocyclic module of a unital algebra and its subcomplexes.

A degree-``n`` cochain over an algebra of dimension ``d`` is a vector of
length ``d^(n+1)`` indexed lexicographically by ``(i_0, ..., i_n)``.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence

from .algebra import StructureConstantAlgebra, SubalgebraInclusion
from .cocyclic import (
    HCReport,
    HCRow,
    MatrixCocyclicModule,
    build_total_complex,
    cohomology_dims,
    restrict_to_subcomplex,
)
from .linalg import LinearSubspace, Row, Scalar, SparseMatrix, kernel_within, nullspace, rank, restrict_operator


def tensor_index(digits: Sequence[int], base: int) -> int:
    idx = 0
    for x in digits:
        idx = idx * base + x
    return idx


def expand(coef: Scalar, prefix: int, vectors: Sequence[Mapping[int, Scalar]], base: int,
           out: Dict[int, Scalar]) -> None:
    """Add ``coef * (v_1 (x) ... (x) v_k)`` to ``out``, continuing the index ``prefix``."""
    acc = {prefix: coef}
    for v in vectors:
        nxt: Dict[int, Scalar] = {}
        for idx, c in acc.items():
            shifted = idx * base
            for k, x in v.items():
                nxt[shifted + k] = nxt.get(shifted + k, 0) + c * x
        acc = nxt
    for idx, c in acc.items():
        y = out.get(idx, 0) + c
        if y:
            out[idx] = y
        else:
            out.pop(idx, None)


def operator_from_rows(nrows: int, ncols: int, rows: Dict[int, Row]) -> SparseMatrix:
    return SparseMatrix(nrows, ncols, {i: r for i, r in rows.items() if r}, _trusted=True)


class AlgebraCochainComplex(MatrixCocyclicModule):
    """Cochains ``Hom(D^{(x)(n+1)}, k)`` with the usual faces, degeneracies and rotation."""

    def __init__(self, algebra: StructureConstantAlgebra, n_max: Optional[int] = None):
        super().__init__()
        self.algebra = algebra
        self.d = algebra.dim
        self.n_max = n_max
        self.name = algebra.name or "algebra"

    def space_dim(self, n: int) -> int:
        return self.d ** (n + 1) if n >= 0 else 0

    def tuples(self, n: int):
        return product(range(self.d), repeat=n + 1)

    def _face(self, n: int, i: int) -> SparseMatrix:
        d, alg = self.d, self.algebra
        rows: Dict[int, Row] = {}
        for r, t in enumerate(product(range(d), repeat=n + 2)):
            row: Row = {}
            if i <= n:
                vec = alg.basis_product(t[i], t[i + 1])
                expand(1, tensor_index(t[:i], d), [vec] + [{x: 1} for x in t[i + 2:]], d, row)
            else:
                vec = alg.basis_product(t[n + 1], t[0])
                expand(1, 0, [vec] + [{x: 1} for x in t[1:n + 1]], d, row)
            rows[r] = row
        return operator_from_rows(self.space_dim(n + 1), self.space_dim(n), rows)

    def _degeneracy(self, n: int, j: int) -> SparseMatrix:
        d, unit = self.d, self.algebra.unit
        rows: Dict[int, Row] = {}
        for r, t in enumerate(product(range(d), repeat=n)):
            row: Row = {}
            expand(1, tensor_index(t[:j + 1], d), [unit] + [{x: 1} for x in t[j + 1:]], d, row)
            rows[r] = row
        return operator_from_rows(self.space_dim(n - 1), self.space_dim(n), rows)

    def _cyclic(self, n: int) -> SparseMatrix:
        d = self.d
        rows = {}
        for r, t in enumerate(product(range(d), repeat=n + 1)):
            rows[r] = {tensor_index((t[n],) + t[:n], d): 1}
        return operator_from_rows(self.space_dim(n), self.space_dim(n), rows)


def build_algebra_complex(algebra: StructureConstantAlgebra, n_max: Optional[int] = None) -> AlgebraCochainComplex:
    c = AlgebraCochainComplex(algebra, n_max)
    if n_max is not None:
        c.prebuild(n_max)
    return c


# direct formulas (independent of the cocyclic machinery) -----------------

def hochschild_direct(algebra: StructureConstantAlgebra, n: int) -> SparseMatrix:
    """``b phi(a^0..a^{n+1})`` written out term by term on basis tuples."""
    d = algebra.dim
    rows: Dict[int, Row] = {}
    for r, t in enumerate(product(range(d), repeat=n + 2)):
        row: Row = {}
        for j in range(n + 1):
            sign = -1 if j % 2 else 1
            for k, c in algebra.basis_product(t[j], t[j + 1]).items():
                idx = tensor_index(t[:j] + (k,) + t[j + 2:], d)
                row[idx] = row.get(idx, 0) + sign * c
        sign = -1 if (n + 1) % 2 else 1
        for k, c in algebra.basis_product(t[n + 1], t[0]).items():
            idx = tensor_index((k,) + t[1:n + 1], d)
            row[idx] = row.get(idx, 0) + sign * c
        rows[r] = {k: v for k, v in row.items() if v}
    return operator_from_rows(d ** (n + 2), d ** (n + 1), rows)


def connes_B_direct(algebra: StructureConstantAlgebra, n: int) -> SparseMatrix:
    """``B = A B_0 : C^{n+1} -> C^n`` from the two-term ``B_0`` and the signed rotation sum."""
    d = algebra.dim
    unit = algebra.unit
    rows: Dict[int, Row] = {}
    b0_sign = -((-1) ** (n + 1))
    for r, t in enumerate(product(range(d), repeat=n + 1)):
        row: Row = {}
        for j in range(n + 1):
            sign = (-1) ** (n * j)
            rot = t[j:] + t[:j]
            for u, c in unit.items():
                idx = tensor_index((u,) + rot, d)
                row[idx] = row.get(idx, 0) + sign * c
                idx = tensor_index(rot + (u,), d)
                row[idx] = row.get(idx, 0) + sign * b0_sign * c
        rows[r] = {k: v for k, v in row.items() if v}
    return operator_from_rows(d ** (n + 1), d ** (n + 2), rows)


# subcomplexes ------------------------------------------------------------

def cyclic_subspace(c: MatrixCocyclicModule, n: int) -> LinearSubspace:
    """Cochains with ``phi = (-1)^n phi o rotation``, i.e. ``ker(id - (-1)^n t_n)``."""
    def build():
        ident = SparseMatrix.identity(c.space_dim(n))
        t = c.cyclic(n)
        return nullspace(ident - t if n % 2 == 0 else ident + t)
    return c._cached(("lambda", n), build)


def normalized_subspace(c: MatrixCocyclicModule, n: int) -> LinearSubspace:
    """Cochains killed by every degeneracy."""
    def build():
        if n == 0:
            return c.carrier_or_full(0)
        stacked = _vstack([c.degeneracy(n, j) for j in range(n)])
        return kernel_within(stacked, c.carrier_or_full(n))
    return c._cached(("normalized", n), build)


def _vstack(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    rows: Dict[int, Row] = {}
    off = 0
    ncols = mats[0].ncols
    for m in mats:
        for i, r in m.rows():
            rows[off + i] = dict(r)
        off += m.nrows
    return SparseMatrix(off, ncols, rows, _trusted=True)


def condition_rows(n: int, d: int, positions: Sequence[int], flagged: Sequence[Mapping[int, Scalar]],
                   evaluate) -> List[Row]:
    """Functionals ``phi -> (E phi)(tuple)`` where one flagged position carries a given vector.

    ``evaluate(index)`` returns the row (a functional on the domain) for a
    basis tuple of length ``n + 1``; multilinearity extends it to the
    flagged vector.
    """
    out: List[Row] = []
    seen = set()
    for j in positions:
        for vec in flagged:
            for rest in product(range(d), repeat=n):
                row: Row = {}
                for k, ck in vec.items():
                    idx = tensor_index(rest[:j] + (k,) + rest[j:], d)
                    for col, v in evaluate(idx).items():
                        y = row.get(col, 0) + ck * v
                        if y:
                            row[col] = y
                        else:
                            row.pop(col, None)
                if row:
                    key = frozenset(row.items())
                    if key not in seen:
                        seen.add(key)
                        out.append(row)
    return out


def constant_subspace_of(module: MatrixCocyclicModule, n: int, d: int, flagged: Sequence[Mapping[int, Scalar]],
                         prefix_dims: int = 1) -> LinearSubspace:
    """Cochains ``phi`` with ``phi`` and ``b phi`` vanishing when a slot ``j >= 1`` holds a flagged vector.

    ``prefix_dims`` is the size of any leading non-algebra coordinate (the
    Hopf slot of equivariant cochains) that ranges freely.
    """
    domain = module.carrier_or_full(n)
    size = module.space_dim(n)
    b = module.b(n)

    def phi_rows():
        rows = []
        per_block = d ** (n + 1)
        for block in range(prefix_dims):
            base = block * per_block
            rows += condition_rows(n, d, range(1, n + 1), flagged,
                                   lambda idx, base=base: {base + idx: 1})
        return rows

    def bphi_rows():
        rows = []
        per_block = d ** (n + 2)
        for block in range(prefix_dims):
            base = block * per_block
            rows += condition_rows(n + 1, d, range(1, n + 2), flagged,
                                   lambda idx, base=base: b.row(base + idx))
        return rows

    first = phi_rows()
    if first:
        domain = kernel_within(SparseMatrix.from_row_vectors(size, first), domain)
    second = bphi_rows()
    if second:
        domain = kernel_within(SparseMatrix.from_row_vectors(size, second), domain)
    return domain


def constant_subspace(c: AlgebraCochainComplex, inc: SubalgebraInclusion, n: int) -> LinearSubspace:
    """The ``C``-constant cochains of degree ``n`` for a subalgebra ``C`` of the complex's algebra."""
    if inc.big.dim != c.algebra.dim:
        raise ValueError("inclusion does not land in the complex's algebra")
    key = ("constant", inc, n)
    return c._cached(key, lambda: constant_subspace_of(c, n, c.d, inc.image_vectors()))


# cohomology --------------------------------------------------------------

def hc_plain(algebra: StructureConstantAlgebra, max_degree: int,
             complex_: Optional[AlgebraCochainComplex] = None) -> HCReport:
    """HC^n from the full (b, B) total complex, for ``n <= max_degree``."""
    c = complex_ or AlgebraCochainComplex(algebra)
    tc = build_total_complex(c, max_degree + 1)
    rep = cohomology_dims(tc)
    rep.name = f"HC({c.name})"
    return rep


def hc_constant(algebra: StructureConstantAlgebra, inc: SubalgebraInclusion, max_degree: int,
                complex_: Optional[AlgebraCochainComplex] = None) -> HCReport:
    """HC^n of the subcomplex of ``C``-constant cochains."""
    c = complex_ or AlgebraCochainComplex(algebra)
    tc = build_total_complex(c, max_degree + 1, check=False)
    sub = restrict_to_subcomplex(tc, lambda k: constant_subspace(c, inc, k))
    rep = cohomology_dims(sub)
    rep.name = f"HC({c.name}; {inc.small.name or 'C'})"
    return rep


def hc_lambda(algebra: StructureConstantAlgebra, max_degree: int,
              complex_: Optional[AlgebraCochainComplex] = None) -> HCReport:
    """Cohomology of the cyclic cochains under ``b`` (Connes' lambda complex)."""
    c = complex_ or AlgebraCochainComplex(algebra)
    ranks = {-1: 0}
    dims = {}
    for n in range(max_degree + 1):
        src = cyclic_subspace(c, n)
        dst = cyclic_subspace(c, n + 1)
        restricted = restrict_operator(c.b(n), src, dst, label=f"b on cyclic C^{n}")
        ranks[n] = rank(restricted)
        dims[n] = src.dim
    rows = []
    for n in range(max_degree + 1):
        ker = dims[n] - ranks[n]
        rows.append(HCRow(n, ker, ranks[n - 1], ker - ranks[n - 1], True))
    return HCReport(f"HC_lambda({c.name})", rows)
