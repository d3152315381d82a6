"""Exact sparse linear algebra over the rationals.

Scalars are plain Python ``int`` or :class:`fractions.Fraction` values.
Integral values are kept as ``int`` so that the (very common) integer
structure constants never pay for Fraction arithmetic.

Matrices act on column vectors: ``m.row(i)`` is the ``i``-th row, and a
product ``a @ b`` is the composition "apply b, then a".  Subspaces are
stored by their reduced row echelon basis, which is canonical.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
Row = Dict[int, Scalar]


class ImageEscapesCodomain(ValueError):
    """Raised when a restricted operator sends a domain vector outside the codomain."""

    def __init__(self, message: str, *, witness: int | None = None, label: str | None = None):
        super().__init__(message)
        self.witness = witness
        self.label = label


def scalar(value) -> Scalar:
    """Coerce ``value`` to an exact scalar, rejecting floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        q = Fraction(value.strip())
        return q.numerator if q.denominator == 1 else q
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_scalar(value: Scalar) -> str:
    q = Fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _clean(row: Mapping[int, Scalar]) -> Row:
    return {j: v for j, v in row.items() if v}


class SparseMatrix:
    """Immutable sparse matrix with exact entries, stored row-wise."""

    __slots__ = ("nrows", "ncols", "_rows", "_t")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Mapping[int, Mapping[int, Scalar]]] = None,
                 *, _trusted: bool = False):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        self.nrows = nrows
        self.ncols = ncols
        self._t: Optional[SparseMatrix] = None
        if rows is None:
            self._rows: Dict[int, Row] = {}
        elif _trusted:
            self._rows = rows  # type: ignore[assignment]
        else:
            store: Dict[int, Row] = {}
            for i, row in rows.items():
                if not 0 <= i < nrows:
                    raise IndexError(f"row index {i} out of range for {nrows} rows")
                clean = {}
                for j, v in row.items():
                    if not 0 <= j < ncols:
                        raise IndexError(f"column index {j} out of range for {ncols} columns")
                    v = scalar(v)
                    if v:
                        clean[j] = v
                if clean:
                    store[i] = clean
            self._rows = store

    # construction -------------------------------------------------------

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[Tuple[int, int, Scalar]]) -> "SparseMatrix":
        rows: Dict[int, Row] = {}
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) out of range for shape ({nrows}, {ncols})")
            row = rows.setdefault(i, {})
            if j in row:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            row[j] = scalar(v)
        return cls(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: Optional[int] = None) -> "SparseMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = {}
        for i, line in enumerate(data):
            if len(line) != ncols:
                raise ValueError("ragged dense matrix")
            rows[i] = {j: v for j, v in enumerate(line)}
        return cls(nrows, ncols, rows)

    @classmethod
    def from_row_vectors(cls, ncols: int, vectors: Sequence[Mapping[int, Scalar]]) -> "SparseMatrix":
        return cls(len(vectors), ncols, {i: _clean(v) for i, v in enumerate(vectors) if any(v.values())},
                   _trusted=True)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)}, _trusted=True)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols, {}, _trusted=True)

    @classmethod
    def block(cls, row_sizes: Sequence[int], col_sizes: Sequence[int],
              blocks: Mapping[Tuple[int, int], "SparseMatrix"]) -> "SparseMatrix":
        """Assemble a block matrix; missing blocks are zero."""
        roff = [0]
        for s in row_sizes:
            roff.append(roff[-1] + s)
        coff = [0]
        for s in col_sizes:
            coff.append(coff[-1] + s)
        rows: Dict[int, Row] = {}
        for (bi, bj), m in blocks.items():
            if m.shape != (row_sizes[bi], col_sizes[bj]):
                raise ValueError(f"block ({bi}, {bj}) has shape {m.shape}, expected "
                                 f"{(row_sizes[bi], col_sizes[bj])}")
            for i, row in m._rows.items():
                target = rows.setdefault(roff[bi] + i, {})
                o = coff[bj]
                for j, v in row.items():
                    target[o + j] = v
        return cls(roff[-1], coff[-1], rows, _trusted=True)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> Mapping[int, Scalar]:
        return self._rows.get(i, {})

    def rows(self) -> Iterator[Tuple[int, Mapping[int, Scalar]]]:
        for i in sorted(self._rows):
            yield i, self._rows[i]

    def entries(self) -> Iterator[Tuple[int, int, Scalar]]:
        """Nonzero entries in row-major order."""
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def __getitem__(self, key: Tuple[int, int]) -> Scalar:
        i, j = key
        return self._rows.get(i, {}).get(j, 0)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> List[List[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    @property
    def T(self) -> "SparseMatrix":
        if self._t is None:
            rows: Dict[int, Row] = {}
            for i, row in self._rows.items():
                for j, v in row.items():
                    rows.setdefault(j, {})[i] = v
            t = SparseMatrix(self.ncols, self.nrows, rows, _trusted=True)
            t._t = self
            self._t = t
        return self._t

    # arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other._rows
        out: Dict[int, Row] = {}
        for i, row in self._rows.items():
            acc: Row = {}
            for k, a in row.items():
                ork = orows.get(k)
                if ork is None:
                    continue
                for j, b in ork.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = _clean(acc)
            if acc:
                out[i] = acc
        return SparseMatrix(self.nrows, other.ncols, out, _trusted=True)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            target = out.setdefault(i, {})
            for j, v in row.items():
                target[j] = target.get(j, 0) + sign * v
        out = {i: c for i, c in ((i, _clean(r)) for i, r in out.items()) if c}
        return SparseMatrix(self.nrows, self.ncols, out, _trusted=True)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -1)

    def scale(self, c: Scalar) -> "SparseMatrix":
        c = scalar(c)
        if not c:
            return SparseMatrix.zeros(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols,
                            {i: {j: c * v for j, v in r.items()} for i, r in self._rows.items()},
                            _trusted=True)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def apply(self, vector: Mapping[int, Scalar]) -> Row:
        """Return ``self @ vector`` for a sparse column vector."""
        cols = self.T._rows
        acc: Row = {}
        for j, x in vector.items():
            col = cols.get(j)
            if col is None or not x:
                continue
            for i, v in col.items():
                acc[i] = acc.get(i, 0) + v * x
        return _clean(acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


# elimination -----------------------------------------------------------------

def _primitive(row: Mapping[int, Scalar]) -> Dict[int, int]:
    """Scale a row to coprime integers with a positive leading entry."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            d = v.denominator
            den = den * d // gcd(den, d)
    if den == 1:
        ints = {j: int(v) for j, v in row.items() if v}
    else:
        ints = {j: int(v * den) for j, v in row.items() if v}
    return _normalize(ints)


def _normalize(ints: Dict[int, int]) -> Dict[int, int]:
    if not ints:
        return ints
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    if ints[min(ints)] < 0:
        g = -g
    if g != 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


class Echelon:
    """Incremental fraction-free row echelon form.

    Each stored row is a primitive integer vector whose pivot is its
    smallest column index.  Pivot rows are not back-reduced until
    :meth:`rref` is requested.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Scalar]) -> Dict[int, int]:
        r = _primitive(row)
        piv = self.pivots
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                return r
            a, b = p[c], r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {j: a * v for j, v in r.items()} if a != 1 else dict(r)
            for j, v in p.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            r = _normalize(new)
        return r

    def add(self, row: Mapping[int, Scalar]) -> bool:
        """Insert ``row``; return True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def rref(self) -> Dict[int, Row]:
        """Fully reduced rows keyed by pivot column, pivot entries equal to 1."""
        reduced: Dict[int, Row] = {}
        for c in sorted(self.pivots, reverse=True):
            p = self.pivots[c]
            lead = p[c]
            r: Row = {j: (v if lead == 1 else Fraction(v, lead)) for j, v in p.items()}
            for c2 in sorted(j for j in p if j != c and j in reduced):
                coef = r.get(c2)
                if not coef:
                    continue
                for j, v in reduced[c2].items():
                    w = r.get(j, 0) - coef * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
            reduced[c] = {j: scalar(v) for j, v in r.items()}
        return reduced


def rank(m: SparseMatrix) -> int:
    """Exact rank over the rationals."""
    source = m if m.nrows <= m.ncols or m.nrows == 0 else m.T
    bound = min(m.nrows, m.ncols)
    e = Echelon()
    seen = set()
    for _, row in source.rows():
        key = frozenset(row.items())
        if key in seen:
            continue
        seen.add(key)
        e.add(row)
        if e.rank == bound:
            break
    return e.rank


def _rref_rows(ncols: int, rows: Iterable[Mapping[int, Scalar]]) -> Dict[int, Row]:
    e = Echelon()
    seen = set()
    for row in rows:
        if not row:
            continue
        key = frozenset(row.items())
        if key in seen:
            continue
        seen.add(key)
        e.add(row)
        if e.rank == ncols:
            break
    return e.rref()


class LinearSubspace:
    """A subspace of Q^n held by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, rref_rows: Mapping[int, Row]):
        self.ambient_dim = ambient_dim
        self.pivots: Tuple[int, ...] = tuple(sorted(rref_rows))
        self.basis = SparseMatrix(len(self.pivots), ambient_dim,
                                  {k: dict(rref_rows[c]) for k, c in enumerate(self.pivots)},
                                  _trusted=True)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping[int, Scalar]]) -> "LinearSubspace":
        return cls(ambient_dim, _rref_rows(ambient_dim, vectors))

    @classmethod
    def full(cls, n: int) -> "LinearSubspace":
        return cls(n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zero(cls, n: int) -> "LinearSubspace":
        return cls(n, {})

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def vectors(self) -> List[Mapping[int, Scalar]]:
        return [self.basis.row(k) for k in range(self.dim)]

    def coordinates(self, v: Mapping[int, Scalar]) -> Optional[List[Scalar]]:
        """Coordinates of ``v`` in the echelon basis, or None if ``v`` is outside."""
        coords = [v.get(c, 0) for c in self.pivots]
        residual = dict(v)
        for k, c in enumerate(coords):
            if not c:
                continue
            for j, w in self.basis.row(k).items():
                x = residual.get(j, 0) - c * w
                if x:
                    residual[j] = x
                else:
                    residual.pop(j, None)
        if any(residual.values()):
            return None
        return coords

    def contains_vector(self, v: Mapping[int, Scalar]) -> bool:
        return self.coordinates(v) is not None

    def contains(self, other: "LinearSubspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains_vector(v) for v in other.vectors())

    def annihilator(self) -> SparseMatrix:
        """Rows spanning the functionals that vanish on this subspace."""
        return nullspace(self.basis).basis

    def intersection(self, other: "LinearSubspace") -> "LinearSubspace":
        _check_ambient(self, other)
        if self.dim > other.dim:
            return other.intersection(self)
        if other.is_full():
            return self
        return kernel_within(other.annihilator(), self)

    def sum(self, other: "LinearSubspace") -> "LinearSubspace":
        _check_ambient(self, other)
        return LinearSubspace.span(self.ambient_dim, self.vectors() + other.vectors())

    __and__ = intersection
    __add__ = sum

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"LinearSubspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: LinearSubspace, b: LinearSubspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_ops(a: LinearSubspace, b: LinearSubspace) -> dict:
    _check_ambient(a, b)
    return {
        "intersection": a.intersection(b),
        "sum": a.sum(b),
        "contains": a.contains(b),
        "equal": a == b,
    }


def nullspace(m: SparseMatrix) -> LinearSubspace:
    """Right kernel ``{v : m v = 0}``."""
    n = m.ncols
    reduced = _rref_rows(n, (row for _, row in m.rows()))
    free = [j for j in range(n) if j not in reduced]
    vectors = []
    for f in free:
        v: Row = {f: 1}
        for c, r in reduced.items():
            x = r.get(f)
            if x:
                v[c] = -x
        vectors.append(v)
    return LinearSubspace.span(n, vectors)


def direct_sum(parts: Sequence[LinearSubspace]) -> LinearSubspace:
    rows: Dict[int, Row] = {}
    offset = 0
    for part in parts:
        for k, c in enumerate(part.pivots):
            rows[offset + c] = {offset + j: v for j, v in part.basis.row(k).items()}
        offset += part.ambient_dim
    return LinearSubspace(offset, rows)


def images(m: SparseMatrix, domain: LinearSubspace) -> SparseMatrix:
    """Rows are ``m v`` for the basis vectors ``v`` of ``domain``."""
    if m.ncols != domain.ambient_dim:
        raise ValueError(f"operator with {m.ncols} columns cannot act on ambient {domain.ambient_dim}")
    if domain.is_full():
        return m.T
    return domain.basis @ m.T


def kernel_within(m: SparseMatrix, domain: LinearSubspace) -> LinearSubspace:
    """The subspace ``{v in domain : m v = 0}``."""
    if domain.dim == 0:
        return domain
    y = images(m, domain)
    if y.is_zero():
        return domain
    coeffs = nullspace(y.T)
    if coeffs.dim == 0:
        return LinearSubspace.zero(domain.ambient_dim)
    if domain.is_full():
        return coeffs
    return LinearSubspace.span(domain.ambient_dim, [r for _, r in (coeffs.basis @ domain.basis).rows()])


def rank_on(m: SparseMatrix, domain: LinearSubspace) -> int:
    """Rank of ``m`` restricted to ``domain``."""
    if domain.dim == 0:
        return 0
    return rank(images(m, domain))


def vanishes_on(m: SparseMatrix, domain: LinearSubspace) -> bool:
    return images(m, domain).is_zero()


def restrict_operator(m: SparseMatrix, domain: LinearSubspace, codomain: LinearSubspace,
                      label: str | None = None) -> SparseMatrix:
    """Matrix of ``m`` between the echelon bases of ``domain`` and ``codomain``.

    Raises :class:`ImageEscapesCodomain` if some basis vector of ``domain`` is
    sent outside ``codomain``.
    """
    if m.nrows != codomain.ambient_dim:
        raise ValueError(f"operator with {m.nrows} rows cannot land in ambient {codomain.ambient_dim}")
    y = images(m, domain)
    rows: Dict[int, Row] = {}
    for k in range(domain.dim):
        coords = codomain.coordinates(y.row(k))
        if coords is None:
            where = f" ({label})" if label else ""
            raise ImageEscapesCodomain(
                f"image of domain basis vector {k}{where} lies outside the codomain", witness=k, label=label)
        for p, c in enumerate(coords):
            if c:
                rows.setdefault(p, {})[k] = c
    return SparseMatrix(codomain.dim, domain.dim, rows, _trusted=True)
