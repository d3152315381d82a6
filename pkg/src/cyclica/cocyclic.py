"""Cocyclic modules as per-degree matrices, their (b, B) total complexes and cohomology.

A cochain of degree ``n`` is a coordinate vector in ``C^n``.  Faces map
``C^n -> C^{n+1}``, degeneracies ``C^n -> C^{n-1}`` and the cyclic operator
``C^n -> C^n``; every matrix acts on column vectors, so ``x @ y`` means
"apply y, then x".

The cyclic operator is stored unsigned.  Signs enter only through the
alternating sum in ``b``, the operator ``A = sum_j (-1)^{nj} t^j`` and the
two-term operator ``B_0``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import ValidationReport
from .linalg import (
    ImageEscapesCodomain,
    LinearSubspace,
    SparseMatrix,
    direct_sum,
    rank,
    rank_on,
    restrict_operator,
    vanishes_on,
)


class DifferentialSquareNonzero(ArithmeticError):
    pass


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CYCLICA_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence) -> list:
    """Ordered map, spread over ``CYCLICA_THREADS`` worker threads."""
    threads = thread_count()
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


class MatrixCocyclicModule:
    """A cocyclic module whose operators are built lazily and cached.

    Subclasses override ``space_dim`` and the ``_face``/``_degeneracy``/
    ``_cyclic`` builders.  The optional carrier is the subspace on which the
    cocyclic identities genuinely hold; ``None`` means the whole space.
    """

    name = "cocyclic"

    def __init__(self):
        self._cache: Dict[Tuple, object] = {}

    # to override ---------------------------------------------------------

    def space_dim(self, n: int) -> int:
        raise NotImplementedError

    def _face(self, n: int, i: int) -> SparseMatrix:
        raise NotImplementedError

    def _degeneracy(self, n: int, j: int) -> SparseMatrix:
        raise NotImplementedError

    def _cyclic(self, n: int) -> SparseMatrix:
        raise NotImplementedError

    def _carrier(self, n: int) -> Optional[LinearSubspace]:
        return None

    # cached access -------------------------------------------------------

    def _cached(self, key: Tuple, build: Callable[[], object]):
        value = self._cache.get(key)
        if value is None:
            value = build()
            self._cache[key] = value
        return value

    def face(self, n: int, i: int) -> SparseMatrix:
        if not 0 <= i <= n + 1:
            raise IndexError(f"face d_{n}^{i} does not exist")
        return self._cached(("d", n, i), lambda: self._face(n, i))

    def degeneracy(self, n: int, j: int) -> SparseMatrix:
        if not 0 <= j <= n - 1:
            raise IndexError(f"degeneracy s_{n}^{j} does not exist")
        return self._cached(("s", n, j), lambda: self._degeneracy(n, j))

    def cyclic(self, n: int) -> SparseMatrix:
        return self._cached(("t", n), lambda: self._cyclic(n))

    def carrier(self, n: int) -> Optional[LinearSubspace]:
        return self._cached(("carrier", n), lambda: self._carrier(n) or False) or None

    def carrier_or_full(self, n: int) -> LinearSubspace:
        c = self.carrier(n)
        return c if c is not None else LinearSubspace.full(self.space_dim(n))

    def cyclic_power(self, n: int, k: int) -> SparseMatrix:
        if k == 0:
            return SparseMatrix.identity(self.space_dim(n))
        return self._cached(("t^", n, k), lambda: self.cyclic(n) @ self.cyclic_power(n, k - 1))

    def b(self, n: int) -> SparseMatrix:
        return derived_b(self, n)

    def B(self, n: int) -> SparseMatrix:
        return derived_B(self, n)

    def prebuild(self, max_degree: int) -> None:
        """Build operators through ``max_degree`` (optionally in parallel)."""
        jobs: List[Callable[[], object]] = []
        for n in range(max_degree + 1):
            jobs += [lambda n=n, i=i: self.face(n, i) for i in range(n + 2)]
            jobs += [lambda n=n, j=j: self.degeneracy(n, j) for j in range(n)]
            jobs.append(lambda n=n: self.cyclic(n))
        parallel_map(lambda f: f(), jobs)


class ExplicitCocyclicModule(MatrixCocyclicModule):
    """Cocyclic module given by explicit operator tables (used for synthetic inputs)."""

    def __init__(self, dims: Sequence[int], faces: Mapping[Tuple[int, int], SparseMatrix],
                 degeneracies: Mapping[Tuple[int, int], SparseMatrix], cyclic: Mapping[int, SparseMatrix],
                 carriers: Optional[Mapping[int, LinearSubspace]] = None, name: str = "explicit"):
        super().__init__()
        self.name = name
        self._dims = list(dims)
        self._faces = dict(faces)
        self._degs = dict(degeneracies)
        self._cyc = dict(cyclic)
        self._carriers = dict(carriers or {})

    @classmethod
    def replacing(cls, base: MatrixCocyclicModule, n_max: int, *, cyclic: Mapping[int, SparseMatrix] = (),
                  name: str = "modified") -> "ExplicitCocyclicModule":
        """Copy of ``base`` through degree ``n_max`` with some cyclic operators swapped out."""
        faces = {(n, i): base.face(n, i) for n in range(n_max + 1) for i in range(n + 2)}
        degs = {(n, j): base.degeneracy(n, j) for n in range(1, n_max + 2) for j in range(n)}
        cyc = {n: base.cyclic(n) for n in range(n_max + 2)}
        cyc.update(dict(cyclic))
        carriers = {n: base.carrier(n) for n in range(n_max + 2) if base.carrier(n) is not None}
        return cls([base.space_dim(n) for n in range(n_max + 3)], faces, degs, cyc, carriers, name=name)

    def space_dim(self, n: int) -> int:
        return self._dims[n]

    def _face(self, n, i):
        return self._faces[(n, i)]

    def _degeneracy(self, n, j):
        return self._degs[(n, j)]

    def _cyclic(self, n):
        return self._cyc[n]

    def _carrier(self, n):
        return self._carriers.get(n)


# b and B -------------------------------------------------------------------

def derived_b(m: MatrixCocyclicModule, n: int) -> SparseMatrix:
    """``b = sum_{i=0}^{n+1} (-1)^i d_n^i : C^n -> C^{n+1}``."""
    def build():
        acc = SparseMatrix.zeros(m.space_dim(n + 1), m.space_dim(n))
        for i in range(n + 2):
            d = m.face(n, i)
            acc = acc + d if i % 2 == 0 else acc - d
        return acc
    return m._cached(("b", n), build)


def cyclic_antisymmetrizer(m: MatrixCocyclicModule, n: int) -> SparseMatrix:
    """``A = sum_{j=0}^{n} (-1)^{nj} t_n^j`` on ``C^n``."""
    def build():
        acc = SparseMatrix.zeros(m.space_dim(n), m.space_dim(n))
        for j in range(n + 1):
            tj = m.cyclic_power(n, j)
            acc = acc - tj if (n * j) % 2 else acc + tj
        return acc
    return m._cached(("A", n), build)


def derived_B(m: MatrixCocyclicModule, n: int) -> SparseMatrix:
    """Connes' ``B = A B_0 : C^{n+1} -> C^n``.

    ``B_0 = s (t + (-1)^n)`` with ``s`` the top degeneracy of ``C^{n+1}``, so
    that ``B_0 phi(a^0..a^n) = phi(1, a^0..a^n) + (-1)^n phi(a^0..a^n, 1)``.
    """
    if n < 0:
        return SparseMatrix.zeros(0, m.space_dim(0))

    def build():
        top = m.degeneracy(n + 1, n)
        inner = m.cyclic(n + 1)
        ident = SparseMatrix.identity(m.space_dim(n + 1))
        inner = inner + ident if n % 2 == 0 else inner - ident
        b0 = top @ inner
        return cyclic_antisymmetrizer(m, n) @ b0
    return m._cached(("B", n), build)


# identity suite --------------------------------------------------------------

def _agree(lhs: SparseMatrix, rhs: SparseMatrix, carrier: Optional[LinearSubspace]) -> bool:
    if carrier is None or carrier.is_full():
        return lhs == rhs
    return vanishes_on(lhs - rhs, carrier)


def verify_cocyclic(m: MatrixCocyclicModule, n_max: int, *, cosimplicial: bool = True) -> ValidationReport:
    """Check the cyclic identities for domain degrees ``n <= n_max`` on the carrier.

    Cosimplicial identities are checked only where every space involved has
    degree at most ``n_max + 1``.
    """
    rep = ValidationReport(m.name, checked=["cyclic-face", "cyclic-extra-face", "cyclic-degeneracy",
                                            "cyclic-degeneracy-0", "cyclic-order"])
    if cosimplicial:
        rep.checked += ["face-face", "degeneracy-face", "degeneracy-degeneracy"]
    for n in range(n_max + 1):
        car = m.carrier(n)
        t_n = m.cyclic(n)
        t_up = m.cyclic(n + 1)
        for i in range(1, n + 2):
            if not _agree(t_up @ m.face(n, i), m.face(n, i - 1) @ t_n, car):
                rep.fail("cyclic-face", (n, i), f"t_{n + 1} d_{n}^{i} != d_{n}^{i - 1} t_{n}")
        if not _agree(t_up @ m.face(n, 0), m.face(n, n + 1), car):
            rep.fail("cyclic-extra-face", (n,), f"t_{n + 1} d_{n}^0 != d_{n}^{n + 1}")
        if n >= 1:
            t_dn = m.cyclic(n - 1)
            for j in range(1, n):
                if not _agree(t_dn @ m.degeneracy(n, j), m.degeneracy(n, j - 1) @ t_n, car):
                    rep.fail("cyclic-degeneracy", (n, j), f"t_{n - 1} s_{n}^{j} != s_{n}^{j - 1} t_{n}")
            if not _agree(t_dn @ m.degeneracy(n, 0), m.degeneracy(n, n - 1) @ m.cyclic_power(n, 2), car):
                rep.fail("cyclic-degeneracy-0", (n,), f"t_{n - 1} s_{n}^0 != s_{n}^{n - 1} t_{n}^2")
        if not _agree(m.cyclic_power(n, n + 1), SparseMatrix.identity(m.space_dim(n)), car):
            rep.fail("cyclic-order", (n,), f"t_{n}^{n + 1} != id")
        if not cosimplicial:
            continue
        if n + 2 <= n_max + 1:
            for j in range(n + 3):
                for i in range(j):
                    if not _agree(m.face(n + 1, j) @ m.face(n, i), m.face(n + 1, i) @ m.face(n, j - 1), car):
                        rep.fail("face-face", (n, i, j), f"d^{j} d^{i} != d^{i} d^{j - 1}")
        ident = SparseMatrix.identity(m.space_dim(n))
        for i in range(n + 2):
            for j in range(n + 1):
                lhs = m.degeneracy(n + 1, j) @ m.face(n, i)
                if i < j:
                    rhs = m.face(n - 1, i) @ m.degeneracy(n, j - 1)
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = m.face(n - 1, i - 1) @ m.degeneracy(n, j)
                if not _agree(lhs, rhs, car):
                    rep.fail("degeneracy-face", (n, i, j), f"s^{j} d^{i} violates the cosimplicial identity")
        for j in range(n - 1):
            for i in range(j + 1):
                if not _agree(m.degeneracy(n - 1, j) @ m.degeneracy(n, i),
                              m.degeneracy(n - 1, i) @ m.degeneracy(n, j + 1), car):
                    rep.fail("degeneracy-degeneracy", (n, i, j), f"s^{j} s^{i} != s^{i} s^{j + 1}")
    return rep


def verify_mixed_identities(m: MatrixCocyclicModule, n_max: int) -> ValidationReport:
    """``b^2 = 0``, ``B^2 = 0`` and ``bB + Bb = 0`` on the carrier, for cochains of degree ``<= n_max``."""
    rep = ValidationReport(m.name, checked=["b^2", "B^2", "bB+Bb"])
    for n in range(n_max + 1):
        car = m.carrier(n)
        d = m.space_dim(n)
        if not _agree(m.b(n + 1) @ m.b(n), SparseMatrix.zeros(m.space_dim(n + 2), d), car):
            rep.fail("b^2", (n,), f"b b != 0 on C^{n}")
        if n >= 2 and not _agree(m.B(n - 2) @ m.B(n - 1), SparseMatrix.zeros(m.space_dim(n - 2), d), car):
            rep.fail("B^2", (n,), f"B B != 0 on C^{n}")
        if n >= 1:
            lhs = m.b(n - 1) @ m.B(n - 1) + m.B(n) @ m.b(n)
        else:
            lhs = m.B(0) @ m.b(0)
        if not _agree(lhs, SparseMatrix.zeros(d, d), car):
            rep.fail("bB+Bb", (n,), f"bB + Bb != 0 on C^{n}")
    return rep


# total complex ---------------------------------------------------------------

def _components(n: int) -> List[int]:
    """Cochain degrees of the summands of ``T^n``, in column order ``m = 0, 1, ...``."""
    return [n - 2 * k for k in range(n // 2 + 1)]


SubspaceFamily = Union[Mapping[int, LinearSubspace], Callable[[int], LinearSubspace]]


def _family(sub: SubspaceFamily) -> Callable[[int], LinearSubspace]:
    return sub if callable(sub) else (lambda k: sub[k])


@dataclass
class TotalComplex:
    """Truncated total complex ``T^0 -> ... -> T^{n_max}`` of the (b, B) bicomplex.

    ``ambient[n]`` is the block differential on full coordinate spaces; when
    ``spaces`` is set the complex lives on those subspaces and ``D[n]`` is the
    restriction in their echelon bases.
    """

    module: MatrixCocyclicModule
    n_max: int
    ambient: List[SparseMatrix]
    spaces: Optional[List[LinearSubspace]] = None
    cochain_spaces: Optional[Dict[int, LinearSubspace]] = None
    name: str = ""
    _D: Dict[int, SparseMatrix] = field(default_factory=dict, repr=False)
    _ranks: Dict[int, int] = field(default_factory=dict, repr=False)

    def components(self, n: int) -> List[int]:
        return _components(n)

    def dim(self, n: int) -> int:
        if self.spaces is not None:
            return self.spaces[n].dim
        return sum(self.module.space_dim(k) for k in _components(n))

    def D(self, n: int) -> SparseMatrix:
        if n not in self._D:
            if self.spaces is None:
                self._D[n] = self.ambient[n]
            else:
                self._D[n] = restrict_operator(self.ambient[n], self.spaces[n], self.spaces[n + 1],
                                               label=f"D^{n}")
        return self._D[n]

    def rank(self, n: int) -> int:
        if n < 0:
            return 0
        if n not in self._ranks:
            if self.spaces is None:
                self._ranks[n] = rank(self.ambient[n])
            else:
                self._ranks[n] = rank_on(self.ambient[n], self.spaces[n])
        return self._ranks[n]


def total_differential(m: MatrixCocyclicModule, n: int) -> SparseMatrix:
    """Block differential ``T^n -> T^{n+1}``: ``b`` keeps the column, ``B`` moves it one to the right."""
    src = _components(n)
    dst = _components(n + 1)
    blocks = {}
    for k, deg in enumerate(src):
        blocks[(k, k)] = m.b(deg)
        if deg >= 1:
            blocks[(k + 1, k)] = m.B(deg - 1)
    return SparseMatrix.block([m.space_dim(d) for d in dst], [m.space_dim(d) for d in src], blocks)


def build_total_complex(m: MatrixCocyclicModule, n_max: int, *, check: bool = True) -> TotalComplex:
    """Total complex through ``T^{n_max}``, restricted to the carrier when the module has one."""
    ambient = parallel_map(lambda n: total_differential(m, n), list(range(n_max)))
    spaces = None
    cochain_spaces = None
    if any(m.carrier(k) is not None for k in range(n_max + 1)):
        cochain_spaces = {k: m.carrier_or_full(k) for k in range(n_max + 1)}
        spaces = [direct_sum([cochain_spaces[k] for k in _components(n)]) for n in range(n_max + 1)]
    tc = TotalComplex(m, n_max, ambient, spaces, cochain_spaces, name=m.name)
    if check:
        check_square_zero(tc)
    return tc


def check_square_zero(tc: TotalComplex) -> None:
    for n in range(tc.n_max - 1):
        prod = tc.D(n + 1) @ tc.D(n)
        if not prod.is_zero():
            raise DifferentialSquareNonzero(f"D^{n + 1} D^{n} != 0 in {tc.name}")


def restrict_to_subcomplex(target: Union[TotalComplex, MatrixCocyclicModule], sub: SubspaceFamily,
                           n_max: Optional[int] = None, name: str = ""):
    """Restrict a total complex (or a cocyclic module's operators) to per-degree subspaces.

    For a total complex ``sub(k)`` is a subspace of the cochain space ``C^k``.
    Closure failures raise :class:`ImageEscapesCodomain` naming the degree
    and the offending operator.
    """
    fam = _family(sub)
    if isinstance(target, MatrixCocyclicModule):
        if n_max is None:
            raise ValueError("n_max is required when restricting a cocyclic module")
        return _restrict_module(target, fam, n_max, name)
    tc = target
    cochain = {k: fam(k) for k in range(tc.n_max + 1)}
    for k, s in cochain.items():
        if tc.cochain_spaces is not None and not tc.cochain_spaces[k].contains(s):
            raise ValueError(f"subspace at degree {k} is not inside the current complex")
    spaces = [direct_sum([cochain[k] for k in _components(n)]) for n in range(tc.n_max + 1)]
    out = TotalComplex(tc.module, tc.n_max, tc.ambient, spaces, cochain, name=name or tc.name)
    for n in range(tc.n_max):
        try:
            out.D(n)
        except ImageEscapesCodomain:
            _diagnose(tc.module, cochain, n)
            raise
    return out


def _diagnose(m: MatrixCocyclicModule, cochain: Mapping[int, LinearSubspace], n: int) -> None:
    for deg in _components(n):
        try:
            restrict_operator(m.b(deg), cochain[deg], cochain[deg + 1], label=f"b on C^{deg}")
        except ImageEscapesCodomain as exc:
            raise ImageEscapesCodomain(f"degree {deg}: b does not preserve the subcomplex",
                                       witness=exc.witness, label=f"b@{deg}") from None
        if deg >= 1:
            try:
                restrict_operator(m.B(deg - 1), cochain[deg], cochain[deg - 1], label=f"B on C^{deg}")
            except ImageEscapesCodomain as exc:
                raise ImageEscapesCodomain(f"degree {deg}: B does not preserve the subcomplex",
                                           witness=exc.witness, label=f"B@{deg}") from None


class RestrictedCocyclicModule(MatrixCocyclicModule):
    """Operators of a cocyclic module written in the echelon bases of invariant subspaces."""

    def __init__(self, base: MatrixCocyclicModule, sub: Callable[[int], LinearSubspace], n_max: int, name: str):
        super().__init__()
        self.base = base
        self.sub = sub
        self.n_max = n_max
        self.name = name or f"{base.name}|sub"

    def space_dim(self, n):
        return self.sub(n).dim

    def _restrict(self, op: SparseMatrix, src: int, dst: int, label: str) -> SparseMatrix:
        try:
            return restrict_operator(op, self.sub(src), self.sub(dst), label=label)
        except ImageEscapesCodomain as exc:
            raise ImageEscapesCodomain(f"degree {src}: {label} leaves the subspace",
                                       witness=exc.witness, label=label) from None

    def _face(self, n, i):
        return self._restrict(self.base.face(n, i), n, n + 1, f"d_{n}^{i}")

    def _degeneracy(self, n, j):
        return self._restrict(self.base.degeneracy(n, j), n, n - 1, f"s_{n}^{j}")

    def _cyclic(self, n):
        return self._restrict(self.base.cyclic(n), n, n, f"t_{n}")


def _restrict_module(m: MatrixCocyclicModule, fam: Callable[[int], LinearSubspace], n_max: int,
                     name: str) -> RestrictedCocyclicModule:
    cache: Dict[int, LinearSubspace] = {}

    def sub(k: int) -> LinearSubspace:
        if k not in cache:
            cache[k] = fam(k)
        return cache[k]

    out = RestrictedCocyclicModule(m, sub, n_max, name)
    for n in range(n_max + 1):
        for i in range(n + 2):
            out.face(n, i)
        for j in range(n):
            out.degeneracy(n, j)
        out.cyclic(n)
    return out


# cohomology ------------------------------------------------------------------

@dataclass(frozen=True)
class HCRow:
    degree: int
    kernel_dim: int
    image_rank: int
    hc_dim: int
    truncation_stable: bool = True

    def to_dict(self) -> dict:
        return {"degree": self.degree, "kernel_dim": self.kernel_dim, "image_rank": self.image_rank,
                "hc_dim": self.hc_dim, "truncation_stable": self.truncation_stable}


@dataclass
class HCReport:
    name: str
    rows: List[HCRow]

    def dims(self) -> List[int]:
        return [r.hc_dim for r in self.rows]

    def to_dict(self) -> dict:
        return {"name": self.name, "rows": [r.to_dict() for r in self.rows]}


def cohomology_dims(tc: TotalComplex) -> HCReport:
    """``dim HC^n = dim ker D^n - rank D^{n-1}`` for ``n <= n_max - 1``."""
    def row(n: int) -> HCRow:
        ker = tc.dim(n) - tc.rank(n)
        img = tc.rank(n - 1)
        return HCRow(n, ker, img, ker - img, True)
    parallel_map(tc.rank, list(range(tc.n_max)))
    rows = [row(n) for n in range(tc.n_max)]
    for r in rows:
        if r.hc_dim < 0:
            raise DifferentialSquareNonzero(f"negative cohomology dimension at degree {r.degree}")
    return HCReport(tc.name, rows)
