"""Equivariant cochains ``Hom(H (x) A^{(x)(n+1)}, k)`` of a Hopf module algebra.

Coordinates are ``(h; a^0, ..., a^n)``, h-major: the basis tuple sits at
``h * dA^(n+1) + lex(a)``.  All operators are built on the ambient space and
then restricted to the equivariant carrier, where the cocyclic identities
hold.  On the ambient space they generally do not (``t^{n+1}`` is twisted by
the inverse antipode).
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import SubalgebraInclusion, ValidationReport, Vector, vadd
from .algebra_complex import _vstack, constant_subspace_of, expand, operator_from_rows, tensor_index
from .cocyclic import (
    HCReport,
    MatrixCocyclicModule,
    build_total_complex,
    cohomology_dims,
    parallel_map,
    restrict_to_subcomplex,
    verify_cocyclic,
)
from .hopf import ModuleAlgebraAction, NotActionStable
from .linalg import LinearSubspace, Row, Scalar, SparseMatrix, kernel_within, nullspace, restrict_operator


class CocyclicIdentityFailure(ArithmeticError):
    def __init__(self, report: ValidationReport):
        super().__init__(f"cocyclic identities fail on the carrier: {', '.join(report.failed_axioms())}")
        self.report = report


class _Twist:
    """Cached pieces of ``h_(2) (x) S^{-1}(h_(1))(a)`` for basis ``h`` and ``a``."""

    def __init__(self, act: ModuleAlgebraAction):
        self.act = act
        hopf = act.hopf
        self.table: Dict[Tuple[int, int], List[Tuple[int, Vector]]] = {}
        for h in range(hopf.dim):
            for a in range(act.alg.dim):
                terms: List[Tuple[int, Vector]] = []
                for (p, q), c in sorted(hopf.coproduct[h].items()):
                    v = act.act(hopf.S_inv({p: 1}), {a: 1})
                    if v:
                        terms.append((q, {k: c * x for k, x in v.items()}))
                self.table[(h, a)] = terms

    def __call__(self, h: int, a: int) -> List[Tuple[int, Vector]]:
        return self.table[(h, a)]


class EquivariantComplex(MatrixCocyclicModule):
    def __init__(self, act: ModuleAlgebraAction):
        super().__init__()
        self.action = act
        self.dH = act.hopf.dim
        self.dA = act.alg.dim
        self.name = f"C_H({act.name or 'action'})"
        self._twist = _Twist(act)

    def space_dim(self, n: int) -> int:
        return self.dH * self.dA ** (n + 1) if n >= 0 else 0

    def index(self, h: int, a: Sequence[int]) -> int:
        return tensor_index((h,) + tuple(a), self.dA)

    def tuples(self, n: int):
        return product(range(self.dH), product(range(self.dA), repeat=n + 1))

    def _face(self, n: int, i: int) -> SparseMatrix:
        dA, alg = self.dA, self.action.alg
        rows: Dict[int, Row] = {}
        for r, (h, t) in enumerate(self.tuples(n + 1)):
            row: Row = {}
            if i <= n:
                vec = alg.basis_product(t[i], t[i + 1])
                expand(1, self.index(h, t[:i]), [vec] + [{x: 1} for x in t[i + 2:]], dA, row)
            else:
                for q, v in self._twist(h, t[n + 1]):
                    first = alg.product(v, {t[0]: 1})
                    expand(1, q, [first] + [{x: 1} for x in t[1:n + 1]], dA, row)
            if row:
                rows[r] = row
        return operator_from_rows(self.space_dim(n + 1), self.space_dim(n), rows)

    def _degeneracy(self, n: int, j: int) -> SparseMatrix:
        dA, unit = self.dA, self.action.alg.unit
        rows: Dict[int, Row] = {}
        for r, (h, t) in enumerate(self.tuples(n - 1)):
            row: Row = {}
            expand(1, self.index(h, t[:j + 1]), [unit] + [{x: 1} for x in t[j + 1:]], dA, row)
            rows[r] = row
        return operator_from_rows(self.space_dim(n - 1), self.space_dim(n), rows)

    def _cyclic(self, n: int) -> SparseMatrix:
        dA = self.dA
        rows: Dict[int, Row] = {}
        for r, (h, t) in enumerate(self.tuples(n)):
            row: Row = {}
            for q, v in self._twist(h, t[n]):
                expand(1, q, [v] + [{x: 1} for x in t[:n]], dA, row)
            if row:
                rows[r] = row
        return operator_from_rows(self.space_dim(n), self.space_dim(n), rows)

    def _carrier(self, n: int) -> Optional[LinearSubspace]:
        sub = equivariant_subspace(self.action, n)
        return None if sub.is_full() else sub


# equivariance constraints ------------------------------------------------------

def _leg_images(act: ModuleAlgebraAction, legs: Sequence[int], a: Sequence[int]) -> List[Vector]:
    return [act.act_basis(l, x) for l, x in zip(legs, a)]


def _constraints(act: ModuleAlgebraAction, n: int, alt: bool, adjoint_legs: str = "last") -> SparseMatrix:
    hopf, H = act.hopf, act.hopf.alg
    dH, dA = hopf.dim, act.alg.dim
    size = dH * dA ** (n + 1)
    rows: List[Row] = []
    for g in range(dH):
        eps = hopf.counit.get(g, 0)
        for h in range(dH):
            for a in product(range(dA), repeat=n + 1):
                row: Row = {}
                if not alt:
                    # phi(g_(n+2) . h, g_(1)(a^0), ..., g_(n+1)(a^n)) - eps(g) phi(h, a)
                    # the adjoint leg comes last; with it first the space is not
                    # closed under t once S^2 != id
                    for legs, c in hopf.legs(g, n + 3).items():
                        if adjoint_legs == "last":
                            on_a, left, right = legs[:n + 1], legs[n + 1], legs[n + 2]
                        else:
                            on_a, left, right = legs[2:], legs[0], legs[1]
                        images = _leg_images(act, on_a, a)
                        if not all(images):
                            continue
                        hvec = H.product(H.product({left: 1}, {h: 1}), hopf.S_inv({right: 1}))
                        for p, x in hvec.items():
                            expand(c * x, p, images, dA, row)
                    if eps:
                        vadd(row, {tensor_index((h,) + a, dA): 1}, -eps)
                else:
                    # phi(S(g_(2)) h g_(1), a) - phi(h, g_(1)(a^0), ..., g_(n+1)(a^n))
                    base = tensor_index(a, dA)
                    for (p, q), c in hopf.coproduct[g].items():
                        hvec = H.product(H.product(hopf.S({q: 1}), {h: 1}), {p: 1})
                        for k, x in hvec.items():
                            vadd(row, {k * dA ** (n + 1) + base: c * x})
                    for legs, c in hopf.legs(g, n + 1).items():
                        images = _leg_images(act, legs, a)
                        if all(images):
                            expand(-c, h, images, dA, row)
                if row:
                    rows.append(row)
    return SparseMatrix.from_row_vectors(size, rows)


def equivariant_subspace(act: ModuleAlgebraAction, n: int, adjoint_legs: str = "last") -> LinearSubspace:
    """Cochains with ``phi(g_(n+2).h, g_(1)(a^0), .., g_(n+1)(a^n)) = eps(g) phi(h, a)`` for all basis ``g``.

    ``adjoint_legs="first"`` puts the adjoint on ``g_(1)`` instead and the
    a-slots on ``g_(2)..g_(n+2)``; the two agree for cocommutative ``H``.
    """
    if adjoint_legs not in ("last", "first"):
        raise ValueError(f"adjoint_legs must be 'last' or 'first', got {adjoint_legs!r}")
    return nullspace(_constraints(act, n, alt=False, adjoint_legs=adjoint_legs))


def equivariant_subspace_alt(act: ModuleAlgebraAction, n: int) -> LinearSubspace:
    """Same space cut out by ``f(S(g_(2)) h g_(1), a) = f(h, g_(1)(a^0), ..., g_(n+1)(a^n))``."""
    return nullspace(_constraints(act, n, alt=True))


# construction ------------------------------------------------------------------

def check_closure(ec: EquivariantComplex, n_max: int) -> None:
    """Every ambient operator maps the carrier into the carrier, for domain degree ``<= n_max``."""
    def one(n: int) -> None:
        src = ec.carrier_or_full(n)
        for i in range(n + 2):
            restrict_operator(ec.face(n, i), src, ec.carrier_or_full(n + 1), label=f"d_{n}^{i}")
        for j in range(n):
            restrict_operator(ec.degeneracy(n, j), src, ec.carrier_or_full(n - 1), label=f"s_{n}^{j}")
        restrict_operator(ec.cyclic(n), src, src, label=f"t_{n}")
    parallel_map(one, list(range(n_max + 1)))


def build_equivariant_complex(act: ModuleAlgebraAction, n_max: int, *, check: bool = True) -> EquivariantComplex:
    """Build operators and carriers through degree ``n_max``; with ``check``, test closure and identities."""
    ec = EquivariantComplex(act)
    ec.prebuild(n_max)
    parallel_map(ec.carrier, list(range(n_max + 2)))
    if check:
        check_closure(ec, n_max)
        rep = verify_cocyclic(ec, n_max)
        if not rep.passed:
            raise CocyclicIdentityFailure(rep)
    return ec


# subcomplexes ------------------------------------------------------------------

def normalized_equivariant_subspace(ec: EquivariantComplex, n: int) -> LinearSubspace:
    """Equivariant cochains killed by every degeneracy."""
    def build():
        if n == 0:
            return ec.carrier_or_full(0)
        stacked = _vstack([ec.degeneracy(n, j) for j in range(n)])
        return kernel_within(stacked, ec.carrier_or_full(n))
    return ec._cached(("normalized", n), build)


def bconstant_equivariant_subspace(ec: EquivariantComplex, sub: SubalgebraInclusion, n: int) -> LinearSubspace:
    """Equivariant ``phi`` such that ``phi`` and ``b phi`` vanish when some ``a^j``, ``j >= 1``, lies in ``B``."""
    if sub.big.dim != ec.dA:
        raise ValueError("subalgebra does not live in the acted-on algebra")
    if not ec.action.is_stable(sub.image()):
        raise NotActionStable(f"subalgebra {sub.name or '?'} is not stable under the action")
    key = ("bconstant", sub, n)
    return ec._cached(key, lambda: constant_subspace_of(ec, n, ec.dA, sub.image_vectors(), prefix_dims=ec.dH))


def hc_equivariant(act: ModuleAlgebraAction, max_degree: int, sub: Optional[SubalgebraInclusion] = None, *,
                   normalized: bool = False, complex_: Optional[EquivariantComplex] = None) -> HCReport:
    """Equivariant cyclic cohomology for ``n <= max_degree``.

    Computed on the full equivariant carrier by default, on its normalized
    part with ``normalized``, or on the ``B``-constant part when ``sub`` is
    given.
    """
    ec = complex_ or EquivariantComplex(act)
    tc = build_total_complex(ec, max_degree + 1, check=False)
    label = f"HC_H({act.name or 'action'})"
    if sub is not None:
        tc = restrict_to_subcomplex(tc, lambda k: bconstant_equivariant_subspace(ec, sub, k))
        label = f"HC_H({act.name or 'action'}; {sub.small.name or 'B'})"
    elif normalized:
        tc = restrict_to_subcomplex(tc, lambda k: normalized_equivariant_subspace(ec, k))
        label = f"HC_H({act.name or 'action'}) normalized"
    rep = cohomology_dims(tc)
    rep.name = label
    return rep


def ambient_cyclic_order_defect(ec: EquivariantComplex, n: int) -> Optional[Tuple[int, int, Scalar]]:
    """An entry where ``t^{n+1} - id`` is nonzero on the ambient space, or ``None``."""
    diff = ec.cyclic_power(n, n + 1) - SparseMatrix.identity(ec.space_dim(n))
    for i, j, c in diff.entries():
        return i, j, c
    return None
