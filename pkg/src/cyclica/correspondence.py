"""The cyclic map ``Psi`` from equivariant cochains of ``A`` to cochains of ``A >< H``, and its inverse ``Phi``.

``Psi(phi)(a^0#h^0, ..., a^n#h^n)`` evaluates ``phi`` at

* H-slot: ``h^0_(n+1) h^1_(n) ... h^{n-1}_(2) h^n``
* slot 0: ``a^0``
* slot j >= 1: ``(h^0_(j) h^1_(j-1) ... h^{j-1}_(1))(a^j)``

and ``Phi(f)(h, a^0, ..., a^n) = f(a^0#1, ..., a^{n-1}#1, a^n#h)``.

Verification functions return :class:`VerificationReport` objects; they
never raise on a failed check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import SubalgebraInclusion, Vector, vadd
from .algebra_complex import (
    AlgebraCochainComplex,
    constant_subspace,
    expand,
    hc_constant,
    hc_plain,
    normalized_subspace,
    operator_from_rows,
    tensor_index,
)
from .cocyclic import HCReport, parallel_map
from .equivariant import (
    EquivariantComplex,
    bconstant_equivariant_subspace,
    hc_equivariant,
    normalized_equivariant_subspace,
)
from .hopf import CrossedProductAlgebra, ModuleAlgebraAction, crossed_product
from .linalg import LinearSubspace, Row, SparseMatrix, images, rank_on, vanishes_on


class NotDeclaredSemisimple(ValueError):
    pass


# reports -----------------------------------------------------------------------

@dataclass
class Check:
    name: str
    degree: Optional[int]
    passed: bool
    detail: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "degree": self.degree, "passed": self.passed,
                "detail": {k: self.detail[k] for k in sorted(self.detail)}}


@dataclass
class VerificationReport:
    subject: str
    checks: List[Check] = field(default_factory=list)
    tables: Dict[str, HCReport] = field(default_factory=dict)
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, degree: Optional[int], passed: bool, **detail) -> Check:
        c = Check(name, degree, bool(passed), detail)
        self.checks.append(c)
        return c

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        self.tables.update(other.tables)
        return self

    def to_dict(self) -> dict:
        out = {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "tables": {k: self.tables[k].to_dict() for k in sorted(self.tables)},
        }
        if self.skipped:
            out["skipped"] = self.skipped
        return out


# the pair ----------------------------------------------------------------------

class CorrespondencePair:
    """Both complexes of an action plus cached ``Psi``/``Phi`` matrices per degree."""

    def __init__(self, act: ModuleAlgebraAction, crossed: Optional[CrossedProductAlgebra] = None):
        self.action = act
        self.crossed = crossed or crossed_product(act)
        self.equivariant = EquivariantComplex(act)
        self.plain = AlgebraCochainComplex(self.crossed.product)
        self._psi: Dict[int, SparseMatrix] = {}
        self._phi: Dict[int, SparseMatrix] = {}
        self._hprod: Dict[Tuple[int, ...], Vector] = {}

    @property
    def name(self) -> str:
        return self.action.name or "action"

    def psi(self, n: int) -> SparseMatrix:
        if n not in self._psi:
            self._psi[n] = build_psi(self.action, n, self.crossed, _cache=self._hprod)
        return self._psi[n]

    def phi(self, n: int) -> SparseMatrix:
        if n not in self._phi:
            self._phi[n] = build_phi(self.crossed, n)
        return self._phi[n]

    def constant(self, n: int) -> LinearSubspace:
        return constant_subspace(self.plain, self.crossed.include_H, n)

    def normalized(self, n: int) -> LinearSubspace:
        return normalized_equivariant_subspace(self.equivariant, n)


def _hproduct(H, factors: Sequence[int], cache: Dict[Tuple[int, ...], Vector]) -> Vector:
    key = tuple(factors)
    v = cache.get(key)
    if v is None:
        v = {factors[0]: 1} if len(factors) == 1 else H.product(_hproduct(H, factors[:-1], cache), {factors[-1]: 1})
        cache[key] = v
    return v


def build_psi(act: ModuleAlgebraAction, n: int, crossed: Optional[CrossedProductAlgebra] = None,
              _cache: Optional[Dict[Tuple[int, ...], Vector]] = None) -> SparseMatrix:
    """Matrix of ``Psi`` from ``H (x) A^{(x)(n+1)}`` coordinates to ``C^n(A >< H)``."""
    cp = crossed or crossed_product(act)
    hopf, H = act.hopf, act.hopf.alg
    dH, dA = hopf.dim, act.alg.dim
    D = dA * dH
    cache = _cache if _cache is not None else {}
    rows: Dict[int, Row] = {}
    for r, pairs in enumerate(product(range(D), repeat=n + 1)):
        split = [divmod(p, dH) for p in pairs]
        a = [s[0] for s in split]
        hs = [s[1] for s in split]
        # L[k] = legs of Delta^{(n+1-k)}(h^k), 0-based
        leg_sets = [list(hopf.legs(hs[k], n + 1 - k).items()) for k in range(n)]
        row: Row = {}
        for combo in product(*leg_sets):
            coef = 1
            for _, c in combo:
                coef *= c
            legs = [lk for lk, _ in combo]
            vectors: List[Vector] = [{a[0]: 1}]
            for j in range(1, n + 1):
                u = _hproduct(H, [legs[k][j - 1 - k] for k in range(j)], cache)
                v = act.act(u, {a[j]: 1})
                if not v:
                    break
                vectors.append(v)
            else:
                hslot = _hproduct(H, [legs[k][n - k] for k in range(n)] + [hs[n]], cache)
                for p, x in hslot.items():
                    expand(coef * x, p, vectors, dA, row)
        if row:
            rows[r] = row
    return operator_from_rows(D ** (n + 1), dH * dA ** (n + 1), rows)


def build_phi(cp: CrossedProductAlgebra, n: int) -> SparseMatrix:
    """Matrix of ``Phi`` from ``C^n(A >< H)`` to ``H (x) A^{(x)(n+1)}`` coordinates."""
    act = cp.action
    dH, dA = act.hopf.dim, act.alg.dim
    D = cp.dim
    unit_h = act.hopf.unit
    rows: Dict[int, Row] = {}
    for r, (h, a) in enumerate(product(range(dH), product(range(dA), repeat=n + 1))):
        vectors = [cp.tensor({x: 1}, unit_h) for x in a[:n]] + [{cp.index(a[n], h): 1}]
        row: Row = {}
        expand(1, 0, vectors, D, row)
        rows[r] = row
    return operator_from_rows(dH * dA ** (n + 1), D ** (n + 1), rows)


# verification ------------------------------------------------------------------

def verify_cyclic_map(pair: CorrespondencePair, n_max: int) -> VerificationReport:
    """``op_crossed Psi - Psi op_equivariant`` vanishes on the equivariant carrier for every operator."""
    rep = VerificationReport(f"cyclic-map({pair.name})")
    ec, pc = pair.equivariant, pair.plain

    def one(n: int) -> List[Tuple[str, int, bool]]:
        car = ec.carrier_or_full(n)
        out = []
        for i in range(n + 2):
            res = pc.face(n, i) @ pair.psi(n) - pair.psi(n + 1) @ ec.face(n, i)
            out.append((f"face-{i}", n, vanishes_on(res, car)))
        for j in range(n):
            res = pc.degeneracy(n, j) @ pair.psi(n) - pair.psi(n - 1) @ ec.degeneracy(n, j)
            out.append((f"degeneracy-{j}", n, vanishes_on(res, car)))
        res = pc.cyclic(n) @ pair.psi(n) - pair.psi(n) @ ec.cyclic(n)
        out.append(("cyclic", n, vanishes_on(res, car)))
        out.append(("psi-injective", n, rank_on(pair.psi(n), car) == car.dim))
        return out

    for results in parallel_map(one, list(range(n_max + 1))):
        for name, n, ok in results:
            rep.add(name, n, ok)
    return rep


def _image_in(m: SparseMatrix, domain: LinearSubspace, target: LinearSubspace) -> bool:
    return all(target.contains_vector(r) for _, r in images(m, domain).rows())


def _escape_witness(pair: CorrespondencePair, n: int) -> Optional[int]:
    """Index of a carrier basis vector outside the normalized part whose image is not constant."""
    car = pair.equivariant.carrier_or_full(n)
    norm = pair.normalized(n)
    const = pair.constant(n)
    for k, v in enumerate(car.vectors()):
        if norm.contains_vector(v):
            continue
        if not const.contains_vector(pair.psi(n).apply(v)):
            return k
    return None


def verify_image_constant(pair: CorrespondencePair, n_max: int, *, negative_control: bool = True) -> VerificationReport:
    """``Psi`` maps normalized equivariant cochains into ``1 (x) H``-constant cochains."""
    rep = VerificationReport(f"image-constant({pair.name})")
    for n in range(n_max + 1):
        norm = pair.normalized(n)
        rep.add("psi-normalized-in-constant", n, _image_in(pair.psi(n), norm, pair.constant(n)),
                normalized_dim=norm.dim, constant_dim=pair.constant(n).dim)
    if negative_control and n_max >= 1:
        w = _escape_witness(pair, 1)
        rep.add("non-normalized-escapes", 1, w is not None, witness=w)
    return rep


def yek_do_seh_operators(cp: CrossedProductAlgebra, n: int) -> List[Tuple[str, SparseMatrix]]:
    """Operators ``R_{k,c}`` on ``C^n`` that vanish on constant cochains.

    For ``k < n``: ``(R f)(x) = f(.., x_k c, x_{k+1}, ..) - f(.., x_k, c x_{k+1}, ..)``;
    for ``k = n``: ``(R f)(x) = f(x_0, .., x_n c) - f(c x_0, x_1, .., x_n)``,
    with ``c`` running over ``1 # h`` for basis ``h``.
    """
    P = cp.product
    D = P.dim
    out = []
    for hidx, cvec in enumerate(cp.include_H.image_vectors()):
        for k in range(n + 1):
            rows: Dict[int, Row] = {}
            for r, t in enumerate(product(range(D), repeat=n + 1)):
                row: Row = {}
                left = P.product({t[k]: 1}, cvec)
                if k < n:
                    right = P.product(cvec, {t[k + 1]: 1})
                    pre = tensor_index(t[:k], D)
                    expand(1, pre, [left] + [{x: 1} for x in t[k + 1:]], D, row)
                    expand(-1, pre, [{t[k]: 1}, right] + [{x: 1} for x in t[k + 2:]], D, row)
                else:
                    right = P.product(cvec, {t[0]: 1})
                    expand(1, tensor_index(t[:n], D), [left], D, row)
                    expand(-1, 0, [right] + [{x: 1} for x in t[1:]], D, row)
                if row:
                    rows[r] = row
            out.append((f"R[{k},{cp.action.hopf.alg.labels[hidx]}]", operator_from_rows(D ** (n + 1), D ** (n + 1), rows)))
    return out


def verify_theorem(pair: CorrespondencePair, max_degree: int, *, hc: bool = True) -> VerificationReport:
    """Matrix-level and dimension-level checks that ``Psi`` and ``Phi`` are inverse isomorphisms.

    Per degree ``n <= max_degree``: ``Phi`` maps constant into normalized
    equivariant cochains, ``Phi Psi = id`` and ``Psi Phi = id`` on the two
    subspaces, their dimensions agree, and every ``R_{k,c}`` vanishes on
    constant cochains.  With ``hc`` the cyclic cohomology tables of both
    sides are compared through ``max_degree``.
    """
    rep = VerificationReport(f"theorem({pair.name})")
    rep.extend(verify_image_constant(pair, max_degree, negative_control=False))
    for n in range(max_degree + 1):
        norm, const = pair.normalized(n), pair.constant(n)
        psi, phi = pair.psi(n), pair.phi(n)
        rep.add("phi-constant-in-normalized", n, _image_in(phi, const, norm))
        rep.add("phi-psi-identity", n,
                vanishes_on(phi @ psi - SparseMatrix.identity(psi.ncols), norm))
        rep.add("psi-phi-identity", n,
                vanishes_on(psi @ phi - SparseMatrix.identity(phi.ncols), const))
        rep.add("dimensions-agree", n, norm.dim == const.dim, normalized_dim=norm.dim, constant_dim=const.dim)
        bad = [name for name, r in yek_do_seh_operators(pair.crossed, n) if not vanishes_on(r, const)]
        rep.add("constant-identities", n, not bad, failing=bad)
    if hc:
        eq = hc_equivariant(pair.action, max_degree, complex_=pair.equivariant)
        eq_norm = hc_equivariant(pair.action, max_degree, normalized=True, complex_=pair.equivariant)
        cons = hc_constant(pair.crossed.product, pair.crossed.include_H, max_degree, complex_=pair.plain)
        rep.tables.update({"equivariant": eq, "equivariant-normalized": eq_norm, "crossed-constant": cons})
        for row_e, row_n, row_c in zip(eq.rows, eq_norm.rows, cons.rows):
            rep.add("hc-dimensions-agree", row_e.degree, row_e.hc_dim == row_c.hc_dim,
                    equivariant=row_e.hc_dim, crossed_constant=row_c.hc_dim)
            rep.add("hc-normalized-agrees", row_e.degree, row_e.hc_dim == row_n.hc_dim,
                    full=row_e.hc_dim, normalized=row_n.hc_dim)
    return rep


def verify_corollary_semisimple(act: ModuleAlgebraAction, max_degree: int,
                                pair: Optional[CorrespondencePair] = None) -> VerificationReport:
    """For semisimple ``H``: constant and plain cyclic cohomology of ``A >< H`` agree."""
    flag = act.hopf.semisimple
    if flag is None:
        raise NotDeclaredSemisimple(f"Hopf algebra {act.hopf.name!r} has no semisimple flag")
    pair = pair or CorrespondencePair(act)
    rep = VerificationReport(f"corollary({pair.name})")
    cons = hc_constant(pair.crossed.product, pair.crossed.include_H, max_degree, complex_=pair.plain)
    plain = hc_plain(pair.crossed.product, max_degree, complex_=pair.plain)
    rep.tables.update({"crossed-constant": cons, "crossed-plain": plain})
    if not flag:
        rep.skipped = f"{act.hopf.name} is not semisimple"
        return rep
    for rc, rp in zip(cons.rows, plain.rows):
        rep.add("constant-equals-plain", rc.degree, rc.hc_dim == rp.hc_dim, constant=rc.hc_dim, plain=rp.hc_dim)
    return rep


def verify_bconstant_generalization(act: ModuleAlgebraAction, sub: SubalgebraInclusion, max_degree: int,
                                    pair: Optional[CorrespondencePair] = None) -> VerificationReport:
    """``Psi`` identifies B-constant normalized equivariant cochains with ``(B >< H)``-constant ones."""
    pair = pair or CorrespondencePair(act)
    ec = pair.equivariant
    sub_cp = pair.crossed.sub_crossed(sub)
    rep = VerificationReport(f"bconstant({pair.name}; {sub.small.name or 'B'})")
    for n in range(max_degree + 1):
        left = bconstant_equivariant_subspace(ec, sub, n) & pair.normalized(n)
        right = constant_subspace(pair.plain, sub_cp, n)
        psi, phi = pair.psi(n), pair.phi(n)
        rep.add("psi-into", n, _image_in(psi, left, right))
        rep.add("phi-into", n, _image_in(phi, right, left))
        rep.add("phi-psi-identity", n, vanishes_on(phi @ psi - SparseMatrix.identity(psi.ncols), left))
        rep.add("psi-phi-identity", n, vanishes_on(psi @ phi - SparseMatrix.identity(phi.ncols), right))
        rep.add("dimensions-agree", n, left.dim == right.dim, equivariant_dim=left.dim, crossed_dim=right.dim)
    eq = hc_equivariant(act, max_degree, sub, complex_=ec)
    cons = hc_constant(pair.crossed.product, sub_cp, max_degree, complex_=pair.plain)
    rep.tables.update({"equivariant-bconstant": eq, "crossed-bconstant": cons})
    for re_, rc in zip(eq.rows, cons.rows):
        rep.add("hc-dimensions-agree", re_.degree, re_.hc_dim == rc.hc_dim,
                equivariant=re_.hc_dim, crossed_constant=rc.hc_dim)
    return rep
