"""Hopf algebras with invertible antipode, module-algebra actions and crossed products."""

from __future__ import annotations

from itertools import product as iproduct
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    StructureConstantAlgebra,
    SubalgebraInclusion,
    ValidationReport,
    Vector,
    induced_subalgebra,
    to_sparse,
    vadd,
    validate_algebra,
    validate_inclusion,
)
from .linalg import LinearSubspace, Scalar, SparseMatrix, scalar

TensorVector = Dict[Tuple[int, ...], Scalar]


class InvalidAction(ValueError):
    pass


class NotActionStable(ValueError):
    pass


def _tadd(target: TensorVector, key: Tuple[int, ...], c: Scalar) -> None:
    y = target.get(key, 0) + c
    if y:
        target[key] = y
    else:
        target.pop(key, None)


class HopfAlgebraData:
    """Hopf algebra structure on ``alg``.

    ``coproduct[i]`` maps ``(j, k)`` to the coefficient of ``e_j (x) e_k`` in
    ``Delta(e_i)``.  Antipode matrices use the column convention
    ``S(e_j) = sum_i S[i, j] e_i``.
    """

    def __init__(self, alg: StructureConstantAlgebra, coproduct: Mapping[int, Mapping[Tuple[int, int], Scalar]],
                 counit: Sequence, antipode: SparseMatrix, antipode_inverse: SparseMatrix,
                 semisimple: Optional[bool] = None, name: str = ""):
        d = alg.dim
        self.alg = alg
        self.name = name or alg.name
        self.coproduct: Dict[int, TensorVector] = {}
        for i in range(d):
            clean: TensorVector = {}
            for (j, k), c in coproduct.get(i, {}).items():
                if not (0 <= j < d and 0 <= k < d):
                    raise IndexError(f"coproduct index ({i}, {j}, {k}) out of range")
                if scalar(c):
                    clean[(j, k)] = scalar(c)
            self.coproduct[i] = clean
        self.counit: Vector = to_sparse(list(counit), d)
        for m, label in ((antipode, "antipode"), (antipode_inverse, "antipode_inverse")):
            if m.shape != (d, d):
                raise ValueError(f"{label} has shape {m.shape}, expected {(d, d)}")
        self.antipode = antipode
        self.antipode_inverse = antipode_inverse
        self.semisimple = semisimple
        self._legs: Dict[int, List[TensorVector]] = {1: [{(i,): 1} for i in range(d)]}

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def unit(self) -> Vector:
        return self.alg.unit

    def coproduct_entries(self) -> List[Tuple[int, int, int, Scalar]]:
        return [(i, j, k, c) for i in range(self.dim) for (j, k), c in sorted(self.coproduct[i].items())]

    # linear maps on sparse vectors

    def delta(self, v: Mapping[int, Scalar]) -> TensorVector:
        out: TensorVector = {}
        for i, a in v.items():
            for key, c in self.coproduct[i].items():
                _tadd(out, key, a * c)
        return out

    def eps(self, v: Mapping[int, Scalar]) -> Scalar:
        return sum((a * self.counit.get(i, 0) for i, a in v.items()), 0)

    def S(self, v: Mapping[int, Scalar]) -> Vector:
        return dict(self.antipode.apply(v))

    def S_inv(self, v: Mapping[int, Scalar]) -> Vector:
        return dict(self.antipode_inverse.apply(v))

    def mul(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
        return self.alg.product(u, v)

    def legs(self, i: int, n: int) -> TensorVector:
        """``Delta^{(n)}(e_i)`` as ``{(j_1..j_n): c}``, splitting the first leg at each step."""
        if n < 1:
            raise ValueError("number of legs must be at least 1")
        while max(self._legs) < n:
            k = max(self._legs)
            nxt = []
            for t in self._legs[k]:
                out: TensorVector = {}
                for key, c in t.items():
                    for (a, b), c2 in self.coproduct[key[0]].items():
                        _tadd(out, (a, b) + key[1:], c * c2)
                nxt.append(out)
            self._legs[k + 1] = nxt
        return self._legs[n][i]

    def __repr__(self) -> str:
        return f"HopfAlgebraData({self.name}, dim={self.dim})"


def _tensor_matrix(h: HopfAlgebraData, tensors: Sequence[TensorVector], legs: int) -> SparseMatrix:
    d = h.dim
    rows: Dict[int, Dict[int, Scalar]] = {}
    for i, t in enumerate(tensors):
        for key, c in t.items():
            idx = 0
            for j in key:
                idx = idx * d + j
            rows.setdefault(idx, {})[i] = c
    return SparseMatrix(d ** legs, d, rows)


def iterated_coproduct(h: HopfAlgebraData, legs: int) -> SparseMatrix:
    """The map ``H -> H^{(x) legs}`` as a ``d^legs x d`` matrix (lexicographic leg order)."""
    return _tensor_matrix(h, [h.legs(i, legs) for i in range(h.dim)], legs)


def iterated_coproduct_right(h: HopfAlgebraData, legs: int) -> SparseMatrix:
    """Same map built by always splitting the last leg; equal to :func:`iterated_coproduct`."""
    cur: List[TensorVector] = [{(i,): 1} for i in range(h.dim)]
    for _ in range(legs - 1):
        nxt = []
        for t in cur:
            out: TensorVector = {}
            for key, c in t.items():
                for (a, b), c2 in h.coproduct[key[-1]].items():
                    _tadd(out, key[:-1] + (a, b), c * c2)
            nxt.append(out)
        cur = nxt
    return _tensor_matrix(h, cur, legs)


def adjoint(h: HopfAlgebraData, g: Mapping[int, Scalar], x: Mapping[int, Scalar]) -> Vector:
    """``g . x = g_(1) x S^{-1}(g_(2))``."""
    out: Vector = {}
    for (a, b), c in h.delta(g).items():
        vadd(out, h.mul(h.mul({a: 1}, x), h.S_inv({b: 1})), c)
    return out


def adjoint_action(h: HopfAlgebraData) -> Dict[Tuple[int, int], Vector]:
    """Tensor ``(g, x) -> g . x`` on basis pairs."""
    return {(g, x): adjoint(h, {g: 1}, {x: 1}) for g in range(h.dim) for x in range(h.dim)}


def validate_hopf(h: HopfAlgebraData) -> ValidationReport:
    """Check every Hopf axiom (with invertible antipode) on basis elements."""
    rep = ValidationReport(h.name or "hopf")
    rep.extend(validate_algebra(h.alg))
    rep.checked += ["coassociativity", "coproduct-multiplicative", "coproduct-unital", "counit",
                    "counit-multiplicative", "counit-unital", "antipode", "antipode-inverse"]
    d = h.dim
    alg = h.alg
    if iterated_coproduct(h, 3) != iterated_coproduct_right(h, 3):
        diff = iterated_coproduct(h, 3) - iterated_coproduct_right(h, 3)
        for i in sorted({j for _, j, _ in diff.entries()}):
            rep.fail("coassociativity", (i,), f"(D(x)id)D(e{i}) != (id(x)D)D(e{i})")

    def tensor_product(s: TensorVector, t: TensorVector) -> TensorVector:
        out: TensorVector = {}
        for (a, b), c in s.items():
            for (p, q), c2 in t.items():
                for k1, x1 in alg.basis_product(a, p).items():
                    for k2, x2 in alg.basis_product(b, q).items():
                        _tadd(out, (k1, k2), c * c2 * x1 * x2)
        return out

    for i in range(d):
        for j in range(d):
            if h.delta(alg.basis_product(i, j)) != tensor_product(h.coproduct[i], h.coproduct[j]):
                rep.fail("coproduct-multiplicative", (i, j), f"D(e{i}e{j}) != D(e{i})D(e{j})")
            if h.eps(alg.basis_product(i, j)) != h.eps({i: 1}) * h.eps({j: 1}):
                rep.fail("counit-multiplicative", (i, j), f"eps(e{i}e{j}) != eps(e{i})eps(e{j})")
    unit_sq: TensorVector = {}
    for a, x in h.unit.items():
        for b, y in h.unit.items():
            _tadd(unit_sq, (a, b), x * y)
    if h.delta(h.unit) != unit_sq:
        rep.fail("coproduct-unital", (), "D(1) != 1(x)1")
    if h.eps(h.unit) != 1:
        rep.fail("counit-unital", (), "eps(1) != 1")

    for i in range(d):
        left: Vector = {}
        right: Vector = {}
        sl: Vector = {}
        sr: Vector = {}
        for (a, b), c in h.coproduct[i].items():
            vadd(left, {b: c * h.counit.get(a, 0)})
            vadd(right, {a: c * h.counit.get(b, 0)})
            vadd(sl, alg.product(h.S({a: 1}), {b: 1}), c)
            vadd(sr, alg.product({a: 1}, h.S({b: 1})), c)
        if left != {i: 1}:
            rep.fail("counit", ("left", i), f"(eps(x)id)D(e{i}) != e{i}")
        if right != {i: 1}:
            rep.fail("counit", ("right", i), f"(id(x)eps)D(e{i}) != e{i}")
        expected = {k: h.eps({i: 1}) * x for k, x in h.unit.items() if h.eps({i: 1}) * x}
        if sl != expected:
            rep.fail("antipode", ("left", i), f"m(S(x)id)D(e{i}) != eps(e{i})1")
        if sr != expected:
            rep.fail("antipode", ("right", i), f"m(id(x)S)D(e{i}) != eps(e{i})1")
    ident = SparseMatrix.identity(d)
    if h.antipode @ h.antipode_inverse != ident:
        rep.fail("antipode-inverse", ("S.Sinv",), "S S^{-1} != id")
    if h.antipode_inverse @ h.antipode != ident:
        rep.fail("antipode-inverse", ("Sinv.S",), "S^{-1} S != id")
    return rep


def antipode_antihomomorphism(h: HopfAlgebraData) -> ValidationReport:
    """Derived check: ``S(gh) = S(h) S(g)`` and ``S(1) = 1``."""
    rep = ValidationReport(h.name or "hopf", checked=["antipode-antihomomorphism"])
    for i in range(h.dim):
        for j in range(h.dim):
            if h.S(h.alg.basis_product(i, j)) != h.alg.product(h.S({j: 1}), h.S({i: 1})):
                rep.fail("antipode-antihomomorphism", (i, j), f"S(e{i}e{j}) != S(e{j})S(e{i})")
    if h.S(h.unit) != h.unit:
        rep.fail("antipode-antihomomorphism", ("unit",), "S(1) != 1")
    return rep


class ModuleAlgebraAction:
    """Action ``e_i(a_j) = sum_k action[i, j][k] a_k`` of a Hopf algebra on an algebra."""

    def __init__(self, hopf: HopfAlgebraData, alg: StructureConstantAlgebra,
                 action: Mapping[Tuple[int, int], Mapping[int, Scalar]], name: str = ""):
        self.hopf = hopf
        self.alg = alg
        self.name = name
        table: Dict[Tuple[int, int], Vector] = {}
        for (i, j), vec in action.items():
            if not (0 <= i < hopf.dim and 0 <= j < alg.dim):
                raise IndexError(f"action index ({i}, {j}) out of range")
            clean = {}
            for k, c in vec.items():
                if not 0 <= k < alg.dim:
                    raise IndexError(f"action index ({i}, {j}, {k}) out of range")
                if scalar(c):
                    clean[k] = scalar(c)
            if clean:
                table[(i, j)] = clean
        self._act = table
        self._vec_cache: Dict[Tuple, Dict[int, Vector]] = {}

    @classmethod
    def trivial(cls, hopf: HopfAlgebraData, alg: StructureConstantAlgebra, name: str = "") -> "ModuleAlgebraAction":
        table = {}
        for i, e in hopf.counit.items():
            for j in range(alg.dim):
                table[(i, j)] = {j: e}
        return cls(hopf, alg, table, name=name)

    def entries(self) -> List[Tuple[int, int, int, Scalar]]:
        return [(i, j, k, c) for (i, j) in sorted(self._act) for k, c in sorted(self._act[(i, j)].items())]

    def act_basis(self, i: int, j: int) -> Mapping[int, Scalar]:
        return self._act.get((i, j), {})

    def act(self, h: Mapping[int, Scalar], a: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for i, x in h.items():
            for j, y in a.items():
                vadd(out, self._act.get((i, j), {}), x * y)
        return out

    def operator(self, h: Mapping[int, Scalar]) -> Dict[int, Vector]:
        """``h`` as a map on basis vectors of the algebra: ``j -> h(a_j)``."""
        key = tuple(sorted(h.items()))
        cached = self._vec_cache.get(key)
        if cached is None:
            cached = {j: self.act(h, {j: 1}) for j in range(self.alg.dim)}
            self._vec_cache[key] = cached
        return cached

    def matrix(self, i: int) -> SparseMatrix:
        rows: Dict[int, Dict[int, Scalar]] = {}
        for j in range(self.alg.dim):
            for k, c in self.act_basis(i, j).items():
                rows.setdefault(k, {})[j] = c
        return SparseMatrix(self.alg.dim, self.alg.dim, rows)

    def is_stable(self, sub: LinearSubspace) -> bool:
        """Whether every ``h`` maps ``sub`` into itself."""
        return all(sub.contains_vector(self.act({i: 1}, v)) for i in range(self.hopf.dim) for v in sub.vectors())

    def __repr__(self) -> str:
        return f"ModuleAlgebraAction({self.name})"


def validate_action(act: ModuleAlgebraAction) -> ValidationReport:
    rep = ValidationReport(act.name or "action",
                           checked=["unit-acts-trivially", "representation", "multiplication-covariant",
                                    "unit-covariant"])
    H, A, hopf = act.hopf.alg, act.alg, act.hopf
    for j in range(A.dim):
        if act.act(hopf.unit, {j: 1}) != {j: 1}:
            rep.fail("unit-acts-trivially", (j,), f"1_H(a{j}) != a{j}")
    for i in range(H.dim):
        for k in range(H.dim):
            for j in range(A.dim):
                lhs = act.act(H.basis_product(i, k), {j: 1})
                rhs = act.act({i: 1}, act.act({k: 1}, {j: 1}))
                if lhs != rhs:
                    rep.fail("representation", (i, k, j), f"(h{i}h{k})(a{j}) != h{i}(h{k}(a{j}))")
    for i in range(H.dim):
        for j in range(A.dim):
            for k in range(A.dim):
                lhs = act.act({i: 1}, A.basis_product(j, k))
                rhs: Vector = {}
                for (p, q), c in hopf.coproduct[i].items():
                    vadd(rhs, A.product(act.act({p: 1}, {j: 1}), act.act({q: 1}, {k: 1})), c)
                if lhs != rhs:
                    rep.fail("multiplication-covariant", (i, j, k),
                             f"h{i}(a{j}a{k}) != h{i}_(1)(a{j}) h{i}_(2)(a{k})")
        e = hopf.eps({i: 1})
        expected = {k: e * x for k, x in A.unit.items() if e * x}
        if act.act({i: 1}, A.unit) != expected:
            rep.fail("unit-covariant", (i,), f"h{i}(1) != eps(h{i})1")
    return rep


class CrossedProductAlgebra:
    """The algebra ``A >< H`` on ``A (x) H``, basis ``a_i (x) h_p`` at index ``i * dim H + p``."""

    def __init__(self, action: ModuleAlgebraAction, product: StructureConstantAlgebra,
                 include_A: SubalgebraInclusion, include_H: SubalgebraInclusion):
        self.action = action
        self.product = product
        self.include_A = include_A
        self.include_H = include_H

    @property
    def dim(self) -> int:
        return self.product.dim

    def index(self, a: int, h: int) -> int:
        return a * self.action.hopf.dim + h

    def split(self, idx: int) -> Tuple[int, int]:
        return divmod(idx, self.action.hopf.dim)

    def tensor(self, a: Mapping[int, Scalar], h: Mapping[int, Scalar]) -> Vector:
        dh = self.action.hopf.dim
        return {i * dh + p: x * y for i, x in a.items() for p, y in h.items() if x * y}

    def sub_crossed(self, sub: SubalgebraInclusion, name: str = "") -> SubalgebraInclusion:
        """Inclusion ``B >< H -> A >< H`` for a unital sub-H-module algebra ``B`` of ``A``."""
        if sub.big is not self.action.alg and sub.big != self.action.alg:
            raise ValueError("subalgebra is not a subalgebra of the acted-on algebra")
        if not self.action.is_stable(sub.image()):
            raise NotActionStable("subalgebra image is not stable under the Hopf action")
        vectors = [self.tensor(b, {p: 1}) for b in sub.image_vectors() for p in range(self.action.hopf.dim)]
        labels = [f"{bl}#{hl}" for bl in sub.small.labels for hl in self.action.hopf.alg.labels]
        return induced_subalgebra(self.product, vectors, labels, name=name or f"{sub.small.name}#H")


def crossed_product(act: ModuleAlgebraAction, *, check: bool = True) -> CrossedProductAlgebra:
    """Smash product with ``(a (x) h)(b (x) g) = a h_(1)(b) (x) h_(2) g``."""
    if check:
        rep = validate_action(act)
        if not rep.passed:
            raise InvalidAction(f"action {act.name!r} fails: {', '.join(rep.failed_axioms())}")
    A, hopf = act.alg, act.hopf
    H = hopf.alg
    dh = H.dim
    mul: Dict[Tuple[int, int], Vector] = {}
    for i, p, j, q in iproduct(range(A.dim), range(dh), range(A.dim), range(dh)):
        out: Vector = {}
        for (r, s), c in hopf.coproduct[p].items():
            left = A.product({i: 1}, act.act_basis(r, j))
            if not left:
                continue
            right = H.basis_product(s, q)
            for k, x in left.items():
                for m, y in right.items():
                    vadd(out, {k * dh + m: c * x * y})
        if out:
            mul[(i * dh + p, j * dh + q)] = out
    unit = {i * dh + p: x * y for i, x in A.unit.items() for p, y in H.unit.items()}
    labels = [f"{al}#{hl}" for al in A.labels for hl in H.labels]
    name = f"{A.name}#{hopf.name}"
    prod = StructureConstantAlgebra(A.dim * dh, mul, unit, labels, name=name)
    rows_a: Dict[int, Dict[int, Scalar]] = {}
    for i in range(A.dim):
        for p, y in H.unit.items():
            rows_a.setdefault(i * dh + p, {})[i] = y
    rows_h: Dict[int, Dict[int, Scalar]] = {}
    for p in range(dh):
        for i, x in A.unit.items():
            rows_h.setdefault(i * dh + p, {})[p] = x
    inc_a = SubalgebraInclusion(A, prod, SparseMatrix(prod.dim, A.dim, rows_a), name=f"{A.name}->{name}")
    inc_h = SubalgebraInclusion(H, prod, SparseMatrix(prod.dim, dh, rows_h), name=f"{hopf.name}->{name}")
    return CrossedProductAlgebra(act, prod, inc_a, inc_h)


def validate_crossed_product(cp: CrossedProductAlgebra) -> ValidationReport:
    rep = ValidationReport(cp.product.name)
    rep.extend(validate_algebra(cp.product))
    rep.extend(validate_inclusion(cp.include_A))
    rep.extend(validate_inclusion(cp.include_H))
    return rep
