"""Built-in algebras, Hopf algebras and actions.

Names::

    ground-field, dual-numbers, group-algebra:z2 .. group-algebra:z6, sweedler-h4
    z2-on-dual-numbers, h4-on-dual-numbers, trivial:<hopf>-on-<algebra>
    crossed:<action>            the crossed product algebra of an action
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Tuple

from .algebra import StructureConstantAlgebra, SubalgebraInclusion, induced_subalgebra
from .hopf import CrossedProductAlgebra, HopfAlgebraData, ModuleAlgebraAction, crossed_product
from .linalg import SparseMatrix

GROUP_ORDERS = range(2, 7)


class UnknownName(KeyError):
    pass


def ground_field() -> StructureConstantAlgebra:
    return StructureConstantAlgebra(1, {(0, 0): {0: 1}}, {0: 1}, ["1"], name="ground-field")


def dual_numbers() -> StructureConstantAlgebra:
    mul = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return StructureConstantAlgebra(2, mul, {0: 1}, ["1", "x"], name="dual-numbers")


def cyclic_group_algebra(n: int) -> StructureConstantAlgebra:
    mul = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    labels = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return StructureConstantAlgebra(n, mul, {0: 1}, labels, name=f"group-algebra:z{n}")


def sweedler_algebra() -> StructureConstantAlgebra:
    # basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx
    one, g, x, gx = range(4)
    mul = {
        (one, one): {one: 1}, (one, g): {g: 1}, (one, x): {x: 1}, (one, gx): {gx: 1},
        (g, one): {g: 1}, (g, g): {one: 1}, (g, x): {gx: 1}, (g, gx): {x: 1},
        (x, one): {x: 1}, (x, g): {gx: -1},
        (gx, one): {gx: 1}, (gx, g): {x: -1},
    }
    return StructureConstantAlgebra(4, mul, {one: 1}, ["1", "g", "x", "gx"], name="sweedler-h4")


def _matrix_from_images(dim: int, images: Dict[int, Dict[int, int]]) -> SparseMatrix:
    rows: Dict[int, Dict[int, int]] = {}
    for j, vec in images.items():
        for i, c in vec.items():
            rows.setdefault(i, {})[j] = c
    return SparseMatrix(dim, dim, rows)


def ground_field_hopf() -> HopfAlgebraData:
    ident = SparseMatrix.identity(1)
    return HopfAlgebraData(ground_field(), {0: {(0, 0): 1}}, [1], ident, ident, semisimple=True,
                           name="ground-field")


def group_hopf(n: int) -> HopfAlgebraData:
    alg = cyclic_group_algebra(n)
    inverse = _matrix_from_images(n, {k: {(-k) % n: 1} for k in range(n)})
    return HopfAlgebraData(alg, {k: {(k, k): 1} for k in range(n)}, [1] * n, inverse, inverse,
                           semisimple=True, name=alg.name)


def sweedler_hopf() -> HopfAlgebraData:
    one, g, x, gx = range(4)
    coproduct = {
        one: {(one, one): 1},
        g: {(g, g): 1},
        x: {(x, one): 1, (g, x): 1},
        gx: {(gx, g): 1, (one, gx): 1},
    }
    antipode = _matrix_from_images(4, {one: {one: 1}, g: {g: 1}, x: {gx: -1}, gx: {x: 1}})
    antipode_inv = _matrix_from_images(4, {one: {one: 1}, g: {g: 1}, x: {gx: 1}, gx: {x: -1}})
    return HopfAlgebraData(sweedler_algebra(), coproduct, [1, 1, 0, 0], antipode, antipode_inv,
                           semisimple=False, name="sweedler-h4")


def z2_on_dual_numbers() -> ModuleAlgebraAction:
    # g(x) = -x
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {0: 1}, (1, 1): {1: -1}}
    return ModuleAlgebraAction(group_hopf(2), dual_numbers(), table, name="z2-on-dual-numbers")


def h4_on_dual_numbers() -> ModuleAlgebraAction:
    # g(x) = -x, x_H(1) = 0, x_H(x) = 1, gx_H = g o x_H
    table = {
        (0, 0): {0: 1}, (0, 1): {1: 1},
        (1, 0): {0: 1}, (1, 1): {1: -1},
        (2, 1): {0: 1},
        (3, 1): {0: 1},
    }
    return ModuleAlgebraAction(sweedler_hopf(), dual_numbers(), table, name="h4-on-dual-numbers")


_ALGEBRAS = {
    "ground-field": ground_field,
    "dual-numbers": dual_numbers,
    "sweedler-h4": sweedler_algebra,
    **{f"group-algebra:z{n}": (lambda n=n: cyclic_group_algebra(n)) for n in GROUP_ORDERS},
}

_HOPF = {
    "ground-field": ground_field_hopf,
    "sweedler-h4": sweedler_hopf,
    **{f"group-algebra:z{n}": (lambda n=n: group_hopf(n)) for n in GROUP_ORDERS},
}

_ACTIONS = {
    "z2-on-dual-numbers": z2_on_dual_numbers,
    "h4-on-dual-numbers": h4_on_dual_numbers,
}


def algebra_names() -> List[str]:
    return list(_ALGEBRAS)


def hopf_names() -> List[str]:
    return list(_HOPF)


def action_names() -> List[str]:
    return list(_ACTIONS) + [f"trivial:{h}-on-{a}" for h in _HOPF for a in _ALGEBRAS]


@lru_cache(maxsize=None)
def algebra(name: str) -> StructureConstantAlgebra:
    if name.startswith("crossed:"):
        return crossed(name[len("crossed:"):]).product
    try:
        return _ALGEBRAS[name]()
    except KeyError:
        raise UnknownName(f"unknown algebra {name!r}") from None


@lru_cache(maxsize=None)
def hopf(name: str) -> HopfAlgebraData:
    try:
        return _HOPF[name]()
    except KeyError:
        raise UnknownName(f"unknown Hopf algebra {name!r}") from None


def _split_trivial(spec: str) -> Tuple[str, str]:
    for h in sorted(_HOPF, key=len, reverse=True):
        prefix = f"{h}-on-"
        if spec.startswith(prefix) and spec[len(prefix):] in _ALGEBRAS:
            return h, spec[len(prefix):]
    raise UnknownName(f"unknown trivial action 'trivial:{spec}'")


@lru_cache(maxsize=None)
def action(name: str) -> ModuleAlgebraAction:
    if name.startswith("trivial:"):
        h, a = _split_trivial(name[len("trivial:"):])
        return ModuleAlgebraAction.trivial(hopf(h), algebra(a), name=name)
    try:
        return _ACTIONS[name]()
    except KeyError:
        raise UnknownName(f"unknown action {name!r}") from None


@lru_cache(maxsize=None)
def crossed(action_name: str) -> CrossedProductAlgebra:
    cp = crossed_product(action(action_name))
    cp.product.name = f"crossed:{action_name}"
    return cp


def unit_subalgebra(big: StructureConstantAlgebra) -> SubalgebraInclusion:
    """The scalars ``k 1`` inside ``big``."""
    return induced_subalgebra(big, [dict(big.unit)], ["1"], name="unit")


def full_subalgebra(big: StructureConstantAlgebra) -> SubalgebraInclusion:
    return SubalgebraInclusion(big, big, SparseMatrix.identity(big.dim), name="full")


def builtin_crossed_products() -> List[str]:
    return list(_ACTIONS)
