import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclica import registry as R
from cyclica.algebra import (
    StructureConstantAlgebra,
    SubalgebraInclusion,
    induced_subalgebra,
    validate_algebra,
    validate_inclusion,
)
from cyclica.hopf import (
    HopfAlgebraData,
    InvalidAction,
    ModuleAlgebraAction,
    NotActionStable,
    adjoint,
    antipode_antihomomorphism,
    crossed_product,
    iterated_coproduct,
    iterated_coproduct_right,
    validate_action,
    validate_crossed_product,
    validate_hopf,
)
from cyclica.linalg import SparseMatrix

ACTIONS = ["z2-on-dual-numbers", "h4-on-dual-numbers", "trivial:group-algebra:z3-on-dual-numbers",
           "trivial:sweedler-h4-on-group-algebra:z2"]


@pytest.mark.parametrize("name", R.algebra_names())
def test_builtin_algebras_validate(name):
    assert validate_algebra(R.algebra(name)).passed


@pytest.mark.parametrize("name", R.hopf_names())
def test_builtin_hopf_validate(name):
    h = R.hopf(name)
    assert validate_hopf(h).passed
    assert antipode_antihomomorphism(h).passed


@pytest.mark.parametrize("name", ACTIONS)
def test_actions_and_crossed_products_validate(name):
    act = R.action(name)
    assert validate_action(act).passed
    assert validate_crossed_product(crossed_product(act)).passed


def test_corrupted_associativity_names_quadruple():
    # dual numbers with x.1 = -x and x.x = 1: (x 1) x = -1 but x (1 x) = 1
    bad = StructureConstantAlgebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: -1}, (1, 1): {0: 1}}, {0: 1})
    rep = validate_algebra(bad)
    assert not rep.passed
    assert "associativity" in rep.failed_axioms()
    v = next(v for v in rep.violations if v.axiom == "associativity")
    assert len(v.witness) == 4


def test_wrong_unit_detected():
    alg = R.algebra("dual-numbers")
    bad = StructureConstantAlgebra(2, {(i, j): alg.basis_product(i, j) for i in range(2) for j in range(2)}, {1: 1})
    assert "unit" in validate_algebra(bad).failed_axioms()


def test_sweedler_antipode_is_not_involutive():
    h = R.hopf("sweedler-h4")
    assert h.antipode != h.antipode_inverse
    assert h.antipode @ h.antipode_inverse == SparseMatrix.identity(4)
    # S^2 is conjugation by g: x -> -x
    assert (h.antipode @ h.antipode).to_dense()[2][2] == -1


def test_corrupted_antipode_detected():
    h = R.hopf("sweedler-h4")
    bad = HopfAlgebraData(h.alg, h.coproduct, [1, 1, 0, 0], h.antipode_inverse, h.antipode, name="bad")
    fails = validate_hopf(bad).failed_axioms()
    assert "antipode" in fails


def test_non_coassociative_detected():
    h = R.hopf("sweedler-h4")
    cop = {k: dict(v) for k, v in h.coproduct.items()}
    cop[2] = {(2, 0): 1, (0, 2): 1}  # x primitive would need g-twisting to stay an algebra map with x g = -g x
    bad = HopfAlgebraData(h.alg, cop, [1, 1, 0, 0], h.antipode, h.antipode_inverse)
    assert not validate_hopf(bad).passed


@pytest.mark.parametrize("name", ["sweedler-h4", "group-algebra:z3"])
@pytest.mark.parametrize("legs", [2, 3, 4, 5])
def test_iterated_coproduct_bracketings_agree(name, legs):
    h = R.hopf(name)
    assert iterated_coproduct(h, legs) == iterated_coproduct_right(h, legs)


def test_adjoint_action_on_sweedler():
    h = R.hopf("sweedler-h4")
    # g . x = g x g^{-1} = -x
    assert adjoint(h, {1: 1}, {2: 1}) == {2: -1}
    # S^{-1} on the right: x . 1 = x S^{-1}(1) + g S^{-1}(x) = x + g gx = 2x
    assert adjoint(h, {2: 1}, {0: 1}) == {2: 2}
    assert adjoint(h, {0: 1}, {3: 1}) == {3: 1}


def test_invalid_action_rejected():
    h = R.hopf("group-algebra:z2")
    alg = R.algebra("dual-numbers")
    # g(x) = 2x is not an algebra automorphism of order two
    bad = ModuleAlgebraAction(h, alg, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {0: 1}, (1, 1): {1: 2}})
    assert "representation" in validate_action(bad).failed_axioms()
    with pytest.raises(InvalidAction):
        crossed_product(bad)


def test_crossed_product_multiplication_rule():
    cp = crossed_product(R.action("z2-on-dual-numbers"))
    x1 = cp.tensor({1: 1}, {0: 1})
    one_g = cp.tensor({0: 1}, {1: 1})
    # (1#g)(x#1) = g(x)#g = -x#g
    assert cp.product.product(one_g, x1) == cp.tensor({1: -1}, {1: 1})
    assert cp.product.product(x1, one_g) == cp.tensor({1: 1}, {1: 1})
    assert not cp.product.is_commutative()


def test_sub_crossed_requires_stability():
    cp = crossed_product(R.action("h4-on-dual-numbers"))
    alg = R.algebra("dual-numbers")
    # span{x} is not unital; span{1} is stable but span{1 + x} is not a subalgebra, so build a fake inclusion
    unit = R.unit_subalgebra(alg)
    assert cp.sub_crossed(unit).small.dim == 4
    fake = SubalgebraInclusion(unit.small, alg, SparseMatrix.from_dense([[0], [1]]), name="x-line")
    with pytest.raises(NotActionStable):
        cp.sub_crossed(fake)


def test_induced_subalgebra_of_group_algebra():
    z4 = R.algebra("group-algebra:z4")
    inc = induced_subalgebra(z4, [{0: 1}, {2: 1}], ["1", "g2"], name="z2-in-z4")
    assert inc.small.basis_product(1, 1) == {0: 1}
    assert validate_inclusion(inc).passed
    with pytest.raises(ValueError):
        induced_subalgebra(z4, [{0: 1}, {1: 1}])  # not closed


@given(st.integers(2, 6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_group_algebra_associative_on_elements(n, i, j, k):
    alg = R.algebra(f"group-algebra:z{n}")
    a, b, c = {i % n: 1}, {j % n: 2, 0: -1}, {k % n: 1}
    assert alg.product(alg.product(a, b), c) == alg.product(a, alg.product(b, c))
