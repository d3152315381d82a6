import pytest

from cyclica import registry as R
from cyclica.algebra_complex import AlgebraCochainComplex, hc_plain
from cyclica.equivariant import (
    EquivariantComplex,
    ambient_cyclic_order_defect,
    bconstant_equivariant_subspace,
    build_equivariant_complex,
    equivariant_subspace,
    equivariant_subspace_alt,
    hc_equivariant,
    normalized_equivariant_subspace,
)
from cyclica.cocyclic import verify_cocyclic, verify_mixed_identities
from cyclica.algebra import SubalgebraInclusion
from cyclica.hopf import NotActionStable
from cyclica.linalg import SparseMatrix, nullspace


def test_ground_field_hopf_reproduces_plain_complex():
    act = R.action("trivial:ground-field-on-dual-numbers")
    ec = EquivariantComplex(act)
    pc = AlgebraCochainComplex(act.alg)
    for n in range(3):
        for i in range(n + 2):
            assert ec.face(n, i) == pc.face(n, i)
        for j in range(n):
            assert ec.degeneracy(n, j) == pc.degeneracy(n, j)
        assert ec.cyclic(n) == pc.cyclic(n)
        assert ec.carrier(n) is None


def test_z2_degree_zero_carrier():
    # phi(h, a) with phi(g.h, g(a)) = phi(h, a): g fixes h (abelian) and flips x, so phi(h, x) = 0
    sub = equivariant_subspace(R.action("z2-on-dual-numbers"), 0)
    assert sub.ambient_dim == 4 and sub.dim == 2


@pytest.mark.parametrize("name,top", [("z2-on-dual-numbers", 3), ("h4-on-dual-numbers", 2)])
def test_alternative_description_agrees(name, top):
    act = R.action(name)
    for n in range(top + 1):
        assert equivariant_subspace(act, n) == equivariant_subspace_alt(act, n)


def test_first_leg_convention_agrees_only_when_cocommutative():
    z2, h4 = R.action("z2-on-dual-numbers"), R.action("h4-on-dual-numbers")
    for n in range(3):
        assert equivariant_subspace(z2, n, adjoint_legs="first") == equivariant_subspace(z2, n)
        assert equivariant_subspace(h4, n, adjoint_legs="first") != equivariant_subspace_alt(h4, n)
    with pytest.raises(ValueError):
        equivariant_subspace(z2, 0, adjoint_legs="middle")


@pytest.mark.parametrize("name,top", [("z2-on-dual-numbers", 3), ("h4-on-dual-numbers", 2)])
def test_carrier_is_cocyclic(name, top):
    ec = build_equivariant_complex(R.action(name), top)
    assert verify_cocyclic(ec, top).passed
    assert verify_mixed_identities(ec, top).passed


def test_ambient_cyclic_order_fails_for_z2():
    ec = EquivariantComplex(R.action("z2-on-dual-numbers"))
    # t^2 - id is nonzero off the carrier at n = 1
    assert ambient_cyclic_order_defect(ec, 1) == (5, 5, -2)
    rep = verify_cocyclic(_ambient(ec, 1), 1)
    assert "cyclic-order" in rep.failed_axioms()


def _ambient(ec, n_max):
    """Same operators with the carrier forgotten."""
    from cyclica.cocyclic import ExplicitCocyclicModule
    m = ExplicitCocyclicModule.replacing(ec, n_max)
    m._carriers = {}
    return m


@pytest.mark.parametrize("name", ["z2-on-dual-numbers", "h4-on-dual-numbers"])
def test_normalized_matches_direct_elimination(name):
    act = R.action(name)
    ec = build_equivariant_complex(act, 2, check=False)
    for n in range(1, 3):
        degs = [ec.degeneracy(n, j) for j in range(n)]
        rows = [r for d in degs for _, r in d.rows()]
        killed = nullspace(SparseMatrix.from_row_vectors(ec.space_dim(n), rows))
        assert normalized_equivariant_subspace(ec, n) == killed & equivariant_subspace(act, n)


def test_bconstant_shrinks_with_subalgebra():
    act = R.action("z2-on-dual-numbers")
    ec = EquivariantComplex(act)
    unit, full = R.unit_subalgebra(act.alg), R.full_subalgebra(act.alg)
    for n in range(3):
        u = bconstant_equivariant_subspace(ec, unit, n)
        f = bconstant_equivariant_subspace(ec, full, n)
        assert u.contains(f)
        assert equivariant_subspace(act, n).contains(u)


def test_bconstant_rejects_unstable_subalgebra():
    act = R.action("h4-on-dual-numbers")
    ec = EquivariantComplex(act)
    unit = R.unit_subalgebra(act.alg)
    # g sends 1 + x to 1 - x
    fake = SubalgebraInclusion(unit.small, act.alg, SparseMatrix.from_dense([[1], [1]]), name="1+x")
    with pytest.raises(NotActionStable):
        bconstant_equivariant_subspace(ec, fake, 1)


@pytest.mark.parametrize("alg", ["dual-numbers", "group-algebra:z3"])
def test_ground_field_action_hc_matches_plain(alg):
    act = R.action(f"trivial:ground-field-on-{alg}")
    assert hc_equivariant(act, 2).dims() == hc_plain(act.alg, 2).dims()


@pytest.mark.parametrize("name,expected", [("z2-on-dual-numbers", [2, 1, 2, 1]), ("h4-on-dual-numbers", [2, 0, 2])])
def test_equivariant_hc_values(name, expected):
    act = R.action(name)
    deg = len(expected) - 1
    assert hc_equivariant(act, deg).dims() == expected
    assert hc_equivariant(act, deg, normalized=True).dims() == expected


def test_trivial_group_action_multiplies_traces():
    # trivial Z/3 on dual numbers: phi(h, a) is free in h
    assert hc_equivariant(R.action("trivial:group-algebra:z3-on-dual-numbers"), 2).dims() == [6, 0, 6]
