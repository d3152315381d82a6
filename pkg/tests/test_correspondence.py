import pytest

from cyclica import registry as R
from cyclica.algebra_complex import tensor_index
from cyclica.correspondence import (
    CorrespondencePair,
    NotDeclaredSemisimple,
    verify_bconstant_generalization,
    verify_corollary_semisimple,
    verify_cyclic_map,
    verify_image_constant,
    verify_theorem,
)
from cyclica.hopf import HopfAlgebraData, ModuleAlgebraAction
from cyclica.linalg import SparseMatrix


@pytest.fixture(scope="module")
def z2():
    return CorrespondencePair(R.action("z2-on-dual-numbers"))


@pytest.fixture(scope="module")
def h4():
    return CorrespondencePair(R.action("h4-on-dual-numbers"))


def test_psi_degree_zero_is_reindexing(h4):
    cp, ec = h4.crossed, h4.equivariant
    expected = {(cp.index(a, h), ec.index(h, (a,))): 1 for a in range(2) for h in range(4)}
    assert dict(((i, j), c) for i, j, c in h4.psi(0).entries()) == expected
    assert h4.phi(0).T == h4.psi(0)


def test_psi_grouplike_example(z2):
    # Psi phi(a0 # g, a1 # h1) = phi(g h1, a0, g(a1)) with g(x) = -x
    cp, ec = z2.crossed, z2.equivariant
    psi = z2.psi(1)
    D = cp.product.dim
    g = 1
    for a0 in range(2):
        for a1 in range(2):
            for h1 in range(2):
                row = tensor_index((cp.index(a0, g), cp.index(a1, h1)), D)
                col = ec.index((g + h1) % 2, (a0, a1))
                got = {j: c for i, j, c in psi.entries() if i == row}
                assert got == {col: -1 if a1 == 1 else 1}


def test_psi_of_zero_is_zero(z2):
    assert z2.psi(2).apply({}) == {}
    assert z2.phi(2).apply({}) == {}


@pytest.mark.parametrize("which,top", [("z2", 2), ("h4", 2)])
def test_psi_is_cyclic(which, top, request):
    rep = verify_cyclic_map(request.getfixturevalue(which), top)
    assert rep.passed, [c.name for c in rep.failures()]


def test_ground_field_hopf_cyclic_map():
    pair = CorrespondencePair(R.action("trivial:ground-field-on-dual-numbers"))
    assert verify_cyclic_map(pair, 2).passed
    assert verify_theorem(pair, 2).passed


def test_perturbed_psi_is_caught():
    pair = CorrespondencePair(R.action("z2-on-dual-numbers"))
    psi = pair.psi(1)
    pair._psi[1] = psi + SparseMatrix.from_dense(
        [[1 if (i, j) == (3, 0) else 0 for j in range(psi.ncols)] for i in range(psi.nrows)], psi.ncols)
    assert not verify_cyclic_map(pair, 1).passed


def test_image_constant_with_negative_control(z2):
    rep = verify_image_constant(z2, 2)
    assert rep.passed
    control = [c for c in rep.checks if c.name == "non-normalized-escapes"]
    assert control and control[0].detail["witness"] is not None


@pytest.mark.parametrize("which,top", [("z2", 2), ("h4", 1)])
def test_theorem(which, top, request):
    rep = verify_theorem(request.getfixturevalue(which), top)
    assert rep.passed, [(c.name, c.degree) for c in rep.failures()]
    eq, cons = rep.tables["equivariant"], rep.tables["crossed-constant"]
    assert eq.dims() == cons.dims()


def test_theorem_dimensions_z2(z2):
    rep = verify_theorem(z2, 2, hc=False)
    dims = [(c.detail["normalized_dim"], c.detail["constant_dim"]) for c in rep.checks if c.name == "dimensions-agree"]
    assert all(a == b for a, b in dims)
    assert rep.tables == {}


def test_corollary_for_group_algebras():
    for name in ["z2-on-dual-numbers", "trivial:group-algebra:z3-on-dual-numbers"]:
        rep = verify_corollary_semisimple(R.action(name), 2)
        assert rep.passed and not rep.skipped
        assert rep.tables["crossed-constant"].dims() == rep.tables["crossed-plain"].dims()


def test_corollary_skipped_for_sweedler(h4):
    rep = verify_corollary_semisimple(h4.action, 1, pair=h4)
    assert rep.skipped
    assert not rep.checks
    assert set(rep.tables) == {"crossed-constant", "crossed-plain"}


def test_corollary_requires_flag():
    act = R.action("z2-on-dual-numbers")
    h = act.hopf
    unflagged = HopfAlgebraData(h.alg, h.coproduct, h.counit, h.antipode, h.antipode_inverse,
                                semisimple=None, name="unflagged")
    with pytest.raises(NotDeclaredSemisimple):
        verify_corollary_semisimple(ModuleAlgebraAction(unflagged, act.alg, act._act), 1)


@pytest.mark.parametrize("which", ["z2", "h4"])
def test_bconstant_unit_reproduces_theorem(which, request):
    pair = request.getfixturevalue(which)
    unit = R.unit_subalgebra(pair.action.alg)
    rep = verify_bconstant_generalization(pair.action, unit, 1, pair=pair)
    assert rep.passed
    thm = verify_theorem(pair, 1)
    assert rep.tables["equivariant-bconstant"].dims() == thm.tables["equivariant"].dims()


def test_bconstant_full_subalgebra(z2):
    full = R.full_subalgebra(z2.action.alg)
    rep = verify_bconstant_generalization(z2.action, full, 1, pair=z2)
    assert rep.passed
    assert rep.tables["equivariant-bconstant"].dims() == [2, 0]


def test_report_serialization_is_sorted(z2):
    d = verify_image_constant(z2, 1).to_dict()
    for check in d["checks"]:
        assert list(check["detail"]) == sorted(check["detail"])
