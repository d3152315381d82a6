from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclica.linalg import (
    ImageEscapesCodomain,
    LinearSubspace,
    SparseMatrix,
    direct_sum,
    format_scalar,
    kernel_within,
    nullspace,
    rank,
    rank_on,
    restrict_operator,
    scalar,
    vanishes_on,
)

small = st.one_of(st.integers(-4, 4), st.fractions(min_value=-3, max_value=3, max_denominator=5))


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish: most entries zero
    entry = st.one_of(st.just(0), st.just(0), small)
    return SparseMatrix.from_dense([[draw(entry) for _ in range(c)] for _ in range(r)], c)


def dense_rank(rows):
    """Plain Gaussian elimination over Fractions, as an independent oracle."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][col] != 0:
                f = m[i][col] / m[rk][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


@given(matrices())
def test_rank_matches_dense_oracle(m):
    assert rank(m) == dense_rank(m.to_dense())


@given(matrices())
def test_rank_transpose_invariant(m):
    assert rank(m) == rank(m.T)


@given(matrices())
def test_nullspace_is_kernel_of_right_dimension(m):
    ker = nullspace(m)
    assert ker.dim == m.ncols - rank(m)
    for v in ker.vectors():
        assert not m.apply(v)


@given(matrices(), matrices())
def test_intersection_sum_dimension_formula(a, b):
    n = max(a.ncols, b.ncols)
    u = LinearSubspace.span(n, [r for _, r in a.rows()])
    w = LinearSubspace.span(n, [r for _, r in b.rows()])
    assert (u & w).dim + (u + w).dim == u.dim + w.dim
    assert u.contains(u & w) and w.contains(u & w)
    assert (u + w).contains(u) and (u + w).contains(w)


@given(matrices())
def test_span_is_canonical(m):
    rows = [r for _, r in m.rows()]
    s1 = LinearSubspace.span(m.ncols, rows)
    s2 = LinearSubspace.span(m.ncols, list(reversed(rows)) + [{k: 2 * v for k, v in r.items()} for r in rows])
    assert s1 == s2
    assert hash(s1) == hash(s2)


@given(matrices(), matrices())
def test_kernel_within(m, d):
    if d.ncols != m.ncols:
        d = SparseMatrix.from_dense([[1 if i == j else 0 for j in range(m.ncols)] for i in range(m.ncols)])
    domain = LinearSubspace.span(m.ncols, [r for _, r in d.rows()])
    k = kernel_within(m, domain)
    assert domain.contains(k)
    assert vanishes_on(m, k)
    assert k.dim == domain.dim - rank_on(m, domain)


@given(matrices(4, 4))
@settings(max_examples=50)
def test_product_associative_and_transpose(m):
    n = m.ncols
    x = SparseMatrix.from_dense([[(i + 2 * j) % 3 - 1 for j in range(m.nrows)] for i in range(n)])
    assert (m @ x) @ m == m @ (x @ m)
    assert (m @ x).T == x.T @ m.T


def test_restrict_operator_and_escape():
    # projection onto the first coordinate of Q^2
    p = SparseMatrix.from_dense([[1, 0], [0, 0]])
    line = LinearSubspace.span(2, [{0: 1}])
    assert restrict_operator(p, line, line) == SparseMatrix.identity(1)
    swap = SparseMatrix.from_dense([[0, 1], [1, 0]])
    with pytest.raises(ImageEscapesCodomain) as exc:
        restrict_operator(swap, line, line, label="swap")
    assert exc.value.witness == 0 and exc.value.label == "swap"


def test_direct_sum_and_coordinates():
    a = LinearSubspace.span(2, [{0: 1, 1: 1}])
    b = LinearSubspace.full(1)
    s = direct_sum([a, b])
    assert s.ambient_dim == 3 and s.dim == 2
    assert s.coordinates({0: 3, 1: 3, 2: -1}) == [3, -1]
    assert s.coordinates({0: 1}) is None


def test_scalars_are_exact():
    assert scalar(Fraction(4, 2)) == 2 and isinstance(scalar(Fraction(4, 2)), int)
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(TypeError):
        scalar(True)
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(5) == "5"


def test_block_matrix():
    m = SparseMatrix.block([1, 2], [2, 1], {(0, 0): SparseMatrix.from_dense([[1, 2]]),
                                          (1, 1): SparseMatrix.from_dense([[3], [4]])})
    assert m.to_dense() == [[1, 2, 0], [0, 0, 3], [0, 0, 4]]
