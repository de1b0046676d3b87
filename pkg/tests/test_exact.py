from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filiform.exact import (
    DimensionError,
    MPoly,
    contains,
    coordinate_span,
    equal,
    format_rational,
    identity_matrix,
    inverse,
    is_subspace,
    kernel,
    mat_mul,
    mat_vec,
    q,
    rank,
    rref,
    span,
    subspace_sum,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def vectors(n, count):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=count)


def test_q_parses_strings_and_rejects_bad_input():
    assert q("3/6") == Fraction(1, 2)
    assert q(" -4 ") == Fraction(-4)
    with pytest.raises(ZeroDivisionError):
        q("1/0")
    with pytest.raises(TypeError):
        q(True)
    with pytest.raises(TypeError):
        q(0.5)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"


def test_rref_small_example():
    red, r = rref([[2, 4, 2], [1, 2, 3], [0, 0, 0]])
    assert r == 2
    assert red[0] == (1, 2, 0)
    assert red[1] == (0, 0, 1)


def test_inverse_and_singular():
    m = [[1, 2], [3, 4]]
    inv = inverse(m)
    assert mat_mul(m, inv) == identity_matrix(2)
    assert inverse([[1, 2], [2, 4]]) is None


def test_kernel_is_annihilated():
    m = [[1, 1, 0, 2], [0, 1, 1, 1]]
    basis = kernel(m, 4)
    assert len(basis) == 2
    assert all(mat_vec(m, b) == (0, 0) for b in basis)


def test_span_dimension_mismatch():
    with pytest.raises(DimensionError):
        span([(1, 0)], 3)


@settings(max_examples=60, deadline=None)
@given(vectors(4, 6))
def test_span_matches_rank_and_contains_generators(vs):
    S = span(vs, 4)
    assert S.dim == (rank(vs) if vs else 0)
    assert all(contains(S, v) for v in vs)


@settings(max_examples=60, deadline=None)
@given(vectors(4, 5))
def test_span_is_canonical(vs):
    # the stored basis does not depend on the order or scaling of the generators
    shuffled = list(reversed([tuple(2 * x for x in v) for v in vs]))
    assert span(vs, 4) == span(shuffled, 4)


@settings(max_examples=40, deadline=None)
@given(vectors(3, 3), vectors(3, 3))
def test_sum_contains_both(a, b):
    A, B = span(a, 3), span(b, 3)
    S = subspace_sum(A, B)
    assert is_subspace(A, S) and is_subspace(B, S)
    assert S.dim <= A.dim + B.dim


def test_coordinate_span():
    S = coordinate_span(5, [2, 4])
    assert S.dim == 2
    assert contains(S, (0, 3, 0, -1, 0))
    assert not contains(S, (1, 0, 0, 0, 0))
    assert equal(S, span([(0, 1, 0, 1, 0), (0, 1, 0, -1, 0)], 5))


# ---------------------------------------------------------------------------
# MPoly

names = ("x", "y", "z")


@st.composite
def polys(draw):
    terms = draw(
        st.dictionaries(
            st.tuples(*(st.integers(0, 2) for _ in names)), small, max_size=4
        )
    )
    return MPoly(names, terms)


@settings(max_examples=80, deadline=None)
@given(polys(), polys(), polys())
def test_mpoly_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert not (a - a)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), st.tuples(small, small, small))
def test_substitution_is_a_ring_homomorphism(a, b, point):
    env = dict(zip(names, point))
    assert (a * b).substitute(env) == a.substitute(env) * b.substitute(env)
    assert (a + b).substitute(env) == a.substitute(env) + b.substitute(env)


def test_mpoly_alignment_and_infix():
    x = MPoly.var("x")
    y = MPoly.var("y")
    p = Fraction(3, 2) * x * x * y - y + 5
    assert p.variables == ("x", "y")
    assert p.to_infix() == "3/2*x^2*y - y + 5"
    assert p.substitute({"x": 2}) == 5 * y + 5
    assert p.substitute({"x": 2, "y": 1}) == 10


def test_mpoly_var_must_be_known():
    with pytest.raises(ValueError):
        MPoly.var("w", ("x", "y"))
