from fractions import Fraction

import pytest

from filiform.exact import DimensionError, coordinate_span
from filiform.lie import (
    NotNilpotentError,
    StructureConstants,
    abelian_algebra,
    bracket,
    centralizer,
    is_abelian_subspace,
    is_lie,
    is_nilpotent,
    jacobi_defect,
    jacobi_defects,
    lower_central_series,
    subspace_bracket,
    whole_space,
)


def heisenberg():
    return StructureConstants.from_brackets(3, {(1, 2): {3: 1}})


def sl2():
    # [h, e] = 2e, [h, f] = -2f, [e, f] = h with basis (h, e, f)
    return StructureConstants.from_brackets(3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}})


def test_antisymmetry_of_basis_brackets():
    L = heisenberg()
    assert L.basis_bracket(2, 1) == (0, 0, -1)
    assert L.basis_bracket(2, 2) == (0, 0, 0)


def test_from_brackets_accepts_reversed_pairs():
    L = StructureConstants.from_brackets(3, {(2, 1): {3: -1}})
    assert L.table == heisenberg().table


def test_constructor_rejects_bad_keys_and_lengths():
    with pytest.raises(ValueError):
        StructureConstants(3, {(2, 1): (0, 0, 1)})
    with pytest.raises(DimensionError):
        StructureConstants(3, {(1, 2): (0, 1)})
    with pytest.raises(ValueError):
        StructureConstants.from_brackets(3, {(1, 1): {2: 1}})


def test_bracket_is_bilinear():
    L = sl2()
    u, v = (1, 2, 0), (0, 1, 3)
    # [h + 2e, e + 3f] = [h,e] + 3[h,f] + 6[e,f] = 2e - 6f + 6h
    assert bracket(L, u, v) == (6, 2, -6)


def test_jacobi_holds_for_classical_examples():
    assert is_lie(heisenberg())
    assert is_lie(sl2())
    assert is_lie(abelian_algebra(4))


def test_jacobi_defect_detects_failure():
    # [e1,e2] = e3, [e1,e3] = e2, [e2,e3] = e2: [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = -e3
    L = StructureConstants.from_brackets(3, {(1, 2): {3: 1}, (1, 3): {2: 1}, (2, 3): {2: 1}})
    assert not is_lie(L)
    defects = jacobi_defects(L)
    assert jacobi_defect(L, 1, 2, 3) == (0, 0, -1)
    assert defects[(1, 2, 3)] == (0, 0, -1)


def test_lower_central_series_of_heisenberg():
    L = heisenberg()
    series = lower_central_series(L)
    assert [S.dim for S in series] == [3, 1, 0]
    assert is_nilpotent(L)


def test_sl2_is_not_nilpotent():
    L = sl2()
    assert not is_nilpotent(L)
    with pytest.raises(NotNilpotentError):
        lower_central_series(L, strict=True)


def test_centralizer_and_abelian_subspaces():
    L = heisenberg()
    center = coordinate_span(3, [3])
    assert centralizer(L, whole_space(L)) == center
    assert centralizer(L, coordinate_span(3, [1])) == coordinate_span(3, [1, 3])
    assert is_abelian_subspace(L, coordinate_span(3, [1, 3]))
    assert not is_abelian_subspace(L, coordinate_span(3, [1, 2]))


def test_subspace_bracket():
    L = sl2()
    W = whole_space(L)
    assert subspace_bracket(L, W, W) == W
    assert subspace_bracket(L, coordinate_span(3, [2]), coordinate_span(3, [2])).dim == 0


def test_symbolic_coefficients():
    from filiform.exact import MPoly

    a = MPoly.var("a")
    L = StructureConstants.from_brackets(4, {(1, 2): {3: 1}, (1, 3): {4: a}, (2, 3): {4: Fraction(0)}})
    assert not L.is_numeric()
    assert is_lie(L)
