"""Algebras given by structure constants on a basis e_1..e_n.

Only the brackets ``[e_i, e_j]`` with ``i < j`` are stored; the rest follow
from alternation.  Coefficients may be Fractions or :class:`MPoly`, so the
same table type carries numeric laws and symbolic candidate laws.
Subspace computations (lower central series, centralizers, ...) need
numeric coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import (
    DimensionError,
    MPoly,
    Subspace,
    coordinate_span,
    format_rational,
    kernel,
    q,
    scalar_is_zero,
    span,
    unit_vector,
)


class NotNilpotentError(ValueError):
    """The lower central series stabilised above {0}."""


def _coerce(c):
    return c if isinstance(c, MPoly) else q(c)


@dataclass(frozen=True)
class StructureConstants:
    """An anticommutative algebra of dimension ``dim``.

    ``table`` maps ``(i, j)`` with ``1 <= i < j <= dim`` to the coordinate
    tuple of ``[e_i, e_j]``.  Zero brackets are dropped on construction.
    """

    dim: int
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        clean = {}
        for (i, j), vec in dict(self.table).items():
            if not (1 <= i < j <= self.dim):
                raise ValueError(f"bracket key ({i},{j}) must satisfy 1 <= i < j <= {self.dim}")
            vec = tuple(_coerce(c) for c in vec)
            if len(vec) != self.dim:
                raise DimensionError(f"[e{i},e{j}] has {len(vec)} coordinates, expected {self.dim}")
            if not all(scalar_is_zero(c) for c in vec):
                clean[(i, j)] = vec
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "_sparse", {k: _sparse(v) for k, v in clean.items()})

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]]):
        """Build from ``{(i, j): {h: coeff}}`` (sparse, 1-based)."""
        table = {}
        for (i, j), coords in brackets.items():
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            elif i == j:
                raise ValueError("diagonal brackets are identically zero")
            vec = [Fraction(0)] * dim
            for h, c in coords.items():
                vec[h - 1] = sign * _coerce(c)
            table[(i, j)] = tuple(vec)
        return cls(dim, table)

    def basis_bracket(self, i: int, j: int) -> tuple:
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexError(f"basis indices ({i},{j}) out of range 1..{self.dim}")
        if i == j:
            return (Fraction(0),) * self.dim
        if i < j:
            return self.table.get((i, j), (Fraction(0),) * self.dim)
        vec = self.table.get((j, i))
        if vec is None:
            return (Fraction(0),) * self.dim
        return tuple(-c for c in vec)

    def _basis_sparse(self, i: int, j: int) -> list:
        if i < j:
            return self._sparse.get((i, j), [])
        if i > j:
            return [(h, -c) for h, c in self._sparse.get((j, i), [])]
        return []

    def is_numeric(self) -> bool:
        return not any(isinstance(c, MPoly) for v in self.table.values() for c in v)

    def map_coefficients(self, fn) -> "StructureConstants":
        return StructureConstants(self.dim, {k: tuple(fn(c) for c in v) for k, v in self.table.items()})

    def describe(self) -> str:
        lines = []
        for (i, j), vec in sorted(self.table.items()):
            lines.append(f"[e{i},e{j}] = {format_vector(vec)}")
        return "\n".join(lines)


def _sparse(vec: Sequence) -> list:
    return [(h, c) for h, c in enumerate(vec) if not scalar_is_zero(c)]


def format_vector(vec: Sequence) -> str:
    terms = []
    for h, c in enumerate(vec, start=1):
        if scalar_is_zero(c):
            continue
        if isinstance(c, MPoly):
            terms.append(f"({c.to_infix()})*e{h}")
        else:
            terms.append(f"{format_rational(c)}*e{h}")
    return " + ".join(terms) if terms else "0"


def _check_len(L: StructureConstants, *vs: Sequence) -> None:
    for v in vs:
        if len(v) != L.dim:
            raise DimensionError(f"element of length {len(v)} in a {L.dim}-dimensional algebra")


def bracket(L: StructureConstants, u: Sequence, v: Sequence) -> tuple:
    """Bilinear extension of the basis table."""
    _check_len(L, u, v)
    nz_u = [(a, c) for a, c in enumerate(u) if c]
    nz_v = [(b, c) for b, c in enumerate(v) if c]
    out: list = [Fraction(0)] * L.dim
    for a, cu in nz_u:
        for b, cv in nz_v:
            if a == b:
                continue
            terms = L._basis_sparse(a + 1, b + 1)
            if not terms:
                continue
            w = cu * cv
            for h, c in terms:
                out[h] = out[h] + w * c
    return tuple(out)


def _double_bracket(L: StructureConstants, i: int, j: int, k: int, acc: dict) -> None:
    """acc += [[e_i, e_j], e_k], sparse and 0-based in the output index."""
    for h, c in L._basis_sparse(i, j):
        for g, d in L._basis_sparse(h + 1, k):
            acc[g] = acc.get(g, 0) + c * d


def _sparse_defect(L: StructureConstants, i: int, j: int, k: int) -> dict:
    acc: dict = {}
    _double_bracket(L, i, j, k, acc)
    _double_bracket(L, j, k, i, acc)
    _double_bracket(L, k, i, j, acc)
    return {g: c for g, c in acc.items() if c}


def jacobi_defect(L: StructureConstants, i: int, j: int, k: int) -> tuple:
    """J(e_i,e_j,e_k) = [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]."""
    if not (1 <= i < j < k <= L.dim):
        raise ValueError(f"need 1 <= i < j < k <= {L.dim}, got ({i},{j},{k})")
    sparse = _sparse_defect(L, i, j, k)
    return tuple(sparse.get(h, Fraction(0)) for h in range(L.dim))


def jacobi_defects(L: StructureConstants) -> dict:
    """All nonzero defects, keyed by index triple."""
    out = {}
    for i, j, k in itertools.combinations(range(1, L.dim + 1), 3):
        if _sparse_defect(L, i, j, k):
            out[(i, j, k)] = jacobi_defect(L, i, j, k)
    return out


def is_lie(L: StructureConstants) -> bool:
    return not any(_sparse_defect(L, i, j, k) for i, j, k in itertools.combinations(range(1, L.dim + 1), 3))


def whole_space(L: StructureConstants) -> Subspace:
    return coordinate_span(L.dim, range(1, L.dim + 1))


def zero_space(L: StructureConstants) -> Subspace:
    return Subspace(L.dim, ())


def _check_space(L: StructureConstants, *spaces: Subspace) -> None:
    for s in spaces:
        if s.ambient_dim != L.dim:
            raise DimensionError(f"subspace of Q^{s.ambient_dim} in a {L.dim}-dimensional algebra")


def subspace_bracket(L: StructureConstants, U: Subspace, V: Subspace) -> Subspace:
    """[U, V], spanned by the brackets of basis vectors."""
    _check_space(L, U, V)
    vecs = [bracket(L, u, v) for u in U.basis for v in V.basis]
    return span(vecs, L.dim)


def lower_central_series(L: StructureConstants, *, strict: bool = False) -> list[Subspace]:
    """C^1 = g, C^k = [C^{k-1}, g], stopping at {0} or at the first repeat.

    With ``strict=True`` a series that stabilises above {0} raises
    :class:`NotNilpotentError`.
    """
    cached = L.__dict__.get("_lcs")
    if cached is None:
        g = whole_space(L)
        series = [g]
        while series[-1].dim > 0:
            nxt = subspace_bracket(L, series[-1], g)
            if nxt == series[-1]:
                break
            series.append(nxt)
        cached = tuple(series)
        object.__setattr__(L, "_lcs", cached)  # the table is immutable
    if strict and cached[-1].dim > 0:
        raise NotNilpotentError(f"lower central series stabilises at dimension {cached[-1].dim}")
    return list(cached)


def is_nilpotent(L: StructureConstants) -> bool:
    return lower_central_series(L)[-1].dim == 0


def is_abelian_subspace(L: StructureConstants, S: Subspace) -> bool:
    return subspace_bracket(L, S, S).dim == 0


def centralizer(L: StructureConstants, S: Subspace) -> Subspace:
    """{x : [x, s] = 0 for every s in S}, as a kernel of stacked ad-maps."""
    _check_space(L, S)
    n = L.dim
    rows = []
    for s in S.basis:
        # column x of ad_s: [e_x, s]
        cols = [bracket(L, unit_vector(n, x), s) for x in range(1, n + 1)]
        rows.extend(tuple(cols[x][h] for x in range(n)) for h in range(n))
    return span(kernel(rows, n), n)


def abelian_algebra(n: int) -> StructureConstants:
    return StructureConstants(n, {})


def lie_from_sparse(dim: int, pairs: Iterable[tuple[int, int, Mapping[int, object]]]) -> StructureConstants:
    return StructureConstants.from_brackets(dim, {(i, j): c for i, j, c in pairs})
