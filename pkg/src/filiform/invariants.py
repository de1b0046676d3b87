"""Filiform predicates and invariants.

The bracket bifiltration ``F(k, l) = [C^k g, C^l g]`` is summarised by the
Hilbert polynomial ``HP = sum dim F(k, l) t^k s^l``.  For a filiform algebra
of dimension n the part coming from ``k = 1`` or ``l = 1`` is always

    HP0 = (n-2) t s + sum_{2 <= k <= n-2} (n-k-1) (t^k s + t s^k)

and ``HP2 = HP - HP0`` carries the interesting information.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import Subspace, coordinate_span, is_subspace
from .lie import (
    StructureConstants,
    centralizer,
    is_abelian_subspace,
    is_lie,
    lower_central_series,
    subspace_bracket,
)


class ModelAlgebraError(ValueError):
    """z1 and z2 are only defined for non-model filiform algebras."""


class NotFiliformError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bivariate polynomials with nonnegative integer coefficients


@dataclass(frozen=True)
class BiPoly:
    """Sparse polynomial in t, s; ``coeffs[(k, l)]`` is the coefficient of t^k s^l."""

    coeffs: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {(int(k), int(l)): int(c) for (k, l), c in dict(self.coeffs).items() if c != 0}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, int]]) -> "BiPoly":
        acc: dict = {}
        for k, l, c in terms:
            acc[(k, l)] = acc.get((k, l), 0) + c
        return cls(acc)

    @classmethod
    def symmetric_group(cls, c: int, *monomials: tuple[int, int]) -> "BiPoly":
        return cls.from_terms((k, l, c) for k, l in monomials)

    def coeff(self, k: int, l: int) -> int:
        return self.coeffs.get((k, l), 0)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        acc = dict(self.coeffs)
        for key, c in other.coeffs.items():
            acc[key] = acc.get(key, 0) + c
        return BiPoly(acc)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        acc = dict(self.coeffs)
        for key, c in other.coeffs.items():
            acc[key] = acc.get(key, 0) - c
        return BiPoly(acc)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def swapped(self) -> "BiPoly":
        return BiPoly({(l, k): c for (k, l), c in self.coeffs.items()})

    def is_symmetric(self) -> bool:
        return self == self.swapped()

    def is_lower_set(self) -> bool:
        supp = self.support
        return all(
            (a, b) in supp for (k, l) in supp for a in range(1, k + 1) for b in range(1, l + 1)
        )

    def total_degree(self) -> int:
        return max((k + l for k, l in self.coeffs), default=0)

    def terms(self) -> list[tuple[int, int, int]]:
        return [(k, l, c) for (k, l), c in sorted(self.coeffs.items())]

    def to_json_obj(self) -> dict:
        return {"coeffs": [list(t) for t in self.terms()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "BiPoly":
        return cls.from_terms(tuple(t) for t in obj["coeffs"])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"

        def mono(k, l):
            t = "t" if k == 1 else f"t^{k}"
            s = "s" if l == 1 else f"s^{l}"
            return f"{t}*{s}"

        parts = []
        for (k, l), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
            parts.append(mono(k, l) if c == 1 else f"{c}*{mono(k, l)}")
        return " + ".join(parts)

    __repr__ = __str__


def star(r: int, n: int) -> int:
    """Index reflection r* = n + 1 - r."""
    return n + 1 - r


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triple:
    z1: int
    z2: int
    n: int

    def satisfies_bounds(self) -> bool:
        return 4 <= self.z1 <= self.z2 < self.n <= 2 * self.z2 - 2

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.z1, self.z2, self.n)


def central_series_term(series: list[Subspace], k: int) -> Subspace:
    """C^k from a precomputed series, padding with {0} past the end."""
    if k < 1:
        raise ValueError("lower central series is indexed from 1")
    if k <= len(series):
        return series[k - 1]
    return Subspace(series[0].ambient_dim, ())


def model_algebra(n: int) -> StructureConstants:
    """g0^n: [e_1, e_h] = e_{h-1} for 3 <= h <= n, all other brackets zero."""
    if n < 2:
        raise ValueError("the model filiform algebra needs n >= 2")
    return StructureConstants.from_brackets(n, {(1, h): {h - 1: 1} for h in range(3, n + 1)})


def is_filiform(L: StructureConstants) -> bool:
    n = L.dim
    if n < 2 or not L.is_numeric() or not is_lie(L):
        return False
    series = lower_central_series(L)
    return all(central_series_term(series, k).dim == n - k for k in range(2, n + 1))


def is_adapted(L: StructureConstants) -> bool:
    n = L.dim
    if n < 2:
        return False
    for h in range(3, n + 1):
        expect = tuple(Fraction(int(i == h - 2)) for i in range(n))
        if L.basis_bracket(1, h) != expect:
            return False
    zero = (Fraction(0),) * n
    if any(L.basis_bracket(2, h) != zero for h in range(1, n + 1)):
        return False
    if n >= 3 and any(L.basis_bracket(3, h) != zero for h in range(2, n + 1)):
        return False
    return True


def is_model(L: StructureConstants) -> bool:
    """True for an adapted law whose only brackets are [e_1, e_h] = e_{h-1}."""
    return is_adapted(L) and L.table == model_algebra(L.dim).table


def _require_nonmodel_filiform(L: StructureConstants) -> None:
    if not is_filiform(L):
        raise NotFiliformError("algebra is not filiform")
    if is_model(L):
        raise ModelAlgebraError("z1 and z2 are not defined for the model filiform algebra")


def invariants_adapted(L: StructureConstants) -> Triple:
    """z1, z2 read off an adapted basis.

    z1 = min{k >= 4 : [e_k, e_n] != 0},  z2 = min{k >= 4 : [e_k, e_{k+1}] != 0}.
    """
    if not is_adapted(L):
        raise ValueError("basis is not adapted")
    _require_nonmodel_filiform(L)
    n = L.dim

    def nonzero(i, j):
        return any(c != 0 for c in L.basis_bracket(i, j))

    z1 = next((k for k in range(4, n) if nonzero(k, n)), None)
    z2 = next((k for k in range(4, n) if nonzero(k, k + 1)), None)
    if z1 is None or z2 is None:
        raise ValueError("non-model law without the brackets that define z1/z2")
    return Triple(z1, z2, n)


def z1_centralizer(L: StructureConstants, shift: int = 0) -> int:
    """max{k : C_g(C^{n-k+2+shift} g) strictly contains C^2 g}.

    ``shift=0`` is the definition as written and agrees with
    :func:`invariants_adapted`; other shifts are for comparing indexing
    conventions of the lower central series.
    """
    _require_nonmodel_filiform(L)
    n = L.dim
    series = lower_central_series(L)
    c2 = central_series_term(series, 2)
    best = None
    for k in range(1, n + 2 + shift):
        idx = max(n - k + 2 + shift, 1)
        cen = centralizer(L, central_series_term(series, idx))
        if cen.dim > c2.dim and is_subspace(c2, cen):
            best = k
    if best is None:
        raise ValueError("no index satisfies the centralizer condition")
    return best


def z2_abelian(L: StructureConstants) -> int:
    """max{k : C^{n-k+1} g is abelian}."""
    _require_nonmodel_filiform(L)
    n = L.dim
    series = lower_central_series(L)
    return max(k for k in range(1, n + 1) if is_abelian_subspace(L, central_series_term(series, n - k + 1)))


def bracket_dimensions(L: StructureConstants) -> dict[tuple[int, int], int]:
    """dim [C^k, C^l] for all k, l >= 1 with a nonzero value."""
    cached = L.__dict__.get("_bracket_dims")
    if cached is not None:
        return dict(cached)
    series = lower_central_series(L, strict=True)
    top = len(series)  # the last entry is {0}
    dims: dict = {}
    for k in range(1, top + 1):
        ck = central_series_term(series, k)
        for l in range(k, top + 1):
            d = subspace_bracket(L, ck, central_series_term(series, l)).dim
            if d == 0:
                break
            dims[(k, l)] = d
            dims[(l, k)] = d
    object.__setattr__(L, "_bracket_dims", dict(dims))
    return dims


def hilbert_polynomial(L: StructureConstants) -> BiPoly:
    return BiPoly(bracket_dimensions(L))


def hp0(n: int) -> BiPoly:
    if n < 2:
        raise ValueError("n >= 2 required")
    terms = [(1, 1, n - 2)]
    for k in range(2, n - 1):
        terms.append((k, 1, n - k - 1))
        terms.append((1, k, n - k - 1))
    return BiPoly.from_terms(terms)


def hp2(L: StructureConstants) -> BiPoly:
    if not is_filiform(L):
        raise NotFiliformError("HP2 is only defined relative to the filiform baseline")
    return hilbert_polynomial(L) - hp0(L.dim)


def theta_vector(L: StructureConstants) -> tuple[int, ...]:
    """theta_k = min{l : [C^k, C^l] = 0} for k = 1..n-1."""
    series = lower_central_series(L, strict=True)
    out = []
    for k in range(1, L.dim):
        ck = central_series_term(series, k)
        l = 1
        while subspace_bracket(L, ck, central_series_term(series, l)).dim:
            l += 1
        out.append(l)
    return tuple(out)


def support_Estar(L: StructureConstants) -> frozenset:
    return hilbert_polynomial(L).support


def theta_from_support(support: Iterable[tuple[int, int]], n: int) -> tuple[int, ...]:
    supp = set(support)
    out = []
    for k in range(1, n):
        l = 1
        while (k, l) in supp:
            l += 1
        out.append(l)
    return tuple(out)


def adapted_central_series(n: int, k: int) -> Subspace:
    """span{e_2, ..., e_{n-k+1}}: C^k of any filiform law in an adapted basis (2 <= k <= n-1)."""
    return coordinate_span(n, range(2, n - k + 2))
