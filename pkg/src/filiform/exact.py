"""Exact rational linear algebra and sparse multivariate polynomials.

Scalars are :class:`fractions.Fraction`.  Vectors are tuples of scalars, with
position ``h - 1`` holding the coordinate on ``e_h``.  Matrices are tuples of
row tuples.  Everything here is immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
QVector = tuple
QMatrix = tuple


class DimensionError(ValueError):
    """Raised when vectors or subspaces live in different ambient spaces."""


def q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            den_i = int(den)
            if den_i == 0:
                raise ZeroDivisionError(f"zero denominator in {value!r}")
            return Fraction(int(num), den_i)
        return Fraction(int(text))
    raise TypeError(f"cannot convert {value!r} to a rational")


def format_rational(x: Fraction) -> str:
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def unit_vector(n: int, h: int) -> tuple:
    """The basis vector ``e_h`` (1-based) of an ``n``-dimensional space."""
    if not 1 <= h <= n:
        raise IndexError(f"basis index {h} out of range 1..{n}")
    return tuple(Fraction(1) if k == h - 1 else Fraction(0) for k in range(n))


def vector(entries: Iterable) -> tuple:
    return tuple(q(x) for x in entries)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def add(u: Sequence, v: Sequence) -> tuple:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def identity_matrix(n: int) -> tuple:
    return tuple(unit_vector(n, h) for h in range(1, n + 1))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(tuple(col) for col in zip(*m))


def rref(m: Sequence[Sequence]) -> tuple[tuple, int]:
    """Reduced row echelon form of ``m`` and its rank.

    Zero rows are kept at the bottom so the shape of ``m`` is preserved.
    """
    rows = [list(map(q, r)) for r in m]
    if not rows:
        return (), 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise DimensionError("ragged matrix")
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        prow = [x * inv for x in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return tuple(tuple(r) for r in rows), rank


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[1]


def inverse(m: Sequence[Sequence]) -> tuple | None:
    """Inverse of a square matrix, or None when it is singular."""
    n = len(m)
    aug = [list(map(q, row)) + list(unit_vector(n, i + 1)) for i, row in enumerate(m)]
    red, _ = rref(aug)
    if any(tuple(red[i][:n]) != unit_vector(n, i + 1) for i in range(n)):
        return None
    return tuple(tuple(row[n:]) for row in red)


def kernel(m: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of the right null space ``{x : m x = 0}``."""
    if not m:
        return [unit_vector(ncols, h) for h in range(1, ncols + 1)]
    red, r = rref(m)
    pivots = []
    for row in red[:r]:
        pivots.append(next(c for c, x in enumerate(row) if x != 0))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red[:r], pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its canonical RREF basis.

    Two subspaces are equal exactly when their dataclass fields are equal.
    """

    ambient_dim: int
    basis: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        return is_subspace(self, other)

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(format_rational(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(n={self.ambient_dim}, [{rows}])"


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    # sparse incremental elimination: most inputs are zero, short or dependent
    pivots: dict[int, dict[int, Fraction]] = {}
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if len(pivots) == ambient_dim:
            continue
        w = {i: q(x) for i, x in enumerate(v) if x != 0}
        # pivot rows vanish on each other's pivot columns, so order is irrelevant
        for col in [c for c in w if c in pivots]:
            c = w[col]
            for i, b in pivots[col].items():
                val = w.get(i, 0) - c * b
                if val:
                    w[i] = val
                else:
                    w.pop(i, None)
        if not w:
            continue
        lead = min(w)
        inv = 1 / w[lead]
        w = {i: x * inv for i, x in w.items()}
        for row in pivots.values():
            c = row.get(lead)
            if c:
                for i, b in w.items():
                    val = row.get(i, 0) - c * b
                    if val:
                        row[i] = val
                    else:
                        row.pop(i, None)
        pivots[lead] = w
    zero = Fraction(0)
    basis = tuple(
        tuple(pivots[c].get(i, zero) for i in range(ambient_dim)) for c in sorted(pivots)
    )
    return Subspace(ambient_dim, basis)


def coordinate_span(ambient_dim: int, indices: Iterable[int]) -> Subspace:
    """span{e_h : h in indices}, built directly in canonical form."""
    return Subspace(ambient_dim, tuple(unit_vector(ambient_dim, h) for h in sorted(set(indices))))


def _check(s: Subspace, t: Subspace) -> None:
    if s.ambient_dim != t.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {s.ambient_dim} != {t.ambient_dim}")


def contains(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    return span(s.basis + (tuple(v),), s.ambient_dim).dim == s.dim


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    _check(s, t)
    return span(s.basis + t.basis, s.ambient_dim)


def is_subspace(s: Subspace, t: Subspace) -> bool:
    _check(s, t)
    return subspace_sum(s, t).dim == t.dim


def equal(s: Subspace, t: Subspace) -> bool:
    _check(s, t)
    return s.basis == t.basis


def dim(s: Subspace) -> int:
    return s.dim


# ---------------------------------------------------------------------------
# sparse multivariate polynomials

Scalar = Union[Fraction, int, "MPoly"]


class MPoly:
    """Sparse polynomial with rational coefficients in named variables.

    Terms are keyed by exponent tuples aligned with ``variables``.  Mixed
    arithmetic with ints and Fractions works, and two polynomials over
    different variable lists are merged onto the sorted union.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise DimensionError("exponent vector length does not match variables")
            c = q(c)
            if c != 0:
                clean[exps] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "MPoly":
        variables = tuple(variables) if variables is not None else (name,)
        exps = tuple(1 if v == name else 0 for v in variables)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} not among {variables}")
        return cls(variables, {exps: 1})

    @classmethod
    def const(cls, c, variables: Sequence[str] = ()) -> "MPoly":
        return cls(variables, {(0,) * len(variables): c})

    # -- variable alignment -------------------------------------------------
    def on(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over ``variables`` (must include every variable used)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.variables, exps):
                if e:
                    if v not in pos:
                        raise ValueError(f"variable {v!r} missing from target ring")
                    new[pos[v]] = e
            terms[tuple(new)] = c
        return MPoly(variables, terms)

    def _align(self, other) -> tuple["MPoly", "MPoly"]:
        if not isinstance(other, MPoly):
            other = MPoly.const(q(other), self.variables)
        if other.variables == self.variables:
            return self, other
        union = tuple(sorted(set(self.variables) | set(other.variables), key=_var_key))
        return self.on(union), other.on(union)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._align(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(a.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / q(other))
        return NotImplemented

    def __pow__(self, k: int):
        result = MPoly.const(1, self.variables)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(q(other), self.variables)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            used = self.trim()
            self._hash = hash((used.variables, frozenset(used.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- queries --------------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def trim(self) -> "MPoly":
        return self.on(self.used_variables())

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def substitute(self, assignment: Mapping[str, object]):
        """Evaluate the variables named in ``assignment``.

        A total assignment returns a Fraction, a partial one an MPoly in the
        remaining variables.
        """
        values = {k: (v if isinstance(v, MPoly) else q(v)) for k, v in assignment.items()}
        rest = tuple(v for v in self.variables if v not in values)
        rest_idx = [i for i, v in enumerate(self.variables) if v not in values]
        out = MPoly.const(0, rest)
        for exps, c in self.terms.items():
            coeff: object = c
            for v, e in zip(self.variables, exps):
                if e and v in values:
                    coeff = coeff * values[v] ** e
            mono = tuple(exps[i] for i in rest_idx)
            out = out + MPoly(rest, {mono: 1}) * coeff
        if not any(isinstance(v, MPoly) for v in values.values()) and not any(
            exps[i] for exps in self.terms for i in rest_idx
        ):
            return out.constant_value() if out.terms else Fraction(0)
        return out

    def __repr__(self) -> str:
        return f"MPoly({self.to_infix()})"

    def to_infix(self) -> str:
        """Plain infix form: ``3/2*a1^2*g1 - b_1_2 + 5``."""
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), [-x for x in e])):
            c = self.terms[exps]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _var_key(name: str):
    """Sort variables as a1.., g1.., b_k_l (lexicographic in k, l)."""
    order = {"a": 0, "g": 1, "b": 2}
    head = name[0]
    nums = tuple(int(x) for x in name.lstrip("abg_").split("_") if x.isdigit())
    return (order.get(head, 3), nums, name)


def mpoly_add(p: MPoly, r: MPoly) -> MPoly:
    return p + r


def mpoly_mul(p: MPoly, r: MPoly) -> MPoly:
    return p * r


def mpoly_scale(p: MPoly, c) -> MPoly:
    return p * q(c)


def substitute(p, assignment: Mapping[str, object]):
    """Substitute into an MPoly; plain rationals pass through unchanged."""
    if isinstance(p, MPoly):
        return p.substitute(assignment)
    return q(p)


def scalar_is_zero(x) -> bool:
    # Fraction, int and MPoly all define truthiness as "nonzero"
    return not x
