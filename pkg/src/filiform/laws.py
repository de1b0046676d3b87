"""General laws of non-model filiform algebras with a prescribed triple.

For a triple ``(z1, z2, n)`` the law in an adapted basis is determined by
parameters ``alpha_1..alpha_{z2-z1+1}``, ``gamma_1..gamma_{n-z2-1}`` and
``beta_{k,l}`` (``2 <= l <= n-z2``, ``1 <= k < z2-z1+l``):

    [e_1, e_h]               = e_{h-1}                                (3 <= h <= n)
    [e_{z1+i}, e_{z2+1}]     = a1 e_{i+2} + a2 e_{i+1} + ... + a_{i+1} e_2
    [e_{z1}, e_{z2+j}]       = a1 e_{j+1} + g1 e_j + ... + g_{j-1} e_2
    [e_{z1+k}, e_{z2+l}]     = sum_{h=2}^{k+l} P_h([e_{z1+k-1}, e_{z2+l}]
                                 + [e_{z1+k}, e_{z2+l-1}]) e_{h+1} + b_{kl} e_2

with every other bracket of basis vectors ``i < j`` equal to zero.
Parameters may be rationals or :class:`MPoly` symbols; one code path
serves both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import MPoly, format_rational, q, scalar_is_zero, substitute
from .lie import StructureConstants, jacobi_defect


@dataclass(frozen=True)
class ParamSpec:
    z1: int
    z2: int
    n: int

    def __post_init__(self):
        if not (4 <= self.z1 <= self.z2 <= self.n - 1):
            raise ValueError(f"need 4 <= z1 <= z2 <= n-1, got {(self.z1, self.z2, self.n)}")

    @property
    def alpha_count(self) -> int:
        return self.z2 - self.z1 + 1

    @property
    def gamma_count(self) -> int:
        return self.n - self.z2 - 1

    @property
    def beta_index_set(self) -> tuple[tuple[int, int], ...]:
        idx = [
            (k, l)
            for l in range(2, self.n - self.z2 + 1)
            for k in range(1, self.z2 - self.z1 + l)
        ]
        return tuple(sorted(idx))

    @property
    def variables(self) -> tuple[str, ...]:
        return (
            tuple(f"a{i}" for i in range(1, self.alpha_count + 1))
            + tuple(f"g{j}" for j in range(1, self.gamma_count + 1))
            + tuple(f"b_{k}_{l}" for k, l in self.beta_index_set)
        )

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.z1, self.z2, self.n)


def param_spec(z1: int, z2: int, n: int) -> ParamSpec:
    return ParamSpec(z1, z2, n)


@dataclass(frozen=True)
class ParamValues:
    alpha: tuple
    gamma: tuple = ()
    beta: Mapping[tuple[int, int], object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(_coerce(x) for x in self.alpha))
        object.__setattr__(self, "gamma", tuple(_coerce(x) for x in self.gamma))
        object.__setattr__(self, "beta", {tuple(k): _coerce(v) for k, v in dict(self.beta).items()})

    @classmethod
    def symbolic(cls, spec: ParamSpec) -> "ParamValues":
        names = spec.variables
        sym = lambda name: MPoly.var(name, names)  # noqa: E731
        return cls(
            tuple(sym(f"a{i}") for i in range(1, spec.alpha_count + 1)),
            tuple(sym(f"g{j}") for j in range(1, spec.gamma_count + 1)),
            {(k, l): sym(f"b_{k}_{l}") for k, l in spec.beta_index_set},
        )

    @classmethod
    def from_assignment(cls, spec: ParamSpec, assignment: Mapping[str, object], default=0) -> "ParamValues":
        """Numeric values from ``{"a1": .., "g1": .., "b_1_2": ..}``; missing names take ``default``."""
        unknown = set(assignment) - set(spec.variables)
        if unknown:
            raise KeyError(f"unknown parameters {sorted(unknown)} for triple {spec.triple}")
        get = lambda name: assignment.get(name, default)  # noqa: E731
        return cls(
            tuple(get(f"a{i}") for i in range(1, spec.alpha_count + 1)),
            tuple(get(f"g{j}") for j in range(1, spec.gamma_count + 1)),
            {(k, l): get(f"b_{k}_{l}") for k, l in spec.beta_index_set},
        )

    def assignment(self) -> dict[str, object]:
        out = {f"a{i}": v for i, v in enumerate(self.alpha, start=1)}
        out.update({f"g{j}": v for j, v in enumerate(self.gamma, start=1)})
        out.update({f"b_{k}_{l}": v for (k, l), v in self.beta.items()})
        return out

    def scaled(self, lam) -> "ParamValues":
        return ParamValues(
            tuple(lam * a for a in self.alpha),
            tuple(lam * g for g in self.gamma),
            {k: lam * v for k, v in self.beta.items()},
        )

    def is_numeric(self) -> bool:
        return not any(isinstance(v, MPoly) for v in self.assignment().values())

    def check_shape(self, spec: ParamSpec) -> None:
        if len(self.alpha) != spec.alpha_count:
            raise ValueError(f"expected {spec.alpha_count} alpha values, got {len(self.alpha)}")
        if len(self.gamma) != spec.gamma_count:
            raise ValueError(f"expected {spec.gamma_count} gamma values, got {len(self.gamma)}")
        if set(self.beta) != set(spec.beta_index_set):
            raise ValueError(
                f"beta indices {sorted(self.beta)} do not match {list(spec.beta_index_set)}"
            )


def _coerce(x):
    return x if isinstance(x, MPoly) else q(x)


@dataclass(frozen=True)
class ParamLaw:
    spec: ParamSpec
    values: ParamValues
    law: StructureConstants

    @property
    def table(self):
        return self.law.table


def build_law(spec: ParamSpec, values: ParamValues) -> ParamLaw:
    """Evaluate the general law for ``values``."""
    values.check_shape(spec)
    z1, z2, n = spec.triple
    zero = Fraction(0)
    table: dict[tuple[int, int], list] = {}

    def get(a: int, b: int) -> list:
        if a == b:
            return [zero] * n
        if a > b:
            return [-c for c in get(b, a)]
        if (a, b) not in table:
            raise AssertionError(f"[e{a},e{b}] read before it was defined")
        return table[(a, b)]

    for h in range(3, n + 1):
        vec = [zero] * n
        vec[h - 2] = Fraction(1)
        table[(1, h)] = vec

    alpha, gamma, beta = values.alpha, values.gamma, values.beta
    for i in range(0, z2 - z1 + 1):
        vec = [zero] * n
        for m in range(i + 1):  # alpha_{m+1} e_{i+2-m}
            vec[i + 1 - m] = vec[i + 1 - m] + alpha[m]
        table[(z1 + i, z2 + 1)] = vec
    for j in range(2, n - z2 + 1):
        vec = [zero] * n
        vec[j] = vec[j] + alpha[0]  # e_{j+1}
        for m in range(1, j):  # gamma_m e_{j+1-m}
            vec[j - m] = vec[j - m] + gamma[m - 1]
        table[(z1, z2 + j)] = vec

    for l in range(2, n - z2 + 1):
        for k in range(1, z2 - z1 + l):
            a, b = z1 + k, z2 + l
            prev = [x + y for x, y in zip(get(a - 1, b), get(a, b - 1))]
            top = k + l
            for h in range(top + 1, n + 1):
                if not scalar_is_zero(prev[h - 1]):
                    raise AssertionError(
                        f"coordinate e{h} of the recursion input for [e{a},e{b}] is nonzero"
                    )
            vec = [zero] * n
            for h in range(2, top + 1):
                c = prev[h - 1]
                if scalar_is_zero(c):
                    continue
                if h + 1 > n:
                    # no e_{n+1}; the Jacobi identity with e_1 forces c = 0 instead
                    continue
                vec[h] = c
            vec[1] = vec[1] + beta[(k, l)]
            table[(a, b)] = vec

    return ParamLaw(spec, values, StructureConstants(n, {k: tuple(v) for k, v in table.items()}))


def evaluate(law: ParamLaw, assignment: Mapping[str, object]) -> StructureConstants:
    """Substitute numeric parameter values into a symbolic law."""
    return law.law.map_coefficients(lambda c: substitute(c, assignment))


@dataclass(frozen=True)
class ConstraintSet:
    """Polynomials that must vanish, plus tuples that must not all vanish."""

    variables: tuple[str, ...]
    closed: tuple[MPoly, ...]
    open: tuple[tuple[MPoly, ...], ...]

    def holds_at(self, assignment: Mapping[str, object]) -> bool:
        return self.closed_hold(assignment) and self.open_hold(assignment)

    def closed_hold(self, assignment: Mapping[str, object]) -> bool:
        return all(p.substitute(assignment) == 0 for p in self.closed)

    def open_hold(self, assignment: Mapping[str, object]) -> bool:
        return all(any(p.substitute(assignment) != 0 for p in w) for w in self.open)

    def to_text(self) -> str:
        lines = [f"# variables: {' '.join(self.variables)}", "# closed (= 0):"]
        lines += [p.to_infix() for p in self.closed]
        lines.append("# open (not all zero):")
        lines += ["(" + ", ".join(p.to_infix() for p in w) + ")" for w in self.open]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "variables": list(self.variables),
            "closed": [p.to_infix() for p in self.closed],
            "open": [[p.to_infix() for p in w] for w in self.open],
        }
        return json.dumps(doc, indent=2, sort_keys=True)


class NumericLawError(ValueError):
    """Constraint generation needs a symbolic law."""


class EmptyVarietyError(ValueError):
    """Some Jacobi condition is a nonzero constant, so no parameter value gives a Lie algebra."""


def _as_poly(c, variables) -> MPoly:
    return c.on(variables) if isinstance(c, MPoly) else MPoly.const(c, variables)


def _normalize_poly(p: MPoly) -> MPoly:
    """Scale so the leading coefficient is 1 (for deduplication)."""
    lead = p.terms[max(p.terms, key=lambda e: (sum(e), e))]
    return p * (1 / lead)


def jacobi_constraints(law: ParamLaw) -> ConstraintSet:
    if law.values.is_numeric():
        raise NumericLawError("law has numeric parameters; use is_lie for a pass/fail check")
    spec = law.spec
    variables = spec.variables
    L = law.law
    n = spec.n
    closed: list[MPoly] = []
    seen = set()
    for i in range(1, n - 1):
        for j in range(i + 1, n):
            for k in range(j + 1, n + 1):
                for c in jacobi_defect(L, i, j, k):
                    if scalar_is_zero(c):
                        continue
                    p = _as_poly(c, variables)
                    key = _normalize_poly(p)
                    if key.is_constant():
                        raise EmptyVarietyError(f"Jacobi identity ({i},{j},{k}) fails identically")
                    if key not in seen:
                        seen.add(key)
                        closed.append(p)
    z1, z2 = spec.z1, spec.z2
    wit1 = tuple(_as_poly(c, variables) for c in L.basis_bracket(z1, n) if not scalar_is_zero(c))
    wit2 = tuple(_as_poly(c, variables) for c in L.basis_bracket(z2, z2 + 1) if not scalar_is_zero(c))
    return ConstraintSet(variables, tuple(closed), (wit1, wit2))


def rescale(spec: ParamSpec, values: ParamValues, lam) -> tuple[ParamValues, tuple]:
    """Scale all parameters by ``lam`` and return the matching change of basis.

    The matrix ``diag(1, lam, ..., lam)`` maps ``build_law(spec, lam*values)``
    isomorphically onto ``build_law(spec, values)``.
    """
    lam = q(lam)
    if lam == 0:
        raise ValueError("rescaling factor must be nonzero")
    values.check_shape(spec)
    n = spec.n
    M = tuple(
        tuple((Fraction(1) if r == 0 else lam) if r == c else Fraction(0) for c in range(n))
        for r in range(n)
    )
    return values.scaled(lam), M


def normalize(values: ParamValues) -> ParamValues:
    """Rescale so that alpha_1 = 1, or (when alpha_1 = 0) the first nonzero gamma is 1."""
    if values.alpha and values.alpha[0] != 0:
        return values.scaled(1 / values.alpha[0])
    lead = next((g for g in values.gamma if g != 0), None)
    if lead is None:
        raise ValueError("no normalizing factor: alpha_1 and every gamma vanish")
    return values.scaled(1 / lead)


def format_values(values: ParamValues) -> dict[str, str]:
    return {k: (v.to_infix() if isinstance(v, MPoly) else format_rational(v)) for k, v in values.assignment().items()}
