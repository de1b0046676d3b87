"""Families with z2 = n - 2: closed forms, classification and explicit maps.

Two families are covered.

* ``(n-2, n-2, n)``: three parameters alpha, gamma, beta with alpha != 0 and
  no closed restrictions.  Up to isomorphism there are two algebras,
  told apart by whether gamma / alpha vanishes.
* ``(z1, n-2, n)`` with ``z1 < n-2``: alpha_1..alpha_p vanish,
  ``p = floor((n - z1 - 1) / 2)``, and the Hilbert polynomial depends only
  on the position of the first nonzero entry of the remaining alpha tail.

Every explicit change of basis here is a matrix whose columns are the images
of e_1..e_n, and :func:`verify_isomorphism` checks it bracket by bracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import DimensionError, identity_matrix, inverse, mat_mul, mat_vec, q
from .invariants import BiPoly, hp0, star
from .laws import ParamSpec, ParamValues, build_law, normalize, rescale
from .lie import StructureConstants, bracket


@dataclass(frozen=True)
class IsoMap:
    """Change of basis; column h holds the image of e_h."""

    matrix: tuple
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def inverse(self) -> "IsoMap":
        inv = inverse(self.matrix)
        if inv is None:
            raise ValueError("map is not invertible")
        return IsoMap(inv, f"inverse of {self.label}" if self.label else "")

    def then(self, other: "IsoMap") -> "IsoMap":
        """Apply ``self`` first, then ``other``."""
        return IsoMap(mat_mul(other.matrix, self.matrix), " then ".join(x for x in (self.label, other.label) if x))


def _matrix(M) -> tuple:
    return M.matrix if isinstance(M, IsoMap) else M


def verify_isomorphism(M, source: StructureConstants, target: StructureConstants) -> bool:
    """True iff M is invertible and M [u, v]_source = [M u, M v]_target on basis pairs."""
    mat = _matrix(M)
    n = source.dim
    if target.dim != n or len(mat) != n or any(len(row) != n for row in mat):
        raise DimensionError("map and algebras must share one dimension")
    if inverse(mat) is None:
        return False
    cols = [tuple(mat[r][c] for r in range(n)) for c in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = mat_vec(mat, source.basis_bracket(i + 1, j + 1))
            if lhs != bracket(target, cols[i], cols[j]):
                return False
    return True


def _columns_to_matrix(n: int, columns: Mapping[int, Mapping[int, object]]) -> tuple:
    """``columns[h] = {r: c}`` means the image of e_h has coefficient c on e_r."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    for h, col in columns.items():
        for r, c in col.items():
            rows[r - 1][h - 1] += q(c)
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# (n-2, n-2, n)


def _check_n2n2n(n: int, alpha) -> None:
    if n < 6:
        raise ValueError("the (n-2, n-2, n) family needs n >= 6")
    if q(alpha) == 0:
        raise ValueError("alpha must be nonzero")


def n2n2n_values(n: int, alpha, gamma, beta) -> tuple[ParamSpec, ParamValues]:
    spec = ParamSpec(n - 2, n - 2, n)
    return spec, ParamValues((q(alpha),), (q(gamma),), {(1, 2): q(beta)})


def law_n2n2n(n: int, alpha, gamma, beta) -> StructureConstants:
    """[e_{n-2},e_{n-1}] = a e_2, [e_{n-2},e_n] = a e_3 + g e_2, [e_{n-1},e_n] = a e_4 + g e_3 + b e_2."""
    _check_n2n2n(n, alpha)
    spec, values = n2n2n_values(n, alpha, gamma, beta)
    return build_law(spec, values).law


def _class_one_map(n: int, gamma: Fraction, beta: Fraction) -> IsoMap:
    """Columns express the basis of g_{1,1,0} inside g_{1,gamma,beta}."""
    cols = {1: {1: gamma}, 2: {2: gamma ** (2 * n - 7)}, 3: {3: gamma ** (2 * n - 8)}}
    for k in range(4, n + 1):
        g = gamma ** (2 * n - k - 5)
        col = {k: g}
        col[k - 2] = col.get(k - 2, 0) + g * beta / 2
        cols[k] = col
    return IsoMap(_columns_to_matrix(n, cols), "class-1 normal form")


def _class_two_map(n: int, beta: Fraction) -> IsoMap:
    cols = {1: {1: 1}, 2: {2: 1}, 3: {3: 1}}
    for k in range(4, n + 1):
        cols[k] = {k: 1, k - 2: beta / 2}
    return IsoMap(_columns_to_matrix(n, cols), "class-2 normal form")


def classify_n2n2n(n: int, alpha, gamma, beta) -> tuple[int, StructureConstants, IsoMap]:
    """Class id, canonical representative and a map from the given law onto it.

    Class 1 is g_{1,1,0} (gamma/alpha != 0), class 2 is g_{1,0,0}.
    """
    _check_n2n2n(n, alpha)
    spec, values = n2n2n_values(n, alpha, gamma, beta)
    normed = normalize(values)
    lam = 1 / values.alpha[0]
    # diag(1, lam, ...) maps the normalized law onto the original one
    _, scale = rescale(spec, values, lam)
    to_normalized = IsoMap(scale, "rescale").inverse()
    g1, b1 = normed.gamma[0], normed.beta[(1, 2)]
    if g1 != 0:
        class_id, canonical = 1, law_n2n2n(n, 1, 1, 0)
        normal = _class_one_map(n, g1, b1)
    else:
        class_id, canonical = 2, law_n2n2n(n, 1, 0, 0)
        normal = _class_two_map(n, b1)
    iso = to_normalized.then(normal.inverse())
    return class_id, canonical, IsoMap(iso.matrix, f"class {class_id}")


# ---------------------------------------------------------------------------
# (z1, n-2, n), z1 < n-2


def p_value(z1: int, n: int) -> int:
    return (n - z1 - 1) // 2


def forced_alpha_count(z1: int, n: int) -> int:
    """Number of leading alphas the Jacobi identity really forces to vanish.

    Equals :func:`p_value` for z1 = 4 but can be smaller for z1 > 4; the
    family constructors still set alpha_1..alpha_p to zero.
    """
    return max(0, (n - 2 * z1 + 3) // 2)


def _check_z1_n2_n(z1: int, n: int) -> None:
    if n < 7 or not (4 <= z1 <= n - 3):
        raise ValueError(f"need n >= 7 and 4 <= z1 <= n-3, got z1={z1}, n={n}")


def _first_nonzero(alpha_tail: Sequence) -> int:
    for r, a in enumerate(alpha_tail):
        if q(a) != 0:
            return r
    raise ValueError("alpha tail must not be the zero vector")


def _check_tail(z1: int, n: int, alpha_tail: Sequence) -> int:
    _check_z1_n2_n(z1, n)
    expected = n - z1 - 1 - p_value(z1, n)
    if len(alpha_tail) != expected:
        raise ValueError(f"alpha tail for ({z1},{n - 2},{n}) has {expected} entries, got {len(alpha_tail)}")
    return _first_nonzero(alpha_tail)


def z1_n2_n_values(z1: int, n: int, alpha_tail: Sequence, gamma1, beta) -> tuple[ParamSpec, ParamValues]:
    """Parameters of the family; ``beta`` is a sequence b_{1,2}..b_{n-z1-1,2} or a dict keyed by k."""
    _check_tail(z1, n, alpha_tail)
    if q(gamma1) == 0:
        raise ValueError("gamma_1 must be nonzero")
    spec = ParamSpec(z1, n - 2, n)
    p = p_value(z1, n)
    alpha = (Fraction(0),) * p + tuple(q(a) for a in alpha_tail)
    count = n - z1 - 1
    if isinstance(beta, Mapping):
        bvals = {(k, 2): q(beta.get(k, 0)) for k in range(1, count + 1)}
    else:
        if len(beta) != count:
            raise ValueError(f"expected {count} beta values, got {len(beta)}")
        bvals = {(k, 2): q(b) for k, b in enumerate(beta, start=1)}
    return spec, ParamValues(alpha, (q(gamma1),), bvals)


def law_z1_n2_n(z1: int, n: int, alpha_tail: Sequence, gamma1, beta) -> StructureConstants:
    spec, values = z1_n2_n_values(z1, n, alpha_tail, gamma1, beta)
    return build_law(spec, values).law


def c2_bracket_dims(z1: int, n: int, alpha_tail: Sequence) -> dict[int, int]:
    """dim [C^2, C^l] for l >= 2 from the first nonzero position of the tail."""
    m = _check_tail(z1, n, alpha_tail)
    top = star(z1, n) - p_value(z1, n)
    dims = {}
    for l in range(2, top + 1):
        d = top - max(l, 3) + 1 - m
        if d > 0:
            dims[l] = d
    return dims


def hp_closed_form(z1: int, n: int, alpha_tail: Sequence) -> BiPoly:
    dims = c2_bracket_dims(z1, n, alpha_tail)
    terms = []
    for l, d in dims.items():
        if l == 2:
            terms.append((2, 2, d))
        else:
            terms += [(2, l, d), (l, 2, d)]
    return hp0(n) + BiPoly.from_terms(terms)


def theta2_closed(z1: int, n: int, alpha_tail: Sequence) -> int:
    m = _check_tail(z1, n, alpha_tail)
    from_r0 = star(z1, n) - p_value(z1, n) - m + 1
    from_dim = c2_bracket_dims(z1, n, alpha_tail)[2] + 3
    if from_r0 != from_dim:
        raise AssertionError(f"theta_2 formulas disagree: {from_r0} vs {from_dim}")
    return from_r0


def count_hp_classes(z1: int, n: int) -> int:
    if z1 >= n - 2:
        raise ValueError("class count applies to z1 < n-2")
    return n - z1 - p_value(z1, n) - 1


# ---------------------------------------------------------------------------
# (n-q, n-2, n): removing beta_{q-1,2}


def _shift_map(n: int, shift: int, c: Fraction, first: int) -> IsoMap:
    cols = {h: {h: 1} for h in range(1, n + 1)}
    for j in range(first, n + 1):
        cols[j] = {j: 1, j - shift: c}
    return IsoMap(_columns_to_matrix(n, cols), f"e_j + c e_(j-{shift})")


def iso_reduce_nq(n: int, q_: int, values: ParamValues) -> tuple[IsoMap, ParamValues]:
    """Map onto the law with beta_{q-1,2} = 0 and every other parameter kept.

    The returned matrix sends the given law onto the reduced one.  With
    alpha_2 != 0 the map is e_j -> e_j + beta_{q-1,2} / ((q-1) alpha_2) e_{j-q+1}
    for j > q.  When alpha_2 = 0 the same construction is used with the first
    nonzero alpha_m and shift s = q + 1 - m.
    """
    if not (3 <= q_ <= n - 4) or n < 7:
        raise ValueError(f"need 3 <= q <= n-4 and n >= 7, got q={q_}, n={n}")
    spec = ParamSpec(n - q_, n - 2, n)
    values.check_shape(spec)
    b = values.beta[(q_ - 1, 2)]
    reduced_beta = dict(values.beta)
    reduced_beta[(q_ - 1, 2)] = Fraction(0)
    reduced = ParamValues(values.alpha, values.gamma, reduced_beta)
    if b == 0:
        return IsoMap(identity_matrix(n), "identity"), reduced
    m = next((i for i, a in enumerate(values.alpha, start=1) if a != 0), None)
    if m is None:
        raise ValueError("every alpha vanishes; the law is not in the family")
    if m == 1:
        raise ValueError("alpha_1 must vanish in the (n-q, n-2, n) family")
    shift = q_ + 1 - m
    c = b / (shift * values.alpha[m - 1])
    phi = _shift_map(n, shift, c, shift + 2)
    # phi sends the reduced law onto the given one; invert for given -> reduced
    return phi.inverse(), reduced


# ---------------------------------------------------------------------------
# closed form against brute force


@dataclass
class SweepRow:
    z1: int
    n: int
    first_nonzero: int
    hp_match: bool
    theta2_match: bool
    lie: bool
    triple_ok: bool

    @property
    def ok(self) -> bool:
        return self.hp_match and self.theta2_match and self.lie and self.triple_ok


@dataclass
class SweepReport:
    rows: list[SweepRow]
    class_counts: dict[tuple[int, int], tuple[int, int]]  # (z1, n) -> (distinct HP, formula)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and all(a == b for a, b in self.class_counts.values())

    @property
    def status(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def to_json_obj(self) -> dict:
        return {
            "case": "z2eq",
            "status": self.status,
            "rows": [vars(r) | {"ok": r.ok} for r in self.rows],
            "class_counts": [
                {"z1": z1, "n": n, "distinct": a, "formula": b}
                for (z1, n), (a, b) in sorted(self.class_counts.items())
            ],
        }

    def to_table(self) -> str:
        lines = [f"case z2eq: {self.status}"]
        for (z1, n), (a, b) in sorted(self.class_counts.items()):
            rows = [r for r in self.rows if (r.z1, r.n) == (z1, n)]
            good = sum(r.ok for r in rows)
            lines.append(f"  ({z1},{n - 2},{n})  points {good}/{len(rows)} ok  classes {a} (formula {b})")
        return "\n".join(lines)


def random_tail(rng, z1: int, n: int, first: int) -> list[Fraction]:
    """An alpha tail whose first nonzero entry sits at ``first``; later entries random."""
    size = n - z1 - 1 - p_value(z1, n)

    def nonzero():
        while True:
            v = Fraction(rng.randint(-7, 7), rng.randint(1, 4))
            if v:
                return v

    return [Fraction(0)] * first + [nonzero()] + [
        nonzero() if rng.random() < 0.7 else Fraction(0) for _ in range(size - first - 1)
    ]


def closed_form_sweep(seed: int = 0, n_min: int = 7, n_max: int = 13, points: int = 1) -> SweepReport:
    """Compare hp_closed_form and theta2_closed with brute force on every (z1, n)."""
    import random

    from .invariants import hilbert_polynomial, invariants_adapted, theta_vector
    from .lie import is_lie

    rng = random.Random(seed)
    rows, counts = [], {}
    for n in range(n_min, n_max + 1):
        for z1 in range(4, n - 2):
            seen = set()
            size = n - z1 - 1 - p_value(z1, n)
            for first in range(size):
                for _ in range(points):
                    tail = random_tail(rng, z1, n, first)
                    gamma1 = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
                    beta = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n - z1 - 1)]
                    L = law_z1_n2_n(z1, n, tail, gamma1, beta)
                    lie = is_lie(L)
                    H = hilbert_polynomial(L)
                    seen.add(H)
                    triple_ok = lie and invariants_adapted(L).as_tuple() == (z1, n - 2, n)
                    rows.append(
                        SweepRow(
                            z1, n, first,
                            hp_match=H == hp_closed_form(z1, n, tail),
                            theta2_match=theta_vector(L)[1] == theta2_closed(z1, n, tail),
                            lie=lie,
                            triple_ok=triple_ok,
                        )
                    )
            counts[(z1, n)] = (len(seen), count_hp_classes(z1, n))
    return SweepReport(rows, counts)
