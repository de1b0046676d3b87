"""Acceptance criteria 1-10.

Every criterion records a verdict in RESULTS; conftest.py prints one
PASS/FAIL line per criterion at the end of the run.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from filiform.exact import is_subspace
from filiform.families import (
    classify_n2n2n,
    closed_form_sweep,
    count_hp_classes,
    forced_alpha_count,
    iso_reduce_nq,
    law_n2n2n,
    law_z1_n2_n,
    n2n2n_values,
    p_value,
    random_tail,
    verify_isomorphism,
    z1_n2_n_values,
)
from filiform.invariants import (
    BiPoly,
    adapted_central_series,
    hilbert_polynomial,
    hp0,
    invariants_adapted,
    is_model,
    model_algebra,
    support_Estar,
    theta_from_support,
    theta_vector,
)
from filiform.laws import ParamSpec, ParamValues, build_law, normalize, rescale
from filiform.lie import is_lie, lower_central_series, subspace_bracket
from filiform.sporadic import (
    CASE_IDS,
    FAIL,
    PASS,
    get_case,
    perturbed_sample,
    reproduce,
    stratum_sample,
)

F = Fraction
RESULTS: dict[int, list[tuple[bool, str]]] = {}

# algebras generated while checking criteria 1-6, reused by criterion 7
GENERATED: list = []


def record(criterion: int, ok: bool, detail: str) -> None:
    RESULTS.setdefault(criterion, []).append((ok, detail))
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")


def nonzero(rng, lo=-5, hi=5, den=3):
    while True:
        v = F(rng.randint(lo, hi), rng.randint(1, den))
        if v:
            return v


SQUARE = BiPoly({(2, 2): 1, (2, 3): 1, (3, 2): 1})


# ---------------------------------------------------------------------------


def test_criterion_1_model_hp():
    bad = []
    for n in range(2, 13):
        L = model_algebra(n)
        GENERATED.append(L)
        if hilbert_polynomial(L) != hp0(n):
            bad.append(n)
    record(1, not bad, f"HP(model n) = HP0(n) for n = 2..12; mismatches at {bad}")
    assert not bad


@pytest.mark.xfail(
    strict=True,
    reason="for the model algebra C^2 is abelian, so theta_k = 2 for 2 <= k <= n-2; "
    "(n-1, ..., 1) is unattainable for n >= 5 (see notes ledger)",
)
def test_criterion_1_model_theta():
    bad = [n for n in range(2, 13) if theta_vector(model_algebra(n)) != tuple(range(n - 1, 0, -1))]
    record(1, not bad, f"theta(model n) = (n-1, ..., 1) for n = 2..12; mismatches at n = {bad}")
    assert not bad


# ---------------------------------------------------------------------------


def test_criterion_2_n2n2n_family():
    rng = random.Random(2)
    expected = SQUARE
    hp_bad, map_bad, classes = [], [], set()
    for n in range(6, 13):
        hps = set()
        for k in range(20):
            alpha = nonzero(rng)
            gamma = F(0) if k % 4 == 0 else F(rng.randint(-5, 5), rng.randint(1, 3))
            beta = F(rng.randint(-5, 5), rng.randint(1, 3))
            L = law_n2n2n(n, alpha, gamma, beta)
            GENERATED.append(L)
            H = hilbert_polynomial(L)
            hps.add(H)
            if H - hp0(n) != expected:
                hp_bad.append((n, alpha, gamma, beta))
            cls, canonical, iso = classify_n2n2n(n, alpha, gamma, beta)
            classes.add((n, cls))
            if not verify_isomorphism(iso.matrix, L, canonical):
                map_bad.append((n, alpha, gamma, beta))
        if len(hps) != 1:
            hp_bad.append((n, "HP differs between points"))
    per_n = {n: {c for m, c in classes if m == n} for n in range(6, 13)}
    two_classes = all(v == {1, 2} for v in per_n.values())
    # the two canonical laws are not isomorphic yet share HP
    same_hp = all(
        hilbert_polynomial(law_n2n2n(n, 1, 1, 0)) == hilbert_polynomial(law_n2n2n(n, 1, 0, 0))
        for n in range(6, 13)
    )
    ok = not hp_bad and not map_bad and two_classes and same_hp
    record(2, ok, f"140 points: hp2 mismatches {len(hp_bad)}, map failures {len(map_bad)}, "
                  f"two classes per n {two_classes}, shared HP {same_hp}")
    assert ok


# ---------------------------------------------------------------------------


def test_criterion_3_closed_form_sweep():
    report = closed_form_sweep(seed=0, n_min=7, n_max=13, points=1)
    bad_rows = [(r.z1, r.n, r.first_nonzero) for r in report.rows if not r.ok]
    bad_counts = {k: v for k, v in report.class_counts.items() if v[0] != v[1]}
    formula = all(count_hp_classes(z1, n) == n - z1 - p_value(z1, n) - 1 for z1, n in report.class_counts)
    pairs = {(z1, n) for n in range(7, 14) for z1 in range(4, n - 2)}
    covered = set(report.class_counts) == pairs
    ok = not bad_rows and not bad_counts and formula and covered
    record(3, ok, f"{len(report.rows)} laws over {len(pairs)} (z1, n) pairs; row failures {bad_rows}, "
                  f"class count mismatches {bad_counts}")
    # keep a few of the sweep's laws for the property suites
    rng = random.Random(3)
    for z1, n in sorted(pairs):
        tail = random_tail(rng, z1, n, 0)
        GENERATED.append(law_z1_n2_n(z1, n, tail, 1, [1] * (n - z1 - 1)))
    assert ok


# ---------------------------------------------------------------------------


def _collect(report, case_id):
    case = get_case(case_id)
    for si, stratum in enumerate(case.strata):
        for k in range(2):
            GENERATED.append(build_law(stratum.spec, stratum_sample(stratum, 500 + 7 * si + k)).law)
    return [p for s in report.strata for p in s.points]


def test_criterion_4_case_458():
    report = reproduce("4-5-8", seed=4, samples=8)
    points = _collect(report, "4-5-8")
    hps = {p.hp2 for p in points}
    lie = all(p.lie and p.triple == (4, 5, 8) for p in points)
    two = len(hps) == 2
    leads = sorted(h.coeff(2, 2) for h in hps)
    differ_in_square = False
    if two:
        a, b = sorted(hps, key=lambda h: h.coeff(2, 2))
        differ_in_square = b - a == SQUARE and leads == [1, 2]
    estar = len({p.estar for p in points}) == 1
    theta = all(p.theta[1] == 6 and p.theta[2] == 5 for p in points)
    # brute force settles the printed top group: t^3 s^4 and t^4 s^3 once each
    typo = all(h.coeff(3, 4) == 1 and h.coeff(4, 3) == 1 for h in hps)
    typo_reported = any("t^3*s^4" in d for s in report.strata for d in s.diffs)
    ok = lie and two and differ_in_square and estar and theta and typo and typo_reported
    record(4, ok, f"distinct HP2 {len(hps)}, leading coefficients {leads}, E* identical {estar}, "
                  f"theta2=6/theta3=5 {theta}, top group t^3s^4 + t^4s^3 (printed twice t^3s^4) {typo}")
    assert ok


def test_criterion_5_case_569():
    report = reproduce("5-6-9", seed=5, samples=8)
    points = _collect(report, "5-6-9")
    printed = get_case("5-6-9").strata[0].expected_hp2
    hps = {p.hp2 for p in points}
    both_branches = len(report.strata) == 2 and all(len(s.points) == 8 for s in report.strata)
    ok = report.status == PASS and hps == {printed} and both_branches
    record(5, ok, f"{len(points)} points on both branches, distinct HP2 {len(hps)}, matches printed {hps == {printed}}")
    assert ok


def test_criterion_6_case_5710():
    report = reproduce("5-7-10", seed=6, samples=4)
    _collect(report, "5-7-10")
    case = get_case("5-7-10")
    printed = {s.name for s in case.strata if s.expected_vectors is not None}
    results = {s.name: s for s in report.strata}
    printed_ok = all(results[name].status == PASS for name in printed)
    no_fail = all(s.status != FAIL for s in report.strata)
    u1_rows = sum(name.startswith("U_{1}:") for name in printed)
    ok = printed_ok and no_fail and report.distinct == 6 and u1_rows == 4
    record(6, ok, f"{len(printed)} printed strata matched {printed_ok}, distinct signatures {report.distinct}")
    assert ok


# ---------------------------------------------------------------------------


def _properties(L) -> list[str]:
    n = L.dim
    H = hilbert_polynomial(L)
    errs = []
    c = H.coeff
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            if c(k + 1, l) > c(k, l) or c(k, l + 1) > c(k, l):
                errs.append(f"arrow shape at {(k, l)}")
    for k in range(2, n):
        if not (c(k, k) == c(k + 1, k) == c(k, k + 1)):
            errs.append(f"triple coefficient identity at k={k}")
    if not H.is_symmetric():
        errs.append("HP not symmetric")
    if theta_from_support(support_Estar(L), n) != theta_vector(L):
        errs.append("theta and E* disagree")
    if n % 2 == 1 and n >= 5 and c(2, n - 3) != 0:
        errs.append("dim [C^2, C^{n-3}] != 0 for odd n")
    if n >= 3 and not is_model(L):
        t = invariants_adapted(L)
        if not t.satisfies_bounds():
            errs.append(f"triple {t.as_tuple()} violates bounds")
    series = lower_central_series(L)
    for k in range(2, n):
        if series[k - 1] != adapted_central_series(n, k):
            errs.append(f"C^{k} is not span(e2..e{n - k + 1})")
    for k, l in H.support:
        if k > l:
            continue
        target = series[k + l - 1] if k + l <= len(series) else None
        br = subspace_bracket(L, series[k - 1], series[l - 1])
        if target is None or not is_subspace(br, target):
            errs.append(f"[C^{k}, C^{l}] not inside C^{k + l}")
    return errs


def test_criterion_7_property_suites():
    assert GENERATED, "criteria 1-6 must run first"
    failures = {}
    for idx, L in enumerate(GENERATED):
        errs = _properties(L)
        if errs:
            failures[idx] = errs[:3]
    ok = not failures
    record(7, ok, f"{len(GENERATED)} algebras from criteria 1-6; failures {failures}")
    assert ok


# ---------------------------------------------------------------------------


def _lie_points(rng):
    """(spec, values) pairs that are Lie algebras: the two families and the sampled strata."""
    n = rng.randint(6, 11)
    kind = rng.randrange(3)
    if kind == 0:
        gamma = 0 if rng.random() < 0.3 else nonzero(rng)
        return n2n2n_values(n, nonzero(rng), gamma, F(rng.randint(-4, 4)))
    if kind == 1:
        n = max(n, 7)
        z1 = rng.randint(4, n - 3)
        size = n - z1 - 1 - p_value(z1, n)
        tail = random_tail(rng, z1, n, rng.randrange(size))
        return z1_n2_n_values(z1, n, tail, nonzero(rng), [F(rng.randint(-3, 3)) for _ in range(n - z1 - 1)])
    case = get_case(rng.choice(CASE_IDS))
    stratum = rng.choice(case.strata)
    return stratum.spec, stratum_sample(stratum, rng.randrange(1 << 20))


def test_criterion_8_homogeneity():
    rng = random.Random(8)
    bad = []
    for trial in range(50):
        spec, values = _lie_points(rng)
        lam = nonzero(rng, -6, 6, 4)
        scaled, M = rescale(spec, values, lam)
        src, dst = build_law(spec, scaled).law, build_law(spec, values).law
        if not (is_lie(dst) and verify_isomorphism(M, src, dst)):
            bad.append((trial, "map"))
        elif hilbert_polynomial(src) != hilbert_polynomial(dst):
            bad.append((trial, "HP"))
        once = normalize(values)
        if normalize(once) != once:
            bad.append((trial, "normalize"))
    ok = not bad
    record(8, ok, f"50 random (spec, values, lambda); failures {bad}")
    assert ok


# ---------------------------------------------------------------------------


def _nq_point(n, q, rng):
    spec = ParamSpec(n - q, n - 2, n)
    zeros = max(1, forced_alpha_count(n - q, n))
    alpha = [F(0)] * spec.alpha_count
    alpha[zeros] = nonzero(rng)
    for i in range(zeros + 1, spec.alpha_count):
        alpha[i] = F(rng.randint(-3, 3))
    beta = {kl: F(rng.randint(-4, 4), rng.randint(1, 3)) for kl in spec.beta_index_set}
    beta[(q - 1, 2)] = nonzero(rng)
    return spec, ParamValues(alpha, (nonzero(rng),), beta)


def test_criterion_9_isomorphism_certificates():
    rng = random.Random(9)
    checked, bad = 0, []
    for n in range(6, 13):
        for force_class in (1, 2):
            for _ in range(5):
                alpha, beta = nonzero(rng), F(rng.randint(-5, 5), rng.randint(1, 3))
                gamma = nonzero(rng) if force_class == 1 else F(0)
                L = law_n2n2n(n, alpha, gamma, beta)
                cls, canonical, iso = classify_n2n2n(n, alpha, gamma, beta)
                checked += 1
                if cls != force_class or not verify_isomorphism(iso.matrix, L, canonical):
                    bad.append(("two-class", n, cls))
    grid = [(n, 3) for n in range(7, 12)]  # (n-3, n-2, n)
    grid += [(n, q) for q in (3, 4, 5) for n in range(8, 12) if q <= n - 4]
    for n, q in grid:
        for _ in range(5):
            spec, values = _nq_point(n, q, rng)
            src = build_law(spec, values).law
            iso, reduced = iso_reduce_nq(n, q, values)
            dst = build_law(spec, reduced).law
            checked += 1
            if not (is_lie(src) and is_lie(dst) and verify_isomorphism(iso.matrix, src, dst)):
                bad.append(("n-q", n, q))
    ok = not bad
    record(9, ok, f"{checked} maps checked (two-class n=6..12, (n-3,n-2,n), (n-q,n-2,n) q=3..5); failures {bad}")
    assert ok


# ---------------------------------------------------------------------------


def test_criterion_10_constraint_soundness():
    summary, ok = [], True
    for case_id in CASE_IDS:
        case = get_case(case_id)
        strata = case.strata
        on = [stratum_sample(strata[i % len(strata)], 1000 + i) for i in range(32)]
        off = [perturbed_sample(case, strata[i % len(strata)], 2000 + i) for i in range(32)]
        spec = ParamSpec(*case.triple)
        on_lie = sum(is_lie(build_law(spec, v).law) for v in on)
        off_lie = sum(is_lie(build_law(spec, v).law) for v in off)
        on_variety = all(case.on_variety(v.assignment()) for v in on)
        off_variety = not any(case.on_variety(v.assignment()) for v in off)
        summary.append(f"{case_id}: {on_lie}/32 on-variety Lie, {off_lie}/32 perturbed Lie")
        ok = ok and on_lie == 32 and off_lie == 0 and on_variety and off_variety
    record(10, ok, "; ".join(summary))
    assert ok
