"""Acceptance gate: one test and one printed pass/fail line per criterion.

Pinned thresholds: every criterion requires zero failures (all arithmetic
is exact), and criterion 1 must finish in under 60 seconds.
"""
from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from coweights.coneorder import cone_feasible, is_dominant, leq, leq_G, pr_P
from coweights.langlands import UniquenessError, fiber_contains, retract, retract_shifted, zero_set
from coweights.posettop import FinitePoset, classify_finite
from coweights.rootdata import all_subsets, build_group
from coweights.sampling import random_coweight
from coweights.strata import (
    AdmissibleSet,
    check_admissible,
    check_deep,
    check_theorem_cover,
    enumerate_candidates,
    eta_stratum,
    member,
)
from coweights.vanishing import StrangenessTable, char2_sym2_table, minimal_constants, zero_table
from conftest import RANK2_SPECS, RANK3_SPECS, SIMPLE_RANK4
from oracles import all_preorders, brute_table, grid_hits, random_cone_problem, random_preorder, solve_exact, vertex_feasible

F = Fraction
RUNTIME_LIMIT_1 = 60.0
SAMPLES = 1000
COVER_SAMPLES = 500


def _nonneg(rng, den=(1, 2, 3, 4, 6), hi=8):
    return F(rng.randint(0, hi), rng.choice(den))


def _random_subset(rng, gamma):
    return frozenset(i for i in gamma if rng.random() < 0.5)


# 1 -----------------------------------------------------------------------


def test_criterion_1_langlands_retraction(acceptance):
    start = time.perf_counter()
    failures = []
    for spec in ["A1", "A2", "A1xA1", "B2", "G2", "A3"]:
        g = build_group(spec)
        rng = random.Random(f"retract-{spec}")
        for _ in range(SAMPLES):
            lam = random_coweight(g, rng)
            try:
                res = retract(g, lam)
            except UniquenessError as exc:
                failures.append((spec, "uniqueness", str(exc)))
                continue
            mu = res.mu
            if not is_dominant(g, mu):
                failures.append((spec, "dominance", lam))
            if not leq_G(g, lam, mu):
                failures.append((spec, "above", lam))
            if retract(g, mu).mu != mu:
                failures.append((spec, "idempotence", lam))
            if not fiber_contains(g, mu, lam):
                failures.append((spec, "fiber", lam))
            # fiber formula round trip from the other side
            lam2 = mu - g.combine_coroots({j: _nonneg(rng) for j in zero_set(g, mu)})
            if retract(g, lam2).mu != mu:
                failures.append((spec, "fiber round trip", lam2))
        for _ in range(SAMPLES):
            a = random_coweight(g, rng)
            b = a + g.combine_coroots({j: _nonneg(rng) for j in g.gamma})
            if not leq_G(g, retract(g, a).mu, retract(g, b).mu):
                failures.append((spec, "order", a, b))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < RUNTIME_LIMIT_1
    acceptance(1, ok, f"6 groups x {SAMPLES} coweights + {SAMPLES} pairs, {len(failures)} failures, {elapsed:.1f}s (limit {RUNTIME_LIMIT_1:.0f}s)")
    assert ok, failures[:5]


# 2 -----------------------------------------------------------------------


def test_criterion_2_projector(acceptance):
    failures = []
    pairs = 0
    for spec in RANK3_SPECS:
        g = build_group(spec)
        rng = random.Random(f"proj-{spec}")
        for gamma_M in all_subsets(g.gamma):
            for _ in range(SAMPLES):
                a = random_coweight(g, rng)
                b = a + g.combine_coroots({j: _nonneg(rng) for j in g.gamma})
                pa, pb = pr_P(g, gamma_M, a), pr_P(g, gamma_M, b)
                pairs += 1
                if pr_P(g, gamma_M, pa) != pa:
                    failures.append((spec, gamma_M, "idempotence", a))
                s, t = F(rng.randint(-3, 3), rng.choice((1, 2))), F(rng.randint(-3, 3), rng.choice((1, 3)))
                if pr_P(g, gamma_M, a.scale(s) + b.scale(t)) != pa.scale(s) + pb.scale(t):
                    failures.append((spec, gamma_M, "linearity", a, b))
                if not leq_G(g, pa, pb):
                    failures.append((spec, gamma_M, "order", a, b))
    ok = not failures
    acceptance(2, ok, f"{len(RANK3_SPECS)} groups, every parabolic, {pairs} comparable pairs, {len(failures)} failures")
    assert ok, failures[:5]


# 3 -----------------------------------------------------------------------


def _lemma_checks(g, rng):
    """One sample of each lemma; returns the names of the lemmas that failed."""
    failed = []
    gamma_M = _random_subset(rng, g.gamma)
    off = g.gamma - gamma_M

    # pairings off the Levi do not decrease when going down along it
    lam = random_coweight(g, rng)
    lam1 = lam - g.combine_coroots({j: _nonneg(rng) for j in gamma_M})
    if not all(lam1.pairing(i) >= lam.pairing(i) for i in off):
        failed.append("off-levi pairings")

    # dominant lam, lam' dominant for the Levi and below lam: lam' is dominant
    lam = random_coweight(g, rng, dominant=True)
    ms = sorted(gamma_M)
    y = [lam.pairing(i) * F(rng.randint(0, 6), 6) for i in ms]
    rhs = [lam.pairing(i) - yi for i, yi in zip(ms, y)]
    c = solve_exact([[g.cartan[i - 1][j - 1] for j in ms] for i in ms], rhs) if ms else []
    lam1 = lam - g.combine_coroots(dict(zip(ms, c)))
    assert all(cj >= 0 for cj in c) and all(lam1.pairing(i) >= 0 for i in ms)
    if not is_dominant(g, lam1):
        failed.append("levi-dominant below dominant")

    # projection of a dominant coweight: below it along the Levi, larger off it
    lam = random_coweight(g, rng, dominant=True)
    p = pr_P(g, gamma_M, lam)
    if not leq(g, gamma_M, p, lam):
        failed.append("projection below")
    if not all(p.pairing(i) >= lam.pairing(i) for i in off):
        failed.append("projection off-levi")

    # nu = sum a_i alpha_i, a >= 0 off the Levi, pairings >= 0 on it: a >= 0
    a_off = {j: _nonneg(rng) for j in off}
    yv = [_nonneg(rng) for _ in ms]
    rhs = [yi - sum((g.cartan[i - 1][j - 1] * a for j, a in a_off.items()), F(0)) for i, yi in zip(ms, yv)]
    a_M = solve_exact([[g.cartan[i - 1][j - 1] for j in ms] for i in ms], rhs) if ms else []
    nu = g.combine_coroots({**a_off, **dict(zip(ms, a_M))})
    assert all(nu.pairing(i) == yi for i, yi in zip(ms, yv))
    if not all(a >= 0 for a in a_M):
        failed.append("nonnegative coefficients")
    return failed


def test_criterion_3_elementary_lemmas(acceptance):
    failures = []
    for spec in RANK3_SPECS:
        g = build_group(spec)
        rng = random.Random(f"lemmas-{spec}")
        for _ in range(SAMPLES):
            failures.extend((spec, name) for name in _lemma_checks(g, rng))
    ok = not failures
    acceptance(3, ok, f"5 lemma statements x {SAMPLES} samples x {len(RANK3_SPECS)} groups, {len(failures)} failures")
    assert ok, failures[:5]


# 4 -----------------------------------------------------------------------


def test_criterion_4_covering_theorem(acceptance):
    failures = []
    runs = checked = 0
    for spec in RANK3_SPECS:
        g = build_group(spec)
        for genus in (1, 2, 3):
            for value in (2 * genus - 2, 2 * genus - 1):
                theta = g.coweight((value,) * g.rank, (1,) * g.central_rank)
                rng = random.Random(f"cover-{spec}-{genus}-{value}")
                report = check_theorem_cover(g, genus, theta, COVER_SAMPLES, rng)
                runs += 1
                checked += report.checked
                if report.checked != COVER_SAMPLES:
                    failures.append((spec, genus, value, "too few samples", report.checked))
                failures.extend((spec, genus, value, f) for f in report.failures)
    ok = not failures
    acceptance(4, ok, f"{runs} runs, {checked} outside points, every refutation verified, {len(failures)} failures")
    assert ok, failures[:5]


# 5 -----------------------------------------------------------------------


def test_criterion_5_vanishing_constants(acceptance):
    failures = []
    for spec in SIMPLE_RANK4:
        g = build_group(spec)
        for genus in (1, 2, 3):
            c = minimal_constants(g, zero_table(genus))
            if c.c_prime != {i: 2 * genus - 2 for i in g.gamma} or c.c_double_prime != {i: 0 for i in g.gamma}:
                failures.append((spec, genus, "zero table"))
        for genus in (2, 3):
            for i in g.gamma_sorted:
                # one entry g-1 on the simple root i, whose coefficient there is 1
                table = StrangenessTable(genus)
                table.add(frozenset(), g.simple_root(i).coefs, True, genus - 1)
                if not minimal_constants(g, table).c_prime[i] > 2 * genus - 2:
                    failures.append((spec, genus, i, "single entry"))
    for spec in ("C2", "C3", "C4"):
        g = build_group(spec)
        for genus in (2, 3):
            c = minimal_constants(g, char2_sym2_table(g, genus))
            if not c.c_prime[g.rank] > 2 * genus - 2:
                failures.append((spec, genus, "sym2 preset"))
    ok = not failures
    acceptance(5, ok, f"zero table exact on {len(SIMPLE_RANK4)} types x g=1..3; strangeness g-1 pushes c' above 2g-2; {len(failures)} failures")
    assert ok, failures[:5]


# 6 -----------------------------------------------------------------------


def _check_candidate(g, theta, idx):
    mu = idx.lam
    return leq_G(g, mu, theta).holds and all(mu.pairing(i) == 0 for i in idx.gamma_M) and all(
        mu.pairing(i) > 0 for i in g.gamma - idx.gamma_M
    )


def test_criterion_6_candidate_enumeration(acceptance):
    failures = []
    pgl2 = build_group("A1 ad")
    for k in range(7):
        n = len(enumerate_candidates(pgl2, pgl2.coweight((k,))))
        if n != k + 1:
            failures.append(("PGL2", k, n))

    products = [("A1", "A1", (2,), (2,)), ("A1 ad", "A1 ad", (3,), (1,)), ("A1", "A2", (4,), (2, 2)), ("A1 ad", "B2", (2,), (2, 1))]
    for s1, s2, t1, t2 in products:
        g1, g2 = build_group(s1), build_group(s2)
        kinds = s1.split()[1:] or ["sc"]
        if kinds[0] == "ad" and s2.startswith("A1 ad"):
            g = build_group("A1xA1 ad")
        elif kinds[0] == "ad":
            continue
        else:
            g = build_group(f"{s1}x{s2}")
        c1 = {c.lam.pairings for c in enumerate_candidates(g1, g1.coweight(t1))}
        c2 = {c.lam.pairings for c in enumerate_candidates(g2, g2.coweight(t2))}
        got = {c.lam.pairings for c in enumerate_candidates(g, g.coweight(t1 + t2))}
        if got != {a + b for a, b in itertools.product(c1, c2)}:
            failures.append(("product", s1, s2))

    rng = random.Random("finiteness")
    for _ in range(100):
        spec = rng.choice([s for s in RANK3_SPECS if "+Z" not in s])
        g = build_group(spec)
        theta = g.coweight([F(rng.randint(0, 4), rng.choice((1, 2, 3))) for _ in range(g.rank)])
        cands = enumerate_candidates(g, theta)
        if not isinstance(cands, list) or not all(_check_candidate(g, theta, c) for c in cands):
            failures.append(("finiteness", spec, theta))
    ok = not failures
    acceptance(6, ok, f"PGL2 k+1 law for k=0..6, product rule, 100 finite random enumerations, {len(failures)} failures")
    assert ok, failures[:5]


# 7 -----------------------------------------------------------------------


def test_criterion_7_order_topology(acceptance):
    disagreements = 0
    preorders = subsets = 0

    def compare(rel):
        nonlocal disagreements, subsets
        n = len(rel)
        p = FinitePoset(tuple(range(n)), rel)
        for mask, expected in brute_table(rel).items():
            subsets += 1
            z = [k for k in range(n) if mask >> k & 1]
            if classify_finite(p, z).value != expected:
                disagreements += 1

    for n in range(0, 5):
        for rel in all_preorders(n):
            preorders += 1
            compare(rel)
    rng = random.Random("preorders")
    for _ in range(10_000):
        preorders += 1
        compare(random_preorder(rng, rng.randint(1, 6)))
    ok = disagreements == 0
    acceptance(7, ok, f"{preorders} preorders ({subsets} subsets), {disagreements} disagreements with the brute-force topology")
    assert ok


# 8 -----------------------------------------------------------------------


def test_criterion_8_eta_stratification(acceptance):
    failures = []
    for spec in RANK2_SPECS:
        g = build_group(spec)
        for genus in (2, 3):
            eta = g.coweight((2 * genus - 2,) * g.rank, (0,) * g.central_rank)
            rng = random.Random(f"eta-{spec}-{genus}")
            seen = []
            for _ in range(SAMPLES // 2):
                lam = random_coweight(g, rng, dominant=True)
                mu = retract_shifted(g, eta, lam)
                index, t = eta_stratum(g, eta, mu)
                if not member(t, lam):
                    failures.append((spec, genus, "own stratum", lam))
                # exactly one stratum among those seen so far
                for other in seen[-20:]:
                    if other != mu and member(eta_stratum(g, eta, other)[1], lam):
                        failures.append((spec, genus, "two strata", lam, other))
                seen.append(mu)
                # membership in T agrees with the shifted retraction
                nu = seen[rng.randrange(len(seen))]
                if member(eta_stratum(g, eta, nu)[1], lam) != (retract_shifted(g, eta, lam) == nu):
                    failures.append((spec, genus, "membership", lam, nu))
                if not check_admissible(t, index.gamma_M).admissible:
                    failures.append((spec, genus, "admissible", mu))
                # coarsening: points in one eta-stratum share their eta'-stratum
                eta2 = eta + random_coweight(g, rng, 4, dominant=True, central=(0,) * g.central_rank)
                lam2 = mu - g.combine_coroots({j: _nonneg(rng) for j in index.gamma_M})
                if is_dominant(g, lam2):
                    if retract_shifted(g, eta, lam2) != mu:
                        failures.append((spec, genus, "stratum sample", lam2))
                    if retract_shifted(g, eta2, lam) != retract_shifted(g, eta2, lam2):
                        failures.append((spec, genus, "coarsening", lam, lam2, eta2))
    ok = not failures
    acceptance(8, ok, f"{len(RANK2_SPECS)} groups x g=2,3 x {SAMPLES // 2} points, {len(failures)} failures")
    assert ok, failures[:5]


# 9 -----------------------------------------------------------------------


def test_criterion_9_fourier_motzkin(acceptance):
    failures = []
    feasible = thin = 0
    rng = random.Random("fm")
    for _ in range(SAMPLES):
        p = random_cone_problem(rng, rng.randint(1, 4))
        cert = cone_feasible(p)
        hits = grid_hits(p)
        if not cert.verify(p):
            failures.append(("certificate", p))
        if cert.feasible != vertex_feasible(p):
            failures.append(("vertex oracle", p))
        if len(hits) and not cert.feasible:
            failures.append(("grid point but infeasible", p))
        feasible += cert.feasible
        thin += cert.feasible and not len(hits)
    ok = not failures
    acceptance(9, ok, f"{SAMPLES} problems (dim<=4): {feasible} feasible, {SAMPLES - feasible} refuted with verified Farkas certificates, "
               f"{thin} feasible without a half-integer grid point, {len(failures)} failures")
    assert ok, failures[:3]


# 10 ----------------------------------------------------------------------


def test_criterion_10_gl2_example(acceptance):
    """GL_2 as A1+Z1: a degree-n bundle whose line subbundles have degree <= m
    has index pairing 2m-n and central coordinate n."""
    failures = []
    g = build_group("A1+Z1")
    for genus in range(1, 5):
        for n in range(-4, 5):
            for m in range(-4, 8):
                pairing = 2 * m - n
                if pairing < 0:
                    continue
                theta = g.coweight((pairing,), (n,))
                try:
                    check_deep(g, genus, theta)
                    accepted = True
                except ValueError:
                    accepted = False
                if accepted != (2 * m - n >= 2 * genus - 2):
                    failures.append((genus, m, n))
    # boundary case runs cleanly through the covering check
    report = check_theorem_cover(g, 2, g.coweight((2,), (3,)), 200, random.Random("gl2"))
    if report.failures or report.checked != 200:
        failures.append(("cover", report.to_json()))
    # SL_2: a line subbundle of degree n gives pairing 2n, so the general
    # bound reads n >= g-1; compared with max(g-1, 0) on integers n >= 0
    sl2 = build_group("A1")
    agree = all(
        (2 * n >= 2 * genus - 2) == (n >= max(genus - 1, 0))
        for genus in range(0, 6) for n in range(0, 10)
    )
    ok = not failures
    acceptance(10, ok, f"GL2 condition 2m-n >= 2g-2 reproduced ({len(failures)} failures); "
               f"SL2 specialization vs max(g-1,0) on integers: {'identical' if agree else 'differs'} (documented, not asserted)")
    assert sl2.rank == 1
    assert ok, failures[:5]


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
