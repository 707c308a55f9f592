"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one pass/fail line (visible with pytest -s; the verbose
test listing carries the same verdicts).  Seeds are fixed so reruns are
bit-identical.
"""

import time

import numpy as np

from nearshift.ambient import Ambient, hardy_ambient
from nearshift.blaschke import (
    FiniteBlaschke,
    blaschke_taylor,
    model_space_basis,
)
from nearshift.neardecomp import (
    example_section2,
    example_subspace,
    expansive_context,
    factor_in_context,
    invariance_check_N,
    model_space_distance,
    rescaled_context,
    scalar_beurling_lax,
)
from nearshift.rng import Lcg64, trial_seed
from nearshift.series import h2_norm
from nearshift.subspaces import intersect, orthonormalize
from nearshift.suites import (
    functional_calculus_residual,
    scaled_factorization_checks,
)
from nearshift.wold import (
    NormSpec,
    random_series,
    select_parameters,
    verify_lower_bound,
    wold_decompose,
    wold_decompose_auto,
    wold_reconstruct,
)

Z2 = FiniteBlaschke(2, ())
TWO_ZEROS = FiniteBlaschke(0, (0.5, -0.3j))
MIXED = FiniteBlaschke(1, (0.4,))
REPEATED_04 = FiniteBlaschke(0, (0.4, 0.4))


def report(n, label, elapsed=None):
    suffix = f" ({elapsed:.2f}s)" if elapsed is not None else ""
    print(f"[acceptance] criterion {n} ({label}): PASS{suffix}")


def test_criterion_1_wold_round_trip():
    started = time.perf_counter()
    for B in (Z2, TWO_ZEROS, MIXED):
        for t in range(100):
            rng = Lcg64(trial_seed(101, t))
            f = random_series(rng, 48).truncate(64)
            w = wold_decompose_auto(f, B)
            rec = wold_reconstruct(w, 64)
            nf = h2_norm(f)
            assert h2_norm(rec - f) < 1e-9 * nf
            parseval = abs(float(np.sum(w.block_norms_sq())) - nf**2) / nf**2
            assert parseval < 1e-9
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    report(1, "wold round trip", elapsed)


def test_criterion_2_lower_bounds():
    started = time.perf_counter()
    for B in (Z2, REPEATED_04):
        for alpha in (0.0, 0.5, 1.0):
            spec = NormSpec("wold-one", alpha, blaschke=B)
            rep = verify_lower_bound(B, spec, trials=25, seed=202, degree=48)
            assert rep.min_ratio >= 1.0 - 1e-9, (B, alpha, rep.min_ratio)
        for alpha in (-1.0, -0.5):
            pars = select_parameters(B, alpha, 0.8)
            spec = NormSpec("wold-two", alpha, N=pars.N, blaschke=B)
            rep = verify_lower_bound(B, spec, trials=25, seed=203, degree=48)
            assert not rep.violations
            assert abs(rep.tight_ratio - pars.gamma) < 1e-9
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    report(2, "expansivity lower bounds", elapsed)


def test_criterion_3_functional_calculus():
    started = time.perf_counter()
    for B in (Z2, REPEATED_04):
        h_degree = 8
        g_degree = 64 - h_degree * B.degree - 4
        for t in range(50):
            rng = Lcg64(trial_seed(303, t))
            g = random_series(rng, g_degree)
            h = random_series(rng, h_degree)
            assert functional_calculus_residual(B, g, h, 64) < 1e-9
    report(3, "model functional calculus", time.perf_counter() - started)


def test_criterion_4_worked_example():
    started = time.perf_counter()
    for m in (0, 1):
        rep = example_section2(0.5, m, 3, 32)
        by_name = {c["name"]: c for c in rep["checks"]}
        assert by_name["near-invariance"]["pass"]
        assert by_name["defect-dimension"]["details"]["l"] == 2
        assert by_name["sstar-invariance"]["residual"] < 1e-8
        assert by_name["inner-candidate-distance"]["residual"] < 1e-7
        assert by_name["isometry-defect"]["residual"] < 1e-8
    elapsed = time.perf_counter() - started
    assert elapsed < 2.0
    report(4, "worked example scenario", elapsed)


def test_criterion_5_expansive_factorization():
    started = time.perf_counter()
    for alpha in (0.0, 0.5, 1.0):
        spec = NormSpec("wold-one", alpha, blaschke=Z2)
        ambient = Ambient(1, 64, spec)
        M = example_subspace(Z2, 0.5, 1, 12, ambient)
        ctx = expansive_context(M, Z2, alpha)
        facts = []
        for t in range(100):
            rng = Lcg64(trial_seed(505, t))
            c = np.array([rng.complex_uniform() for _ in range(M.dim)])
            fact = factor_in_context(M.frame @ (c / np.linalg.norm(c)), ctx)
            assert fact.residual < 1e-8 * fact.h_norm
            assert fact.q_norm <= fact.h_norm + 1e-8
            assert fact.cki_slack >= -1e-8
            if len(facts) < 50:
                facts.append(fact)
        inv = invariance_check_N(facts)
        assert inv.max_residual < 1e-8
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    report(5, "one-sided factorization bounds", elapsed)


def test_criterion_6_rescaled_factorization():
    started = time.perf_counter()
    for B in (Z2, REPEATED_04):
        for alpha in (-1.0, -0.5):
            pars = select_parameters(B, alpha, 0.8)
            assert pars.contraction < 1.0
            spec = NormSpec("wold-two", alpha, N=pars.N, blaschke=B)
            ambient = Ambient(1, 64, spec)
            M = example_subspace(B, 0.5, 1, 8, ambient)
            ctx = rescaled_context(M, B, alpha, 0.8)
            facts = []
            for t in range(100):
                rng = Lcg64(trial_seed(606, t))
                c = np.array([rng.complex_uniform() for _ in range(M.dim)])
                fact = factor_in_context(M.frame @ (c / np.linalg.norm(c)), ctx)
                assert fact.bound_slack >= -1e-8
                assert fact.cki_slack >= -1e-8
                assert fact.residual < 1e-8 * fact.h_norm
                if len(facts) < 50:
                    facts.append(fact)
            inv = invariance_check_N(facts)
            assert inv.max_residual < 1e-8
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    report(6, "rescaled factorization bounds", elapsed)


def test_criterion_7_scaled_factorization_identities():
    started = time.perf_counter()
    for B in (Z2, REPEATED_04, FiniteBlaschke(1, (0.4, -0.25j)), TWO_ZEROS):
        assert B.degree <= 3
        checks = scaled_factorization_checks(B, 0.8, degree=40)
        by_kind = {c.name.split()[1]: c for c in checks}
        assert by_kind["product"].residual < 1e-9
        assert by_kind["left-inverse"].residual < 1e-8
        assert by_kind["invertibility"].details["min_modulus"] > 0.0
    report(7, "scaled factorization identities", time.perf_counter() - started)


def test_criterion_8_oracle_equivalence():
    started = time.perf_counter()
    worst_coord = 0.0
    for t in range(50):
        rng = Lcg64(trial_seed(808, t))
        m = 1 + int(rng.next_u64() % 2)
        levels = 3 if m == 2 else 2 + int(rng.next_u64() % 3)  # frame size <= 6
        D = 18 + int(rng.next_u64() % 7)
        zeros = []
        for _ in range(m):
            modulus = 0.05 + 0.3 * rng.uniform()
            arg = 2 * np.pi * rng.uniform()
            zeros.append(modulus * np.exp(1j * arg))
        B = FiniteBlaschke(0, tuple(zeros))
        f = random_series(rng, 12).truncate(D)
        w = wold_decompose(f, B, levels)
        E = model_space_basis(B, D).matrix()
        Bc = blaschke_taylor(B, D).coeffs
        cols = []
        power = np.zeros(D + 1, dtype=complex)
        power[0] = 1.0
        for _ in range(levels):
            for j in range(m):
                cols.append(np.convolve(power, E[:, j])[: D + 1])
            power = np.convolve(power, Bc)[: D + 1]
        sol, *_ = np.linalg.lstsq(np.stack(cols, axis=1), f.coeffs, rcond=None)
        worst_coord = max(
            worst_coord, float(np.max(np.abs(sol.reshape(levels, m) - w.coords)))
        )
    assert worst_coord < 1e-8

    for t in range(50):
        rng = Lcg64(trial_seed(809, t))
        D = 18 + int(rng.next_u64() % 7)
        amb = hardy_ambient(D)
        n_shared = int(rng.next_u64() % 3)
        n_only = 1 + int(rng.next_u64() % 2)

        def draw():
            return np.array([rng.complex_uniform() for _ in range(D + 1)])

        shared = [draw() for _ in range(n_shared)]
        M = orthonormalize(shared + [draw() for _ in range(n_only)], amb)
        W = orthonormalize(shared + [draw() for _ in range(n_only)], amb)
        X = intersect(M, W)
        stacked = np.concatenate([M.frame, W.frame], axis=1)
        rank = np.linalg.matrix_rank(stacked, tol=1e-8)
        assert X.dim == M.dim + W.dim - rank
    report(8, "oracle equivalence", time.perf_counter() - started)


def test_criterion_9_scalar_synthesis_round_trip():
    started = time.perf_counter()
    D = 80
    ambient = hardy_ambient(D)
    for t in range(20):
        rng = Lcg64(trial_seed(909, t))
        degree = 1 + int(rng.next_u64() % 5)
        m0 = int(rng.next_u64() % (degree + 1))
        zeros = []
        for _ in range(degree - m0):
            modulus = 0.1 + 0.55 * rng.uniform()
            arg = 2 * np.pi * rng.uniform()
            zeros.append(modulus * np.exp(1j * arg))
        theta0 = FiniteBlaschke(m0, tuple(zeros))
        F = orthonormalize(
            [e.coeffs for e in model_space_basis(theta0, D).basis], ambient
        )
        theta = scalar_beurling_lax(F)
        assert model_space_distance(F, theta) < 1e-7
        assert theta.degree == theta0.degree
    report(9, "scalar synthesis round trip", time.perf_counter() - started)
