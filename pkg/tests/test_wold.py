import numpy as np
import pytest

from nearshift.blaschke import FiniteBlaschke, blaschke_taylor, model_space_basis
from nearshift.errors import InvalidInputError, PreconditionError, TruncationError
from nearshift.rng import Lcg64
from nearshift.series import TruncatedSeries, h2_norm, monomial, series_mul
from nearshift.wold import (
    NormSpec,
    gamma_two,
    random_series,
    select_parameters,
    space_norm,
    verify_lower_bound,
    wold_decompose,
    wold_decompose_auto,
    wold_reconstruct,
)

Z = FiniteBlaschke(1, ())
Z2 = FiniteBlaschke(2, ())
REPEATED = FiniteBlaschke(0, (0.5, 0.5))


class TestDecompose:
    def test_taylor_case(self):
        f = TruncatedSeries(np.array([3.0, 1.0, -2.0, 0.5]))
        w = wold_decompose(f, Z, 4)
        assert np.allclose(w.coords[:, 0], f.coeffs)
        assert w.residual < 1e-15

    def test_pairing_case(self):
        f = TruncatedSeries(np.ones(4))
        w = wold_decompose(f, Z2, 2)
        assert np.allclose(w.coords, [[1, 1], [1, 1]])

    def test_least_squares_oracle(self):
        # oracle: regress f on the truncated frame of shifted basis elements
        B = FiniteBlaschke(0, (0.3, 0.3))
        D, levels = 24, 3
        rng = Lcg64(2024)
        f = random_series(rng, 12).truncate(D)
        w = wold_decompose(f, B, levels)
        E = model_space_basis(B, D).matrix()
        Bc = blaschke_taylor(B, D).coeffs
        cols = []
        power = np.zeros(D + 1, dtype=complex)
        power[0] = 1
        for _ in range(levels):
            for j in range(B.degree):
                cols.append(np.convolve(power, E[:, j])[: D + 1])
            power = np.convolve(power, Bc)[: D + 1]
        sol, *_ = np.linalg.lstsq(np.stack(cols, axis=1), f.coeffs, rcond=None)
        assert np.max(np.abs(sol.reshape(levels, 2) - w.coords)) < 1e-8

    def test_strict_mode_raises_on_insufficient_levels(self):
        f = TruncatedSeries(np.ones(9))
        with pytest.raises(TruncationError):
            wold_decompose(f, Z2, 1, strict=True)

    def test_warning_carried_without_strict(self):
        f = TruncatedSeries(np.ones(9))
        w = wold_decompose(f, Z2, 1)
        assert w.warning is not None and "truncation" in w.warning


class TestReconstruct:
    def test_single_basis_row(self):
        w = wold_decompose(TruncatedSeries(np.array([1.0, 0, 0, 0])), Z2, 1)
        rec = wold_reconstruct(w, 3)
        assert np.allclose(rec.coeffs, [1, 0, 0, 0])

    def test_zero_coordinates(self):
        w = wold_decompose(TruncatedSeries(np.zeros(5)), Z2, 2)
        assert h2_norm(wold_reconstruct(w, 4)) == 0

    def test_round_trip_exactly_representable(self):
        rng = Lcg64(7)
        f = random_series(rng, 20)
        for B in (Z2, REPEATED, FiniteBlaschke(1, (0.4,))):
            w = wold_decompose_auto(f, B)
            rec = wold_reconstruct(w, 20)
            assert h2_norm(rec - f) < 1e-10 * h2_norm(f)

    def test_parseval(self):
        rng = Lcg64(8)
        f = random_series(rng, 32)
        w = wold_decompose_auto(f, REPEATED)
        assert float(np.sum(w.block_norms_sq())) == pytest.approx(
            h2_norm(f) ** 2, rel=1e-9
        )


class TestSpaceNorm:
    def test_one_sided_level_weight(self):
        spec = NormSpec("wold-one", 1.0, blaschke=Z2)
        assert space_norm(monomial(2, 2), spec) == pytest.approx(np.sqrt(2))

    def test_modified_low_level_weight(self):
        spec = NormSpec("wold-two", -1.0, N=3, blaschke=Z2)
        f = TruncatedSeries(np.array([1.0, 1.0]))  # inside the model space
        assert space_norm(f, spec) == pytest.approx(np.sqrt(2 / 3))

    def test_one_sided_flat_is_parseval(self):
        spec = NormSpec("wold-one", 0.0, blaschke=REPEATED)
        rng = Lcg64(9)
        f = random_series(rng, 24)
        assert space_norm(f, spec) == pytest.approx(h2_norm(f), rel=1e-10)

    def test_standard_variant(self):
        assert space_norm(monomial(3, 3), NormSpec("alpha-standard", 1.0)) == 2.0

    def test_spec_validation(self):
        with pytest.raises(InvalidInputError):
            NormSpec("wold-one", -0.5, blaschke=Z2)
        with pytest.raises(InvalidInputError):
            NormSpec("wold-two", -0.5, blaschke=Z2)  # missing N
        with pytest.raises(InvalidInputError):
            NormSpec("wold-two", 0.5, N=2, blaschke=Z2)
        with pytest.raises(InvalidInputError):
            NormSpec("bogus", 0.0)

    def test_level_weights_crossover(self):
        spec = NormSpec("wold-two", -1.0, N=3, blaschke=Z2)
        w = spec.level_weights(6)
        assert np.allclose(w, [1 / 3, 1 / 3, 1 / 3, 1 / 4, 1 / 5, 1 / 6])


class TestSelectParameters:
    def test_example_radius_08(self):
        pars = select_parameters(Z2, -1.0, 0.8)
        assert pars.N == 1
        assert pars.gamma == pytest.approx(2 ** -0.5, abs=1e-12)
        assert pars.beta == pytest.approx(0.64, abs=1e-9)
        assert pars.contraction == pytest.approx(0.64 / 2 ** -0.5, abs=1e-8)

    def test_example_radius_095(self):
        pars = select_parameters(Z2, -1.0, 0.95)
        assert pars.N == 5
        assert pars.gamma == pytest.approx((5 / 6) ** 0.5, abs=1e-12)

    def test_gamma_formula(self):
        assert gamma_two(9, -1.0) == pytest.approx((9 / 10) ** 0.5, abs=1e-15)

    def test_minimality(self):
        for B, s in [(FiniteBlaschke(0, (0.4, 0.4)), 0.8), (Z2, 0.95)]:
            pars = select_parameters(B, -1.0, s)
            if pars.N > 1:
                assert gamma_two(pars.N - 1, -1.0) <= pars.beta

    def test_contraction_below_one(self):
        for alpha in (-1.0, -0.25):
            pars = select_parameters(FiniteBlaschke(0, (0.4, 0.4)), alpha, 0.8)
            assert pars.contraction < 1.0

    def test_zeros_outside_radius_rejected(self):
        with pytest.raises(PreconditionError):
            select_parameters(FiniteBlaschke(0, (0.9,)), -1.0, 0.8)

    def test_alpha_range_validated(self):
        with pytest.raises(InvalidInputError):
            select_parameters(Z2, 0.5, 0.8)

    def test_suggested_radius_halfway_to_boundary(self):
        from nearshift.wold import suggest_radius

        assert suggest_radius(FiniteBlaschke(0, (0.5, 0.2))) == pytest.approx(0.75)
        assert suggest_radius(Z2) == pytest.approx(0.5)


class TestLowerBound:
    def test_one_sided_model_space_ratio(self):
        # an element of the model space moves up one level under the shift
        spec = NormSpec("wold-one", 1.0, blaschke=Z2)
        f = TruncatedSeries(np.array([1.0, 2.0]))
        bf = series_mul(f, blaschke_taylor(Z2, 6), 6)
        assert space_norm(bf, spec) / space_norm(f, spec) == pytest.approx(np.sqrt(2))

    def test_one_sided_flat_is_isometric(self):
        spec = NormSpec("wold-one", 0.0, blaschke=Z2)
        rep = verify_lower_bound(Z2, spec, trials=10, seed=4, degree=24)
        assert rep.passed
        assert rep.min_ratio == pytest.approx(1.0, abs=1e-11)

    def test_modified_tight_witness(self):
        for B in (Z2, FiniteBlaschke(0, (0.4, 0.4))):
            pars = select_parameters(B, -1.0, 0.8)
            spec = NormSpec("wold-two", -1.0, N=pars.N, blaschke=B)
            rep = verify_lower_bound(B, spec, trials=5, seed=1, degree=24)
            assert rep.passed, rep.violations
            assert abs(rep.tight_ratio - pars.gamma) < 1e-9

    def test_spec_mismatch_rejected(self):
        spec = NormSpec("wold-one", 0.0, blaschke=Z2)
        with pytest.raises(PreconditionError):
            verify_lower_bound(Z, spec, trials=1, seed=0)

    def test_report_json(self):
        spec = NormSpec("wold-one", 0.5, blaschke=Z2)
        rep = verify_lower_bound(Z2, spec, trials=3, seed=0, degree=16)
        doc = rep.to_json()
        assert set(doc) >= {"min_ratio", "gamma", "witness", "violations", "passed"}


class TestNormEquivalence:
    def test_rayleigh_endpoints_stable_under_refinement(self):
        # extremal quotients between the block norm and the plain weighted
        # norm should settle as the truncation grows
        from nearshift.ambient import Ambient
        from nearshift.series import alpha_weights

        B = FiniteBlaschke(1, (0.5, -0.3j))
        alpha = 1.0
        ends = {}
        for D in (32, 64):
            W = Ambient(1, D, NormSpec("wold-one", alpha, blaschke=B)).gram
            d = alpha_weights(D + 1, alpha)
            A = W / np.sqrt(np.outer(d, d))
            vals = np.linalg.eigvalsh(0.5 * (A + A.conj().T))
            ends[D] = (vals[0], vals[-1])
        for i in range(2):
            rel = abs(ends[64][i] - ends[32][i]) / abs(ends[32][i])
            assert rel < 0.10
