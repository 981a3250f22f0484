import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reciprocal_channels import capacities as cap
from reciprocal_channels import channels as ch
from reciprocal_channels.errors import CPViolationError, DimensionError, UndefinedRatioError

# Frozen with mpmath at 30 significant digits.
H_QUARTER_3_8THS = 1.56127812445913286390969579204
C_EA_DC_3_NEG = 0.169925001442312362907477887896
A_UA_4 = 0.093830146815958344696013275866
A_EA_10 = 1.56804108246746690017942438498


class TestDCLandmarks:
    @pytest.mark.parametrize("d,expected", [(2, -1 / 3), (3, -1 / 8), (10, -1 / 99)])
    def test_lambda_min(self, d, expected):
        assert cap.lambda_min_dc(d) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("d", [2, 3, 7])
    def test_smin_endpoints(self, d):
        assert cap.smin_dc(d, 1.0) == pytest.approx(0.0, abs=1e-15)
        assert cap.smin_dc(d, 0.0) == pytest.approx(math.log2(d), abs=1e-14)

    def test_smin_at_cp_boundary(self):
        assert cap.smin_dc(3, -1 / 8) == pytest.approx(H_QUARTER_3_8THS, abs=1e-14)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_ua_endpoints(self, d):
        assert cap.c_ua_dc(d, 1.0) == pytest.approx(math.log2(d), abs=1e-14)
        assert cap.c_ua_dc(d, 0.0) == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_ea_endpoints(self, d):
        assert cap.c_ea_dc(d, 1.0) == pytest.approx(2 * math.log2(d), abs=1e-14)
        assert cap.c_ea_dc(d, 0.0) == pytest.approx(0.0, abs=1e-14)

    def test_ea_at_cp_boundary(self):
        assert cap.c_ea_dc(3, -1 / 8) == pytest.approx(C_EA_DC_3_NEG, abs=1e-14)

    def test_ea_above_ua(self):
        for d in (2, 3, 4):
            for lam in np.linspace(cap.lambda_min_dc(d), 1, 101):
                assert cap.c_ea_dc(d, lam) >= cap.c_ua_dc(d, lam) - 1e-14

    def test_out_of_range(self):
        with pytest.raises(CPViolationError):
            cap.c_ua_dc(2, -0.5)
        with pytest.raises(CPViolationError):
            cap.c_ea_dc(3, 1.1)
        with pytest.raises(DimensionError):
            cap.lambda_min_dc(1)


class TestWCCCapacity:
    @pytest.mark.parametrize("d", [2, 3])
    def test_identity(self, d):
        p = np.zeros(d * d)
        p[0] = 1
        assert cap.c_ea_wcc(ch.WCCSpec(d, p)) == pytest.approx(2 * math.log2(d))

    def test_uniform(self):
        assert cap.c_ea_wcc(ch.WCCSpec(3, np.full(9, 1 / 9))) == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_dc_consistency(self, d):
        for lam in np.linspace(cap.lambda_min_dc(d), 1, 11):
            assert cap.c_ea_wcc(cap.dc_as_wcc(d, lam)) == pytest.approx(cap.c_ea_dc(d, lam), abs=1e-12)

    def test_q_ea(self):
        assert cap.q_ea(2 * math.log2(3)) == pytest.approx(math.log2(3))
        assert cap.q_ea(0.0) == 0.0
        with pytest.raises(ValueError):
            cap.q_ea(-1.0)


class TestCPRange:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_identity_distribution(self, d):
        r = cap.cp_range_wcc(ch.dc_weyl_distribution(d, 1.0), d)
        assert r.lambda_min == pytest.approx(-1 / (d * d - 1))
        assert r.lambda_max == pytest.approx(1.0)
        assert r.reciprocal_bound == pytest.approx(1 / (d * d - 1))

    def test_uniform_is_unbounded(self):
        r = cap.cp_range_wcc(np.full(4, 0.25), 2)
        assert r.lambda_min == -math.inf and r.lambda_max == math.inf
        assert r.to_json() == {"lambda_min": "-inf", "lambda_max": "inf", "reciprocal_bound": "inf"}

    def test_endpoints_against_choi_eigenvalues(self, rng):
        for _ in range(20):
            d = int(rng.integers(2, 4))
            spec = ch.random_wcc_spec(d, rng)
            phi = ch.wcc_channel(spec)
            r = cap.cp_range_wcc(spec.p, d)
            assert ch.mixer_channel(phi, r.lambda_min).min_choi_eigenvalue > -1e-10
            assert ch.mixer_channel(phi, r.lambda_max).min_choi_eigenvalue > -1e-10
            assert ch.mixer_channel(phi, r.lambda_min - 1e-6).min_choi_eigenvalue < 0
            assert ch.mixer_channel(phi, r.lambda_max + 1e-6).min_choi_eigenvalue < 0

    def test_wrong_length(self):
        with pytest.raises(DimensionError):
            cap.cp_range_wcc([0.5, 0.5], 2)


class TestAsymmetryDC:
    def test_qubit_ua_vanishes(self):
        for a in np.linspace(0.01, 1 / 3, 30):
            assert abs(cap.asymmetry_ratio_dc(2, a, "UA")) < 1e-12

    def test_ua_landmark_d4(self):
        assert cap.asymmetry_ratio_dc(4, 1 / 15, "UA") == pytest.approx(A_UA_4, abs=1e-12)

    def test_ea_at_bound_d10(self):
        assert cap.asymmetry_ratio_dc(10, 1 / 99, "EA") == pytest.approx(A_EA_10, abs=1e-12)

    def test_qubit_ea_at_bound(self):
        # C_EA(DC(2, -1/3)) is exactly twice C_EA(DC(2, 1/3))
        assert cap.asymmetry_ratio_dc(2, 1 / 3, "EA") == pytest.approx(1.0, abs=1e-12)

    def test_increasing_in_abs_lambda(self):
        for d in (3, 4, 6):
            bound = 1 / (d * d - 1)
            for kind in ("UA", "EA"):
                vals = [cap.asymmetry_ratio_dc(d, a, kind) for a in np.linspace(bound / 20, bound, 20)]
                assert np.all(np.diff(vals) > 0)

    def test_errors(self):
        with pytest.raises(UndefinedRatioError):
            cap.asymmetry_ratio_dc(3, 0.0, "EA")
        with pytest.raises(CPViolationError):
            cap.asymmetry_ratio_dc(3, 0.2, "EA")
        with pytest.raises(ValueError):
            cap.asymmetry_ratio_dc(3, 0.1, "Q")


class TestAsymmetryWCC:
    def test_identity_base_reduces_to_dc(self):
        q = [1.0, 0.0, 0.0, 0.0]
        assert cap.asymmetry_ratio_wcc_ea(q, 2, 1 / 3) == pytest.approx(cap.asymmetry_ratio_dc(2, 1 / 3, "EA"), abs=1e-12)

    @pytest.mark.parametrize("lam1", [0.5, -0.1])
    def test_dc_base(self, lam1):
        d = 3
        q = ch.dc_weyl_distribution(d, lam1)
        a = 0.05
        expected = cap.asymmetry_ratio_dc(d, a * abs(lam1), "EA")
        got = cap.asymmetry_ratio_wcc_ea(q, d, a)
        if lam1 > 0:
            assert got == pytest.approx(expected, abs=1e-12)
        else:
            # the pair swaps roles, so the ratio is (C+ - C-)/C-
            assert got < 0
            assert got == pytest.approx(-expected / (1 + expected), abs=1e-12)

    def test_uniform_is_undefined(self):
        with pytest.raises(UndefinedRatioError):
            cap.asymmetry_ratio_wcc_ea(np.full(4, 0.25), 2, 0.5)
        assert math.isnan(cap.max_asymmetry_ratio_wcc_ea(np.full(4, 0.25), 2))

    def test_beyond_bound(self):
        with pytest.raises(CPViolationError):
            cap.asymmetry_ratio_wcc_ea([1, 0, 0, 0], 2, 0.34)


class TestWCCGrid:
    def test_point_count_and_nan(self):
        rows = cap.wcc_asymmetry_grid(5)
        assert len(rows) == 35
        assert sum(math.isnan(r[3]) for r in rows) == 1

    def test_weights_on_simplex(self):
        for q1, q2, q3, _ in cap.wcc_asymmetry_grid(9):
            assert min(q1, q2, q3) >= 0 and q1 + q2 + q3 <= 1 + 1e-12


class TestFidelity:
    def test_mover_fidelity(self):
        assert cap.mover_fidelity(3, 1.0) == 1.0
        assert cap.mover_fidelity(3, -1 / 8) == pytest.approx(0.25)
        for d in range(2, 8):
            assert cap.mover_fidelity(d, cap.lambda_min_dc(d)) == pytest.approx(1 / (d + 1))

    def test_avg_fidelity_identity(self):
        assert cap.avg_output_fidelity(ch.identity_channel(3)) == pytest.approx(1.0)

    @pytest.mark.parametrize("d", [2, 3])
    def test_avg_fidelity_without_identity_weight(self, d, rng):
        p = rng.dirichlet(np.ones(d * d - 1))
        spec = ch.WCCSpec(d, np.concatenate([[0.0], p]))
        assert cap.avg_output_fidelity(ch.wcc_channel(spec)) == pytest.approx(1 / (d + 1), abs=1e-12)

    def test_avg_fidelity_of_dc_is_mover_fidelity(self):
        for lam in (-1 / 8, 0.0, 0.6):
            assert cap.avg_output_fidelity(ch.depolarizing_channel(3, lam)) == pytest.approx(cap.mover_fidelity(3, lam))

    def test_avg_fidelity_wcc_formula(self, rng):
        for d in (2, 3, 4):
            spec = ch.random_wcc_spec(d, rng)
            expected = (d * spec.p[0] + 1) / (d + 1)
            assert cap.avg_output_fidelity(ch.wcc_channel(spec)) == pytest.approx(expected, abs=1e-12)

    def test_kraus_trace_sum_is_superoperator_trace(self, rng):
        from reciprocal_channels.linalg import haar_random_unitary

        kraus = [haar_random_unitary(3, rng) * np.sqrt(w) for w in rng.dirichlet(np.ones(4))]
        phi = ch.channel_from_kraus(kraus)
        total = sum(abs(np.trace(m)) ** 2 for m in kraus)
        assert total == pytest.approx(np.trace(ch.superoperator_matrix(phi)).real, abs=1e-12)


def test_capacity_report_json():
    report = cap.CapacityReport({"type": "dc", "d": 2, "lambda": 1.0}, "EA", 2.0)
    assert report.to_json() == {
        "channel_desc": {"type": "dc", "d": 2, "lambda": 1.0},
        "kind": "EA",
        "value": 2.0,
        "method": "closed_form",
    }


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.floats(0.001, 1.0))
def test_asymmetry_nonnegative_for_dc(d, frac):
    a = frac / (d * d - 1)
    for kind in ("UA", "EA"):
        assert cap.asymmetry_ratio_dc(d, a, kind) >= -1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.floats(0.0, 1.0))
def test_capacities_bounded(d, t):
    lam = cap.lambda_min_dc(d) + t * (1 - cap.lambda_min_dc(d))
    assert 0 <= cap.c_ua_dc(d, lam) <= math.log2(d) + 1e-12
    assert 0 <= cap.c_ea_dc(d, lam) <= 2 * math.log2(d) + 1e-12
