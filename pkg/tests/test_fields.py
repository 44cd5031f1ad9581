import math

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from semibell import (
    Analyzer,
    Detector,
    EntangledState,
    MeasurementSettings,
    SeparableState,
    click_probability,
    joint_intensity,
    polarization_marginal_intensity,
    probability_set,
    spatial_marginal_intensity,
)

angles = st.floats(-10.0, 10.0, allow_nan=False)
amps = st.floats(-3.0, 3.0, allow_nan=False)


class TestAnalyzer:
    def test_unit_vector_normalized(self):
        a = Analyzer(0.7)
        ux, uy = a.unit
        assert abs(ux * ux + uy * uy - 1.0) < 1e-12

    def test_from_vector(self):
        a = Analyzer.from_vector(3.0, 3.0)
        assert a.angle == pytest.approx(math.pi / 4)

    def test_rejects_near_zero_vector(self):
        with pytest.raises(ValueError):
            Analyzer.from_vector(1e-10, 0.0)

    def test_rejects_nonfinite_angle(self):
        with pytest.raises(ValueError):
            Analyzer(math.nan)
        with pytest.raises(ValueError):
            Analyzer(math.inf)


class TestJointIntensity:
    def test_aligned_analyzers(self):
        st_ = EntangledState(1, 1)
        assert joint_intensity(st_, Analyzer(0), Analyzer(0)) == pytest.approx(1.0)

    def test_orthogonal_analyzers(self):
        st_ = EntangledState(1, 1)
        assert joint_intensity(st_, Analyzer(0), Analyzer(math.pi / 2)) == pytest.approx(
            0.0, abs=1e-30
        )

    def test_unequal_amplitudes(self):
        st_ = EntangledState(1, 2)
        got = joint_intensity(st_, Analyzer(math.pi / 4), Analyzer(math.pi / 4))
        assert got == pytest.approx(2.25)  # (0.5*1 + 0.5*2)^2

    def test_separable(self):
        st_ = SeparableState(1, math.pi / 2, math.pi / 3)
        got = joint_intensity(st_, Analyzer(math.pi / 4), Analyzer(math.pi / 3))
        assert got == pytest.approx(0.5)


class TestMarginals:
    @pytest.mark.parametrize("alpha", [0.0, 0.3, 1.0, math.pi / 2, 4.2])
    def test_max_entangled_spatial_marginal_is_flat(self, alpha):
        assert spatial_marginal_intensity(EntangledState(1, 1), Analyzer(alpha)) == pytest.approx(
            1.0, abs=1e-12
        )

    @pytest.mark.parametrize("beta", [0.0, 0.3, 1.0, math.pi / 2, 4.2])
    def test_max_entangled_polarization_marginal_is_flat(self, beta):
        assert polarization_marginal_intensity(
            EntangledState(1, 1), Analyzer(beta)
        ) == pytest.approx(1.0, abs=1e-12)

    def test_separable_spatial_aligned(self):
        st_ = SeparableState(1, math.pi / 2, 0.1)
        assert spatial_marginal_intensity(st_, Analyzer(math.pi / 2)) == pytest.approx(1.0)

    def test_entangled_unequal_fully_transmitted(self):
        assert spatial_marginal_intensity(
            EntangledState(1, 2), Analyzer(math.pi / 2)
        ) == pytest.approx(4.0)

    def test_malus_aligned_and_crossed(self):
        st_ = SeparableState(1, 0.0, math.pi / 3)
        assert polarization_marginal_intensity(st_, Analyzer(math.pi / 3)) == pytest.approx(1.0)
        assert polarization_marginal_intensity(
            st_, Analyzer(math.pi / 3 + math.pi / 2)
        ) == pytest.approx(0.0, abs=1e-30)


class TestClickProbability:
    def test_zero_intensity(self):
        assert click_probability(0.0, Detector(2.0)) == 0.0

    def test_unit_exponent(self):
        assert click_probability(1.0, Detector(1.0)) == pytest.approx(1 - math.exp(-1))

    def test_saturation_strictly_below_one(self):
        p = click_probability(50.0, Detector(1.0))
        assert 1 - p < 1e-12 and p < 1.0

    def test_negative_intensity_rejected(self):
        with pytest.raises(ValueError):
            click_probability(-1e-9, Detector(1.0))

    def test_negative_gain_rejected(self):
        with pytest.raises(ValueError):
            Detector(-0.1)

    def test_small_exponent_precision(self):
        # expm1 form keeps full relative precision at kappa ~ 1e-6
        p = click_probability(1e-6, Detector(1.0))
        assert p == pytest.approx(1e-6 - 5e-13, rel=1e-9)

    @given(st.floats(0.0, 20.0), st.floats(0.0, 20.0), st.floats(0.01, 5.0))
    def test_depends_only_on_product(self, i, g, c):
        a = click_probability(i, Detector(g))
        b = click_probability(i * c, Detector(g / c))
        assert a == pytest.approx(b, rel=1e-12, abs=1e-15)

    @given(st.floats(0.0, 2.0), st.floats(1e-6, 5.0))
    def test_strictly_increasing_in_intensity(self, i, g):
        # strict below saturation; at g*i >~ 36 consecutive doubles coincide
        assert click_probability(i + 0.1, Detector(g)) > click_probability(i, Detector(g))


def _settings(x, y, u, v):
    return MeasurementSettings.from_angles(x, y, u, v)


class TestProbabilitySet:
    def test_fig2_entangled_values(self, max_entangled, fig2_settings):
        p = probability_set(max_entangled, fig2_settings, Detector(1.0))
        e = math.exp
        assert p.p_xu == pytest.approx(1 - e(-math.cos(math.pi / 12) ** 2), rel=1e-12)
        assert p.p_xv == pytest.approx(0.0, abs=1e-15)
        assert p.p_yu == pytest.approx(1 - e(-0.75), rel=1e-12)
        assert p.p_yv == pytest.approx(1 - e(-0.5), rel=1e-12)
        assert p.p_y == pytest.approx(1 - e(-1), rel=1e-12)
        assert p.p_u == pytest.approx(1 - e(-1), rel=1e-12)
        assert p.kappa == 1.0

    def test_fig3_separable_values(self, fig3_separable, fig2_settings):
        p = probability_set(fig3_separable, fig2_settings, Detector(1.0))
        e = math.exp
        c7 = math.cos(7 * math.pi / 12) ** 2  # (p_v . p_0)^2
        assert p.p_xu == pytest.approx(1 - e(-0.5), rel=1e-12)
        assert p.p_xv == pytest.approx(1 - e(-0.5 * c7), rel=1e-12)
        assert p.p_yu == pytest.approx(1 - e(-1.0), rel=1e-12)
        assert p.p_yv == pytest.approx(1 - e(-c7), rel=1e-12)
        assert p.p_y == pytest.approx(1 - e(-1.0), rel=1e-12)
        assert p.p_u == pytest.approx(1 - e(-1.0), rel=1e-12)

    def test_zero_gain_all_zero(self, max_entangled, fig2_settings):
        p = probability_set(max_entangled, fig2_settings, Detector(0.0))
        assert all(v == 0.0 for v in p.as_dict().values())
        assert p.kappa == 0.0

    @given(amps, amps, angles, angles, angles, angles, st.floats(0.0, 5.0))
    @hyp_settings(max_examples=300)
    def test_probabilities_in_unit_interval(self, a1, am1, x, y, u, v, gain):
        p = probability_set(EntangledState(a1, am1), _settings(x, y, u, v), Detector(gain))
        for val in p.as_dict().values():
            assert 0.0 <= val < 1.0


class TestIntensityInvariants:
    @given(amps, amps, angles, angles)
    @hyp_settings(max_examples=300)
    def test_entangled_joint_below_spatial_marginal(self, a1, am1, alpha, beta):
        st_ = EntangledState(a1, am1)
        s, p = Analyzer(alpha), Analyzer(beta)
        assert joint_intensity(st_, s, p) <= spatial_marginal_intensity(st_, s) + 1e-12

    @given(amps, angles, angles, angles, angles)
    @hyp_settings(max_examples=300)
    def test_separable_joint_below_spatial_marginal(self, amp, a0, b0, alpha, beta):
        st_ = SeparableState(amp, a0, b0)
        s, p = Analyzer(alpha), Analyzer(beta)
        assert joint_intensity(st_, s, p) <= spatial_marginal_intensity(st_, s) + 1e-12

    @given(angles, angles, angles, angles, angles, angles, angles,
           st.floats(0.1, 5.0))
    @hyp_settings(max_examples=200)
    def test_rotational_covariance_spatial(self, a0, b0, x, y, u, v, delta, gain):
        base = probability_set(
            SeparableState(1.0, a0, b0), _settings(x, y, u, v), Detector(gain))
        shifted = probability_set(
            SeparableState(1.0, a0 + delta, b0),
            _settings(x + delta, y + delta, u, v), Detector(gain))
        for k, val in base.as_dict().items():
            assert shifted.as_dict()[k] == pytest.approx(val, abs=1e-12)

    @given(angles, angles, angles, angles, angles, angles, angles,
           st.floats(0.1, 5.0))
    @hyp_settings(max_examples=200)
    def test_rotational_covariance_polarization(self, a0, b0, x, y, u, v, delta, gain):
        base = probability_set(
            SeparableState(1.0, a0, b0), _settings(x, y, u, v), Detector(gain))
        shifted = probability_set(
            SeparableState(1.0, a0, b0 + delta),
            _settings(x, y, u + delta, v + delta), Detector(gain))
        for k, val in base.as_dict().items():
            assert shifted.as_dict()[k] == pytest.approx(val, abs=1e-12)

    @given(angles, angles, angles, angles, st.floats(0.1, 3.0))
    @hyp_settings(max_examples=200)
    def test_separable_exponent_factorizes(self, a0, b0, alpha, beta, kappa):
        # -ln(1 - p_joint) = kappa * (s.s0)^2 * (p.p0)^2: the product of the
        # marginal exponents divided by kappa
        st_ = SeparableState(1.0, a0, b0)
        det = Detector(kappa)
        s, p = Analyzer(alpha), Analyzer(beta)
        e_joint = -math.log1p(-click_probability(joint_intensity(st_, s, p), det))
        e_s = -math.log1p(-click_probability(spatial_marginal_intensity(st_, s), det))
        e_p = -math.log1p(-click_probability(polarization_marginal_intensity(st_, p), det))
        assert e_joint == pytest.approx(e_s * e_p / kappa, abs=1e-12, rel=1e-9)
