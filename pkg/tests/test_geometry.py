import math

import numpy as np
import pytest

from helend import (ConeNeighborhood, EndDescriptor, embeddedness_check,
                    gauss_map, helicoid_distance, helicoid_distance_check,
                    level_curve, line_asymptote_divergence,
                    no_vertical_ray_diagnostic, ray_check,
                    tangent_direction_check, total_curvature_check)
from helend.errors import DomainError, UnsupportedDescriptorError
from helend.geometry import CheckResult, circle_samples


def fd_planar_curvature(curve, i, h):
    """Central-difference curvature of the sampled planar polyline."""
    p = np.column_stack([curve.pts.real, curve.pts.imag])
    d1 = (p[i + 1] - p[i - 1]) / (2 * h)
    d2 = (p[i + 1] - 2 * p[i] + p[i - 1]) / (h * h)
    return (d1[0] * d2[1] - d1[1] * d2[0]) / np.hypot(*d1) ** 3


class TestLevelCurve:
    def test_helicoid_curves_are_straight(self, helicoid_end):
        c = level_curve(helicoid_end, 1.3, (0.5, 4.0), 64)
        assert np.abs(c.kappa).max() == 0.0

    def test_real_axis_curve_is_straight(self, bessel_end):
        c = level_curve(bessel_end, 0.0, (2.0, 10.0), 64)
        assert np.abs(c.kappa).max() < 1e-12

    def test_curvature_formula_vs_finite_differences(self, bessel_end):
        # the kappa field uses the (1/4)-metric normalization: the planar
        # polyline's geometric curvature is exactly twice it
        h = 1e-3
        t0 = 0.1
        c = level_curve(bessel_end, 5.0, (t0 - 2 * h, t0 + 2 * h), 5)
        assert abs(c.kappa[2]) > 1e-4
        kfd = fd_planar_curvature(c, 2, h)
        assert kfd == pytest.approx(2.0 * c.kappa[2], rel=1e-4)

    def test_x3_equals_alpha(self, bessel_end):
        c = level_curve(bessel_end, 5.0, (-12.0, 12.0), 257)
        np.testing.assert_allclose(c.x3, 5.0, atol=1e-9)

    def test_tangents_match_polyline_direction(self, bessel_end):
        c = level_curve(bessel_end, 3.0, (0.0, 4.0), 801)
        steps = np.diff(c.pts)
        mid = (c.tangents[:-1] + c.tangents[1:]) / 2
        ang = np.abs(np.angle(steps / mid))
        assert ang.max() < 1e-4

    def test_speed_is_quarter_width(self, bessel_end):
        c = level_curve(bessel_end, 2.0, (1.0, 3.0), 9)
        g = gauss_map(bessel_end, c.ts + 2.0j)
        np.testing.assert_allclose(c.speed,
                                   (np.abs(g) + 1 / np.abs(g)) / 4, rtol=1e-13)

    def test_domain_violation_names_sample(self, bessel_end):
        with pytest.raises(DomainError, match="t ="):
            level_curve(bessel_end, 0.1, (-2.0, 2.0), 65)


class TestTotalCurvature:
    def test_helicoid_zero(self, helicoid_end):
        c = level_curve(helicoid_end, 5.0, (-10.0, 10.0), 201)
        rep = total_curvature_check(c, S=0.0)
        assert rep.passed

    def test_bessel_bound_and_pi_criterion(self, bessel_end):
        S = bessel_end.curvature_series_bound()
        c = level_curve(bessel_end, 10.0, (-30.0, 30.0), 2001)
        rep = total_curvature_check(c, S)
        assert rep.passed
        names = [ch.name for ch in rep.checks]
        assert any("embedded_line" in n for n in names)
        measured = rep.checks[0].measured
        assert measured <= S * math.pi / 40.0 + 1e-6
        assert measured < math.pi

    def test_alpha_zero_skips_bound(self, bessel_end):
        c = level_curve(bessel_end, 0.0, (2.0, 10.0), 65)
        rep = total_curvature_check(c, S=bessel_end.curvature_series_bound())
        assert rep.passed
        assert "degenerate" in rep.checks[0].note


class TestTangentDirection:
    def test_helicoid_exact(self, helicoid_end):
        # deviations are pure rounding noise: the fitted C must be ~0
        rep = tangent_direction_check(helicoid_end, np.linspace(-10, 10, 9),
                                      np.linspace(-10, 10, 9),
                                      radius_range=(2.0, 15.0))
        assert rep.passed
        assert "fitted C" in rep.notes
        assert float(rep.notes.split("fitted C = ")[1].split(" ")[0]) < 1e-12

    def test_bessel_deviation_scale(self, bessel_end):
        # delta = |Im F| <= |a| / |z| with F = a/z; at alpha = 5, t = 10 the
        # deviation is a * 5 / 125 up to sign
        a = bessel_end.coefficients[0]
        z = 10.0 + 5.0j
        g = complex(gauss_map(bessel_end, z))
        delta = abs(np.angle(g * np.exp(-1j * 5.0)))
        assert delta == pytest.approx(abs(a) * 5.0 / 125.0, rel=1e-12)
        assert delta <= abs(a) / abs(z)

    def test_deviation_halves_at_double_radius(self, bessel_end):
        # fixed direction: delta scales like 1/|z| along a ray
        zs = 5.0 * np.exp(1j * 0.9) * np.array([1.0, 2.0])
        g = gauss_map(bessel_end, zs)
        deltas = np.abs(np.angle(g * np.exp(-1j * zs.imag)))
        assert deltas[1] == pytest.approx(deltas[0] / 2.0, rel=0.05)

    def test_product_uniformly_bounded(self, bessel_end):
        rep = tangent_direction_check(bessel_end, np.linspace(-40, 40, 30),
                                      np.linspace(-40, 40, 30),
                                      radius_range=(5.0, 40.0))
        assert rep.passed

    def test_requires_normalized(self, bessel_end):
        with pytest.raises(UnsupportedDescriptorError):
            tangent_direction_check(bessel_end.replace(modulus=2.0),
                                    [5.0], [5.0])


class TestRays:
    def test_helicoid_all_pass(self, helicoid_end):
        assert ray_check(helicoid_end, (2.0, 12.0)).passed

    def test_bessel_all_pass(self, bessel_end):
        rep = ray_check(bessel_end, (2.0, 12.0))
        assert rep.passed

    def test_non_unitary_gets_diagnostic(self, bessel_end):
        rep = ray_check(bessel_end.replace(modulus=2.0), (2.0, 12.0))
        names = [c.name for c in rep.checks]
        assert "no_vertical_ray_min_gauss_std" in names
        assert "vertical_ray_planar_deviation" not in names
        assert "no vertical ray expected" in rep.notes
        assert rep.passed

    def test_diagnostic_std_above_floor(self, bessel_end):
        rep = no_vertical_ray_diagnostic(bessel_end.replace(modulus=2.0))
        assert rep.checks[0].measured > 0.01

    def test_helicoid_with_modulus_has_vertical_line(self):
        # g = 2 e^z is constant in magnitude on Re z = -ln 2: the diagnostic
        # must NOT support "no vertical ray" if that line is sampled
        d = EndDescriptor(modulus=2.0, rmin=1e-8)
        rep = no_vertical_ray_diagnostic(d, re_lines=[-math.log(2.0)])
        assert not rep.passed


class TestEmbeddedness:
    def test_helicoid_embedded(self, helicoid_end):
        rep = embeddedness_check(helicoid_end, [2.0, -2.0], (-6.0, 6.0), n=400)
        assert rep.passed

    def test_bessel_embedded_small(self, bessel_end):
        rep = embeddedness_check(bessel_end, [2.0, -2.0], (-15.0, 15.0), n=600)
        assert rep.passed

    def test_crossing_detected_on_synthetic_curve(self):
        # a figure-eight-ish polyline must be flagged by the kernel
        from helend.kernels import polyline_intersections
        t = np.linspace(0, 2 * np.pi, 201)
        pts = np.column_stack([np.sin(2 * t), np.sin(3 * t)])
        assert len(polyline_intersections(pts)) > 0

    def test_opposite_ends_in_opposite_cones(self, bessel_end):
        eps = 0.2
        c = level_curve(bessel_end, 5.0, (-15.0, 15.0), 1201)
        pos_cone = ConeNeighborhood(5.0, eps)
        neg_cone = ConeNeighborhood(5.0 + math.pi, eps)
        far = np.abs(c.ts) > 11.0
        plus = c.ts > 11.0
        minus = c.ts < -11.0
        assert pos_cone.contains(c.pts[plus]).all()
        assert neg_cone.contains(c.pts[minus]).all()
        # the two far ends sit at angles differing by pi within 2*eps
        ang_p = np.angle(c.pts[plus]).mean()
        ang_m = np.angle(c.pts[minus]).mean()
        gap = abs(np.angle(np.exp(1j * (ang_p - ang_m))))
        assert abs(gap - math.pi) <= 2 * eps

    def test_cone_epsilon_validated(self):
        with pytest.raises(ValueError):
            ConeNeighborhood(0.0, 2.0)


class TestHelicoidDistance:
    def test_points_on_surface_have_zero_distance(self, rng):
        for _ in range(12):
            s = rng.uniform(-4, 4)
            b = rng.uniform(-7, 7)
            p = np.array([-math.sinh(s) * math.sin(b),
                          math.sinh(s) * math.cos(b), b])
            assert helicoid_distance(p) < 1e-9

    def test_axis_points_on_surface(self):
        assert helicoid_distance([0.0, 0.0, 0.37]) < 1e-12

    def test_against_local_brute_force(self, rng):
        for _ in range(5):
            s = rng.uniform(-3, 3)
            b = rng.uniform(-6, 6)
            p = np.array([-math.sinh(s) * math.sin(b),
                          math.sinh(s) * math.cos(b), b])
            p = p + rng.normal(size=3) * 0.05
            d = helicoid_distance(p)
            ss = np.linspace(s - 0.4, s + 0.4, 801)
            bs = np.linspace(b - 0.4, b + 0.4, 801)
            S, B = np.meshgrid(ss, bs)
            d2 = ((-np.sinh(S) * np.sin(B) - p[0]) ** 2
                  + (np.sinh(S) * np.cos(B) - p[1]) ** 2 + (B - p[2]) ** 2)
            brute = math.sqrt(d2.min())
            assert d <= brute + 1e-9
            assert d == pytest.approx(brute, abs=2e-4)

    def test_helicoid_end_is_at_zero_distance(self, helicoid_end):
        rep = helicoid_distance_check(helicoid_end, [5.0, 10.0], n_theta=24)
        assert rep.passed
        assert rep.checks[-1].measured < 1e-9

    def test_bessel_distances_decrease(self, bessel_end):
        _, p5 = circle_samples(bessel_end, 5.0, n_theta=24)
        _, p15 = circle_samples(bessel_end, 15.0, n_theta=24)
        d5 = max(helicoid_distance(p) for p in p5)
        d15 = max(helicoid_distance(p) for p in p15)
        assert d15 < d5

    def test_axis_sample_distance_zero(self, bessel_end):
        _, pos = circle_samples(bessel_end, 10.0, n_theta=24)
        assert helicoid_distance(pos[0]) < 1e-9  # starts at z = i*R


class TestLineAsymptote:
    def test_bessel_ratio_bounded_below(self, bessel_end):
        rep = line_asymptote_divergence(bessel_end, 2.0, (5.0, 15.0))
        assert rep.passed
        assert rep.checks[0].measured > 0.1

    def test_helicoid_ratio_vanishes(self, helicoid_end):
        rep = line_asymptote_divergence(helicoid_end, 2.0, (5.0, 15.0))
        assert rep.passed
        assert rep.checks[0].kind == "equality"

    def test_alpha_zero_trivial(self, bessel_end):
        # sine factor vanishes identically at alpha = 0, so the integral is 0
        rep = line_asymptote_divergence(bessel_end, 0.0, (5.0, 15.0))
        assert rep.passed
        assert rep.checks[0].kind == "equality"
        assert rep.checks[0].measured == 0.0

    def test_rejects_multi_coefficient_family(self):
        d = EndDescriptor(coefficients=(-3.67, 0.1))
        with pytest.raises(UnsupportedDescriptorError):
            line_asymptote_divergence(d, 2.0, (5.0, 15.0))


class TestReportPlumbing:
    def test_check_kinds(self):
        assert CheckResult.upper("u", 1.0, 2.0, 0.0).passed
        assert not CheckResult.upper("u", 3.0, 2.0, 0.0).passed
        assert CheckResult.lower("l", 3.0, 2.0).passed
        assert CheckResult.equality("e", 1e-12, 1e-10).passed

    def test_report_serialization(self, helicoid_end):
        rep = ray_check(helicoid_end, (2.0, 6.0))
        d = rep.to_dict()
        assert d["pass"] is True
        assert all({"name", "measured", "bound", "tolerance", "pass"}
                   <= set(c) for c in d["checks"])
