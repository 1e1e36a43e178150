"""
Tests for the strip stretch maps and the quasiconformal extension
"""
import cmath
import math
from fractions import Fraction

import pytest
from pytest import approx

from app.models.coordinates import CoordFn, SHEAR, DIAMOND
from app.models.farey import INFINITY, ZERO, ROOT_EDGE
from app.models.qc import StripGeom, CellAtlas
from app.services.coords_service import coords_service
from app.services.qcext_service import qcext_service, boundary_u
from app.utils.errors import NotInP


def unit_diamond_shear(t):
    return coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE, Fraction(t)))


class TestStripGeom:
    def test_conformal_strip_constants(self):
        geom = StripGeom(1, 1)
        assert geom.r == approx(1)
        assert geom.ell == approx(math.log(3))
        assert geom.K == approx(math.sqrt(3))
        assert geom.kappa == approx(0.5)
        assert geom.is_conformal

    @pytest.mark.parametrize('x', [-0.5, -0.2, 0.0, 0.3, 0.5])
    def test_conformal_strip_is_the_boundary_arc(self, x):
        alpha, beta, da, db = qcext_service.alpha_beta(1, 1, x)
        assert alpha == approx(x, abs=1e-12)
        assert beta == approx(math.sqrt(1 - x * x), abs=1e-12)
        assert da == approx(1, abs=1e-12)

    @pytest.mark.parametrize('x', [-0.4, 0.0, 0.25])
    def test_conformal_strip_has_zero_mu(self, x):
        assert abs(qcext_service.strip_mu(1, 1, x)) < 1e-12

    def test_gaps_must_be_positive(self):
        with pytest.raises(ValueError):
            StripGeom(0, 1)
        with pytest.raises(ValueError):
            StripGeom(1, -2)

    def test_endpoints_match_the_gaps(self):
        geom = StripGeom(0.5, 2.0)
        left, _ = geom.alpha_beta(-0.5)
        right, _ = geom.alpha_beta(0.5)
        assert right - left > 0

    def test_derivatives_match_finite_differences(self):
        geom = StripGeom(0.7, 1.6)
        step = 1e-6
        for x in (-0.3, 0.1, 0.4):
            (a1, b1), (a2, b2) = geom.alpha_beta(x - step), geom.alpha_beta(x + step)
            da, db = geom.derivatives(x)
            assert da == approx((a2 - a1) / (2 * step), rel=1e-6)
            assert db == approx((b2 - b1) / (2 * step), rel=1e-5, abs=1e-8)


class TestStripNorms:
    def test_boundary_u(self):
        assert boundary_u(0.0) == approx(1)
        assert boundary_u(0.5) == approx(math.sqrt(0.75))
        assert boundary_u(3.2) == approx(math.sqrt(1 - 0.04))

    def test_conformal_strip_norms_vanish(self):
        assert qcext_service.strip_l2(1.0, 1.0) == 0.0
        assert qcext_service.strip_sup(1.0, 1.0) == 0.0

    def test_sup_below_one(self):
        assert 0 < qcext_service.strip_sup(0.5, 2.0) < 1

    def test_l2_positive(self):
        assert qcext_service.strip_l2(0.5, 2.0) > 0

    @pytest.mark.slow
    def test_l2_matches_two_dimensional_quadrature(self):
        assert qcext_service.strip_l2(0.5, 2.0) == approx(qcext_service.strip_l2_2d(0.5, 2.0), rel=1e-6)


class TestCells:
    def test_atlas_of_unit_diamond_at_infinity(self):
        atlas = qcext_service.cell_atlas(unit_diamond_shear(1), INFINITY)
        assert atlas.gap(-1) == approx(math.e)
        assert atlas.gap(0) == approx(math.e)
        assert atlas.gap(1) == 1.0
        assert atlas.gap(7) == 1.0
        assert atlas.strip_indices() == [-1, 0, 1, 2]
        assert atlas.position(2) == approx(math.e + 1)

    def test_empty_atlas(self):
        atlas = CellAtlas(vertex=ZERO)
        assert atlas.strip_indices() == []
        assert atlas.position(-3) == -3
        assert qcext_service.cell_l2(atlas) == 0.0
        assert qcext_service.cell_sup(atlas) == 0.0

    def test_locate_cell(self):
        assert qcext_service.locate_cell(0.3 + 2j) == INFINITY
        assert qcext_service.locate_cell(0.1 + 0.5j) == ZERO


class TestExtensionEstimate:
    def test_identity(self):
        estimate = qcext_service.extension_l2(CoordFn.zero(SHEAR), 4)
        assert estimate.sup_mu == 0
        assert estimate.l2_hyp == 0
        assert estimate.cells == []

    def test_unbalanced_shear_rejected(self):
        with pytest.raises(NotInP):
            qcext_service.extension_l2(CoordFn.delta(SHEAR, ROOT_EDGE), 4)

    def test_generation_cutoff(self):
        s = unit_diamond_shear(Fraction(1, 2))
        assert len(qcext_service.extension_l2(s, 0).cells) == 2
        assert len(qcext_service.extension_l2(s, 1).cells) == 4

    @pytest.mark.parametrize('t', [0.25, 0.5, 1.0])
    def test_sup_below_one(self, t):
        estimate = qcext_service.extension_l2(unit_diamond_shear(t), 4)
        assert 0 < estimate.sup_mu < 1
        assert estimate.l2_hyp > 0

    def test_stable_in_max_gen(self):
        s = unit_diamond_shear(Fraction(1, 2))
        shallow = qcext_service.extension_l2(s, 2).l2_hyp
        deep = qcext_service.extension_l2(s, 4).l2_hyp
        assert deep == approx(shallow, abs=1e-8)

    def test_quadratic_scaling_for_small_shears(self):
        small = qcext_service.extension_l2(unit_diamond_shear(Fraction(1, 8)), 4).l2_hyp
        larger = qcext_service.extension_l2(unit_diamond_shear(Fraction(1, 4)), 4).l2_hyp
        assert (larger / 0.25 ** 2) / (small / 0.125 ** 2) == approx(1, abs=0.1)

    def test_report(self):
        report = qcext_service.qc_report(unit_diamond_shear(Fraction(1, 2)), 3)
        assert report['success']
        assert report['maxGen'] == 3
        assert {'sup_mu', 'l2_hyp', 'cells'} <= set(report)


class TestExtensionMap:
    def test_zero_shear_is_identity(self):
        f = qcext_service.extension(CoordFn.zero(SHEAR))
        for z in (0.3 + 0.2j, -0.5j, 0.6 * cmath.exp(2.0j)):
            assert f(z) == approx(z, abs=1e-9)

    def test_grid_stays_in_disk(self):
        points = qcext_service.polar_grid(4)
        assert len(points) == 16
        values = qcext_service.extension_grid(unit_diamond_shear(Fraction(1, 2)), points)
        assert all(abs(w) < 1 for w in values)

    def test_unbalanced_shear_rejected(self):
        with pytest.raises(NotInP):
            qcext_service.extension(CoordFn.delta(SHEAR, ROOT_EDGE))


class TestCounterexample:
    def test_phi_is_continuous(self):
        phi = qcext_service.counterexample_phi
        assert phi(2.0) == approx(phi(2.0 + 1e-12))
        assert phi(-2.0) == approx(phi(-2.0 - 1e-12))

    def test_shears(self):
        shears = qcext_service.counterexample_shears(2000)
        assert shears[0] == approx(0, abs=1e-15)
        assert all(s > 0 for s in shears[1:])
        n = 2000
        assert shears[-1] * n * math.log(n) == approx(1, abs=0.2)

    def test_map_is_c1(self):
        h = qcext_service.counterexample_map()
        assert h(1 + 0j) == approx(1)
        z = cmath.exp(2.0j)
        assert h.derivative(z) > 0
