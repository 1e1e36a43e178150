"""
Tests for developing homeomorphisms and extracting their coordinates
"""
import cmath
import math

import numpy as np
import pytest
from pytest import approx

from app.models.coordinates import CoordFn, SHEAR, DIAMOND
from app.models.farey import FareyEdge, INFINITY, ZERO, ROOT_EDGE
from app.models.homeo import MobiusDisk, PiecewiseMobiusHomeo, VertexImageMap
from app.services.coords_service import coords_service
from app.services.develop_service import develop_service, BASE_POINTS, STANDARD_QUAD
from app.services.farey_service import farey_service
from app.services.verify_service import verify_service
from app.utils.errors import (
    DegenerateQuad, DegenerateImage, MonotonicityViolation, NotDifferentiable, NotInP,
)


class TestMobiusDisk:
    def test_hyperbolic_fixes_endpoints(self):
        m = develop_service.hyperbolic(1 + 0j, -1 + 0j, 0.7)
        assert m(1 + 0j) == approx(1)
        assert m(-1 + 0j) == approx(-1)
        assert m.derivative(1 + 0j) == approx(math.exp(0.7), rel=1e-12)
        assert m.derivative(-1 + 0j) == approx(math.exp(-0.7), rel=1e-12)

    def test_compose_inverse(self):
        m = develop_service.hyperbolic(cmath.exp(0.3j), cmath.exp(2.0j), 1.1)
        z = cmath.exp(4.0j)
        assert m.compose(m.inverse())(z) == approx(z, abs=1e-12)
        assert m.inverse().compose(m).is_identity(tol=1e-12)

    def test_three_point_mobius(self):
        src = (1 + 0j, 1j, -1 + 0j)
        dst = tuple(cmath.exp(1j * t) for t in (0.2, 1.5, 4.0))
        m = develop_service.three_point_mobius(src, dst)
        for z, w in zip(src, dst):
            assert m(z) == approx(w, abs=1e-12)

    def test_rotation(self):
        rotation = MobiusDisk(cmath.exp(0.25j), 0j)
        assert rotation(1 + 0j) == approx(cmath.exp(0.5j))

    def test_hyperbolic_close_fixed_points(self):
        x = cmath.exp(1.0j)
        m = develop_service.hyperbolic(x, cmath.exp(1.0j + 1e-6j), 0.9)
        assert m(x) == approx(x, abs=1e-8)
        assert m(cmath.exp(3.0j)) == approx(cmath.exp(1.0j), abs=1e-4)
        with pytest.raises(DegenerateImage):
            develop_service.hyperbolic(x, x + 1e-15, 0.9)

    def test_three_point_mobius_collision(self):
        src = (1 + 0j, 1j, -1 + 0j)
        with pytest.raises(DegenerateImage):
            develop_service.three_point_mobius(src, (1 + 0j, 1 + 1e-15j, -1 + 0j))

    def test_from_matrix_singular(self):
        with pytest.raises(DegenerateImage):
            MobiusDisk.from_matrix(np.array([[1, 1], [1, 1]], dtype=complex))


class TestSingleShear:
    def test_derivatives(self):
        h = develop_service.single_shear_homeo(INFINITY, ZERO, 0.5)
        assert develop_service.derivative(h, INFINITY, '+') == approx(1.0, abs=1e-12)
        assert develop_service.derivative(h, INFINITY, '-') == approx(math.exp(0.5), abs=1e-12)
        assert develop_service.derivative(h, ZERO, '+') == approx(math.exp(-0.5), abs=1e-12)
        assert develop_service.derivative(h, ZERO, '-') == approx(1.0, abs=1e-12)

    def test_fixes_endpoints_and_lower_arc(self):
        h = develop_service.single_shear_homeo(INFINITY, ZERO, 0.5)
        assert h(1 + 0j) == approx(1)
        assert h(-1 + 0j) == approx(-1)
        assert h(-1j) == approx(-1j)
        assert h(1j) != approx(1j)

    def test_not_differentiable(self):
        h = develop_service.single_shear_homeo(INFINITY, ZERO, 0.5)
        with pytest.raises(NotDifferentiable):
            develop_service.differentiable_derivative(h, INFINITY)

    def test_zero_shear_is_identity(self):
        assert develop_service.single_shear_homeo(INFINITY, ZERO, 0) == PiecewiseMobiusHomeo.identity()


class TestSingleDiamond:
    def test_standard_diamond(self):
        h = develop_service.single_diamond_homeo(STANDARD_QUAD, 0.4)
        for z in STANDARD_QUAD:
            assert h(z) == approx(z, abs=1e-12)
        assert develop_service.differentiable_derivative(h, 1 + 0j) == approx(math.exp(0.4), rel=1e-12)
        assert develop_service.differentiable_derivative(h, -1 + 0j) == approx(math.exp(0.4), rel=1e-12)
        assert develop_service.differentiable_derivative(h, 1j) == approx(math.exp(-0.4), rel=1e-12)
        assert develop_service.c1_defect(h) < 1e-12

    def test_diagonal_selection(self):
        h = develop_service.single_diamond_homeo(STANDARD_QUAD, 0.4, diagonal=(1j, -1j))
        assert develop_service.differentiable_derivative(h, 1j) == approx(math.exp(0.4), rel=1e-12)

    def test_degenerate_quad(self):
        with pytest.raises(DegenerateQuad):
            develop_service.single_diamond_homeo((1, -1, 1j, -1j), 0.4)
        with pytest.raises(DegenerateQuad):
            develop_service.single_diamond_homeo((1, 1j, 1j, -1), 0.4)

    def test_monotone(self):
        h = develop_service.single_diamond_homeo(STANDARD_QUAD, 2.0)
        assert develop_service.is_monotone(h, 512)


class TestDevelopDiamond:
    def test_unit_diamond_derivatives(self):
        h = develop_service.develop_diamond(CoordFn.delta(DIAMOND, ROOT_EDGE, 0.5))
        assert develop_service.derivative(h, 1 + 0j) == approx(math.exp(0.5), rel=1e-12)
        assert develop_service.derivative(h, 1j) == approx(math.exp(-0.5), rel=1e-12)

    def test_normalized(self, rng):
        theta = verify_service.random_coords(rng, DIAMOND, 4, 15, float_values=True, exact=True)
        h = develop_service.develop_diamond(theta)
        for z in BASE_POINTS:
            assert h(z) == approx(z, abs=1e-10)

    def test_extract_inverts_develop(self, rng):
        for _ in range(10):
            theta = verify_service.random_coords(rng, DIAMOND, 4, 15, float_values=True, exact=True)
            assert len(theta.support()) == 15
            h = develop_service.develop_diamond(theta)
            assert develop_service.c1_defect(h) < 1e-10
            for e in farey_service.edges_up_to(4):
                assert develop_service.extract_diamond(h, e) == approx(float(theta(e)), abs=1e-9)

    @pytest.mark.parametrize('seed', [0, 7, 99])
    def test_dense_support_stays_c1(self, seed):
        rng = np.random.default_rng(seed)
        edges = farey_service.edges_up_to(4)
        chosen = rng.choice(len(edges), size=15, replace=False)
        theta = CoordFn(DIAMOND, {edges[int(i)]: float(rng.uniform(-1, 1)) for i in chosen})
        h = develop_service.develop_diamond(theta)
        assert develop_service.c1_defect(h) < 1e-10
        assert develop_service.is_monotone(h, 1024)

    def test_matches_literal_composition(self):
        theta = CoordFn(DIAMOND, {ROOT_EDGE: 0.5, FareyEdge.of('0', '1'): -0.3, FareyEdge.of('1', '2'): 0.8})
        developed = develop_service.develop_diamond(theta)
        composed = develop_service.compose_diamond(theta)
        for a in np.linspace(0, 2 * math.pi, 97, endpoint=False):
            z = cmath.exp(1j * a)
            assert developed(z) == approx(composed(z), abs=1e-10)

    def test_zero_theta_is_identity(self):
        assert develop_service.develop_diamond(CoordFn.zero(DIAMOND)) == PiecewiseMobiusHomeo.identity()

    def test_disjoint_quads_commute(self):
        assert verify_service.commutation_defect() < 1e-9

    def test_develop_balanced_shear(self):
        s = coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE, 0.25))
        h = develop_service.develop_coordinates(s)
        assert develop_service.extract_diamond(h, ROOT_EDGE) == approx(0.25, abs=1e-10)
        assert develop_service.extract_shear(h, FareyEdge.of('0', '1')) == approx(0.25, abs=1e-10)

    def test_develop_unbalanced_shear_rejected(self):
        with pytest.raises(NotInP):
            develop_service.develop_coordinates(CoordFn.delta(SHEAR, ROOT_EDGE))


class TestDevelopVertices:
    def test_zero_shear_gives_standard_vertices(self):
        images = develop_service.develop_vertices(CoordFn.zero(SHEAR), 3)
        for v in farey_service.vertices_up_to(4):
            assert images(v) == approx(farey_service.to_disk(v), abs=1e-12)

    def test_extract_shear_inverts(self, rng):
        s = verify_service.random_coords(rng, SHEAR, 3, 8, float_values=True)
        images = develop_service.develop_vertices(s, 4)
        for e in farey_service.edges_up_to(4):
            assert develop_service.extract_shear(images, e) == approx(float(s(e)), abs=1e-9)

    def test_agrees_with_develop_diamond(self):
        theta = CoordFn.delta(DIAMOND, FareyEdge.of('0', '1'), 0.7)
        s = coords_service.phi(theta)
        h = develop_service.develop_diamond(theta)
        images = develop_service.develop_vertices(s, 3)
        for v in farey_service.vertices_up_to(3):
            assert images(v) == approx(h(farey_service.to_disk(v)), abs=1e-10)

    def test_to_dict(self):
        images = develop_service.develop_vertices(CoordFn.zero(SHEAR), 1)
        data = images.to_dict()
        assert data['maxGen'] == 1
        assert {item['vertex'] for item in data['images']} >= {'1/0', '0/1', '-1/1'}


class TestExtraction:
    def test_extract_shear_rejects_reordered_images(self):
        a, b, c, d = farey_service.farey_quad(ROOT_EDGE).vertices
        point = farey_service.to_disk
        images = VertexImageMap(images={a: point(a), b: point(c), c: point(b), d: point(d)}, max_gen=0)
        with pytest.raises(MonotonicityViolation):
            develop_service.extract_shear(images, ROOT_EDGE)

    def test_identity_has_zero_coordinates(self):
        h = PiecewiseMobiusHomeo.identity()
        for e in farey_service.edges_up_to(3):
            assert develop_service.extract_shear(h, e) == approx(0, abs=1e-12)
            assert develop_service.extract_diamond(h, e) == approx(0, abs=1e-12)

    def test_extract_returns_coordfn(self):
        h = develop_service.develop_diamond(CoordFn.delta(DIAMOND, ROOT_EDGE, 0.5))
        f = develop_service.extract(h, DIAMOND, 2)
        assert f.kind == DIAMOND
        assert f(ROOT_EDGE) == approx(0.5, abs=1e-9)

    def test_decoration_of_identity_is_ford(self):
        decoration = develop_service.decoration(PiecewiseMobiusHomeo.identity(), 3)
        for v, size in decoration.sizes.items():
            assert size == approx(float(farey_service.ford_diameter(v)), rel=1e-12)

    def test_lambda_lengths_agree(self):
        h = develop_service.develop_diamond(CoordFn.delta(DIAMOND, ROOT_EDGE, 0.5))
        decoration = develop_service.decoration(h, 3)
        for e in farey_service.edges_up_to(2):
            assert develop_service.log_lambda_from_decoration(decoration, e) == approx(
                develop_service.log_lambda(h, e), abs=1e-9)

    def test_decoration_needs_normalized_map(self):
        with pytest.raises(ValueError):
            develop_service.decoration(develop_service.hoelder_diffeo(0.3), 2)


class TestCircleDiffeo:
    def test_hoelder_derivative(self):
        h = develop_service.hoelder_diffeo(0.3)
        z = cmath.exp(0.5j)
        assert h.derivative(z) == approx(1 + 0.3 * math.cos(0.5))

    def test_numeric_derivative(self):
        h = develop_service.hoelder_diffeo(0.3)
        numeric = type(h)(h.angle_map)
        assert numeric.derivative(cmath.exp(1.2j)) == approx(1 + 0.3 * math.cos(1.2), rel=1e-8)

    def test_diamond_sequence_converges(self):
        sums = develop_service.diamond_l2_sequence(develop_service.hoelder_diffeo(0.3), 10)
        assert all(b >= a for a, b in zip(sums, sums[1:]))
        assert (sums[10] - sums[8]) / sums[8] < 0.05

    def test_farey_bound(self):
        h = develop_service.hoelder_diffeo(0.3)
        assert develop_service.farey_bound_constant(h, 8) <= 1.05 * develop_service.farey_bound_constant(h, 6)

    def test_from_samples_of_identity(self):
        angles = np.arange(32) * (2 * math.pi / 32)
        h = develop_service.from_samples(angles, angles)
        assert h(cmath.exp(0.77j)) == approx(cmath.exp(0.77j), abs=1e-12)
        assert h.derivative(cmath.exp(0.77j)) == approx(1.0, abs=1e-12)

    def test_from_samples_of_rotation_derivative(self):
        angles = np.arange(64) * (2 * math.pi / 64)
        h = develop_service.from_samples(angles, angles + 0.5 + 0.1 * np.sin(angles))
        assert h.derivative(cmath.exp(1.0j)) == approx(1 + 0.1 * math.cos(1.0), abs=1e-4)


class TestSampling:
    def test_identity_samples(self):
        angles_in, angles_out = develop_service.sample(PiecewiseMobiusHomeo.identity(), 16)
        assert np.allclose(angles_in, angles_out, atol=1e-12)

    def test_samples_increase(self):
        h = develop_service.develop_diamond(CoordFn.delta(DIAMOND, ROOT_EDGE, 1.5))
        _, angles_out = develop_service.sample(h, 128)
        assert np.all(np.diff(angles_out) > 0)

    def test_breakpoint_dump(self):
        h = develop_service.develop_diamond(CoordFn.delta(DIAMOND, ROOT_EDGE, 0.5))
        dump = develop_service.breakpoint_dump(h)
        assert {item['vertex'] for item in dump} == {'0/1', '1/1', '1/0', '-1/1'}
        assert all(set(item) == {'vertex', 'alpha', 'beta'} for item in dump)