"""
SVG rendering service for the Farey tessellation and its images
"""
import cmath
import logging
import math

import numpy as np

from app.models.homeo import VertexImageMap
from app.models.scene import SvgScene
from app.services.develop_service import develop_service, three_point_matrix
from app.services.farey_service import farey_service

SEGMENT_MAX_ANGLE = math.pi / 4
SQRT3_2 = math.sqrt(3.0) / 2


def circumcenter(z1, z2, z3):
    """Center of the circle through three points, None if they are collinear"""
    d = 2 * (z1.real * (z2.imag - z3.imag) + z2.real * (z3.imag - z1.imag) + z3.real * (z1.imag - z2.imag))
    if abs(d) < 1e-14:
        return None
    a, b, c = abs(z1) ** 2, abs(z2) ** 2, abs(z3) ** 2
    x = (a * (z2.imag - z3.imag) + b * (z3.imag - z1.imag) + c * (z1.imag - z2.imag)) / d
    y = (a * (z3.real - z2.real) + b * (z1.real - z3.real) + c * (z2.real - z1.real)) / d
    return complex(x, y)


def arc_to_bezier3(center, radius, eta, eta_delta):
    """Cubic pieces of a circular arc, each spanning at most pi/4"""
    count = max(1, math.ceil(abs(eta_delta) / SEGMENT_MAX_ANGLE))
    etas = np.linspace(eta, eta + eta_delta, count + 1)
    segments = []
    for eta1, eta2 in zip(etas, etas[1:]):
        sq = math.sqrt(4 + 3 * math.tan((eta2 - eta1) / 2) ** 2)
        alpha = math.sin(eta2 - eta1) * (sq - 1) / 3
        p0 = center + radius * cmath.exp(1j * eta1)
        p3 = center + radius * cmath.exp(1j * eta2)
        p1 = p0 + alpha * radius * 1j * cmath.exp(1j * eta1)
        p2 = p3 - alpha * radius * 1j * cmath.exp(1j * eta2)
        segments.append((p0, p1, p2, p3))
    return segments


def short_arc(center, z1, z2):
    """Cubic pieces of the shorter arc from z1 to z2 on the circle around center"""
    eta1 = cmath.phase(z1 - center)
    delta = (cmath.phase(z2 - center) - eta1 + math.pi) % (2 * math.pi) - math.pi
    return arc_to_bezier3(center, abs(z1 - center), eta1, delta)


class SvgService:
    """Service for rendering tessellations as SVG"""

    def geodesic(self, z1, z2):
        """Cubic path of the geodesic between two ideal points"""
        denominator = 1 + (z1 * z2.conjugate()).real
        if abs(denominator) < 1e-9:
            return [(z1, z2)]
        center = (z1 + z2) / denominator
        return short_arc(center, z1, z2)

    def segment(self, z1, z2):
        """Cubic path of the geodesic segment between two interior points"""
        if abs(z1) < 1e-12:
            return [(z1, z2)]
        center = circumcenter(z1, z2, 1 / z1.conjugate())
        if center is None:
            return [(z1, z2)]
        return short_arc(center, z1, z2)

    def ideal_center(self, a, b, c):
        """Hyperbolic center of the ideal triangle (a, b, c) on the circle"""
        m = np.linalg.inv(three_point_matrix(a, b, c))
        for w in (0.5 + 1j * SQRT3_2, 0.5 - 1j * SQRT3_2):
            z = (m[0, 0] * w + m[0, 1]) / (m[1, 0] * w + m[1, 1])
            if abs(z) < 1:
                return z
        raise ValueError('ideal triangle has no interior center')

    def circle_through(self, z1, z2, z3):
        center = circumcenter(z1, z2, z3)
        return center, abs(z1 - center)

    def horocycle(self, x, size):
        """Disk circle of the horocycle at x (diameter size) or at infinity (height size)"""
        if x == math.inf:
            points = [complex(t, size) for t in (-1.0, 0.0, 1.0)]
        else:
            r = size / 2
            points = [complex(x, size), complex(x + r, r), complex(x - r, r)]
        return self.circle_through(*(farey_service.cayley_inv(w) for w in points))

    def _image(self, h, v):
        if h is None:
            return farey_service.to_disk(v)
        if isinstance(h, VertexImageMap):
            return h(v)
        return h(farey_service.to_disk(v))

    def tessellation_scene(self, max_gen, h=None, ford=False, dual=False):
        """
        Scene of the Farey tessellation, or of its image under h, up to max_gen

        Args:
            max_gen: deepest edge generation drawn
            h: None, a homeomorphism of the circle, or a VertexImageMap
            ford: draw the horocycles of the section sigma (needs a normalized h)
            dual: draw the dual tree on edges of generation < max_gen

        Returns:
            SvgScene
        """
        scene = SvgScene()
        edges = farey_service.edges_up_to(max_gen)
        for e in edges:
            scene.add_path('edges', self.geodesic(self._image(h, e.a), self._image(h, e.b)))
        if ford:
            self._add_ford(scene, max_gen, h)
        if dual:
            for e in farey_service.edges_up_to(max_gen - 1):
                a, b, c, d = (self._image(h, v) for v in farey_service.farey_quad(e).vertices)
                scene.add_path('dual', self.segment(self.ideal_center(a, b, c), self.ideal_center(c, d, a)))
        logging.info(f"🔺 Scene with {len(scene.edges)} edges, {len(scene.ford)} horocycles, {len(scene.dual)} dual edges")
        return scene

    def _add_ford(self, scene, max_gen, h):
        if h is None:
            for v in farey_service.vertices_up_to(max_gen):
                x = math.inf if v.is_infinite else float(v.to_fraction())
                center, radius = self.horocycle(x, float(farey_service.ford_diameter(v)))
                scene.add_circle('ford', center, radius)
            return
        decoration = develop_service.decoration(h, max_gen)
        for v in sorted(decoration.sizes):
            center, radius = self.horocycle(decoration.points[v], decoration.sizes[v])
            scene.add_circle('ford', center, radius)

    def render_tessellation(self, max_gen, h=None, ford=False, dual=False):
        return self.tessellation_scene(max_gen, h, ford, dual).render()


# Singleton instance
svg_service = SvgService()
