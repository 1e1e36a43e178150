"""
Developing service: homeomorphisms from coordinates and coordinates from homeomorphisms
"""
import cmath
import logging
import math

import numpy as np
from scipy.interpolate import CubicSpline

from app.models.coordinates import CoordFn, SHEAR, DIAMOND
from app.models.farey import Rational, INFINITY, ZERO, MINUS_ONE
from app.models.homeo import (
    MobiusDisk, PiecewiseMobiusHomeo, CircleDiffeo, VertexImageMap, Decoration,
    IDENTITY, TWO_PI, ANGLE_TOL, angle, angular_distance,
)
from app.services.coords_service import coords_service
from app.services.farey_service import farey_service
from app.utils.errors import (
    DegenerateQuad, DegenerateImage, MonotonicityViolation, NotDifferentiable, NotInP,
)

# Base triangle (infinity, -1, 0) sits at (1, i, -1) and is fixed by normalization.
BASE_POINTS = (1 + 0j, 1j, -1 + 0j)
STANDARD_QUAD = (1 + 0j, 1j, -1 + 0j, -1j)
COLLISION_TOL = 1e-13
DIFFERENTIABILITY_TOL = 1e-9


def three_point_matrix(p1, p2, p3):
    """Matrix sending p1, p2, p3 to 0, 1, infinity"""
    return np.array([[p2 - p3, -p1 * (p2 - p3)],
                     [p2 - p1, -p3 * (p2 - p1)]], dtype=complex)


def three_point_det(p1, p2, p3):
    """Determinant of three_point_matrix, as a product of differences"""
    return (p2 - p3) * (p2 - p1) * (p1 - p3)


class DevelopService:
    """Service for developing and extracting circle homeomorphisms"""

    # ------------------------------------------------------------------
    # Building blocks
    # ------------------------------------------------------------------

    def point(self, v):
        """Disk point of a Rational vertex, numeric points pass through"""
        if isinstance(v, Rational):
            return farey_service.to_disk(v)
        return complex(v)

    def hyperbolic(self, x, y, t):
        """
        Disk automorphism fixing x and y with derivative e^t at x

        Closed form of (M(z) - x)/(M(z) - y) = e^t (z - x)/(z - y):
        alpha = cosh(t/2) - sinh(t/2)(x + y)/(x - y), beta = 2 sinh(t/2) xy/(x - y).
        """
        gap = x - y
        if abs(gap) < COLLISION_TOL:
            raise DegenerateImage(f'fixed points {x} and {y} of a shear collide')
        c, s = math.cosh(t / 2), math.sinh(t / 2)
        return MobiusDisk(complex(c - s * (x + y) / gap), complex(2 * s * x * y / gap))

    def single_shear_homeo(self, a, b, t, labels=(None, None)):
        """
        Shear by t along the geodesic (a, b)

        Args:
            a, b: endpoints (disk points or Rationals), the arc I(a, b) runs ccw from a to b
            t: shear

        Returns:
            PiecewiseMobiusHomeo: hyperbolic on I(a, b), identity on I(b, a)
        """
        za, zb = self.point(a), self.point(b)
        if isinstance(a, Rational):
            labels = (a, b)
        if t == 0:
            return PiecewiseMobiusHomeo.identity()
        pieces = [((za, labels[0]), self.hyperbolic(za, zb, t)), ((zb, labels[1]), IDENTITY)]
        pieces.sort(key=lambda item: angle(item[0][0]))
        return PiecewiseMobiusHomeo.build([p for p, _ in pieces], [m for _, m in pieces])

    def check_quad(self, points):
        """Raise DegenerateQuad unless the four points are distinct and ccw"""
        base = angle(points[0])
        offsets = [(angle(z) - base) % TWO_PI for z in points[1:]]
        if any(o < ANGLE_TOL for o in offsets) or not offsets[0] < offsets[1] < offsets[2]:
            raise DegenerateQuad('quad vertices must be distinct and in ccw order')

    def single_diamond_homeo(self, quad, t, diagonal=None, labels=None):
        """
        Diamond shear by t on a quad with diagonal (a, c)

        Args:
            quad: four circle points ccw
            t: diamond shear
            diagonal: pair of opposite quad vertices, defaults to (quad[0], quad[2])
            labels: optional Rational labels of the quad vertices

        Returns:
            PiecewiseMobiusHomeo: C^1, fixing the four vertices, derivative e^t
            at the diagonal endpoints and e^-t at the other two
        """
        points = [self.point(v) for v in quad]
        labels = list(labels) if labels else [v if isinstance(v, Rational) else None for v in quad]
        self.check_quad(points)
        if diagonal is not None:
            start = self._diagonal_start(points, [self.point(v) for v in diagonal])
            points = points[start:] + points[:start]
            labels = labels[start:] + labels[:start]
        if t == 0:
            return PiecewiseMobiusHomeo.identity()
        pieces = []
        for i in range(4):
            sign = 1 if i % 2 == 0 else -1
            x, y = points[i], points[(i + 1) % 4]
            pieces.append(((x, labels[i]), self.hyperbolic(x, y, sign * t)))
        pieces.sort(key=lambda item: angle(item[0][0]))
        return PiecewiseMobiusHomeo.build([p for p, _ in pieces], [m for _, m in pieces])

    def _diagonal_start(self, points, diagonal):
        for i, z in enumerate(points):
            if abs(z - diagonal[0]) < COLLISION_TOL and abs(points[(i + 2) % 4] - diagonal[1]) < COLLISION_TOL:
                return i
        raise DegenerateQuad('diagonal endpoints must be opposite quad vertices')

    # ------------------------------------------------------------------
    # Composition and normalization
    # ------------------------------------------------------------------

    def compose(self, outer, inner, preimages=None):
        """
        outer after inner

        Args:
            outer, inner: PiecewiseMobiusHomeo
            preimages: known (point, label) preimages under inner of the outer breakpoints

        Returns:
            PiecewiseMobiusHomeo
        """
        if preimages is None:
            inverse = inner.inverse()
            preimages = [(inverse(z), label) for z, label in outer.breakpoints()]
        candidates = inner.breakpoints() + list(preimages)
        candidates.sort(key=lambda item: angle(item[0]))
        merged = []
        for z, label in candidates:
            if merged and angular_distance(angle(merged[-1][0]), angle(z)) < ANGLE_TOL:
                if merged[-1][1] is None and label is not None:
                    merged[-1] = (merged[-1][0], label)
                continue
            merged.append((z, label))
        if len(merged) > 1 and angular_distance(angle(merged[0][0]), angle(merged[-1][0])) < ANGLE_TOL:
            merged.pop()
        if not merged:
            return PiecewiseMobiusHomeo(arcs=(outer.arcs[0].compose(inner.arcs[0]),))
        arcs = []
        angles = [angle(z) for z, _ in merged]
        for i, start in enumerate(angles):
            end = angles[(i + 1) % len(angles)]
            if end <= start:
                end += TWO_PI
            mid = (start + end) / 2
            inner_arc = inner.arc_at(mid % TWO_PI)
            image = inner_arc(cmath.exp(1j * mid))
            arcs.append(outer.arc_at(angle(image)).compose(inner_arc))
        return PiecewiseMobiusHomeo.build(merged, arcs)

    def check_distinct(self, points):
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if abs(points[i] - points[j]) < COLLISION_TOL:
                    raise DegenerateImage(f'points {points[i]} and {points[j]} collide')

    def three_point_mobius(self, src, dst):
        """Disk automorphism sending the points src to dst"""
        self.check_distinct(src)
        self.check_distinct(dst)
        t = three_point_matrix(*dst)
        adjugate = np.array([[t[1, 1], -t[0, 1]], [-t[1, 0], t[0, 0]]])
        det = three_point_det(*src) * three_point_det(*dst)
        return MobiusDisk.from_matrix(adjugate @ three_point_matrix(*src), det=det)

    def normalize(self, h):
        """Post-compose h with the Mobius map restoring h(1), h(i), h(-1) = 1, i, -1"""
        images = tuple(h(z) for z in BASE_POINTS)
        return h.post_compose(self.three_point_mobius(images, BASE_POINTS))

    def evaluate(self, h, z):
        return h(self.point(z))

    def derivative(self, h, v, side='+'):
        """One-sided angular derivative; '+' approaches v ccw, '-' cw"""
        return h.derivative(self.point(v), side)

    def differentiable_derivative(self, h, v):
        """Derivative at v, raising NotDifferentiable if the two sides disagree"""
        plus = self.derivative(h, v, '+')
        minus = self.derivative(h, v, '-')
        if abs(math.log(plus) - math.log(minus)) > DIFFERENTIABILITY_TOL:
            raise NotDifferentiable(f'one-sided derivatives {plus} and {minus} disagree at {v}')
        return (plus + minus) / 2

    # ------------------------------------------------------------------
    # Developing
    # ------------------------------------------------------------------

    def develop_diamond(self, theta):
        """
        Piecewise Mobius homeomorphism with the given diamond shears

        Each arc between consecutive quad vertices of the support is the Mobius
        map through three developed vertex images, so no factor is ever built
        on a numerically composed quad.

        Args:
            theta: finite diamond CoordFn

        Returns:
            PiecewiseMobiusHomeo: normalized to fix 1, i, -1
        """
        support = [e for e in theta.support() if float(theta(e)) != 0]
        if not support:
            return PiecewiseMobiusHomeo.identity()
        depth = max(farey_service.generation(e) for e in support) + 2
        images = self.develop_vertices(coords_service.phi(theta), depth)
        corners = {v for e in support for v in farey_service.farey_quad(e).vertices}
        corners = sorted(corners, key=farey_service.angle_of)
        pool = sorted(images.images, key=farey_service.angle_of)
        pool_angles = np.array([farey_service.angle_of(v) for v in pool])
        pool_points = np.array([self.point(v) for v in pool])
        pool_images = np.array([images(v) for v in pool])
        arcs = []
        for i, p in enumerate(corners):
            q = corners[(i + 1) % len(corners)]
            r = self._interior_vertex(p, q, images, pool, pool_angles, pool_points, pool_images)
            src = (self.point(p), self.point(r), self.point(q))
            dst = (images(p), images(r), images(q))
            arcs.append(self.three_point_mobius(src, dst))
        h = PiecewiseMobiusHomeo.build([(self.point(v), v) for v in corners], arcs)
        logging.info(f"🌀 Developed {len(support)} diamond shears into {len(corners)} breakpoints")
        return h

    def _interior_vertex(self, p, q, images, pool, pool_angles, pool_points, pool_images):
        """Developed vertex strictly inside the ccw arc (p, q), best separated from both ends"""
        start = farey_service.angle_of(p)
        span = (farey_service.angle_of(q) - start) % TWO_PI
        offsets = (pool_angles - start) % TWO_PI
        inside = np.flatnonzero((offsets > ANGLE_TOL) & (offsets < span - ANGLE_TOL))
        if inside.size == 0:
            raise DegenerateImage(f'no developed vertex between {p} and {q}')
        zp, zq = self.point(p), self.point(q)
        wp, wq = images(p), images(q)
        separation = np.minimum.reduce([
            np.abs(pool_points[inside] - zp), np.abs(pool_points[inside] - zq),
            np.abs(pool_images[inside] - wp), np.abs(pool_images[inside] - wq),
        ])
        return pool[int(inside[np.argmax(separation)])]

    def compose_diamond(self, theta, order=None):
        """
        Literal composition of single diamond shears, one per supported edge

        Args:
            theta: finite diamond CoordFn
            order: optional edge order, defaults to (generation, key)

        Returns:
            PiecewiseMobiusHomeo: normalized to fix 1, i, -1
        """
        if order is None:
            order = sorted(theta.support(), key=lambda e: (farey_service.generation(e), e.sort_key()))
        h = PiecewiseMobiusHomeo.identity()
        for e in order:
            t = float(theta(e))
            if t == 0:
                continue
            vertices = farey_service.farey_quad(e).vertices
            images = [h(self.point(v)) for v in vertices]
            factor = self.single_diamond_homeo(images, t, labels=vertices)
            h = self.normalize(self.compose(factor, h, preimages=[(self.point(v), v) for v in vertices]))
        return h

    def _solve_apex(self, a, b, c, k):
        """Point d with cr(a, b, c, d) = k"""
        d = ((b - a) * c - k * (c - b) * a) / ((b - a) - k * (c - b))
        return d / abs(d)

    def _check_between(self, start, z, end, vertex):
        span = (angle(end) - angle(start)) % TWO_PI
        offset = (angle(z) - angle(start)) % TWO_PI
        if not (ANGLE_TOL < offset < span - ANGLE_TOL):
            raise MonotonicityViolation(f'image of {vertex} leaves its arc')

    def develop_vertices(self, s, max_gen):
        """
        Vertex images of the homeomorphism with shears s, by cross-ratio steps

        Args:
            s: shear CoordFn, evaluated on edges of generation <= max_gen
            max_gen: deepest edge generation used

        Returns:
            VertexImageMap: images of all vertices of generation <= max_gen + 1
        """
        images = {INFINITY: BASE_POINTS[0], MINUS_ONE: BASE_POINTS[1], ZERO: BASE_POINTS[2]}
        for e in farey_service.edges_up_to(max_gen):
            a, b, c, d = farey_service.farey_quad(e).vertices
            k = math.exp(float(s(e)))
            if d not in images:
                za, zb, zc = images[a], images[b], images[c]
                zd = self._solve_apex(za, zb, zc, k)
                self._check_between(zc, zd, za, d)
                images[d] = zd
            elif b not in images:
                zc, zd, za = images[c], images[d], images[a]
                zb = self._solve_apex(zc, zd, za, k)
                self._check_between(za, zb, zc, b)
                images[b] = zb
        logging.info(f"🌀 Developed {len(images)} vertex images up to generation {max_gen}")
        return VertexImageMap(images=images, max_gen=max_gen)

    def develop_coordinates(self, f):
        """Homeomorphism of a finite coordinate function of either kind"""
        if f.kind == DIAMOND:
            return self.develop_diamond(f)
        if not coords_service.check_finite_balanced(f):
            raise NotInP('shear data must be finite balanced to develop a homeomorphism')
        return self.develop_diamond(coords_service.psi(f).materialize())

    # ------------------------------------------------------------------
    # Extraction
    # ------------------------------------------------------------------

    def image(self, h, v):
        if isinstance(h, VertexImageMap):
            return h(v)
        return h(self.point(v))

    def extract_shear(self, h, e):
        """log cr(h(Q_e)) of the image quad"""
        points = [self.image(h, v) for v in farey_service.farey_quad(e).vertices]
        for i in range(4):
            for j in range(i + 1, 4):
                if abs(points[i] - points[j]) < COLLISION_TOL:
                    raise DegenerateImage(f'image points of the quad on {e} collide')
        za, zb, zc, zd = points
        cr = (zb - za) * (zd - zc) / ((zc - zb) * (zd - za))
        if cr.real <= 0:
            raise MonotonicityViolation(f'image quad of {e} is not in ccw order')
        return math.log(cr.real)

    def extract_diamond(self, h, e):
        """
        Diamond shear of h at e = (a, b)

        Returns:
            float: 1/2 log h'(a) h'(b) - log(|h(a) - h(b)| / |a - b|)
        """
        za, zb = self.point(e.a), self.point(e.b)
        if isinstance(h, CircleDiffeo):
            da, db = h.derivative(za), h.derivative(zb)
            chord = h.chord(za, zb)
        else:
            da = self.differentiable_derivative(h, za)
            db = self.differentiable_derivative(h, zb)
            chord = abs(h(za) - h(zb))
        if chord < COLLISION_TOL:
            raise DegenerateImage(f'images of the endpoints of {e} collide')
        base = 2.0 * abs(math.sin(angular_distance(angle(za), angle(zb)) / 2))
        return 0.5 * math.log(da * db) - math.log(chord / base)

    def extract(self, h, kind, max_gen):
        """Shear or diamond coordinates of h on edges of generation <= max_gen"""
        extractor = self.extract_shear if kind == SHEAR else self.extract_diamond
        entries = {e: extractor(h, e) for e in farey_service.edges_up_to(max_gen)}
        return CoordFn(kind, {e: v for e, v in entries.items() if v != 0.0})

    def log_lambda(self, h, e):
        return -self.extract_diamond(h, e)

    def decoration(self, h, max_gen):
        """
        Horocycles of the section sigma pushed by a normalized homeomorphism

        Returns:
            Decoration: diameter phi'(p/q)/q^2 at finite vertices, height
            1/h'(1) at infinity, with phi = h read on the real line
        """
        for z in BASE_POINTS:
            if abs(h(z) - z) > 1e-9:
                raise ValueError('decoration needs a homeomorphism fixing 1, i, -1')
        decoration = Decoration()
        for v in farey_service.vertices_up_to(max_gen):
            z = self.point(v)
            if isinstance(h, CircleDiffeo):
                slope = h.derivative(z)
            else:
                slope = self.differentiable_derivative(h, z)
            if v.is_infinite:
                decoration.points[v] = math.inf
                decoration.sizes[v] = 1.0 / slope
                continue
            x = float(v.to_fraction())
            image = farey_service.cayley(h(z)).real
            phi_prime = slope * (1 + image * image) / (1 + x * x)
            decoration.points[v] = image
            decoration.sizes[v] = phi_prime / (v.q * v.q)
        return decoration

    def log_lambda_from_decoration(self, decoration, e):
        """Signed lambda-length log |x - y| - 1/2 log(d_x d_y) of the horocycles on e"""
        a, b = e.a, e.b
        if b.is_infinite:
            return 0.5 * math.log(decoration.sizes[b]) - 0.5 * math.log(decoration.sizes[a])
        x, y = decoration.points[a], decoration.points[b]
        return math.log(abs(x - y)) - 0.5 * math.log(decoration.sizes[a] * decoration.sizes[b])

    # ------------------------------------------------------------------
    # Diagnostics
    # ------------------------------------------------------------------

    def c1_defect(self, h):
        """Largest |log h'(v+) - log h'(v-)| over the breakpoints"""
        worst = 0.0
        for z in h.points:
            worst = max(worst, abs(math.log(h.derivative(z, '+')) - math.log(h.derivative(z, '-'))))
        return worst

    def sample(self, h, n):
        """angle_in, unwrapped angle_out on a uniform grid of n points"""
        angles_in = np.arange(n) * (TWO_PI / n)
        values = np.array([h(cmath.exp(1j * t)) for t in angles_in])
        angles_out = np.unwrap(np.angle(values))
        angles_out = angles_out - TWO_PI * np.floor(angles_out[0] / TWO_PI)
        return angles_in, angles_out

    def is_monotone(self, h, n=4096):
        """Strictly ccw-monotone on an n-point grid, with total turn 2pi"""
        angles_in = np.arange(n) * (TWO_PI / n)
        values = np.array([h(cmath.exp(1j * t)) for t in angles_in])
        steps = np.mod(np.diff(np.angle(np.append(values, values[0]))), TWO_PI)
        return bool(np.all(steps > 0) and abs(steps.sum() - TWO_PI) < 1e-9)

    def diamond_l2_sequence(self, h, max_gen):
        """Partial sums of extract_diamond(h, e)^2 over generations 0..n, n <= max_gen"""
        sums, total = [], 0.0
        for n in range(max_gen + 1):
            total += math.fsum(self.extract_diamond(h, e) ** 2 for e in farey_service.edges_of_generation(n))
            sums.append(total)
        return sums

    def farey_bound_constant(self, h, max_gen, alpha=1):
        """max |theta(e)| / arclength(e)^alpha over edges of generation <= max_gen"""
        return max(
            abs(self.extract_diamond(h, e)) / farey_service.farey_arclength(e) ** alpha
            for e in farey_service.edges_up_to(max_gen)
        )

    # ------------------------------------------------------------------
    # Circle diffeomorphisms
    # ------------------------------------------------------------------

    def hoelder_diffeo(self, eps=0.3):
        """Analytic diffeomorphism theta -> theta + eps sin(theta)"""
        return CircleDiffeo(
            lambda t: t + eps * math.sin(t),
            lambda t: 1 + eps * math.cos(t),
            name=f'hoelder({eps})',
        )

    def from_samples(self, angles_in, angles_out):
        """
        Circle map interpolating angle samples

        Args:
            angles_in: strictly increasing angles covering less than one turn
            angles_out: image angles

        Returns:
            CircleDiffeo: periodic cubic spline of angle_out - angle_in
        """
        angles_in = np.asarray(angles_in, dtype=float)
        angles_out = np.unwrap(np.asarray(angles_out, dtype=float))
        offset = angles_out - angles_in
        knots = np.append(angles_in, angles_in[0] + TWO_PI)
        values = np.append(offset, offset[0])
        spline = CubicSpline(knots, values, bc_type='periodic', extrapolate='periodic')
        return CircleDiffeo(
            lambda t: t + float(spline(t)),
            lambda t: 1 + float(spline(t, 1)),
            name='samples',
        )

    def from_real_line(self, phi, phi_prime, name='real-line'):
        """Circle map conjugate by the Cayley map to an increasing phi with phi(inf) = inf"""
        def angle_map(t):
            half = (t % TWO_PI) / 2
            if half == 0:
                return t
            x = -math.cos(half) / math.sin(half)
            return t - (t % TWO_PI) + farey_service.angle_of_real(phi(x))

        def angle_derivative(t):
            half = (t % TWO_PI) / 2
            if half == 0:
                return CircleDiffeo(angle_map).derivative(1 + 0j)
            x = -math.cos(half) / math.sin(half)
            image = phi(x)
            return phi_prime(x) * (1 + x * x) / (1 + image * image)

        return CircleDiffeo(angle_map, angle_derivative, name=name)

    def breakpoint_dump(self, h):
        return h.to_dict()


# Singleton instance
develop_service = DevelopService()
