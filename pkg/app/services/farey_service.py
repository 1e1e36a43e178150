"""
Farey tessellation service: combinatorics, fans and circle geometry
"""
import cmath
import logging
import math
from fractions import Fraction
from functools import lru_cache

from app.models.farey import (
    FareyEdge, FareyQuad, IntegerMobius, Rational,
    INFINITY, ZERO, ONE, MINUS_ONE, ROOT_EDGE, determinant,
)
from app.utils.errors import DegeneratePoints, NotAnEdge

# Numeric points closer than this are treated as equal.
POINT_TOL = 1e-15


class FareyService:
    """Service for the Farey tessellation and its dual tree"""

    # ------------------------------------------------------------------
    # Edges and quads
    # ------------------------------------------------------------------

    def is_edge(self, a, b):
        """True iff |p_a q_b - p_b q_a| = 1"""
        return a != b and abs(determinant(a, b)) == 1

    def edge(self, a, b):
        return FareyEdge(a, b)

    def mediant(self, a, b):
        """
        Child vertex of the edge (a, b)

        Args:
            a: Rational endpoint
            b: Rational endpoint

        Returns:
            Rational: (p_a + p_b)/(q_a + q_b), with infinity read as 1/0 next to
            a non-negative integer and as -1/0 next to a negative one
        """
        if not self.is_edge(a, b):
            raise NotAnEdge(f'({a}, {b}) is not a Farey edge')
        if a.is_infinite or b.is_infinite:
            n = b if a.is_infinite else a
            return Rational(n.p + 1) if n.p >= 0 else Rational(n.p - 1)
        return Rational(a.p + b.p, a.q + b.q)

    def comediant(self, a, b):
        """The other apex (p_a - p_b)/(q_a - q_b) of the quad on (a, b)"""
        e = FareyEdge(a, b)
        if e.b.is_infinite:
            n = e.a.p
            return Rational(n - 1) if n >= 0 else Rational(n + 1)
        return Rational(e.a.p - e.b.p, e.a.q - e.b.q)

    def farey_quad(self, e):
        """
        Quad Q_e made of the two Farey triangles on e

        Returns:
            FareyQuad: vertices (a, b, c, d) ccw on the circle with e = (a, c)
        """
        if e.b.is_infinite:
            n = e.a.p
            return FareyQuad(e, Rational(n + 1), Rational(n - 1))
        return FareyQuad(e, self.mediant(e.a, e.b), self.comediant(e.a, e.b))

    def adjacent_edges(self, e):
        """The four edges that share a triangle with e, with their Phi signs"""
        return self.farey_quad(e).boundary()

    def children(self, e):
        m = self.mediant(e.a, e.b)
        return (FareyEdge(e.a, m), FareyEdge(m, e.b))

    # ------------------------------------------------------------------
    # Generations
    # ------------------------------------------------------------------

    @lru_cache(maxsize=None)
    def vertex_generation(self, v):
        """Sum of the continued fraction quotients of |v|; 0 for 0 and infinity"""
        if v.is_infinite or v.p == 0:
            return 0
        p, q = abs(v.p), v.q
        total = 0
        while q:
            total += p // q
            p, q = q, p % q
        return total

    def generation(self, e):
        """Graph distance of e* to the root dual edge (0, infinity)*"""
        return max(self.vertex_generation(e.a), self.vertex_generation(e.b))

    @lru_cache(maxsize=64)
    def edges_of_generation(self, n):
        """All edges of generation n, in canonical key order"""
        if n < 0:
            return ()
        if n == 0:
            return (ROOT_EDGE,)
        if n == 1:
            return tuple(sorted([
                FareyEdge(MINUS_ONE, ZERO), FareyEdge(MINUS_ONE, INFINITY),
                FareyEdge(ZERO, ONE), FareyEdge(ONE, INFINITY),
            ]))
        edges = []
        for parent in self.edges_of_generation(n - 1):
            edges.extend(self.children(parent))
        return tuple(sorted(edges))

    def edges_up_to(self, max_gen):
        edges = []
        for n in range(max_gen + 1):
            edges.extend(self.edges_of_generation(n))
        return edges

    def vertices_up_to(self, max_gen):
        vertices = set()
        for e in self.edges_up_to(max_gen):
            vertices.update(e.endpoints)
        return sorted(vertices)

    # ------------------------------------------------------------------
    # Fans
    # ------------------------------------------------------------------

    def base_partner(self, v):
        """Endpoint w of the fan base edge e_0 = (v, w)"""
        if v.is_infinite or v == ONE:
            return ZERO
        if v == ZERO:
            return INFINITY
        if v == MINUS_ONE:
            return ZERO
        if v.q == 1:
            return Rational(v.p - 1) if v.p > 0 else Rational(v.p + 1)
        s = pow(v.p, -1, v.q)
        r = (v.p * s - 1) // v.q
        return Rational(r, s)

    @lru_cache(maxsize=4096)
    def to_infinity(self, v):
        """
        Tessellation symmetry sending v to infinity and e_0 to (0, infinity)

        Args:
            v: Rational vertex

        Returns:
            IntegerMobius: A with A(v) = infinity and A(base partner) = 0
        """
        u = self.base_partner(v)
        p, q, r, s = v.p, v.q, u.p, u.q
        k = p * s - r * q
        return IntegerMobius(-s * k, r * k, q, -p)

    def fan_index(self, v, e):
        """Index n of e in fan(v), so that to_infinity(v) maps e to (n, infinity)"""
        image = self.to_infinity(v)(e.other(v))
        if image.q != 1:
            raise NotAnEdge(f'{e} is not in the fan of {v}')
        return image.p

    def fan_edge(self, v, n):
        return FareyEdge(v, self.to_infinity(v).inverse()(Rational(n)))

    def fan(self, v, lo, hi):
        """Fan edges e_lo .. e_hi at v, ccw"""
        inverse = self.to_infinity(v).inverse()
        return [FareyEdge(v, inverse(Rational(n))) for n in range(lo, hi + 1)]

    # ------------------------------------------------------------------
    # Circle geometry
    # ------------------------------------------------------------------

    def cross_ratio(self, a, b, c, d):
        """
        cr(a, b, c, d) = (b - a)(d - c)/((c - b)(d - a))

        Exact (Fraction) when all four points are Rationals, with infinity
        handled by the limit. Numeric points are unit complex numbers; the
        real part of the value is returned.
        """
        points = (a, b, c, d)
        if all(isinstance(x, Rational) for x in points):
            if len(set(points)) < 4:
                raise DegeneratePoints('cross-ratio of repeated vertices')
            return self._exact_cross_ratio(a, b, c, d)
        z = [self.to_disk(x) if isinstance(x, Rational) else complex(x) for x in points]
        for i in range(4):
            for j in range(i + 1, 4):
                if abs(z[i] - z[j]) < POINT_TOL:
                    raise DegeneratePoints('cross-ratio of coincident points')
        za, zb, zc, zd = z
        return ((zb - za) * (zd - zc) / ((zc - zb) * (zd - za))).real

    def _exact_cross_ratio(self, a, b, c, d):
        if a.is_infinite:
            b, c, d = b.to_fraction(), c.to_fraction(), d.to_fraction()
            return (d - c) / (c - b)
        if b.is_infinite:
            a, c, d = a.to_fraction(), c.to_fraction(), d.to_fraction()
            return -(d - c) / (d - a)
        if c.is_infinite:
            a, b, d = a.to_fraction(), b.to_fraction(), d.to_fraction()
            return -(b - a) / (d - a)
        if d.is_infinite:
            a, b, c = a.to_fraction(), b.to_fraction(), c.to_fraction()
            return (b - a) / (c - b)
        a, b, c, d = (x.to_fraction() for x in (a, b, c, d))
        return (b - a) * (d - c) / ((c - b) * (d - a))

    def ford_diameter(self, v):
        """Diameter 1/q^2 of the Ford circle at v; height 1 at infinity"""
        if v.is_infinite:
            return Fraction(1)
        return Fraction(1, v.q * v.q)

    def angle_of(self, v):
        """Angle in [0, 2pi) of the disk point cayley_inv(v)"""
        if v.is_infinite:
            return 0.0
        return (2.0 * math.atan2(v.q, -v.p)) % (2.0 * math.pi)

    def angle_of_real(self, x):
        """Angle in [0, 2pi) of the disk point cayley_inv(x) for real x"""
        if x == math.inf or x == -math.inf:
            return 0.0
        return (2.0 * math.atan2(1.0, -x)) % (2.0 * math.pi)

    def to_disk(self, v):
        return cmath.exp(1j * self.angle_of(v))

    def cayley(self, z):
        """Disk to upper half-plane, z -> -i(z + 1)/(z - 1); the pole 1 maps to infinity"""
        z = complex(z)
        if z == 1:
            return math.inf
        return -1j * (z + 1) / (z - 1)

    def cayley_inv(self, x):
        """Upper half-plane to disk, x -> (x - i)/(x + i); infinity maps to 1"""
        if isinstance(x, Rational):
            return self.to_disk(x)
        if x == math.inf:
            return complex(1.0)
        x = complex(x)
        return (x - 1j) / (x + 1j)

    def farey_arclength(self, e):
        """Length of the circle arc between the endpoints of e that contains its child"""
        if e.b.is_infinite:
            return 2.0 * math.atan2(1, abs(e.a.p))
        p, q, r, s = e.a.p, e.a.q, e.b.p, e.b.q
        return 2.0 * math.atan2(1, q * s + p * r)

    def farey_length_sums(self, r, max_gen):
        """
        Partial sums of arclength^r over the edges of generation <= n

        Returns:
            list: one partial sum per n = 0..max_gen
        """
        sums = []
        total = 0.0
        for n in range(max_gen + 1):
            total += math.fsum(self.farey_arclength(e) ** r for e in self.edges_of_generation(n))
            sums.append(total)
        logging.info(f"🔺 Farey length sums r={r} up to generation {max_gen}")
        return sums


# Singleton instance
farey_service = FareyService()
