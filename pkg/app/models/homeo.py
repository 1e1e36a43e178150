"""
Circle homeomorphisms in the disk model
"""
import bisect
import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from app.utils.errors import DegenerateImage

TWO_PI = 2.0 * math.pi
# Breakpoints closer than this (radians) are the same point.
ANGLE_TOL = 1e-12


def angle(z):
    """Argument of z in [0, 2pi)"""
    a = cmath.phase(z) % TWO_PI
    return 0.0 if a >= TWO_PI else a


def angular_distance(a, b):
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class MobiusDisk:
    """Disk automorphism z -> (alpha z + beta)/(conj(beta) z + conj(alpha)), |alpha|^2 - |beta|^2 = 1"""

    alpha: complex = 1 + 0j
    beta: complex = 0j

    def __call__(self, z):
        return (self.alpha * z + self.beta) / (self.beta.conjugate() * z + self.alpha.conjugate())

    def compose(self, other):
        """self after other"""
        a1, b1, a2, b2 = self.alpha, self.beta, other.alpha, other.beta
        return MobiusDisk(a1 * a2 + b1 * b2.conjugate(), a1 * b2 + b1 * a2.conjugate())

    def inverse(self):
        return MobiusDisk(self.alpha.conjugate(), -self.beta)

    def derivative(self, z):
        """|f'(z)|, the angular derivative on the circle"""
        return 1.0 / abs(self.beta.conjugate() * z + self.alpha.conjugate()) ** 2

    def matrix(self):
        return np.array([[self.alpha, self.beta],
                         [self.beta.conjugate(), self.alpha.conjugate()]], dtype=complex)

    @staticmethod
    def from_matrix(m, det=None):
        """Disk automorphism of a circle-preserving 2x2 complex matrix, det computed if not given"""
        m = np.asarray(m, dtype=complex)
        if det is None:
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if det == 0:
            raise DegenerateImage('singular Mobius matrix')
        m = m / cmath.sqrt(det)
        alpha = complex(m[0, 0] + np.conj(m[1, 1])) / 2
        beta = complex(m[0, 1] + np.conj(m[1, 0])) / 2
        norm2 = abs(alpha) ** 2 - abs(beta) ** 2
        if not norm2 > 0:
            raise DegenerateImage('matrix does not preserve the unit disk')
        norm = math.sqrt(norm2)
        return MobiusDisk(alpha / norm, beta / norm)

    def is_identity(self, tol=1e-14):
        return abs(self.beta) < tol and abs(self.alpha.imag) < tol

    def to_dict(self):
        return {
            'alpha': [self.alpha.real, self.alpha.imag],
            'beta': [self.beta.real, self.beta.imag],
        }


IDENTITY = MobiusDisk()


@dataclass(frozen=True)
class PiecewiseMobiusHomeo:
    """Circle homeomorphism given by ccw breakpoints and one Mobius map per arc.

    arcs[i] acts on [angles[i], angles[i+1]), the last arc wrapping to
    angles[0]. With no breakpoints, arcs holds a single global map.
    """

    angles: tuple = ()
    points: tuple = ()
    labels: tuple = ()
    arcs: tuple = (IDENTITY,)

    @staticmethod
    def identity():
        return PiecewiseMobiusHomeo()

    @staticmethod
    def build(breakpoints, arcs):
        """breakpoints: (point, label) pairs in ccw order, arcs aligned with them"""
        return PiecewiseMobiusHomeo(
            angles=tuple(angle(z) for z, _ in breakpoints),
            points=tuple(z for z, _ in breakpoints),
            labels=tuple(label for _, label in breakpoints),
            arcs=tuple(arcs),
        )

    def arc_index(self, theta):
        if not self.angles:
            return 0
        i = bisect.bisect_right(self.angles, theta) - 1
        return i if i >= 0 else len(self.angles) - 1

    def arc_at(self, theta):
        return self.arcs[self.arc_index(theta)]

    def breakpoint_index(self, theta):
        """Index of the breakpoint at angle theta, or None"""
        if not self.angles:
            return None
        i = bisect.bisect_left(self.angles, theta)
        for j in (i - 1, i, 0, len(self.angles) - 1):
            if 0 <= j < len(self.angles) and angular_distance(self.angles[j], theta) < ANGLE_TOL:
                return j
        return None

    def __call__(self, z):
        return self.arc_at(angle(z))(z)

    def one_sided(self, z, side):
        """Arc map used when approaching z ccw ('+', arc ending at z) or cw ('-')"""
        theta = angle(z)
        i = self.breakpoint_index(theta)
        if i is None:
            return self.arc_at(theta)
        return self.arcs[i - 1] if side == '+' else self.arcs[i]

    def derivative(self, z, side='+'):
        return self.one_sided(z, side).derivative(z)

    def post_compose(self, mobius):
        return PiecewiseMobiusHomeo(
            angles=self.angles, points=self.points, labels=self.labels,
            arcs=tuple(mobius.compose(m) for m in self.arcs),
        )

    def inverse(self):
        if not self.angles:
            return PiecewiseMobiusHomeo(arcs=(self.arcs[0].inverse(),))
        images = [(m(z), label) for z, label, m in zip(self.points, self.labels, self.arcs)]
        arcs = [m.inverse() for m in self.arcs]
        order = sorted(range(len(images)), key=lambda i: angle(images[i][0]))
        return PiecewiseMobiusHomeo.build([images[i] for i in order], [arcs[i] for i in order])

    def breakpoints(self):
        return list(zip(self.points, self.labels))

    def to_dict(self):
        return [
            {'vertex': None if label is None else str(label), **m.to_dict()}
            for label, m in zip(self.labels, self.arcs)
        ]


class CircleDiffeo:
    """Circle map given by an angle function theta -> angle_map(theta).

    The derivative comes from angle_derivative when given, otherwise from a
    once Richardson-extrapolated central difference.
    """

    STEP = 1e-6

    def __init__(self, angle_map, angle_derivative=None, name='diffeo'):
        self.angle_map = angle_map
        self.angle_derivative = angle_derivative
        self.name = name

    def __call__(self, z):
        return cmath.exp(1j * self.angle_map(angle(z)))

    def derivative(self, z, side='+'):
        theta = angle(z)
        if self.angle_derivative is not None:
            return float(self.angle_derivative(theta))
        f, h = self.angle_map, self.STEP
        coarse = (f(theta + h) - f(theta - h)) / (2 * h)
        fine = (f(theta + h / 2) - f(theta - h / 2)) / h
        return (4 * fine - coarse) / 3

    def chord(self, z, w):
        """|h(z) - h(w)| from the angle difference"""
        delta = self.angle_map(angle(z)) - self.angle_map(angle(w))
        return 2.0 * abs(math.sin(delta / 2))


@dataclass
class VertexImageMap:
    """Images of Farey vertices under a developed homeomorphism"""

    images: dict = field(default_factory=dict)
    max_gen: int = 0

    def __call__(self, v):
        return self.images[v]

    def to_dict(self):
        return {
            'maxGen': self.max_gen,
            'images': [
                {'vertex': str(v), 'point': [z.real, z.imag]}
                for v, z in sorted(self.images.items())
            ],
        }


@dataclass
class Decoration:
    """Horocycle sizes at Farey vertices in the half-plane model.

    points[v] is the image of v on the real line; sizes[v] the horocycle
    diameter, or its height at infinity.
    """

    points: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)

    def to_dict(self):
        return [
            {'vertex': str(v), 'point': self.points[v], 'size': self.sizes[v]}
            for v in sorted(self.sizes)
        ]
