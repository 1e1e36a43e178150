"""
Weil-Petersson value types
"""
import math
from dataclasses import dataclass, field

from app.models.homeo import TWO_PI, angle


@dataclass(frozen=True)
class SigmaValue:
    """sigma(a, b) at z = a conj(b)"""

    z: complex
    value: complex
    method: str
    tail_bound: float = 0.0

    def to_dict(self):
        return {
            'z': [self.z.real, self.z.imag],
            'value': [self.value.real, self.value.imag],
            'method': self.method,
            'tail_bound': self.tail_bound,
        }


@dataclass(frozen=True)
class QuadOnCircle:
    """Four unit complex vertices in ccw order; the diagonal is (vertices[0], vertices[2])"""

    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) != 4:
            raise ValueError('a quad has four vertices')
        object.__setattr__(self, 'vertices', tuple(complex(z) for z in self.vertices))

    @staticmethod
    def with_diagonal(vertices, diagonal):
        """Rotate the vertex list so that diagonal[0] comes first"""
        vertices = [complex(z) for z in vertices]
        for i, z in enumerate(vertices):
            if abs(z - diagonal[0]) < 1e-12 and abs(vertices[(i + 2) % 4] - diagonal[1]) < 1e-12:
                return QuadOnCircle(tuple(vertices[i:] + vertices[:i]))
        raise ValueError('diagonal endpoints must be opposite quad vertices')

    @property
    def diagonal(self):
        return (self.vertices[0], self.vertices[2])

    def is_ccw(self):
        base = angle(self.vertices[0])
        offsets = [(angle(z) - base) % TWO_PI for z in self.vertices[1:]]
        return 0 < offsets[0] < offsets[1] < offsets[2]

    def swap_diagonal(self):
        v = self.vertices
        return QuadOnCircle((v[1], v[2], v[3], v[0]))

    def to_dict(self):
        return [[z.real, z.imag] for z in self.vertices]


@dataclass(frozen=True)
class ZygmundField:
    """Infinitesimal shear vector field u_(a,b) on the real line.

    kind 'finite': (x - a)(x - b)/(a - b) on (a, b).
    kind 'right': x - a for x > a. kind 'left': -(x - a) for x < a.
    Zero elsewhere.
    """

    a: float
    b: float
    kind: str

    def __call__(self, x):
        if self.kind == 'right':
            return x - self.a if x > self.a else 0.0
        if self.kind == 'left':
            return -(x - self.a) if x < self.a else 0.0
        if self.a < x < self.b:
            return (x - self.a) * (x - self.b) / (self.a - self.b)
        return 0.0

    @property
    def support(self):
        if self.kind == 'right':
            return (self.a, math.inf)
        if self.kind == 'left':
            return (-math.inf, self.a)
        return (self.a, self.b)

    def to_dict(self):
        return {'a': self.a, 'b': self.b, 'kind': self.kind}


@dataclass
class ZygmundVector:
    """Finite combination of Zygmund fields"""

    terms: list = field(default_factory=list)

    def __call__(self, x):
        return math.fsum(weight * u(x) for u, weight in self.terms)

    @property
    def support(self):
        return [u.support for u, _ in self.terms]


@dataclass
class QuadDifferential:
    """Rational quadratic differential sum of w (a - b)^2/((z - a)^2 (z - b)^2) times i/(2 pi).

    Each term is ((a, b), w) with a, b real or math.inf.
    """

    terms: list = field(default_factory=list)

    def __call__(self, z):
        total = 0j
        for (a, b), weight in self.terms:
            if a == math.inf:
                total += weight / (z - b) ** 2
            elif b == math.inf:
                total += weight / (z - a) ** 2
            else:
                total += weight * (a - b) ** 2 / ((z - a) ** 2 * (z - b) ** 2)
        return 1j / (2 * math.pi) * total

    def to_dict(self):
        return [{'edge': [a, b], 'weight': w} for (a, b), w in self.terms]
