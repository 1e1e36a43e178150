"""
Farey tessellation value types
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from app.utils.errors import NotAnEdge


@total_ordering
class Rational:
    """Vertex of the Farey tessellation, p/q in lowest terms with q >= 0.

    Infinity is stored as 1/0 and zero as 0/1. Ordering is the extended-real
    order with infinity greatest.
    """

    __slots__ = ('p', 'q')

    def __init__(self, p, q=1):
        p, q = int(p), int(q)
        if q == 0:
            if abs(p) != 1:
                raise ValueError(f'{p}/0 is not a vertex, infinity is 1/0 or -1/0')
            p = 1
        else:
            if q < 0:
                p, q = -p, -q
            g = math.gcd(p, q)
            p, q = p // g, q // g
        object.__setattr__(self, 'p', p)
        object.__setattr__(self, 'q', q)

    def __setattr__(self, name, value):
        raise AttributeError('Rational is immutable')

    @staticmethod
    def parse(text):
        """Parse "p/q", "p" or the alias "-1/0" for infinity"""
        text = str(text).strip()
        if '/' in text:
            num, den = text.split('/', 1)
            return Rational(int(num), int(den))
        return Rational(int(text), 1)

    @staticmethod
    def from_fraction(value):
        value = Fraction(value)
        return Rational(value.numerator, value.denominator)

    @property
    def is_infinite(self):
        return self.q == 0

    def to_fraction(self):
        if self.is_infinite:
            raise ValueError('infinity has no finite value')
        return Fraction(self.p, self.q)

    def to_float(self):
        return math.inf if self.is_infinite else self.p / self.q

    def sort_key(self):
        if self.is_infinite:
            return (1, Fraction(0))
        return (0, Fraction(self.p, self.q))

    def __eq__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __lt__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return hash((self.p, self.q))

    def __str__(self):
        return f'{self.p}/{self.q}'

    def __repr__(self):
        return f'Rational({self.p}, {self.q})'

    def to_dict(self):
        return str(self)


INFINITY = Rational(1, 0)
ZERO = Rational(0, 1)
ONE = Rational(1, 1)
MINUS_ONE = Rational(-1, 1)

# A point of the circle: exact vertex in the half-plane model or a unit complex number.
CirclePoint = Union[Rational, complex]


def determinant(a, b):
    """p_a q_b - p_b q_a"""
    return a.p * b.q - b.p * a.q


@dataclass(frozen=True)
class FareyEdge:
    """Unordered Farey edge stored with a < b in extended-real order"""

    a: Rational
    b: Rational

    def __post_init__(self):
        if self.a == self.b:
            raise NotAnEdge(f'degenerate edge at {self.a}')
        if abs(determinant(self.a, self.b)) != 1:
            raise NotAnEdge(f'({self.a}, {self.b}) is not unimodular')
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, 'a', a)
            object.__setattr__(self, 'b', b)

    @staticmethod
    def of(a, b):
        """Build an edge from Rationals or "p/q" strings"""
        if not isinstance(a, Rational):
            a = Rational.parse(a)
        if not isinstance(b, Rational):
            b = Rational.parse(b)
        return FareyEdge(a, b)

    @property
    def endpoints(self):
        return (self.a, self.b)

    def other(self, v):
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise ValueError(f'{v} is not an endpoint of {self}')

    def sort_key(self):
        return (self.a.sort_key(), self.b.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f'({self.a}, {self.b})'

    def to_dict(self):
        return [str(self.a), str(self.b)]

    @staticmethod
    def from_dict(data):
        return FareyEdge.of(data[0], data[1])


ROOT_EDGE = FareyEdge(ZERO, INFINITY)


@dataclass(frozen=True)
class FareyQuad:
    """The two Farey triangles on a diagonal e = (a, c), vertices ccw a, b, c, d"""

    e: FareyEdge
    b: Rational
    d: Rational

    @property
    def vertices(self):
        return (self.e.a, self.b, self.e.b, self.d)

    def boundary(self):
        """Boundary edges with their Phi signs: +1 on (a,b), (c,d) and -1 on (b,c), (d,a)"""
        a, b, c, d = self.vertices
        return [
            (FareyEdge(a, b), 1),
            (FareyEdge(b, c), -1),
            (FareyEdge(c, d), 1),
            (FareyEdge(d, a), -1),
        ]

    def to_dict(self):
        return [str(v) for v in self.vertices]


@dataclass(frozen=True)
class IntegerMobius:
    """Element of PSL(2, Z) acting by z -> (az + b)/(cz + d).

    Stored with c > 0, or c == 0 and d > 0.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError('IntegerMobius must have determinant 1')
        if self.c < 0 or (self.c == 0 and self.d < 0):
            for name in ('a', 'b', 'c', 'd'):
                object.__setattr__(self, name, -getattr(self, name))

    @staticmethod
    def identity():
        return IntegerMobius(1, 0, 0, 1)

    def __call__(self, v):
        if isinstance(v, Rational):
            return Rational(self.a * v.p + self.b * v.q, self.c * v.p + self.d * v.q)
        if v == math.inf:
            return math.inf if self.c == 0 else self.a / self.c
        den = self.c * v + self.d
        if den == 0:
            return math.inf
        return (self.a * v + self.b) / den

    def __matmul__(self, other):
        return IntegerMobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        return IntegerMobius(self.d, -self.b, -self.c, self.a)

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def to_dict(self):
        return [[self.a, self.b], [self.c, self.d]]
