"""
Shear and diamond-shear coordinate functions on Farey edges
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from app.models.farey import FareyEdge
from app.utils.errors import NotInP

SHEAR = 'shear'
DIAMOND = 'diamond'
KINDS = (SHEAR, DIAMOND)


def _normalize_value(value):
    if isinstance(value, bool):
        raise TypeError('boolean is not a coordinate value')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f'non-finite coordinate value {value}')
    return value


class CoordFn:
    """Real function on Farey edges, tagged shear or diamond.

    Either a finite map (absent edges are 0) or a lazy evaluator. A lazy
    function may carry the finite list of edges where it can be nonzero.
    """

    def __init__(self, kind, entries=None, evaluator=None, candidates=None):
        if kind not in KINDS:
            raise ValueError(f'unknown coordinate kind {kind!r}')
        self.kind = kind
        self._entries = {}
        for e, value in (entries or {}).items():
            value = _normalize_value(value)
            if value != 0:
                self._entries[e] = value
        self._evaluator = lru_cache(maxsize=None)(evaluator) if evaluator else None
        self._candidates = None if candidates is None else tuple(sorted(set(candidates)))

    @property
    def is_lazy(self):
        return self._evaluator is not None

    @property
    def is_finite(self):
        """Known to be finitely supported"""
        return not self.is_lazy or self._candidates is not None

    def __call__(self, e):
        if self._evaluator is not None:
            return self._evaluator(e)
        return self._entries.get(e, Fraction(0))

    def items(self):
        """Nonzero (edge, value) pairs in canonical edge order"""
        if self._evaluator is None:
            return sorted(self._entries.items(), key=lambda item: item[0].sort_key())
        if self._candidates is None:
            raise NotInP('lazy coordinate function has no finite support')
        pairs = []
        for e in self._candidates:
            value = self(e)
            if value != 0:
                pairs.append((e, value))
        return pairs

    def support(self):
        return [e for e, _ in self.items()]

    def materialize(self):
        """Finite copy of a finitely supported function"""
        return CoordFn(self.kind, dict(self.items()))

    def on(self, edges):
        """Finite function equal to self on the given edges and 0 elsewhere"""
        return CoordFn(self.kind, {e: self(e) for e in edges})

    def values_dict(self):
        return dict(self.items())

    def _combine(self, other, sign):
        if self.kind != other.kind:
            raise ValueError('cannot combine shear and diamond functions')
        entries = dict(self.items())
        for e, value in other.items():
            entries[e] = entries.get(e, 0) + sign * value
        return CoordFn(self.kind, entries)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, scalar):
        return CoordFn(self.kind, {e: scalar * value for e, value in self.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def transport(self, mobius):
        """Push the function forward by an IntegerMobius tessellation symmetry"""
        return CoordFn(self.kind, {
            FareyEdge(mobius(e.a), mobius(e.b)): value for e, value in self.items()
        })

    def to_dict(self):
        return {
            'kind': self.kind,
            'model': 'H',
            'entries': [
                {'edge': e.to_dict(), 'value': float(value)} for e, value in self.items()
            ],
        }

    @staticmethod
    def from_dict(data):
        """Create a finite CoordFn from a validated coordinate document"""
        entries = {}
        for item in data['entries']:
            entries[FareyEdge.from_dict(item['edge'])] = Fraction(str(item['value']))
        return CoordFn(data['kind'], entries)

    @staticmethod
    def delta(kind, e, value=1):
        return CoordFn(kind, {e: value})

    @staticmethod
    def zero(kind):
        return CoordFn(kind, {})

    def __repr__(self):
        if self.is_lazy:
            return f'CoordFn({self.kind}, lazy)'
        return f'CoordFn({self.kind}, {len(self._entries)} entries)'


@dataclass
class FanSums:
    """One-sided fan tail sums p(e+), p(e-) along fan(v)"""

    vertex: object
    sums: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'vertex': str(self.vertex),
            'sums': [
                {'edge': e.to_dict(), 'p_plus': float(plus), 'p_minus': float(minus)}
                for e, (plus, minus) in self.sums.items()
            ],
        }


@dataclass
class ClassReport:
    """Class membership diagnostics of a coordinate function, at a truncation"""

    finite_balanced: bool
    l2_shear: float
    l2_diamond: float
    max_fan_window_sum: float
    qs_ratio_range: tuple
    max_gen: int
    window: int

    def to_dict(self):
        return {
            'finite_balanced': self.finite_balanced,
            'l2_shear': float(self.l2_shear),
            'l2_diamond': float(self.l2_diamond),
            'max_fan_window_sum': float(self.max_fan_window_sum),
            'qs_ratio_range': [float(x) for x in self.qs_ratio_range],
            'maxGen': self.max_gen,
            'window': self.window,
        }
