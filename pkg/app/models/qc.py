"""
Cell and strip geometry of the quasiconformal extension
"""
import math
from dataclasses import dataclass, field

SQRT3 = math.sqrt(3.0)
LOG3 = math.log(3.0)


@dataclass(frozen=True)
class StripGeom:
    """Stretch data of one strip with adjacent gaps rho (left) and lam (right)"""

    rho: float
    lam: float

    def __post_init__(self):
        if not (self.rho > 0 and self.lam > 0):
            raise ValueError(f'strip gaps must be positive, got {self.rho}, {self.lam}')

    @property
    def r(self):
        return math.sqrt(self.lam ** 2 - self.lam * self.rho + self.rho ** 2)

    @property
    def ell(self):
        """Hyperbolic length of the image dual edge"""
        r = self.r
        return math.log((self.rho + self.lam + r) / (self.rho + self.lam - r))

    @property
    def K(self):
        return (2 * self.r + 2 * self.lam - self.rho) / (SQRT3 * self.rho)

    @property
    def P(self):
        return self.r + self.lam - self.rho

    @property
    def Q(self):
        return self.r - self.lam + self.rho

    @property
    def kappa(self):
        return self.ell / (2 * LOG3)

    @property
    def is_conformal(self):
        return self.rho == 1 and self.lam == 1

    def _t(self, x):
        return math.exp(self.ell / 2) * ((1 + x) / (1 - x)) ** self.kappa

    def alpha_beta(self, x):
        """(alpha, beta) at x in [-1/2, 1/2]"""
        t2, k2 = self._t(x) ** 2, self.K ** 2
        alpha = (self.P * t2 - self.Q * k2) / (t2 + k2)
        beta = 2 * self.r * self.K * math.sqrt(t2) / (t2 + k2)
        return alpha, beta

    def derivatives(self, x):
        """(alpha', beta') at x in [-1/2, 1/2]"""
        t = self._t(x)
        t2, k, k2 = t * t, self.K, self.K ** 2
        scale = self.r * self.kappa / ((t2 + k2) ** 2 * (1 - x * x))
        return 8 * scale * t2 * k2, 4 * scale * k * t * (k2 - t2)

    def to_dict(self):
        return {'rho': self.rho, 'lambda': self.lam, 'r': self.r, 'ell': self.ell, 'K': self.K}


@dataclass
class CellAtlas:
    """Gap sequence of the cell at a vertex, in the picture sending the vertex to infinity.

    gaps[n] = exp(-p(e_n+)); gaps outside the stored range equal 1.
    """

    vertex: object
    gaps: dict = field(default_factory=dict)

    def gap(self, n):
        return self.gaps.get(n, 1.0)

    def strip(self, n):
        """Strip around e_n, between the gaps n - 1 and n"""
        return StripGeom(self.gap(n - 1), self.gap(n))

    def strip_indices(self):
        """Strips that can carry a nonzero Beltrami coefficient"""
        if not self.gaps:
            return []
        return list(range(min(self.gaps), max(self.gaps) + 2))

    def position(self, n):
        """Image of the fan vertex n, with position(0) = 0"""
        if n >= 0:
            return math.fsum(self.gap(k) for k in range(n))
        return -math.fsum(self.gap(k) for k in range(n, 0))

    def to_dict(self):
        return {'vertex': str(self.vertex), 'gaps': {str(n): g for n, g in sorted(self.gaps.items())}}


@dataclass
class BeltramiEstimate:
    """Sup and hyperbolic L2 norm of the extension's Beltrami coefficient"""

    sup_mu: float
    l2_hyp: float
    cells: list = field(default_factory=list)
    max_gen: int = 0

    def to_dict(self):
        return {
            'sup_mu': self.sup_mu,
            'l2_hyp': self.l2_hyp,
            'cells': self.cells,
            'maxGen': self.max_gen,
        }
