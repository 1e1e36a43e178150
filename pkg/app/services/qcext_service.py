"""
Quasiconformal extension service: strip stretch maps, Beltrami coefficients and their norms
"""
import cmath
import logging
import math
from functools import lru_cache

import numpy as np
from scipy import integrate, optimize

from app.models.farey import IntegerMobius, Rational, INFINITY
from app.models.qc import StripGeom, CellAtlas, BeltramiEstimate
from app.services.coords_service import coords_service
from app.services.develop_service import develop_service, three_point_matrix
from app.services.farey_service import farey_service
from app.utils.errors import NotInP

QUAD_TOL = 1e-10
SUP_GRID = 201
MAX_REDUCTION_STEPS = 10000


def boundary_u(x):
    """Scalloped curve sqrt(1 - (x - n)^2) on [n - 1/2, n + 1/2]"""
    d = x - round(x)
    return math.sqrt(1.0 - d * d)


def boundary_u_prime(x):
    d = x - round(x)
    return -d / math.sqrt(1.0 - d * d)


@lru_cache(maxsize=4096)
def strip_l2(rho, lam):
    """Hyperbolic L2 norm of mu over one strip, reduced to 1-D by y-independence"""
    geom = StripGeom(rho, lam)
    if geom.is_conformal:
        return 0.0
    value, _ = integrate.quad(
        lambda x: abs(strip_mu(geom, x)) ** 2 / boundary_u(x),
        -0.5, 0.5, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200,
    )
    return value


@lru_cache(maxsize=4096)
def strip_sup(rho, lam):
    """sup |mu| over one strip"""
    geom = StripGeom(rho, lam)
    if geom.is_conformal:
        return 0.0
    xs = np.linspace(-0.5, 0.5, SUP_GRID)
    values = [abs(strip_mu(geom, x)) for x in xs]
    best = int(np.argmax(values))
    lo, hi = xs[max(best - 1, 0)], xs[min(best + 1, SUP_GRID - 1)]
    result = optimize.minimize_scalar(
        lambda x: -abs(strip_mu(geom, x)), bounds=(lo, hi), method='bounded',
        options={'xatol': 1e-12},
    )
    return max(values[best], -result.fun)


def strip_mu(geom, x):
    """Beltrami coefficient of the strip map at x in [-1/2, 1/2]; independent of y"""
    da, db = geom.derivatives(x)
    w = db - boundary_u_prime(x)
    return complex(da - 1, w) / complex(da + 1, w)


class _Extension:
    """Extension of one finite balanced shear, developed once"""

    def __init__(self, service, s):
        self.service = service
        self.s = s
        self.h = develop_service.develop_diamond(coords_service.psi(s).materialize())
        self.atlases = {}
        self.frames = {}

    def atlas(self, v):
        if v not in self.atlases:
            self.atlases[v] = self.service.cell_atlas(self.s, v)
        return self.atlases[v]

    def frame(self, v):
        """Inverse of the Mobius map sending h(u_0), h(u_-1), h(v) to 0, 1, infinity"""
        if v not in self.frames:
            inverse = farey_service.to_infinity(v).inverse()
            points = [self.h(develop_service.point(p)) for p in (inverse(Rational(0)), inverse(Rational(-1)), v)]
            self.frames[v] = np.linalg.inv(three_point_matrix(*points))
        return self.frames[v]

    def __call__(self, z):
        w = farey_service.cayley(z)
        v = self.service.locate_cell(w)
        w2 = farey_service.to_infinity(v)(w)
        atlas = self.atlas(v)
        n = round(w2.real)
        x = w2.real - n
        geom = atlas.strip(n)
        alpha, beta = geom.alpha_beta(x)
        psi = atlas.position(n) + alpha + 1j * (beta - boundary_u(x) + w2.imag)
        target = -psi / atlas.gap(-1)
        m = self.frame(v)
        return (m[0, 0] * target + m[0, 1]) / (m[1, 0] * target + m[1, 1])


class QcExtService:
    """Service for the explicit quasiconformal extension"""

    boundary_u = staticmethod(boundary_u)
    strip_l2 = staticmethod(strip_l2)
    strip_sup = staticmethod(strip_sup)

    def alpha_beta(self, rho, lam, x):
        """
        Stretch functions of a strip and their derivatives

        Returns:
            tuple: (alpha, beta, alpha', beta') at x
        """
        geom = StripGeom(rho, lam)
        alpha, beta = geom.alpha_beta(x)
        da, db = geom.derivatives(x)
        return alpha, beta, da, db

    def strip_mu(self, rho, lam, x):
        return strip_mu(StripGeom(rho, lam), x)

    def strip_l2_2d(self, rho, lam):
        """
        2-D hyperbolic quadrature of |mu|^2 / y^2 over the strip above u

        Uses y = u(x) e^tau with tau in [0, 40], so dy / y^2 = e^-tau dtau / u(x).
        """
        geom = StripGeom(rho, lam)
        value, _ = integrate.dblquad(
            lambda tau, x: abs(strip_mu(geom, x)) ** 2 * math.exp(-tau) / boundary_u(x),
            -0.5, 0.5, 0.0, 40.0, epsabs=1e-11, epsrel=1e-11,
        )
        return value

    # ------------------------------------------------------------------
    # Cells
    # ------------------------------------------------------------------

    def cell_atlas(self, s, v):
        """
        Gap sequence exp(-p(e_n+)) of a finite shear along fan(v)

        Returns:
            CellAtlas: gaps over the fan window carrying the support
        """
        atlas = CellAtlas(vertex=v)
        table = coords_service.fan_tables(s).get(v)
        if table is None:
            return atlas
        for n in range(table.indices[0], table.indices[-1] + 1):
            plus, _ = table.tails(n)
            atlas.gaps[n] = math.exp(-float(plus))
        return atlas

    def cell_l2(self, atlas, window=None):
        """Sum of strip L2 norms of a cell, over strips with index in [-window, window]"""
        strips = atlas.strip_indices()
        if window is not None:
            strips = [n for n in strips if -window <= n <= window]
        return math.fsum(strip_l2(atlas.gap(n - 1), atlas.gap(n)) for n in strips)

    def cell_sup(self, atlas):
        return max((strip_sup(atlas.gap(n - 1), atlas.gap(n)) for n in atlas.strip_indices()), default=0.0)

    def extension_l2(self, s, max_gen, window=None):
        """
        Beltrami estimate of the extension of a finite balanced shear

        Args:
            s: finite balanced shear CoordFn
            max_gen: cells at vertices of generation <= max_gen are summed
            window: optional strip window per cell

        Returns:
            BeltramiEstimate
        """
        if not coords_service.check_finite_balanced(s):
            raise NotInP('the extension needs a finite balanced shear')
        cells = []
        for v in sorted(coords_service.fan_tables(s)):
            if farey_service.vertex_generation(v) > max_gen:
                continue
            atlas = self.cell_atlas(s, v)
            cells.append({
                'vertex': str(v),
                'l2': self.cell_l2(atlas, window),
                'sup': self.cell_sup(atlas),
            })
        estimate = BeltramiEstimate(
            sup_mu=max((c['sup'] for c in cells), default=0.0),
            l2_hyp=math.fsum(c['l2'] for c in cells),
            cells=cells,
            max_gen=max_gen,
        )
        logging.info(f"📐 Extension: sup|mu|={estimate.sup_mu:.6g}, L2={estimate.l2_hyp:.6g} over {len(cells)} cells")
        return estimate

    def qc_report(self, s, max_gen, window=None):
        """Result dict around extension_l2"""
        try:
            estimate = self.extension_l2(s, max_gen, window)
            return {'success': estimate.sup_mu < 1, **estimate.to_dict()}
        except NotInP:
            raise
        except Exception as e:
            logging.error(f"❌ Extension estimate failed: {str(e)}")
            return {'success': False, 'error': str(e)}

    # ------------------------------------------------------------------
    # The map
    # ------------------------------------------------------------------

    def locate_cell(self, w):
        """Vertex whose cell contains the half-plane point w"""
        mobius = IntegerMobius.identity()
        for _ in range(MAX_REDUCTION_STEPS):
            n = round(w.real)
            w = w - n
            mobius = IntegerMobius(1, -n, 0, 1) @ mobius
            if abs(w) >= 1:
                return mobius.inverse()(INFINITY)
            w = -1 / w
            mobius = IntegerMobius(0, -1, 1, 0) @ mobius
        raise ValueError('cell reduction did not terminate')

    def extension(self, s):
        """Callable extension z -> f(z) on the disk for a finite balanced shear"""
        if not coords_service.check_finite_balanced(s):
            raise NotInP('the extension needs a finite balanced shear')
        return _Extension(self, s)

    def extension_map(self, s, z):
        return self.extension(s)(z)

    def extension_grid(self, s, points):
        """Extension evaluated on many disk points, developing once"""
        f = self.extension(s)
        return np.array([f(complex(z)) for z in points])

    def polar_grid(self, n):
        """n x n polar grid of interior disk points"""
        radii = (np.arange(n) + 0.5) / n
        angles = np.arange(n) * (2 * math.pi / n) + 0.1
        return [r * cmath.exp(1j * t) for r in radii for t in angles]

    # ------------------------------------------------------------------
    # Counterexample
    # ------------------------------------------------------------------

    def counterexample_phi(self, x):
        if abs(x) <= 2:
            return x * math.log(2)
        return x * math.log(abs(x)) - x + 2 * math.copysign(1.0, x)

    def counterexample_phi_prime(self, x):
        if abs(x) <= 2:
            return math.log(2)
        return math.log(abs(x))

    def counterexample_shears(self, n_max):
        """Shears s(e_n) = log((phi(n+1) - phi(n))/(phi(n) - phi(n-1))) along fan(infinity), n = 1..n_max"""
        phi = self.counterexample_phi
        return [
            math.log((phi(n + 1) - phi(n)) / (phi(n) - phi(n - 1)))
            for n in range(1, n_max + 1)
        ]

    def counterexample_map(self):
        """The C^1 counterexample as a circle map"""
        return develop_service.from_real_line(
            self.counterexample_phi, self.counterexample_phi_prime, name='counterexample',
        )


# Singleton instance
qcext_service = QcExtService()
