"""
Weil-Petersson service: sigma kernel, metric and symplectic pairings, Bers differentials
"""
import cmath
import logging
import math

import numpy as np
from scipy import integrate

from app.models.coordinates import DIAMOND
from app.models.wp import SigmaValue, QuadOnCircle, ZygmundField, ZygmundVector, QuadDifferential
from app.services.coords_service import coords_service
from app.services.develop_service import develop_service
from app.services.farey_service import farey_service

# Below this distance from z = 1 sigma returns its limit 1/4.
SIGMA_LIMIT_TOL = 1e-14


def sigma_closed(z):
    """(1 - z)^2 L / (2 z^2) + 3/4 - 1/(2z) with L = -log(1 - z)"""
    if abs(1 - z) < SIGMA_LIMIT_TOL:
        return complex(0.25)
    log_term = -cmath.log(1 - z)
    return (1 - z) ** 2 * log_term / (2 * z * z) + 0.75 - 1 / (2 * z)


def sigma_series(z, terms):
    """sum_{p=0}^{terms} z^(p+1)/((p+1)(p+2)(p+3))"""
    p = np.arange(terms + 1, dtype=float)
    powers = np.exp(1j * np.angle(z) * (p + 1)) * abs(z) ** (p + 1)
    return complex(np.sum(powers / ((p + 1) * (p + 2) * (p + 3))))


def series_tail_bound(terms):
    return 1.0 / (2 * (terms + 2) * (terms + 3))


class WpGeomService:
    """Service for Weil-Petersson geometry in shear coordinates"""

    def sigma(self, a, b, tol=None):
        """
        sigma(a, b) for unit complex a, b

        Args:
            a, b: points on the unit circle
            tol: when given, the value is the series truncated once its tail bound is below tol

        Returns:
            complex
        """
        return self.sigma_value(a, b, tol).value

    def sigma_value(self, a, b, tol=None):
        z = complex(a) * complex(b).conjugate()
        if tol is None:
            return SigmaValue(z=z, value=sigma_closed(z), method='closed_form')
        terms = 0
        while series_tail_bound(terms) > tol:
            terms = max(1, terms * 2)
        return SigmaValue(z=z, value=sigma_series(z, terms), method=f'series({terms})',
                          tail_bound=series_tail_bound(terms))

    def quad_coefficients(self, quad):
        """c_j = (-1)^j a_j^2 R_j with R_j = (a_{j+1} - a_{j-1})/((a_{j+1} - a_j)(a_j - a_{j-1}))"""
        v = quad.vertices
        coefficients = []
        for j in range(4):
            prev, cur, nxt = v[j - 1], v[j], v[(j + 1) % 4]
            r = (nxt - prev) / ((nxt - cur) * (cur - prev))
            coefficients.append((-1) ** j * cur * cur * r)
        return coefficients

    def _kernel_sum(self, q1, q2):
        c1 = self.quad_coefficients(q1)
        c2 = self.quad_coefficients(q2)
        total = 0j
        for cj, aj in zip(c1, q1.vertices):
            for dk, bk in zip(c2, q2.vertices):
                total += cj * dk.conjugate() * sigma_closed(aj * bk.conjugate())
        return total

    def metric_pairing(self, q1, q2):
        """
        Weil-Petersson pairing of two unit diamond shears

        Args:
            q1, q2: QuadOnCircle, each sheared along (vertices[0], vertices[2])

        Returns:
            float: (2/pi) Re sum_{j,k} c_j conj(d_k) sigma(a_j, b_k)
        """
        return 2 / math.pi * self._kernel_sum(q1, q2).real

    def symplectic_direct(self, q1, q2):
        """-(2/pi) Im of the same kernel sum"""
        return -2 / math.pi * self._kernel_sum(q1, q2).imag

    def standard_quad(self):
        return QuadOnCircle((1, 1j, -1, -1j))

    def farey_quad_on_circle(self, e, h=None):
        """Disk quad of Q_e, or of its image h(Q_e)"""
        points = [farey_service.to_disk(v) for v in farey_service.farey_quad(e).vertices]
        if h is not None:
            points = [h(z) for z in points]
        return QuadOnCircle(tuple(points))

    def transport_quad(self, mobius, quad):
        return QuadOnCircle(tuple(mobius(z) for z in quad.vertices))

    def full_metric(self, theta1, theta2, base):
        """
        Pairing of two finite diamond tangent vectors at the developed base point

        Returns:
            float: sum of theta1(e1) theta2(e2) g(h(Q_e1), h(Q_e2))
        """
        h = develop_service.develop_diamond(base)
        quads = {}
        total = []
        for e1, w1 in theta1.items():
            for e2, w2 in theta2.items():
                for e in (e1, e2):
                    if e not in quads:
                        quads[e] = self.farey_quad_on_circle(e, h)
                total.append(float(w1) * float(w2) * self.metric_pairing(quads[e1], quads[e2]))
        logging.info(f"🔷 Full metric over {len(total)} quad pairs")
        return math.fsum(total)

    def gram_matrix(self, quads):
        return np.array([[self.metric_pairing(p, q) for q in quads] for p in quads])

    # ------------------------------------------------------------------
    # Symplectic form in coordinates
    # ------------------------------------------------------------------

    def symplectic(self, theta1, theta2):
        """
        omega = sum theta1(e) Phi(theta2)(e) = -sum Phi(theta1)(e) theta2(e)

        Args:
            theta1, theta2: diamond CoordFn, at least one finitely supported
        """
        if theta1.kind != DIAMOND or theta2.kind != DIAMOND:
            raise ValueError('symplectic expects diamond coordinates')
        if theta1.is_finite:
            s2 = coords_service.phi(theta2)
            return sum((value * s2(e) for e, value in theta1.items()), 0)
        s1 = coords_service.phi(theta1)
        return -sum((s1(e) * value for e, value in theta2.items()), 0)

    def symplectic_classification(self, e1, e2):
        """+1, -1 or 0 for unit diamonds on e1, e2 from the fan order at a shared vertex"""
        if e1 == e2:
            return 0
        neighbours = [edge for edge, _ in farey_service.adjacent_edges(e1)]
        if e2 not in neighbours:
            return 0
        (v,) = set(e1.endpoints) & set(e2.endpoints)
        step = farey_service.fan_index(v, e2) - farey_service.fan_index(v, e1)
        return 1 if step == 1 else -1

    # ------------------------------------------------------------------
    # Differentials and Zygmund fields
    # ------------------------------------------------------------------

    def quad_differential(self, shear):
        """Bers differential of a finite shear CoordFn"""
        return QuadDifferential(terms=[
            ((e.a.to_float(), e.b.to_float()), float(weight)) for e, weight in shear.items()
        ])

    def quad_differential_on_circle(self, quad):
        """Bers differential of a unit diamond on a disk quad, in half-plane coordinates"""
        points = [farey_service.cayley(z) for z in quad.vertices]
        points = [math.inf if p == math.inf else p.real for p in points]
        terms = []
        for j in range(4):
            sign = 1 if j % 2 == 0 else -1
            terms.append(((points[j], points[(j + 1) % 4]), float(sign)))
        return QuadDifferential(terms=terms)

    def bers_phi(self, support, z):
        """
        Infinitesimal Bers differential at z in the lower half-plane

        Args:
            support: list of ((a, b), weight) with real endpoints, math.inf allowed
            z: complex with Im z < 0
        """
        if not z.imag < 0:
            raise ValueError('bers_phi is evaluated in the lower half-plane')
        return QuadDifferential(terms=list(support))(z)

    def bers_phi_diamond(self, points, z):
        """Simplified differential (i/pi) sum (-1)^j R_j/(z - x_j) of a unit diamond on finite real points"""
        if not z.imag < 0:
            raise ValueError('bers_phi is evaluated in the lower half-plane')
        total = 0j
        for j in range(4):
            prev, cur, nxt = points[j - 1], points[j], points[(j + 1) % 4]
            r = (nxt - prev) / ((nxt - cur) * (cur - prev))
            total += (-1) ** j * r / (z - cur)
        return 1j / math.pi * total

    def harmonic_beltrami(self, phi, z):
        """-2 y^2 phi(conj z) at z in the upper half-plane"""
        if not z.imag > 0:
            raise ValueError('harmonic_beltrami is evaluated in the upper half-plane')
        return -2 * z.imag ** 2 * phi(z.conjugate())

    def metric_pairing_quadrature(self, q1, q2, epsabs=1e-8):
        """
        Hermitian pairing of harmonic Beltrami differentials by quadrature

        Integrates mu1 conj(mu2) / y^2 over the half-plane, pulled back to the
        disk by the Cayley map with area element 4r dr dtheta/(1 - r^2)^2.

        Returns:
            tuple: (metric, symplectic) = (Re, -Im) of the integral
        """
        phi1 = self.quad_differential_on_circle(q1)
        phi2 = self.quad_differential_on_circle(q2)

        def integrand(r, t, part):
            w = farey_service.cayley(r * cmath.exp(1j * t))
            mu1 = self.harmonic_beltrami(phi1, w)
            mu2 = self.harmonic_beltrami(phi2, w)
            value = mu1 * mu2.conjugate() / (w.imag ** 2) * 4 * r / (1 - r * r) ** 2
            return value.real if part == 'real' else value.imag

        real, _ = integrate.dblquad(lambda r, t: integrand(r, t, 'real'), 0, 2 * math.pi, 0, 1,
                                    epsabs=epsabs, epsrel=1e-8)
        imag, _ = integrate.dblquad(lambda r, t: integrand(r, t, 'imag'), 0, 2 * math.pi, 0, 1,
                                    epsabs=epsabs, epsrel=1e-8)
        logging.info(f"🔷 Quadrature pairing: metric={real:.8g}, symplectic={-imag:.8g}")
        return real, -imag

    def wp_report(self, theta1, theta2, base, quadrature=False):
        """
        Metric and symplectic pairing of two finite diamond tangent vectors

        Args:
            theta1, theta2: finite diamond CoordFn
            base: finite diamond CoordFn of the base point
            quadrature: add the quadrature oracle value for single-quad inputs

        Returns:
            dict: {'success', 'metric', 'symplectic', 'method', 'tolerances'}
        """
        try:
            report = {
                'success': True,
                'metric': self.full_metric(theta1, theta2, base),
                'symplectic': float(self.symplectic(theta1, theta2)),
                'method': 'closed_form',
                'tolerances': {'closed_form': 1e-12},
            }
            if quadrature:
                (e1, w1), = theta1.items()
                (e2, w2), = theta2.items()
                h = develop_service.develop_diamond(base)
                metric, symplectic = self.metric_pairing_quadrature(
                    self.farey_quad_on_circle(e1, h), self.farey_quad_on_circle(e2, h),
                )
                scale = float(w1) * float(w2)
                report['quadrature'] = {'metric': scale * metric, 'symplectic': scale * symplectic}
                report['method'] = 'closed_form+quadrature'
                report['tolerances']['quadrature'] = 1e-4
            logging.info(f"✅ WP report: metric={report['metric']:.10g}, symplectic={report['symplectic']:.10g}")
            return report
        except Exception as e:
            logging.error(f"❌ WP report failed: {str(e)}")
            return {'success': False, 'error': str(e)}

    def zygmund_field(self, a, b):
        """
        Zygmund field of the edge (a, b)

        Args:
            a, b: real numbers or math.inf, a != b

        Returns:
            ZygmundField
        """
        if a == b:
            raise ValueError('zygmund_field needs two distinct endpoints')
        if a == math.inf:
            a, b = b, a
        if b == math.inf:
            if a >= 0:
                return ZygmundField(a, b, 'right')
            if a <= -1:
                return ZygmundField(a, b, 'left')
            raise ValueError(f'half-line field at {a} has no fixed side')
        a, b = min(a, b), max(a, b)
        return ZygmundField(a, b, 'finite')

    def zygmund_vector(self, shear):
        """sum of s(e) u_e over a finite shear"""
        return ZygmundVector(terms=[
            (self.zygmund_field(e.a.to_float(), e.b.to_float()), float(weight))
            for e, weight in shear.items()
        ])


# Singleton instance
wpgeom_service = WpGeomService()
