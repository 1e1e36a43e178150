"""
Verification suites: numeric checks of the Farey, coordinate, developing and WP machinery
"""
import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from app.models.coordinates import CoordFn, SHEAR, DIAMOND
from app.models.farey import FareyEdge, Rational, INFINITY, ROOT_EDGE
from app.models.run_config import SUITES
from app.models.wp import QuadOnCircle
from app.services.coords_service import coords_service
from app.services.develop_service import develop_service
from app.services.farey_service import farey_service
from app.services.qcext_service import qcext_service
from app.services.wpgeom_service import wpgeom_service, sigma_closed, sigma_series, series_tail_bound

LOG2 = math.log(2)
WP_UNIT_NORM = 8 / math.pi * LOG2

SUITE_TOLERANCES = {
    'coords': {'roundtrip': 0.0},
    'farey': {'generation_sum': 1e-9, 'half_decay': 0.5},
    'sigma': {'exact': 0.0, 'real': 1e-12, 'complex': 1e-10},
    'wp': {'closed_form': 1e-12, 'symmetry': 1e-12, 'invariance': 1e-10, 'quadrature': 1e-4},
    'symplectic': {'combinatorial': 0.0, 'direct': 1e-6, 'comparison': 1e-5},
    'develop': {'roundtrip': 1e-9, 'c1': 1e-10, 'derivative': 1e-12, 'lambda': 1e-9},
    'qc': {'stability': 1e-8, 'scaling': 0.1},
    'hoelder': {'growth': 0.05, 'bound': 0.05},
    'counterexample': {'asymptotic': 0.2, 'stabilization': 0.01},
}


def check(name, measured, expected, tolerance, passed=None):
    """One named comparison; passes when |measured - expected| <= tolerance unless passed is given"""
    if passed is None:
        passed = abs(measured - expected) <= tolerance
    return {
        'name': name,
        'measured': float(measured),
        'expected': float(expected),
        'tolerance': float(tolerance),
        'passed': bool(passed),
    }


class VerifyService:
    """Service running the verification suites"""

    def __init__(self):
        self.suites = {
            'coords': self.coords_suite,
            'farey': self.farey_suite,
            'sigma': self.sigma_suite,
            'wp': self.wp_suite,
            'symplectic': self.symplectic_suite,
            'develop': self.develop_suite,
            'qc': self.qc_suite,
            'hoelder': self.hoelder_suite,
            'counterexample': self.counterexample_suite,
        }

    # ------------------------------------------------------------------
    # Random inputs
    # ------------------------------------------------------------------

    def random_coords(self, rng, kind, max_gen, max_edges, float_values=False, exact=False):
        """Finite coordinate function on edges of generation <= max_gen, values in [-1, 1]

        exact draws max_edges edges instead of a random count up to it.
        """
        edges = farey_service.edges_up_to(max_gen)
        count = max_edges if exact else int(rng.integers(1, max_edges + 1))
        chosen = rng.choice(len(edges), size=min(count, len(edges)), replace=False)
        entries = {}
        for index in sorted(int(i) for i in chosen):
            if float_values:
                entries[edges[index]] = float(rng.uniform(-1.0, 1.0))
            else:
                entries[edges[index]] = Fraction(int(rng.integers(-8, 9)), 8)
        return CoordFn(kind, entries)

    # ------------------------------------------------------------------
    # Suites
    # ------------------------------------------------------------------

    def coords_suite(self, rng, max_gen=8, trials=1000, shear_trials=20):
        tol = SUITE_TOLERANCES['coords']
        mismatches = 0
        for _ in range(trials):
            theta = self.random_coords(rng, DIAMOND, 5, 20)
            back = coords_service.psi(coords_service.phi(theta))
            if back.values_dict() != theta.values_dict():
                mismatches += 1
        edges = farey_service.edges_up_to(min(max_gen, 8))
        worst = Fraction(0)
        for _ in range(shear_trials):
            s = self.random_coords(rng, SHEAR, 4, 6)
            again = coords_service.phi(coords_service.psi(s))
            worst = max(worst, max(abs(again(e) - s(e)) for e in edges))
        delta = CoordFn.delta(DIAMOND, ROOT_EDGE)
        lhs, rhs = coords_service.h_identity_check(delta)
        return [
            check('psi_phi_roundtrip_mismatches', mismatches, 0, tol['roundtrip']),
            check('phi_psi_max_error', worst, 0, tol['roundtrip']),
            check('h_identity_delta', lhs, rhs, tol['roundtrip']),
        ]

    def farey_suite(self, rng, max_gen=12):
        tol = SUITE_TOLERANCES['farey']
        checks = [check('edges_up_to_5', len(farey_service.edges_up_to(5)), 125, 0)]
        sums = farey_service.farey_length_sums(1, max_gen)
        worst = max(abs((sums[n] - sums[n - 1]) - 2 * math.pi) for n in range(1, max_gen + 1))
        checks.append(check('generation_sum_2pi_max_error', worst, 0, tol['generation_sum']))
        checks.append(check('root_edge_length', sums[0], math.pi, tol['generation_sum']))
        squares = farey_service.farey_length_sums(2, 14)
        increments = [squares[n] - squares[n - 1] for n in range(1, 15)]
        tail = increments[6:]
        checks.append(check('l2_increments_decreasing', float(all(b < a for a, b in zip(tail, tail[1:]))), 1, 0))
        ratio = increments[13] / increments[6]
        checks.append(check('l2_increment_ratio_14_7', ratio, 0, tol['half_decay'], passed=ratio < tol['half_decay']))
        return checks

    def sigma_suite(self, rng, terms=100000):
        tol = SUITE_TOLERANCES['sigma']
        checks = [
            check('sigma(1,1)', wpgeom_service.sigma(1, 1).real, 0.25, tol['exact']),
            check('sigma(1,-1)', wpgeom_service.sigma(1, -1).real, 1.25 - 2 * LOG2, tol['real']),
        ]
        value = wpgeom_service.sigma(1j, 1)
        expected = complex((3 - math.pi) / 4, -(LOG2 - 1) / 2)
        checks.append(check('sigma(i,1)', abs(value - expected), 0, tol['complex']))
        bound = series_tail_bound(terms)
        worst = 0.0
        for t in rng.uniform(0, 2 * math.pi, size=20):
            z = cmath.exp(1j * float(t))
            worst = max(worst, abs(sigma_series(z, terms) - sigma_closed(z)))
        checks.append(check('series_vs_closed_form', worst, 0, bound))
        return checks

    def wp_suite(self, rng, quadrature=True):
        tol = SUITE_TOLERANCES['wp']
        q = wpgeom_service.standard_quad()
        checks = [check('unit_diamond_norm', wpgeom_service.metric_pairing(q, q), WP_UNIT_NORM, tol['closed_form'])]
        zero = CoordFn.zero(DIAMOND)
        delta = CoordFn.delta(DIAMOND, ROOT_EDGE)
        checks.append(check('full_metric_identity', wpgeom_service.full_metric(delta, delta, zero),
                            WP_UNIT_NORM, tol['closed_form']))
        quads = [wpgeom_service.farey_quad_on_circle(e) for e in farey_service.edges_up_to(1)]
        gram = wpgeom_service.gram_matrix(quads)
        checks.append(check('gram_symmetry', np.max(np.abs(gram - gram.T)), 0, tol['symmetry']))
        smallest = float(np.min(np.linalg.eigvalsh((gram + gram.T) / 2)))
        checks.append(check('gram_min_eigenvalue', smallest, 0, 0, passed=smallest > 0))
        mobius = develop_service.hyperbolic(cmath.exp(0.4j), cmath.exp(2.5j), float(rng.uniform(0.2, 1.0)))
        moved = [wpgeom_service.transport_quad(mobius, p) for p in quads[:2]]
        checks.append(check('mobius_invariance',
                            wpgeom_service.metric_pairing(*moved), wpgeom_service.metric_pairing(*quads[:2]),
                            tol['invariance']))
        if quadrature:
            rotated = QuadOnCircle(tuple(z * cmath.exp(0.3j) for z in q.vertices))
            metric, _ = wpgeom_service.metric_pairing_quadrature(q, rotated, epsabs=1e-7)
            checks.append(check('quadrature_oracle', metric, wpgeom_service.metric_pairing(q, rotated),
                                tol['quadrature']))
        return checks

    def special_quad(self, theta):
        return QuadOnCircle((1, cmath.exp(1j * theta), 1j, -1))

    def symplectic_suite(self, rng, max_gen=4):
        tol = SUITE_TOLERANCES['symplectic']
        edges = farey_service.edges_up_to(max_gen)
        mismatches = 0
        seen = set()
        for e1 in edges:
            d1 = CoordFn.delta(DIAMOND, e1)
            for e2 in edges:
                value = wpgeom_service.symplectic(d1, CoordFn.delta(DIAMOND, e2))
                expected = wpgeom_service.symplectic_classification(e1, e2)
                seen.add(expected)
                if value != expected:
                    mismatches += 1
        checks = [
            check('combinatorial_mismatches', mismatches, 0, tol['combinatorial']),
            check('all_cases_seen', float(seen == {-1, 0, 1}), 1, 0),
        ]
        q = wpgeom_service.standard_quad()
        for theta in (math.pi / 6, math.pi / 4, math.pi / 3):
            checks.append(check(f'direct_special_case({theta:.6f})',
                                wpgeom_service.symplectic_direct(q, self.special_quad(theta)), -1, tol['direct']))
        quads = {e: wpgeom_service.farey_quad_on_circle(e) for e in farey_service.edges_up_to(2)}
        worst = 0.0
        for e1, q1 in quads.items():
            for e2, q2 in quads.items():
                expected = wpgeom_service.symplectic_classification(e1, e2)
                worst = max(worst, abs(wpgeom_service.symplectic_direct(q1, q2) - expected))
        checks.append(check('direct_vs_combinatorial', worst, 0, tol['comparison']))
        theta1 = self.random_coords(rng, DIAMOND, 3, 5)
        theta2 = self.random_coords(rng, DIAMOND, 3, 5)
        checks.append(check('antisymmetry',
                            wpgeom_service.symplectic(theta1, theta2) + wpgeom_service.symplectic(theta2, theta1),
                            0, tol['combinatorial']))
        return checks

    def develop_suite(self, rng, trials=200, max_gen=4):
        tol = SUITE_TOLERANCES['develop']
        edges = farey_service.edges_up_to(max_gen)
        worst_roundtrip = 0.0
        worst_c1 = 0.0
        for _ in range(trials):
            theta = self.random_coords(rng, DIAMOND, max_gen, 15, float_values=True, exact=True)
            h = develop_service.develop_diamond(theta)
            worst_c1 = max(worst_c1, develop_service.c1_defect(h))
            worst_roundtrip = max(worst_roundtrip, max(
                abs(develop_service.extract_diamond(h, e) - float(theta(e))) for e in edges
            ))
        checks = [
            check('diamond_roundtrip_max_error', worst_roundtrip, 0, tol['roundtrip']),
            check('c1_defect', worst_c1, 0, tol['c1']),
        ]
        h = develop_service.develop_diamond(CoordFn.delta(DIAMOND, ROOT_EDGE, 0.5))
        checks.append(check("diamond_derivative_at_1", develop_service.derivative(h, 1 + 0j),
                            math.exp(0.5), tol['derivative']))
        checks.append(check("diamond_derivative_at_i", develop_service.derivative(h, 1j),
                            math.exp(-0.5), tol['derivative']))
        shear = develop_service.single_shear_homeo(INFINITY, Rational(0), 0.5)
        checks.append(check("shear_derivative_minus", develop_service.derivative(shear, INFINITY, '-'),
                            math.exp(0.5), tol['derivative']))
        checks.append(check("shear_derivative_plus", develop_service.derivative(shear, INFINITY, '+'),
                            1.0, tol['derivative']))
        s = self.random_coords(rng, SHEAR, 3, 8, float_values=True)
        images = develop_service.develop_vertices(s, max_gen)
        checks.append(check('shear_roundtrip_max_error', max(
            abs(develop_service.extract_shear(images, e) - float(s(e))) for e in edges
        ), 0, tol['roundtrip']))
        checks.append(check('disjoint_commutation', self.commutation_defect(), 0, tol['roundtrip']))
        decoration = develop_service.decoration(h, 3)
        checks.append(check('lambda_length_agreement', max(
            abs(develop_service.log_lambda_from_decoration(decoration, e) - develop_service.log_lambda(h, e))
            for e in farey_service.edges_up_to(2)
        ), 0, tol['lambda']))
        return checks

    def commutation_defect(self, samples=64):
        """Largest gap between both composition orders of diamond shears on disjoint quads and the developed map"""
        theta = CoordFn(DIAMOND, {FareyEdge.of('0', '1'): 0.7, FareyEdge.of('-1', '0'): -0.4})
        edges = sorted(theta.support(), key=lambda e: e.sort_key())
        maps = [
            develop_service.compose_diamond(theta, order=edges),
            develop_service.compose_diamond(theta, order=edges[::-1]),
            develop_service.develop_diamond(theta),
        ]
        angles = np.linspace(0, 2 * math.pi, samples, endpoint=False)
        return max(
            abs(maps[i](cmath.exp(1j * a)) - maps[j](cmath.exp(1j * a)))
            for a in angles for i, j in ((0, 1), (0, 2), (1, 2))
        )

    def qc_suite(self, rng):
        tol = SUITE_TOLERANCES['qc']
        identity = qcext_service.extension_l2(CoordFn.zero(SHEAR), 4)
        checks = [
            check('identity_sup_mu', identity.sup_mu, 0, 0),
            check('identity_l2', identity.l2_hyp, 0, 0),
        ]
        norms = {}
        for t in (0.125, 0.25, 0.5, 1.0):
            s = coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE, Fraction(t)))
            shallow = qcext_service.extension_l2(s, 2)
            deep = qcext_service.extension_l2(s, 4)
            norms[t] = deep.l2_hyp
            if t >= 0.25:
                checks.append(check(f'sup_mu_below_1(t={t})', deep.sup_mu, 1, 0, passed=deep.sup_mu < 1))
                checks.append(check(f'l2_stable(t={t})', deep.l2_hyp, shallow.l2_hyp, tol['stability']))
        ratio = (norms[0.25] / 0.25 ** 2) / (norms[0.125] / 0.125 ** 2)
        checks.append(check('small_t_scaling', ratio, 1, tol['scaling']))
        return checks

    def hoelder_suite(self, rng, max_gen=12):
        tol = SUITE_TOLERANCES['hoelder']
        h = develop_service.hoelder_diffeo(0.3)
        sums = develop_service.diamond_l2_sequence(h, max_gen)
        growth = (sums[-1] - sums[-3]) / sums[-3]
        checks = [check('l2_growth_last_two_generations', growth, 0, tol['growth'],
                        passed=0 <= growth < tol['growth'])]
        shallow = develop_service.farey_bound_constant(h, 6)
        deep = develop_service.farey_bound_constant(h, max_gen)
        checks.append(check('farey_bound_constant', deep, shallow, tol['bound'] * shallow,
                            passed=deep <= (1 + tol['bound']) * shallow))
        return checks

    def counterexample_suite(self, rng, n_max=10000):
        tol = SUITE_TOLERANCES['counterexample']
        shears = qcext_service.counterexample_shears(n_max)
        scaled = [shears[n - 1] * n * math.log(n) for n in range(1000, n_max + 1)]
        checks = [
            check('scaled_shear_min', min(scaled), 1, tol['asymptotic']),
            check('scaled_shear_max', max(scaled), 1, tol['asymptotic']),
        ]
        partial = np.cumsum(shears)
        growing = bool(np.all(np.diff(partial[1:]) > 0))
        checks.append(check('partial_sums_increasing', float(growing), 1, 0))
        checks.append(check('partial_sum_growth', partial[-1] - partial[999], 0, 0,
                            passed=partial[-1] - partial[999] > 0.2))
        squares = np.cumsum(np.square(shears))
        change = (squares[-1] - squares[999]) / squares[-1]
        checks.append(check('square_sums_stable', change, 0, tol['stabilization']))
        return checks

    # ------------------------------------------------------------------
    # Runner
    # ------------------------------------------------------------------

    def run_suite(self, name, seed=0, **options):
        """
        Run one suite

        Returns:
            dict: {'success', 'suite', 'checks', 'tolerances'} or {'success': False, 'error'}
        """
        try:
            rng = np.random.default_rng(seed)
            checks = self.suites[name](rng, **options)
            success = all(c['passed'] for c in checks)
            if success:
                logging.info(f"✅ Suite {name}: {len(checks)} checks passed")
            else:
                failed = [c['name'] for c in checks if not c['passed']]
                logging.error(f"❌ Suite {name} failed: {', '.join(failed)}")
            return {
                'success': success,
                'suite': name,
                'checks': checks,
                'tolerances': SUITE_TOLERANCES[name],
            }
        except Exception as e:
            logging.error(f"❌ Suite {name} raised: {str(e)}")
            return {'success': False, 'suite': name, 'error': str(e)}

    def run_suites(self, names, seed=0):
        """Run suites in parallel, results in canonical order"""
        ordered = [name for name in SUITES if name in names]
        with ThreadPoolExecutor(max_workers=max(1, len(ordered))) as pool:
            results = list(pool.map(lambda name: self.run_suite(name, seed), ordered))
        return {
            'success': all(r['success'] for r in results),
            'seed': seed,
            'suites': results,
        }


# Singleton instance
verify_service = VerifyService()
