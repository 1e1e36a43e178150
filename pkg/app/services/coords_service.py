"""
Coordinate service: the maps Phi and Psi, fan sums and class diagnostics
"""
import bisect
import json
import logging
import math
from collections import defaultdict
from fractions import Fraction
from itertools import accumulate

from app.models.coordinates import CoordFn, FanSums, ClassReport, SHEAR, DIAMOND
from app.services.farey_service import farey_service
from app.utils.errors import CoordinateFileError, NotInP
from app.utils.validators import validate_coordinate_data


class _FanTable:
    """Sorted fan indices and prefix sums of a finite shear at one vertex"""

    def __init__(self, pairs):
        pairs = sorted(pairs)
        self.indices = [idx for idx, _ in pairs]
        self.values = [value for _, value in pairs]
        self.prefix = [Fraction(0)] + list(accumulate(self.values))
        self.total = self.prefix[-1]

    def tails(self, idx):
        """(p_plus, p_minus) at fan index idx"""
        below = self.prefix[bisect.bisect_left(self.indices, idx)]
        upto = self.prefix[bisect.bisect_right(self.indices, idx)]
        return self.total - upto, below


class CoordsService:
    """Service for shear and diamond-shear coordinates"""

    def _offset(self, fan_offset, v):
        if callable(fan_offset):
            return fan_offset(v)
        return fan_offset

    def fan_tables(self, s, fan_offset=0):
        """Per-vertex fan tables of a finitely supported shear"""
        grouped = defaultdict(list)
        for e, value in s.items():
            for v in e.endpoints:
                idx = farey_service.fan_index(v, e) + self._offset(fan_offset, v)
                grouped[v].append((idx, value))
        return {v: _FanTable(pairs) for v, pairs in grouped.items()}

    # ------------------------------------------------------------------
    # Phi and Psi
    # ------------------------------------------------------------------

    def phi(self, theta):
        """
        Shear coordinates of a diamond-shear function

        Args:
            theta: CoordFn of kind diamond, finite or lazy

        Returns:
            CoordFn: s(e) = sum of theta(e') * sign(Q_e', e) over the four e'
            sharing a triangle with e; finite when theta is finite
        """
        if theta.kind != DIAMOND:
            raise ValueError('phi expects diamond coordinates')
        if theta.is_finite:
            acc = defaultdict(Fraction)
            for e, value in theta.items():
                for edge, sign in farey_service.adjacent_edges(e):
                    acc[edge] += sign * value
            return CoordFn(SHEAR, acc)

        def evaluate(e):
            total = Fraction(0)
            for neighbour, _ in farey_service.adjacent_edges(e):
                value = theta(neighbour)
                if value != 0:
                    total += value * self._quad_sign(neighbour, e)
            return total

        return CoordFn(SHEAR, evaluator=evaluate)

    def _quad_sign(self, diagonal, e):
        for edge, sign in farey_service.adjacent_edges(diagonal):
            if edge == e:
                return sign
        return 0

    def psi(self, s, fan_offset=0):
        """
        Diamond-shear coordinates of a finitely supported shear

        Args:
            s: CoordFn of kind shear with finite support
            fan_offset: integer (or function of the vertex) added to every fan index

        Returns:
            CoordFn: lazy diamond function, 1/4 of the half-fan differences at
            both endpoints; carries its finite support when s is balanced
        """
        if s.kind != SHEAR:
            raise ValueError('psi expects shear coordinates')
        if not s.is_finite:
            raise NotInP('psi needs a finitely supported shear')
        tables = self.fan_tables(s, fan_offset)

        def evaluate(e):
            total = Fraction(0)
            for v in e.endpoints:
                table = tables.get(v)
                if table is None:
                    continue
                idx = farey_service.fan_index(v, e) + self._offset(fan_offset, v)
                plus, minus = table.tails(idx)
                total += minus - plus
            return total / 4

        candidates = None
        if all(table.total == 0 for table in tables.values()):
            candidates = set()
            for v, table in tables.items():
                shift = self._offset(fan_offset, v)
                lo, hi = table.indices[0] - shift, table.indices[-1] - shift
                candidates.update(farey_service.fan(v, lo, hi))
        logging.info(f"🧮 Psi built on {len(tables)} fans")
        return CoordFn(DIAMOND, evaluator=evaluate, candidates=candidates)

    # ------------------------------------------------------------------
    # Fan sums and classes
    # ------------------------------------------------------------------

    def fan_partial_sums(self, s, v, e):
        """(p_plus, p_minus) of s at e in fan(v)"""
        table = self.fan_tables(s).get(v)
        if table is None:
            return Fraction(0), Fraction(0)
        return table.tails(farey_service.fan_index(v, e))

    def fan_sums(self, s, v):
        """FanSums over the window of fan(v) that carries the support of s"""
        table = self.fan_tables(s).get(v)
        result = FanSums(vertex=v)
        if table is None:
            return result
        lo, hi = table.indices[0] - 1, table.indices[-1] + 1
        for idx, e in zip(range(lo, hi + 1), farey_service.fan(v, lo, hi)):
            result.sums[e] = table.tails(idx)
        return result

    def check_finite_balanced(self, s):
        """True iff s is finitely supported and every fan sums to zero"""
        if not s.is_finite:
            return False
        return all(table.total == 0 for table in self.fan_tables(s).values())

    def h_identity_check(self, theta):
        """
        Both sides of the fan-tail identity for a finite diamond function

        Returns:
            tuple: (lhs, rhs) with lhs the sum of p(e+)^2 over all fans of
            Phi(theta) and rhs = 2 sum theta^2 + sum over adjacent pairs of
            (theta(e) - theta(e'))^2
        """
        s = self.phi(theta)
        lhs = Fraction(0)
        for table in self.fan_tables(s).values():
            for idx in range(table.indices[0], table.indices[-1]):
                plus, _ = table.tails(idx)
                lhs += plus * plus
        rhs = 2 * sum((value * value for _, value in theta.items()), Fraction(0))
        pairs = set()
        for e, _ in theta.items():
            for neighbour, _ in farey_service.adjacent_edges(e):
                pairs.add(frozenset((e, neighbour)))
        for pair in pairs:
            e, f = tuple(pair)
            diff = theta(e) - theta(f)
            rhs += diff * diff
        return lhs, rhs

    def fan_values(self, s, v, lo, hi):
        """s(e_lo) .. s(e_hi) along fan(v)"""
        return [s(e) for e in farey_service.fan(v, lo, hi)]

    def qs_ratio(self, s, v, k, n):
        """
        Quasisymmetry ratio s(k, n; v) of the shear along fan(v)

        Returns:
            float: sum_{j=0..n} exp(s_k + .. + s_{k+j}) divided by
            1 + sum_{j=1..n} exp(-s_{k-1} - .. - s_{k-j})
        """
        forward = [float(x) for x in self.fan_values(s, v, k, k + n)]
        backward = [float(x) for x in self.fan_values(s, v, k - n, k - 1)] if n > 0 else []
        numerator = math.fsum(math.exp(x) for x in accumulate(forward))
        running = 0.0
        denominator = 1.0
        for value in reversed(backward):
            running += value
            denominator += math.exp(-running)
        return numerator / denominator

    def l2_norms(self, f, max_gen=None):
        """Sum of f(e)^2 over the support, or over edges of generation <= max_gen"""
        if max_gen is not None:
            f = self.truncate(f, max_gen)
        return sum((value * value for _, value in f.items()), Fraction(0))

    def truncate(self, f, max_gen):
        """Finite restriction of f to edges of generation <= max_gen"""
        if f.is_finite:
            return CoordFn(f.kind, {
                e: value for e, value in f.items() if farey_service.generation(e) <= max_gen
            })
        return f.on(farey_service.edges_up_to(max_gen))

    def max_fan_window_sum(self, s):
        """Largest |s(e_n) + .. + s(e_m)| over all fans and windows"""
        best = Fraction(0)
        for table in self.fan_tables(s).values():
            best = max(best, max(table.prefix) - min(table.prefix))
        return best

    def class_report(self, f, max_gen=8, window=8):
        """
        Class diagnostics of a finite coordinate function

        Args:
            f: finite CoordFn (shear or diamond)
            max_gen: generation cutoff for the diamond l2 norm
            window: range of k and n sampled for the QS ratio

        Returns:
            ClassReport
        """
        if f.kind == DIAMOND:
            theta = self.truncate(f, max_gen)
            s = self.phi(theta)
        else:
            s = f.materialize()
            theta = self.truncate(self.psi(s), max_gen)
        tables = self.fan_tables(s)
        ratios = [
            self.qs_ratio(s, v, k, n)
            for v in sorted(tables)
            for k in range(-window, window + 1)
            for n in range(window + 1)
        ]
        qs_range = (min(ratios), max(ratios)) if ratios else (1.0, 1.0)
        report = ClassReport(
            finite_balanced=self.check_finite_balanced(s),
            l2_shear=float(self.l2_norms(s)),
            l2_diamond=float(self.l2_norms(theta)),
            max_fan_window_sum=float(self.max_fan_window_sum(s)),
            qs_ratio_range=qs_range,
            max_gen=max_gen,
            window=window,
        )
        logging.info(f"🧮 Class report: balanced={report.finite_balanced}, l2={report.l2_shear:.6g}")
        return report

    def roundtrip_report(self, f, max_gen=8, tol=1e-9):
        """
        Check Psi(Phi(theta)) = theta or Phi(Psi(s)) = s on a coordinate file

        Args:
            f: finite CoordFn
            max_gen: edges of generation <= max_gen are compared for shear input
            tol: allowed edgewise error

        Returns:
            dict: success flag, errors and the class report
        """
        try:
            if f.kind == DIAMOND:
                back = self.psi(self.phi(f))
                error = max((abs(back(e) - value) for e, value in f.items()), default=0)
                exact = back.values_dict() == f.values_dict()
                check = 'psi(phi(theta)) = theta'
            else:
                again = self.phi(self.psi(f))
                edges = set(farey_service.edges_up_to(max_gen)) | set(f.support())
                error = max((abs(again(e) - f(e)) for e in edges), default=0)
                exact = error == 0
                check = 'phi(psi(s)) = s'
            success = exact or float(error) <= tol
            if success:
                logging.info(f"✅ Round-trip {check} holds, max error {float(error):.3g}")
            else:
                logging.error(f"❌ Round-trip {check} fails, max error {float(error):.3g}")
            return {
                'success': success,
                'kind': f.kind,
                'check': check,
                'exact': exact,
                'max_error': float(error),
                'tol': tol,
                'class_report': self.class_report(f, max_gen).to_dict(),
            }
        except Exception as e:
            logging.error(f"❌ Round-trip failed: {str(e)}")
            return {'success': False, 'error': str(e)}

    # ------------------------------------------------------------------
    # Files
    # ------------------------------------------------------------------

    def load_coordinates(self, path):
        """
        Read a coordinate JSON file

        Raises:
            CoordinateFileError: unreadable, malformed or invalid document
        """
        try:
            with open(path, 'r', encoding='utf-8') as handle:
                data = json.load(handle)
        except (OSError, ValueError) as e:
            raise CoordinateFileError(f'cannot read {path}: {e}')
        ok, message = validate_coordinate_data(data)
        if not ok:
            raise CoordinateFileError(f'{path}: {message}')
        logging.info(f"✅ Loaded {len(data['entries'])} {data['kind']} coordinates from {path}")
        return CoordFn.from_dict(data)


# Singleton instance
coords_service = CoordsService()
