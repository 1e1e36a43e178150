"""
Tests for shear and diamond-shear coordinates and the maps Phi, Psi
"""
import json
from fractions import Fraction

import pytest

from app.models.coordinates import CoordFn, SHEAR, DIAMOND
from app.models.farey import FareyEdge, IntegerMobius, INFINITY, ZERO, ROOT_EDGE
from app.services.coords_service import coords_service
from app.services.farey_service import farey_service
from app.services.verify_service import verify_service
from app.utils.errors import CoordinateFileError, NotInP


def edge(a, b):
    return FareyEdge.of(a, b)


class TestCoordFn:
    def test_zeros_dropped(self):
        f = CoordFn(SHEAR, {ROOT_EDGE: 0, edge('0', '1'): 2})
        assert f.support() == [edge('0', '1')]
        assert f(ROOT_EDGE) == 0

    def test_int_values_become_fractions(self):
        assert isinstance(CoordFn(SHEAR, {ROOT_EDGE: 3})(ROOT_EDGE), Fraction)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            CoordFn(SHEAR, {ROOT_EDGE: float('nan')})
        with pytest.raises(TypeError):
            CoordFn(SHEAR, {ROOT_EDGE: True})

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            CoordFn('twist', {})

    def test_arithmetic(self):
        a = CoordFn(DIAMOND, {ROOT_EDGE: 1, edge('0', '1'): 2})
        b = CoordFn(DIAMOND, {ROOT_EDGE: -1})
        total = a + b
        assert total.support() == [edge('0', '1')]
        assert (a - b)(ROOT_EDGE) == 2
        assert (3 * a)(edge('0', '1')) == 6
        assert (-a)(ROOT_EDGE) == -1

    def test_mixed_kinds_rejected(self):
        with pytest.raises(ValueError):
            CoordFn(DIAMOND, {ROOT_EDGE: 1}) + CoordFn(SHEAR, {ROOT_EDGE: 1})

    def test_transport(self):
        f = CoordFn(SHEAR, {edge('0', '1'): Fraction(1, 2)})
        moved = f.transport(IntegerMobius(1, 1, 0, 1))
        assert moved.values_dict() == {edge('1', '2'): Fraction(1, 2)}

    def test_lazy_without_support(self):
        f = CoordFn(SHEAR, evaluator=lambda e: Fraction(1))
        assert not f.is_finite
        with pytest.raises(NotInP):
            f.items()

    def test_dict_roundtrip_of_file_document(self):
        data = {'kind': 'diamond', 'model': 'H', 'entries': [{'edge': ['0/1', '1/0'], 'value': 0.25}]}
        f = CoordFn.from_dict(data)
        assert f(ROOT_EDGE) == Fraction(1, 4)
        assert f.to_dict() == data


class TestPhi:
    def test_unit_diamond(self):
        s = coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE))
        assert s.values_dict() == {
            edge('0', '1'): 1,
            edge('1', '1/0'): -1,
            edge('-1', '1/0'): 1,
            edge('-1', '0'): -1,
        }

    def test_phi_of_finite_is_balanced(self, rng):
        for _ in range(20):
            theta = verify_service.random_coords(rng, DIAMOND, 4, 10)
            assert coords_service.check_finite_balanced(coords_service.phi(theta))

    def test_delta_shear_is_not_balanced(self):
        assert not coords_service.check_finite_balanced(CoordFn.delta(SHEAR, ROOT_EDGE))

    def test_kind_checked(self):
        with pytest.raises(ValueError):
            coords_service.phi(CoordFn.delta(SHEAR, ROOT_EDGE))
        with pytest.raises(ValueError):
            coords_service.psi(CoordFn.delta(DIAMOND, ROOT_EDGE))

    def test_lazy_phi_matches_finite(self, rng):
        theta = verify_service.random_coords(rng, DIAMOND, 3, 6)
        lazy = CoordFn(DIAMOND, evaluator=theta)
        finite = coords_service.phi(theta)
        for e in farey_service.edges_up_to(4):
            assert coords_service.phi(lazy)(e) == finite(e)


class TestPsi:
    def test_psi_inverts_phi(self, rng):
        for _ in range(50):
            theta = verify_service.random_coords(rng, DIAMOND, 5, 20)
            assert coords_service.psi(coords_service.phi(theta)).values_dict() == theta.values_dict()

    def test_phi_psi_on_delta_shear(self):
        s = CoordFn.delta(SHEAR, ROOT_EDGE)
        again = coords_service.phi(coords_service.psi(s))
        for e in farey_service.edges_up_to(5):
            assert again(e) == s(e)

    def test_phi_psi_on_random_shear(self, rng):
        s = verify_service.random_coords(rng, SHEAR, 3, 6)
        again = coords_service.phi(coords_service.psi(s))
        for e in farey_service.edges_up_to(5):
            assert again(e) == s(e)

    def test_balanced_psi_is_finite(self):
        s = coords_service.phi(CoordFn.delta(DIAMOND, edge('0', '1'), Fraction(3, 2)))
        theta = coords_service.psi(s)
        assert theta.is_finite
        assert theta.values_dict() == {edge('0', '1'): Fraction(3, 2)}

    def test_fan_offset_shift_keeps_balanced_result(self):
        s = coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE))
        shifted = coords_service.psi(s, fan_offset=3)
        assert shifted.values_dict() == {ROOT_EDGE: 1}

    def test_psi_needs_finite_shear(self):
        with pytest.raises(NotInP):
            coords_service.psi(CoordFn(SHEAR, evaluator=lambda e: Fraction(1)))


class TestFanSums:
    def test_tails_of_unit_diamond(self):
        s = coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE))
        plus, minus = coords_service.fan_partial_sums(s, INFINITY, edge('-1', '1/0'))
        assert (plus, minus) == (-1, 0)
        plus, minus = coords_service.fan_partial_sums(s, INFINITY, ROOT_EDGE)
        assert (plus, minus) == (-1, 1)

    def test_fan_sums_window(self):
        s = coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE))
        sums = coords_service.fan_sums(s, ZERO)
        assert len(sums.sums) == 5
        assert sums.to_dict()['vertex'] == '0/1'

    def test_h_identity(self):
        lhs, rhs = coords_service.h_identity_check(CoordFn.delta(DIAMOND, ROOT_EDGE))
        assert lhs == rhs == 6


class TestClassDiagnostics:
    def test_zero_shear_qs_ratio(self):
        assert coords_service.qs_ratio(CoordFn.zero(SHEAR), INFINITY, 0, 3) == pytest.approx(1.0)

    def test_l2_norms(self):
        s = coords_service.phi(CoordFn.delta(DIAMOND, ROOT_EDGE))
        assert coords_service.l2_norms(s) == 4

    def test_class_report_of_unit_diamond(self):
        report = coords_service.class_report(CoordFn.delta(DIAMOND, ROOT_EDGE), max_gen=4, window=3)
        assert report.finite_balanced
        assert report.l2_shear == 4.0
        assert report.l2_diamond == 1.0
        assert report.max_fan_window_sum == 1.0
        low, high = report.qs_ratio_range
        assert 0 < low <= high

    def test_class_report_of_shear(self):
        report = coords_service.class_report(CoordFn.delta(SHEAR, ROOT_EDGE), max_gen=3, window=2)
        assert not report.finite_balanced
        assert report.to_dict()['maxGen'] == 3


class TestRoundtripReport:
    def test_diamond(self):
        report = coords_service.roundtrip_report(CoordFn.delta(DIAMOND, ROOT_EDGE, Fraction(1, 2)), 4)
        assert report['success'] and report['exact']

    def test_unbalanced_shear(self):
        report = coords_service.roundtrip_report(CoordFn.delta(SHEAR, ROOT_EDGE), 4)
        assert report['success']
        assert report['check'] == 'phi(psi(s)) = s'


class TestLoadCoordinates:
    def test_load(self, write_coords):
        path = write_coords('shear', [(('0/1', '1/0'), 0.5), (('0', '1'), -0.5)])
        f = coords_service.load_coordinates(path)
        assert f.kind == SHEAR
        assert f(edge('0', '1')) == Fraction(-1, 2)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{"kind": ', encoding='utf-8')
        with pytest.raises(CoordinateFileError):
            coords_service.load_coordinates(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(CoordinateFileError):
            coords_service.load_coordinates(str(tmp_path / 'missing.json'))

    def test_non_unimodular_edge(self, write_coords):
        path = write_coords('diamond', [(('0', '2'), 1.0)])
        with pytest.raises(CoordinateFileError, match='unimodular'):
            coords_service.load_coordinates(path)

    def test_duplicate_edge(self, write_coords):
        path = write_coords('diamond', [(('0', '1/0'), 1.0), (('1/0', '0'), 2.0)])
        with pytest.raises(CoordinateFileError, match='duplicate'):
            coords_service.load_coordinates(path)

    def test_unknown_field(self, write_coords):
        path = write_coords('diamond', [], comment='x')
        with pytest.raises(CoordinateFileError, match='Unknown'):
            coords_service.load_coordinates(path)

    def test_written_document_loads(self, tmp_path):
        f = CoordFn(DIAMOND, {ROOT_EDGE: Fraction(1, 4), edge('1', '2'): Fraction(-3, 8)})
        path = tmp_path / 'f.json'
        path.write_text(json.dumps(f.to_dict()), encoding='utf-8')
        assert coords_service.load_coordinates(str(path)).values_dict() == f.values_dict()
