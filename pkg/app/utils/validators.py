"""
Input validation utilities
"""
import math

from app.models.farey import FareyEdge, Rational
from app.utils.errors import NotAnEdge

ALLOWED_FIELDS = {'kind', 'model', 'entries'}
ALLOWED_ENTRY_FIELDS = {'edge', 'value'}


def validate_vertex(text):
    """Validate a "p/q" vertex string"""
    if not isinstance(text, str):
        return False, f"Vertex must be a string, got {text!r}"
    try:
        Rational.parse(text)
    except ValueError:
        return False, f"Invalid vertex {text!r}"
    return True, "Vertex is valid"


def validate_value(value):
    """Validate a coordinate value: a finite JSON number"""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return False, f"Value must be a number, got {value!r}"
    if not math.isfinite(value):
        return False, f"Value must be finite, got {value!r}"
    return True, "Value is valid"


def validate_coordinate_data(data):
    """
    Validate a coordinate document
    - Only the fields kind, model and entries
    - kind is shear or diamond and model is H
    - Every edge is a unimodular pair of vertices, listed once
    - Every value is a finite number
    """
    if not isinstance(data, dict):
        return False, "Coordinate file must contain a JSON object"

    unknown = set(data) - ALLOWED_FIELDS
    if unknown:
        return False, f"Unknown fields: {', '.join(sorted(unknown))}"

    if data.get('kind') not in ('shear', 'diamond'):
        return False, "kind must be 'shear' or 'diamond'"

    if data.get('model', 'H') != 'H':
        return False, "model must be 'H'"

    entries = data.get('entries')
    if not isinstance(entries, list):
        return False, "entries must be a list"

    seen = set()
    for position, entry in enumerate(entries):
        if not isinstance(entry, dict):
            return False, f"Entry {position} must be an object"
        unknown = set(entry) - ALLOWED_ENTRY_FIELDS
        if unknown:
            return False, f"Entry {position} has unknown fields: {', '.join(sorted(unknown))}"
        edge = entry.get('edge')
        if not isinstance(edge, list) or len(edge) != 2:
            return False, f"Entry {position}: edge must be a pair of vertices"
        for vertex in edge:
            ok, message = validate_vertex(vertex)
            if not ok:
                return False, f"Entry {position}: {message}"
        try:
            key = FareyEdge.of(edge[0], edge[1])
        except NotAnEdge as e:
            return False, f"Entry {position}: {e}"
        if key in seen:
            return False, f"Entry {position}: duplicate edge {key}"
        seen.add(key)
        ok, message = validate_value(entry.get('value'))
        if not ok:
            return False, f"Entry {position}: {message}"

    return True, "Coordinate data is valid"


def validate_samples(rows):
    """
    Validate angle samples of a circle homeomorphism
    - At least 8 rows of two finite numbers
    - angle_in strictly increasing and covering less than one turn
    """
    if len(rows) < 8:
        return False, "At least 8 samples are required"

    for position, row in enumerate(rows):
        if len(row) != 2 or not all(math.isfinite(x) for x in row):
            return False, f"Row {position} must hold two finite numbers"

    angles = [row[0] for row in rows]
    if any(b <= a for a, b in zip(angles, angles[1:])):
        return False, "angle_in must be strictly increasing"
    if angles[-1] - angles[0] >= 2 * math.pi:
        return False, "angle_in must cover less than one turn"

    return True, "Samples are valid"
