"""
File handling utilities
"""
import csv
import io
import json
import os

from app.utils.errors import CoordinateFileError
from app.utils.validators import validate_samples

SAMPLE_HEADER = ('angle_in', 'angle_out')


def ensure_folder(path):
    """Create the parent folder of path if needed"""
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)


def to_json(data):
    """Stable JSON text: sorted keys, two-space indent"""
    return json.dumps(data, indent=2, sort_keys=True) + '\n'


def write_text(text, path=None):
    """
    Write text to path, or return it when path is None

    Returns:
        str or None: the text when it was not written
    """
    if path is None:
        return text
    ensure_folder(path)
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    return None


def write_json(data, path=None):
    return write_text(to_json(data), path)


def samples_csv(angles_in, angles_out):
    """angle_in,angle_out rows with 16 significant digits"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(SAMPLE_HEADER)
    for a, b in zip(angles_in, angles_out):
        writer.writerow([f'{a:.16g}', f'{b:.16g}'])
    return buffer.getvalue()


def write_csv(angles_in, angles_out, path=None):
    return write_text(samples_csv(angles_in, angles_out), path)


def read_samples_csv(path):
    """
    Read angle samples written by write_csv

    Returns:
        tuple: (angles_in, angles_out) lists of floats

    Raises:
        CoordinateFileError: unreadable or invalid samples
    """
    try:
        with open(path, 'r', encoding='utf-8', newline='') as handle:
            rows = list(csv.reader(handle))
    except OSError as e:
        raise CoordinateFileError(f'cannot read {path}: {e}')
    if rows and tuple(cell.strip() for cell in rows[0]) == SAMPLE_HEADER:
        rows = rows[1:]
    try:
        values = [[float(cell) for cell in row] for row in rows if row]
    except ValueError as e:
        raise CoordinateFileError(f'{path}: {e}')
    ok, message = validate_samples(values)
    if not ok:
        raise CoordinateFileError(f'{path}: {message}')
    return [row[0] for row in values], [row[1] for row in values]
