"""
Helpers shared by the command blueprints
"""
import logging
from contextlib import contextmanager

import click
from flask import current_app

from app.models.run_config import RunConfig
from app.services.coords_service import coords_service
from app.services.develop_service import develop_service
from app.utils.errors import FareyError, CoordinateFileError, RunConfigError, NotInP, NotAnEdge
from app.utils.file_utils import read_samples_csv, to_json, write_text


def run_config(subcommand, **options):
    """RunConfig from click options and app defaults; bad options exit 2"""
    try:
        return RunConfig.from_options(subcommand, current_app.config, **options)
    except RunConfigError as e:
        raise click.UsageError(str(e))


def load_coords(path):
    try:
        return coords_service.load_coordinates(path)
    except CoordinateFileError as e:
        raise click.UsageError(str(e))


def load_homeo(path):
    """Circle map interpolating a samples CSV"""
    try:
        angles_in, angles_out = read_samples_csv(path)
    except CoordinateFileError as e:
        raise click.UsageError(str(e))
    return develop_service.from_samples(angles_in, angles_out)


def emit(text, out=None):
    """Write text to out, or print it"""
    if write_text(text, out) is not None:
        click.echo(text, nl=False)


def finish(report, out=None):
    """Print a JSON report, also writing it to out when given, and exit 1 when it failed"""
    text = to_json(report)
    write_text(text, out)
    click.echo(text, nl=False)
    if not report.get('success', False):
        click.get_current_context().exit(1)


# Library errors caused by the input; any other FareyError is a numeric failure.
USAGE_ERRORS = (CoordinateFileError, RunConfigError, NotInP, NotAnEdge)


@contextmanager
def guard():
    """Bad input exits 2, numeric library failures exit 1"""
    try:
        yield
    except USAGE_ERRORS as e:
        raise click.UsageError(str(e))
    except FareyError as e:
        logging.error(f"❌ {type(e).__name__}: {str(e)}")
        click.get_current_context().exit(1)
    except ValueError as e:
        raise click.UsageError(str(e))
