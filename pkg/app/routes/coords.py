"""
Coordinate round-trip command
"""
import click
from flask import Blueprint

from app.services.coords_service import coords_service
from app.utils.cli import run_config, load_coords, finish

bp = Blueprint('coords', __name__, cli_group=None)


@bp.cli.command('roundtrip')
@click.option('--coords', 'coords_path', type=click.Path(), required=True, help='Coordinate JSON')
@click.option('--max-gen', type=int, default=None)
@click.option('--tol', type=float, default=None)
@click.option('--out', type=click.Path(), default=None, help='JSON report path')
def roundtrip(coords_path, max_gen, tol, out):
    """Check that Psi and Phi invert each other on a coordinate file"""
    config = run_config('roundtrip', max_gen=max_gen, tol=tol, out=out, inputs=[coords_path])
    f = load_coords(coords_path)
    finish(coords_service.roundtrip_report(f, config.max_gen, config.tol), config.out)
