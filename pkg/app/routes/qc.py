"""
Quasiconformal extension command
"""
import click
from flask import Blueprint, current_app

from app.models.coordinates import DIAMOND
from app.services.coords_service import coords_service
from app.services.qcext_service import qcext_service
from app.utils.cli import run_config, load_coords, finish, guard

bp = Blueprint('qc', __name__, cli_group=None)


@bp.cli.command('qc')
@click.option('--coords', 'coords_path', type=click.Path(), required=True, help='Coordinate JSON')
@click.option('--max-gen', type=int, default=None)
@click.option('--window', type=int, default=None, help='Strip window per cell')
@click.option('--out', type=click.Path(), default=None, help='JSON report path')
def qc(coords_path, max_gen, window, out):
    """sup |mu| and hyperbolic L2 norm of the explicit quasiconformal extension"""
    config = run_config('qc', max_gen=max_gen, out=out, inputs=[coords_path])
    f = load_coords(coords_path)
    s = coords_service.phi(f) if f.kind == DIAMOND else f
    window = window if window is not None else current_app.config['QC_WINDOW']
    with guard():
        report = qcext_service.qc_report(s, config.max_gen, window)
    finish(report, config.out)
