"""
Weil-Petersson pairing command
"""
import click
from flask import Blueprint

from app.models.coordinates import CoordFn, DIAMOND
from app.services.coords_service import coords_service
from app.services.wpgeom_service import wpgeom_service
from app.utils.cli import run_config, load_coords, finish

bp = Blueprint('wp', __name__, cli_group=None)


def as_diamond(f):
    if f.kind == DIAMOND:
        return f
    if not coords_service.check_finite_balanced(f):
        raise click.UsageError('shear tangent vectors must be finite balanced')
    return coords_service.psi(f).materialize()


@bp.cli.command('wp')
@click.option('--coords', 'coords_paths', type=click.Path(), multiple=True, required=True,
              help='One or two tangent vectors; a single file is paired with itself')
@click.option('--base', 'base_path', type=click.Path(), default=None, help='Diamond base point')
@click.option('--quadrature', is_flag=True, help='Add the quadrature oracle for single-quad inputs')
@click.option('--out', type=click.Path(), default=None, help='JSON report path')
def wp(coords_paths, base_path, quadrature, out):
    """Weil-Petersson metric and symplectic pairing of two tangent vectors"""
    config = run_config('wp', out=out, inputs=list(coords_paths))
    if len(coords_paths) > 2:
        raise click.UsageError('--coords takes at most two files')
    vectors = [as_diamond(load_coords(path)) for path in coords_paths]
    theta1, theta2 = vectors[0], vectors[-1]
    base = as_diamond(load_coords(base_path)) if base_path else CoordFn.zero(DIAMOND)
    if quadrature and not (len(theta1.items()) == 1 and len(theta2.items()) == 1):
        raise click.UsageError('--quadrature needs single-quad tangent vectors')
    finish(wpgeom_service.wp_report(theta1, theta2, base, quadrature), config.out)
