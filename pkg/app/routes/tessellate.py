"""
Tessellation rendering command
"""
import click
from flask import Blueprint

from app.models.coordinates import DIAMOND
from app.models.homeo import VertexImageMap
from app.services.coords_service import coords_service
from app.services.develop_service import develop_service
from app.services.svg_service import svg_service
from app.utils.cli import run_config, load_coords, load_homeo, emit, guard

bp = Blueprint('tessellate', __name__, cli_group=None)


def homeo_from_coords(f, max_gen):
    """Homeomorphism (or vertex images) carried by a coordinate file"""
    if f.kind == DIAMOND:
        return develop_service.develop_diamond(f)
    if coords_service.check_finite_balanced(f):
        return develop_service.develop_diamond(coords_service.psi(f).materialize())
    return develop_service.develop_vertices(f, max_gen)


@bp.cli.command('tessellate')
@click.option('--max-gen', type=int, default=None, help='Deepest edge generation drawn')
@click.option('--coords', 'coords_path', type=click.Path(), default=None, help='Coordinate JSON to develop')
@click.option('--homeo', 'homeo_path', type=click.Path(), default=None, help='Samples CSV of a circle map')
@click.option('--ford', is_flag=True, help='Draw the horocycle decoration')
@click.option('--dual', is_flag=True, help='Draw the dual tree')
@click.option('--out', type=click.Path(), default=None, help='SVG output path')
def tessellate(max_gen, coords_path, homeo_path, ford, dual, out):
    """Render the Farey tessellation, or its image, as SVG"""
    config = run_config('tessellate', max_gen=max_gen, out=out)
    if coords_path and homeo_path:
        raise click.UsageError('--coords and --homeo are exclusive')

    f = load_coords(coords_path) if coords_path else None
    h = load_homeo(homeo_path) if homeo_path else None
    with guard():
        if f is not None:
            h = homeo_from_coords(f, config.max_gen)
        if ford and isinstance(h, VertexImageMap):
            raise click.UsageError('--ford needs a diamond or finite balanced shear input')
        text = svg_service.render_tessellation(config.max_gen, h=h, ford=ford, dual=dual)
    emit(text, config.out)
