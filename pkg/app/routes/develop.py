"""
Developing and extraction commands
"""
import logging

import click
from flask import Blueprint

from app.models.coordinates import KINDS
from app.services.develop_service import develop_service
from app.utils.cli import run_config, load_coords, load_homeo, emit, guard
from app.utils.file_utils import samples_csv, write_json, to_json

bp = Blueprint('develop', __name__, cli_group=None)


@bp.cli.command('develop')
@click.option('--coords', 'coords_path', type=click.Path(), required=True, help='Coordinate JSON')
@click.option('--samples', type=int, default=None, help='Number of angle samples')
@click.option('--breakpoints', 'breakpoints_path', type=click.Path(), default=None,
              help='Write the breakpoint dump to this JSON path')
@click.option('--out', type=click.Path(), default=None, help='CSV output path')
def develop(coords_path, samples, breakpoints_path, out):
    """Sample the homeomorphism of a coordinate file on a uniform angle grid"""
    config = run_config('develop', samples=samples, out=out, inputs=[coords_path])
    f = load_coords(coords_path)
    with guard():
        h = develop_service.develop_coordinates(f)
        if breakpoints_path:
            write_json(develop_service.breakpoint_dump(h), breakpoints_path)
        angles_in, angles_out = develop_service.sample(h, config.samples)
    logging.info(f"✅ Sampled {config.samples} points of a map with {len(h.angles)} breakpoints")
    emit(samples_csv(angles_in, angles_out), config.out)


@bp.cli.command('extract')
@click.option('--coords', 'coords_path', type=click.Path(), default=None, help='Coordinate JSON to develop')
@click.option('--homeo', 'homeo_path', type=click.Path(), default=None, help='Samples CSV of a circle map')
@click.option('--kind', type=click.Choice(KINDS), default='diamond')
@click.option('--max-gen', type=int, default=None)
@click.option('--out', type=click.Path(), default=None, help='JSON output path')
def extract(coords_path, homeo_path, kind, max_gen, out):
    """Emit shear or diamond coordinates of a homeomorphism up to max-gen"""
    config = run_config('extract', max_gen=max_gen, out=out)
    if bool(coords_path) == bool(homeo_path):
        raise click.UsageError('give exactly one of --coords and --homeo')
    if coords_path:
        f = load_coords(coords_path)
        with guard():
            h = develop_service.develop_coordinates(f)
    else:
        h = load_homeo(homeo_path)
    with guard():
        f = develop_service.extract(h, kind, config.max_gen)
    emit(to_json(f.to_dict()), config.out)
