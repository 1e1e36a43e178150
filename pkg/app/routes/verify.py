"""
Verification suites command
"""
import click
from flask import Blueprint

from app.models.run_config import SUITES
from app.services.verify_service import verify_service
from app.utils.cli import run_config, finish

bp = Blueprint('verify', __name__, cli_group=None)


@bp.cli.command('verify')
@click.option('--suite', type=click.Choice(('all',) + SUITES), default='all')
@click.option('--seed', type=int, default=None, help='Seed of the randomized suites')
@click.option('--out', type=click.Path(), default=None, help='JSON report path')
def verify(suite, seed, out):
    """Run verification suites and print pass/fail with measured values"""
    config = run_config('verify', suite=suite, seed=seed, out=out)
    finish(verify_service.run_suites(config.suites, config.seed), config.out)
