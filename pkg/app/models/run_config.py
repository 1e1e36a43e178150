"""
Command run configuration
"""
from dataclasses import dataclass, field

from app.utils.errors import RunConfigError

MAX_GEN_LIMIT = 24
TOL_LIMIT = 1e-2
SUITES = ('coords', 'farey', 'sigma', 'wp', 'symplectic', 'develop', 'qc', 'hoelder', 'counterexample')


@dataclass
class RunConfig:
    """Options of one command invocation"""

    subcommand: str
    max_gen: int = 8
    tol: float = 1e-9
    samples: int = 4096
    seed: int = 0
    inputs: list = field(default_factory=list)
    out: str = None
    suite: str = 'all'

    def validate(self):
        if not 0 <= self.max_gen <= MAX_GEN_LIMIT:
            raise RunConfigError(f'--max-gen must lie in [0, {MAX_GEN_LIMIT}], got {self.max_gen}')
        if not 0 < self.tol <= TOL_LIMIT:
            raise RunConfigError(f'--tol must lie in (0, {TOL_LIMIT}], got {self.tol}')
        if self.samples < 8:
            raise RunConfigError(f'--samples must be at least 8, got {self.samples}')
        if self.suite != 'all' and self.suite not in SUITES:
            raise RunConfigError(f'unknown suite {self.suite!r}')
        return self

    @property
    def suites(self):
        return list(SUITES) if self.suite == 'all' else [self.suite]

    @staticmethod
    def from_options(subcommand, defaults, **options):
        """
        Build a RunConfig from click options, falling back to app config defaults

        Args:
            subcommand: command name
            defaults: mapping with MAX_GEN, DEFAULT_TOL, DEFAULT_SAMPLES, DEFAULT_SEED
            **options: click option values, None when not given
        """
        fallback = {
            'max_gen': defaults.get('MAX_GEN', 8),
            'tol': defaults.get('DEFAULT_TOL', 1e-9),
            'samples': defaults.get('DEFAULT_SAMPLES', 4096),
            'seed': defaults.get('DEFAULT_SEED', 0),
        }
        values = {key: value for key, value in options.items() if value is not None}
        for key, value in fallback.items():
            values.setdefault(key, value)
        return RunConfig(subcommand=subcommand, **values).validate()

    def to_dict(self):
        return {
            'subcommand': self.subcommand,
            'maxGen': self.max_gen,
            'tol': self.tol,
            'samples': self.samples,
            'seed': self.seed,
            'suite': self.suite,
        }
