r"""Benford frequency analysis from the command line.

  benford-frequency analyze --input=visits.csv [--order=exhaustive] \
      [--output=json]
  benford-frequency scan --input=visits.csv [--depth=1] [--order=exhaustive]
  benford-frequency simulate --sampler=loguniform --sites=20 --trials=200 \
      --seed=7 [--planted=2 --planted_sampler=uniform]
  benford-frequency moments

Reports go to standard output, diagnostics to standard error.

Exit codes: 0 success, 1 usage or configuration error, 2 malformed frequency
data, 3 degenerate (singular) Benford matrix.
"""

import collections
import sys

from absl import app
from absl import flags
from absl import logging

from . import benford_matrix
from . import frequency_sim
from . import hypothesis
from . import ingest
from . import reports
from . import samplers
from . import site_search
from .errors import ConfigError
from .errors import DomainError
from .errors import FrequencyDataError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_DEGENERATE = 3

ORDER_MODES = {
    'canonical': site_search.CANONICAL,
    'exhaustive': site_search.EXHAUSTIVE,
    'sampled': site_search.SAMPLED,
}

SAMPLER_CHOICES = sorted(set(samplers.FAMILIES) | set(samplers.ALIASES))

# SamplerFamily param name -> flag name.
SAMPLER_PARAM_FLAGS = {
    'orders_of_magnitude': 'orders',
    'low': 'low',
    'high': 'high',
    'mean': 'mean',
    'std': 'std',
    'rate': 'rate',
}

FLAGS = flags.FLAGS

flags.DEFINE_string('input', None, 'Path of the site,count data file.')
flags.DEFINE_enum('format', None, list(ingest.FORMATS),
                  'Input format; inferred from the file extension if unset.')
flags.DEFINE_float('alpha', hypothesis.DEFAULT_ALPHA,
                   'Significance level of the two-sided test.')
flags.DEFINE_enum('order', 'canonical', list(ORDER_MODES),
                  'Site ordering strategy for the Benford matrix.')
flags.DEFINE_integer('depth', 1, 'Max sites removed at once by scan.',
                     lower_bound=0)
flags.DEFINE_integer('samples', 100,
                     'Orderings per site set with --order=sampled.',
                     lower_bound=1)
flags.DEFINE_integer('seed', 0, 'Seed for every random stream.', lower_bound=0)
flags.DEFINE_enum('output', 'text', ['text', 'json'], 'Report format.')
flags.DEFINE_integer('max_exhaustive', 8,
                     'Most sites --order=exhaustive will enumerate.',
                     lower_bound=1)
flags.DEFINE_enum('sampler', 'loguniform', SAMPLER_CHOICES,
                  'Background count sampler for simulate.')
flags.DEFINE_enum('planted_sampler', 'uniform', SAMPLER_CHOICES,
                  'Sampler for planted anomalous sites.')
flags.DEFINE_float('orders', None, 'log_uniform orders of magnitude.')
flags.DEFINE_float('low', None, 'uniform lower bound.')
flags.DEFINE_float('high', None, 'uniform upper bound.')
flags.DEFINE_float('mean', None, 'normal_truncated mean.')
flags.DEFINE_float('std', None, 'normal_truncated standard deviation.')
flags.DEFINE_float('rate', None, 'exponential rate.')
flags.DEFINE_integer('sites', 20, 'Sites per simulated trial.', lower_bound=2)
flags.DEFINE_integer('trials', 200, 'Simulated trials.', lower_bound=1)
flags.DEFINE_integer('planted', 0, 'Planted anomalous sites per trial.',
                     lower_bound=0)
flags.DEFINE_boolean('round_counts', False,
                     'Round simulated counts to integers (minimum 1).')
flags.register_validator('alpha', lambda a: 0. < a < 1.,
                         message='--alpha must be in (0, 1)')


class RunConfig(
    collections.namedtuple(
        'RunConfig', [
            'command', 'input_path', 'input_format', 'alpha',
            'ordering_mode', 'removal_depth', 'permutation_sample_count',
            'seed', 'output_format', 'max_exhaustive_n', 'sampler',
            'sampler_params', 'planted_sampler', 'planted_sampler_params',
            'sites', 'trials', 'planted', 'round_counts'
        ],
        defaults=(None, None, hypothesis.DEFAULT_ALPHA, site_search.CANONICAL,
                  1, 100, 0, 'text', 8, 'log_uniform', None, 'uniform',
                  None, 20, 200, 0, False))):
  """Everything one CLI invocation needs, resolved from flags."""


def _sampler_params(kind, flag_values):
  family = samplers.get_family(kind)
  return {
      name: flag_values[SAMPLER_PARAM_FLAGS[name]].value
      for name in family.param_names
      if flag_values[SAMPLER_PARAM_FLAGS[name]].value is not None
  }


def run_config_from_flags(argv, flag_values=FLAGS):
  if len(argv) != 2 or argv[1] not in COMMANDS:
    raise app.UsageError('expected one command out of {}, got {}'.format(
        sorted(COMMANDS), argv[1:]))
  fv = flag_values
  return RunConfig(
      command=argv[1],
      input_path=fv.input,
      input_format=fv.format,
      alpha=fv.alpha,
      ordering_mode=ORDER_MODES[fv.order],
      removal_depth=fv.depth,
      permutation_sample_count=fv.samples,
      seed=fv.seed,
      output_format=fv.output,
      max_exhaustive_n=fv.max_exhaustive,
      sampler=fv.sampler,
      sampler_params=_sampler_params(fv.sampler, fv),
      planted_sampler=fv.planted_sampler,
      planted_sampler_params=_sampler_params(fv.planted_sampler, fv),
      sites=fv.sites,
      trials=fv.trials,
      planted=fv.planted,
      round_counts=fv.round_counts)


def scan_config(config):
  return site_search.ScanConfig(
      removal_depth=config.removal_depth,
      ordering_mode=config.ordering_mode,
      permutation_sample_count=config.permutation_sample_count,
      seed=config.seed,
      max_exhaustive_n=config.max_exhaustive_n)


def _load(config):
  if not config.input_path:
    raise ConfigError('--input is required for {}'.format(config.command))
  return ingest.load_frequencies(config.input_path, config.input_format)


def _write(report, title, config, out):
  if config.output_format == 'json':
    out.write(reports.to_json(report) + '\n')
  else:
    out.write(reports.to_text(report, title) + '\n')


def cmd_analyze(config, out):
  f = _load(config)
  if config.ordering_mode == site_search.CANONICAL:
    analysis = benford_matrix.lambda_statistic(f)
  else:
    analysis = site_search.max_permutation_lambda(f, scan_config(config))
  test = hypothesis.test(analysis.lambda_, analysis.n, config.alpha)
  _write(reports.analysis_report(analysis, test), 'analyze', config, out)
  return EXIT_DEGENERATE if analysis.degenerate else EXIT_OK


def cmd_scan(config, out):
  f = _load(config)
  if config.removal_depth >= 1 and f.n < 3:
    raise FrequencyDataError('scan needs at least 3 sites, got {}'.format(f.n))
  result = site_search.max_lambda_search(f, scan_config(config))
  _write(reports.scan_report(result), 'scan', config, out)
  return EXIT_DEGENERATE if result.baseline_degenerate else EXIT_OK


def cmd_simulate(config, out):
  spec = frequency_sim.SamplerSpec(config.sampler, config.sampler_params,
                                   config.seed, config.round_counts)
  if config.planted:
    planted_spec = frequency_sim.SamplerSpec(config.planted_sampler,
                                             config.planted_sampler_params,
                                             config.seed, config.round_counts)
    report = frequency_sim.run_planted_anomaly(
        spec,
        config.sites,
        config.planted,
        planted_spec,
        config.trials,
        scan=scan_config(config),
        alpha=config.alpha)
  else:
    report = frequency_sim.run_trials(spec, config.sites, config.trials,
                                      config.alpha)
  _write(reports.simulation_report(report), 'simulate', config, out)
  return EXIT_OK


def cmd_moments(config, out):
  _write(reports.moments_report(), 'moments', config, out)
  return EXIT_OK


COMMANDS = {
    'analyze': cmd_analyze,
    'scan': cmd_scan,
    'simulate': cmd_simulate,
    'moments': cmd_moments,
}


def execute(config, out=None):
  """Runs config.command, writing the report to out; returns the exit code."""
  out = out or sys.stdout
  try:
    return COMMANDS[config.command](config, out)
  except (ConfigError, DomainError) as e:
    logging.error('%s', e)
    return EXIT_USAGE
  except FrequencyDataError as e:
    logging.error('%s', e)
    return EXIT_DATA


def main(argv):
  return execute(run_config_from_flags(argv))


def run_main():
  app.run(main)


if __name__ == '__main__':
  run_main()
