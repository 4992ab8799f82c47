"""# Data Simulation

Generate synthetic visit-count data from Benford and non-Benford processes,
optionally plant anomalous sites, and run the whole pipeline over many trials.

Every trial draws from its own random stream, seeded by (seed, trial_index), so
reports do not depend on the order trials were run in.
"""

import collections
import concurrent.futures
import math

import numpy as np
from absl import logging

from . import benford_measure
from . import hypothesis
from . import samplers
from . import site_search
from .benford_matrix import FrequencyVector
from .errors import ConfigError

# Streams within a trial of a planted-anomaly run.
_BACKGROUND_STREAM = 1
_PLANTED_STREAM = 2
_PLACEMENT_STREAM = 3

SamplerSpec = collections.namedtuple(
    'SamplerSpec', ['kind', 'params', 'seed', 'round_to_integer'],
    defaults=(None, 0, False))
"""A named tuple describing how to draw counts.

kind: a samplers.FAMILIES key ('log_uniform', 'uniform', 'normal_truncated',
  'exponential', 'continuous_benford') or one of samplers.ALIASES
params: a dict of family parameters, missing keys take the family's params0
seed: an unsigned int seeding every stream drawn from this spec
round_to_integer: round counts to integers, clamping draws below 1 to 1
"""

SimulationReport = collections.namedtuple('SimulationReport', [
    'sampler', 'trials', 'sites_per_trial', 'lambda_samples', 'rejections',
    'non_rejections', 'degenerate_trials', 'rejection_rate', 'mean_abs_lambda',
    'planted_site_count', 'planted_sampler', 'detection_precision',
    'detection_recall', 'alpha', 'seed'
])
"""A named tuple summarizing a batch of simulated trials.

sampler: the background sampler kind
trials: an int, the number of trials run
sites_per_trial: an int, sites per generated FrequencyVector
lambda_samples: a tuple of length trials with each trial's lambda (+inf when
  degenerate)
rejections: non-degenerate trials whose test rejected H0
non_rejections: non-degenerate trials whose test kept H0
degenerate_trials: trials with a singular Benford matrix (always rejected)
rejection_rate: (rejections + degenerate_trials) / trials
mean_abs_lambda: mean |lambda| over non-degenerate trials, +inf if there are
  none
planted_site_count: anomalous sites planted per trial, 0 for plain runs
planted_sampler: the planted sampler kind, None for plain runs
detection_precision: planted sites among the top planted_site_count ranked
  sites, over all flagged sites; 1.0 when nothing was planted
detection_recall: planted sites found over all planted sites; 1.0 when nothing
  was planted
alpha: significance level of the tests
seed: the background sampler seed
"""


def trial_rng(seed, trial_index, stream=None):
  key = [int(seed), int(trial_index)]
  if stream is not None:
    key.append(int(stream))
  return np.random.default_rng(key)


def _check_spec(spec):
  if int(spec.seed) != spec.seed or spec.seed < 0:
    raise ConfigError('seed must be an unsigned integer, got {!r}'.format(
        spec.seed))
  family = samplers.get_family(spec.kind)
  return family, samplers.resolve_params(spec.kind, spec.params)


def _finish_counts(spec, counts):
  if spec.round_to_integer:
    counts = np.maximum(np.round(counts), 1.)
  return counts


def draw_counts(spec, size, trial_index=0, stream=None):
  """size raw counts from spec's stream for trial_index."""
  family, params = _check_spec(spec)
  counts = family.draw(trial_rng(spec.seed, trial_index, stream), size, params)
  return _finish_counts(spec, counts)


def generate_frequencies(spec, n_sites, trial_index=0):
  """A FrequencyVector of n_sites counts drawn from spec.

  Args:
    spec: a SamplerSpec.
    n_sites: an int >= 2.
    trial_index: an int selecting the random stream; trial i of run_trials
      analyzes generate_frequencies(spec, n_sites, i).

  Returns:
    a FrequencyVector with default site ids.
  """
  if n_sites < 2:
    raise ConfigError('n_sites must be >= 2, got {}'.format(n_sites))
  return FrequencyVector.from_counts(draw_counts(spec, n_sites, trial_index))


def first_digit_distance(spec, draws, base=10):
  """Chi-square distance sum((p_obs - p)^2 / p) of spec's leading digits."""
  test = benford_measure.first_digit_test(draw_counts(spec, draws), base)
  return test.statistic / draws


def _map_trials(fn, trials, max_workers):
  if max_workers:
    with concurrent.futures.ThreadPoolExecutor(max_workers) as pool:
      return list(pool.map(fn, range(trials)))
  return [fn(i) for i in range(trials)]


def _summarize(spec, n_sites, alpha, outcomes, planted=0, planted_spec=None,
               hits=0):
  trials = len(outcomes)
  lambdas = tuple(float(analysis.lambda_) for analysis, _ in outcomes)
  degenerate = sum(1 for analysis, _ in outcomes if analysis.degenerate)
  rejections = sum(1 for analysis, test in outcomes
                   if test.reject_null and not analysis.degenerate)
  finite = [abs(l) for l in lambdas if math.isfinite(l)]
  if planted:
    precision = hits / float(planted * trials)
    recall = hits / float(planted * trials)
  else:
    precision = recall = 1.
  return SimulationReport(
      sampler=samplers.get_family(spec.kind).kind,
      trials=trials,
      sites_per_trial=n_sites,
      lambda_samples=lambdas,
      rejections=rejections,
      non_rejections=trials - rejections - degenerate,
      degenerate_trials=degenerate,
      rejection_rate=(rejections + degenerate) / float(trials),
      mean_abs_lambda=float(np.mean(finite)) if finite else math.inf,
      planted_site_count=planted,
      planted_sampler=(samplers.get_family(planted_spec.kind).kind
                       if planted_spec is not None else None),
      detection_precision=precision,
      detection_recall=recall,
      alpha=alpha,
      seed=spec.seed)


def run_trials(spec, n_sites, trials, alpha=hypothesis.DEFAULT_ALPHA,
               max_workers=None):
  """Generate trials frequency vectors and test each for Benford conformity.

  Args:
    spec: a SamplerSpec for every site.
    n_sites: an int >= 2, sites per trial.
    trials: an int >= 1.
    alpha: significance level for the per-trial test.
    max_workers: optional thread count.

  Returns:
    a SimulationReport with planted_site_count 0.
  """
  if trials < 1:
    raise ConfigError('trials must be >= 1, got {}'.format(trials))
  _check_spec(spec)

  def one_trial(i):
    f = generate_frequencies(spec, n_sites, i)
    analysis, test = hypothesis.analyze(f, alpha)
    logging.vlog(1, 'trial %d: lambda=%r p=%r', i, analysis.lambda_,
                 test.p_value)
    return analysis, test

  outcomes = _map_trials(one_trial, trials, max_workers)
  report = _summarize(spec, n_sites, alpha, outcomes)
  logging.info('%d %s trials of %d sites: %d rejected, %d degenerate', trials,
               report.sampler, n_sites, report.rejections,
               report.degenerate_trials)
  return report


def generate_planted_frequencies(spec, n_sites, planted, planted_spec,
                                 trial_index=0):
  """n_sites counts of which planted are drawn from planted_spec.

  Returns:
    f: a FrequencyVector with default site ids.
    planted_ids: a frozenset of the site ids drawn from planted_spec.
  """
  family, params = _check_spec(spec)
  planted_family, planted_params = _check_spec(planted_spec)
  background = family.draw(
      trial_rng(spec.seed, trial_index, _BACKGROUND_STREAM),
      n_sites - planted, params)
  anomalies = planted_family.draw(
      trial_rng(planted_spec.seed, trial_index, _PLANTED_STREAM), planted,
      planted_params)
  positions = trial_rng(spec.seed, trial_index,
                        _PLACEMENT_STREAM).permutation(n_sites)[:planted]
  is_planted = np.zeros(n_sites, dtype=bool)
  is_planted[positions] = True
  counts = np.empty(n_sites)
  counts[~is_planted] = _finish_counts(spec, background)
  counts[is_planted] = _finish_counts(planted_spec, anomalies)
  f = FrequencyVector.from_counts(counts)
  return f, frozenset(f.site_ids[i] for i in np.flatnonzero(is_planted))


def run_planted_anomaly(spec, n_sites, planted, planted_spec, trials,
                        scan=site_search.ScanConfig(),
                        alpha=hypothesis.DEFAULT_ALPHA, max_workers=None):
  """Measure how often leave-one-out ranking finds planted anomalous sites.

  Each trial ranks sites with site_search.leave_one_out_scan and counts the
  planted sites among the top `planted` ranks.

  Args:
    spec: background SamplerSpec.
    n_sites: an int, total sites per trial.
    planted: an int in [0, n_sites - 2], sites drawn from planted_spec.
    planted_spec: SamplerSpec for the planted sites.
    trials: an int >= 1.
    scan: ScanConfig for the scan; removal_depth is forced to 1.
    alpha: significance level for the full-data test.
    max_workers: optional thread count across trials.

  Returns:
    a SimulationReport.
  """
  if not 0 <= planted <= n_sites - 2:
    raise ConfigError('planted must be in [0, {}], got {}'.format(
        n_sites - 2, planted))
  if planted == 0:
    return run_trials(spec, n_sites, trials, alpha, max_workers)
  if trials < 1:
    raise ConfigError('trials must be >= 1, got {}'.format(trials))

  def one_trial(i):
    f, planted_ids = generate_planted_frequencies(spec, n_sites, planted,
                                                  planted_spec, i)
    analysis, test = hypothesis.analyze(f, alpha)
    result = site_search.leave_one_out_scan(f, scan)
    flagged = {s.site_id for s in result.per_site_scores[:planted]}
    hits = len(flagged & planted_ids)
    logging.vlog(1, 'trial %d: planted=%s flagged=%s', i, sorted(planted_ids),
                 sorted(flagged))
    return (analysis, test), hits

  results = _map_trials(one_trial, trials, max_workers)
  report = _summarize(
      spec,
      n_sites,
      alpha, [outcome for outcome, _ in results],
      planted=planted,
      planted_spec=planted_spec,
      hits=sum(hits for _, hits in results))
  logging.info('%d planted-anomaly trials: precision=%.4f recall=%.4f', trials,
               report.detection_precision, report.detection_recall)
  return report
