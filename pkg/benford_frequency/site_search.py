"""### Site search

Which sites, when removed, move the Benford test statistic the most?

Every removal subset of size <= removal_depth is evaluated; for each remaining
site set lambda is maximized over site orderings (one canonical ordering, all
m! orderings, or a seeded sample of them). Orderings are index tuples into the
canonical order of the remaining sites, so (0, 1, ..., m - 1) is the canonical
ordering and sorts first.

Ties (lambdas within LAMBDA_TIE_RTOL) go to the lexicographically smallest
removed set of site ids, then the lexicographically smallest ordering. The
reduction runs over the full, ordered candidate list, so the result does not
depend on how subsets were scheduled.
"""

import collections
import concurrent.futures
import itertools
import math

import numpy as np
from absl import logging

from . import benford_matrix
from .errors import ConfigError
from .errors import FrequencyDataError
from .errors import SearchSpaceError

CANONICAL = 'canonical'
EXHAUSTIVE = 'exhaustive_permutations'
SAMPLED = 'sampled_permutations'
ORDERING_MODES = (CANONICAL, EXHAUSTIVE, SAMPLED)

LAMBDA_TIE_RTOL = 1e-9


class ScanConfig(
    collections.namedtuple(
        'ScanConfig', [
            'removal_depth', 'ordering_mode', 'permutation_sample_count',
            'seed', 'max_exhaustive_n', 'max_workers'
        ],
        defaults=(1, CANONICAL, 100, 0, 8, None))):
  """Search settings.

  removal_depth: max number of sites removed at once, <= n - 2
  ordering_mode: one of ORDERING_MODES
  permutation_sample_count: orderings drawn per site set in sampled mode,
    the canonical ordering included
  seed: seed for sampled orderings
  max_exhaustive_n: exhaustive mode refuses more sites than this
  max_workers: thread count for subset evaluation, None to run inline
  """


class SiteScore(
    collections.namedtuple('SiteScore',
                           ['site_id', 'delta_lambda', 'rank', 'degenerate'])):
  """Leave-one-out attribution for a single site.

  site_id: the site
  delta_lambda: lambda(all sites) - lambda(site removed); nan when the
    reduced problem is degenerate
  rank: 1-based rank by descending |delta_lambda|, ties by site id,
    nan scores last
  degenerate: True when removing the site leaves a singular matrix
  """


class LambdaMaximizer(
    collections.namedtuple('LambdaMaximizer',
                           ['removed', 'ordering', 'lambda_', 'degenerate'])):
  """removed: sorted tuple of removed site ids; ordering: tuple of site ids."""


class ScanResult(
    collections.namedtuple('ScanResult', [
        'baseline_lambda', 'baseline_degenerate', 'per_site_scores',
        'max_lambda_subset', 'max_lambda_log_abs_det', 'computations_performed',
        'ordering_mode'
    ])):
  """Outcome of a site search.

  baseline_lambda: lambda over all sites under the ordering mode
  baseline_degenerate: True when the baseline ordering is singular
  per_site_scores: list of SiteScore sorted by rank; empty for depth 0
  max_lambda_subset: LambdaMaximizer over the whole search space
  max_lambda_log_abs_det: ln|det A| of the maximizer, -inf when degenerate
  computations_performed: number of lambda evaluations
  ordering_mode: the ScanConfig ordering mode used
  """


class _Candidate(
    collections.namedtuple(
        '_Candidate', ['ordering', 'log_abs_det', 'lambda_', 'degenerate'])):
  pass


class _SubsetOutcome(
    collections.namedtuple('_SubsetOutcome', [
        'removed_index', 'removed', 'ordering_index', 'ordering',
        'log_abs_det', 'lambda_', 'degenerate', 'evaluations'
    ])):
  pass


def _validate(f, config):
  if config.ordering_mode not in ORDERING_MODES:
    raise ConfigError('ordering_mode must be one of {}, got {!r}'.format(
        ORDERING_MODES, config.ordering_mode))
  depth = config.removal_depth
  if int(depth) != depth or depth < 0:
    raise ConfigError('removal_depth must be a non-negative integer')
  if config.removal_depth > f.n - 2:
    raise ConfigError(
        'removal_depth {} leaves fewer than 2 of {} sites'.format(
            config.removal_depth, f.n))
  if config.permutation_sample_count < 1:
    raise ConfigError('permutation_sample_count must be >= 1')
  if config.ordering_mode == EXHAUSTIVE and f.n > config.max_exhaustive_n:
    raise SearchSpaceError(
        'exhaustive orderings of {} sites means {} lambda evaluations per '
        'site set; max_exhaustive_n is {}. Use ordering_mode={!r} with '
        'permutation_sample_count instead.'.format(f.n, math.factorial(f.n),
                                                   config.max_exhaustive_n,
                                                   SAMPLED))


def _orderings(m, removed_index, config):
  """Index orderings to evaluate for a site set of size m."""
  canonical = tuple(range(m))
  mode = config.ordering_mode
  if mode == CANONICAL:
    return [canonical]
  if mode == EXHAUSTIVE or config.permutation_sample_count >= math.factorial(m):
    return list(itertools.permutations(range(m)))
  # One stream per removal subset keeps sampling schedule independent.
  rng = np.random.default_rng(
      [config.seed, len(removed_index)] + list(removed_index))
  orderings = [canonical]
  seen = {canonical}
  while len(orderings) < config.permutation_sample_count:
    ordering = tuple(int(i) for i in rng.permutation(m))
    if ordering not in seen:
      seen.add(ordering)
      orderings.append(ordering)
  return orderings


def _is_tie(a, b):
  if a == b:
    return True
  if math.isinf(a) or math.isinf(b):
    return False
  return abs(a - b) <= LAMBDA_TIE_RTOL * max(1., abs(a), abs(b))


def _select_max(candidates, key):
  """Largest lambda_, ties broken by smallest key(candidate)."""
  best_lambda = max(c.lambda_ for c in candidates)
  tied = [c for c in candidates if _is_tie(c.lambda_, best_lambda)]
  return min(tied, key=key)


def _evaluate_subset(f_canonical, removed_index, config):
  dropped = set(removed_index)
  keep = [i for i in range(f_canonical.n) if i not in dropped]
  site_ids = [f_canonical.site_ids[i] for i in keep]
  counts = f_canonical.as_array()[keep]
  orderings = _orderings(len(keep), removed_index, config)
  order_array = np.asarray(orderings, dtype=np.int64)
  log_dets, degenerate = benford_matrix.log_abs_dets(
      benford_matrix.build_matrices(counts[order_array]))
  lambdas = benford_matrix.lambdas_from_log_abs_dets(log_dets, len(keep))

  candidates = [
      _Candidate(o, float(g), float(l), bool(d))
      for o, g, l, d in zip(orderings, log_dets, lambdas, degenerate)
  ]
  best = _select_max(candidates, key=lambda c: c.ordering)
  removed = tuple(sorted(f_canonical.site_ids[i] for i in removed_index))
  logging.vlog(1, 'removed=%s lambda=%r over %d orderings', removed,
               best.lambda_, len(orderings))
  return _SubsetOutcome(
      removed_index=tuple(removed_index),
      removed=removed,
      ordering_index=best.ordering,
      ordering=tuple(site_ids[i] for i in best.ordering),
      log_abs_det=best.log_abs_det,
      lambda_=best.lambda_,
      degenerate=best.degenerate,
      evaluations=len(orderings))


def _evaluate_all(f_canonical, subsets, config):
  evaluate = lambda removed_index: _evaluate_subset(f_canonical, removed_index,
                                                    config)
  if config.max_workers:
    with concurrent.futures.ThreadPoolExecutor(config.max_workers) as pool:
      return list(pool.map(evaluate, subsets))
  return [evaluate(s) for s in subsets]


def _rank_sites(f, baseline, singles):
  """SiteScores from the size-1 removal outcomes, sorted by rank."""
  by_site = {outcome.removed[0]: outcome for outcome in singles}
  scored = []
  for site_id in f.site_ids:
    outcome = by_site[site_id]
    if outcome.degenerate:
      logging.warning('removing site %s leaves a degenerate matrix', site_id)
      delta = math.nan
    else:
      delta = baseline.lambda_ - outcome.lambda_
    scored.append((site_id, delta, outcome.degenerate))

  def sort_key(item):
    site_id, delta, _ = item
    if math.isnan(delta):
      return (1, 0., site_id)
    return (0, -abs(delta), site_id)

  scored.sort(key=sort_key)
  return [
      SiteScore(site_id, delta, rank, degenerate)
      for rank, (site_id, delta, degenerate) in enumerate(scored, start=1)
  ]


def max_lambda_search(f, config=ScanConfig()):
  """Maximize lambda over removal subsets and site orderings.

  Args:
    f: a FrequencyVector.
    config: a ScanConfig.

  Returns:
    ScanResult. per_site_scores holds the leave-one-out attribution when
    config.removal_depth >= 1, and is empty otherwise.
  """
  _validate(f, config)
  f_canonical = f.canonical()
  subsets = [
      removed_index for depth in range(config.removal_depth + 1)
      for removed_index in itertools.combinations(range(f.n), depth)
  ]
  outcomes = _evaluate_all(f_canonical, subsets, config)
  baseline = outcomes[0]
  best = _select_max(outcomes, key=lambda o: (o.removed, o.ordering_index))
  computations = sum(o.evaluations for o in outcomes)
  logging.info(
      'searched %d removal subsets of %d sites (%s): %d lambda evaluations',
      len(subsets), f.n, config.ordering_mode, computations)

  singles = [o for o in outcomes if len(o.removed) == 1]
  per_site_scores = _rank_sites(f, baseline, singles) if singles else []
  return ScanResult(
      baseline_lambda=baseline.lambda_,
      baseline_degenerate=baseline.degenerate,
      per_site_scores=per_site_scores,
      max_lambda_subset=LambdaMaximizer(best.removed, best.ordering,
                                        best.lambda_, best.degenerate),
      max_lambda_log_abs_det=best.log_abs_det,
      computations_performed=computations,
      ordering_mode=config.ordering_mode)


def leave_one_out_scan(f, config=ScanConfig()):
  """Rank sites by how much their removal changes lambda."""
  if f.n < 3:
    raise FrequencyDataError(
        'leave-one-out needs at least 3 sites, got {}'.format(f.n))
  return max_lambda_search(f, config._replace(removal_depth=1))


def max_permutation_lambda(f, config=ScanConfig()):
  """AnalysisResult for the lambda-maximizing ordering of all sites."""
  result = max_lambda_search(f, config._replace(removal_depth=0))
  best = result.max_lambda_subset
  return benford_matrix.AnalysisResult(
      n=f.n,
      log_abs_det=result.max_lambda_log_abs_det,
      lambda_=best.lambda_,
      degenerate=best.degenerate,
      order_mode=benford_matrix.MAX_PERMUTATION,
      ordering=best.ordering)
