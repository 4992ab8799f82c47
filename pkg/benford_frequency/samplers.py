r"""### Count samplers

Each family draws strictly positive counts from a numpy Generator.

* log_uniform: $10^{U m}$ with $U \sim U[0, 1)$; leading digits follow
  Benford's law across $m$ orders of magnitude.
* uniform: $U[low, high)$ with $low > 0$.
* normal_truncated: $N(mean, std)$ redrawn until positive.
* exponential: $Exp(rate)$ redrawn until positive.
* continuous_benford: inverse-CDF draws from the density $\ln(x)$ on $[1, e]$.
"""

import numpy as np

from . import benford_measure
from .errors import ConfigError
from .sampler_family import SamplerFamily

# Rejection rounds before a truncated sampler is declared unusable.
_MAX_REJECTION_ROUNDS = 1000


def _require(condition, message):
  if not condition:
    raise ConfigError(message)


def _require_finite(params, names):
  for name in names:
    value = params.get(name)
    _require(
        isinstance(value, (int, float, np.number)) and np.isfinite(value),
        '{} must be a finite number, got {!r}'.format(name, value))


def _redraw_until_positive(draw_batch, size):
  accepted = np.empty(0)
  for _ in range(_MAX_REJECTION_ROUNDS):
    batch = draw_batch(size - accepted.size)
    accepted = np.concatenate([accepted, batch[batch > 0]])
    if accepted.size >= size:
      return accepted[:size]
  raise ConfigError('sampler produced too few positive draws')


# log_uniform


def _log_uniform_validate(params):
  _require_finite(params, ['orders_of_magnitude'])
  _require(params['orders_of_magnitude'] >= 1,
           'orders_of_magnitude must be >= 1')


def _log_uniform_draw(rng, size, params):
  return 10.**(rng.random(size) * params['orders_of_magnitude'])


LogUniformFamily = SamplerFamily(
    name='Log-uniform',
    kind='log_uniform',
    draw=_log_uniform_draw,
    validate=_log_uniform_validate,
    params0={'orders_of_magnitude': 4.},
    param_names=['orders_of_magnitude'])

# uniform


def _uniform_validate(params):
  _require_finite(params, ['low', 'high'])
  _require(params['low'] > 0, 'low must be > 0 so counts stay positive')
  _require(params['high'] > params['low'], 'high must exceed low')


def _uniform_draw(rng, size, params):
  return rng.uniform(params['low'], params['high'], size)


UniformFamily = SamplerFamily(
    name='Uniform',
    kind='uniform',
    draw=_uniform_draw,
    validate=_uniform_validate,
    params0={'low': 1., 'high': 1000.},
    param_names=['low', 'high'])

# normal_truncated


def _normal_validate(params):
  _require_finite(params, ['mean', 'std'])
  _require(params['std'] > 0, 'std must be > 0')


def _normal_draw(rng, size, params):
  return _redraw_until_positive(
      lambda k: rng.normal(params['mean'], params['std'], k), size)


NormalTruncatedFamily = SamplerFamily(
    name='Truncated normal',
    kind='normal_truncated',
    draw=_normal_draw,
    validate=_normal_validate,
    params0={'mean': 500., 'std': 200.},
    param_names=['mean', 'std'])

# exponential


def _exponential_validate(params):
  _require_finite(params, ['rate'])
  _require(params['rate'] > 0, 'rate must be > 0')


def _exponential_draw(rng, size, params):
  return _redraw_until_positive(
      lambda k: rng.exponential(1. / params['rate'], k), size)


ExponentialFamily = SamplerFamily(
    name='Exponential',
    kind='exponential',
    draw=_exponential_draw,
    validate=_exponential_validate,
    params0={'rate': 0.01},
    param_names=['rate'])

# continuous_benford


def _continuous_benford_draw(rng, size, params):
  return benford_measure.sample_continuous_array(rng.random(size))


ContinuousBenfordFamily = SamplerFamily(
    name='Continuous Benford',
    kind='continuous_benford',
    draw=_continuous_benford_draw,
    validate=lambda params: None,
    params0={},
    param_names=[])

FAMILIES = {
    family.kind: family for family in [
        LogUniformFamily, UniformFamily, NormalTruncatedFamily,
        ExponentialFamily, ContinuousBenfordFamily
    ]
}

ALIASES = {
    'loguniform': 'log_uniform',
    'normal': 'normal_truncated',
    'benford': 'continuous_benford',
}


def get_family(kind):
  kind = ALIASES.get(kind, kind)
  if kind not in FAMILIES:
    raise ConfigError('unknown sampler kind {!r}; expected one of {}'.format(
        kind, sorted(FAMILIES)))
  return FAMILIES[kind]


def resolve_params(kind, params=None):
  """params merged over the family defaults, validated."""
  family = get_family(kind)
  params = dict(params or {})
  unknown = set(params) - set(family.param_names)
  if unknown:
    raise ConfigError('unknown parameters for {}: {}'.format(
        family.kind, sorted(unknown)))
  resolved = dict(family.params0, **params)
  family.validate(resolved)
  return resolved
