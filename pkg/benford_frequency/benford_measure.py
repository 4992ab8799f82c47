r"""### Benford Measure

Discrete leading-digit law for base $k$:
$$P(S = t) = \log_k(1 + 1/t), \quad t \in \{1, \dots, k - 1\}.$$

Continuous bounded form on $[1, e]$ with density $\ln(x)$:
$$F(x) = x \ln(x) - x + 1,$$
$$E[X] = \int_1^e x \ln(x) dx = (e^2 + 1) / 4,$$
$$E[X^2] = \int_1^e x^2 \ln(x) dx = (2 e^3 + 1) / 9.$$

The inverse of $F$ has a closed form through the principal Lambert W branch:
with $z = (u - 1) / e \in [-1/e, 0)$, $x = e^{1 + W_0(z)}$.
"""

import collections
import math

import numpy as np
from scipy import optimize
from scipy import special
from scipy import stats

from .errors import DomainError

LOWER = 1.
UPPER = math.e

SAMPLER_XTOL = 1e-12
# Lambert W draws whose cdf misses u by more than this fall back to bisection.
SAMPLER_RESIDUAL = 1e-12


class MomentSet(
    collections.namedtuple('MomentSet',
                           ['mean', 'second_moment', 'variance', 'std_dev'])):
  """Moments of the continuous Benford distribution on [1, e].

  mean: E[X]
  second_moment: E[X^2]
  variance: E[X^2] - E[X]^2
  std_dev: sqrt(variance)
  """


class FirstDigitTest(
    collections.namedtuple(
        'FirstDigitTest',
        ['statistic', 'p_value', 'observed', 'expected', 'base'])):
  """Chi-square first-digit test against the discrete Benford pmf.

  statistic: the chi-square statistic with base - 2 degrees of freedom
  p_value: upper tail probability of statistic
  observed: np.array of shape (base - 1,) with digit counts for digits 1..base-1
  expected: np.array of shape (base - 1,) with expected counts under Benford
  base: the digit base
  """


def _check_base(base):
  if int(base) != base or base < 2:
    raise DomainError('base must be an integer >= 2, got {}'.format(base))


def _check_support(x):
  if not LOWER <= x <= UPPER:
    raise DomainError('x must lie in [1, e], got {}'.format(x))


# Discrete law.


def discrete_pmf(digit, base=10):
  _check_base(base)
  if int(digit) != digit or not 1 <= digit <= base - 1:
    raise DomainError('digit must be in [1, {}], got {}'.format(
        base - 1, digit))
  return math.log1p(1. / digit) / math.log(base)


class DiscreteBenford(object):

  def __init__(self, base=10):
    _check_base(base)
    self.base = int(base)

  @property
  def digits(self):
    return np.arange(1, self.base)

  def pmf(self, digit):
    return discrete_pmf(digit, self.base)

  def pmf_vector(self):
    return np.log1p(1. / self.digits) / np.log(self.base)

  def __str__(self):
    return 'DiscreteBenford(base={base})'.format(base=self.base)


def leading_digit(value, base=10):
  """First significand digit of value in the given base.

  Args:
    value: a positive real.
    base: an int >= 2.

  Returns:
    an int in [1, base - 1].
  """
  _check_base(base)
  if not value > 0 or not math.isfinite(value):
    raise DomainError('value must be positive and finite, got {}'.format(value))
  base = int(base)
  exponent = math.floor(math.log(value, base))

  def _scaled(p):
    # Integer powers keep the rescaling to a single rounding.
    if p >= 0:
      return value / base**p
    return value * base**(-p)

  significand = _scaled(exponent)
  if significand >= base:
    significand = _scaled(exponent + 1)
  elif significand < 1:
    significand = _scaled(exponent - 1)
  return int(significand)


def leading_digits(values, base=10):
  """Vectorized leading_digit over an array of positive values."""
  _check_base(base)
  values = np.asarray(values, dtype=np.float64)
  if np.any(~(values > 0)) or not np.all(np.isfinite(values)):
    raise DomainError('values must be positive and finite')
  exponent = np.floor(np.log(values) / np.log(base))
  significand = values / np.power(float(base), exponent)
  significand = np.where(significand >= base, significand / base, significand)
  significand = np.where(significand < 1, significand * base, significand)
  return np.clip(np.floor(significand).astype(np.int64), 1, base - 1)


def first_digit_frequencies(values, base=10):
  digits = leading_digits(values, base)
  counts = np.bincount(digits, minlength=base)[1:]
  return counts / counts.sum()


def first_digit_test(values, base=10):
  digits = leading_digits(values, base)
  observed = np.bincount(digits, minlength=base)[1:]
  expected = DiscreteBenford(base).pmf_vector() * observed.sum()
  statistic, p_value = stats.chisquare(observed, f_exp=expected)
  return FirstDigitTest(float(statistic), float(p_value), observed, expected,
                        int(base))


# Continuous law on [1, e].


def continuous_pdf(x):
  _check_support(x)
  return math.log(x)


def continuous_cdf(x):
  _check_support(x)
  return x * math.log(x) - x + 1.


def moments():
  mean = (math.e**2 + 1.) / 4.
  second_moment = (2. * math.e**3 + 1.) / 9.
  variance = second_moment - mean**2
  return MomentSet(mean, second_moment, variance, math.sqrt(variance))


# Four-digit values as commonly quoted. std_dev is not sqrt(variance) here.
ROUNDED_MOMENTS = MomentSet(
    mean=2.0973, second_moment=4.5746, variance=0.1759, std_dev=0.4149)


def sample_continuous(uniform_draw):
  """Inverse-CDF draw from the continuous Benford distribution.

  Bisection on F(x) - u over the bracket [1, e].
  """
  if not 0. <= uniform_draw < 1.:
    raise DomainError('uniform_draw must be in [0, 1), got {}'.format(
        uniform_draw))
  if uniform_draw == 0.:
    return LOWER
  return optimize.bisect(
      lambda x: continuous_cdf(x) - uniform_draw,
      LOWER,
      UPPER,
      xtol=SAMPLER_XTOL)


def sample_continuous_array(uniform_draws):
  uniform_draws = np.asarray(uniform_draws, dtype=np.float64)
  if np.any((uniform_draws < 0.) | (uniform_draws >= 1.)):
    raise DomainError('uniform draws must be in [0, 1)')
  z = (uniform_draws - 1.) / math.e
  w = special.lambertw(z, k=0).real
  draws = np.asarray(np.exp(1. + w))
  # Halley iteration can stall near the branch point z = -1/e.
  with np.errstate(invalid='ignore'):
    residual = np.abs(draws * np.log(draws) - draws + 1. - uniform_draws)
  stalled = ~(residual <= SAMPLER_RESIDUAL)
  if np.any(stalled):
    draws[stalled] = [sample_continuous(u) for u in uniform_draws[stalled]]
  return np.clip(draws, LOWER, UPPER)


class ContinuousBenford(object):
  """The continuous Benford distribution with density ln(x) on [1, e]."""

  lower = LOWER
  upper = UPPER

  def pdf(self, x):
    return continuous_pdf(x)

  def cdf(self, x):
    return continuous_cdf(x)

  def moments(self):
    return moments()

  def sample(self, uniform_draw):
    return sample_continuous(uniform_draw)

  def sample_array(self, uniform_draws):
    return sample_continuous_array(uniform_draws)

