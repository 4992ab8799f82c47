r"""### Hypothesis test on the Benford test statistic

$H_0: \lambda = 0$ against $H_A: \lambda \neq 0$, with
$$t = (0 - \lambda) / \sigma[X]$$
referred to Student's t with $n^2 - 1$ degrees of freedom, two-sided.

$\sigma[X]$ is the full-precision standard deviation of the continuous
Benford distribution (about 0.41958).
"""

import collections
import math

from scipy import optimize
from scipy import special

from . import benford_matrix
from . import benford_measure
from .errors import DomainError

DEFAULT_ALPHA = 0.05


class HypothesisResult(
    collections.namedtuple('HypothesisResult', [
        't_statistic', 'degrees_of_freedom', 'p_value', 'alpha', 'reject_null'
    ])):
  """A two-sided Studentized test of lambda = 0.

  t_statistic: -lambda / sigma, -inf for a degenerate (infinite) lambda
  degrees_of_freedom: n ** 2 - 1
  p_value: two-sided p-value, 0 for a degenerate lambda
  alpha: significance level the decision was taken at
  reject_null: p_value < alpha
  """


def t_statistic(lambda_):
  if not math.isfinite(lambda_):
    raise DomainError('lambda must be finite, got {}'.format(lambda_))
  return (0. - lambda_) / benford_measure.moments().std_dev


def student_t_cdf(t, df):
  """P(T <= t) for Student's t with df degrees of freedom.

  Uses P(|T| > |t|) = I_x(df / 2, 1 / 2) with x = df / (df + t^2), the
  regularized incomplete beta function.
  """
  if not df >= 1:
    raise DomainError('df must be >= 1, got {}'.format(df))
  if math.isnan(t):
    return math.nan
  if math.isinf(t):
    return 1. if t > 0 else 0.
  x = df / (df + t * t)
  tail = 0.5 * float(special.betainc(0.5 * df, 0.5, x))
  return 1. - tail if t > 0 else tail


def _check_test_args(n, alpha):
  if int(n) != n or n < 2:
    raise DomainError('n must be an integer >= 2, got {}'.format(n))
  if not 0. < alpha < 1.:
    raise DomainError('alpha must be in (0, 1), got {}'.format(alpha))


def test(lambda_, n, alpha=DEFAULT_ALPHA):
  _check_test_args(n, alpha)
  df = int(n)**2 - 1
  if not math.isfinite(lambda_):
    # A singular Benford matrix is maximal deviation from the null.
    return HypothesisResult(-math.inf, df, 0., alpha, True)
  t = t_statistic(lambda_)
  p_value = min(1., 2. * student_t_cdf(-abs(t), df))
  return HypothesisResult(t, df, p_value, alpha, p_value < alpha)


def critical_lambda(n, alpha=DEFAULT_ALPHA):
  """The |lambda| at which test() starts rejecting for n sites."""
  _check_test_args(n, alpha)
  df = int(n)**2 - 1
  t_crit = optimize.brentq(
      lambda t: student_t_cdf(-t, df) - alpha / 2., 0., 1e8, xtol=1e-12)
  return t_crit * benford_measure.moments().std_dev


def analyze(f, alpha=DEFAULT_ALPHA):
  """Canonical-order lambda for f and its hypothesis test."""
  analysis = benford_matrix.lambda_statistic(f)
  return analysis, test(analysis.lambda_, analysis.n, alpha)
