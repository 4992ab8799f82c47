r"""### Benford Matrix

For visit counts $f_0, \dots, f_{n-1}$ the Benford matrix is the cyclic ratio
matrix
$$A_{i,j} = f_j / f_{(j + i) \bmod n},$$
so row 0 is all ones and every row holds each count once as a numerator and
once as a denominator. For $n = 3$:
$$A = \begin{bmatrix} f_1/f_1 & f_2/f_2 & f_3/f_3 \\
                      f_1/f_2 & f_2/f_3 & f_3/f_1 \\
                      f_1/f_3 & f_2/f_1 & f_3/f_2 \end{bmatrix}.$$

$\Delta f = \ln|\det A|$ and the test statistic is
$$\lambda = E[X] - \Delta f / n, \quad E[X] = (e^2 + 1) / 4.$$

$|\det A|$ depends on the site ordering once $n \geq 4$; the canonical ordering
sorts by descending count, ties by ascending site id.
"""

import collections
import functools
import math

import numpy as np
from absl import logging
from scipy import linalg

from . import benford_measure
from .errors import DomainError
from .errors import FrequencyDataError

# Rows are scaled to unit max magnitude before factorizing; a pivot below this
# makes the matrix degenerate.
SINGULAR_RTOL = 1e-12

# Matrices factorized per scipy.linalg.lu call.
_BATCH_SIZE = 4096

CANONICAL = 'canonical'
MAX_PERMUTATION = 'max_permutation'


def log_ratio(f_i, f_j):
  """ln(f_i) - ln(f_j), the log form of the percent change from f_j to f_i."""
  if not (f_i > 0 and f_j > 0):
    raise DomainError('frequencies must be positive, got {} and {}'.format(
        f_i, f_j))
  return math.log(f_i) - math.log(f_j)


def relative_change(f_i, f_j):
  """f_i / f_j - 1; log_ratio is its first-order approximation."""
  if not (f_i > 0 and f_j > 0):
    raise DomainError('frequencies must be positive, got {} and {}'.format(
        f_i, f_j))
  return f_i / f_j - 1.


def default_site_ids(n):
  width = len(str(max(n - 1, 0)))
  return tuple('site_{i:0{width}d}'.format(i=i, width=width) for i in range(n))


class FrequencyVector(
    collections.namedtuple('FrequencyVector', ['site_ids', 'counts'])):
  """Visit counts per site, in a fixed order.

  site_ids: a tuple of unique, non-empty str site identifiers
  counts: a tuple of strictly positive, finite floats aligned with site_ids
  """
  __slots__ = ()

  def __new__(cls, site_ids, counts):
    site_ids = tuple(str(s) for s in site_ids)
    try:
      counts = tuple(float(c) for c in counts)
    except (TypeError, ValueError) as e:
      raise FrequencyDataError('counts must be numbers: {}'.format(e))
    if len(site_ids) != len(counts):
      raise FrequencyDataError(
          '{} site ids for {} counts'.format(len(site_ids), len(counts)))
    if len(counts) < 2:
      raise FrequencyDataError(
          'need at least 2 sites, got {}'.format(len(counts)))
    for site_id, count in zip(site_ids, counts):
      if not site_id:
        raise FrequencyDataError('empty site id')
      if not (math.isfinite(count) and count > 0):
        raise FrequencyDataError(
            'count for site {!r} must be positive and finite, got {}'.format(
                site_id, count))
    if len(set(site_ids)) != len(site_ids):
      dupes = sorted(
          s for s, k in collections.Counter(site_ids).items() if k > 1)
      raise FrequencyDataError('duplicate site ids: {}'.format(dupes))
    return super().__new__(cls, site_ids, counts)

  @classmethod
  def from_counts(cls, counts, site_ids=None):
    counts = list(counts)
    if site_ids is None:
      site_ids = default_site_ids(len(counts))
    return cls(site_ids, counts)

  @classmethod
  def from_pairs(cls, pairs):
    pairs = list(pairs)
    return cls([s for s, _ in pairs], [c for _, c in pairs])

  @property
  def n(self):
    return len(self.counts)

  def as_array(self):
    return np.asarray(self.counts, dtype=np.float64)

  def canonical_order(self):
    """Indices sorted by descending count, then ascending site id."""
    return tuple(
        sorted(
            range(self.n), key=lambda i: (-self.counts[i], self.site_ids[i])))

  def reordered(self, order):
    order = tuple(order)
    if sorted(order) != list(range(self.n)):
      raise FrequencyDataError('{} is not a permutation of the sites'.format(
          order))
    return FrequencyVector([self.site_ids[i] for i in order],
                           [self.counts[i] for i in order])

  def canonical(self):
    return self.reordered(self.canonical_order())

  def without(self, site_ids):
    drop = set(site_ids)
    missing = drop - set(self.site_ids)
    if missing:
      raise FrequencyDataError('unknown site ids: {}'.format(sorted(missing)))
    keep = [i for i, s in enumerate(self.site_ids) if s not in drop]
    return FrequencyVector([self.site_ids[i] for i in keep],
                           [self.counts[i] for i in keep])

  def scaled(self, c):
    return FrequencyVector(self.site_ids, [c * x for x in self.counts])


class BenfordMatrix(
    collections.namedtuple('BenfordMatrix', ['site_ids', 'entries'])):
  """The cyclic ratio matrix of a FrequencyVector.

  site_ids: the site ordering the matrix was built from
  entries: a read-only np.array of shape (n, n)
  """
  __slots__ = ()

  @property
  def dimension(self):
    return self.entries.shape[0]


class AnalysisResult(
    collections.namedtuple(
        'AnalysisResult',
        ['n', 'log_abs_det', 'lambda_', 'degenerate', 'order_mode',
         'ordering'])):
  """Outcome of computing the Benford test statistic.

  n: number of sites
  log_abs_det: ln|det A|, -inf when degenerate
  lambda_: E[X] - log_abs_det / n, +inf when degenerate
  degenerate: True when A is singular below SINGULAR_RTOL
  order_mode: 'canonical' or 'max_permutation'
  ordering: tuple of site ids in the order A was built from
  """


@functools.lru_cache(maxsize=None)
def _cyclic_index(n):
  rows = np.arange(n)[:, np.newaxis]
  cols = np.arange(n)[np.newaxis, :]
  index = (cols + rows) % n
  index.setflags(write=False)
  return index


def build_matrices(count_stack):
  """Benford matrices for a stack of count vectors.

  Args:
    count_stack: array-like of shape (batch, n), positive counts in the order
      each matrix should be built from.

  Returns:
    a np.array of shape (batch, n, n).
  """
  count_stack = np.asarray(count_stack, dtype=np.float64)
  n = count_stack.shape[-1]
  return count_stack[:, np.newaxis, :] / count_stack[:, _cyclic_index(n)]


def build_matrix(f):
  entries = build_matrices(f.as_array()[np.newaxis, :])[0]
  entries.setflags(write=False)
  return BenfordMatrix(f.site_ids, entries)


def log_abs_dets(matrices):
  """ln|det| for a stack of square matrices via row-equilibrated pivoted LU.

  Args:
    matrices: array-like of shape (batch, n, n).

  Returns:
    log_dets: np.array of shape (batch,), -inf where degenerate.
    degenerate: bool np.array of shape (batch,).
  """
  matrices = np.asarray(matrices, dtype=np.float64)
  log_dets = np.empty(matrices.shape[0])
  degenerate = np.empty(matrices.shape[0], dtype=bool)
  for start in range(0, matrices.shape[0], _BATCH_SIZE):
    chunk = matrices[start:start + _BATCH_SIZE]
    row_scales = np.max(np.abs(chunk), axis=-1)
    zero_row = np.any(row_scales == 0., axis=-1)
    row_scales = np.where(row_scales > 0., row_scales, 1.)
    _, u = linalg.lu(chunk / row_scales[..., np.newaxis], permute_l=True)
    pivots = np.abs(np.diagonal(u, axis1=-2, axis2=-1))
    singular = zero_row | np.any(pivots < SINGULAR_RTOL, axis=-1)
    with np.errstate(divide='ignore'):
      chunk_log_dets = (np.sum(np.log(pivots), axis=-1) +
                        np.sum(np.log(row_scales), axis=-1))
    log_dets[start:start + _BATCH_SIZE] = np.where(singular, -np.inf,
                                                   chunk_log_dets)
    degenerate[start:start + _BATCH_SIZE] = singular
  return log_dets, degenerate


def log_abs_det(matrix):
  """ln|det A|; -inf signals a degenerate matrix."""
  entries = matrix.entries if isinstance(matrix, BenfordMatrix) else matrix
  log_dets, _ = log_abs_dets(np.asarray(entries)[np.newaxis, :, :])
  return float(log_dets[0])


def lambda_from_log_abs_det(log_det, n):
  if log_det == -np.inf:
    return np.inf
  return benford_measure.moments().mean - log_det / n


def lambdas_from_log_abs_dets(log_dets, n):
  with np.errstate(invalid='ignore'):
    lambdas = benford_measure.moments().mean - log_dets / n
  return np.where(np.isneginf(log_dets), np.inf, lambdas)


def lambda_for_ordering(f, order, order_mode=CANONICAL):
  """AnalysisResult for f with A built in the given index order."""
  ordered = f.reordered(order)
  log_det = log_abs_det(build_matrix(ordered))
  degenerate = log_det == -np.inf
  if degenerate:
    logging.warning('degenerate Benford matrix for sites %s',
                    ', '.join(ordered.site_ids))
  return AnalysisResult(
      n=f.n,
      log_abs_det=log_det,
      lambda_=lambda_from_log_abs_det(log_det, f.n),
      degenerate=bool(degenerate),
      order_mode=order_mode,
      ordering=ordered.site_ids)


def lambda_statistic(f):
  """The Benford test statistic under the canonical site ordering."""
  return lambda_for_ordering(f, f.canonical_order(), CANONICAL)
