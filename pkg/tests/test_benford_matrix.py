import fractions
import itertools
import math

import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

from benford_frequency import benford_matrix
from benford_frequency import benford_measure
from benford_frequency.benford_matrix import FrequencyVector
from benford_frequency.errors import DomainError
from benford_frequency.errors import FrequencyDataError

MEAN = benford_measure.moments().mean


def exact_det(counts):
  """det of the Benford matrix by rational Gaussian elimination."""
  n = len(counts)
  f = [fractions.Fraction(c) for c in counts]
  a = [[f[j] / f[(j + i) % n] for j in range(n)] for i in range(n)]
  det = fractions.Fraction(1)
  for col in range(n):
    pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
    if pivot is None:
      return fractions.Fraction(0)
    if pivot != col:
      a[col], a[pivot] = a[pivot], a[col]
      det = -det
    det *= a[col][col]
    for r in range(col + 1, n):
      factor = a[r][col] / a[col][col]
      for c in range(col, n):
        a[r][c] -= factor * a[col][c]
  return det


class LogRatioTest(absltest.TestCase):

  def test_values(self):
    self.assertAlmostEqual(benford_matrix.log_ratio(2., 1.), math.log(2.))
    self.assertEqual(benford_matrix.log_ratio(5., 5.), 0.)
    self.assertAlmostEqual(
        benford_matrix.log_ratio(3., 7.), -benford_matrix.log_ratio(7., 3.))

  def test_first_order_agreement_with_relative_change(self):
    for change in [1e-2, 1e-3, -1e-3]:
      exact = benford_matrix.relative_change(1. + change, 1.)
      self.assertAlmostEqual(exact, change, places=12)
      self.assertAlmostEqual(
          benford_matrix.log_ratio(1. + change, 1.), exact,
          delta=change * change)

  def test_non_positive(self):
    for args in [(0., 1.), (1., 0.), (-1., 2.)]:
      with self.assertRaises(DomainError):
        benford_matrix.log_ratio(*args)
      with self.assertRaises(DomainError):
        benford_matrix.relative_change(*args)


class FrequencyVectorTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('zero', ['a', 'b'], [1., 0.]),
      ('negative', ['a', 'b'], [1., -2.]),
      ('nan', ['a', 'b'], [1., math.nan]),
      ('inf', ['a', 'b'], [1., math.inf]),
      ('single', ['a'], [1.]),
      ('duplicate', ['a', 'a', 'b'], [1., 2., 3.]),
      ('empty_id', ['a', ''], [1., 2.]),
      ('misaligned', ['a', 'b'], [1., 2., 3.]),
      ('not_a_number', ['a', 'b'], [1., 'x']),
  )
  def test_invalid(self, site_ids, counts):
    with self.assertRaises(FrequencyDataError):
      FrequencyVector(site_ids, counts)

  def test_default_ids(self):
    f = FrequencyVector.from_counts(range(1, 12))
    self.assertEqual(f.site_ids[0], 'site_00')
    self.assertEqual(f.site_ids[-1], 'site_10')

  def test_canonical_order(self):
    f = FrequencyVector.from_pairs([('x', 2.), ('b', 5.), ('a', 5.)])
    self.assertEqual(f.canonical_order(), (2, 1, 0))
    self.assertEqual(f.canonical().site_ids, ('a', 'b', 'x'))
    self.assertEqual(f.canonical(),
                     FrequencyVector(['a', 'b', 'x'], [5, 5, 2]))
    self.assertLen({f.canonical(), f.reordered((2, 1, 0))}, 1)

  def test_without_and_scaled(self):
    f = FrequencyVector.from_pairs([('a', 1.), ('b', 2.), ('c', 3.)])
    self.assertEqual(f.without(['b']), FrequencyVector(['a', 'c'], [1., 3.]))
    self.assertEqual(f.scaled(2.).counts, (2., 4., 6.))
    with self.assertRaises(FrequencyDataError):
      f.without(['z'])

  def test_reordered_requires_permutation(self):
    f = FrequencyVector.from_counts([1., 2., 3.])
    with self.assertRaises(FrequencyDataError):
      f.reordered((0, 0, 1))


class BuildMatrixTest(absltest.TestCase):

  def test_three_sites(self):
    f = FrequencyVector.from_pairs([('a', 1.), ('b', 2.), ('c', 3.)])
    matrix = benford_matrix.build_matrix(f)
    self.assertEqual(matrix.dimension, 3)
    self.assertEqual(matrix.site_ids, ('a', 'b', 'c'))
    np.testing.assert_allclose(
        matrix.entries,
        [[1., 1., 1.], [1. / 2., 2. / 3., 3.], [1. / 3., 2., 3. / 2.]],
        rtol=1e-15)

  def test_entries_are_read_only(self):
    matrix = benford_matrix.build_matrix(FrequencyVector.from_counts([1, 2]))
    with self.assertRaises(ValueError):
      matrix.entries[0, 0] = 3.

  def test_row_products_are_one(self):
    rng = np.random.default_rng(2)
    for n in range(2, 9):
      f = FrequencyVector.from_counts(rng.uniform(1., 100., n))
      entries = benford_matrix.build_matrix(f).entries
      np.testing.assert_allclose(np.prod(entries, axis=1), np.ones(n),
                                 rtol=1e-12)

  def test_batch_matches_single(self):
    rng = np.random.default_rng(4)
    stack = rng.uniform(1., 50., size=(6, 5))
    log_dets, degenerate = benford_matrix.log_abs_dets(
        benford_matrix.build_matrices(stack))
    for counts, log_det, flag in zip(stack, log_dets, degenerate):
      single = benford_matrix.log_abs_det(
          benford_matrix.build_matrix(FrequencyVector.from_counts(counts)))
      self.assertAlmostEqual(single, log_det, places=12)
      self.assertFalse(flag)


class LogAbsDetTest(parameterized.TestCase):

  def test_rational_oracle(self):
    rng = np.random.default_rng(17)
    for _ in range(500):
      n = int(rng.integers(2, 7))
      counts = [int(c) for c in rng.integers(1, 60, n)]
      exact = abs(exact_det(counts))
      entries = benford_matrix.build_matrix(
          FrequencyVector.from_counts(counts)).entries
      log_det = benford_matrix.log_abs_det(entries)
      if exact == 0:
        det = 0. if log_det == -math.inf else math.exp(log_det)
        hadamard = np.prod(np.linalg.norm(entries, axis=1))
        self.assertLessEqual(det, 1e-9 * hadamard)
      else:
        self.assertAlmostEqual(log_det, math.log(exact), delta=1e-9)

  def test_wide_count_range_is_not_degenerate(self):
    counts = [1e8, 3., 1., 1e-8]
    exact = abs(exact_det(counts))
    analysis = benford_matrix.lambda_statistic(
        FrequencyVector.from_counts(counts))
    self.assertFalse(analysis.degenerate)
    self.assertAlmostEqual(analysis.log_abs_det, math.log(exact), delta=1e-9)
    self.assertAlmostEqual(float(exact) / 3e32, 1., delta=1e-6)

  def test_three_site_closed_form(self):
    a, b, c = 3., 2., 1.
    expected = abs(3. - b * c / a**2 - a * c / b**2 - a * b / c**2)
    log_det = benford_matrix.log_abs_det(
        benford_matrix.build_matrix(FrequencyVector.from_counts([a, b, c])))
    self.assertAlmostEqual(log_det, math.log(expected), places=12)
    self.assertAlmostEqual(expected, 143. / 36., places=12)

  def test_two_site_closed_form(self):
    log_det = benford_matrix.log_abs_det(
        benford_matrix.build_matrix(FrequencyVector.from_counts([2., 3.])))
    self.assertAlmostEqual(log_det, math.log(3. / 2. - 2. / 3.), places=12)

  @parameterized.parameters(range(2, 9))
  def test_all_equal_is_degenerate(self, n):
    analysis = benford_matrix.lambda_statistic(
        FrequencyVector.from_counts([5.] * n))
    self.assertTrue(analysis.degenerate)
    self.assertEqual(analysis.log_abs_det, -math.inf)
    self.assertEqual(analysis.lambda_, math.inf)


class LambdaStatisticTest(absltest.TestCase):

  def test_three_sites(self):
    analysis = benford_matrix.lambda_statistic(
        FrequencyVector.from_pairs([('a', 1.), ('b', 2.), ('c', 3.)]))
    self.assertAlmostEqual(
        analysis.lambda_, MEAN - math.log(143. / 36.) / 3., delta=1e-9)
    self.assertAlmostEqual(analysis.lambda_, 1.6374884, delta=1e-6)
    self.assertEqual(analysis.n, 3)
    self.assertFalse(analysis.degenerate)
    self.assertEqual(analysis.order_mode, benford_matrix.CANONICAL)
    self.assertEqual(analysis.ordering, ('c', 'b', 'a'))

  def test_scale_invariance(self):
    f = FrequencyVector.from_counts([4., 17., 230., 9., 1.5, 61.])
    baseline = benford_matrix.lambda_statistic(f).lambda_
    for c in [1e-3, 7., 1e6]:
      self.assertAlmostEqual(
          benford_matrix.lambda_statistic(f.scaled(c)).lambda_, baseline,
          delta=1e-9)

  def test_three_sites_ordering_invariant(self):
    f = FrequencyVector.from_counts([2., 11., 5.])
    lambdas = [
        benford_matrix.lambda_for_ordering(f, order).lambda_
        for order in itertools.permutations(range(3))
    ]
    self.assertLess(max(lambdas) - min(lambdas), 1e-9)

  def test_four_sites_ordering_dependent(self):
    f = FrequencyVector.from_counts([1., 2., 3., 1000.])
    lambdas = [
        benford_matrix.lambda_for_ordering(f, order).lambda_
        for order in itertools.permutations(range(4))
    ]
    self.assertGreater(max(lambdas) - min(lambdas), 0.1)

  def test_ordering_recorded(self):
    f = FrequencyVector.from_pairs([('a', 1.), ('b', 2.), ('c', 3.)])
    analysis = benford_matrix.lambda_for_ordering(f, (1, 0, 2), 'custom')
    self.assertEqual(analysis.ordering, ('b', 'a', 'c'))
    self.assertEqual(analysis.order_mode, 'custom')


if __name__ == '__main__':
  absltest.main()
