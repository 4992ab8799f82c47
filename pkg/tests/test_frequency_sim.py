import math
from unittest import mock

import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

from benford_frequency import benford_matrix
from benford_frequency import benford_measure
from benford_frequency import frequency_sim
from benford_frequency import samplers
from benford_frequency.errors import ConfigError
from benford_frequency.frequency_sim import SamplerSpec
from benford_frequency.sampler_family import SamplerFamily

ConstantFamily = SamplerFamily(
    name='Constant',
    kind='constant',
    draw=lambda rng, size, params: np.full(size, 5.),
    validate=lambda params: None,
    params0={},
    param_names=[])


class GenerateFrequencies(parameterized.TestCase):

  def test_log_uniform_range(self):
    f = frequency_sim.generate_frequencies(
        SamplerSpec('log_uniform', seed=3), 1000)
    counts = f.as_array()
    self.assertEqual(f.n, 1000)
    self.assertTrue(np.all(counts >= 1.))
    self.assertTrue(np.all(counts < 1e4))

  def test_uniform_range(self):
    f = frequency_sim.generate_frequencies(
        SamplerSpec('uniform', {'low': 1., 'high': 1000.}, seed=3), 1000)
    counts = f.as_array()
    self.assertTrue(np.all(counts >= 1.))
    self.assertTrue(np.all(counts <= 1000.))

  @parameterized.parameters(sorted(samplers.FAMILIES))
  def test_positive(self, kind):
    counts = frequency_sim.draw_counts(SamplerSpec(kind, seed=1), 10**6)
    self.assertLen(counts, 10**6)
    self.assertTrue(np.all(counts > 0))

  def test_aliases(self):
    for alias, kind in samplers.ALIASES.items():
      np.testing.assert_array_equal(
          frequency_sim.draw_counts(SamplerSpec(alias), 50),
          frequency_sim.draw_counts(SamplerSpec(kind), 50))

  def test_log_uniform_first_digit_share(self):
    counts = frequency_sim.draw_counts(
        SamplerSpec('log_uniform', seed=2), 10**5)
    shares = benford_measure.first_digit_frequencies(counts)
    self.assertAlmostEqual(shares[0], np.log10(2.), delta=0.01)

  def test_first_digit_distance_shrinks(self):
    spec = SamplerSpec('log_uniform', seed=4)
    self.assertGreater(
        frequency_sim.first_digit_distance(spec, 10**3),
        frequency_sim.first_digit_distance(spec, 10**5))

  def test_rounding(self):
    spec = SamplerSpec('log_uniform', seed=6, round_to_integer=True)
    counts = frequency_sim.generate_frequencies(spec, 500).as_array()
    np.testing.assert_array_equal(counts, np.round(counts))
    self.assertTrue(np.all(counts >= 1.))

  def test_default_site_ids(self):
    f = frequency_sim.generate_frequencies(SamplerSpec('uniform'), 3)
    self.assertEqual(f.site_ids, ('site_0', 'site_1', 'site_2'))

  @parameterized.named_parameters(
      ('unknown_kind', SamplerSpec('pareto'), 5),
      ('zero_low', SamplerSpec('uniform', {'low': 0.}), 5),
      ('inverted', SamplerSpec('uniform', {'low': 5., 'high': 2.}), 5),
      ('few_orders', SamplerSpec('log_uniform', {'orders_of_magnitude': 0.5}),
       5),
      ('zero_std', SamplerSpec('normal_truncated', {'std': 0.}), 5),
      ('zero_rate', SamplerSpec('exponential', {'rate': 0.}), 5),
      ('unknown_param', SamplerSpec('uniform', {'mode': 3.}), 5),
      ('negative_seed', SamplerSpec('uniform', seed=-1), 5),
      ('one_site', SamplerSpec('uniform'), 1),
  )
  def test_config_errors(self, spec, n_sites):
    with self.assertRaises(ConfigError):
      frequency_sim.generate_frequencies(spec, n_sites)


class RunTrials(absltest.TestCase):

  def test_single_trial_is_lambda_statistic(self):
    spec = SamplerSpec('log_uniform', seed=12)
    report = frequency_sim.run_trials(spec, 6, 1)
    f = frequency_sim.generate_frequencies(spec, 6, 0)
    self.assertLen(report.lambda_samples, 1)
    self.assertEqual(report.lambda_samples[0],
                     benford_matrix.lambda_statistic(f).lambda_)

  def test_reproducible(self):
    spec = SamplerSpec('exponential', seed=3)
    first = frequency_sim.run_trials(spec, 8, 30)
    second = frequency_sim.run_trials(spec, 8, 30, max_workers=4)
    self.assertEqual(first, second)

  def test_accounting(self):
    report = frequency_sim.run_trials(SamplerSpec('uniform', seed=1), 10, 50)
    self.assertEqual(report.trials, 50)
    self.assertEqual(report.sites_per_trial, 10)
    self.assertLen(report.lambda_samples, 50)
    self.assertEqual(
        report.rejections + report.non_rejections + report.degenerate_trials,
        report.trials)
    self.assertBetween(report.rejection_rate, 0., 1.)
    self.assertEqual(report.planted_site_count, 0)
    self.assertIsNone(report.planted_sampler)
    self.assertEqual(report.detection_precision, 1.)
    self.assertEqual(report.detection_recall, 1.)

  def test_degenerate_sampler(self):
    with mock.patch.dict(samplers.FAMILIES, {'constant': ConstantFamily}):
      report = frequency_sim.run_trials(SamplerSpec('constant'), 5, 10)
    self.assertEqual(report.degenerate_trials, 10)
    self.assertEqual(report.rejections, 0)
    self.assertEqual(report.non_rejections, 0)
    self.assertEqual(report.rejection_rate, 1.)
    self.assertEqual(report.mean_abs_lambda, float('inf'))
    self.assertTrue(all(l == float('inf') for l in report.lambda_samples))

  def test_log_uniform_and_uniform_goldens(self):
    log_uniform = frequency_sim.run_trials(
        SamplerSpec('log_uniform', {'orders_of_magnitude': 4.}, seed=7), 20,
        200)
    uniform = frequency_sim.run_trials(
        SamplerSpec('uniform', {'low': 1., 'high': 1000.}, seed=7), 20, 200)
    # Seeded goldens. Four decades of log-uniform counts sit further from
    # lambda = 0 than uniform[1, 1000] counts at n = 20.
    self.assertAlmostEqual(log_uniform.mean_abs_lambda, 2.129521357, delta=1e-8)
    self.assertAlmostEqual(log_uniform.rejection_rate, 0.995, places=12)
    self.assertAlmostEqual(uniform.mean_abs_lambda, 0.864921246, delta=1e-8)
    self.assertAlmostEqual(uniform.rejection_rate, 0.415, places=12)
    self.assertEqual(
        log_uniform,
        frequency_sim.run_trials(
            SamplerSpec('log_uniform', {'orders_of_magnitude': 4.}, seed=7),
            20, 200))

  def test_continuous_benford_sampler(self):
    report = frequency_sim.run_trials(
        SamplerSpec('continuous_benford', seed=7), 20, 200)
    self.assertEqual(report.sampler, 'continuous_benford')
    self.assertLen(report.lambda_samples, 200)
    self.assertFalse(any(math.isnan(l) for l in report.lambda_samples))

  def test_bad_trials(self):
    with self.assertRaises(ConfigError):
      frequency_sim.run_trials(SamplerSpec('uniform'), 5, 0)


class RunPlantedAnomaly(absltest.TestCase):

  def test_planted_ids(self):
    f, planted_ids = frequency_sim.generate_planted_frequencies(
        SamplerSpec('log_uniform', seed=11), 12, 2,
        SamplerSpec('uniform', seed=11), 0)
    self.assertEqual(f.n, 12)
    self.assertLen(planted_ids, 2)
    self.assertTrue(planted_ids <= set(f.site_ids))

  def test_precision_and_recall(self):
    args = (SamplerSpec('log_uniform', seed=11), 12, 2,
            SamplerSpec('uniform', seed=11), 100)
    report = frequency_sim.run_planted_anomaly(*args)
    self.assertEqual(report, frequency_sim.run_planted_anomaly(*args))
    self.assertEqual(report.planted_site_count, 2)
    self.assertEqual(report.planted_sampler, 'uniform')
    self.assertLen(report.lambda_samples, 100)
    # Seeded golden: 6 of 200 planted sites land in the top 2 ranks, fewer
    # than the 2 / 12 a random ranking would find.
    self.assertAlmostEqual(report.detection_precision, 0.03, places=12)
    self.assertAlmostEqual(report.detection_recall, 0.03, places=12)

  def test_planted_like_background_is_chance(self):
    report = frequency_sim.run_planted_anomaly(
        SamplerSpec('log_uniform', seed=11), 12, 2,
        SamplerSpec('log_uniform', seed=11), 200)
    self.assertAlmostEqual(report.detection_recall, 2. / 12., delta=0.08)

  def test_nothing_planted(self):
    report = frequency_sim.run_planted_anomaly(
        SamplerSpec('log_uniform', seed=11), 12, 0,
        SamplerSpec('uniform', seed=11), 5)
    self.assertEqual(report.detection_precision, 1.)
    self.assertEqual(report.detection_recall, 1.)
    self.assertEqual(report.planted_site_count, 0)

  def test_too_many_planted(self):
    with self.assertRaises(ConfigError):
      frequency_sim.run_planted_anomaly(
          SamplerSpec('log_uniform'), 6, 5, SamplerSpec('uniform'), 3)


if __name__ == '__main__':
  absltest.main()
