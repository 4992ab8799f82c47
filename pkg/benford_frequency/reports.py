"""### Report rendering

Every report is first built as a plain dict. JSON output dumps the dict at full
double precision as strict JSON, spelling non-finite floats as strings; text
output renders the same dict with 7 significant digits.
"""

import json
import math

import pandas as pd

from . import benford_measure

TEXT_FORMAT = '{:.7g}'

# Report keys holding floats (or lists of floats) that may be non-finite.
FLOAT_FIELDS = frozenset([
    'log_abs_det', 'lambda', 't_statistic', 'p_value', 'alpha',
    'baseline_lambda', 'delta_lambda', 'lambda_samples', 'rejection_rate',
    'mean_abs_lambda', 'detection_precision', 'detection_recall', 'value',
    'rounded', 'sqrt_rounded_variance'
])


def _float(x):
  return float(x)


def analysis_report(analysis, test):
  return {
      'analysis': {
          'n': int(analysis.n),
          'log_abs_det': _float(analysis.log_abs_det),
          'lambda': _float(analysis.lambda_),
          'degenerate': bool(analysis.degenerate),
          'order_mode': analysis.order_mode,
          'ordering': list(analysis.ordering),
      },
      'hypothesis': {
          't_statistic': _float(test.t_statistic),
          'df': int(test.degrees_of_freedom),
          'p_value': _float(test.p_value),
          'alpha': _float(test.alpha),
          'reject_h0': bool(test.reject_null),
      },
  }


def _per_site_rows(result):
  return [{
      'rank': int(s.rank),
      'site': s.site_id,
      'delta_lambda': _float(s.delta_lambda),
      'degenerate': bool(s.degenerate),
  } for s in result.per_site_scores]


def scan_report(result):
  best = result.max_lambda_subset
  return {
      'baseline_lambda': _float(result.baseline_lambda),
      'baseline_degenerate': bool(result.baseline_degenerate),
      'ordering_mode': result.ordering_mode,
      'computations_performed': int(result.computations_performed),
      'max_lambda_subset': {
          'removed': list(best.removed),
          'ordering': list(best.ordering),
          'lambda': _float(best.lambda_),
          'degenerate': bool(best.degenerate),
      },
      'per_site_scores': _per_site_rows(result),
  }


def simulation_report(report):
  d = report._asdict()
  d['lambda_samples'] = [_float(l) for l in report.lambda_samples]
  for key in ('rejection_rate', 'mean_abs_lambda', 'detection_precision',
              'detection_recall', 'alpha'):
    d[key] = _float(d[key])
  return d


def moments_report():
  exact = benford_measure.moments()
  rounded = benford_measure.ROUNDED_MOMENTS
  sqrt_rounded_variance = math.sqrt(rounded.variance)
  return {
      'moments': {
          name: {
              'value': _float(getattr(exact, name)),
              'rounded': _float(getattr(rounded, name)),
          } for name in exact._fields
      },
      'sqrt_rounded_variance': sqrt_rounded_variance,
      'rounded_std_dev_consistent':
          abs(rounded.std_dev - sqrt_rounded_variance) < 5e-5,
      'note': ('the rounded std_dev {} is not sqrt({}) = {}; the value column '
               'uses the closed form').format(
                   rounded.std_dev, rounded.variance,
                   TEXT_FORMAT.format(sqrt_rounded_variance)),
  }


def _encode_non_finite(value):
  if isinstance(value, dict):
    return {k: _encode_non_finite(v) for k, v in value.items()}
  if isinstance(value, list):
    return [_encode_non_finite(v) for v in value]
  if isinstance(value, float) and not math.isfinite(value):
    if math.isnan(value):
      return 'NaN'
    return 'Infinity' if value > 0 else '-Infinity'
  return value


def _decode_non_finite(pairs):
  decoded = {}
  for key, value in pairs:
    if key in FLOAT_FIELDS:
      if isinstance(value, str):
        value = float(value)
      elif isinstance(value, list):
        value = [float(v) if isinstance(v, str) else v for v in value]
    decoded[key] = value
  return decoded


def to_json(report):
  """Strict JSON; non-finite floats become "Infinity", "-Infinity", "NaN"."""
  return json.dumps(_encode_non_finite(report), indent=2, allow_nan=False)


def from_json(text):
  """Inverse of to_json."""
  return json.loads(text, object_pairs_hook=_decode_non_finite)


def _format_scalar(value):
  if isinstance(value, bool):
    return str(value).lower()
  if isinstance(value, float):
    return TEXT_FORMAT.format(value)
  if value is None:
    return '-'
  return str(value)


def _emit(report, indent, lines):
  for key, value in report.items():
    if isinstance(value, dict):
      lines.append('{}{}:'.format(indent, key))
      _emit(value, indent + '  ', lines)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
      lines.append('{}{}:'.format(indent, key))
      table = pd.DataFrame(value).to_string(
          index=False, float_format=TEXT_FORMAT.format)
      lines.extend(indent + '  ' + row for row in table.splitlines())
    elif isinstance(value, list):
      lines.append('{}{}: [{}]'.format(
          indent, key, ', '.join(_format_scalar(v) for v in value)))
    else:
      lines.append('{}{}: {}'.format(indent, key, _format_scalar(value)))


def to_text(report, title=None):
  lines = [title] if title else []
  _emit(report, '  ' if title else '', lines)
  return '\n'.join(lines)
