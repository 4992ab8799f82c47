"""### Loading visit counts

CSV: optional `site,count` header, one `site,count` record per line, UTF-8.
JSON: an array of {"site": string, "count": number} objects.

Problems are reported against the 1-based file line (CSV) or record (JSON).
"""

import json
import os

import numpy as np
import pandas as pd

from .benford_matrix import FrequencyVector
from .errors import ConfigError
from .errors import FrequencyDataError

FORMATS = ('csv', 'json')


def infer_format(path):
  return 'json' if os.path.splitext(path)[1].lower() == '.json' else 'csv'


def _first_problem(records, unit):
  """Raise for the lowest-numbered invalid record in records, if any.

  records: a DataFrame with columns site (str), count (float) and line (int).
  """
  problems = []
  bad_site = records['site'].eq('')
  bad_count = ~(np.isfinite(records['count']) & (records['count'] > 0))
  duplicate = records['site'].duplicated() & ~bad_site
  for line in records.loc[bad_site, 'line']:
    problems.append((line, 'empty site id'))
  for line, raw in records.loc[bad_count, ['line', 'raw_count']].itertuples(
      index=False):
    problems.append(
        (line, 'count must be a finite positive number, got {!r}'.format(raw)))
  for line, site in records.loc[duplicate, ['line', 'site']].itertuples(
      index=False):
    problems.append((line, 'duplicate site id {!r}'.format(site)))
  if problems:
    line, message = min(problems)
    raise FrequencyDataError(message, line=int(line), unit=unit)


def _to_frequency_vector(records, unit):
  _first_problem(records, unit)
  if len(records) < 2:
    raise FrequencyDataError('need at least 2 sites, got {}'.format(
        len(records)))
  return FrequencyVector(records['site'].tolist(), records['count'].tolist())


def read_csv(path):
  try:
    frame = pd.read_csv(
        path,
        header=None,
        dtype=str,
        keep_default_na=False,
        skip_blank_lines=False,
        encoding='utf-8')
  except pd.errors.EmptyDataError:
    raise FrequencyDataError('no records in {}'.format(path))
  except pd.errors.ParserError as e:
    raise FrequencyDataError(str(e))
  except UnicodeDecodeError as e:
    raise FrequencyDataError('not UTF-8: {}'.format(e))

  frame = frame.fillna('')
  if frame.shape[1] > 2:
    extra = frame.iloc[:, 2:].apply(lambda col: col.str.strip() != '')
    extra = extra.any(axis=1)
    if extra.any():
      raise FrequencyDataError(
          'expected 2 fields: site,count',
          line=int(np.flatnonzero(extra.to_numpy())[0]) + 1)
  frame = frame.reindex(columns=[0, 1], fill_value='')
  frame.columns = ['site', 'raw_count']
  frame['line'] = np.arange(1, len(frame) + 1)
  frame['site'] = frame['site'].str.strip()
  frame['raw_count'] = frame['raw_count'].str.strip()
  frame = frame[(frame['site'] != '') | (frame['raw_count'] != '')]
  if len(frame) and (frame['site'].iloc[0].lower() == 'site' and
                     frame['raw_count'].iloc[0].lower() == 'count'):
    frame = frame.iloc[1:]
  frame = frame.assign(
      count=pd.to_numeric(frame['raw_count'], errors='coerce').astype(float))
  return _to_frequency_vector(frame, 'line')


def read_json(path):
  try:
    with open(path, encoding='utf-8') as fh:
      data = json.load(fh)
  except (ValueError, UnicodeDecodeError) as e:
    raise FrequencyDataError('malformed JSON: {}'.format(e))
  if not isinstance(data, list):
    raise FrequencyDataError('expected a JSON array of site records')
  rows = []
  for record_number, record in enumerate(data, start=1):
    if not isinstance(record, dict) or set(record) != {'site', 'count'}:
      raise FrequencyDataError(
          'expected an object with keys "site" and "count"',
          line=record_number,
          unit='record')
    site, raw_count = record['site'], record['count']
    if not isinstance(site, str):
      raise FrequencyDataError(
          'site must be a string, got {!r}'.format(site),
          line=record_number,
          unit='record')
    # bool is an int subclass; a true/false count is malformed.
    if (isinstance(raw_count, bool) or
        not isinstance(raw_count, (int, float, str))):
      raw_count = None
    rows.append((site.strip(), raw_count, record_number))
  frame = pd.DataFrame(rows, columns=['site', 'raw_count', 'line'])
  frame['count'] = pd.to_numeric(
      frame['raw_count'], errors='coerce').astype(float)
  return _to_frequency_vector(frame, 'record')


def load_frequencies(path, input_format=None):
  """A FrequencyVector from a CSV or JSON file.

  Args:
    path: file path.
    input_format: 'csv', 'json' or None to infer from the extension.
  """
  input_format = input_format or infer_format(path)
  if input_format not in FORMATS:
    raise ConfigError('input format must be one of {}, got {!r}'.format(
        FORMATS, input_format))
  if not os.path.isfile(path):
    raise ConfigError('cannot read input file {!r}'.format(path))
  if input_format == 'json':
    return read_json(path)
  return read_csv(path)
