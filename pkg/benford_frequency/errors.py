"""### Exceptions raised by benford_frequency."""


class BenfordError(Exception):
  pass


class DomainError(BenfordError, ValueError):
  """A math argument fell outside the support of the function."""


class FrequencyDataError(BenfordError, ValueError):
  """Invalid frequency data.

  line is the 1-based line (or JSON record, per unit) the problem was found on.
  """

  def __init__(self, message, line=None, unit='line'):
    if line is not None:
      message = '{unit} {line}: {message}'.format(
          unit=unit, line=line, message=message)
    super().__init__(message)
    self.line = line


class ConfigError(BenfordError, ValueError):
  pass


class SearchSpaceError(ConfigError):
  """The requested search would enumerate too many orderings."""
