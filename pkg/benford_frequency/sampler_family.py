"""
### SamplerFamily, an abstraction to enable work across count generators.
"""
import collections


class SamplerFamily(
    collections.namedtuple('SamplerFamily', [
        'name', 'kind', 'draw', 'validate', 'params0', 'param_names'
    ])):
  """A named generator of strictly positive visit counts.

  name: human readable name
  kind: the SamplerSpec kind this family serves
  draw: draw(rng, size, params) -> np.array of shape (size,), all > 0
  validate: validate(params) raising ConfigError on bad parameters
  params0: dict of default parameters
  param_names: the parameter keys draw reads
  """
