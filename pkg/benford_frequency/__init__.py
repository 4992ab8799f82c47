from .errors import BenfordError
from .errors import ConfigError
from .errors import DomainError
from .errors import FrequencyDataError
from .errors import SearchSpaceError

from . import benford_measure
from .benford_measure import ContinuousBenford
from .benford_measure import DiscreteBenford
from . import benford_matrix
from .benford_matrix import FrequencyVector
from . import hypothesis
from . import site_search
from .site_search import ScanConfig

from .sampler_family import SamplerFamily
from . import samplers
from . import frequency_sim
from .frequency_sim import SamplerSpec

from . import ingest
from . import reports
