"""Extended power distributions on (0, 1].

Submodules:

- ``specfun``      erfc / erfcx
- ``epd2``         two-parameter extended power distribution
- ``gepd``         r-parameter generalisation
- ``cepd``         complementary distribution
- ``kumaraswamy``  baseline comparator
- ``orderstats``   sample minimum / maximum densities
- ``estimate``     maximum likelihood, information criteria, comparisons
- ``dataio``       datasets, CSV I/O, simulation
"""

from . import cepd, dataio, epd2, estimate, gepd, kumaraswamy, orderstats, specfun
from .cepd import CepdParams
from .dataio import Dataset, load_csv, simulate_dataset, summarize
from .epd2 import EpdParams
from .estimate import compare_models, fit_mle, information_criteria
from .exceptions import (
    ConvergenceError,
    DegenerateDataError,
    DomainError,
    EpdError,
    InapplicableModelError,
    NumericalError,
)
from .gepd import GepdParams
from .kumaraswamy import KumaraswamyParams

__version__ = "0.1.0"
