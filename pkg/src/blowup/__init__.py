"""Exact resolution of basic objects (W, (J, b), E) over the rationals.

The package provides a small exact polynomial engine (`polyring`, `ideals`,
`delta`), blow-up bookkeeping in affine charts (`charts`, `transforms`),
the resolution invariants (`invariants`, `monomial`, `contact`), and a
driver (`driver`) that principalizes an ideal or embeddedly desingularizes
a hypersurface, emitting an auditable chart-tree trace.
"""

from .polyring import Context, Polynomial
from .ideals import Ideal, set_gb_budget
from .delta import delta, delta_power, max_order, sing
from .charts import ChartTree
from .errors import (
    BudgetExceeded,
    CenterNotCoordinate,
    DesingNotReached,
    FactorialBlowup,
    InternalCheckFailed,
    NoUnitLinearVariable,
    ResolutionError,
    ZeroCoefficientIdeal,
)
from .driver import Resolver, principalize, embedded_desing

__version__ = "0.1.0"

__all__ = [
    "Context",
    "Polynomial",
    "Ideal",
    "set_gb_budget",
    "delta",
    "delta_power",
    "max_order",
    "sing",
    "ChartTree",
    "Resolver",
    "principalize",
    "embedded_desing",
    "ResolutionError",
    "CenterNotCoordinate",
    "NoUnitLinearVariable",
    "ZeroCoefficientIdeal",
    "FactorialBlowup",
    "BudgetExceeded",
    "InternalCheckFailed",
    "DesingNotReached",
    "__version__",
]
