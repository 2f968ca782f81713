"""Spin-model optimization toolkit.

Ising/QUBO/XY models, a penalty reduction for linear integer programs,
annealing and oscillator-network engines, and exhaustive oracles.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
