"""Incremental parity-encoding toolkit for linear-optics computing.

The C++ core provides random-walk analytics, encoded-gate success and
resource formulas, seeded Monte Carlo simulation of the gate algorithms,
a sparse Fock-state engine for building the teleporter entanglement, and
qubit-level parity-code procedures. This package re-exports the bound
operations.
"""

from loqc._core import *  # noqa: F401,F403
from loqc._core import __version__  # noqa: F401
