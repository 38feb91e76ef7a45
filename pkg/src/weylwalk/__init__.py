"""weylwalk: a Weyl lattice walk, its nonlinear Lorentz symmetry, and the
exact truncated Hopf-algebra engine behind its deformed phase space."""

from . import hopf, lorentz, stateio, walk
from .walk import Chirality

__version__ = "0.1.0"

__all__ = ["walk", "lorentz", "hopf", "stateio", "Chirality", "__version__"]
