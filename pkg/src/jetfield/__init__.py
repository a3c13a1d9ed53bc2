"""Yang-Mills field equations on a periodic lattice, checked against their
multisymplectic, gauge and triad reformulations."""

from .algebra import LieAlgebraData, build_algebra
from .lattice import Grid, LatticeField

__version__ = "0.1.0"
