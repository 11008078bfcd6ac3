"""latkit: exact lattice, order, Clifford and torsion-module computations."""

__version__ = "0.1.0"

from .lattices import Lattice, Sublattice  # noqa: E402
from .fp_algebra import FpAlgebra  # noqa: E402
from .orders import Order  # noqa: E402

__all__ = ["Lattice", "Sublattice", "FpAlgebra", "Order", "__version__"]
