"""Matrix-valued little q-Jacobi polynomials in exact arithmetic."""
from .exact import GaussRat, Mat, gr
from .polymat import LaurentMatPoly, MatPoly

__all__ = ["GaussRat", "Mat", "gr", "MatPoly", "LaurentMatPoly"]
__version__ = "0.1.0"
