"""Exact Lie superalgebra representations over the rationals.

Modules:

* ``superlinalg`` / ``grassmann``: supermatrices, Grassmann algebras, vector fields, forms
* ``algebras``: gl, sl, osp, pe, spe, vect, svect, h, sh with verification
* ``repcore``: representations, sums, tensors, duals, induced modules, extensions
* ``decomp``: intertwiners, endomorphism algebras, Krull-Schmidt decomposition
* ``sl11cat``: indecomposable sl(1|1)-modules and their labels
* ``cohom``: Chevalley-Eilenberg cohomology (degrees 0..2) and Ext^1
* ``formscx``: differential and integral forms over vect(0|2)
"""

from superdecomp.linalg import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
