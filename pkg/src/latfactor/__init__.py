"""Lattice-refinement factoring toolkit.

Classical pipeline for smooth-relation factoring via lattice CVP (LLL plus
Babai rounding), an exact QAOA statevector refinement layer, GF(2)
post-processing to a congruence of squares, and swap-network resource
estimates for the quantum layer.
"""

__version__ = "0.1.0"
