"""Cubic lattice of signed sets, its Hilbert-space embedding and derived gates."""
