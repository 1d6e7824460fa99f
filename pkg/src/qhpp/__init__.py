"""Exact-arithmetic screening of quotient-singularity configurations on
rational homology projective planes of index at most three."""

from . import catalog, configuration, exact, floer, lattice, linking, screening

__all__ = ["catalog", "configuration", "exact", "floer", "lattice", "linking", "screening"]
