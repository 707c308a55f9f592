"""Finite-truncation calculus for shift operators built from Blaschke products.

Core layers: truncated series arithmetic, Blaschke products and model
spaces, block (Wold-type) decompositions with their diagonal norms,
subspace calculus in weighted inner products, dense operator realizations,
and the factorization/representation verifiers on top.  A FastAPI service
exposes every scenario as JSON; the command line is a thin client of it.
"""

__version__ = "0.1.0"
