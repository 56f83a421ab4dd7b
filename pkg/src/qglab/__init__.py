"""Exact and numerical laboratory for Pol(SU_q(2)), its crossed product and the noncommutative torus."""
__version__ = "0.1.0"
