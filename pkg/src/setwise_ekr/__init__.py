"""Exact certificates for the setwise intersection density of Sym(n) and Alt(n) on k-subsets."""

__version__ = "0.1.0"
