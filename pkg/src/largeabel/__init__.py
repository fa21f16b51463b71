"""Classification of compact Riemann surfaces with a large abelian automorphism group."""

__version__ = "0.1.0"
