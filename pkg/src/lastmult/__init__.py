"""Jacobi last multipliers, alternative Lagrangians and competing quantizations of the harmonic oscillator."""

__version__ = "0.1.0"
