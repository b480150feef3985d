"""Generalized Bernoulli and Euler polynomials: exact values and large-degree asymptotics."""

__version__ = "0.1.0"
