"""Exact t-adic patching computations on the projective line over k[[t]]."""

__version__ = "0.1.0"
