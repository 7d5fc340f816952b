"""Exact algebra for quantum shuffles, Hall algebras of valued quivers and quantum cluster algebras."""

__version__ = "0.1.0"
