"""Skew polynomial rings, Ore fraction fields, twisted Laurent series and
inductive towers of skew fraction fields over finite fields."""

__version__ = "0.1.0"
