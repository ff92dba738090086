"""Curvatures of linear q-difference systems at cyclotomic places."""

__version__ = "0.1.0"
