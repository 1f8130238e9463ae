"""Exact computational model of the standard complicial structure on bounded chain complexes."""
from .exactlin import QQ, GF, Field, Matrix
from .chaincore import ChainMap, Complex, Report

__all__ = ["QQ", "GF", "Field", "Matrix", "ChainMap", "Complex", "Report"]
