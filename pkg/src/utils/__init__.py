"""
Utility modules for GaloisCensus.

This package contains utility modules shared by the verification sweep.
"""
