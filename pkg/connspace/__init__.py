"""
Finite connectivity spaces: structures, generic graphs and constructions.
"""

__version__ = "0.1.0"
