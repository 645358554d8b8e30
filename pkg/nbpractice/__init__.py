"""
nbpractice - notebook best-practice auditor
Static checks and corpus statistics for computational notebooks
"""

__version__ = "0.1.0"
__author__ = "nbpractice maintainers"
