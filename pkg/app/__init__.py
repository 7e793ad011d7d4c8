"""
Infinitesimal Torelli engine for elliptic surfaces over hyperelliptic curves
"""
__version__ = "1.0.0"
