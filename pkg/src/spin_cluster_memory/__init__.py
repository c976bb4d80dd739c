"""
Simulated storage of bit arrays in the coherent response of a cluster of
dipolar-coupled spins-1/2.
"""

__version__ = "0.1.0"
