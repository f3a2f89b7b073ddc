"""Causal lifting factorization of two-channel FIR perfect-reconstruction
filter banks: exact polynomial linear algebra, complementation-based and
Euclidean factorization, degree-lifting enumeration, and conditioning
analysis."""

__version__ = "0.1.0"
