"""
Inertial forward-backward splitting for l1-regularized problems.
"""

__version__ = "0.1.0"
