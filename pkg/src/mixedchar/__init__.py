"""Exact-arithmetic workbench: divided-power differential operators,
graded Ext of monomial quotients, and local cohomology annihilators
over the integers localized at a prime.
"""

__version__ = "0.1.0"
