"""Invariants of one vector and one covector for the finite orthogonal groups
O2+(F_p) and O2-(F_p): exact polynomial arithmetic, group enumeration, graded
fixed spaces and verification suites."""

__version__ = "0.1.0"
