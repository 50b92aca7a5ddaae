"""Exact symbolic toolkit for oscillation indices of finite-range
Baire-1 functions on compact countable ordinal intervals, with
certificate-producing classification into the chain
C <= DBSC <= B_{1/4} <= B_{1/2} <= B_1."""

__version__ = "0.1.0"
