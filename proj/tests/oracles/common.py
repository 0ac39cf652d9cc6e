"""Shared helpers for the mpmath oracle scripts.

Each oracle module exposes values() -> list of (name, mpf) pairs. generate.py
collects them into tests/unit/oracle_values.hpp.
"""
from mpmath import mp, mpf, power, log10

mp.dps = 40

# scenario defaults used throughout the tests
R = mpf(100)
R0 = mpf(1)
ALPHA = mpf(3)
D1 = mpf(1)
BANDWIDTH = mpf(10) ** 8
SIGMA2 = power(10, (-174 + 10 * log10(BANDWIDTH) - 30) / 10)
L0 = power(10, mpf(-30) / 10)
R_M = mpf("1.5")


def fmt(x):
    return mp.nstr(x, 20, min_fixed=-4, max_fixed=4)
