"""Brute-force reference computations.

Deliberately naive and independent of the main code paths; used by the
verification suites and the tests.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb


def box_partitions_brute(size: int, rows: int, cols: int) -> list[tuple[int, ...]]:
    """Every weakly decreasing row vector in [0, cols]^rows summing to ``size``."""
    out = []
    for padded in itertools.product(range(cols + 1), repeat=rows):
        if sum(padded) == size and all(a >= b for a, b in zip(padded, padded[1:])):
            out.append(tuple(p for p in padded if p))
    return out


def box_count(rows: int, cols: int) -> int:
    return comb(rows + cols, rows)


def monomial_count_brute(k: int, degree: int) -> int:
    """Number of c_1^{e_1} ... c_{k+1}^{e_{k+1}} with sum(i e_i) = degree."""
    ranges = [range(degree // i + 1) for i in range(1, k + 2)]
    return sum(1 for e in itertools.product(*ranges) if sum(i * x for i, x in zip(range(1, k + 2), e)) == degree)


def inverse_series_brute(k: int, order: int):
    """Coefficients of 1/(1 + c_1 t + ... + c_{k+1} t^{k+1}) via the geometric series.

    1/(1+u) = sum_n (-u)^n with u = sum c_i t^i; terms of t-degree > order
    are discarded. Returns a list of dicts exponent-tuple -> Fraction.
    """
    nvars = k + 1
    # u as {(t_power, exps): coeff}
    u = {(i, tuple(int(a == i - 1) for a in range(nvars))): Fraction(1) for i in range(1, nvars + 1) if i <= order}
    total: dict = {(0, (0,) * nvars): Fraction(1)}
    power = {(0, (0,) * nvars): Fraction(1)}
    for n in range(1, order + 1):
        nxt: dict = {}
        for (t1, e1), c1 in power.items():
            for (t2, e2), c2 in u.items():
                t = t1 + t2
                if t > order:
                    continue
                key = (t, tuple(a + b for a, b in zip(e1, e2)))
                nxt[key] = nxt.get(key, Fraction(0)) - c1 * c2
        power = nxt
        for key, c in power.items():
            total[key] = total.get(key, Fraction(0)) + c
    out = [dict() for _ in range(order + 1)]
    for (t, e), c in total.items():
        if c:
            out[t][e] = c
    return out
