"""Definition-literal reference computations for cross-checking the fast paths.

Nothing here calls the transforms in :mod:`bfa.boolfun` or :mod:`bfa.vbf`;
each quantity is computed straight from its definition. They are slow on
purpose and refuse inputs beyond n = 10.
"""

from functools import lru_cache

import numpy as np

from .boolfun import LinearSpace, WalshSpectrum
from .errors import OracleScaleError

MAX_ORACLE_N = 10


def _guard(n):
    if n > MAX_ORACLE_N:
        raise OracleScaleError(f"oracles are limited to n <= {MAX_ORACLE_N}, got {n}")


@lru_cache(maxsize=None)
def _dot_signs(n):
    """(-1)^{a.x} for all a (rows) and x (columns)."""
    idx = np.arange(1 << n)
    dots = np.zeros((1 << n, 1 << n), dtype=np.int64)
    for i in range(n):
        dots ^= ((idx[:, None] >> i) & 1) & ((idx[None, :] >> i) & 1)
    return 1 - 2 * dots


def weight_by_evaluation(f):
    return sum(int(bit) for bit in f.table)


def walsh_naive(f):
    """W_f(a) = sum_x (-1)^{f(x) + a.x}, one full sum per a."""
    _guard(f.n)
    sign_f = np.where(f.table == 1, -1, 1).astype(np.int64)
    return WalshSpectrum(f.n, _dot_signs(f.n) @ sign_f)


def derivative_naive(f, a):
    return [int(f.table[x ^ a]) ^ int(f.table[x]) for x in range(1 << f.n)]


def linear_space_naive(f):
    """Every a with D_a f constant, found by evaluating D_a f everywhere."""
    _guard(f.n)
    idx = np.arange(1 << f.n)
    consts = {}
    for a in range(1 << f.n):
        d = f.table[idx ^ a] ^ f.table
        if (d == d[0]).all():
            consts[a] = int(d[0])
    return LinearSpace.from_constants(f.n, consts)


def bent_by_derivatives(f):
    """Every nonzero derivative balanced."""
    _guard(f.n)
    idx = np.arange(1 << f.n)
    half = 1 << (f.n - 1) if f.n else 0
    return f.n > 0 and all(int((f.table[idx ^ a] ^ f.table).sum()) == half
                           for a in range(1, 1 << f.n))


def ddt_naive(F):
    """delta_F(a, b): tally of D_a F(x) over every x, one row per a."""
    _guard(F.n)
    size = 1 << F.n
    idx = np.arange(size)
    table = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        d = F.outputs[idx ^ a] ^ F.outputs
        table[a] = np.bincount(d, minlength=size)
    return table


def apn_by_definition(F):
    """No equation F(x + a) + F(x) = b with a != 0 has more than two solutions."""
    _guard(F.n)
    size = 1 << F.n
    idx = np.arange(size)
    for a in range(1, size):
        _, counts = np.unique(F.outputs[idx ^ a] ^ F.outputs, return_counts=True)
        if counts.max() > 2:
            return False
    return True


def component_naive(F, lam):
    return [bin(lam & int(y)).count("1") & 1 for y in F.outputs]


def poly_eval_naive(spec, poly, x):
    """Evaluate sum c x^e at one point by repeated multiplication."""
    total = 0
    for c, e in poly.terms:
        p = 1
        for _ in range(e):
            p = spec.mul(p, x)
        total ^= spec.mul(c, p)
    return total
