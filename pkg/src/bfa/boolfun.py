"""Single Boolean functions f: F_2^n -> F_2 and their exact invariants.

Index convention: the input (x1, ..., xn) is the integer sum(x_i * 2**(i-1)),
so x1 is the least significant bit. Every table in the package uses it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, ParseError, ShapeError

MAX_N = 16

__all__ = [
    "MAX_N", "BoolFunc", "Anf", "WalshSpectrum", "LinearSpace", "SpectralClass",
    "fwht", "mobius", "popcount", "parity",
    "from_truth_table", "from_hex", "to_hex", "from_anf", "parse_anf", "from_function",
    "variable", "constant", "random_function",
    "weight", "is_balanced", "anf", "truth_table", "degree",
    "walsh", "nonlinearity", "derivative", "autocorrelation", "linear_space",
    "gamma_set", "classify", "is_bent", "quad_equiv", "sigma_one", "rref", "span",
]


# ---------------------------------------------------------------- transforms

def fwht(values):
    """In-place Walsh-Hadamard butterfly along the last axis; returns ``values``.

    Works on any integer array whose last axis has length 2**n, so a stack of
    truth tables is transformed in one call.
    """
    size = values.shape[-1]
    lead = values.shape[:-1]
    h = 1
    while h < size:
        v = values.reshape(lead + (size // (2 * h), 2, h))
        lo = v[..., 0, :].copy()
        v[..., 0, :] += v[..., 1, :]
        v[..., 1, :] = lo - v[..., 1, :]
        h *= 2
    return values


def mobius(bits):
    """In-place binary Moebius (Reed-Muller) transform along the last axis.

    The transform is an involution: applied to a truth table it yields ANF
    coefficients indexed by monomial mask, and vice versa.
    """
    size = bits.shape[-1]
    lead = bits.shape[:-1]
    h = 1
    while h < size:
        v = bits.reshape(lead + (size // (2 * h), 2, h))
        v[..., 1, :] ^= v[..., 0, :]
        h *= 2
    return bits


_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


def popcount(x):
    """Popcount of non-negative integers below 2**32 (scalar or array)."""
    x = np.asarray(x, dtype=np.int64)
    return (_POP16[x & 0xFFFF] + _POP16[(x >> 16) & 0xFFFF]).astype(np.int64)


def parity(x):
    return popcount(x) & 1


# ---------------------------------------------------------------- types

@dataclass(frozen=True, eq=False)
class BoolFunc:
    """Truth table of f on n variables; ``table[idx(x)] = f(x)`` as 0/1 uint8."""

    n: int
    table: np.ndarray

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise ShapeError(f"variable count must be in [0, {MAX_N}], got {self.n}")
        t = np.asarray(self.table)
        if t.shape != (1 << self.n,):
            raise ShapeError(f"truth table on {self.n} variables needs {1 << self.n} entries, got {t.size}")
        t = (t & 1).astype(np.uint8) if t.dtype != np.uint8 or t.max(initial=0) > 1 else t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __eq__(self, other):
        if not isinstance(other, BoolFunc):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __add__(self, other):
        if isinstance(other, BoolFunc):
            if other.n != self.n:
                raise ShapeError(f"cannot add functions on {self.n} and {other.n} variables")
            return BoolFunc(self.n, self.table ^ other.table)
        if other in (0, 1):
            return BoolFunc(self.n, self.table ^ np.uint8(other))
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, BoolFunc):
            if other.n != self.n:
                raise ShapeError(f"cannot multiply functions on {self.n} and {other.n} variables")
            return BoolFunc(self.n, self.table & other.table)
        if other in (0, 1):
            return BoolFunc(self.n, self.table & np.uint8(other))
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x):
        return int(self.table[x])

    def __repr__(self):
        return f"BoolFunc(n={self.n}, tt=0x{to_hex(self)})"

    @property
    def size(self):
        return 1 << self.n

    def signs(self):
        """The +-1 table (-1)**f(x) as int64."""
        return 1 - 2 * self.table.astype(np.int64)


@dataclass(frozen=True)
class Anf:
    """Algebraic normal form: the set of monomial masks with coefficient 1."""

    n: int
    monomials: frozenset

    @property
    def degree(self):
        return max((bin(m).count("1") for m in self.monomials), default=0)

    def __str__(self):
        if not self.monomials:
            return "0"
        def key(m):
            vs = [i + 1 for i in range(self.n) if m >> i & 1]
            return (m == 0, -len(vs), vs)
        terms = []
        for m in sorted(self.monomials, key=key):
            if m == 0:
                terms.append("1")
            else:
                terms.append("*".join(f"x{i + 1}" for i in range(self.n) if m >> i & 1))
        return " + ".join(terms)


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    def __getitem__(self, a):
        return int(self.values[a])

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def max_abs(self):
        return int(np.abs(self.values).max())

    def distinct(self):
        return sorted(int(v) for v in np.unique(self.values))


@dataclass(frozen=True)
class LinearSpace:
    """V(f) together with the constant value of D_a f on each member."""

    n: int
    basis: tuple
    constants: Mapping

    @classmethod
    def from_constants(cls, n, constants):
        return cls(n, rref(constants), MappingProxyType(dict(sorted(constants.items()))))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def elements(self):
        return tuple(self.constants)

    def __contains__(self, a):
        return a in self.constants

    def __len__(self):
        return len(self.constants)

    def __eq__(self, other):
        if not isinstance(other, LinearSpace):
            return NotImplemented
        return (self.n, self.basis, dict(self.constants)) == (other.n, other.basis, dict(other.constants))


@dataclass(frozen=True)
class SpectralClass:
    kind: str  # "bent" | "semi-bent" | "plateaued" | "other"
    amplitude: int | None = None

    def __str__(self):
        if self.kind == "plateaued":
            return f"plateaued({self.amplitude})"
        return self.kind


# ---------------------------------------------------------------- construction

def from_truth_table(n, bits):
    """Wrap 2**n bits (sequence, array, or a '0'/'1' string listing idx 0 first)."""
    if isinstance(bits, str):
        s = bits.replace(" ", "").replace("_", "")
        if set(s) - {"0", "1"}:
            raise ShapeError("bit string may only contain 0 and 1")
        bits = [int(c) for c in s]
    arr = np.asarray(bits)
    if arr.ndim != 1 or arr.size != (1 << n):
        raise ShapeError(f"expected {1 << n} bits for n={n}, got {arr.size}")
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ShapeError("truth table entries must be 0 or 1")
    return BoolFunc(n, arr.astype(np.uint8))


def from_hex(text, n=None):
    """Parse the lowercase-hex serialization (MSB = highest index).

    ``n`` defaults to the value implied by the digit count.
    """
    raw = text.strip()
    body = raw[2:] if raw[:2].lower() == "0x" else raw
    offset = len(raw) - len(body)
    for i, ch in enumerate(body):
        if ch not in "0123456789abcdefABCDEF":
            raise ParseError(f"invalid hex digit {ch!r}", raw, offset + i)
    if not body:
        raise ParseError("empty truth table", raw, offset)
    if n is None:
        bits = 4 * len(body)
        n = bits.bit_length() - 1
        if bits != 1 << n:
            raise ShapeError(f"{len(body)} hex digits is not a truth table length; pass n explicitly")
    value = int(body, 16)
    size = 1 << n
    if value >> size:
        raise ShapeError(f"hex value has more than {size} bits")
    table = np.array([(value >> i) & 1 for i in range(size)], dtype=np.uint8)
    return BoolFunc(n, table)


def to_hex(f):
    value = int.from_bytes(np.packbits(f.table, bitorder="little").tobytes(), "little")
    return format(value, f"0{max(1, f.size // 4)}x")


_TOKEN = re.compile(r"x(\d+)|[01]|[+*]|\s+|.")


def _tokens(text):
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not tok.isspace():
            yield tok, m.start()


def _is_var(tok):
    return len(tok) > 1 and tok[0] == "x"


def parse_anf(text, n=None):
    """Parse "x1*x2 + x3 + 1" into an :class:`Anf`.

    Variables are 1-based; '*' between variables may be omitted. Repeated
    monomials cancel, as addition is over F_2.
    """
    toks = list(_tokens(text))
    toks.append(("", len(text)))
    monos = set()
    max_var = 0
    i = 0
    while True:
        tok, pos = toks[i]
        if tok in ("0", "1"):
            mask = None if tok == "0" else 0
            i += 1
        elif _is_var(tok):
            mask = 0
            while _is_var(toks[i][0]):
                tok, pos = toks[i]
                v = int(tok[1:])
                if v < 1 or (n is not None and v > n):
                    raise ParseError(f"variable {tok} out of range", text, pos)
                max_var = max(max_var, v)
                mask |= 1 << (v - 1)
                i += 1
                if toks[i][0] == "*":
                    nxt, npos = toks[i + 1]
                    if not _is_var(nxt):
                        what = repr(nxt) if nxt else "end of input"
                        raise ParseError(f"expected a variable after '*', found {what}", text, npos)
                    i += 1
        else:
            what = repr(tok) if tok else "end of input"
            raise ParseError(f"expected a term, found {what}", text, pos)
        if mask is not None:
            monos ^= {mask}
        tok, pos = toks[i]
        if tok == "":
            break
        if tok != "+":
            raise ParseError(f"expected '+', found {tok!r}", text, pos)
        i += 1
    if n is None:
        n = max(max_var, 1)
    return Anf(n, frozenset(monos))


def from_anf(text, n=None):
    return truth_table(parse_anf(text, n))


def from_function(n, fn):
    """Tabulate ``fn(x)`` where x is the tuple (x1, ..., xn) of 0/1 ints."""
    table = [fn(tuple((idx >> i) & 1 for i in range(n))) & 1 for idx in range(1 << n)]
    return BoolFunc(n, np.array(table, dtype=np.uint8))


def variable(n, i):
    """The coordinate function x_i (1-based) on n variables."""
    if not 1 <= i <= n:
        raise DomainError(f"variable x{i} does not exist on {n} variables")
    return BoolFunc(n, ((np.arange(1 << n) >> (i - 1)) & 1).astype(np.uint8))


def constant(n, c):
    return BoolFunc(n, np.full(1 << n, c & 1, dtype=np.uint8))


def random_function(n, rng):
    return BoolFunc(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))


# ---------------------------------------------------------------- analysis

def weight(f):
    return int(f.table.sum(dtype=np.int64))


def is_balanced(f):
    return 2 * weight(f) == f.size


def anf(f):
    coeffs = mobius(f.table.copy())
    return Anf(f.n, frozenset(int(m) for m in np.flatnonzero(coeffs)))


def truth_table(a):
    coeffs = np.zeros(1 << a.n, dtype=np.uint8)
    for m in a.monomials:
        if m >> a.n:
            raise ShapeError(f"monomial mask {m:#x} uses more than {a.n} variables")
        coeffs[m] = 1
    return BoolFunc(a.n, mobius(coeffs))


def degree(f):
    coeffs = mobius(f.table.copy())
    masks = np.flatnonzero(coeffs)
    return int(popcount(masks).max()) if masks.size else 0


def walsh(f):
    return WalshSpectrum(f.n, fwht(f.signs()))


def nonlinearity(f):
    return (f.size - walsh(f).max_abs()) // 2


def derivative(f, a):
    if not 0 <= a < f.size:
        raise DomainError(f"direction {a} is not an {f.n}-bit vector")
    idx = np.arange(f.size)
    return BoolFunc(f.n, f.table[idx ^ a] ^ f.table)


def autocorrelation(f):
    """r(a) = sum_x (-1)^{D_a f(x)} for every a, from the squared spectrum."""
    w = walsh(f).values
    return fwht(w * w) >> f.n


def linear_space(f):
    """V(f) from an exact scan of all 2**n shifts.

    D_a f is constant exactly when |r(a)| = 2**n; the sign gives the constant.
    """
    r = autocorrelation(f)
    members = np.flatnonzero(np.abs(r) == f.size)
    return LinearSpace.from_constants(f.n, {int(a): int(r[a] < 0) for a in members})


def gamma_set(f):
    """Directions a whose derivative D_a f is balanced."""
    return frozenset(int(a) for a in np.flatnonzero(autocorrelation(f) == 0))


def classify(f):
    """Spectral class. Bent is only ever reported for even n."""
    absvals = set(int(v) for v in np.unique(np.abs(walsh(f).values)))
    if f.n % 2 == 0 and absvals == {1 << (f.n // 2)}:
        return SpectralClass("bent", 1 << (f.n // 2))
    nonzero = absvals - {0}
    if len(nonzero) == 1:
        mu = nonzero.pop()
        semi = 1 << ((f.n + 1) // 2 if f.n % 2 else (f.n + 2) // 2)
        return SpectralClass("semi-bent" if mu == semi else "plateaued", mu)
    return SpectralClass("other")


def is_bent(f):
    return classify(f).kind == "bent"


def quad_equiv(g, h):
    """Affine equivalence of two unbalanced quadratics via (weight, nonlinearity)."""
    if g.n != h.n:
        raise ShapeError(f"functions on {g.n} and {h.n} variables")
    for name, f in (("g", g), ("h", h)):
        if degree(f) != 2:
            raise DomainError(f"{name} is not quadratic (degree {degree(f)})")
        if is_balanced(f):
            raise DomainError(f"{name} is balanced; the invariant test covers unbalanced quadratics only")
    return weight(g) == weight(h) and nonlinearity(g) == nonlinearity(h)


def sigma_one(f):
    """True when f splits off a single variable up to affine equivalence."""
    return linear_space(f).dim >= 1


# ---------------------------------------------------------------- F_2 linear algebra

def rref(vectors: Iterable[int]):
    """Reduced row echelon basis of the span of integer bit vectors.

    Each basis vector owns a distinct leading bit that no other basis vector
    has set; the tuple is sorted by decreasing leading bit.
    """
    pivots = {}
    for v in vectors:
        v = int(v)
        for lead in sorted(pivots, reverse=True):
            if v >> lead & 1:
                v ^= pivots[lead]
        if v:
            lead = v.bit_length() - 1
            for k in pivots:
                if pivots[k] >> lead & 1:
                    pivots[k] ^= v
            pivots[lead] = v
    return tuple(pivots[k] for k in sorted(pivots, reverse=True))


def span(basis):
    out = [0]
    for b in basis:
        out += [v ^ b for v in out]
    return sorted(out)
