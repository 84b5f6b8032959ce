"""Arithmetic in GF(2^n), n <= 16, and compilation of univariate polynomials.

Elements are integers holding the coefficient vector in the polynomial basis
{1, x, ..., x^(n-1)} of the modulus root: bit i is the coefficient of x^i.
The letter ``z`` in polynomial strings always means the field generator.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import DomainError, FieldError, ParseError

# Conway polynomials over F_2, bit i = coefficient of x^i.
CONWAY = {
    2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x5B, 7: 0x83, 8: 0x11D, 9: 0x211,
    10: 0x46F, 11: 0x805, 12: 0x10EB, 13: 0x201B, 14: 0x40A9, 15: 0x8035, 16: 0x1002D,
}


# ---------------------------------------------------------------- F_2[x] helpers

def poly_mod(a, m):
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_str(p):
    terms = []
    for i in range(p.bit_length() - 1, -1, -1):
        if p >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms) or "0"


def find_factor(m):
    """Smallest-valued nontrivial factor of the F_2 polynomial m, or None."""
    deg = m.bit_length() - 1
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(m, d) == 0:
            return d
    return None


def _prime_factors(x):
    out, p = [], 2
    while p * p <= x:
        if x % p == 0:
            out.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        out.append(x)
    return out


# ---------------------------------------------------------------- field

@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) given by an irreducible modulus and a verified primitive element."""

    n: int
    modulus: int
    generator: int

    @property
    def order(self):
        return 1 << self.n

    @property
    def conway(self):
        return CONWAY.get(self.n) == self.modulus

    def __str__(self):
        return f"n={self.n},mod={bin(self.modulus)}"

    # scalar arithmetic on int encodings
    def check(self, a):
        if not 0 <= a < self.order:
            raise DomainError(f"{a} is not an element of GF(2^{self.n})")
        return a

    def mul(self, a, b):
        n, mod = self.n, self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> n:
                a ^= mod
        return r

    def pow(self, a, e):
        """a**e; for a != 0 the exponent is taken mod 2^n - 1, and 0**0 = 1."""
        if a == 0:
            if e < 0:
                raise DomainError("zero has no inverse")
            return 1 if e == 0 else 0
        e %= self.order - 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        return self.pow(a, -1)

    def trace(self, a):
        """Absolute trace a + a^2 + ... + a^(2^(n-1)), returned as 0 or 1."""
        t, y = 0, a
        for _ in range(self.n):
            t ^= y
            y = self.mul(y, y)
        if t not in (0, 1):
            raise FieldError(f"trace left F_2 ({t}); modulus is not irreducible")
        return t

    def z(self, k=1):
        """The generator raised to k."""
        return self.pow(self.generator, k)

    def element(self, value):
        return FieldElement(self, self.check(int(value)))

    def multiplicative_order(self, a):
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        q = self.order - 1
        for p in _prime_factors(q):
            while q % p == 0 and self.pow(a, q // p) == 1:
                q //= p
        return q

    # vectorised arithmetic
    def mul_vec(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        a = a.copy()
        r = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.n):
            r ^= np.where((b >> i) & 1, a, 0)
            a <<= 1
            a ^= np.where((a >> self.n) & 1, self.modulus, 0)
        return r

    def pow_vec(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            if np.any(a == 0):
                raise DomainError("zero has no inverse")
            e %= self.order - 1
        if e == 0:
            return np.ones_like(a)
        nz = a != 0
        e_red = e % (self.order - 1) or (self.order - 1)
        r = np.ones_like(a)
        base = a.copy()
        while e_red:
            if e_red & 1:
                r = self.mul_vec(r, base)
            base = self.mul_vec(base, base)
            e_red >>= 1
        return np.where(nz, r, 0)

    @cached_property
    def trace_mask(self):
        """Bit i holds Tr(x^i); Tr(a) is then the parity of a & trace_mask."""
        return sum(self.trace(1 << i) << i for i in range(self.n))

    def trace_vec(self, a):
        from .boolfun import parity
        return parity(np.asarray(a, dtype=np.int64) & self.trace_mask)

    def trace_form(self, alpha):
        """The dot-product mask lambda with Tr(alpha*y) = lambda . y for all y."""
        alpha = np.asarray(alpha, dtype=np.int64)
        lam = np.zeros(alpha.shape, dtype=np.int64)
        for i in range(self.n):
            lam |= self.trace_vec(self.mul_vec(alpha, 1 << i)) << i
        return lam if lam.ndim else int(lam)


def field(n, modulus="default"):
    """Build and verify a FieldSpec.

    ``modulus="default"`` selects the Conway polynomial for n. A reducible
    modulus raises :class:`FieldError` carrying the factor found.
    """
    if not 2 <= n <= 16:
        raise DomainError(f"extension degree must be in [2, 16], got {n}")
    if modulus in ("default", "conway", None):
        modulus = CONWAY[n]
    modulus = int(modulus)
    if modulus.bit_length() - 1 != n:
        raise FieldError(f"modulus {poly_str(modulus)} does not have degree {n}")
    factor = find_factor(modulus)
    if factor is not None:
        raise FieldError(f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}", factor)
    probe = FieldSpec(n, modulus, 2)
    q = (1 << n) - 1
    gen = next(g for g in range(2, 1 << n) if probe.multiplicative_order(g) == q)
    return FieldSpec(n, modulus, gen)


_FIELD_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*(?:,\s*mod\s*=\s*(\S+?)\s*)?$")


def parse_field(text):
    """Parse ``n=6,mod=0b1011011`` or ``n=6,mod=conway`` (mod defaults to conway)."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError("field spec must look like n=6,mod=conway", text, 0)
    n = int(m.group(1))
    mod = m.group(2) or "conway"
    if mod.lower() in ("conway", "default"):
        return field(n)
    try:
        value = int(mod, 0)
    except ValueError:
        raise ParseError(f"bad modulus {mod!r}", text, text.index(mod)) from None
    return field(n, value)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise DomainError("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.spec.check(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return v if v is NotImplemented else FieldElement(self.spec, self.value ^ v)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        v = self._other(other)
        return v if v is NotImplemented else FieldElement(self.spec, self.spec.mul(self.value, v))

    __rmul__ = __mul__

    def __pow__(self, e):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def __truediv__(self, other):
        v = self._other(other)
        return FieldElement(self.spec, self.spec.mul(self.value, self.spec.inv(v)))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def trace(self):
        return self.spec.trace(self.value)

    def __repr__(self):
        return f"FieldElement({self.value:#x} in GF(2^{self.spec.n}))"


class GcdPow2(NamedTuple):
    m: int
    s: int
    e: int


def gcd_pow2(n, k):
    """(n,k), (n,2k) and gcd(2^n - 1, 2^k + 1) from the closed form.

    The closed form is 1 when n/(n,k) is odd and 2^(n,k) + 1 otherwise; it is
    cross-checked against the integer gcd.
    """
    if n < 1 or k < 1:
        raise DomainError("n and k must be positive")
    m = math.gcd(n, k)
    s = math.gcd(n, 2 * k)
    e = 1 if (n // m) % 2 else (1 << m) + 1
    direct = math.gcd((1 << n) - 1, (1 << k) + 1)
    if e != direct:
        raise AssertionError(f"gcd closed form {e} != {direct} for n={n}, k={k}")
    return GcdPow2(m, s, e)


# ---------------------------------------------------------------- polynomials

@dataclass(frozen=True)
class UnivariatePoly:
    """Sparse sum of c * x^e with nonzero coefficients and distinct exponents."""

    terms: tuple  # ((coefficient, exponent), ...) sorted by exponent

    def __post_init__(self):
        exps = [e for _, e in self.terms]
        if len(set(exps)) != len(exps):
            raise DomainError("duplicate exponents")
        if any(c == 0 for c, _ in self.terms):
            raise DomainError("zero coefficient")
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=lambda t: t[1])))

    @classmethod
    def from_pairs(cls, pairs):
        """Sum (coefficient, exponent) pairs, merging equal exponents."""
        acc = {}
        for c, e in pairs:
            acc[e] = acc.get(e, 0) ^ c
        return cls(tuple((c, e) for e, c in acc.items() if c))

    @property
    def algebraic_degree(self):
        return max((bin(e).count("1") for _, e in self.terms), default=0)

    def format(self, spec):
        """Render with coefficients as powers of the generator when possible."""
        parts = []
        for c, e in sorted(self.terms, key=lambda t: -t[1]):
            coeff = _as_z_power(spec, c)
            mono = "1" if e == 0 else "x" if e == 1 else f"x^{e}"
            if coeff == "1":
                parts.append(mono)
            elif mono == "1":
                parts.append(coeff)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts) or "0"


def _as_z_power(spec, c):
    if c == 1:
        return "1"
    y = 1
    for k in range(1, spec.order - 1):
        y = spec.mul(y, spec.generator)
        if y == c:
            return "z" if k == 1 else f"z^{k}"
    raise DomainError(f"{c} is not a power of the generator")


_TERM_RE = re.compile(
    r"(?P<one>1)(?![\d^])"
    r"|(?P<z>z(?:\^(?P<za>\d+))?)?\s*(?P<star>\*)?\s*(?P<x>x(?:\^(?P<xa>\d+))?)?")


def parse_poly(text, spec):
    """Parse terms ``z^A*x^B | z^A | x^B | x | 1`` joined by '+'.

    Whitespace is ignored and the '*' between coefficient and monomial is
    optional, so ``z^9x^40`` is accepted as well.
    """
    pairs = []
    pos = 0
    end = len(text.rstrip())
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        m = _TERM_RE.match(text, pos)
        g = m.groupdict()
        if g["one"]:
            pairs.append((1, 0))
        elif g["z"] or g["x"]:
            if g["star"] and not (g["z"] and g["x"]):
                raise ParseError("'*' must join a coefficient and a monomial", text, m.start("star"))
            coef = spec.z(int(g["za"] or 1)) if g["z"] else 1
            exp = int(g["xa"] or 1) if g["x"] else 0
            pairs.append((coef, exp))
        else:
            raise ParseError("expected a term z^A*x^B, z^A, x^B, x or 1", text, pos)
        pos = m.end()
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        if text[pos] != "+":
            raise ParseError(f"expected '+', found {text[pos]!r}", text, pos)
        pos += 1
    return UnivariatePoly.from_pairs(pairs)


def compile_poly(p, spec):
    """Evaluate p at every element; returns the VectorialFunc of output words."""
    from .vbf import VectorialFunc

    q = spec.order
    for c, e in p.terms:
        if not 0 <= e < q:
            raise DomainError(f"exponent {e} outside [0, {q - 1}]")
        spec.check(c)
    xs = np.arange(q, dtype=np.int64)
    out = np.zeros(q, dtype=np.int64)
    for c, e in p.terms:
        out ^= spec.mul_vec(c, spec.pow_vec(xs, e))
    return VectorialFunc(spec.n, out, field=spec)


compile = compile_poly  # noqa: A001 - mirrors the operation name
