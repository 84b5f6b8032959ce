"""Function families: balanced constructions, convolutional products,
bent generators, derivative decompositions, and the polynomial catalog.

Throughout, a function on n+1 variables built from g, h on n variables uses
x_{n+1} as the new top index bit, so its table is the h-half followed by the
x_{n+1} = 1 half.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import boolfun as bf
from .boolfun import BoolFunc
from .errors import DomainError, InvariantViolation, ShapeError

CATALOG_DIR = Path(__file__).with_name("catalog")


def _ensure(cond, message):
    if not cond:
        raise InvariantViolation(message)


# ---------------------------------------------------------------- embedding

def embed(f, n, offset=0):
    """f on m variables placed at x_{offset+1} .. x_{offset+m} of an n-variable space."""
    if offset < 0 or offset + f.n > n:
        raise ShapeError(f"cannot place {f.n} variables at offset {offset} in {n}")
    idx = np.arange(1 << n)
    return BoolFunc(n, f.table[(idx >> offset) & ((1 << f.n) - 1)])


def lift(f, n):
    """f viewed as a function on n >= f.n variables that ignores the extra ones."""
    return embed(f, n, 0)


def restrict_top(f, value):
    """f with x_n fixed to ``value``, as a function on n-1 variables."""
    half = f.size // 2
    return BoolFunc(f.n - 1, f.table[half:] if value else f.table[:half])


# ---------------------------------------------------------------- split sums

def _same_n(g, h):
    if g.n != h.n:
        raise ShapeError(f"g has {g.n} variables and h has {h.n}")
    if g.n + 1 > bf.MAX_N:
        raise ShapeError(f"result would have more than {bf.MAX_N} variables")


@dataclass(frozen=True)
class SplitSum:
    """f = x_{n+1} g + h on n+1 variables."""

    g: BoolFunc
    h: BoolFunc

    def __post_init__(self):
        _same_n(self.g, self.h)

    @property
    def n(self):
        return self.g.n

    @property
    def f(self):
        return BoolFunc(self.n + 1, np.concatenate([self.h.table, self.g.table ^ self.h.table]))


@dataclass(frozen=True)
class ConvProduct:
    """f = x_{n+1} g + (1 + x_{n+1}) h on n+1 variables."""

    g: BoolFunc
    h: BoolFunc

    def __post_init__(self):
        _same_n(self.g, self.h)

    @property
    def n(self):
        return self.g.n

    @property
    def f(self):
        return BoolFunc(self.n + 1, np.concatenate([self.h.table, self.g.table]))

    def as_split_sum(self):
        return SplitSum(self.g + self.h, self.h)


def split_sum(g, h):
    """x_{n+1} g + h; the weight identity w(f) = w(g+h) + w(h) is enforced."""
    f = SplitSum(g, h).f
    _ensure(bf.weight(f) == bf.weight(g + h) + bf.weight(h), "weight identity failed")
    return f


def construction_1(g_tilde, h_tilde):
    """x_{n+1}(g~ + x_n) + h~ + x_{n-1}, with g~ on n-1 and h~ on n-2 variables.

    Always balanced; the result has n+1 variables.
    """
    n = g_tilde.n + 1
    if n < 3:
        raise ShapeError("needs n >= 3, i.e. g~ on at least 2 variables")
    if h_tilde.n != n - 2:
        raise ShapeError(f"h~ must have {n - 2} variables, got {h_tilde.n}")
    g = lift(g_tilde, n) + bf.variable(n, n)
    h = lift(h_tilde, n) + bf.variable(n, n - 1)
    f = split_sum(g, h)
    _ensure(bf.is_balanced(f), "construction 1 produced an unbalanced function")
    return f


def construction_2(inner: Sequence[BoolFunc], n, variant="f", c=0):
    """Depth-l construction from inner functions g~_1 .. g~_l.

    g~_i lives on the n - 2i variables x_{i+1} .. x_{n-i} and is supplied on
    its own variable count; g_i = g~_i(x_{i+1}, ..., x_{n-i}) + x_{n-i+1}.
    ``variant="f"`` gives sum_{i<l} x_i g_i + g_l (balanced);
    ``variant="fbar"`` gives sum_{i<=l} x_i g_i + c (unbalanced).
    """
    depth = len(inner)
    if n <= 2:
        raise ShapeError("needs n > 2")
    if not 1 <= depth <= n // 2:
        raise DomainError(f"depth {depth} must be in [1, {n // 2}]")
    if variant not in ("f", "fbar"):
        raise DomainError(f"unknown variant {variant!r}")
    gs = []
    for i, gt in enumerate(inner, start=1):
        if gt.n != n - 2 * i:
            raise ShapeError(f"g~_{i} must have {n - 2 * i} variables, got {gt.n}")
        gs.append(embed(gt, n, offset=i) + bf.variable(n, n - i + 1))
    terms = range(1, depth) if variant == "f" else range(1, depth + 1)
    f = bf.constant(n, 0 if variant == "f" else c)
    for i in terms:
        f = f + bf.variable(n, i) * gs[i - 1]
    if variant == "f":
        f = f + gs[-1]
    _ensure(bf.is_balanced(f) == (variant == "f"),
            f"construction 2 variant {variant} has weight {bf.weight(f)}")
    return f


def conv_product(g, h):
    """x_{n+1} g + (1 + x_{n+1}) h.

    For bent g, h (n even) the result is plateaued with spectrum inside
    {0, +-2^(n/2+1)} and is balanced exactly when w(g) != w(h); both are enforced.
    """
    f = ConvProduct(g, h).f
    _ensure(bf.weight(f) == bf.weight(g) + bf.weight(h), "weight additivity failed")
    if g.n % 2 == 0 and bf.is_bent(g) and bf.is_bent(h):
        amp = 1 << (g.n // 2 + 1)
        vals = set(np.unique(np.abs(bf.walsh(f).values)).tolist())
        _ensure(vals <= {0, amp}, f"bent-pair product spectrum {sorted(vals)}")
        _ensure(bf.is_balanced(f) == (bf.weight(g) != bf.weight(h)), "bent-pair balance rule failed")
    return f


def cubic_conv_balanced_test(g, h):
    """Balancedness of the cubic x_{n+1} g + (1 + x_{n+1}) h for deg g, deg h <= 2.

    Also checks the classification: balanced iff both g and h are balanced,
    or both are unbalanced quadratics with g affine equivalent to h + 1.
    """
    if bf.degree(g) > 2 or bf.degree(h) > 2:
        raise DomainError("g and h must have degree <= 2")
    f = ConvProduct(g, h).f
    if bf.degree(f) != 3:
        raise DomainError(f"product has degree {bf.degree(f)}, not 3")
    balanced = bf.is_balanced(f)
    bg, bh = bf.is_balanced(g), bf.is_balanced(h)
    related = (not bg and not bh and bf.degree(g) == 2 and bf.degree(h) == 2
               and bf.quad_equiv(g, h + 1))
    _ensure(balanced == ((bg and bh) or related),
            "balanced cubic classification disagrees with the weight count")
    return balanced


# ---------------------------------------------------------------- derivatives

@dataclass(frozen=True)
class Decomposition:
    lhs: BoolFunc          # D_lambda f computed directly
    rhs: BoolFunc          # x_{n+1} D_a g + a_{n+1} g + D_a h, after x_{n+1} -> x_{n+1} + a_{n+1}
    reduced: BoolFunc      # the same expression before the shift
    equal: bool


def derivative_decomposition(s: SplitSum, lam):
    """Compare D_lambda f with its expression through g and h, lambda = (a, a_{n+1})."""
    n = s.n
    if not 0 <= lam < 1 << (n + 1):
        raise DomainError(f"lambda must be an {n + 1}-bit vector")
    a, top = lam & ((1 << n) - 1), lam >> n
    dg, dh = bf.derivative(s.g, a), bf.derivative(s.h, a)
    lower = dh + (s.g if top else 0)              # x_{n+1} = 0 half
    reduced = BoolFunc(n + 1, np.concatenate([lower.table, (lower + dg).table]))
    rhs = BoolFunc(n + 1, np.roll(reduced.table, -(top << n)))
    lhs = bf.derivative(s.f, lam)
    return Decomposition(lhs=lhs, rhs=rhs, reduced=reduced, equal=lhs == rhs)


RECIPES = ("split-bent", "construction-1", "conv-quadratic-bent", "conv-bent-degree")


@dataclass(frozen=True)
class Certificate:
    recipe: str
    clauses: dict
    witness: Optional[int]
    nonlinearity: int

    @property
    def passed(self):
        return all(self.clauses.values())


def trivial_linear_space_certify(f, recipe, g, h):
    """Check that f, built by ``recipe`` from the recorded g and h, has V(f) = {0}.

    Recipes:
      split-bent           f = x_{n+1} g + h with g bent
      construction-1       f = construction_1(g~, h~) with g~ bent, n odd
      conv-quadratic-bent  f = x_{n+1} g + (1+x_{n+1}) h, g, h quadratic bent, g ~ h + 1
      conv-bent-degree     same product, g, h bent, deg f = max(deg g, deg h) + 1
    The product recipes also carry the bound N(f) >= N(g) + N(h) >= 2^(N-1) - 2^((N-1)/2).
    """
    if recipe not in RECIPES:
        raise DomainError(f"unknown recipe {recipe!r}; expected one of {RECIPES}")
    clauses = {}
    if recipe == "split-bent":
        clauses["recipe_matches"] = f == SplitSum(g, h).f
        clauses["n_even"] = g.n % 2 == 0
        clauses["g_bent"] = bf.is_bent(g)
    elif recipe == "construction-1":
        clauses["recipe_matches"] = f == construction_1(g, h)
        clauses["n_odd"] = (g.n + 1) % 2 == 1
        clauses["g_bent"] = bf.is_bent(g)
    else:
        clauses["recipe_matches"] = f == ConvProduct(g, h).f
        clauses["n_even"] = g.n % 2 == 0
        clauses["g_bent"] = bf.is_bent(g)
        clauses["h_bent"] = bf.is_bent(h)
        if recipe == "conv-quadratic-bent":
            quad = bf.degree(g) == 2 and bf.degree(h) == 2
            clauses["quadratic"] = quad
            clauses["cubic"] = bf.degree(f) == 3
            clauses["g_equiv_h_plus_1"] = (quad and not bf.is_balanced(g) and not bf.is_balanced(h + 1)
                                          and bf.quad_equiv(g, h + 1))
        else:
            clauses["degree_rises"] = bf.degree(f) == max(bf.degree(g), bf.degree(h)) + 1
        big_n = f.n
        nl = bf.nonlinearity(f)
        sum_nl = bf.nonlinearity(g) + bf.nonlinearity(h)
        # 2^(N-1) - 2^((N-1)/2), N - 1 = n even
        floor = (1 << (big_n - 1)) - (1 << ((big_n - 1) // 2))
        clauses["nonlinearity_sum_bound"] = nl >= sum_nl
        clauses["nonlinearity_floor"] = sum_nl >= floor
    vs = bf.linear_space(f)
    nonzero = [a for a in vs.elements if a]
    clauses["trivial_linear_space"] = not nonzero
    return Certificate(recipe=recipe, clauses=clauses, witness=nonzero[0] if nonzero else None,
                       nonlinearity=bf.nonlinearity(f))


# ---------------------------------------------------------------- bent functions

@dataclass(frozen=True, eq=False)
class Affinity:
    """x -> M x + w over F_2^n; ``matrix[i, j]`` is row i, column j (0-based)."""

    matrix: np.ndarray
    shift: int = 0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.uint8) & 1
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError("affinity matrix must be square")
        if len(bf.rref(self._columns(m).tolist())) != m.shape[0]:
            raise DomainError("affinity matrix is singular")
        if not 0 <= self.shift < 1 << m.shape[0]:
            raise ShapeError("shift vector too long")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @staticmethod
    def _columns(m):
        weights = 1 << np.arange(m.shape[0], dtype=np.int64)
        return (m.astype(np.int64) * weights[:, None]).sum(axis=0)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=np.uint8))

    @property
    def n(self):
        return self.matrix.shape[0]

    def apply(self, x):
        """Image of index x (or an index array)."""
        cols = self._columns(self.matrix)
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(x.shape, dtype=np.int64)
        for j in range(self.n):
            out ^= np.where((x >> j) & 1, cols[j], 0)
        return out ^ self.shift


def compose(f, phi: Affinity):
    """f o phi."""
    if phi.n != f.n:
        raise ShapeError("affinity dimension mismatch")
    return BoolFunc(f.n, f.table[phi.apply(np.arange(f.size))])


def inner_product_quadratic(n):
    """x1 x2 + x3 x4 + ... + x_{n-1} x_n."""
    f = bf.constant(n, 0)
    for i in range(1, n, 2):
        f = f + bf.variable(n, i) * bf.variable(n, i + 1)
    return f


def bent_mm(n, affinity: Optional[Affinity] = None):
    """The inner-product bent function, optionally composed with an affinity."""
    if n % 2 or n < 2:
        raise DomainError("bent functions need even n >= 2")
    f = inner_product_quadratic(n)
    if affinity is not None:
        f = compose(f, affinity)
    _ensure(bf.is_bent(f), "bent_mm output is not bent")
    return f


def random_affinity(n, rng):
    while True:
        m = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        try:
            return Affinity(m, int(rng.integers(0, 1 << n)))
        except DomainError:
            continue


def random_bent(n, rng):
    """A bent function x-> q(Mx + w) + c, q the inner-product quadratic, drawn at random."""
    return bent_mm(n, random_affinity(n, rng)) + int(rng.integers(0, 2))


# ---------------------------------------------------------------- catalog

def gold(n, k, spec=None):
    """The Gold power map x^(2^k + 1)."""
    from .gf2n import UnivariatePoly, compile_poly, field

    spec = spec or field(n)
    return compile_poly(UnivariatePoly(((1, (1 << k) + 1),)), spec)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: object
    poly: object
    text: str

    def compile(self):
        from .gf2n import compile_poly
        return compile_poly(self.poly, self.spec)


def read_catalog_file(path):
    """Parse a catalog file: ``# field: <spec>`` header, then polynomial lines."""
    from .gf2n import parse_field, parse_poly

    path = Path(path)
    spec = None
    body = []
    for line in path.read_text().splitlines():
        s = line.strip()
        if s.startswith("#"):
            key, _, val = s[1:].partition(":")
            if key.strip().lower() == "field":
                spec = parse_field(val.strip())
            continue
        if s:
            body.append(s)
    if spec is None:
        raise DomainError(f"{path.name}: missing '# field:' header")
    text = " ".join(body)
    return CatalogEntry(path.stem, spec, parse_poly(text, spec), text)


def catalog_names(catalog_dir=None):
    d = Path(catalog_dir) if catalog_dir else CATALOG_DIR
    return sorted(p.stem for p in d.glob("*.txt"))


def catalog_entry(name, catalog_dir=None):
    d = Path(catalog_dir) if catalog_dir else CATALOG_DIR
    path = d / f"{name}.txt"
    if not path.is_file():
        raise DomainError(f"unknown catalog entry {name!r}; known: {', '.join(catalog_names(d))}")
    return read_catalog_file(path)


def catalog(name, catalog_dir=None):
    """Compile a named catalog polynomial in its pinned field."""
    return catalog_entry(name, catalog_dir).compile()


def random_quadratic(n, rng, balanced=None):
    """Random function of degree exactly 2 (n >= 2); optionally forced (un)balanced."""
    if n < 2:
        raise DomainError("quadratics need n >= 2")
    pairs = [(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)]
    while True:
        monos = {m for m in pairs if rng.integers(0, 2)}
        monos |= {1 << i for i in range(n) if rng.integers(0, 2)}
        if rng.integers(0, 2):
            monos.add(0)
        f = bf.truth_table(bf.Anf(n, frozenset(monos)))
        if bf.degree(f) == 2 and (balanced is None or bf.is_balanced(f) == balanced):
            return f
