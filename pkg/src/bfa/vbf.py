"""Vectorial Boolean functions F: F_2^n -> F_2^n.

Components are indexed by the dot-product mask lambda, F_lambda(x) = lambda . F(x).
For field-compiled functions the trace components Tr(alpha F) are the same set,
re-indexed through ``FieldSpec.trace_form``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .boolfun import BoolFunc, fwht, mobius, parity, popcount
from .errors import DomainError, ShapeError

_CHUNK_CELLS = 1 << 22  # int64 cells per batched spectrum block


@dataclass(frozen=True, eq=False)
class VectorialFunc:
    """Output words of F; ``outputs[idx(x)] = F(x)``. ``field`` is set when compiled."""

    n: int
    outputs: np.ndarray
    field: Optional[object] = None

    def __post_init__(self):
        out = np.asarray(self.outputs, dtype=np.int64).copy()
        if not 1 <= self.n <= 16:
            raise ShapeError(f"dimension must be in [1, 16], got {self.n}")
        if out.shape != (1 << self.n,):
            raise ShapeError(f"need {1 << self.n} output words, got {out.size}")
        if out.min() < 0 or out.max() >= 1 << self.n:
            raise ShapeError(f"output words must be {self.n}-bit")
        out.setflags(write=False)
        object.__setattr__(self, "outputs", out)

    def __call__(self, x):
        return int(self.outputs[x])

    def __eq__(self, other):
        if not isinstance(other, VectorialFunc):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.outputs, other.outputs)

    def __hash__(self):
        return hash((self.n, self.outputs.tobytes()))

    def __repr__(self):
        return f"VectorialFunc(n={self.n}, field={self.field})"

    @property
    def size(self):
        return 1 << self.n

    def image(self):
        return np.unique(self.outputs)

    def is_permutation(self):
        return len(self.image()) == self.size


def from_outputs(n, words, field=None):
    return VectorialFunc(n, np.asarray(words, dtype=np.int64), field)


def identity(n):
    return VectorialFunc(n, np.arange(1 << n))


def random_function(n, rng):
    return VectorialFunc(n, rng.integers(0, 1 << n, size=1 << n))


def random_permutation(n, rng):
    return VectorialFunc(n, rng.permutation(1 << n))


# ---------------------------------------------------------------- components

def component(F, lam):
    """The Boolean function lambda . F(x); lambda = 0 is not a component."""
    if not 0 < lam < F.size:
        raise DomainError(f"lambda must be a nonzero {F.n}-bit word, got {lam}")
    return BoolFunc(F.n, parity(F.outputs & lam).astype(np.uint8))


def trace_component(F, alpha, spec=None):
    """Tr(alpha F(x)) for a field-compiled F (or an explicit FieldSpec)."""
    spec = spec or F.field
    if spec is None:
        raise DomainError("trace components need a FieldSpec")
    if spec.n != F.n:
        raise DomainError(f"field degree {spec.n} does not match dimension {F.n}")
    if not 0 < alpha < F.size:
        raise DomainError("alpha must be a nonzero field element")
    return BoolFunc(F.n, spec.trace_vec(spec.mul_vec(alpha, F.outputs)).astype(np.uint8))


def component_tables(F, lams):
    lams = np.asarray(lams, dtype=np.int64)
    return parity(lams[:, None] & F.outputs[None, :]).astype(np.uint8)


def _blocks(F):
    """Yield (lams, bits) for lambda = 1 .. 2^n - 1 in bounded-memory blocks."""
    step = max(1, _CHUNK_CELLS // F.size)
    for start in range(1, F.size, step):
        lams = np.arange(start, min(start + step, F.size), dtype=np.int64)
        yield lams, component_tables(F, lams)


@dataclass(frozen=True, eq=False)
class ComponentProfile:
    """Per-component data for lambda = 1 .. 2^n - 1 (row i is lambda = i + 1)."""

    n: int
    dim_v: np.ndarray
    max_abs: np.ndarray
    min_abs: np.ndarray
    degree: np.ndarray
    kind: tuple          # class name per component
    sum_ac_sq: int       # sum over lambda != 0 and all a of r_lambda(a)^2
    spectrum: tuple      # distinct Walsh values over all components

    @property
    def lams(self):
        return np.arange(1, 1 << self.n)


def _classify_rows(n, w_abs, bits):
    size = 1 << n
    mx = w_abs.max(axis=1)
    plateau = ((w_abs == 0) | (w_abs == mx[:, None])).all(axis=1)
    half = 1 << (n // 2)
    bent = (w_abs == half).all(axis=1) if n % 2 == 0 else np.zeros(len(mx), bool)
    semi_amp = 1 << ((n + 1) // 2 if n % 2 else (n + 2) // 2)
    const = (bits == bits[:, :1]).all(axis=1)
    kinds = []
    for i in range(len(mx)):
        if const[i]:
            kinds.append("constant")
        elif mx[i] == size:
            kinds.append("affine")
        elif bent[i]:
            kinds.append("bent")
        elif plateau[i]:
            kinds.append("semi-bent" if mx[i] == semi_amp else "plateaued")
        else:
            kinds.append("other")
    return kinds


def component_profile(F):
    """Walsh spectra, autocorrelations, linear-space dimensions and degrees of every component.

    r_lambda(a) = sum_x (-1)^{D_a F_lambda(x)} is obtained for every shift a at
    once from the squared spectrum, so dim V_lambda = log2 #{a : |r(a)| = 2^n}
    is an exact count over all 2^n shifts.
    """
    n, size = F.n, F.size
    dims, mxs, mns, degs, kinds = [], [], [], [], []
    total = 0
    values = set()
    for lams, bits in _blocks(F):
        w = fwht(1 - 2 * bits.astype(np.int64))
        sq = w * w
        ac = fwht(sq.copy()) >> n
        total += sum(int(x) for x in (ac * ac).sum(axis=1))
        count = (np.abs(ac) == size).sum(axis=1)
        dims.append(np.log2(count).astype(np.int64))
        w_abs = np.abs(w)
        mxs.append(w_abs.max(axis=1))
        mns.append(w_abs.min(axis=1))
        coeffs = mobius(bits.copy())
        weights = popcount(np.arange(size))
        degs.append(np.where(coeffs.astype(bool), weights[None, :], 0).max(axis=1))
        kinds.extend(_classify_rows(n, w_abs, bits))
        values.update(int(v) for v in np.unique(w))
    return ComponentProfile(
        n=n,
        dim_v=np.concatenate(dims),
        max_abs=np.concatenate(mxs),
        min_abs=np.concatenate(mns),
        degree=np.concatenate(degs),
        kind=tuple(kinds),
        sum_ac_sq=total,
        spectrum=tuple(sorted(values)),
    )


def component_linear_space(F, lam):
    from .boolfun import linear_space
    return linear_space(component(F, lam))


# ---------------------------------------------------------------- differential

@dataclass(frozen=True, eq=False)
class Ddt:
    table: np.ndarray
    uniformity: int

    def __getitem__(self, ab):
        return int(self.table[ab])


def _ddt_rows(F, start=0):
    x = np.arange(F.size)
    for a in range(start, F.size):
        yield a, np.bincount(F.outputs[x ^ a] ^ F.outputs, minlength=F.size)


def ddt(F):
    """Full 2^n x 2^n difference distribution table (n <= 12 to bound memory)."""
    if F.n > 12:
        raise DomainError("full DDT is limited to n <= 12; use differential_uniformity")
    table = np.zeros((F.size, F.size), dtype=np.int64)
    for a, row in _ddt_rows(F):
        table[a] = row
    table.setflags(write=False)
    return Ddt(table, int(table[1:].max()) if F.size > 1 else 0)


def differential_uniformity(F):
    """max over a != 0 and b of delta_F(a, b), streamed row by row."""
    return max(int(row.max()) for _, row in _ddt_rows(F, start=1))


def is_apn(F):
    for _, row in _ddt_rows(F, start=1):
        if row.max() > 2:
            return False
    return True


@dataclass(frozen=True)
class ApnSumCheck:
    sum: int
    bound: int
    meets_bound: bool
    equality: bool


def apn_sum_check(F, profile=None):
    """Sum over lambda != 0 and all a of F(D_a F_lambda)^2 against 2^(2n+1)(2^n - 1).

    Equality holds exactly for APN functions. Computed from component spectra,
    independently of the DDT.
    """
    profile = profile or component_profile(F)
    bound = (1 << (2 * F.n + 1)) * (F.size - 1)
    s = profile.sum_ac_sq
    return ApnSumCheck(sum=s, bound=bound, meets_bound=s >= bound, equality=s == bound)


@dataclass(frozen=True)
class QuadraticSumCheck:
    sum_linear: int
    bound: int
    is_apn_equiv: bool


def _require_pure_quadratic(profile):
    bad = np.flatnonzero(profile.degree != 2)
    if bad.size:
        lam = int(bad[0]) + 1
        raise DomainError(
            f"not pure quadratic: component lambda={lam} has degree {int(profile.degree[bad[0]])}")


def quadratic_sum_check(Q, profile=None):
    """Sum over lambda != 0 of (2^dim V_lambda - 1); equals 2^n - 1 exactly when Q is APN."""
    profile = profile or component_profile(Q)
    _require_pure_quadratic(profile)
    s = int(((1 << profile.dim_v) - 1).sum())
    return QuadraticSumCheck(sum_linear=s, bound=Q.size - 1, is_apn_equiv=s == Q.size - 1)


def is_pure_quadratic(F, profile=None):
    profile = profile or component_profile(F)
    return bool((profile.degree == 2).all())


# ---------------------------------------------------------------- census

@dataclass(frozen=True)
class ComponentRecord:
    lam: int
    dim_v: int
    kind: str
    max_abs: int
    alpha: Optional[int] = None


LAW_HOLDS = "holds"
LAW_OUTSIDE = "outside quadratic-APN law"
LAW_NA = "not applicable"


@dataclass(frozen=True)
class CensusReport:
    n: int
    B: int
    N: int
    sum_linear: int
    t: Optional[int]
    spectrum: tuple
    uniformity: int
    nonlinearity: int
    is_apn: bool
    pure_quadratic: bool
    law: str
    per_component: tuple = dc_field(repr=False)

    def to_dict(self):
        out = {
            "n": self.n,
            "B": self.B,
            "N": self.N,
            "sum_linear": self.sum_linear,
            "t": self.t,
            "spectrum": list(self.spectrum),
            "uniformity": self.uniformity,
            "nonlinearity": self.nonlinearity,
            "is_apn": self.is_apn,
            "pure_quadratic": self.pure_quadratic,
            "law": self.law,
        }
        rows = []
        for r in self.per_component:
            row = {"lambda": r.lam, "dimV": r.dim_v, "class": r.kind, "maxAbsW": r.max_abs}
            if r.alpha is not None:
                row["alpha"] = r.alpha
            rows.append(row)
        out["per_component"] = rows
        return out

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self):
        buf = io.StringIO()
        with_alpha = any(r.alpha is not None for r in self.per_component)
        cols = ["lambda", "dimV", "class", "maxAbsW"] + (["alpha"] if with_alpha else [])
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.per_component:
            row = [r.lam, r.dim_v, r.kind, r.max_abs]
            w.writerow(row + ([r.alpha] if with_alpha else []))
        return buf.getvalue()


def apn_bent_floor(n):
    """2(2^n - 1)/3, the bent count of Gold-like quadratic APN functions (n even)."""
    return 2 * ((1 << n) - 1) // 3


def census(F, components="dot", profile=None):
    """Classify every component and aggregate B, N, sum_linear, spectrum and t.

    ``components="trace"`` enumerates Tr(alpha F) in order of alpha instead of
    lambda . F; the aggregates are identical because the two index sets are
    the same set of functions.
    """
    profile = profile or component_profile(F)
    n, size = F.n, F.size
    lam_of = np.arange(1, size)
    alphas = None
    if components == "trace":
        if F.field is None:
            raise DomainError("trace enumeration needs a field-compiled function")
        alphas = np.arange(1, size)
        lam_of = np.asarray(F.field.trace_form(alphas))
    elif components != "dot":
        raise DomainError(f"unknown component enumeration {components!r}")
    records = []
    for j, lam in enumerate(lam_of):
        i = int(lam) - 1
        records.append(ComponentRecord(
            lam=int(lam), dim_v=int(profile.dim_v[i]), kind=profile.kind[i],
            max_abs=int(profile.max_abs[i]),
            alpha=None if alphas is None else int(alphas[j])))
    B = sum(1 for k in profile.kind if k == "bent")
    sum_linear = int(((1 << profile.dim_v) - 1).sum())
    uniformity = differential_uniformity(F)
    apn = uniformity == 2
    pure = bool((profile.degree == 2).all())
    t = None
    law = LAW_NA
    if n % 2 == 0:
        diff = B - apn_bent_floor(n)
        if diff >= 0 and diff % 4 == 0:
            t = diff // 4
        if pure and apn:
            upper = size - (1 << (n // 2)) - 2
            law = LAW_HOLDS if t is not None and B <= upper else LAW_OUTSIDE
    return CensusReport(
        n=n, B=B, N=size - 1 - B, sum_linear=sum_linear, t=t,
        spectrum=profile.spectrum, uniformity=uniformity,
        nonlinearity=int((size - profile.max_abs.max()) // 2),
        is_apn=apn, pure_quadratic=pure, law=law, per_component=tuple(records))


@dataclass(frozen=True)
class NonlinearityCheck:
    t: int
    measured: int
    predicted: Optional[int]
    in_range: bool

    @property
    def matches(self):
        return self.predicted is not None and self.predicted == self.measured


def apn_nonlinearity_check(Q, report=None):
    """Nonlinearity predicted from t for a pure quadratic APN Q in even dimension.

    t = 0 gives 2^(n-1) - 2^(n/2); 1 <= t <= 4 gives 2^(n-1) - 2^(n/2+1);
    larger t is out of range and only the measured value is returned.
    """
    report = report or census(Q)
    if Q.n % 2 or not (report.pure_quadratic and report.is_apn):
        raise DomainError("needs a pure quadratic APN function in even dimension")
    if report.t is None:
        raise DomainError(f"B={report.B} does not fit 2(2^n-1)/3 + 4t")
    n, t = Q.n, report.t
    if t == 0:
        pred = (1 << (n - 1)) - (1 << (n // 2))
    elif t <= 4:
        pred = (1 << (n - 1)) - (1 << (n // 2 + 1))
    else:
        pred = None
    return NonlinearityCheck(t=t, measured=report.nonlinearity, predicted=pred, in_range=pred is not None)


@dataclass(frozen=True)
class TrivialComponents:
    found: bool
    witness: Optional[int]
    witnesses: tuple


def trivial_component_exists(F, profile=None):
    """Components lambda with V(F_lambda) = {0}; guaranteed for APN F in even dimension."""
    if F.n % 2:
        raise DomainError("defined for even n")
    profile = profile or component_profile(F)
    ws = tuple(int(i) + 1 for i in np.flatnonzero(profile.dim_v == 0))
    return TrivialComponents(found=bool(ws), witness=ws[0] if ws else None, witnesses=ws)


@dataclass(frozen=True)
class PermutationDiagnostics:
    hypotheses_met: bool
    unmet: tuple
    max_dim: int
    dim_bound_holds: bool          # dim V_lambda <= 1 for every lambda
    constants_all_one: bool        # every constant nonzero derivative equals 1
    violations: tuple              # (lambda, a, constant) with constant 0

    @property
    def summary(self):
        if self.hypotheses_met:
            ok = self.dim_bound_holds and self.constants_all_one
            return "hypotheses met: " + ("diagnostics pass" if ok else "diagnostics FAIL")
        return "hypotheses unmet: " + ", ".join(self.unmet)


def apn_permutation_diagnostics(F):
    """Linear-space diagnostics for APN permutations in even dimension.

    Never raises on a counterexample; unmet hypotheses are reported and the
    diagnostics are still computed.
    """
    from .boolfun import linear_space
    unmet = []
    if F.n % 2:
        unmet.append("n odd")
    if not F.is_permutation():
        unmet.append("not a permutation")
    if not is_apn(F):
        unmet.append("not APN")
    max_dim = 0
    violations = []
    for lam in range(1, F.size):
        vs = linear_space(component(F, lam))
        max_dim = max(max_dim, vs.dim)
        violations.extend((lam, a, c) for a, c in vs.constants.items() if a and c == 0)
    return PermutationDiagnostics(
        hypotheses_met=not unmet, unmet=tuple(unmet), max_dim=max_dim,
        dim_bound_holds=max_dim <= 1, constants_all_one=not violations,
        violations=tuple(violations))


# ---------------------------------------------------------------- power functions

@dataclass(frozen=True)
class PowerAnalysis:
    n: int
    k: int
    d: int
    m: int
    s: int
    e: int
    image_size: int
    image_size_predicted: int
    is_permutation: bool
    is_apn: bool
    apn_predicted: Optional[bool]
    B_predicted: Optional[int]
    B_measured: Optional[int]
    spectrum_predicted: Optional[tuple]
    spectrum_measured: tuple
    bent_alphas_match: Optional[bool]

    @property
    def checks(self):
        out = {"image_size": self.image_size == self.image_size_predicted,
               "permutation": self.is_permutation == (self.e == 1)}
        if self.n % 2 == 0:
            out["bent_count"] = self.B_measured == self.B_predicted
            out["bent_alphas"] = bool(self.bent_alphas_match)
            out["spectrum"] = self.spectrum_measured == self.spectrum_predicted
            out["apn_law"] = self.is_apn == self.apn_predicted
        return out

    @property
    def ok(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            "n": self.n, "k": self.k, "d": self.d, "m": self.m, "s": self.s, "e": self.e,
            "image_size": self.image_size, "image_size_predicted": self.image_size_predicted,
            "is_permutation": self.is_permutation, "is_apn": self.is_apn,
            "apn_predicted": self.apn_predicted,
            "B_predicted": self.B_predicted, "B_measured": self.B_measured,
            "spectrum_predicted": None if self.spectrum_predicted is None else list(self.spectrum_predicted),
            "spectrum_measured": list(self.spectrum_measured),
            "bent_alphas_match": self.bent_alphas_match,
            "ok": self.ok,
        }


def predicted_power_spectrum(n, s, e):
    """Signed Walsh values of x^(2^k+1) in even dimension.

    Components with a full linear space (s = n) are linear maps, whose only
    nonzero Walsh value is +2^n, so the negative value is absent there.
    """
    top = 1 << ((n + s) // 2)
    vals = {0, top} if s == n else {0, top, -top}
    if e != 1:
        vals |= {1 << (n // 2), -(1 << (n // 2))}
    return tuple(sorted(vals))


def power_analyze(n, k, spec=None):
    """Predictions for F(x) = x^(2^k+1) on GF(2^n) next to exhaustive measurements.

    For odd n only e, the image size and the permutation flag are predicted.
    """
    from .gf2n import compile_poly, field, gcd_pow2, UnivariatePoly

    if k < 1:
        raise DomainError("k must be >= 1")
    spec = spec or field(n)
    if spec.n != n:
        raise DomainError("field degree does not match n")
    g = gcd_pow2(n, k)
    d = (1 << k) + 1
    q = 1 << n
    F = compile_poly(UnivariatePoly(((1, d % (q - 1) or q - 1),)), spec)
    image = F.image()
    profile = component_profile(F)
    apn = is_apn(F)
    even = n % 2 == 0
    B_meas = B_pred = spec_pred = apn_pred = match = None
    if even:
        B_pred = (g.e - 1) * (q - 1) // g.e
        B_meas = sum(1 for kind in profile.kind if kind == "bent")
        spec_pred = predicted_power_spectrum(n, g.s, g.e)
        apn_pred = g.e == 3 and g.s == 2
        alphas = np.arange(1, q)
        lams = np.asarray(spec.trace_form(alphas))
        bent_by_alpha = np.array([profile.kind[lam - 1] == "bent" for lam in lams])
        outside_image = ~np.isin(alphas, image)
        match = bool(np.array_equal(bent_by_alpha, outside_image))
    return PowerAnalysis(
        n=n, k=k, d=d, m=g.m, s=g.s, e=g.e,
        image_size=int(len(image)), image_size_predicted=1 + (q - 1) // g.e,
        is_permutation=F.is_permutation(), is_apn=apn, apn_predicted=apn_pred,
        B_predicted=B_pred, B_measured=B_meas,
        spectrum_predicted=spec_pred, spectrum_measured=profile.spectrum,
        bent_alphas_match=match)


def power_scan(n_max, n_min=2, threads=1):
    """power_analyze for every even n in [n_min, n_max] and 1 <= k < n, in (n, k) order."""
    from .gf2n import field

    jobs = []
    for n in range(max(2, n_min + n_min % 2), n_max + 1, 2):
        spec = field(n)
        jobs += [(n, k, spec) for k in range(1, n)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda j: power_analyze(*j), jobs))
    return [power_analyze(*j) for j in jobs]
