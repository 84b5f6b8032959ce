"""Acceptance criteria, one test each.

Every criterion prints a single PASS/FAIL line (collected in the pytest
terminal summary, or printed directly when run as a script):

    python tests/test_acceptance.py
"""

import time

import numpy as np
import pytest

from bfa import boolfun as bf
from bfa import constructions as cons
from bfa import oracle, vbf
from bfa.errors import InvariantViolation

SEED = 20240607
RESULTS = {}


def _rng(k):
    return np.random.default_rng([SEED, k])


class Criterion:
    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []
        self.notes = []

    def check(self, cond, message):
        if not cond:
            self.failures.append(message)
        return cond

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t0
        if exc is not None:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        if self.limit is not None and self.elapsed > self.limit:
            self.failures.append(f"took {self.elapsed:.2f}s, limit {self.limit}s")
        status = "PASS" if not self.failures else "FAIL"
        detail = "; ".join(self.failures or self.notes)
        line = f"[{self.number:2d}] {status}  {self.title}  ({self.elapsed:.2f}s)"
        RESULTS[self.number] = line + (f"  -- {detail}" if detail else "")
        print(RESULTS[self.number])
        return True          # the assertion below reports the failure

    def verdict(self):
        assert not self.failures, "; ".join(self.failures)


def _census_of(name, crit):
    F = cons.catalog(name)
    r = vbf.census(F)
    if F.field is not None and not F.field.conway:
        crit.notes.append(f"{name} not compiled over the Conway field")
    return F, r


# ---------------------------------------------------------------- 1..4

def test_01_gold_census():
    with Criterion(1, "Gold x^3 over GF(2^6): APN, B=42, spectrum {0,+-8,+-16}, min NL 24", limit=1.0) as c:
        F = cons.gold(6, 1)
        r = vbf.census(F)
        c.check(r.is_apn, "not APN")
        c.check(r.B == 42, f"B={r.B}")
        c.check(r.spectrum == (-16, -8, 0, 8, 16), f"spectrum {r.spectrum}")
        c.check(r.nonlinearity == 24, f"min component NL {r.nonlinearity}")
    c.verdict()


def test_02_dillon():
    with Criterion(2, "dillon_F: APN, B=46, t=1", limit=1.0) as c:
        _, r = _census_of("dillon_F", c)
        c.check(r.is_apn, "not APN")
        c.check(r.B == 46, f"B={r.B} under the Conway field")
        c.check(r.t == 1, f"t={r.t}")
    c.verdict()


def test_03_g():
    with Criterion(3, "G: APN, B=46", limit=1.0) as c:
        _, r = _census_of("G", c)
        c.check(r.is_apn, "not APN")
        c.check(r.B == 46, f"B={r.B} under the Conway field")
    c.verdict()


@pytest.mark.parametrize("name,B", [("Gprime", 174), ("Gdoubleprime", 178)])
def test_04_dimension_8(name, B):
    allowed = {0, 16, -16, 32, -32, 64, -64}
    number = 4
    with Criterion(number, f"{name}: APN, B={B}, spectrum within {{0,+-16,+-32,+-64}}", limit=5.0) as c:
        _, r = _census_of(name, c)
        c.check(r.is_apn, "not APN")
        c.check(r.B == B, f"B={r.B} under the Conway field")
        c.check(set(r.spectrum) <= allowed, f"spectrum {r.spectrum}")
    RESULTS[f"4-{name}"] = RESULTS.pop(number)
    c.verdict()


# ---------------------------------------------------------------- 5, 12 share the APN population

def _apn_population():
    out = [(name, cons.catalog(name)) for name in cons.catalog_names()]
    for row in vbf.power_scan(10, n_min=4):
        if row.is_apn:
            out.append((f"x^{row.d} n={row.n}", cons.gold(row.n, row.k)))
    return out


def test_05_counting_law():
    with Criterion(5, "counting law B = 2(2^n-1)/3 + 4t, B <= 2^n - 2^(n/2) - 2 on every APN") as c:
        pop = _apn_population()
        for name, F in pop:
            r = vbf.census(F)
            floor = vbf.apn_bent_floor(F.n)
            upper = F.size - (1 << (F.n // 2)) - 2
            diff = r.B - floor
            c.check(r.is_apn, f"{name} not APN")
            c.check(diff >= 0 and diff % 4 == 0, f"{name}: B={r.B}, floor {floor}")
            c.check(r.B <= upper, f"{name}: B={r.B} > {upper}")
        c.notes.append(f"{len(pop)} APN functions")
    c.verdict()


def test_12_trivial_component():
    with Criterion(12, "every APN (catalog + power scan, even n) has a component with dim V = 0") as c:
        pop = _apn_population()
        for name, F in pop:
            tc = vbf.trivial_component_exists(F)
            if c.check(tc.found, f"{name}: no trivial component"):
                f = vbf.component(F, tc.witness)
                c.check(bf.linear_space(f).dim == 0, f"{name}: witness {tc.witness} has a linear structure")
        c.notes.append(f"{len(pop)} APN functions")
    c.verdict()


# ---------------------------------------------------------------- 6

def _random_quadratic_vectorial(n, rng):
    # each output bit a random quadratic form; affine parts included
    bits = [cons.random_quadratic(n, rng) for _ in range(n)]
    words = sum(b.table.astype(np.int64) << i for i, b in enumerate(bits))
    return vbf.from_outputs(n, words)


def _affine_sandwich(F, rng):
    a, b = cons.random_affinity(F.n, rng), cons.random_affinity(F.n, rng)
    inner = a.apply(np.arange(F.size))
    return vbf.from_outputs(F.n, b.apply(F.outputs[inner]))


def test_06_sum_identities():
    with Criterion(6, "APN sum identity and quadratic sum identity agree with DDT-APN") as c:
        rng = _rng(6)
        catalog = [cons.catalog(name) for name in cons.catalog_names()]
        randoms = [vbf.random_function(4, rng) for _ in range(100)]
        apn_hits = 0
        for F in randoms + catalog:
            chk = vbf.apn_sum_check(F)
            apn = vbf.is_apn(F)
            apn_hits += apn
            c.check(chk.meets_bound, "sum below the bound")
            c.check(chk.equality == apn, f"sum equality {chk.equality} vs DDT {apn}")
        quad = list(catalog)
        quad += [cons.gold(n, k) for n in range(3, 11) for k in range(1, n)]
        quad += [_affine_sandwich(cons.gold(4, 1), rng) for _ in range(30)]
        quad += [_affine_sandwich(cons.gold(6, 1), rng) for _ in range(10)]
        quad += [_random_quadratic_vectorial(n, rng) for n in (3, 4, 5, 6) for _ in range(25)]
        tested = 0
        for F in quad:
            if not vbf.is_pure_quadratic(F):
                continue
            tested += 1
            q = vbf.quadratic_sum_check(F)
            c.check(q.is_apn_equiv == vbf.is_apn(F), "quadratic sum equality disagrees with DDT")
        c.notes.append(f"{len(randoms) + len(catalog)} sum checks ({apn_hits} APN), {tested} pure quadratics")
    c.verdict()


# ---------------------------------------------------------------- 7

def test_07_power_maps():
    with Criterion(7, "power-map predictions, even n in {4,6,8,10}, all 1 <= k < n", limit=60.0) as c:
        rows = vbf.power_scan(10, n_min=4)
        c.check(sorted({r.n for r in rows}) == [4, 6, 8, 10], "scan range")
        c.check(len(rows) == 3 + 5 + 7 + 9, f"{len(rows)} rows")
        for r in rows:
            q = 1 << r.n
            tag = f"n={r.n} k={r.k}"
            c.check(r.image_size == 1 + (q - 1) // r.e, f"{tag}: image {r.image_size}")
            c.check(r.B_measured == (r.e - 1) * (q - 1) // r.e, f"{tag}: B={r.B_measured}")
            c.check(r.bent_alphas_match, f"{tag}: bent components differ from alpha outside Im F")
            c.check(r.is_apn == (r.e == 3 and r.s == 2), f"{tag}: APN {r.is_apn}")
            # the absolute-value form of the predicted spectrum
            absvals = {abs(v) for v in r.spectrum_measured}
            expect = {0, 1 << ((r.n + r.s) // 2)} | (set() if r.e == 1 else {1 << (r.n // 2)})
            c.check(absvals == expect, f"{tag}: |spectrum| {sorted(absvals)}")
            # signed form; -2^n is absent when s = n (linear components)
            c.check(r.spectrum_measured == r.spectrum_predicted, f"{tag}: spectrum {r.spectrum_measured}")
        refined = [f"n={r.n} k={r.k}" for r in rows if r.s == r.n]
        c.notes.append("s = n rows carry only +2^n: " + ", ".join(refined))
    c.verdict()


# ---------------------------------------------------------------- 8, 9

def test_08_dimension_4():
    with Criterion(8, "x^3 over GF(2^4): APN, B=10") as c:
        r = vbf.census(cons.gold(4, 1))
        c.check(r.is_apn, "not APN")
        c.check(r.B == 10, f"B={r.B}")
    c.verdict()


def test_09_worked_example():
    with Criterion(9, "x5(x1x2+x3x4+1)+(1+x5)(x1x4+x2x3): balanced, N=12, dim V=0") as c:
        f = bf.from_anf("x5*x1*x2 + x5*x3*x4 + x5 + x1*x4 + x2*x3 + x5*x1*x4 + x5*x2*x3", 5)
        c.check(bf.is_balanced(f), "unbalanced")
        c.check(bf.nonlinearity(f) == 12, f"N={bf.nonlinearity(f)}")
        c.check(bf.linear_space(f).dim == 0, "nontrivial linear space")
        c.check(oracle.linear_space_naive(f).dim == 0, "oracle finds a linear structure")
    c.verdict()


# ---------------------------------------------------------------- 10

def test_10_constructions():
    with Criterion(10, "construction properties on 10^3 seeded instances each", limit=30.0) as c:
        rng = _rng(10)
        bad = {}

        def tally(key, ok):
            bad[key] = bad.get(key, 0) + (not ok)

        for i in range(1000):
            n = 3 + i % 7                                    # result on 4..10 variables
            try:
                f = cons.construction_1(bf.random_function(n - 1, rng), bf.random_function(n - 2, rng))
                tally("construction_1", bf.is_balanced(f))
            except InvariantViolation:
                tally("construction_1", False)

            n = 3 + i % 8
            depth = 1 + int(rng.integers(0, n // 2))
            inner = [bf.random_function(n - 2 * j, rng) for j in range(1, depth + 1)]
            try:
                f = cons.construction_2(inner, n, "f")
                fbar = cons.construction_2(inner, n, "fbar", int(rng.integers(0, 2)))
                tally("construction_2", bf.is_balanced(f) and not bf.is_balanced(fbar))
            except InvariantViolation:
                tally("construction_2", False)

            n = 2 * (1 + i % 4)
            g, h = cons.random_bent(n, rng), cons.random_bent(n, rng)
            try:
                f = cons.conv_product(g, h)
                amp = 1 << (n // 2 + 1)
                ok = set(np.abs(bf.walsh(f).values).tolist()) <= {0, amp}
                tally("bent_pair", ok and bf.is_balanced(f) == (bf.weight(g) != bf.weight(h)))
            except InvariantViolation:
                tally("bent_pair", False)

            n = 3 + i % 6
            g, h = bf.random_function(n, rng), bf.random_function(n, rng)
            f = cons.SplitSum(g, h).f
            tally("split_weight", bf.weight(f) == bf.weight(g + h) + bf.weight(h))

            n = 1 + i % 6
            s = cons.SplitSum(bf.random_function(n, rng), bf.random_function(n, rng))
            tally("derivative_decomposition",
                  all(cons.derivative_decomposition(s, lam).equal for lam in range(1 << (n + 1))))
        for key, count in bad.items():
            c.check(count == 0, f"{key}: {count} violations")
        c.notes.append(f"seed {SEED}; " + ", ".join(f"{k} 0/1000" for k in bad if not bad[k]))
    c.verdict()


# ---------------------------------------------------------------- 11

def test_11_oracle_equivalence():
    with Criterion(11, "fast Walsh/DDT/V(f)/APN equal the naive oracles, 10^3 per n in 3..8", limit=60.0) as c:
        rng = _rng(11)
        mismatches = 0
        for n in range(3, 9):
            for _ in range(1000):
                f = bf.random_function(n, rng)
                F = vbf.random_function(n, rng)
                mismatches += bf.walsh(f) != oracle.walsh_naive(f)
                mismatches += bf.linear_space(f) != oracle.linear_space_naive(f)
                mismatches += not (vbf.ddt(F).table == oracle.ddt_naive(F)).all()
                mismatches += vbf.is_apn(F) != oracle.apn_by_definition(F)
        apn_seen = 0
        for name in cons.catalog_names():
            F = cons.catalog(name)
            mismatches += not (vbf.ddt(F).table == oracle.ddt_naive(F)).all()
            mismatches += vbf.is_apn(F) != oracle.apn_by_definition(F)
            apn_seen += vbf.is_apn(F)
            for lam in range(1, F.size):
                f = vbf.component(F, lam)
                mismatches += bf.walsh(f) != oracle.walsh_naive(f)
                mismatches += bf.linear_space(f) != oracle.linear_space_naive(f)
        c.check(mismatches == 0, f"{mismatches} mismatches")
        c.check(apn_seen == len(cons.catalog_names()), "catalog APN count")
    c.verdict()


if __name__ == "__main__":
    import sys
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        if t is test_04_dimension_8:
            for name, B in (("Gprime", 174), ("Gdoubleprime", 178)):
                try:
                    t(name, B)
                except AssertionError:
                    pass
            continue
        try:
            t()
        except AssertionError:
            pass
    failed = [line for line in RESULTS.values() if " FAIL " in line]
    sys.exit(1 if failed else 0)
