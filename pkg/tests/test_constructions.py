import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfa import boolfun as bf
from bfa import constructions as cons
from bfa import oracle, vbf
from bfa.errors import DomainError, ShapeError

from conftest import boolfuncs


def pairs(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(lambda n: st.tuples(boolfuncs(n, n), boolfuncs(n, n)))


# ---- split sums and the weight identity

def test_split_sum_layout():
    g, h = bf.from_anf("x1", 2), bf.from_anf("x2", 2)
    f = cons.split_sum(g, h)
    assert f == bf.from_anf("x3*x1 + x2", 3)
    assert cons.restrict_top(f, 0) == h
    assert cons.restrict_top(f, 1) == g + h


def test_split_sum_zero_g():
    h = bf.from_anf("x1*x2 + x3", 3)
    f = cons.split_sum(bf.constant(3, 0), h)
    assert f == cons.lift(h, 4)
    assert bf.weight(f) == 2 * bf.weight(h)


@given(pairs(1, 8))
@settings(max_examples=100, deadline=None)
def test_weight_factoring_identity(gh):
    g, h = gh
    f = cons.SplitSum(g, h).f
    assert bf.weight(f) == oracle.weight_by_evaluation(g + h) + oracle.weight_by_evaluation(h)


def test_weight_factoring_cases(rng):
    for n in range(2, 8):
        bal = bf.variable(n, 1)
        unbal = bf.from_anf("x1*x2", n)
        h = bal
        f = cons.split_sum(bal + h + bf.variable(n, 2), h)     # g + h = x2, h = x1
        assert bf.is_balanced(f)
        f = cons.split_sum(bf.variable(n, 2) + unbal, unbal)   # g + h balanced, h not
        assert not bf.is_balanced(f)


def test_split_sum_shape_errors():
    with pytest.raises(ShapeError):
        cons.split_sum(bf.constant(3, 0), bf.constant(4, 0))
    with pytest.raises(ShapeError):
        cons.SplitSum(bf.constant(16, 0), bf.constant(16, 0))


# ---- construction 1

def test_construction_1_n4(rng):
    for _ in range(50):
        f = cons.construction_1(bf.random_function(3, rng), bf.random_function(2, rng))
        assert f.n == 5 and bf.is_balanced(f)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_construction_1_bent_inner_trivial_space(n, rng):
    for _ in range(10):
        f = cons.construction_1(cons.random_bent(n - 1, rng), bf.random_function(n - 2, rng))
        assert bf.is_balanced(f)
        assert oracle.linear_space_naive(f).dim == 0


def test_construction_1_inner_product_family():
    for n in (3, 5, 7):
        f = cons.construction_1(cons.inner_product_quadratic(n - 1), bf.constant(n - 2, 0))
        assert bf.is_balanced(f) and bf.linear_space(f).dim == 0


def test_construction_1_shape_errors():
    with pytest.raises(ShapeError):
        cons.construction_1(bf.constant(3, 0), bf.constant(3, 0))
    with pytest.raises(ShapeError):
        cons.construction_1(bf.constant(1, 0), bf.constant(0, 0))


# ---- construction 2

def test_construction_2_zero_inner_is_quadratic():
    for n in (4, 5, 6, 7):
        for depth in range(1, n // 2 + 1):
            inner = [bf.constant(n - 2 * i, 0) for i in range(1, depth + 1)]
            f = cons.construction_2(inner, n, "f")
            # sum_{i<l} x_i x_{n-i+1} + x_{n-l+1}, written out directly
            expect = bf.variable(n, n - depth + 1)
            for i in range(1, depth):
                expect = expect + bf.variable(n, i) * bf.variable(n, n - i + 1)
            assert f == expect
            assert bf.degree(f) == (2 if depth > 1 else 1)


def test_construction_2_window_embedding():
    # g~_1 = x1 on its own window means x2 of the big space
    n = 5
    f = cons.construction_2([bf.variable(3, 1)], n, "f")
    assert f == bf.variable(n, 2) + bf.variable(n, n)


def test_construction_2_n6_depth2(rng):
    for _ in range(50):
        inner = [bf.random_function(4, rng), bf.random_function(2, rng)]
        assert bf.is_balanced(cons.construction_2(inner, 6, "f"))
        for c in (0, 1):
            assert not bf.is_balanced(cons.construction_2(inner, 6, "fbar", c))


def test_construction_2_errors():
    with pytest.raises(DomainError):
        cons.construction_2([bf.constant(4, 0)] * 4, 6)
    with pytest.raises(ShapeError):
        cons.construction_2([bf.constant(3, 0)], 6)
    with pytest.raises(DomainError):
        cons.construction_2([bf.constant(4, 0)], 6, variant="g")


# ---- convolutional products

def test_conv_product_equal_halves():
    h = bf.from_anf("x1*x2 + x3", 3)
    f = cons.conv_product(h, h)
    assert f == cons.lift(h, 4)
    assert bf.weight(f) == 2 * bf.weight(h)


def test_conv_product_restrictions(rng):
    g, h = bf.random_function(5, rng), bf.random_function(5, rng)
    f = cons.conv_product(g, h)
    assert cons.restrict_top(f, 1) == g and cons.restrict_top(f, 0) == h
    assert cons.ConvProduct(g, h).as_split_sum().f == f


def test_worked_example(worked_pair):
    g, h = worked_pair
    f = cons.conv_product(g, h)
    assert f == bf.from_anf("x5*x1*x2 + x5*x3*x4 + x5 + x1*x4 + x2*x3 + x5*x1*x4 + x5*x2*x3", 5)
    assert bf.is_balanced(f)
    assert bf.nonlinearity(f) == 12
    assert oracle.linear_space_naive(f).dim == 0


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_bent_pair_spectrum_and_balance(n, rng):
    amp = 1 << (n // 2 + 1)
    for _ in range(30):
        g, h = cons.random_bent(n, rng), cons.random_bent(n, rng)
        f = cons.conv_product(g, h)
        assert set(np.abs(bf.walsh(f).values).tolist()) <= {0, amp}
        assert bf.is_balanced(f) == (bf.weight(g) != bf.weight(h))
        if bf.weight(g) == bf.weight(h):
            assert bf.weight(f) in ((1 << n) + (1 << (n // 2)), (1 << n) - (1 << (n // 2)))


# ---- balanced cubics

def test_cubic_examples():
    g, h = bf.from_anf("x1*x2 + x3", 4), bf.from_anf("x2*x4 + x1", 4)
    assert cons.cubic_conv_balanced_test(g, h)
    g, h = bf.from_anf("x1*x2", 4), bf.from_anf("x3*x4 + x1", 4)
    assert not cons.cubic_conv_balanced_test(g, h)


def test_h_plus_one_with_identity_affinity():
    # g = h + 1 exactly: the product is x5 + h, balanced but only quadratic
    h = bf.from_anf("x1*x2 + x3*x4 + x1*x3", 4)
    f = cons.conv_product(h + 1, h)
    assert f == bf.variable(5, 5) + cons.lift(h, 5)
    assert bf.is_balanced(f) and bf.degree(f) == 2
    with pytest.raises(DomainError):
        cons.cubic_conv_balanced_test(h + 1, h)


def test_cubic_g_equals_h_plus_one_composed(rng):
    seen = 0
    for _ in range(60):
        n = int(rng.integers(3, 8))
        h = cons.random_quadratic(n, rng, balanced=False)
        g = cons.compose(h, cons.random_affinity(n, rng)) + 1
        if bf.degree(cons.ConvProduct(g, h).f) != 3:
            continue
        seen += 1
        assert cons.cubic_conv_balanced_test(g, h)
    assert seen > 10


def test_cubic_random_agrees_with_weight(rng):
    for _ in range(200):
        n = int(rng.integers(3, 8))
        g, h = cons.random_quadratic(n, rng), cons.random_quadratic(n, rng)
        if bf.degree(cons.ConvProduct(g, h).f) != 3:
            continue
        assert cons.cubic_conv_balanced_test(g, h) == (bf.weight(g) + bf.weight(h) == 1 << n)


def test_cubic_rejects_high_degree():
    with pytest.raises(DomainError):
        cons.cubic_conv_balanced_test(bf.from_anf("x1*x2*x3", 4), bf.from_anf("x1*x2", 4))
    with pytest.raises(DomainError):
        cons.cubic_conv_balanced_test(bf.from_anf("x1*x2", 4), bf.from_anf("x1*x2", 4))


# ---- derivative decomposition

@pytest.mark.parametrize("n", range(1, 6))
def test_derivative_decomposition_exhaustive(n, rng):
    for _ in range(4):
        s = cons.SplitSum(bf.random_function(n, rng), bf.random_function(n, rng))
        for lam in range(1 << (n + 1)):
            d = cons.derivative_decomposition(s, lam)
            assert d.equal
            assert d.lhs.table.tolist() == oracle.derivative_naive(s.f, lam)


def test_derivative_decomposition_special_directions(rng):
    n = 4
    g, h = bf.random_function(n, rng), bf.random_function(n, rng)
    s = cons.SplitSum(g, h)
    d = cons.derivative_decomposition(s, 1 << n)         # a = 0, a_{n+1} = 1
    assert d.lhs == cons.lift(g, n + 1)
    d = cons.derivative_decomposition(s, 0)
    assert d.lhs == bf.constant(n + 1, 0) == d.rhs
    with pytest.raises(DomainError):
        cons.derivative_decomposition(s, 1 << (n + 1))


# ---- certificates

def test_certificate_worked_example(worked_pair):
    g, h = worked_pair
    cert = cons.trivial_linear_space_certify(cons.conv_product(g, h), "conv-quadratic-bent", g, h)
    assert cert.passed, cert.clauses
    assert cert.witness is None and cert.nonlinearity == 12


@pytest.mark.parametrize("n", [2, 4, 6])
def test_certificate_split_bent(n, rng):
    for _ in range(10):
        g, h = cons.random_bent(n, rng), bf.random_function(n, rng)
        cert = cons.trivial_linear_space_certify(cons.split_sum(g, h), "split-bent", g, h)
        assert cert.passed


def test_certificate_construction_1(rng):
    g, h = cons.random_bent(4, rng), bf.random_function(3, rng)
    cert = cons.trivial_linear_space_certify(cons.construction_1(g, h), "construction-1", g, h)
    assert cert.passed


def test_certificate_bent_degree():
    g = cons.inner_product_quadratic(6)
    h = bf.from_anf("x1*x4 + x2*x5 + x3*x6 + x4*x5*x6", 6)
    assert bf.is_bent(h) and bf.degree(h) == 3
    f = cons.conv_product(g, h)
    cert = cons.trivial_linear_space_certify(f, "conv-bent-degree", g, h)
    assert cert.passed, cert.clauses
    assert bf.degree(f) == 4


def test_certificate_negative_control():
    g = bf.from_anf("x1*x2", 4)
    h = bf.from_anf("x1*x2 + x3", 4)
    f = cons.split_sum(g, h)              # x4 never appears: e_4 is a linear structure
    cert = cons.trivial_linear_space_certify(f, "split-bent", g, h)
    assert not cert.passed
    assert cert.witness is not None
    assert cert.witness in oracle.linear_space_naive(f)


def test_certificate_unknown_recipe():
    with pytest.raises(DomainError):
        cons.trivial_linear_space_certify(bf.constant(3, 0), "magic", bf.constant(2, 0), bf.constant(2, 0))


# ---- bent generators and affinities

def test_bent_mm_identity():
    f = cons.bent_mm(4, cons.Affinity.identity(4))
    assert f == bf.from_anf("x1*x2 + x3*x4")
    assert oracle.bent_by_derivatives(f)


def test_bent_mm_errors():
    with pytest.raises(DomainError):
        cons.bent_mm(5)
    with pytest.raises(DomainError):
        cons.Affinity(np.zeros((4, 4), dtype=np.uint8))


def test_affinity_matrix_then_shift():
    m = np.array([[1, 1], [0, 1]], dtype=np.uint8)      # y1 = x1 + x2, y2 = x2
    phi = cons.Affinity(m, shift=0b01)
    assert phi.apply(0b10).tolist() == 0b11 ^ 0b01
    assert phi.apply(0b01).tolist() == 0b01 ^ 0b01


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_random_bent_is_bent(n, rng):
    for _ in range(10):
        assert oracle.bent_by_derivatives(cons.random_bent(n, rng))


# ---- catalog

def test_catalog_listing():
    assert cons.catalog_names() == ["G", "Gdoubleprime", "Gprime", "dillon_F"]
    with pytest.raises(DomainError, match="unknown catalog entry"):
        cons.catalog("nope")


def test_catalog_entries_pure_quadratic(catalog_funcs):
    for name, F in catalog_funcs.items():
        entry = cons.catalog_entry(name)
        assert entry.poly.algebraic_degree == 2
        assert vbf.is_pure_quadratic(F)
        assert F.field is not None and F.field.conway


def test_dillon_polynomial_text():
    e = cons.catalog_entry("dillon_F")
    assert e.spec.n == 6
    assert [ex for _, ex in e.poly.terms] == [3, 5, 9, 17, 33, 48]


def test_catalog_dir_override(tmp_path):
    (tmp_path / "cube.txt").write_text("# field: n=4,mod=conway\nx^3\n")
    assert cons.catalog_names(tmp_path) == ["cube"]
    assert cons.catalog("cube", tmp_path) == cons.gold(4, 1)
    (tmp_path / "bad.txt").write_text("x^3\n")
    with pytest.raises(DomainError):
        cons.catalog("bad", tmp_path)


def test_gold_compiles_power():
    F = cons.gold(6, 1)
    spec = F.field
    assert F.outputs.tolist() == [spec.pow(x, 3) for x in range(64)]


@pytest.mark.parametrize("n", range(3, 9))
def test_weight_factoring_ten_thousand_pairs(n, rng):
    for _ in range(10_000):
        g, h = bf.random_function(n, rng), bf.random_function(n, rng)
        f = cons.SplitSum(g, h).f
        assert int(f.table.sum()) == int((g.table ^ h.table).sum()) + int(h.table.sum())
