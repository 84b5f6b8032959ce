"""GF(2^n) arithmetic and compiling univariate polynomials into S-boxes."""

from bfa import gf2n

# %%
spec = gf2n.field(6)
print(spec, spec.generator)
print([spec.pow(spec.generator, k) for k in range(8)])

# %%
# The trace form turns Tr(alpha * y) into a dot product lambda . y.
alpha = spec.z(5)
lam = spec.trace_form(alpha)
print(alpha, lam, all(spec.trace(spec.mul(alpha, y)) == bin(lam & y).count("1") % 2 for y in range(64)))

# %%
# gcd data for x^(2^k + 1): m = (n, k), s = (n, 2k), e = (2^n - 1, 2^k + 1)
for k in range(1, 6):
    print(k, gf2n.gcd_pow2(6, k))

# %%
# A sextic with generator-power coefficients, compiled to its value table.
p = gf2n.parse_poly("x^3 + z^11*x^5 + z^13*x^9 + x^17 + z^11*x^33 + x^48", spec)
F = gf2n.compile_poly(p, spec)
print(p.format(spec))
print(F.outputs[:16])

# %%
# Reducible moduli are refused with the factor found.
try:
    gf2n.field(6, 0b1000001)
except gf2n.FieldError as exc:
    print(exc)
