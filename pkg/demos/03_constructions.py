"""Balanced constructions, convolutional products and certificates."""

import numpy as np

from bfa import boolfun as bf
from bfa import constructions as cons

rng = np.random.default_rng(11)

# %%
# Built from a bent inner function, construction 1 is balanced with V(f) = {0}.
g = cons.random_bent(4, rng)
f = cons.construction_1(g, bf.random_function(3, rng))
print(f.n, bf.weight(f), bf.linear_space(f).dim)

# %%
# Construction 2, depth 2 on six variables, both variants.
inner = [bf.random_function(4, rng), bf.random_function(2, rng)]
for variant in ("f", "fbar"):
    f = cons.construction_2(inner, 6, variant)
    print(variant, bf.weight(f))

# %%
# Two quadratic bents related through h + 1, glued along x5.
g = bf.from_anf("x1*x2 + x3*x4 + 1")
h = bf.from_anf("x1*x4 + x2*x3")
f = cons.conv_product(g, h)
print(bf.anf(f))
print(bf.is_balanced(f), bf.nonlinearity(f), bf.linear_space(f).dim)
cert = cons.trivial_linear_space_certify(f, "conv-quadratic-bent", g, h)
for clause, ok in cert.clauses.items():
    print(f"  {clause:24s} {ok}")

# %%
# Products of random bent pairs sit on {0, +-2^(n/2+1)}.
for _ in range(4):
    a, b = cons.random_bent(6, rng), cons.random_bent(6, rng)
    p = cons.conv_product(a, b)
    print(sorted(set(np.abs(bf.walsh(p).values).tolist())), bf.is_balanced(p))

# %%
# The derivative of a split sum against its expression in g and h.
s = cons.SplitSum(bf.random_function(4, rng), bf.random_function(4, rng))
print(all(cons.derivative_decomposition(s, lam).equal for lam in range(32)))
