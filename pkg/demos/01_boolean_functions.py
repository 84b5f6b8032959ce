"""Walsh spectra, linear structures and spectral classes of single Boolean functions."""

import numpy as np

from bfa import boolfun as bf

# %%
# Truth tables use x1 as the low bit of the index, so x1 alternates 0,1,0,1.
x1 = bf.variable(3, 1)
print(x1.table)
print(bf.to_hex(bf.from_anf("x1 + x2 + x3 + x4")))   # 6996

# %%
# The inner-product quadratic on four variables is bent: every |W(a)| is 4.
f = bf.from_anf("x1*x2 + x3*x4")
w = bf.walsh(f)
print(w.values)
print(bf.classify(f), bf.nonlinearity(f))

# %%
# Adding x3 to x1*x2 on three variables gives a linear structure along e3,
# a plateaued spectrum {0, +-4} and class semi-bent.
g = bf.from_anf("x1*x2 + x3", 3)
vs = bf.linear_space(g)
print(vs.basis, dict(vs.constants))
print(bf.classify(g), sorted(set(bf.walsh(g).values.tolist())))

# %%
# For a quadratic the amplitude is 2^((n + dim V)/2); check a few random ones.
from bfa.constructions import random_quadratic

rng = np.random.default_rng(3)
for _ in range(5):
    q = random_quadratic(6, rng)
    k = bf.linear_space(q).dim
    print(k, bf.classify(q), 1 << ((6 + k) // 2))

# %%
# Directions with balanced derivatives. Planting a linear structure caps |Gamma|.
h = bf.from_anf("x1*x2 + x3*x4 + x5", 6)
print(bf.sigma_one(h), len(bf.gamma_set(h)), 2 ** 6 - 4)
