"""Predictions for x^(2^k+1) next to exhaustive measurements."""

import time

from bfa import vbf

# %%
t0 = time.perf_counter()
rows = vbf.power_scan(10, n_min=4)
print(f"{len(rows)} rows in {time.perf_counter() - t0:.2f}s")
print(" n  k    e  s  image  B_pred  B_meas  apn  ok")
for r in rows:
    print(f"{r.n:2d} {r.k:2d} {r.e:4d} {r.s:2d} {r.image_size:6d} {r.B_predicted:7d} {r.B_measured:7d}"
          f"  {'y' if r.is_apn else '.'}    {'y' if r.ok else 'FAIL'}")

# %%
# When s = n some components are linear, so the spectrum has +2^n but no -2^n.
a = vbf.power_analyze(4, 2)
print(a.s, a.e, a.spectrum_measured)

# %%
# Odd n: only e, the image size and the permutation flag are predicted.
b = vbf.power_analyze(5, 1)
print(b.e, b.image_size, b.is_permutation, b.checks)
