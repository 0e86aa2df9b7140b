#!/usr/bin/env python
# coding: utf-8

# # Moebius values, Mertens sums and the theta-type series h(t)
#
# A short tour of the arithmetic layer. Everything downstream reads from one
# sieved table, so we build it once.

# In[1]:


import math

import numpy as np

from zetarecip import build_moebius, h_theta, m2, mertens, riesz_variant

table = build_moebius(10**6)
print(table)


# The first few values, and the Mertens function at powers of ten.

# In[2]:


print("mu(1..20) =", table.mu[1:21].tolist())
for k in (10, 100, 1000, 10**4, 10**5, 10**6):
    print(f"M({k:>7}) = {mertens(table, k):>4}")


# M2(x) sums mu(n) over n^2 <= x, with the value halved at x = 1. It is a step
# function that only moves at perfect squares.

# In[3]:


for x in (0.5, 1.0, 1.5, 4.0, 8.9, 9.0, 10.0, 10**6):
    print(f"M2({x:>9g}) = {m2(table, x)}")


# ## h(t) = sum mu(n) exp(-n^2 t)
#
# For large t the first term wins; as t shrinks, more terms are needed and
# the sum oscillates around zero.

# In[4]:


for t in (10.0, 1.0, 0.1, 1e-2, 1e-3, 1e-4):
    r = h_theta(table, t)
    print(f"h({t:<7g}) = {r.value: .12e}   terms={r.terms_used:<4} tail<={r.tail_estimate:.1e}")


# ## The Riesz-type variant
#
# sum mu(n) n^-2 exp(-t/n^2) starts at 6/pi^2 and decays as t grows.

# In[5]:


print("6/pi^2 =", 6 / math.pi**2)
for t in (0.0, 1.0, 1e2, 1e4, 1e6):
    print(f"t={t:<9g} value={riesz_variant(table, t).value: .10f}")


# In[6]:


ts = np.logspace(2, 8, 13)
vals = np.array([riesz_variant(table, t).value for t in ts])
# far inside the t^(-1/4) envelope over this range
for t, v in zip(ts, np.abs(vals) * ts**0.25):
    print(f"t={t:9.3g}  |value| t^(1/4) = {v:.3e}")
