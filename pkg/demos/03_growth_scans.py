#!/usr/bin/env python
# coding: utf-8

# # Growth scans
#
# Envelope exponents of h2, the Mertens ratio |M2(x)| / x^(1/4+eps), and the
# weak Mertens integrals. These are tables of evidence, not pass/fail checks.

# In[1]:


from zetarecip import (
    DEFAULT_EVALUATOR as ev,
    build_moebius,
    h2_exponent_scan,
    hardy_littlewood_scan,
    mertens_growth_scan,
    weak_mertens_scan,
)

table = build_moebius(10**7)


# In[2]:


small = h2_exponent_scan(table, x_lo=1e-5, x_hi=1e-2, points=24, threads=4)
large = h2_exponent_scan(table, x_lo=1e2, x_hi=1e6, points=24, threads=4)
for name, scan in (("small x", small), ("large x", large)):
    f = scan.summary["fit"]
    print(f"{name}: slope {f.slope:.4f} +- {f.stderr:.4f} over {f.n_points} windows")


# The small-x values settle on the constant -12/pi^2 and the large-x values
# follow -12/(pi^2 x); the oscillating zero terms are far below both.

# In[3]:


for x, v, _ in small.rows[::6]:
    print(f"x={x:.2e} h2={v:.8f}")


# In[4]:


g = mertens_growth_scan(table, 1e12, epsilon=0.05)
print("max |M2(x)|/x^0.3 =", g.summary["max_ratio"], "at x =", g.summary["argmax_x"])


# In[5]:


w = weak_mertens_scan(table, 10**6, checkpoints=8)
print(w.columns)
for row in w.rows:
    print("  ".join(f"{v:12.6g}" for v in row))


# In[6]:


hl = hardy_littlewood_scan(ev, 1.0, 25.0, 7)
for x, v, scaled in hl.rows:
    print(f"x={x:7.3f}  sum={v: .6e}  |sum| x^(1/4)={scaled:.4f}")
