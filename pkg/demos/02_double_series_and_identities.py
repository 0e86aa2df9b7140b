#!/usr/bin/env python
# coding: utf-8

# # The double series h2 and the identities it enters
#
# h2(x) = sum over n, m of mu(n) mu(m) / (n^2 x + m^2). Small x is evaluated
# through h2(x) = h2(1/x) / x, so every call ends up summing at an argument
# of at least one.

# In[1]:


import math

from zetarecip import (
    DEFAULT_EVALUATOR as ev,
    H2Params,
    build_moebius,
    check_fourier_cosh,
    check_mellin_h,
    check_parseval,
    check_pnt_integral,
    h2,
    h2_iterated,
)

table = build_moebius(10**7)


# In[2]:


for x in (1e-4, 1e-2, 0.5, 1.0, 2.0, 100.0):
    r = h2(table, x, H2Params(1e-7))
    print(f"h2({x:<6g}) = {r.value: .12f}   tail~{r.tail_estimate:.1e}")
print("-12/pi^2 =", -12 / math.pi**2)


# The relation h2(x) = h2(1/x)/x is built into `h2`, so check it with the
# iterated sum evaluated directly at both arguments.

# In[3]:


for x in (2.0, 5.0, 10.0):
    a, b = h2_iterated(table, x), h2_iterated(table, 1 / x)
    print(f"x={x:<4g} h2(x)={a.value:.12f}  h2(1/x)/x={b.value / x:.12f}")


# ## Quadrature against series
#
# The Parseval check integrates h(xt) h(t); the Mellin check integrates h(t)
# against t^(s-1).

# In[4]:


for rep in (
    check_parseval(table, 1.0),
    check_mellin_h(table, 1.0),
    check_mellin_h(table, 0.75),
):
    print(rep.name, rep.params, f"lhs={rep.lhs:.12f} rhs={rep.rhs:.12f} pass={rep.passed}")


# ## Cosine transform of 1/(cosh(pi t) |zeta(1+2it)|^2)
#
# The stated normalisation carries a factor pi on the series side. The
# observed ratio shows where it fails; `form="corrected"` drops it.

# In[5]:


for x in (0.0, 1.0):
    s = check_fourier_cosh(table, x, ev=ev)
    c = check_fourier_cosh(table, x, ev=ev, form="corrected")
    print(f"x={x}: lhs={s.lhs:.10f} stated rhs={s.rhs:.10f} corrected rhs={c.rhs:.10f}")
    print("   ", s.notes[0])


# ## The arctan sums
#
# Integrating e^{-t/2} h2(e^{-t}) term by term gives 2S_N. Both sides are tiny
# because S_N = (pi/4) A_N^2 and A_N = sum mu(n)/n tends to zero.

# In[6]:


res = check_pnt_integral(table, 2000)
print(f"I = {res.I:.3e}, 2S = {res.twoS:.3e}")
for note in res.report.notes:
    print(" -", note)
