"""Tabulate the quotient of every slice point Delta_eps in W_m and of sigma(Delta_eps) in S_(m+1).

Usage: python scripts/slice_quotients.py [p] [m]
"""

import itertools
import sys

from wittquot import ambient, constants_subring, delta_eps, quotient_s, quotient_w, sigma_embed

p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
m = int(sys.argv[2]) if len(sys.argv) > 2 else 2
small, big = ambient(p, m), ambient(p, m + 1)
for eps in itertools.product(range(p), repeat=m):
    x = delta_eps(eps, small)
    qw, qs = quotient_w(x), quotient_s(sigma_embed(x, big))
    print(f"eps={eps}  Phi_W={tuple(qw)}  Phi_S(sigma)={tuple(qs)}  dim B^x={len(constants_subring(x))}")
