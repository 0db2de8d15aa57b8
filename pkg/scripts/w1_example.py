"""The W_1 example: (1+x)d and lambda x d have char. polynomial t^p - t.

Usage: python scripts/w1_example.py [p]
"""

import sys

from wittquot import Derivation, ambient, minimal_p_polynomial, phi_vector

p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
amb = ambient(p, 1)
x = amb.var(1)
elements = {"(1+x)d": Derivation.term(amb.one() + x, 1)}
elements.update({f"{lam}x d": Derivation.term(x.scale(lam), 1) for lam in range(1, p)})
for label, D in elements.items():
    print(f"{label:10s} phi = {list(phi_vector(D))}  minimal p-polynomial: {minimal_p_polynomial(D)}")
