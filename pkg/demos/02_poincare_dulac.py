"""
Poincare-Dulac normalization
============================

With Lambda = diag(2, 4) the only resonant monomial of degree >= 2 is z^2 e_2,
so every other term can be removed.
"""

import random

from formalnf.series import FormalTransformation, HomogeneousMap, LinearMap, format_map
from formalnf.renormalizer import pd_normalize, verify_conjugacy

rng = random.Random(7)
Lam = LinearMap.diagonal([2, 4])


def random_term(d):
    terms = [(j, (a, d - a), rng.randint(-3, 3)) for j in range(2) for a in range(d + 1)]
    return HomogeneousMap.from_terms(2, d, terms)


F = FormalTransformation(Lam, {d: random_term(d) for d in range(2, 6)}, 5)
res = pd_normalize(F)

print("F:", F)
print("G:", res.G)
for d in range(2, 5):
    print(f"H_{d}:", format_map(res.H(d)))

# the z^2 e_2 coefficient survives unchanged
print("z^2 e_2 in F and G:", F.term(2).coeff(1, (2, 0)), res.G.term(2).coeff(1, (2, 0)))
print("conjugacy holds:", verify_conjugacy(F, res.G, res.Phi))
