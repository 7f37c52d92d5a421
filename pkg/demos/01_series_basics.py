"""
Truncated formal series in two variables
========================================

Composition, inversion and polarization, all in exact Gaussian-rational arithmetic.
"""

from formalnf.series import (
    FormalTransformation,
    HomogeneousMap,
    LinearMap,
    compose_truncated,
    format_map,
    invert_truncated,
    polarize_full,
)

# Phi(z, w) = (z + w^2, w + z^2), tangent to the identity, truncated at degree 5
quad = HomogeneousMap.from_terms(2, 2, [(0, (0, 2), 1), (1, (2, 0), 1)])
Phi = FormalTransformation(LinearMap.identity(2), {2: quad}, 5)
Psi = invert_truncated(Phi)
for d in range(2, 6):
    print(f"inverse, degree {d}:", format_map(Psi.term(d)))

# the inverse is two-sided up to the truncation order
print("Phi o Psi == I:", compose_truncated(Phi, Psi) == FormalTransformation.identity(2, 5))

# polarization recovers the map on the diagonal
cubic = HomogeneousMap.from_terms(2, 3, [(0, (2, 1), 3), (1, (0, 3), "1/2+i")])
z = (2, -1)


def show(vec):
    return "(" + ", ".join(map(str, vec)) + ")"


print("P(z)           =", show(cubic(*z)))
print("P~(z, z, z)    =", show(polarize_full(cubic, z, z, z)))
print("P~(e1, e1, e2) =", show(polarize_full(cubic, (1, 0), (1, 0), (0, 1))))
