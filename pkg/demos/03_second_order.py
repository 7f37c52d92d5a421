"""
Second-order normal form of a superattracting germ
==================================================

F = (z^2, zw) + higher order terms with zero linear part. Past degree 2 the
normal form keeps only terms orthogonal to the image of L_{F_2, O}, which is a
two-dimensional space spanned by w^(d+1) e_1 and (d+1) z w^d e_1 - 2 w^(d+1) e_2
in every degree.
"""

import random

from formalnf.catalog import CaseId, expected_complement, quadratic_case, shape_check
from formalnf.renormalizer import second_order_normalize, verify_conjugacy
from formalnf.series import FormalTransformation, HomogeneousMap, LinearMap, format_map

rng = random.Random(3)
case = CaseId("inf")


def random_term(d):
    terms = [(j, (a, d - a), rng.randint(-2, 2)) for j in range(2) for a in range(d + 1)]
    return HomogeneousMap.from_terms(2, d, terms)


F = FormalTransformation(LinearMap.zero(2), {2: quadratic_case(case)}, 6)
for d in range(3, 7):
    F = F.with_term(random_term(d))

res = second_order_normalize(F)
print(" d  dim_im  dim_ker  compl  G_d")
for dg in res.diagnostics:
    print(f"{dg.d:2d}  {dg.dim_im:6d}  {dg.dim_ker:7d}  {dg.complement_rank:5d}  {format_map(res.G.term(dg.d))}")

# every G_d sits in the closed-form complement
for d in range(3, 7):
    print(f"G_{d} in closed-form span:", res.G.term(d) in expected_complement(case, "zero", d - 1))
print("shape check:", shape_check(case, "zero", res.G))
print("conjugacy holds:", verify_conjugacy(F, res.G, res.Phi))
