"""
Complement ranks across the quadratic cases
===========================================

Ranks of (Im L_{F_2, Lambda} on degree d)^perp, first for Lambda = O over all
eleven quadratic models, then for the tangent-to-identity family 2_10rho as rho
moves through the resonance regimes.
"""

from fractions import Fraction

from formalnf.catalog import CaseId, LABELS, classify_regime, computed_complement, expected_complement

defaults = {"2_10rho": dict(rho=2), "2_11rho": dict(rho=4), "3_rho10": dict(rho=2),
            "3_rhotau1": dict(rho=2, tau=1)}
degrees = range(2, 8)

print("Lambda = O")
print(f"{'case':24s}" + "".join(f"{d:4d}" for d in degrees) + "  closed form")
for label in LABELS:
    case = CaseId(label, **defaults.get(label, {}))
    ranks = [computed_complement(case, "zero", d).rank for d in degrees]
    agree = all(expected_complement(case, "zero", d) == computed_complement(case, "zero", d) for d in degrees)
    print(f"{str(case):24s}" + "".join(f"{r:4d}" for r in ranks) + ("  match" if agree else "  MISMATCH"))

print()
print("Lambda = I, case 2_10rho")
print(f"{'rho':8s}{'regime':16s}" + "".join(f"{d:4d}" for d in degrees))
for rho in ["5", "2", "3", "3/2", "-1/2", "1", "2/3"]:
    r = Fraction(rho)
    label, params = classify_regime(r)
    regime = label + (" " + ",".join(f"{k}={v}" for k, v in params.items()) if params else "")
    ranks = [computed_complement(CaseId("2_10rho", r), "identity", d).rank for d in degrees]
    print(f"{rho:8s}{regime:16s}" + "".join(f"{x:4d}" for x in ranks))
