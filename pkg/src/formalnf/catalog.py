"""Quadratic germs of the plane: the case catalog and its expected complements.

Each case fixes a quadratic term ``F_2``.  For ``Lambda = O`` (all eleven
cases) and ``Lambda = I`` (five of them) the catalog knows a closed-form
basis of the Fischer complement of ``Im L_{F_2,Lambda}`` on degree ``d``;
these are the golden values the computed complements are checked against.

Notation: ``D = d + 1`` is the target degree, ``u_j = (z^j w^(D-j), 0)`` and
``v_j = (0, z^j w^(D-j))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import ZERO, as_gaussian, as_rational, parse_rational, sqrt_if_exact
from .operators import LPLambda, SubspaceBasis, full_basis, image_complement, operator_matrix
from .series import FormalTransformation, HomogeneousMap, LinearMap, u, v

__all__ = [
    "LABELS",
    "CaseId",
    "UncoveredCase",
    "IrrationalClosedForm",
    "quadratic_case",
    "linear_part",
    "expected_complement",
    "computed_complement",
    "ResonanceSets",
    "resonance_sets",
    "E_set",
    "F_set",
    "in_script_E",
    "in_script_F",
    "classify_regime",
    "shape_check",
]

LABELS = ("inf", "1_00", "1_10", "1_11", "2_001", "2_011",
          "2_10rho", "2_11rho", "3_100", "3_rho10", "3_rhotau1")

_PARAMS = {"2_10rho": ("rho",), "2_11rho": ("rho",), "3_rho10": ("rho",),
           "3_rhotau1": ("rho", "tau")}

IDENTITY_LABELS = ("inf", "1_00", "1_10", "2_001", "2_10rho")


class UncoveredCase(LookupError):
    """No closed form is known for this (case, linear part, degree)."""


class IrrationalClosedForm(ValueError):
    """The closed form needs a square root that is not in Q(i)."""


@dataclass(frozen=True)
class CaseId:
    label: str
    rho: Fraction | None = None
    tau: Fraction | None = None

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown case {self.label!r}; expected one of {', '.join(LABELS)}")
        wanted = _PARAMS.get(self.label, ())
        for name in ("rho", "tau"):
            val = getattr(self, name)
            if name in wanted:
                if val is None:
                    raise ValueError(f"case {self.label} needs parameter {name}")
                object.__setattr__(self, name, as_rational(val))
            elif val is not None:
                raise ValueError(f"case {self.label} takes no parameter {name}")
        rho, tau = self.rho, self.tau
        if self.label in ("2_10rho", "2_11rho") and rho == 0:
            raise ValueError(f"case {self.label} requires rho != 0")
        if self.label == "3_rho10" and rho in (0, 1):
            raise ValueError("case 3_rho10 requires rho != 0, 1")
        if self.label == "3_rhotau1":
            if rho == 0 or tau == 0:
                raise ValueError("case 3_rhotau1 requires rho, tau != 0")
            if rho + tau == 1:
                raise ValueError("case 3_rhotau1 requires rho + tau != 1")

    @classmethod
    def parse(cls, text: str, rho=None, tau=None) -> "CaseId":
        """``"inf"``, ``"2_10rho:rho=2"``, ``"3_rhotau1:rho=2,tau=1"``."""
        label, _, rest = text.strip().partition(":")
        params = {"rho": rho, "tau": tau}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq or key.strip() not in params:
                raise ValueError(f"malformed case parameter {item!r}")
            params[key.strip()] = parse_rational(val.strip())
        if isinstance(params["rho"], str):
            params["rho"] = parse_rational(params["rho"])
        if isinstance(params["tau"], str):
            params["tau"] = parse_rational(params["tau"])
        wanted = _PARAMS.get(label.strip(), ())
        return cls(label.strip(), *(params[k] if k in wanted else None for k in ("rho", "tau")))

    def __str__(self):
        parts = [f"{k}={getattr(self, k)}" for k in ("rho", "tau") if getattr(self, k) is not None]
        return self.label + (":" + ",".join(parts) if parts else "")


def _quad(pairs) -> HomogeneousMap:
    """``pairs`` maps (coord, (i, j)) to the coefficient of ``z^i w^j``."""
    return HomogeneousMap.from_terms(2, 2, pairs)


def quadratic_case(case: CaseId) -> HomogeneousMap:
    """The quadratic term ``F_2`` of ``case``."""
    r, t = case.rho, case.tau
    zz, zw, ww = (2, 0), (1, 1), (0, 2)
    table = {
        "inf": {(0, zz): 1, (1, zw): 1},
        "1_00": {(1, zz): -1},
        "1_10": {(0, zz): -1, (1, zz): -1, (1, zw): -1},
        "1_11": {(0, zw): -1, (1, zz): -1, (1, ww): -1},
        "2_001": {(1, zw): 1},
        "2_011": {(0, zw): 1, (1, zw): 1, (1, ww): 1},
        "3_100": {(0, zz): 1, (0, zw): -1},
    }
    if case.label in table:
        return _quad(table[case.label])
    if case.label == "2_10rho":
        return _quad({(0, zz): -r, (1, zw): 1 - r})
    if case.label == "2_11rho":
        return _quad({(0, zz): r, (0, zw): 1, (1, zw): 1 + r, (1, ww): 1})
    if case.label == "3_rho10":
        return _quad({(0, zz): -r, (0, zw): r, (1, zw): 1 - r, (1, ww): r - 1})
    return _quad({(0, zz): -r, (0, zw): 1 - t, (1, zw): 1 - r, (1, ww): -t})


def linear_part(lambda_kind: str, n: int = 2) -> LinearMap:
    if lambda_kind == "zero":
        return LinearMap.zero(n)
    if lambda_kind == "identity":
        return LinearMap.identity(n)
    raise ValueError(f"lambda kind must be 'zero' or 'identity', got {lambda_kind!r}")


def computed_complement(case: CaseId, lambda_kind: str, d: int) -> SubspaceBasis:
    """``(Im L_{F_2,Lambda} on degree d)^perp`` by exact linear algebra."""
    kind = LPLambda(quadratic_case(case), linear_part(lambda_kind))
    return image_complement(operator_matrix(kind, full_basis(2, d)))


# ---------------------------------------------------------------------------
# generator helpers
# ---------------------------------------------------------------------------


def _comb(D, j):
    return math.comb(D, j) if 0 <= j <= D else 0


def _from_ab(a, b, D) -> HomogeneousMap:
    """``sum_j a_j u_{D,j} + b_j v_{D,j}``."""
    rows = [[ZERO] * (D + 1), [ZERO] * (D + 1)]
    for j in range(D + 1):
        # coefficient vectors run from z^D (j = D) down to w^D (j = 0)
        rows[0][D - j] = as_gaussian(a[j])
        rows[1][D - j] = as_gaussian(b[j])
    return HomogeneousMap(2, D, rows)


def _linear_power(alpha, D, cu, cv) -> HomogeneousMap:
    """``(cu * (alpha z + w)^D, cv * (alpha z + w)^D)``."""
    alpha = as_gaussian(alpha)
    coeffs = [alpha ** j * _comb(D, j) for j in range(D + 1)]
    return _from_ab([c * cu for c in coeffs], [c * cv for c in coeffs], D)


def _sqrt(q, what):
    s = sqrt_if_exact(q)
    if s is None:
        raise IrrationalClosedForm(f"closed form needs sqrt({what}) = sqrt({q}), which is not in Q(i)")
    return s


def _us(D, js):
    return [u(D, j) for j in js]


def _vs(D, js):
    return [v(D, j) for j in js]


# ---------------------------------------------------------------------------
# Lambda = O
# ---------------------------------------------------------------------------


def _zero_2_11rho(rho, d):
    D = d + 1
    if rho == -1:
        return [_linear_power(Fraction(1, 2), D, 1, Fraction(-1, 4)), v(D, D)]
    r = _sqrt(-rho, "-rho")
    rho_g = as_gaussian(rho)
    k = rho_g * (1 + rho_g)
    m = (r - rho_g) / k
    n = -(r + rho_g) / k
    gens = []
    for b0, b1 in ((1, 0), (0, 1)):
        b = []
        for j in range(D + 1):
            mj, nj = m ** j, n ** j
            br = k / D * (mj - nj) * b1 + (rho_g * (mj - nj) + r * (mj + nj)) * b0
            b.append(br * _comb(D, j) / (2 * r))
        a = [(3 * rho_g - 1) * b0 + 2 * k / D * b1, -2 * D * b0 - (1 + rho_g) * b1]
        for j in range(2, D + 1):
            a.append(b[j - 2] * Fraction(_comb(D, j), _comb(D, j - 2)) / rho_g)
        gens.append(_from_ab(a, b, D))
    return gens


def _zero_3_rho10(rho, d):
    D = d + 1
    gens = []
    for b0, b1 in ((1, 0), (0, 1)):
        b = [_comb(D, j) * (Fraction(j, D) * b1 - (j - 1) * b0) for j in range(D + 1)]
        a = [(rho - 1) / rho * _comb(D, j) * (Fraction(2 - j, D) * b1 + (j - 3) * b0)
             for j in range(D + 1)]
        gens.append(_from_ab(a, b, D))
    return gens


def _zero_3_rhotau1(rho, tau, d):
    D = d + 1
    if rho == 1 and tau == 1:
        return [u(D, 0), v(D, D)]
    if tau == 1:
        alpha = Fraction(2) / (1 - rho)
        return [u(D, 0), _linear_power(alpha, D, (1 - rho) ** 2 / (4 * rho), 1)]
    if rho == 1:
        s = (1 - tau) / 2
        return [v(D, D), _linear_power(s, D, 1, (1 - tau) ** 2 / (4 * tau))]
    S = _sqrt(rho * tau * (rho + tau - 1), "rho*tau*(rho+tau-1)")
    rg, tg = as_gaussian(rho), as_gaussian(tau)
    k = rg * (rg - 1)
    m = (S - rg * tg) / k
    n = -(S + rg * tg) / k

    def bracket(e, b0, b1):
        me, ne = m ** e, n ** e
        return k / D * (me - ne) * b1 + (rg * tg * (me - ne) + S * (me + ne)) * b0

    gens = []
    for b0, b1 in ((1, 0), (0, 1)):
        b = [bracket(j, b0, b1) * _comb(D, j) / (2 * S) for j in range(D + 1)]
        a = [bracket(j - 2, b0, b1) * _comb(D, j) * tg / (2 * rg * S) for j in range(D + 1)]
        gens.append(_from_ab(a, b, D))
    return gens


def _zero_rules(case: CaseId, d: int) -> list:
    D = d + 1
    rho, tau = case.rho, case.tau
    lab = case.label
    if lab in ("inf", "1_10"):
        return [u(D, 0), D * u(D, 1) - 2 * v(D, 0)]
    if lab == "1_00":
        return _us(D, range(D + 1)) + [v(D, 0)]
    if lab == "1_11":
        return [_linear_power(1, D, -2, 1), _linear_power(-1, D, 2, 1)]
    if lab == "2_001":
        return _us(D, range(D + 1))
    if lab == "2_011":
        return [D * u(D, d) - D * v(D, d) + 2 * v(D, D), u(D, D) - v(D, D)]
    if lab == "2_10rho":
        if rho == 1:
            return [u(D, 0)] + _vs(D, range(D + 1))
        return [u(D, 0), (rho - 1) * D * u(D, 1) - 2 * rho * v(D, 0)]
    if lab == "2_11rho":
        return _zero_2_11rho(rho, d)
    if lab == "3_100":
        return _vs(D, range(D + 1))
    if lab == "3_rho10":
        return _zero_3_rho10(rho, d)
    return _zero_3_rhotau1(rho, tau, d)


# ---------------------------------------------------------------------------
# Lambda = I
# ---------------------------------------------------------------------------


def _identity_2_10rho(rho, d):
    D = d + 1
    if rho == 1:
        return [u(D, 0), u(D, 3), v(D, 0), v(D, 1)]
    if d == 2:
        if rho == -1:
            raise UncoveredCase("2_10rho with rho = -1 at d = 2 falls under two rules at once")
        return [u(3, 0), u(3, 3), 3 * (1 - rho) * u(3, 1) + 2 * v(3, 0)]
    generic = [u(D, 0), (1 - rho) * D * u(D, 1) + (d * (1 - rho) + 2 * rho) * v(D, 0)]
    label, params = classify_regime(rho)
    if label == "ii":
        n = params["n"]
        if d == n + 2:
            return [u(D, 0), u(D, 2), (1 - rho) * D * u(D, 1) + v(D, 0)]
        if d == 2 * (n + 1):
            return [u(D, 0), u(D, 1)]
    elif label == "iii":
        if d == params["m"] + 2:
            return [u(D, 0), u(D, 1)]
    elif label == "iv":
        if d == params["n"] + 1:
            return generic + [v(D, D)]
    elif label == "vi":
        a, b = params["a"], params["b"]
        if (d - 1) % b == 0:
            ell = (d - 1) // b
            return generic + [(b - a) * (a * ell + 1) * u(D, (b - a) * ell + 2)
                              + a * ((b - a) * ell + 2) * v(D, (b - a) * ell + 1)]
        if (d - 2) % b == 0:
            ell = (d - 2) // b
            return generic + [u(D, (b - a) * ell + 3)]
    return generic


def _identity_rules(case: CaseId, d: int) -> list:
    D = d + 1
    lab = case.label
    if lab == "inf":
        if d == 2:
            return _us(3, range(4))
        return [u(D, 0), D * u(D, 1) + (d - 2) * v(D, 0)]
    if lab == "1_00":
        return [u(D, 0), u(D, 1), v(D, 0), u(D, 2) + v(D, 1)]
    if lab == "1_10":
        if d == 2:
            return [u(3, 0), u(3, 1), 3 * u(3, 2) + 2 * v(3, 0)]
        return [u(D, 0), D * u(D, 1) + (d - 2) * v(D, 0)]
    if lab == "2_001":
        return [u(D, 0), u(D, D), D * u(D, 1) + d * v(D, 0)]
    if lab == "2_10rho":
        return _identity_2_10rho(case.rho, d)
    raise UncoveredCase(f"no closed form for case {case} with Lambda = I")


def expected_complement(case: CaseId, lambda_kind: str, d: int) -> SubspaceBasis:
    """Closed-form basis of ``(Im L_{F_2,Lambda} on degree d)^perp`` (target degree ``d + 1``)."""
    if d < 2:
        raise UncoveredCase("closed forms start at source degree 2")
    if lambda_kind == "zero":
        gens = _zero_rules(case, d)
    elif lambda_kind == "identity":
        gens = _identity_rules(case, d)
    else:
        raise UncoveredCase(f"no closed forms for lambda kind {lambda_kind!r}")
    return SubspaceBasis(2, d + 1, gens)


# ---------------------------------------------------------------------------
# resonance sets for 2_10rho with Lambda = I
# ---------------------------------------------------------------------------


def E_set(d: int) -> frozenset:
    if d < 2:
        raise ValueError("E_d is defined for d >= 2")
    return frozenset(Fraction(d - j - 1, d - 1) for j in range(d + 1)) - {Fraction(0)}


def F_set(d: int) -> frozenset:
    if d < 3:
        raise ValueError("F_d is defined for d >= 3")
    return frozenset(Fraction(d - j, d - 2) for j in range(d))


def in_script_E(rho) -> bool:
    """``rho in ((0,1] cap Q) cup {-1/n}``."""
    rho = as_rational(rho)
    return 0 < rho <= 1 or (rho < 0 and rho.numerator == -1)


def in_script_F(rho) -> bool:
    """``rho in ((0,1] cap Q) cup {1 + 1/n, 1 + 2/n}``."""
    rho = as_rational(rho)
    if 0 < rho <= 1:
        return True
    if rho > 1:
        return (rho - 1).numerator in (1, 2)
    return False


def classify_regime(rho) -> tuple:
    """Regime label ``'i'``..``'vi'`` and its integer parameters."""
    rho = as_rational(rho)
    if rho == 0:
        raise ValueError("rho must be nonzero")
    if rho == 1:
        return "v", {}
    if 0 < rho < 1:
        return "vi", {"a": rho.numerator, "b": rho.denominator}
    if rho < 0 and rho.numerator == -1:
        return "iv", {"n": rho.denominator}
    if rho > 1:
        t = rho - 1
        if t.numerator == 1:
            return "ii", {"n": t.denominator}
        if t.numerator == 2:
            return "iii", {"m": t.denominator}
    return "i", {}


@dataclass(frozen=True)
class ResonanceSets:
    rho: Fraction
    d_max: int
    E: dict = field(default_factory=dict)
    F: dict = field(default_factory=dict)
    in_E: bool = False
    in_F: bool = False
    regime: str = "i"
    regime_params: dict = field(default_factory=dict)

    def E_degrees(self) -> list:
        """Degrees ``d`` with ``rho in E_d``."""
        return [d for d, s in self.E.items() if self.rho in s]

    def F_degrees(self) -> list:
        return [d for d, s in self.F.items() if self.rho in s]


def resonance_sets(rho, d_max: int) -> ResonanceSets:
    rho = as_rational(rho)
    if rho == 0:
        raise ValueError("rho must be nonzero")
    label, params = classify_regime(rho)
    return ResonanceSets(
        rho=rho,
        d_max=d_max,
        E={d: E_set(d) for d in range(2, d_max + 1)},
        F={d: F_set(d) for d in range(3, d_max + 1)},
        in_E=in_script_E(rho),
        in_F=in_script_F(rho),
        regime=label,
        regime_params=params,
    )


# ---------------------------------------------------------------------------
# shape check
# ---------------------------------------------------------------------------


def shape_check(case: CaseId, lambda_kind: str, G: FormalTransformation) -> bool:
    """Every ``G_d`` with ``d > 2`` lies in the expected complement of degree ``d``."""
    if G.n != 2:
        raise ValueError("the catalog is two-dimensional")
    for d in range(3, G.N + 1):
        H = G.term(d)
        if not expected_complement(case, lambda_kind, d - 1).contains(H):
            return False
    return True
