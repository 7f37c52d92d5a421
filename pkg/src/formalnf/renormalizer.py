"""Poincaré–Dulac and second-order normal forms of formal germs.

Both algorithms work degree by degree.  With ``Phi`` the conjugation built so
far and ``G_<d`` the normal form through degree ``d - 1``, the degree-``d``
residual is read off from ``Phi o G = F o Phi``::

    residual_d = {F o Phi}_d - {Phi o G_<d}_d

which avoids inverting ``Phi`` at every step.  Later corrections to ``Phi``
only touch degrees ``>= d``, so the terms already fixed stay fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactnum import ZERO
from .operators import (
    LPLambda,
    _lam_power,
    UnsupportedLinearPart,
    is_resonant,
    kernel_basis,
    operator_matrix,
    orthogonal_split,
    resonant_basis,
)
from .series import (
    FormalTransformation,
    HomogeneousMap,
    LinearMap,
    compose_truncated,
    monomials,
)

__all__ = [
    "DegreeDiagnostics",
    "NormalFormResult",
    "NotResonantError",
    "pd_normalize",
    "second_order_normalize",
    "verify_conjugacy",
    "first_discrepancy",
    "infinite_order_condition",
    "normalize",
]


class NotResonantError(ValueError):
    """Input to the second-order step is not resonant for its linear part."""


@dataclass(frozen=True)
class DegreeDiagnostics:
    d: int
    dim_im: int
    dim_ker: int
    complement_rank: int
    infinite_order_ok: bool | None

    def to_json(self) -> dict:
        return {"d": self.d, "dim_im": self.dim_im, "dim_ker": self.dim_ker,
                "complement_rank": self.complement_rank,
                "infinite_order_ok": self.infinite_order_ok}


@dataclass(frozen=True)
class NormalFormResult:
    """Normal form ``G``, conjugation ``Phi`` with ``G = Phi^-1 o F o Phi``.

    ``order`` is ``"pd"`` or ``"second"``; ``mu`` the degree of the first
    nonzero nonlinear term (``None`` if there is none through ``N``).
    For the second-order form, ``diagnostics[k]`` describes the target degree
    ``d`` and the operator on source degree ``d - mu + 1``; ranks are taken
    inside the resonant subspaces.
    """

    G: FormalTransformation
    Phi: FormalTransformation
    order: str
    N: int
    mu: int | None = None
    diagnostics: tuple = field(default=())

    def H(self, d: int) -> HomogeneousMap:
        return self.Phi.term(d)


def _require_diagonal(Lam: LinearMap):
    if not Lam.is_diagonal():
        raise UnsupportedLinearPart("the linear part must be diagonal (zero and identity included)")


def _residual(F, Phi, G_terms, d):
    """``{Phi^-1 o F o Phi}_d`` given the normal form through degree ``d - 1``."""
    G_low = FormalTransformation(F.linear, {k: H for k, H in G_terms.items() if k < d}, d)
    return compose_truncated(F, Phi, d).term(d) - compose_truncated(Phi, G_low, d).term(d)


def pd_normalize(F: FormalTransformation, N: int | None = None) -> NormalFormResult:
    """Remove every non-resonant monomial through degree ``N``.

    ``H_nu`` solves ``L_Lambda(H_nu)`` = non-resonant part of the residual and
    has no resonant component.
    """
    N = F.N if N is None else N
    if N > F.N:
        raise ValueError(f"degree {N} exceeds the truncation {F.N}")
    Lam = F.linear
    _require_diagonal(Lam)
    lam = Lam.diagonal_entries()
    F = F.truncate(N)
    n = F.n
    Phi = FormalTransformation.identity(n, N)
    G_terms = {}
    diags = []
    for nu in range(2, N + 1):
        R = _residual(F, Phi, G_terms, nu)
        mons = monomials(n, nu)
        g_rows, h_rows = [], []
        n_res = 0
        for j, row in enumerate(R.coeffs):
            g_row, h_row = [], []
            for Q, c in zip(mons, row):
                delta = _lam_power(lam, Q) - lam[j]
                if delta:
                    g_row.append(ZERO)
                    h_row.append(c / delta if c else ZERO)
                else:
                    n_res += 1
                    g_row.append(c)
                    h_row.append(ZERO)
            g_rows.append(g_row)
            h_rows.append(h_row)
        G_nu = HomogeneousMap(n, nu, g_rows)
        H_nu = HomogeneousMap(n, nu, h_rows)
        if G_nu:
            G_terms[nu] = G_nu
        if H_nu:
            Phi = Phi.with_term(H_nu)
        total = len(mons) * n
        diags.append(DegreeDiagnostics(nu, total - n_res, n_res, n_res, None))
    G = FormalTransformation(Lam, G_terms, N)
    Phi = FormalTransformation(Phi.linear, Phi.terms, N)
    if not verify_conjugacy(F, G, Phi, N):  # pragma: no cover - would be a bug
        raise AssertionError("Poincaré–Dulac output fails the conjugacy check")
    return NormalFormResult(G, Phi, "pd", N, F.order(), tuple(diags))


def second_order_normalize(F: FormalTransformation, N: int | None = None) -> NormalFormResult:
    """Second-order normal form of a resonant germ.

    For each ``d > mu`` the residual is split Fischer-orthogonally into a part
    in ``Im L_{F_mu, Lambda}`` on the resonant source degree ``d - mu + 1`` and
    its complement.  The complement part becomes ``G_d``; the image part is
    cancelled by the unique ``H`` orthogonal to the kernel.
    """
    N = F.N if N is None else N
    if N > F.N:
        raise ValueError(f"degree {N} exceeds the truncation {F.N}")
    Lam = F.linear
    _require_diagonal(Lam)
    F = F.truncate(N)
    if not is_resonant(Lam, F):
        raise NotResonantError("input is not resonant; run pd_normalize first")
    n = F.n
    mu = F.order()
    Phi = FormalTransformation.identity(n, N)
    if mu is None:
        return NormalFormResult(F, Phi, "second", N, None, ())
    F_mu = F.terms[mu]
    kind = LPLambda(F_mu, Lam)
    G_terms = {mu: F_mu}
    diags = []
    all_ok = True
    for d in range(mu + 1, N + 1):
        s = d - mu + 1
        M = operator_matrix(kind, resonant_basis(Lam, s))
        R = _residual(F, Phi, G_terms, d)
        h, _, G_d = orthogonal_split(M, R)
        if not is_resonant(Lam, G_d):  # pragma: no cover - would be a bug
            raise AssertionError(f"non-resonant normal form term at degree {d}")
        if G_d:
            G_terms[d] = G_d
        if h:
            Phi = Phi.with_term(h)
        dim_ker = kernel_basis(M).rank
        dim_im = M.source.rank - dim_ker
        target_res = resonant_basis(Lam, d).rank
        all_ok = all_ok and dim_ker == 0
        diags.append(DegreeDiagnostics(d, dim_im, dim_ker, target_res - dim_im, all_ok))
    G = FormalTransformation(Lam, G_terms, N)
    Phi = FormalTransformation(Phi.linear, Phi.terms, N)
    if not verify_conjugacy(F, G, Phi, N):  # pragma: no cover - would be a bug
        raise AssertionError("second-order output fails the conjugacy check")
    return NormalFormResult(G, Phi, "second", N, mu, tuple(diags))


def _common_degree(F, G, Phi, N):
    top = min(F.N, G.N, Phi.N)
    if N is None:
        return top
    if N > top:
        raise ValueError(f"degree {N} exceeds the available truncation {top}")
    return N


def verify_conjugacy(F: FormalTransformation, G: FormalTransformation,
                     Phi: FormalTransformation, N: int | None = None) -> bool:
    """``Phi o G == F o Phi`` through degree ``N``."""
    return first_discrepancy(F, G, Phi, N) is None


def first_discrepancy(F, G, Phi, N=None):
    """``None`` if conjugacy holds, else ``(d, coord, exponents, lhs, rhs)``.

    ``lhs`` is the coefficient in ``Phi o G`` and ``rhs`` the one in ``F o Phi``;
    ``d = 1`` with ``exponents`` a unit vector reports a linear mismatch.
    """
    if Phi.linear.flag != "identity":
        raise ValueError("the conjugation must have identity linear part")
    if len({F.n, G.n, Phi.n}) != 1:
        raise ValueError("dimension mismatch")
    N = _common_degree(F, G, Phi, N)
    left = compose_truncated(Phi, G, N)
    right = compose_truncated(F, Phi, N)
    for d in range(1, N + 1):
        a, b = left.term(d), right.term(d)
        if a != b:
            for j in range(F.n):
                for Q, x, y in zip(monomials(F.n, d), a.coeffs[j], b.coeffs[j]):
                    if x != y:
                        return d, j, Q, x, y
    return None


def infinite_order_condition(F2: HomogeneousMap, Lam: LinearMap, d_max: int) -> dict:
    """``{d: Ker L_{F2,Lam} on the resonant degree-d space is trivial}`` for ``2 <= d <= d_max``."""
    _require_diagonal(Lam)
    kind = LPLambda(F2, Lam)
    return {d: kernel_basis(operator_matrix(kind, resonant_basis(Lam, d))).rank == 0
            for d in range(2, d_max + 1)}


def normalize(F: FormalTransformation, order: str = "second", N: int | None = None) -> NormalFormResult:
    """``pd_normalize``, or ``pd_normalize`` followed by ``second_order_normalize``.

    The second-order step needs a resonant input; when ``F`` is not resonant its
    Poincaré–Dulac form is normalized instead and the two conjugations are
    composed.
    """
    if order == "pd":
        return pd_normalize(F, N)
    if order != "second":
        raise ValueError(f"order must be 'pd' or 'second', got {order!r}")
    N = F.N if N is None else N
    _require_diagonal(F.linear)
    if is_resonant(F.linear, F.truncate(N)):
        return second_order_normalize(F, N)
    first = pd_normalize(F, N)
    second = second_order_normalize(first.G, N)
    Phi = compose_truncated(first.Phi, second.Phi, N)
    if not verify_conjugacy(F.truncate(N), second.G, Phi, N):  # pragma: no cover
        raise AssertionError("composed conjugation fails the conjugacy check")
    return NormalFormResult(second.G, Phi, "second", N, second.mu, second.diagnostics)
