"""Conjugation operators, resonant subspaces and the Fischer product.

Everything here works on the dense coefficient vectors of
:class:`~formalnf.series.HomogeneousMap`: coordinate ``j`` occupies the block
``j*m .. (j+1)*m - 1`` where ``m`` is the number of degree-``d`` monomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .exactnum import ONE, ZERO, GaussianRational
from .series import (
    FormalTransformation,
    HomogeneousMap,
    LinearMap,
    Polynomial,
    monomials,
    space_dim,
)

__all__ = [
    "FischerMetric",
    "fischer_inner",
    "l_lambda",
    "l_p_lambda",
    "LLambda",
    "LPLambda",
    "SubspaceBasis",
    "OperatorMatrix",
    "full_basis",
    "resonant_basis",
    "is_resonant",
    "operator_matrix",
    "image_complement",
    "kernel_basis",
    "orthogonal_split",
    "UnsupportedLinearPart",
]


class UnsupportedLinearPart(ValueError):
    """The linear part is outside what an operation supports (e.g. not diagonal)."""


# ---------------------------------------------------------------------------
# Fischer product
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _weights(n: int, d: int) -> tuple:
    per_mono = tuple(Fraction(math.prod(math.factorial(q) for q in Q), math.factorial(d))
                     for Q in monomials(n, d))
    return per_mono * n


class FischerMetric:
    """Diagonal Hermitian metric on degree-``d`` maps of C^n.

    The weight of ``z^Q e_j`` is ``q_1! ... q_n! / |Q|!``, independent of ``j``.
    """

    __slots__ = ("n", "d", "weights")

    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        self.weights = _weights(n, d)

    def weight(self, exps) -> Fraction:
        if sum(exps) != self.d:
            raise ValueError(f"monomial {tuple(exps)} is not of degree {self.d}")
        return Fraction(math.prod(math.factorial(q) for q in exps), math.factorial(self.d))

    def inner(self, x, y) -> GaussianRational:
        """``sum w_k x_k conj(y_k)``; conjugate-linear in ``y``."""
        acc = ZERO
        for w, a, b in zip(self.weights, x, y):
            if a and b:
                acc = acc + a * b.conjugate() * w
        return acc

    def __eq__(self, other):
        return isinstance(other, FischerMetric) and (self.n, self.d) == (other.n, other.d)

    def __hash__(self):
        return hash(("FischerMetric", self.n, self.d))


def fischer_inner(P: HomogeneousMap, Q: HomogeneousMap) -> GaussianRational:
    if (P.n, P.d) != (Q.n, Q.d):
        raise ValueError(f"shape mismatch: (n={P.n}, d={P.d}) vs (n={Q.n}, d={Q.d})")
    return FischerMetric(P.n, P.d).inner(P.vector, Q.vector)


# ---------------------------------------------------------------------------
# the operators themselves
# ---------------------------------------------------------------------------


def _check_dim(*objs):
    dims = {o.n for o in objs}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")


def l_lambda(Lam: LinearMap, H: HomogeneousMap) -> HomogeneousMap:
    """``H o Lam - Lam H``."""
    _check_dim(Lam, H)
    if Lam.is_diagonal():
        lam = Lam.diagonal_entries()
        rows = []
        for j, row in enumerate(H.coeffs):
            out = []
            for Q, c in zip(monomials(H.n, H.d), row):
                out.append(c * (_lam_power(lam, Q) - lam[j]) if c else c)
            rows.append(out)
        return HomogeneousMap(H.n, H.d, rows)
    return H.compose_linear(Lam) - H.apply_linear(Lam)


def _lam_power(lam, Q) -> GaussianRational:
    out = ONE
    for x, q in zip(lam, Q):
        if q:
            out = out * x ** q
    return out


def _linear_polys(Lam: LinearMap) -> list:
    n = Lam.n
    zs = [Polynomial.variable(n, k) for k in range(n)]
    return [sum((zs[j] * Lam.matrix[i][j] for j in range(n) if Lam.matrix[i][j]),
                Polynomial(n)) for i in range(n)]


def l_p_lambda(P: HomogeneousMap, Lam: LinearMap, H: HomogeneousMap) -> HomogeneousMap:
    """``(Jac H)(Lam z) . P(z) - (Jac P)(z) . H(z)``, of degree ``d + mu - 1``."""
    _check_dim(P, Lam, H)
    n = H.n
    target = H.d + P.d - 1
    lz = _linear_polys(Lam)
    JH = H.jacobian()
    JP = P.jacobian()
    Pc = P.components()
    Hc = H.components()
    out = []
    for i in range(n):
        acc = Polynomial(n)
        for k in range(n):
            if not JH[i][k].is_zero() and not Pc[k].is_zero():
                acc = acc + JH[i][k](*lz) * Pc[k]
            if not JP[i][k].is_zero() and not Hc[k].is_zero():
                acc = acc - JP[i][k] * Hc[k]
        out.append(acc)
    return HomogeneousMap.from_polynomials(out, target)


@dataclass(frozen=True)
class LLambda:
    """``L_Lambda`` as an operator kind."""

    Lam: LinearMap

    @property
    def n(self) -> int:
        return self.Lam.n

    def target_degree(self, d: int) -> int:
        return d

    def __call__(self, H: HomogeneousMap) -> HomogeneousMap:
        return l_lambda(self.Lam, H)

    def describe(self) -> str:
        return "L_Lambda"


@dataclass(frozen=True)
class LPLambda:
    """``L_{P,Lambda}`` as an operator kind."""

    P: HomogeneousMap
    Lam: LinearMap

    def __post_init__(self):
        _check_dim(self.P, self.Lam)

    @property
    def n(self) -> int:
        return self.Lam.n

    def target_degree(self, d: int) -> int:
        return d + self.P.d - 1

    def __call__(self, H: HomogeneousMap) -> HomogeneousMap:
        return l_p_lambda(self.P, self.Lam, H)

    def describe(self) -> str:
        return "L_{P,Lambda}"


@lru_cache(maxsize=4096)
def _monomial_columns(kind, d: int) -> tuple:
    """Images of the monomial basis of degree ``d`` (as coefficient vectors)."""
    n = kind.n
    cols = []
    for j in range(n):
        for Q in monomials(n, d):
            cols.append(kind(HomogeneousMap.monomial(n, j, Q)).vector)
    return tuple(cols)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class SubspaceBasis:
    """A subspace of degree-``d`` maps, kept in reduced echelon form.

    ``vectors`` is the canonical echelon basis; ``generators`` holds the maps
    the subspace was built from, for display.
    """

    __slots__ = ("n", "d", "generators", "vectors", "_rows", "_pivots")

    def __init__(self, n: int, d: int, vectors=()):
        gens = []
        for vec in vectors:
            if isinstance(vec, HomogeneousMap):
                if (vec.n, vec.d) != (n, d):
                    raise ValueError(f"vector of shape (n={vec.n}, d={vec.d}) in a degree-{d} subspace")
                gens.append(vec)
            else:
                gens.append(HomogeneousMap.from_vector(n, d, vec))
        self.n = n
        self.d = d
        self.generators = tuple(gens)
        rows, pivots = _linalg.rref([g.vector for g in gens], space_dim(n, d))
        self._rows = tuple(tuple(r) for r in rows)
        self._pivots = tuple(pivots)
        self.vectors = tuple(HomogeneousMap.from_vector(n, d, r) for r in self._rows)

    @classmethod
    def full(cls, n: int, d: int) -> "SubspaceBasis":
        return full_basis(n, d)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def degree(self) -> int:
        return self.d

    @property
    def independent(self) -> bool:
        """Whether the generators were linearly independent."""
        return self.rank == len(self.generators)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __len__(self):
        return self.rank

    def __iter__(self):
        return iter(self.vectors)

    def _reduce(self, vec) -> list:
        x = list(vec)
        for row, p in zip(self._rows, self._pivots):
            f = x[p]
            if f:
                x = [a - f * b if b else a for a, b in zip(x, row)]
        return x

    def contains(self, H) -> bool:
        vec = H.vector if isinstance(H, HomogeneousMap) else H
        if isinstance(H, HomogeneousMap) and (H.n, H.d) != (self.n, self.d):
            raise ValueError("shape mismatch")
        return not any(self._reduce(vec))

    def __contains__(self, H):
        return self.contains(H)

    def span_equals(self, other: "SubspaceBasis") -> bool:
        return (self.n, self.d, self._rows) == (other.n, other.d, other._rows)

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.span_equals(other)

    def __hash__(self):
        return hash((self.n, self.d, self._rows))

    def __repr__(self):
        return f"SubspaceBasis(n={self.n}, d={self.d}, rank={self.rank})"


@lru_cache(maxsize=None)
def full_basis(n: int, d: int) -> SubspaceBasis:
    return SubspaceBasis(n, d, [HomogeneousMap.monomial(n, j, Q)
                                for j in range(n) for Q in monomials(n, d)])


def _resonant_monomials(Lam: LinearMap, d: int) -> list:
    if not Lam.is_diagonal():
        raise UnsupportedLinearPart("resonant monomials are only defined here for diagonal linear parts")
    lam = Lam.diagonal_entries()
    return [(j, Q) for j in range(Lam.n) for Q in monomials(Lam.n, d)
            if _lam_power(lam, Q) == lam[j]]


def resonant_basis(Lam: LinearMap, d: int) -> SubspaceBasis:
    """Span of the monomials ``z^Q e_j`` of degree ``d`` with ``Lam^Q = lambda_j``."""
    n = Lam.n
    return SubspaceBasis(n, d, [HomogeneousMap.monomial(n, j, Q)
                                for j, Q in _resonant_monomials(Lam, d)])


def is_resonant(Lam: LinearMap, F) -> bool:
    """Whether ``F o Lam = Lam F`` (termwise through the truncation)."""
    if isinstance(F, HomogeneousMap):
        return l_lambda(Lam, F).is_zero()
    if isinstance(F, LinearMap):
        return F @ Lam == Lam @ F
    if isinstance(F, FormalTransformation):
        return (F.linear @ Lam == Lam @ F.linear
                and all(l_lambda(Lam, H).is_zero() for H in F.terms.values()))
    raise TypeError(f"cannot test resonance of {type(F).__name__}")


# ---------------------------------------------------------------------------
# operator matrices
# ---------------------------------------------------------------------------


class OperatorMatrix:
    """Matrix of an operator on a source subspace, in monomial target coordinates.

    ``matrix[t][k]`` is coordinate ``t`` of the image of ``source.vectors[k]``.
    """

    __slots__ = ("kind", "n", "d_src", "d_tgt", "source", "matrix")

    def __init__(self, kind, source: SubspaceBasis, matrix):
        self.kind = kind
        self.n = source.n
        self.d_src = source.d
        self.d_tgt = kind.target_degree(source.d)
        self.source = source
        self.matrix = tuple(tuple(r) for r in matrix)
        if len(self.matrix) != space_dim(self.n, self.d_tgt):
            raise ValueError("matrix row count does not match target dimension")

    @property
    def shape(self) -> tuple:
        return (space_dim(self.n, self.d_tgt), self.source.rank)

    def columns(self) -> list:
        return _linalg.transpose(self.matrix, self.source.rank)

    def column_maps(self) -> list:
        return [HomogeneousMap.from_vector(self.n, self.d_tgt, c) for c in self.columns()]

    def rank(self) -> int:
        return _linalg.rank(self.columns(), space_dim(self.n, self.d_tgt))

    def apply(self, y) -> HomogeneousMap:
        return HomogeneousMap.from_vector(self.n, self.d_tgt, _linalg.matvec(self.matrix, y))

    def image(self) -> SubspaceBasis:
        return SubspaceBasis(self.n, self.d_tgt, self.columns())

    def __repr__(self):
        return f"OperatorMatrix({self.kind.describe()}, {self.d_src} -> {self.d_tgt}, shape={self.shape})"


def operator_matrix(kind, source) -> OperatorMatrix:
    """Matrix of ``kind`` (an :class:`LLambda` or :class:`LPLambda`) on ``source``.

    ``source`` is a :class:`SubspaceBasis` or an integer degree (full space).
    """
    if isinstance(source, int):
        source = full_basis(kind.n, source)
    if source.n != kind.n:
        raise ValueError(f"dimension mismatch: {source.n} vs {kind.n}")
    cols_full = _monomial_columns(kind, source.d)
    T = space_dim(kind.n, kind.target_degree(source.d))
    cols = []
    for vec in source.rows:
        col = [ZERO] * T
        for c, img in zip(vec, cols_full):
            if c:
                col = [a + c * b if b else a for a, b in zip(col, img)]
        cols.append(col)
    return OperatorMatrix(kind, source, _linalg.transpose(cols, T) if cols else [[] for _ in range(T)])


def _constraint_rows(cols, weights) -> list:
    # <x, c> = sum_t w_t x_t conj(c_t) = 0
    return [[c.conjugate() * w if c else ZERO for c, w in zip(col, weights)] for col in cols]


def image_complement(M: OperatorMatrix, metric: FischerMetric | None = None) -> SubspaceBasis:
    """Fischer-orthogonal complement of the column space of ``M`` in the full target."""
    if metric is None:
        metric = FischerMetric(M.n, M.d_tgt)
    if (metric.n, metric.d) != (M.n, M.d_tgt):
        raise ValueError("metric degree must equal the target degree")
    T = space_dim(M.n, M.d_tgt)
    null = _linalg.nullspace(_constraint_rows(M.columns(), metric.weights), T)
    return SubspaceBasis(M.n, M.d_tgt, null)


def kernel_basis(M: OperatorMatrix) -> SubspaceBasis:
    """Kernel of ``M`` as a subspace of the source degree."""
    r = M.source.rank
    null = _linalg.nullspace(M.matrix, r)
    S = space_dim(M.n, M.d_src)
    vecs = []
    for y in null:
        x = [ZERO] * S
        for c, row in zip(y, M.source.rows):
            if c:
                x = [a + c * b if b else a for a, b in zip(x, row)]
        vecs.append(x)
    return SubspaceBasis(M.n, M.d_src, vecs)


def _gram_solve(vectors, weights, rhs_vec):
    """Coefficients ``c`` with ``sum c_b v_b`` the Fischer projection of ``rhs_vec``."""
    k = len(vectors)
    conj = [[x.conjugate() * w if x else ZERO for x, w in zip(v, weights)] for v in vectors]
    A = [[_dot(conj[a], vectors[b]) for b in range(k)] for a in range(k)]
    rhs = [_dot(conj[a], rhs_vec) for a in range(k)]
    y = _linalg.solve(A, rhs, k)
    if y is None:  # pragma: no cover - the normal equations are always consistent
        raise ArithmeticError("inconsistent normal equations")
    return y


def _dot(x, y):
    acc = ZERO
    for a, b in zip(x, y):
        if a and b:
            acc = acc + a * b
    return acc


def orthogonal_split(M: OperatorMatrix, target: HomogeneousMap):
    """Split ``target = M(h) + rest`` with ``rest`` orthogonal to the image of ``M``.

    ``h`` is the unique preimage lying in the source span and Fischer-orthogonal
    to the kernel.  Returns ``(h, M(h), rest)``.
    """
    if (target.n, target.d) != (M.n, M.d_tgt):
        raise ValueError("target has the wrong shape")
    cols = M.columns()
    tw = FischerMetric(M.n, M.d_tgt).weights
    y = _gram_solve(cols, tw, target.vector) if cols else []
    image = M.apply(y) if cols else HomogeneousMap.zero(M.n, M.d_tgt)
    S = space_dim(M.n, M.d_src)
    h = [ZERO] * S
    for c, row in zip(y, M.source.rows):
        if c:
            h = [a + c * b if b else a for a, b in zip(h, row)]
    ker = kernel_basis(M)
    if ker.rank:
        kv = [list(r) for r in ker.rows]
        c = _gram_solve(kv, FischerMetric(M.n, M.d_src).weights, h)
        for coef, row in zip(c, kv):
            if coef:
                h = [a - coef * b if b else a for a, b in zip(h, row)]
    return HomogeneousMap.from_vector(M.n, M.d_src, h), image, target - image
