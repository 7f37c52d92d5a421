"""Truncated formal transformations of (C^n, 0) with exact coefficients.

A degree-``d`` homogeneous map is stored densely: one coefficient vector per
coordinate, indexed by the degree-``d`` monomials in graded-lex order
(``z1^d`` first, ``zn^d`` last).  Composition and inversion go through a
sparse per-degree representation in which a monomial ``z^Q`` is packed into
one integer, so multiplying monomials is integer addition.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .exactnum import ONE, ZERO, GaussianRational, as_gaussian

__all__ = [
    "monomials",
    "monomial_index",
    "space_dim",
    "Polynomial",
    "HomogeneousMap",
    "LinearMap",
    "FormalTransformation",
    "compose_truncated",
    "invert_truncated",
    "polarize_full",
    "polarize_directional",
    "homogeneous_term",
    "u",
    "v",
]

_BITS = 6
_MASK = (1 << _BITS) - 1
MAX_DEGREE = _MASK


def _pack(exps) -> int:
    key = 0
    for i, q in enumerate(exps):
        if q > MAX_DEGREE:
            raise ValueError(f"exponent {q} exceeds supported maximum {MAX_DEGREE}")
        key |= q << (_BITS * i)
    return key


def _unpack(key: int, n: int) -> tuple:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(n))


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple:
    """Exponent tuples of all degree-``d`` monomials in ``n`` variables, graded-lex."""
    if n == 1:
        return ((d,),)
    out = []
    for q in range(d, -1, -1):
        out.extend((q,) + rest for rest in monomials(n - 1, d - q))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict:
    return {q: k for k, q in enumerate(monomials(n, d))}


@lru_cache(maxsize=None)
def _packed_monomials(n: int, d: int) -> tuple:
    return tuple(_pack(q) for q in monomials(n, d))


@lru_cache(maxsize=None)
def _packed_index(n: int, d: int) -> dict:
    return {key: k for k, key in enumerate(_packed_monomials(n, d))}


def space_dim(n: int, d: int) -> int:
    """Dimension of the space of degree-``d`` homogeneous maps of C^n."""
    return n * math.comb(d + n - 1, n - 1)


def _scalar(c):
    if isinstance(c, GaussianRational):
        return c
    return as_gaussian(c)


# ---------------------------------------------------------------------------
# sparse polynomials (used for Jacobians, symbolic evaluation, substitution)
# ---------------------------------------------------------------------------


class Polynomial:
    """Sparse polynomial in ``n`` variables over Q(i)."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: dict | None = None):
        self.n = n
        self._c = {k: c for k, c in (coeffs or {}).items() if c}

    @classmethod
    def variable(cls, n: int, k: int) -> "Polynomial":
        exps = [0] * n
        exps[k] = 1
        return cls(n, {_pack(exps): ONE})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {0: _scalar(c)})

    @classmethod
    def from_terms(cls, n: int, terms: dict) -> "Polynomial":
        return cls(n, {_pack(q): _scalar(c) for q, c in terms.items()})

    def terms(self):
        """Yield ``(exponents, coeff)`` pairs."""
        for key, c in self._c.items():
            yield _unpack(key, self.n), c

    def coeff(self, exps) -> GaussianRational:
        return self._c.get(_pack(exps), ZERO)

    def degrees(self) -> set:
        return {sum(q) for q, _ in self.terms()}

    def is_zero(self) -> bool:
        return not self._c

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.n, {k: c for k, c in self._c.items()
                                   if sum(_unpack(k, self.n)) == d})

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Polynomial.constant(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out[k] + c if k in out else c
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            s = _scalar(other)
            return Polynomial(self.n, {k: c * s for k, c in self._c.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for k1, c1 in self._c.items():
            for k2, c2 in other._c.items():
                k = k1 + k2
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial.constant(self.n, ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, Polynomial) else other
        if other is None:
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __hash__(self):
        return hash((self.n, frozenset(self._c.items())))

    def derivative(self, k: int) -> "Polynomial":
        shift = _BITS * k
        out = {}
        for key, c in self._c.items():
            q = (key >> shift) & _MASK
            if q:
                out[key - (1 << shift)] = c * q
        return Polynomial(self.n, out)

    def __call__(self, *point):
        return _evaluate_sparse(self._c, self.n, point)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


def _evaluate_sparse(coeffs: dict, n: int, point):
    if len(point) != n:
        raise ValueError(f"expected {n} arguments, got {len(point)}")
    point = [_scalar(p) if isinstance(p, (int, Fraction)) else p for p in point]
    powers = [[ONE] for _ in range(n)]
    poly = next((p for p in point if isinstance(p, Polynomial)), None)
    # a zero row must still evaluate to a polynomial when the arguments are polynomials
    total = ZERO if poly is None else Polynomial(poly.n)
    for key, c in coeffs.items():
        term = c
        for i in range(n):
            q = (key >> (_BITS * i)) & _MASK
            if q:
                pw = powers[i]
                while len(pw) <= q:
                    pw.append(pw[-1] * point[i])
                term = term * pw[q]
        total = term + total
    return total


def variable_names(n: int) -> list:
    return ["z", "w"] if n == 2 else [f"z{k + 1}" for k in range(n)]


def format_monomial(exps, names=None) -> str:
    names = names or variable_names(len(exps))
    parts = []
    for name, q in zip(names, exps):
        if q == 1:
            parts.append(name)
        elif q > 1:
            parts.append(f"{name}^{q}")
    return "*".join(parts) or "1"


def format_polynomial(p: Polynomial, names=None) -> str:
    items = sorted(p.terms(), key=lambda t: (-sum(t[0]), tuple(-q for q in t[0])))
    if not items:
        return "0"
    out = []
    for exps, c in items:
        mono = format_monomial(exps, names)
        cs = str(c)
        if not c.is_real() and c.re != 0:
            cs = f"({cs})"
        if mono == "1":
            s = cs
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{cs}*{mono}"
        out.append(s)
    text = " + ".join(out)
    return text.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# homogeneous maps
# ---------------------------------------------------------------------------


class HomogeneousMap:
    """An ``n``-tuple of degree-``d`` homogeneous polynomials in ``n`` variables.

    ``coeffs[j][k]`` is the coefficient of ``monomials(n, d)[k]`` in coordinate
    ``j`` (0-based).
    """

    __slots__ = ("n", "d", "coeffs", "_hash")

    def __init__(self, n: int, d: int, coeffs):
        if d < 1:
            raise ValueError("degree must be >= 1")
        m = len(monomials(n, d))
        coeffs = tuple(tuple(_scalar(c) for c in row) for row in coeffs)
        if len(coeffs) != n or any(len(row) != m for row in coeffs):
            raise ValueError(f"expected {n} coordinate vectors of length {m}")
        self.n = n
        self.d = d
        self.coeffs = coeffs
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, n: int, d: int) -> "HomogeneousMap":
        m = len(monomials(n, d))
        return cls(n, d, [[ZERO] * m for _ in range(n)])

    @classmethod
    def from_terms(cls, n: int, d: int, terms) -> "HomogeneousMap":
        """Build from ``{(coord, exponents): coeff}`` or an iterable of triples."""
        if isinstance(terms, dict):
            terms = [(j, q, c) for (j, q), c in terms.items()]
        idx = monomial_index(n, d)
        rows = [[ZERO] * len(idx) for _ in range(n)]
        for j, q, c in terms:
            q = tuple(q)
            if sum(q) != d or q not in idx:
                raise ValueError(f"monomial {q} is not of degree {d} in {n} variables")
            if not 0 <= j < n:
                raise ValueError(f"coordinate {j} out of range")
            rows[j][idx[q]] = rows[j][idx[q]] + _scalar(c)
        return cls(n, d, rows)

    @classmethod
    def monomial(cls, n: int, coord: int, exps, coeff=1) -> "HomogeneousMap":
        return cls.from_terms(n, sum(exps), [(coord, exps, coeff)])

    @classmethod
    def from_vector(cls, n: int, d: int, vec) -> "HomogeneousMap":
        m = len(monomials(n, d))
        vec = list(vec)
        if len(vec) != n * m:
            raise ValueError(f"expected a vector of length {n * m}")
        return cls(n, d, [vec[j * m:(j + 1) * m] for j in range(n)])

    @classmethod
    def from_polynomials(cls, polys, d: int | None = None) -> "HomogeneousMap":
        polys = list(polys)
        n = len(polys)
        degs = set().union(*(p.degrees() for p in polys))
        if d is None:
            if len(degs) != 1:
                raise ValueError(f"not homogeneous (degrees {sorted(degs)})")
            d = degs.pop()
        elif degs - {d}:
            raise ValueError(f"not homogeneous of degree {d} (degrees {sorted(degs)})")
        return cls.from_terms(n, d, [(j, q, c) for j, p in enumerate(polys)
                                     for q, c in p.terms()])

    @classmethod
    def from_linear(cls, lin: "LinearMap") -> "HomogeneousMap":
        n = lin.n
        return cls.from_terms(n, 1, [(i, tuple(int(k == j) for k in range(n)), lin.matrix[i][j])
                                     for i in range(n) for j in range(n)])

    # -- views -------------------------------------------------------------
    @property
    def vector(self) -> tuple:
        return tuple(itertools.chain.from_iterable(self.coeffs))

    @property
    def dim(self) -> int:
        return space_dim(self.n, self.d)

    def terms(self):
        """Yield ``(coord, exponents, coeff)`` for nonzero coefficients."""
        mons = monomials(self.n, self.d)
        for j, row in enumerate(self.coeffs):
            for q, c in zip(mons, row):
                if c:
                    yield j, q, c

    def coeff(self, coord: int, exps) -> GaussianRational:
        return self.coeffs[coord][monomial_index(self.n, self.d)[tuple(exps)]]

    def components(self) -> tuple:
        mons = _packed_monomials(self.n, self.d)
        return tuple(Polynomial(self.n, dict(zip(mons, row))) for row in self.coeffs)

    def _sparse(self) -> list:
        mons = _packed_monomials(self.n, self.d)
        return [{k: c for k, c in zip(mons, row) if c} for row in self.coeffs]

    def is_zero(self) -> bool:
        return not any(c for row in self.coeffs for c in row)

    def __bool__(self):
        return not self.is_zero()

    # -- algebra -------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, HomogeneousMap):
            raise TypeError(f"expected HomogeneousMap, got {type(other).__name__}")
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError(f"shape mismatch: (n={self.n}, d={self.d}) vs (n={other.n}, d={other.d})")

    def __add__(self, other):
        self._check(other)
        return HomogeneousMap(self.n, self.d, [[a + b for a, b in zip(r, s)]
                                               for r, s in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return HomogeneousMap(self.n, self.d, [[a - b for a, b in zip(r, s)]
                                               for r, s in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return HomogeneousMap(self.n, self.d, [[-a for a in r] for r in self.coeffs])

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction, GaussianRational)):
            return NotImplemented
        s = _scalar(scalar)
        return HomogeneousMap(self.n, self.d, [[a * s for a in r] for r in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogeneousMap):
            return NotImplemented
        return (self.n, self.d, self.coeffs) == (other.n, other.d, other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.d, self.coeffs))
        return self._hash

    def __call__(self, *point):
        """Evaluate at a point whose entries are scalars or :class:`Polynomial` values."""
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        return tuple(_evaluate_sparse(row, self.n, point) for row in self._sparse())

    def jacobian(self) -> list:
        """``J[i][k] = d(coordinate i)/d(z_k)`` as polynomials."""
        comps = self.components()
        return [[p.derivative(k) for k in range(self.n)] for p in comps]

    def compose_linear(self, lin: "LinearMap") -> "HomogeneousMap":
        """``H o lin``."""
        n = self.n
        zs = [Polynomial(n, {_pack([int(k == j) for k in range(n)]): lin.matrix[i][j]
                             for j in range(n)}) for i in range(n)]
        return HomogeneousMap.from_polynomials(self(*zs), self.d)

    def apply_linear(self, lin: "LinearMap") -> "HomogeneousMap":
        """``lin . H``."""
        rows = [[sum((lin.matrix[i][j] * self.coeffs[j][k] for j in range(self.n)), ZERO)
                 for k in range(len(self.coeffs[0]))] for i in range(self.n)]
        return HomogeneousMap(self.n, self.d, rows)

    def __repr__(self):
        return f"HomogeneousMap(n={self.n}, d={self.d}, {format_map(self)})"


def format_map(H: HomogeneousMap, names=None) -> str:
    return "(" + ", ".join(format_polynomial(p, names) for p in H.components()) + ")"


def u(d: int, j: int) -> HomogeneousMap:
    """``(z^j w^(d-j), 0)`` in the plane."""
    return HomogeneousMap.monomial(2, 0, (j, d - j))


def v(d: int, j: int) -> HomogeneousMap:
    """``(0, z^j w^(d-j))`` in the plane."""
    return HomogeneousMap.monomial(2, 1, (j, d - j))


# ---------------------------------------------------------------------------
# linear maps
# ---------------------------------------------------------------------------


class LinearMap:
    """An exact ``n x n`` matrix acting as the linear part of a germ."""

    __slots__ = ("n", "matrix")

    def __init__(self, matrix):
        rows = tuple(tuple(_scalar(c) for c in row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("linear part must be a non-empty square matrix")
        self.n = n
        self.matrix = rows

    @classmethod
    def zero(cls, n: int) -> "LinearMap":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries) -> "LinearMap":
        entries = [_scalar(e) for e in entries]
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def flag(self) -> str:
        m = self.matrix
        off = any(m[i][j] for i in range(self.n) for j in range(self.n) if i != j)
        if off:
            return "general"
        diag = [m[i][i] for i in range(self.n)]
        if not any(diag):
            return "zero"
        if all(x == 1 for x in diag):
            return "identity"
        return "diagonal"

    def is_diagonal(self) -> bool:
        return self.flag != "general"

    def diagonal_entries(self) -> tuple:
        if not self.is_diagonal():
            raise ValueError("linear part is not diagonal")
        return tuple(self.matrix[i][i] for i in range(self.n))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        n = self.n
        return LinearMap([[sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n)), ZERO)
                           for j in range(n)] for i in range(n)])

    def __call__(self, vec):
        return tuple(sum((self.matrix[i][j] * vec[j] for j in range(self.n)), ZERO)
                     for i in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearMap({[[str(c) for c in r] for r in self.matrix]})"


# ---------------------------------------------------------------------------
# truncated formal transformations
# ---------------------------------------------------------------------------


class FormalTransformation:
    """``linear + sum_{d=2..N} terms[d]``, a germ truncated at degree ``N``."""

    __slots__ = ("n", "N", "linear", "terms")

    def __init__(self, linear: LinearMap, terms=None, N: int | None = None):
        n = linear.n
        terms = dict(terms or {})
        if N is None:
            N = max(terms, default=1)
        if N < 1:
            raise ValueError("truncation degree must be >= 1")
        clean = {}
        for d, H in terms.items():
            if not isinstance(H, HomogeneousMap):
                raise TypeError("terms must be HomogeneousMap instances")
            if H.d != d or H.n != n:
                raise ValueError(f"term at degree {d} has shape (n={H.n}, d={H.d})")
            if d < 2:
                raise ValueError("nonlinear terms start at degree 2")
            if d > N:
                raise ValueError(f"term of degree {d} exceeds truncation {N}")
            if not H.is_zero():
                clean[d] = H
        self.n = n
        self.N = N
        self.linear = linear
        self.terms = clean

    @classmethod
    def identity(cls, n: int, N: int) -> "FormalTransformation":
        return cls(LinearMap.identity(n), {}, N)

    def term(self, d: int) -> HomogeneousMap:
        return homogeneous_term(self, d)

    def truncate(self, N: int) -> "FormalTransformation":
        return FormalTransformation(self.linear, {d: H for d, H in self.terms.items() if d <= N}, N)

    def with_term(self, H: HomogeneousMap) -> "FormalTransformation":
        terms = dict(self.terms)
        terms[H.d] = H
        return FormalTransformation(self.linear, terms, max(self.N, H.d))

    def order(self) -> int | None:
        """Degree of the first nonzero nonlinear term, or ``None``."""
        return min(self.terms, default=None)

    def __eq__(self, other):
        if not isinstance(other, FormalTransformation):
            return NotImplemented
        return (self.n, self.N, self.linear, self.terms) == (other.n, other.N, other.linear, other.terms)

    def __hash__(self):
        return hash((self.n, self.N, self.linear, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        parts = [format_map(HomogeneousMap.from_linear(self.linear))]
        parts += [format_map(self.terms[d]) for d in sorted(self.terms)]
        return f"FormalTransformation(N={self.N}: " + " + ".join(parts) + ")"

    # -- sparse per-degree view ---------------------------------------------
    def _series(self, N: int) -> list:
        """Per coordinate, a list indexed by degree of ``{packed monomial: coeff}``."""
        n = self.n
        out = [[{} for _ in range(N + 1)] for _ in range(n)]
        unit = [_pack([int(k == j) for k in range(n)]) for j in range(n)]
        for i in range(n):
            out[i][1] = {unit[j]: self.linear.matrix[i][j] for j in range(n) if self.linear.matrix[i][j]}
        for d, H in self.terms.items():
            if d <= N:
                for i, row in enumerate(H._sparse()):
                    out[i][d] = row
        return out

    @classmethod
    def _from_series(cls, n: int, N: int, series: list) -> "FormalTransformation":
        unit = [_pack([int(k == j) for k in range(n)]) for j in range(n)]
        lin = LinearMap([[series[i][1].get(unit[j], ZERO) for j in range(n)] for i in range(n)])
        terms = {}
        for d in range(2, N + 1):
            idx = _packed_index(n, d)
            rows = [[ZERO] * len(idx) for _ in range(n)]
            nonzero = False
            for i in range(n):
                for key, c in series[i][d].items():
                    if c:
                        rows[i][idx[key]] = c
                        nonzero = True
            if nonzero:
                terms[d] = HomogeneousMap(n, d, rows)
        return cls(lin, terms, N)


def _mul_trunc(a: list, b: list, N: int) -> list:
    out = [{} for _ in range(N + 1)]
    for d1, A in enumerate(a):
        if not A:
            continue
        for d2 in range(0, N - d1 + 1):
            B = b[d2]
            if not B:
                continue
            R = out[d1 + d2]
            for k1, c1 in A.items():
                for k2, c2 in B.items():
                    k = k1 + k2
                    p = c1 * c2
                    if k in R:
                        R[k] = R[k] + p
                    else:
                        R[k] = p
    return out


def _order(s: list):
    for d, A in enumerate(s):
        if any(A.values()):
            return d
    return None


class _MonomialTable:
    """Caches truncated products ``G_1^{q_1} ... G_n^{q_n}`` of series components."""

    def __init__(self, comps: list, N: int):
        self.comps = comps
        self.N = N
        self.n = len(comps)
        self.ords = [_order(c) for c in comps]
        one = [{} for _ in range(N + 1)]
        one[0] = {0: ONE}
        self._one = one
        self._pow = [[one] for _ in comps]
        self._mono = {(0,) * self.n: one}

    def power(self, k: int, q: int):
        pw = self._pow[k]
        while len(pw) <= q:
            pw.append(_mul_trunc(pw[-1], self.comps[k], self.N))
        return pw[q]

    def min_degree(self, exps):
        total = 0
        for q, o in zip(exps, self.ords):
            if q:
                if o is None:
                    return None
                total += q * o
        return total

    def monomial(self, exps):
        got = self._mono.get(exps)
        if got is not None:
            return got
        # peel off the last nonzero exponent
        k = max(i for i, q in enumerate(exps) if q)
        rest = list(exps)
        q = rest[k]
        rest[k] = 0
        rest = tuple(rest)
        if any(rest):
            val = _mul_trunc(self.monomial(rest), self.power(k, q), self.N)
        else:
            val = self.power(k, q)
        self._mono[exps] = val
        return val


def _apply_homogeneous(rows: list, d: int, table: _MonomialTable, acc: list, N: int):
    """``acc[i] += sum_Q rows[i][Q] * G^Q`` for the packed sparse rows of a degree-d map."""
    n = table.n
    for key in set().union(*rows):
        exps = _unpack(key, n)
        md = table.min_degree(exps)
        if md is None or md > N:
            continue
        mono = table.monomial(exps)
        for i in range(n):
            c = rows[i].get(key)
            if not c:
                continue
            for deg in range(md, N + 1):
                src = mono[deg]
                if not src:
                    continue
                dst = acc[i][deg]
                for k, x in src.items():
                    p = c * x
                    if k in dst:
                        dst[k] = dst[k] + p
                    else:
                        dst[k] = p


def _linear_rows(lin: LinearMap) -> list:
    n = lin.n
    unit = [_pack([int(k == j) for k in range(n)]) for j in range(n)]
    return [{unit[j]: lin.matrix[i][j] for j in range(n) if lin.matrix[i][j]} for i in range(n)]


def compose_truncated(F: FormalTransformation, G: FormalTransformation,
                      N: int | None = None) -> FormalTransformation:
    """``F o G`` truncated at degree ``N`` (default ``min(F.N, G.N)``)."""
    if F.n != G.n:
        raise ValueError(f"dimension mismatch: {F.n} vs {G.n}")
    if N is None:
        N = min(F.N, G.N)
    if N > min(F.N, G.N):
        raise ValueError(f"truncation {N} exceeds the known degrees ({F.N}, {G.N})")
    n = F.n
    comps = G._series(N)
    table = _MonomialTable(comps, N)
    acc = [[{} for _ in range(N + 1)] for _ in range(n)]
    _apply_homogeneous(_linear_rows(F.linear), 1, table, acc, N)
    for d in sorted(F.terms):
        if d <= N:
            _apply_homogeneous(F.terms[d]._sparse(), d, table, acc, N)
    return FormalTransformation._from_series(n, N, acc)


def invert_truncated(Phi: FormalTransformation, N: int | None = None) -> FormalTransformation:
    """Inverse of a transformation tangent to the identity, truncated at ``N``.

    Uses ``K_d = -{(I + K_2 + ... + K_{d-1}) o Phi}_d``, accumulating the
    composition as each ``K_d`` becomes known.
    """
    if Phi.linear.flag != "identity":
        raise ValueError("inversion requires identity linear part")
    if N is None:
        N = Phi.N
    if N > Phi.N:
        raise ValueError(f"truncation {N} exceeds {Phi.N}")
    n = Phi.n
    comps = Phi._series(N)
    table = _MonomialTable(comps, N)
    acc = [[dict(x) for x in c] for c in comps]
    K = [[{} for _ in range(N + 1)] for _ in range(n)]
    for i in range(n):
        K[i][1] = dict(comps[i][1])
    for d in range(2, N + 1):
        rows = [{k: -c for k, c in acc[i][d].items() if c} for i in range(n)]
        for i in range(n):
            K[i][d] = rows[i]
        if any(rows):
            _apply_homogeneous(rows, d, table, acc, N)
    return FormalTransformation._from_series(n, N, K)


def homogeneous_term(F: FormalTransformation, d: int) -> HomogeneousMap:
    """``{F}_d``; the linear part as a degree-1 map when ``d == 1``."""
    if not 1 <= d <= F.N:
        raise ValueError(f"degree {d} outside 1..{F.N}")
    if d == 1:
        return HomogeneousMap.from_linear(F.linear)
    return F.terms.get(d) or HomogeneousMap.zero(F.n, d)


def _vector_sum(vectors, n):
    out = [ZERO] * n
    for vec in vectors:
        out = [a + b for a, b in zip(out, vec)]
    return out


def polarize_full(P: HomogeneousMap, *vectors):
    """The symmetric multilinear map of ``P`` evaluated at ``vectors``.

    Inclusion-exclusion:  ``(1/d!) sum_{S != {}} (-1)^(d-|S|) P(sum_{i in S} v_i)``.
    Entries may be scalars or :class:`Polynomial` values.
    """
    if len(vectors) == 1 and len(vectors[0]) and isinstance(vectors[0][0], (list, tuple)):
        vectors = tuple(vectors[0])
    d = P.d
    if len(vectors) != d:
        raise ValueError(f"degree-{d} map needs {d} arguments, got {len(vectors)}")
    for vec in vectors:
        if len(vec) != P.n:
            raise ValueError(f"argument of length {len(vec)} for a map of C^{P.n}")
    total = [ZERO] * P.n
    for size in range(1, d + 1):
        sign = -1 if (d - size) % 2 else 1
        for subset in itertools.combinations(vectors, size):
            val = P(*_vector_sum(subset, P.n))
            total = [t + sign * x for t, x in zip(total, val)]
    scale = Fraction(1, math.factorial(d))
    return tuple(t * scale for t in total)


def polarize_directional(P: HomogeneousMap, v, z):
    """``P~(v, z, ..., z) = (1/d) Jac(P)(z) . v``."""
    if len(v) != P.n or len(z) != P.n:
        raise ValueError("dimension mismatch")
    J = P.jacobian()
    scale = Fraction(1, P.d)
    out = []
    for i in range(P.n):
        acc = ZERO
        for k in range(P.n):
            acc = acc + J[i][k](*z) * v[k]
        out.append(acc * scale)
    return tuple(out)
