"""Random exact objects shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from formalnf.exactnum import GaussianRational, ZERO
from formalnf.operators import resonant_basis
from formalnf.series import FormalTransformation, HomogeneousMap, LinearMap, monomials

# acceptance test outcomes, printed in the terminal summary
ACCEPTANCE_LINES: dict = {}

# diagonal linear parts with plenty of resonances in low degree
RESONANT_LAMBDAS = [
    LinearMap.zero(2),
    LinearMap.identity(2),
    LinearMap.diagonal([2, 4]),
    LinearMap.diagonal([1, -1]),
    LinearMap.diagonal([1, 2]),
    LinearMap.diagonal([0, 1]),
    LinearMap.diagonal([GaussianRational(0, 1), -1]),
    LinearMap.diagonal([-1, 1]),
]


def rand_rational(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def rand_gaussian(rng: random.Random, size: int = 5, complex_: bool = True) -> GaussianRational:
    im = rand_rational(rng, size) if complex_ and rng.random() < 0.5 else 0
    return GaussianRational(rand_rational(rng, size), im)


def rand_hom(rng: random.Random, n: int, d: int, density: float = 0.6, size: int = 5) -> HomogeneousMap:
    rows = [[rand_gaussian(rng, size) if rng.random() < density else ZERO
             for _ in monomials(n, d)] for _ in range(n)]
    return HomogeneousMap(n, d, rows)


def rand_in_span(rng: random.Random, basis, size: int = 5) -> HomogeneousMap:
    out = HomogeneousMap.zero(basis.n, basis.d)
    for H in basis.generators:
        c = rand_gaussian(rng, size)
        if c:
            out = out + H * c
    return out


def rand_resonant(rng: random.Random, Lam: LinearMap, d: int) -> HomogeneousMap:
    return rand_in_span(rng, resonant_basis(Lam, d))


def rand_germ(rng: random.Random, Lam: LinearMap, N: int, low: int = 2,
              density: float = 0.6, fixed: dict | None = None) -> FormalTransformation:
    terms = dict(fixed or {})
    for d in range(low, N + 1):
        if d not in terms:
            terms[d] = rand_hom(rng, Lam.n, d, density)
    return FormalTransformation(Lam, terms, N)


def rand_resonant_germ(rng: random.Random, Lam: LinearMap, N: int, low: int = 2) -> FormalTransformation:
    return FormalTransformation(Lam, {d: rand_resonant(rng, Lam, d) for d in range(low, N + 1)}, N)


def rand_vector(rng: random.Random, n: int):
    return tuple(rand_gaussian(rng) for _ in range(n))


# hypothesis strategies

small_int = st.integers(-6, 6)
rationals = st.builds(Fraction, small_int, st.integers(1, 6))
gaussians = st.builds(GaussianRational, rationals, rationals)


@st.composite
def hom_maps(draw, n: int = 2, degrees=st.integers(1, 4)) -> HomogeneousMap:
    d = draw(degrees)
    size = len(monomials(n, d))
    rows = [draw(st.lists(gaussians | st.just(ZERO), min_size=size, max_size=size)) for _ in range(n)]
    return HomogeneousMap(n, d, rows)


@st.composite
def germs(draw, n: int = 2, N: int = 4, lam=None) -> FormalTransformation:
    if lam is None:
        lam = LinearMap([[draw(gaussians) for _ in range(n)] for _ in range(n)])
    terms = {d: draw(hom_maps(n, st.just(d))) for d in range(2, N + 1)}
    return FormalTransformation(lam, terms, N)


seeds = st.integers(0, 2**32 - 1)
