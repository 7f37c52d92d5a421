import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from formalnf.exactnum import ONE, ZERO, GaussianRational
from formalnf.series import (
    FormalTransformation,
    HomogeneousMap,
    LinearMap,
    Polynomial,
    compose_truncated,
    format_map,
    homogeneous_term,
    invert_truncated,
    monomial_index,
    monomials,
    polarize_directional,
    polarize_full,
    space_dim,
    u,
    v,
)

from helpers import gaussians, germs, hom_maps, rand_germ, rand_hom, rand_vector, seeds


def one_dim(coeffs, N):
    """``z + sum c_d z^d`` in one variable."""
    terms = {d: HomogeneousMap(1, d, [[GaussianRational(c)]]) for d, c in coeffs.items()}
    return FormalTransformation(LinearMap.identity(1), terms, N)


def coeff_list(F):
    return [F.linear.matrix[0][0]] + [F.term(d).coeffs[0][0] for d in range(2, F.N + 1)]


def substitute(F, G, N):
    """``F o G`` by expanding polynomial products, then truncating."""
    n = F.n
    gpolys = []
    for i in range(n):
        p = Polynomial(n)
        for j in range(n):
            if G.linear.matrix[i][j]:
                p = p + Polynomial.variable(n, j) * G.linear.matrix[i][j]
        for H in G.terms.values():
            p = p + H.components()[i]
        gpolys.append(p)
    out = [Polynomial(n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if F.linear.matrix[i][j]:
                out[i] = out[i] + gpolys[j] * F.linear.matrix[i][j]
        for H in F.terms.values():
            for Q, c in zip(monomials(n, H.d), H.coeffs[i]):
                if c:
                    term = Polynomial.constant(n, c)
                    for g, q in zip(gpolys, Q):
                        if q:
                            term = term * g ** q
                    out[i] = out[i] + term
    return out, N


# -- monomial bookkeeping ------------------------------------------------------

def test_monomial_order_is_graded_lex():
    assert monomials(2, 3) == ((3, 0), (2, 1), (1, 2), (0, 3))
    assert monomials(3, 2)[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))
    assert monomial_index(2, 3)[(1, 2)] == 2


@pytest.mark.parametrize("n, d, dim", [(2, 2, 6), (2, 5, 12), (3, 2, 18), (1, 7, 1)])
def test_space_dim(n, d, dim):
    assert space_dim(n, d) == dim
    assert len(monomials(n, d)) * n == dim


def test_basis_helpers():
    assert format_map(u(3, 1)) == "(z*w^2, 0)"
    assert format_map(v(3, 0)) == "(0, w^3)"
    assert u(4, 2).coeff(0, (2, 2)) == 1


def test_homogeneous_map_validates_shape():
    with pytest.raises(ValueError):
        HomogeneousMap(2, 2, [[ONE] * 3])
    with pytest.raises(ValueError):
        HomogeneousMap.from_terms(2, 2, [(0, (1, 2), 1)])
    with pytest.raises(ValueError):
        FormalTransformation(LinearMap.identity(2), {3: u(3, 0)}, 2)
    with pytest.raises(ValueError):
        FormalTransformation(LinearMap.identity(2), {3: u(2, 0)}, 4)


def test_linear_map_flags():
    assert LinearMap.zero(2).flag == "zero"
    assert LinearMap.identity(3).flag == "identity"
    assert LinearMap.diagonal([2, 4]).flag == "diagonal"
    assert LinearMap([[1, 1], [0, 1]]).flag == "general"
    assert LinearMap([[1, 1], [0, 1]]).is_diagonal() is False


# -- composition -----------------------------------------------------------------

def test_compose_one_variable():
    # oracle: sympy expansion of (z + z^3) + (z + z^3)^2, frozen
    F = one_dim({2: 1}, 4)
    G = one_dim({3: 1}, 4)
    assert coeff_list(compose_truncated(F, G, 4)) == [1, 1, 1, 2]


def test_invert_one_variable():
    # oracle: sympy series reversion of z + z^2, frozen
    K = invert_truncated(one_dim({2: 1}, 5))
    assert coeff_list(K) == [1, -1, 2, -5, 14]
    assert coeff_list(compose_truncated(one_dim({2: 1}, 5), K)) == [1, 0, 0, 0, 0]


def test_identity_law_and_errors():
    rng = random.Random(3)
    F = rand_germ(rng, LinearMap([[1, 2], [3, 4]]), 5)
    I5 = FormalTransformation.identity(2, 5)
    assert compose_truncated(F, I5) == F
    assert compose_truncated(I5, F) == F
    with pytest.raises(ValueError):
        compose_truncated(F, FormalTransformation.identity(3, 5))
    with pytest.raises(ValueError):
        compose_truncated(F, I5, 6)
    with pytest.raises(ValueError):
        invert_truncated(F)


def test_degree_two_of_self_composition():
    rng = random.Random(5)
    H2 = rand_hom(rng, 2, 2)
    Phi = FormalTransformation(LinearMap.identity(2), {2: H2}, 3)
    assert homogeneous_term(compose_truncated(Phi, Phi), 2) == H2 * 2


def test_homogeneous_term_conventions():
    I3 = FormalTransformation.identity(2, 3)
    assert homogeneous_term(I3, 1) == HomogeneousMap.from_linear(LinearMap.identity(2))
    assert homogeneous_term(I3, 3).is_zero()
    with pytest.raises(ValueError):
        homogeneous_term(I3, 4)


@given(germs(N=4), germs(N=4))
def test_degree_two_composition_identity(F, G):
    lhs = compose_truncated(F, G).term(2)
    rhs = F.term(2).compose_linear(G.linear) + G.term(2).apply_linear(F.linear)
    assert lhs == rhs


@given(seeds, st.sampled_from([1, 2, 3]))
def test_composition_matches_substitution(seed, n):
    rng = random.Random(seed)
    N = 4 if n < 3 else 3
    lin = LinearMap([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    F = rand_germ(rng, lin, N, density=0.4)
    G = rand_germ(rng, LinearMap([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]), N, density=0.4)
    polys, _ = substitute(F, G, N)
    FG = compose_truncated(F, G, N)
    for d in range(1, N + 1):
        expected = HomogeneousMap.from_polynomials([p.homogeneous_part(d) for p in polys], d)
        assert FG.term(d) == expected


@given(seeds, st.sampled_from([(2, 6), (3, 3), (1, 8)]))
def test_composition_is_associative(seed, shape):
    n, N = shape
    rng = random.Random(seed)
    A, B, C = (rand_germ(rng, LinearMap([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]), N,
                         density=0.3) for _ in range(3))
    assert compose_truncated(compose_truncated(A, B), C) == compose_truncated(A, compose_truncated(B, C))


@given(seeds, st.sampled_from([(2, 6), (3, 4), (1, 9)]))
def test_inverse_is_two_sided(seed, shape):
    n, N = shape
    rng = random.Random(seed)
    Phi = rand_germ(rng, LinearMap.identity(n), N, density=0.4)
    K = invert_truncated(Phi)
    ident = FormalTransformation.identity(n, N)
    assert compose_truncated(Phi, K) == ident
    assert compose_truncated(K, Phi) == ident
    assert K.term(2) == -Phi.term(2)


# -- polarization ----------------------------------------------------------------

def test_polarization_examples():
    P = HomogeneousMap.from_terms(2, 2, [(0, (1, 1), 1)])  # (zw, 0)
    assert polarize_directional(P, (1, 0), (0, 1)) == (Fraction(1, 2), 0)
    assert polarize_full(P, (1, 0), (0, 1)) == (Fraction(1, 2), 0)
    Z2 = HomogeneousMap.from_terms(2, 2, [(0, (2, 0), 1)])
    assert polarize_full(Z2, (1, 0), (0, 1)) == (0, 0)
    # oracle: brute-force inclusion-exclusion in sympy, frozen
    cube = HomogeneousMap(1, 3, [[ONE]])
    assert polarize_directional(cube, (1,), (2,)) == (4,)
    assert polarize_full(cube, (1,), (2,), (2,)) == (4,)
    with pytest.raises(ValueError):
        polarize_full(cube, (1,), (2,))
    with pytest.raises(ValueError):
        polarize_directional(cube, (1, 0), (2,))


@given(hom_maps(degrees=st.integers(1, 5)), seeds)
def test_polarization_is_symmetric_and_diagonal(P, seed):
    rng = random.Random(seed)
    vecs = [rand_vector(rng, 2) for _ in range(P.d)]
    val = polarize_full(P, *vecs)
    rng.shuffle(vecs)
    assert polarize_full(P, *vecs) == val
    z = rand_vector(rng, 2)
    assert polarize_full(P, *([z] * P.d)) == P(*z)


@given(hom_maps(degrees=st.integers(1, 5)), seeds)
def test_polarization_is_multilinear(P, seed):
    rng = random.Random(seed)
    vecs = [rand_vector(rng, 2) for _ in range(P.d)]
    a, b = rand_vector(rng, 2), rand_vector(rng, 2)
    c = GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
    mixed = tuple(x * c + y for x, y in zip(a, b))
    lhs = polarize_full(P, mixed, *vecs[1:])
    ra = polarize_full(P, a, *vecs[1:])
    rb = polarize_full(P, b, *vecs[1:])
    assert lhs == tuple(x * c + y for x, y in zip(ra, rb))


@given(hom_maps(degrees=st.integers(1, 5)), seeds)
def test_jacobian_polarization_identity(P, seed):
    rng = random.Random(seed)
    vv, z = rand_vector(rng, 2), rand_vector(rng, 2)
    J = P.jacobian()
    jv = tuple(sum((J[i][k](*z) * vv[k] for k in range(2)), ZERO) for i in range(2))
    full = polarize_full(P, vv, *([z] * (P.d - 1)))
    assert tuple(x * P.d for x in full) == jv
    assert polarize_directional(P, vv, z) == full


@given(gaussians, gaussians)
def test_evaluation_with_polynomial_arguments(a, b):
    P = HomogeneousMap.from_terms(2, 3, [(0, (2, 1), a), (1, (0, 3), b)])
    z, w = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert HomogeneousMap.from_polynomials(P(z, w), 3) == P
    assert P(2, 1) == (a * 4, b)
