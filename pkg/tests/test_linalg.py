import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nicepairs.linalg import (
    DimensionError,
    OmegaMatrix,
    ProjectiveConfig,
    RationalMatrix,
    all_subsets_independent,
    block_indicator,
    coefficient_identity,
    condition_a,
    condition_a_matrix,
    condition_b,
    condition_rates,
    determinant,
    exhaustive_transformations,
    git_stable,
    rank,
    sample_generic_transformation,
)

from oracles import brute_stable

small = st.integers(-4, 4)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def matrices(rows, cols, elements=small):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(lambda r: RationalMatrix(r, cols))


def vandermonde(nodes, cols):
    return RationalMatrix([[x ** j for j in range(cols)] for x in nodes])


def test_rank_examples():
    assert rank(RationalMatrix.identity(2)) == 2
    assert rank(RationalMatrix.zeros(1, 3)) == 0
    assert rank(vandermonde([1, 2, 3, 4], 2)) == 2


def test_determinant_examples():
    assert determinant(RationalMatrix.identity(3)) == 1
    assert determinant(RationalMatrix([[1, 2, 3], [4, 5, 6], [1, 2, 3]])) == 0
    assert determinant(RationalMatrix([[1, 2], [3, 4]])) == -2
    with pytest.raises(DimensionError):
        determinant(RationalMatrix([[1, 2]]))


def test_parses_string_rationals_and_rejects_floats():
    m = RationalMatrix([["1/2", "3"], [Fraction(1, 3), 1]])
    assert determinant(m) == Fraction(1, 2) - 1
    with pytest.raises(TypeError):
        RationalMatrix([[0.5]])


@given(st.integers(1, 5).flatmap(lambda k: matrices(k, k, rationals)))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m.tolist()).det()


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_matches_sympy(r, c, data):
    m = data.draw(matrices(r, c, st.integers(-2, 2)))
    assert rank(m) == sympy.Matrix(m.tolist()).rank()


# -- Condition B ------------------------------------------------------------

def test_condition_b_examples():
    assert condition_b(vandermonde([1, 2, 3, 4], 2)).holds
    res = condition_b(RationalMatrix([[1, 1], [2, 2], [1, 3], [2, 5]]))
    assert not res.holds and res.violating_rows == (0, 1)
    res = condition_b(RationalMatrix([[1, 2], [0, 0], [1, 3], [2, 5]]))
    assert not res.holds and not res.surjective and 1 in res.violating_rows
    with pytest.raises(DimensionError):
        condition_b(RationalMatrix([[1, 2, 3]]))


def _rank_oracle_b(m):
    n = m.cols
    return all(sympy.Matrix([m.row(i) for i in idx]).rank() == n
               for idx in itertools.combinations(range(m.rows), n))


@settings(max_examples=80)
@given(st.integers(1, 3), st.integers(0, 3), st.data())
def test_condition_b_matches_rank_oracle(n, extra, data):
    m = data.draw(matrices(n + extra, n, st.integers(-2, 2)))
    res = condition_b(m)
    assert res.holds == _rank_oracle_b(m)
    if not res.holds:
        assert sympy.Matrix([m.row(i) for i in res.violating_rows]).rank() < n


@given(st.integers(1, 4).flatmap(lambda k: matrices(k, k)))
def test_condition_b_square_is_nonzero_determinant(m):
    assert condition_b(m).holds == (determinant(m) != 0)


@given(st.integers(1, 3), st.integers(0, 3), st.data())
def test_condition_b_permutation_invariant(n, extra, data):
    m = data.draw(matrices(n + extra, n))
    perm = data.draw(st.permutations(range(m.rows)))
    assert condition_b(m).holds == condition_b(m.take_rows(perm)).holds


# -- Condition A ------------------------------------------------------------

def test_condition_a_matrix_layout():
    omega = RationalMatrix([[1, 2, 3, 4], [5, 6, 7, 8]])
    phi = RationalMatrix([[1, 10], [2, 20], [3, 30], [4, 40]])
    m = condition_a_matrix(omega, phi)
    assert m.tolist() == [
        [1, 4, 9, 16], [5, 12, 21, 32], [10, 40, 90, 160], [50, 120, 210, 320]]


def test_condition_a_n1_identity():
    g = 3
    m = condition_a_matrix(RationalMatrix.identity(g), RationalMatrix([[1]] * g))
    assert m == RationalMatrix.identity(g)


def test_condition_a_zero_row_fails():
    omega = vandermonde([1, 2, 3, 4], 2).transpose()
    phi = RationalMatrix([[1, 2], [0, 0], [3, 1], [1, 1]])
    m = condition_a_matrix(omega, phi)
    assert all(m[i, 1] == 0 for i in range(4))
    assert not condition_a(omega, phi)


@given(st.integers(2, 4), st.data())
def test_condition_a_n1_product_formula(g, data):
    omega = data.draw(matrices(g, g, rationals))
    a = data.draw(st.lists(rationals, min_size=g, max_size=g))
    phi = RationalMatrix([[x] for x in a])
    prod = Fraction(1)
    for x in a:
        prod *= x
    assert determinant(condition_a_matrix(omega, phi)) == prod * determinant(omega)


def test_condition_a_block_indicator_on_generic_omega():
    omega = OmegaMatrix(vandermonde([1, 2, 3, 4, 5, 6], 2).transpose())
    assert omega.generic
    assert condition_a(omega, block_indicator(2, 3))


def test_condition_a_dimension_checks():
    with pytest.raises(DimensionError):
        condition_a_matrix(RationalMatrix([[1, 2, 3]]), RationalMatrix([[1], [1]]))


@settings(max_examples=40)
@given(st.sampled_from([(2, 2), (1, 3), (2, 1)]), st.data())
def test_condition_a_matches_sympy_expansion(gn, data):
    g, n = gn
    d = g * n
    omega = data.draw(matrices(g, d, st.integers(-3, 3)))
    phi = data.draw(matrices(d, n, st.integers(-3, 3)))
    a = sympy.Matrix(d, d, lambda r, j: phi[j, r // g] * omega[r % g, j])
    assert determinant(condition_a_matrix(omega, phi)) == a.det()


@settings(max_examples=30)
@given(st.data())
def test_block_scaling_multiplies_det_by_power(data):
    g, n = 2, 2
    omega = data.draw(matrices(g, g * n, rationals))
    phi = data.draw(matrices(g * n, n, rationals))
    s = data.draw(st.integers(0, n - 1))
    c = data.draw(rationals)
    scaled = RationalMatrix([[x * c if j == s else x for j, x in enumerate(r)] for r in phi.tolist()])
    assert determinant(condition_a_matrix(omega, scaled)) == c ** g * determinant(condition_a_matrix(omega, phi))


# -- minor expansion --------------------------------------------------------

def test_coefficient_identity_examples():
    eye_blocks = RationalMatrix([[1, 0, 1, 0], [0, 1, 0, 1]])
    r = coefficient_identity(eye_blocks)
    assert r.coefficient == r.minor_product == 1 and r.equal
    singular = RationalMatrix([[1, 2, 1, 0], [2, 4, 0, 1]])
    r = coefficient_identity(singular)
    assert r.coefficient == r.minor_product == 0


def _symbolic_coefficient(omega, g, n):
    d = g * n
    b = [[sympy.Symbol(f"b_{j}_{s}") for s in range(n)] for j in range(d)]
    m = sympy.Matrix(d, d, lambda r, j: b[j][r // g] * omega[r % g, j])
    target = sympy.Mul(*[b[j][j // g] for j in range(d)])
    poly = sympy.Poly(sympy.expand(m.det(method="berkowitz")), *[x for row in b for x in row])
    return poly.coeff_monomial(target)


@pytest.mark.parametrize("g, n, seed", [(2, 2, 0), (2, 2, 1), (1, 3, 2), (2, 3, 3), (3, 2, 4)])
def test_coefficient_matches_symbolic_expansion(g, n, seed):
    rng = random.Random(seed)
    omega = RationalMatrix([[rng.randint(-5, 5) for _ in range(g * n)] for _ in range(g)])
    r = coefficient_identity(omega)
    assert r.coefficient == _symbolic_coefficient(omega, g, n)
    assert r.equal


@given(st.sampled_from([(1, 2), (2, 2), (2, 3), (3, 2)]), st.data())
def test_coefficient_identity_property(gn, data):
    g, n = gn
    omega = data.draw(matrices(g, g * n, rationals))
    assert coefficient_identity(omega).equal


# -- GIT stability ----------------------------------------------------------

def test_stability_examples():
    assert git_stable(ProjectiveConfig(1, [[1, 0], [0, 1], [1, 1], [1, 2]])).stable
    res = git_stable(ProjectiveConfig(1, [[1, 0], [2, 0], [0, 1], [1, 1]]))
    assert not res.stable and res.violating_subspace == (0, 1)
    six = ProjectiveConfig(2, [[1, x, x * x] for x in range(6)])
    assert all_subsets_independent(six)
    assert git_stable(six).stable


def test_stability_rejects_bad_input():
    with pytest.raises(ValueError):
        git_stable(ProjectiveConfig(1, []))
    with pytest.raises(ValueError):
        ProjectiveConfig(1, [[0, 0]])
    with pytest.raises(DimensionError):
        ProjectiveConfig(2, [[1, 0]])


def configs(max_ambient=3, max_points=6, coords=st.integers(-1, 2)):
    def build(n):
        point = st.lists(coords, min_size=n + 1, max_size=n + 1).filter(any)
        return st.lists(point, min_size=1, max_size=max_points).map(lambda p: ProjectiveConfig(n, p))
    return st.integers(1, max_ambient).flatmap(build)


@settings(max_examples=80)
@given(configs())
def test_stability_matches_brute_force(cfg):
    assert git_stable(cfg).stable == brute_stable(cfg.ambient_dim, cfg.points)


@given(configs(), st.data())
def test_stability_scale_invariant(cfg, data):
    scales = data.draw(st.lists(st.fractions(min_value=1, max_value=5).map(
        lambda f: f * data.draw(st.sampled_from([1, -1]))),
        min_size=len(cfg.points), max_size=len(cfg.points)))
    scaled = ProjectiveConfig(cfg.ambient_dim, [[c * x for x in p] for c, p in zip(scales, cfg.points)])
    assert git_stable(cfg).stable == git_stable(scaled).stable


@given(configs(), st.data())
def test_stability_permutation_invariant(cfg, data):
    perm = data.draw(st.permutations(range(len(cfg.points))))
    shuffled = ProjectiveConfig(cfg.ambient_dim, [cfg.points[i] for i in perm])
    assert git_stable(cfg).stable == git_stable(shuffled).stable


@given(configs(coords=st.integers(-6, 6)))
def test_general_position_is_stable(cfg):
    if all_subsets_independent(cfg) and len(cfg.points) > cfg.ambient_dim + 1:
        assert git_stable(cfg).stable


def test_unstable_witness_violates_inequality():
    cfg = ProjectiveConfig(2, [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    res = git_stable(cfg)
    assert not res.stable
    total, n = len(cfg.points), cfg.ambient_dim
    assert res.count * (n + 1) >= (res.subspace_dim + 1) * total
    pts = [cfg.points[i] for i in res.violating_subspace]
    assert rank(RationalMatrix(pts)) == res.subspace_dim + 1


# -- genericity sampling ----------------------------------------------------

def generic_omega(g, n):
    return OmegaMatrix(vandermonde(range(1, g * n + 1), g).transpose())


def test_sampling_zero_trials():
    r = sample_generic_transformation(generic_omega(2, 2), seed=0, trials=0)
    assert r.empty and r.condition_a_rate == 1 and r.condition_b_rate == 1


def test_sampling_is_deterministic():
    a = sample_generic_transformation(generic_omega(2, 2), seed=3, trials=20, bound=2)
    b = sample_generic_transformation(generic_omega(2, 2), seed=3, trials=20, bound=2)
    assert a == b


def test_sampling_generic_rates():
    r = sample_generic_transformation(generic_omega(2, 2), seed=1, trials=200)
    assert r.condition_a_rate == 1 and r.condition_b_rate == 1
    assert not r.failures_a and not r.failures_b


def test_small_grid_produces_failures_with_witnesses():
    r = sample_generic_transformation(generic_omega(2, 2), seed=1, trials=200, bound=1)
    assert r.condition_b_rate < 1
    for phi in r.failures_b:
        assert not condition_b(phi).holds
    for phi in r.failures_a:
        assert not condition_a(generic_omega(2, 2), phi)


def test_exhaustive_grid_rate():
    omega = generic_omega(2, 1)
    r = condition_rates(omega, exhaustive_transformations(2, 1, [0, 1]))
    assert r.trials == 4
    assert r.condition_b_rate == Fraction(1, 4)


def test_non_generic_omega_has_no_condition_a_rate():
    omega = OmegaMatrix(RationalMatrix([[1, 1, 1, 0], [1, 1, 0, 1]]))
    assert not omega.generic
    r = sample_generic_transformation(omega, seed=0, trials=5)
    assert r.condition_a_rate is None and not r.omega_generic
