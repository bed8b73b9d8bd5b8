"""Tests for quality assessment: net verification, duality, exact star
discrepancy, P_2, and the integration harness."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from lowdisc.algebra import monic_irreducibles
from lowdisc.pointsets import (
    GeneratingMatrixSet,
    PointSet,
    digital_net,
    halton,
    kronecker,
    lattice_points,
    niederreiter_matrices,
    niederreiter_net,
)
from lowdisc.quality import (
    BudgetError,
    QualityReport,
    assess,
    character_orthogonality,
    dual_space,
    minimal_t_dual,
    minimal_t_geometric,
    net_discrepancy_diagnostic,
    net_property,
    nrt_weight,
    p2_dual_sum,
    p2_tail_bound,
    p_alpha,
    qmc_integrate,
    sampled_deviation_lower_bound,
    star_discrepancy,
    star_discrepancy_1d_closed_form,
    t_monotonicity_check,
)


def naive_star_discrepancy(ps):
    """Brute-force corner maximum in Fraction arithmetic.

    Independent of the sweep implementation: enumerates the full corner
    grid and counts points with straight comparisons.
    """
    n = ps.count
    s = ps.dim
    pts = ps.as_fractions()
    grids = [
        sorted({p[j] for p in pts} | {Fraction(1)}) for j in range(s)
    ]
    best = Fraction(0)
    for corner in itertools.product(*grids):
        vol = Fraction(1)
        for c in corner:
            vol *= c
        open_count = sum(
            1 for p in pts if all(p[j] < corner[j] for j in range(s))
        )
        closed_count = sum(
            1 for p in pts if all(p[j] <= corner[j] for j in range(s))
        )
        best = max(
            best, vol - Fraction(open_count, n), Fraction(closed_count, n) - vol
        )
    return best


def random_exact_pointset(rng, s, n, max_den=9):
    dens = [rng.randint(1, max_den) for _ in range(s)]
    rows = [[rng.randrange(d) for d in dens] for _ in range(n)]
    return PointSet.exact(rows, dens)


# ---------------------------------------------------------------------------
# Geometric net verification
# ---------------------------------------------------------------------------

def test_quarter_points_are_a_0_2_1_net():
    ps = PointSet.exact([[0], [2], [1], [3]], [4])
    assert net_property(ps, 2, 2, 0)
    assert minimal_t_geometric(ps, 2, 2) == 0


def test_repeated_origin_has_worst_t():
    m = 3
    ps = PointSet.exact([[0, 0]] * 8, [8, 8])
    assert minimal_t_geometric(ps, 2, m) == m


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_niederreiter_b2_s2_is_a_0_net(m):
    assert minimal_t_geometric(niederreiter_net(2, 2, m), 2, m) == 0


def test_niederreiter_b2_s3_needs_t_1():
    # third coordinate uses the degree-2 irreducible x^2+x+1, so the bound
    # sum(e_j - 1) = 1 is tight here
    for m in (3, 4):
        ps = niederreiter_net(2, 3, m)
        assert minimal_t_geometric(ps, 2, m) == 1


def test_niederreiter_t_respects_degree_sum_bound():
    """Geometric t stays within sum(deg p_j - 1) across small bases."""
    cases = [(2, s, m) for s in (2, 3, 4, 5) for m in (6, 8)]
    cases += [(3, s, 4) for s in (2, 3, 4)]
    cases += [(5, s, 3) for s in (2, 3, 4, 5)]
    for b, s, m in cases:
        bound = sum(p.degree - 1 for p in monic_irreducibles(b, s))
        t = minimal_t_geometric(niederreiter_net(b, s, m), b, m)
        assert t <= min(m, bound), (b, s, m, t, bound)


def test_zero_matrix_digital_net_has_worst_t():
    zero = [[0] * 3 for _ in range(3)]
    G = GeneratingMatrixSet.from_lists(2, [zero, zero])
    ps = digital_net(G)
    assert ps.as_fractions() == [(Fraction(0), Fraction(0))] * 8
    assert minimal_t_geometric(ps, 2, 3) == 3


def test_net_property_validates_input():
    ps = PointSet.exact([[0], [2], [1], [3]], [4])
    with pytest.raises(ValueError):
        net_property(ps, 2, 3, 0)  # wrong N for m=3
    with pytest.raises(ValueError):
        net_property(ps, 2, 2, 3)  # t > m
    with pytest.raises(ValueError):
        net_property(ps, 2, 2, 0, s=2)  # dimension mismatch
    with pytest.raises(ValueError):
        net_property(PointSet.floating([[0.0]] * 4), 2, 2, 0)
    with pytest.raises(ValueError):
        # right count, wrong denominator
        net_property(PointSet.exact([[0]] * 4, [5]), 2, 2, 0)


def test_t_is_monotone_upward():
    rng = random.Random(7)
    for _ in range(10):
        b, m = 2, 3
        rows = [[rng.randrange(8), rng.randrange(8)] for _ in range(8)]
        ps = PointSet.exact(rows, [8, 8])
        t = minimal_t_geometric(ps, b, m)
        assert t_monotonicity_check(ps, b, m, t)
        # the holds-set {t' : net property at t'} is exactly [t, m]
        holds = [net_property(ps, b, m, t2) for t2 in range(m + 1)]
        assert holds == [False] * t + [True] * (m + 1 - t)


# ---------------------------------------------------------------------------
# Dual space route
# ---------------------------------------------------------------------------

def test_nrt_weight_blocks():
    assert nrt_weight([0, 1, 0, 1, 0, 0], 3, 2) == 3
    assert nrt_weight([0] * 6, 3, 2) == 0
    assert nrt_weight([1, 0, 0, 0, 0, 1], 3, 2) == 4
    with pytest.raises(ValueError):
        nrt_weight([1, 0], 3, 2)


def test_dual_of_invertible_s1_is_trivial():
    G = GeneratingMatrixSet.from_lists(2, [[[1, 1], [0, 1]]])
    d = dual_space(G)
    assert d.dimension == 0
    assert d.delta == 3  # m + 1
    assert minimal_t_dual(G) == 0


def test_dual_of_zero_matrices_is_everything():
    m = 3
    G = GeneratingMatrixSet.from_lists(2, [[[0] * m] * m, [[0] * m] * m])
    assert minimal_t_dual(G) == m
    assert dual_space(G).delta == 1


def test_dual_basis_is_orthogonal_to_image():
    G = niederreiter_matrices(3, 2, 4)
    d = dual_space(G)
    m, s, b = 4, 2, 3
    for vec in d.basis:
        for u_index in range(b ** m):
            u = [(u_index // b ** i) % b for i in range(m)]
            image = [
                sum(G.matrices[j][i][r] * u[r] for r in range(m)) % b
                for j in range(s)
                for i in range(m)
            ]
            assert sum(x * y for x, y in zip(vec, image)) % b == 0


def test_dual_t_equals_geometric_t_on_random_matrices():
    rng = random.Random(20240815)
    for _ in range(40):
        b = rng.choice([2, 3])
        m = rng.randint(1, 5)
        s = rng.randint(1, 3)
        mats = [
            [[rng.randrange(b) for _ in range(m)] for _ in range(m)]
            for _ in range(s)
        ]
        G = GeneratingMatrixSet.from_lists(b, mats)
        assert minimal_t_dual(G) == minimal_t_geometric(digital_net(G), b, m)


def test_dual_needs_square_matrices():
    G = GeneratingMatrixSet.from_lists(2, [[[1, 0, 0], [0, 1, 0]]])
    with pytest.raises(ValueError):
        minimal_t_dual(G)


# ---------------------------------------------------------------------------
# Star discrepancy
# ---------------------------------------------------------------------------

def test_star_two_points_frozen():
    ps = PointSet.exact([[0], [1]], [2])  # {0, 1/2}
    assert star_discrepancy(ps) == Fraction(1, 2)


def test_star_single_point_at_origin():
    ps = PointSet.exact([[0]], [1])
    assert star_discrepancy(ps) == 1


def test_star_equidistant_is_optimal():
    n = 10
    ps = PointSet.exact([[2 * i - 1] for i in range(1, n + 1)], [2 * n])
    assert star_discrepancy(ps) == Fraction(1, 2 * n)


def test_star_fibonacci_lattices_frozen():
    assert star_discrepancy(lattice_points([1, 3], 8)) == Fraction(1, 4)
    assert star_discrepancy(lattice_points([1, 8], 13)) == Fraction(28, 169)
    assert star_discrepancy(lattice_points([1, 3, 5], 16)) == Fraction(53, 256)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_star_sweep_matches_naive_oracle(s):
    rng = random.Random(100 + s)
    for _ in range(12):
        ps = random_exact_pointset(rng, s, rng.randint(1, 12))
        assert star_discrepancy(ps) == naive_star_discrepancy(ps)


def test_star_1d_closed_form_on_100_random_sets():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(1, 40)
        den = rng.randint(1, 64)
        ps = PointSet.exact([[rng.randrange(den)] for _ in range(n)], [den])
        # star_discrepancy cross-checks internally; compare explicitly too
        assert star_discrepancy(ps) == star_discrepancy_1d_closed_form(ps)


def test_star_lattice_coordinate_permutation_invariance():
    base = star_discrepancy(lattice_points([1, 8], 13))
    assert star_discrepancy(lattice_points([8, 1], 13)) == base
    p3 = star_discrepancy(lattice_points([1, 3, 5], 16))
    for perm in itertools.permutations([1, 3, 5]):
        assert star_discrepancy(lattice_points(list(perm), 16)) == p3


def test_star_float_path_approximates_exact():
    exact_ps = lattice_points([1, 8], 13)
    float_ps = PointSet.floating(exact_ps.as_floats())
    assert abs(
        star_discrepancy(float_ps) - float(star_discrepancy(exact_ps))
    ) < 1e-12


def test_star_budget_guards():
    with pytest.raises(BudgetError):
        star_discrepancy(lattice_points([1, 3, 5, 7], 16))  # s = 4
    big = lattice_points([1, 89], 10000)
    with pytest.raises(BudgetError):
        star_discrepancy(big)
    # explicit override allows it
    val = star_discrepancy(big, n_limit=10000)
    assert 0 < float(val) < 1


def test_sampled_lower_bound_never_exceeds_exact():
    for ps in (
        lattice_points([1, 8], 13),
        niederreiter_net(2, 2, 4),
        halton([2, 3], 20),
    ):
        exact = star_discrepancy(ps)
        lb = sampled_deviation_lower_bound(ps, samples=3000, seed=11)
        assert lb <= exact


def test_sampled_lower_bound_needs_exact_points():
    with pytest.raises(ValueError):
        sampled_deviation_lower_bound(kronecker(["sqrt(2)"], 8))


# ---------------------------------------------------------------------------
# P_2 and characters
# ---------------------------------------------------------------------------

def test_p2_single_point_closed_form():
    assert abs(p_alpha([1], 1) - math.pi ** 2 / 3) < 1e-12


def test_p2_requires_alpha_2():
    with pytest.raises(ValueError):
        p_alpha([1, 2], 5, alpha=4)
    with pytest.raises(ValueError):
        p_alpha([1], 0)


def test_p2_matches_dual_sum_oracle():
    rng = random.Random(4)
    for _ in range(6):
        n = rng.randint(2, 60)
        a = [1, rng.randrange(1, n)]
        closed = p_alpha(a, n)
        h = 60
        truncated = p2_dual_sum(a, n, h)
        assert truncated <= closed + 1e-9  # truncation only removes mass
        assert abs(closed - truncated) <= p2_tail_bound(2, h)


def test_p2_is_nonnegative():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 100)
        s = rng.randint(1, 3)
        a = [rng.randrange(n) for _ in range(s)]
        assert p_alpha(a, n) >= -1e-9


def test_p2_fibonacci_improves_with_size():
    fib = [1, 1]
    while len(fib) < 17:
        fib.append(fib[-1] + fib[-2])
    values = [p_alpha([1, fib[k - 1]], fib[k]) for k in (8, 12, 16)]
    assert values[0] > values[1] > values[2]


def test_character_orthogonality_cases():
    assert character_orthogonality([1, 3], 4, [0, 0]) == 1
    assert character_orthogonality([1, 3], 4, [1, 1]) == 1
    assert character_orthogonality([1, 3], 4, [1, 0]) == 0
    assert character_orthogonality([1, 8], 13, [5, 1]) == 1
    with pytest.raises(ValueError):
        character_orthogonality([1, 3], 4, [1])


# ---------------------------------------------------------------------------
# Integration harness
# ---------------------------------------------------------------------------

def test_integrate_constant():
    for ps in (lattice_points([1, 8], 13), halton([2, 3], 10)):
        assert qmc_integrate(lambda x: 1.0, ps) == 1.0


def test_integrate_indicator_error_bounded_by_discrepancy():
    ps = niederreiter_net(2, 2, 5)
    d_star = float(star_discrepancy(ps))
    rng = random.Random(3)
    for _ in range(20):
        y = (rng.random(), rng.random())
        est = qmc_integrate(
            lambda x: 1.0 if x[0] < y[0] and x[1] < y[1] else 0.0, ps
        )
        assert abs(est - y[0] * y[1]) <= d_star + 1e-12


def test_integrate_rejects_non_finite():
    ps = halton([2], 4)
    with pytest.raises(ValueError):
        qmc_integrate(lambda x: float("nan"), ps)


def test_product_integrand_error_stays_bounded_along_net_family():
    # integral of prod 2 x_j over the unit square is 1
    ratios = []
    for m in range(4, 13):
        ps = niederreiter_net(2, 2, m)
        err = abs(qmc_integrate(lambda x: 4 * x[0] * x[1], ps) - 1.0)
        n = 2 ** m
        ratios.append(n * err / math.log(n))
    assert max(ratios) <= 2 * ratios[0] or max(ratios) < 1.0


# ---------------------------------------------------------------------------
# Diagnostic and combined report
# ---------------------------------------------------------------------------

def test_diagnostic_guards_and_degenerate_case():
    with pytest.raises(ValueError):
        net_discrepancy_diagnostic(niederreiter_net(2, 2, 1), 2, 1)
    zero = PointSet.exact([[0, 0]] * 4, [4, 4])
    val = net_discrepancy_diagnostic(zero, 2, 2)
    assert math.isfinite(val) and val > 0


def test_diagnostic_stays_bounded_for_niederreiter_family():
    vals = [
        net_discrepancy_diagnostic(niederreiter_net(2, 2, m), 2, m)
        for m in range(4, 10)
    ]
    assert max(vals) <= 1.5 * vals[0]


def test_assess_full_report():
    G = niederreiter_matrices(2, 2, 4)
    rep = assess(digital_net(G), b=2, m=4, G=G)
    assert isinstance(rep, QualityReport)
    assert rep.t_geometric == 0 and rep.t_dual == 0
    assert rep.star_disc == Fraction(11, 64)
    assert rep.diagnostic_ratio is not None
    d = rep.as_json_dict()
    assert d["star_discrepancy"] == {"num": 11, "den": 64}


def test_assess_fills_p2_for_lattices_and_skips_over_budget():
    rep = assess(lattice_points([1, 8], 13))
    assert rep.p2 is not None and rep.p2 > 0
    big = assess(lattice_points([1, 89], 10000))
    assert big.star_disc is None  # over budget, skipped rather than raised
    assert big.p2 is not None
