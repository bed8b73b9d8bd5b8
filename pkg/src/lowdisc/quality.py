"""Quality measures for point sets: exact t parameters, exact star
discrepancy (s <= 3), and the P_2 worst-case integration error of lattices.

Conventions shared with the constructions: a (t, m, s)-net in base b puts
exactly b^t points in every elementary interval prod [a_j b^-d_j, (a_j+1)
b^-d_j) of volume b^(t-m); digit index 1 is the most significant (b^-1).
The dual-space route stacks the generating matrices into T : F_b^m ->
F_b^(sm) and reads t off the minimum Niederreiter-Rosenbloom-Tsfasman
weight delta of the nonzero vectors orthogonal to the image:
t = clamp(m + 1 - delta, 0, m), with delta = m + 1 on a trivial dual.

Star discrepancy is computed exactly: the supremum over boxes [0, y) is
attained in the limit at corners y built from coordinate values and 1,
counting points strictly (< on every axis) against the closed volume for
the volume-excess side and weakly (<=) for the point-excess side.  All
comparisons are integer arithmetic on numerators; the result is a Fraction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import nullspace_mod_p
from .pointsets import GeneratingMatrixSet, PointSet, Representation

__all__ = [
    "BudgetError",
    "net_property",
    "minimal_t_geometric",
    "t_monotonicity_check",
    "nrt_weight",
    "DualSpace",
    "dual_space",
    "minimal_t_dual",
    "star_discrepancy",
    "star_discrepancy_1d_closed_form",
    "sampled_deviation_lower_bound",
    "p_alpha",
    "p2_dual_sum",
    "p2_tail_bound",
    "character_orthogonality",
    "qmc_integrate",
    "net_discrepancy_diagnostic",
    "QualityReport",
    "assess",
]

# exact star discrepancy cost grows like N^s; these caps keep the default
# call interactive, and n_limit= overrides them deliberately
STAR_DISCREPANCY_BUDGET = {1: 200_000, 2: 8192, 3: 512}
DUAL_ENUMERATION_LIMIT = 1 << 22


class BudgetError(Exception):
    """The requested exact computation exceeds its default budget."""


# ---------------------------------------------------------------------------
# Geometric (t, m, s)-net verification
# ---------------------------------------------------------------------------

def _compositions(total: int, parts: int):
    """All tuples of `parts` non-negative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _check_net_input(
    ps: PointSet, b: int, m: int, s: Optional[int] = None
) -> None:
    if not ps.is_exact:
        raise ValueError("net verification needs an exact point set")
    if s is not None and ps.dim != s:
        raise ValueError(f"point set has dimension {ps.dim}, not {s}")
    if ps.count != b ** m:
        raise ValueError(f"expected b^m = {b ** m} points, got {ps.count}")
    den = b ** m
    if any(d != den for d in ps.denominators):
        raise ValueError(f"expected all denominators {den}, got {ps.denominators}")


def net_property(
    ps: PointSet, b: int, m: int, t: int, s: Optional[int] = None
) -> bool:
    """Does every elementary interval of volume b^(t-m) hold exactly b^t points?

    Checks all digit-resolution shapes (d_1, ..., d_s) with sum = m - t; a
    point falls in cell a iff its truncated base-b digits match, i.e.
    numerator // b^(m - d_j) agrees per coordinate.
    """
    _check_net_input(ps, b, m, s)
    if not 0 <= t <= m:
        raise ValueError(f"need 0 <= t <= m, got t={t}")
    s = ps.dim
    target = b ** t
    nums = ps.numerators
    for shape in _compositions(m - t, s):
        shifts = [b ** (m - d) for d in shape]
        counts: dict[tuple, int] = {}
        for row in nums:
            key = tuple(v // sh for v, sh in zip(row, shifts))
            counts[key] = counts.get(key, 0) + 1
        if any(c != target for c in counts.values()):
            return False
    return True


def minimal_t_geometric(
    ps: PointSet, b: int, m: int, s: Optional[int] = None
) -> int:
    """Smallest t such that ps is a (t, m, s)-net in base b.

    Always terminates: t = m trivially holds (the single cell [0,1)^s).
    """
    for t in range(m + 1):
        if net_property(ps, b, m, t, s):
            return t
    raise AssertionError("unreachable: t = m always satisfies the net property")


def t_monotonicity_check(
    ps: PointSet, b: int, m: int, t: int, s: Optional[int] = None
) -> bool:
    """A (t, m, s)-net must also be a (t', m, s)-net for every t' in [t, m]."""
    if not net_property(ps, b, m, t, s):
        return True  # nothing to propagate
    return all(net_property(ps, b, m, t2, s) for t2 in range(t, m + 1))


# ---------------------------------------------------------------------------
# Dual-space route
# ---------------------------------------------------------------------------

def nrt_weight(vec: Sequence[int], m: int, s: int) -> int:
    """Sum over coordinate blocks of the largest 1-based nonzero index.

    Index 1 is the most significant digit row, matching the matrix
    convention; an all-zero block contributes 0.
    """
    if len(vec) != s * m:
        raise ValueError(f"vector length {len(vec)} != s*m = {s * m}")
    total = 0
    for j in range(s):
        block = vec[j * m : (j + 1) * m]
        last = 0
        for i, v in enumerate(block):
            if v:
                last = i + 1
        total += last
    return total


@dataclass(frozen=True)
class DualSpace:
    """Basis of the vectors orthogonal to the stacked net image in F_b^(sm),
    read as s blocks of m digit positions, plus the minimum NRT weight."""

    b: int
    m: int
    s: int
    basis: tuple[tuple[int, ...], ...]
    delta: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


def dual_space(G: GeneratingMatrixSet) -> DualSpace:
    """Dual of the image {(C_1 u, ..., C_s u) : u in F_b^m} with its minimum
    NRT weight delta (m + 1 when the dual is trivial).

    The whole dual space is enumerated for the weight minimum, guarded by a
    size budget.
    """
    if G.rows != G.cols:
        raise ValueError("dual space needs square generating matrices")
    b, m, s = G.b, G.rows, G.s
    # T^T has the stacked matrix columns as rows: entry (k, j*m+i) = C_j[i][k]
    tt_rows = [
        [G.matrices[j][i][k] for j in range(s) for i in range(m)]
        for k in range(m)
    ]
    basis = nullspace_mod_p(tt_rows, s * m, b)
    k = len(basis)
    if b ** k > DUAL_ENUMERATION_LIMIT:
        raise BudgetError(
            f"dual space has b^{k} = {b ** k} vectors, over the enumeration limit"
        )
    if k == 0:
        delta = m + 1
    else:
        span = np.zeros((1, s * m), dtype=np.int64)
        for vec in basis:
            v = np.array(vec, dtype=np.int64)
            span = np.concatenate([(span + c * v) % b for c in range(b)])
        nonzero = span != 0
        sig = np.arange(1, m + 1, dtype=np.int64)
        blocks = nonzero.reshape(len(span), s, m)
        weights = (blocks * sig).max(axis=2).sum(axis=1)
        positive = weights[weights > 0]
        delta = int(positive.min()) if positive.size else m + 1
    return DualSpace(b=b, m=m, s=s, basis=tuple(tuple(v) for v in basis), delta=delta)


def minimal_t_dual(G: GeneratingMatrixSet) -> int:
    """t of the digital net from the dual space: t = clamp(m+1-delta, 0, m)."""
    d = dual_space(G)
    return max(0, min(d.m, d.m + 1 - d.delta))


# ---------------------------------------------------------------------------
# Exact star discrepancy (s <= 3)
# ---------------------------------------------------------------------------

def _star_exact(nums: np.ndarray, dens: Sequence[int], n: int) -> Fraction:
    """Corner sweep with integer objectives; nums is (n, s) int64."""
    s = nums.shape[1]
    big_den = n
    for d in dens:
        big_den *= d
    # int64 overflow guard: objectives are bounded by n * prod(dens)
    if big_den >= 1 << 62:
        raise BudgetError(
            "denominator product too large for the exact sweep; "
            "reduce precision or use sampled_deviation_lower_bound"
        )
    full = 1
    for d in dens:
        full *= d
    best = 0

    if s == 1:
        D = int(dens[0])
        u = np.sort(nums[:, 0])
        grid = np.unique(np.concatenate([u, [D]]))
        a_minus = np.searchsorted(u, grid, side="left")
        a_plus = np.searchsorted(u, grid, side="right")
        best = max(
            int((n * grid - a_minus * D).max()),
            int((a_plus * D - n * grid).max()),
        )
        return Fraction(best, n * D)

    if s == 2:
        Du, Dv = int(dens[0]), int(dens[1])
        DuDv = Du * Dv
        order = np.argsort(nums[:, 0], kind="stable")
        u = nums[order, 0]
        v = nums[order, 1]
        gu = np.unique(np.concatenate([u, [Du]]))
        gv = np.unique(np.concatenate([nums[:, 1], [Dv]]))
        ranks = np.searchsorted(gv, v)
        G = len(gv)
        h_minus = np.zeros(G, dtype=np.int64)
        h_plus = np.zeros(G, dtype=np.int64)
        ptr_minus = ptr_plus = 0
        for g1 in gu:
            g1 = int(g1)
            while ptr_minus < n and u[ptr_minus] < g1:
                h_minus[ranks[ptr_minus]] += 1
                ptr_minus += 1
            while ptr_plus < n and u[ptr_plus] <= g1:
                h_plus[ranks[ptr_plus]] += 1
                ptr_plus += 1
            inc_plus = np.cumsum(h_plus)
            inc_minus = np.cumsum(h_minus)
            a_minus = inc_minus - h_minus  # exclusive: count(v < gv[k])
            volume = (n * g1) * gv
            best = max(
                best,
                int((volume - a_minus * DuDv).max()),
                int((inc_plus * DuDv - volume).max()),
            )
        return Fraction(best, n * DuDv)

    # s == 3
    Du, Dv, Dw = (int(d) for d in dens)
    Dall = Du * Dv * Dw
    order = np.argsort(nums[:, 0], kind="stable")
    u = nums[order, 0]
    v = nums[order, 1]
    w = nums[order, 2]
    gu = np.unique(np.concatenate([u, [Du]]))
    gv = np.unique(np.concatenate([nums[:, 1], [Dv]]))
    gw = np.unique(np.concatenate([nums[:, 2], [Dw]]))
    rv = np.searchsorted(gv, v)
    rw = np.searchsorted(gw, w)
    Gv, Gw = len(gv), len(gw)
    h_minus = np.zeros((Gv, Gw), dtype=np.int64)
    h_plus = np.zeros((Gv, Gw), dtype=np.int64)
    vol_vw = gv[:, None] * gw[None, :]
    ptr_minus = ptr_plus = 0
    for g1 in gu:
        g1 = int(g1)
        while ptr_minus < n and u[ptr_minus] < g1:
            h_minus[rv[ptr_minus], rw[ptr_minus]] += 1
            ptr_minus += 1
        while ptr_plus < n and u[ptr_plus] <= g1:
            h_plus[rv[ptr_plus], rw[ptr_plus]] += 1
            ptr_plus += 1
        inc_plus = h_plus.cumsum(axis=0).cumsum(axis=1)
        inc_minus = h_minus.cumsum(axis=0).cumsum(axis=1)
        # exclusive 2D prefix: shift the inclusive sums by one in each axis
        a_minus = np.zeros_like(inc_minus)
        a_minus[1:, 1:] = inc_minus[:-1, :-1]
        volume = (n * g1) * vol_vw
        best = max(
            best,
            int((volume - a_minus * Dall).max()),
            int((inc_plus * Dall - volume).max()),
        )
    return Fraction(best, n * Dall)


def _star_float(rows: np.ndarray, n: int) -> float:
    """Same sweep in float64 for FLOAT point sets (approximate)."""
    s = rows.shape[1]
    best = 0.0
    if s == 1:
        u = np.sort(rows[:, 0])
        grid = np.unique(np.concatenate([u, [1.0]]))
        a_minus = np.searchsorted(u, grid, side="left")
        a_plus = np.searchsorted(u, grid, side="right")
        return float(
            max((grid - a_minus / n).max(), (a_plus / n - grid).max())
        )
    if s == 2:
        order = np.argsort(rows[:, 0], kind="stable")
        u, v = rows[order, 0], rows[order, 1]
        gu = np.unique(np.concatenate([u, [1.0]]))
        gv = np.unique(np.concatenate([rows[:, 1], [1.0]]))
        ranks = np.searchsorted(gv, v)
        h_minus = np.zeros(len(gv))
        h_plus = np.zeros(len(gv))
        ptr_minus = ptr_plus = 0
        for g1 in gu:
            while ptr_minus < n and u[ptr_minus] < g1:
                h_minus[ranks[ptr_minus]] += 1
                ptr_minus += 1
            while ptr_plus < n and u[ptr_plus] <= g1:
                h_plus[ranks[ptr_plus]] += 1
                ptr_plus += 1
            inc_plus = np.cumsum(h_plus)
            a_minus = np.cumsum(h_minus) - h_minus
            volume = g1 * gv
            best = max(
                best,
                float((volume - a_minus / n).max()),
                float((inc_plus / n - volume).max()),
            )
        return best
    order = np.argsort(rows[:, 0], kind="stable")
    u, v, w = rows[order, 0], rows[order, 1], rows[order, 2]
    gu = np.unique(np.concatenate([u, [1.0]]))
    gv = np.unique(np.concatenate([rows[:, 1], [1.0]]))
    gw = np.unique(np.concatenate([rows[:, 2], [1.0]]))
    rv = np.searchsorted(gv, v)
    rw = np.searchsorted(gw, w)
    h_minus = np.zeros((len(gv), len(gw)))
    h_plus = np.zeros((len(gv), len(gw)))
    vol_vw = gv[:, None] * gw[None, :]
    ptr_minus = ptr_plus = 0
    for g1 in gu:
        while ptr_minus < n and u[ptr_minus] < g1:
            h_minus[rv[ptr_minus], rw[ptr_minus]] += 1
            ptr_minus += 1
        while ptr_plus < n and u[ptr_plus] <= g1:
            h_plus[rv[ptr_plus], rw[ptr_plus]] += 1
            ptr_plus += 1
        inc_plus = h_plus.cumsum(axis=0).cumsum(axis=1)
        inc_minus = h_minus.cumsum(axis=0).cumsum(axis=1)
        a_minus = np.zeros_like(inc_minus)
        a_minus[1:, 1:] = inc_minus[:-1, :-1]
        volume = g1 * vol_vw
        best = max(
            best,
            float((volume - a_minus / n).max()),
            float((inc_plus / n - volume).max()),
        )
    return best


def star_discrepancy(ps: PointSet, n_limit: Optional[int] = None):
    """Exact D*_N for s <= 3: a Fraction for exact sets, float otherwise.

    Exact cost grows like N^s, so point counts above the per-dimension
    default budget (200000 / 8192 / 512 for s = 1 / 2 / 3) raise
    BudgetError unless n_limit raises the cap explicitly.
    """
    s = ps.dim
    if s < 1:
        raise ValueError("empty point set")
    if s > 3:
        raise BudgetError(
            f"exact star discrepancy supports s <= 3 (got s={s}); "
            "use sampled_deviation_lower_bound for higher dimensions"
        )
    n = ps.count
    if n < 1:
        raise ValueError("need at least one point")
    cap = STAR_DISCREPANCY_BUDGET[s] if n_limit is None else n_limit
    if n > cap:
        raise BudgetError(
            f"N={n} exceeds the exact-sweep budget {cap} for s={s}; "
            "pass n_limit to override or use sampled_deviation_lower_bound"
        )
    if ps.is_exact:
        nums = np.array(ps.numerators, dtype=np.int64)
        result = _star_exact(nums, ps.denominators, n)
        if s == 1:
            # the 1D closed form is independent of the sweep; a mismatch
            # means one of them is broken, which must never pass silently
            closed = star_discrepancy_1d_closed_form(ps)
            if closed != result:
                raise RuntimeError(
                    f"1D sweep {result} disagrees with closed form {closed}"
                )
        return result
    return _star_float(np.array(ps.float_rows, dtype=np.float64), n)


def star_discrepancy_1d_closed_form(ps: PointSet) -> Fraction:
    """D*_N = 1/(2N) + max_i |x_(i) - (2i-1)/(2N)| for one dimension, exact."""
    if ps.dim != 1:
        raise ValueError("closed form is one-dimensional only")
    if not ps.is_exact:
        raise ValueError("closed form needs an exact point set")
    n = ps.count
    xs = sorted(Fraction(row[0], ps.denominators[0]) for row in ps.numerators)
    half = Fraction(1, 2 * n)
    dev = max(abs(x - Fraction(2 * i - 1, 2 * n)) for i, x in enumerate(xs, start=1))
    return half + dev


def sampled_deviation_lower_bound(
    ps: PointSet, samples: int = 10_000, seed: int = 0
) -> Fraction:
    """Exact deviation at `samples` random corners: a certified lower bound.

    Corners have coordinates k/2^30 with k in [1, 2^30]; both the strict and
    weak counts are compared against the closed volume in exact integer
    arithmetic, so the result is a true lower bound for D*_N of an exact set.
    """
    if not ps.is_exact:
        raise ValueError("sampling bound needs an exact point set")
    rng = np.random.default_rng(seed)
    bits = 30
    scale = 1 << bits
    s = ps.dim
    n = ps.count
    ks = rng.integers(1, scale + 1, size=(samples, s), dtype=np.int64)
    nums = np.array(ps.numerators, dtype=np.int64)
    dens = np.array(ps.denominators, dtype=np.int64)
    # x_j < k/2^30  <=>  num_j * 2^30 < k * D_j   (all within int64)
    lhs = nums * scale  # (n, s)
    rhs = ks[:, None, :] * dens[None, None, :]  # (samples, n, s)
    strict = (lhs[None, :, :] < rhs).all(axis=2).sum(axis=1)
    weak = (lhs[None, :, :] <= rhs).all(axis=2).sum(axis=1)
    best = Fraction(0)
    vol_den = scale ** s
    for i in range(samples):
        vol_num = 1
        for j in range(s):
            vol_num *= int(ks[i, j])
        lo = Fraction(vol_num, vol_den) - Fraction(int(strict[i]), n)
        hi = Fraction(int(weak[i]), n) - Fraction(vol_num, vol_den)
        if lo > best:
            best = lo
        if hi > best:
            best = hi
    return best


# ---------------------------------------------------------------------------
# Lattice-rule figures of merit
# ---------------------------------------------------------------------------

def _bernoulli2(x: np.ndarray) -> np.ndarray:
    return x * x - x + 1.0 / 6.0


def p_alpha(a: Sequence[int], n: int, alpha: int = 2) -> float:
    """P_alpha of the rank-1 lattice with generator a mod n.

    Only alpha = 2 is implemented, via the Bernoulli closed form
    P_2 = -1 + (1/N) sum_k prod_j (1 + 2 pi^2 B_2({k a_j / N})).
    """
    if alpha != 2:
        raise ValueError("only alpha = 2 has a closed form here")
    if n < 1:
        raise ValueError("need n >= 1")
    avec = np.array([v % n for v in a], dtype=np.int64)
    k = np.arange(n, dtype=np.int64)
    frac = (k[:, None] * avec[None, :] % n) / n
    terms = (1.0 + 2.0 * math.pi ** 2 * _bernoulli2(frac)).prod(axis=1)
    return float(terms.mean() - 1.0)


def p2_dual_sum(a: Sequence[int], n: int, h_bound: int) -> float:
    """Truncated dual-lattice sum: sum over 0 < |h|_inf <= h_bound with
    a . h = 0 mod n of prod_j max(1, |h_j|)^(-2).  Independent oracle for
    p_alpha; the truncation error is bounded by p2_tail_bound."""
    s = len(a)
    if s not in (1, 2, 3):
        raise ValueError("dual sum implemented for s <= 3")
    if (2 * h_bound + 1) ** s > 1 << 26:
        raise BudgetError("dual sum grid too large")
    axes = [np.arange(-h_bound, h_bound + 1, dtype=np.int64)] * s
    grids = np.meshgrid(*axes, indexing="ij")
    dot = sum(g * (ai % n) for g, ai in zip(grids, a)) % n
    mask = dot == 0
    weight = np.ones_like(grids[0], dtype=np.float64)
    for g in grids:
        weight = weight / np.maximum(1, np.abs(g)).astype(np.float64) ** 2
    origin = tuple([h_bound] * s)
    mask[origin] = False
    return float(weight[mask].sum())


def p2_tail_bound(s: int, h_bound: int) -> float:
    """Upper bound on the dual-sum truncation error: the h with some
    |h_j| > H contribute at most s * (2/H) * (1 + pi^2/3)^(s-1)."""
    return 2.0 * s * (1.0 + math.pi ** 2 / 3.0) ** (s - 1) / h_bound


def character_orthogonality(a: Sequence[int], n: int, h: Sequence[int]) -> int:
    """(1/N) sum_k e^(2 pi i k (a.h) / N) as an exact 0/1 indicator.

    The exact integer test a.h = 0 mod n decides the value; a floating
    summation cross-checks it to 1e-10 and a disagreement raises, since it
    would mean the arithmetic itself is broken.
    """
    if len(h) != len(a):
        raise ValueError("h and a must have equal length")
    dot = sum(ai * hi for ai, hi in zip(a, h)) % n
    exact = 1 if dot == 0 else 0
    acc = 0j
    for k in range(n):
        acc += cmath.exp(2j * math.pi * k * dot / n)
    if abs(acc / n - exact) >= 1e-10:
        raise RuntimeError(
            f"character sum {acc / n} disagrees with exact test {exact}"
        )
    return exact


def qmc_integrate(f: Callable[[tuple[float, ...]], float], ps: PointSet) -> float:
    """Equal-weight cubature (1/N) sum f(x_k); rejects non-finite values."""
    total = []
    for idx, row in enumerate(ps.as_floats()):
        val = float(f(row))
        if not math.isfinite(val):
            raise ValueError(f"integrand returned {val} at node index {idx}")
        total.append(val)
    return math.fsum(total) / ps.count


def net_discrepancy_diagnostic(
    ps: PointSet, b: int, m: int, s: Optional[int] = None
) -> float:
    """N D*_N / (b^t (log N)^(s-1)): the constant in front of the classical
    digital-net discrepancy estimate.  Needs m >= 2 so log N > 0 ... and the
    normalization is only meaningful with at least two digits anyway."""
    if m < 2:
        raise ValueError("diagnostic needs m >= 2")
    t = minimal_t_geometric(ps, b, m, s)
    d_star = star_discrepancy(ps)
    n = ps.count
    dim = ps.dim
    return float(d_star) * n / (b ** t * math.log(n) ** (dim - 1))


# ---------------------------------------------------------------------------
# Combined report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QualityReport:
    n: int
    s: int
    representation: str
    b: Optional[int] = None
    m: Optional[int] = None
    t_geometric: Optional[int] = None
    t_dual: Optional[int] = None
    star_disc: Optional[Fraction | float] = None
    star_disc_float: Optional[float] = None
    p2: Optional[float] = None
    diagnostic_ratio: Optional[float] = None

    def as_json_dict(self) -> dict:
        d = {
            "n": self.n,
            "s": self.s,
            "representation": self.representation,
            "b": self.b,
            "m": self.m,
            "t_geometric": self.t_geometric,
            "t_dual": self.t_dual,
            "star_discrepancy": (
                None
                if self.star_disc is None
                else {
                    "num": self.star_disc.numerator,
                    "den": self.star_disc.denominator,
                }
                if isinstance(self.star_disc, Fraction)
                else self.star_disc
            ),
            "star_discrepancy_float": self.star_disc_float,
            "p2": self.p2,
            "diagnostic_ratio": self.diagnostic_ratio,
        }
        return d


def assess(
    ps: PointSet,
    b: Optional[int] = None,
    m: Optional[int] = None,
    G: Optional[GeneratingMatrixSet] = None,
    n_limit: Optional[int] = None,
) -> QualityReport:
    """Best-effort quality report: each measure is filled in when its
    preconditions hold and left None otherwise (budget misses included)."""
    t_geo = None
    if b is not None and m is not None and ps.is_exact:
        try:
            t_geo = minimal_t_geometric(ps, b, m)
        except ValueError:
            t_geo = None
    t_dual = None
    if G is not None and G.rows == G.cols:
        try:
            t_dual = minimal_t_dual(G)
        except BudgetError:
            t_dual = None
    d_star = None
    try:
        d_star = star_discrepancy(ps, n_limit=n_limit)
    except BudgetError:
        d_star = None
    p2 = None
    if ps.provenance.get("kind") == "lattice":
        p2 = p_alpha(ps.provenance["a"], ps.provenance["n"])
    diag = None
    if (
        t_geo is not None
        and d_star is not None
        and m is not None
        and b is not None
        and m >= 2
    ):
        diag = float(d_star) * ps.count / (b ** t_geo * math.log(ps.count) ** (ps.dim - 1))
    return QualityReport(
        n=ps.count,
        s=ps.dim,
        representation=ps.representation.value,
        b=b,
        m=m,
        t_geometric=t_geo,
        t_dual=t_dual,
        star_disc=d_star,
        star_disc_float=None if d_star is None else float(d_star),
        p2=p2,
        diagnostic_ratio=diag,
    )
