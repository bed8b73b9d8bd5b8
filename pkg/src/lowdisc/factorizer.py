"""Factorization over F_p (p in {2, 3, 5}) via a differential-operator kernel.

For monic f with f(0) != 0 and deg f = d, the operator

    N_f(h) = f^q * H^(q-1)(h / f) - h^q        (q = p, deg h < d)

with H^(q-1) the (q-1)-st Hasse derivative, is F_q-linear on the space of
polynomials of degree < d.  Writing squarefree f = g_1 ... g_r, its kernel is
exactly the r-dimensional span of { g_i' * (f / g_i) }: a partial-fraction
computation shows H^(q-1)((x-a)^(-1)) = (x-a)^(-q), so h/f with simple poles
and residues in F_q solves the equation, and conversely.  Consequently

  * dim ker N_f = number of distinct irreducible factors of squarefree f,
    so dimension 1 certifies irreducibility, and
  * gcd(f, h - c*f') for kernel elements h and c in F_q separates factors
    (f' is the kernel element with all residues 1).

Everything is exact; the series h/f is expanded at 0, which is why the
nonzero-constant-term normalization matters.  Powers of x and the leading
coefficient are split off before the kernel machinery runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    NEG_INF,
    Poly,
    binom_mod,
    inv_mod,
    is_irreducible,
    nullspace_mod_p,
    poly_gcd,
)

SUPPORTED_PRIMES = (2, 3, 5)


def _check_operator_input(f: Poly, h: Poly) -> None:
    if f.p not in SUPPORTED_PRIMES:
        raise ValueError(f"characteristic {f.p} unsupported (need one of {SUPPORTED_PRIMES})")
    if f.p != h.p:
        raise ValueError(f"mixed moduli: {f.p} vs {h.p}")
    if f.degree is NEG_INF or f.degree < 1:
        raise ValueError("f must have degree >= 1")
    if not f.is_monic:
        raise ValueError("f must be monic")
    if f.coeff(0) == 0:
        raise ValueError("f must have a nonzero constant term")
    if not h.is_zero and h.degree >= f.degree:
        raise ValueError("h must have degree < deg f")


def niederreiter_operator(f: Poly, h: Poly) -> Poly:
    """N_f(h) = f^q * H^(q-1)(h/f) - h^q, exact.

    h/f is expanded as a power series at 0 far enough (q*d + q terms) that
    every coefficient of the product up to degree q*d is exact; the true
    result has degree <= q*(d-1), which is asserted.
    """
    _check_operator_input(f, h)
    p = f.p
    d = f.degree
    K = p * d + p  # series terms needed
    inv_f0 = inv_mod(f.coeff(0), p)
    fc = f.coeffs
    u = [0] * K
    for i in range(K):
        acc = h.coeff(i)
        for j in range(1, min(i, d) + 1):
            acc -= fc[j] * u[i - j]
        u[i] = acc * inv_f0 % p
    # termwise Hasse derivative of order q-1: coefficient of x^k becomes
    # C(k+q-1, q-1) * u_{k+q-1}
    w = [binom_mod(k + p - 1, p - 1, p) * u[k + p - 1] % p for k in range(p * d + 1)]
    # multiply by f^q; Frobenius makes f^q supported on multiples of q only
    prod = [0] * (p * d + 1)
    for i in range(d + 1):
        fi = fc[i]
        if fi:
            base = i * p
            for k in range(base, p * d + 1):
                prod[k] = (prod[k] + fi * w[k - base]) % p
    hq = h.pth_power()
    out = [(prod[k] - hq.coeff(k)) % p for k in range(p * d + 1)]
    result = Poly(out, p)
    if not result.is_zero and result.degree > p * (d - 1):
        raise RuntimeError(
            f"operator overflow: deg {result.degree} > {p * (d - 1)} for f={f!r}, h={h!r}"
        )
    return result


def kernel_basis(f: Poly) -> list[Poly]:
    """Basis of { h : deg h < deg f, N_f(h) = 0 } as polynomials.

    Requires monic f, f(0) != 0, deg f >= 1.  For squarefree f the dimension
    equals the number of distinct irreducible factors.
    """
    _check_operator_input(f, Poly.zero(f.p))
    p = f.p
    d = f.degree
    images = [niederreiter_operator(f, Poly.monomial(p, k)) for k in range(d)]
    height = p * (d - 1) + 1
    rows = [[img.coeff(i) for img in images] for i in range(height)]
    basis = nullspace_mod_p(rows, d, p)
    return [Poly(v, p) for v in basis]


def kernel_dimension(f: Poly) -> int:
    return len(kernel_basis(f))


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic pairwise-coprime squarefree parts with multiplicities.

    Characteristic-p aware: a vanishing derivative means f = g(x)^p via the
    Frobenius, handled by recursing on the p-th root with multiplicities
    scaled by p.  The product of part^mult over the result equals f.
    """
    if not f.is_monic:
        raise ValueError("squarefree decomposition needs monic input")
    p = f.p
    fp = f.derivative()
    if fp.is_zero:
        return [(g, m * p) for g, m in squarefree_decomposition(f.pth_root())]
    out: list[tuple[Poly, int]] = []
    c = poly_gcd(f, fp)
    w = f // c
    i = 1
    while w.degree is not NEG_INF and w.degree >= 1:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree is not NEG_INF and z.degree >= 1:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree is not NEG_INF and c.degree >= 1:
        out.extend((g, m * p) for g, m in squarefree_decomposition(c.pth_root()))
    return out


def _split_squarefree(g: Poly) -> list[Poly]:
    """All monic irreducible factors of squarefree monic g with g(0) != 0."""
    if g.degree == 1:
        return [g]
    basis = kernel_basis(g)
    if len(basis) == 1:
        return [g]  # kernel dimension 1 certifies irreducibility
    p = g.p
    gp = g.derivative()
    for h in basis:
        candidates = [poly_gcd(g, h)]
        candidates.extend(poly_gcd(g, h - c * gp) for c in range(p))
        for dvd in candidates:
            if dvd.degree is not NEG_INF and 1 <= dvd.degree < g.degree:
                rest = g // dvd
                return _split_squarefree(dvd) + _split_squarefree(rest)
    raise RuntimeError(f"kernel basis failed to split {g!r}")  # pragma: no cover


@dataclass(frozen=True)
class FactorizationResult:
    input: Poly
    content: int                       # leading coefficient of the input
    factors: tuple[tuple[Poly, int], ...]  # (monic irreducible, multiplicity)

    def reassemble(self) -> Poly:
        acc = Poly((self.content,), self.input.p)
        for g, m in self.factors:
            acc = acc * g ** m
        return acc

    def verify(self) -> bool:
        """Reassembly matches and every factor passes trial division."""
        if self.reassemble() != self.input:
            return False
        return all(is_irreducible(g) for g, _ in self.factors)


def factor(f: Poly) -> FactorizationResult:
    """Full factorization into monic irreducibles times the content.

    Supported characteristics: 2, 3, 5.  Requires deg f >= 1.  The result is
    sorted by degree then lexicographically on coefficient tuples, and an
    internal reassembly check guards every call.
    """
    if f.p not in SUPPORTED_PRIMES:
        raise ValueError(f"characteristic {f.p} unsupported (need one of {SUPPORTED_PRIMES})")
    if f.degree is NEG_INF or f.degree < 1:
        raise ValueError("factor needs deg f >= 1")
    content = f.leading
    work = f.monic()
    found: dict[Poly, int] = {}
    # split off powers of x so the kernel operator sees a unit constant term
    e0 = 0
    while work.coeff(0) == 0:
        e0 += 1
        work = Poly(work.coeffs[1:], f.p)
    if e0:
        found[Poly.x(f.p)] = e0
    if work.degree >= 1:
        for part, mult in squarefree_decomposition(work):
            for g in _split_squarefree(part):
                found[g] = found.get(g, 0) + mult
    factors = tuple(sorted(found.items(), key=lambda fm: (fm[0].degree, fm[0].coeffs)))
    result = FactorizationResult(input=f, content=content, factors=factors)
    if result.reassemble() != f:
        raise RuntimeError(f"reassembly mismatch for {f!r}")  # pragma: no cover
    return result
