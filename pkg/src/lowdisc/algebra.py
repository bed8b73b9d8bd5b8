"""Exact arithmetic over prime fields F_p and the polynomial ring F_p[x].

Polynomials are immutable coefficient tuples, lowest degree first, with no
trailing zeros (canonical form).  Field elements are plain ints reduced into
[0, p).  Only prime moduli are supported; extension fields are out of scope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

NEG_INF = float("-inf")


class PrecisionError(Exception):
    """A Laurent coefficient below the computed truncation order was requested."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


_KNOWN_PRIMES: set[int] = set()


def check_prime(p: int) -> int:
    """Return p if prime, else raise ValueError.  Caches positives."""
    if p not in _KNOWN_PRIMES:
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus must be prime, got {p!r}")
        _KNOWN_PRIMES.add(p)
    return p


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a modulo prime p (extended Euclid)."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def binom_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod p via Lucas' theorem (n, k >= 0)."""
    if k < 0 or n < 0:
        raise ValueError("binom_mod needs n, k >= 0")
    r = 1
    while k:
        np_, kp = n % p, k % p
        if kp > np_:
            return 0
        num = den = 1
        for t in range(kp):
            num = num * (np_ - t) % p
            den = den * (t + 1) % p
        r = r * num * pow(den, -1, p) % p
        n //= p
        k //= p
    return r


class Poly:
    """Univariate polynomial over F_p in canonical form.

    Supports +, -, *, divmod, //, %, ** (non-negative int), == and hashing.
    Mixed operands: plain ints are lifted to constants.  Operations between
    polynomials over different primes raise ValueError.
    """

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable[int], p: int):
        check_prime(p)
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):  # immutability
        raise AttributeError("Poly is immutable")

    # --- constructors -------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls((), p)

    @classmethod
    def one(cls, p: int) -> "Poly":
        return cls((1,), p)

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls((0, 1), p)

    @classmethod
    def monomial(cls, p: int, k: int, c: int = 1) -> "Poly":
        if k < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls([0] * k + [c], p)

    # --- basic structure ----------------------------------------------
    @property
    def degree(self):
        """Degree as an int; the zero polynomial has degree -inf."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> int:
        """Coefficient of x^k (0 beyond the degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    # --- ring operations ------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError(f"mixed moduli: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return Poly((other,), self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = (out[i] + v) % self.p
        return Poly(out, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-v for v in self.coeffs], self.p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Poly.zero(self.p)
        a, b = self.coeffs, o.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly([v % self.p for v in out], self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        if len(self.coeffs) < len(o.coeffs):
            return Poly.zero(p), self
        rem = list(self.coeffs)
        dq = len(o.coeffs) - 1
        inv_lead = inv_mod(o.coeffs[-1], p)
        quot = [0] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] % p
            if c:
                q = c * inv_lead % p
                quot[i - dq] = q
                for j, bj in enumerate(o.coeffs):
                    rem[i - dq + j] = (rem[i - dq + j] - q * bj) % p
        return Poly(quot, p), Poly(rem[:dq], p)

    def __floordiv__(self, other):
        r = divmod(self, other)
        return r[0] if r is not NotImplemented else NotImplemented

    def __mod__(self, other):
        r = divmod(self, other)
        return r[1] if r is not NotImplemented else NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = Poly.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly((other,), self.p)
        return (
            isinstance(other, Poly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, a: int) -> int:
        """Evaluate at a field element (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.p
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)}, p={self.p})"

    # --- calculus and helpers -------------------------------------------
    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        if self.coeffs[-1] == 1:
            return self
        inv = inv_mod(self.coeffs[-1], self.p)
        return Poly([c * inv for c in self.coeffs], self.p)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def hasse_derivative(self, k: int) -> "Poly":
        """k-th Hasse (divided) derivative: sum C(i, k) a_i x^(i-k).

        Unlike the iterated formal derivative this does not vanish for
        k >= p; the binomial weights are taken mod p via Lucas.
        """
        if k < 0:
            raise ValueError("Hasse derivative order must be >= 0")
        if k == 0:
            return self
        out = [
            binom_mod(i, k, self.p) * c % self.p
            for i, c in enumerate(self.coeffs)
        ][k:]
        return Poly(out, self.p)

    def pth_power(self) -> "Poly":
        """self**p computed via Frobenius: (sum a_i x^i)^p = sum a_i x^(ip)."""
        out = [0] * (len(self.coeffs) * self.p)
        for i, c in enumerate(self.coeffs):
            out[i * self.p] = c
        return Poly(out, self.p)

    def pth_root(self) -> "Poly":
        """Inverse of pth_power; requires support only on multiples of p."""
        for i, c in enumerate(self.coeffs):
            if c and i % self.p:
                raise ValueError("polynomial is not a p-th power")
        return Poly(self.coeffs[:: self.p], self.p)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    if f.p != g.p:
        raise ValueError(f"mixed moduli: {f.p} vs {g.p}")
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : M v = 0} over F_p in deterministic RREF parametrization."""
    check_prime(p)
    mat = [list(row) for row in rows]
    pivot_of_col: dict[int, int] = {}
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = inv_mod(mat[rank][col], p)
        mat[rank] = [v * inv % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] % p:
                factor = mat[r][col]
                mat[r] = [(a - factor * b) % p for a, b in zip(mat[r], mat[rank])]
        pivot_of_col[col] = rank
        rank += 1
    basis = []
    for free_col in (c for c in range(ncols) if c not in pivot_of_col):
        v = [0] * ncols
        v[free_col] = 1
        for col, r in pivot_of_col.items():
            v[col] = (-mat[r][free_col]) % p
        basis.append(v)
    return basis


def interpolate(values: Sequence[int], p: int) -> Poly:
    """Lagrange interpolation: the unique poly of degree < p with f(i) = values[i].

    `values` must have length p (one value per field element, in order).
    """
    check_prime(p)
    if len(values) != p:
        raise ValueError(f"need exactly {p} values, got {len(values)}")
    result = Poly.zero(p)
    for i, v in enumerate(values):
        v %= p
        if v == 0:
            continue
        num = Poly.one(p)
        den = 1
        for j in range(p):
            if j != i:
                num = num * Poly((-j, 1), p)
                den = den * (i - j) % p
        result = result + num * (v * inv_mod(den, p))
    return result


# ---------------------------------------------------------------------------
# Laurent series at infinity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentSeries:
    """Truncated formal Laurent series at infinity over F_p.

    Carries coefficients for exponents from `top` down to `order`, highest
    first.  Exponents above `top` are exactly zero; below `order` nothing was
    computed, so coeff() raises PrecisionError there.  For a nonzero series
    the coefficient at `top` is nonzero (the leading term).
    """

    top: int
    order: int
    coeffs: tuple[int, ...]
    p: int

    def coeff(self, k: int) -> int:
        if k > self.top:
            return 0
        if k < self.order:
            raise PrecisionError(
                f"coefficient at x^{k} not computed (truncation order {self.order})"
            )
        return self.coeffs[self.top - k]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        terms = [
            f"{c}*x^{self.top - i}" for i, c in enumerate(self.coeffs) if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"LaurentSeries({body} + O(x^{self.order - 1}), p={self.p})"


def laurent_expand(num: Poly, den: Poly, order: int) -> LaurentSeries:
    """Expand num/den as a Laurent series at infinity down to x^order.

    The leading exponent is deg(num) - deg(den).  Computed by one shifted
    polynomial floor division: with K = max(0, -order), the coefficient of
    x^(j+K) in (num * x^K) // den equals the series coefficient c_j for all
    j >= order.
    """
    if den.is_zero:
        raise ZeroDivisionError("Laurent expansion needs a nonzero denominator")
    if num.p != den.p:
        raise ValueError(f"mixed moduli: {num.p} vs {den.p}")
    p = num.p
    if num.is_zero:
        return LaurentSeries(top=order - 1, order=order, coeffs=(), p=p)
    top = num.degree - den.degree
    if top < order:
        return LaurentSeries(top=order - 1, order=order, coeffs=(), p=p)
    K = max(0, -order)
    shifted = Poly(((0,) * K) + num.coeffs, p)
    q = shifted // den
    coeffs = tuple(q.coeff(j + K) for j in range(top, order - 1, -1))
    return LaurentSeries(top=top, order=order, coeffs=coeffs, p=p)


# ---------------------------------------------------------------------------
# Irreducible enumeration
# ---------------------------------------------------------------------------

def _monic_polys(p: int, d: int) -> Iterator[Poly]:
    """All monic polynomials of degree d, ascending constant-first lex order."""
    for tail in itertools.product(range(p), repeat=d):
        yield Poly(tail + (1,), p)


def is_irreducible(f: Poly) -> bool:
    """Irreducibility by trial division over all monic divisors of degree <= deg/2."""
    d = f.degree
    if d is NEG_INF or d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, int(d) // 2 + 1):
        for g in _monic_polys(f.p, e):
            if (f % g).is_zero:
                return False
    return True


def monic_irreducibles(p: int, count: int) -> list[Poly]:
    """First `count` monic irreducibles over F_p.

    Order: by degree, then lexicographic on (a_0, a_1, ...), constant term
    first.  For p = 2 this starts x, x+1, x^2+x+1, x^3+x+1, x^3+x^2+1, ...
    """
    check_prime(p)
    if count < 1:
        raise ValueError("count must be >= 1")
    out: list[Poly] = []
    d = 1
    while len(out) < count:
        for f in _monic_polys(p, d):
            half = d // 2
            if any((f % g).is_zero for g in out if g.degree <= half):
                continue
            out.append(f)
            if len(out) == count:
                return out
        d += 1
    return out


# ---------------------------------------------------------------------------
# Serialization (CLI format: comma-separated coefficients, lowest degree first)
# ---------------------------------------------------------------------------

def poly_to_string(f: Poly) -> str:
    if f.is_zero:
        return "0"
    return ",".join(str(c) for c in f.coeffs)


def poly_from_string(s: str, p: int) -> Poly:
    try:
        coeffs = [int(t) for t in s.strip().split(",") if t.strip() != ""]
    except ValueError as e:
        raise ValueError(f"bad coefficient list {s!r}: {e}") from None
    return Poly(coeffs, p)


def parse_poly_file(text: str) -> Poly:
    """Parse the on-disk format: a `p=<prime>` header line, then coefficients."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].lower().startswith("p="):
        raise ValueError("polynomial file must start with a p=<prime> header")
    p = int(lines[0][2:])
    if len(lines) < 2:
        raise ValueError("polynomial file has no coefficient line")
    return poly_from_string(lines[1], p)


def poly_file_contents(f: Poly) -> str:
    return f"p={f.p}\n{poly_to_string(f)}\n"
