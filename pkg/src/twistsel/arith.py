"""Exact arithmetic substrate: factorization, valuations, squareclasses.

Everything here is pure integer/rational arithmetic (no floats).  Values are
immutable and safe to share between workers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Tuple, Union

# The infinite place of Q.  Finite places are the primes themselves.
INF = "oo"
Place = Union[int, str]

_TRIAL_BOUND = 10**6

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite odd n.  Deterministic retry seeding."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        g = 1
        while g == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            g = gcd(abs(x - y), n)
        if g != n:
            return g


def factor(n: int) -> List[Tuple[int, int]]:
    """Prime factorization of |n| as a list of (prime, exponent), primes increasing.

    Units factor as the empty list.  Zero is rejected.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: Dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # wheel over 6k+-1
    d = 7
    step = 4
    while d * d <= n and d <= _TRIAL_BOUND:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_probable_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            g = _pollard_rho(m)
            stack.append(g)
            stack.append(m // g)
    return sorted(out.items())


def squarefree_part(n: int) -> Tuple[int, int]:
    """Write n = s * m^2 with s squarefree, sign(s) = sign(n).  Returns (s, m)."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s = -1 if n < 0 else 1
    m = 1
    for p, e in factor(n):
        if e % 2:
            s *= p
        m *= p ** (e // 2)
    return s, m


def is_squarefree(n: int) -> bool:
    return n != 0 and squarefree_part(n)[0] == n


def padic_valuation(x: Union[int, Fraction], p: int) -> int:
    """v_p(x), normalized so v_p(p) = 1.  Rejects x = 0."""
    if x == 0:
        raise ValueError("v_p(0) is undefined")
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        num, den = int(x), 1
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def least_nonresidue(p: int) -> int:
    """Smallest positive quadratic nonresidue mod odd prime p (always prime)."""
    u = 2
    while legendre(u, p) == 1:
        u += 1
    return u


def sqrt_mod(a: int, p: int):
    """A square root of a mod odd prime p via Tonelli-Shanks, or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


@dataclass(frozen=True)
class Squareclass:
    """A class in Q*/Q*^2, stored as its squarefree integer representative."""

    rep: int

    def __post_init__(self):
        if self.rep == 0 or not is_squarefree(self.rep):
            raise ValueError(f"{self.rep} is not a squarefree nonzero integer")

    @classmethod
    def of(cls, x: Union[int, Fraction]) -> "Squareclass":
        """Squareclass of any nonzero rational."""
        if x == 0:
            raise ValueError("0 has no squareclass")
        if isinstance(x, Fraction):
            n = x.numerator * x.denominator
        else:
            n = int(x)
        return cls(squarefree_part(n)[0])

    def __mul__(self, other: "Squareclass") -> "Squareclass":
        return Squareclass.of(self.rep * other.rep)

    def __int__(self) -> int:
        return self.rep


def rational_square(x: Union[int, Fraction]) -> bool:
    if x < 0:
        return False
    fr = Fraction(x)
    rn, rd = isqrt(fr.numerator), isqrt(fr.denominator)
    return rn * rn == fr.numerator and rd * rd == fr.denominator


def is_square_in_Qp(x: Union[int, Fraction], place: Place) -> bool:
    """True iff nonzero x is a square in Q_p (or in R for the infinite place)."""
    if x == 0:
        raise ValueError("0 is not in Q_p^*")
    if place == INF:
        return x > 0
    p = int(place)
    v = padic_valuation(x, p)
    if v % 2:
        return False
    u = Fraction(x) / Fraction(p) ** v
    # unit part lives in Z_p^*; reduce it
    if p == 2:
        num, den = u.numerator % 8, u.denominator % 8
        return num * pow(den, -1, 8) % 8 == 1
    num, den = u.numerator % p, u.denominator % p
    return legendre(num * pow(den, -1, p) % p, p) == 1


def local_squareclass(s: Squareclass, place: Place) -> int:
    """Canonical representative of the image of s in Q_p*/Q_p*^2.

    Representatives: {1, -1} at oo; {1, u, p, u*p} (u the least nonresidue)
    at odd p; {1, 3, 5, 7, 2, 6, 10, 14} at p = 2.
    """
    n = s.rep
    if place == INF:
        return 1 if n > 0 else -1
    p = int(place)
    v = padic_valuation(n, p) % 2
    u = n // p ** padic_valuation(n, p)
    if p == 2:
        cls = u % 8
        return 2 * cls if v else cls
    unit_sq = legendre(u % p, p) == 1
    w = 1 if unit_sq else least_nonresidue(p)
    return w * (p if v else 1)


def squareclass_reps(place: Place) -> List[int]:
    """Squarefree global integers hitting every class of Q_p*/Q_p*^2 exactly once."""
    if place == INF:
        return [1, -1]
    p = int(place)
    if p == 2:
        return [1, 3, 5, 7, 2, 6, 10, 14]
    u = least_nonresidue(p)
    return [1, u, p, u * p]


@dataclass(frozen=True)
class LocalSquareclassProfile:
    """Classes of Q_p*/Q_p*^2 with their exact densities among squarefree
    integers ordered by absolute value.

    For odd p each unit class has density p/(2(p+1)) and each uniformizer
    class 1/(2(p+1)); at p = 2 the odd part of a squarefree integer is
    equidistributed mod 8 and v_2 = 1 happens with density 1/3; at oo the
    sign is a fair coin.  (Checked against an exhaustive count over
    squarefree |s| <= 10^6 before being hard-coded.)
    """

    place: Place
    classes: Tuple[int, ...] = field(init=False)
    density_of: Dict[int, Fraction] = field(init=False)

    def __post_init__(self):
        reps = tuple(squareclass_reps(self.place))
        object.__setattr__(self, "classes", reps)
        dens: Dict[int, Fraction] = {}
        if self.place == INF:
            dens = {1: Fraction(1, 2), -1: Fraction(1, 2)}
        elif int(self.place) == 2:
            for r in reps:
                dens[r] = Fraction(1, 6) if r % 2 else Fraction(1, 12)
        else:
            p = int(self.place)
            for r in reps:
                dens[r] = Fraction(p, 2 * (p + 1)) if r % p else Fraction(1, 2 * (p + 1))
        object.__setattr__(self, "density_of", dens)
        assert sum(dens.values()) == 1


def squarefree_in_order(bound: int):
    """Yield squarefree s with |s| <= bound, by |s| ascending, negative first."""
    for a in range(1, bound + 1):
        if is_squarefree(a):
            yield -a
            yield a
