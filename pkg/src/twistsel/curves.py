"""Elliptic curves over Q and the rational-3-isogeny model y^2 = x^3 + D(ax+b)^2.

The model triple (D, a, b) is kept with D a squarefree integer; square factors
of D are folded into a and b, which is harmless because
D m^2 (a x + b)^2 = D (m a x + m b)^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .arith import (
    Squareclass,
    factor,
    is_square_in_Qp,
    padic_valuation,
    rational_square,
    squarefree_part,
)

Q = Fraction


class NoRationalThreeIsogeny(Exception):
    """The 3-division polynomial has no rational root."""


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    """Long Weierstrass model with exact rational a-invariants."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurveError(f"singular model {self.ainvs()}")
        # standard identities, asserted exactly
        assert 4 * self.b8 == self.b2 * self.b6 - self.b4 ** 2
        assert 1728 * self.discriminant == self.c4 ** 3 - self.c6 ** 2

    @classmethod
    def from_ainvs(cls, ainvs) -> "WeierstrassCurve":
        a1, a2, a3, a4, a6 = (Q(a) for a in ainvs)
        return cls(a1, a2, a3, a4, a6)

    def ainvs(self) -> Tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> Fraction:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Fraction:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self) -> Fraction:
        return (
            self.a1 ** 2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 ** 2
            - self.a4 ** 2
        )

    @property
    def c4(self) -> Fraction:
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self) -> Fraction:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    @property
    def j(self) -> Fraction:
        return self.c4 ** 3 / self.discriminant

    def transform(self, u: Fraction, r: Fraction = 0, s: Fraction = 0, t: Fraction = 0) -> "WeierstrassCurve":
        """Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

        The returned model E' satisfies Delta' = Delta / u^12.
        """
        u, r, s, t = Q(u), Q(r), Q(s), Q(t)
        if u == 0:
            raise ValueError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.ainvs()
        A1 = (a1 + 2 * s) / u
        A2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
        A3 = (a3 + r * a1 + 2 * t) / u ** 3
        A4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
        A6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
        return WeierstrassCurve(A1, A2, A3, A4, A6)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs())


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, exact integer Newton iteration."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def three_division_poly(E: WeierstrassCurve) -> List[Fraction]:
    """Coefficients [3, b2, 3*b4, 3*b6, b8] of psi_3, highest degree first."""
    return [Q(3), E.b2, 3 * E.b4, 3 * E.b6, E.b8]


def _rational_roots(coeffs: List[Fraction]) -> List[Fraction]:
    """All rational roots of the polynomial with the given coefficients."""
    # clear denominators and content
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    roots = set()
    if ints[-1] == 0:
        roots.add(Q(0))
        while ints[-1] == 0:
            ints = ints[:-1]
    lead, const = ints[0], ints[-1]

    def divisors(n):
        n = abs(n)
        out = [1]
        for p, e in factor(n):
            out = [d * p ** k for d in out for k in range(e + 1)]
        return out

    for num in divisors(const):
        for d in divisors(lead):
            for sign in (1, -1):
                x = Q(sign * num, d)
                if sum(c * x ** (len(ints) - 1 - i) for i, c in enumerate(ints)) == 0:
                    roots.add(x)
    return sorted(roots)


@dataclass(frozen=True)
class ThreeIsogenyModel:
    """The curve y^2 = x^3 + D(ax + b)^2 with kernel points (0, +-b sqrt(D)).

    D is a squarefree nonzero integer; the mirror datum is Dhat = -3D.
    """

    D: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "b", Q(self.b))
        if self.b == 0:
            raise ValueError("b must be nonzero")
        if squarefree_part(self.D)[0] != self.D:
            raise ValueError("D must be squarefree")
        curve_from_model(self)  # validates nonsingularity

    @classmethod
    def make(cls, D0: Fraction, a: Fraction, b: Fraction) -> "ThreeIsogenyModel":
        """Canonicalize a raw rational triple by folding squares into (a, b)."""
        D0, a, b = Q(D0), Q(a), Q(b)
        if D0 == 0:
            raise ValueError("D must be nonzero")
        s, _ = squarefree_part(D0.numerator * D0.denominator)
        m2 = D0 / s
        rm, rd = m2.numerator, m2.denominator
        from math import isqrt

        m = Q(isqrt(rm), isqrt(rd))
        assert m * m == m2
        return cls(s, a * m, b * m)

    @property
    def Dhat(self) -> int:
        """Squarefree representative of the mirror class -3D."""
        return squarefree_part(-3 * self.D)[0]

    def kernel_is_rational(self) -> bool:
        return self.D == 1

    def rescale(self, mu: Fraction) -> "ThreeIsogenyModel":
        """Isomorphic model (D, a/mu, b/mu^3) via (x, y) -> (mu^2 x, mu^3 y)."""
        mu = Q(mu)
        return ThreeIsogenyModel(self.D, self.a / mu, self.b / mu ** 3)


def curve_from_model(m: ThreeIsogenyModel) -> WeierstrassCurve:
    """Expand y^2 = x^3 + D(ax+b)^2 into long Weierstrass form."""
    D, a, b = Q(m.D), m.a, m.b
    return WeierstrassCurve(Q(0), D * a * a, Q(0), 2 * D * a * b, D * b * b)


def dual_model(m: ThreeIsogenyModel) -> ThreeIsogenyModel:
    """Model of the 3-isogenous curve y^2 = x^3 - 3D(ax + 3b - (4/9)a^3 D)^2."""
    D, a, b = Q(m.D), m.a, m.b
    return ThreeIsogenyModel.make(-3 * D, a, 3 * b - Q(4, 9) * a ** 3 * D)


def quadratic_twist_model(m: ThreeIsogenyModel, s: Squareclass) -> ThreeIsogenyModel:
    """Model of E_s: y^2 = x^3 + Ds(ax + bs)^2."""
    return ThreeIsogenyModel.make(Q(m.D * s.rep), m.a, m.b * s.rep)


def torsion_kernel_sizes(m: ThreeIsogenyModel, s: Squareclass) -> Tuple[int, int]:
    """(|E_s[phi](Q)|, |E'_s[phihat](Q)|): 3 when Ds resp. -3Ds is a square."""
    ds = m.D * s.rep
    forward = 3 if rational_square(Q(ds)) else 1
    backward = 3 if rational_square(Q(-3 * ds)) else 1
    return forward, backward


def extract_isogeny_model(E: WeierstrassCurve, kernel_index: Optional[int] = None) -> ThreeIsogenyModel:
    """Find a rational 3-isogeny kernel on E and read off the (D, a, b) model.

    The kernel x-coordinates are the rational roots of psi_3.  When several
    exist the default pick is smallest |x0| with positive x0 preferred;
    kernel_index selects explicitly in that order.
    """
    roots = _rational_roots(three_division_poly(E))
    if not roots:
        raise NoRationalThreeIsogeny(f"psi_3 has no rational root for {E.ainvs()}")
    roots.sort(key=lambda x: (abs(x), 0 if x >= 0 else 1))
    x0 = roots[kernel_index if kernel_index is not None else 0]
    # complete the square: Y^2 = x^3 + (b2/4)x^2 + (b4/2)x + b6/4, then put
    # the kernel at x = 0
    p2, p1, p0 = E.b2 / 4, E.b4 / 2, E.b6 / 4
    c2 = p2 + 3 * x0
    c4 = p1 + 2 * p2 * x0 + 3 * x0 ** 2
    c6 = p0 + p1 * x0 + p2 * x0 ** 2 + x0 ** 3
    if c6 == 0:
        raise NoRationalThreeIsogeny("kernel point is 2-torsion; no order-3 point here")
    # (0, sqrt(c6)) has order 3 exactly when c4^2 = 4 c2 c6
    assert c4 ** 2 == 4 * c2 * c6, "psi_3 root did not produce an order-3 kernel"
    D = Squareclass.of(c6).rep
    b2 = c6 / D
    from math import isqrt

    b = Q(isqrt(b2.numerator), isqrt(b2.denominator))
    assert b * b == b2
    a = c4 / (2 * D * b)
    return ThreeIsogenyModel(D, a, b)


def velu_isogenous_curve(E: WeierstrassCurve) -> WeierstrassCurve:
    """Quotient of E (a1 = a3 = 0, kernel x = 0 of order 3) by that kernel.

    Velu's formulas; the isogeny is normalized so that it pulls the invariant
    differential of the image back to the differential of E.
    """
    assert E.a1 == 0 and E.a3 == 0
    a2, a4, a6 = E.a2, E.a4, E.a6
    # kernel generator (0, y0) with y0^2 = a6; t = 2*a4, w = 4*a6
    return WeierstrassCurve(Q(0), a2, Q(0), -9 * a4, -27 * a6 - 8 * a2 * a4)


# ---------------------------------------------------------------------------
# minimal models (Laska-Kraus-Connell)
# ---------------------------------------------------------------------------


def _kraus_ok(c4: int, c6: int) -> bool:
    """Kraus criterion: (c4, c6) come from an integral Weierstrass model."""
    if c6 % 9 == 0 and c6 % 27 != 0:  # v_3(c6) = 2 is forbidden
        return False
    if c6 % 4 == 3:
        return True
    return c4 % 16 == 0 and c6 % 32 in (0, 8)


def _model_from_c4c6(c4: int, c6: int) -> WeierstrassCurve:
    """Reduced integral model with the given invariants (Kraus condition holds)."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4 = (b2 * b2 - c4) // 24
    b6 = (-b2 ** 3 + 36 * b2 * b4 - c6) // 216
    assert b2 * b2 - c4 == 24 * b4 and -b2 ** 3 + 36 * b2 * b4 - c6 == 216 * b6
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    a6 = (b6 - a3) // 4
    a4 = (b4 - a1 * a3) // 2
    return WeierstrassCurve(Q(a1), Q(a2), Q(a3), Q(a4), Q(a6))


def integral_model(E: WeierstrassCurve) -> Tuple[WeierstrassCurve, Fraction]:
    """Scale to integer a-invariants.  Returns (E_int, u) with E_int = E.transform(u)."""
    L = 1
    for a, w in zip(E.ainvs(), (1, 2, 3, 4, 6)):
        for p, e in factor(a.denominator) if a != 0 else []:
            need = -((-e) // w)  # ceil(e / w)
            have = padic_valuation(Q(L), p)
            if have < need:
                L *= p ** (need - have)
    u = Q(1, L)
    return E.transform(u), u


def minimal_model(E: WeierstrassCurve) -> Tuple[WeierstrassCurve, Fraction]:
    """Global minimal model over Z.

    Returns (E_min, u) where E_min = E.transform(u, r, s, t) for suitable
    integers r, s, t, so Delta(E_min) = Delta(E) / u^12.
    """
    Eint, u0 = integral_model(E)
    c4, c6, disc = int(Eint.c4), int(Eint.c6), int(Eint.discriminant)
    u1 = 1
    for p, e in factor(disc):
        if e < 12:
            continue
        k = min(
            padic_valuation(c4, p) // 4 if c4 != 0 else e,
            padic_valuation(c6, p) // 6 if c6 != 0 else e,
            e // 12,
        )
        if p in (2, 3):
            while k > 0 and not _kraus_ok(c4 // p ** (4 * k), c6 // p ** (6 * k)):
                k -= 1
        u1 *= p ** k
    c4min, c6min = c4 // u1 ** 4, c6 // u1 ** 6
    assert _kraus_ok(c4min, c6min), "Kraus condition must hold for the minimal pair"
    Emin = _model_from_c4c6(c4min, c6min)
    u = u0 * u1
    assert Emin.discriminant == E.discriminant / u ** 12
    return Emin, u


def isomorphism_urst(E_from: WeierstrassCurve, E_to: WeierstrassCurve) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """The (u, r, s, t) with E_to = E_from.transform(u, r, s, t), or ValueError."""
    ratio = E_from.discriminant / E_to.discriminant
    # u^12 = ratio; u > 0 by convention
    num, den = ratio.numerator, ratio.denominator
    if num < 0:
        raise ValueError("curves are not isomorphic over Q")

    def root12(n: int) -> Optional[int]:
        r = _iroot(n, 12)
        return r if r ** 12 == n else None

    rn, rd = root12(num), root12(den)
    if rn is None or rd is None:
        raise ValueError("discriminant ratio is not a 12th power")
    u = Q(rn, rd)
    for uu in (u, ):
        r = (uu ** 2 * E_to.b2 - E_from.b2) / 12
        s = (uu * E_to.a1 - E_from.a1) / 2
        t = (uu ** 3 * E_to.a3 - E_from.a3 - r * E_from.a1) / 2
        if E_from.transform(uu, r, s, t) == E_to:
            return uu, r, s, t
    raise ValueError("curves are not isomorphic over Q")


def conductor_exponent_data(E: WeierstrassCurve):
    """(p, local data) at the bad primes of the minimal model."""
    from .tate import tate_algorithm

    Emin, _ = minimal_model(E)
    disc = int(Emin.discriminant)
    return [(p, tate_algorithm(E, p)) for p, _ in factor(disc)]


def conductor(E: WeierstrassCurve) -> int:
    N = 1
    for p, d in conductor_exponent_data(E):
        N *= p ** d.conductor_exp
    return N
