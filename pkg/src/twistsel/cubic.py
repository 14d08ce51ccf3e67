"""Integer-matrix binary cubic forms: covariants, actions, reduction,
enumeration by discriminant, and covering curves.

A form (a, b, c, d) means f = a x^3 + 3b x^2 y + 3c x y^2 + d y^3 with
Disc(f) = a^2 d^2 - 3 b^2 c^2 + 4 a c^3 + 4 b^3 d - 6 a b c d.  With this
normalization Disc equals the discriminant of the Hessian quadratic, and
Disc > 0 means one real root while Disc < 0 means three.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import factor
from .curves import ThreeIsogenyModel, _iroot

Q = Fraction

Mat = Tuple[Fraction, Fraction, Fraction, Fraction]  # row-major 2x2


@dataclass(frozen=True)
class BinaryCubicForm:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Q(getattr(self, name)))

    def slots(self) -> Tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d)

    def coefficients(self) -> Tuple[Fraction, ...]:
        """Plain coefficients (x^3, x^2 y, x y^2, y^3)."""
        return (self.a, 3 * self.b, 3 * self.c, self.d)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.slots())

    def __call__(self, x, y):
        a, b, c, d = self.slots()
        return a * x ** 3 + 3 * b * x * x * y + 3 * c * x * y * y + d * y ** 3

    def __neg__(self) -> "BinaryCubicForm":
        return BinaryCubicForm(-self.a, -self.b, -self.c, -self.d)


def form(a, b, c, d) -> BinaryCubicForm:
    return BinaryCubicForm(Q(a), Q(b), Q(c), Q(d))


def disc(f: BinaryCubicForm) -> Fraction:
    a, b, c, d = f.slots()
    return (
        a * a * d * d
        - 3 * b * b * c * c
        + 4 * a * c ** 3
        + 4 * b ** 3 * d
        - 6 * a * b * c * d
    )


def hessian(f: BinaryCubicForm) -> Tuple[Fraction, Fraction, Fraction]:
    """(P, Q, R) with h = P x^2 + Q xy + R y^2 = -(f_xx f_yy - f_xy^2)/36.

    disc(h) = Q^2 - 4 P R equals Disc(f) exactly.
    """
    a, b, c, d = f.slots()
    return (b * b - a * c, b * c - a * d, c * c - b * d)


def _third_jacobian_plain(f: BinaryCubicForm) -> Tuple[Fraction, ...]:
    """Plain coefficients of g/3 where g = f_x h_y - f_y h_x."""
    a, b, c, d = f.slots()
    P, Qh, R = hessian(f)
    return (
        a * Qh - 2 * b * P,
        2 * a * R + b * Qh - 4 * c * P,
        4 * b * R - c * Qh - 2 * d * P,
        2 * c * R - d * Qh,
    )


def jacobian_covariant(f: BinaryCubicForm) -> BinaryCubicForm:
    """g = f_x h_y - f_y h_x as a form; g/3 is integral for integral f."""
    g0, g1, g2, g3 = _third_jacobian_plain(f)
    return BinaryCubicForm(3 * g0, g1, g2, 3 * g3)


def _poly_mul(u: Sequence[Fraction], v: Sequence[Fraction]) -> List[Fraction]:
    out = [Q(0)] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        for j, vj in enumerate(v):
            out[i + j] += ui * vj
    return out


def syzygy_check(f: BinaryCubicForm) -> bool:
    """(g/3)^2 = Disc(f) f^2 + 4 h^3, exactly as polynomials."""
    g3 = list(_third_jacobian_plain(f))
    lhs = _poly_mul(g3, g3)
    fp = list(f.coefficients())
    D = disc(f)
    rhs = [D * v for v in _poly_mul(fp, fp)]
    h = list(hessian(f))
    h3 = _poly_mul(_poly_mul(h, h), h)
    rhs = [r + 4 * s for r, s in zip(rhs, h3)]
    return lhs == rhs


def act(g: Mat, f: BinaryCubicForm, twisted: bool = False) -> BinaryCubicForm:
    """Linear substitution f(px + qy, rx + sy); the twisted action divides by
    det(g).  Untwisted with det = 1 preserves Disc; general det multiplies
    Disc by det^6 (twisted: det^2)."""
    p, q, r, s = (Q(v) for v in g)
    det = p * s - q * r
    if det == 0:
        raise ValueError("matrix is not invertible")
    a, b, c, d = f.coefficients()
    # f(p x + q y, r x + s y)
    A = a * p ** 3 + b * p * p * r + c * p * r * r + d * r ** 3
    B = (3 * a * p * p * q + b * (p * p * s + 2 * p * q * r)
         + c * (2 * p * r * s + q * r * r) + 3 * d * r * r * s)
    C = (3 * a * p * q * q + b * (2 * p * q * s + q * q * r)
         + c * (p * s * s + 2 * q * r * s) + 3 * d * r * s * s)
    D = a * q ** 3 + b * q * q * s + c * q * s * s + d * s ** 3
    out = BinaryCubicForm(A, B / 3, C / 3, D / 3)
    if twisted:
        out = BinaryCubicForm(out.a / det, out.b / det, out.c / det, out.d / det)
    return out


def is_reducible_over_Q(f: BinaryCubicForm) -> bool:
    """Whether f has a linear factor over Q (rational projective root)."""
    if disc(f) == 0:
        raise ValueError("degenerate form")
    a, b, c, d = f.coefficients()
    if a == 0:
        return True
    # rational root test on the primitive integer version of f(x, 1)
    den = 1
    for v in (a, b, c, d):
        den = den * v.denominator // gcd(den, v.denominator)
    ca, cb, cc, cd = (int(v * den) for v in (a, b, c, d))
    g = gcd(gcd(abs(ca), abs(cb)), gcd(abs(cc), abs(cd)))
    ca, cb, cc, cd = ca // g, cb // g, cc // g, cd // g
    if cd == 0:
        return True

    def divisors(n):
        n = abs(n)
        out = [1]
        for p, e in factor(n):
            out = [t * p ** k for t in out for k in range(e + 1)]
        return out

    for num in divisors(cd):
        for dq in divisors(ca):
            if gcd(num, dq) != 1:
                continue
            for sg in (1, -1):
                x = Q(sg * num, dq)
                if ca * x ** 3 + cb * x ** 2 + cc * x + cd == 0:
                    return True
    return False


def reducible_representative(dhat_s: int) -> BinaryCubicForm:
    """The reducible form 3 x^2 y + dhat_s y^3 of Disc = 4 dhat_s."""
    if dhat_s == 0:
        raise ValueError("need a nonzero multiplier")
    return form(0, 1, 0, dhat_s)


def delta_to_form(u: Fraction, v: Fraction, dhat: int) -> BinaryCubicForm:
    """Form of the class of delta = u + v*tau (tau^2 = dhat) with cube norm:
    (1/(2 dhat)) Tr(delta tau (x + tau y)^3), expanded.

    Disc comes out as 4 * dhat * N(delta)^2 exactly (asserted).
    """
    u, v = Q(u), Q(v)
    norm = u * u - dhat * v * v
    root = _fraction_cbrt(norm)
    if root is None:
        raise ValueError(f"N(delta) = {norm} is not a rational cube")
    f = BinaryCubicForm(v, u, dhat * v, u * dhat)
    assert disc(f) == 4 * dhat * norm ** 2
    return f


def _fraction_cbrt(x: Fraction) -> Optional[Fraction]:
    if x == 0:
        return Q(0)
    sgn = 1 if x > 0 else -1
    n, d = abs(x.numerator), x.denominator
    rn, rd = _iroot(n, 3), _iroot(d, 3)
    if rn ** 3 == n and rd ** 3 == d:
        return Q(sgn * rn, rd)
    return None


@dataclass(frozen=True)
class CoveringCurve:
    """Plane cubic f(x,y) + a h(x,y) z + b z^3 attached to a form and model.

    Coefficients in the monomial order
    (x^3, x^2 y, x y^2, y^3, x^2 z, x y z, y^2 z, x z^2, y z^2, z^3).
    """

    coeffs: Tuple[Fraction, ...]
    a: Fraction
    b: Fraction

    def __call__(self, x, y, z):
        c = self.coeffs
        return (
            c[0] * x ** 3 + c[1] * x * x * y + c[2] * x * y * y + c[3] * y ** 3
            + c[4] * x * x * z + c[5] * x * y * z + c[6] * y * y * z
            + c[7] * x * z * z + c[8] * y * z * z + c[9] * z ** 3
        )

    def specialize_z0(self) -> BinaryCubicForm:
        c = self.coeffs
        return BinaryCubicForm(c[0], c[1] / 3, c[2] / 3, c[3])


def covering_curve(f: BinaryCubicForm, model: ThreeIsogenyModel,
                   b_scale: Fraction = Q(1)) -> CoveringCurve:
    """The covering cubic for f with the model's (a, b); b_scale = N^2 adapts
    the covering to forms enumerated at discriminant inflated by N^2."""
    P, Qh, R = hessian(f)
    a, b = model.a, model.b * b_scale
    fc = f.coefficients()
    coeffs = (fc[0], fc[1], fc[2], fc[3], a * P, a * Qh, a * R, Q(0), Q(0), b)
    return CoveringCurve(coeffs, a, b)


# ---------------------------------------------------------------------------
# exact real-cubic-field arithmetic for the one-real-root reduction
# ---------------------------------------------------------------------------


class _RealRootField:
    """Q[T]/(G) for monic integer G of degree 1 or 3 with a distinguished
    real root, isolated in a rational interval that gets refined on demand."""

    def __init__(self, G: Sequence[Fraction]):
        self.G = [Q(g) for g in G]  # monic: leading 1, descending degree
        self.deg = len(G) - 1
        assert self.G[0] == 1 and self.deg in (1, 3)
        if self.deg == 1:
            self.lo = self.hi = -self.G[1]
        else:
            M = 1 + max(abs(g) for g in self.G[1:])
            lo, hi = -M, M
            assert self._gval(lo) < 0 < self._gval(hi)
            self.lo, self.hi = lo, hi

    def _gval(self, x: Fraction) -> Fraction:
        acc = Q(0)
        for g in self.G:
            acc = acc * x + g
        return acc

    def refine(self):
        mid = (self.lo + self.hi) / 2
        if self._gval(mid) < 0:
            self.lo = mid
        elif self._gval(mid) > 0:
            self.hi = mid
        else:  # root is rational after all; collapse
            self.lo = self.hi = mid

    def elem(self, c0, c1=0, c2=0) -> "_AlgNum":
        if self.deg == 1:
            t = self.lo
            return _AlgNum(self, (Q(c0) + Q(c1) * t + Q(c2) * t * t, Q(0), Q(0)))
        return _AlgNum(self, (Q(c0), Q(c1), Q(c2)))

    def theta(self) -> "_AlgNum":
        return self.elem(0, 1)

    def _mulvec(self, u, v):
        # product of two (c0, c1, c2) vectors modulo G (degree 3)
        raw = [Q(0)] * 5
        for i in range(3):
            for j in range(3):
                raw[i + j] += u[i] * v[j]
        # reduce T^3 = -(g2 T^2 + g1 T + g0), T^4 accordingly
        _, g2, g1, g0 = self.G
        # T^4 = -(g2 T^3 + g1 T^2 + g0 T)
        raw[1] -= raw[4] * g0 * -1 * 0  # placeholder; handled below
        c4 = raw[4]
        raw[4] = Q(0)
        # T^4 -> -g2*T^3 - g1*T^2 - g0*T
        raw[3] += -g2 * c4
        raw[2] += -g1 * c4
        raw[1] += -g0 * c4
        c3 = raw[3]
        raw[3] = Q(0)
        raw[2] += -g2 * c3
        raw[1] += -g1 * c3
        raw[0] += -g0 * c3
        return (raw[0], raw[1], raw[2])

    def interval_value(self, vec) -> Tuple[Fraction, Fraction]:
        lo, hi = self.lo, self.hi
        cands_t = (lo, hi)
        t2cands = [x * x for x in cands_t]
        if lo < 0 < hi:
            t2cands.append(Q(0))
        out_lo = out_hi = None
        for t in cands_t:
            for t2 in (min(t2cands), max(t2cands)):
                val = vec[0] + vec[1] * t + vec[2] * t2
                if out_lo is None or val < out_lo:
                    out_lo = val
                if out_hi is None or val > out_hi:
                    out_hi = val
        return out_lo, out_hi


def _sgn(x) -> int:
    if isinstance(x, _AlgNum):
        return x.sign()
    return 0 if x == 0 else (1 if x > 0 else -1)


def _approx(x) -> float:
    return x.approx() if isinstance(x, _AlgNum) else float(x)


@dataclass(frozen=True)
class _AlgNum:
    ctx: _RealRootField
    vec: Tuple[Fraction, Fraction, Fraction]

    def _lift(self, other):
        if isinstance(other, _AlgNum):
            return other
        return _AlgNum(self.ctx, (Q(other), Q(0), Q(0)))

    def __add__(self, other):
        o = self._lift(other)
        return _AlgNum(self.ctx, tuple(x + y for x, y in zip(self.vec, o.vec)))

    __radd__ = __add__

    def __neg__(self):
        return _AlgNum(self.ctx, tuple(-x for x in self.vec))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if self.ctx.deg == 1:
            return _AlgNum(self.ctx, (self.vec[0] * o.vec[0], Q(0), Q(0)))
        return _AlgNum(self.ctx, self.ctx._mulvec(self.vec, o.vec))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vec)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.ctx.deg == 1 or (self.vec[1] == 0 and self.vec[2] == 0):
            return 1 if self.vec[0] > 0 else -1
        for _ in range(10000):
            lo, hi = self.ctx.interval_value(self.vec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.ctx.refine()
        raise ArithmeticError("sign determination did not converge")

    # comparisons against _AlgNum or rationals
    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def approx(self) -> float:
        lo, hi = self.ctx.interval_value(self.vec)
        return float((lo + hi) / 2)


def _floor_ratio(num, den) -> int:
    """floor(num / den) for exact reals with den > 0."""
    assert _sgn(den) > 0
    if not isinstance(num, _AlgNum) and not isinstance(den, _AlgNum):
        x = Q(num) / Q(den)
        return x.numerator // x.denominator
    ctx = num.ctx if isinstance(num, _AlgNum) else den.ctx
    import math

    for _ in range(300):
        try:
            k = math.floor(_approx(num) / _approx(den))
        except (ZeroDivisionError, OverflowError, ValueError):
            ctx.refine()
            continue
        for cand in (k - 1, k, k + 1):
            if _sgn(num - cand * den) >= 0 and _sgn(num - (cand + 1) * den) < 0:
                return cand
        ctx.refine()
    raise ArithmeticError("floor bracketing failed")


def _mat_mul(g1, g2) -> Tuple[int, int, int, int]:
    a, b, c, d = g1
    e, f_, g, h = g2
    return (a * e + b * g, a * f_ + b * h, c * e + d * g, c * f_ + d * h)


def _gauss_reduce_quadratic(A, B, C):
    """Reduce the positive definite quadratic (A, B, C) over SL_2(Z).

    Returns (g, (A', B', C')) with the transformed quadratic reduced
    (|B'| <= A' <= C') and q o g = q'.  Entries may be Fractions or _AlgNum.
    """
    g = (1, 0, 0, 1)
    while True:
        # center B: choose k with -A < B + 2kA <= A
        k = _floor_ratio(A - B, 2 * A)
        if k != 0:
            C = A * k * k + B * k + C
            B = B + 2 * A * k
            g = _mat_mul(g, (1, k, 0, 1))
        if C < A:
            A, B, C = C, -B, A
            g = _mat_mul(g, (0, -1, 1, 0))
            continue
        break
    return g, (A, B, C)


def _reduced_positions(g0, q):
    """All (matrix, quadratic) giving reduced positions of the class of q,
    reachable from the reduced seed by boundary moves."""
    seen = {g0: q}
    frontier = [(g0, q)]
    while frontier:
        g, (A, B, C) = frontier.pop()
        moves = []
        if _sgn(B - A) == 0:
            moves.append(((1, -1, 0, 1), (A, B - 2 * A, A - B + C)))
        if _sgn(B + A) == 0:
            moves.append(((1, 1, 0, 1), (A, B + 2 * A, A + B + C)))
        if _sgn(A - C) == 0:
            moves.append(((0, -1, 1, 0), (C, -B, A)))
        for step, nq in moves:
            ng = _mat_mul(g, step)
            if ng not in seen:
                seen[ng] = nq
                frontier.append((ng, nq))
    return list(seen.items())


def _covariant_quadratic(f: BinaryCubicForm):
    """A positive definite covariant quadratic of f with exact entries.

    Disc < 0: the Hessian (rational entries).  Disc > 0: the Julia-style
    combination (x - theta y)^2 + w * q_c(x, y) with theta the real root,
    q_c the complex-pair factor and w = q_c(theta) / disc-of-q_c-part."""
    D = disc(f)
    assert D != 0
    if D < 0:
        P, Qh, R = hessian(f)
        assert P > 0 and Qh * Qh - 4 * P * R < 0
        return (P, Qh, R)
    a, b, c, d = f.slots()
    assert a != 0
    # monic cubic with root theta' = a * theta: T^3 + 3b T^2 + 3ac T + a^2 d
    G = [Q(1), 3 * b, 3 * a * c, a * a * d]
    rational_root = _monic_rational_root(G)
    if rational_root is not None:
        # pull out the rational root; theta must be the unique real root,
        # so the quotient quadratic is positive definite
        r = rational_root
        # G = (T - r)(T^2 + pT + q)
        p = G[1] + r
        qq = G[2] + r * p
        assert G[3] + r * qq == 0
        if p * p - 4 * qq < 0:
            ctx = _RealRootField([Q(1), -r])
        else:
            # the rational root is not the isolated real root: G has three
            # real roots, impossible for Disc > 0
            raise AssertionError("positive Disc with three real roots")
    else:
        ctx = _RealRootField(G)
    th = ctx.theta()  # theta' = a * theta
    # f(x,1) = a (x - theta)(x^2 + beta_true x + gamma_true); scale away the
    # denominators: beta = a*beta_true = 3b + th, gamma = a^2*gamma_true.
    beta = ctx.elem(3 * b) + th
    gamma = ctx.elem(3 * a * c) + ctx.elem(3 * b) * th + th * th
    a2 = Q(a * a)
    qtheta = th * th + beta * th + gamma      # = a^2 * q_c(theta) > 0
    denom = gamma * 4 - beta * beta           # = a^2 * (4 gamma - beta^2) = (2 a tau)^2 > 0
    # Q'(x,y) = (x - theta y)^2 + [q_c(theta)/(4 gamma_true - beta_true^2)] q_c(x,y),
    # scaled by the positive a^2 * denom to clear all denominators:
    Aq = denom * a2 + qtheta * a2
    Bq = denom * (-2 * a) * th + qtheta * a * beta
    Cq = denom * (th * th) + qtheta * gamma
    assert qtheta.sign() > 0 and denom.sign() > 0
    return (Aq, Bq, Cq)


def _monic_rational_root(G: Sequence[Fraction]) -> Optional[Fraction]:
    """A rational root of the monic rational cubic G, if any."""
    L = 1
    for g in G[1:]:
        L = L * g.denominator // gcd(L, g.denominator)
    # H(T) = L^3 G(T/L) is monic with integer coefficients; roots of G are
    # integer roots of H divided by L
    h2, h1, h0 = int(G[1] * L), int(G[2] * L * L), int(G[3] * L ** 3)
    if h0 == 0:
        return Q(0)
    for n in _divisors_of(abs(h0)):
        for t in (n, -n):
            if ((t + h2) * t + h1) * t + h0 == 0:
                return Q(t, L)
    return None


def _divisors_of(n: int) -> List[int]:
    out = [1]
    for p, e in factor(n) if n > 1 else []:
        out = [t * p ** k for t in out for k in range(e + 1)]
    return out


def canonical_reduce(f: BinaryCubicForm) -> BinaryCubicForm:
    """Canonical representative of the SL_2(Z)-class of f: the lexicographic
    minimum over the finitely many forms sitting over reduced positions of
    the positive definite covariant quadratic."""
    if disc(f) == 0:
        raise ValueError("degenerate form")
    base = f
    if disc(f) > 0 and base.a == 0:
        for k in (1, -1, 2, -2, 3):
            cand = act((1, 0, k, 1), f)
            if cand.a != 0:
                base = cand
                break
        else:
            raise ArithmeticError("could not normalize leading coefficient")
    quad = _covariant_quadratic(base)
    g0, reduced = _gauss_reduce_quadratic(*quad)
    candidates = []
    for g, _ in _reduced_positions(g0, reduced):
        cand = act(g, base)
        candidates.append(cand.slots())
        candidates.append((-cand).slots())
    best = min(candidates)
    return BinaryCubicForm(*best)


def sl2z_equivalent(f1: BinaryCubicForm, f2: BinaryCubicForm) -> bool:
    return canonical_reduce(f1) == canonical_reduce(f2)


# ---------------------------------------------------------------------------
# enumeration by discriminant
# ---------------------------------------------------------------------------


class EnumerationBoundExceeded(Exception):
    pass


def enumerate_forms(disc_target: int, bound: int = 10 ** 8) -> List[BinaryCubicForm]:
    """Canonical representatives of every SL_2(Z)-class of integer-matrix
    forms with Disc = disc_target (complete, duplicate-free)."""
    if disc_target == 0:
        raise ValueError("discriminant must be nonzero")
    if abs(disc_target) > bound:
        raise EnumerationBoundExceeded(f"|{disc_target}| > {bound}")
    seen: Dict[Tuple, BinaryCubicForm] = {}
    for cand in _raw_forms_of_disc(disc_target):
        red = canonical_reduce(cand)
        seen[red.slots()] = red
    return sorted(seen.values(), key=lambda g: g.slots())


def _raw_forms_of_disc(Delta: int) -> Iterable[BinaryCubicForm]:
    """A finite superset of class representatives at the given discriminant.

    Family A covers every class with an a = 0 representative (all such forms
    are reducible); family B covers classes through their quadratic-reduced,
    translation-normalized representatives with a >= 1, using the proven
    bounds a <= 1.32|D|^(1/4) and |b^2 - ac| <= 0.75|D|^(1/2).
    """
    absD = abs(Delta)
    # family A: f = y(3b x^2 + 3c xy + d y^2), Disc = b^2 (4bd - 3c^2)
    for b in range(1, isqrt(absD) + 1):
        if Delta % (b * b):
            continue
        M = Delta // (b * b)
        for bb in (b, -b):
            for c in range(-abs(bb) + 1, abs(bb) + 1):
                num = M + 3 * c * c
                if num % (4 * bb):
                    continue
                d = num // (4 * bb)
                yield form(0, bb, c, d)
    # family B
    amax = _iroot(3 * absD, 4) + 1
    if Delta < 0:
        pmax = isqrt(absD // 3 + 1) + 1
    else:
        pmax = isqrt(5 * absD // 9 + 1) + 2
    for a in range(1, amax + 1):
        bmin = -((a - 1) // 2)
        for b in range(bmin, a // 2 + 1):
            b2 = b * b
            cmin = -((pmax - b2 + a - 1) // a)
            cmax = (b2 + pmax) // a
            B1 = 4 * b ** 3
            for c in range(cmin, cmax + 1):
                B = B1 - 6 * a * b * c
                C = 4 * a * c ** 3 - 3 * b2 * c * c - Delta
                disc1 = B * B - 4 * a * a * C
                if disc1 < 0:
                    continue
                r = isqrt(disc1)
                if r * r != disc1:
                    continue
                for sg in (r, -r) if r else (0,):
                    num = -B + sg
                    if num % (2 * a * a):
                        continue
                    yield form(a, b, c, num // (2 * a * a))


def brute_force_box_classes(disc_target: int, box: int = 30) -> List[BinaryCubicForm]:
    """Oracle: all classes found by searching |a|,|3b|,|3c|,|d| <= box."""
    seen: Dict[Tuple, BinaryCubicForm] = {}
    bmax = box // 3
    for a in range(-box, box + 1):
        for b in range(-bmax, bmax + 1):
            for c in range(-bmax, bmax + 1):
                for d in range(-box, box + 1):
                    f = form(a, b, c, d)
                    if disc(f) == disc_target:
                        red = canonical_reduce(f)
                        seen[red.slots()] = red
    return sorted(seen.values(), key=lambda g: g.slots())


# ---------------------------------------------------------------------------
# rational (SL_2(Q)) equivalence
# ---------------------------------------------------------------------------


def _cubic_complex_roots(f: BinaryCubicForm) -> List[complex]:
    """Roots of f(x, 1) in C (Durand-Kerner), leading coefficient nonzero."""
    a, b, c, d = (complex(v) for v in f.coefficients())
    # normalize monic
    b, c, d = b / a, c / a, d / a
    roots = [complex(0.4, 0.9) ** k for k in range(3)]
    for _ in range(200):
        new = []
        for i, r in enumerate(roots):
            num = ((r + b) * r + c) * r + d
            den = 1.0
            for j, s in enumerate(roots):
                if i != j:
                    den *= (r - s)
            new.append(r - num / den if den != 0 else r + 0.1)
        if max(abs(x - y) for x, y in zip(new, roots)) < 1e-14:
            roots = new
            break
        roots = new
    return roots


def rationally_equivalent(
    f1: BinaryCubicForm, f2: BinaryCubicForm, den_bound: int = 10 ** 4
) -> Tuple[bool, bool]:
    """(equivalent, certain): search for g in SL_2(Q) with f1 o g = f2.

    A found g is verified exactly, so True is always certain.  False is
    certain only in easy cases; otherwise the numeric search was exhausted
    and the caller should treat the verdict as heuristic.
    """
    if disc(f1) != disc(f2):
        return False, True
    red1, red2 = is_reducible_over_Q(f1), is_reducible_over_Q(f2)
    if red1 != red2:
        return False, True
    if red1:
        # both reducible: unique rational class per discriminant
        return True, True
    if canonical_reduce(f1) == canonical_reduce(f2):
        return True, True
    g1 = _normalize_nonzero_a(f1)
    g2 = _normalize_nonzero_a(f2)
    fa, fb = act(g1, f1), act(g2, f2)
    roots1 = _cubic_complex_roots(fa)
    roots2 = _cubic_complex_roots(fb)
    import itertools as _it

    for perm in _it.permutations(range(3)):
        pairing = [(roots2[i], roots1[perm[i]]) for i in range(3)]
        mat = _mobius_from_pairs(pairing)
        if mat is None:
            continue
        cand = _rationalize_sl2(mat, den_bound)
        if cand is None:
            continue
        # fa o cand should equal fb
        try:
            if act(cand, fa) == fb:
                return True, True
        except ValueError:
            continue
    return False, False


def _normalize_nonzero_a(f: BinaryCubicForm):
    if f.a != 0:
        return (1, 0, 0, 1)
    for k in (1, -1, 2, -2, 3):
        if act((1, 0, k, 1), f).a != 0:
            return (1, 0, k, 1)
    raise ArithmeticError("cannot normalize")


def _mobius_from_pairs(pairs) -> Optional[Tuple[complex, ...]]:
    """Matrix (p, q, r, s) with (p z + q)/(r z + s) mapping each z to its
    partner, normalized to determinant 1 (complex)."""
    # linear system: p z_i + q - w_i r z_i - w_i s = 0
    rows = [[z, 1.0, -w * z, -w] for z, w in pairs]
    # find null vector of the 3x4 system by Gaussian elimination
    import copy

    m = [row[:] for row in rows]
    ncols = 4
    pivots = []
    rr = 0
    for col in range(ncols):
        piv = None
        for i in range(rr, len(m)):
            if abs(m[i][col]) > 1e-9:
                piv = i
                break
        if piv is None:
            continue
        m[rr], m[piv] = m[piv], m[rr]
        lead = m[rr][col]
        m[rr] = [v / lead for v in m[rr]]
        for i in range(len(m)):
            if i != rr and abs(m[i][col]) > 1e-12:
                fval = m[i][col]
                m[i] = [v - fval * w for v, w in zip(m[i], m[rr])]
        pivots.append(col)
        rr += 1
        if rr == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    vec = [0j] * ncols
    vec[fc] = 1.0
    for i, col in enumerate(pivots):
        vec[col] = -m[i][fc]
    p, q, r, s = vec
    det = p * s - q * r
    if abs(det) < 1e-12:
        return None
    lam = cmath.sqrt(1.0 / det)
    return (p * lam, q * lam, r * lam, s * lam)


def _rationalize_sl2(mat, den_bound: int) -> Optional[Tuple[Fraction, ...]]:
    for entries in (mat, tuple(-z for z in mat)):
        if max(abs(z.imag) for z in entries) > 1e-6:
            continue
        for bound in (24, 720, den_bound):
            cand = tuple(Q(z.real).limit_denominator(bound) for z in entries)
            p, q, r, s = cand
            if p * s - q * r == 1:
                return cand
    return None
