"""Tate's algorithm over Q_p: Kodaira type, Tamagawa number, conductor.

Runs on the global minimal model (computed first), so the final rescaling
step of the algorithm never fires.  All arithmetic is on integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .arith import legendre, padic_valuation, sqrt_mod
from .curves import WeierstrassCurve, minimal_model

# number of irreducible components of the special fiber, for Ogg's formula
_COMPONENTS = {
    "I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9,
}

SPLIT, NONSPLIT, NOT_MULTIPLICATIVE = "split", "nonsplit", "additive"


@dataclass(frozen=True)
class LocalReductionData:
    p: int
    kodaira: str           # "I0", "In", "II", ..., "In*", "IV*", "III*", "II*"
    n: int                 # the n of I_n / I_n*, else 0
    tamagawa: int
    v_delta_min: int
    conductor_exp: int
    split: str             # split / nonsplit / additive
    d: int = 1             # [F : Q_p], always 1 here

    @property
    def is_good(self) -> bool:
        return self.kodaira == "I0"

    @property
    def is_multiplicative(self) -> bool:
        return self.kodaira == "In"

    @property
    def is_additive(self) -> bool:
        return not (self.is_good or self.is_multiplicative)

    def symbol(self) -> str:
        if self.kodaira == "In":
            return f"I{self.n}"
        if self.kodaira == "In*":
            return f"I{self.n}*"
        return self.kodaira


def _components(kod: str, n: int) -> int:
    if kod == "In":
        return n
    if kod == "In*":
        return 5 + n
    return _COMPONENTS[kod]


def _nroots_quadratic(a: int, b: int, c: int, p: int) -> int:
    """Number of distinct roots of a T^2 + b T + c in F_p (a not = 0 mod p)."""
    if p == 2:
        return sum(1 for t in (0, 1) if (a * t * t + b * t + c) % 2 == 0)
    disc = (b * b - 4 * a * c) % p
    if disc == 0:
        return 1
    return 2 if legendre(disc, p) == 1 else 0


def _quadratic_double_root(a: int, b: int, c: int, p: int) -> int:
    """The double root of a T^2 + b T + c mod p, assuming there is one."""
    if p == 2:
        for t in (0, 1):
            if (a * t * t + b * t + c) % 2 == 0:
                return t
        raise ArithmeticError("no root mod 2")
    return (-b) * pow(2 * a, -1, p) % p


def _quad_distinct_geometric(a: int, b: int, c: int, p: int) -> bool:
    """Distinct roots over the algebraic closure of F_p (a a unit)."""
    if p == 2:
        return b % 2 != 0
    return (b * b - 4 * a * c) % p != 0


def _ediv(n: int, d: int) -> int:
    q, r = divmod(n, d)
    assert r == 0, "non-exact division in Tate's algorithm"
    return q


def _cubic_analysis(c2: int, c1: int, c0: int, p: int) -> Tuple[str, int, int]:
    """Root structure of T^3 + c2 T^2 + c1 T + c0 over F_p.

    Returns (kind, root, nroots) with kind in {"distinct", "double", "triple"};
    root is the repeated root when kind != "distinct", and nroots the number
    of distinct roots in F_p (only meaningful for "distinct").
    """
    c2, c1, c0 = c2 % p, c1 % p, c0 % p
    if p <= 3:
        roots = [t for t in range(p) if (t ** 3 + c2 * t * t + c1 * t + c0) % p == 0]
        mult = {}
        for t in roots:
            m = 1
            if (3 * t * t + 2 * c2 * t + c1) % p == 0:
                m = 2
                if (6 * t + 2 * c2) % p == 0:
                    m = 3
            mult[t] = m
        for t, m in mult.items():
            if m == 3:
                return "triple", t, 1
        for t, m in mult.items():
            if m == 2:
                return "double", t, len(mult)
        return "distinct", -1, len(roots)
    # p >= 5: discriminant of the cubic
    disc = (
        18 * c2 * c1 * c0 - 4 * c2 ** 3 * c0 + c2 ** 2 * c1 ** 2 - 4 * c1 ** 3 - 27 * c0 ** 2
    ) % p
    if disc != 0:
        nroots = _count_roots_deg3(c2, c1, c0, p)
        return "distinct", -1, nroots
    # repeated root: root of gcd(P, P'); P' = 3T^2 + 2 c2 T + c1
    # triple root iff P = (T - r)^3, i.e. c2^2 = 3 c1 and then r = -c2/3
    if (c2 * c2 - 3 * c1) % p == 0:
        r = (-c2) * pow(3, -1, p) % p
        return "triple", r, 1
    # double root r of (T-r)^2 (T-s): r = (9 c0 - c2 c1) / (2 (c2^2 - 3 c1))
    r = (9 * c0 - c2 * c1) * pow(2 * (c2 * c2 - 3 * c1) % p, -1, p) % p
    return "double", r, 2


def _count_roots_deg3(c2: int, c1: int, c0: int, p: int) -> int:
    """Number of roots of squarefree T^3 + c2 T^2 + c1 T + c0 in F_p."""
    if p <= 50:
        return sum(1 for t in range(p) if (t ** 3 + c2 * t * t + c1 * t + c0) % p == 0)
    # gcd(T^p - T, P) via powmod
    P = (1, c2 % p, c1 % p, c0 % p)

    def polymulmod(f, g):
        prod = [0] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            for j, gj in enumerate(g):
                prod[i + j] = (prod[i + j] + fi * gj) % p
        return _polymod(prod, P, p)

    base = _polymod([1, 0], P, p)
    result = [1]
    e = p
    while e:
        if e & 1:
            result = polymulmod(result, base)
        base = polymulmod(base, base)
        e >>= 1
    # result = T^p mod P; subtract T
    tp_minus_t = result[:]
    tp_minus_t = [0] * (2 - len(tp_minus_t)) + tp_minus_t
    tp_minus_t[-2] = (tp_minus_t[-2] - 1) % p
    g = _polygcd(tp_minus_t, list(P), p)
    return len(g) - 1


def _polymod(f, g, p):
    f = [c % p for c in f]
    g = list(g)
    while len(f) >= len(g) and any(f):
        if f[0] == 0:
            f = f[1:]
            continue
        lead = f[0] * pow(g[0], -1, p) % p
        for i in range(len(g)):
            f[i] = (f[i] - lead * g[i]) % p
        f = f[1:]
    while len(f) > 1 and f[0] == 0:
        f = f[1:]
    return f


def _polygcd(f, g, p):
    f = [c % p for c in f]
    g = [c % p for c in g]
    while any(g):
        f, g = g, _polymod(f, g, p)
        while len(g) > 1 and g[0] == 0:
            g = g[1:]
    # normalize monic
    if any(f) and f[0] != 1:
        inv = pow(f[0], -1, p)
        f = [c * inv % p for c in f]
    return f


def _singular_point(a: Tuple[int, ...], p: int) -> Tuple[int, int]:
    """The unique singular point of the reduction mod p (bad reduction)."""
    a1, a2, a3, a4, a6 = a
    if p <= 3:
        for x in range(p):
            for y in range(p):
                on = (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p
                fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
                fy = (2 * y + a1 * x + a3) % p
                if on == 0 and fx == 0 and fy == 0:
                    return x, y
        raise ArithmeticError("no singular point found")
    # p >= 5: complete the square; singular x is the repeated root of the cubic
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    inv4 = pow(4, -1, p)
    inv2 = pow(2, -1, p)
    c2, c1, c0 = b2 * inv4 % p, b4 * inv2 % p, b6 * inv4 % p
    kind, r, _ = _cubic_analysis(c2, c1, c0, p)
    assert kind in ("double", "triple")
    y = (-(a1 * r + a3)) * inv2 % p
    return r, y


def _translate(a: Tuple[int, ...], r: int, s: int, t: int) -> Tuple[int, ...]:
    """Integer change of variables x -> x + r, y -> y + s x + t (u = 1)."""
    a1, a2, a3, a4, a6 = a
    A1 = a1 + 2 * s
    A2 = a2 - s * a1 + 3 * r - s * s
    A3 = a3 + r * a1 + 2 * t
    A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    A6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
    return (A1, A2, A3, A4, A6)


def _v(n: int, p: int) -> int:
    return 10 ** 9 if n == 0 else padic_valuation(n, p)


_TATE_CACHE: Dict[Tuple, LocalReductionData] = {}


def tate_algorithm(E: WeierstrassCurve, p: int) -> LocalReductionData:
    key = (E.ainvs(), p)
    hit = _TATE_CACHE.get(key)
    if hit is not None:
        return hit
    data = _tate(E, p)
    _TATE_CACHE[key] = data  # idempotent write; races are harmless
    return data


def _tate(E: WeierstrassCurve, p: int) -> LocalReductionData:
    Emin, _ = minimal_model(E)
    a = tuple(int(ai) for ai in Emin.ainvs())
    disc = int(Emin.discriminant)
    vD = _v(disc, p)

    def done(kod: str, n: int, c: int, split: str) -> LocalReductionData:
        f = vD - _components(kod, n) + 1 if kod != "I0" else 0
        return LocalReductionData(p, kod, n, c, vD, f, split)

    if vD == 0:
        return done("I0", 0, 1, NOT_MULTIPLICATIVE)

    # Step 2: move the singular point to (0, 0)
    x0, y0 = _singular_point(a, p)
    a = _translate(a, x0, 0, y0)
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2

    if b2 % p != 0:
        # multiplicative: tangent cone T^2 + a1 T - a2
        nr = _nroots_quadratic(1, a1, -a2, p)
        if nr > 0:
            return done("In", vD, vD, SPLIT)
        return done("In", vD, 2 if vD % 2 == 0 else 1, NONSPLIT)

    # additive from here on
    if _v(a6, p) < 2:
        return done("II", 0, 1, NOT_MULTIPLICATIVE)
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    if _v(b8, p) < 3:
        return done("III", 0, 2, NOT_MULTIPLICATIVE)
    b6 = a3 * a3 + 4 * a6
    if _v(b6, p) < 3:
        c = 3 if _nroots_quadratic(1, _ediv(a3, p), -_ediv(a6, p * p), p) > 0 else 1
        return done("IV", 0, c, NOT_MULTIPLICATIVE)

    # Step 7 preparation: arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
    if p == 2:
        ok = None
        for s in range(2):
            for t in range(8):
                cand = _translate(a, 0, s, t)
                vs = [_v(cand[0], p), _v(cand[1], p), _v(cand[2], p), _v(cand[3], p), _v(cand[4], p)]
                if vs[0] >= 1 and vs[1] >= 1 and vs[2] >= 2 and vs[3] >= 2 and vs[4] >= 3:
                    ok = cand
                    break
            if ok:
                break
        assert ok is not None, "step-7 normalization failed at p = 2"
        a = ok
    else:
        s = (-a1) * pow(2, -1, p) % p
        a = _translate(a, 0, s, 0)
        t = (-a[2]) * pow(2, -1, p * p) % (p * p)
        a = _translate(a, 0, 0, t)
    a1, a2, a3, a4, a6 = a
    assert _v(a1, p) >= 1 and _v(a2, p) >= 1 and _v(a3, p) >= 2 and _v(a4, p) >= 2 and _v(a6, p) >= 3

    kind, root, nroots = _cubic_analysis(_ediv(a2, p), _ediv(a4, p * p), _ediv(a6, p ** 3), p)
    if kind == "distinct":
        return done("I0*", 0, 1 + nroots, NOT_MULTIPLICATIVE)

    if kind == "double":
        # move the double root of P to T = 0
        a = _translate(a, p * root, 0, 0)
        a1, a2, a3, a4, a6 = a
        assert _v(a2, p) == 1 and _v(a4, p) >= 3 and _v(a6, p) >= 4
        n = 1
        mx, my = p * p, p * p
        while True:
            # quadratic in Y: Y^2 + (a3/my) Y - a6/(mx*my)
            a3t, a6t = _ediv(a3, my), _ediv(a6, mx * my)
            if _quad_distinct_geometric(1, a3t, -a6t, p):
                nr = _nroots_quadratic(1, a3t, -a6t, p)
                return done("In*", n, 4 if nr > 0 else 2, NOT_MULTIPLICATIVE)
            y0 = _quadratic_double_root(1, a3t, -a6t, p)
            a = _translate(a, 0, 0, my * y0)
            a1, a2, a3, a4, a6 = a
            my *= p
            n += 1
            # quadratic in X: (a2/p) X^2 + (a4/(p*mx)) X + a6/(mx*my)
            a2t, a4t, a6t = _ediv(a2, p), _ediv(a4, p * mx), _ediv(a6, mx * my)
            if _quad_distinct_geometric(a2t, a4t, a6t, p):
                nr = _nroots_quadratic(a2t, a4t, a6t, p)
                return done("In*", n, 4 if nr > 0 else 2, NOT_MULTIPLICATIVE)
            x0 = _quadratic_double_root(a2t, a4t, a6t, p)
            a = _translate(a, mx * x0, 0, 0)
            a1, a2, a3, a4, a6 = a
            mx *= p
            n += 1

    # triple root: move it to T = 0
    a = _translate(a, p * root, 0, 0)
    a1, a2, a3, a4, a6 = a
    assert _v(a2, p) >= 2 and _v(a4, p) >= 3 and _v(a6, p) >= 4

    # Step 8: Y^2 + a3,2 Y - a6,4
    a3t, a6t = _ediv(a3, p * p), _ediv(a6, p ** 4)
    if _quad_distinct_geometric(1, a3t, -a6t, p):
        c = 3 if _nroots_quadratic(1, a3t, -a6t, p) > 0 else 1
        return done("IV*", 0, c, NOT_MULTIPLICATIVE)
    y0 = _quadratic_double_root(1, a3t, -a6t, p)
    a = _translate(a, 0, 0, p * p * y0)
    a1, a2, a3, a4, a6 = a
    assert _v(a3, p) >= 3 and _v(a6, p) >= 5

    if _v(a4, p) < 4:
        return done("III*", 0, 2, NOT_MULTIPLICATIVE)
    if _v(a6, p) < 6:
        return done("II*", 0, 1, NOT_MULTIPLICATIVE)
    raise AssertionError("model was not minimal at p; unreachable on LKC output")


# Kodaira type of the quadratic twist by a uniformizer, p >= 3 and v_p(s) odd
TWIST_TABLE = {
    "I0": ("I0*", None), "In": ("In*", None), "II": ("IV*", 0), "III": ("III*", 0),
    "IV": ("II*", 0), "I0*": ("I0", None), "In*": ("In", None), "IV*": ("II", 0),
    "III*": ("III", 0), "II*": ("IV", 0),
}


def twisted_kodaira(kod: str, n: int) -> Tuple[str, int]:
    new, fixed_n = TWIST_TABLE[kod]
    return new, n if fixed_n is None else fixed_n
