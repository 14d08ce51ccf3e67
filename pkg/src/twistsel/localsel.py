"""Local Selmer ratios c_p(phi_s) at every place of Q.

Every ratio in scope is an exact power of 3, stored by exponent.  The ratio
at a finite place depends on the twist s only through its class in
Q_p*/Q_p*^2, which is what the memo table is keyed on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .arith import (
    INF,
    LocalSquareclassProfile,
    Place,
    Squareclass,
    factor,
    is_square_in_Qp,
    local_squareclass,
    padic_valuation,
    squareclass_reps,
)
from .curves import (
    ThreeIsogenyModel,
    conductor,
    curve_from_model,
    dual_model,
    quadratic_twist_model,
)
from .isogeny import alpha_exponent_at_3
from .tate import SPLIT, tate_algorithm


@dataclass(frozen=True)
class SelmerRatio:
    """A ratio c = 3^exponent."""

    exponent: int

    @property
    def value(self) -> Fraction:
        return Fraction(3) ** self.exponent

    def __mul__(self, other: "SelmerRatio") -> "SelmerRatio":
        return SelmerRatio(self.exponent + other.exponent)


# Prop 9.3(b) as written tests E[3](Q_p); the alternative reads it as the
# kernel E[phi](Q_p).  The written form is the default.
READING_E3 = "E3"
READING_KERNEL = "Ephi"


def c_infinity(m: ThreeIsogenyModel, s: Squareclass) -> SelmerRatio:
    """1/3 when the kernel points (0, +-bs sqrt(Ds)) are real, else 1."""
    return SelmerRatio(-1 if m.D * s.rep > 0 else 0)


def c_p_away_from_3(
    m: ThreeIsogenyModel, s: Squareclass, p: int, reading: str = READING_E3
) -> SelmerRatio:
    """c_p(phi_s) for p != 3.

    Trivial unless E_s has split multiplicative reduction (then the ratio of
    j-valuations) or type IV/IV* at p with no cube roots of unity in Q_p
    (then decided by local 3-torsion).
    """
    assert p != 3
    ms = quadratic_twist_model(m, s)
    Es = curve_from_model(ms)
    data = tate_algorithm(Es, p)
    if data.is_multiplicative and data.split == SPLIT:
        vj = padic_valuation(Es.j, p)
        vj2 = padic_valuation(curve_from_model(dual_model(ms)).j, p)
        if vj2 == 3 * vj:
            return SelmerRatio(1)
        if vj == 3 * vj2:
            return SelmerRatio(-1)
        raise ArithmeticError(f"impossible j-valuation pair ({vj}, {vj2}) at {p}")
    if data.kodaira in ("IV", "IV*") and p % 3 != 1:
        if reading == READING_E3:
            # E_s[3](Q_p) is nonzero exactly when the Tamagawa number is 3:
            # for p != 3 the identity component is 3-divisible with no
            # 3-torsion, so torsion of order 3 exists iff the sequence
            # 0 -> E_0 -> E -> Z/3 -> 0 splits, which it always does.
            nontrivial = data.tamagawa == 3
        else:
            nontrivial = is_square_in_Qp(Fraction(m.D * s.rep), p)
        return SelmerRatio(-1 if nontrivial else 1)
    return SelmerRatio(0)


def c_3(m: ThreeIsogenyModel, s: Squareclass) -> SelmerRatio:
    """c_3(phi_s) = (Tamagawa ratio) * alpha, both exact powers of 3."""
    ms = quadratic_twist_model(m, s)
    msd = dual_model(ms)
    cE = tate_algorithm(curve_from_model(ms), 3).tamagawa
    cE2 = tate_algorithm(curve_from_model(msd), 3).tamagawa
    tam = padic_valuation(cE2, 3) - padic_valuation(cE, 3)
    return SelmerRatio(tam + alpha_exponent_at_3(ms))


_MEMO: Dict[Tuple, int] = {}


def c_local(
    m: ThreeIsogenyModel, s: Squareclass, place: Place, reading: str = READING_E3
) -> SelmerRatio:
    """Dispatch c_place(phi_s), memoized per local squareclass of s."""
    key = (m, place, local_squareclass(s, place), reading)
    hit = _MEMO.get(key)
    if hit is not None:
        return SelmerRatio(hit)
    val = _c_place_raw(m, s, place, reading)
    _MEMO[key] = val.exponent  # idempotent write
    return val


def _c_place_raw(
    m: ThreeIsogenyModel, s: Squareclass, place: Place, reading: str = READING_E3
) -> SelmerRatio:
    if place == INF:
        return c_infinity(m, s)
    p = int(place)
    if p == 3:
        return c_3(m, s)
    return c_p_away_from_3(m, s, p, reading)


def support_places(m: ThreeIsogenyModel) -> List[Place]:
    """oo plus the primes dividing 3 * conductor; c_p = 1 everywhere else."""
    N = conductor(curve_from_model(m))
    primes = sorted({3} | {p for p, _ in factor(N)})
    return [INF] + primes


def local_ratio_table(
    m: ThreeIsogenyModel, reading: str = READING_E3
) -> Dict[Tuple[Place, int], SelmerRatio]:
    """Complete finite table (place, local class) -> c; omitted places are 1."""
    table: Dict[Tuple[Place, int], SelmerRatio] = {}
    for place in support_places(m):
        for rep in squareclass_reps(place):
            table[(place, rep)] = c_local(m, Squareclass(rep), place, reading)
    return table


def place_profile(place: Place) -> LocalSquareclassProfile:
    return LocalSquareclassProfile(place)
