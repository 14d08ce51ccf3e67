"""Global Selmer ratios, twist classification, exact densities, statistics.

The global ratio c(phi_s) is the finite product of local ratios over the
support places (all others are provably 1).  Densities of the classification
sets use the exact local squareclass densities, with independence across
places; everything is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .arith import INF, LocalSquareclassProfile, Place, Squareclass, local_squareclass
from .curves import ThreeIsogenyModel
from .localsel import READING_E3, SelmerRatio, c_local, support_places

SigmaRestriction = Dict[Place, List[int]]


@dataclass(frozen=True)
class TwistClassification:
    """Exact classification of the twist family of one model.

    profile_map sends each tuple of local squareclasses over the support to
    the global exponent t; densities come in the signed flavour (c = 3^m)
    and the unsigned one (|t| = m).
    """

    model: ThreeIsogenyModel
    support: Tuple[Place, ...]
    class_lists: Tuple[Tuple[int, ...], ...]
    profile_map: Dict[Tuple[int, ...], int]
    tuple_density: Dict[Tuple[int, ...], Fraction] = field(repr=False)

    def densities(self, signed: bool = True) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for combo, t in self.profile_map.items():
            key = t if signed else abs(t)
            out[key] = out.get(key, Fraction(0)) + self.tuple_density[combo]
        assert sum(out.values()) == 1
        return out

    def restricted_mass(self, sigma: Optional[SigmaRestriction]):
        """(total mass, per-tuple density) after applying a local restriction."""
        if sigma:
            for place in sigma:
                if place not in self.support:
                    raise ValueError(f"restriction references non-support place {place}")
        dens = {}
        for combo in self.profile_map:
            w = self.tuple_density[combo]
            if sigma and not _tuple_allowed(combo, self.support, sigma):
                continue
            dens[combo] = w
        total = sum(dens.values(), Fraction(0))
        return total, dens


def _tuple_allowed(combo, support, sigma: SigmaRestriction) -> bool:
    for place, rep in zip(support, combo):
        allowed = sigma.get(place)
        if allowed is not None and rep not in allowed:
            return False
    return True


def classify_twists(m: ThreeIsogenyModel, reading: str = READING_E3) -> TwistClassification:
    """Enumerate all local-class tuples over the support and their densities."""
    support = tuple(support_places(m))
    class_lists = []
    densities = []
    for place in support:
        prof = LocalSquareclassProfile(place)
        class_lists.append(tuple(prof.classes))
        densities.append(prof.density_of)
    profile_map: Dict[Tuple[int, ...], int] = {}
    tuple_density: Dict[Tuple[int, ...], Fraction] = {}
    for combo in itertools.product(*class_lists):
        t = 0
        for place, rep in zip(support, combo):
            t += c_local(m, Squareclass(rep), place, reading).exponent
        w = Fraction(1)
        for dens, rep in zip(densities, combo):
            w *= dens[rep]
        profile_map[combo] = t
        tuple_density[combo] = w
    return TwistClassification(m, support, tuple(class_lists), profile_map, tuple_density)


def global_ratio(m: ThreeIsogenyModel, s: Squareclass, reading: str = READING_E3) -> SelmerRatio:
    """c(phi_s) as a power of 3: the sum of local exponents over the support."""
    e = 0
    for place in support_places(m):
        e += c_local(m, s, place, reading).exponent
    return SelmerRatio(e)


def tuple_of_twist(tc: TwistClassification, s: Squareclass) -> Tuple[int, ...]:
    return tuple(local_squareclass(s, place) for place in tc.support)


def average_selmer_size(
    tc: TwistClassification, sigma: Optional[SigmaRestriction] = None
) -> Fraction:
    """Average of |Sel_phi(E_s)| over the (restricted) family: 1 + avg c."""
    total, dens = tc.restricted_mass(sigma)
    if total == 0:
        raise ValueError("restriction has zero density")
    avg_c = sum(
        (w * Fraction(3) ** tc.profile_map[combo] for combo, w in dens.items()),
        Fraction(0),
    )
    return 1 + avg_c / total


def average_rank_bound(
    tc: TwistClassification, sigma: Optional[SigmaRestriction] = None
) -> Fraction:
    """Average of |t| + 3^{-|t|}, an upper bound for the average rank."""
    total, dens = tc.restricted_mass(sigma)
    if total == 0:
        raise ValueError("restriction has zero density")
    acc = Fraction(0)
    for combo, w in dens.items():
        mabs = abs(tc.profile_map[combo])
        acc += w * (mabs + Fraction(1, 3 ** mabs))
    return acc / total


def rank0_and_selmer1_proportions(tc: TwistClassification) -> Tuple[Fraction, Fraction]:
    """(at least this many rank 0, at least this many 3-Selmer rank 1)."""
    unsigned = tc.densities(signed=False)
    mu0 = unsigned.get(0, Fraction(0))
    mu1 = unsigned.get(1, Fraction(0))
    return mu0 / 2, 5 * mu1 / 6
