"""The 3-adic scale of the normalized 3-isogeny differential.

For phi: E -> E' the quantity of interest is |phi'(0)|^{-1} at 3, an integer
power of 3 in {1, 3}.  The primary computation is exact: Velu's formulas give
the quotient curve with the pullback of its invariant differential equal to
the differential of the source model, so the scale is read off from the
minimal-model rescalings on the two sides.  A reduction-type classification
provides an independent cross-check wherever it is decisive.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .arith import padic_valuation
from .curves import (
    ThreeIsogenyModel,
    curve_from_model,
    dual_model,
    isomorphism_urst,
    minimal_model,
    velu_isogenous_curve,
)
from .tate import tate_algorithm


class InconsistentWithTable(Exception):
    """Direct differential computation contradicts a decisive table row."""


def _v3(x: Fraction) -> int:
    return padic_valuation(x, 3)


def alpha_exponent_at_3(m: ThreeIsogenyModel, cross_check: bool = True) -> int:
    """v_3 of |phi'(0)|^{-1} for the isogeny with kernel x = 0 on this model."""
    M = curve_from_model(m)
    _, u = minimal_model(M)
    M2 = velu_isogenous_curve(M)
    _, u2 = minimal_model(M2)
    e = _v3(u2) - _v3(u)
    assert e in (0, 1), f"alpha exponent {e} outside the proven range"
    if cross_check:
        table = table_alpha_exponent(m)
        if table is not None and table != e:
            raise InconsistentWithTable(
                f"direct alpha 3^{e} vs table 3^{table} for model {m}"
            )
    return e


def table_alpha_exponent(m: ThreeIsogenyModel) -> Optional[int]:
    """Exponent from the reduction-type classification, or None when the
    classification does not decide the case over Q_3.

    Decisive cases: (potentially) multiplicative via j-valuations;
    potentially supersingular via a strict minimal-discriminant comparison;
    good ordinary reduction via the formal-group position of the kernel
    (tested on whichever of the two dual kernels has unramified field of
    definition).
    """
    E = curve_from_model(m)
    md = dual_model(m)
    E2 = curve_from_model(md)
    j, j2 = E.j, E2.j
    if j == 0 or _v3(j) > 0:
        # potentially supersingular
        vd = tate_algorithm(E, 3).v_delta_min
        vd2 = tate_algorithm(E2, 3).v_delta_min
        if vd < vd2:
            return 0
        if vd > vd2:
            return 1
        return None  # equal valuations: not covered by the classification
    if _v3(j) < 0:
        # (potentially) multiplicative
        vj, vj2 = _v3(j), _v3(j2)
        if vj == 3 * vj2:
            return 0
        if 3 * vj == vj2:
            return 1
        raise ArithmeticError(f"3-isogenous j-valuations {vj}, {vj2} impossible")
    # potentially ordinary; decisive only for honest good reduction, where
    # the minimal model stays minimal over the unramified kernel field
    if not tate_algorithm(E, 3).is_good:
        return None
    if m.D % 3 != 0:
        return 1 if _kernel_in_formal_group_at_3(m) else 0
    # kernel field ramified at 3; the dual kernel field is then unramified
    return 1 - (1 if _kernel_in_formal_group_at_3(md) else 0)


def _kernel_in_formal_group_at_3(m: ThreeIsogenyModel) -> bool:
    """Whether the kernel points (x = 0) land in the formal group of the
    3-minimal model, over the (unramified or trivial) field where they live."""
    E = curve_from_model(m)
    Emin, _ = minimal_model(E)
    u, r, _, _ = isomorphism_urst(E, Emin)
    # x_min(kernel) = (0 - r) / u^2
    if r == 0:
        return False
    return _v3(-r / u ** 2) < 0
