"""Closed-form structure counts, homotopy group tables, and stable
homology of the r-Spin moduli spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import errors
from .abelian import FgAbGroup
from .classes import ModuliContext, u_r


@dataclass(frozen=True)
class RangeGuard:
    """Records whether a query sits inside a proven genus range."""

    kind: str  # h1_stable | h2_stable | general_stable
    satisfied: bool

    @classmethod
    def h1_stable(cls, g: int) -> "RangeGuard":
        return cls("h1_stable", g >= ModuliContext.H1_STABLE_GENUS)

    @classmethod
    def h2_stable(cls, g: int) -> "RangeGuard":
        return cls("h2_stable", g >= ModuliContext.H2_STABLE_GENUS)

    @classmethod
    def general_stable(cls, degree: int, g: int) -> "RangeGuard":
        return cls("general_stable", 5 * degree <= 2 * g - 7)


def spin_structure_count(r: int, g: int) -> int:
    """Number of r-th roots of the tangent bundle on a genus-g surface."""
    if g < 2:
        raise ValueError("g must be >= 2")
    if r < 1:
        raise ValueError("r must be >= 1")
    return r ** (2 * g) if (2 - 2 * g) % r == 0 else 0


def orbit_count(r: int) -> int:
    """Deformation classes of r-Spin structures: 1 (r odd) or 2 (r even)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return 2 if r % 2 == 0 else 1


def pi0_mtspin(r: int):
    """pi_0 of the stable r-Spin Thom spectrum and the index of the image
    of the Euler characteristic inside its free part."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r % 2:
        return FgAbGroup.free(1), 2 * r
    return FgAbGroup(1, (2,)), r


def pi1_mtspin(r: int) -> FgAbGroup:
    """pi_1 of the stable r-Spin Thom spectrum (all torsion)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    orders = []
    if r % 4 == 2:
        orders.append(4)
    elif r % 4 == 0:
        orders.append(8)
    if r % 3 == 0:
        orders.append(3)
    return FgAbGroup.from_orders(orders)


def xr_cohomology(r: int, degree: int) -> FgAbGroup:
    """Integral cohomology of the cofibre space used to compare the
    r-Spin spectrum with the plain Spin spectrum: Z/r^{i+1} in degree
    2i+1, trivial otherwise."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if degree < 1 or degree % 2 == 0:
        return FgAbGroup.trivial()
    i = (degree - 1) // 2
    return FgAbGroup.cyclic(r ** (i + 1))


def pi2_multiplier(r: int) -> int:
    """The integer by which the rank-one free quotient of pi_2 maps to Z;
    equals the divisibility of the Hodge class."""
    m, rem = divmod(r * r * u_r(r), 12)
    if rem:
        raise errors.InternalConsistencyError(f"r^2 U_r not divisible by 12 at r = {r}")
    return m


def h1_moduli(r: int, g: int, eps: Optional[int] = None, allow_unstable: bool = False) -> FgAbGroup:
    """Stable first integral homology of the genus-g r-Spin moduli space."""
    ctx = ModuliContext(r, g, eps, allow_unstable=allow_unstable)
    ctx.require_nonempty()
    ctx.require_h1_range()
    return FgAbGroup.from_orders([n for n in (_part2(r), _part3(r)) if n > 1])


def h2_moduli(r: int, g: int, eps: Optional[int] = None, allow_unstable: bool = False) -> FgAbGroup:
    """Stable second integral cohomology: Z plus the H_1 torsion."""
    ctx = ModuliContext(r, g, eps, allow_unstable=allow_unstable)
    ctx.require_nonempty()
    ctx.require_h2_range()
    torsion = FgAbGroup.from_orders([n for n in (_part2(r), _part3(r)) if n > 1])
    return FgAbGroup.free(1).direct_sum(torsion)


def _part2(r: int) -> int:
    return 4 if r % 4 == 2 else 8 if r % 4 == 0 else 1


def _part3(r: int) -> int:
    return 3 if r % 3 == 0 else 1


def picard_report(r: int, g: int, eps: Optional[int] = None, allow_unstable: bool = False) -> dict:
    """Structured summary: the Picard group of the moduli space in all of
    its guises (algebraic, topological, Neron-Severi) equals H^2."""
    from . import classes as cl

    ctx = ModuliContext(r, g, eps, allow_unstable=allow_unstable)
    ctx.require_nonempty()
    ctx.require_h2_range()
    group = h2_moduli(r, g, eps, allow_unstable=allow_unstable)
    gens = cl.default_generators(ctx)
    pres = cl.presentation(ctx, gens)
    return {
        "group": group,
        "presentation": pres,
        "isomorphisms": "Pic_alg = NS = Pic_top = H^2",
        "guard": RangeGuard.h2_stable(g),
    }
