"""Twisting r-Spin structures by a Z/r cohomology class, restriction of
classes to the classifying-space fiber, and the homology and Picard data
of the r-theta-characteristic moduli spaces."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from . import classes as cl
from . import errors
from .abelian import FgAbGroup, HomZN, IntMatrix, group_from_presentation, kernel_lattice, pontrjagin_dual, subgroup_info
from .classes import ClassSymbol, FormalClass, KAPPA1, LAMBDA, ModuliContext, Presentation


@dataclass(frozen=True)
class TwistInput:
    """Parameters of a twist: the base context, the Arf invariant of the
    starting structure (even r only), and the coefficient of the
    Bockstein class beta(D)."""

    ctx: ModuliContext
    arf: Optional[int] = None
    beta_coefficient: int = 0

    def __post_init__(self):
        if self.ctx.r % 2 == 0:
            if self.arf not in (0, 1):
                raise errors.EpsParityError("arf must be 0 or 1 when r is even")
        elif self.arf is not None:
            raise errors.EpsParityError("arf must be omitted when r is odd")


def _chi_over_r(ctx: ModuliContext) -> int:
    ctx.require_nonempty()
    return ctx.chi // ctx.r


def twist_shift(tw: TwistInput, symbol: ClassSymbol) -> int:
    """The beta(D)-multiple added to one named class under twisting, as
    an element of Z/r. The fractional Hodge classes are twist-invariant."""
    r = tw.ctx.r
    if symbol.kind == LAMBDA:
        return 0
    if symbol.kind == KAPPA1:
        a = symbol.power
        return (2 * a * a * _chi_over_r(tw.ctx) * tw.beta_coefficient) % r
    if r % 2:
        raise errors.MuUndefinedError(f"mu is not defined for odd r = {r}")
    return (tw.arf * (r // 2) * tw.beta_coefficient) % r


def twist_class(tw: TwistInput, x: FormalClass):
    """Per-term shifts and their total for an integer combination."""
    per_term = [(sym, c, (c * twist_shift(tw, sym)) % tw.ctx.r) for sym, c in x.terms]
    total = sum(s for _, _, s in per_term) % tw.ctx.r
    return per_term, total


@dataclass(frozen=True)
class EvalOnFiber:
    """Value of a class on the B(Z/r) fiber, as a multiple of beta(x)."""

    modulus: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)


def eval_on_fiber(ctx: ModuliContext, x: FormalClass) -> EvalOnFiber:
    """Restriction of a degree-two class to the fiber of the gerbe
    relating the two moduli spaces; a map onto a subgroup of Z/r."""
    r = ctx.r
    total = 0
    for sym, c in x.terms:
        if sym.kind == LAMBDA:
            continue
        if sym.kind == KAPPA1:
            a = sym.power
            total += c * 2 * a * a * _chi_over_r(ctx)
        else:
            if r % 2:
                raise errors.MuUndefinedError(f"mu is not defined for odd r = {r}")
            total += c * ctx.eps * (r // 2)
    return EvalOnFiber(r, total % r)


@dataclass(frozen=True)
class ZrSubgroup:
    """A subgroup of Z/r in canonical form: generated by a divisor of r."""

    modulus: int
    generator: int  # divisor of modulus; equals modulus for the zero subgroup

    @classmethod
    def generated_by(cls, modulus: int, element: int) -> "ZrSubgroup":
        d = gcd(element % modulus, modulus)
        return cls(modulus, d if d else modulus)

    @property
    def order(self) -> int:
        return self.modulus // self.generator

    def is_trivial(self) -> bool:
        return self.generator == self.modulus


def tors_map_image(r: int, g: int, eps: Optional[int] = None, allow_unstable: bool = False) -> ZrSubgroup:
    """Image in Z/r of the torsion subgroup under the fiber restriction.

    Computed twice: from the closed form (zero for r odd or r = 2 mod 4,
    generated by r(12 eps + chi) / (8 gcd(r,3)) for r = 0 mod 4) and by
    evaluating the torsion generator directly. Disagreement is an error.
    """
    ctx = ModuliContext(r, g, eps, allow_unstable=allow_unstable)
    ctx.require_nonempty()
    ctx.require_h2_range()
    chi = ctx.chi
    if r % 4 == 0:
        num = r * (12 * eps + chi)
        den = 8 * gcd(r, 3)
        q, rem = divmod(num, den)
        if rem:
            raise errors.InternalConsistencyError(
                f"image generator r(12*eps + chi)/(8*gcd(r,3)) = {num}/{den} is not an integer"
            )
        closed = ZrSubgroup.generated_by(r, q)
    else:
        closed = ZrSubgroup(r, r)
    if ctx.torsion_order == 1:
        direct = ZrSubgroup(r, r)
    else:
        t = cl.torsion_generator(ctx)
        direct = ZrSubgroup.generated_by(r, eval_on_fiber(ctx, t).value)
    if closed != direct:
        raise errors.InternalConsistencyError(
            f"fiber image of the torsion subgroup at (r={r}, g={g}, eps={eps}): "
            f"closed form gives {closed.generator}Z/{r}, "
            f"evaluating the torsion generator gives {direct.generator}Z/{r}"
        )
    return closed


def h1_theta(r: int, g: int, eps: Optional[int] = None, allow_unstable: bool = False) -> FgAbGroup:
    """Stable first integral homology of the r-theta-characteristic
    moduli space: dual of the kernel of the torsion fiber map."""
    ctx = ModuliContext(r, g, eps, allow_unstable=allow_unstable)
    image = tors_map_image(r, g, eps, allow_unstable=allow_unstable)
    n = ctx.torsion_order
    if n % image.order:
        raise errors.InternalConsistencyError(
            f"fiber image order {image.order} does not divide the torsion order {n}"
        )
    return pontrjagin_dual(FgAbGroup.cyclic(n // image.order))


def theta_g_dependence_note(r: int, g: int, eps: Optional[int] = None) -> Optional[str]:
    """Warn when the r = 4 image formula deviates from its advertised
    g-independent value (it agrees at g = 9)."""
    if r != 4:
        return None
    expected_order = 1 if eps == 0 else 2
    actual = tors_map_image(r, g, eps)
    if actual.order == expected_order:
        return None
    return (
        f"fiber image at (r=4, g={g}, eps={eps}) has order {actual.order}, "
        f"not the order {expected_order} seen at g=9; the image formula is g-dependent"
    )


@dataclass(frozen=True)
class ThetaSubgroup:
    """H^2 of the theta-characteristic space as a subgroup of H^2 of the
    r-Spin space."""

    generators: tuple  # FormalClass values
    presentation: Presentation
    group: FgAbGroup
    index: int


def h2_theta_subgroup(ctx: ModuliContext, generators: Optional[Sequence[FormalClass]] = None) -> ThetaSubgroup:
    """The kernel of the fiber restriction, expressed in the supplied
    generating classes of the ambient H^2."""
    ctx.require_nonempty()
    ctx.require_h2_range()
    gens = tuple(generators) if generators is not None else cl.default_generators(ctx)
    cl.presentation(ctx, gens)  # raises if gens do not generate
    evals = [eval_on_fiber(ctx, x).value for x in gens]
    coeff_rows = kernel_lattice(HomZN(ctx.r, tuple((0, e) for e in evals)))
    sub_gens = []
    for i in range(coeff_rows.rows):
        row = coeff_rows.row(i)
        combo = FormalClass.zero()
        for c, gen in zip(row, gens):
            combo = combo + c * gen
        sub_gens.append(combo)
    sub_gens = tuple(sub_gens)

    hom = cl.coords_hom(ctx, sub_gens)
    info = subgroup_info(ctx.torsion_order, hom.generator_images)
    image_order = ctx.r // gcd(ctx.r, *evals) if evals else 1
    if info.index != image_order:
        raise errors.InternalConsistencyError(
            f"subgroup index {info.index} does not match the fiber image order {image_order}"
        )
    relations = kernel_lattice(hom)
    pres = Presentation(sub_gens, relations)
    if group_from_presentation(len(sub_gens), relations) != info.group:
        raise errors.InternalConsistencyError(
            "presentation of the kernel subgroup disagrees with its subgroup structure"
        )
    return ThetaSubgroup(sub_gens, pres, info.group, info.index)
