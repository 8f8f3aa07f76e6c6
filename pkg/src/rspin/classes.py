"""The class lattice of the second integral cohomology of r-Spin moduli.

Named characteristic classes (fractional Hodge classes, fractional
kappa-one classes, and mu in the even case), their coordinates in the
canonical splitting Z + Z/N, the mod-24 detection homomorphism, torsion
generators, and generator/relation presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import errors
from .abelian import (
    FgAbGroup,
    HomZN,
    IntMatrix,
    group_from_presentation,
    kernel_lattice,
    subgroup_info,
)

# symbol kinds, in deterministic print/sort order
LAMBDA = "lambda"
KAPPA1 = "kappa1"
MU_KIND = "mu"
_KIND_RANK = {LAMBDA: 0, KAPPA1: 1, MU_KIND: 2}


@dataclass(frozen=True)
class ClassSymbol:
    """One named class: lambda(a/r), kappa1(a/r), or mu."""

    kind: str
    power: int = 0  # tensor-power numerator a; unused for mu

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown symbol kind {self.kind!r}")

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.power)


def Lambda(a: int) -> ClassSymbol:
    return ClassSymbol(LAMBDA, a)


def Kappa1(a: int) -> ClassSymbol:
    return ClassSymbol(KAPPA1, a)


MU = ClassSymbol(MU_KIND, 0)


@dataclass(frozen=True)
class FormalClass:
    """Integer linear combination of class symbols, normalized support."""

    terms: tuple = ()  # sorted pairs (ClassSymbol, nonzero coefficient)

    @classmethod
    def of(cls, mapping) -> "FormalClass":
        acc = {}
        items = mapping.items() if hasattr(mapping, "items") else mapping
        for sym, c in items:
            acc[sym] = acc.get(sym, 0) + int(c)
        pairs = tuple(sorted(((s, c) for s, c in acc.items() if c), key=lambda p: p[0].sort_key()))
        return cls(pairs)

    @classmethod
    def zero(cls) -> "FormalClass":
        return cls(())

    @classmethod
    def single(cls, sym: ClassSymbol, coeff: int = 1) -> "FormalClass":
        return cls.of([(sym, coeff)])

    def coeff(self, sym: ClassSymbol) -> int:
        return dict(self.terms).get(sym, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FormalClass") -> "FormalClass":
        return FormalClass.of(list(self.terms) + list(other.terms))

    def __neg__(self) -> "FormalClass":
        return FormalClass(tuple((s, -c) for s, c in self.terms))

    def __sub__(self, other: "FormalClass") -> "FormalClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "FormalClass":
        if k == 0:
            return FormalClass.zero()
        return FormalClass(tuple((s, k * c) for s, c in self.terms))


# ---------------------------------------------------------------------------
# rendering (inverse of the expression parser in rspin.expr)


def render_symbol(sym: ClassSymbol, r: int) -> str:
    if sym.kind == MU_KIND:
        return "mu"
    if sym.power == r:
        return sym.kind
    return f"{sym.kind}({sym.power}/{r})"


def render_class(x: FormalClass, r: int) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for i, (sym, c) in enumerate(x.terms):
        name = render_symbol(sym, r)
        body = name if abs(c) == 1 else f"{abs(c)}*{name}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# context


def u_r(r: int) -> int:
    """The divisibility constant: 2, 4, 6 or 12 depending on r mod 12."""
    if r < 2:
        raise ValueError("r must be >= 2")
    by4, by3 = r % 4 == 0, r % 3 == 0
    if by4 and by3:
        return 2
    if by3:
        return 4
    if by4:
        return 6
    return 12


@dataclass(frozen=True)
class ModuliContext:
    """The parameters (r, g, eps) of one moduli space.

    eps is the Arf invariant and must be supplied exactly when r is even.
    allow_unstable disables the genus guards; results below the stable
    range are unverified.
    """

    r: int
    g: int
    eps: Optional[int] = None
    allow_unstable: bool = field(default=False, compare=False)

    H1_STABLE_GENUS = 6
    H2_STABLE_GENUS = 9

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("r must be >= 2")
        if self.g < 2:
            raise ValueError("g must be >= 2")
        if self.r % 2 == 0:
            if self.eps not in (0, 1):
                raise errors.EpsParityError(f"r = {self.r} is even: eps must be 0 or 1")
        elif self.eps is not None:
            raise errors.EpsParityError(f"r = {self.r} is odd: eps must be omitted")

    @property
    def chi(self) -> int:
        return 2 - 2 * self.g

    @property
    def u(self) -> int:
        return u_r(self.r)

    @property
    def torsion_order(self) -> int:
        """Order N of the torsion subgroup of the stable H^2."""
        t2 = 4 if self.r % 4 == 2 else 8 if self.r % 4 == 0 else 1
        t3 = 3 if self.r % 3 == 0 else 1
        return t2 * t3

    @property
    def nonempty(self) -> bool:
        return self.chi % self.r == 0

    @property
    def in_h2_range(self) -> bool:
        return self.g >= self.H2_STABLE_GENUS

    def require_nonempty(self):
        if not self.nonempty:
            raise errors.EmptyModuliError(
                f"no {self.r}-Spin structures in genus {self.g}: {self.r} does not divide {self.chi}"
            )

    def require_h2_range(self):
        if not (self.in_h2_range or self.allow_unstable):
            raise errors.StableRangeError(
                f"g = {self.g} is below the stable range g >= {self.H2_STABLE_GENUS} for H^2"
            )

    def require_h1_range(self):
        if not (self.g >= self.H1_STABLE_GENUS or self.allow_unstable):
            raise errors.StableRangeError(
                f"g = {self.g} is below the stable range g >= {self.H1_STABLE_GENUS} for H_1"
            )


def stable_genus(r: int, at_least: int = 9) -> int:
    """Smallest g >= at_least with a nonempty genus-g moduli space."""
    step = r if r % 2 else r // 2
    g = at_least
    while (2 - 2 * g) % r:
        g += 1
        if g > at_least + step:
            raise AssertionError("unreachable: period divides step")
    return g


# ---------------------------------------------------------------------------
# coordinates


def _quad(r: int, a: int) -> int:
    return r * r - 6 * a * r + 6 * a * a


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise errors.InternalConsistencyError(f"{num} is not divisible by {den}")
    return q


def _symbol_free(ctx: ModuliContext, sym: ClassSymbol) -> int:
    u = ctx.u
    if sym.kind == LAMBDA:
        return _exact_div(u * _quad(ctx.r, sym.power), 12)
    if sym.kind == KAPPA1:
        return sym.power * sym.power * u
    if ctx.r % 2:
        raise errors.MuUndefinedError(f"mu is not defined for odd r = {ctx.r}")
    return -_exact_div(u * ctx.r * ctx.r, 48)


def _symbol_phi(ctx: ModuliContext, sym: ClassSymbol) -> int:
    if sym.kind == LAMBDA:
        return 2
    if sym.kind == KAPPA1:
        return 0
    if ctx.r % 2:
        raise errors.MuUndefinedError(f"mu is not defined for odd r = {ctx.r}")
    return 1


def free_coordinate(ctx: ModuliContext, x: FormalClass) -> int:
    """Image of x in the rank-one torsion-free quotient, as a multiple of
    the fixed positive generator."""
    ctx.require_h2_range()
    return sum(c * _symbol_free(ctx, s) for s, c in x.terms)


def phi_value(ctx: ModuliContext, x: FormalClass) -> int:
    """The detection homomorphism into Z/24 (injective on torsion)."""
    ctx.require_h2_range()
    return sum(c * _symbol_phi(ctx, s) for s, c in x.terms) % 24


def rational_multiple_of_lambda(ctx: ModuliContext, x: FormalClass) -> Fraction:
    """The rational q with x = q * lambda in rational cohomology."""
    total = Fraction(0)
    rr = ctx.r * ctx.r
    for sym, c in x.terms:
        if sym.kind == LAMBDA:
            total += c * Fraction(_quad(ctx.r, sym.power), rr)
        elif sym.kind == KAPPA1:
            total += c * Fraction(12 * sym.power * sym.power, rr)
        else:
            if ctx.r % 2:
                raise errors.MuUndefinedError(f"mu is not defined for odd r = {ctx.r}")
            half = ctx.r // 2
            total += c * (Fraction(_quad(ctx.r, -half), rr) + 12 * Fraction(_quad(ctx.r, half), rr)) / 2
    return total


def default_symbols(r: int) -> list:
    """The deterministic generator list lambda(0/r)..lambda(r/r),
    kappa1(1/r), and mu when defined."""
    syms = [Lambda(a) for a in range(r + 1)]
    syms.append(Kappa1(1))
    if r % 2 == 0:
        syms.append(MU)
    return syms


_LIFT_CACHE: dict = {}


def generator_lift(ctx: ModuliContext) -> FormalClass:
    """A fixed integral class with free coordinate +1.

    Well-defined only up to torsion; computed deterministically by an
    extended gcd over the default symbol list so coordinates are stable
    across runs.
    """
    ctx.require_h2_range()
    key = ctx.r
    if key in _LIFT_CACHE:
        return _LIFT_CACHE[key]
    g, combo = 0, FormalClass.zero()
    for sym in default_symbols(ctx.r):
        v = _symbol_free(ctx, sym)
        g, x, y = _ext_gcd(g, v)
        combo = _scale_add(x, combo, y, FormalClass.single(sym))
    if g != 1:
        raise errors.InternalConsistencyError(
            f"divisibilities of the named classes have common factor {g} at r = {ctx.r}"
        )
    _LIFT_CACHE[key] = combo
    return combo


def _ext_gcd(a: int, b: int):
    """(g, x, y) with g = a*x + b*y, g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _scale_add(a: int, x: FormalClass, b: int, y: FormalClass) -> FormalClass:
    return (a * x) + (b * y)


@dataclass(frozen=True)
class CanonicalCoords:
    """The pair deciding equality in H^2: free coordinate d and the
    phi-value tau of the torsion part (a multiple of 24/N)."""

    d: int
    tau: int  # in Z/24
    torsion_order: int

    @property
    def tau_reduced(self) -> int:
        """tau rescaled to an element of Z/N."""
        return self.tau // (24 // self.torsion_order)


def canonical_coords(ctx: ModuliContext, x: FormalClass) -> CanonicalCoords:
    ctx.require_nonempty()
    ctx.require_h2_range()
    d = free_coordinate(ctx, x)
    tau = (phi_value(ctx, x) - d * phi_value(ctx, generator_lift(ctx))) % 24
    n = ctx.torsion_order
    if tau % (24 // n):
        raise errors.InternalConsistencyError(
            f"torsion part of a class maps to {tau} in Z/24, outside the order-{n} subgroup"
        )
    return CanonicalCoords(d, tau, n)


def equals(ctx: ModuliContext, x: FormalClass, y: FormalClass) -> bool:
    """Equality in H^2 (valid because the named classes generate and the
    detection map is injective on torsion)."""
    return canonical_coords(ctx, x) == canonical_coords(ctx, y)


# ---------------------------------------------------------------------------
# torsion classes


def _lam(r: int, a: int) -> ClassSymbol:
    # lambda(0/r) equals lambda in H^2; normalize to the bare symbol
    return Lambda(r if a == 0 else a)


def lambda_difference_torsion(ctx: ModuliContext, a: int, b: int) -> FormalClass:
    """Torsion class built from two fractional Hodge classes."""
    qa, qb = _quad(ctx.r, a), _quad(ctx.r, b)
    if qa == 0 and qb == 0:
        raise errors.DegenerateInputError(f"both quadratic coefficients vanish at r={ctx.r}, a={a}, b={b}")
    u = gcd(qa, qb)
    out = FormalClass.of([(_lam(ctx.r, a), qb // u), (_lam(ctx.r, b), -(qa // u))])
    assert free_coordinate(ctx, out) == 0
    return out


def lambda_kappa_torsion(ctx: ModuliContext, a: int) -> FormalClass:
    """Torsion class built from a fractional Hodge class and kappa1(1/r)."""
    qa = _quad(ctx.r, a)
    u = gcd(12, qa)
    out = FormalClass.of([(_lam(ctx.r, a), 12 // u), (Kappa1(1), -(qa // u))])
    assert free_coordinate(ctx, out) == 0
    return out


def mu_kappa_torsion(ctx: ModuliContext) -> FormalClass:
    """Torsion class built from mu and kappa1(1/r); r even only."""
    if ctx.r % 2:
        raise errors.MuUndefinedError(f"mu is not defined for odd r = {ctx.r}")
    rr = ctx.r * ctx.r
    u = gcd(rr, 48)
    out = FormalClass.of([(MU, 48 // u), (Kappa1(1), rr // u)])
    assert free_coordinate(ctx, out) == 0
    return out


def torsion_generator(ctx: ModuliContext) -> FormalClass:
    """A generator of the torsion subgroup (cyclic of order N)."""
    ctx.require_h2_range()
    n = ctx.torsion_order
    if n == 1:
        raise errors.TrivialTorsionError(f"the torsion subgroup is trivial for r = {ctx.r}")
    if ctx.r % 2:
        gen = lambda_kappa_torsion(ctx, 1)
    elif ctx.r % 4 == 2:
        gen = lambda_kappa_torsion(ctx, 0)
    else:
        gen = mu_kappa_torsion(ctx)
    order = 24 // gcd(24, phi_value(ctx, gen))
    if order != n:
        raise errors.InternalConsistencyError(
            f"torsion generator for r = {ctx.r} has phi-order {order}, expected {n}"
        )
    return gen


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """Ordered generators plus an integer relation matrix (one relation
    per row), relations in Hermite normal form."""

    generators: tuple  # FormalClass values
    relations: IntMatrix

    def group(self) -> FgAbGroup:
        return group_from_presentation(len(self.generators), self.relations)

    def render(self, r: int) -> str:
        names = [render_class(g, r) for g in self.generators]
        rels = [render_relation(self.relations.row(i), names) for i in range(self.relations.rows)]
        body = ", ".join(names)
        return f"<{body} | {'; '.join(rels)}>" if rels else f"<{body} | >"


def render_relation(row: Sequence[int], names: Sequence[str]) -> str:
    """Render a relation row, factoring out the content as the papers do."""
    content = 0
    for c in row:
        content = gcd(content, c)
    inner = [c // content for c in row] if content > 1 else list(row)
    parts = []
    for c, name in zip(inner, names):
        if not c:
            continue
        wrapped = f"({name})" if ("*" in name or " " in name) else name
        body = wrapped if abs(c) == 1 else f"{abs(c)}*{wrapped}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    combo = " ".join(parts) if parts else "0"
    return f"{content}({combo})" if content > 1 else combo


def coords_hom(ctx: ModuliContext, gens: Sequence[FormalClass]) -> HomZN:
    """The map Z^k -> Z + Z/N induced by canonical coordinates."""
    coords = [canonical_coords(ctx, x) for x in gens]
    return HomZN(ctx.torsion_order, tuple((c.d, c.tau_reduced) for c in coords))


def presentation(ctx: ModuliContext, generators: Sequence[FormalClass]) -> Presentation:
    """Relations between classes that generate all of H^2."""
    gens = tuple(generators)
    hom = coords_hom(ctx, gens)
    info = subgroup_info(ctx.torsion_order, hom.generator_images)
    if info.index != 1:
        idx = "infinite" if info.index is None else info.index
        raise errors.NonGeneratingError(
            f"classes only generate a subgroup of index {idx} in H^2", index=info.index
        )
    relations = kernel_lattice(hom)
    pres = Presentation(gens, relations)
    expected = FgAbGroup.from_orders([ctx.torsion_order], free_rank=1)
    if pres.group() != expected:
        raise errors.InternalConsistencyError(
            f"presentation cokernel {pres.group()} does not match {expected}"
        )
    return pres


def default_generators(ctx: ModuliContext) -> tuple:
    """A small deterministic generating set for H^2.

    Prefers the two-element sets used in the worked low-r examples, then
    falls back to a systematic search over the default symbol list.
    """
    r = ctx.r
    if r % 2:
        preferred = [FormalClass.single(Lambda(r)), FormalClass.single(Lambda(1))]
    elif r % 4 == 2:
        preferred = [FormalClass.single(Lambda(r)), FormalClass.single(MU)]
    else:
        preferred = [FormalClass.single(MU), FormalClass.single(Lambda(1))]
    candidates = [FormalClass.single(s) for s in default_symbols(r)]
    pools: list = [preferred]
    pools += [
        [candidates[i], candidates[j]]
        for i in range(len(candidates))
        for j in range(i + 1, len(candidates))
    ]
    pools.append(candidates)
    for pool in pools:
        try:
            presentation(ctx, pool)
        except errors.NonGeneratingError:
            continue
        return tuple(pool)
    raise errors.InternalConsistencyError(f"no generating set found for r = {r}")
