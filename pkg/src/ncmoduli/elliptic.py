"""Quadruple configurations on a pencil of genus-one double covers.

The curve family is Z^2 = X * Y * (X - Y) * (l1*X - l0*Y) with (X : Y)
projective of weight 1, Z of weight 2, and (l0 : l1) the pencil
parameter (affine value lambda = l0/l1, with lambda outside {0, 1}).

The orbit relation on two-point configurations is generated by three
translations by 2-torsion (t1, t2, t3, acting on points over a fixed
parameter) and two parameter symmetries (swap: lambda -> 1/lambda,
complement: lambda -> 1 - lambda, each acting on points as well).  All
five act by homogeneous polynomial maps, which is why the parameter is
carried as a pair (l0, l1) internally: membership in the curve is then
preserved on the nose, without choosing square roots.  Public
constructors normalize l1 = 1.

Equality of points is literal field equality after a canonical
projective normalization, so orbit search is an exact finite
enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import DomainError
from .exact import GAUSSIAN_I, GaussianRational, ScalarLike

TRANSLATION_NAMES = ("t1", "t2", "t3")
SYMMETRY_NAMES = ("swap", "complement")

#: Canonical words in swap/complement realizing the six parameter symmetries.
LAMBDA_WORDS: Tuple[Tuple[str, ...], ...] = (
    (),
    ("swap",),
    ("complement",),
    ("swap", "complement"),
    ("complement", "swap"),
    ("swap", "complement", "swap"),
)


@dataclass(frozen=True)
class LambdaPair:
    """The pencil parameter as a homogeneous pair (l0 : l1)."""

    l0: GaussianRational
    l1: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "l0", GaussianRational.coerce(self.l0))
        object.__setattr__(self, "l1", GaussianRational.coerce(self.l1))
        if self.l0.is_zero() or self.l1.is_zero() or self.l0 == self.l1:
            raise DomainError(
                f"degenerate pencil parameter ({self.l0!r} : {self.l1!r}); "
                "the affine value must avoid 0, 1 and infinity"
            )

    @classmethod
    def from_affine(cls, value: ScalarLike) -> "LambdaPair":
        return cls(GaussianRational.coerce(value), GaussianRational(1))

    @property
    def affine(self) -> GaussianRational:
        return self.l0 / self.l1


@dataclass(frozen=True)
class EllPoint:
    """A curve point (X : Y : Z), weight (1, 1, 2), canonically normalized."""

    x: GaussianRational
    y: GaussianRational
    z: GaussianRational

    @classmethod
    def make(cls, x: ScalarLike, y: ScalarLike, z: ScalarLike) -> "EllPoint":
        """Normalize the first nonzero weight-1 coordinate to 1."""
        gx = GaussianRational.coerce(x)
        gy = GaussianRational.coerce(y)
        gz = GaussianRational.coerce(z)
        if not gx.is_zero():
            inv = gx.inverse()
            return cls(GaussianRational(1), inv * gy, inv * inv * gz)
        if not gy.is_zero():
            inv = gy.inverse()
            return cls(GaussianRational(0), GaussianRational(1), inv * inv * gz)
        if gz.is_zero():
            raise DomainError("(0 : 0 : 0) is not a point")
        return cls(GaussianRational(0), GaussianRational(0), GaussianRational(1))

    def flipped(self) -> "EllPoint":
        """The hyperelliptic involution Z -> -Z."""
        return EllPoint(self.x, self.y, -self.z)


def curve_rhs(lam: LambdaPair, x: GaussianRational, y: GaussianRational) -> GaussianRational:
    return x * y * (x - y) * (lam.l1 * x - lam.l0 * y)


def on_curve(lam: LambdaPair, pt: EllPoint) -> bool:
    return pt.z * pt.z == curve_rhs(lam, pt.x, pt.y)


def origin_point() -> EllPoint:
    return EllPoint.make(1, 0, 0)


def two_torsion_points(lam: LambdaPair) -> Tuple[EllPoint, ...]:
    """The four Z = 0 points: the branch locus of the double cover."""
    return (
        EllPoint.make(1, 0, 0),
        EllPoint.make(0, 1, 0),
        EllPoint.make(1, 1, 0),
        EllPoint.make(lam.l0, lam.l1, 0),
    )


def translate(lam: LambdaPair, pt: EllPoint, which: str) -> EllPoint:
    """Translation by one of the three nontrivial 2-torsion points.

    Each is an exact involution of the curve over its own parameter; the
    parameter itself is unchanged.
    """
    l0, l1 = lam.l0, lam.l1
    x, y, z = pt.x, pt.y, pt.z
    if which == "t1":
        return EllPoint.make(l0 * (x - y), l1 * x - l0 * y, l0 * (l0 - l1) * z)
    if which == "t2":
        return EllPoint.make(l0 * y - l1 * x, l1 * (y - x), l1 * (l0 - l1) * z)
    if which == "t3":
        return EllPoint.make(l0 * y, l1 * x, l0 * l1 * z)
    raise DomainError(f"unknown translation {which!r}")


def symmetry_pair(lam: LambdaPair, which: str) -> LambdaPair:
    if which == "swap":
        return LambdaPair(lam.l1, lam.l0)
    if which == "complement":
        return LambdaPair(lam.l1 - lam.l0, lam.l1)
    raise DomainError(f"unknown parameter symmetry {which!r}")


def symmetry_point(lam: LambdaPair, pt: EllPoint, which: str) -> EllPoint:
    if which == "swap":
        return EllPoint.make(pt.y, pt.x, pt.z)
    if which == "complement":
        return EllPoint.make(pt.y - pt.x, pt.y, GAUSSIAN_I * pt.z)
    raise DomainError(f"unknown parameter symmetry {which!r}")


@dataclass(frozen=True)
class EllipticConfiguration:
    """A parameter together with an ordered pair of curve points.

    Membership is enforced on construction; every transform in this
    module preserves it exactly, so configurations stay valid throughout
    an orbit search.
    """

    lam: LambdaPair
    p1: EllPoint
    p2: EllPoint

    def __post_init__(self):
        for label, pt in (("first", self.p1), ("second", self.p2)):
            if not on_curve(self.lam, pt):
                raise DomainError(f"{label} point does not lie on the curve")


def make_configuration(
    lam: ScalarLike, p1: Sequence[ScalarLike], p2: Sequence[ScalarLike]
) -> EllipticConfiguration:
    """Public constructor: affine parameter, raw coordinate triples."""
    pair = LambdaPair.from_affine(lam)
    if len(p1) != 3 or len(p2) != 3:
        raise DomainError("points need three coordinates")
    return EllipticConfiguration(pair, EllPoint.make(*p1), EllPoint.make(*p2))


def is_admissible(cfg: EllipticConfiguration) -> bool:
    """The second point must avoid the branch locus (Z != 0)."""
    return not cfg.p2.z.is_zero()


def apply_symmetry(cfg: EllipticConfiguration, which: str) -> EllipticConfiguration:
    return EllipticConfiguration(
        symmetry_pair(cfg.lam, which),
        symmetry_point(cfg.lam, cfg.p1, which),
        symmetry_point(cfg.lam, cfg.p2, which),
    )


def apply_group_element(
    cfg: EllipticConfiguration,
    lambda_word: Sequence[str] = (),
    translate_first: Optional[str] = None,
    translate_second: Optional[str] = None,
    flip: bool = False,
) -> EllipticConfiguration:
    """Apply a parameter-symmetry word (left to right), then translations."""
    out = cfg
    for step in lambda_word:
        out = apply_symmetry(out, step)
    p1 = translate(out.lam, out.p1, translate_first) if translate_first else out.p1
    p2 = translate(out.lam, out.p2, translate_second) if translate_second else out.p2
    if flip:
        p1 = p1.flipped()
        p2 = p2.flipped()
    return EllipticConfiguration(out.lam, p1, p2)


def orbit_equivalent(
    first: EllipticConfiguration,
    second: EllipticConfiguration,
    include_involution: bool = False,
) -> Tuple[bool, Optional[Dict]]:
    """Search the finite generated group for an element carrying first to second.

    Enumerates the six canonical parameter words times the sixteen
    translation choices (and, when ``include_involution`` is set, the
    simultaneous hyperelliptic flip) in a fixed order and returns the
    first witness found.  With the flip included the relation is
    symmetric; without it the search follows the generators literally.
    """
    for cfg in (first, second):
        if not is_admissible(cfg):
            raise DomainError("orbit comparison needs admissible configurations")
    translations: Tuple[Optional[str], ...] = (None,) + TRANSLATION_NAMES
    flips = (False, True) if include_involution else (False,)
    for word in LAMBDA_WORDS:
        for tr1 in translations:
            for tr2 in translations:
                for flip in flips:
                    image = apply_group_element(first, word, tr1, tr2, flip)
                    if image == second:
                        witness = {
                            "lambda_word": list(word),
                            "translate_first": tr1,
                            "translate_second": tr2,
                            "flip": flip,
                        }
                        return True, witness
    return False, None


# -- exact fixtures ----------------------------------------------------


def point_on_affine_curve(lam: GaussianRational, x: GaussianRational, y: GaussianRational) -> bool:
    """Membership on the affine chart Y = 1: y^2 = x (x - 1) (x - lambda)."""
    return y * y == x * (x - 1) * (x - lam)


def _chord_tangent(
    lam: GaussianRational,
    p: Tuple[GaussianRational, GaussianRational],
    q: Tuple[GaussianRational, GaussianRational],
) -> Optional[Tuple[GaussianRational, GaussianRational]]:
    """Addition on y^2 = x(x-1)(x-lambda) in the chart Y = 1.

    Returns None on the degenerate slopes (vertical chord or tangent at
    a 2-torsion point); fixture generators just resample then.
    """
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if y1 == y2:
            if y1.is_zero():
                return None
            num = 3 * x1 * x1 - 2 * (1 + lam) * x1 + lam
            slope = num / (2 * y1)
        else:
            return None
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope + (1 + lam) - x1 - x2
    y3 = slope * (x1 - x3) - y1
    return x3, y3


def point_multiple(
    lam: GaussianRational, pt: EllPoint, k: int
) -> Optional[EllPoint]:
    """k-fold sum of an affine-chart point under the chord-tangent law."""
    if pt.y.is_zero():
        raise DomainError("multiples are computed on the Y = 1 chart")
    if k < 1:
        raise DomainError("k must be a positive integer")
    base = (pt.x / pt.y, pt.z / (pt.y * pt.y))
    acc = base
    for _ in range(k - 1):
        nxt = _chord_tangent(lam, acc, base)
        if nxt is None:
            return None
        acc = nxt
    return EllPoint.make(acc[0], 1, acc[1])


def random_curve_point(rng: Random) -> Tuple[Fraction, EllPoint]:
    """A random exact rational point together with its pencil parameter.

    The parameter is solved from the point: given x and z, setting
    lambda = x - z^2 / (x (x - 1)) puts (x : 1 : z) on the curve.
    """
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        z = Fraction(rng.randint(1, 9), rng.randint(1, 6))
        if x == 0 or x == 1:
            continue
        lam = x - z * z / (x * (x - 1))
        if lam == 0 or lam == 1:
            continue
        return lam, EllPoint.make(x, 1, z)


def random_configuration(rng: Random) -> EllipticConfiguration:
    """A random admissible configuration with an exact rational parameter."""
    while True:
        lam, p1 = random_curve_point(rng)
        glam = GaussianRational(lam)
        p2 = point_multiple(glam, p1, rng.choice((2, 3)))
        if p2 is None or p2.z.is_zero() or p2 == p1:
            continue
        return EllipticConfiguration(LambdaPair.from_affine(lam), p1, p2)


# -- symbolic equation preservation ------------------------------------

# Tiny exact polynomials in (l0, l1, X, Y) over Q(i), as exponent -> coeff
# maps.  Z only ever appears through its announced scaling factor, so the
# transform checks reduce to identities among these four variables.

_Poly = Dict[Tuple[int, int, int, int], GaussianRational]


def _pconst(c: ScalarLike) -> _Poly:
    g = GaussianRational.coerce(c)
    return {} if g.is_zero() else {(0, 0, 0, 0): g}


def _pvar(k: int) -> _Poly:
    e = [0, 0, 0, 0]
    e[k] = 1
    return {tuple(e): GaussianRational(1)}


def _padd(a: _Poly, b: _Poly) -> _Poly:
    out = dict(a)
    for e, c in b.items():
        acc = out.get(e, GaussianRational(0)) + c
        if acc.is_zero():
            out.pop(e, None)
        else:
            out[e] = acc
    return out


def _pneg(a: _Poly) -> _Poly:
    return {e: -c for e, c in a.items()}


def _psub(a: _Poly, b: _Poly) -> _Poly:
    return _padd(a, _pneg(b))


def _pmul(a: _Poly, b: _Poly) -> _Poly:
    out: _Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            acc = out.get(e, GaussianRational(0)) + ca * cb
            if acc.is_zero():
                out.pop(e, None)
            else:
                out[e] = acc
    return out


def _pprod(factors: Iterable[_Poly]) -> _Poly:
    out = _pconst(1)
    for f in factors:
        out = _pmul(out, f)
    return out


def _curve_rhs_poly(l0: _Poly, l1: _Poly, x: _Poly, y: _Poly) -> _Poly:
    return _pprod([x, y, _psub(x, y), _psub(_pmul(l1, x), _pmul(l0, y))])


def verify_equation_preservation() -> Dict[str, bool]:
    """Check all five transforms against the curve equation symbolically.

    For each transform with images (l0', l1', X', Y') and Z-factor zfac,
    the identity RHS(l0', l1', X', Y') = zfac^2 * RHS(l0, l1, X, Y) is
    verified as an exact polynomial identity in l0, l1, X, Y.
    """
    L0, L1, X, Y = (_pvar(k) for k in range(4))
    dlam = _psub(L0, L1)
    table = {
        "t1": (
            L0,
            L1,
            _pmul(L0, _psub(X, Y)),
            _psub(_pmul(L1, X), _pmul(L0, Y)),
            _pmul(L0, dlam),
        ),
        "t2": (
            L0,
            L1,
            _psub(_pmul(L0, Y), _pmul(L1, X)),
            _pmul(L1, _psub(Y, X)),
            _pmul(L1, dlam),
        ),
        "t3": (L0, L1, _pmul(L0, Y), _pmul(L1, X), _pmul(L0, L1)),
        "swap": (L1, L0, Y, X, _pconst(1)),
        "complement": (_psub(L1, L0), L1, _psub(Y, X), Y, _pconst(GAUSSIAN_I)),
    }
    rhs = _curve_rhs_poly(L0, L1, X, Y)
    results = {}
    for name, (pl0, pl1, px, py, zfac) in table.items():
        lhs = _curve_rhs_poly(pl0, pl1, px, py)
        expected = _pmul(_pmul(zfac, zfac), rhs)
        results[name] = lhs == expected
    return results
