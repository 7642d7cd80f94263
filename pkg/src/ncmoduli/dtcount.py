"""Framed representation counts of conifold potentials over prime fields.

The framed quiver adds one framing vertex with a single arrow i into v0;
dimension vectors are fixed at (1, 1, 1), so a representation is five
field scalars (a1, a2, b1, b2, i).  The relations are the cyclic
derivatives of the potential; stability is King stability for a weight
vector theta summing against the dimension vector.

Counts are taken per orbit of the rescaling torus.  At dimension one per
vertex the torus acts freely on the stable locus once i != 0 is forced,
so orbits are counted by fixing a gauge i = 1 and dividing the remaining
free (p - 1)-action out of the (a, b) scalars; divisibility is asserted
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError
from .exact import PrimeFieldElement, fraction_str, is_prime
from .quiver import CyclicPotential, conifold_quiver, jacobi_generators

ARROW_ORDER = ("a1", "a2", "b1", "b2")


@dataclass(frozen=True)
class FramedRep:
    """A framed conifold representation with one scalar per arrow."""

    a1: PrimeFieldElement
    a2: PrimeFieldElement
    b1: PrimeFieldElement
    b2: PrimeFieldElement
    i: PrimeFieldElement

    def __post_init__(self):
        ps = {v.p for v in (self.a1, self.a2, self.b1, self.b2, self.i)}
        if len(ps) != 1:
            raise DomainError(f"mixed field characteristics {sorted(ps)}")

    @property
    def p(self) -> int:
        return self.a1.p

    @classmethod
    def from_ints(cls, p: int, a1: int, a2: int, b1: int, b2: int, i: int) -> "FramedRep":
        return cls(*(PrimeFieldElement(v, p) for v in (a1, a2, b1, b2, i)))

    def scalars(self) -> Dict[str, PrimeFieldElement]:
        return {"a1": self.a1, "a2": self.a2, "b1": self.b1, "b2": self.b2, "i": self.i}


@dataclass(frozen=True)
class StabilityParameter:
    """King weights (theta_0, theta_1, theta_inf) for the three vertices."""

    theta0: Fraction
    theta1: Fraction
    theta_inf: Fraction

    @classmethod
    def from_values(cls, values: Sequence) -> "StabilityParameter":
        vals = [Fraction(v) for v in values]
        if len(vals) != 3:
            raise DomainError("stability needs three weights")
        return cls(*vals)

    def as_tuple(self):
        return (self.theta0, self.theta1, self.theta_inf)

    def to_json(self):
        return [fraction_str(v) for v in self.as_tuple()]


def default_stability() -> StabilityParameter:
    return StabilityParameter(Fraction(-1), Fraction(-1), Fraction(2))


def _compiled_relations(potential: CyclicPotential, p: int) -> List[List[Tuple[int, Tuple[str, ...]]]]:
    """The Jacobi relations as lists of (coefficient mod p, arrow word) terms.

    Raises DomainError when a coefficient denominator vanishes mod p,
    since the relation scheme itself degenerates there.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    out = []
    for gen in jacobi_generators(potential):
        terms = []
        for path, coeff in gen.items():
            frac = coeff.as_fraction()
            if frac.denominator % p == 0:
                raise DomainError(
                    f"coefficient {frac} is not defined in characteristic {p}"
                )
            num = frac.numerator % p
            den_inv = pow(frac.denominator % p, p - 2, p)
            terms.append((num * den_inv % p, path.arrows))
        out.append(terms)
    return out


def satisfies_relations(rep: FramedRep, potential: CyclicPotential) -> bool:
    """Evaluate every cyclic-derivative relation on the representation."""
    if potential.quiver != conifold_quiver():
        raise DomainError("relations are derived from a conifold potential")
    values = {k: v.value for k, v in rep.scalars().items()}
    for relation in _compiled_relations(potential, rep.p):
        total = 0
        for coeff, word in relation:
            term = coeff
            for label in word:
                term = term * values[label] % rep.p
            total = (total + term) % rep.p
        if total != 0:
            return False
    return True


def _subrep_patterns() -> List[Tuple[int, int, int]]:
    """Candidate proper nonzero subdimension vectors (d0, d1, dinf)."""
    return [d for d in product((0, 1), repeat=3) if d not in ((0, 0, 0), (1, 1, 1))]


# arrows of the framed quiver as (label, source slot, target slot) over (0, 1, inf)
_FRAMED_ARROWS = (
    ("a1", 0, 1),
    ("a2", 0, 1),
    ("b1", 1, 0),
    ("b2", 1, 0),
    ("i", 2, 0),
)


def is_theta_stable(rep: FramedRep, theta: StabilityParameter) -> bool:
    """King stability at dimension vector (1, 1, 1).

    A subrepresentation supported on a pattern (d0, d1, dinf) exists
    exactly when every arrow out of a fully kept vertex with a nonzero
    scalar lands in a fully kept vertex; stability requires every such
    proper pattern to have slope strictly below the total slope.
    """
    values = rep.scalars()
    weights = theta.as_tuple()
    total_slope = sum(weights, Fraction(0)) / 3
    for pattern in _subrep_patterns():
        realized = True
        for label, src, tgt in _FRAMED_ARROWS:
            if pattern[src] == 1 and pattern[tgt] == 0 and values[label]:
                realized = False
                break
        if not realized:
            continue
        dim = sum(pattern)
        slope = sum(
            (Fraction(w) for w, d in zip(weights, pattern) if d), Fraction(0)
        ) / dim
        if slope >= total_slope:
            return False
    return True


def count_points(potential: CyclicPotential, theta: StabilityParameter, p: int) -> int:
    """Number of stable-relation orbits over F_p for the given potential.

    Requires the stability to force a nonzero framing scalar (as the
    default (-1, -1, 2) does); the count fixes i = 1 and divides by the
    order of the remaining free torus factor.
    """
    if potential.quiver != conifold_quiver():
        raise DomainError("counting is defined for conifold potentials")
    relations = _compiled_relations(potential, p)

    # The gauge below assumes stability forces i != 0 and (a1, a2) != (0, 0).
    # Stability only depends on the zero pattern of the scalars, so sweeping
    # all 32 patterns verifies that assumption completely for this theta.
    for bits in product((0, 1), repeat=5):
        stable = is_theta_stable(FramedRep.from_ints(p, *bits), theta)
        if stable and (bits[4] == 0 or (bits[0] == 0 and bits[1] == 0)):
            raise DomainError("stability parameter is outside the framed chamber")

    raw = 0
    rng = range(p)
    for a1 in rng:
        for a2 in rng:
            if a1 == 0 and a2 == 0:
                continue
            for b1 in rng:
                for b2 in rng:
                    values = {"a1": a1, "a2": a2, "b1": b1, "b2": b2, "i": 1}
                    ok = True
                    for relation in relations:
                        total = 0
                        for coeff, word in relation:
                            term = coeff
                            for label in word:
                                term = term * values[label] % p
                            total = (total + term) % p
                        if total != 0:
                            ok = False
                            break
                    if ok and is_theta_stable(
                        FramedRep.from_ints(p, a1, a2, b1, b2, 1), theta
                    ):
                        raw += 1
    if raw % (p - 1) != 0:
        raise DomainError(
            f"residual torus action is not free at p = {p}; raw count {raw}"
        )
    return raw // (p - 1)


@dataclass(frozen=True)
class CountReport:
    """Counts over a list of primes plus an interpolated counting polynomial."""

    theta: StabilityParameter
    primes: Tuple[int, ...]
    counts: Dict[int, int]
    excluded: Tuple[int, ...]
    polynomial: Optional[Tuple[Fraction, Fraction, Fraction, Fraction]]  # c0..c3
    euler_characteristic: Optional[Fraction]
    matches_classical: Optional[bool]
    note: str

    def to_json(self):
        return {
            "theta": self.theta.to_json(),
            "primes": list(self.primes),
            "counts": {str(p): c for p, c in sorted(self.counts.items())},
            "excluded": list(self.excluded),
            "polynomial": (
                None
                if self.polynomial is None
                else [fraction_str(c) for c in self.polynomial]
            ),
            "euler_characteristic": (
                None
                if self.euler_characteristic is None
                else fraction_str(self.euler_characteristic)
            ),
            "matches_classical": self.matches_classical,
            "note": self.note,
        }


def _lagrange_cubic(points: Sequence[Tuple[int, int]]) -> Tuple[Fraction, ...]:
    """Exact degree-3 interpolation through four (x, y) points, ascending coeffs."""
    coeffs = [Fraction(0)] * 4
    for k, (xk, yk) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == k:
                continue
            # multiply basis by (x - xm)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d] += c * (-xm)
                nxt[d + 1] += c
            basis = nxt
            denom *= xk - xm
        weight = Fraction(yk) / denom
        for d, c in enumerate(basis):
            coeffs[d] += weight * c
    return tuple(coeffs)


def _evaluate_cubic(coeffs: Sequence[Fraction], x: int) -> Fraction:
    total = Fraction(0)
    for d, c in enumerate(coeffs):
        total += c * x ** d
    return total


def _degenerate_primes(potential: CyclicPotential, primes: Sequence[int]) -> List[int]:
    """Primes dividing any relation coefficient numerator or denominator.

    In those characteristics the relation scheme changes shape, so the
    counts are excluded from polynomial interpolation (they are still
    computed and reported when the denominators survive).
    """
    bad = set()
    for gen in jacobi_generators(potential):
        for _, coeff in gen.items():
            frac = coeff.as_fraction()
            for p in primes:
                if frac.numerator % p == 0 or frac.denominator % p == 0:
                    bad.add(p)
    return sorted(bad)


def counting_report(
    potential: CyclicPotential,
    theta: StabilityParameter,
    primes: Sequence[int],
) -> CountReport:
    """Count at each prime and interpolate a cubic through the clean primes.

    Needs at least four primes; primes where a relation coefficient
    degenerates are excluded from the fit.  The fit is taken through the
    first four included primes and validated against every included
    prime; when validation fails no polynomial is reported.  The Euler
    characteristic is the fit evaluated at 1, and the report records
    whether the fit equals the classical q^3 + q^2.
    """
    ps = sorted(set(int(p) for p in primes))
    if len(ps) < 4:
        raise DomainError("need at least four primes for a degree-3 fit")
    for p in ps:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")

    excluded = _degenerate_primes(potential, ps)
    counts: Dict[int, int] = {}
    for p in ps:
        try:
            counts[p] = count_points(potential, theta, p)
        except DomainError:
            if p not in excluded:
                raise
            # relations undefined mod p: nothing to count
    included = [p for p in ps if p not in excluded and p in counts]

    polynomial = None
    euler = None
    matches = None
    if len(included) >= 4:
        fit = _lagrange_cubic([(p, counts[p]) for p in included[:4]])
        if all(_evaluate_cubic(fit, p) == counts[p] for p in included):
            polynomial = fit
            euler = sum(fit, Fraction(0))
            matches = fit == (Fraction(0), Fraction(0), Fraction(1), Fraction(1))
            note = "cubic fit consistent across included primes"
        else:
            note = "counts are not fit by a single cubic; no polynomial reported"
    else:
        note = "fewer than four usable primes after exclusions; no fit attempted"
    return CountReport(
        theta=theta,
        primes=tuple(ps),
        counts=counts,
        excluded=tuple(excluded),
        polynomial=polynomial,
        euler_characteristic=euler,
        matches_classical=matches,
        note=note,
    )
