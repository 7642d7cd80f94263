"""Exact arithmetic primitives.

Everything downstream (tensor invariants, curve transforms, point counts)
is decided by exact equality, so this module provides the scalar and
matrix types used throughout:

* ``GaussianRational``: elements of Q(i) as pairs of ``fractions.Fraction``.
* ``PrimeFieldElement``: elements of F_p for a prime p.
* ``ExactMatrix``: dense matrices over Q(i) with exact rank/determinant.
* ``BinaryForm``: homogeneous forms in two variables over Q(i), with GCD.

Plain ``int`` and ``Fraction`` values coerce into ``GaussianRational``
wherever a scalar is expected, which keeps call sites readable.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from .errors import SchemaError

ScalarLike = Union[int, Fraction, "GaussianRational"]


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (small moduli only)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    top = isqrt(n)
    while f <= top:
        if n % f == 0:
            return False
        f += 2
    return True


class GaussianRational:
    """An element a + b*i of Q(i) with a, b stored as reduced Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def i() -> "GaussianRational":
        return GaussianRational(0, 1)

    @staticmethod
    def coerce(value: ScalarLike) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    # -- arithmetic ----------------------------------------------------

    def _other(self, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """The field norm a^2 + b^2, a non-negative rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        out = GaussianRational(1)
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    def as_fraction(self) -> Fraction:
        if self.im != 0:
            raise ValueError(f"{self!r} has a nonzero imaginary part")
        return self.re

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"


GAUSSIAN_I = GaussianRational.i()


# -- JSON scalar encoding ---------------------------------------------

def fraction_str(value: Union[int, Fraction]) -> str:
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def scalar_to_json(value: ScalarLike):
    """Encode a scalar for JSON: rationals as "p/q" strings, Q(i) as re/im pairs."""
    g = GaussianRational.coerce(value)
    if g.im == 0:
        return fraction_str(g.re)
    return {"re": fraction_str(g.re), "im": fraction_str(g.im)}


def _fraction_from_json(doc) -> Fraction:
    if isinstance(doc, bool) or not isinstance(doc, str):
        raise SchemaError(f"expected a rational encoded as a string, got {doc!r}")
    try:
        return Fraction(doc)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {doc!r}") from exc


def scalar_from_json(doc) -> GaussianRational:
    """Decode a scalar from JSON, accepting "p/q" or {"re": ..., "im": ...}."""
    if isinstance(doc, dict):
        if set(doc) != {"re", "im"}:
            raise SchemaError(f"Gaussian scalar must have exactly re/im keys, got {sorted(doc)}")
        return GaussianRational(_fraction_from_json(doc["re"]), _fraction_from_json(doc["im"]))
    return GaussianRational(_fraction_from_json(doc))


def rational_from_json(doc) -> Fraction:
    """Decode a scalar that must be a plain rational."""
    value = scalar_from_json(doc)
    if value.im != 0:
        raise SchemaError(f"expected a rational, got the imaginary value {doc!r}")
    return value.re


# -- prime fields -----------------------------------------------------

class PrimeFieldElement:
    """An element of F_p; the modulus must be prime so inversion is total."""

    __slots__ = ("p", "value")

    def __init__(self, value: int, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.value = value % p

    def _other(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        # Fermat: v^(p-2) is the inverse for prime p.
        return PrimeFieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return PrimeFieldElement(pow(self.value, exponent, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


# -- matrices over Q(i) -----------------------------------------------

class ExactMatrix:
    """A dense matrix over Q(i) supporting exact rank, determinant and powers."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[ScalarLike]]):
        coerced = tuple(
            tuple(GaussianRational.coerce(entry) for entry in row) for row in rows
        )
        if not coerced or not coerced[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(coerced[0])
        if any(len(row) != width for row in coerced):
            raise ValueError("ragged rows")
        self.rows = coerced

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if r == c else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, key) -> GaussianRational:
        i, j = key
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(repr(e) for e in row) for row in self.rows)
        return f"ExactMatrix[{body}]"

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    def trace(self) -> GaussianRational:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        total = GaussianRational(0)
        for k in range(self.nrows):
            total = total + self.rows[k][k]
        return total

    def scale(self, factor: ScalarLike) -> "ExactMatrix":
        c = GaussianRational.coerce(factor)
        return ExactMatrix([[c * e for e in row] for row in self.rows])

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix addition")
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        cols = other.transpose().rows
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = GaussianRational(0)
                for a, b in zip(row, col):
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return ExactMatrix(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "ExactMatrix":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("matrix powers need a non-negative integer exponent")
        if self.nrows != self.ncols:
            raise ValueError("powers of a non-square matrix")
        out = ExactMatrix.identity(self.nrows)
        base = self
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    def _eliminated(self):
        """Row-reduce a copy, returning (pivot count, sign, diagonal product)."""
        work = [list(row) for row in self.rows]
        nrows, ncols = len(work), len(work[0])
        sign = 1
        det_product = GaussianRational(1)
        rank = 0
        pivot_row = 0
        for col in range(ncols):
            if pivot_row >= nrows:
                break
            found = None
            for r in range(pivot_row, nrows):
                if not work[r][col].is_zero():
                    found = r
                    break
            if found is None:
                det_product = GaussianRational(0)
                continue
            if found != pivot_row:
                work[pivot_row], work[found] = work[found], work[pivot_row]
                sign = -sign
            pivot = work[pivot_row][col]
            det_product = det_product * pivot
            inv = pivot.inverse()
            for r in range(pivot_row + 1, nrows):
                factor = work[r][col]
                if factor.is_zero():
                    continue
                scale = factor * inv
                row_p = work[pivot_row]
                row_r = work[r]
                for c in range(col, ncols):
                    row_r[c] = row_r[c] - scale * row_p[c]
            rank += 1
            pivot_row += 1
        return rank, sign, det_product

    def rank(self) -> int:
        rank, _, _ = self._eliminated()
        return rank

    def det(self) -> GaussianRational:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        rank, sign, product = self._eliminated()
        if rank < self.nrows:
            return GaussianRational(0)
        return product if sign > 0 else -product

    def is_nilpotent(self) -> bool:
        if self.nrows != self.ncols:
            raise ValueError("nilpotency of a non-square matrix")
        return (self ** self.nrows).is_zero()

    def to_json(self):
        return [[scalar_to_json(e) for e in row] for row in self.rows]


# -- binary forms -----------------------------------------------------

class BinaryForm:
    """A homogeneous form in two variables u1, u2 over Q(i).

    ``coeffs[k]`` multiplies ``u1^(d-k) * u2^k`` where d is the degree,
    so the list reads off powers of u1 in descending order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[ScalarLike]):
        if not coeffs:
            raise ValueError("a binary form needs at least one coefficient")
        self.coeffs = tuple(GaussianRational.coerce(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_constant(self) -> bool:
        """True for forms with no projective zero: degree 0, or zero."""
        return self.is_zero() or self.degree == 0

    def evaluate(self, u1: ScalarLike, u2: ScalarLike) -> GaussianRational:
        a = GaussianRational.coerce(u1)
        b = GaussianRational.coerce(u2)
        d = self.degree
        total = GaussianRational(0)
        for k, c in enumerate(self.coeffs):
            total = total + c * a ** (d - k) * b ** k
        return total

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.coerce(other)
            return BinaryForm([c * x for x in self.coeffs])
        if not isinstance(other, BinaryForm):
            return NotImplemented
        out = [GaussianRational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BinaryForm{list(self.coeffs)!r}"

    def normalized(self) -> "BinaryForm":
        """Rescale so the first nonzero coefficient is 1 (zero stays zero)."""
        for c in self.coeffs:
            if not c.is_zero():
                inv = c.inverse()
                return BinaryForm([inv * x for x in self.coeffs])
        return self

    def _split(self):
        """Write the form as u2^beta * g with g(u1, 1) a polynomial of full degree.

        Returns (beta, descending coefficient list of g); the zero form
        returns (None, []).
        """
        beta = None
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                beta = k
                break
        if beta is None:
            return None, []
        return beta, list(self.coeffs[beta:])

    def divides(self, other: "BinaryForm") -> bool:
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        beta_s, poly_s = self._split()
        beta_o, poly_o = other._split()
        if beta_s > beta_o:
            return False
        _, rem = _poly_divmod(poly_o, poly_s)
        return not rem


def _poly_trim(coeffs):
    """Drop leading zeros from a descending coefficient list."""
    k = 0
    while k < len(coeffs) and coeffs[k].is_zero():
        k += 1
    return coeffs[k:]


def _poly_divmod(num, den):
    """Long division of descending coefficient lists over Q(i)."""
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _poly_trim(list(num))
    if len(rem) < len(den):
        return [], rem
    quot = [GaussianRational(0)] * (len(rem) - len(den) + 1)
    lead_inv = den[0].inverse()
    while len(rem) >= len(den):
        shift = len(rem) - len(den)
        factor = rem[0] * lead_inv
        quot[len(quot) - 1 - shift] = factor
        for k in range(len(den)):
            rem[k] = rem[k] - factor * den[k]
        rem = _poly_trim(rem[1:]) if rem[0].is_zero() else _poly_trim(rem)
    return quot, rem


def _poly_gcd(a, b):
    """Monic GCD of two descending coefficient lists over Q(i)."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    inv = a[0].inverse()
    return [inv * c for c in a]


def binary_form_gcd(forms: Iterable[BinaryForm]) -> BinaryForm:
    """Greatest common divisor of binary forms, normalized to leading coefficient 1.

    Powers of u2 shared by all inputs are part of the answer: each form is
    split as u2^beta * g, the dehomogenized g parts are run through the
    Euclidean algorithm, and the minimum beta is restored at the end.
    If every input is zero the zero form is returned.
    """
    min_beta = None
    poly_gcd: list = []
    for form in forms:
        beta, poly = form._split()
        if beta is None:
            continue
        min_beta = beta if min_beta is None else min(min_beta, beta)
        poly_gcd = _poly_gcd(poly_gcd, poly) if poly_gcd else _poly_gcd(poly, [])
    if min_beta is None:
        return BinaryForm([0])
    coeffs = [GaussianRational(0)] * min_beta + (poly_gcd or [GaussianRational(1)])
    return BinaryForm(coeffs).normalized()
