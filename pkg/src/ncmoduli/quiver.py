"""Quivers, path algebra elements, and potentials.

Paths are stored leftmost-first: the tuple ``(x_n, ..., x_1)`` is the
composite that applies ``x_1`` first, so two paths compose exactly when
the source of the left factor equals the target of the right factor.
Potentials are finite rational combinations of cyclic paths; each cycle
is stored under its lexicographically least rotation so that equality of
potentials is dictionary equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DomainError
from .exact import GaussianRational, ScalarLike

#: Longest path length accepted by :func:`graded_dimension`.
MAX_GRADED_LENGTH = 8


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with uniquely labelled arrows."""

    name: str
    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...]  # (label, source, target)

    def __post_init__(self):
        seen = set()
        for label, src, tgt in self.arrows:
            if label in seen:
                raise ValueError(f"duplicate arrow label {label!r}")
            seen.add(label)
            if src not in self.vertices or tgt not in self.vertices:
                raise ValueError(f"arrow {label!r} uses an unknown vertex")
        object.__setattr__(self, "_by_label", {a[0]: a for a in self.arrows})

    def has_vertex(self, v: str) -> bool:
        return v in self.vertices

    def arrow_labels(self) -> Tuple[str, ...]:
        return tuple(a[0] for a in self.arrows)

    def source(self, label: str) -> str:
        return self._arrow(label)[1]

    def target(self, label: str) -> str:
        return self._arrow(label)[2]

    def _arrow(self, label: str):
        try:
            return self._by_label[label]
        except KeyError:
            raise DomainError(f"unknown arrow {label!r} in quiver {self.name}") from None

    def arrows_from(self, vertex: str) -> Tuple[str, ...]:
        return tuple(a[0] for a in self.arrows if a[1] == vertex)

    def unit(self, vertex: str) -> "Path":
        if vertex not in self.vertices:
            raise DomainError(f"unknown vertex {vertex!r} in quiver {self.name}")
        return Path(arrows=(), source=vertex, target=vertex)

    def path(self, labels: Sequence[str]) -> "Path":
        """Build a path from leftmost-first labels, checking composability."""
        labels = tuple(labels)
        if not labels:
            raise ValueError("use Quiver.unit for length-zero paths")
        for left, right in zip(labels, labels[1:]):
            if self.source(left) != self.target(right):
                raise DomainError(
                    f"arrows {left!r} and {right!r} do not compose "
                    f"({self.source(left)} != {self.target(right)})"
                )
        return Path(
            arrows=labels,
            source=self.source(labels[-1]),
            target=self.target(labels[0]),
        )


def conifold_quiver() -> Quiver:
    """Two vertices, arrows a1, a2 one way and b1, b2 back."""
    return Quiver(
        name="conifold",
        vertices=("v0", "v1"),
        arrows=(
            ("a1", "v0", "v1"),
            ("a2", "v0", "v1"),
            ("b1", "v1", "v0"),
            ("b2", "v1", "v0"),
        ),
    )


def double_cover_quiver() -> Quiver:
    """The degree-2 unfolding of the conifold quiver.

    Vertices carry a sheet index; a-arrows stay on their sheet while
    b-arrows switch sheets, and an arrow is primed exactly when its
    source lies on sheet 1.
    """
    return Quiver(
        name="conifold-double-cover",
        vertices=("v00", "v10", "v01", "v11"),
        arrows=(
            ("a1", "v00", "v10"),
            ("a2", "v00", "v10"),
            ("b1", "v10", "v01"),
            ("b2", "v10", "v01"),
            ("a1'", "v01", "v11"),
            ("a2'", "v01", "v11"),
            ("b1'", "v11", "v00"),
            ("b2'", "v11", "v00"),
        ),
    )


def framed_conifold_quiver() -> Quiver:
    """Conifold quiver with a framing vertex and one arrow into v0."""
    return Quiver(
        name="framed-conifold",
        vertices=("v0", "v1", "vinf"),
        arrows=(
            ("a1", "v0", "v1"),
            ("a2", "v0", "v1"),
            ("b1", "v1", "v0"),
            ("b2", "v1", "v0"),
            ("i", "vinf", "v0"),
        ),
    )


@dataclass(frozen=True)
class Path:
    """A composable word of arrows plus its endpoints.

    ``arrows`` is leftmost-first; a length-zero path is the lazy unit at
    its vertex.
    """

    arrows: Tuple[str, ...]
    source: str
    target: str

    @property
    def length(self) -> int:
        return len(self.arrows)

    def compose(self, other: "Path") -> Optional["Path"]:
        """self * other (other applied first); None when endpoints mismatch."""
        if self.source != other.target:
            return None
        return Path(
            arrows=self.arrows + other.arrows,
            source=other.source,
            target=self.target,
        )

    def sort_key(self):
        return (self.source, self.length, self.arrows)


class AlgebraElement:
    """A finite Q(i)-combination of paths in a fixed quiver."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Path, ScalarLike] = ()):
        self.quiver = quiver
        clean: Dict[Path, GaussianRational] = {}
        for path, coeff in dict(terms).items():
            c = GaussianRational.coerce(coeff)
            if not c.is_zero():
                clean[path] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __add__(self, other):
        if not isinstance(other, AlgebraElement) or other.quiver != self.quiver:
            return NotImplemented
        merged = dict(self.terms)
        for path, coeff in other.terms.items():
            merged[path] = merged.get(path, GaussianRational(0)) + coeff
        return AlgebraElement(self.quiver, merged)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement) or other.quiver != self.quiver:
            return NotImplemented
        return self + other.scale(-1)

    def scale(self, factor: ScalarLike) -> "AlgebraElement":
        c = GaussianRational.coerce(factor)
        return AlgebraElement(
            self.quiver, {p: c * v for p, v in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, AlgebraElement) or other.quiver != self.quiver:
            return NotImplemented
        out: Dict[Path, GaussianRational] = {}
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                pq = p.compose(q)
                if pq is None:
                    continue
                out[pq] = out.get(pq, GaussianRational(0)) + cp * cq
        return AlgebraElement(self.quiver, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "AlgebraElement(0)"
        bits = [f"{coeff!r}*{'.'.join(p.arrows) or p.source}" for p, coeff in self.items()]
        return "AlgebraElement(" + " + ".join(bits) + ")"


Word = Tuple[str, ...]


def _canonical_rotation(word: Word) -> Word:
    return min(word[k:] + word[:k] for k in range(len(word)))


def _check_cyclic_word(quiver: Quiver, word: Word) -> None:
    if not word:
        raise DomainError("cyclic words must be nonempty")
    for left, right in zip(word, word[1:]):
        if quiver.source(left) != quiver.target(right):
            raise DomainError(f"cyclic word {word} is not composable at {left!r}|{right!r}")
    if quiver.source(word[-1]) != quiver.target(word[0]):
        raise DomainError(f"word {word} does not close up into a cycle")


class CyclicPotential:
    """A rational combination of cyclic words, one canonical rotation per cycle.

    Coefficients passed for different rotations of the same cycle
    accumulate onto the shared canonical representative.
    """

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Word, Union[int, Fraction]] = ()):
        self.quiver = quiver
        clean: Dict[Word, Fraction] = {}
        for word, coeff in dict(terms).items():
            word = tuple(word)
            _check_cyclic_word(quiver, word)
            c = Fraction(coeff)
            if c == 0:
                continue
            key = _canonical_rotation(word)
            merged = clean.get(key, Fraction(0)) + c
            if merged == 0:
                clean.pop(key, None)
            else:
                clean[key] = merged
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def words(self) -> Tuple[Word, ...]:
        return tuple(sorted(self.terms))

    def coefficient(self, word: Word) -> Fraction:
        return self.terms.get(_canonical_rotation(tuple(word)), Fraction(0))

    def is_homogeneous(self) -> bool:
        lengths = {len(w) for w in self.terms}
        return len(lengths) <= 1

    def degree(self) -> Optional[int]:
        lengths = {len(w) for w in self.terms}
        if len(lengths) != 1:
            return None
        return lengths.pop()

    def expanded(self) -> Dict[Word, Fraction]:
        """All rotations of every stored word, coefficients carried along.

        A cycle with a nontrivial rotational symmetry repeats some
        rotations; their coefficients add, which is what makes cyclic
        differentiation come out right.
        """
        out: Dict[Word, Fraction] = {}
        for word, coeff in self.terms.items():
            for k in range(len(word)):
                rot = word[k:] + word[:k]
                out[rot] = out.get(rot, Fraction(0)) + coeff
        return {w: c for w, c in out.items() if c != 0}

    def scale(self, factor: Union[int, Fraction]) -> "CyclicPotential":
        f = Fraction(factor)
        return CyclicPotential(self.quiver, {w: f * c for w, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, CyclicPotential) or other.quiver != self.quiver:
            return NotImplemented
        merged = dict(self.terms)
        for word, coeff in other.terms.items():
            merged[word] = merged.get(word, Fraction(0)) + coeff
        return CyclicPotential(self.quiver, merged)

    def __eq__(self, other):
        if not isinstance(other, CyclicPotential):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __repr__(self):
        bits = [f"{c}*{'.'.join(w)}" for w, c in sorted(self.terms.items())]
        return "CyclicPotential(" + (" + ".join(bits) or "0") + ")"


def conifold_potential() -> CyclicPotential:
    """The superpotential a1 b1 a2 b2 - a1 b2 a2 b1 on the conifold quiver."""
    q = conifold_quiver()
    return CyclicPotential(
        q,
        {
            ("a1", "b1", "a2", "b2"): Fraction(1),
            ("a1", "b2", "a2", "b1"): Fraction(-1),
        },
    )


def partial_derivative(potential: CyclicPotential, arrow: str) -> AlgebraElement:
    """Cyclic derivative: rotate each cycle to start with ``arrow``, strip it.

    Every rotation of every stored word that begins with the arrow
    contributes its trailing path, so cycles with repeated arrows pick up
    the expected multiplicities.
    """
    quiver = potential.quiver
    quiver._arrow(arrow)  # validates the label
    out: Dict[Path, GaussianRational] = {}
    for word, coeff in potential.expanded().items():
        if word[0] != arrow:
            continue
        rest = word[1:]
        path = quiver.path(rest) if rest else quiver.unit(quiver.source(arrow))
        out[path] = out.get(path, GaussianRational(0)) + GaussianRational(coeff)
    return AlgebraElement(quiver, out)


def jacobi_generators(potential: CyclicPotential) -> Tuple[AlgebraElement, ...]:
    """Nonzero cyclic derivatives of the potential, in arrow label order."""
    gens = []
    for label in sorted(potential.quiver.arrow_labels()):
        d = partial_derivative(potential, label)
        if not d.is_zero():
            gens.append(d)
    return tuple(gens)


def enumerate_paths(quiver: Quiver, source: str, target: str, length: int):
    """All leftmost-first arrow words of the given length from source to target."""
    if length == 0:
        if source == target:
            yield ()
        return
    for label in quiver.arrows_from(source):
        for rest in enumerate_paths(quiver, quiver.target(label), target, length - 1):
            yield rest + (label,)


def graded_dimension(
    potential: CyclicPotential,
    source: str,
    target: str,
    max_length: int,
    cap: int = MAX_GRADED_LENGTH,
) -> list:
    """Dimensions of the length-graded pieces e_target . J(Phi) . e_source.

    For each length up to ``max_length`` this counts paths and subtracts
    the rank of the span of all products p * r * q where r runs over the
    cyclic derivatives of the potential and p, q over complementary
    paths.  The potential must be homogeneous so that length grading
    descends to the quotient.
    """
    quiver = potential.quiver
    if not quiver.has_vertex(source) or not quiver.has_vertex(target):
        raise DomainError("unknown vertex for graded dimension")
    if max_length < 0:
        raise DomainError("max_length must be non-negative")
    if max_length > cap:
        raise DomainError(
            f"max_length {max_length} exceeds the configured bound {cap}; "
            "raise the cap explicitly if the blow-up is intended"
        )
    if not potential.is_homogeneous():
        raise DomainError("graded dimensions need a homogeneous potential")

    gens = []
    for g in jacobi_generators(potential):
        paths = list(g.terms.items())
        g_source = paths[0][0].source
        g_target = paths[0][0].target
        g_degree = paths[0][0].length
        if any(p.source != g_source or p.target != g_target for p, _ in g.terms.items()):
            raise DomainError("derivative with mixed endpoints; potential is malformed")
        gens.append((g_source, g_target, g_degree, paths))

    dims = []
    for length in range(max_length + 1):
        ambient = list(enumerate_paths(quiver, source, target, length))
        index = {word: k for k, word in enumerate(ambient)}
        rows = []
        for g_source, g_target, g_degree, g_terms in gens:
            free = length - g_degree
            if free < 0:
                continue
            for dp in range(free + 1):
                dq = free - dp
                for p_word in enumerate_paths(quiver, g_target, target, dp):
                    for q_word in enumerate_paths(quiver, source, g_source, dq):
                        row: Dict[int, GaussianRational] = {}
                        for r_path, coeff in g_terms:
                            word = p_word + r_path.arrows + q_word
                            col = index[word]
                            acc = row.get(col, GaussianRational(0)) + coeff
                            if acc.is_zero():
                                row.pop(col, None)
                            else:
                                row[col] = acc
                        if row:
                            rows.append(row)
        dims.append(len(ambient) - _sparse_rank(rows))
    return dims


def _sparse_rank(rows) -> int:
    """Rank of sparse rows (dicts col -> scalar) by incremental elimination."""
    pivots: Dict[int, Dict[int, GaussianRational]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if lead not in pivots:
                inv = row[lead].inverse()
                pivots[lead] = {c: inv * v for c, v in row.items()}
                break
            factor = row[lead]
            for c, v in pivots[lead].items():
                acc = row.get(c, GaussianRational(0)) - factor * v
                if acc.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = acc
    return len(pivots)


def potential_double_cover(potential: CyclicPotential) -> CyclicPotential:
    """Lift a conifold potential through the two-sheeted covering quiver.

    Each cycle alternates a and b arrows; a-arrows keep the sheet and
    b-arrows flip it, so every cycle of even b-count has exactly two
    lifts, one per starting sheet.  Both are accumulated (they can land
    on the same cyclic word when the cycle has a rotational symmetry).
    """
    if potential.quiver != conifold_quiver():
        raise DomainError("the double cover lift is defined for conifold potentials")
    cover = double_cover_quiver()
    lifted: Dict[Word, Fraction] = {}
    for word, coeff in potential.terms.items():
        for start_sheet in (0, 1):
            sheet = start_sheet
            out = []
            for label in reversed(word):  # walk in application order
                lifted_label = label + "'" if sheet == 1 else label
                out.append(lifted_label)
                if label.startswith("b"):
                    sheet = 1 - sheet
            if sheet != start_sheet:
                raise DomainError(f"cycle {word} does not close on the double cover")
            lifted_word = tuple(reversed(out))
            lifted[lifted_word] = lifted.get(lifted_word, Fraction(0)) + coeff
    return CyclicPotential(cover, lifted)
