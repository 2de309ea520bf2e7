"""Finite possibility spaces, exact gambles, and the three dominance orders.

A gamble is a payoff vector with one exact rational entry per atom of a
finite possibility space. ``geq``/``gt``/``wgeq`` are the componentwise,
strict, and weak dominance orders; the ``in_cone_*`` predicates classify a
gamble against the zero gamble.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ratlp import RationalLike, rational, rational_str


class DimensionMismatch(ValueError):
    """Raised when gambles over different possibility spaces are combined."""


@dataclass(frozen=True)
class PossibilitySpace:
    """An ordered finite set of mutually exclusive outcome labels."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError("a possibility space needs at least one atom")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("atom labels must be distinct")
        if any(not isinstance(l, str) or not l for l in self.labels):
            raise ValueError("atom labels must be nonempty strings")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown atom {label!r}") from None


@dataclass(frozen=True)
class Gamble:
    """An exact payoff vector aligned with its space's label order."""

    space: PossibilitySpace
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(rational(v) for v in self.values))
        if len(self.values) != self.space.size:
            raise DimensionMismatch(
                f"gamble has {len(self.values)} entries for a "
                f"{self.space.size}-atom space"
            )

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.space.labels, self.values))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: "Gamble") -> "Gamble":
        _check_space(self, other)
        return Gamble(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Gamble") -> "Gamble":
        _check_space(self, other)
        return Gamble(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Gamble":
        return Gamble(self.space, tuple(-v for v in self.values))

    def serialized(self) -> list[str]:
        """JSON form: the entries as canonical rational strings."""
        return [rational_str(v) for v in self.values]


def gamble(space: PossibilitySpace, values: Iterable[RationalLike]) -> Gamble:
    return Gamble(space, tuple(values))


def zero(space: PossibilitySpace) -> Gamble:
    return Gamble(space, (Fraction(0),) * space.size)


def indicator(space: PossibilitySpace, atom: str) -> Gamble:
    """The gamble worth 1 on the given atom and 0 elsewhere."""
    i = space.index(atom)
    return Gamble(
        space,
        tuple(Fraction(1) if j == i else Fraction(0) for j in range(space.size)),
    )


def _check_space(f: Gamble, g: Gamble) -> None:
    if f.space != g.space:
        raise DimensionMismatch("gambles live on different possibility spaces")


def geq(f: Gamble, g: Gamble) -> bool:
    """f >= g componentwise."""
    _check_space(f, g)
    return all(a >= b for a, b in zip(f.values, g.values))


def gt(f: Gamble, g: Gamble) -> bool:
    """f strictly dominates g: f > g at every atom."""
    _check_space(f, g)
    return all(a > b for a, b in zip(f.values, g.values))


def wgeq(f: Gamble, g: Gamble) -> bool:
    """f weakly dominates g: f >= g everywhere with f != g."""
    _check_space(f, g)
    return geq(f, g) and f.values != g.values


def in_cone_geq0(f: Gamble) -> bool:
    return all(v >= 0 for v in f.values)


def in_cone_gt0(f: Gamble) -> bool:
    return all(v > 0 for v in f.values)


def in_cone_wd0(f: Gamble) -> bool:
    return in_cone_geq0(f) and any(v != 0 for v in f.values)


def add(f: Gamble, g: Gamble) -> Gamble:
    return f + g


def scale(factor: RationalLike, f: Gamble) -> Gamble:
    lam = rational(factor)
    if lam <= 0:
        raise ValueError("scale factor must be positive")
    return Gamble(f.space, tuple(lam * v for v in f.values))


def combination(
    coefficients: Sequence[Fraction], gambles: Sequence[Gamble], space: PossibilitySpace
) -> Gamble:
    """Sum of coefficient-weighted gambles (the empty combination is zero)."""
    if len(coefficients) != len(gambles):
        raise ValueError("coefficient and gamble counts differ")
    total = [Fraction(0)] * space.size
    for lam, g in zip(coefficients, gambles):
        if g.space != space:
            raise DimensionMismatch("gamble from a different space in combination")
        if lam:
            for i, v in enumerate(g.values):
                total[i] += lam * v
    return Gamble(space, tuple(total))
