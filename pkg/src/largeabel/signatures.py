"""Branch signatures and the Riemann-Hurwitz bookkeeping around them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import DomainError, StructuralError

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class Signature:
    """Quotient genus plus the ascending multiset of ramification indices."""

    quotient_genus: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.quotient_genus < 0:
            raise StructuralError("quotient genus must be non-negative")
        indices = tuple(sorted(int(v) for v in self.indices))
        if any(v < 2 for v in indices):
            raise StructuralError(f"ramification indices must be >= 2: {indices}")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def of(cls, *indices: int, quotient_genus: int = 0) -> Signature:
        return cls(quotient_genus, tuple(indices))

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Parse ``2,5,10`` or ``{2,5,10}``; a ``h;`` prefix sets the quotient genus."""
        text = text.strip().strip("{}()")
        h = 0
        if ";" in text:
            head, text = text.split(";", 1)
            h = int(head)
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            return cls(h, tuple(int(p) for p in parts))
        except ValueError:
            raise StructuralError(f"cannot parse signature {text!r}") from None

    @property
    def s(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        body = ",".join(map(str, self.indices))
        return "{" + body + "}" if self.quotient_genus == 0 else f"({self.quotient_genus}; {body})"


def reduced_euler(sig: Signature) -> Fraction:
    """mu = 2h - 2 + sum(1 - 1/v); Riemann-Hurwitz reads 2g - 2 = |G| * mu."""
    return 2 * sig.quotient_genus - 2 + sum((1 - Fraction(1, v) for v in sig.indices), Fraction(0))


def genus_from_order(sig: Signature, order: int) -> int | None:
    """Genus of a cover of the given degree, or None unless it is an integer >= 2."""
    if order < 1:
        raise DomainError("group order must be >= 1")
    twice = order * reduced_euler(sig) + 2
    if twice.denominator != 1 or twice.numerator % 2:
        return None
    g = twice.numerator // 2
    return g if g >= 2 else None


def is_large(order: int, genus: int) -> bool:
    if genus < 2:
        raise DomainError("largeness is only defined for genus >= 2")
    return order > 4 * (genus - 1)


@dataclass(frozen=True, order=True)
class Affine:
    """The map t -> slope * t + offset."""

    slope: int
    offset: int = 0

    def __call__(self, t: int) -> int:
        return self.slope * t + self.offset

    def __str__(self) -> str:
        if self.slope == 0:
            return str(self.offset)
        head = "t" if self.slope == 1 else f"{self.slope}t"
        if self.offset == 0:
            return head
        return f"{head}{'+' if self.offset > 0 else '-'}{abs(self.offset)}"


@dataclass(frozen=True, order=True)
class SignatureFamily:
    """Signatures with some fixed indices and others affine in one parameter t.

    ``lower <= t`` (and ``t <= upper`` when an upper bound is given).
    """

    quotient_genus: int
    fixed_indices: tuple[int, ...]
    parametric: tuple[Affine, ...]
    lower: int
    upper: int | None = None

    def instantiate(self, t: int) -> Signature:
        if t < self.lower or (self.upper is not None and t > self.upper):
            raise DomainError(f"parameter {t} outside the range of {self}")
        return Signature(self.quotient_genus, self.fixed_indices + tuple(f(t) for f in self.parametric))

    def parameters(self, max_param: int) -> range:
        top = max_param if self.upper is None else min(max_param, self.upper)
        return range(self.lower, top + 1)

    def signatures(self, max_param: int) -> Iterator[Signature]:
        for t in self.parameters(max_param):
            yield self.instantiate(t)

    def contains(self, sig: Signature) -> bool:
        if sig.quotient_genus != self.quotient_genus or sig.s != len(self.fixed_indices) + len(self.parametric):
            return False
        rest = list(sig.indices)
        for v in self.fixed_indices:
            if v not in rest:
                return False
            rest.remove(v)
        # the first parametric slot with nonzero slope pins t
        for f in self.parametric:
            for v in rest:
                if f.slope and (v - f.offset) % f.slope == 0:
                    t = (v - f.offset) // f.slope
                    if t >= self.lower and (self.upper is None or t <= self.upper):
                        if sorted(f2(t) for f2 in self.parametric) == sorted(rest):
                            return True
            break
        return False

    def __str__(self) -> str:
        parts = [str(v) for v in self.fixed_indices] + [str(f).replace("t", "n") for f in self.parametric]
        rng = f"n >= {self.lower}" if self.upper is None else f"{self.lower} <= n <= {self.upper}"
        return "{" + ",".join(parts) + "}, " + rng
