"""Divisor arithmetic: floors, unloading, antinef closures, mixed ideals.

The central object is the antinef closure: the least antinef divisor with
integer coefficients dominating a given one.  It is computed by Enriques'
unloading, one full sweep at a time: collect every exceptional component with
negative excess, raise each by ceil(rho_i / E_i^2), repeat until the excess
vector is nonnegative.  On negative definite trees this converges and the
fixed point is independent of sweep order.

Mixed multiplier ideals are then a two-liner: the ideal at a point lam of the
nonnegative orthant is encoded by the antinef closure of
floor(sum_i lam_i F_i - K), and the ideal just before lam (the "left limit")
by the same expression with floors nudged down at integer values.
"""

from __future__ import annotations

import enum
import math
import os
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    GraphMismatch,
    NonIntegralDivisor,
    NonTermination,
    PreconditionViolated,
    ZeroPoint,
)
from .graph import DualGraph, IdealDivisorSet, _as_fraction

__all__ = [
    "Divisor",
    "Containment",
    "NonclosedComparison",
    "is_antinef",
    "unload_once",
    "antinef_closure",
    "ideal_contains",
    "compare_nonclosed",
    "mixed_divisor_floor",
    "mmi_at",
    "mmi_left_limit",
    "parse_point",
]

DEFAULT_MAX_UNLOAD_ITERS = 10**6


class Divisor:
    """A divisor with rational coefficients on a :class:`DualGraph`.

    Coefficients run over the global component index (exceptional, then
    affine).  Instances are immutable and hashable.
    """

    __slots__ = ("graph", "coeffs")

    def __init__(self, graph: DualGraph, coeffs: Sequence):
        if len(coeffs) != graph.n_total:
            raise DimensionMismatch(
                f"expected {graph.n_total} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, *args):
        raise AttributeError("Divisor is immutable")

    # -- basics ---------------------------------------------------------

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.graph == other.graph
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.graph, self.coeffs))

    def __repr__(self):
        return "Divisor(" + ", ".join(str(c) for c in self.coeffs) + ")"

    def _check_same_graph(self, other: "Divisor"):
        if self.graph != other.graph:
            raise GraphMismatch("divisors live on different graphs")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check_same_graph(other)
        return Divisor(self.graph, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check_same_graph(other)
        return Divisor(self.graph, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scaled(self, q) -> "Divisor":
        q = Fraction(q)
        return Divisor(self.graph, [q * c for c in self.coeffs])

    def floor(self) -> "Divisor":
        return Divisor(self.graph, [Fraction(math.floor(c)) for c in self.coeffs])

    def ceil(self) -> "Divisor":
        return Divisor(self.graph, [Fraction(math.ceil(c)) for c in self.coeffs])

    def le(self, other: "Divisor") -> bool:
        """Componentwise <= (the divisor partial order)."""
        self._check_same_graph(other)
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def exceptional_part(self) -> tuple[Fraction, ...]:
        return self.coeffs[: self.graph.n_exc]

    def as_ints(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise NonIntegralDivisor("divisor has fractional coefficients")
        return tuple(int(c) for c in self.coeffs)


def is_antinef(divisor: Divisor) -> bool:
    """True when D . E_i <= 0 for every exceptional component (affine
    coefficients contribute to the products but carry no constraint)."""
    g = divisor.graph
    return all(g.dot_exceptional(divisor.coeffs, i) <= 0 for i in range(g.n_exc))


def unload_once(divisor: Divisor) -> Divisor:
    """One unloading sweep.

    Rounds coefficients up to integers, then raises every exceptional
    component with negative excess by ceil(rho_i / E_i^2) >= 1, all in one
    pass.  A divisor that is already antinef (after the rounding) comes back
    unchanged, which is the loop's fixed-point test.
    """
    g = divisor.graph
    coeffs = [Fraction(math.ceil(c)) for c in divisor.coeffs]
    updates: list[tuple[int, Fraction]] = []
    for i in range(g.n_exc):
        rho = -g.dot_exceptional(coeffs, i)
        if rho < 0:
            step = Fraction(math.ceil(rho / g.self_int[i]))
            if step < 1:
                raise PreconditionViolated("unloading step collapsed; corrupt graph data")
            updates.append((i, step))
    if not updates:
        return Divisor(g, coeffs)
    for i, step in updates:
        coeffs[i] += step
    return Divisor(g, coeffs)


def _max_unload_iters() -> int:
    raw = os.environ.get("MMI_MAX_UNLOAD_ITERS")
    if raw is None:
        return DEFAULT_MAX_UNLOAD_ITERS
    try:
        value = int(raw)
    except ValueError as exc:
        raise PreconditionViolated(f"MMI_MAX_UNLOAD_ITERS={raw!r} is not an integer") from exc
    if value < 1:
        raise PreconditionViolated("MMI_MAX_UNLOAD_ITERS must be positive")
    return value


def antinef_closure(divisor: Divisor, max_iters: int | None = None) -> Divisor:
    """Least integral antinef divisor dominating `divisor`.

    Iterates :func:`unload_once` to its fixed point.  The iteration count is
    capped (argument, else the MMI_MAX_UNLOAD_ITERS environment variable,
    else 10**6); hitting the cap raises NonTermination with the trace length,
    since on valid negative definite input the loop always terminates.
    """
    cap = max_iters if max_iters is not None else _max_unload_iters()
    current = divisor.ceil()
    for _ in range(cap):
        bumped = unload_once(current)
        if bumped == current:
            return current
        current = bumped
    raise NonTermination(f"unloading did not stabilize within {cap} sweeps")


class Containment(enum.Enum):
    EQUAL = "Equal"
    STRICTLY_CONTAINS = "StrictlyContains"
    STRICTLY_CONTAINED = "StrictlyContained"
    INCOMPARABLE = "Incomparable"


def ideal_contains(d1: Divisor, d2: Divisor) -> Containment:
    """Compare the complete ideals encoded by two antinef divisors.

    Containment of ideals reverses the divisor order: the ideal of d1
    contains the ideal of d2 exactly when d1 <= d2 componentwise.
    """
    d1._check_same_graph(d2)
    for d in (d1, d2):
        if not d.is_integral():
            raise NonIntegralDivisor("ideal comparison needs integral divisors")
        if not is_antinef(d):
            raise PreconditionViolated("ideal comparison needs antinef divisors")
    if d1 == d2:
        return Containment.EQUAL
    if d1.le(d2):
        return Containment.STRICTLY_CONTAINS
    if d2.le(d1):
        return Containment.STRICTLY_CONTAINED
    return Containment.INCOMPARABLE


class NonclosedComparison:
    """Result of :func:`compare_nonclosed`: equality flag plus, when the
    ideals differ, one component id witnessing the strict drop."""

    __slots__ = ("equal", "witness")

    def __init__(self, equal: bool, witness: str | None):
        self.equal = equal
        self.witness = witness

    def __bool__(self):
        return self.equal

    def __repr__(self):
        if self.equal:
            return "NonclosedComparison(equal)"
        return f"NonclosedComparison(differs at {self.witness})"


def compare_nonclosed(d1: Divisor, d2: Divisor) -> NonclosedComparison:
    """Decide whether two nested non-closed divisors cut the same ideal.

    Precondition: d1 <= d2.  The ideals agree exactly when the antinef
    closure of d1 already dominates d2; otherwise some coefficient of the
    closure stays strictly below d2 and that component is reported.
    """
    d1._check_same_graph(d2)
    if not d1.le(d2):
        raise PreconditionViolated("compare_nonclosed needs d1 <= d2")
    closed = antinef_closure(d1)
    for i, (a, b) in enumerate(zip(closed.coeffs, d2.coeffs)):
        if a < b:
            return NonclosedComparison(False, d1.graph.ids[i])
    return NonclosedComparison(True, None)


def parse_point(lam, r: int) -> tuple[Fraction, ...]:
    """Coerce a point of the parameter orthant to exact rationals.

    Accepts a sequence of ints / Fractions / 'p/q' strings; floats are
    rejected.  Coordinates must be nonnegative and there must be exactly one
    per ideal.
    """
    coords = tuple(_as_fraction(c, "lambda") for c in lam)
    if len(coords) != r:
        raise DimensionMismatch(f"point has {len(coords)} coordinates, expected {r}")
    if any(c < 0 for c in coords):
        raise PreconditionViolated("lambda must lie in the nonnegative orthant")
    return coords


def _value_rows(ideals: IdealDivisorSet, canonical: Divisor, lam: Sequence[Fraction]):
    """Per-component pairs (form, q): form = sum_i lam_i e_{i,j} and
    q = form - k_j."""
    rows = []
    for j in range(ideals.graph.n_total):
        form = ideals.value(lam, j)
        rows.append((form, form - canonical.coeffs[j]))
    return rows


def mixed_divisor_floor(ideals: IdealDivisorSet, canonical: Divisor, lam) -> Divisor:
    """floor(sum_i lam_i F_i - K), the non-closed divisor whose closure
    encodes the mixed multiplier ideal at lam."""
    coords = parse_point(lam, ideals.r)
    rows = _value_rows(ideals, canonical, coords)
    return Divisor(ideals.graph, [Fraction(math.floor(q)) for _, q in rows])


def mmi_at(ideals: IdealDivisorSet, canonical: Divisor, lam) -> Divisor:
    """Antinef divisor encoding the mixed multiplier ideal at lam."""
    return antinef_closure(mixed_divisor_floor(ideals, canonical, lam))


def left_floor(form: Fraction, q: Fraction) -> Fraction:
    """floor of q "just before" lam along the ray: q - 1 at integers whose
    weighted multiplicity form is positive, plain floor otherwise.

    This is the exact epsilon -> 0+ limit of floor((1-eps) * form - k):
    coordinates with form = 0 never move, so they keep their plain floor.
    """
    if q.denominator == 1 and form > 0:
        return q - 1
    return Fraction(math.floor(q))


def _left_floor_divisor(ideals: IdealDivisorSet, canonical: Divisor, coords) -> Divisor:
    rows = _value_rows(ideals, canonical, coords)
    return Divisor(ideals.graph, [left_floor(form, q) for form, q in rows])


def mmi_left_limit(ideals: IdealDivisorSet, canonical: Divisor, lam) -> Divisor:
    """Antinef divisor of the ideal at (1 - eps) * lam for eps -> 0+.

    Undefined at the origin (there is nothing to the left of 0)."""
    coords = parse_point(lam, ideals.r)
    if all(c == 0 for c in coords):
        raise ZeroPoint("left limit undefined at the origin")
    return antinef_closure(_left_floor_divisor(ideals, canonical, coords))
