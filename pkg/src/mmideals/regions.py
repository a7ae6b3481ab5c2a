"""Constancy regions, walls, facets, and the wall-walking enumerator.

The parameter space is the nonnegative orthant of tuples lam = (lam_1..lam_r)
weighting the ideals.  Around each point the mixed multiplier ideal is
constant on a region cut out by strict inequalities

    sum_i lam'_i e_{i,j}  <  k_j + 1 + e_j(lam)

with one wall per rupture or dicritical exceptional component E_j; e_j(lam)
is the coefficient of the antinef divisor at lam.  For two ideals the regions
are convex polygons containing the origin, and the enumerator walks outward
from 0, one region per distinct ideal, picking one interior point of every
outer facet as the seed for the next region.

All geometry is exact: points are Fraction pairs, facets are clipped with
rational 2x2 solves, nothing is ever rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .divisors import (
    Divisor,
    _value_rows,
    antinef_closure,
    mmi_at,
    mmi_left_limit,
    parse_point,
)
from .errors import (
    DanglingReference,
    DimensionMismatch,
    GeometryDegeneracy,
    GraphMismatch,
    InternalInvariant,
    NonTermination,
    PreconditionViolated,
    UnsupportedGeometry,
    ZeroDivisor,
)
from .graph import Classification, DualGraph, IdealDivisorSet, _as_fraction, relative_canonical

__all__ = [
    "WallInequality",
    "RegionPolytope",
    "CFacet",
    "ConstancyRecord",
    "EnumerationResult",
    "RegionEngine",
    "next_jumping_number",
]

Point = tuple  # tuple[Fraction, ...]

ENUMERATION_GUARD = 200_000


class WallInequality:
    """One strict inequality coeffs . z < constant."""

    __slots__ = ("component", "coeffs", "constant")

    def __init__(self, component: str, coeffs: tuple[int, ...], constant: Fraction):
        self.component = component
        self.coeffs = coeffs
        self.constant = constant

    def value_at(self, point: Sequence[Fraction]) -> Fraction:
        return sum((Fraction(a) * z for a, z in zip(self.coeffs, point)), Fraction(0))

    def __repr__(self):
        lhs = " + ".join(f"{a}*z{i + 1}" for i, a in enumerate(self.coeffs))
        return f"{self.component}: {lhs} < {self.constant}"


class RegionPolytope:
    """Constancy region of the ideal at `lam`: open convex polytope
    {z >= 0, coeffs . z < constant for every wall}."""

    def __init__(self, lam: Point, divisor: Divisor, inequalities: tuple[WallInequality, ...]):
        self.lam = lam
        self.divisor = divisor
        self.inequalities = inequalities
        self._by_component = {ineq.component: ineq for ineq in inequalities}

    @property
    def dim(self) -> int:
        return len(self.lam)

    def constant_for(self, component: str) -> Fraction | None:
        ineq = self._by_component.get(component)
        return None if ineq is None else ineq.constant

    def contains(self, point: Sequence[Fraction]) -> bool:
        """Strict membership (points on a wall are outside)."""
        if len(point) != self.dim:
            raise DimensionMismatch("point dimension does not match the region")
        if any(z < 0 for z in point):
            return False
        return all(ineq.value_at(point) < ineq.constant for ineq in self.inequalities)

    def extent(self, axis: int) -> Fraction | None:
        """sup of z_axis over the region closure, None when unbounded."""
        best: Fraction | None = None
        for ineq in self.inequalities:
            a = ineq.coeffs[axis]
            if a > 0:
                bound = ineq.constant / a
                if best is None or bound < best:
                    best = bound
        return best

    @property
    def bounded(self) -> bool:
        return all(self.extent(i) is not None for i in range(self.dim))

    def __repr__(self):
        return f"RegionPolytope(lam={self.lam}, walls={len(self.inequalities)})"


class CFacet:
    """One facet of a constancy region: a maximal piece of a wall line not
    covered by the closures of previously computed regions.

    `start`/`end` are the endpoints of the closure of the piece; `midpoint`
    is its barycenter and always lies in the relative interior.  For a single
    ideal (r = 1) facets degenerate to points and the three coincide.
    """

    __slots__ = ("component", "coeffs", "constant", "start", "end", "midpoint")

    def __init__(self, component, coeffs, constant, start, end, midpoint):
        self.component = component
        self.coeffs = coeffs
        self.constant = constant
        self.start = start
        self.end = end
        self.midpoint = midpoint

    def __repr__(self):
        return f"CFacet({self.component}, {self.start} -> {self.end})"


class ConstancyRecord:
    """A discovered constancy region: every representative point that landed
    in it, its divisor, its wall polytope, and its outer facets."""

    def __init__(self, index, representative, divisor, region, cfacets, predecessors, truncated):
        self.index = index
        self.representative = representative
        self.representatives = [representative]
        self.divisor = divisor
        self.region = region
        self.cfacets = cfacets
        self.predecessors = predecessors
        self.truncated = truncated

    def __repr__(self):
        return f"ConstancyRecord({self.index}, rep={self.representative})"


class EnumerationResult:
    def __init__(self, box, records, representatives, queue, warnings, m_primary):
        self.box = box
        self.records = records
        self.representatives = representatives  # processed points, in order (D)
        self.queue = queue  # unprocessed seeds left over (N)
        self.warnings = warnings
        self.m_primary = m_primary

    def distinct_divisors(self) -> int:
        return len(self.records)

    def record_for(self, divisor: Divisor) -> ConstancyRecord | None:
        for rec in self.records:
            if rec.divisor == divisor:
                return rec
        return None


# -- exact line clipping ------------------------------------------------------


def _clip_parameter(constraints, p0, direction, lo, hi):
    """Intersect the parametrized line p0 + t * direction with half-planes
    given as (a1, a2, b) meaning a . z <= b.  Returns (lo, hi) with None for
    an unbounded side, or None when empty."""
    for a1, a2, b in constraints:
        alpha = a1 * direction[0] + a2 * direction[1]
        beta = b - (a1 * p0[0] + a2 * p0[1])
        if alpha == 0:
            if beta < 0:
                return None
            continue
        bound = Fraction(beta) / alpha
        if alpha > 0:
            if hi is None or bound < hi:
                hi = bound
        else:
            if lo is None or bound > lo:
                lo = bound
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def _halfplanes_of_closure(region: RegionPolytope):
    planes = [(-1, 0, Fraction(0)), (0, -1, Fraction(0))]  # z1 >= 0, z2 >= 0
    for ineq in region.inequalities:
        planes.append((ineq.coeffs[0], ineq.coeffs[1], ineq.constant))
    return planes


def _subtract_intervals(lo: Fraction, hi: Fraction, cuts: list[tuple[Fraction, Fraction]]):
    """Closed base interval minus a union of closed cuts; returns the
    closures of the surviving open pieces, dropping zero-length remnants."""
    trimmed = []
    for u0, u1 in cuts:
        u0 = max(u0, lo)
        u1 = min(u1, hi)
        if u0 <= u1:
            trimmed.append((u0, u1))
    trimmed.sort()
    merged: list[list[Fraction]] = []
    for u0, u1 in trimmed:
        if merged and u0 <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], u1)
        else:
            merged.append([u0, u1])
    pieces = []
    cursor = lo
    for u0, u1 in merged:
        if u0 > cursor:
            pieces.append((cursor, u0))
        cursor = max(cursor, u1)
    if hi > cursor:
        pieces.append((cursor, hi))
    return pieces


# -- the engine ---------------------------------------------------------------


class RegionEngine:
    """Bundles a graph, an ideal tuple and the relative canonical divisor,
    and answers all region-level questions about the family.

    `include_affine_walls` additionally emits one hyperplane per affine
    component carrying multiplicity; it is off by default because the wall
    theorem only needs rupture and dicritical exceptional components for
    m-primary tuples (reports expose `m_primary` so callers can tell when
    that guarantee applies).
    """

    def __init__(
        self,
        ideals: IdealDivisorSet,
        canonical: Divisor | None = None,
        include_affine_walls: bool = False,
    ):
        self.ideals = ideals
        self.graph = ideals.graph
        self.canonical = canonical if canonical is not None else relative_canonical(self.graph)
        if self.canonical.graph != self.graph:
            raise GraphMismatch("canonical divisor lives on a different graph")
        self.classification = Classification(self.graph, ideals)
        self.include_affine_walls = include_affine_walls
        self._mmi_cache: dict[Point, Divisor] = {}

    @property
    def r(self) -> int:
        return self.ideals.r

    # -- pointwise data ---------------------------------------------------

    def point(self, lam) -> Point:
        return parse_point(lam, self.r)

    def mmi(self, lam) -> Divisor:
        key = self.point(lam)
        cached = self._mmi_cache.get(key)
        if cached is None:
            cached = mmi_at(self.ideals, self.canonical, key)
            self._mmi_cache[key] = cached
        return cached

    def left_limit(self, lam) -> Divisor:
        return mmi_left_limit(self.ideals, self.canonical, self.point(lam))

    def membership(self, lam_prime, lam) -> bool:
        """Does the ideal at lam_prime contain the ideal at lam?

        Decided componentwise: floor(lam'-value - k) <= e(lam) at every
        component, affine ones included.  Agrees with the wall polytope for
        lam_prime off the closure boundary cases by the region theorem; kept
        as an independent route on purpose.
        """
        coords = self.point(lam_prime)
        divisor = self.mmi(lam)
        rows = _value_rows(self.ideals, self.canonical, coords)
        return all(math.floor(q) <= divisor.coeffs[j] for j, (_, q) in enumerate(rows))

    def region_of(self, lam) -> RegionPolytope:
        """Wall polytope of the constancy region holding lam.

        One strict inequality per wall-relevant (rupture or dicritical)
        exceptional component; every constant k_j + 1 + e_j(lam) is positive,
        so the origin always lies inside.
        """
        coords = self.point(lam)
        divisor = self.mmi(coords)
        ineqs = []
        for j in self.classification.wall_relevant:
            ineqs.append(self._wall(j, divisor))
        if self.include_affine_walls:
            g = self.graph
            for a in range(g.n_aff):
                idx = g.n_exc + a
                normal = tuple(int(d.coeffs[idx]) for d in self.ideals.divisors)
                if all(n == 0 for n in normal):
                    continue
                constant = Fraction(1) + divisor.coeffs[idx]
                ineqs.append(WallInequality(g.ids[idx], normal, constant))
        region = RegionPolytope(coords, divisor, tuple(ineqs))
        for ineq in region.inequalities:
            if ineq.constant <= 0:
                raise InternalInvariant(f"wall constant {ineq.constant} <= 0 at {ineq.component}")
        return region

    def _wall(self, j: int, divisor: Divisor) -> WallInequality:
        normal = tuple(int(d.coeffs[j]) for d in self.ideals.divisors)
        constant = self.canonical.coeffs[j] + 1 + divisor.coeffs[j]
        return WallInequality(self.graph.exc_ids[j], normal, constant)

    # -- enumeration -------------------------------------------------------

    def enumerate_constancy_regions(self, box, max_points: int | None = None) -> EnumerationResult:
        """Walk the constancy regions outward from the origin.

        `box` is the closed search window [0, box_1] x ... ; seeds outside it
        are kept on the queue but never processed, so with `max_points=None`
        the run terminates exactly when every region meeting the box has a
        record.  `max_points` stops the walk once that many representatives
        have been emitted (the region count can be smaller, since points
        landing in a known region only join its representative list).
        """
        box_pt = tuple(_as_fraction(b, "box") for b in box)
        if len(box_pt) != self.r:
            raise DimensionMismatch(f"box needs {self.r} coordinates")
        if any(b <= 0 for b in box_pt):
            raise PreconditionViolated("box coordinates must be positive")
        if max_points is not None and max_points < 1:
            raise PreconditionViolated("max_points must be positive when given")
        if self.r > 2:
            raise UnsupportedGeometry("wall walking is exact for one or two ideals only")

        origin: Point = tuple(Fraction(0) for _ in range(self.r))
        queue: list[Point] = [origin]
        seen: set[Point] = {origin}
        representatives: list[Point] = []
        records: list[ConstancyRecord] = []
        by_divisor: dict[Divisor, ConstancyRecord] = {}
        warnings: list[str] = []

        steps = 0
        while queue:
            if max_points is not None and len(representatives) >= max_points:
                break
            steps += 1
            if steps > ENUMERATION_GUARD:
                raise NonTermination(f"enumeration exceeded {ENUMERATION_GUARD} steps")

            self._prioritize(queue)
            lam = queue.pop(0)
            divisor = self.mmi(lam)

            known = by_divisor.get(divisor)
            if known is not None:
                known.representatives.append(lam)
                representatives.append(lam)
                continue

            region = self.region_of(lam)
            facets, seeds = self._facets(region, records, box_pt)
            record = ConstancyRecord(
                index=len(records),
                representative=lam,
                divisor=divisor,
                region=region,
                cfacets=facets,
                predecessors=tuple(
                    r.index for r in records if r.divisor.le(divisor) and r.divisor != divisor
                ),
                truncated=self._truncated(region, box_pt),
            )
            records.append(record)
            by_divisor[divisor] = record
            representatives.append(lam)
            if record.index == 0 and not seeds:
                warnings.append(
                    "BoxTooSmall: the box misses the boundary of the first region; "
                    "no jumping point lies inside it"
                )
            for seed in seeds:
                if seed not in seen:
                    seen.add(seed)
                    queue.append(seed)

        return EnumerationResult(
            box=box_pt,
            records=records,
            representatives=representatives,
            queue=list(queue),
            warnings=warnings,
            m_primary=self.ideals.is_m_primary(),
        )

    def _prioritize(self, queue: list[Point]):
        # Move the first queued point whose divisor sits strictly below the
        # head's to the front, until the head is minimal.  Strict descent in
        # the divisor lattice, so this terminates.
        guard = 0
        while True:
            head_divisor = self.mmi(queue[0])
            moved = False
            for idx in range(1, len(queue)):
                cand = self.mmi(queue[idx])
                if cand != head_divisor and cand.le(head_divisor):
                    queue.insert(0, queue.pop(idx))
                    moved = True
                    break
            if not moved:
                return
            guard += 1
            if guard > len(queue) + 10_000:
                raise InternalInvariant("queue prioritization cycled")

    def _truncated(self, region: RegionPolytope, box_pt: Point) -> bool:
        for axis, limit in enumerate(box_pt):
            ext = region.extent(axis)
            if ext is None or ext > limit:
                return True
        return False

    def _facets(self, region: RegionPolytope, priors: list[ConstancyRecord], box_pt: Point):
        if self.r == 1:
            return self._facets_r1(region, priors, box_pt)
        return self._facets_r2(region, priors, box_pt)

    def _facets_r1(self, region: RegionPolytope, priors, box_pt):
        best: tuple[Fraction, WallInequality] | None = None
        for ineq in region.inequalities:
            a = ineq.coeffs[0]
            if a > 0:
                bound = ineq.constant / a
                if best is None or bound < best[0]:
                    best = (bound, ineq)
        if best is None:
            return (), []
        m, ineq = best
        for prior in priors:
            ext = prior.region.extent(0)
            if ext is not None and m <= ext:
                return (), []  # the wall point already belongs to an older closure
        point = (m,)
        facet = CFacet(ineq.component, ineq.coeffs, ineq.constant, point, point, point)
        seeds = [point] if m <= box_pt[0] else []
        return (facet,), seeds

    def _facets_r2(self, region: RegionPolytope, priors, box_pt):
        closure_planes = _halfplanes_of_closure(region)
        box_planes = [(1, 0, box_pt[0]), (0, 1, box_pt[1])]
        facets: list[CFacet] = []
        seeds: list[Point] = []
        for ineq in region.inequalities:
            a1, a2 = ineq.coeffs
            c = ineq.constant
            if a1 == 0 and a2 == 0:
                continue
            if a1 != 0:
                p0 = (Fraction(c, a1), Fraction(0))
            else:
                p0 = (Fraction(0), Fraction(c, a2))
            direction = (Fraction(a2), Fraction(-a1))
            span = _clip_parameter(closure_planes, p0, direction, None, None)
            if span is None:
                continue
            lo, hi = span
            if lo is None or hi is None:
                raise GeometryDegeneracy(f"unbounded wall segment at {ineq.component}")
            if lo == hi:
                continue

            cuts = []
            for prior in priors:
                prior_c = prior.region.constant_for(ineq.component)
                if prior_c is not None and prior_c < c:
                    continue  # prior closure cannot reach this wall line
                cut = _clip_parameter(
                    _halfplanes_of_closure(prior.region), p0, direction, lo, hi
                )
                if cut is not None:
                    u0, u1 = cut
                    cuts.append((lo if u0 is None else u0, hi if u1 is None else u1))

            at = lambda t: (p0[0] + t * direction[0], p0[1] + t * direction[1])
            for t0, t1 in _subtract_intervals(lo, hi, cuts):
                facets.append(
                    CFacet(
                        ineq.component,
                        ineq.coeffs,
                        c,
                        at(t0),
                        at(t1),
                        at((t0 + t1) / 2),
                    )
                )
                boxed = _clip_parameter(box_planes, p0, direction, t0, t1)
                if boxed is None:
                    continue
                b0, b1 = boxed
                if b0 < b1:
                    seeds.append(at((b0 + b1) / 2))
                elif b0 == b1:
                    # The facet touches the box in a single point (a corner or
                    # a grazing endpoint); it still seeds the region above.
                    seeds.append(at(b0))
        if region.inequalities and not facets:
            raise GeometryDegeneracy("a fresh region produced no outer facet")
        return tuple(facets), seeds

    # -- rays and chains ---------------------------------------------------

    def next_jumping_number_of(self, name: str, t_prev) -> Fraction:
        try:
            idx = self.ideals.names.index(name)
        except ValueError:
            raise DanglingReference(f"unknown ideal name {name!r}") from None
        return next_jumping_number(self.ideals.divisors[idx], self.canonical, t_prev)

    def jumping_numbers_of(self, name: str, upto) -> list[Fraction]:
        limit = _as_fraction(upto, "upto")
        values: list[Fraction] = []
        t = Fraction(0)
        for _ in range(100_000):
            t = self.next_jumping_number_of(name, t)
            if t > limit:
                return values
            values.append(t)
        raise NonTermination("jumping-number chain did not reach the limit")

    def wall_ray_restriction(self, direction, t_max) -> list[Fraction]:
        """Jumping values of t for the family along the ray t * direction.

        The restriction is the single-ideal chain of sum_i u_i F_i, so walls
        crossed by the ray appear exactly at these parameters.
        """
        u = tuple(_as_fraction(x, "direction") for x in direction)
        if len(u) != self.r:
            raise DimensionMismatch(f"direction needs {self.r} coordinates")
        if any(x < 0 for x in u) or all(x == 0 for x in u):
            raise PreconditionViolated("direction must be nonzero and nonnegative")
        combined = self.ideals.divisors[0].scaled(u[0])
        for i in range(1, self.r):
            combined = combined + self.ideals.divisors[i].scaled(u[i])
        limit = _as_fraction(t_max, "upto")
        values: list[Fraction] = []
        t = Fraction(0)
        for _ in range(100_000):
            t = next_jumping_number(combined, self.canonical, t)
            if t > limit:
                return values
            values.append(t)
        raise NonTermination("ray restriction did not reach the limit")


def next_jumping_number(ideal_divisor: Divisor, canonical: Divisor, t_prev) -> Fraction:
    """Smallest jumping number of a single ideal strictly after t_prev.

    With e = multiplicities of the ideal divisor and e(t) the antinef
    divisor at the current parameter, the next jump is
    min over components with e_j > 0 of (k_j + 1 + e_j(t)) / e_j; affine
    components compete too (their k is 0), which is what picks up jumps of
    non-m-primary ideals.
    """
    ideal_divisor._check_same_graph(canonical)
    t0 = _as_fraction(t_prev, "t_prev")
    if t0 < 0:
        raise PreconditionViolated("t_prev must be nonnegative")
    if not ideal_divisor.is_effective() or all(c == 0 for c in ideal_divisor.coeffs):
        raise ZeroDivisor("jumping numbers need a nonzero effective divisor")
    scaled = ideal_divisor.scaled(t0)
    current = antinef_closure((scaled - canonical).floor())
    best: Fraction | None = None
    for j, e in enumerate(ideal_divisor.coeffs):
        if e > 0:
            ratio = (canonical.coeffs[j] + 1 + current.coeffs[j]) / e
            if best is None or ratio < best:
                best = ratio
    if best is None or best <= t0:
        raise InternalInvariant("jumping-number candidate did not advance")
    return best
