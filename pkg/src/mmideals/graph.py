"""Dual graphs of resolutions and the divisor combinatorics living on them.

A :class:`DualGraph` is the weighted dual graph of a resolution of a complex
surface singularity with rational singularities: a tree of exceptional
rational curves, each weighted by its (negative) self-intersection, plus a
list of affine arrows recording where the strict transforms of curve germs
cross the exceptional locus.  The intersection matrix of the exceptional part
is required to be negative definite, which is exactly what makes excesses,
unloading and the antinef machinery work.

Components are indexed globally: exceptional components first, in input
order, then affine components.  Divisors are coefficient vectors over that
global index; affine arrows never receive corrections but they do contribute
to intersection products through the components they cross.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DanglingReference,
    DimensionMismatch,
    DuplicateId,
    GraphMismatch,
    InternalInvariant,
    NonIntegralDivisor,
    NotATree,
    NotNegativeDefinite,
    PreconditionViolated,
)

__all__ = [
    "DualGraph",
    "IdealDivisorSet",
    "validate_graph",
    "relative_canonical",
    "excesses",
    "classify_components",
    "Classification",
]


def _as_fraction(value, what: str) -> Fraction:
    """Exact coercion; floats are rejected because they are already rounded."""
    if isinstance(value, bool):
        raise PreconditionViolated(f"{what}: boolean is not a number")
    if isinstance(value, float):
        raise PreconditionViolated(
            f"{what}: float {value!r} is inexact, pass an int, Fraction or 'p/q' string"
        )
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionViolated(f"{what}: cannot parse {value!r} as a rational") from exc
    raise PreconditionViolated(f"{what}: unsupported value {value!r}")


def _solve_exact(rows: Sequence[Sequence[int]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    # Gauss-Jordan over Fraction; the matrix is negative definite, hence invertible.
    n = len(rows)
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise InternalInvariant("singular intersection matrix slipped past validation")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][n] for i in range(n))


def _is_negative_definite(matrix: Sequence[Sequence[int]]) -> bool:
    """Exact pivot test: -M is positive definite iff elimination without row
    exchanges keeps every pivot positive."""
    n = len(matrix)
    a = [[Fraction(-matrix[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return True


class DualGraph:
    """Validated dual graph.  Build one with :func:`validate_graph`."""

    def __init__(
        self,
        exc_ids: tuple[str, ...],
        self_int: tuple[int, ...],
        edges: tuple[tuple[int, int], ...],
        aff_ids: tuple[str, ...],
        aff_meets: tuple[tuple[int, ...], ...],
    ):
        self.exc_ids = exc_ids
        self.self_int = self_int
        self.edges = edges
        self.aff_ids = aff_ids
        self.aff_meets = aff_meets

        self.ids: tuple[str, ...] = exc_ids + aff_ids
        self.n_exc = len(exc_ids)
        self.n_aff = len(aff_ids)
        self.n_total = self.n_exc + self.n_aff
        self.index: dict[str, int] = {cid: i for i, cid in enumerate(self.ids)}

        exc_adj: list[list[int]] = [[] for _ in range(self.n_exc)]
        for i, j in edges:
            exc_adj[i].append(j)
            exc_adj[j].append(i)
        self.exc_adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in exc_adj)

        aff_cross: list[list[int]] = [[] for _ in range(self.n_exc)]
        for a, meets in enumerate(aff_meets):
            for i in meets:
                aff_cross[i].append(self.n_exc + a)
        self.aff_cross: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(c)) for c in aff_cross)

        # Global adjacency: every pair of components with intersection 1.
        adjacency: list[tuple[int, ...]] = []
        for i in range(self.n_exc):
            adjacency.append(tuple(sorted(self.exc_adj[i] + self.aff_cross[i])))
        for meets in aff_meets:
            adjacency.append(tuple(sorted(meets)))
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(adjacency)

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.exc_ids, self.self_int, self.edges, self.aff_ids, self.aff_meets)

    def __eq__(self, other):
        return isinstance(other, DualGraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"DualGraph({self.n_exc} exceptional, {self.n_aff} affine)"

    # -- products -----------------------------------------------------------

    def dot_exceptional(self, coeffs: Sequence[Fraction], i: int) -> Fraction:
        """Intersection product D . E_i for a divisor with the given global
        coefficient vector and the i-th exceptional component."""
        total = self.self_int[i] * coeffs[i]
        for j in self.exc_adj[i]:
            total += coeffs[j]
        for a in self.aff_cross[i]:
            total += coeffs[a]
        return total

    def excess_vector(self, coeffs: Sequence[Fraction]) -> list[Fraction]:
        """Excesses rho_i = -D . E_i at every exceptional component."""
        return [-self.dot_exceptional(coeffs, i) for i in range(self.n_exc)]

    def intersection_matrix(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for i in range(self.n_exc):
            row = [0] * self.n_exc
            row[i] = self.self_int[i]
            for j in self.exc_adj[i]:
                row[j] = 1
            rows.append(tuple(row))
        return tuple(rows)

    def coefficients(self, mapping: Mapping[str, object], what: str = "divisor") -> list[Fraction]:
        """Turn an id->value mapping into a global coefficient vector.

        Missing ids default to 0; unknown ids raise DanglingReference.
        """
        coeffs = [Fraction(0)] * self.n_total
        for cid, value in mapping.items():
            if cid not in self.index:
                raise DanglingReference(f"{what}: unknown component id {cid!r}")
            coeffs[self.index[cid]] = _as_fraction(value, f"{what}[{cid}]")
        return coeffs


def validate_graph(raw: Mapping) -> DualGraph:
    """Validate raw graph data (parsed JSON) and build a :class:`DualGraph`.

    Checks, in order: unique ids, edges/arrows referencing known components,
    the exceptional graph being a tree, and negative definiteness of the
    intersection matrix.
    """
    exc_raw = raw.get("exceptional")
    if not exc_raw:
        raise PreconditionViolated("graph needs at least one exceptional component")

    exc_ids: list[str] = []
    self_int: list[int] = []
    for entry in exc_raw:
        cid = entry.get("id")
        if not isinstance(cid, str) or not cid:
            raise PreconditionViolated(f"exceptional component without a usable id: {entry!r}")
        self_raw = entry.get("self")
        if isinstance(self_raw, bool) or not isinstance(self_raw, int):
            raise PreconditionViolated(f"{cid}: self-intersection must be an integer, got {self_raw!r}")
        exc_ids.append(cid)
        self_int.append(self_raw)

    aff_ids: list[str] = []
    aff_meets_ids: list[list[str]] = []
    for entry in raw.get("affine", []):
        cid = entry.get("id")
        if not isinstance(cid, str) or not cid:
            raise PreconditionViolated(f"affine component without a usable id: {entry!r}")
        meets = entry.get("meets", [])
        if not isinstance(meets, (list, tuple)) or not meets:
            raise PreconditionViolated(f"{cid}: affine component must cross at least one exceptional component")
        aff_ids.append(cid)
        aff_meets_ids.append(list(meets))

    all_ids = exc_ids + aff_ids
    seen: set[str] = set()
    for cid in all_ids:
        if cid in seen:
            raise DuplicateId(f"component id {cid!r} appears twice")
        seen.add(cid)
    exc_index = {cid: i for i, cid in enumerate(exc_ids)}

    edges: list[tuple[int, int]] = []
    edge_set: set[tuple[int, int]] = set()
    for pair in raw.get("edges", []):
        if len(pair) != 2:
            raise PreconditionViolated(f"edge must join exactly two components: {pair!r}")
        a, b = pair
        for cid in (a, b):
            if cid not in exc_index:
                if cid in seen:
                    raise DanglingReference(f"edge {pair!r}: {cid!r} is not an exceptional component")
                raise DanglingReference(f"edge {pair!r}: unknown component id {cid!r}")
        i, j = exc_index[a], exc_index[b]
        if i == j:
            raise NotATree(f"self-edge at {a!r}")
        key = (min(i, j), max(i, j))
        if key in edge_set:
            raise NotATree(f"duplicate edge {pair!r}")
        edge_set.add(key)
        edges.append(key)

    meets_idx: list[tuple[int, ...]] = []
    for cid, meets in zip(aff_ids, aff_meets_ids):
        row = []
        for target in meets:
            if target not in exc_index:
                raise DanglingReference(f"affine {cid!r} crosses unknown exceptional component {target!r}")
            row.append(exc_index[target])
        meets_idx.append(tuple(sorted(row)))

    n = len(exc_ids)
    if len(edges) != n - 1:
        raise NotATree(f"tree on {n} components needs {n - 1} edges, got {len(edges)}")
    # Connectivity by breadth-first search from component 0.
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    reached = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for j in adj[i]:
                if j not in reached:
                    reached.add(j)
                    nxt.append(j)
        frontier = nxt
    if len(reached) != n:
        raise NotATree("exceptional graph is disconnected")

    graph = DualGraph(tuple(exc_ids), tuple(self_int), tuple(edges), tuple(aff_ids), tuple(meets_idx))
    if not _is_negative_definite(graph.intersection_matrix()):
        raise NotNegativeDefinite("exceptional intersection matrix is not negative definite")
    return graph


def relative_canonical(graph: DualGraph):
    """Relative canonical divisor, normalized so adjunction reads
    (K + E_i) . E_i = -2 on every exceptional component.

    Coefficients solve M k = b with b_i = -2 - E_i^2; affine components carry
    coefficient 0.
    """
    from .divisors import Divisor  # local import to avoid a cycle

    rhs = [Fraction(-2 - s) for s in graph.self_int]
    k_exc = _solve_exact(graph.intersection_matrix(), rhs)
    coeffs = list(k_exc) + [Fraction(0)] * graph.n_aff
    for i in range(graph.n_exc):
        if graph.dot_exceptional(coeffs, i) + graph.self_int[i] != -2:
            raise InternalInvariant("adjunction check failed for the relative canonical divisor")
    return Divisor(graph, coeffs)


class IdealDivisorSet:
    """An ordered tuple of ideals, each given by its effective antinef
    divisor of multiplicities on a common graph."""

    def __init__(self, graph: DualGraph, names: Sequence[str], divisors: Sequence):
        from .divisors import Divisor

        if len(names) != len(divisors):
            raise DimensionMismatch("one name per ideal divisor required")
        if not divisors:
            raise PreconditionViolated("at least one ideal is required")
        if len(set(names)) != len(names):
            raise DuplicateId("ideal names must be unique")
        checked: list[Divisor] = []
        for name, div in zip(names, divisors):
            if div.graph != graph:
                raise GraphMismatch(f"ideal {name!r} lives on a different graph")
            if not div.is_integral():
                raise NonIntegralDivisor(f"ideal {name!r}: multiplicities must be integers")
            if any(c < 0 for c in div.coeffs):
                raise PreconditionViolated(f"ideal {name!r}: multiplicities must be nonnegative")
            if all(c == 0 for c in div.coeffs):
                raise PreconditionViolated(f"ideal {name!r}: zero divisor does not define an ideal")
            rho = graph.excess_vector(div.coeffs)
            bad = next((i for i, r in enumerate(rho) if r < 0), None)
            if bad is not None:
                raise PreconditionViolated(
                    f"ideal {name!r}: not antinef, excess {rho[bad]} at {graph.exc_ids[bad]}"
                )
            checked.append(div)
        self.graph = graph
        self.names = tuple(names)
        self.divisors = tuple(checked)
        self.r = len(checked)
        # rho[i][j]: excess of F_i at the j-th exceptional component.
        self.excess = tuple(tuple(graph.excess_vector(d.coeffs)) for d in self.divisors)

    def __repr__(self):
        return f"IdealDivisorSet({', '.join(self.names)})"

    def total(self):
        """Sum of the ideal divisors; its support bounds reduced jumping
        divisor candidates."""
        total = self.divisors[0]
        for d in self.divisors[1:]:
            total = total + d
        return total

    def is_m_primary(self) -> bool:
        """True when every ideal divisor is purely exceptional."""
        g = self.graph
        return all(all(d.coeffs[g.n_exc + a] == 0 for a in range(g.n_aff)) for d in self.divisors)

    def value(self, lam: Sequence[Fraction], j: int) -> Fraction:
        """The weighted multiplicity sum_i lam_i e_{i,j} at component j."""
        return sum((lam[i] * self.divisors[i].coeffs[j] for i in range(self.r)), Fraction(0))


def excesses(graph: DualGraph, ideals: IdealDivisorSet) -> tuple[tuple[Fraction, ...], ...]:
    """Excess table rho[i][j] = -F_i . E_j (already validated nonnegative)."""
    if ideals.graph != graph:
        raise GraphMismatch("excess table requested for a foreign graph")
    return ideals.excess


class Classification:
    """Rupture, dicritical, and wall-relevant exceptional components."""

    def __init__(self, graph: DualGraph, ideals: IdealDivisorSet):
        rupture = [i for i in range(graph.n_exc) if len(graph.exc_adj[i]) >= 3]
        dicritical = [
            j for j in range(graph.n_exc) if any(ideals.excess[i][j] > 0 for i in range(ideals.r))
        ]
        self.rupture = tuple(rupture)
        self.dicritical = tuple(dicritical)
        self.wall_relevant = tuple(sorted(set(rupture) | set(dicritical)))

    def ids(self, graph: DualGraph) -> dict[str, tuple[str, ...]]:
        return {
            "rupture": tuple(graph.exc_ids[i] for i in self.rupture),
            "dicritical": tuple(graph.exc_ids[i] for i in self.dicritical),
            "wall_relevant": tuple(graph.exc_ids[i] for i in self.wall_relevant),
        }


def classify_components(graph: DualGraph, ideals: IdealDivisorSet) -> Classification:
    """Tag exceptional components: rupture (three or more exceptional
    neighbors), dicritical (positive excess for some ideal), and their union,
    which is where region walls can live.  Affine arrows never make a
    component rupture."""
    if ideals.graph != graph:
        raise GraphMismatch("classification requested for a foreign graph")
    return Classification(graph, ideals)
