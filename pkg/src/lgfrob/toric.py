"""Fan validation, class-group grading, anti-canonical polytope, volumes,
Betti numbers, and graded monomial enumeration.

All computations are exact; fans are given by primitive ray generators and
maximal cones (index sets into the ray list).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DegeneratePolytope,
    InvalidFan,
    NotReflexivePipeline,
    TorsionClassGroup,
)
from .poly import Monomial, grlex_key, monomial_degree


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class FanData:
    """Combinatorial fan: ambient dimension, primitive rays, maximal cones."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(r) for r in self.rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(c)) for c in self.max_cones)
        )
        for ray in self.rays:
            if len(ray) != self.dim:
                raise InvalidFan(f"ray {ray} does not have length {self.dim}")
            g = 0
            for x in ray:
                g = gcd(g, x)
            if g != 1:
                raise InvalidFan(f"ray {ray} is not primitive")
        for cone in self.max_cones:
            if any(i < 0 or i >= len(self.rays) for i in cone):
                raise InvalidFan(f"cone {cone} references an unknown ray")
            if len(set(cone)) != len(cone):
                raise InvalidFan(f"cone {cone} repeats a ray")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_matrix(self, cone: Sequence[int]) -> list[list[int]]:
        """Rows are the rays of the cone."""
        return [list(self.rays[i]) for i in cone]


@dataclass(frozen=True)
class GradingMap:
    """Degree homomorphism from the exponent lattice onto the class group.

    ``degrees[i]`` is the class of the i-th variable in Z^(r-m), written in
    the Hermite-canonical basis; ``beta`` is the anti-canonical class, the sum
    of all variable degrees.
    """

    rank: int
    degrees: tuple[tuple[int, ...], ...]
    beta: tuple[int, ...]

    def monomial_degree(self, mono: Monomial) -> tuple[int, ...]:
        return monomial_degree(mono, self.degrees)

    def degree_rows(self) -> list[list[int]]:
        """The (r-m) x r matrix of degree functionals (transposed degrees)."""
        return [[deg[k] for deg in self.degrees] for k in range(self.rank)]

    def scaled_beta(self, a: int) -> tuple[int, ...]:
        return tuple(a * x for x in self.beta)


@dataclass
class CheckResult:
    ok: bool
    witness: str | None = None


@dataclass
class ValidationReport:
    simplicial: CheckResult
    complete_criterion: CheckResult
    gorenstein: CheckResult
    ample: CheckResult
    torsion_free: CheckResult

    @property
    def all_pass(self) -> bool:
        return all(
            c.ok
            for c in (
                self.simplicial,
                self.complete_criterion,
                self.gorenstein,
                self.ample,
                self.torsion_free,
            )
        )

    def as_dict(self) -> dict:
        return {
            name: {"pass": check.ok, "witness": check.witness}
            for name, check in (
                ("simplicial", self.simplicial),
                ("complete_criterion", self.complete_criterion),
                ("gorenstein", self.gorenstein),
                ("ample", self.ample),
                ("torsion_free", self.torsion_free),
            )
        }


@dataclass(frozen=True)
class AnticanPolytope:
    """Anti-canonical polytope {u : <u, rho_i> >= -1 for all rays rho_i}.

    One vertex per maximal cone; ``vertex_cones[k]`` is the index of a maximal
    cone whose equations cut out ``vertices[k]``.
    """

    dim: int
    rays: tuple[tuple[int, ...], ...]
    vertices: tuple[tuple[int, ...], ...]
    vertex_cones: tuple[int, ...]


def _dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


# ---------------------------------------------------------------------------
# validation


def validate_fan(fan: FanData) -> ValidationReport:
    """Run the four fan certificates; failures carry concrete witnesses."""
    m = fan.dim

    simplicial = CheckResult(True)
    for ci, cone in enumerate(fan.max_cones):
        if len(cone) != m:
            simplicial = CheckResult(False, f"max cone {ci} has {len(cone)} rays, expected {m}")
            break
        if linalg.det_int(fan.cone_matrix(cone)) == 0:
            simplicial = CheckResult(False, f"max cone {ci} has linearly dependent rays")
            break

    complete = _complete_criterion(fan) if simplicial.ok else CheckResult(
        False, "skipped: simplicial check failed"
    )

    gorenstein = CheckResult(True)
    ample = CheckResult(True)
    if simplicial.ok:
        for ci, cone in enumerate(fan.max_cones):
            vertex = _cone_vertex(fan, cone)
            if vertex is None:
                gorenstein = CheckResult(
                    False, f"max cone {ci}: <u, rho_i> = -1 has no integral solution"
                )
                continue
            if ample.ok:
                for rj in range(fan.n_rays):
                    if rj in cone:
                        continue
                    pairing = _dot(vertex, fan.rays[rj])
                    if pairing <= -1:
                        ample = CheckResult(
                            False,
                            f"max cone {ci}: <{tuple(vertex)}, ray {rj} {fan.rays[rj]}> "
                            f"= {pairing} <= -1",
                        )
                        break
    else:
        gorenstein = CheckResult(False, "skipped: simplicial check failed")
        ample = CheckResult(False, "skipped: simplicial check failed")

    torsion_free = CheckResult(True)
    factors = linalg.invariant_factors([list(r) for r in fan.rays])
    if len(factors) < m:
        torsion_free = CheckResult(False, "rays do not span the ambient lattice over Q")
    elif any(d != 1 for d in factors):
        torsion_free = CheckResult(False, f"class group torsion: invariant factors {factors}")

    return ValidationReport(simplicial, complete, gorenstein, ample, torsion_free)


def _complete_criterion(fan: FanData) -> CheckResult:
    """Ridge pairing: every (m-1)-face of a max cone lies in exactly two max
    cones and the induced adjacency graph is connected."""
    ridge_count: dict[tuple[int, ...], list[int]] = {}
    for ci, cone in enumerate(fan.max_cones):
        for ridge in combinations(cone, fan.dim - 1):
            ridge_count.setdefault(ridge, []).append(ci)
    for ridge, cones in ridge_count.items():
        if len(cones) != 2:
            return CheckResult(
                False,
                f"ridge {ridge} lies in {len(cones)} max cone(s): {cones}",
            )
    # connectivity of the adjacency graph
    if not fan.max_cones:
        return CheckResult(False, "no maximal cones")
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(fan.max_cones))}
    for cones in ridge_count.values():
        a, b = cones
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(fan.max_cones):
        missing = sorted(set(range(len(fan.max_cones))) - seen)
        return CheckResult(False, f"cone adjacency graph disconnected; unreachable {missing}")
    return CheckResult(True)


def _cone_vertex(fan: FanData, cone: Sequence[int]):
    """Integral solution of <u, rho_i> = -1 for the rays of a max cone, or
    None when the solution is not integral (non-Gorenstein witness)."""
    a = fan.cone_matrix(cone)
    solution = _solve_rational(a, [-1] * len(cone))
    if solution is None:
        return None
    if any(x.denominator != 1 for x in solution):
        return None
    return tuple(int(x) for x in solution)


def _solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]):
    """Unique rational solution of a square nonsingular system, else None."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    reduced, rank, pivots = linalg.rref(aug)
    if rank != n or pivots != tuple(range(n)):
        return None
    return [reduced[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# class group and grading


def class_group(fan: FanData) -> GradingMap:
    """Grading of the Cox ring by the class group, via Smith normal form of
    the ray matrix; the degree basis is Hermite-canonicalized."""
    r, m = fan.n_rays, fan.dim
    ray_matrix = [list(ray) for ray in fan.rays]  # r x m
    u, d, _ = linalg.smith_normal_form(ray_matrix)
    factors = [d[i][i] for i in range(min(r, m))]
    if any(f == 0 for f in factors):
        raise TorsionClassGroup(factors)  # rays degenerate; cokernel has free excess
    if any(f != 1 for f in factors):
        raise TorsionClassGroup(factors)
    # cokernel free part: bottom r-m rows of U are the degree functionals
    functionals = [u[i] for i in range(m, r)]
    canonical = linalg.hermite_row_canonical(functionals)
    rank = r - m
    degrees = tuple(
        tuple(canonical[k][i] for k in range(rank)) for i in range(r)
    )
    beta = tuple(sum(canonical[k][i] for i in range(r)) for k in range(rank))
    grading = GradingMap(rank=rank, degrees=degrees, beta=beta)
    # Gale duality sanity: the degree functionals annihilate the ray matrix
    for row in grading.degree_rows():
        for j in range(m):
            assert sum(row[i] * fan.rays[i][j] for i in range(r)) == 0
    return grading


# ---------------------------------------------------------------------------
# anti-canonical polytope and its normalized volume


def anticanonical_polytope(fan: FanData) -> AnticanPolytope:
    vertices: list[tuple[int, ...]] = []
    vertex_cones: list[int] = []
    seen: dict[tuple[int, ...], int] = {}
    for ci, cone in enumerate(fan.max_cones):
        vertex = _cone_vertex(fan, cone)
        if vertex is None:
            raise NotReflexivePipeline(
                f"max cone {ci} has no integral vertex; run validate_fan first"
            )
        if vertex in seen:
            continue
        for rj, ray in enumerate(fan.rays):
            if _dot(vertex, ray) < -1:
                raise NotReflexivePipeline(
                    f"vertex {vertex} violates <u, ray {rj}> >= -1"
                )
        seen[vertex] = ci
        vertices.append(vertex)
        vertex_cones.append(ci)
    return AnticanPolytope(
        dim=fan.dim,
        rays=fan.rays,
        vertices=tuple(vertices),
        vertex_cones=tuple(vertex_cones),
    )


def normalized_volume(polytope: AnticanPolytope, fan: FanData) -> int:
    """m! times the Euclidean volume of the anti-canonical polytope.

    Uses the vertex-cone (Lawrence/Brion) formula for simple polytopes: at
    each vertex the edge directions are the columns of the inverse of the
    active-constraint matrix, and

        Vol = sum_v (c.v)^m |det E_v| / (m! prod_j (-c.e_j))

    for any linear functional c avoiding the edge hyperplanes.  Exact in
    rational arithmetic; the m!-scaled result is asserted integral.
    """
    m = polytope.dim
    if not polytope.vertices:
        raise DegeneratePolytope("no vertices")
    data = []
    for vertex, ci in zip(polytope.vertices, polytope.vertex_cones):
        cone = fan.max_cones[ci]
        a = [[Fraction(x) for x in fan.rays[i]] for i in cone]
        inv = _invert_rational(a)
        if inv is None:
            raise DegeneratePolytope(f"vertex cone {ci} is singular")
        edges = [[inv[i][j] for i in range(m)] for j in range(m)]  # columns of A^-1
        det_edges = Fraction(1, abs(linalg.det_int(fan.cone_matrix(cone))))
        data.append((vertex, edges, det_edges))

    t = 2
    while True:
        c = [Fraction(t) ** k for k in range(m)]
        if all(
            _dot(c, edge) != 0 for _, edges, _ in data for edge in edges
        ):
            break
        t += 1

    # the sum below is already m! Vol: each vertex contributes
    # (c.v)^m |det E_v| / prod_j(-c.e_j) and the 1/m! of the classical
    # formula cancels against the requested m! normalization
    scaled = Fraction(0)
    for vertex, edges, det_edges in data:
        numerator = _dot(c, vertex) ** m * det_edges
        denominator = Fraction(1)
        for edge in edges:
            denominator *= -_dot(c, edge)
        scaled += numerator / denominator
    if scaled.denominator != 1:
        raise DegeneratePolytope(f"non-integral normalized volume {scaled}")
    value = int(scaled)
    if value <= 0:
        raise DegeneratePolytope(f"normalized volume {value} is not positive")
    return value


def _invert_rational(a: Sequence[Sequence[Fraction]]):
    n = len(a)
    aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    reduced, rank, pivots = linalg.rref(aug)
    if rank != n or pivots != tuple(range(n)):
        return None
    return [row[n:] for row in reduced]


# ---------------------------------------------------------------------------
# Betti numbers and the cup-product necessary condition


def all_cones(fan: FanData) -> set[tuple[int, ...]]:
    """Every face of every maximal cone (simplicial fans: all ray subsets)."""
    cones: set[tuple[int, ...]] = {()}
    for cone in fan.max_cones:
        for k in range(1, len(cone) + 1):
            cones.update(combinations(cone, k))
    return cones


def betti_numbers(fan: FanData) -> list[int]:
    """Even Betti numbers from sum over cones of (t-1)^(m - dim sigma); the
    returned list is b_0 .. b_{2m} with zero odd entries."""
    m = fan.dim
    poly = [0] * (m + 1)  # coefficients of t^k
    for cone in all_cones(fan):
        e = m - len(cone)
        row = _binomial_row(e)
        for k in range(e + 1):
            poly[k] += row[k] * (-1) ** (e - k)
    betti = []
    for k in range(2 * m + 1):
        betti.append(poly[k // 2] if k % 2 == 0 else 0)
    return betti


def _binomial_row(n: int) -> list[int]:
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def extraisom_necessary_check(fan: FanData) -> str:
    """Necessary-condition status for the middle cup-product hypothesis.

    Returns "TriviallyHolds" for odd ambient dimension (both cohomology
    groups sit in odd degree and vanish), otherwise compares the Betti
    numbers b_{m-2} and b_m as a dimension-equality necessary condition.
    """
    m = fan.dim
    if m % 2 == 1:
        return "TriviallyHolds"
    betti = betti_numbers(fan)
    if betti[m - 2] == betti[m]:
        return "NecessaryConditionOK"
    return "NecessaryConditionFails"


# ---------------------------------------------------------------------------
# lattice point enumeration (Fourier-Motzkin) and graded monomial bases


def _normalize_ineq(coeffs: Sequence[int], const: int):
    g = 0
    for x in coeffs:
        g = gcd(g, x)
    g = gcd(g, const)
    if g > 1:
        coeffs = tuple(x // g for x in coeffs)
        const = const // g
    return tuple(coeffs), const


def lattice_points(ineqs: list[tuple[tuple[int, ...], int]], dim: int) -> list[tuple[int, ...]]:
    """All integer points satisfying coeffs . x + const >= 0 for every
    inequality, enumerated by Fourier-Motzkin projection plus sweep.

    Raises DegeneratePolytope when some direction is unbounded.
    """
    if dim == 0:
        return [()] if all(c >= 0 for _, c in ineqs) else []
    systems: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(dim + 1)]
    current = [_normalize_ineq(c, k) for c, k in ineqs]
    systems[dim] = current
    for level in range(dim, 0, -1):
        nxt: set[tuple[tuple[int, ...], int]] = set()
        pos = []
        neg = []
        for coeffs, const in systems[level]:
            a = coeffs[level - 1]
            if a == 0:
                nxt.add(_normalize_ineq(coeffs[: level - 1], const))
            elif a > 0:
                pos.append((coeffs, const))
            else:
                neg.append((coeffs, const))
        for pc, pk in pos:
            for nc, nk in neg:
                ap, an = pc[level - 1], -nc[level - 1]
                combo = tuple(
                    an * pc[i] + ap * nc[i] for i in range(level - 1)
                )
                nxt.add(_normalize_ineq(combo, an * pk + ap * nk))
        systems[level - 1] = sorted(nxt)

    points: list[tuple[int, ...]] = []
    prefix = [0] * dim

    def bounds_at(level: int):
        lo, hi = None, None
        for coeffs, const in systems[level + 1]:
            a = coeffs[level]
            if a == 0:
                continue
            rest = const + sum(coeffs[i] * prefix[i] for i in range(level))
            if a > 0:
                bound = _ceil_div(-rest, a)
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = _floor_div(rest, -a)
                hi = bound if hi is None else min(hi, bound)
        return lo, hi

    def sweep(level: int):
        if level == dim:
            points.append(tuple(prefix))
            return
        lo, hi = bounds_at(level)
        if lo is None or hi is None:
            raise DegeneratePolytope(
                f"unbounded direction at coordinate {level}; fan not complete?"
            )
        for value in range(lo, hi + 1):
            prefix[level] = value
            sweep(level + 1)

    sweep(0)
    return points


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _floor_div(a: int, b: int) -> int:
    return a // b


def monomial_basis(
    grading: GradingMap, fan: FanData, alpha: Sequence[int]
) -> list[Monomial]:
    """All exponent vectors of class-group degree alpha, graded-lex sorted.

    Solves for one particular exponent vector, then enumerates the fiber
    u0 + (ray matrix) m' over the polytope u0_i + <m', rho_i> >= 0.
    """
    alpha = tuple(alpha)
    degree_rows = grading.degree_rows()
    u0 = linalg.solve_integer(degree_rows, list(alpha))
    if u0 is None:
        return []
    m = fan.dim
    ineqs = [
        (tuple(fan.rays[i]), u0[i]) for i in range(fan.n_rays)
    ]
    monos: list[Monomial] = []
    for point in lattice_points(ineqs, m):
        mono = tuple(
            u0[i] + _dot(point, fan.rays[i]) for i in range(fan.n_rays)
        )
        monos.append(mono)
    monos.sort(key=grlex_key)
    return monos


def count_lattice_points_dilated(polytope: AnticanPolytope, a: int) -> int:
    """Independent lattice-point count of the a-fold dilation of the
    anti-canonical polytope by a direct bounding-box inequality sweep."""
    if a == 0:
        return 1
    m = polytope.dim
    lows = [min(v[k] * a for v in polytope.vertices) for k in range(m)]
    highs = [max(v[k] * a for v in polytope.vertices) for k in range(m)]
    count = 0
    point = [0] * m

    def sweep(level: int):
        nonlocal count
        if level == m:
            if all(_dot(point, ray) >= -a for ray in polytope.rays):
                count += 1
            return
        for value in range(lows[level], highs[level] + 1):
            point[level] = value
            sweep(level + 1)

    sweep(0)
    return count
