"""The graded Frobenius algebra A(f) = sum_a R(f)_{a beta}: structure
constants, trace, pairing, twisted product, and axiom certification.

The trace of a socle class U is sign * c * m!Vol(polytope) times the formal
unit (2 pi i)^(m-1), where c is the coordinate of z_1...z_r * U against a
chosen generator of the one-dimensional R0(f)_{m beta} and the sign is
-(-1)^(m(m-1)/2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import linalg
from .errors import DegreeMismatch, HessianGeneratorZero, SocleNotOneDimensional
from .jacobian import (
    IDEAL_J,
    IDEAL_J0,
    JacobianSystem,
    QuotientBasis,
    graded_piece,
    normal_form,
    socle_certificates,
)
from .poly import GradedPolynomial, Monomial
from .toric import anticanonical_polytope, normalized_volume


GENERIC = "generic"
PROJECTIVE_HESSIAN = "projective-hessian"
STRATEGIES = (GENERIC, PROJECTIVE_HESSIAN)


@dataclass(frozen=True)
class TraceScalar:
    """Exact trace value: rational part times the formal unit (2 pi i)^e."""

    rational: Fraction
    unit_exponent: int
    sign_convention: int = 1  # the factor -(-1)^(m(m-1)/2) used to build it

    def __add__(self, other: "TraceScalar") -> "TraceScalar":
        if self.unit_exponent != other.unit_exponent:
            raise DegreeMismatch("trace values with different formal units")
        return TraceScalar(
            self.rational + other.rational, self.unit_exponent, self.sign_convention
        )

    def scale(self, value) -> "TraceScalar":
        return TraceScalar(
            self.rational * Fraction(value), self.unit_exponent, self.sign_convention
        )

    def __str__(self):
        return f"{self.rational} * (2*pi*i)^{self.unit_exponent}"


@dataclass
class FrobeniusAlgebraData:
    """Bases, structure constants, socle data and Gram matrices of A(f)."""

    system: JacobianSystem
    strategy: str
    m: int
    volume: int  # m! Vol of the anti-canonical polytope
    bases: list[QuotientBasis]  # index a = 0 .. m-1
    # (a, b) with a <= b and a+b <= m-1 -> tensor[i][j] = coords in degree a+b
    structure: dict[tuple[int, int], list[list[list[Fraction]]]]
    r0_piece: QuotientBasis  # R0(f)_{m beta}, one-dimensional
    generator_coord: Fraction  # coordinate of the strategy generator in r0_piece
    generator_monomial: Monomial | None  # Generic strategy generator
    zero_sums_checked: list[int]  # degrees a+b >= m verified zero-dimensional

    @property
    def sign(self) -> int:
        return -((-1) ** (self.m * (self.m - 1) // 2))

    def dims(self) -> list[int]:
        return [piece.dim for piece in self.bases]

    def basis_poly(self, a: int, i: int) -> GradedPolynomial:
        return GradedPolynomial.monomial(
            self.system.variables, self.bases[a].basis[i]
        )

    def lift(self, a: int, coords: Sequence[Fraction]) -> GradedPolynomial:
        piece = self.bases[a]
        terms = {
            mono: Fraction(c) for mono, c in zip(piece.basis, coords) if c != 0
        }
        return GradedPolynomial(self.system.variables, terms)

    def tensor(self, a: int, b: int):
        """Structure tensor for an (a, b) product, in either argument order."""
        if a <= b:
            return self.structure[(a, b)], False
        return self.structure[(b, a)], True

    def product_coords(
        self, a: int, u: Sequence[Fraction], b: int, v: Sequence[Fraction]
    ) -> list[Fraction]:
        """Coordinates of [u][v] in degree a+b; zero vector when a+b >= m."""
        if a + b >= self.m:
            return []
        tensor, swapped = self.tensor(a, b)
        if swapped:
            a, b, u, v = b, a, v, u
        out = [Fraction(0)] * self.bases[a + b].dim
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            row = tensor[i]
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                w = ci * cj
                for k, ck in enumerate(row[j]):
                    if ck:
                        out[k] += w * ck
        return out


def _all_ones(n: int) -> Monomial:
    return (1,) * n


def _is_standard_projective_fan(fan) -> bool:
    m = fan.dim
    if fan.n_rays != m + 1:
        return False
    expected = {tuple(1 if j == i else 0 for j in range(m)) for i in range(m)}
    expected.add((-1,) * m)
    if set(fan.rays) != expected:
        return False
    cones = {tuple(sorted(c)) for c in fan.max_cones}
    want = {
        tuple(sorted(set(range(m + 1)) - {i})) for i in range(m + 1)
    }
    return cones == want


def _hessian_determinant(system: JacobianSystem) -> GradedPolynomial:
    """det of the matrix of second partials, by Laplace expansion with
    memoization on (row offset, unused column set)."""
    r = len(system.variables)
    second = [
        [system.partials[i].partial_derivative(j) for j in range(r)]
        for i in range(r)
    ]
    zero = GradedPolynomial.zero(system.variables)
    cache: dict[tuple[int, ...], GradedPolynomial] = {}

    def minor(cols: tuple[int, ...]) -> GradedPolynomial:
        if not cols:
            return GradedPolynomial.constant(system.variables, 1)
        got = cache.get(cols)
        if got is not None:
            return got
        row = r - len(cols)
        acc = zero
        for k, col in enumerate(cols):
            entry = second[row][col]
            if entry.is_zero():
                continue
            rest = cols[:k] + cols[k + 1 :]
            term = entry * minor(rest)
            acc = acc + term if k % 2 == 0 else acc - term
        cache[cols] = acc
        return acc

    return minor(tuple(range(r)))


def build_algebra(system: JacobianSystem, strategy: str = GENERIC) -> FrobeniusAlgebraData:
    """Assemble A(f).  Requires both socle certificates to be 1-dimensional;
    every product degree a+b >= m is verified zero-dimensional, not assumed."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown trace strategy {strategy!r}")
    m = system.m
    socle = socle_certificates(system)
    if not socle.ok:
        raise SocleNotOneDimensional(socle.dim_r, socle.dim_r0)

    bases = [
        graded_piece(system, IDEAL_J, system.grading.scaled_beta(a))
        for a in range(m)
    ]
    r0_piece = graded_piece(system, IDEAL_J0, system.grading.scaled_beta(m))

    structure: dict[tuple[int, int], list[list[list[Fraction]]]] = {}
    zero_sums: list[int] = []
    for a in range(m):
        for b in range(a, m):
            if a + b >= m:
                # Macaulay cross-check: the target piece must vanish
                target = graded_piece(
                    system, IDEAL_J, system.grading.scaled_beta(a + b)
                )
                if target.dim != 0:
                    raise SocleNotOneDimensional(target.dim, r0_piece.dim)
                if a + b not in zero_sums:
                    zero_sums.append(a + b)
                continue
            target = bases[a + b]
            tensor = []
            for mono_i in bases[a].basis:
                row = []
                for mono_j in bases[b].basis:
                    product = tuple(x + y for x, y in zip(mono_i, mono_j))
                    row.append(
                        normal_form(
                            GradedPolynomial.monomial(system.variables, product),
                            target,
                        )
                    )
                tensor.append(row)
            structure[(a, b)] = tensor

    polytope = anticanonical_polytope(system.fan)
    volume = normalized_volume(polytope, system.fan)

    generator_monomial: Monomial | None = None
    if strategy == GENERIC:
        # graded-lex-least quotient basis monomial of R0(f)_{m beta}
        generator_monomial = r0_piece.basis[0]
        generator_coord = Fraction(1)
    else:
        if not _is_standard_projective_fan(system.fan):
            raise HessianGeneratorZero(
                "projective-hessian strategy requires the standard projective fan"
            )
        hess = _hessian_determinant(system)
        gen_poly = hess.mul_monomial(_all_ones(len(system.variables)))
        coords = normal_form(gen_poly, r0_piece)
        if not coords or coords[0] == 0:
            raise HessianGeneratorZero(
                "z_1...z_r * det of second partials reduces to 0 in R0(f)_{m beta}"
            )
        generator_coord = coords[0]

    return FrobeniusAlgebraData(
        system=system,
        strategy=strategy,
        m=m,
        volume=volume,
        bases=bases,
        structure=structure,
        r0_piece=r0_piece,
        generator_coord=generator_coord,
        generator_monomial=generator_monomial,
        zero_sums_checked=zero_sums,
    )


def trace(U: Sequence[Fraction], D: FrobeniusAlgebraData) -> TraceScalar:
    """Trace of a socle class given by coordinates in the degree-(m-1) basis."""
    socle = D.bases[D.m - 1]
    if len(U) != socle.dim:
        raise DegreeMismatch(
            f"expected {socle.dim} socle coordinates, got {len(U)}"
        )
    lifted = D.lift(D.m - 1, U)
    shifted = lifted.mul_monomial(_all_ones(len(D.system.variables)))
    coords = normal_form(shifted, D.r0_piece)
    c = (coords[0] if coords else Fraction(0)) / D.generator_coord
    rational = D.sign * c * D.volume
    return TraceScalar(Fraction(rational), D.m - 1, D.sign)


def trace_of_polynomial(p: GradedPolynomial, D: FrobeniusAlgebraData) -> TraceScalar:
    """Trace of a degree-(m-1)beta polynomial, reduced directly in R0: an
    independent path that never touches the structure constants."""
    shifted = p.mul_monomial(_all_ones(len(D.system.variables)))
    coords = normal_form(shifted, D.r0_piece)
    c = (coords[0] if coords else Fraction(0)) / D.generator_coord
    return TraceScalar(Fraction(D.sign * c * D.volume), D.m - 1, D.sign)


def pairing_gram(D: FrobeniusAlgebraData, a: int) -> list[list[TraceScalar]]:
    """Gram matrix G_a: traces of products of degree-a and degree-(m-1-a)
    basis elements."""
    if not 0 <= a <= D.m - 1:
        raise DegreeMismatch(f"degree {a} outside 0..{D.m - 1}")
    b = D.m - 1 - a
    dim_a, dim_b = D.bases[a].dim, D.bases[b].dim
    gram = []
    for i in range(dim_a):
        u = [Fraction(1 if k == i else 0) for k in range(dim_a)]
        row = []
        for j in range(dim_b):
            v = [Fraction(1 if k == j else 0) for k in range(dim_b)]
            row.append(trace(D.product_coords(a, u, b, v), D))
        gram.append(row)
    return gram


def mul_twisted(
    a: int,
    u: Sequence[Fraction],
    b: int,
    v: Sequence[Fraction],
    D: FrobeniusAlgebraData,
) -> list[Fraction]:
    """(-1)^b times the product coordinates; defined for a + b = m - 1."""
    if a + b != D.m - 1:
        raise DegreeMismatch(f"degrees {a} + {b} != {D.m - 1}")
    sign = (-1) ** b
    return [sign * c for c in D.product_coords(a, u, b, v)]


@dataclass
class AxiomCheck:
    ok: bool
    checked: int = 0
    witness: str | None = None


@dataclass
class AxiomReport:
    unit: AxiomCheck
    commutativity: AxiomCheck
    associativity: AxiomCheck
    invariance: AxiomCheck
    nondegeneracy: AxiomCheck
    sampled: bool = False
    seed: int | None = None

    @property
    def all_pass(self) -> bool:
        return all(
            c.ok
            for c in (
                self.unit,
                self.commutativity,
                self.associativity,
                self.invariance,
                self.nondegeneracy,
            )
        )

    def as_dict(self) -> dict:
        out = {
            name: {"pass": c.ok, "checked": c.checked, "witness": c.witness}
            for name, c in (
                ("unit", self.unit),
                ("commutativity", self.commutativity),
                ("associativity", self.associativity),
                ("invariance", self.invariance),
                ("nondegeneracy", self.nondegeneracy),
            )
        }
        out["sampled"] = self.sampled
        out["seed"] = self.seed
        return out


EXHAUSTIVE_TRIPLE_LIMIT = 10_000


def frobenius_axiom_check(
    D: FrobeniusAlgebraData, sample_seed: int = 0, sample_count: int = 200
) -> AxiomReport:
    """Certify the Frobenius axioms on D.

    Unit and commutativity are exact over all stored structure constants.
    Associativity runs over every basis triple when the triple count is at
    most 10^4, otherwise over seeded samples; invariance compares the
    structure-constant path against direct polynomial reduction.
    Nondegeneracy is exact full rank of every Gram matrix.
    """
    m = D.m
    dims = D.dims()

    unit = _check_unit(D)
    comm = _check_commutativity(D)

    triples = [
        (a, b, c)
        for a in range(m)
        for b in range(m)
        for c in range(m)
        if a + b + c <= m - 1
    ]
    total = sum(dims[a] * dims[b] * dims[c] for a, b, c in triples)
    sampled = total > EXHAUSTIVE_TRIPLE_LIMIT
    rng = random.Random(sample_seed)

    assoc = _check_associativity(D, triples, sampled, rng, sample_count)
    inv = _check_invariance(D, sampled, rng, sample_count)
    nondeg = _check_nondegeneracy(D)

    return AxiomReport(unit, comm, assoc, inv, nondeg, sampled, sample_seed)


def _unit_vector(n: int, i: int) -> list[Fraction]:
    return [Fraction(1 if k == i else 0) for k in range(n)]


def _check_unit(D: FrobeniusAlgebraData) -> AxiomCheck:
    checked = 0
    for b in range(D.m):
        tensor = D.structure.get((0, b))
        if tensor is None:
            continue
        for j in range(D.bases[b].dim):
            checked += 1
            coords = tensor[0][j]
            want = _unit_vector(D.bases[b].dim, j)
            if list(coords) != want:
                return AxiomCheck(
                    False, checked, f"1 * basis[{b}][{j}] = {coords}, expected {want}"
                )
    return AxiomCheck(True, checked)


def _check_commutativity(D: FrobeniusAlgebraData) -> AxiomCheck:
    checked = 0
    for a in range(D.m):
        tensor = D.structure.get((a, a))
        if tensor is None:
            continue
        n = D.bases[a].dim
        for i in range(n):
            for j in range(i + 1, n):
                checked += 1
                if tensor[i][j] != tensor[j][i]:
                    return AxiomCheck(
                        False,
                        checked,
                        f"degree {a}: basis[{i}]*basis[{j}] != basis[{j}]*basis[{i}]",
                    )
    return AxiomCheck(True, checked)


def _check_associativity(D, triples, sampled, rng, sample_count) -> AxiomCheck:
    dims = D.dims()

    def one(a, i, b, j, c, k):
        u = _unit_vector(dims[a], i)
        v = _unit_vector(dims[b], j)
        w = _unit_vector(dims[c], k)
        uv = D.product_coords(a, u, b, v)
        lhs = D.product_coords(a + b, uv, c, w) if a + b < D.m else []
        vw = D.product_coords(b, v, c, w)
        rhs = D.product_coords(a, u, b + c, vw) if b + c < D.m else []
        if a + b >= D.m:
            lhs = [Fraction(0)] * dims[a + b + c] if a + b + c < D.m else []
        if b + c >= D.m:
            rhs = [Fraction(0)] * dims[a + b + c] if a + b + c < D.m else []
        return lhs == rhs, (a, i, b, j, c, k)

    checked = 0
    if not sampled:
        for a, b, c in triples:
            for i in range(dims[a]):
                for j in range(dims[b]):
                    for k in range(dims[c]):
                        ok, wit = one(a, i, b, j, c, k)
                        checked += 1
                        if not ok:
                            return AxiomCheck(
                                False, checked, f"(a,i,b,j,c,k) = {wit}"
                            )
        return AxiomCheck(True, checked)

    usable = [t for t in triples if dims[t[0]] and dims[t[1]] and dims[t[2]]]
    for _ in range(sample_count):
        a, b, c = usable[rng.randrange(len(usable))]
        i = rng.randrange(dims[a])
        j = rng.randrange(dims[b])
        k = rng.randrange(dims[c])
        ok, wit = one(a, i, b, j, c, k)
        checked += 1
        if not ok:
            return AxiomCheck(False, checked, f"(a,i,b,j,c,k) = {wit}")
    return AxiomCheck(True, checked)


def _check_invariance(D, sampled, rng, sample_count) -> AxiomCheck:
    """<u*v, w> = <u, v*w>, both recomputed against the direct trace of the
    lifted triple-product polynomial."""
    m = D.m
    dims = D.dims()
    degree_triples = [
        (a, b, c)
        for a in range(m)
        for b in range(m)
        for c in range(m)
        if a + b + c == m - 1 and dims[a] and dims[b] and dims[c]
    ]
    if not degree_triples:
        return AxiomCheck(True, 0)

    def random_vector(n):
        return [Fraction(rng.randint(-3, 3)) for _ in range(n)]

    checked = 0
    for _ in range(sample_count):
        a, b, c = degree_triples[rng.randrange(len(degree_triples))]
        u = random_vector(dims[a])
        v = random_vector(dims[b])
        w = random_vector(dims[c])
        lhs = trace(D.product_coords(a + b, D.product_coords(a, u, b, v), c, w), D)
        rhs = trace(D.product_coords(a, u, b + c, D.product_coords(b, v, c, w)), D)
        direct = trace_of_polynomial(
            D.lift(a, u) * D.lift(b, v) * D.lift(c, w), D
        )
        checked += 1
        if not (lhs.rational == rhs.rational == direct.rational):
            return AxiomCheck(
                False,
                checked,
                f"degrees {(a, b, c)}: {lhs.rational} vs {rhs.rational} "
                f"vs direct {direct.rational}",
            )
    return AxiomCheck(True, checked)


def _check_nondegeneracy(D: FrobeniusAlgebraData) -> AxiomCheck:
    checked = 0
    for a in range(D.m):
        gram = pairing_gram(D, a)
        rows = len(gram)
        cols = len(gram[0]) if gram else 0
        checked += 1
        if rows != cols:
            return AxiomCheck(
                False, checked, f"G_{a} is {rows}x{cols}, not square"
            )
        rational = [[entry.rational for entry in row] for row in gram]
        if rows and linalg.rank_rational(rational) != rows:
            return AxiomCheck(False, checked, f"G_{a} is singular")
    return AxiomCheck(True, checked)


def hodge_row(D: FrobeniusAlgebraData) -> list[int]:
    """Predicted primitive Hodge numbers: (dim R(f)_{a beta})_{a=0}^{m-1}."""
    return D.dims()
