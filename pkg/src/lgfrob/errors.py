"""Exception hierarchy shared by all lgfrob modules."""

from __future__ import annotations


class LgfrobError(Exception):
    """Base class for all library errors."""


class PolySyntaxError(LgfrobError):
    """Malformed polynomial text; carries the 0-based offset of the error."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownVariable(LgfrobError):
    def __init__(self, name: str, position: int = -1):
        super().__init__(f"unknown variable {name!r}")
        self.name = name
        self.position = position


class NotHomogeneous(LgfrobError):
    """Polynomial mixes monomials of distinct class-group degrees."""

    def __init__(self, mono_a, deg_a, mono_b, deg_b):
        super().__init__(
            f"monomial {mono_a} has degree {deg_a} but {mono_b} has degree {deg_b}"
        )
        self.witness = (mono_a, deg_a, mono_b, deg_b)


class DegreeMismatch(LgfrobError):
    pass


class TorsionClassGroup(LgfrobError):
    """Cokernel of the ray matrix has torsion; unsupported by the grading code."""

    def __init__(self, invariant_factors):
        super().__init__(f"class group has torsion: invariant factors {invariant_factors}")
        self.invariant_factors = tuple(invariant_factors)


class InvalidFan(LgfrobError):
    pass


class NotReflexivePipeline(LgfrobError):
    """A vertex of the anti-canonical polytope violates one of its own inequalities."""


class DegeneratePolytope(LgfrobError):
    pass


class SocleNotOneDimensional(LgfrobError):
    def __init__(self, dim_r, dim_r0):
        super().__init__(
            f"socle certificates failed: dim R(f)_(m-1)b = {dim_r}, dim R0(f)_mb = {dim_r0}"
        )
        self.dims = (dim_r, dim_r0)


class HessianGeneratorZero(LgfrobError):
    pass


class NoFunctional(LgfrobError):
    pass


class InputSchemaError(LgfrobError):
    pass
