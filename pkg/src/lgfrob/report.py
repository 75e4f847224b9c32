"""Run configuration, orchestration and the consolidated certificate report.

Input and report documents are JSON; rationals are serialized as strings
"p/q" so nothing is ever rounded.  Reports are deterministic for a fixed
(input, seed): per-stage timings are the only non-reproducible field, and
they are omitted in json-only mode.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import frobenius, jacobian, toric
from .errors import InputSchemaError, LgfrobError
from .fixtures import SCHEMA_VERSION, unimodular_transform
from .poly import GradedPolynomial, check_homogeneous, parse_polynomial
from .toric import FanData


@dataclass
class RunConfig:
    fan: FanData
    variables: tuple[str, ...]
    poly_text: str
    name: str = "custom"
    zero_sets: tuple[tuple[str, ...], ...] = ()
    expected_fail: str | None = None
    strategy: str = frobenius.GENERIC
    sample_seed: int = 0
    sample_count: int = 200
    macaulay_max_extra: int = 1
    max_degree_a: int | None = None
    threads: int = 1
    modular_prefilter: bool = True
    json_only: bool = False
    # stated degree data to compare against, when the input carries it
    stated_degrees: tuple[tuple[int, ...], ...] | None = None
    stated_beta: tuple[int, ...] | None = None


def _expect(doc: dict, key: str, kind, context: str):
    if key not in doc:
        raise InputSchemaError(f"{context}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise InputSchemaError(
            f"{context}: field {key!r} must be {kind.__name__}"
        )
    return value


def parse_run_config(doc, overrides: dict | None = None) -> RunConfig:
    """Validate an input document (parsed JSON) into a RunConfig."""
    if not isinstance(doc, dict):
        raise InputSchemaError("input document must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise InputSchemaError(f"unsupported schema_version {version}")
    fan_doc = _expect(doc, "fan", dict, "input")
    dim = _expect(fan_doc, "dim", int, "fan")
    rays = _expect(fan_doc, "rays", list, "fan")
    cones = _expect(fan_doc, "max_cones", list, "fan")
    try:
        rays = [tuple(int(x) for x in r) for r in rays]
        cones = [tuple(int(i) for i in c) for c in cones]
    except (TypeError, ValueError) as exc:
        raise InputSchemaError(f"fan: non-integer entry ({exc})") from exc
    try:
        fan = FanData(dim, rays, cones)
    except LgfrobError as exc:
        raise InputSchemaError(f"fan: {exc}") from exc
    variables = _expect(doc, "variables", list, "input")
    if not all(isinstance(v, str) for v in variables):
        raise InputSchemaError("variables must be strings")
    if len(set(variables)) != len(variables):
        raise InputSchemaError("variable names must be distinct")
    if len(variables) != fan.n_rays:
        raise InputSchemaError(
            f"{len(variables)} variables for {fan.n_rays} rays"
        )
    poly_text = _expect(doc, "polynomial", str, "input")

    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise InputSchemaError("options must be an object")
    config = RunConfig(
        fan=fan,
        variables=tuple(variables),
        poly_text=poly_text,
        name=str(doc.get("name", "custom")),
        zero_sets=tuple(
            tuple(str(v) for v in s) for s in doc.get("zero_sets", [])
        ),
        expected_fail=doc.get("expected_fail"),
    )
    merged = dict(options)
    merged.update(overrides or {})
    for key, value in merged.items():
        if key == "trace_strategy" or key == "strategy":
            if value not in frobenius.STRATEGIES:
                raise InputSchemaError(f"unknown trace strategy {value!r}")
            config.strategy = value
        elif key == "sample_seed":
            config.sample_seed = int(value)
        elif key == "sample_count":
            count = int(value)
            if count < 1:
                raise InputSchemaError("sample_count must be positive")
            config.sample_count = count
        elif key == "macaulay_max_extra":
            extra = int(value)
            if extra < 0:
                raise InputSchemaError("macaulay_max_extra must be >= 0")
            config.macaulay_max_extra = extra
        elif key == "max_degree_a":
            config.max_degree_a = None if value is None else int(value)
        elif key == "threads":
            threads = int(value)
            if threads < 1:
                raise InputSchemaError("threads must be >= 1")
            config.threads = threads
        elif key == "modular_prefilter":
            config.modular_prefilter = bool(value)
        elif key == "json_only":
            config.json_only = bool(value)
        else:
            raise InputSchemaError(f"unknown option {key!r}")

    stated = doc.get("stated_degrees")
    if stated is not None:
        config.stated_degrees = tuple(tuple(int(x) for x in d) for d in stated)
    beta = doc.get("stated_beta")
    if beta is not None:
        config.stated_beta = tuple(int(x) for x in beta)
    return config


# ---------------------------------------------------------------------------
# serialization helpers


def frac_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def trace_dict(t: frobenius.TraceScalar) -> dict:
    return {"rational": frac_str(t.rational), "unit_exponent": t.unit_exponent}


class _Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    def stage(self, name: str):
        timer = self
        start = time.perf_counter()

        class _Ctx:
            def __enter__(self):
                return self

            def __exit__(self, *exc):
                timer.stages[name] = round(time.perf_counter() - start, 6)
                return False

        return _Ctx()


GRAM_ENTRY_LIMIT = 12


# ---------------------------------------------------------------------------
# orchestration


def run_validate(config: RunConfig) -> tuple[dict, bool]:
    """Validation, grading, polytope and topology; no Jacobian work."""
    timer = _Timer()
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "command": "validate",
        "name": config.name,
    }
    with timer.stage("validate"):
        vrep = toric.validate_fan(config.fan)
    report["validation"] = vrep.as_dict()
    report["validation_pass"] = vrep.all_pass
    if not vrep.all_pass:
        if not config.json_only:
            report["timings"] = timer.stages
        return report, False

    with timer.stage("grading"):
        grading = toric.class_group(config.fan)
    report["grading"] = {
        "rank": grading.rank,
        "degrees": [list(d) for d in grading.degrees],
        "beta": list(grading.beta),
    }
    if config.stated_degrees is not None:
        t = unimodular_transform(grading.degrees, config.stated_degrees)
        report["stated_degrees"] = {
            "degrees": [list(d) for d in config.stated_degrees],
            "unimodular_transform": t,
            "match": t is not None,
        }
    with timer.stage("polytope"):
        polytope = toric.anticanonical_polytope(config.fan)
        volume = toric.normalized_volume(polytope, config.fan)
    report["polytope"] = {
        "vertices": [list(v) for v in polytope.vertices],
        "normalized_volume": volume,
    }
    with timer.stage("topology"):
        report["betti"] = toric.betti_numbers(config.fan)
        report["extraisom"] = toric.extraisom_necessary_check(config.fan)
    if not config.json_only:
        report["timings"] = timer.stages
    return report, True


def run_report(config: RunConfig) -> tuple[dict, int]:
    """Full pipeline; returns (report, exit_code) with the documented
    contract: 0 ok, 3 validation failure, 4 mathematical certificate
    failure.  Schema errors raise before this point (exit 2)."""
    report, ok = run_validate(config)
    report["command"] = "report"
    if not ok:
        return report, 3

    timer = _Timer()
    grading = toric.class_group(config.fan)
    m = config.fan.dim
    failures: list[str] = []

    try:
        with timer.stage("potential"):
            f = parse_polynomial(config.poly_text, config.variables)
            degree = check_homogeneous(f, grading)
            system = jacobian.jacobian_system(config.fan, grading, f)
            system.use_prefilter = config.modular_prefilter
    except LgfrobError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["certificates_pass"] = False
        if not config.json_only:
            report["timings"] = timer.stages
        return report, 4
    report["potential"] = {"text": config.poly_text, "degree": list(degree)}

    cap = config.max_degree_a if config.max_degree_a is not None else m - 1
    capped = cap < m - 1
    with timer.stage("dims"):
        dims = [jacobian.dim_R(system, a) for a in range(min(cap, m - 1) + 1)]
    report["dims"] = dims
    report["capped"] = capped
    report["max_degree_a"] = cap

    with timer.stage("euler"):
        euler = jacobian.euler_membership_check(system)
    report["euler"] = {
        "functional": list(euler.functional),
        "scale": euler.scale,
        "pass": euler.ok,
    }
    if not euler.ok:
        failures.append("euler_membership")

    if config.zero_sets:
        with timer.stage("crit_containment"):
            crit = jacobian.crit_containment_check(system, config.zero_sets)
        report["crit_containment"] = [
            {"zero_set": list(r.zero_set), "pass": r.ok, "witness": r.witness}
            for r in crit
        ]
        failures.extend(
            f"crit_containment:{','.join(r.zero_set)}" for r in crit if not r.ok
        )

    if capped:
        # middle graded pieces out of scope for this run: no socle, algebra
        # or axiom certificates
        report["hypotheses"] = {
            "quasi_smoothness": "not-evaluated (capped run)",
            "non_degeneracy": "asserted",
        }
        report["certificates_pass"] = not failures
        report["failures"] = failures
        if not config.json_only:
            report["timings"] = timer.stages
        return report, 0 if not failures else 4

    report["hodge_row"] = dims

    with timer.stage("macaulay"):
        mac_dims = {
            p: jacobian.dim_R(system, p)
            for p in range(m, m + 1 + config.macaulay_max_extra)
        }
    mac_ok = all(d == 0 for d in mac_dims.values())
    report["macaulay"] = {
        "dims": {str(p): d for p, d in mac_dims.items()},
        "pass": mac_ok,
    }
    if not mac_ok:
        failures.append("macaulay_vanishing")

    with timer.stage("socle"):
        socle = jacobian.socle_certificates(system)
    report["socle"] = {
        "dim_r": socle.dim_r,
        "dim_r0": socle.dim_r0,
        "generator_r": list(socle.generator_r) if socle.generator_r else None,
        "generator_r0": list(socle.generator_r0) if socle.generator_r0 else None,
        "pass": socle.ok,
    }
    if not socle.ok:
        failures.append("socle_certificates")
        report["hypotheses"] = {
            "quasi_smoothness": "inconsistent",
            "non_degeneracy": "asserted",
        }
        report["certificates_pass"] = False
        report["failures"] = failures
        if not config.json_only:
            report["timings"] = timer.stages
        return report, 4

    try:
        with timer.stage("algebra"):
            algebra = frobenius.build_algebra(system, config.strategy)
    except LgfrobError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["certificates_pass"] = False
        if not config.json_only:
            report["timings"] = timer.stages
        return report, 4

    socle_trace = frobenius.trace(
        [Fraction(1)] + [Fraction(0)] * (algebra.bases[m - 1].dim - 1), algebra
    )
    report["algebra"] = {
        "strategy": algebra.strategy,
        "volume": algebra.volume,
        "sign_convention": algebra.sign,
        "generator_monomial": (
            list(algebra.generator_monomial)
            if algebra.generator_monomial is not None
            else None
        ),
        "generator_coord": frac_str(algebra.generator_coord),
        "socle_generator_trace": trace_dict(socle_trace),
        "zero_sums_checked": algebra.zero_sums_checked,
    }

    with timer.stage("gram"):
        gram_section = {}
        for a in range(m):
            gram = frobenius.pairing_gram(algebra, a)
            rows = len(gram)
            cols = len(gram[0]) if gram else 0
            entry: dict = {"shape": [rows, cols]}
            rational = [[e.rational for e in row] for row in gram]
            from . import linalg

            entry["rank"] = linalg.rank_rational(rational) if rows else 0
            entry["nondegenerate"] = rows == cols and entry["rank"] == rows
            if rows * cols and rows <= GRAM_ENTRY_LIMIT and cols <= GRAM_ENTRY_LIMIT:
                entry["entries"] = [[frac_str(x) for x in row] for row in rational]
            gram_section[str(a)] = entry
    report["gram"] = gram_section
    report["gram_unit_exponent"] = m - 1

    with timer.stage("axioms"):
        axioms = frobenius.frobenius_axiom_check(
            algebra, config.sample_seed, config.sample_count
        )
    report["axioms"] = axioms.as_dict()
    if not axioms.all_pass:
        failures.append("frobenius_axioms")

    report["hypotheses"] = {
        "quasi_smoothness": "consistent" if (mac_ok and socle.ok) else "inconsistent",
        "non_degeneracy": "asserted",
    }
    report["certificates_pass"] = not failures
    report["failures"] = failures
    if not config.json_only:
        report["timings"] = timer.stages
    return report, 0 if not failures else 4


def run_dims(config: RunConfig) -> tuple[dict, int]:
    """Validation plus graded dimensions only."""
    report, ok = run_validate(config)
    report["command"] = "dims"
    if not ok:
        return report, 3
    grading = toric.class_group(config.fan)
    m = config.fan.dim
    try:
        f = parse_polynomial(config.poly_text, config.variables)
        check_homogeneous(f, grading)
        system = jacobian.jacobian_system(config.fan, grading, f)
        system.use_prefilter = config.modular_prefilter
        cap = config.max_degree_a if config.max_degree_a is not None else m - 1
        report["dims"] = [
            jacobian.dim_R(system, a) for a in range(min(cap, m - 1) + 1)
        ]
        report["capped"] = cap < m - 1
    except LgfrobError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return report, 4
    return report, 0


def run_gram(config: RunConfig) -> tuple[dict, int]:
    """Validation, algebra build and Gram matrices only."""
    report, exit_code = run_report(config)
    report["command"] = "gram"
    if exit_code != 0:
        return report, exit_code
    keep = {
        "schema_version",
        "command",
        "name",
        "validation_pass",
        "grading",
        "dims",
        "gram",
        "gram_unit_exponent",
        "algebra",
        "certificates_pass",
        "timings",
    }
    trimmed = {k: v for k, v in report.items() if k in keep}
    return trimmed, exit_code
