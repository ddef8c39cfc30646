#!/usr/bin/env python
"""
Suites: seeded law-suite runner, report serialization and failure replay.

Report lines, sorted:
  PASS <law> seed=<n> case=all checks=<k>     one per law without failures
  FAIL <law> seed=<n> case=<json>              one per failing check

The JSON case holds the named inputs of the check with rationals as "p/q"
and elements in the space's own encoding; keys are sorted. The same
(space, seed, cases) always yields the same report.
"""
# ========================================================
# IMPORTS
# ========================================================
import itertools
import json
import logging
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from cst.giry import Dist, check_algebra_laws, dist_make, dist_unit, random_nested_dist
from cst.kernel import (
    DomainError,
    LawFailure,
    LawReport,
    SpaceHandle,
    check_associativity,
    check_nary,
    check_pair_laws,
    random_coeff,
    random_weights,
)
from cst.lawvere import (
    StoMatrix,
    check_correspondence_roundtrip,
    check_functor_case,
    check_generator_case,
    check_lawvere_functoriality,
    check_roundtrip_cc,
    check_roundtrip_structure,
    sto_make,
)
from cst.semilattice import check_coefficient_change
from cst.utils import format_rational, parse_rational

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.suites")

SUITE_NAMES = ("laws", "algebra", "lawvere", "coefficient-change", "roundtrip")

_ELEMENT_KEYS = ("x", "y", "z")
_ELEMENT_SEQ_KEYS = ("xs", "ys")
_DIST_DEPTH = {"d": 1, "nested": 2}
_PAIR_LAWS = ("unit-law", "unit-law-one", "idempotency", "parametric-commutativity")
_NARY_LAWS = ("nary-binary", "nary-bracketing")
_ALGEBRA_LAWS = ("algebra-associativity", "algebra-unit")
_COEFFICIENT_LAWS = ("coefficient-flatten", "coefficient-unit")
_FUNCTOR_LAWS = ("lawvere-identity", "lawvere-functoriality", "product-projection",
                 "product-inclusion", "product-tensor", "lawvere-finmap")
_GENERATOR_LAWS = ("generator-copy", "generator-delete", "generator-swap", "generator-c-lambda")


# ========================================================
# CLASSES
# ========================================================
@dataclass
class SuiteResult:
    suite: str
    space_id: str
    seed: int
    cases: int
    checked: int
    failures: list[LawFailure] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    @property
    def exit_status(self) -> int:
        return 0 if not self.failures else 1

    @property
    def failed_laws(self) -> list[str]:
        return sorted({f.law for f in self.failures})

    def report_text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


# ========================================================
# SERIALIZATION
# ========================================================
def _plain(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, StoMatrix):
        return [[format_rational(v) for v in row] for row in value.entries]
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return repr(value)


def _encode_dist(space: SpaceHandle, d: Dist, depth: int):
    return [[_encode_dist(space, p, depth - 1) if depth > 1 else space.encode(p), format_rational(w)]
            for p, w in d.support]


def encode_case(space: SpaceHandle, failure: LawFailure) -> dict:
    """Named inputs of *failure* as a JSON-ready dict."""
    out = {}
    for key, value in failure.inputs:
        if key in _ELEMENT_KEYS:
            out[key] = space.encode(value)
        elif key in _ELEMENT_SEQ_KEYS:
            out[key] = [space.encode(v) for v in value]
        elif key in _DIST_DEPTH:
            out[key] = _encode_dist(space, value, _DIST_DEPTH[key])
        else:
            out[key] = _plain(value)
    return out


def dump_case(case: dict) -> str:
    return json.dumps(case, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def report_lines(space: SpaceHandle, report: LawReport, seed: int) -> list[str]:
    failing = set()
    lines = []
    for failure in report.failures:
        failing.add(failure.law)
        lines.append(f"FAIL {failure.law} seed={seed} case={dump_case(encode_case(space, failure))}")
    for law, count in report.counts.items():
        if law not in failing:
            lines.append(f"PASS {law} seed={seed} case=all checks={count}")
    return sorted(lines)


# ========================================================
# SUITES
# ========================================================
def _laws_suite(space: SpaceHandle, rng: random.Random, cases: int) -> LawReport:
    report = LawReport()
    for case in range(cases):
        x, y, z = space.draw(rng), space.draw(rng), space.draw(rng)
        lam, mu = random_coeff(rng), random_coeff(rng)
        check_pair_laws(space, lam, x, y, report)
        check_associativity(space, lam, mu, x, y, z, report)
        n = 2 + case % 4
        check_nary(space, random_weights(rng, n), [space.draw(rng) for _ in range(n)], report)
    return report


def carrier_nested_dists(elements: Sequence) -> Iterator[Dist]:
    """½x̲ + ½(½y̲ + ½z̲) for every x and every pair y ≠ z of a finite carrier."""
    half = Fraction(1, 2)
    for x in elements:
        for y, z in itertools.combinations(elements, 2):
            yield dist_make([(dist_unit(x), half), (dist_make([(y, half), (z, half)]), half)])


def _nested_samples(space: SpaceHandle, rng: random.Random, cases: int, depth: int = 2) -> list[Dist]:
    samples = []
    if space.elements is not None and depth == 2:
        samples.extend(itertools.islice(carrier_nested_dists(space.elements), cases))
    for _ in range(cases - len(samples)):
        points = [space.draw(rng) for _ in range(4)]
        samples.append(random_nested_dist(rng, points, depth=depth))
    return samples


def _algebra_suite(space, rng, cases):
    return check_algebra_laws(space, _nested_samples(space, rng, cases))


def _lawvere_suite(space, rng, cases):
    return check_lawvere_functoriality(space, dims=4, cases=cases, seed=rng.randrange(2**32))


def _coefficient_suite(space, rng, cases):
    return check_coefficient_change(_nested_samples(space, rng, cases))


def _roundtrip_suite(space, rng, cases):
    samples = [space.draw(rng) for _ in range(6)]
    return check_correspondence_roundtrip(space, samples, seed=rng.randrange(2**32), dist_cases=cases)


_SUITES = {
    "laws": _laws_suite,
    "algebra": _algebra_suite,
    "lawvere": _lawvere_suite,
    "coefficient-change": _coefficient_suite,
    "roundtrip": _roundtrip_suite,
}


def run_suite(name: str, space: SpaceHandle, seed: int, cases: int) -> SuiteResult:
    """Run suite *name* on *space*; deterministic in (name, space, seed, cases)."""
    suite = _SUITES.get(name)
    if suite is None:
        raise DomainError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}")
    if cases < 1:
        raise DomainError(f"cases must be ≥ 1, got {cases}")
    report = suite(space, random.Random(seed), cases)
    result = SuiteResult(
        suite=name,
        space_id=space.space_id,
        seed=seed,
        cases=cases,
        checked=report.checked_cases,
        failures=list(report.failures),
        lines=report_lines(space, report, seed),
    )
    _log.info("suite %s on %s (seed=%d, cases=%d): %d checks, %d failures",
              name, space.space_id, seed, cases, result.checked, len(result.failures))
    return result


# ========================================================
# REPLAY
# ========================================================
def _decode_dist(space: SpaceHandle, obj, depth: int) -> Dist:
    if not isinstance(obj, list) or not all(isinstance(pw, list) and len(pw) == 2 for pw in obj):
        raise DomainError(f"expected a list of [point, weight] pairs, got {obj!r}")
    return dist_make((space.decode(p) if depth == 1 else _decode_dist(space, p, depth - 1), w)
                     for p, w in obj)


def _decode_matrix(obj) -> StoMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(row, list) for row in obj):
        raise DomainError(f"expected a nonempty list of matrix rows, got {obj!r}")
    return sto_make(len(obj), len(obj[0]), obj)


def _replay_nested(check, space: SpaceHandle, case: dict, report: LawReport) -> None:
    if "nested" in case:
        dd = _decode_dist(space, case["nested"], 2)
    else:
        dd = dist_unit(dist_unit(space.decode(case["x"])))
    report.merge(check([dd]))


def replay_failure(space: SpaceHandle, law: str, case: dict | str) -> LawReport:
    """Re-run *law* on the inputs of a serialized failure line.

    Returns a report restricted to *law*; a reproduced failure shows up in
    its ``failures``. Every law a suite reports can be replayed.
    """
    if isinstance(case, str):
        case = json.loads(case)
    if space.decode is None:
        raise DomainError(f"{space.space_id} cannot decode elements")

    def element(key):
        return space.decode(case[key])

    def elements(key):
        return tuple(space.decode(x) for x in case[key])

    def coefficient(key, default="1/2"):
        return parse_rational(case.get(key, default))

    full = LawReport()
    try:
        if law in _PAIR_LAWS:
            x = element("x")
            y = element("y") if "y" in case else x
            check_pair_laws(space, coefficient("lambda"), x, y, full)
        elif law == "deformed-associativity":
            check_associativity(space, coefficient("lambda"), coefficient("mu"),
                                element("x"), element("y"), element("z"), full)
        elif law in _NARY_LAWS:
            check_nary(space, [parse_rational(w) for w in case["weights"]], elements("xs"), full)
        elif law in _ALGEBRA_LAWS:
            _replay_nested(lambda samples: check_algebra_laws(space, samples), space, case, full)
        elif law in _COEFFICIENT_LAWS:
            _replay_nested(check_coefficient_change, space, case, full)
        elif law in _FUNCTOR_LAWS:
            check_functor_case(space, _decode_matrix(case["A"]), _decode_matrix(case["B"]),
                               elements("xs"), elements("ys"), case["split"], case["f"], full)
        elif law in _GENERATOR_LAWS:
            x = element("x")
            check_generator_case(space, coefficient("lambda"), x,
                                 element("y") if "y" in case else x, full)
        elif law == "roundtrip-cc":
            check_roundtrip_cc(space, coefficient("lambda"), element("x"), element("y"), full)
        elif law == "roundtrip-structure":
            check_roundtrip_structure(space, _decode_dist(space, case["d"], 1), elements("xs"), full)
        else:
            raise DomainError(f"law {law!r} cannot be replayed")
    except KeyError as e:
        raise DomainError(f"case for {law!r} lacks the input {e.args[0]!r}") from e

    report = LawReport()
    report.checked_cases = full.counts[law]
    report.counts[law] = full.counts[law]
    report.failures = [f for f in full.failures if f.law == law]
    return report


def parse_report_line(line: str) -> tuple[str, str, int, dict | None]:
    """Split a report line into (status, law, seed, case); case is None for PASS lines."""
    status, law, seed_part, case_part = line.rstrip("\n").split(" ", 3)
    seed = int(seed_part.removeprefix("seed="))
    if status == "PASS":
        return status, law, seed, None
    return status, law, seed, json.loads(case_part.removeprefix("case="))
