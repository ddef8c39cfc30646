#!/usr/bin/env python
"""
Descriptor: JSON space descriptors → SpaceHandle.

Every descriptor is an object with a ``kind``:

  vector            {"kind": "vector", "dim": 2}
  simplex           {"kind": "simplex", "n": 3}
  free              {"kind": "free", "carrier": ["a", "b", "c"]}
  semilattice       {"kind": "semilattice", "elements": ["i", "f"], "meet": [[0, 0], [0, 1]]}
                    {"kind": "semilattice", "divisors_of": 36}
  fibered           {"kind": "fibered", "base": {...semilattice...},
                     "fibers": {"<element>": {...descriptor...}, ...},
                     "transports": [{"from": s', "to": s, "matrix": [[...]], "offset": [...]}
                                    | {"from": s', "to": s, "constant": <element>}]}
  face-classifier   {"kind": "face-classifier"}
  adjoin-infinity   {"kind": "adjoin-infinity", "space": {...descriptor...}}
  lottery, intervals, point, line, unit-interval
  product           {"kind": "product", "factors": [{...}, ...]}
  metrics           {"kind": "metrics", "n": 3}
  table             {"kind": "table", "elements": [...], "table": [[...]]}
                    interior-λ operation table, taken as given without validation

Rationals are written as "p/q" strings (integers are accepted as well).
"""
# ========================================================
# IMPORTS
# ========================================================
import json
import logging
import random
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from cst.geometric import (
    intervals_space,
    metrics_space,
    rational_line,
    simplex_space,
    unit_interval,
    vector_space,
)
from cst.giry import free_space
from cst.kernel import ConvexSpaceError, DomainError, SpaceHandle, point_space, product_space
from cst.mixed import adjoin_infinity, face_classifier, fibered_space_make, lottery_space
from cst.semilattice import divisor_semilattice, semilattice_make, semilattice_space
from cst.utils import encode_token, parse_rational, token_lookup

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.descriptor")

_BUILDERS: dict[str, Callable[[dict, str], SpaceHandle]] = {}


# ========================================================
# ERRORS
# ========================================================
class DescriptorError(ConvexSpaceError):
    """Malformed descriptor; ``position`` is a line/column or a field path."""

    def __init__(self, message: str, position: str):
        super().__init__(f"{position}: {message}")
        self.position = position


# ========================================================
# FIELD HELPERS
# ========================================================
def _kind(name: str):
    def register(builder):
        _BUILDERS[name] = builder
        return builder
    return register


def _field(obj: dict, key: str, path: str, types: type | tuple = object, default=...):
    if key not in obj:
        if default is not ...:
            return default
        raise DescriptorError(f"missing field {key!r}", path)
    value = obj[key]
    if not isinstance(value, types) or isinstance(value, bool) and types is int:
        raise DescriptorError(f"field {key!r} has the wrong type", f"{path}.{key}")
    return value


def _count(obj: dict, key: str, path: str) -> int:
    value = _field(obj, key, path, int)
    if value < 0:
        raise DescriptorError(f"field {key!r} must be ≥ 0", f"{path}.{key}")
    return value


def _tokens(values, path: str) -> list:
    if not isinstance(values, list) or not values:
        raise DescriptorError("expected a nonempty list of tokens", path)
    out = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise DescriptorError("tokens must be strings or integers", f"{path}[{i}]")
        out.append(v)
    return out


def _rational(value, path: str):
    try:
        return parse_rational(value)
    except ValueError as e:
        raise DescriptorError(str(e), path) from e


def _index_table(obj: dict, key: str, path: str, n: int) -> list[list[int]]:
    table = _field(obj, key, path, list)
    if len(table) != n or any(not isinstance(row, list) or len(row) != n for row in table):
        raise DescriptorError(f"{key!r} must be a {n}x{n} index matrix", f"{path}.{key}")
    for i, row in enumerate(table):
        for j, k in enumerate(row):
            if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k < n:
                raise DescriptorError(f"entry {k!r} is not an element index", f"{path}.{key}[{i}][{j}]")
    return table


# ========================================================
# BUILDERS
# ========================================================
@_kind("vector")
def _vector(obj, path):
    return vector_space(_count(obj, "dim", path))


@_kind("simplex")
def _simplex(obj, path):
    return simplex_space(_count(obj, "n", path))


@_kind("metrics")
def _metrics(obj, path):
    return metrics_space(_count(obj, "n", path))


@_kind("free")
def _free(obj, path):
    return free_space(_tokens(_field(obj, "carrier", path, list), f"{path}.carrier"))


def _semilattice(obj, path):
    if "divisors_of" in obj:
        return divisor_semilattice(_count(obj, "divisors_of", path))
    elements = _tokens(_field(obj, "elements", path, list), f"{path}.elements")
    table = _index_table(obj, "meet", path, len(elements))
    return semilattice_make(elements, table, name=obj.get("name", "semilattice"))


@_kind("semilattice")
def _semilattice_kind(obj, path):
    return semilattice_space(_semilattice(obj, path))


@_kind("face-classifier")
def _face_classifier(obj, path):
    return face_classifier()


@_kind("adjoin-infinity")
def _adjoin_infinity(obj, path):
    return adjoin_infinity(build_space(_field(obj, "space", path, dict), f"{path}.space"))


@_kind("lottery")
def _lottery(obj, path):
    return lottery_space()


@_kind("intervals")
def _intervals(obj, path):
    return intervals_space()


@_kind("point")
def _point(obj, path):
    return point_space()


@_kind("line")
def _line(obj, path):
    return rational_line()


@_kind("unit-interval")
def _unit_interval(obj, path):
    return unit_interval()


@_kind("product")
def _product(obj, path):
    factors = _field(obj, "factors", path, list)
    return product_space(*(build_space(f, f"{path}.factors[{i}]") for i, f in enumerate(factors)))


@_kind("table")
def _table(obj, path):
    elements = _tokens(_field(obj, "elements", path, list), f"{path}.elements")
    table = _index_table(obj, "table", path, len(elements))
    index = {e: i for i, e in enumerate(elements)}
    lookup = token_lookup(elements)

    def combine(lam, x, y):
        if lam == 0:
            return y
        if lam == 1:
            return x
        return elements[table[index[x]][index[y]]]

    return SpaceHandle(
        space_id=obj.get("name", "table(" + ",".join(str(e) for e in elements) + ")"),
        combine=combine,
        contains=lambda x: not isinstance(x, (list, dict)) and x in index,
        sample=lambda rng: rng.choice(elements),
        decode=lambda o: _lookup_token(lookup, o, path),
        combinatorial=True,
        elements=tuple(elements),
    )


def _lookup_token(lookup: dict, obj, path: str):
    try:
        return lookup[repr(obj)]
    except KeyError as e:
        raise DomainError(f"{obj!r} is not an element of the table at {path}") from e


def _vector_width(space: SpaceHandle, path: str) -> int | None:
    """Width of the rational vectors in *space*; None for scalar rationals."""
    if space.sample is None:
        raise DescriptorError(f"matrix transports need a sampled fiber, {space.space_id} has none", path)
    x = space.draw(random.Random(0))
    if isinstance(x, Fraction):
        return None
    if isinstance(x, tuple) and all(isinstance(c, Fraction) for c in x):
        return len(x)
    raise DescriptorError(f"matrix transports need vector or line fibers, not {space.space_id}", path)


def _affine(matrix, offset, path: str, source: SpaceHandle, target: SpaceHandle) -> Callable:
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list):
            raise DescriptorError("a matrix row is a list", f"{path}.matrix[{i}]")
        rows.append([_rational(v, f"{path}.matrix[{i}][{j}]") for j, v in enumerate(row)])
    shift = [_rational(v, f"{path}.offset[{i}]") for i, v in enumerate(offset or [0] * len(rows))]
    if len(shift) != len(rows):
        raise DescriptorError("offset length differs from matrix rows", f"{path}.offset")

    width, height = _vector_width(source, f"{path}.from"), _vector_width(target, f"{path}.to")
    cols = 1 if width is None else width
    if any(len(row) != cols for row in rows):
        raise DescriptorError(f"matrix rows must have {cols} entries for {source.space_id}", f"{path}.matrix")
    needed = 1 if height is None else height
    if len(rows) != needed:
        raise DescriptorError(f"matrix has {len(rows)} rows, {target.space_id} needs {needed}",
                              f"{path}.matrix")

    def transport(x):
        vector = (x,) if width is None else x
        image = tuple(sum((a * c for a, c in zip(row, vector, strict=True)), s)
                      for row, s in zip(rows, shift, strict=True))
        return image[0] if height is None else image

    return transport


@_kind("fibered")
def _fibered(obj, path):
    base = _semilattice(_field(obj, "base", path, dict), f"{path}.base")
    keyed = {str(encode_token(s)): s for s in base.elements}
    fiber_objs = _field(obj, "fibers", path, dict)
    fibers = {}
    for key, sub in fiber_objs.items():
        if key not in keyed:
            raise DescriptorError(f"{key!r} is not a base element", f"{path}.fibers")
        fibers[keyed[key]] = build_space(sub, f"{path}.fibers.{key}")

    transports = {}
    for i, t in enumerate(_field(obj, "transports", path, list, default=[])):
        tpath = f"{path}.transports[{i}]"
        if not isinstance(t, dict):
            raise DescriptorError("a transport is an object", tpath)
        src, dst = str(_field(t, "from", tpath)), str(_field(t, "to", tpath))
        if src not in keyed or dst not in keyed:
            raise DescriptorError("transport endpoints must be base elements", tpath)
        s_from, s_to = keyed[src], keyed[dst]
        if "constant" in t:
            if s_to not in fibers:
                raise DescriptorError(f"no fiber over {dst!r}", f"{tpath}.to")
            value = fibers[s_to].decode(t["constant"])
            transports[(s_to, s_from)] = lambda x, value=value: value
        else:
            for s, key in ((s_from, "from"), (s_to, "to")):
                if s not in fibers:
                    raise DescriptorError(f"no fiber over {t[key]!r}", f"{tpath}.{key}")
            transports[(s_to, s_from)] = _affine(_field(t, "matrix", tpath, list), t.get("offset"),
                                                 tpath, fibers[s_from], fibers[s_to])
    return fibered_space_make(base, fibers, transports, name=obj.get("name"))


# ========================================================
# FUNCTIONS
# ========================================================
def build_space(obj, path: str = "$") -> SpaceHandle:
    """Build a space from an already decoded descriptor object."""
    if not isinstance(obj, dict):
        raise DescriptorError("a descriptor is a JSON object", path)
    kind = _field(obj, "kind", path, str)
    builder = _BUILDERS.get(kind)
    if builder is None:
        raise DescriptorError(f"unknown kind {kind!r}; expected one of {sorted(_BUILDERS)}",
                              f"{path}.kind")
    return builder(obj, path)


def parse_space_descriptor(text: str) -> SpaceHandle:
    """Parse descriptor text. Syntax errors carry a line/column position."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorError(e.msg, f"line {e.lineno} column {e.colno}") from e
    space = build_space(obj)
    _log.debug("descriptor parsed into %s", space.space_id)
    return space


def load_space_descriptor(source: str) -> SpaceHandle:
    """*source* is inline JSON (starting with ``{``) or a path to a UTF-8 file."""
    if source.lstrip().startswith("{"):
        return parse_space_descriptor(source)
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DescriptorError(f"cannot read descriptor: {e.strerror}", str(path)) from e
    return parse_space_descriptor(text)
