"""Exact building blocks for finite checks on generalized distance spaces.

Everything downstream (axiom scans, chain closures, orbit analysis) works on
three kinds of data defined here:

* points — tagged identities: named atoms, natural numbers, or pairs on a
  two-level ordinal grid;
* domains — which points a space admits and how they are totally ordered;
* distance spaces — a domain plus a total distance function returning exact
  rationals.

Floats never appear.  Every distance is a ``fractions.Fraction``, so verdicts
are exact and byte-reproducible.  Finite "windows" (ordered slices of a
domain) are the universe every checker quantifies over.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class QuasifixError(Exception):
    """Base class for errors raised by this package."""


class DomainError(QuasifixError):
    """A point fell outside the domain a space declares."""


class WindowError(QuasifixError):
    """A window is malformed for the space it is used with."""


class FormatError(QuasifixError):
    """A space or matrix payload failed structural validation."""


# ---------------------------------------------------------------------------
# scalars


def scalar_from_text(value: str | int) -> Fraction:
    """Parse a rational from ``"p/q"`` or integer text (ints pass through)."""
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise FormatError(f"not a rational: {value!r}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {value!r}") from exc


def scalar_to_text(value: Fraction) -> str:
    """Canonical wire form ``"p/q"`` (always slashed, reduced, q > 0)."""
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# points

ATOM = "atom"
NAT = "nat"
ORD = "ord"


@dataclass(frozen=True)
class Point:
    """A point identity.  Exactly one payload is meaningful per kind."""

    kind: str
    name: str = ""
    n: int = 0
    q: int = 0
    r: int = 0

    @staticmethod
    def atom(name: str) -> "Point":
        if not name:
            raise ValueError("atom name must be non-empty")
        return Point(ATOM, name=name)

    @staticmethod
    def nat(n: int) -> "Point":
        if n < 0:
            raise ValueError("naturals are non-negative")
        return Point(NAT, n=n)

    @staticmethod
    def ordinal(q: int, r: int) -> "Point":
        if q < 0 or r < 0:
            raise ValueError("ordinal coordinates are non-negative")
        return Point(ORD, q=q, r=r)

    def label(self) -> str:
        if self.kind == ATOM:
            return self.name
        if self.kind == NAT:
            return str(self.n)
        return f"{self.q}:{self.r}"

    def __str__(self) -> str:  # pragma: no cover - repr sugar
        return self.label()


# ---------------------------------------------------------------------------
# domains

FINITE = "finite"
NATURALS = "naturals"
ORDINAL_GRID = "ordinal_grid"


@dataclass(frozen=True)
class Domain:
    """Description of the point set a space is defined on.

    kind "finite": ``members`` lists every point, in canonical order.
    kind "naturals": naturals from ``nat_start`` (optionally capped at
        ``nat_stop``), preceded by the named ``atoms`` in listed order.
    kind "ordinal_grid": all pairs (q, r) of non-negative integers, ordered
        lexicographically.
    """

    kind: str
    atoms: tuple[str, ...] = ()
    members: tuple[Point, ...] = ()
    nat_start: int = 0
    nat_stop: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in (FINITE, NATURALS, ORDINAL_GRID):
            raise ValueError(f"unknown domain kind: {self.kind!r}")
        if self.kind == FINITE:
            if not self.members:
                raise ValueError("finite domain needs at least one member")
            if len(set(self.members)) != len(self.members):
                raise ValueError("finite domain members must be distinct")
        if self.kind == ORDINAL_GRID and (self.atoms or self.members):
            raise ValueError("ordinal grid carries no atoms or member list")
        if self.nat_stop is not None and self.nat_stop < self.nat_start:
            raise ValueError("nat_stop below nat_start")
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("atom names must be distinct")

    def contains(self, point: Point) -> bool:
        if self.kind == FINITE:
            return point in _member_index(self)
        if self.kind == NATURALS:
            if point.kind == ATOM:
                return point.name in self.atoms
            if point.kind == NAT:
                upper_ok = self.nat_stop is None or point.n <= self.nat_stop
                return point.n >= self.nat_start and upper_ok
            return False
        return point.kind == ORD

    def sort_key(self, point: Point) -> tuple[int, int, int]:
        if self.kind == FINITE:
            return (_member_index(self)[point], 0, 0)
        if self.kind == NATURALS:
            if point.kind == ATOM:
                return (0, self.atoms.index(point.name), 0)
            return (1, point.n, 0)
        return (point.q, point.r, 0)

    def atom_points(self) -> tuple[Point, ...]:
        return tuple(Point.atom(name) for name in self.atoms)


@lru_cache(maxsize=None)
def _member_index(domain: Domain) -> dict[Point, int]:
    return {point: i for i, point in enumerate(domain.members)}


def parse_point(text: str, domain: Domain) -> Point:
    """Resolve CLI/file text to a point of ``domain``.

    Atom names win over numeric readings (a finite space may name its points
    "0", "1/2", ...), then "q:r" parses as an ordinal pair, then digits as a
    natural.
    """
    text = text.strip()
    if not text:
        raise FormatError("empty point text")
    if domain.kind == FINITE:
        for member in domain.members:
            if member.label() == text:
                return member
        raise DomainError(f"point {text!r} is not a member of the finite domain")
    if text in domain.atoms:
        return Point.atom(text)
    if ":" in text:
        left, _, right = text.partition(":")
        try:
            point = Point.ordinal(int(left), int(right))
        except ValueError as exc:
            raise FormatError(f"bad ordinal point: {text!r}") from exc
    else:
        try:
            point = Point.nat(int(text))
        except ValueError as exc:
            raise FormatError(f"bad point: {text!r}") from exc
    if not domain.contains(point):
        raise DomainError(f"point {text!r} outside the domain")
    return point


# ---------------------------------------------------------------------------
# windows and spaces


@dataclass(frozen=True)
class Window:
    """A finite, ordered, duplicate-free slice of a domain."""

    points: tuple[Point, ...]
    description: str

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def labels(self) -> tuple[str, ...]:
        return tuple(p.label() for p in self.points)

    def index_of(self, point: Point) -> int:
        try:
            return _window_index(self)[point]
        except KeyError:
            raise WindowError(f"point {point.label()} not in window") from None


@lru_cache(maxsize=None)
def _window_index(window: Window) -> dict[Point, int]:
    return {point: i for i, point in enumerate(window.points)}


@dataclass(frozen=True)
class DistanceSpace:
    """A domain plus a total, exact distance function.

    ``completeness`` is declared metadata for the theorem harness (it is never
    computed): "assumed_complete", "assumed_incomplete", or "unknown".
    """

    name: str
    domain: Domain
    dist: Callable[[Point, Point], Fraction] = field(repr=False)
    completeness: str = "unknown"

    def distance(self, x: Point, y: Point) -> Fraction:
        if not self.domain.contains(x):
            raise DomainError(f"{self.name}: point {x.label()} outside domain")
        if not self.domain.contains(y):
            raise DomainError(f"{self.name}: point {y.label()} outside domain")
        return self.dist(x, y)


def enumerate_window(
    space: DistanceSpace,
    *,
    nat_max: int | None = None,
    q_max: int | None = None,
    r_max: int | None = None,
) -> Window:
    """Deterministically enumerate a window of the space's domain.

    Finite domains take no bounds.  Naturals domains take ``nat_max`` and
    always include every atom.  Ordinal grids take ``q_max`` and ``r_max``.
    """
    domain = space.domain
    if domain.kind == FINITE:
        if nat_max is not None or q_max is not None or r_max is not None:
            raise WindowError("finite domains take no window bounds")
        return Window(domain.members, f"{len(domain.members)} listed points")
    if domain.kind == NATURALS:
        if nat_max is None or q_max is not None or r_max is not None:
            raise WindowError("naturals domains take nat_max only")
        if nat_max < domain.nat_start:
            raise WindowError("window bound below the first natural")
        if domain.nat_stop is not None and nat_max > domain.nat_stop:
            raise WindowError(
                f"window bound {nat_max} exceeds domain cap {domain.nat_stop}"
            )
        points = domain.atom_points() + tuple(
            Point.nat(n) for n in range(domain.nat_start, nat_max + 1)
        )
        if domain.atoms:
            desc = (
                f"atoms {','.join(domain.atoms)} + naturals"
                f" {domain.nat_start}..{nat_max}"
            )
        else:
            desc = f"naturals {domain.nat_start}..{nat_max}"
        return Window(points, desc)
    if q_max is None or r_max is None or nat_max is not None:
        raise WindowError("ordinal grids take q_max and r_max")
    if q_max < 0 or r_max < 0:
        raise WindowError("ordinal window bounds are non-negative")
    points = tuple(
        Point.ordinal(q, r) for q in range(q_max + 1) for r in range(r_max + 1)
    )
    return Window(points, f"ordinals q<={q_max} r<={r_max}")


def validate_window(space: DistanceSpace, window: Window) -> None:
    if not window.points:
        raise WindowError("empty window")
    key = space.domain.sort_key
    previous = None
    for point in window.points:
        if not space.domain.contains(point):
            raise DomainError(
                f"{space.name}: window point {point.label()} outside domain"
            )
        current = key(point)
        if previous is not None and current <= previous:
            raise WindowError("window must be strictly increasing in domain order")
        previous = current


@lru_cache(maxsize=256)
def distance_rows(
    space: DistanceSpace, window: Window
) -> tuple[tuple[Fraction, ...], ...]:
    """All pairwise distances on a window, cached per (space, window)."""
    validate_window(space, window)
    pts = window.points
    dist = space.dist
    return tuple(tuple(dist(x, y) for y in pts) for x in pts)


def ball_contains(
    space: DistanceSpace, center: Point, radius: Fraction, candidate: Point
) -> bool:
    """Membership in the open ball {y : d(center, y) < radius}."""
    if radius <= 0:
        raise ValueError("ball radius must be positive")
    return space.distance(center, candidate) < radius


# ---------------------------------------------------------------------------
# JSON ingestion of finite matrix-backed spaces


def space_from_dict(payload: object) -> DistanceSpace:
    """Build a finite space from ``{"name", "points", "matrix"}``.

    Validates shape and the two core axioms that make the matrix a distance:
    all entries non-negative, zero diagonal, and no off-diagonal pair with
    both directed entries zero.  Errors carry the offending field path.
    """
    if not isinstance(payload, dict):
        raise FormatError("space payload must be a JSON object")
    name = payload.get("name")
    if not isinstance(name, str) or not name:
        raise FormatError("name: expected a non-empty string")
    labels = payload.get("points")
    if not isinstance(labels, list) or not labels:
        raise FormatError("points: expected a non-empty list")
    for i, label in enumerate(labels):
        if not isinstance(label, str) or not label:
            raise FormatError(f"points[{i}]: expected a non-empty string")
        if label in labels[:i]:
            raise FormatError(f"points[{i}]: duplicate label {label!r}")
    size = len(labels)
    matrix = payload.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != size:
        raise FormatError(f"matrix: expected {size} rows")
    rows: list[tuple[Fraction, ...]] = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != size:
            raise FormatError(f"matrix[{i}]: expected {size} entries")
        parsed: list[Fraction] = []
        for j, entry in enumerate(row):
            try:
                value = scalar_from_text(entry)
            except FormatError as exc:
                raise FormatError(f"matrix[{i}][{j}]: {exc}") from None
            if value < 0:
                raise FormatError(f"matrix[{i}][{j}]: negative distance")
            parsed.append(value)
        rows.append(tuple(parsed))
    for i in range(size):
        if rows[i][i] != 0:
            raise FormatError(f"matrix[{i}][{i}]: diagonal must be zero")
        for j in range(i + 1, size):
            if rows[i][j] == 0 and rows[j][i] == 0:
                raise FormatError(
                    f"matrix[{i}][{j}]: distinct points at mutual distance zero"
                )
    members = tuple(Point.atom(label) for label in labels)
    domain = Domain(FINITE, members=members)
    index = {point: i for i, point in enumerate(members)}
    table = tuple(rows)

    def dist(x: Point, y: Point) -> Fraction:
        return table[index[x]][index[y]]

    return DistanceSpace(name=name, domain=domain, dist=dist)


def load_space(path: str) -> DistanceSpace:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return space_from_dict(payload)
