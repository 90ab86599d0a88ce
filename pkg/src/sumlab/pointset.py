"""Finite sets of rational points with exact set arithmetic.

All coordinates are `fractions.Fraction` values, stored in lowest terms with
positive denominator, so membership and deduplication are exact: no rounding
can ever create or destroy a collision in a sumset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import affine_rank, invert_matrix, mat_vec

Rational = Fraction
Point = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "3" or "-1/2"; rejects floats, whitespace and zero denominators."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not an integer or p/q rational string: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(value) -> str:
    return str(Fraction(value))


def _coerce_coord(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return parse_rational(c)
    if isinstance(c, float):
        raise ValueError(f"float coordinate {c!r} rejected; use int, Fraction or 'p/q' string")
    return Fraction(c)


def coerce_point(coords: Sequence, dim: int | None = None) -> Point:
    """Normalize a coordinate sequence to a tuple of Fractions."""
    pt = tuple(_coerce_coord(c) for c in coords)
    if not pt:
        raise ValueError("points must have at least one coordinate")
    if dim is not None and len(pt) != dim:
        raise ValueError(f"point of length {len(pt)} in ambient dimension {dim}")
    return pt


@dataclass(frozen=True)
class PointSet:
    """Deduplicated, lexicographically ordered finite subset of Q^dim."""

    dim: int
    points: tuple[Point, ...]

    @classmethod
    def of(cls, dim: int, points: Iterable[Sequence]) -> "PointSet":
        if dim < 1:
            raise ValueError("ambient dimension must be positive")
        pts = sorted({coerce_point(p, dim) for p in points})
        return cls(dim, tuple(pts))

    @cached_property
    def _members(self) -> frozenset[Point]:
        return frozenset(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, item) -> bool:
        return coerce_point(item, self.dim) in self._members

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "points": [[format_rational(c) for c in p] for p in self.points],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PointSet":
        if not isinstance(obj, dict) or "dim" not in obj or "points" not in obj:
            raise ValueError("point-set JSON needs 'dim' and 'points'")
        dim = obj["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"bad dimension: {dim!r}")
        pts = [coerce_point(p, dim) for p in obj["points"]]
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points in input")
        return cls.of(dim, pts)


def _require_pair(a: PointSet, b: PointSet) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if not a.points or not b.points:
        raise ValueError("set arithmetic requires nonempty operands")


def sumset(a: PointSet, b: PointSet) -> PointSet:
    """All pairwise sums a + b, deduplicated exactly."""
    _require_pair(a, b)
    sums = {tuple(x + y for x, y in zip(p, q)) for p in a.points for q in b.points}
    return PointSet(a.dim, tuple(sorted(sums)))


def difference_set(a: PointSet, b: PointSet) -> PointSet:
    """All pairwise differences a - b, deduplicated exactly."""
    _require_pair(a, b)
    diffs = {tuple(x - y for x, y in zip(p, q)) for p in a.points for q in b.points}
    return PointSet(a.dim, tuple(sorted(diffs)))


def affine_dimension(a: PointSet) -> int:
    """Dimension of the affine span: rank of {p - p0}. 0 for singletons."""
    if not a.points:
        raise ValueError("empty set has no affine dimension")
    return affine_rank(a.points)


def negate(a: PointSet) -> PointSet:
    return PointSet(a.dim, tuple(sorted(tuple(-c for c in p) for p in a.points)))


def translate(a: PointSet, t: Sequence) -> PointSet:
    vec = coerce_point(t, a.dim)
    return PointSet(a.dim, tuple(sorted(tuple(x + y for x, y in zip(p, vec)) for p in a.points)))


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + translation with an invertible rational matrix."""

    matrix: tuple[Point, ...]
    translation: Point

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0 or any(len(row) != n for row in self.matrix) or len(self.translation) != n:
            raise ValueError("affine map needs a square matrix and a matching translation")
        if invert_matrix(self.matrix) is None:
            raise ValueError("singular matrix")

    @classmethod
    def of(cls, matrix: Sequence[Sequence], translation: Sequence) -> "AffineMap":
        rows = tuple(coerce_point(row) for row in matrix)
        return cls(rows, coerce_point(translation))

    @classmethod
    def identity(cls, dim: int) -> "AffineMap":
        eye = tuple(tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim))
        return cls(eye, tuple(Fraction(0) for _ in range(dim)))

    def apply(self, p: Point) -> Point:
        return tuple(x + t for x, t in zip(mat_vec(self.matrix, p), self.translation))

    @cached_property
    def inverse(self) -> "AffineMap":
        inv = invert_matrix(self.matrix)
        assert inv is not None
        shift = mat_vec(inv, self.translation)
        return AffineMap(inv, tuple(-c for c in shift))

    def to_json(self) -> dict:
        return {
            "matrix": [[format_rational(c) for c in row] for row in self.matrix],
            "translation": [format_rational(c) for c in self.translation],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AffineMap":
        return cls.of(obj["matrix"], obj["translation"])


def apply_affine(a: PointSet, t: AffineMap) -> PointSet:
    """Image of the set; cardinality is preserved because the map is invertible."""
    if len(t.translation) != a.dim:
        raise ValueError("affine map dimension mismatch")
    image = PointSet.of(a.dim, (t.apply(p) for p in a.points))
    assert len(image) == len(a)
    return image
