"""Partial injective maps on the finite chain {1, ..., n}.

The central value type is :class:`PartialInjection`, an injective map from
a subset of {1, ..., n} into {1, ..., n}, stored as (x, y) pairs sorted by
domain point.  Composition acts left to right, x(ab) = (xa)b, so
``compose(a, b)`` means "apply a, then b"; all products quoted elsewhere in
this package follow that convention.

Values are immutable, hashable, and compare structurally (the chain size is
part of the identity: the same pair list on chains of different sizes gives
unequal values).  The empty map is legal for every n, including n = 0, and
acts as a multiplicative zero.  All functions here are pure, so everything
is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import MismatchedChain, NotFunctional, NotInjective, OutOfRange


@dataclass(frozen=True)
class PartialInjection:
    """An injective map from a subset of {1..n} into {1..n}.

    Construction normalises the pair list (sorted by domain point) and
    rejects anything that is not a partial injection, so every value that
    exists is canonical.

    >>> PartialInjection(3, [(3, 1), (2, 2)]).pairs
    ((2, 2), (3, 1))
    """

    n: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise OutOfRange(f"chain size must be a non-negative integer, got {self.n!r}")
        pairs = tuple(sorted((int(x), int(y)) for x, y in self.pairs))
        for x, y in pairs:
            if not (1 <= x <= self.n and 1 <= y <= self.n):
                raise OutOfRange(f"pair ({x}, {y}) lies outside the chain 1..{self.n}")
        for (x1, _), (x2, _) in zip(pairs, pairs[1:]):
            if x1 == x2:
                raise NotFunctional(f"domain point {x1} is mapped twice")
        if len({y for _, y in pairs}) != len(pairs):
            raise NotInjective("an image point is hit twice")
        object.__setattr__(self, "pairs", pairs)

    @property
    def height(self) -> int:
        return len(self.pairs)

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    @property
    def domain(self) -> tuple[int, ...]:
        """Domain points in increasing order."""
        return tuple(x for x, _ in self.pairs)

    @property
    def image(self) -> tuple[int, ...]:
        """Image points in increasing order (as a set, not in domain order)."""
        return tuple(sorted(y for _, y in self.pairs))

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    def inverse(self) -> "PartialInjection":
        return inverse(self)

    def __mul__(self, other: "PartialInjection") -> "PartialInjection":
        return compose(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class MapStatistics:
    """Size statistics of one map.

    ``height`` is the image size; waists are the extremes of the image and
    shoulders the extremes of the domain (``None`` exactly when the map is
    empty); ``fix_set`` collects the fixed points.
    """

    height: int
    right_waist: int | None
    left_waist: int | None
    right_shoulder: int | None
    left_shoulder: int | None
    fix_set: frozenset[int]
    fix_count: int


@dataclass(frozen=True)
class GapSignature:
    """Successive differences of a sorted point set.

    Two subsets of the chain have the same signature exactly when one is a
    translate of the other; reversing the signature corresponds to
    reflecting the set.
    """

    diffs: tuple[int, ...] = ()

    def reversed(self) -> "GapSignature":
        return GapSignature(self.diffs[::-1])


def make_partial_injection(n: int, pairs: Iterable) -> PartialInjection:
    """Validating factory for :class:`PartialInjection`.

    >>> make_partial_injection(3, [(2, 2), (3, 1)]).pairs
    ((2, 2), (3, 1))
    """
    return PartialInjection(n, tuple((x, y) for x, y in pairs))


def partial_identity(n: int, points: Iterable[int]) -> PartialInjection:
    """The restriction of the identity map to ``points``."""
    return PartialInjection(n, tuple((x, x) for x in points))


def compose(a: PartialInjection, b: PartialInjection) -> PartialInjection:
    """Left-to-right composite: x(ab) = (xa)b, defined where both steps are.

    >>> a = make_partial_injection(3, [(1, 1), (2, 2)])
    >>> b = make_partial_injection(3, [(2, 2), (3, 1)])
    >>> compose(a, b).pairs
    ((2, 2),)
    """
    if a.n != b.n:
        raise MismatchedChain(f"cannot compose maps on chains of size {a.n} and {b.n}")
    lookup = dict(b.pairs)
    return PartialInjection(
        a.n, tuple((x, lookup[y]) for x, y in a.pairs if y in lookup)
    )


def inverse(a: PartialInjection) -> PartialInjection:
    """Transpose of ``a``; satisfies a * inverse(a) * a == a.

    >>> inverse(make_partial_injection(3, [(1, 2), (2, 3)])).pairs
    ((2, 1), (3, 2))
    """
    return PartialInjection(a.n, tuple((y, x) for x, y in a.pairs))


def statistics(a: PartialInjection) -> MapStatistics:
    """All size statistics of ``a`` in one pass."""
    fixed = frozenset(x for x, y in a.pairs if x == y)
    if a.is_empty:
        return MapStatistics(0, None, None, None, None, fixed, 0)
    xs = a.domain
    ys = a.image
    return MapStatistics(
        height=len(a.pairs),
        right_waist=ys[-1],
        left_waist=ys[0],
        right_shoulder=xs[-1],
        left_shoulder=xs[0],
        fix_set=fixed,
        fix_count=len(fixed),
    )


def is_isometry(a: PartialInjection) -> bool:
    """True when the map preserves absolute differences between domain points.

    Empty and singleton maps qualify vacuously.
    """
    pairs = a.pairs
    for i in range(len(pairs)):
        xi, yi = pairs[i]
        for j in range(i + 1, len(pairs)):
            xj, yj = pairs[j]
            if xj - xi != abs(yj - yi):
                return False
    return True


def is_order_preserving(a: PartialInjection) -> bool:
    """True when x <= y implies xa <= ya on the domain (vacuous for height <= 1)."""
    return all(y1 < y2 for (_, y1), (_, y2) in zip(a.pairs, a.pairs[1:]))


def is_order_reversing(a: PartialInjection) -> bool:
    """True when x <= y implies xa >= ya on the domain (vacuous for height <= 1)."""
    return all(y1 > y2 for (_, y1), (_, y2) in zip(a.pairs, a.pairs[1:]))


def is_partial_identity(a: PartialInjection) -> bool:
    return all(x == y for x, y in a.pairs)


def is_idempotent(a: PartialInjection) -> bool:
    """True when a * a == a.

    For partial injections this coincides with being a partial identity;
    the test suite asserts that equivalence exhaustively.
    """
    return compose(a, a) == a


def gap_signature(points: Iterable[int]) -> GapSignature:
    """Signature of a sorted, duplicate-free point sequence.

    >>> gap_signature([1, 3, 4]).diffs
    (2, 1)
    >>> gap_signature([2, 4, 5]) == gap_signature([1, 3, 4])
    True
    """
    pts = tuple(points)
    if any(p2 <= p1 for p1, p2 in zip(pts, pts[1:])):
        raise ValueError("points must be strictly increasing")
    return GapSignature(tuple(p2 - p1 for p1, p2 in zip(pts, pts[1:])))


def sort_key(a: PartialInjection) -> tuple:
    """Canonical ordering key: height, then domain, then images in domain order."""
    return (len(a.pairs), a.domain, tuple(y for _, y in a.pairs))


# Serialized forms.  JSON: {"n": 3, "map": [[2, 2], [3, 1]]} with pairs
# sorted by domain point.  Text: matrix notation "(2 3 / 2 1)", with the
# empty map written "( / )".

def to_json(a: PartialInjection) -> dict:
    return {"n": a.n, "map": [[x, y] for x, y in a.pairs]}


def from_json(obj: dict) -> PartialInjection:
    return make_partial_injection(obj["n"], obj["map"])


def to_text(a: PartialInjection) -> str:
    xs = " ".join(str(x) for x, _ in a.pairs)
    ys = " ".join(str(y) for _, y in a.pairs)
    return f"({xs} / {ys})"


def from_text(text: str, n: int) -> PartialInjection:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")) or "/" not in body:
        raise ValueError(f"not matrix notation: {text!r}")
    top, bottom = body[1:-1].split("/", 1)
    xs = [int(t) for t in top.split()]
    ys = [int(t) for t in bottom.split()]
    if len(xs) != len(ys):
        raise ValueError(f"row lengths differ in {text!r}")
    return make_partial_injection(n, zip(xs, ys))
