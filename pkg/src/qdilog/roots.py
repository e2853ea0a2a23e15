"""Interval roots of grid lines, the ordering matrices, and arrow counts.

A horizontal root beta^(i)_{k,l} has 1s on row i, columns k..l; a vertical
root lives on one column.  Orders on each axis must satisfy the two rules:
same-line pairs need lambda >= 0 in list order, different-line pairs need
lambda <= 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import AxisMismatch, IncompleteOrder
from .quiver import HORIZONTAL, VERTICAL, GridQuiver, lambda_form


@dataclass(frozen=True, order=True)
class GridRoot:
    """An interval root: axis, line index, and column/row interval [k, l]."""

    axis: str
    line: int
    k: int
    l: int

    def __post_init__(self):
        if self.axis not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"unknown axis {self.axis!r}")
        if not (1 <= self.k <= self.l):
            raise ValueError(f"bad interval [{self.k},{self.l}]")

    @property
    def interval(self):
        return (self.k, self.l)

    def dim_vector(self, gq: GridQuiver):
        g = [0] * gq.base.vertex_count
        for pos in range(self.k, self.l + 1):
            g[gq.line_vertex(self.axis, self.line, pos)] = 1
        return tuple(g)

    def to_json(self) -> dict:
        return {"axis": self.axis, "line": self.line, "k": self.k, "l": self.l}

    def label(self) -> str:
        tag = "h" if self.axis == HORIZONTAL else "v"
        return f"b{tag}{self.line}[{self.k},{self.l}]"


@dataclass(frozen=True)
class RootOrder:
    """A total order on all roots of one axis, given as a sequence."""

    axis: str
    sequence: tuple

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        for r in self.sequence:
            if r.axis != self.axis:
                raise AxisMismatch("order mixes axes")


def all_roots(gq: GridQuiver, axis: str):
    """All interval roots of the axis, ordered by (line, k, l)."""
    length = gq.line_length(axis)
    return [
        GridRoot(axis, line, k, l)
        for line in range(1, gq.line_count(axis) + 1)
        for k in range(1, length + 1)
        for l in range(k, length + 1)
    ]


def intersect(r1: GridRoot, r2: GridRoot):
    """Interval intersection and its length delta = t - s (0 when empty)."""
    if r1.axis != r2.axis:
        raise AxisMismatch("cannot intersect roots of different axes")
    s, t = max(r1.k, r2.k), min(r1.l, r2.l)
    if s > t:
        return None, 0
    return (s, t), t - s


def overlap_size(r1: GridRoot, r2: GridRoot) -> int:
    """Number of lattice points in the interval overlap."""
    overlap, _ = intersect(r1, r2)
    if overlap is None:
        return 0
    return overlap[1] - overlap[0] + 1


def r_floor(r1: GridRoot, r2: GridRoot) -> int:
    """Half the overlap size, rounded down.

    This is the rank r(a,b) of the tridiagonal Hermitian form on the overlap
    columns; on adjacent lines it equals the superpotential contribution.
    """
    return overlap_size(r1, r2) // 2


@lru_cache(maxsize=None)
def _order_matrix_positions(length: int, even_rule: bool):
    """Map (u, v) -> (row, col) of the (length+1) x length ordering matrix."""
    positions = {}
    for i in range(1, length + 2):
        for j in range(1, length + 1):
            if (i + j) % 2 != (0 if even_rule else 1):
                continue
            u = j - i + 1 if j >= i else i - j
            v = i + j - 1 if i + j <= length + 1 else 2 * length + 2 - i - j
            positions[(u, v)] = (i, j)
    return positions


def _even_rule(axis: str, line: int) -> bool:
    # Rows use the even fill rule for even line index; columns are the
    # transposed construction, so the parity swaps.
    if axis == HORIZONTAL:
        return line % 2 == 0
    return line % 2 == 1


def order_matrix(gq: GridQuiver, line: int, axis: str = HORIZONTAL):
    """The (L+1) x L matrix of roots of one line (None in blank cells)."""
    length = gq.line_length(axis)
    if not (1 <= line <= gq.line_count(axis)):
        raise ValueError(f"line {line} outside the grid")
    positions = _order_matrix_positions(length, _even_rule(axis, line))
    grid = [[None] * length for _ in range(length + 1)]
    for (u, v), (i, j) in positions.items():
        grid[i - 1][j - 1] = GridRoot(axis, line, u, v)
    return grid


def rho(gq: GridQuiver, root: GridRoot) -> int:
    """Row index of the root in the ordering matrix of its line."""
    positions = _order_matrix_positions(
        gq.line_length(root.axis), _even_rule(root.axis, root.line)
    )
    return positions[(root.k, root.l)][0]


def canonical_order(gq: GridQuiver, axis: str) -> RootOrder:
    """Roots sorted by rho ascending, ties broken by (line, k, l)."""
    roots = all_roots(gq, axis)
    roots.sort(key=lambda r: (rho(gq, r), r.line, r.k, r.l))
    return RootOrder(axis, tuple(roots))


def validate_order(gq: GridQuiver, order: RootOrder):
    """Check the two ordering rules; returns (ok, first_violation).

    A violation is reported as (r1, r2, lambda_value) for the first pair in
    list order breaking its rule.
    """
    expected = set(all_roots(gq, order.axis))
    listed = list(order.sequence)
    if len(listed) != len(expected) or set(listed) != expected:
        raise IncompleteOrder(
            f"order must be a permutation of all {len(expected)} "
            f"{order.axis} roots"
        )
    vectors = [r.dim_vector(gq) for r in listed]
    for a in range(len(listed)):
        for b in range(a + 1, len(listed)):
            lam = lambda_form(gq.base, vectors[a], vectors[b])
            if listed[a].line == listed[b].line:
                if lam < 0:
                    return False, (listed[a], listed[b], lam)
            else:
                if lam > 0:
                    return False, (listed[a], listed[b], lam)
    return True, None


def random_valid_order(gq: GridQuiver, axis: str, rng: random.Random) -> RootOrder:
    """A random order obtained by shuffling within each rho level."""
    levels = {}
    for r in all_roots(gq, axis):
        levels.setdefault(rho(gq, r), []).append(r)
    sequence = []
    for level in sorted(levels):
        block = levels[level]
        rng.shuffle(block)
        sequence.extend(block)
    out = RootOrder(axis, tuple(sequence))
    ok, violation = validate_order(gq, out)
    if not ok:
        raise AssertionError(f"level shuffle produced an invalid order: {violation}")
    return out


@lru_cache(maxsize=None)
def _arrow_set(gq: GridQuiver):
    return frozenset(gq.base.arrows)


def _adjacent_line_arrows(gq: GridQuiver, r1: GridRoot, r2: GridRoot):
    """Arrows between lines r1.line < r2.line inside the interval overlap,
    split by whether they point toward the first or the second line."""
    if r1.axis != r2.axis:
        raise AxisMismatch("roots must share an axis")
    if r1.line > r2.line:
        raise ValueError("pair must be oriented with r1.line < r2.line")
    toward_first = toward_second = 0
    if r2.line - r1.line != 1:
        return toward_first, toward_second
    overlap, _ = intersect(r1, r2)
    if overlap is None:
        return toward_first, toward_second
    axis = r1.axis
    arrow_set = _arrow_set(gq)
    for pos in range(overlap[0], overlap[1] + 1):
        v1 = gq.line_vertex(axis, r1.line, pos)
        v2 = gq.line_vertex(axis, r2.line, pos)
        if (v2, v1) in arrow_set:
            toward_first += 1
        elif (v1, v2) in arrow_set:
            toward_second += 1
    return toward_first, toward_second


def up_down_counts(gq: GridQuiver, r1: GridRoot, r2: GridRoot):
    """(up, down) arrow counts between two horizontal roots, r1.line < r2.line.

    Both are 0 unless the lines are adjacent and the intervals overlap;
    lambda(r1, r2) = down - up.
    """
    if r1.axis != HORIZONTAL or r2.axis != HORIZONTAL:
        raise AxisMismatch("up/down counts are for horizontal roots")
    up, down = _adjacent_line_arrows(gq, r1, r2)
    return up, down


def right_left_counts(gq: GridQuiver, r1: GridRoot, r2: GridRoot):
    """(right, left) arrow counts between vertical roots, r1.line < r2.line;
    lambda(r1, r2) = right - left."""
    if r1.axis != VERTICAL or r2.axis != VERTICAL:
        raise AxisMismatch("right/left counts are for vertical roots")
    left, right = _adjacent_line_arrows(gq, r1, r2)
    return right, left


def sc(gq: GridQuiver, r1: GridRoot, r2: GridRoot) -> int:
    """Superpotential contribution of an ordered pair of same-axis roots.

    For horizontal roots this is down(r1,r2) when lambda(r1,r2) <= 0 and
    up(r1,r2) otherwise; for vertical roots right/left play those roles.
    """
    if r1.axis != r2.axis:
        raise AxisMismatch("superpotential contribution needs one axis")
    if r1.axis == HORIZONTAL:
        up, down = up_down_counts(gq, r1, r2)
        lam = down - up
        return down if lam <= 0 else up
    right, left = right_left_counts(gq, r1, r2)
    lam = right - left
    return right if lam <= 0 else left


def tridiagonal_signature(p: int):
    """Signature (positive, negative, zero) of the p x p Hermitian form with
    1/2 on the first sub- and superdiagonals.

    The eigenvalues are cos(a*pi/(p+1)) for a in 1..p, so there are
    floor(p/2) of each sign and a zero exactly when p is odd.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    return (p // 2, p // 2, p % 2)


__all__ = [
    "GridRoot",
    "RootOrder",
    "all_roots",
    "intersect",
    "overlap_size",
    "r_floor",
    "order_matrix",
    "rho",
    "canonical_order",
    "validate_order",
    "random_valid_order",
    "up_down_counts",
    "right_left_counts",
    "sc",
    "tridiagonal_signature",
]
