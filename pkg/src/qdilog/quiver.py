"""Quivers, bilinear forms, and the square product of two type-A quivers.

Vertices are 0-based integers; grid vertices additionally carry 1-based
coordinates (i, j) with i the row in 1..n and j the column in 1..n'.  Grid
vertex ids are row-major over (i, j) so test fixtures are stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import DimensionMismatch

DimVector = tuple  # naturals indexed by vertex id

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class Quiver:
    """A directed graph: arrows are (tail, head) pairs of vertex ids."""

    vertex_count: int
    arrows: tuple

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        for t, h in self.arrows:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise ValueError(f"arrow ({t},{h}) outside vertex range")

    def lambda_matrix(self):
        """Matrix L[u][v] = lambda(e_u, e_v) = #arrows u->v minus #arrows v->u."""
        n = self.vertex_count
        mat = [[0] * n for _ in range(n)]
        for t, h in self.arrows:
            mat[t][h] += 1
            mat[h][t] -= 1
        return mat


def _check_dims(q: Quiver, *vectors):
    for g in vectors:
        if len(g) != q.vertex_count:
            raise DimensionMismatch(
                f"dimension vector of length {len(g)} on a "
                f"{q.vertex_count}-vertex quiver"
            )


def euler_form(q: Quiver, g1, g2) -> int:
    """chi(g1,g2) = sum_v g1(v)g2(v) - sum_a g1(t(a))g2(h(a))."""
    _check_dims(q, g1, g2)
    total = sum(a * b for a, b in zip(g1, g2))
    for t, h in q.arrows:
        total -= g1[t] * g2[h]
    return total


def lambda_form(q: Quiver, g1, g2) -> int:
    """The opposite antisymmetrization chi(g2,g1) - chi(g1,g2)."""
    _check_dims(q, g1, g2)
    total = 0
    for t, h in q.arrows:
        total += g1[t] * g2[h] - g1[h] * g2[t]
    return total


def tits_form(q: Quiver, g) -> int:
    """T(g) = chi(g,g); g is a root exactly when T(g) = 1."""
    return euler_form(q, g, g)


def unit_vector(q: Quiver, v: int) -> DimVector:
    e = [0] * q.vertex_count
    e[v] = 1
    return tuple(e)


class QuadraticForms(NamedTuple):
    up: int
    down: int
    left: int
    right: int
    hip: int
    vip: int


@dataclass(frozen=True)
class GridQuiver:
    """The square product A_n x-in-a-box A_n' with alternating orientations.

    Row subquivers Q(i,.) alternate starting with a sink at (i,1) for odd i;
    column subquivers Q(.,j) alternate starting with a source at (1,j) for
    odd j.  Every vertex is a sink or source in its row subquiver and the
    opposite in its column subquiver.
    """

    n: int
    nprime: int
    base: Quiver = field(compare=False)

    def vertex_id(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.nprime):
            raise ValueError(f"coordinate ({i},{j}) outside the grid")
        return (i - 1) * self.nprime + (j - 1)

    def coord(self, v: int):
        i, j = divmod(v, self.nprime)
        return (i + 1, j + 1)

    def vertices(self):
        return [(i, j) for i in range(1, self.n + 1) for j in range(1, self.nprime + 1)]

    # Horizontal heads are the sinks of their row subquiver; they coincide
    # with the vertical tails (and HorT with VerH).  In coordinates these are
    # exactly the vertices with i+j even (resp. odd).
    def horizontal_heads(self):
        return frozenset(v for v in self.vertices() if sum(v) % 2 == 0)

    def horizontal_tails(self):
        return frozenset(v for v in self.vertices() if sum(v) % 2 == 1)

    def vertical_heads(self):
        return self.horizontal_tails()

    def vertical_tails(self):
        return self.horizontal_heads()

    def class_of(self, i: int, j: int) -> str:
        return "HorH" if (i + j) % 2 == 0 else "HorT"

    def line_count(self, axis: str) -> int:
        return self.n if axis == HORIZONTAL else self.nprime

    def line_length(self, axis: str) -> int:
        return self.nprime if axis == HORIZONTAL else self.n

    def line_vertex(self, axis: str, line: int, pos: int) -> int:
        """Vertex id of position pos (1-based) along a row or column."""
        if axis == HORIZONTAL:
            return self.vertex_id(line, pos)
        return self.vertex_id(pos, line)

    def line_orientation(self, axis: str, line: int) -> tuple:
        """Arrow directions ('r' towards larger position) along one line."""
        out = []
        for pos in range(1, self.line_length(axis)):
            if axis == HORIZONTAL:
                tail_is_low = (line + pos) % 2 == 1
            else:
                tail_is_low = (line + pos) % 2 == 0
            out.append("r" if tail_is_low else "l")
        return tuple(out)

    def arrow_cycle_count(self) -> int:
        """Number of oriented square cycles, (n-1)(n'-1)."""
        return (self.n - 1) * (self.nprime - 1)

    def to_json(self) -> dict:
        arrows = [
            [list(self.coord(t)), list(self.coord(h))] for t, h in self.base.arrows
        ]
        classes = {
            "HorH": sorted(list(v) for v in self.horizontal_heads()),
            "HorT": sorted(list(v) for v in self.horizontal_tails()),
            "VerH": sorted(list(v) for v in self.vertical_heads()),
            "VerT": sorted(list(v) for v in self.vertical_tails()),
        }
        return {
            "n": self.n,
            "nprime": self.nprime,
            "arrows": arrows,
            "classes": classes,
        }


def square_product(n: int, nprime: int) -> GridQuiver:
    """Build A_n square-product A_n' with the alternating-orientation rule."""
    if n < 1 or nprime < 1:
        raise ValueError("n and nprime must be at least 1")

    def vid(i, j):
        return (i - 1) * nprime + (j - 1)

    arrows = []
    for i in range(1, n + 1):
        for j in range(1, nprime):
            # Horizontal arrow between (i,j) and (i,j+1); the tail is the
            # vertex with odd coordinate sum (a horizontal tail).
            if (i + j) % 2 == 1:
                arrows.append((vid(i, j), vid(i, j + 1)))
            else:
                arrows.append((vid(i, j + 1), vid(i, j)))
    for j in range(1, nprime + 1):
        for i in range(1, n):
            # Vertical arrow between (i,j) and (i+1,j); the tail is the
            # vertex with even coordinate sum (a vertical tail).
            if (i + j) % 2 == 0:
                arrows.append((vid(i, j), vid(i + 1, j)))
            else:
                arrows.append((vid(i + 1, j), vid(i, j)))
    base = Quiver(n * nprime, tuple(arrows))
    return GridQuiver(n=n, nprime=nprime, base=base)


def quadratic_forms(gq: GridQuiver, g) -> QuadraticForms:
    """The six quadratic forms -up, -down, -left, -right summed by arrow
    direction, with hip = -up - down and vip = -left - right."""
    _check_dims(gq.base, g)
    up = down = left = right = 0
    for t, h in gq.base.arrows:
        ti, tj = gq.coord(t)
        hi_, hj = gq.coord(h)
        w = g[t] * g[h]
        if tj == hj:
            if hi_ < ti:
                up -= w
            else:
                down -= w
        else:
            if hj < tj:
                left -= w
            else:
                right -= w
    return QuadraticForms(
        up=up, down=down, left=left, right=right, hip=-up - down, vip=-left - right
    )


def grid_unit(gq: GridQuiver, i: int, j: int) -> DimVector:
    """The simple-root dimension vector at grid vertex (i, j)."""
    return unit_vector(gq.base, gq.vertex_id(i, j))


__all__ = [
    "Quiver",
    "GridQuiver",
    "QuadraticForms",
    "DimVector",
    "HORIZONTAL",
    "VERTICAL",
    "euler_form",
    "lambda_form",
    "tits_form",
    "unit_vector",
    "grid_unit",
    "square_product",
    "quadratic_forms",
]
