"""Kostant partitions, lace-diagram normal forms, and grid strata.

A stratum of the grid representation space fixes one type-A orbit per row
(horizontal) or per column (vertical); it is indexed by one Kostant
partition per line.  Everything here is exact integer combinatorics except
the Hom dimensions, which are computed by rational linear algebra on the
intertwiner equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _threads
from .errors import AxisMismatch
from .qseries import QSeries, poincare_P
from .quiver import HORIZONTAL, VERTICAL, GridQuiver, Quiver, euler_form
from .roots import GridRoot, sc


@dataclass(frozen=True)
class LineQuiver:
    """An orientation of the A_N Dynkin diagram on vertices 1..N.

    orientation[c-1] is 'r' if the arrow between c and c+1 points right
    (tail c), 'l' if it points left.
    """

    length: int
    orientation: tuple

    def __post_init__(self):
        object.__setattr__(self, "orientation", tuple(self.orientation))
        if len(self.orientation) != self.length - 1:
            raise ValueError("orientation must have length N-1")
        if any(d not in ("r", "l") for d in self.orientation):
            raise ValueError("orientation entries must be 'r' or 'l'")

    @classmethod
    def from_string(cls, pattern: str) -> "LineQuiver":
        """Parse e.g. 'rrl' as 1->2->3<-4."""
        return cls(len(pattern) + 1, tuple(pattern))

    def arrows(self):
        """Arrows as 1-based (tail, head) pairs."""
        out = []
        for c, d in enumerate(self.orientation, start=1):
            out.append((c, c + 1) if d == "r" else ((c + 1), c))
        return out

    def to_quiver(self) -> Quiver:
        return Quiver(self.length, tuple((t - 1, h - 1) for t, h in self.arrows()))

    def intervals(self):
        """All positive roots [k, l], lexicographic."""
        return [
            (k, l)
            for k in range(1, self.length + 1)
            for l in range(k, self.length + 1)
        ]


def line_quiver(gq: GridQuiver, axis: str, line: int) -> LineQuiver:
    """The row or column subquiver of the grid as a line quiver."""
    return LineQuiver(gq.line_length(axis), gq.line_orientation(axis, line))


@dataclass(frozen=True)
class KostantPartition:
    """Multiplicities of interval roots summing to a line dimension vector."""

    line: LineQuiver
    mult: tuple  # sorted ((k, l), m) pairs with m > 0

    def __post_init__(self):
        cleaned = tuple(sorted((tuple(iv), m) for iv, m in self.mult if m))
        object.__setattr__(self, "mult", cleaned)

    def items(self):
        return self.mult

    def multiplicity(self, k: int, l: int) -> int:
        for iv, m in self.mult:
            if iv == (k, l):
                return m
        return 0

    def gamma(self):
        g = [0] * self.line.length
        for (k, l), m in self.mult:
            for c in range(k - 1, l):
                g[c] += m
        return tuple(g)

    def part_count(self) -> int:
        return sum(m for _, m in self.mult)

    def label(self) -> str:
        if not self.mult:
            return "0"
        return ",".join(f"[{k},{l}]^{m}" if m > 1 else f"[{k},{l}]"
                        for (k, l), m in self.mult)


def enumerate_kostant(line: LineQuiver, gamma) -> list:
    """All Kostant partitions of gamma, most generic (long roots) first.

    Deterministic order: descending lexicographic on the multiplicity vector
    over the non-simple intervals in lexicographic order; the simple-root
    multiplicities are the forced remainders.
    """
    if len(gamma) != line.length:
        raise ValueError("gamma must match the line length")
    if any(g < 0 for g in gamma):
        raise ValueError("gamma must be non-negative")
    nonsimple = [(k, l) for (k, l) in line.intervals() if k < l]
    out = []

    def descend(idx, remaining, chosen):
        if idx == len(nonsimple):
            mult = list(chosen)
            for c, g in enumerate(remaining, start=1):
                if g:
                    mult.append(((c, c), g))
            out.append(KostantPartition(line, tuple(mult)))
            return
        k, l = nonsimple[idx]
        cap = min(remaining[k - 1 : l])
        for m in range(cap, -1, -1):
            nxt = list(remaining)
            for c in range(k - 1, l):
                nxt[c] -= m
            descend(idx + 1, nxt, chosen + (((k, l), m),) if m else chosen)

    descend(0, list(gamma), ())
    return out


@dataclass(frozen=True)
class NormalForm:
    """Per-arrow 0/1 matrices realizing the canonical lace diagram."""

    line: LineQuiver
    gamma: tuple
    matrices: tuple  # one (rows=dim head, cols=dim tail) tuple-matrix per arrow


def _strand_order(line: LineQuiver):
    """Lace-diagram drawing order: non-simple roots lexicographic, then
    simple roots."""
    nonsimple = [(k, l) for (k, l) in line.intervals() if k < l]
    simple = [(k, k) for k in range(1, line.length + 1)]
    return nonsimple + simple


def normal_form(line: LineQuiver, kp: KostantPartition) -> NormalForm:
    """Matrices of the canonical lace diagram: strands drawn in root order
    from the top, always taking the highest unused dot in each column."""
    gamma = kp.gamma()
    next_dot = [0] * (line.length + 1)  # 1-based columns
    strands = []
    for k, l in _strand_order(line):
        for _ in range(kp.multiplicity(k, l)):
            dots = {}
            for c in range(k, l + 1):
                dots[c] = next_dot[c]
                next_dot[c] += 1
            strands.append(dots)
    matrices = []
    for t, h in line.arrows():
        mat = [[0] * gamma[t - 1] for _ in range(gamma[h - 1])]
        for dots in strands:
            if t in dots and h in dots:
                mat[dots[h]][dots[t]] = 1
        matrices.append(tuple(tuple(row) for row in mat))
    return NormalForm(line, gamma, tuple(matrices))


# -- Hom/Ext dimensions via intertwiner equations ---------------------------


def interval_rep(line: LineQuiver, k: int, l: int):
    """The interval module M_[k,l]: dimension 1 on k..l, identity maps
    inside the interval."""
    dims = tuple(1 if k <= c <= l else 0 for c in range(1, line.length + 1))
    mats = []
    for t, h in line.arrows():
        if k <= t <= l and k <= h <= l:
            mats.append(((1,),))
        else:
            mats.append(tuple(() for _ in range(dims[h - 1])))
    return dims, tuple(mats)


def partition_rep(line: LineQuiver, kp: KostantPartition):
    """The normal-form representative of the orbit of kp."""
    nf = normal_form(line, kp)
    return nf.gamma, nf.matrices


def _rank(rows):
    """Rank of an integer matrix over the rationals."""
    mat = [[Fraction(x) for x in row] for row in rows if any(row)]
    rank = 0
    col_count = len(mat[0]) if mat else 0
    piv_col = 0
    for piv_col in range(col_count):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][piv_col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pv = mat[rank][piv_col]
        for r in range(rank + 1, len(mat)):
            f = mat[r][piv_col]
            if f:
                ratio = f / pv
                row = mat[r]
                src = mat[rank]
                for c in range(piv_col, col_count):
                    row[c] -= src[c] * ratio
        rank += 1
        if rank == len(mat):
            break
    return rank


def _intertwiner_matrix(line: LineQuiver, rep1, rep2):
    """Rows of the linear system f_h o m1_a = m2_a o f_t over all arrows."""
    dims1, mats1 = rep1
    dims2, mats2 = rep2
    offsets = []
    total = 0
    for v in range(line.length):
        offsets.append(total)
        total += dims2[v] * dims1[v]
    rows = []
    for a, (t, h) in enumerate(line.arrows()):
        m1, m2 = mats1[a], mats2[a]
        for r in range(dims2[h - 1]):
            for c in range(dims1[t - 1]):
                row = [0] * total
                # + f_h[r, s] * m1[s, c]
                for s in range(dims1[h - 1]):
                    if m1[s][c]:
                        row[offsets[h - 1] + r * dims1[h - 1] + s] += m1[s][c]
                # - m2[r, s] * f_t[s, c]
                for s in range(dims2[t - 1]):
                    if m2[r][s]:
                        row[offsets[t - 1] + s * dims1[t - 1] + c] -= m2[r][s]
                rows.append(row)
    return rows, total, len(rows)


def intertwiner_dim(line: LineQuiver, rep1, rep2) -> int:
    """dim Hom(rep1, rep2): kernel dimension of the intertwiner system."""
    rows, unknowns, _ = _intertwiner_matrix(line, rep1, rep2)
    return unknowns - _rank(rows)


def intertwiner_codim(line: LineQuiver, rep1, rep2) -> int:
    """dim Ext(rep1, rep2): cokernel dimension of the intertwiner system."""
    rows, _, equations = _intertwiner_matrix(line, rep1, rep2)
    return equations - _rank(rows)


@lru_cache(maxsize=None)
def dhom(line: LineQuiver, r1, r2) -> int:
    """dim Hom between the interval modules for r1 = (k,l) and r2 = (u,v)."""
    return intertwiner_dim(line, interval_rep(line, *r1), interval_rep(line, *r2))


@lru_cache(maxsize=None)
def dext(line: LineQuiver, r1, r2) -> int:
    """dim Ext between interval modules, by the cokernel rank count."""
    return intertwiner_codim(line, interval_rep(line, *r1), interval_rep(line, *r2))


def interval_euler(line: LineQuiver, r1, r2) -> int:
    q = line.to_quiver()
    g1 = interval_rep(line, *r1)[0]
    g2 = interval_rep(line, *r2)[0]
    return euler_form(q, g1, g2)


@lru_cache(maxsize=None)
def codim_orbit(line: LineQuiver, kp: KostantPartition) -> int:
    """Complex codimension of the orbit of kp in its representation space.

    Equals dim Hom(M, M) - chi(gamma, gamma) for M the direct sum of the
    interval modules with the given multiplicities.
    """
    gamma = kp.gamma()
    total = -euler_form(line.to_quiver(), gamma, gamma)
    for iv1, m1 in kp.items():
        for iv2, m2 in kp.items():
            total += m1 * m2 * dhom(line, iv1, iv2)
    return total


# -- strata ------------------------------------------------------------------


@dataclass(frozen=True)
class Stratum:
    """One Kostant partition per line of the chosen axis."""

    axis: str
    parts: tuple  # KostantPartition per line 1..line_count

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def gamma(self, gq: GridQuiver):
        g = [0] * gq.base.vertex_count
        for line, kp in enumerate(self.parts, start=1):
            for pos, v in enumerate(kp.gamma(), start=1):
                g[gq.line_vertex(self.axis, line, pos)] += v
        return tuple(g)

    def poincare_multiplicities(self):
        """All root multiplicities across lines (for the Poincare product)."""
        return [m for kp in self.parts for _, m in kp.items()]

    def label(self) -> str:
        return " | ".join(kp.label() for kp in self.parts)


def line_gamma(gq: GridQuiver, gamma, axis: str, line: int):
    """Restrict a grid dimension vector to one line."""
    return tuple(
        gamma[gq.line_vertex(axis, line, pos)]
        for pos in range(1, gq.line_length(axis) + 1)
    )


def enumerate_strata(gq: GridQuiver, gamma, axis: str) -> list:
    """All strata of gamma on the axis, row-major over per-line partitions."""
    if axis not in (HORIZONTAL, VERTICAL):
        raise AxisMismatch(f"unknown axis {axis!r}")
    per_line = []
    for line in range(1, gq.line_count(axis) + 1):
        lq = line_quiver(gq, axis, line)
        per_line.append(enumerate_kostant(lq, line_gamma(gq, gamma, axis, line)))
    strata = [Stratum(axis, ())]
    for options in per_line:
        strata = [
            Stratum(axis, s.parts + (kp,)) for s in strata for kp in options
        ]
    return strata


def codim_stratum(gq: GridQuiver, s: Stratum) -> int:
    """Sum of the per-line orbit codimensions."""
    return sum(codim_orbit(kp.line, kp) for kp in s.parts)


@lru_cache(maxsize=None)
def _poincare_product(mults, hi: int) -> QSeries:
    out = QSeries.one(hi)
    for m in mults:
        out = out * poincare_P(m, hi)
    return out


def poincare_stratum(s: Stratum, hi: int) -> QSeries:
    """Product of P_{m_beta} over every root of the stratum."""
    mults = tuple(sorted(s.poincare_multiplicities()))
    return _poincare_product(mults, hi)


@lru_cache(maxsize=None)
def _sc_table(gq: GridQuiver, axis: str, line: int):
    """sc values for root pairs on lines (line, line+1) keyed by intervals."""
    length = gq.line_length(axis)
    table = {}
    for k1 in range(1, length + 1):
        for l1 in range(k1, length + 1):
            for k2 in range(1, length + 1):
                for l2 in range(k2, length + 1):
                    r1 = GridRoot(axis, line, k1, l1)
                    r2 = GridRoot(axis, line + 1, k2, l2)
                    table[((k1, l1), (k2, l2))] = sc(gq, r1, r2)
    return table


@lru_cache(maxsize=None)
def _pair_sc_sum(gq, axis, line, kp1, kp2) -> int:
    table = _sc_table(gq, axis, line)
    return sum(
        table[(iv1, iv2)] * m1 * m2
        for iv1, m1 in kp1.items()
        for iv2, m2 in kp2.items()
    )


def w_shift(gq: GridQuiver, s: Stratum) -> int:
    """Superpotential shift: sum of sc over root pairs in adjacent lines,
    weighted by the multiplicities."""
    return sum(
        _pair_sc_sum(gq, s.axis, line, s.parts[line - 1], s.parts[line])
        for line in range(1, len(s.parts))
    )


@lru_cache(maxsize=None)
def _pair_overlap_sum(kp1, kp2) -> int:
    total = 0
    for (k1, l1), m1 in kp1.items():
        for (k2, l2), m2 in kp2.items():
            lo, hi = max(k1, k2), min(l1, l2)
            if lo <= hi:
                total += ((hi - lo + 1) // 2) * m1 * m2
    return total


def c_eta(gq: GridQuiver, s: Stratum) -> int:
    """The homotopy dimension count: sum over adjacent rows of
    floor(overlap/2) weighted by multiplicities (horizontal strata)."""
    if s.axis != HORIZONTAL:
        raise AxisMismatch("c_eta is defined for horizontal strata")
    return sum(
        _pair_overlap_sum(s.parts[line - 1], s.parts[line])
        for line in range(1, len(s.parts))
    )


def geometric_sum(gq: GridQuiver, gamma, axis: str, hi: int) -> QSeries:
    """Sum over strata of q^(w + codim) times the stratum Poincare series."""
    strata = enumerate_strata(gq, gamma, axis)

    def contribution(s):
        shift = 2 * (w_shift(gq, s) + codim_stratum(gq, s))
        if shift > hi:
            return QSeries.zero(hi)
        return poincare_stratum(s, hi - shift).shift(shift).truncate(hi)

    total = QSeries.zero(hi)
    for piece in _threads.map_ordered(contribution, strata):
        total = total + piece
    return total


@dataclass(frozen=True)
class StratumRow:
    """One display row of the printed stratum summary."""

    stratum: Stratum
    codim: int
    w: int
    poincare: str


def poincare_factorization(s: Stratum) -> str:
    """Format the Poincare product like 'P2^2*P1'."""
    counts = {}
    for m in s.poincare_multiplicities():
        if m >= 1:
            counts[m] = counts.get(m, 0) + 1
    if not counts:
        return "1"
    parts = []
    for m in sorted(counts, reverse=True):
        e = counts[m]
        parts.append(f"P{m}" if e == 1 else f"P{m}^{e}")
    return "*".join(parts)


def strata_table(gq: GridQuiver, gamma, axis: str) -> list:
    """Strata with codim/w/Poincare data, in the printed-table order
    (codimension ascending, superpotential shift descending, then the
    enumeration order)."""
    rows = []
    for idx, s in enumerate(enumerate_strata(gq, gamma, axis)):
        rows.append(
            (
                codim_stratum(gq, s),
                -w_shift(gq, s),
                idx,
                s,
            )
        )
    rows.sort(key=lambda r: r[:3])
    return [
        StratumRow(stratum=s, codim=c, w=-negw, poincare=poincare_factorization(s))
        for c, negw, _, s in rows
    ]


__all__ = [
    "LineQuiver",
    "KostantPartition",
    "NormalForm",
    "Stratum",
    "StratumRow",
    "line_quiver",
    "line_gamma",
    "enumerate_kostant",
    "normal_form",
    "interval_rep",
    "partition_rep",
    "intertwiner_dim",
    "intertwiner_codim",
    "dhom",
    "dext",
    "interval_euler",
    "codim_orbit",
    "enumerate_strata",
    "codim_stratum",
    "poincare_stratum",
    "w_shift",
    "c_eta",
    "geometric_sum",
    "poincare_factorization",
    "strata_table",
]
