"""End-to-end identity checks, coefficient cross-checks, and Betti tables.

Every check returns a Verdict: a per-box, per-window certificate that two
exact computations agree (or the first coefficient where they do not).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import QDilogError
from .qalgebra import (
    AlgebraElement,
    monomial_product_scalar,
    ordered_dilog_product,
)
from .qseries import QSeries, poincare_P
from .quiver import HORIZONTAL, VERTICAL, GridQuiver, quadratic_forms, square_product
from .roots import canonical_order, random_valid_order
from .strata import geometric_sum, poincare_stratum, strata_table


class IdentityMismatch(QDilogError):
    """Raised when an identity that must hold fails; carries the verdict."""

    def __init__(self, verdict):
        super().__init__(verdict.describe())
        self.verdict = verdict


@dataclass(frozen=True)
class Failure:
    """First differing coefficient of a failed comparison."""

    gamma: tuple | None
    texp: int
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {
            "gamma": list(self.gamma) if self.gamma is not None else None,
            "texp": self.texp,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class Verdict:
    """Outcome of one identity check on a stated box and window."""

    name: str
    params: dict
    passed: bool
    window: int
    failure: Failure | None = None

    def describe(self) -> str:
        head = f"{self.name}: {'pass' if self.passed else 'FAIL'}"
        opts = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        tail = f" [{opts}; certified window t^{self.window}]"
        if self.failure is None:
            return head + tail
        f = self.failure
        where = f"gamma={f.gamma}" if f.gamma is not None else "scalar side"
        return (
            head
            + tail
            + f" first difference at {where}, t^{f.texp}: {f.lhs} != {f.rhs}"
        )

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "params": {
                k: (list(v) if isinstance(v, tuple) else v)
                for k, v in self.params.items()
            },
            "passed": self.passed,
            "window": self.window,
            "failure": self.failure.to_json() if self.failure else None,
        }


def _first_series_difference(lhs: QSeries, rhs: QSeries, window: int):
    lo = min(lhs.lo, rhs.lo)
    hi = min(lhs.hi, rhs.hi, window)
    for e in range(lo, hi + 1):
        a = lhs.coeff(e) if e >= lhs.lo else 0
        b = rhs.coeff(e) if e >= rhs.lo else 0
        if a != b:
            return e, a, b
    return None


def compare_series(name: str, params: dict, lhs: QSeries, rhs: QSeries, window: int) -> Verdict:
    window = min(window, lhs.hi, rhs.hi)
    diff = _first_series_difference(lhs, rhs, window)
    if diff is None:
        return Verdict(name, params, True, window)
    e, a, b = diff
    return Verdict(name, params, False, window, Failure(None, e, a, b))


def compare_elements(
    name: str, params: dict, lhs: AlgebraElement, rhs: AlgebraElement, window: int
) -> Verdict:
    """Cellwise comparison; missing cells are exactly zero."""
    cells = sorted(set(lhs.terms) | set(rhs.terms))
    certified = window
    for gamma in cells:
        sl = lhs.terms.get(gamma)
        sr = rhs.terms.get(gamma)
        pair_hi = min(
            sl.hi if sl is not None else window,
            sr.hi if sr is not None else window,
            window,
        )
        certified = min(certified, pair_hi)
        zl = sl if sl is not None else QSeries.zero(pair_hi)
        zr = sr if sr is not None else QSeries.zero(pair_hi)
        diff = _first_series_difference(zl, zr, pair_hi)
        if diff is not None:
            e, a, b = diff
            return Verdict(name, params, False, pair_hi, Failure(gamma, e, a, b))
    return Verdict(name, params, True, certified)


def _expand_box(gq: GridQuiver, box):
    if isinstance(box, int):
        return (box,) * gq.base.vertex_count
    box = tuple(box)
    if len(box) == 1:
        return box * gq.base.vertex_count
    if len(box) != gq.base.vertex_count:
        raise ValueError(
            f"box needs {gq.base.vertex_count} entries, got {len(box)}"
        )
    return box


def check_theorem_mt(
    n: int,
    nprime: int,
    box,
    window: int,
    random_orders: int = 0,
    seed: int = 2026,
) -> Verdict:
    """Compare the horizontal and vertical ordered dilogarithm products.

    With random_orders > 0, additionally recomputes each side under that
    many shuffled valid orders and demands the identical element every time.
    """
    gq = square_product(n, nprime)
    box = _expand_box(gq, box)
    params = {
        "n": n,
        "nprime": nprime,
        "box": box,
        "orders": "canonical" if not random_orders else f"canonical+random:{random_orders}",
    }
    lhs = ordered_dilog_product(gq, canonical_order(gq, HORIZONTAL), box, window)
    rhs = ordered_dilog_product(gq, canonical_order(gq, VERTICAL), box, window)
    verdict = compare_elements("theorem-mt", params, lhs, rhs, window)
    if not verdict.passed or not random_orders:
        return verdict
    rng = random.Random(seed)
    for axis in (HORIZONTAL, VERTICAL):
        for trial in range(random_orders):
            order = random_valid_order(gq, axis, rng)
            elem = ordered_dilog_product(gq, order, box, window)
            sub = compare_elements(
                "theorem-mt",
                dict(params, order_axis=axis, order_trial=trial),
                lhs,
                elem,
                window,
            )
            if not sub.passed:
                return sub
    return verdict


def pairs_decompositions(a: int, b: int):
    """All (m10, m01, m11) with m10 + m11 = a and m01 + m11 = b."""
    return [(a - m11, b - m11, m11) for m11 in range(min(a, b) + 1)]


def _poincare(j: int, hi: int) -> QSeries:
    return poincare_P(j, hi)


def check_pentagon(box, window: int) -> Verdict:
    """The pentagon identity, in the algebra and as a q-series family.

    Algebra form: E(y1)E(y2) = E(y2)E(y12)E(y1) over the two-vertex row
    quiver (the square product of A_1 and A_2).  Scalar form: for all
    g1, g2 up to the box, P_g1 P_g2 = sum over decompositions of
    q^(m10*m01) P_m10 P_m01 P_m11.
    """
    b1, b2 = (box, box) if isinstance(box, int) else tuple(box)
    gq = square_product(1, 2)
    grid_box = (b1, b2)
    params = {"box": (b1, b2)}
    # The canonical orders of the one-row grid are exactly the two pentagon
    # products: vertical gives E(y1)E(y2), horizontal E(y2)E(y12)E(y1).
    ver = canonical_order(gq, VERTICAL)
    hor = canonical_order(gq, HORIZONTAL)
    assert [r.dim_vector(gq) for r in ver.sequence] == [(1, 0), (0, 1)]
    assert [r.dim_vector(gq) for r in hor.sequence] == [(0, 1), (1, 1), (1, 0)]
    lhs = ordered_dilog_product(gq, ver, grid_box, window)
    rhs = ordered_dilog_product(gq, hor, grid_box, window)
    verdict = compare_elements("pentagon-E5", params, lhs, rhs, window)
    if not verdict.passed:
        return verdict
    for g1 in range(b1 + 1):
        for g2 in range(b2 + 1):
            lhs_s = _poincare(g1, window) * _poincare(g2, window)
            rhs_s = QSeries.zero(window)
            for m10, m01, m11 in pairs_decompositions(g1, g2):
                shift = 2 * m10 * m01
                term = (
                    _poincare(m10, window)
                    * _poincare(m01, window)
                    * _poincare(m11, window)
                ).shift(shift)
                rhs_s = rhs_s + term.truncate(window)
            sub = compare_series(
                "pentagon-qseries", dict(params, gamma=(g1, g2)), lhs_s, rhs_s, window
            )
            if not sub.passed:
                return sub
    return Verdict("pentagon", params, True, window)


def _keller_side(pair_a, pair_b, window: int) -> QSeries:
    total = QSeries.zero(window)
    for m10, m01, m11 in pairs_decompositions(*pair_a):
        pm = _poincare(m10, window) * _poincare(m01, window) * _poincare(m11, window)
        for n10, n01, n11 in pairs_decompositions(*pair_b):
            shift = 2 * (m10 * m01 + n10 * n01 + m11 * n11)
            pn = (
                _poincare(n10, window)
                * _poincare(n01, window)
                * _poincare(n11, window)
            )
            total = total + (pm * pn).shift(shift).truncate(window)
    return total


def check_55_keller(g1: int, g2: int, g3: int, g4: int, window: int) -> Verdict:
    """The 55-term identity with the extra q^(m11*n11) factor, both sides
    evaluated literally and cross-checked against the stratum sums of the
    2x2 grid."""
    params = {"gamma": (g1, g2, g3, g4)}
    lhs = _keller_side((g1, g2), (g3, g4), window)
    rhs = _keller_side((g1, g3), (g2, g4), window)
    verdict = compare_series("keller-55", params, lhs, rhs, window)
    if not verdict.passed:
        return verdict
    gq = square_product(2, 2)
    gamma = (g1, g2, g3, g4)
    hor = geometric_sum(gq, gamma, HORIZONTAL, window)
    ver = geometric_sum(gq, gamma, VERTICAL, window)
    sub = compare_series(
        "keller-55-vs-horizontal-strata", params, lhs, hor, window
    )
    if not sub.passed:
        return sub
    sub = compare_series("keller-55-vs-vertical-strata", params, rhs, ver, window)
    if not sub.passed:
        return sub
    return verdict


def _class_monomial(gq: GridQuiver, gamma, heads, tails):
    seq = []
    for group in (heads, tails):
        for (i, j) in sorted(group):
            v = gq.vertex_id(i, j)
            if gamma[v]:
                e = [0] * gq.base.vertex_count
                e[v] = 1
                seq.append((tuple(e), gamma[v]))
    return monomial_product_scalar(gq.base, seq)


def coefficient_crosscheck(
    n: int, nprime: int, gamma, axis: str, window: int
) -> Verdict:
    """Check the closed form for one y_gamma coefficient of the ordered
    product: (-1)^s t^(-2 hip + sum gamma^2) times the head/tail reordering
    scalar times the geometric stratum sum of the axis."""
    gq = square_product(n, nprime)
    gamma = tuple(gamma)
    params = {"n": n, "nprime": nprime, "gamma": gamma, "axis": axis}
    order = canonical_order(gq, axis)
    elem = ordered_dilog_product(gq, order, gamma, window)
    got = elem.coeff(gamma)
    if got is None:
        got = QSeries.zero(window)
    s = sum(gamma)
    forms = quadratic_forms(gq, gamma)
    mono = _class_monomial(
        gq, gamma, gq.horizontal_heads(), gq.horizontal_tails()
    )
    if mono.gamma != gamma:
        raise QDilogError("head/tail monomial does not rebuild gamma")
    shift = -2 * forms.hip + sum(g * g for g in gamma) + mono.tpow
    sign = (1 if s % 2 == 0 else -1) * mono.sign
    geo = geometric_sum(gq, gamma, axis, window - shift)
    expected = geo.shift(shift).scale(sign).truncate(window)
    verdict = compare_series("coefficient-crosscheck", params, got, expected, window)
    if not verdict.passed or axis == HORIZONTAL:
        return verdict
    # Pre-switch form of the vertical side: vip and the VerH/VerT monomial.
    mono_v = _class_monomial(gq, gamma, gq.vertical_heads(), gq.vertical_tails())
    shift_v = -2 * forms.vip + sum(g * g for g in gamma) + mono_v.tpow
    sign_v = (1 if s % 2 == 0 else -1) * mono_v.sign
    geo_v = geometric_sum(gq, gamma, axis, window - shift_v)
    expected_v = geo_v.shift(shift_v).scale(sign_v).truncate(window)
    return compare_series(
        "coefficient-crosscheck-preswitch", params, got, expected_v, window
    )


def dt_invariant(n: int, nprime: int, box, window: int):
    """The common value of the two ordered products; raises on mismatch."""
    gq = square_product(n, nprime)
    box = _expand_box(gq, box)
    verdict = check_theorem_mt(n, nprime, box, window)
    if not verdict.passed:
        raise IdentityMismatch(verdict)
    elem = ordered_dilog_product(gq, canonical_order(gq, HORIZONTAL), box, window)
    return verdict, elem


# -- Betti tables -------------------------------------------------------------


@dataclass(frozen=True)
class BettiColumn:
    """One stratum column: coefficients of q^(w + codim) * P_stratum."""

    stratum_id: str
    axis: str
    label: str
    codim: int
    w: int
    poincare: str
    values: tuple

    def to_json(self) -> dict:
        return {
            "id": self.stratum_id,
            "axis": self.axis,
            "label": self.label,
            "codim": self.codim,
            "w": self.w,
            "poincare": self.poincare,
            "values": list(self.values),
        }


@dataclass(frozen=True)
class BettiTable:
    """Per-stratum q-degree table for both axes plus the shared total."""

    gamma: tuple
    window: int
    qdegrees: tuple
    columns: tuple
    total: tuple

    def axis_columns(self, axis: str):
        return [c for c in self.columns if c.axis == axis]

    def to_json(self) -> dict:
        return {
            "gamma": list(self.gamma),
            "window": self.window,
            "qdegrees": list(self.qdegrees),
            "columns": [c.to_json() for c in self.columns],
            "total": list(self.total),
        }

    def to_csv(self) -> str:
        header = ["q"] + [c.stratum_id for c in self.columns] + ["total"]
        lines = [",".join(header)]
        for row, deg in enumerate(self.qdegrees):
            cells = [str(deg)]
            cells += [str(c.values[row]) for c in self.columns]
            cells.append(str(self.total[row]))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_pretty(self) -> str:
        header = ["q"] + [c.stratum_id for c in self.columns] + ["total"]
        rows = [header]
        rows.append(
            ["codim"] + [str(c.codim) for c in self.columns] + [""]
        )
        rows.append(["w"] + [str(c.w) for c in self.columns] + [""])
        rows.append(["P"] + [c.poincare for c in self.columns] + [""])
        for row, deg in enumerate(self.qdegrees):
            rows.append(
                [f"q^{deg}"]
                + [str(c.values[row]) for c in self.columns]
                + [str(self.total[row])]
            )
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        return "\n".join(
            "  ".join(cell.rjust(widths[i]) for i, cell in enumerate(r)) for r in rows
        )


def betti_table(gq: GridQuiver, gamma, window: int) -> BettiTable:
    """Coefficients of q^(w+codim) * P_stratum per stratum and q-degree.

    The shared total column is the geometric sum; the two axes must give the
    same totals, and that is asserted here every time.
    """
    gamma = tuple(gamma)
    degrees = tuple(range(window // 2 + 1))
    columns = []
    totals = {}
    for axis, tag in ((HORIZONTAL, "H"), (VERTICAL, "V")):
        rows = strata_table(gq, gamma, axis)
        axis_total = [0] * len(degrees)
        for idx, row in enumerate(rows, start=1):
            shift = 2 * (row.codim + row.w)
            series = (
                poincare_stratum(row.stratum, window - shift).shift(shift)
                if shift <= window
                else QSeries.zero(window)
            )
            values = tuple(series.coeff(2 * d) for d in degrees)
            for d, v in enumerate(values):
                axis_total[d] += v
            columns.append(
                BettiColumn(
                    stratum_id=f"{tag}{idx}",
                    axis=axis,
                    label=row.stratum.label(),
                    codim=row.codim,
                    w=row.w,
                    poincare=row.poincare,
                    values=values,
                )
            )
        totals[axis] = axis_total
    if totals[HORIZONTAL] != totals[VERTICAL]:
        raise IdentityMismatch(
            Verdict(
                "betti-row-sums",
                {"gamma": gamma},
                False,
                window,
                Failure(None, -1, 0, 0),
            )
        )
    return BettiTable(
        gamma=gamma,
        window=window,
        qdegrees=degrees,
        columns=tuple(columns),
        total=tuple(totals[HORIZONTAL]),
    )


__all__ = [
    "Verdict",
    "Failure",
    "IdentityMismatch",
    "compare_series",
    "compare_elements",
    "check_theorem_mt",
    "check_pentagon",
    "check_55_keller",
    "coefficient_crosscheck",
    "dt_invariant",
    "pairs_decompositions",
    "betti_table",
    "BettiTable",
    "BettiColumn",
]
