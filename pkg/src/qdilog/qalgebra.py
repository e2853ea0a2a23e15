"""The completed quantum algebra of a quiver inside a truncation box.

Basis symbols y_gamma are indexed by dimension vectors; the product twists by
y_g1 y_g2 = -q^(lambda(g1,g2)/2) y_(g1+g2) for nonzero g1, g2, and y_0 = 1 is
the unit.  An AlgebraElement stores one coefficient QSeries per dimension
vector inside a componentwise box; missing cells are exactly zero.

Products run on a packed representation: each coefficient series becomes one
big integer with 256-bit limbs holding balanced digits, so a cell-by-cell
series product is a single CPython bigint multiply.  Every pack and unpack
asserts |coefficient| < 2^100; since a single multiply-accumulate step over
inputs within that bound stays below 2^225, no digit can ever disturb its
neighbour between two asserted checkpoints, and the encoding is exact.
Tests cross-check the engine against a naive convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BoxMismatch, InvalidOrder, ZeroVectorOperand
from .qseries import QSeries, poincare_P
from .quiver import Quiver, lambda_form
from .roots import RootOrder, validate_order
from .strata import KostantPartition, codim_orbit

_LIMB_BITS = 256
_LIMB_BYTES = _LIMB_BITS // 8
_HALF = 1 << (_LIMB_BITS - 1)
_GUARD = 1 << 100


@dataclass(frozen=True)
class Monomial:
    """A single scalar multiple of a basis symbol: sign * t^tpow * y_gamma."""

    gamma: tuple
    sign: int
    tpow: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def scalar_series(self, hi: int) -> QSeries:
        return QSeries.term(self.sign, self.tpow, hi)


def basis_product(q: Quiver, g1, g2) -> Monomial:
    """y_g1 * y_g2 = -q^(lambda(g1,g2)/2) y_(g1+g2) for nonzero operands."""
    if not any(g1) or not any(g2):
        raise ZeroVectorOperand("the unit y_0 is handled separately")
    lam = lambda_form(q, g1, g2)
    return Monomial(tuple(a + b for a, b in zip(g1, g2)), -1, lam)


def unit_monomial(q: Quiver) -> Monomial:
    return Monomial((0,) * q.vertex_count, 1, 0)


def monomial_product_scalar(q: Quiver, seq) -> Monomial:
    """The single Monomial equal to an ordered product of basis powers.

    seq is a list of (gamma, exponent) pairs; zero exponents are skipped.
    """
    acc = unit_monomial(q)
    for gamma, e in seq:
        if e < 0:
            raise ValueError("exponents must be non-negative")
        for _ in range(e):
            if not any(acc.gamma):
                acc = Monomial(tuple(gamma), acc.sign, acc.tpow)
            else:
                step = basis_product(q, acc.gamma, gamma)
                acc = Monomial(step.gamma, acc.sign * step.sign, acc.tpow + step.tpow)
    return acc


# -- packed coefficient engine ----------------------------------------------


def _pack_series(s: QSeries):
    """(lo, hi, bigint) encoding of a QSeries window."""
    if s.is_zero():
        return (s.hi + 1, s.hi, 0)
    pos = bytearray(_LIMB_BYTES * len(s.coeffs))
    neg = bytearray(_LIMB_BYTES * len(s.coeffs))
    for i, c in enumerate(s.coeffs):
        if c:
            if abs(c) >= _GUARD:
                raise RuntimeError("coefficient beyond the packed-engine bound")
            start = _LIMB_BYTES * i
            if c > 0:
                pos[start : start + _LIMB_BYTES] = c.to_bytes(_LIMB_BYTES, "little")
            else:
                neg[start : start + _LIMB_BYTES] = (-c).to_bytes(_LIMB_BYTES, "little")
    val = int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")
    return (s.lo, s.hi, val)


@lru_cache(maxsize=None)
def _offset(nlimbs: int) -> int:
    total = 0
    for i in range(nlimbs):
        total += _HALF << (_LIMB_BITS * i)
    return total


def _trunc(val: int, nlimbs: int) -> int:
    if nlimbs <= 0:
        return 0
    m = 1 << (_LIMB_BITS * nlimbs)
    r = val & (m - 1)
    if r >= m >> 1:
        r -= m
    return r


def _unpack_series(packed) -> QSeries:
    lo, hi, val = packed
    n = hi - lo + 1
    if n <= 0 or val == 0:
        return QSeries.zero(hi)
    val = _trunc(val, n)
    shifted = val + _offset(n)
    if not 0 <= shifted < (1 << (_LIMB_BITS * n)):
        raise RuntimeError("packed value escaped its window")
    raw = shifted.to_bytes(_LIMB_BYTES * n, "little")
    coeffs = []
    for i in range(n):
        d = int.from_bytes(raw[_LIMB_BYTES * i : _LIMB_BYTES * (i + 1)], "little")
        d -= _HALF
        if abs(d) >= _GUARD:
            raise RuntimeError("coefficient beyond the packed-engine bound")
        coeffs.append(d)
    return QSeries(lo, coeffs, hi)


def _accumulate(out: dict, key, piece):
    """Window-aware sum of packed pieces; truncation waits for unpack."""
    cur = out.get(key)
    if cur is None:
        out[key] = piece
        return
    lo1, hi1, v1 = cur
    lo2, hi2, v2 = piece
    hi = min(hi1, hi2)
    lo = min(lo1, lo2)
    if hi < lo:
        out[key] = (hi + 1, hi, 0)
        return
    if lo1 > lo:
        v1 <<= _LIMB_BITS * (lo1 - lo)
    if lo2 > lo:
        v2 <<= _LIMB_BITS * (lo2 - lo)
    out[key] = (lo, hi, v1 + v2)


class AlgebraElement:
    """Finitely supported map from dimension vectors in a box to QSeries.

    Absent cells are exactly zero (not truncated away): every constructor in
    this package only drops a cell when its coefficient vanishes identically.
    Instances are treated as immutable.
    """

    __slots__ = ("quiver", "box", "terms")

    def __init__(self, quiver: Quiver, box, terms: dict):
        self.quiver = quiver
        self.box = tuple(box)
        if len(self.box) != quiver.vertex_count:
            raise ValueError("box must assign a bound to every vertex")
        for gamma in terms:
            if len(gamma) != quiver.vertex_count or any(
                g > b or g < 0 for g, b in zip(gamma, self.box)
            ):
                raise ValueError(f"cell {gamma} outside the box {self.box}")
        self.terms = dict(terms)

    @classmethod
    def unit(cls, quiver: Quiver, box, hi: int) -> "AlgebraElement":
        zero = (0,) * quiver.vertex_count
        return cls(quiver, box, {zero: QSeries.one(hi)})

    @classmethod
    def basis(cls, quiver: Quiver, box, gamma, hi: int) -> "AlgebraElement":
        """The basis symbol y_gamma as an element (dropped if outside box)."""
        gamma = tuple(gamma)
        if any(g > b for g, b in zip(gamma, box)):
            return cls(quiver, box, {})
        return cls(quiver, box, {gamma: QSeries.one(hi)})

    def coeff(self, gamma):
        """The coefficient series of y_gamma, or None when exactly zero."""
        return self.terms.get(tuple(gamma))

    def cells(self):
        return sorted(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.box == other.box
            and self.terms == other.terms
        )

    def mul(self, other: "AlgebraElement") -> "AlgebraElement":
        """Twisted convolution, dropping cells outside the box.

        Per-cell windows follow the QSeries rules: each contributing pair
        bounds the certified hi of its target cell.
        """
        if not isinstance(other, AlgebraElement):
            raise TypeError("can only multiply AlgebraElements")
        if self.quiver != other.quiver:
            raise ValueError("elements live over different quivers")
        if self.box != other.box:
            raise BoxMismatch(f"boxes differ: {self.box} vs {other.box}")
        nverts = self.quiver.vertex_count
        lam_rows = _lambda_matrix_cached(self.quiver)
        packed_a = {g: _pack_series(s) for g, s in self.terms.items()}
        box = self.box
        out: dict = {}
        for g2, s2 in other.terms.items():
            lo2, hi2, v2 = _pack_series(s2)
            g2_nonzero = any(g2)
            col = None
            neg_v2 = -v2
            if g2_nonzero:
                col = [
                    sum(lam_rows[u][v] * g2[v] for v in range(nverts) if g2[v])
                    for u in range(nverts)
                ]
            for g1, (lo1, hi1, v1) in packed_a.items():
                target = tuple(a + b for a, b in zip(g1, g2))
                if any(t > b for t, b in zip(target, box)):
                    continue
                if g2_nonzero and any(g1):
                    tw = sum(a * c for a, c in zip(g1, col) if a)
                    vv = neg_v2
                else:
                    tw = 0
                    vv = v2
                lo = lo1 + lo2 + tw
                hi = min(hi1 + lo2, hi2 + lo1) + tw
                if lo > hi or v1 == 0 or v2 == 0:
                    piece = (hi + 1, hi, 0)
                else:
                    piece = (lo, hi, v1 * vv)
                _accumulate(out, target, piece)
        return AlgebraElement(
            self.quiver, box, {g: _unpack_series(p) for g, p in out.items()}
        )

    def min_window(self):
        """Smallest certified hi over the stored cells (None when empty)."""
        if not self.terms:
            return None
        return min(s.hi for s in self.terms.values())

    def truncate(self, hi: int) -> "AlgebraElement":
        return AlgebraElement(
            self.quiver, self.box, {g: s.truncate(hi) for g, s in self.terms.items()}
        )

    def to_json(self) -> dict:
        return {
            "box": list(self.box),
            "terms": {
                ",".join(map(str, g)): self.terms[g].to_json() for g in self.cells()
            },
        }

    def to_str(self) -> str:
        lines = []
        for g in self.cells():
            lines.append(f"y[{','.join(map(str, g))}] : {self.terms[g].to_str()}")
        return "\n".join(lines) if lines else "0"

    def __repr__(self):
        return f"AlgebraElement({len(self.terms)} cells, box={self.box})"


@lru_cache(maxsize=None)
def _lambda_matrix_cached(q: Quiver):
    return tuple(tuple(row) for row in q.lambda_matrix())


def power(q: Quiver, beta, j: int, box, hi: int) -> AlgebraElement:
    """y_beta^j by repeated multiplication; equals (-1)^(j-1) y_(j*beta)."""
    beta = tuple(beta)
    if not any(beta):
        raise ZeroVectorOperand("beta must be nonzero")
    if j < 0:
        raise ValueError("j must be a natural number")
    out = AlgebraElement.unit(q, box, hi)
    factor = AlgebraElement.basis(q, box, beta, hi)
    for _ in range(j):
        out = out.mul(factor)
    return out


def dilog(q: Quiver, beta, box, hi: int) -> AlgebraElement:
    """The quantum dilogarithm series of y_beta inside the box.

    E(y_beta) = sum_j (-1)^j q^(j^2/2) P_j y_beta^j, truncated to the j with
    j*beta inside the box; in the basis this is 1 - sum_j q^(j^2/2) P_j
    y_(j*beta).
    """
    beta = tuple(beta)
    if not any(beta):
        raise ZeroVectorOperand("beta must be nonzero")
    zero = (0,) * q.vertex_count
    terms = {zero: QSeries.one(hi)}
    j = 1
    while True:
        cell = tuple(j * b for b in beta)
        if any(c > b for c, b in zip(cell, box)):
            break
        mono = monomial_product_scalar(q, [(beta, j)])
        scale = (-1) ** j * mono.sign
        series = poincare_P(j, hi - j * j - mono.tpow).shift(j * j + mono.tpow)
        terms[cell] = series.scale(scale)
        j += 1
    return AlgebraElement(q, box, terms)


# -- the ordered product fold -------------------------------------------------
#
# Multiplying the running product by E(y_beta) touches every stored cell a
# handful of times, so this hot path keeps cells keyed by mixed-radix integer
# codes (radix 2*box_v + 1 per vertex, so sums of two in-box vectors never
# carry) and stays in the packed representation across all factors.  Updates
# run in place over a snapshot ordered by decreasing total degree: a target
# cell always has strictly larger degree than its source, so every source is
# read before anything writes to it.


class _BoxCodec:
    """Mixed-radix integer codes for dimension vectors within a box.

    The radix 2*box_v + 1 per vertex leaves room for the sum of two in-box
    vectors without carries, so out-of-box targets never alias valid cells.
    """

    def __init__(self, box: tuple):
        self.box = box
        radix = [2 * b + 1 for b in box]
        weights = []
        w = 1
        for r in radix:
            weights.append(w)
            w *= r
        self.weights = tuple(weights)
        self.vectors = {}
        self.degree = {}
        for gamma in _box_vectors(box):
            code = sum(g * w for g, w in zip(gamma, weights))
            self.vectors[code] = gamma
            self.degree[code] = sum(gamma)

    def encode(self, gamma) -> int:
        return sum(g * w for g, w in zip(gamma, self.weights))


@lru_cache(maxsize=None)
def _box_codec(box: tuple) -> _BoxCodec:
    size = 1
    for b in box:
        size *= b + 1
    if size > 5_000_000:
        raise ValueError(
            f"box {box} spans {size} cells; refuse to materialize that much"
        )
    return _BoxCodec(box)


def _box_vectors(box):
    if not box:
        yield ()
        return
    for rest in _box_vectors(box[1:]):
        for g in range(box[0] + 1):
            yield (g,) + rest


def _dilog_fold(quiver: Quiver, box, betas, deep: int) -> dict:
    """Packed product of E(y_beta) over betas, as {gamma: packed} cells."""
    codec = _box_codec(tuple(box))
    lam_rows = _lambda_matrix_cached(quiver)
    nverts = quiver.vertex_count
    valid = codec.vectors
    degree = codec.degree
    zero_code = 0
    cells = {zero_code: (0, deep, 1)}
    for beta in betas:
        col = [
            sum(lam_rows[u][v] * beta[v] for v in range(nverts) if beta[v])
            for u in range(nverts)
        ]
        branches = []
        j = 1
        while True:
            jbeta = tuple(j * b for b in beta)
            if any(c > b for c, b in zip(jbeta, box)):
                break
            pj = poincare_P(j, deep - j * j).shift(j * j)
            branches.append((j, codec.encode(jbeta)) + _pack_series(pj))
            j += 1
        if not branches:
            continue
        snapshot = sorted(cells.items(), key=lambda kv: degree[kv[0]], reverse=True)
        for code1, (lo1, hi1, v1) in snapshot:
            gamma1 = valid[code1]
            lamb = 0
            for a, c in zip(gamma1, col):
                if a:
                    lamb += a * c
            src_is_unit = code1 == zero_code
            for j, jcode, lo2, hi2, v2 in branches:
                target = code1 + jcode
                if target not in valid:
                    break
                if src_is_unit:
                    tw = 0
                    val = -v1 * v2 if v1 else 0
                else:
                    tw = j * lamb
                    val = v1 * v2 if v1 else 0
                lo = lo1 + lo2 + tw
                hi = min(hi1 + lo2, hi2 + lo1) + tw
                if lo > hi or not val:
                    piece = (hi + 1, hi, 0)
                else:
                    piece = (lo, hi, _trunc(val, hi - lo + 1))
                _accumulate(cells, target, piece)
    return {valid[code]: packed for code, packed in cells.items()}


def ordered_dilog_product(
    gq, order: RootOrder, box, hi: int, _initial_pad: int = 8
) -> AlgebraElement:
    """Product of E(y_root) over the order's sequence, certified to t^hi.

    The order must pass validate_order.  Internally the fold runs at a
    deeper window (negative lambda twists in intermediate products eat into
    the certified range) and retries deeper until every cell is certified
    to t^hi.
    """
    ok, violation = validate_order(gq, order)
    if not ok:
        raise InvalidOrder(f"order violates the rules at {violation}")
    vectors = [r.dim_vector(gq) for r in order.sequence]
    box = tuple(box)
    pad = _initial_pad
    while True:
        deep = hi + pad
        packed = _dilog_fold(gq.base, box, vectors, deep)
        min_hi = min((p[1] for p in packed.values()), default=deep)
        if min_hi >= hi:
            terms = {g: _unpack_series(p).truncate(hi) for g, p in packed.items()}
            return AlgebraElement(gq.base, box, terms)
        pad += (hi - min_hi) + 8


def predict_si_pi(kp: KostantPartition):
    """Sign exponent s_i and t-power 2*p_i of the row normal-ordering scalar.

    s_i counts non-simple parts with multiplicity; 2*p_i combines the orbit
    codimension with the gamma and multiplicity squares.
    """
    gamma = kp.gamma()
    s_i = sum(m * (l - k) for (k, l), m in kp.items())
    tpow = (
        2 * codim_orbit(kp.line, kp)
        + sum(g * g for g in gamma)
        - sum(m * m for _, m in kp.items())
    )
    return s_i, tpow


__all__ = [
    "Monomial",
    "AlgebraElement",
    "basis_product",
    "unit_monomial",
    "monomial_product_scalar",
    "power",
    "dilog",
    "ordered_dilog_product",
    "predict_si_pi",
]
