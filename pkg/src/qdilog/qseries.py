"""Exact truncated Laurent series in t = q^(1/2) with integer coefficients.

All exponents are integers counted in units of t, so q^k sits at exponent 2k
and q^(k/2) at exponent k.  A QSeries knows its coefficients exactly for
exponents lo..hi; exponents above hi are unknown (truncated), exponents below
lo are zero.  A LaurentPoly is exact: hi is its true top exponent.
"""

from __future__ import annotations

from .errors import NonUnitLeadingCoefficient


class QSeries:
    """Truncated Laurent series with window [lo, hi] and exact coefficients.

    Invariants: len(coeffs) == hi - lo + 1; coeffs[0] != 0 unless the series
    is the canonical zero (empty coeffs, lo == hi + 1).  Instances are
    immutable and safe to share.
    """

    __slots__ = ("lo", "hi", "coeffs")

    def __init__(self, lo: int, coeffs, hi: int | None = None):
        coeffs = list(coeffs)
        if hi is None:
            hi = lo + len(coeffs) - 1
        if len(coeffs) != hi - lo + 1:
            raise ValueError("coeffs must cover exponents lo..hi exactly")
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lo += 1
        if not coeffs:
            lo = hi + 1
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, hi: int) -> "QSeries":
        """The canonical zero, certified up to t^hi."""
        return cls(hi + 1, (), hi)

    @classmethod
    def one(cls, hi: int) -> "QSeries":
        return cls.term(1, 0, hi)

    @classmethod
    def term(cls, c: int, texp: int, hi: int) -> "QSeries":
        """The single term c*t^texp on the window (-inf, hi]."""
        if c == 0 or texp > hi:
            return cls.zero(hi)
        return cls(texp, [c] + [0] * (hi - texp), hi)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, texp: int) -> int:
        """Coefficient of t^texp; exponents above the window are unknown."""
        if texp > self.hi:
            raise ValueError(f"exponent {texp} beyond certified window t^{self.hi}")
        if texp < self.lo:
            return 0
        return self.coeffs[texp - self.lo]

    def support(self):
        """Pairs (texp, coeff) with nonzero coeff, ascending."""
        return [(self.lo + i, c) for i, c in enumerate(self.coeffs) if c != 0]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.lo, self.hi, self.coeffs) == (other.lo, other.hi, other.coeffs)

    def __hash__(self):
        return hash((self.lo, self.hi, self.coeffs))

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality on the intersection of the two windows."""
        hi = min(self.hi, other.hi)
        lo = min(self.lo, other.lo)
        return all(
            (self.coeff(e) if e >= self.lo else 0)
            == (other.coeff(e) if e >= other.lo else 0)
            for e in range(lo, hi + 1)
        )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        """Coefficientwise sum; hi = min of the operand windows."""
        hi = min(self.hi, other.hi)
        lo = min(self.lo, other.lo)
        if lo > hi:
            return QSeries.zero(hi)
        out = [0] * (hi - lo + 1)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.lo + i
                if e <= hi:
                    out[e - lo] += c
        return QSeries(lo, out, hi)

    def __neg__(self) -> "QSeries":
        return QSeries(self.lo, [-c for c in self.coeffs], self.hi)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other: "QSeries") -> "QSeries":
        """Cauchy product; hi = min(a.hi + b.lo, b.hi + a.lo)."""
        hi = min(self.hi + other.lo, other.hi + self.lo)
        lo = self.lo + other.lo
        if self.is_zero() or other.is_zero() or lo > hi:
            return QSeries.zero(hi)
        out = [0] * (hi - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            base = self.lo + i + other.lo - lo
            top = hi - lo - base
            if top < 0:
                break
            for j, b in enumerate(other.coeffs[: top + 1]):
                if b:
                    out[base + j] += a * b
        return QSeries(lo, out, hi)

    def scale(self, c: int) -> "QSeries":
        if c == 0:
            return QSeries.zero(self.hi)
        return QSeries(self.lo, [c * a for a in self.coeffs], self.hi)

    def shift(self, k: int) -> "QSeries":
        """Multiply by t^k: every exponent and the window move by k."""
        return QSeries(self.lo + k, self.coeffs, self.hi + k)

    def truncate(self, hi: int) -> "QSeries":
        """Restrict the window to t^hi (hi must not exceed the current one)."""
        if hi > self.hi:
            raise ValueError("cannot extend a certified window")
        n = hi - self.lo + 1
        if n <= 0:
            return QSeries.zero(hi)
        return QSeries(self.lo, self.coeffs[:n], hi)

    def inverse_unit(self) -> "QSeries":
        """Multiplicative inverse of a series with leading coefficient +-1.

        The result is certified on the window it can honestly claim:
        hi = self.hi - 2*self.lo.
        """
        if self.is_zero() or self.coeffs[0] not in (1, -1):
            raise NonUnitLeadingCoefficient(
                "inverse requires leading coefficient +1 or -1"
            )
        u = self.coeffs[0]
        n = self.hi - self.lo
        out = [0] * (n + 1)
        out[0] = u
        a = self.coeffs
        for m in range(1, n + 1):
            acc = 0
            for k in range(1, m + 1):
                if k < len(a) and a[k]:
                    acc += a[k] * out[m - k]
            out[m] = -u * acc
        return QSeries(-self.lo, out, self.hi - 2 * self.lo)

    # -- rendering ----------------------------------------------------------

    def __repr__(self):
        return f"QSeries({self.to_str()!r}, hi=t^{self.hi})"

    def to_str(self) -> str:
        """Human form with half-integer q-exponents, e.g. '1 + 2*q + q^(3/2)'."""
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.support():
            parts.append(_term_str(c, e, bool(parts)))
        return "".join(parts)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls(data["lo"], data["coeffs"], data["hi"])


def _term_str(c: int, texp: int, follows: bool) -> str:
    sign = "-" if c < 0 else "+"
    head = f" {sign} " if follows else ("-" if c < 0 else "")
    mag = abs(c)
    if texp == 0:
        return f"{head}{mag}"
    if texp % 2 == 0:
        power = "q" if texp == 2 else f"q^{texp // 2}"
    else:
        power = f"q^({texp}/2)"
    body = power if mag == 1 else f"{mag}*{power}"
    return f"{head}{body}"


def poincare_P(j: int, hi: int) -> QSeries:
    """P_j = prod_{r=1..j} 1/(1-q^r), truncated at t^hi; P_0 = 1.

    Coefficient of q^m counts partitions of m into parts of size <= j.
    """
    if j < 0:
        raise ValueError("j must be a natural number")
    if hi < 0:
        return QSeries.zero(hi)
    out = [0] * (hi + 1)
    out[0] = 1
    for r in range(1, j + 1):
        step = 2 * r
        for e in range(step, hi + 1):
            out[e] += out[e - step]
    return QSeries(0, out, hi)


class LaurentPoly:
    """Exact Laurent polynomial in t; hi is the true top exponent."""

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lo += 1
        if not coeffs:
            lo = 0
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(0, ())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.term(1, 0)

    @classmethod
    def term(cls, c: int, texp: int) -> "LaurentPoly":
        return cls(texp, (c,))

    @property
    def hi(self) -> int:
        if not self.coeffs:
            return self.lo - 1
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, texp: int) -> int:
        if self.lo <= texp <= self.hi:
            return self.coeffs[texp - self.lo]
        return 0

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.lo, self.coeffs) == (other.lo, other.coeffs)

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        for p in (self, other):
            for i, c in enumerate(p.coeffs):
                out[p.lo + i - lo] += c
        return LaurentPoly(lo, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return LaurentPoly(self.lo + other.lo, out)

    def truncate(self, hi: int) -> QSeries:
        """View this exact polynomial as a QSeries certified to t^hi."""
        out = [self.coeff(e) for e in range(min(self.lo, hi + 1), hi + 1)]
        return QSeries(min(self.lo, hi + 1), out, hi)

    def __repr__(self):
        return f"LaurentPoly({self.truncate(max(self.hi, 0)).to_str()!r})"


def involute(p: LaurentPoly) -> LaurentPoly:
    """The involution q^(1/2) -> -q^(-1/2), i.e. t^k -> (-1)^k t^(-k)."""
    if p.is_zero():
        return p
    out = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        e = p.lo + i
        c = p.coeffs[i]
        out.append(-c if e % 2 else c)
    return LaurentPoly(-p.hi, out)


def dilog_term_numerator(j: int) -> LaurentPoly:
    """Numerator (-1)^j q^(j^2/2) of the j-th quantum dilogarithm term."""
    return LaurentPoly.term((-1) ** j, j * j)


def dilog_term_denominator(j: int) -> LaurentPoly:
    """Denominator prod_{k=1..j} (1 - q^k) of the j-th dilogarithm term."""
    out = LaurentPoly.one()
    for k in range(1, j + 1):
        out = out * (LaurentPoly.one() - LaurentPoly.term(1, 2 * k))
    return out


def gauss_term_numerator(j: int) -> LaurentPoly:
    """Numerator q^(j^2/2) of the j-th term of the finite-field formulation."""
    return LaurentPoly.term(1, j * j)


def gauss_term_denominator(j: int) -> LaurentPoly:
    """Denominator prod_{i=0..j-1} (q^j - q^i) counting GL_j(F_q)."""
    out = LaurentPoly.one()
    for i in range(j):
        out = out * (LaurentPoly.term(1, 2 * j) - LaurentPoly.term(1, 2 * i))
    return out


__all__ = [
    "QSeries",
    "LaurentPoly",
    "poincare_P",
    "involute",
    "dilog_term_numerator",
    "dilog_term_denominator",
    "gauss_term_numerator",
    "gauss_term_denominator",
]
