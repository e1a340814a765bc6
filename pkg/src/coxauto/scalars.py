"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).

Every bilinear-form entry arising from a Coxeter matrix with finite edge
labels lives in Q(2cos(pi/N)) for N the lcm of the labels.  A
:class:`FieldContext` fixes N, the minimal polynomial of c = 2cos(pi/N),
and a ladder of shrinking rational intervals isolating c; a
:class:`Scalar` is a polynomial in c reduced modulo the minimal
polynomial, stored as a vector of rationals.  Equality is equality of
canonical coefficient vectors, and sign is decided exactly by interval
refinement.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

import mpmath

from .errors import InternalInvariant, InvalidLabel, OutOfField

RationalLike = Union[int, Fraction]

_INITIAL_BITS = 64
_MAX_REFINEMENTS = 10  # hard cap: 10 doublings past the initial precision


def _poly_trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_divmod_int(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials; den must be monic.  Coeffs ascending."""
    num = list(num)
    dden = len(den) - 1
    if den[-1] != 1:
        raise InternalInvariant("division requires a monic divisor")
    quot = [0] * max(len(num) - dden, 0)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - dden] = c
        for j, dj in enumerate(den):
            num[i - dden + j] -= c * dj
    return quot, list(_poly_trim(num))


def _poly_eval_fraction(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _chebyshev_like(n: int) -> list[int]:
    """Integer polynomial D_n with D_n(2cos t) = 2cos(n t), ascending coeffs."""
    if n == 0:
        return [2]
    prev, cur = [2], [0, 1]
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def _euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


class FieldContext:
    """The real cyclotomic field Q(2cos(pi/N)) with decidable sign.

    Construct through :func:`make_field_context`.  Immutable except for the
    interval ladder, which only ever grows (copy-on-append refinement).
    """

    def __init__(self, n: int):
        if n < 1:
            raise InvalidLabel(f"N must be >= 1, got {n}")
        self.N = n
        self.minpoly = self._build_minpoly(n)
        self.degree = len(self.minpoly) - 1
        if n >= 2 and self.degree != _euler_phi(2 * n) // 2:
            raise InternalInvariant(
                f"degree {self.degree} != phi(2N)/2 for N={n}")
        # x^k mod minpoly for k = degree .. 2*degree-2, as Fraction vectors.
        self._power_table = self._build_power_table()
        self._ladder: list[tuple[Fraction, Fraction]] = [self._initial_interval()]
        self._cos_cache: dict[int, Scalar] = {}
        self._c_float: float | None = None

    # -- construction -------------------------------------------------

    @staticmethod
    def _build_minpoly(n: int) -> tuple[int, ...]:
        """Minimal polynomial of 2cos(pi/N), ascending integer coefficients.

        Conjugates 2cos(pi k/N), gcd(k, 2N) = 1, are multiplied out at high
        floating precision, coefficients rounded to integers, and the result
        verified by exact division into D_N + 2 (which vanishes at every
        2cos(pi k/N) with k odd).
        """
        ks = [k for k in range(1, n + 1) if gcd(k, 2 * n) == 1]
        with mpmath.workdps(40 + 6 * len(ks)):
            roots = [2 * mpmath.cos(mpmath.pi * k / n) for k in ks]
            poly = [mpmath.mpf(1)]
            for r in roots:
                nxt = [mpmath.mpf(0)] * (len(poly) + 1)
                for i, c in enumerate(poly):
                    nxt[i + 1] += c
                    nxt[i] -= c * r
                poly = nxt
            coeffs = tuple(int(mpmath.nint(c)) for c in poly)
            for c, approx in zip(coeffs, poly):
                if abs(approx - c) > mpmath.mpf("1e-10"):
                    raise InternalInvariant(
                        "minimal polynomial coefficients did not round cleanly")
        target = _chebyshev_like(n)
        target[0] += 2
        _, rem = _poly_divmod_int(target, coeffs)
        if rem:
            raise InternalInvariant(
                f"candidate minimal polynomial for N={n} failed exact division")
        return coeffs

    def _build_power_table(self) -> list[tuple[Fraction, ...]]:
        d = self.degree
        table: list[tuple[Fraction, ...]] = []
        # x^d = -(a_0 + a_1 x + ... + a_{d-1} x^{d-1})
        cur = [Fraction(-c) for c in self.minpoly[:d]]
        table.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(d):
                    nxt[i] -= top * self.minpoly[i]
            cur = nxt
            table.append(tuple(cur))
        return table

    def _initial_interval(self) -> tuple[Fraction, Fraction]:
        """Isolating interval for c = 2cos(pi/N) among the conjugates.

        c is the largest root of the minimal polynomial, so an interval
        (lo, 2] with exactly one root is certified by minpoly(lo) < 0 <
        minpoly(2) once lo separates c from the next conjugate down.
        """
        if self.degree == 1:
            c = Fraction(-self.minpoly[0])
            return (c, c)
        n = self.N
        with mpmath.workdps(50):
            ks = sorted(k for k in range(1, n + 1) if gcd(k, 2 * n) == 1)
            c = 2 * mpmath.cos(mpmath.pi * ks[0] / n)
            second = 2 * mpmath.cos(mpmath.pi * ks[1] / n)
            mid = (c + second) / 2
            lo = Fraction(int(mpmath.floor(mid * 2**40)), 2**40)
        hi = Fraction(2)
        if not (_poly_eval_fraction(self.minpoly, lo) < 0
                and _poly_eval_fraction(self.minpoly, hi) > 0):
            raise InternalInvariant("failed to certify the isolating interval")
        return self._bisect_to(lo, hi, _INITIAL_BITS)

    def _bisect_to(self, lo: Fraction, hi: Fraction,
                   bits: int) -> tuple[Fraction, Fraction]:
        width = Fraction(1, 2**bits)
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = _poly_eval_fraction(self.minpoly, mid)
            if v == 0:  # only possible when c itself is hit; collapse
                return (mid, mid)
            if v < 0:
                lo = mid
            else:
                hi = mid
        return (lo, hi)

    # -- scalar constructors -------------------------------------------

    def scalar(self, coeffs: Iterable[RationalLike]) -> "Scalar":
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > self.degree:
            vec = list(self._reduce(vec))
        else:
            vec += [Fraction(0)] * (self.degree - len(vec))
        return Scalar(self, tuple(vec))

    def from_rational(self, q: RationalLike) -> "Scalar":
        vec = [Fraction(0)] * self.degree
        vec[0] = Fraction(q)
        return Scalar(self, tuple(vec))

    @property
    def zero(self) -> "Scalar":
        return self.from_rational(0)

    @property
    def one(self) -> "Scalar":
        return self.from_rational(1)

    def generator(self) -> "Scalar":
        """The element c = 2cos(pi/N)."""
        if self.degree == 1:
            return self.from_rational(-self.minpoly[0])
        vec = [Fraction(0)] * self.degree
        vec[1] = Fraction(1)
        return Scalar(self, tuple(vec))

    def cos_pi_over(self, m: int) -> "Scalar":
        """Exact cos(pi/m) as an element of this field.

        m = 1 and m = 2 are rational (-1 and 0); otherwise m must divide N.
        """
        if m in self._cos_cache:
            return self._cos_cache[m]
        if m < 1:
            raise InvalidLabel(f"cos(pi/m) needs m >= 1, got {m}")
        if m == 1:
            val = self.from_rational(-1)
        elif m == 2:
            val = self.zero
        else:
            if self.N % m != 0:
                raise OutOfField(f"cos(pi/{m}) is not in Q(2cos(pi/{self.N}))")
            k = self.N // m
            c = self.generator()
            prev, cur = self.from_rational(2), c
            for _ in range(k - 1):
                prev, cur = cur, c * cur - prev
            val = cur / self.from_rational(2)
        self._cos_cache[m] = val
        return val

    # -- internals ------------------------------------------------------

    def _power_row(self, k: int) -> tuple[Fraction, ...]:
        """x^(degree + k) reduced mod minpoly, extending the table on demand."""
        while k >= len(self._power_table):
            cur = list(self._power_table[-1])
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(self.degree):
                    nxt[i] -= top * self.minpoly[i]
            self._power_table.append(tuple(nxt))
        return self._power_table[k]

    def _reduce(self, vec: list[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        out = vec[:d] + [Fraction(0)] * (d - len(vec[:d]))
        for k in range(d, len(vec)):
            c = vec[k]
            if c:
                row = self._power_row(k - d)
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def _mul(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return self._reduce(prod)

    def _inverse(self, a: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if not any(a):
            raise ZeroDivisionError("scalar division by zero")
        if self.degree == 1:
            return (Fraction(1) / a[0],)
        # Extended Euclid in Q[x] for gcd(a, minpoly) = 1.
        r0 = [Fraction(c) for c in self.minpoly]
        r1 = list(a)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0: list[Fraction] = [Fraction(0)]
        s1: list[Fraction] = [Fraction(1)]
        while True:
            if len(r1) == 1:
                inv = Fraction(1) / r1[0]
                return self._reduce([c * inv for c in s1])
            q, r = self._poly_divmod_frac(r0, r1)
            s_next = self._poly_sub_frac(s0, self._poly_mul_frac(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s_next
            if not r1:
                raise InternalInvariant("minimal polynomial is not irreducible")

    @staticmethod
    def _poly_divmod_frac(num: list[Fraction],
                          den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        num = list(num)
        dden = len(den) - 1
        lead = den[-1]
        quot = [Fraction(0)] * max(len(num) - dden, 0)
        for i in range(len(num) - 1, dden - 1, -1):
            c = num[i] / lead
            if c:
                quot[i - dden] = c
                for j, dj in enumerate(den):
                    num[i - dden + j] -= c * dj
        while num and num[-1] == 0:
            num.pop()
        return quot, num

    @staticmethod
    def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        if not a or not b:
            return []
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out

    @staticmethod
    def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        out = list(a) + [Fraction(0)] * (len(b) - len(a))
        for i, bi in enumerate(b):
            out[i] -= bi
        while out and out[-1] == 0:
            out.pop()
        return out

    # -- sign determination ----------------------------------------------

    def sign(self, coeffs: Sequence[Fraction]) -> int:
        """Exact sign of sum coeffs[i] * c^i; 0 iff the vector is zero."""
        if not any(coeffs):
            return 0
        if self.degree == 1 or self._ladder[0][0] == self._ladder[0][1]:
            v = _poly_eval_fraction_vec(coeffs, self._ladder[0][0])
            return -1 if v < 0 else (1 if v > 0 else 0)
        for level in range(_MAX_REFINEMENTS + 1):
            if level >= len(self._ladder):
                lo, hi = self._ladder[-1]
                self._ladder.append(
                    self._bisect_to(lo, hi, _INITIAL_BITS << level))
            lo, hi = self._ladder[level]
            vlo, vhi = _interval_eval(coeffs, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
        raise InternalInvariant(
            "sign of a nonzero canonical form not separated at the precision cap")

    # -- float approximations ---------------------------------------------

    def generator_float(self) -> float:
        if self._c_float is None:
            with mpmath.workdps(40):
                self._c_float = float(2 * mpmath.cos(mpmath.pi / self.N))
        return self._c_float

    def __repr__(self) -> str:
        return f"FieldContext(N={self.N}, degree={self.degree})"


def _poly_eval_fraction_vec(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _interval_eval(coeffs: Sequence[Fraction], lo: Fraction,
                   hi: Fraction) -> tuple[Fraction, Fraction]:
    """Horner evaluation with rational interval arithmetic."""
    alo = ahi = Fraction(0)
    for c in reversed(coeffs):
        products = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(products) + c, max(products) + c
    return alo, ahi


class Scalar:
    """An element of Q(2cos(pi/N)) in canonical reduced form.

    Immutable value type; arithmetic operators work between scalars of the
    same context and with ints/Fractions.
    """

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldContext, coeffs: tuple[Fraction, ...]):
        self.ctx = ctx
        self.coeffs = coeffs
        self._hash: int | None = None

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise ValueError("scalars from different field contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx._mul(self.coeffs, self.ctx._inverse(o.coeffs)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return self.ctx.one / self ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.from_rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        # rational values hash like their Fraction so == across types agrees
        if self._hash is None:
            if any(self.coeffs[1:]):
                self._hash = hash(self.coeffs)
            else:
                self._hash = hash(self.coeffs[0])
        return self._hash

    def sign(self) -> int:
        return self.ctx.sign(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __float__(self) -> float:
        c = self.ctx.generator_float()
        acc = 0.0
        for coeff in reversed(self.coeffs):
            acc = acc * c + float(coeff)
        return acc

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction when it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __repr__(self) -> str:
        if self.ctx.degree == 1 or not any(self.coeffs[1:]):
            return str(self.coeffs[0])
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                terms.append(str(a))
            elif i == 1:
                terms.append(f"{a}*c")
            else:
                terms.append(f"{a}*c^{i}")
        return " + ".join(terms) if terms else "0"


_context_cache: dict[int, FieldContext] = {}


def make_field_context(finite_labels: Iterable[int]) -> FieldContext:
    """Field context for N = lcm of the labels contributing irrationalities.

    Labels must be integers >= 2.  Labels equal to 2 contribute cos(pi/2) = 0
    and need no field extension, so they are dropped from the lcm; an empty
    contribution yields N = 1, plain rational arithmetic.
    """
    n = 1
    for label in finite_labels:
        if not isinstance(label, int) or label < 2:
            raise InvalidLabel(f"edge label must be an integer >= 2, got {label!r}")
        if label > 2:
            n = n * label // gcd(n, label)
    if n not in _context_cache:
        _context_cache[n] = FieldContext(n)
    return _context_cache[n]
