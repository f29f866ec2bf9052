"""Exact Laurent polynomial, rational function and polynomial matrix arithmetic.

Coefficients live either in the ring of integers or in a prime field F_p,
and every operation is exact; there is no floating point anywhere.  The
values of the knot invariants computed elsewhere in this package are
rational functions in one variable t over one of these domains, defined up
to multiplication by units c*t^k, so this module also fixes normal forms
that make "equal up to unit" a structural comparison.

Determinants of matrices of Laurent polynomials use fraction-free Bareiss
elimination.  To keep large eliminations fast, polynomials are packed into
big integers (Kronecker substitution at t = 2^B), so the elimination inner
loop runs on GMP limbs rather than Python lists:

* over the integers, intermediate entries are minors of the input matrix,
  so a fixed slot width derived from row 1-norms is provably large enough
  and the whole elimination never needs to unpack;
* over F_p, entries are renormalised mod p after every update (vectorised
  with numpy) and the exact divisions are done by multiplying with a
  precomputed Newton inverse of the reversed pivot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def mpz(x):
        return x


class DomainMismatchError(ValueError):
    """Raised when operands live over different coefficient domains."""


class NonInvertibleScalarError(ValueError):
    """Raised when a scalar that must be a unit is not invertible."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientDomain:
    """The exact integers (p is None) or the prime field F_p.

    Scalars are plain Python ints; over F_p they are kept reduced to the
    range 0..p-1.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def is_field(self) -> bool:
        return self.p is not None

    def reduce(self, c: int) -> int:
        return c % self.p if self.p is not None else c

    def neg(self, c: int) -> int:
        return (-c) % self.p if self.p is not None else -c

    def inv(self, c: int) -> int:
        if self.p is not None:
            if c % self.p == 0:
                raise NonInvertibleScalarError("zero is not invertible")
            return pow(c, -1, self.p)
        if c in (1, -1):
            return c
        raise NonInvertibleScalarError(
            f"{c} is not invertible over the integers")

    def __repr__(self):
        return "ZZ" if self.p is None else f"GF({self.p})"


INTEGERS = CoefficientDomain()


def prime_field(p: int) -> CoefficientDomain:
    return CoefficientDomain(p)


def _check_same_domain(a: "LaurentPolynomial", b: "LaurentPolynomial"):
    if a.domain != b.domain:
        raise DomainMismatchError(f"{a.domain} vs {b.domain}")


@dataclass(frozen=True)
class LaurentPolynomial:
    """An exact Laurent polynomial sum_i coeffs[i] * t^(min_exp + i).

    Canonical form: the first and last stored coefficients are nonzero,
    all coefficients are reduced into the domain, and the zero polynomial
    is stored as the empty tuple with min_exp 0.  Instances are immutable
    and safe to share between threads.
    """

    domain: CoefficientDomain
    min_exp: int
    coeffs: tuple[int, ...]

    @staticmethod
    def make(domain: CoefficientDomain, min_exp: int,
             coeffs: Iterable[int]) -> "LaurentPolynomial":
        cs = [domain.reduce(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            return LaurentPolynomial(domain, 0, ())
        return LaurentPolynomial(domain, min_exp + lo, tuple(cs[lo:hi]))

    @staticmethod
    def zero(domain: CoefficientDomain = INTEGERS) -> "LaurentPolynomial":
        return LaurentPolynomial(domain, 0, ())

    @staticmethod
    def one(domain: CoefficientDomain = INTEGERS) -> "LaurentPolynomial":
        return LaurentPolynomial(domain, 0, (domain.reduce(1),))

    @staticmethod
    def constant(c: int, domain: CoefficientDomain = INTEGERS) -> "LaurentPolynomial":
        return LaurentPolynomial.make(domain, 0, (c,))

    @staticmethod
    def t_power(k: int, domain: CoefficientDomain = INTEGERS) -> "LaurentPolynomial":
        return LaurentPolynomial(domain, k, (domain.reduce(1),))

    @staticmethod
    def from_coeff_map(domain: CoefficientDomain,
                       terms: dict[int, int]) -> "LaurentPolynomial":
        if not terms:
            return LaurentPolynomial.zero(domain)
        lo = min(terms)
        hi = max(terms)
        cs = [0] * (hi - lo + 1)
        for k, c in terms.items():
            cs[k - lo] += c
        return LaurentPolynomial.make(domain, lo, cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        i = k - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return LaurentPolynomial(self.domain, self.min_exp + k, self.coeffs)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        _check_same_domain(self, other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        cs = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            cs[self.min_exp - lo + i] += c
        for i, c in enumerate(other.coeffs):
            cs[other.min_exp - lo + i] += c
        return LaurentPolynomial.make(self.domain, lo, cs)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(
            self.domain, self.min_exp,
            tuple(self.domain.neg(c) for c in self.coeffs))

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        _check_same_domain(self, other)
        if self.is_zero or other.is_zero:
            return LaurentPolynomial.zero(self.domain)
        a, b = self.coeffs, other.coeffs
        cs = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    cs[i + j] += ai * bj
        return LaurentPolynomial.make(
            self.domain, self.min_exp + other.min_exp, cs)

    def scale(self, c: int) -> "LaurentPolynomial":
        c = self.domain.reduce(c)
        if c == 0:
            return LaurentPolynomial.zero(self.domain)
        return LaurentPolynomial.make(
            self.domain, self.min_exp, (c * a for a in self.coeffs))

    def __pow__(self, e: int) -> "LaurentPolynomial":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = LaurentPolynomial.one(self.domain)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, x: int) -> int:
        """Evaluate at an integer point (needs min_exp >= 0 over ZZ)."""
        if self.is_zero:
            return 0
        if self.min_exp < 0 and self.domain.p is None:
            raise ValueError("cannot evaluate a Laurent tail over ZZ")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.min_exp:
            if self.domain.p is None:
                acc *= x ** self.min_exp
            else:
                acc *= pow(x, self.min_exp, self.domain.p)
        return self.domain.reduce(acc)

    def __str__(self):
        return to_text(self)

    # -- textual / machine serialization ---------------------------------

    def to_json(self) -> dict:
        return {"minExponent": self.min_exp, "coefficients": list(self.coeffs)}

    @staticmethod
    def from_json(obj: dict, domain: CoefficientDomain = INTEGERS
                  ) -> "LaurentPolynomial":
        return LaurentPolynomial.make(
            domain, int(obj["minExponent"]),
            [int(c) for c in obj["coefficients"]])


def to_text(f: LaurentPolynomial) -> str:
    """Human form with explicit signs, highest power first: "t^2 - t + 1"."""
    if f.is_zero:
        return "0"
    parts = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        k = f.min_exp + i
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            tk = "t" if k == 1 else f"t^{k}"
            body = tk if mag == 1 else f"{mag}*{tk}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def add(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a + b


def sub(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a - b


def mul(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a * b


def neg(a: LaurentPolynomial) -> LaurentPolynomial:
    return -a


def substitute_scale(f: LaurentPolynomial, c: int) -> LaurentPolynomial:
    """Return g with g(t) = f(c*t); c must be invertible in the domain."""
    dom = f.domain
    c = dom.reduce(c)
    dom.inv(c)  # raises if c is not a unit
    if f.is_zero:
        return f
    if dom.p is None:
        # c is +-1 here, so c^k == c^|k| and Laurent tails are harmless
        powers = [c ** abs(k) for k in range(f.min_exp, f.max_exp + 1)]
    else:
        powers = [pow(c, k, dom.p) for k in range(f.min_exp, f.max_exp + 1)]
    return LaurentPolynomial.make(
        dom, f.min_exp, (a * w for a, w in zip(f.coeffs, powers)))


def reduce_mod(f: LaurentPolynomial, p: int) -> LaurentPolynomial:
    """Coefficientwise reduction ZZ[t^+-1] -> F_p[t^+-1]."""
    if f.domain.p is not None:
        raise DomainMismatchError("reduce_mod expects an integer polynomial")
    return LaurentPolynomial.make(prime_field(p), f.min_exp, f.coeffs)


# -- polynomial division and gcd ----------------------------------------


def _divmod_field(num: list[int], den: list[int], p: int
                  ) -> tuple[list[int], list[int]]:
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        return [], num
    inv_lead = pow(den[-1], -1, p)
    quo = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = (num[dd + k] * inv_lead) % p
        quo[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] = (num[k + i] - c * d) % p
    while num and num[-1] == 0:
        num.pop()
    return quo, num


def _divexact_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division in ZZ[t]; valid whenever den truly divides num."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    quo = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c, r = divmod(num[dd + k], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quo


def _content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _gcd_coeff_lists(a: list[int], b: list[int],
                     domain: CoefficientDomain) -> list[int]:
    """GCD of genuine polynomials given as coefficient lists."""
    if not a:
        return list(b)
    if not b:
        return list(a)
    if domain.p is not None:
        p = domain.p
        f, g = list(a), list(b)
        while g:
            _, r = _divmod_field(f, g, p)
            f, g = g, r
        inv_lead = pow(f[-1], -1, p)
        return [(c * inv_lead) % p for c in f]
    # primitive polynomial remainder sequence over ZZ
    ca, cb = _content(a), _content(b)
    f = [c // ca for c in a]
    g = [c // cb for c in b]
    if len(f) < len(g):
        f, g = g, f
    while True:
        r = _pseudo_rem(f, g)
        if not r:
            break
        cr = _content(r)
        f, g = g, [c // cr for c in r]
    c = math.gcd(ca, cb)
    if g[-1] < 0:
        g = [-x for x in g]
    return [c * x for x in g]


def _pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    dg = len(g) - 1
    lead = g[-1]
    r = list(f)
    while r and len(r) - 1 >= dg:
        top = r[-1]
        off = len(r) - 1 - dg
        r = [lead * c for c in r]
        for i, d in enumerate(g):
            r[off + i] -= top * d
        r.pop()  # the leading term cancels exactly
        while r and r[-1] == 0:
            r.pop()
    return r


def poly_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """GCD up to units, returned with min_exp 0 (t is a unit here)."""
    _check_same_domain(a, b)
    if a.is_zero and b.is_zero:
        return LaurentPolynomial.zero(a.domain)
    g = _gcd_coeff_lists(list(a.coeffs), list(b.coeffs), a.domain)
    return LaurentPolynomial.make(a.domain, 0, g)


def divexact(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """a / b when b divides a exactly (up to a t-power shift)."""
    _check_same_domain(a, b)
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero:
        return a
    if a.domain.p is not None:
        quo, rem = _divmod_field(list(a.coeffs), list(b.coeffs), a.domain.p)
        if rem:
            raise ArithmeticError("inexact polynomial division")
    else:
        quo = _divexact_int(list(a.coeffs), list(b.coeffs))
    return LaurentPolynomial.make(a.domain, a.min_exp - b.min_exp, quo)


# -- rational functions --------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """A quotient of Laurent polynomials over a common domain."""

    numerator: LaurentPolynomial
    denominator: LaurentPolynomial

    def __post_init__(self):
        _check_same_domain(self.numerator, self.denominator)
        if self.denominator.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")

    @property
    def domain(self) -> CoefficientDomain:
        return self.numerator.domain

    @staticmethod
    def of(numerator: LaurentPolynomial,
           denominator: LaurentPolynomial | None = None) -> "RationalFunction":
        if denominator is None:
            denominator = LaurentPolynomial.one(numerator.domain)
        return RationalFunction(numerator, denominator)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.numerator * other.denominator,
                                self.denominator * other.numerator)

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return RationalFunction(self.denominator, self.numerator) ** (-e)
        return RationalFunction(self.numerator ** e, self.denominator ** e)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def substitute_scale(self, c: int) -> "RationalFunction":
        return RationalFunction(substitute_scale(self.numerator, c),
                                substitute_scale(self.denominator, c))

    def reduce_mod(self, p: int) -> "RationalFunction":
        den = reduce_mod(self.denominator, p)
        if den.is_zero:
            raise ZeroDivisionError(f"denominator vanishes mod {p}")
        return RationalFunction(reduce_mod(self.numerator, p), den)

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(),
                "denominator": self.denominator.to_json()}

    @staticmethod
    def from_json(obj: dict, domain: CoefficientDomain = INTEGERS
                  ) -> "RationalFunction":
        return RationalFunction(
            LaurentPolynomial.from_json(obj["numerator"], domain),
            LaurentPolynomial.from_json(obj["denominator"], domain))

    def __str__(self):
        if self.denominator == LaurentPolynomial.one(self.domain):
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"


def _unit_normalize_poly(f: LaurentPolynomial) -> LaurentPolynomial:
    """Shift min_exp to 0 and scale the lowest coefficient to a unit:
    1 over a prime field, positive sign over the integers."""
    if f.is_zero:
        return f
    f = f.shift(-f.min_exp)
    if f.domain.p is not None:
        low = f.coeffs[0]
        if low != 1:
            f = f.scale(f.domain.inv(low))
    else:
        if f.coeffs[0] < 0:
            f = -f
    return f


def rational_normalize(r: RationalFunction) -> RationalFunction:
    """Normal form: gcd cancelled, both min exponents 0, lowest coefficients
    scaled to units (1 over F_p; positive with content removed over ZZ).

    Units here are c * t^k with c invertible, so numerator and denominator
    may be scaled independently; two rational functions are equal up to
    unit exactly when their normal forms coincide.
    """
    num, den = r.numerator, r.denominator
    if num.is_zero:
        return RationalFunction(LaurentPolynomial.zero(num.domain),
                                LaurentPolynomial.one(num.domain))
    g = poly_gcd(num, den)
    if len(g.coeffs) > 1 or g.coeffs[0] not in (1, -1):
        num = divexact(num, g)
        den = divexact(den, g)
    num, den = _unit_normalize_poly(num), _unit_normalize_poly(den)
    if num.domain.p is None:
        cn, cd = _content(num.coeffs), _content(den.coeffs)
        if cn > 1:
            num = LaurentPolynomial.make(num.domain, 0,
                                         [c // cn for c in num.coeffs])
        if cd > 1:
            den = LaurentPolynomial.make(den.domain, 0,
                                         [c // cd for c in den.coeffs])
    return RationalFunction(num, den)


def equal_up_to_unit(a: RationalFunction, b: RationalFunction) -> bool:
    """True iff a = c * t^k * b for a unit scalar c and integer k."""
    if a.domain != b.domain:
        raise DomainMismatchError(f"{a.domain} vs {b.domain}")
    na, nb = rational_normalize(a), rational_normalize(b)
    return na.numerator == nb.numerator and na.denominator == nb.denominator


# -- polynomial matrices and determinants --------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    """A rows x cols matrix of Laurent polynomials over one domain."""

    rows: int
    cols: int
    entries: tuple[LaurentPolynomial, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        doms = {e.domain for e in self.entries}
        if len(doms) > 1:
            raise DomainMismatchError("matrix entries over mixed domains")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[LaurentPolynomial]]) -> "PolyMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged matrix rows")
            flat.extend(row)
        return PolyMatrix(r, c, tuple(flat))

    def entry(self, i: int, j: int) -> LaurentPolynomial:
        return self.entries[i * self.cols + j]

    @property
    def domain(self) -> CoefficientDomain:
        if self.entries:
            return self.entries[0].domain
        return INTEGERS


def _pack(coeffs: Sequence[int], width: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = (v << width) + c
    return v


def _unpack_balanced(v: int, width: int) -> list[int]:
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    out = []
    while v:
        d = v & mask
        if d >= half:
            d -= mask + 1
        out.append(d)
        v = (v - d) >> width
    return out


def _det_packed_integer(rows: list[list[list[int]]], n: int) -> list[int]:
    """Fraction-free Bareiss over ZZ[t] on packed coefficient lists.

    Every intermediate entry is a minor of the input matrix, so its
    coefficient 1-norm is bounded by the product of the row 1-norms; the
    slot width is chosen to hold products of two such minors, which covers
    the worst value formed during an update.
    """
    bound_bits = 2
    for row in rows:
        s = sum(sum(abs(c) for c in e) for e in row)
        bound_bits += max(s, 2).bit_length()
    width = 2 * bound_bits + 4
    a = [[mpz(_pack(e, width)) for e in row] for row in rows]
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return []
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            if aik == 0:
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * piv) // prev
            else:
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    det = int(sign * a[n - 1][n - 1])
    return _unpack_balanced(det, width)


class _PackedFp:
    """Packed arithmetic helpers for F_p[t] with 32-bit slots."""

    WIDTH = 32

    def __init__(self, p: int, max_len: int):
        self.p = p
        self.max_len = max_len
        self._offsets: dict[int, int] = {0: 0}

    def offset(self, nslots: int) -> int:
        """Packed value with 2^(WIDTH-1) in each of the first nslots slots;
        adding it makes every balanced digit nonnegative without carries."""
        while nslots not in self._offsets:
            i = len(self._offsets)
            self._offsets[i] = self._offsets[i - 1] + (
                1 << (self.WIDTH - 1 + self.WIDTH * (i - 1)))
        return self._offsets[nslots]

    def normalize(self, v: int) -> int:
        """Reduce the slot digits of a (possibly negative) packed value
        mod p, returning a packed value with digits in 0..p-1."""
        if v == 0:
            return 0
        w = self.WIDTH
        nslots = (abs(v).bit_length() + w) // w + 1
        y = v + self.offset(nslots)
        raw = y.to_bytes(4 * nslots, "little")
        arr = np.frombuffer(raw, dtype="<u4").astype(np.int64)
        arr -= 1 << (w - 1)
        arr %= self.p
        return int.from_bytes(arr.astype("<u4").tobytes(), "little")

    def degree(self, v: int) -> int:
        """Degree of a normalized nonzero packed polynomial."""
        return (v.bit_length() - 1) // self.WIDTH

    def reverse(self, v: int, deg: int) -> int:
        nslots = deg + 1
        raw = v.to_bytes(4 * nslots, "little")
        arr = np.frombuffer(raw, dtype="<u4")[::-1]
        return int.from_bytes(arr.tobytes(), "little")

    def newton_inverse(self, g: int, precision: int) -> int:
        """Inverse of g mod t^precision; g normalized with g(0) != 0."""
        w = self.WIDTH
        p = self.p
        x = pow(g & ((1 << w) - 1), -1, p)
        klen = 1
        while klen < precision:
            klen = min(2 * klen, precision)
            mask = (1 << (w * klen)) - 1
            gx = self.normalize((g & mask) * x) & mask
            # x <- x * (2 - g x) mod t^klen
            x = self.normalize(2 * x + (-x) * gx) & mask
        return x & ((1 << (w * precision)) - 1)

    def divexact(self, f: int, g_deg: int, inv_rev_g: int) -> int:
        """f / g for normalized packed f with g | f in F_p[t]; the divisor
        enters through its degree and the Newton inverse of its reversal."""
        if f == 0:
            return 0
        f_deg = self.degree(f)
        q_deg = f_deg - g_deg
        if q_deg < 0:
            raise ArithmeticError("inexact packed division")
        rev_f = self.reverse(f, f_deg)
        mask = (1 << (self.WIDTH * (q_deg + 1))) - 1
        rev_q = self.normalize((rev_f & mask) * (inv_rev_g & mask)) & mask
        return self.reverse(rev_q, q_deg)


def _det_packed_modp(rows: list[list[list[int]]], n: int, p: int) -> list[int]:
    """Fraction-free Bareiss natively over F_p[t] on packed polynomials."""
    max_deg = max((len(e) - 1 for row in rows for e in row if e), default=0)
    helper = _PackedFp(p, n * max(max_deg, 1) + 2)
    width = helper.WIDTH
    a = [[helper.normalize(_pack(e, width)) for e in row] for row in rows]
    sign = 1
    prev = 1
    prev_deg = 0
    inv_rev_prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return []
        piv = a[k][k]
        normalize = helper.normalize
        dive = helper.divexact
        first = k == 0
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                x = row_i[j] * piv - aik * row_k[j]
                if x == 0:
                    row_i[j] = 0
                elif first:
                    row_i[j] = normalize(x)
                else:
                    row_i[j] = dive(normalize(x), prev_deg, inv_rev_prev)
            row_i[k] = 0
        prev = piv
        prev_deg = helper.degree(piv)
        if k < n - 2:
            rev_prev = helper.reverse(prev, prev_deg)
            inv_rev_prev = helper.newton_inverse(
                rev_prev, n * max(max_deg, 1) + 2)
    det = a[n - 1][n - 1]
    coeffs = _unpack_balanced(det, width)
    if sign < 0:
        coeffs = [(-c) % p for c in coeffs]
    return coeffs


def determinant(m: PolyMatrix) -> LaurentPolynomial:
    """Exact determinant by fraction-free elimination.

    Powers of t are factored out of each row first, so the elimination
    runs on genuine polynomials; the result is bit-identical regardless of
    internal representation choices.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    dom = m.domain
    if n == 0:
        return LaurentPolynomial.one(dom)
    shift = 0
    rows: list[list[list[int]]] = []
    for i in range(n):
        entries = [m.entry(i, j) for j in range(n)]
        nonzero = [e for e in entries if not e.is_zero]
        if not nonzero:
            return LaurentPolynomial.zero(dom)
        r = min(e.min_exp for e in nonzero)
        shift += r
        row = []
        for e in entries:
            if e.is_zero:
                row.append([])
            else:
                row.append([0] * (e.min_exp - r) + list(e.coeffs))
        rows.append(row)
    max_len = max(max((len(e) for row in rows for e in row), default=1), 1)
    if dom.p is not None and 2 * (dom.p - 1) ** 2 * (n * max_len + 2) < 1 << 31:
        coeffs = _det_packed_modp(rows, n, dom.p)
    else:
        coeffs = _det_packed_integer(rows, n)
        if dom.p is not None:
            coeffs = [c % dom.p for c in coeffs]
    return LaurentPolynomial.make(dom, shift, coeffs)


def determinant_cofactor(m: PolyMatrix) -> LaurentPolynomial:
    """Naive cofactor expansion; the independent small-matrix oracle."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    dom = m.domain
    if n == 0:
        return LaurentPolynomial.one(dom)
    if n == 1:
        return m.entry(0, 0)
    total = LaurentPolynomial.zero(dom)
    for j in range(n):
        factor = m.entry(0, j)
        if factor.is_zero:
            continue
        sub = PolyMatrix.from_rows(
            [[m.entry(i, jj) for jj in range(n) if jj != j]
             for i in range(1, n)])
        term = factor * determinant_cofactor(sub)
        total = total + (term if j % 2 == 0 else -term)
    return total


def product_over_roots_of_unity(f: LaurentPolynomial, n: int
                                ) -> LaurentPolynomial:
    """The integer polynomial prod_{j=1..n} f(a^j t) for a = e^(2 pi i / n).

    Computed without complex arithmetic: after shifting f to a genuine
    polynomial, the product is the norm of f(x) in ZZ[t][x]/(x^n - t^n),
    i.e. the determinant of the multiplication-by-f matrix.  The unit is
    fixed so the lowest-degree coefficient is positive, and the t-shift
    comes back as n * min_exp.
    """
    if n < 1:
        raise ValueError("the root-of-unity order must be positive")
    if f.domain.p is not None:
        raise DomainMismatchError(
            "roots-of-unity products are defined over the integers")
    if f.is_zero:
        return f
    shift = n * f.min_exp
    cs = f.coeffs
    d = len(cs) - 1
    zero = LaurentPolynomial.zero(INTEGERS)
    mat = [[zero for _ in range(n)] for _ in range(n)]
    for c in range(n):
        for k, fk in enumerate(cs):
            if fk == 0:
                continue
            e = k + c
            row = e % n
            tpow = n * (e // n)
            mat[row][c] = mat[row][c] + LaurentPolynomial(
                INTEGERS, tpow, (fk,))
    det = determinant(PolyMatrix.from_rows(mat))
    if not det.is_zero and det.coeffs[0] < 0:
        det = -det
    return det.shift(shift)
