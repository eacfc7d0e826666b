"""Exact arithmetic in truncated multivariate power-series rings.

Everything lives in the finite-dimensional algebra A_D = k[T1..TN]/m^(D+1),
where m = (T1,..,TN) and D is the truncation order.  Working there makes
every statement of the form "x lies in m^n" decidable by finite linear
algebra with zero approximation error, because m^(D+1) = (0).

Coefficients are exact: Fraction over the rationals, canonical residues for
a prime field.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Optional, Sequence

from .errors import PrecondError

Monomial = tuple  # exponent vector, one entry per variable


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """Ambient truncated local ring: N variables over Q (char 0) or F_p, cut at total degree D."""

    num_vars: int
    char: int
    trunc: int

    def __post_init__(self):
        if self.num_vars < 1:
            raise PrecondError("num_vars must be >= 1")
        if self.trunc < 1:
            raise PrecondError("trunc must be >= 1")
        if self.char != 0 and not _is_prime(self.char):
            raise PrecondError(f"characteristic {self.char} is not 0 or a prime")
        if self.char >= 2**31:
            raise PrecondError("prime characteristic must be < 2^31")

    # -- exact scalar arithmetic ------------------------------------------
    def s_from(self, v):
        if self.char == 0:
            if isinstance(v, Fraction):
                return v
            if isinstance(v, int):
                return Fraction(v)
            raise PrecondError(f"bad scalar {v!r} for characteristic 0")
        if isinstance(v, Fraction):
            if v.denominator % self.char == 0:
                raise PrecondError(f"denominator of {v} not invertible mod {self.char}")
            return v.numerator * pow(v.denominator, self.char - 2, self.char) % self.char
        if isinstance(v, int):
            return v % self.char
        raise PrecondError(f"bad scalar {v!r} for characteristic {self.char}")

    def s_add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def s_sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def s_mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def s_neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def s_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("scalar inverse of zero")
        if self.char == 0:
            return 1 / a
        return pow(a, self.char - 2, self.char)

    @property
    def s_one(self):
        return Fraction(1) if self.char == 0 else 1


def grlex_key(m: Monomial):
    """Sort key realizing graded-lex order with T1 > T2 > ... (degree first)."""
    return (sum(m), tuple(-e for e in m))


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(num_vars: int, degree: int) -> tuple:
    """All exponent vectors of the given total degree, in graded-lex order."""
    if num_vars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomials_up_to(num_vars: int, degree: int) -> tuple:
    out = []
    for d in range(degree + 1):
        out.extend(monomials_of_degree(num_vars, d))
    return tuple(out)


@total_ordering
@dataclass(frozen=True)
class ExtOrder:
    """An order value: either an exact integer <= D, or the marker "at least D+1".

    The inexact form covers everything the truncation cannot distinguish,
    including the order of 0 (conventionally infinite).
    """

    value: int
    exact: bool = True

    @staticmethod
    def of(n: int) -> "ExtOrder":
        return ExtOrder(n, True)

    @staticmethod
    def at_least(n: int) -> "ExtOrder":
        return ExtOrder(n, False)

    def _key(self):
        # "at least n" dominates "exactly n"
        return (self.value, 0 if self.exact else 1)

    def __lt__(self, other: "ExtOrder") -> bool:
        return self._key() < other._key()

    def __add__(self, other: "ExtOrder") -> "ExtOrder":
        # the inexact marker absorbs addition: "at least n" + anything = "at least n"
        if not self.exact:
            return self
        if not other.exact:
            return other
        return ExtOrder(self.value + other.value, True)

    def __repr__(self):
        return str(self.value) if self.exact else f">={self.value}"


class TruncatedSeries:
    """Element of k[T1..TN]/m^(D+1) as a sparse map monomial -> nonzero scalar.

    Instances are immutable after construction; all operations return fresh
    values, so sharing across threads or scans is safe.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Optional[dict] = None):
        clean = {}
        if terms:
            D = ring.trunc
            for mono, coeff in terms.items():
                if sum(mono) > D:
                    continue
                if len(mono) != ring.num_vars:
                    raise PrecondError(f"monomial {mono} has wrong arity for {ring.num_vars} variables")
                c = ring.s_from(coeff)
                if c != 0:
                    clean[tuple(mono)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, ring: RingSpec) -> "TruncatedSeries":
        return cls(ring)

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "TruncatedSeries":
        return cls(ring, {(0,) * ring.num_vars: c})

    @classmethod
    def one(cls, ring: RingSpec) -> "TruncatedSeries":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: RingSpec, idx: int) -> "TruncatedSeries":
        if not 0 <= idx < ring.num_vars:
            raise PrecondError(f"variable index {idx} out of range")
        exps = [0] * ring.num_vars
        exps[idx] = 1
        return cls(ring, {tuple(exps): 1})

    @classmethod
    def monomial(cls, ring: RingSpec, exps: Sequence[int], coeff=1) -> "TruncatedSeries":
        return cls(ring, {tuple(exps): coeff})

    # -- ring operations ---------------------------------------------------
    def _check_ring(self, other: "TruncatedSeries"):
        if self.ring != other.ring:
            raise PrecondError("incompatible rings")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        r = self.ring
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = r.s_add(out.get(mono, 0), c)
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return _raw(r, out)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        r = self.ring
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = r.s_sub(out.get(mono, 0), c)
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return _raw(r, out)

    def __neg__(self) -> "TruncatedSeries":
        r = self.ring
        return _raw(r, {m: r.s_neg(c) for m, c in self.terms.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        r = self.ring
        D = r.trunc
        out = {}
        for m1, c1 in self.terms.items():
            d1 = sum(m1)
            for m2, c2 in other.terms.items():
                if d1 + sum(m2) > D:
                    continue
                m = mono_mul(m1, m2)
                s = r.s_add(out.get(m, 0), r.s_mul(c1, c2))
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return _raw(r, out)

    def scale(self, c) -> "TruncatedSeries":
        r = self.ring
        c = r.s_from(c)
        if c == 0:
            return TruncatedSeries.zero(r)
        return _raw(r, {m: r.s_mul(v, c) for m, v in self.terms.items()})

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            raise PrecondError("negative exponent")
        result = TruncatedSeries.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- order structure ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> ExtOrder:
        """m-adic order; 0 gets the marker "at least D+1" (it may be anything, including infinity)."""
        if not self.terms:
            return ExtOrder.at_least(self.ring.trunc + 1)
        return ExtOrder.of(min(sum(m) for m in self.terms))

    def max_degree(self) -> int:
        """Largest total degree of a stored term (0 for the zero series)."""
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def homogeneous_part(self, d: int) -> "TruncatedSeries":
        if not 0 <= d <= self.ring.trunc:
            raise PrecondError(f"homogeneous degree {d} out of range 0..{self.ring.trunc}")
        return _raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def initial_form(self) -> "TruncatedSeries":
        if self.is_zero:
            raise PrecondError("initial form of zero undefined")
        return self.homogeneous_part(self.order().value)

    # -- canonical views -----------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_zero:
            return "0"
        if names is None:
            names = default_names(self.ring.num_vars)
        chunks = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = _scalar_str(coeff)
            if factors:
                body = "*".join(factors)
                if cs == "1":
                    text = body
                elif cs == "-1":
                    text = "-" + body
                else:
                    text = f"{cs}*{body}"
            else:
                text = cs
            chunks.append(text)
        out = chunks[0]
        for t in chunks[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(self.sorted_terms())))

    def __repr__(self):
        return self.to_str()


def _raw(ring: RingSpec, clean_terms: dict) -> TruncatedSeries:
    # internal fast path: terms already normalized
    s = TruncatedSeries.__new__(TruncatedSeries)
    object.__setattr__(s, "ring", ring)
    object.__setattr__(s, "terms", clean_terms)
    return s


def _scalar_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def default_names(num_vars: int) -> list:
    return [f"T{i + 1}" for i in range(num_vars)]


def ord_of(a: TruncatedSeries) -> ExtOrder:
    return a.order()

