"""Polynomials in unknowns X1..Xn with truncated-series coefficients."""

from __future__ import annotations

from typing import Sequence

from .errors import PrecondError
from .series import RingSpec, TruncatedSeries


class PolyInX:
    """Sparse polynomial: map X-exponent tuple -> TruncatedSeries coefficient."""

    __slots__ = ("ring", "n_unknowns", "terms")

    def __init__(self, ring: RingSpec, n_unknowns: int, terms=None):
        self.ring = ring
        self.n_unknowns = n_unknowns
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != n_unknowns:
                    raise PrecondError("X-exponent arity mismatch")
                if not coeff.is_zero:
                    clean[tuple(exps)] = coeff
        self.terms = clean

    @classmethod
    def from_series(cls, s: TruncatedSeries, n_unknowns: int) -> "PolyInX":
        return cls(s.ring, n_unknowns, {(0,) * n_unknowns: s})

    @classmethod
    def unknown(cls, ring: RingSpec, n_unknowns: int, idx: int) -> "PolyInX":
        e = [0] * n_unknowns
        e[idx] = 1
        return cls(ring, n_unknowns, {tuple(e): TruncatedSeries.one(ring)})

    def _check(self, other: "PolyInX"):
        if self.ring != other.ring or self.n_unknowns != other.n_unknowns:
            raise PrecondError("incompatible rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        return PolyInX(self.ring, self.n_unknowns, out)

    def __neg__(self):
        return PolyInX(self.ring, self.n_unknowns, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    c = out[e] + c
                if c.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = c
        return PolyInX(self.ring, self.n_unknowns, out)

    def __pow__(self, e: int):
        if e < 0:
            raise PrecondError("negative exponent")
        result = PolyInX.from_series(TruncatedSeries.one(self.ring), self.n_unknowns)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    @property
    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_series(self) -> TruncatedSeries:
        if not self.is_constant:
            raise PrecondError("polynomial involves unknowns where a plain series was expected")
        if not self.terms:
            return TruncatedSeries.zero(self.ring)
        return next(iter(self.terms.values()))

    def eval(self, xs: Sequence[TruncatedSeries]) -> TruncatedSeries:
        if len(xs) != self.n_unknowns:
            raise PrecondError("wrong number of unknowns in evaluation")
        total = TruncatedSeries.zero(self.ring)
        for exps, coeff in self.terms.items():
            term = coeff
            for x, e in zip(xs, exps):
                for _ in range(e):
                    term = term * x
            total = total + term
        return total
