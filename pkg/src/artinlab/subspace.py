"""Ideals, submodules and powers of the maximal ideal as exact linear subspaces.

At truncation order D every A-submodule of A^p becomes a finite-dimensional
subspace of the coefficient space, indexed component-major and graded-lex
within each component.  All set queries (membership, sum, intersection,
order of the distance to a subspace) reduce to exact reduced row echelon
computations, which are canonical: equal subspaces have identical bases.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import PrecondError
from .series import (
    ExtOrder,
    RingSpec,
    TruncatedSeries,
    _raw,
    mono_degree,
    monomials_up_to,
)


@dataclass(frozen=True)
class IdealSpec:
    """A finitely generated ideal of the truncated ring; an empty tuple is the zero ideal."""

    ring: RingSpec
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise PrecondError("incompatible rings")

    @staticmethod
    def of(ring: RingSpec, gens: Sequence[TruncatedSeries]) -> "IdealSpec":
        return IdealSpec(ring, tuple(gens))

    def as_module(self) -> "ModuleSpec":
        return ModuleSpec(self.ring, 1, tuple((g,) for g in self.generators))


@dataclass(frozen=True)
class ModuleSpec:
    """A submodule of A^arity given by generating vectors of truncated series."""

    ring: RingSpec
    arity: int
    generators: tuple

    def __post_init__(self):
        if self.arity < 1:
            raise PrecondError("module arity must be >= 1")
        for vec in self.generators:
            if len(vec) != self.arity:
                raise PrecondError("generator vector length does not match arity")
            for g in vec:
                if g.ring != self.ring:
                    raise PrecondError("incompatible rings")

    def max_generator_degree(self) -> int:
        degs = [g.max_degree() for vec in self.generators for g in vec if not g.is_zero]
        return max(degs, default=0)


def as_module(M) -> ModuleSpec:
    return M.as_module() if isinstance(M, IdealSpec) else M


@lru_cache(maxsize=None)
def coord_index(num_vars: int, trunc: int):
    """Monomial list in graded-lex order plus its rank table."""
    monos = monomials_up_to(num_vars, trunc)
    return monos, {m: i for i, m in enumerate(monos)}


def series_to_vec(xs: Sequence[TruncatedSeries], ring: RingSpec) -> dict:
    monos, rank = coord_index(ring.num_vars, ring.trunc)
    width = len(monos)
    vec = {}
    for comp, s in enumerate(xs):
        if s.ring != ring:
            raise PrecondError("incompatible rings")
        base = comp * width
        for mono, c in s.terms.items():
            vec[base + rank[mono]] = c
    return vec


def vec_to_series(vec: dict, ring: RingSpec, arity: int) -> tuple:
    monos, _ = coord_index(ring.num_vars, ring.trunc)
    width = len(monos)
    parts = [{} for _ in range(arity)]
    for idx, c in vec.items():
        parts[idx // width][monos[idx % width]] = c
    return tuple(_raw(ring, p) for p in parts)


class Subspace:
    """Canonical reduced row echelon form over the coefficient field.

    Rows are sparse dicts column -> scalar; pivots are strictly increasing and
    normalized to 1, and each pivot column is eliminated from every other row.
    Two equal subspaces therefore carry identical representations.
    """

    __slots__ = ("ring", "arity", "rows", "pivots")

    def __init__(self, ring: RingSpec, arity: int = 1):
        self.ring = ring
        self.arity = arity
        self.rows = []
        self.pivots = []

    def copy(self) -> "Subspace":
        out = Subspace(self.ring, self.arity)
        out.rows = [dict(r) for r in self.rows]
        out.pivots = list(self.pivots)
        return out

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Canonical remainder of vec modulo this subspace (non-destructive)."""
        v = dict(vec)
        r = self.ring
        for p, row in zip(self.pivots, self.rows):
            c = v.get(p)
            if not c:
                continue
            for col, rc in row.items():
                s = r.s_sub(v.get(col, 0), r.s_mul(c, rc))
                if s == 0:
                    v.pop(col, None)
                else:
                    v[col] = s
        return v

    def insert(self, vec: dict) -> bool:
        """Add a vector; returns True when the dimension grew."""
        rem = self.reduce(vec)
        if not rem:
            return False
        r = self.ring
        p = min(rem)
        inv = r.s_inv(rem[p])
        row = {col: r.s_mul(c, inv) for col, c in rem.items()}
        pos = bisect.bisect_left(self.pivots, p)
        self.pivots.insert(pos, p)
        self.rows.insert(pos, row)
        # back-eliminate the new pivot column from the other rows
        for i, other in enumerate(self.rows):
            if i == pos:
                continue
            c = other.get(p)
            if not c:
                continue
            for col, rc in row.items():
                s = r.s_sub(other.get(col, 0), r.s_mul(c, rc))
                if s == 0:
                    other.pop(col, None)
                else:
                    other[col] = s
        return True

    def contains_vec(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vec(row) for row in other.rows)

    def _check(self, other: "Subspace"):
        if self.ring != other.ring or self.arity != other.arity:
            raise PrecondError("incompatible rings")

    def canonical(self) -> tuple:
        return tuple(tuple(sorted(r.items())) for r in self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ring == other.ring
            and self.arity == other.arity
            and self.canonical() == other.canonical()
        )

    def __hash__(self):
        return hash((self.ring, self.arity, self.canonical()))

    def __repr__(self):
        return f"<Subspace dim={self.dim} arity={self.arity}>"



def span_module(
    M: ModuleSpec,
    min_mult_degree: int = 0,
    sound: bool = False,
) -> Subspace:
    """Span of {u * g : g generator, u monomial with deg(u) >= min_mult_degree}.

    min_mult_degree = j realizes the module m^j * M.  With sound=True the
    multiplier degree is additionally capped at D - deg(g), so every product
    is computed without losing terms to truncation; membership in the sound
    span certifies membership in the untruncated module.
    """
    ring = M.ring
    D = ring.trunc
    U = Subspace(ring, M.arity)
    for gen in M.generators:
        degs = [g.max_degree() for g in gen if not g.is_zero]
        if not degs:
            continue
        gdeg = max(degs)
        lowest = min(g.order().value for g in gen if not g.is_zero)
        cap = D - gdeg if sound else D - lowest
        for u in monomials_up_to(ring.num_vars, max(cap, min_mult_degree - 1)):
            if mono_degree(u) < min_mult_degree:
                continue
            if mono_degree(u) > cap:
                continue
            mono_series = TruncatedSeries.monomial(ring, u)
            U.insert(series_to_vec([mono_series * g for g in gen], ring))
    return U


def span_ideal(I: IdealSpec, min_mult_degree: int = 0, sound: bool = False) -> Subspace:
    return span_module(I.as_module(), min_mult_degree, sound)


def span_m_power(ring: RingSpec, i: int, arity: int = 1) -> Subspace:
    """Direct sum of m^i over all components; i = D+1 gives the zero subspace."""
    if not 0 <= i <= ring.trunc + 1:
        raise PrecondError(f"m-power exponent {i} out of range 0..{ring.trunc + 1}")
    monos, _ = coord_index(ring.num_vars, ring.trunc)
    width = len(monos)
    U = Subspace(ring, arity)
    one = ring.s_one
    for comp in range(arity):
        base = comp * width
        for idx, m in enumerate(monos):
            if mono_degree(m) >= i:
                U.rows.append({base + idx: one})
                U.pivots.append(base + idx)
    order = sorted(range(len(U.pivots)), key=U.pivots.__getitem__)
    U.rows = [U.rows[k] for k in order]
    U.pivots = [U.pivots[k] for k in order]
    return U


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    out = U.copy()
    for row in V.rows:
        out.insert(row)
    return out


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    """Exact intersection via echelon on doubled coordinates."""
    U._check(V)
    monos, _ = coord_index(U.ring.num_vars, U.ring.trunc)
    n = len(monos) * U.arity
    work = Subspace(U.ring, U.arity)  # columns 0..2n-1, arity only nominal
    for row in U.rows:
        double = dict(row)
        for col, c in row.items():
            double[col + n] = c
        work.insert(double)
    inter = Subspace(U.ring, U.arity)
    for row in V.rows:
        rem = work.reduce(dict(row))
        if not rem:
            continue
        if all(col >= n for col in rem):
            inter.insert({col - n: c for col, c in rem.items()})
        work.insert(rem)
    return inter


def member(xs, U: Subspace) -> bool:
    """Membership of a series (or vector of series) in the subspace."""
    if isinstance(xs, TruncatedSeries):
        xs = (xs,)
    if len(xs) != U.arity:
        raise PrecondError("incompatible rings")
    return U.contains_vec(series_to_vec(xs, U.ring))


class MTower:
    """Cached echelon bases of U + m^n for n = 0..D+1, for fast order queries."""

    def __init__(self, base: Subspace):
        self.ring = base.ring
        self.arity = base.arity
        D = base.ring.trunc
        monos, _ = coord_index(base.ring.num_vars, base.ring.trunc)
        width = len(monos)
        levels = [None] * (D + 2)
        levels[D + 1] = base.copy()
        current = base.copy()
        one = base.ring.s_one
        for n in range(D, -1, -1):
            for comp in range(base.arity):
                off = comp * width
                for idx, m in enumerate(monos):
                    if mono_degree(m) == n:
                        current.insert({off + idx: one})
            levels[n] = current.copy()
        self.levels = levels

    def order_of_vec(self, vec: dict) -> ExtOrder:
        """Largest n with vec in U + m^n; full membership gives the at-least marker."""
        D = self.ring.trunc
        if self.levels[D + 1].contains_vec(vec):
            return ExtOrder.at_least(D + 1)
        lo, hi = 0, D + 1  # membership holds at lo, fails at hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.levels[mid].contains_vec(vec):
                lo = mid
            else:
                hi = mid
        return ExtOrder.of(lo)

    def order_of(self, xs) -> ExtOrder:
        if isinstance(xs, TruncatedSeries):
            xs = (xs,)
        return self.order_of_vec(series_to_vec(xs, self.ring))


def distance_order(xs, U: Subspace) -> ExtOrder:
    """max{ n : x in U + m^n }, the order of the distance from x to U."""
    return MTower(U).order_of(xs)


def solve_linear(equations, num_unknowns: int, ring: RingSpec):
    """One exact solution of a sparse linear system, or None if inconsistent.

    equations: list of (coeffs: dict unknown->scalar, rhs scalar).  Free
    unknowns are set to zero, so the answer is deterministic.
    """
    reduced = []  # (pivot, row, rhs) in reduced echelon form
    for coeffs, rhs in equations:
        row = {}
        for k, v in coeffs.items():
            v = ring.s_from(v)
            if v != 0:
                row[k] = v
        rhs = ring.s_from(rhs)
        for p, prow, prhs in reduced:
            c = row.get(p)
            if not c:
                continue
            for k, v in prow.items():
                s = ring.s_sub(row.get(k, 0), ring.s_mul(c, v))
                if s == 0:
                    row.pop(k, None)
                else:
                    row[k] = s
            rhs = ring.s_sub(rhs, ring.s_mul(c, prhs))
        if not row:
            if rhs != 0:
                return None
            continue
        p = min(row)
        inv = ring.s_inv(row[p])
        row = {k: ring.s_mul(v, inv) for k, v in row.items()}
        rhs = ring.s_mul(rhs, inv)
        next_reduced = []
        for q, erow, erhs in reduced:
            c = erow.get(p)
            if c:
                for k, v in row.items():
                    s = ring.s_sub(erow.get(k, 0), ring.s_mul(c, v))
                    if s == 0:
                        erow.pop(k, None)
                    else:
                        erow[k] = s
                erhs = ring.s_sub(erhs, ring.s_mul(c, rhs))
            next_reduced.append((q, erow, erhs))
        reduced = next_reduced
        reduced.append((p, row, rhs))
    zero = ring.s_from(0)
    solution = [zero] * num_unknowns
    for p, row, rhs in reduced:
        solution[p] = rhs
    return solution
