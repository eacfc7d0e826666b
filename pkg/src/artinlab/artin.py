"""Artin-Rees indices, constructive correction solvers, stable inclusion scans,
and certified brute-force lower bounds for approximation functions.

The truncated algebra makes every inclusion below a finite linear-algebra
check.  Results carry a certified range: truncation can manufacture spurious
high-degree intersections, so queries past the range refuse instead of
silently degrading.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence

from .errors import BudgetError, PrecondError
from .series import ExtOrder, TruncatedSeries, _raw, monomials_of_degree, monomials_up_to
from .subspace import (
    IdealSpec,
    ModuleSpec,
    Subspace,
    as_module,
    series_to_vec,
    solve_linear,
    span_m_power,
    span_module,
    subspace_intersect,
    vec_to_series,
)
from .xpoly import PolyInX


# ---------------------------------------------------------------------------
# Artin-Rees index
# ---------------------------------------------------------------------------

@dataclass
class ArIndexResult:
    """Smallest i0 with  M cap m^i  inside  m^(i-i0) * M  for all certified i."""

    i0: int
    certified_up_to: int
    tight_witness: Optional[tuple]  # (i, vector of series) violating index i0-1
    module: ModuleSpec
    deficits: list = field(default_factory=list)  # (i, largest j with inclusion)


def _prune_redundant_generators(M: ModuleSpec) -> ModuleSpec:
    """Degree-minimal generating subset of the same truncated module.

    Redundant generators do not change the module, so they must not shrink
    the certified range; keep lowest-degree generators first and drop any
    vector the kept ones already span.
    """
    order = sorted(
        (vec for vec in M.generators if not all(g.is_zero for g in vec)),
        key=lambda vec: (max(g.max_degree() for g in vec if not g.is_zero), tuple(g.to_str() for g in vec)),
    )
    kept = []
    span = None
    for vec in order:
        if span is not None and span.contains_vec(series_to_vec(vec, M.ring)):
            continue
        kept.append(vec)
        span = span_module(ModuleSpec(M.ring, M.arity, tuple(kept)))
    return ModuleSpec(M.ring, M.arity, tuple(kept))


def artin_rees_index(M) -> ArIndexResult:
    M = _prune_redundant_generators(as_module(M))
    ring = M.ring
    cert = ring.trunc - M.max_generator_degree()
    if cert < 0:
        raise PrecondError("generators exceed the truncation order; no certified range")
    U = span_module(M)
    scaled = {}

    def scaled_span(j: int) -> Subspace:
        if j not in scaled:
            scaled[j] = span_module(M, min_mult_degree=j)
        return scaled[j]

    deficits = []
    i0 = 0
    witness = None
    for i in range(cert + 1):
        inter = subspace_intersect(U, span_m_power(ring, i, M.arity))
        j_ok = 0
        for j in range(i, -1, -1):
            if scaled_span(j).contains(inter):
                j_ok = j
                break
        deficits.append((i, j_ok))
        if i - j_ok > i0:
            i0 = i - j_ok
            # a basis vector of the intersection outside m^(j_ok+1) * M shows i0-1 fails
            bad = scaled_span(j_ok + 1)
            witness = None
            for row in inter.rows:
                if not bad.contains_vec(row):
                    witness = (i, vec_to_series(row, ring, M.arity))
                    break
    return ArIndexResult(i0=i0, certified_up_to=cert, tight_witness=witness, module=M, deficits=deficits)


# ---------------------------------------------------------------------------
# Correction solvers
# ---------------------------------------------------------------------------

@dataclass
class SolveCertificate:
    """Exact solution produced from an approximate one, with proximity orders."""

    input: tuple
    output: tuple
    level_i: int
    proximity: list  # ExtOrder of each difference
    residual_order: ExtOrder
    regularity: str = "verified-monomial"


def _monomial_disjoint_initials(f: Sequence[TruncatedSeries]) -> bool:
    used = set()
    for g in f:
        form = g.initial_form()
        if len(form.terms) != 1:
            return False
        (mono,) = form.terms
        vars_here = {i for i, e in enumerate(mono) if e}
        if used & vars_here:
            return False
        used |= vars_here
    return True


def solve_linear_regular(
    f: Sequence[TruncatedSeries],
    x: Sequence[TruncatedSeries],
    i: int,
    assume_regular: bool = False,
) -> SolveCertificate:
    """Exact zero of f1*X1+...+fn*Xn near an approximate one.

    Requires the initial forms of the f_j to be a regular sequence; then every
    syzygy of those forms is an antisymmetric combination of the forms
    themselves, and peeling the lowest homogeneous layer of the residual off
    degree by degree converges.  The output is always of the antisymmetric
    shape sum_k f_k z(k,j), hence an exact solution, and each coordinate moves
    by at most m^(i + ord(fn) - ord(fj) + 1).
    """
    f = list(f)
    x = list(x)
    if not f or len(f) != len(x):
        raise PrecondError("need equally many generators and coordinates")
    ring = f[0].ring
    n = len(f)
    for s in f + x:
        if s.ring != ring:
            raise PrecondError("incompatible rings")
    if any(g.is_zero for g in f):
        raise PrecondError("zero generator not allowed")
    e = [g.order().value for g in f]
    if any(e[j] > e[j + 1] for j in range(n - 1)):
        raise PrecondError("generators must come in non-decreasing order of their orders")
    if i < 0:
        raise PrecondError("approximation level i must be >= 0")
    D = ring.trunc
    en = e[-1]
    if i + en > D:
        raise PrecondError(f"level i={i} with ord(fn)={en} exceeds certified range (trunc {D})")
    if _monomial_disjoint_initials(f):
        regularity = "verified-monomial"
    elif assume_regular:
        regularity = "assumed"
    else:
        raise PrecondError(
            "cannot verify that the initial forms are a regular sequence; "
            "pass assume_regular to assert it"
        )

    residual = TruncatedSeries.zero(ring)
    for g, xi in zip(f, x):
        residual = residual + g * xi
    if residual.order() <= ExtOrder.of(i + en):
        raise PrecondError("approximation level insufficient")

    phi = [g.initial_form() for g in f]
    cur = list(x)
    zmap = {}  # (k, j) with k < j  ->  accumulated series

    def z_at(k, j):
        if k == j:
            return TruncatedSeries.zero(ring)
        if k < j:
            return zmap.get((k, j), TruncatedSeries.zero(ring))
        return -zmap.get((j, k), TruncatedSeries.zero(ring))

    guard = 0
    while True:
        guard += 1
        if guard > D + 2:
            raise PrecondError("correction did not converge; preconditions violated")
        prods = [g * c for g, c in zip(f, cur)]
        orders = [p.order() for p in prods]
        mu_ord = min(orders)
        if not mu_ord.exact or mu_ord.value > i + en:
            break
        mu = mu_ord.value
        live = [j for j in range(n) if orders[j] == mu_ord]
        correction = _antisymmetric_step(ring, phi, e, cur, mu, live)
        if correction is None:
            raise PrecondError(
                "no antisymmetric correction exists at the lowest level; "
                "the initial forms are not a regular sequence or the input is inconsistent"
            )
        for (k, j), z0 in correction.items():
            zmap[(k, j)] = zmap.get((k, j), TruncatedSeries.zero(ring)) + z0
        for j in range(n):
            corr = TruncatedSeries.zero(ring)
            for k in range(n):
                zkj = correction.get((k, j))
                if zkj is None and k > j:
                    zx = correction.get((j, k))
                    zkj = -zx if zx is not None else None
                if zkj is not None:
                    corr = corr + f[k] * zkj
            cur[j] = cur[j] - corr

    xbar = []
    for j in range(n):
        out = TruncatedSeries.zero(ring)
        for k in range(n):
            out = out + f[k] * z_at(k, j)
        xbar.append(out)
    check = TruncatedSeries.zero(ring)
    for g, xb in zip(f, xbar):
        check = check + g * xb
    assert check.is_zero, "antisymmetric output failed to be an exact solution"
    proximity = [(xb - xi).order() for xb, xi in zip(xbar, x)]
    for j, pr in enumerate(proximity):
        need = i + en - e[j] + 1
        assert pr >= ExtOrder.of(min(need, D + 1)), "proximity guarantee violated"
    return SolveCertificate(
        input=tuple(x),
        output=tuple(xbar),
        level_i=i,
        proximity=proximity,
        residual_order=check.order(),
        regularity=regularity,
    )


def _antisymmetric_step(ring, phi, e, cur, mu, live):
    """Solve xi_j = sum_k phi_k z(k,j) with z(k,j) = -z(j,k) on the active indices.

    Unknowns are the coefficients of the homogeneous z(k,j) for k < j in
    `live`; returns a dict for those pairs, or None when inconsistent.
    """
    unknowns = []  # (k, j, monomial)
    index = {}
    for a in range(len(live)):
        for b in range(a + 1, len(live)):
            k, j = live[a], live[b]
            dz = mu - e[k] - e[j]
            if dz < 0:
                continue
            for m in monomials_of_degree(ring.num_vars, dz):
                index[(k, j, m)] = len(unknowns)
                unknowns.append((k, j, m))
    equations = []
    for j in live:
        xi = cur[j].homogeneous_part(mu - e[j])
        rows = {}  # monomial of degree mu - e[j]  ->  dict unknown -> scalar
        for k in live:
            if k == j:
                continue
            lo, hi = (k, j) if k < j else (j, k)
            sign = 1 if k < j else -1
            for mono_phi, c in phi[k].terms.items():
                dz = mu - e[k] - e[j]
                if dz < 0:
                    continue
                for mz in monomials_of_degree(ring.num_vars, dz):
                    key = (lo, hi, mz)
                    if key not in index:
                        continue
                    target = tuple(a + b for a, b in zip(mono_phi, mz))
                    row = rows.setdefault(target, {})
                    val = c if sign == 1 else ring.s_neg(c)
                    idx = index[key]
                    row[idx] = ring.s_add(row.get(idx, 0), val)
        for m in monomials_of_degree(ring.num_vars, mu - e[j]):
            equations.append((rows.get(m, {}), xi.terms.get(m, 0)))
    sol = solve_linear(equations, len(unknowns), ring)
    if sol is None:
        return None
    out = {}
    for (k, j, m), idx in index.items():
        c = sol[idx]
        if c != 0:
            cur_s = out.get((k, j), TruncatedSeries.zero(ring))
            out[(k, j)] = cur_s + TruncatedSeries.monomial(ring, m, c)
    return out


def reduce_mod_principal(h: TruncatedSeries, f: TruncatedSeries, k: int):
    """h = a*f + h' with no term of h' divisible by T1^k (canonical at truncation).

    Each substituted term T1^k -> f - g trades a term for strictly higher
    degree ones, so the sweep terminates at the truncation order.
    """
    ring = h.ring
    a = TruncatedSeries.zero(ring)
    rest = h
    guard = 0
    while True:
        guard += 1
        if guard > ring.trunc + 2:
            raise PrecondError("principal reduction did not terminate")
        div = {m: c for m, c in rest.terms.items() if m[0] >= k}
        if not div:
            break
        u = _raw(ring, {(m[0] - k,) + m[1:]: c for m, c in div.items()})
        a = a + u
        rest = rest - u * f
    return a, rest


def _divide_homogeneous(xi: TruncatedSeries, phi: TruncatedSeries):
    """z with phi * z = xi for homogeneous forms, or None when not divisible."""
    ring = xi.ring
    dz = xi.order().value - phi.order().value if not xi.is_zero else 0
    if xi.is_zero:
        return TruncatedSeries.zero(ring)
    if dz < 0:
        return None
    zmonos = list(monomials_of_degree(ring.num_vars, dz))
    index = {m: i for i, m in enumerate(zmonos)}
    rows = {}
    for mono_phi, c in phi.terms.items():
        for mz in zmonos:
            target = tuple(a + b for a, b in zip(mono_phi, mz))
            rows.setdefault(target, {})[index[mz]] = c
    equations = []
    for m in monomials_of_degree(ring.num_vars, xi.order().value):
        equations.append((rows.get(m, {}), xi.terms.get(m, 0)))
    sol = solve_linear(equations, len(zmonos), ring)
    if sol is None:
        return None
    return TruncatedSeries(ring, {m: sol[index[m]] for m in zmonos})


def solve_fx_hy(
    k: int,
    f: TruncatedSeries,
    h: TruncatedSeries,
    x: TruncatedSeries,
    y: TruncatedSeries,
    i: int,
) -> SolveCertificate:
    """Exact zero of f*X + h*Y near (x, y), for f = T1^k + g with ord(g) = k+1
    and T1 not dividing the initial form of g.

    Works by successive eliminations: reduce h modulo f to a normal form h'
    with no T1^k-divisible term, then repeatedly divide the initial form of
    the X-coordinate by the initial form of h', which the shape hypotheses
    make possible; the exact solution is of the form (h'*z, -f*z).
    """
    ring = f.ring
    for s in (h, x, y):
        if s.ring != ring:
            raise PrecondError("incompatible rings")
    if k < 1:
        raise PrecondError("k must be >= 1")
    lead = TruncatedSeries.monomial(ring, (k,) + (0,) * (ring.num_vars - 1))
    g = f - lead
    if g.is_zero or g.order() != ExtOrder.of(k + 1):
        raise PrecondError("f must have the shape T1^k + g with ord(g) = k+1")
    if all(m[0] >= 1 for m in g.initial_form().terms):
        raise PrecondError("T1 must not divide the initial form of g")
    D = ring.trunc
    a, h1 = reduce_mod_principal(h, f, k)
    if h1.is_zero:
        raise PrecondError("h lies in (f) at truncation; the proximity bound is out of certified range")
    nu_h = h1.order().value
    bound = i + max(k, nu_h + 1)
    if bound > D:
        raise PrecondError(f"bound exponent {bound} exceeds certified range (trunc {D})")
    residual = f * x + h * y
    if residual.order() <= ExtOrder.of(bound):
        raise PrecondError("approximation level insufficient")

    xw = x + a * y
    target = i + max(k, nu_h) - k + 1
    in_h1 = h1.initial_form()
    z = TruncatedSeries.zero(ring)
    cur = xw
    guard = 0
    while cur.order().exact and cur.order().value < target:
        guard += 1
        if guard > D + 2:
            raise PrecondError("elimination did not converge; preconditions violated")
        z0 = _divide_homogeneous(cur.initial_form(), in_h1)
        if z0 is None:
            raise PrecondError(
                "initial form of the X-coordinate is not divisible by the normal form of h; "
                "shape or approximation preconditions violated"
            )
        cur = cur - h1 * z0
        z = z + z0
    ybar = -(f * z)
    xbar = h1 * z - a * ybar
    check = f * xbar + h * ybar
    assert check.is_zero, "koszul output failed to be an exact solution"
    prox = [(xbar - x).order(), (ybar - y).order()]
    assert all(p >= ExtOrder.of(min(i + 1, D + 1)) for p in prox), "proximity guarantee violated"
    return SolveCertificate(
        input=(x, y),
        output=(xbar, ybar),
        level_i=i,
        proximity=prox,
        residual_order=check.order(),
        regularity="shape-verified",
    )


# ---------------------------------------------------------------------------
# Stable inclusion scan
# ---------------------------------------------------------------------------

@dataclass
class StableArReport:
    ideal: IdealSpec
    a: Fraction
    b: int
    checks: list  # (x, i, nu_x, exponent, holds)
    all_hold: bool
    skipped: list  # x with undecidable order
    grid: list  # (a, b, all_hold) over the slope grid
    minimal_pass: Optional[tuple]


def stable_ar_scan(
    I: IdealSpec,
    xs: Sequence[TruncatedSeries],
    a: Fraction = Fraction(1),
    b: int = 0,
    grid_b_max: Optional[int] = None,
) -> StableArReport:
    """Check ((x)+I) cap m^(i + a*nu(x) + b)  inside  ((x)+I) * m^i for each x.

    Scans every feasible i in the certified range, then grid-searches the
    smallest passing (a, b) over the standard slopes.
    """
    from .orders import NuOracle

    a = Fraction(a)
    ring = I.ring
    D = ring.trunc
    oracle = NuOracle(I)
    gen_deg = max((g.max_degree() for g in I.generators if not g.is_zero), default=0)
    data = []
    skipped = []
    for x in xs:
        nu_x = oracle.nu(x)
        if not nu_x.exact:
            skipped.append(x)
            continue
        aug = ModuleSpec(ring, 1, tuple((g,) for g in I.generators) + ((x,),))
        cert = D - max(gen_deg, x.max_degree())
        U = span_module(aug)
        inter_cache = {}
        scaled_cache = {}

        def inter(kk, U=U, cache=inter_cache):
            if kk not in cache:
                cache[kk] = subspace_intersect(U, span_m_power(ring, kk))
            return cache[kk]

        def scaled(ii, aug=aug, cache=scaled_cache):
            if ii not in cache:
                cache[ii] = span_module(aug, min_mult_degree=ii)
            return cache[ii]

        data.append((x, nu_x.value, cert, inter, scaled, {}))

    def holds(x_entry, i, kk):
        x, nu_v, cert, inter, scaled, memo = x_entry
        key = (i, kk)
        if key not in memo:
            memo[key] = scaled(i).contains(inter(kk))
        return memo[key]

    def run(a_val, b_val):
        rows = []
        ok = True
        for entry in data:
            x, nu_v, cert, inter, scaled, memo = entry
            i = 0
            while True:
                exponent = i + ceil(a_val * nu_v) + b_val
                if exponent > cert or i > cert:
                    break
                good = holds(entry, i, exponent)
                rows.append((x, i, ExtOrder.of(nu_v), exponent, good))
                ok = ok and good
                i += 1
        return rows, ok

    checks, all_hold = run(a, b)
    grid = []
    minimal = None
    cap = grid_b_max if grid_b_max is not None else D
    for a_val in (Fraction(1), Fraction(3, 2), Fraction(2)):
        found = None
        for b_val in range(cap + 1):
            _, ok = run(a_val, b_val)
            if ok:
                found = b_val
                break
        grid.append((a_val, found))
        if found is not None and minimal is None:
            minimal = (a_val, found)
    return StableArReport(
        ideal=I,
        a=a,
        b=b,
        checks=checks,
        all_hold=all_hold,
        skipped=skipped,
        grid=grid,
        minimal_pass=minimal,
    )


# ---------------------------------------------------------------------------
# Brute-force approximation-function lower bound
# ---------------------------------------------------------------------------

@dataclass
class BetaResult:
    value: int
    level_i: int
    explored_nodes: int
    state_space_size: int
    solvable_classes: int


class _BetaSearch:
    """Layered exhaustive search over the truncated algebra over F_p.

    Enumerates assignments one homogeneous layer of one unknown at a time.
    Residual components below the "finality frontier" can no longer change,
    so a nonzero one fixes the residual order of the entire subtree; slots
    that cannot influence the residual at all are frozen to zero, which
    collapses classes that are equivalent by translation.
    """

    def __init__(self, system: Sequence[PolyInX], i: int, budget: int):
        if not system:
            raise PrecondError("empty system")
        ring = system[0].ring
        if ring.char == 0:
            raise PrecondError("brute-force enumeration requires a finite field")
        n = system[0].n_unknowns
        for pys in system:
            if pys.ring != ring or pys.n_unknowns != n:
                raise PrecondError("incompatible rings")
        if not 0 <= i <= ring.trunc:
            raise PrecondError(f"approximation level {i} out of range 0..{ring.trunc}")
        self.system = list(system)
        self.ring = ring
        self.n = n
        self.i = i
        self.budget = budget
        D = ring.trunc
        self.D = D
        self.slots = [(d, j) for d in range(D + 1) for j in range(n)]
        self.boundary = (i + 1) * n
        self.terms_by_unknown = []
        for j in range(n):
            lst = []
            for pidx, poly in enumerate(self.system):
                for alpha, coeff in poly.terms.items():
                    if alpha[j] >= 1 and not coeff.is_zero:
                        lst.append((pidx, alpha, coeff.order().value))
            self.terms_by_unknown.append(lst)
        num_coeffs = n * len(monomials_up_to(ring.num_vars, D))
        self.state_space_size = ring.char**num_coeffs
        self.nodes = 0
        self.solset = set()
        self.best = -1
        # mutable search state
        self.xs = [TruncatedSeries.zero(ring) for _ in range(n)]
        self.res = [poly.eval(self.xs) for poly in self.system]
        self.fno = [None] * n
        self.next_layer = [0] * n
        self._frames = []

    # -- bookkeeping -------------------------------------------------------
    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetError(
                f"enumeration budget {self.budget} exhausted after {self.nodes} nodes; "
                f"raw state space has size {self.state_space_size}"
            )

    def _lb(self, u: int) -> int:
        return self.fno[u] if self.fno[u] is not None else self.next_layer[u]

    def _slot_min_degree(self, j: int, d: int) -> int:
        best = self.D + 1
        for pidx, alpha, cord in self.terms_by_unknown[j]:
            s = cord + d
            for u in range(self.n):
                mult = alpha[u] - (1 if u == j else 0)
                if mult:
                    s += mult * self._lb(u)
                if s > self.D:
                    break
            best = min(best, s)
        return best

    def _assign(self, j: int, d: int, layer_terms: dict):
        old_x = self.xs[j]
        old_res = self.res
        old_fno = self.fno[j]
        self._frames.append((j, old_x, old_res, old_fno))
        merged = dict(old_x.terms)
        merged.update(layer_terms)
        new_x = _raw(self.ring, merged)
        new_res = list(old_res)
        if layer_terms:
            for pidx, poly in enumerate(self.system):
                delta = TruncatedSeries.zero(self.ring)
                for alpha, coeff in poly.terms.items():
                    aj = alpha[j]
                    if aj == 0:
                        continue
                    diff = new_x**aj - old_x**aj
                    if diff.is_zero:
                        continue
                    term = coeff * diff
                    for u in range(self.n):
                        if u == j or alpha[u] == 0 or term.is_zero:
                            continue
                        term = term * self.xs[u] ** alpha[u]
                    delta = delta + term
                if not delta.is_zero:
                    new_res[pidx] = new_res[pidx] + delta
        self.xs[j] = new_x
        self.res = new_res
        if layer_terms and old_fno is None:
            self.fno[j] = d
        self.next_layer[j] = d + 1

    def _undo(self):
        j, old_x, old_res, old_fno = self._frames.pop()
        self.xs[j] = old_x
        self.res = old_res
        self.fno[j] = old_fno
        self.next_layer[j] -= 1

    def _advance_auto(self, slot_idx: int) -> tuple:
        frames = 0
        while slot_idx < len(self.slots):
            d, j = self.slots[slot_idx]
            if self._slot_min_degree(j, d) <= self.D:
                break
            self._assign(j, d, {})
            frames += 1
            slot_idx += 1
        return slot_idx, frames

    def _finality(self, slot_idx: int) -> int:
        best = self.D + 1
        for idx in range(slot_idx, len(self.slots)):
            d, j = self.slots[idx]
            best = min(best, self._slot_min_degree(j, d))
            if best == 0:
                break
        return best

    def _first_nonzero(self, bound: int) -> Optional[int]:
        out = None
        for r in self.res:
            o = r.order()
            if o.exact and o.value < bound and (out is None or o.value < out):
                out = o.value
        return out

    def _class_key(self):
        i = self.i
        return tuple(
            tuple(sorted((m, c) for m, c in self.xs[j].terms.items() if sum(m) <= i))
            for j in range(self.n)
        )

    def _layer_values(self, d: int):
        monos = monomials_of_degree(self.ring.num_vars, d)
        p = self.ring.char
        for coeffs in itertools.product(range(p), repeat=len(monos)):
            yield {m: c for m, c in zip(monos, coeffs) if c}

    # -- pass 1: record every class containing an exact solution ------------
    def _dfs_solutions(self, slot_idx: int) -> bool:
        self._tick()
        slot_idx, frames = self._advance_auto(slot_idx)
        try:
            bound = self._finality(slot_idx)
            if self._first_nonzero(bound) is not None:
                return False
            if slot_idx == len(self.slots):
                self.solset.add(self._class_key())
                return True
            d, j = self.slots[slot_idx]
            for layer in self._layer_values(d):
                self._assign(j, d, layer)
                found = self._dfs_solutions(slot_idx + 1)
                self._undo()
                if found and d > self.i:
                    return True
            return False
        finally:
            for _ in range(frames):
                self._undo()

    # -- pass 2: max residual order over classes with no nearby solution ----
    def _dfs_beta(self, slot_idx: int):
        self._tick()
        slot_idx, frames = self._advance_auto(slot_idx)
        try:
            if slot_idx >= self.boundary and self._class_key() in self.solset:
                return
            bound = self._finality(slot_idx)
            e = self._first_nonzero(bound)
            if e is not None:
                if e > self.best and self._dfs_witness(slot_idx):
                    self.best = e
                return
            if slot_idx == len(self.slots):
                # zero residual everywhere: an exact solution, so its class
                # was recorded in pass 1 and pruned above
                return
            d, j = self.slots[slot_idx]
            for layer in self._layer_values(d):
                self._assign(j, d, layer)
                self._dfs_beta(slot_idx + 1)
                self._undo()
        finally:
            for _ in range(frames):
                self._undo()

    def _dfs_witness(self, slot_idx: int) -> bool:
        """Some completion of the class layers escapes every solution class?"""
        self._tick()
        slot_idx, frames = self._advance_auto(slot_idx)
        try:
            if slot_idx >= self.boundary:
                return self._class_key() not in self.solset
            d, j = self.slots[slot_idx]
            for layer in self._layer_values(d):
                self._assign(j, d, layer)
                found = self._dfs_witness(slot_idx + 1)
                self._undo()
                if found:
                    return True
            return False
        finally:
            for _ in range(frames):
                self._undo()

    def run(self) -> BetaResult:
        self._dfs_solutions(0)
        self._dfs_beta(0)
        return BetaResult(
            value=max(self.best, 0),
            level_i=self.i,
            explored_nodes=self.nodes,
            state_space_size=self.state_space_size,
            solvable_classes=len(self.solset),
        )


def beta_lower_bound_bruteforce(system: Sequence[PolyInX], i: int, budget: int = 2_000_000) -> BetaResult:
    """Smallest beta such that residual order >= beta+1 forces an exact solution
    within m^(i+1), computed in the truncated algebra.

    Truncated solvability is weaker than true solvability, so the result is a
    certified lower bound for the untruncated approximation function.
    """
    return _BetaSearch(system, i, budget).run()
