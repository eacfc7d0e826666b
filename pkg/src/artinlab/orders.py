"""Order functions on truncated quotients: nu, its Rees limit, and ICL scans.

For an ideal I of the truncated ring, nu(x) = max{ n : x in I + m^n } is the
m-adic order of the image of x in A/I.  A complementary linear inequality
(ICL) bounds nu(g*h) <= a*(nu(g)+nu(h)) + b; these scans search for the
smallest b at a fixed slope a over a finite candidate set, which certifies
the constants up to the scan degree, never beyond it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import BudgetError, PrecondError
from .series import ExtOrder, RingSpec, TruncatedSeries, monomials_up_to
from .subspace import IdealSpec, MTower, span_ideal


class NuOracle:
    """Per-ideal cache answering nu queries and sound membership checks."""

    def __init__(self, I: IdealSpec):
        self.ideal = I
        self.ring = I.ring
        self.span = span_ideal(I)
        self.tower = MTower(self.span)
        self._sound = None

    def nu(self, x: TruncatedSeries) -> ExtOrder:
        if x.ring != self.ring:
            raise PrecondError("incompatible rings")
        return self.tower.order_of(x)

    def sound_member(self, x: TruncatedSeries) -> bool:
        """Membership certified without truncation interference.

        Products u*g with deg(u) + deg(g) <= D lose no terms, so membership in
        their span implies membership in the untruncated ideal.
        """
        if self._sound is None:
            self._sound = span_ideal(self.ideal, sound=True)
        from .subspace import member

        return member(x, self._sound)


def nu(I: IdealSpec, x: TruncatedSeries) -> ExtOrder:
    return NuOracle(I).nu(x)


@dataclass
class NuBarReport:
    """Certified lower estimate of the Rees order lim nu(x^n)/n."""

    estimate: Fraction
    samples: list  # (n, ExtOrder of x^n)
    nu_x: ExtOrder
    flags: list


def nu_bar_estimate(I: IdealSpec, x: TruncatedSeries, n_max: int) -> NuBarReport:
    """max over 1 <= n <= n_max of nu(x^n)/n.

    Superadditivity of n -> nu(x^n) makes every sample point a certified
    lower bound for the limit, so the max is one as well.
    """
    if x.is_zero:
        raise PrecondError("nu-bar estimate of zero undefined")
    if n_max < 1:
        raise PrecondError("n_max must be >= 1")
    oracle = NuOracle(I)
    D = I.ring.trunc
    samples = []
    flags = []
    best = Fraction(0)
    power = TruncatedSeries.one(I.ring)
    for n in range(1, n_max + 1):
        power = power * x
        v = oracle.nu(power)
        samples.append((n, v))
        if v.exact:
            best = max(best, Fraction(v.value, n))
        else:
            flags.append(f"nu(x^{n}) is only known to be >= {v.value}; sample skipped")
    if n_max * best > D:
        flags.append("truncation-limited: n_max * estimate exceeds the truncation order")
    return NuBarReport(estimate=best, samples=samples, nu_x=samples[0][1], flags=flags)


@dataclass
class IclReport:
    """Scan-certified ICL constants for a fixed slope a."""

    ideal: IdealSpec
    a: Fraction
    b_min: Optional[Fraction]  # None means unbounded-at-truncation
    attaining_pairs: list  # (g, h, nu_g, nu_h, nu_gh)
    violations: list  # (g, h, nu_g, nu_h) with g*h certified inside the ideal
    scan_degree: int
    certified_note: str
    seed: Optional[int] = None
    mode: str = "random"
    pair_count: int = 0
    skipped: list = field(default_factory=list)

    @property
    def unbounded_at_truncation(self) -> bool:
        return self.b_min is None


def scan_candidates(
    ring: RingSpec,
    deg_max: int,
    mode: str = "random",
    count: int = 40,
    seed: int = 0,
    budget: int = 200_000,
) -> list:
    """Deterministic candidate pool: all monomials of degree 1..deg_max, plus
    either every field vector on that support (exhaustive, finite field only)
    or seeded random series over the rationals."""
    monos = [m for m in monomials_up_to(ring.num_vars, deg_max) if sum(m) >= 1]
    base = [TruncatedSeries.monomial(ring, m) for m in monos]
    if mode == "exhaustive":
        if ring.char == 0:
            raise PrecondError("exhaustive sampling requires a finite field")
        supp = list(monomials_up_to(ring.num_vars, deg_max))
        size = ring.char ** len(supp)
        if size > budget:
            raise BudgetError(f"exhaustive candidate space has size {size} > budget {budget}")
        seen = set()
        out = []
        for coeffs in itertools.product(range(ring.char), repeat=len(supp)):
            s = TruncatedSeries(ring, dict(zip(supp, coeffs)))
            key = tuple(s.sorted_terms())
            if key not in seen and not s.is_zero:
                seen.add(key)
                out.append(s)
        return out
    if mode != "random":
        raise PrecondError(f"unknown sampling mode {mode!r}")
    rng = random.Random(seed)
    supp = list(monomials_up_to(ring.num_vars, deg_max))
    out = list(base)
    seen = {tuple(s.sorted_terms()) for s in out}
    attempts = 0
    while len(out) < len(base) + count and attempts < 50 * (count + 1):
        attempts += 1
        terms = {}
        for m in supp:
            if rng.random() < 0.35:
                if ring.char == 0:
                    c = rng.choice([-3, -2, -1, 1, 2, 3])
                else:
                    c = rng.randrange(1, ring.char)
                terms[m] = c
        s = TruncatedSeries(ring, terms)
        key = tuple(s.sorted_terms())
        if s.is_zero or key in seen:
            continue
        seen.add(key)
        out.append(s)
    return out


def _scan_pairs(I, deg_max, mode, count, seed, budget):
    if 2 * deg_max > I.ring.trunc:
        raise PrecondError("need 2*deg_max <= trunc so products keep meaningful orders")
    cands = scan_candidates(I.ring, deg_max, mode, count, seed, budget)
    oracle = NuOracle(I)
    nus = [oracle.nu(g) for g in cands]
    rows = []
    npairs = 0
    for i in range(len(cands)):
        if not nus[i].exact:
            continue
        for j in range(i, len(cands)):
            if not nus[j].exact:
                continue
            npairs += 1
            if npairs > budget:
                raise BudgetError(f"pair budget {budget} exhausted after {npairs} pairs")
            gh = cands[i] * cands[j]
            rows.append((cands[i], cands[j], nus[i], nus[j], oracle.nu(gh), gh))
    return cands, oracle, rows, npairs


def icl_scan(
    I: IdealSpec,
    deg_max: int,
    a: Fraction = Fraction(1),
    mode: str = "random",
    count: int = 40,
    seed: int = 0,
    budget: int = 200_000,
) -> IclReport:
    """Fix the slope a and scan for the smallest additive constant b.

    Pairs whose product is certified inside the ideal while both factors have
    finite order are genuine zero-divisor witnesses in the quotient and are
    reported as violations (no finite b exists).  Pairs whose product merely
    sinks below the truncation horizon are skipped and listed.
    """
    a = Fraction(a)
    if a < 1:
        raise PrecondError("ICL slope a must be >= 1")
    cands, oracle, rows, npairs = _scan_pairs(I, deg_max, mode, count, seed, budget)
    b_best = Fraction(0)
    attaining = []
    violations = []
    skipped = []
    for g, h, ng, nh, ngh, gh in rows:
        if not ngh.exact:
            if oracle.sound_member(gh):
                violations.append((g, h, ng, nh))
            else:
                skipped.append((g, h, ng, nh, ngh))
            continue
        diff = Fraction(ngh.value) - a * (ng.value + nh.value)
        if diff > b_best:
            b_best = diff
            attaining = [(g, h, ng, nh, ngh)]
        elif diff == b_best:
            attaining.append((g, h, ng, nh, ngh))
    note = (
        f"constants certified for the scanned pairs only (factors of degree <= {deg_max}, "
        f"truncation {I.ring.trunc}); no claim beyond the scan"
    )
    if violations:
        return IclReport(I, a, None, [], violations, deg_max, note, seed, mode, npairs, skipped)
    # simplest witnesses first: fewest terms, then lowest degree, then text
    attaining.sort(
        key=lambda t: (
            len(t[0].terms) + len(t[1].terms),
            t[0].max_degree() + t[1].max_degree(),
            t[0].to_str(),
            t[1].to_str(),
        )
    )
    return IclReport(I, a, b_best, attaining[:8], [], deg_max, note, seed, mode, npairs, skipped)


def icl_envelope(I: IdealSpec, deg_max: int, **kw) -> list:
    """Lower envelope of (a, b_min) over the standard slope grid."""
    return [icl_scan(I, deg_max, a=a, **kw) for a in (Fraction(1), Fraction(3, 2), Fraction(2))]


@dataclass
class ValuationReport:
    is_valuation: bool
    counterexample: Optional[tuple]  # (g, h, nu_g, nu_h, nu_gh or None)
    scan_degree: int
    pair_count: int
    seed: Optional[int]


def valuation_check(
    I: IdealSpec,
    deg_max: int,
    mode: str = "random",
    count: int = 40,
    seed: int = 0,
    budget: int = 200_000,
) -> ValuationReport:
    """True iff nu(g*h) = nu(g) + nu(h) on every scanned pair with decidable orders."""
    cands, oracle, rows, npairs = _scan_pairs(I, deg_max, mode, count, seed, budget)
    D = I.ring.trunc
    for g, h, ng, nh, ngh, gh in rows:
        total = ng.value + nh.value
        if ngh.exact:
            if ngh.value != total:
                return ValuationReport(False, (g, h, ng, nh, ngh), deg_max, npairs, seed)
        else:
            # product sank below the horizon although the sum is visible: strict gap
            if total <= D:
                return ValuationReport(False, (g, h, ng, nh, ngh), deg_max, npairs, seed)
    return ValuationReport(True, None, deg_max, npairs, seed)
