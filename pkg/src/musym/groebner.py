"""Buchberger engine over Q and the elimination route to gists.

The mu-ideal <z_1 - g_1, ..., z_n - g_n> (g_i the specialized
generators) is processed with a product order that ranks any term
containing an r variable above every r-free term.  A reduced Groebner
basis then decides everything at once: its r-free members generate the
ideal of relations among the g_i, and the normal form of F(r) is r-free
exactly when F is mu-symmetric, in which case the normal form is a gist
of minimal weighted degree.

The generators are homogeneous for the weighting that gives z_i weight
i and every r variable weight 1, and pairs are selected by the weighted
degree of their lcm.  New pairs never fall below the degree currently
being processed, so the computation is graded: once every pair of
degree <= d has been treated, the basis is complete for all inputs of
weighted degree <= d.  Normal forms of such inputs are therefore taken
against a basis extended exactly that far; computing relations of
unbounded degree runs the engine to exhaustion.

Internally monomials are exponent vectors packed into a single integer,
one 16-bit field per variable, most significant field first.  Integer
comparison then realizes the term order directly, multiplication is
addition, and divisibility is a borrow check against the guard bits.
That encoding is valid precisely for the lexicographic(-product) orders
this module accepts; exponents must stay below 2^15, far beyond the
degrees that arise here.
"""

from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass

from . import symfun
from ._packed import Ring as _Ring, ring_for as _ring_for
from .gistresult import GistResult
from .polys import ORDER_RZ, Polynomial, TermOrder, rat

try:
    from gmpy2 import gcd as _gcd, lcm as _lcm
except ImportError:  # pragma: no cover
    _gcd, _lcm = math.gcd, math.lcm

def _make_primitive(d: dict, lt: int) -> dict:
    """Scale to integer coefficients with content 1 and positive lead."""
    den = 1
    for c in d.values():
        den = _lcm(den, c.denominator)
    num = 0
    for c in d.values():
        num = _gcd(num, c.numerator * (den // c.denominator))
    scale = rat(den, num) if d[lt] > 0 else rat(-den, num)
    return {m: c * scale for m, c in d.items()}


class _Basis:
    """Parallel arrays: leading monomial, leading coefficient, polynomial."""

    __slots__ = ("lts", "lcs", "polys")

    def __init__(self):
        self.lts: list[int] = []
        self.lcs: list = []
        self.polys: list[dict] = []

    def add(self, d: dict, lt: int) -> int:
        self.lts.append(lt)
        self.lcs.append(d[lt])
        self.polys.append(d)
        return len(self.lts) - 1

    def __len__(self):
        return len(self.lts)


def _find_reducer(t: int, basis: _Basis, guard: int, skip: int = -1) -> int:
    for idx, lt in enumerate(basis.lts):
        if idx != skip and lt <= t and not (t - lt) & guard:
            return idx
    return -1


def _subtract_aligned(work: dict, t: int, c, idx: int, basis: _Basis, pushies=None) -> None:
    """work -= (c / lc) * (t / lt) * basis[idx]; cancels term t exactly."""
    g = basis.polys[idx]
    glt = basis.lts[idx]
    q = c / basis.lcs[idx]
    shift = t - glt
    for m, gc in g.items():
        if m == glt:
            continue
        mm = m + shift
        s = work.get(mm, 0) - q * gc
        if s == 0:
            work.pop(mm, None)
        else:
            if pushies is not None and mm not in work:
                heapq.heappush(pushies, -mm)
            work[mm] = s


def _top_reduce(f: dict, basis: _Basis, guard: int) -> tuple[dict, int]:
    """Reduce until zero or the leading monomial has no reducer.

    Returns (poly, lt); tails stay as they are.
    """
    heap = [-m for m in f]
    heapq.heapify(heap)
    while heap:
        t = -heap[0]
        c = f.get(t)
        if c is None or c == 0:
            heapq.heappop(heap)
            continue
        idx = _find_reducer(t, basis, guard)
        if idx < 0:
            return f, t
        heapq.heappop(heap)
        del f[t]
        _subtract_aligned(f, t, c, idx, basis, pushies=heap)
    return {}, -1


def _full_reduce(f: dict, basis: _Basis, guard: int, skip: int = -1) -> dict:
    """Full normal form: no remaining term divisible by a basis lead."""
    work = dict(f)
    out: dict = {}
    heap = [-m for m in work]
    heapq.heapify(heap)
    while heap:
        t = -heapq.heappop(heap)
        c = work.pop(t, None)
        if c is None or c == 0:
            continue
        idx = _find_reducer(t, basis, guard, skip)
        if idx < 0:
            out[t] = c
            continue
        _subtract_aligned(work, t, c, idx, basis, pushies=heap)
    return out


def _spoly(i: int, j: int, lcm: int, basis: _Basis) -> dict:
    out: dict = {}
    for idx, sign in ((i, 1), (j, -1)):
        shift = lcm - basis.lts[idx]
        q = sign / basis.lcs[idx]
        for m, c in basis.polys[idx].items():
            mm = m + shift
            s = out.get(mm, 0) + q * c
            if s == 0:
                out.pop(mm, None)
            else:
                out[mm] = s
    return out


class _GradedEngine:
    """Buchberger state that can be advanced degree by degree.

    Pairs are selected by ascending weighted degree of their lcm with a
    deterministic index tie-break.  Since a new element born at degree d
    only creates pairs of degree >= d, stopping once every pending pair
    exceeds a bound leaves a basis that is complete for all inputs up to
    that degree.
    """

    def __init__(self, gens: list[dict], ring: _Ring):
        self.ring = ring
        self.guard = ring.guard_mask
        self.basis = _Basis()
        self.pairs: dict[tuple[int, int], int] = {}
        self.heap: list = []
        self.exhausted = False
        self.reached = 0             # all pairs of wdeg <= reached are done
        self.lock = threading.Lock()  # cached engines may be shared
        for d in gens:
            if d:
                lt = max(d)
                self.basis.add(_make_primitive(d, lt), lt)
                self._update(len(self.basis) - 1)

    def _push(self, i: int, j: int, lcm: int) -> None:
        self.pairs[(i, j)] = lcm
        heapq.heappush(self.heap, (self.ring.wdeg(lcm), i, j))

    def _update(self, h: int) -> None:
        """Install pairs with element h, pruned the standard way: coprime
        leads are dropped, a pair whose lcm another new pair's lcm
        properly divides is dropped, and old pairs whose lcm the new
        lead divides without matching either side are discarded."""
        ring, guard, basis = self.ring, self.guard, self.basis
        lt_h = basis.lts[h]
        cand = [(ring.lcm(basis.lts[g], lt_h), g) for g in range(h)]
        cand.sort(key=lambda kv: (ring.wdeg(kv[0]), kv[1]))
        kept: list[tuple[int, int]] = []
        kept_lcms: list[int] = []
        for lcm_g, g in cand:
            dominated = any(
                l <= lcm_g and l != lcm_g and not (lcm_g - l) & guard for l in kept_lcms
            )
            if dominated:
                continue
            kept_lcms.append(lcm_g)
            if lcm_g != basis.lts[g] + lt_h:     # coprime pairs only eliminate
                kept.append((g, lcm_g))
        for (i, j), lcm_ij in list(self.pairs.items()):
            if lt_h <= lcm_ij and not (lcm_ij - lt_h) & guard:
                if (
                    ring.lcm(basis.lts[i], lt_h) != lcm_ij
                    and ring.lcm(basis.lts[j], lt_h) != lcm_ij
                ):
                    del self.pairs[(i, j)]
        for g, lcm_g in kept:
            self._push(g, h, lcm_g)

    def extend(self, bound: int | None = None) -> None:
        """Treat every pair of weighted degree <= bound (all, if None)."""
        with self.lock:
            self._extend(bound)

    def _extend(self, bound: int | None) -> None:
        if self.exhausted:
            return
        basis, guard = self.basis, self.guard
        while self.pairs:
            wd, i, j = self.heap[0]
            if (i, j) not in self.pairs:
                heapq.heappop(self.heap)
                continue
            if bound is not None and wd > bound:
                self.reached = max(self.reached, bound)
                return
            heapq.heappop(self.heap)
            lcm = self.pairs.pop((i, j))
            self.reached = max(self.reached, wd)
            r, lt = _top_reduce(_spoly(i, j, lcm, basis), basis, guard)
            if not r:
                continue
            basis.add(_make_primitive(r, lt), lt)
            self._update(len(basis) - 1)
        self.exhausted = True
        if bound is not None:
            self.reached = max(self.reached, bound)

    def reduced_snapshot(self, bound: int | None = None) -> list[dict]:
        """Reduced basis of the elements at weighted degree <= bound."""
        with self.lock:
            return self._snapshot(bound)

    def _snapshot(self, bound: int | None) -> list[dict]:
        ring, guard = self.ring, self.guard
        if bound is None:
            chosen = list(range(len(self.basis)))
        else:
            chosen = [
                idx for idx in range(len(self.basis))
                if ring.wdeg(self.basis.lts[idx]) <= bound
            ]
        minimal: list[int] = []
        for idx in sorted(chosen, key=lambda k: self.basis.lts[k]):
            lt = self.basis.lts[idx]
            if not any(
                self.basis.lts[k] <= lt and not (lt - self.basis.lts[k]) & guard
                for k in minimal
            ):
                minimal.append(idx)
        reduced = _Basis()
        for idx in minimal:
            reduced.add(self.basis.polys[idx], self.basis.lts[idx])
        out = []
        for pos in range(len(reduced)):
            d = _full_reduce(reduced.polys[pos], reduced, guard, skip=pos)
            lt = max(d)
            lc = d[lt]
            monic = {m: c / lc for m, c in d.items()}
            out.append(monic)
            reduced.polys[pos] = monic
            reduced.lcs[pos] = rat(1)
        out.sort(key=max)
        return out


# -- public API ---------------------------------------------------------


def buchberger(gens: list[Polynomial], order: TermOrder = ORDER_RZ) -> list[Polynomial]:
    """Reduced Groebner basis: monic, interreduced, sorted by leading term."""
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        raise ValueError("need at least one nonzero generator")
    ring = _ring_for(set().union(*(g.variables() for g in nonzero)), order)
    engine = _GradedEngine([ring.densify(g) for g in nonzero], ring)
    engine.extend(None)
    return [ring.undensify(d) for d in engine.reduced_snapshot(None)]


def normal_form(f: Polynomial, basis: list[Polynomial], order: TermOrder = ORDER_RZ) -> Polynomial:
    """Remainder of f modulo the basis: unique for a reduced basis."""
    if f.is_zero:
        return f
    all_vars = set(f.variables()).union(*(g.variables() for g in basis))
    ring = _ring_for(all_vars, order)
    dense = _Basis()
    for g in basis:
        d = ring.densify(g)
        dense.add(d, max(d))
    return ring.undensify(_full_reduce(ring.densify(f), dense, ring.guard_mask))


def spolynomial(f: Polynomial, g: Polynomial, order: TermOrder = ORDER_RZ) -> Polynomial:
    ring = _ring_for(set(f.variables()) | set(g.variables()), order)
    basis = _Basis()
    for p in (f, g):
        d = ring.densify(p)
        basis.add(d, max(d))
    lcm = ring.lcm(basis.lts[0], basis.lts[1])
    return ring.undensify(_spoly(0, 1, lcm, basis))


def is_groebner(basis: list[Polynomial], order: TermOrder = ORDER_RZ) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = spolynomial(basis[i], basis[j], order)
            if not s.is_zero and not normal_form(s, basis, order).is_zero:
                return False
    return True


def mu_ideal_basis(mu: symfun.Partition, kind: str = "e") -> list[Polynomial]:
    """Generators z_i - g_i tying each z symbol to its specialization."""
    if kind == "m":
        raise ValueError(
            "the monomial basis has no n-generator presentation, so the "
            "elimination route does not apply; use the cr or ls algorithm"
        )
    return [
        Polynomial.variable("z", i) - symfun.spec_generator(kind, i, mu)
        for i in range(1, mu.n + 1)
    ]


@dataclass(frozen=True)
class EliminationSystem:
    """Reduced Groebner data for one (mu, kind), complete up to ``degree``
    (complete outright when ``degree`` is None)."""

    mu: symfun.Partition
    kind: str
    degree: int | None
    basis: list[Polynomial]
    zonly: list[Polynomial]
    ring: _Ring
    dense: _Basis


class _ElimCache:
    """One graded engine per (mu, kind), advanced on demand."""

    def __init__(self):
        self.lock = threading.Lock()
        self.engines: dict = {}
        self.snapshots: dict = {}

    def engine(self, mu: symfun.Partition, kind: str) -> tuple[_GradedEngine, _Ring]:
        key = (mu.parts, kind)
        with self.lock:
            hit = self.engines.get(key)
        if hit is not None:
            return hit
        gens = mu_ideal_basis(mu, kind)
        vars_ = [("r", i) for i in range(mu.m, 0, -1)] + [("z", i) for i in range(1, mu.n + 1)]
        weights = tuple([1] * mu.m + list(range(1, mu.n + 1)))
        ring = _Ring(vars_, weights)
        engine = _GradedEngine([ring.densify(g) for g in gens], ring)
        with self.lock:
            return self.engines.setdefault(key, (engine, ring))

    def clear(self):
        with self.lock:
            self.engines.clear()
            self.snapshots.clear()


_cache = _ElimCache()


def clear_memo() -> None:
    _cache.clear()


def elimination_system(
    mu: symfun.Partition,
    kind: str = "e",
    degree: int | None = None,
    use_cache: bool = True,
) -> EliminationSystem:
    """Reduced elimination basis, complete for inputs up to ``degree``.

    ``degree=None`` runs the engine to exhaustion and yields the full
    reduced Groebner basis.
    """
    if use_cache:
        snap_key = (mu.parts, kind, degree)
        hit = _cache.snapshots.get(snap_key)
        if hit is not None:
            return hit
        engine, ring = _cache.engine(mu, kind)
    else:
        gens = mu_ideal_basis(mu, kind)
        vars_ = [("r", i) for i in range(mu.m, 0, -1)] + [("z", i) for i in range(1, mu.n + 1)]
        weights = tuple([1] * mu.m + list(range(1, mu.n + 1)))
        ring = _Ring(vars_, weights)
        engine = _GradedEngine([ring.densify(g) for g in gens], ring)
    engine.extend(degree)
    dense_out = engine.reduced_snapshot(degree)
    basis = [ring.undensify(d) for d in dense_out]
    zonly = [p for p in basis if "r" not in p.spaces()]
    dense = _Basis()
    for d in dense_out:
        dense.add(d, max(d))
    system = EliminationSystem(mu, kind, degree, basis, zonly, ring, dense)
    if use_cache:
        with _cache.lock:
            return _cache.snapshots.setdefault((mu.parts, kind, degree), system)
    return system


def mu_ideal_generators(mu: symfun.Partition, kind: str = "e") -> list[Polynomial]:
    """Groebner basis of the ideal of relations among the specialized
    generators: the r-free members of the elimination basis, monic and
    sorted by leading term."""
    return elimination_system(mu, kind).zonly


def ggist(F: Polynomial, mu: symfun.Partition, kind: str = "e", use_cache: bool = True) -> GistResult:
    """Check mu-symmetry via the normal form against the elimination basis.

    An r-free normal form is a gist of minimal weighted degree; any
    residual r variable certifies that no gist exists.  The basis only
    needs to be complete up to the degree of F.
    """
    if F.spaces() - {"r"}:
        raise ValueError("ggist expects a polynomial in the r variables")
    if F.is_zero:
        return GistResult.from_poly(mu, kind, Polynomial.zero())
    system = elimination_system(mu, kind, degree=F.total_degree(), use_cache=use_cache)
    r = _full_reduce(system.ring.densify(F), system.dense, system.ring.guard_mask)
    result = system.ring.undensify(r)
    if "r" in result.spaces():
        return GistResult.not_symmetric(mu, kind)
    return GistResult.from_poly(mu, kind, result)
