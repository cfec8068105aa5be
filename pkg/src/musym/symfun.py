"""Partitions, symmetric generator families and concrete root functions.

A multiplicity structure is a partition mu = (mu_1 >= ... >= mu_m >= 1)
of n.  The canonical specialization sends the formal roots x_1..x_n
block-monotonically onto the distinct roots r_1..r_m, the i-th block
having size mu_i.  Everything here is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .polys import (
    Polynomial,
    Term,
    rat,
    term_from_exps,
)

BASIS_KINDS = ("e", "p", "c", "m")

BASIS_NAMES = {
    "e": "elementary",
    "p": "power-sum",
    "c": "complete-homogeneous",
    "m": "monomial",
}


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; n is the sum, m the count."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a partition needs at least one part")
        if any(not isinstance(p, int) or p < 1 for p in self.parts):
            raise ValueError("parts must be positive integers")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        try:
            parts = tuple(int(p) for p in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad partition {text!r}; expected e.g. 2,2,1") from exc
        return cls(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(str(p) for p in self.parts)


def _partitions_bounded(total: int, max_part: int, max_len: int):
    """Weakly decreasing positive tuples summing to total."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions_bounded(total - first, first, max_len - 1):
            yield (first,) + rest


def weak_partitions(delta: int, n: int, flavor: str = "capped") -> list[tuple[int, ...]]:
    """Index sets for degree-delta symmetric bases.

    ``capped``: delta parts, each at most n (zero parts allowed).
    ``exact``: exactly n parts summing to delta.
    Ordered ascending-lexicographically, so (1,1,...) comes first.
    """
    if delta < 1 or n < 1:
        raise ValueError("delta and n must be positive")
    if flavor == "capped":
        raw = _partitions_bounded(delta, min(delta, n), delta)
        length = delta
    elif flavor == "exact":
        raw = _partitions_bounded(delta, delta, n)
        length = n
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    padded = [p + (0,) * (length - len(p)) for p in raw]
    return sorted(padded)


def index_flavor(kind: str) -> str:
    """The monomial basis is indexed by exact weak partitions."""
    if kind not in BASIS_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}; expected one of {BASIS_KINDS}")
    return "exact" if kind == "m" else "capped"


# -- generator families in K[x] ----------------------------------------


@lru_cache(maxsize=None)
def generator(kind: str, i: int, n: int) -> Polynomial:
    """The i-th generator of the symmetric algebra in x1..xn."""
    if kind not in ("e", "p", "c"):
        raise ValueError("indexed generators exist for kinds e, p, c only")
    if i == 0:
        return Polynomial.constant(1)
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    if kind == "e":
        coeffs = {}
        for combo in itertools.combinations(range(1, n + 1), i):
            coeffs[term_from_exps({("x", j): 1 for j in combo})] = 1
        return Polynomial(coeffs)
    if kind == "p":
        coeffs = {term_from_exps({("x", j): i}): 1 for j in range(1, n + 1)}
        return Polynomial(coeffs)
    # complete homogeneous: every monomial of degree i, coefficient 1
    coeffs = {}
    for combo in itertools.combinations_with_replacement(range(1, n + 1), i):
        exps: dict = {}
        for j in combo:
            exps[("x", j)] = exps.get(("x", j), 0) + 1
        coeffs[term_from_exps(exps)] = 1
    return Polynomial(coeffs)


@lru_cache(maxsize=None)
def monomial_generator(alpha: tuple[int, ...], n: int) -> Polynomial:
    """Sum of x^beta over the distinct permutations beta of alpha."""
    if len(alpha) != n:
        raise ValueError("monomial index must have exactly n parts")
    coeffs = {}
    for beta in set(itertools.permutations(alpha)):
        exps = {("x", j + 1): e for j, e in enumerate(beta) if e}
        coeffs[term_from_exps(exps)] = 1
    return Polynomial(coeffs)


def basis_element(kind: str, alpha: tuple[int, ...], n: int) -> Polynomial:
    """Basis member of degree sum(alpha): a product for e/p/c, m_alpha for m."""
    if kind == "m":
        return monomial_generator(tuple(alpha), n)
    if kind not in ("e", "p", "c"):
        raise ValueError(f"unknown basis kind {kind!r}")
    out = Polynomial.constant(1)
    for a in alpha:
        if a:
            out = out * generator(kind, a, n)
    return out


# -- specialization ----------------------------------------------------


def _block_map(mu: Partition) -> dict[int, int]:
    mapping = {}
    x_index = 1
    for block, size in enumerate(mu.parts, start=1):
        for _ in range(size):
            mapping[x_index] = block
            x_index += 1
    return mapping


def specialize(p: Polynomial, mu: Partition) -> Polynomial:
    """Apply the canonical specialization x_i -> r_j of type mu.

    A ring homomorphism K[x] -> K[r]; variables outside the x space are
    left untouched.
    """
    blocks = _block_map(mu)
    n = mu.n
    coeffs: dict[Term, object] = {}
    for t, c in p.items():
        exps: dict = {}
        for s, i, e in t:
            if s == "x":
                if i > n:
                    raise ValueError(f"x{i} exceeds n={n} for mu={mu}")
                key = ("r", blocks[i])
            else:
                key = (s, i)
            exps[key] = exps.get(key, 0) + e
        term = term_from_exps(exps)
        c0 = coeffs.get(term, rat(0)) + c
        if c0 == 0:
            coeffs.pop(term, None)
        else:
            coeffs[term] = c0
    return Polynomial(coeffs)


@lru_cache(maxsize=None)
def spec_generator(kind: str, i: int, mu: Partition) -> Polynomial:
    """sigma_mu of the i-th generator, an element of K[r]."""
    return specialize(generator(kind, i, mu.n), mu)


@lru_cache(maxsize=None)
def _root_ring(m: int):
    from ._packed import Ring

    return Ring([("r", i) for i in range(1, m + 1)])


@lru_cache(maxsize=None)
def _spec_product_packed(kind: str, parts: tuple[int, ...], mu: Partition):
    # parts weakly decreasing, so prefixes are shared across index sets;
    # products run in the packed root ring
    from . import _packed

    ring = _root_ring(mu.m)
    if not parts:
        return {0: rat(1)}
    prev = _spec_product_packed(kind, parts[:-1], mu)
    return _packed.mul(prev, ring.densify(spec_generator(kind, parts[-1], mu)))


@lru_cache(maxsize=None)
def _spec_product(kind: str, parts: tuple[int, ...], mu: Partition) -> Polynomial:
    return _root_ring(mu.m).undensify(_spec_product_packed(kind, parts, mu))


def spec_basis_element(kind: str, alpha: tuple[int, ...], mu: Partition) -> Polynomial:
    if kind == "m":
        return specialize(monomial_generator(tuple(alpha), mu.n), mu)
    return _spec_product(kind, tuple(a for a in alpha if a), mu)


def spec_basis(kind: str, delta: int, mu: Partition) -> tuple[list[tuple[int, ...]], list[Polynomial]]:
    """Index set and specialized basis for degree delta, in index order."""
    alphas = weak_partitions(delta, mu.n, index_flavor(kind))
    return alphas, [spec_basis_element(kind, alpha, mu) for alpha in alphas]


def z_term_for(alpha: tuple[int, ...]) -> Term:
    """The z-monomial prod z_{alpha_i} attached to a capped index."""
    exps: dict = {}
    for a in alpha:
        if a:
            exps[("z", a)] = exps.get(("z", a), 0) + 1
    return term_from_exps(exps)


# -- concrete root functions -------------------------------------------


def _difference_product(indices: list[int], space: str) -> Polynomial:
    """prod over i<j of (v_i - v_j) for the given variable indices."""
    out = Polynomial.constant(1)
    for a, b in itertools.combinations(indices, 2):
        out = out * (Polynomial.variable(space, a) - Polynomial.variable(space, b))
    return out


def dplus(mu: Partition) -> Polynomial:
    """prod over i<j of (r_i - r_j)^(mu_i + mu_j), expanded."""
    if mu.m < 2:
        raise ValueError("dplus needs at least two distinct roots")
    out = Polynomial.constant(1)
    for i, j in itertools.combinations(range(1, mu.m + 1), 2):
        diff = Polynomial.variable("r", i) - Polynomial.variable("r", j)
        out = out * diff ** (mu.parts[i - 1] + mu.parts[j - 1])
    return out


def dstar(mu: Partition) -> Polynomial:
    """prod over i<j of (r_i - r_j)^(2 mu_i mu_j), expanded."""
    if mu.m < 2:
        raise ValueError("dstar needs at least two distinct roots")
    out = Polynomial.constant(1)
    for i, j in itertools.combinations(range(1, mu.m + 1), 2):
        diff = Polynomial.variable("r", i) - Polynomial.variable("r", j)
        out = out * diff ** (2 * mu.parts[i - 1] * mu.parts[j - 1])
    return out


def delta_squares(m: int) -> Polynomial:
    """prod over i<j of (r_i - r_j)^2 in r1..rm."""
    if m < 2:
        raise ValueError("need at least two distinct roots")
    return _difference_product(list(range(1, m + 1)), "r") ** 2


@lru_cache(maxsize=None)
def subdiscriminant(n: int, k: int) -> Polynomial:
    """k-th subdiscriminant in x1..xn.

    Sum over all (n-k)-subsets I of the squared difference product
    prod_{i<j in I} (x_i - x_j)^2.  The product runs over unordered
    pairs; k = n-1 gives 1 and k = 0 the standard discriminant.
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"subdiscriminant index {k} out of range 0..{n - 1}")
    if k == n - 1:
        return Polynomial.constant(1)
    out = Polynomial.zero()
    for subset in itertools.combinations(range(1, n + 1), n - k):
        v = _difference_product(list(subset), "x")
        out = out + v * v
    return out


def delta_lift(mu: Partition) -> Polynomial:
    """Symmetric polynomial specializing to prod (r_i - r_j)^2 under mu."""
    if mu.m < 2:
        raise ValueError("need at least two distinct roots")
    scale = 1
    for p in mu.parts:
        scale *= p
    return subdiscriminant(mu.n, mu.n - mu.m) / scale


def dplus_gist_m2(mu: Partition) -> Polynomial:
    """Closed-form gist of dplus for two distinct roots, in z1,z2,z3.

    Even n: ((n-1) z1^2 - 2n z2)^(n/2) / (mu1 mu2)^(n/2).  Odd n picks
    up the cubic factor k1 z1^3 + k2 z1 z2 + k3 z3 with denominators
    d = mu1 mu2 (mu1 - mu2), which must be nonzero.
    """
    if mu.m != 2:
        raise ValueError("closed form requires exactly two distinct roots")
    mu1, mu2 = mu.parts
    n = mu.n
    z1 = Polynomial.variable("z", 1)
    z2 = Polynomial.variable("z", 2)
    z3 = Polynomial.variable("z", 3)
    base = ((n - 1) * z1 ** 2 - 2 * n * z2) / (mu1 * mu2)
    if n % 2 == 0:
        return base ** (n // 2)
    d = mu1 * mu2 * (mu1 - mu2)
    if d == 0:
        raise ValueError("formula degenerate (d=0)")
    k1 = rat(-(n - 1) * (n - 2), d)
    k2 = rat(3 * n * (n - 2), d)
    k3 = rat(-3 * n * n, d)
    cubic = k1 * z1 ** 3 + k2 * z1 * z2 + k3 * z3
    return base ** ((n - 3) // 2) * cubic


def dplus_gist_equal(mu: Partition) -> Polynomial:
    """Symmetric lift of dplus when all multiplicities are equal.

    Returns (S / mu^m)^mu in K[x], where S is the (n-m)-th
    subdiscriminant; its specialization is dplus(mu).
    """
    if mu.m < 2:
        raise ValueError("need at least two distinct roots")
    if len(set(mu.parts)) != 1:
        raise ValueError("closed form requires all multiplicities equal")
    common = mu.parts[0]
    lift = subdiscriminant(mu.n, mu.n - mu.m) / (common ** mu.m)
    return lift ** common


def clear_caches() -> None:
    """Drop generator/product memos (used for cold-start benchmarking)."""
    generator.cache_clear()
    monomial_generator.cache_clear()
    spec_generator.cache_clear()
    _spec_product.cache_clear()
    _spec_product_packed.cache_clear()
    subdiscriminant.cache_clear()


def sym_dimensions(mu: Partition, delta: int, kind: str = "e") -> tuple[int, int]:
    """(dim of degree-delta symmetric space, rank of its specialization)."""
    from . import reduction  # local import; reduction builds on this module

    alphas, basis = spec_basis(kind, delta, mu)
    dim_sym = len(alphas)
    dim_mu = len(reduction.canonize(basis).sequence)
    return dim_sym, dim_mu
