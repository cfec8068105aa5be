"""Exact rational linear algebra and the linear-system gist check.

A homogeneous F in K[r] is mu-symmetric exactly when it lies in the
span of the specialized basis elements of its degree.  Writing a
candidate gist with indeterminate coefficients and matching
coefficients monomial by monomial produces a linear system A k = b;
solvability decides symmetry and any solution assembles a gist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import symfun
from .gistresult import GistResult
from .polys import Polynomial, Term, is_homogeneous, rat, term_from_exps


def rref(matrix: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    m = [[rat(v) for v in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = rat(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def matrix_rank(matrix: list[list]) -> int:
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def solve_particular(A: list[list], b: list) -> list | None:
    """A solution of A x = b with free variables pinned to 0, or None."""
    if not A:
        return []
    cols = len(A[0])
    aug = [row + [bv] for row, bv in zip(A, b)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None  # pivot in the constants column: inconsistent
    x = [rat(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def nullspace(A: list[list]) -> list[list]:
    """Basis of the kernel, one vector per free column."""
    if not A:
        return []
    cols = len(A[0])
    red, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [rat(0)] * cols
        v[fc] = rat(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class LinearSystem:
    """Coefficient matching for one degree: column j holds the
    r-coefficients of the j-th specialized basis element, b those of F."""

    A: list[list]
    b: list
    column_index: list[tuple[int, ...]]
    row_index: list[Term]


def degree_terms(m: int, delta: int) -> list[Term]:
    """All degree-delta terms in r1..rm, r1-dominant first.

    The ordering puts r1^delta first and r_m^delta last, matching how
    coefficient vectors are conventionally written out.
    """
    out = []
    for exps in itertools.product(range(delta + 1), repeat=m):
        if sum(exps) == delta:
            out.append(exps)
    out.sort(reverse=True)
    return [term_from_exps({("r", i + 1): e for i, e in enumerate(exps) if e}) for exps in out]


def build_system(F: Polynomial, mu: symfun.Partition, kind: str = "e", delta: int | None = None) -> LinearSystem:
    """Set up A k = b for a homogeneous F.

    The degree is taken from F; the zero polynomial carries none, so it
    needs an explicit ``delta`` (and then b is the zero vector).
    """
    if not is_homogeneous(F):
        raise ValueError("build_system expects a homogeneous polynomial")
    if F.spaces() - {"r"}:
        raise ValueError("build_system expects a polynomial in the r variables")
    if delta is None:
        if F.is_zero:
            raise ValueError("build_system needs an explicit delta when F=0")
        delta = F.total_degree()
    elif not F.is_zero and F.total_degree() != delta:
        raise ValueError("delta does not match the degree of F")
    alphas, basis = symfun.spec_basis(kind, delta, mu)
    rows = degree_terms(mu.m, delta)
    A = [[g.coeff(t) for g in basis] for t in rows]
    b = [F.coeff(t) for t in rows]
    return LinearSystem(A, b, alphas, rows)


def lsgist(F: Polynomial, mu: symfun.Partition, kind: str = "e") -> GistResult:
    """Check mu-symmetry of a homogeneous F by solving A k = b.

    Returns the gist built from the particular solution with free
    coefficients pinned to zero, or a negative verdict when the system
    is inconsistent.
    """
    if F.is_constant:
        return GistResult.constant(mu, kind, F)
    system = build_system(F, mu, kind)
    k = solve_particular(system.A, system.b)
    if k is None:
        return GistResult.not_symmetric(mu, kind)
    return GistResult.from_coeffs(mu, kind, system.column_index, k)
