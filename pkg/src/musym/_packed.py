"""Packed-monomial workspace shared by the reduction and Groebner engines.

Monomials become integers with one 16-bit field per variable, most
significant field first, so that integer comparison realizes a
lexicographic(-product) term order, multiplication is addition, and
divisibility is a borrow check against the guard bits.  Exponents must
stay below 2^15.
"""

from __future__ import annotations

from .polys import Lex, Polynomial, ProductOrder, TermOrder, Var, term_from_exps

FIELD = 16
GUARD_BIT = 1 << (FIELD - 1)
FIELD_MASK = (1 << FIELD) - 1
MAX_EXP = GUARD_BIT - 1


class Ring:
    """Fixed priority-ordered variable list with pack/unpack helpers."""

    def __init__(self, vars_: list[Var], weights: tuple[int, ...] | None = None):
        self.vars = vars_
        self.width = len(vars_)
        self.pos = {v: i for i, v in enumerate(vars_)}
        # field 0 is the most significant: highest priority variable
        self.shifts = [(self.width - 1 - i) * FIELD for i in range(self.width)]
        self.guard_mask = 0
        for s in self.shifts:
            self.guard_mask |= GUARD_BIT << s
        self.weights = weights if weights is not None else (1,) * self.width

    def pack(self, exps: list[int]) -> int:
        mon = 0
        for e, s in zip(exps, self.shifts):
            if e > MAX_EXP:
                raise OverflowError("exponent too large for packed monomials")
            mon |= e << s
        return mon

    def unpack(self, mon: int) -> list[int]:
        return [(mon >> s) & FIELD_MASK for s in self.shifts]

    def lcm(self, a: int, b: int) -> int:
        out = 0
        for s in self.shifts:
            out |= max((a >> s) & FIELD_MASK, (b >> s) & FIELD_MASK) << s
        return out

    def wdeg(self, mon: int) -> int:
        return sum(((mon >> s) & FIELD_MASK) * w for s, w in zip(self.shifts, self.weights))

    def densify(self, p: Polynomial) -> dict:
        out = {}
        pos = self.pos
        width = self.width
        for t, c in p.items():
            exps = [0] * width
            for sp, i, e in t:
                exps[pos[(sp, i)]] = e
            out[self.pack(exps)] = c
        return out

    def undensify(self, d: dict) -> Polynomial:
        coeffs = {}
        for mon, c in d.items():
            exps = self.unpack(mon)
            coeffs[term_from_exps({v: e for v, e in zip(self.vars, exps) if e})] = c
        return Polynomial(coeffs)


def mul(d1: dict, d2: dict) -> dict:
    """Product of packed polynomials (monomial product = integer add)."""
    out: dict = {}
    for m1, a in d1.items():
        for m2, b in d2.items():
            m = m1 + m2
            s = out.get(m, 0) + a * b
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
    return out


def check_lex_like(order: TermOrder) -> None:
    if isinstance(order, Lex):
        return
    if isinstance(order, ProductOrder):
        check_lex_like(order.first)
        check_lex_like(order.second)
        return
    raise TypeError("packed kernel supports lexicographic(-product) orders only")


def ring_for(variables: set[Var], order: TermOrder, weights=None) -> Ring:
    check_lex_like(order)
    unit = {v: order.key(term_from_exps({v: 1})) for v in variables}
    vars_ = sorted(variables, key=unit.get, reverse=True)
    return Ring(vars_, weights)
