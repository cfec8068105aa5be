"""Sparse multivariate polynomials over the rationals.

Variables live in named spaces: ``x`` (formal roots), ``r`` (distinct
roots), ``z`` (generator symbols), ``k`` (indeterminate coefficients)
and ``y`` (generic gist symbols).  A variable is a pair ``(space,
index)`` with a 1-based index.  A term is a sorted tuple of ``(space,
index, exponent)`` entries with all exponents positive; the empty tuple
is the constant term 1.  A polynomial is an immutable mapping from
terms to nonzero rational coefficients.

All arithmetic is exact.  Coefficients are ``gmpy2.mpq`` when gmpy2 is
available and ``fractions.Fraction`` otherwise; both store reduced
fractions with positive denominator.
"""

from __future__ import annotations

import ast
from typing import Callable, Iterable

try:
    from gmpy2 import mpq as _mpq

    def rat(num, den=1):
        return _mpq(num, den)

    Rational = type(_mpq(0))
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _Fraction

    def rat(num, den=1):
        return _Fraction(num, den)

    Rational = _Fraction

SPACES = ("x", "r", "z", "k", "y")

Var = tuple[str, int]
Term = tuple[tuple[str, int, int], ...]


def rat_from_str(text: str):
    """Parse ``"num"`` or ``"num/den"`` into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return rat(int(num), int(den))
    return rat(int(text))


def term_from_exps(exps: dict[Var, int] | Iterable[tuple[Var, int]]) -> Term:
    items = exps.items() if isinstance(exps, dict) else exps
    out = []
    for (space, index), exp in items:
        if space not in SPACES:
            raise ValueError(f"unknown variable space {space!r}")
        if index < 1:
            raise ValueError("variable indices are 1-based")
        if exp < 0:
            raise ValueError("negative exponent")
        if exp:
            out.append((space, index, exp))
    return tuple(sorted(out))


def term_mul(t1: Term, t2: Term) -> Term:
    if not t1:
        return t2
    if not t2:
        return t1
    exps: dict[Var, int] = {}
    for s, i, e in t1:
        exps[(s, i)] = e
    for s, i, e in t2:
        key = (s, i)
        exps[key] = exps.get(key, 0) + e
    return tuple(sorted((s, i, e) for (s, i), e in exps.items()))


def term_degree(t: Term) -> int:
    return sum(e for _, _, e in t)


def term_to_str(t: Term) -> str:
    if not t:
        return "1"
    return "*".join(f"{s}{i}" + (f"^{e}" if e > 1 else "") for s, i, e in t)


def _display_key(t: Term):
    # high total degree first, then r1^2 ahead of r1*r2 ahead of r2^2
    return (-term_degree(t), tuple((s, i, -e) for s, i, e in t))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict[Term, object] | None = None):
        clean: dict[Term, object] = {}
        if coeffs:
            for term, c in coeffs.items():
                q = c if isinstance(c, Rational) else rat(c)
                if q != 0:
                    clean[term] = q
        object.__setattr__(self, "_c", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial({(): c})

    @staticmethod
    def variable(space: str, index: int) -> "Polynomial":
        return Polynomial({term_from_exps({(space, index): 1}): 1})

    @staticmethod
    def monomial(term: Term, coeff=1) -> "Polynomial":
        return Polynomial({term: coeff})

    # -- inspection --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and () in self._c)

    def constant_value(self):
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self._c.get((), rat(0))

    def coeff(self, term: Term):
        return self._c.get(term, rat(0))

    def terms(self) -> list[tuple[Term, object]]:
        """Support with coefficients, in the canonical display order."""
        return sorted(self._c.items(), key=lambda kv: _display_key(kv[0]))

    def items(self):
        """Support with coefficients, unordered (cheap iteration)."""
        return self._c.items()

    def support(self) -> set[Term]:
        return set(self._c)

    def variables(self) -> set[Var]:
        return {(s, i) for t in self._c for s, i, _ in t}

    def spaces(self) -> set[str]:
        return {s for t in self._c for s, _, _ in t}

    def __len__(self) -> int:
        return len(self._c)

    def total_degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(term_degree(t) for t in self._c)

    # -- ring operations ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Rational)):
            return self._c == Polynomial.constant(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __pos__(self) -> "Polynomial":
        return self

    def __neg__(self) -> "Polynomial":
        return Polynomial({t: -c for t, c in self._c.items()})

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for t, c in other._c.items():
            s = out.get(t, 0) + c
            if s == 0:
                out.pop(t, None)
            else:
                out[t] = s
        return _raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._c or not other._c:
            return Polynomial()
        if other.is_constant:
            k = other.constant_value()
            return Polynomial({t: c * k for t, c in self._c.items()})
        if self.is_constant:
            k = self.constant_value()
            return Polynomial({t: c * k for t, c in other._c.items()})
        if len(self._c) * len(other._c) >= 64:
            packed = _mul_packed(self._c, other._c)
            if packed is not None:
                return _raw(packed)
        out: dict[Term, object] = {}
        for t1, c1 in self._c.items():
            for t2, c2 in other._c.items():
                t = term_mul(t1, t2)
                s = out.get(t, 0) + c1 * c2
                if s == 0:
                    out.pop(t, None)
                else:
                    out[t] = s
        return _raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not other.is_constant:
                raise ValueError("can only divide by a constant")
            other = other.constant_value()
        if other == 0:
            raise ZeroDivisionError("division by zero")
        inv = rat(1) / rat(other) if not isinstance(other, Rational) else rat(1) / other
        return Polynomial({t: c * inv for t, c in self._c.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- substitution and evaluation ---------------------------------

    def evaluate(self, values: dict[Var, object]):
        """Evaluate at rational values; every variable must be assigned."""
        total = rat(0)
        for t, c in self._c.items():
            prod = c
            for s, i, e in t:
                if (s, i) not in values:
                    raise ValueError(f"no value for {s}{i}")
                prod = prod * rat(values[(s, i)]) ** e
            total += prod
        return total

    def substitute(self, mapping: dict[Var, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials; unmapped variables persist."""
        cache: dict[tuple[Var, int], Polynomial] = {}
        result = Polynomial()
        for t, c in self._c.items():
            prod = Polynomial.constant(c)
            for s, i, e in t:
                v = (s, i)
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    prod = prod * cache[key]
                else:
                    prod = prod * Polynomial.monomial(term_from_exps({v: e}))
            result = result + prod
        return result

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)


def _raw(coeffs: dict[Term, object]) -> Polynomial:
    p = Polynomial()
    object.__setattr__(p, "_c", coeffs)
    return p


def _coerce(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Rational)):
        return Polynomial.constant(value)
    return NotImplemented


_PACK_FIELD = 24
_PACK_MASK = (1 << _PACK_FIELD) - 1


def _mul_packed(c1: dict, c2: dict) -> dict | None:
    """Multiply by packing exponent vectors into integers.

    Term products become integer additions, which beats merging sorted
    exponent tuples once the operands are large.  Falls back (returns
    None) when exponents could overflow a field.
    """
    vars_ = sorted({(s, i) for t in c1 for s, i, _ in t} | {(s, i) for t in c2 for s, i, _ in t})
    pos = {v: k for k, v in enumerate(vars_)}
    width = len(vars_)
    shifts = [(width - 1 - k) * _PACK_FIELD for k in range(width)]

    def pack(coeffs):
        top = 0
        packed = {}
        for t, c in coeffs.items():
            mon = 0
            for s, i, e in t:
                top = max(top, e)
                mon |= e << shifts[pos[(s, i)]]
            packed[mon] = c
        return packed, top

    p1, top1 = pack(c1)
    p2, top2 = pack(c2)
    if top1 + top2 > _PACK_MASK:
        return None
    out: dict[int, object] = {}
    for m1, a in p1.items():
        for m2, b in p2.items():
            m = m1 + m2
            s = out.get(m, 0) + a * b
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
    result: dict[Term, object] = {}
    for mon, c in out.items():
        result[tuple(
            (v[0], v[1], (mon >> sh) & _PACK_MASK)
            for v, sh in zip(vars_, shifts)
            if (mon >> sh) & _PACK_MASK
        )] = c
    return result


# -- term orders ------------------------------------------------------


class TermOrder:
    """Total multiplicative order on terms, realized as a sort key."""

    def key(self, term: Term):
        raise NotImplementedError

    def max_term(self, terms: Iterable[Term]) -> Term:
        return max(terms, key=self.key)

    def compare(self, t1: Term, t2: Term) -> int:
        k1, k2 = self.key(t1), self.key(t2)
        return (k1 > k2) - (k1 < k2)


class Lex(TermOrder):
    """Lexicographic order within one variable space.

    With ``ascending=True`` the highest index is most significant
    (x1 < x2 < ... < xn); with ``ascending=False`` index 1 is most
    significant (z1 > z2 > ... > zn).  Entries from other spaces are
    ignored, so combine spaces with ProductOrder.
    """

    def __init__(self, space: str, ascending: bool = True):
        if space not in SPACES:
            raise ValueError(f"unknown variable space {space!r}")
        self.space = space
        self.ascending = ascending
        self._memo: dict = {}

    def key(self, term: Term):
        k = self._memo.get(term)
        if k is None:
            if self.ascending:
                k = tuple((i, e) for s, i, e in reversed(term) if s == self.space)
            else:
                k = tuple((-i, e) for s, i, e in term if s == self.space)
            self._memo[term] = k
        return k

    def __repr__(self):
        direction = "asc" if self.ascending else "desc"
        return f"Lex({self.space!r}, {direction})"


class ProductOrder(TermOrder):
    """Compare under ``first``; break ties under ``second``."""

    def __init__(self, first: TermOrder, second: TermOrder):
        self.first = first
        self.second = second
        self._memo: dict = {}

    def key(self, term: Term):
        k = self._memo.get(term)
        if k is None:
            k = (self.first.key(term), self.second.key(term))
            self._memo[term] = k
        return k

    def __repr__(self):
        return f"ProductOrder({self.first!r}, {self.second!r})"


ORDER_X = Lex("x")
ORDER_R = Lex("r")
# Elimination order: any term containing an r variable dominates every
# r-free term, so r-free normal forms certify elimination.  The z side
# makes z1 most significant, matching the reduced bases this library
# is tested against.
ORDER_Z_ELIM = Lex("z", ascending=False)
ORDER_RZ = ProductOrder(ORDER_R, ORDER_Z_ELIM)
ORDER_Y_ELIM = Lex("y", ascending=False)
ORDER_RY = ProductOrder(ORDER_R, ORDER_Y_ELIM)


def leading(p: Polynomial, order: TermOrder) -> tuple[Term, object]:
    """Leading (term, coefficient) of a nonzero polynomial."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no leading term")
    t = order.max_term(p.support())
    return t, p.coeff(t)


# -- weights and homogeneity ------------------------------------------

WeightFn = Callable[[str, int], int]


def unit_weight(space: str, index: int) -> int:
    return 1


def gist_weight(space: str, index: int) -> int:
    """z_i weighs i; everything else weighs 1.

    Under this weighting the degree of a z-polynomial equals the total
    degree of the symmetric polynomial it denotes.
    """
    return index if space in ("z", "y") else 1


def term_wdeg(t: Term, w: WeightFn = unit_weight) -> int:
    return sum(e * w(s, i) for s, i, e in t)


def wdeg(p: Polynomial, w: WeightFn = unit_weight) -> int:
    """Maximum weighted degree over the support; undefined for 0."""
    if p.is_zero:
        raise ValueError("weighted degree of the zero polynomial is undefined")
    return max(term_wdeg(t, w) for t in p.support())


def homogeneous_parts(p: Polynomial, w: WeightFn = unit_weight) -> list[tuple[int, Polynomial]]:
    """Split into weighted-homogeneous parts, degrees strictly increasing."""
    buckets: dict[int, dict[Term, object]] = {}
    for t, c in p.items():
        buckets.setdefault(term_wdeg(t, w), {})[t] = c
    return [(d, Polynomial(buckets[d])) for d in sorted(buckets)]


def is_homogeneous(p: Polynomial, w: WeightFn = unit_weight) -> bool:
    if p.is_zero:
        return True
    return len({term_wdeg(t, w) for t in p.support()}) == 1


# -- text form ---------------------------------------------------------


def format_rat(q) -> str:
    return str(q)


def format_poly(p: Polynomial) -> str:
    """Canonical text form, e.g. ``z1^2 - z2`` or ``-27/2*z3``."""
    if p.is_zero:
        return "0"
    pieces = []
    for t, c in p.terms():
        neg = c < 0
        mag = -c if neg else c
        if not t:
            body = format_rat(mag)
        elif mag == 1:
            body = term_to_str(t)
        else:
            body = f"{format_rat(mag)}*{term_to_str(t)}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


def parse_poly(text: str) -> Polynomial:
    """Parse the canonical text form.

    Accepts ``+ - * / ^`` (also ``**``), parentheses, integer literals
    and variables like ``r1``, ``z12``.  Division is restricted to
    constant divisors.
    """
    source = text.replace("^", "**").strip()
    if not source:
        raise ValueError("empty polynomial text")
    try:
        node = ast.parse(source, mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial: {text!r}") from exc
    return _poly_from_ast(node, text)


def _poly_from_ast(node, original: str) -> Polynomial:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return Polynomial.constant(node.value)
        raise ValueError(f"non-integer literal in {original!r}")
    if isinstance(node, ast.Name):
        name = node.id
        space, digits = name[0], name[1:]
        if space in SPACES and digits.isdigit() and int(digits) >= 1:
            return Polynomial.variable(space, int(digits))
        raise ValueError(f"unknown variable {name!r}")
    if isinstance(node, ast.UnaryOp):
        arg = _poly_from_ast(node.operand, original)
        if isinstance(node.op, ast.USub):
            return -arg
        if isinstance(node.op, ast.UAdd):
            return arg
        raise ValueError(f"unsupported operator in {original!r}")
    if isinstance(node, ast.BinOp):
        op = node.op
        if isinstance(op, ast.Pow):
            base = _poly_from_ast(node.left, original)
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError(f"exponent must be an integer literal in {original!r}")
            return base ** node.right.value
        left = _poly_from_ast(node.left, original)
        right = _poly_from_ast(node.right, original)
        if isinstance(op, ast.Add):
            return left + right
        if isinstance(op, ast.Sub):
            return left - right
        if isinstance(op, ast.Mult):
            return left * right
        if isinstance(op, ast.Div):
            if not right.is_constant:
                raise ValueError(f"division by a non-constant in {original!r}")
            return left / right.constant_value()
        raise ValueError(f"unsupported operator in {original!r}")
    raise ValueError(f"cannot parse polynomial: {original!r}")


# -- JSON form ---------------------------------------------------------


def poly_to_obj(p: Polynomial) -> list[dict]:
    """JSON-ready form: [{"coeff": "num/den", "exps": {"r1": 2}}, ...]."""
    out = []
    for t, c in p.terms():
        out.append({
            "coeff": format_rat(c),
            "exps": {f"{s}{i}": e for s, i, e in t},
        })
    return out


def poly_from_obj(obj: list[dict]) -> Polynomial:
    coeffs: dict[Term, object] = {}
    for entry in obj:
        exps = {}
        for name, e in entry.get("exps", {}).items():
            space, digits = name[0], name[1:]
            if space not in SPACES or not digits.isdigit():
                raise ValueError(f"bad variable name {name!r}")
            exps[(space, int(digits))] = int(e)
        term = term_from_exps(exps)
        c = rat_from_str(str(entry["coeff"]))
        coeffs[term] = coeffs.get(term, rat(0)) + c
    return Polynomial(coeffs)


def variables(space: str, count: int) -> list[Polynomial]:
    """The polynomials ``space1 .. spacecount``."""
    return [Polynomial.variable(space, i) for i in range(1, count + 1)]
