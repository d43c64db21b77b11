"""Exact arithmetic in the field Q(s) of rational functions in s, with q = s^2.

Working in s rather than q keeps the half-integer powers of q needed by the
odd orthogonal families inside a univariate Laurent setting.  Every value is
held in a canonical form:

  * the denominator is an ordinary primitive integer polynomial in s with a
    nonzero constant term and a positive leading coefficient;
  * all powers of s and all rational content live in the numerator;
  * numerator and denominator are coprime as polynomials.

Equality of scalars is therefore structural equality, and values are safe to
hash and to share between threads: everything here is immutable and every
operation is pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import (
    DivisionByZero,
    ExcludedEvaluationPoint,
    ParseError,
    PoleAtPoint,
)

# Exact rationals: arbitrary-precision numerator over a positive
# arbitrary-precision denominator, always reduced.
Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Integer polynomial helpers (ascending coefficient lists, used for gcd work)


def _ip_degree(u):
    return len(u) - 1


def _ip_trim(u):
    while u and u[-1] == 0:
        u.pop()
    return u


def _ip_primitive(u):
    """Primitive part with positive leading coefficient; u must be nonzero."""
    g = 0
    for c in u:
        g = _int_gcd(g, abs(c))
    if u[-1] < 0:
        g = -g
    return [c // g for c in u]


def _ip_pseudo_rem(u, v):
    """Pseudo-remainder of u by v (both nonzero, deg u >= deg v)."""
    dv = _ip_degree(v)
    lv = v[-1]
    r = list(u)
    for k in range(_ip_degree(u) - dv, -1, -1):
        c = r[dv + k] if dv + k < len(r) else 0
        if not c:
            continue
        r = [lv * a for a in r]
        for t in range(dv + 1):
            r[k + t] -= c * v[t]
        _ip_trim(r)
        if not r:
            break
    return r


def _ip_gcd(u, v):
    """Gcd of integer polynomials by a primitive remainder sequence."""
    u = _ip_primitive(list(u))
    v = _ip_primitive(list(v))
    if _ip_degree(u) < _ip_degree(v):
        u, v = v, u
    while v:
        r = _ip_pseudo_rem(u, v)
        u, v = v, (_ip_primitive(r) if r else [])
    return u


def _ip_exact_div(u, v):
    """Exact quotient u / v of integer polynomials (remainder known zero)."""
    n, d = list(u), v
    q = [0] * (len(n) - len(d) + 1)
    for k in range(len(q) - 1, -1, -1):
        qc = n[len(d) - 1 + k] // d[-1]
        q[k] = qc
        if qc:
            for t in range(len(d)):
                n[k + t] -= qc * d[t]
    return q


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial in s with Fraction coefficients.

    `terms` maps exponent -> nonzero coefficient; the empty map is zero.
    Instances are treated as immutable once constructed.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls({0: c} if c else None)

    @classmethod
    def s_power(cls, k):
        return cls({k: _ONE})

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms)

    def max_exp(self):
        return max(self.terms)

    def shift(self, k):
        """Multiply by s^k."""
        if k == 0 or not self.terms:
            return self
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, _ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return LaurentPoly()
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                v = out.get(e, _ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, at):
        at = Fraction(at)
        total = _ZERO
        for e, c in self.terms.items():
            total += c * at**e
        return total

    def int_form(self):
        """Split a poly with min_exp 0 as content * primitive-int-list.

        Returns (content, coeffs) with content a Fraction carrying the sign
        of the leading coefficient and coeffs an ascending, primitive,
        positive-leading integer list.
        """
        deg = self.max_exp()
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = _int_gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm // _int_gcd(den_lcm, c.denominator) * c.denominator
        content = Fraction(num_gcd, den_lcm)
        if self.terms[deg] < 0:
            content = -content
        coeffs = [0] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e] = int(c / content)
        return content, coeffs

    @classmethod
    def from_int_list(cls, coeffs, scale=_ONE):
        return cls({e: scale * c for e, c in enumerate(coeffs) if c})


_LP_ONE = LaurentPoly.const(1)


# ---------------------------------------------------------------------------
# Scalars


class Scalar:
    """An element of Q(s) in canonical form (see module docstring)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den):
        # Callers go through _make; this constructor trusts its arguments.
        self.num = num
        self.den = den
        self._hash = None

    # -- construction

    @staticmethod
    def _make(num, den):
        """Canonicalize num/den, both LaurentPoly."""
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return _SC_ZERO
        # Move the s-power of the denominator into the numerator.
        dshift = den.min_exp()
        if dshift:
            den = den.shift(-dshift)
            num = num.shift(-dshift)
        # Split off the numerator's own s-power before polynomial work.
        nshift = num.min_exp()
        n0 = num.shift(-nshift) if nshift else num
        ncont, nint = n0.int_form()
        dcont, dint = den.int_form()
        if len(dint) > 1 and len(nint) > 1:
            g = _ip_gcd(nint, dint)
            if len(g) > 1:
                nint = _ip_exact_div(nint, g)
                dint = _ip_exact_div(dint, g)
        scale = ncont / dcont
        return Scalar(
            LaurentPoly.from_int_list(nint, scale).shift(nshift),
            LaurentPoly.from_int_list(dint),
        )

    @classmethod
    def from_fraction(cls, c):
        c = Fraction(c)
        if not c:
            return _SC_ZERO
        return cls(LaurentPoly.const(c), _LP_ONE)

    from_int = from_fraction

    @classmethod
    def s_power(cls, k):
        return cls(LaurentPoly.s_power(k), _LP_ONE)

    @classmethod
    def q_power(cls, k):
        return cls.s_power(2 * k)

    # -- predicates

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.num.terms == {0: _ONE} and self.den.terms == {0: _ONE}

    # -- arithmetic

    def __add__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.den is other.den or self.den == other.den:
            if self.den.terms == {0: _ONE}:
                s = self.num + other.num
                return Scalar(s, _LP_ONE) if s.terms else _SC_ZERO
            return Scalar._make(self.num + other.num, self.den)
        return Scalar._make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        if self.num.is_zero():
            return self
        return Scalar(-self.num, self.den)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return _SC_ZERO
        if self.den.terms == {0: _ONE} and other.den.terms == {0: _ONE}:
            return Scalar(self.num * other.num, _LP_ONE)
        return Scalar._make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.num.is_zero():
            raise DivisionByZero("division by zero scalar")
        return Scalar._make(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return Scalar._make(self.den, self.num)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = _SC_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison and hashing (canonical form makes this structural)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((hash(self.num), hash(self.den)))
        return self._hash

    # -- evaluation

    def evaluate(self, at_s):
        """Exact value at s = at_s; at_s must be admissible and not a pole."""
        at_s = Fraction(at_s)
        if at_s in (0, 1, -1):
            raise ExcludedEvaluationPoint(f"s = {at_s} puts q in {{0, 1}}")
        dval = self.den.evaluate(at_s)
        if not dval:
            raise PoleAtPoint(f"denominator vanishes at s = {at_s}")
        return self.num.evaluate(at_s) / dval

    # -- printing

    def __str__(self):
        if self.num.is_zero():
            return "0"
        num_s = _poly_text(self.num)
        if self.den.terms == {0: _ONE}:
            return num_s
        if len(self.num.terms) > 1:
            num_s = f"({num_s})"
        return f"{num_s}/({_poly_text(self.den)})"

    def __repr__(self):
        return f"Scalar({self})"


_SC_ZERO = Scalar(LaurentPoly(), _LP_ONE)
_SC_ONE = Scalar(_LP_ONE, _LP_ONE)


def _term_text(e, c):
    """One monomial |c| * s^e in grammar text, sign stripped."""
    c = abs(c)
    if e == 0:
        return str(c)
    if e % 2 == 0:
        k = e // 2
        power = "q" if k == 1 else f"q^{k}"
    else:
        power = f"q^({e}/2)"
    if c == 1:
        return power
    return f"{c}*{power}"


def _poly_text(p):
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        if not parts:
            parts.append(("-" if c < 0 else "") + _term_text(e, c))
        else:
            parts.append((" - " if c < 0 else " + ") + _term_text(e, c))
    return "".join(parts)


# ---------------------------------------------------------------------------
# Operation-style entry points


def arith(a, b, kind):
    """Field arithmetic dispatch: kind in {"add", "sub", "mul", "div"}."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def evaluate(a, at_s):
    return a.evaluate(at_s)


def is_unit_sign(a):
    """+1 for the constant 1, -1 for the constant -1, None otherwise."""
    if a == _SC_ONE:
        return 1
    if isinstance(a, Scalar) and a == Scalar.from_int(-1):
        return -1
    if isinstance(a, Fraction):
        if a == 1:
            return 1
        if a == -1:
            return -1
    return None


# ---------------------------------------------------------------------------
# Parsing (the coefficient grammar shared by files and the CLI)
#
#   expr   := term (('+' | '-') term)*
#   term   := factor (('*' | '/') factor)*
#   factor := ('-' | '+') factor | atom ['^' exponent]
#   atom   := INT | 'q' | 's' | '(' expr ')'
#   exponent := ['-'] INT | '(' ['-'] INT '/' '2' ')'
#
# Half-integer exponents require an odd numerator and apply to q only;
# `s` is shorthand for q^(1/2).


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("int", int(text[i:j]), i))
                i = j
                continue
            if ch in "qs":
                self.toks.append(("sym", ch, i))
                i += 1
                continue
            if ch in "+-*/^()":
                self.toks.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("end", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok


def parse(text):
    """Parse grammar text into a canonical Scalar.

    q parses as s^2; raises ParseError with a character position on bad
    syntax and DivisionByZero on a literal zero denominator.
    """
    toks = _Tokens(text)
    value = _parse_expr(toks)
    kind, _, pos = toks.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return value


def _parse_expr(toks):
    value = _parse_term(toks)
    while toks.peek()[0] in ("+", "-"):
        op = toks.next()[0]
        rhs = _parse_term(toks)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_term(toks):
    value = _parse_factor(toks)
    while toks.peek()[0] in ("*", "/"):
        op, _, pos = toks.next()
        rhs = _parse_factor(toks)
        if op == "*":
            value = value * rhs
        else:
            if rhs.is_zero():
                raise DivisionByZero(f"zero denominator at position {pos}")
            value = value / rhs
    return value


def _parse_factor(toks):
    kind, _, _ = toks.peek()
    if kind in ("+", "-"):
        toks.next()
        value = _parse_factor(toks)
        return -value if kind == "-" else value
    value, is_q = _parse_atom(toks)
    if toks.peek()[0] == "^":
        _, _, pos = toks.next()
        value = _apply_exponent(toks, value, is_q, pos)
    return value


def _parse_atom(toks):
    kind, val, pos = toks.next()
    if kind == "int":
        return Scalar.from_int(val), False
    if kind == "sym":
        return (Scalar.q_power(1), True) if val == "q" else (Scalar.s_power(1), False)
    if kind == "(":
        value = _parse_expr(toks)
        kind, _, pos = toks.next()
        if kind != ")":
            raise ParseError("expected ')'", pos)
        return value, False
    raise ParseError("expected a number, q, s or '('", pos)


def _apply_exponent(toks, base, base_is_q, caret_pos):
    kind, val, pos = toks.peek()
    if kind == "(":
        toks.next()
        neg = False
        if toks.peek()[0] == "-":
            toks.next()
            neg = True
        kind, val, pos = toks.next()
        if kind != "int":
            raise ParseError("expected an integer numerator", pos)
        numer = -val if neg else val
        kind, _, pos = toks.next()
        if kind != "/":
            raise ParseError("expected '/' in half-integer exponent", pos)
        kind, val, pos = toks.next()
        if kind != "int" or val != 2:
            raise ParseError("half-integer exponents must have denominator 2", pos)
        kind, _, pos = toks.next()
        if kind != ")":
            raise ParseError("expected ')'", pos)
        if numer % 2 == 0:
            raise ParseError("half-integer exponent must be odd", caret_pos)
        if not base_is_q:
            raise ParseError("half-integer exponents apply only to q", caret_pos)
        return Scalar.s_power(numer)
    neg = False
    if kind == "-":
        toks.next()
        kind, val, pos = toks.peek()
        neg = True
    if kind != "int":
        raise ParseError("expected an integer exponent", pos)
    toks.next()
    k = -val if neg else val
    if base.is_zero() and k < 0:
        raise DivisionByZero(f"zero base with negative exponent at position {caret_pos}")
    return base**k


# ---------------------------------------------------------------------------
# Coefficient fields: the shared face of the symbolic and numeric paths.
# A field object carries the distinguished constants and the few hooks the
# linear algebra kernels need; elements themselves do the arithmetic.


class ScalarField:
    """The symbolic field Q(s)."""

    name = "symbolic"

    def __init__(self):
        self.zero = _SC_ZERO
        self.one = _SC_ONE
        self.s = Scalar.s_power(1)
        self.q = Scalar.q_power(1)
        self.lam = self.q - self.q.inverse()

    def from_int(self, n):
        return Scalar.from_fraction(n)

    def to_text(self, x):
        return str(x)

    def parse(self, text):
        return parse(text)

    def clear_row_denominators(self, row):
        """Scale a {col: Scalar} row so every entry has denominator 1."""
        dens = []
        seen = set()
        for v in row.values():
            if v.den.terms != {0: _ONE}:
                key = frozenset(v.den.terms.items())
                if key not in seen:
                    seen.add(key)
                    dens.append(Scalar(v.den, _LP_ONE))
        for d in dens:
            row = {c: v * d for c, v in row.items()}
        return row

    def strip_row_content(self, row):
        """Divide a denominator-free row by its common content.

        Removes the shared s-power, rational content and any common
        polynomial factor; keeps elimination intermediates small.
        """
        if not row:
            return row
        if any(v.den.terms != {0: _ONE} for v in row.values()):
            row = self.clear_row_denominators(row)
        vals = list(row.values())
        shift = min(v.num.min_exp() for v in vals)
        polys = []
        for v in vals:
            p = v.num.shift(-shift) if shift else v.num
            polys.append(p.int_form())
        g = polys[0][1]
        for _, coeffs in polys[1:]:
            if len(g) == 1:
                break
            g = _ip_gcd(g, coeffs)
        out = {}
        for (c, _), (cont, coeffs) in zip(row.items(), polys):
            if len(g) > 1:
                coeffs = _ip_exact_div(coeffs, g)
            out[c] = Scalar(LaurentPoly.from_int_list(coeffs, cont), _LP_ONE)
        return out


class RationalField:
    """Plain rational arithmetic at a fixed admissible value of s."""

    def __init__(self, at_s):
        at_s = Fraction(at_s)
        if at_s in (0, 1, -1):
            raise ExcludedEvaluationPoint(f"s = {at_s} puts q in {{0, 1}}")
        self.at_s = at_s
        self.zero = _ZERO
        self.one = _ONE
        self.s = at_s
        self.q = at_s * at_s
        self.lam = self.q - 1 / self.q
        self.name = f"numeric(s={at_s})"

    def from_int(self, n):
        return Fraction(n)

    def to_text(self, x):
        return str(x)

    def clear_row_denominators(self, row):
        return row

    def strip_row_content(self, row):
        if not row:
            return row
        num_gcd = 0
        den_lcm = 1
        for v in row.values():
            num_gcd = _int_gcd(num_gcd, abs(v.numerator))
            den_lcm = den_lcm // _int_gcd(den_lcm, v.denominator) * v.denominator
        factor = Fraction(num_gcd, den_lcm)
        return {c: v / factor for c, v in row.items()}


SYMBOLIC = ScalarField()
