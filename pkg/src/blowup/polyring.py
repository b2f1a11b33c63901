"""Exact multivariate polynomial arithmetic over Q.

Polynomials are stored as dicts mapping dense exponent tuples to nonzero
Fraction coefficients.  A ring is described by a Context (an ordered tuple
of variable names); every polynomial carries a reference to its context and
mixing contexts raises.  The one term order used for canonical forms is
graded reverse lexicographic with respect to the context's variable order:
higher total degree wins, ties go to the monomial whose *last* differing
exponent is smaller.

The text format round-trips: `Context.parse` accepts integer (and, where a
coordinate change introduced denominators, rational ``p/q``) literals,
identifiers matching ``[A-Za-z][A-Za-z0-9_]*``, ``^`` for powers, ``*`` for
products, binary ``+``/``-``, unary minus and parentheses.  ``str()`` emits
terms in descending grevlex order, so e.g. ``X^5 + X*Y^2*Z + Z^3``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd


class PolyError(ValueError):
    """Malformed polynomial arithmetic request (context mix-up, bad division...)."""


class ParseError(PolyError):
    """The input text is not a polynomial of the declared grammar."""


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# ---------------------------------------------------------------------------
# monomials = dense exponent tuples
# ---------------------------------------------------------------------------


def mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True if x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Exponent tuple of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(m: tuple[int, ...]):
    """Sort key: max() over these keys picks the grevlex-largest monomial.

    Degree first; on ties the winner is the monomial with the smaller
    exponent at the last position where they differ, which is exactly
    lexicographic comparison of the negated, reversed exponent tuple.
    """
    return (sum(m), tuple(-e for e in reversed(m)))


# ---------------------------------------------------------------------------
# variable contexts
# ---------------------------------------------------------------------------


class Context:
    """An ordered list of variable names fixing the ring Q[x_0,...,x_{n-1}]."""

    __slots__ = ("names", "index", "_vars")

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise PolyError("a context needs at least one variable")
        seen = set()
        for nm in names:
            if not _NAME_RE.match(nm):
                raise PolyError(f"bad variable name {nm!r}")
            if nm in seen:
                raise PolyError(f"duplicate variable name {nm!r}")
            seen.add(nm)
        self.names = names
        self.index = {nm: i for i, nm in enumerate(names)}
        self._vars = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Context) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Context({', '.join(self.names)})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Polynomial":
        if self._vars is None:
            n = self.nvars
            self._vars = tuple(
                Polynomial(self, {tuple(1 if j == i else 0 for j in range(n)): Fraction(1)})
                for i in range(n)
            )
        return self._vars[i]

    def variables(self) -> tuple["Polynomial", ...]:
        self.var(0)
        return self._vars

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise PolyError(f"bad exponent tuple {exps}")
        c = Fraction(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def extend(self, extra_names) -> "Context":
        """New context with extra variables appended after the current ones."""
        return Context(self.names + tuple(extra_names))

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    __slots__ = ("ctx", "terms", "_lead")

    def __init__(self, ctx: Context, terms: dict):
        self.ctx = ctx
        self.terms = terms
        self._lead = None

    # -- constructors / basic predicates ------------------------------------

    @staticmethod
    def _coerce(ctx, other):
        if isinstance(other, Polynomial):
            if other.ctx != ctx:
                raise PolyError("mixed polynomial contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return ctx.const(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError("not a constant")
        return next(iter(self.terms.values())) if self.terms else Fraction(0)

    def is_unit(self) -> bool:
        return self.is_constant() and not self.is_zero()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) else (other.terms, self.terms)
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ctx.zero()
            return Polynomial(self.ctx, {m: a * c for m, a in self.terms.items()})
        other = self._coerce(self.ctx, other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative polynomial power")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_monomial(self, exps: tuple[int, ...], coeff=1) -> "Polynomial":
        c = Fraction(coeff)
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {mono_mul(m, exps): a * c for m, a in self.terms.items()})

    # -- orders, degrees, leading data ---------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def order(self) -> int | None:
        """Order of vanishing at the origin (min total degree); None for 0."""
        if not self.terms:
            return None
        return min(sum(m) for m in self.terms)

    def var_order(self, i: int) -> int | None:
        """x_i-adic order: min exponent of variable i; None for the zero poly."""
        if not self.terms:
            return None
        return min(m[i] for m in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def lead_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading monomial")
        if self._lead is None:
            self._lead = max(self.terms, key=grevlex_key)
        return self._lead

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lead_coeff()
        if c == 1:
            return self
        return Polynomial(self.ctx, {m: a / c for m, a in self.terms.items()})

    def primitive(self) -> "Polynomial":
        """Integer-primitive scalar multiple with positive leading coefficient.

        This is the canonical representative used when printing ideal
        generators: all coefficients integral, their gcd 1, grevlex-leading
        coefficient positive.
        """
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        if self.lead_coeff() < 0:
            scale = -scale
        return Polynomial(self.ctx, {m: c * scale for m, c in self.terms.items()})

    def sorted_terms(self):
        """Terms as (monomial, coeff) pairs in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # -- calculus and substitution -------------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                m2 = m[:i] + (e - 1,) + m[i + 1 :]
                s = out.get(m2, 0) + c * e
                if s:
                    out[m2] = s
                else:
                    out.pop(m2, None)
        return Polynomial(self.ctx, out)

    def substitute(self, images) -> "Polynomial":
        """Apply the ring map x_i -> images[i]; images live in a common context."""
        images = tuple(images)
        if len(images) != self.ctx.nvars:
            raise PolyError("substitution needs one image per variable")
        if not images:
            raise PolyError("empty image list")
        tgt = images[0].ctx
        # cache powers of each image as they come up
        powers: list[dict[int, Polynomial]] = [{0: tgt.one(), 1: im} for im in images]
        out = tgt.zero()
        for m, c in self.terms.items():
            term = tgt.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                cache = powers[i]
                if e not in cache:
                    k = max(kk for kk in cache if kk <= e)
                    p = cache[k]
                    while k < e:
                        p = p * images[i]
                        k += 1
                        cache[k] = p
                term = term * cache[e]
            out = out + term
        return out

    def shift_variable(self, i: int, delta: "Polynomial") -> "Polynomial":
        """Substitute x_i -> x_i + delta, other variables fixed."""
        images = list(self.ctx.variables())
        images[i] = images[i] + delta
        return self.substitute(images)

    def evaluate(self, point) -> Fraction:
        point = tuple(Fraction(p) for p in point)
        if len(point) != self.ctx.nvars:
            raise PolyError("point arity mismatch")
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            total += v
        return total

    def order_at(self, point) -> int | None:
        """Order of vanishing at an arbitrary rational point (Taylor shift)."""
        shifted = self.substitute(
            tuple(self.ctx.var(i) + Fraction(p) for i, p in enumerate(point))
        )
        return shifted.order()

    def divide_var_power(self, i: int, k: int) -> "Polynomial":
        """Exact division by x_i^k (raises if some term has smaller exponent)."""
        if k == 0:
            return self
        out = {}
        for m, c in self.terms.items():
            if m[i] < k:
                raise PolyError(f"not divisible by {self.ctx.names[i]}^{k}")
            out[m[:i] + (m[i] - k,) + m[i + 1 :]] = c
        return Polynomial(self.ctx, out)

    def divide_exact(self, g: "Polynomial") -> "Polynomial | None":
        """Quotient self/g when the division is exact, else None."""
        g = self._coerce(self.ctx, g)
        if g.is_zero():
            raise PolyError("division by zero polynomial")
        if self.is_zero():
            return self
        rem = self
        q = self.ctx.zero()
        glm = g.lead_monomial()
        glc = g.lead_coeff()
        while not rem.is_zero():
            rlm = rem.lead_monomial()
            if not mono_divides(glm, rlm):
                return None
            t = Polynomial(self.ctx, {mono_div(rlm, glm): rem.lead_coeff() / glc})
            q = q + t
            rem = rem - t * g
        return q

    # -- hashing, comparison, printing ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _term_str(self, m, c) -> str:
        factors = []
        for name, e in zip(self.ctx.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            return _coeff_str(c)
        if c == 1:
            return "*".join(factors)
        if c == -1:
            return "-" + "*".join(factors)
        return _coeff_str(c) + "*" + "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            s = self._term_str(m, c)
            if not parts:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(" - " + s[1:])
            else:
                parts.append(" + " + s)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[\^*+\-()/]))"
)


class _Parser:
    """Recursive descent for sums of products of powers, with unary minus."""

    def __init__(self, ctx: Context, text: str):
        self.ctx = ctx
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        i = 0
        while i < len(text):
            m = _TOKEN_RE.match(text, i)
            if not m or m.end() == i:
                if text[i:].strip():
                    raise ParseError(f"unexpected character {text[i:].strip()[0]!r}")
                break
            if m.group("num"):
                tokens.append(("num", int(m.group("num"))))
            elif m.group("name"):
                tokens.append(("name", m.group("name")))
            else:
                tokens.append(("op", m.group("op")))
            i = m.end()
        tokens.append(("end", None))
        return tokens

    def _peek(self):
        return self.tokens[self.pos]

    def _next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        p = self._expr()
        if self._peek()[0] != "end":
            raise ParseError(f"trailing input near token {self._peek()[1]!r}")
        return p

    def _expr(self) -> Polynomial:
        kind, val = self._peek()
        negate = False
        if (kind, val) == ("op", "-"):
            self._next()
            negate = True
        elif (kind, val) == ("op", "+"):
            self._next()
        p = self._term()
        if negate:
            p = -p
        while True:
            kind, val = self._peek()
            if (kind, val) == ("op", "+"):
                self._next()
                p = p + self._term()
            elif (kind, val) == ("op", "-"):
                self._next()
                p = p - self._term()
            else:
                return p

    def _term(self) -> Polynomial:
        p = self._factor()
        while self._peek() == ("op", "*"):
            self._next()
            p = p * self._factor()
        return p

    def _factor(self) -> Polynomial:
        base = self._base()
        if self._peek() == ("op", "^"):
            self._next()
            kind, val = self._next()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            return base**val
        return base

    def _base(self) -> Polynomial:
        kind, val = self._next()
        if kind == "num":
            # allow a rational literal p/q, needed to round-trip coordinate
            # changes that introduced denominators
            if self._peek() == ("op", "/"):
                self._next()
                kind2, val2 = self._next()
                if kind2 != "num" or val2 == 0:
                    raise ParseError("bad rational literal")
                return self.ctx.const(Fraction(val, val2))
            return self.ctx.const(val)
        if kind == "name":
            if val not in self.ctx.index:
                raise ParseError(f"unknown variable {val!r}")
            return self.ctx.var(self.ctx.index[val])
        if (kind, val) == ("op", "("):
            p = self._expr()
            if self._next() != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return p
        if (kind, val) == ("op", "-"):
            return -self._factor()
        raise ParseError(f"unexpected token {val!r}")
