"""Resolution invariants on a chart: ord, w-ord, n, t, and their maxima.

The weighted order of a pair (J, b) at a singular point is w-ord = nu(Jbar)/b
where Jbar is J with all exceptional-coordinate factors divided out.  Its
chart-wise maximum is computed ideal-theoretically: the largest b' for which
Delta^{b'-1}(Jbar) still meets the singular locus of (J, b), witnessed by the
(nontrivial) sum ideal whose zero set is Max w-ord.

The second entry n counts, at a point of maximal w-ord, how many divisors of
the distinguished old set E^- pass through it.  Chart-wise: the largest m
such that some size-m subset S of E^- has Max w-ord meeting every divisor in
S; the Max t locus is then the union over all maximizing subsets S of
(Max w-ord  intersect  the divisors of S), encoded as the product over those
S of (MaxWordIdeal + sum of I(H), H in S).

Entries of the resolution-function vector are T pairs (w-ord, n), Gamma
triples from the monomial case, or the infinity marker; the order makes
INF greatest and every Gamma smaller than every T.  Vectors compare
lexicographically and print like `[(1,1), Γ(-1, 7/5, [2]), inf]`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations

from .delta import delta_power
from .ideals import Ideal, gcd_part
from .polyring import Context, Polynomial


# ---------------------------------------------------------------------------
# vector entries
# ---------------------------------------------------------------------------


class TEntry:
    """A t-value (w-ord, n), compared lexicographically."""

    __slots__ = ("word", "n")

    def __init__(self, word, n: int):
        self.word = Fraction(word)
        self.n = int(n)
        if self.word < 0 or self.n < 0:
            raise ValueError("t-values are non-negative")

    def key(self):
        return (1, self.word, self.n)

    def __eq__(self, other):
        return isinstance(other, TEntry) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"TEntry({self.word},{self.n})"

    def __str__(self):
        return f"({_frac(self.word)},{self.n})"


class GammaEntry:
    """A monomial-case value (-p, omega, ell); ell holds divisor labels in
    the order that maximizes the tuple lexicographically (largest first)."""

    __slots__ = ("p", "omega", "ell")

    def __init__(self, p: int, omega, ell):
        self.p = int(p)
        self.omega = Fraction(omega)
        self.ell = tuple(int(x) for x in ell)
        if self.p < 1 or len(self.ell) != self.p:
            raise ValueError("gamma needs p >= 1 and exactly p divisor labels")

    def key(self):
        return (0, -self.p, self.omega, self.ell)

    def __eq__(self, other):
        return isinstance(other, GammaEntry) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"GammaEntry(-{self.p},{self.omega},{list(self.ell)})"

    def __str__(self):
        inside = ", ".join(str(x) for x in self.ell)
        return f"Γ(-{self.p}, {_frac(self.omega)}, [{inside}])"


class _Infinity:
    __slots__ = ()

    def key(self):
        return (2,)

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Infinity()


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def entry_less(a, b) -> bool:
    return a.key() < b.key()


class InvariantVector:
    """A fixed-length tuple of entries compared lexicographically."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    @classmethod
    def padded(cls, entries, length: int) -> "InvariantVector":
        entries = list(entries)
        if len(entries) > length:
            raise ValueError("more entries than vector slots")
        entries += [INF] * (length - len(entries))
        return cls(entries)

    def key(self):
        return tuple(e.key() for e in self.entries)

    def __lt__(self, other):
        return self.key() < other.key()

    def __eq__(self, other):
        return isinstance(other, InvariantVector) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return "[" + ", ".join(str(e) for e in self.entries) + "]"

    def __repr__(self):
        return f"InvariantVector({self})"


def smooth_marker(codim: int, length: int) -> InvariantVector:
    """The vector R signalling a smooth point: codim copies of (1,0)."""
    return InvariantVector.padded([TEntry(1, 0)] * codim, length)


_ENTRY_RE = re.compile(
    r"\(\s*(-?\d+(?:/\d+)?)\s*,\s*(\d+)\s*\)"  # (w,n)
    r"|Γ\(\s*-(\d+)\s*,\s*(\d+(?:/\d+)?)\s*,\s*\[([^\]]*)\]\s*\)"  # Γ(-p, w, [..])
    r"|inf"
)


def parse_vector(text: str) -> InvariantVector:
    """Parse the printed form back; used by the trace auditor."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"not an invariant vector: {text!r}")
    entries = []
    pos = 1
    while pos < len(body) - 1:
        m = _ENTRY_RE.match(body, pos)
        if not m:
            if body[pos] in ", ":
                pos += 1
                continue
            raise ValueError(f"bad invariant entry at {body[pos:]!r}")
        if m.group(0) == "inf":
            entries.append(INF)
        elif m.group(1) is not None:
            entries.append(TEntry(Fraction(m.group(1)), int(m.group(2))))
        else:
            ell = [int(x) for x in m.group(5).split(",")] if m.group(5).strip() else []
            entries.append(GammaEntry(int(m.group(3)), Fraction(m.group(4)), ell))
        pos = m.end()
    if not entries:
        raise ValueError(f"empty invariant vector: {text!r}")
    return InvariantVector(entries)


# ---------------------------------------------------------------------------
# chart-wise computations
# ---------------------------------------------------------------------------


def max_word_chart(jbar: Ideal, sing_ideal: Ideal) -> int:
    """Largest b' with Delta^{b'-1}(Jbar) meeting V(sing_ideal); 0 if Jbar
    is trivial on the singular locus (the monomial case)."""
    if jbar.is_zero():
        raise ValueError("reduced ideal is zero")
    bprime = 0
    cur = jbar
    while not (cur + sing_ideal).is_trivial():
        bprime += 1
        cur = delta_power(cur, 1)
    return bprime


def max_word_ideal(jbar: Ideal, sing_ideal: Ideal, bprime: int) -> Ideal:
    """Ideal whose zero set is Max w-ord in the chart (for the found b')."""
    if bprime == 0:
        return sing_ideal
    return delta_power(jbar, bprime - 1) + sing_ideal


def maximizing_subsets(
    maxword_by_chart: dict[int, Ideal],
    eminus_vars_by_chart: dict[int, dict[int, int]],
) -> tuple[int, list[tuple[int, ...]]]:
    """The n part of max t, chart-globally.

    `eminus_vars_by_chart[chart]` maps E^- labels visible in that chart to
    their coordinate index.  Returns (n0, sorted list of label tuples S of
    size n0 whose divisor intersection meets Max w-ord somewhere).
    """
    all_labels = sorted({l for m in eminus_vars_by_chart.values() for l in m})
    for size in range(len(all_labels), 0, -1):
        hits = []
        for subset in combinations(all_labels, size):
            for cid, mw in maxword_by_chart.items():
                vars_of = eminus_vars_by_chart.get(cid, {})
                if any(l not in vars_of for l in subset):
                    continue
                ctx = mw.ctx
                probe = mw + Ideal(ctx, [ctx.var(vars_of[l]) for l in subset])
                if not probe.is_trivial():
                    hits.append(subset)
                    break
        if hits:
            return size, sorted(hits)
    return 0, []


def max_t_ideal(
    maxword: Ideal,
    maximizing: list[tuple[int, ...]],
    vars_of_labels: dict[int, int],
) -> Ideal:
    """Per-chart Max t locus: the product over maximizing subsets S (those
    fully visible here) of (MaxWordIdeal + sum of the divisor coordinates)."""
    ctx = maxword.ctx
    if not maximizing:
        return maxword
    out = None
    for subset in maximizing:
        if any(l not in vars_of_labels for l in subset):
            continue
        factor = maxword + Ideal(ctx, [ctx.var(vars_of_labels[l]) for l in subset])
        out = factor if out is None else out * factor
    if out is None:
        # no maximizing component is visible in this chart
        return Ideal(ctx, [ctx.one()])
    return out


def codim_one_part(sing: Ideal) -> Polynomial | None:
    """Squarefree equation of the codimension-one components of V(sing)."""
    return gcd_part(sing)


# ---------------------------------------------------------------------------
# point evaluators (used by property tests and the two-case n definition)
# ---------------------------------------------------------------------------


def word_at(jbar: Ideal, bound: int, point) -> Fraction:
    """w-ord at a singular rational point: order of the reduced ideal / b."""
    o = jbar.order_at(point)
    if o is None:
        raise ValueError("zero reduced ideal")
    return Fraction(o, bound)


def n_at(
    divisors_vars: dict[int, int],
    eminus: set[int],
    point,
    at_max_word: bool,
) -> int:
    """The two-case divisor count at a point.

    Counts divisors through the point from E^- when the point realizes the
    maximal w-ord, from all of E otherwise.
    """
    count = 0
    for label, var in divisors_vars.items():
        if at_max_word and label not in eminus:
            continue
        if point[var] == 0:
            count += 1
    return count


def t_at(
    jbar: Ideal,
    bound: int,
    divisors_vars: dict[int, int],
    eminus: set[int],
    point,
    max_word: Fraction,
) -> TEntry:
    w = word_at(jbar, bound, point)
    return TEntry(w, n_at(divisors_vars, eminus, point, w == max_word))
