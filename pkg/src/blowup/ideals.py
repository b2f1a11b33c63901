"""Ideals in Q[x_1..x_n]: Groebner bases, membership, colon, saturation.

The Groebner engine is a plain Buchberger loop with the normal selection
strategy (smallest lcm first) and the coprime-lead criterion.  Work is
metered: every S-pair that gets reduced to normal form counts one step
against a per-call budget (default 10,000, see `set_gb_budget`), and hitting
the budget raises `BudgetExceeded` rather than looping silently.

The canonical term order is grevlex over the context's variable order.
Elimination (for intersections, colon ideals and saturation) runs in a
temporary extended ring with one helper variable and a block order that
makes the helper dominant; the helper never leaks out of this module.

Also home to the polynomial gcd utilities (subresultant remainder
sequences) used to split off codimension-one parts of singular loci.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BudgetExceeded
from .polyring import (
    Context,
    PolyError,
    Polynomial,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

_GB_BUDGET = 10_000


def set_gb_budget(steps: int) -> None:
    """Set the per-call S-pair budget for all subsequent Groebner runs."""
    global _GB_BUDGET
    if steps < 1:
        raise ValueError("budget must be positive")
    _GB_BUDGET = steps


def get_gb_budget() -> int:
    return _GB_BUDGET


# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------


def elim_key(n_main: int):
    """Block order on a context whose helper variables sit *after* the first
    `n_main` ones: the helper block is compared (grevlex) first, so a basis
    element with helper-free leading monomial is helper-free entirely."""

    def key(m):
        return (grevlex_key(m[n_main:]), grevlex_key(m[:n_main]))

    return key


def _lead(p: Polynomial, key):
    return max(p.terms, key=key)


# ---------------------------------------------------------------------------
# reduction and Buchberger
# ---------------------------------------------------------------------------


def _normal_form(f: Polynomial, basis: list[tuple[Polynomial, tuple, Fraction]], key) -> Polynomial:
    """Full normal form of f modulo basis (list of (poly, lead, leadcoeff))."""
    ctx = f.ctx
    out: dict = {}
    work = f
    while work.terms:
        lm = _lead(work, key)
        lc = work.terms[lm]
        for g, glm, glc in basis:
            if mono_divides(glm, lm):
                shift = mono_div(lm, glm)
                work = work - g.mul_monomial(shift, lc / glc)
                break
        else:
            # lm is irreducible: retire it and every smaller copy of it
            out[lm] = lc
            work = Polynomial(ctx, {m: c for m, c in work.terms.items() if m != lm})
    return Polynomial(ctx, out)


def buchberger(gens, key=grevlex_key, budget: int | None = None) -> list[Polynomial]:
    """Reduced monic Groebner basis of the given generators.

    Deterministic for a fixed generator sequence: pairs are processed in
    ascending (lcm, i, j) order and the reduced basis is returned sorted by
    leading monomial, largest first.
    """
    if budget is None:
        budget = _GB_BUDGET
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ctx = gens[0].ctx

    basis: list[tuple[Polynomial, tuple, Fraction]] = []
    for g in gens:
        g = g.monic() if key is grevlex_key else g
        basis.append((g, _lead(g, key), g.terms[_lead(g, key)]))

    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    steps = 0
    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: (key(mono_lcm(basis[ij[0]][1], basis[ij[1]][1])), ij),
        )
        pairs.discard((i, j))
        fi, lmi, lci = basis[i]
        fj, lmj, lcj = basis[j]
        lcm = mono_lcm(lmi, lmj)
        if lcm == mono_mul(lmi, lmj):
            continue  # coprime leads reduce to zero
        steps += 1
        if steps > budget:
            raise BudgetExceeded("groebner S-pair", budget)
        s = fi.mul_monomial(mono_div(lcm, lmi), Fraction(1, 1) / lci) - fj.mul_monomial(
            mono_div(lcm, lmj), Fraction(1, 1) / lcj
        )
        nf = _normal_form(s, basis, key)
        if nf.terms:
            lm = _lead(nf, key)
            k = len(basis)
            basis.append((nf, lm, nf.terms[lm]))
            pairs.update((k, t) for t in range(k))

    # inter-reduce to the unique reduced basis
    kept: list[Polynomial] = []
    leads = [b[1] for b in basis]
    for idx, (g, lm, _) in enumerate(basis):
        if any(
            other != idx and mono_divides(leads[other], lm)
            and not (leads[other] == lm and other > idx)
            for other in range(len(basis))
        ):
            continue
        kept.append(g)
    reduced: list[Polynomial] = []
    kept_data = [(g, _lead(g, key), g.terms[_lead(g, key)]) for g in kept]
    for idx, g in enumerate(kept):
        others = [kept_data[t] for t in range(len(kept)) if t != idx]
        nf = _normal_form(g, others, key)
        if nf.terms:
            lc = nf.terms[_lead(nf, key)]
            reduced.append(nf * (Fraction(1) / lc))
    reduced.sort(key=lambda p: key(_lead(p, key)), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# the Ideal wrapper
# ---------------------------------------------------------------------------


class Ideal:
    """A finitely generated ideal, kept with its (pruned) generator list.

    Construction drops zero generators, duplicates, and generators that are
    exact polynomial multiples of another generator; everything else keeps
    its insertion order so displayed generators stay recognizable.
    """

    __slots__ = ("ctx", "gens", "_gb")

    def __init__(self, ctx: Context, gens):
        self.ctx = ctx
        cleaned: list[Polynomial] = []
        for g in gens:
            if g.ctx != ctx:
                raise PolyError("generator from wrong context")
            if g.is_zero() or any(g == h for h in cleaned):
                continue
            cleaned.append(g)
        # drop exact multiples: <f, q*f> = <f>
        pruned: list[Polynomial] = []
        for i, g in enumerate(cleaned):
            redundant = False
            for j, h in enumerate(cleaned):
                if i == j:
                    continue
                q = g.divide_exact(h)
                if q is not None and not (q.is_unit() and j > i):
                    redundant = True
                    break
            if not redundant:
                pruned.append(g)
        self.gens = tuple(pruned)
        self._gb = None

    @classmethod
    def of(cls, *gens):
        if not gens:
            raise PolyError("Ideal.of needs at least one generator")
        return cls(gens[0].ctx, gens)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def is_zero(self) -> bool:
        return not self.gens

    def groebner(self) -> tuple[Polynomial, ...]:
        if self._gb is None:
            self._gb = tuple(buchberger(list(self.gens)))
        return self._gb

    def is_trivial(self) -> bool:
        """Whether the ideal is the whole ring."""
        if any(g.is_unit() for g in self.gens):
            return True
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_unit()

    def normal_form(self, f: Polynomial) -> Polynomial:
        gb = self.groebner()
        data = [(g, g.lead_monomial(), g.lead_coeff()) for g in gb]
        return _normal_form(f, data, grevlex_key)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if self.is_zero():
            return False
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.groebner() == other.groebner()

    def normalized(self) -> "Ideal":
        """Same ideal with integer-primitive, positively-led generators."""
        return Ideal(self.ctx, [g.primitive() for g in self.gens])

    def gb_ideal(self) -> "Ideal":
        """Same ideal regenerated by its reduced Groebner basis."""
        return Ideal(self.ctx, list(self.groebner()))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ctx != self.ctx:
            raise PolyError("mixed contexts in ideal sum")
        return Ideal(self.ctx, list(self.gens) + list(other.gens))

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.ctx != self.ctx:
            raise PolyError("mixed contexts in ideal product")
        if self.is_zero() or other.is_zero():
            return Ideal(self.ctx, [])
        return Ideal(self.ctx, [g * h for g in self.gens for h in other.gens])

    def power(self, k: int) -> "Ideal":
        if k < 0:
            raise PolyError("negative ideal power")
        if k == 0:
            return Ideal(self.ctx, [self.ctx.one()])
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    __pow__ = power

    def min_order(self) -> int | None:
        """Order of the ideal at the origin: min over generators; None if zero."""
        if self.is_zero():
            return None
        return min(g.order() for g in self.gens)

    def order_at(self, point) -> int | None:
        if self.is_zero():
            return None
        return min(g.order_at(point) for g in self.gens)


# ---------------------------------------------------------------------------
# elimination: intersection, colon, saturation, radical membership
# ---------------------------------------------------------------------------


def _helper_name(ctx: Context) -> str:
    name = "t0"
    while name in ctx.index:
        name += "t"
    return name


def _eliminate(ctx: Context, ext_gens, n_main: int, budget=None) -> list[Polynomial]:
    """Groebner-eliminate the helper block and contract to the main ring."""
    gb = buchberger(ext_gens, key=elim_key(n_main), budget=budget)
    out = []
    for g in gb:
        if all(all(e == 0 for e in m[n_main:]) for m in g.terms):
            out.append(Polynomial(ctx, {m[:n_main]: c for m, c in g.terms.items()}))
    return out


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """Set-theoretic ideal intersection via a single helper variable."""
    ctx = a.ctx
    if a.is_zero() or b.is_zero():
        return Ideal(ctx, [])
    ext = ctx.extend([_helper_name(ctx)])
    n = ctx.nvars
    lift = lambda p: Polynomial(ext, {m + (0,): c for m, c in p.terms.items()})
    t = ext.var(n)
    gens = [t * lift(g) for g in a.gens] + [(ext.one() - t) * lift(g) for g in b.gens]
    return Ideal(ctx, _eliminate(ctx, gens, n))


def colon(a: Ideal, f: Polynomial) -> Ideal:
    """The colon ideal (a : f) = { g : g*f in a }."""
    if f.is_zero():
        raise PolyError("colon by zero")
    if f.is_unit():
        return a
    meet = intersect(a, Ideal(a.ctx, [f]))
    out = []
    for g in meet.gens:
        q = g.divide_exact(f)
        if q is None:
            raise PolyError("colon division failed")  # cannot happen: g in <f>
        out.append(q)
    return Ideal(a.ctx, out)


def saturate(a: Ideal, f: Polynomial) -> Ideal:
    """The saturation (a : f^infinity), by eliminating t from a + <1 - t*f>."""
    if f.is_zero():
        raise PolyError("saturation by zero")
    if f.is_unit() or a.is_zero():
        return a
    ctx = a.ctx
    ext = ctx.extend([_helper_name(ctx)])
    n = ctx.nvars
    lift = lambda p: Polynomial(ext, {m + (0,): c for m, c in p.terms.items()})
    t = ext.var(n)
    gens = [lift(g) for g in a.gens] + [ext.one() - t * lift(f)]
    return Ideal(ctx, _eliminate(ctx, gens, n))


def radical_contains(a: Ideal, f: Polynomial) -> bool:
    """Whether f vanishes on V(a), i.e. f lies in the radical of a."""
    if f.is_zero():
        return True
    if a.is_zero():
        return False
    return saturate(a, f).is_trivial()


# ---------------------------------------------------------------------------
# dimension
# ---------------------------------------------------------------------------


def dimension(a: Ideal) -> int:
    """Krull dimension of V(a) in affine n-space (-1 if empty, n if a = 0).

    Computed from the leading-term ideal: the dimension equals the largest
    size of a variable subset S meeting the support of no leading monomial.
    """
    n = a.ctx.nvars
    if a.is_zero():
        return n
    if a.is_trivial():
        return -1
    leads = [g.lead_monomial() for g in a.groebner()]
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    from itertools import combinations

    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            sset = set(subset)
            if all(not sup <= sset for sup in supports):
                return size
    return -1  # unreachable: size 0 always succeeds unless the ideal is trivial


# ---------------------------------------------------------------------------
# gcd machinery (subresultant remainder sequences)
# ---------------------------------------------------------------------------


def _main_var(f: Polynomial, g: Polynomial) -> int | None:
    for i in range(f.ctx.nvars - 1, -1, -1):
        if f.degree_in(i) > 0 or g.degree_in(i) > 0:
            return i
    return None


def _coeffs_in(f: Polynomial, i: int) -> dict[int, Polynomial]:
    """View f as a univariate polynomial in x_i with polynomial coefficients."""
    out: dict[int, dict] = {}
    for m, c in f.terms.items():
        d = m[i]
        m0 = m[:i] + (0,) + m[i + 1 :]
        out.setdefault(d, {})[m0] = c
    return {d: Polynomial(f.ctx, terms) for d, terms in out.items()}


def _lc_in(f: Polynomial, i: int) -> Polynomial:
    return _coeffs_in(f, i)[f.degree_in(i)]


def _pseudo_rem(f: Polynomial, g: Polynomial, i: int) -> Polynomial:
    """Pseudo-remainder of f by g with respect to x_i."""
    dg = g.degree_in(i)
    lcg = _lc_in(g, i)
    e = f.degree_in(i) - dg + 1
    xi = f.ctx.var(i)
    while not f.is_zero() and f.degree_in(i) >= dg:
        df = f.degree_in(i)
        s = _lc_in(f, i) * xi ** (df - dg)
        f = lcg * f - s * g
        e -= 1
    return f * (lcg**e) if e > 0 else f


def _content_in(f: Polynomial, i: int) -> Polynomial:
    cs = list(_coeffs_in(f, i).values())
    acc = cs[0]
    for c in cs[1:]:
        acc = poly_gcd(acc, c)
        if acc.is_unit():
            break
    return acc.primitive() if not acc.is_unit() else f.ctx.one()


def _div(p: Polynomial, q: Polynomial) -> Polynomial:
    out = p.divide_exact(q)
    if out is None:
        raise PolyError("inexact division inside gcd computation")
    return out


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Gcd in Q[x_1..x_n], normalized integer-primitive with positive lead."""
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    if f.is_constant() or g.is_constant():
        return f.ctx.one()
    i = _main_var(f, g)
    if i is None:
        return f.ctx.one()
    cf, cg = _content_in(f, i), _content_in(g, i)
    a = _div(f, cf)
    b = _div(g, cg)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    gpart = a.ctx.one()
    h = a.ctx.one()
    while True:
        d = a.degree_in(i) - b.degree_in(i)
        r = _pseudo_rem(a, b, i)
        if r.is_zero():
            break
        if r.degree_in(i) == 0:
            b = a.ctx.one()  # primitive parts are coprime
            break
        a, b = b, _div(r, gpart * h**d)
        gpart = _lc_in(a, i)
        if d >= 1:
            h = _div(gpart**d, h ** (d - 1))
    prim = b if b.is_unit() else _div(b, _content_in(b, i))
    return (poly_gcd(cf, cg) * prim).primitive()


def squarefree_part(f: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of f (char 0)."""
    if f.is_zero():
        return f
    if f.is_constant():
        return f.ctx.one()
    g = f
    for i in range(f.ctx.nvars):
        if f.degree_in(i) > 0:
            g = poly_gcd(g, f.derivative(i))
            if g.is_unit():
                return f.primitive()
    return _div(f, g).primitive()


def gcd_part(a: Ideal) -> Polynomial | None:
    """Squarefree gcd of all generators: the codimension-one part of V(a).

    Returns None when the generators are coprime (no hypersurface component).
    """
    if a.is_zero():
        return None
    acc = a.gens[0]
    for g in a.gens[1:]:
        acc = poly_gcd(acc, g)
        if acc.is_unit():
            return None
    if acc.is_constant():
        return None
    return squarefree_part(acc)
