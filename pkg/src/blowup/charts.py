"""Affine charts of iterated blow-ups and the bookkeeping between them.

Every chart carries the same variable names as the ambient space it came
from; what distinguishes charts is the polynomial map back to their parent.
Blowing up the coordinate subspace V(x_{i1},...,x_{ik}) produces one chart
per choice of pivot i: there the substitution into the parent's coordinates
reads x_j -> x_j * x_i for the other center variables and the pivot
hyperplane V(x_i) is the new exceptional divisor.  Exceptional divisors are
tracked as integer labels attached to coordinate hyperplanes; a blow-up
step allocates a single fresh label shared by all its charts.

Charts are never deleted.  Two sibling charts overlap off the coordinate
hyperplanes, and points are moved between charts symbolically: each chart
knows its coordinates as rational functions of its parent's, transitions
are composed along tree paths, and a point is visible in another chart
exactly when no denominator of the composed transition vanishes on it.
Composing rational functions (rather than walking a numeric point down and
up) is what keeps points on the exceptional locus locatable.
"""

from __future__ import annotations

from fractions import Fraction

from .ideals import poly_gcd
from .polyring import Context, PolyError, Polynomial


class ChartError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """A quotient num/den of polynomials in one context, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, reduce: bool = True):
        if den is None:
            den = num.ctx.one()
        if den.is_zero():
            raise ChartError("zero denominator")
        if reduce and not num.is_zero() and not den.is_unit():
            g = poly_gcd(num, den)
            if not g.is_unit():
                num = num.divide_exact(g)
                den = den.divide_exact(g)
        # normalize: denominator integer-primitive with positive lead
        if not den.is_constant():
            prim = den.primitive()
            scale = den.terms[den.lead_monomial()] / prim.terms[prim.lead_monomial()]
            num = num * (Fraction(1) / scale)
            den = prim
        else:
            num = num * (Fraction(1) / den.constant_value())
            den = den.ctx.one()
        self.num = num
        self.den = den

    @classmethod
    def const(cls, ctx: Context, c) -> "RationalFunction":
        return cls(ctx.const(c))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def evaluate(self, point) -> Fraction | None:
        """Value at a rational point, or None where the function is undefined."""
        d = self.den.evaluate(point)
        if d == 0:
            return None
        return self.num.evaluate(point) / d

    def is_polynomial(self) -> bool:
        return self.den.is_unit()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __str__(self):
        if self.den.is_unit():
            return str(self.num)
        num = f"({self.num})" if len(self.num.terms) > 1 else str(self.num)
        den = f"({self.den})" if len(self.den.terms) > 1 else str(self.den)
        return f"{num}/{den}"

    def __repr__(self):
        return f"RationalFunction({self})"


def poly_at_rationals(p: Polynomial, images: tuple[RationalFunction, ...]) -> RationalFunction:
    """Evaluate a polynomial at a tuple of rational functions."""
    ctx = images[0].num.ctx
    total = RationalFunction(ctx.zero())
    for m, c in p.terms.items():
        term = RationalFunction(ctx.const(c))
        for i, e in enumerate(m):
            for _ in range(e):
                term = term * images[i]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# charts and the tree
# ---------------------------------------------------------------------------


class Chart:
    """One affine patch.  `map_from_parent` rewrites a polynomial expressed
    in the parent's coordinates into this chart's coordinates (substitution
    images of the parent's variables); `coords_in_parent` goes the other way
    as rational functions and is the piece transitions are built from."""

    __slots__ = (
        "id",
        "parent",
        "ctx",
        "map_from_parent",
        "coords_in_parent",
        "divisors",
        "pivot",
        "center_vars",
        "changes",
    )

    def __init__(self, id: int, parent: int | None, ctx: Context):
        self.id = id
        self.parent = parent
        self.ctx = ctx
        self.map_from_parent: tuple[Polynomial, ...] | None = None
        self.coords_in_parent: tuple[RationalFunction, ...] | None = None
        self.divisors: dict[int, int] = {}
        self.pivot: int | None = None
        self.center_vars: tuple[int, ...] | None = None
        self.changes: list[tuple[int, Polynomial]] = []

    def labels(self) -> set[int]:
        return set(self.divisors.values())

    def var_of_label(self, label: int) -> int | None:
        for v, lbl in self.divisors.items():
            if lbl == label:
                return v
        return None

    def exceptional_vars(self) -> tuple[int, ...]:
        return tuple(sorted(self.divisors))

    def pull_from_parent(self, p: Polynomial) -> Polynomial:
        if self.map_from_parent is None:
            raise ChartError("root chart has no parent")
        return p.substitute(self.map_from_parent)

    def __repr__(self):
        return f"Chart(#{self.id}, parent={self.parent}, divisors={self.divisors})"


class ChartTree:
    """The rooted tree of affine charts produced by a run."""

    def __init__(self, ctx: Context):
        self.ctx = ctx
        root = Chart(0, None, ctx)
        self.charts: dict[int, Chart] = {0: root}
        self.children: dict[int, list[int]] = {0: []}
        self._next_chart = 1
        self._next_label = 1

    def __getitem__(self, chart_id: int) -> Chart:
        return self.charts[chart_id]

    @property
    def root(self) -> Chart:
        return self.charts[0]

    def fresh_label(self) -> int:
        lbl = self._next_label
        self._next_label += 1
        return lbl

    def last_label(self) -> int:
        """Highest label allocated so far (0 when none)."""
        return self._next_label - 1

    def preset_divisors(self, variables) -> dict[int, int]:
        """Mark coordinate hyperplanes of the root as pre-existing divisors.

        Only valid before any blow-up; labels are allocated in the order
        given and returned as {variable: label}.
        """
        if len(self.charts) > 1:
            raise ChartError("initial divisors must be set before blowing up")
        for v in variables:
            if not isinstance(v, int) or not 0 <= v < self.ctx.nvars:
                raise ChartError(f"no variable with index {v!r}")
            if v in self.root.divisors:
                raise ChartError(f"variable {self.ctx.names[v]} listed twice")
            self.root.divisors[v] = self.fresh_label()
        return dict(self.root.divisors)

    def frontier(self) -> list[int]:
        return sorted(cid for cid, kids in self.children.items() if not kids)

    def ancestors(self, chart_id: int) -> list[int]:
        """Path [chart_id, ..., 0] up to the root."""
        path = [chart_id]
        while self.charts[path[-1]].parent is not None:
            path.append(self.charts[path[-1]].parent)
        return path

    # -- building ------------------------------------------------------------

    def _new_chart(self, parent_id: int) -> Chart:
        c = Chart(self._next_chart, parent_id, self.ctx)
        self._next_chart += 1
        self.charts[c.id] = c
        self.children[c.id] = []
        self.children[parent_id].append(c.id)
        return c

    def blowup(self, chart_id: int, center_vars, label: int | None = None) -> tuple[int, list[int]]:
        """Blow up V(x_i : i in center_vars); returns (label, chart ids).

        Creates one chart per pivot variable, in increasing variable order.
        A center visible in several charts is one geometric blow-up: pass the
        same `label` to every charts' call so the pieces share one divisor.
        """
        parent = self.charts[chart_id]
        center = tuple(sorted(set(center_vars)))
        if len(center) < 2:
            raise ChartError("a proper blow-up center needs codimension >= 2")
        if self.children[chart_id]:
            raise ChartError(f"chart {chart_id} is not a frontier chart")
        if label is None:
            label = self.fresh_label()
        ids = []
        n = self.ctx.nvars
        for pivot in center:
            child = self._new_chart(chart_id)
            child.pivot = pivot
            child.center_vars = center
            images = []
            coords = []
            xp = self.ctx.var(pivot)
            for j in range(n):
                if j in center and j != pivot:
                    images.append(self.ctx.var(j) * xp)
                    coords.append(RationalFunction(self.ctx.var(j), xp, reduce=False))
                else:
                    images.append(self.ctx.var(j))
                    coords.append(RationalFunction(self.ctx.var(j)))
            child.map_from_parent = tuple(images)
            child.coords_in_parent = tuple(coords)
            # divisors: strict transforms keep their variable and label; the
            # pivot hyperplane becomes the fresh exceptional divisor, and any
            # old divisor that sat on the pivot variable has empty strict
            # transform here.
            child.divisors = {v: l for v, l in parent.divisors.items() if v != pivot}
            child.divisors[pivot] = label
            ids.append(child.id)
        return label, ids

    def identity_blowup(self, chart_id: int, var: int, label: int | None = None) -> tuple[int, int]:
        """Blow up the hypersurface V(x_var): one chart, identity map,
        fresh label on V(x_var) replacing any label already there."""
        parent = self.charts[chart_id]
        if self.children[chart_id]:
            raise ChartError(f"chart {chart_id} is not a frontier chart")
        if label is None:
            label = self.fresh_label()
        child = self._new_chart(chart_id)
        child.pivot = var
        child.center_vars = (var,)
        child.map_from_parent = self.ctx.variables()
        child.coords_in_parent = tuple(
            RationalFunction(v) for v in self.ctx.variables()
        )
        child.divisors = {v: l for v, l in parent.divisors.items() if v != var}
        child.divisors[var] = label
        return label, child.id

    def change_coordinates(self, chart_id: int, var: int, shift: Polynomial) -> None:
        """Adopt the new coordinate x_var' = x_var + shift on a chart.

        `shift` must not involve x_var, and x_var must not carry a divisor
        label (divisors stay coordinate hyperplanes).  Polynomials written in
        the old coordinates are rewritten by substituting x_var - shift for
        x_var; the driver applies the same rewriting to its state ideals.
        """
        chart = self.charts[chart_id]
        if shift.degree_in(var) > 0:
            raise ChartError("shift may not involve the variable being changed")
        if var in chart.divisors:
            raise ChartError("cannot change a coordinate carrying a divisor")
        if chart.map_from_parent is None:
            # a change on the root: its "parent" is the input coordinate
            # system, so start from the identity and rewrite that
            chart.map_from_parent = self.ctx.variables()
            chart.coords_in_parent = tuple(
                RationalFunction(v) for v in self.ctx.variables()
            )
        images = list(self.ctx.variables())
        images[var] = self.ctx.var(var) - shift
        chart.map_from_parent = tuple(
            p.substitute(images) for p in chart.map_from_parent
        )
        # the new coordinate, as a function of the parent's coordinates
        coords = list(chart.coords_in_parent)
        coords[var] = coords[var] + poly_at_rationals(shift, chart.coords_in_parent)
        chart.coords_in_parent = tuple(coords)
        chart.changes.append((var, shift))

    # -- moving between charts -------------------------------------------------

    def rewrite_with_change(self, var: int, shift: Polynomial, p: Polynomial) -> Polynomial:
        images = list(self.ctx.variables())
        images[var] = self.ctx.var(var) - shift
        return p.substitute(images)

    def map_from_root(self, chart_id: int) -> tuple[Polynomial, ...]:
        """Substitution images of the root's variables in this chart."""
        path = self.ancestors(chart_id)[::-1]  # root ... chart
        images = tuple(self.ctx.variables())
        for cid in path:
            m = self.charts[cid].map_from_parent
            if m is None:
                continue  # an unchanged root is the input coordinate system
            images = tuple(p.substitute(m) for p in images)
        return images

    def pull_to(self, chart_id: int, p_root: Polynomial) -> Polynomial:
        return p_root.substitute(self.map_from_root(chart_id))

    def transition(self, src: int, dst: int) -> tuple[RationalFunction, ...]:
        """The coordinates of chart `src` as rational functions on chart `dst`."""
        up_src = self.ancestors(src)
        up_dst = self.ancestors(dst)
        common = set(up_src) & set(up_dst)
        lca = next(c for c in up_src if c in common)
        # src coordinates as rational functions of lca coordinates
        funcs = tuple(RationalFunction(v) for v in self.ctx.variables())
        for cid in up_src[: up_src.index(lca)]:
            parent_coords = self.charts[cid].coords_in_parent
            lifted = []
            for f in funcs:
                a = poly_at_rationals(f.num, parent_coords)
                b = poly_at_rationals(f.den, parent_coords)
                lifted.append(RationalFunction(a.num * b.den, a.den * b.num))
            funcs = tuple(lifted)
        # then push down from lca to dst with polynomial substitutions
        down = up_dst[: up_dst.index(lca)][::-1]
        for cid in down:
            m = self.charts[cid].map_from_parent
            funcs = tuple(
                RationalFunction(f.num.substitute(m), f.den.substitute(m))
                for f in funcs
            )
        return funcs

    def locate(self, src: int, point) -> dict[int, tuple[Fraction, ...] | None]:
        """Coordinates of a point of chart `src` in every chart of the tree.

        A chart maps to None where the point is not visible, which shows up
        as a vanishing denominator in the composed transition.
        """
        point = tuple(Fraction(p) for p in point)
        out: dict[int, tuple[Fraction, ...] | None] = {}
        for cid in sorted(self.charts):
            if cid == src:
                out[cid] = point
                continue
            funcs = self.transition(cid, src)
            vals = [f.evaluate(point) for f in funcs]
            out[cid] = None if any(v is None for v in vals) else tuple(vals)
        return out
