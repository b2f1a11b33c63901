"""The resolution loop: center selection, descent in dimension, bookkeeping.

A run tracks a registry of pairs (ideal, bound), each restricted to the
intersection of its maximal-contact hyperplanes and stored per chart.  The
outer loop on a pair computes the invariant t = (w-ord, n); while w-ord is
positive it builds the companion pair whose singular locus is exactly the
top locus Max t, peels off codimension-one components of that locus
(blowing them up directly, or dividing them out when they are not
coordinate subspaces), and otherwise restricts to a maximal-contact
hypersurface and recurses one dimension down.  When w-ord reaches zero the
remaining ideal is a monomial in exceptional coordinates times a unit and
the centers come from the exponent combinatorics alone.

Every blow-up transforms every registered pair by its own controlled
transform, so the whole stack of restrictions stays coherent; a pair whose
contact hyperplane becomes the exceptional divisor simply has no points in
that chart and is dropped there.  The concatenated entries (t values, or
monomial-case values once w-ord is zero) padded with the infinity marker
form the invariant vector that must drop lexicographically at every single
step - this is asserted, not assumed.

The run emits a trace: the chart tree, every coordinate change, one node
per live chart per stage holding the pair's state, exponents, invariant
vector and the center applied there, and a result block (principalization
exponents, or the detection data for embedded desingularization).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .charts import ChartTree
from .contact import (
    coefficient_bound,
    coefficient_ideal,
    find_maximal_contact,
)
from .delta import delta_power
from .errors import (
    BudgetExceeded,
    CenterNotCoordinate,
    DesingNotReached,
    InternalCheckFailed,
    ResolutionError,
)
from .ideals import Ideal, _coeffs_in, dimension, gcd_part, saturate, set_gb_budget
from .invariants import (
    INF,
    GammaEntry,
    InvariantVector,
    TEntry,
    max_t_ideal,
    max_word_chart,
    max_word_ideal,
    maximizing_subsets,
    smooth_marker,
)
from .monomial import exponent_after, max_h_chart
from .polyring import Context, Polynomial
from .transforms import (
    controlled_transform,
    divisorial_blowdown,
    exceptional_exponents,
    reduced_part,
    saturate_all_exceptional,
)

DEFAULT_MAX_STEPS = 64


class _Detected(Exception):
    """Internal: the invariant vector reached the smooth-point marker."""


class PairState:
    """A pair (ideal, bound) tracked per chart, cut to its contact slice.

    `contacts[chart]` holds the coordinate indices whose intersection the
    pair lives on (empty for the ambient pair).  Divisors belonging to the
    pair are those with labels above `birth_label`; labels at or below it
    existed before the pair and are invisible to its own bookkeeping.
    """

    __slots__ = (
        "bound",
        "states",
        "contacts",
        "birth_label",
        "role",
        "last_w",
        "last_t_key",
        "last_gamma_key",
        "eminus_max",
    )

    def __init__(self, bound, states, contacts, birth_label, role):
        self.bound = int(bound)
        self.states: dict[int, Ideal] = dict(states)
        self.contacts: dict[int, frozenset] = {
            cid: frozenset(v) for cid, v in contacts.items()
        }
        self.birth_label = int(birth_label)
        self.role = role
        self.last_w: Fraction | None = None
        self.last_t_key = None
        self.last_gamma_key = None
        self.eminus_max = int(birth_label)

    def __repr__(self):
        return f"PairState({self.role}, b={self.bound}, charts={sorted(self.states)})"


class Resolver:
    """One resolution run over a chart tree."""

    def __init__(
        self,
        ctx: Context,
        gens,
        bound: int = 1,
        *,
        initial_divisors=(),
        mode: str = "principalize",
        max_steps: int = DEFAULT_MAX_STEPS,
        gb_budget: int | None = None,
    ):
        if mode not in ("principalize", "desing"):
            raise ValueError(f"unknown mode {mode!r}")
        if bound < 1:
            raise ValueError("the bound must be a positive integer")
        self.ctx = ctx
        self.mode = mode
        self.max_steps = max_steps
        if gb_budget is not None:
            set_gb_budget(gb_budget)
        self.tree = ChartTree(ctx)
        if initial_divisors:
            self.tree.preset_divisors(initial_divisors)
        self.input_gens = tuple(gens)
        ideal = Ideal(ctx, list(gens))
        if ideal.is_zero():
            raise ValueError("the zero ideal has no resolution data")
        self.top = PairState(bound, {0: ideal}, {0: frozenset()}, 0, "object")
        self.registry: list[PairState] = [self.top]
        self.entry_stack: list = []
        self.nodes: list[dict] = []
        self.changes: list[dict] = []
        self.descents: list[dict] = []
        self.divisorial_history: list[tuple[int, int, Polynomial]] = []
        self.stage = 0
        self.codim = 0 if ideal.is_trivial() else ctx.nvars - dimension(ideal)
        self.detect = (
            smooth_marker(self.codim, ctx.nvars + 1)
            if mode == "desing" and self.codim > 0
            else None
        )
        self._ran = False

    # -- top level -----------------------------------------------------------

    def run(self) -> dict:
        if self._ran:
            raise RuntimeError("a Resolver instance runs once")
        self._ran = True
        status = "resolved"
        error = None
        try:
            self._resolve(self.top)
            if self.mode == "desing":
                raise DesingNotReached(
                    "the singular locus emptied before the invariant reached "
                    "the smooth value; is the input reduced?"
                )
        except _Detected:
            status = "desingularized"
        except ResolutionError as exc:
            status = f"aborted:{exc.code}"
            error = exc
        self._record_nodes({})
        result: dict = {"status": status}
        divisorial_factors: dict[str, list] = {}
        if status == "resolved":
            principal = {}
            for cid in sorted(self.top.states):
                exps, factors = self._principal_cert(cid)
                principal[str(cid)] = exps
                if factors:
                    divisorial_factors[str(cid)] = factors
            result["principal"] = principal
        else:
            result["principal"] = None
        result["desing"] = self._desing_block() if status == "desingularized" else None
        if divisorial_factors:
            result["divisorial_factors"] = divisorial_factors
        if error is not None:
            result["error"] = error.payload()
        return {
            "variables": list(self.ctx.names),
            "charts": self._charts_block(),
            "changes": self.changes,
            "descents": self.descents,
            "nodes": self.nodes,
            "result": result,
        }

    # -- the descent ----------------------------------------------------------

    def _resolve(self, ps: PairState) -> None:
        # on an abort the stack is left as-is, so the flushed trace shows the
        # invariant vector of the failing moment; it is popped only on the
        # regular way out
        slot = len(self.entry_stack)
        self.entry_stack.append(INF)
        while True:
            wd = self._word_data(ps)
            if wd is None:
                self.entry_stack.pop()
                return
            bprime, data = wd
            w = Fraction(bprime, ps.bound)
            if ps.last_w is None or w < ps.last_w:
                # the old-divisor watermark resets whenever max w-ord drops
                ps.eminus_max = self.tree.last_label()
            elif w > ps.last_w:
                raise InternalCheckFailed(f"max w-ord rose from {ps.last_w} to {w}")
            ps.last_w = w
            if bprime == 0:
                self._gamma_step(ps, slot, data)
                continue
            t, n0, maximizing, maxword = self._t_value(ps, bprime, data)
            if ps.last_t_key is not None and not t.key() < ps.last_t_key:
                raise InternalCheckFailed(
                    f"max t failed to drop: {t} after key {ps.last_t_key}"
                )
            ps.last_t_key = t.key()
            self.entry_stack[slot] = t
            companion = self._companion(ps, bprime, data, n0, maximizing, maxword)
            self.registry.append(companion)
            try:
                self._resolve_companion(companion)
            finally:
                self.registry.remove(companion)

    def _word_data(self, ps: PairState):
        """Per chart with nonempty singular locus: (Jbar, exponents, Sing
        ideal); plus the global max w-ord numerator.  None when resolved."""
        data: dict[int, tuple[Ideal, dict[int, int], Ideal]] = {}
        exps_seen: dict[int, int] = {}
        for cid in sorted(ps.states):
            base = delta_power(ps.states[cid], ps.bound - 1)
            sing = self._with_contacts(base, ps, cid)
            if sing.is_trivial():
                continue
            chart = self.tree.charts[cid]
            own = {l for l in chart.divisors.values() if l > ps.birth_label}
            jbar, exps = reduced_part(ps.states[cid], chart, labels=own)
            for label, e in exps.items():
                if exps_seen.setdefault(label, e) != e:
                    raise InternalCheckFailed(
                        f"divisor {label} has different exponents in different charts"
                    )
            data[cid] = (jbar, exps, sing)
        if not data:
            return None
        bprime = max(max_word_chart(jb, s) for (jb, _, s) in data.values())
        return bprime, data

    def _with_contacts(self, base: Ideal, ps: PairState, cid: int) -> Ideal:
        cts = ps.contacts[cid]
        if not cts:
            return base
        return base + Ideal(self.ctx, [self.ctx.var(v) for v in sorted(cts)])

    def _on_slice(self, a: Ideal, cts) -> Ideal:
        """Normalize a state onto its contact slice by zeroing the contact
        variables.  Orders, derivative powers, and gcd parts computed from
        the normalized generators then agree with the intrinsic ones on the
        slice; generators lying in the contact ideal impose nothing there
        and are dropped."""
        if not cts or not any(g.degree_in(v) for g in a.gens for v in cts):
            return a
        images = list(self.ctx.variables())
        for v in cts:
            images[v] = self.ctx.zero()
        out = Ideal(self.ctx, [g.substitute(images) for g in a.gens])
        if out.is_zero() and not a.is_zero():
            raise InternalCheckFailed("state vanished on its contact slice")
        return out

    def _t_value(self, ps, bprime, data):
        maxword = {
            cid: max_word_ideal(jb, s, bprime) for cid, (jb, _, s) in data.items()
        }
        evars = {}
        for cid in data:
            chart = self.tree.charts[cid]
            evars[cid] = {
                l: v
                for v, l in chart.divisors.items()
                if ps.birth_label < l <= ps.eminus_max
            }
        n0, maximizing = maximizing_subsets(maxword, evars)
        return TEntry(Fraction(bprime, ps.bound), n0), n0, maximizing, maxword

    def _companion(self, ps, bprime, data, n0, maximizing, maxword) -> PairState:
        """The simple pair whose singular locus is Max t."""
        b = ps.bound
        divided = any(e for (_, exps, _) in data.values() for e in exps.values())
        if not divided:
            c = max(b, bprime)
        else:
            c = lcm(b, bprime)
        states = {}
        for cid, (jbar, _, _) in data.items():
            if not divided:
                a = ps.states[cid]
            else:
                a = ps.states[cid] ** (c // b) + jbar ** (c // bprime)
            if n0 > 0:
                chart = self.tree.charts[cid]
                vars_of = {l: v for v, l in chart.divisors.items()}
                a = a + max_t_ideal(maxword[cid], maximizing, vars_of) ** c
            states[cid] = self._on_slice(a, ps.contacts[cid])
        companion = PairState(
            c,
            states,
            {cid: ps.contacts[cid] for cid in states},
            self.tree.last_label(),
            "companion",
        )
        for cid in sorted(states):
            base = delta_power(states[cid], c - 1)
            if self._with_contacts(base, companion, cid).is_trivial():
                continue
            cvars = Ideal(
                self.ctx, [self.ctx.var(v) for v in sorted(companion.contacts[cid])]
            )
            got = max_word_chart(states[cid], cvars)
            if got != c:
                raise InternalCheckFailed(
                    f"companion in chart {cid} has max order {got}, bound {c}"
                )
        return companion

    def _resolve_companion(self, companion: PairState) -> None:
        while True:
            live: dict[int, Ideal] = {}
            for cid in sorted(companion.states):
                base = delta_power(companion.states[cid], companion.bound - 1)
                if not self._with_contacts(base, companion, cid).is_trivial():
                    live[cid] = base
            if not live:
                return
            hs = {}
            for cid, base in live.items():
                h = gcd_part(base)
                if h is not None:
                    hs[cid] = h
            if hs:
                self._codim_one_step(companion, hs)
                continue
            self._descend(companion)
            for cid in sorted(companion.states):
                base = delta_power(companion.states[cid], companion.bound - 1)
                if not self._with_contacts(base, companion, cid).is_trivial():
                    raise InternalCheckFailed(
                        "companion singular locus survived its descent"
                    )
            return

    def _descend(self, companion: PairState) -> None:
        states = {}
        contacts = {}
        for cid in sorted(companion.states):
            base = delta_power(companion.states[cid], companion.bound - 1)
            if self._with_contacts(base, companion, cid).is_trivial():
                continue
            chart = self.tree.charts[cid]
            mc = find_maximal_contact(
                base,
                exceptional=set(chart.divisors),
                excluded=set(companion.contacts[cid]),
            )
            if mc.needs_change:
                self._apply_change(cid, mc.var, mc.shift)
            contacts[cid] = companion.contacts[cid] | {mc.var}
            states[cid] = self._on_slice(
                coefficient_ideal(companion.states[cid], companion.bound, mc.var),
                contacts[cid],
            )
            self.descents.append(
                {
                    "stage": self.stage,
                    "chart": cid,
                    "variable": self.ctx.names[mc.var],
                    "coefficient": [str(g) for g in states[cid].gens],
                    "bound": coefficient_bound(companion.bound),
                }
            )
        restriction = PairState(
            coefficient_bound(companion.bound),
            states,
            contacts,
            self.tree.last_label(),
            "restriction",
        )
        self.registry.append(restriction)
        try:
            self._resolve(restriction)
        finally:
            self.registry.remove(restriction)

    # -- codimension-one centers ----------------------------------------------

    def _codim_one_step(self, companion: PairState, hs: dict[int, Polynomial]) -> None:
        pieces = {}
        coordinate_everywhere = True
        for cid in sorted(hs):
            h = hs[cid]
            chart = self.tree.charts[cid]
            cts = companion.contacts[cid]
            var, shift = _coordinate_form(h, set(chart.divisors), cts)
            if var is None:
                coordinate_everywhere = False
                if cts:
                    raise CenterNotCoordinate(
                        f"codimension-one center {h} in chart {cid} sits inside a "
                        "contact slice and is not a coordinate"
                    )
            else:
                pieces[cid] = (
                    tuple(sorted(cts | {var})),
                    (var, shift) if shift is not None else None,
                )
        if coordinate_everywhere:
            self._blow_step(pieces)
            return
        # the divisor is not a coordinate subspace in at least one chart, so
        # no labelled blow-up can represent it; but blowing up a hypersurface
        # is an isomorphism, so divide it out everywhere instead (no label).
        if any(companion.contacts[cid] for cid in hs):
            raise CenterNotCoordinate(
                "codimension-one center inside a contact slice is not a coordinate"
            )
        self._divisorial_step(hs)

    # -- the monomial phase -----------------------------------------------------

    def _gamma_step(self, ps: PairState, slot: int, data) -> None:
        best: GammaEntry | None = None
        for cid in sorted(data):
            _, exps, _ = data[cid]
            g = max_h_chart(exps, ps.bound)
            if g is None:
                raise InternalCheckFailed(
                    f"monomial case in chart {cid} with no admissible exponent subset"
                )
            if best is None or best.key() < g.key():
                best = g
        if ps.last_gamma_key is not None and not best.key() < ps.last_gamma_key:
            raise InternalCheckFailed(f"monomial value failed to drop: {best}")
        ps.last_gamma_key = best.key()
        self.entry_stack[slot] = best
        ell = set(best.ell)
        pieces = {}
        predicted = exponent_after(_merged_exponents(data, ell), best.ell, ps.bound)
        for cid in sorted(data):
            chart = self.tree.charts[cid]
            vars_of = {l: v for v, l in chart.divisors.items()}
            if not ell <= set(vars_of):
                continue
            vars_ = tuple(sorted({vars_of[l] for l in ell} | ps.contacts[cid]))
            pieces[cid] = (vars_, None)
        if not pieces:
            raise InternalCheckFailed("maximal monomial stratum visible in no chart")
        label, children = self._blow_step(pieces)
        # the fresh divisor's exponent must match the combinatorial prediction
        for kids in children.values():
            for child in kids:
                st = ps.states.get(child)
                if st is None:
                    continue
                chart = self.tree.charts[child]
                var = chart.var_of_label(label)
                got = min(g.var_order(var) for g in st.gens)
                if got != predicted:
                    raise InternalCheckFailed(
                        f"fresh divisor exponent {got} != predicted {predicted}"
                    )

    # -- step application -------------------------------------------------------

    def _blow_step(self, pieces: dict[int, tuple]) -> tuple[int, dict[int, list[int]]]:
        self._pre_step_checks()
        centers = {}
        for cid in sorted(pieces):
            vars_, change = pieces[cid]
            if change is not None:
                self._apply_change(cid, change[0], change[1])
                change_doc = {
                    self.ctx.names[change[0]]: str(self.ctx.var(change[0]) + change[1])
                }
            else:
                change_doc = None
            centers[cid] = {
                "vars": [self.ctx.names[v] for v in vars_],
                "change": change_doc,
            }
        self._record_nodes(centers)
        self.stage += 1
        label = self.tree.fresh_label()
        children: dict[int, list[int]] = {}
        for cid in sorted(pieces):
            vars_, _ = pieces[cid]
            if len(vars_) == 1:
                _, child = self.tree.identity_blowup(cid, vars_[0], label)
                kids = [child]
            else:
                _, kids = self.tree.blowup(cid, vars_, label)
            children[cid] = kids
            self._transform_registry(cid, kids)
        return label, children

    def _divisorial_step(self, hs: dict[int, Polynomial]) -> None:
        self._pre_step_checks()
        centers = {
            cid: {
                "vars": [],
                "change": None,
                "hypersurface": str(h),
                "bound": self.top.bound,
            }
            for cid, h in hs.items()
        }
        self._record_nodes(centers)
        self.stage += 1
        for cid in sorted(hs):
            h = hs[cid]
            self.divisorial_history.append((self.stage, cid, h))
            for obj in self.registry:
                st = obj.states.get(cid)
                if st is None:
                    continue
                obj.states[cid] = divisorial_blowdown(st, h, obj.bound)

    def _pre_step_checks(self) -> None:
        if self.detect is not None and self._vector() == self.detect:
            raise _Detected()
        if self.stage >= self.max_steps:
            raise BudgetExceeded("blow-up steps", self.max_steps)

    def _transform_registry(self, cid: int, children: list[int]) -> None:
        for obj in self.registry:
            st = obj.states.pop(cid, None)
            if st is None:
                continue
            cts = obj.contacts.pop(cid)
            for child_id in children:
                chart = self.tree.charts[child_id]
                if chart.pivot in cts:
                    # the pair's slice has empty strict transform here
                    continue
                obj.states[child_id] = self._on_slice(
                    controlled_transform(st, chart, obj.bound), cts
                )
                obj.contacts[child_id] = cts

    def _apply_change(self, cid: int, var: int, shift: Polynomial) -> None:
        self.tree.change_coordinates(cid, var, shift)
        images = list(self.ctx.variables())
        images[var] = self.ctx.var(var) - shift
        for obj in self.registry:
            st = obj.states.get(cid)
            if st is not None:
                obj.states[cid] = self._on_slice(
                    Ideal(self.ctx, [g.substitute(images) for g in st.gens]),
                    obj.contacts[cid],
                )
        self.changes.append(
            {
                "stage": self.stage,
                "chart": cid,
                "var": self.ctx.names[var],
                "shift": str(shift),
            }
        )

    # -- trace ------------------------------------------------------------------

    def _vector(self) -> InvariantVector:
        return InvariantVector.padded(self.entry_stack, self.ctx.nvars + 1)

    def _record_nodes(self, centers: dict[int, dict]) -> None:
        vec = str(self._vector())
        for cid in sorted(self.top.states):
            chart = self.tree.charts[cid]
            st = self.top.states[cid]
            exps = exceptional_exponents(st, chart)
            texps = exceptional_exponents(self._total_in_chart(cid), chart)
            self.nodes.append(
                {
                    "chart": cid,
                    "stage": self.stage,
                    "J": [str(g) for g in st.gens],
                    "b": self.top.bound,
                    "a": {str(l): exps[l] for l in sorted(exps)},
                    "c": {str(l): texps[l] for l in sorted(texps)},
                    "invariant": vec,
                    "center": centers.get(cid),
                }
            )

    def _total_in_chart(self, cid: int) -> Ideal:
        """The input ideal pulled back from the root (total transform)."""
        return Ideal(self.ctx, [self.tree.pull_to(cid, g) for g in self.input_gens])

    def _principal_cert(self, cid: int) -> tuple[dict, list]:
        """Exponents of the total transform along each divisor, checked: the
        total transform divided by the divisor monomial and by the pulled-in
        equations of any divided-out hypersurface centers must be trivial."""
        chart = self.tree.charts[cid]
        residual, exps = reduced_part(self._total_in_chart(cid), chart)
        factors = []
        for _, src, h in self.divisorial_history:
            if src != cid and src not in self.tree.ancestors(cid):
                continue
            hp = self._pull_down(src, cid, h)
            power = 0
            while True:
                divided = [g.divide_exact(hp) for g in residual.gens]
                if any(q is None for q in divided):
                    break
                residual = Ideal(self.ctx, divided)
                power += 1
            if power:
                factors.append({"hypersurface": str(hp), "power": power})
        if not residual.is_trivial():
            raise InternalCheckFailed(
                f"chart {cid}: total transform is not exceptional-monomial "
                f"times a unit; residual {[str(g) for g in residual.gens]}"
            )
        return {str(l): exps[l] for l in sorted(exps)}, factors

    def _charts_block(self) -> list[dict]:
        out = []
        for cid in sorted(self.tree.charts):
            ch = self.tree.charts[cid]
            if ch.map_from_parent is None:
                mp = {}
            else:
                mp = {
                    self.ctx.names[i]: str(img)
                    for i, img in enumerate(ch.map_from_parent)
                }
            out.append(
                {
                    "id": cid,
                    "parent": ch.parent,
                    "pivot": None if ch.pivot is None else self.ctx.names[ch.pivot],
                    "map": mp,
                    "divisors": [
                        {"label": l, "var": self.ctx.names[v]}
                        for v, l in sorted(ch.divisors.items(), key=lambda kv: kv[1])
                    ],
                }
            )
        return out

    def _strict_in_chart(self, cid: int) -> Ideal:
        """Strict transform of the input from scratch: pull back, then
        saturate by every exceptional divisor, labelled or divided out."""
        chart = self.tree.charts[cid]
        strict = saturate_all_exceptional(self._total_in_chart(cid), chart)
        for _, src, h in self.divisorial_history:
            if src == cid or src in self.tree.ancestors(cid):
                strict = saturate(strict, self._pull_down(src, cid, h))
        return strict

    def _pull_down(self, src: int, dst: int, p: Polynomial) -> Polynomial:
        path = self.tree.ancestors(dst)
        if src not in path:
            raise InternalCheckFailed("pull-down requested across branches")
        for cid in reversed(path[: path.index(src)]):
            p = p.substitute(self.tree.charts[cid].map_from_parent)
        return p

    def _desing_block(self) -> dict:
        strict = {}
        smooth = {}
        crossings = {}
        for cid in sorted(self.top.states):
            chart = self.tree.charts[cid]
            s = self._strict_in_chart(cid)
            strict[str(cid)] = [str(g) for g in s.gens]
            smooth[str(cid)] = _is_smooth(s)
            meets = []
            for v, l in sorted(chart.divisors.items(), key=lambda kv: kv[1]):
                if s.is_trivial():
                    break
                if not (s + Ideal(self.ctx, [self.ctx.var(v)])).is_trivial():
                    meets.append(l)
            crossings[str(cid)] = meets
        return {
            "stage": self.stage,
            "strict": strict,
            "smooth": smooth,
            "crossings": crossings,
        }


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _coordinate_form(h: Polynomial, divisors: set, contacts) -> tuple:
    """Express V(h) as a (translated) coordinate hyperplane if possible.

    Returns (var, None) when h is already a scalar multiple of a variable,
    (var, shift) when a translation var -> var + shift straightens it, and
    (None, None) otherwise.  Divisor coordinates must not move, so they only
    qualify shift-free.
    """
    ctx = h.ctx
    for v in range(ctx.nvars):
        mono = tuple(1 if j == v else 0 for j in range(ctx.nvars))
        if set(h.terms) == {mono}:
            return v, None
    for v in range(ctx.nvars):
        if v in divisors or v in contacts:
            continue
        if h.degree_in(v) != 1:
            continue
        coeffs = _coeffs_in(h, v)
        lead = coeffs[1]
        if not lead.is_constant():
            continue
        rest = coeffs.get(0)
        shift = (
            ctx.zero()
            if rest is None
            else rest * (Fraction(1) / lead.constant_value())
        )
        if shift.is_zero():
            return v, None
        return v, shift
    return None, None


def _merged_exponents(data, labels) -> dict[int, int]:
    merged: dict[int, int] = {}
    for _, exps, _ in data.values():
        for l in labels:
            if l in exps:
                merged[l] = exps[l]
    missing = set(labels) - set(merged)
    if missing:
        raise InternalCheckFailed(f"no chart shows exponents for divisors {missing}")
    return merged


def _is_smooth(strict: Ideal) -> bool:
    """Jacobian criterion at desk scale: the ideal plus its r x r minors has
    empty zero set, r being the codimension."""
    if strict.is_trivial():
        return True
    ctx = strict.ctx
    r = ctx.nvars - dimension(strict)
    gens = strict.groebner()
    from itertools import combinations

    minors = []
    for rows in combinations(range(len(gens)), r):
        for cols in combinations(range(ctx.nvars), r):
            minors.append(_det([[gens[i].derivative(j) for j in cols] for i in rows]))
    return (strict + Ideal(ctx, minors)).is_trivial()


def _det(m: list[list[Polynomial]]) -> Polynomial:
    if len(m) == 1:
        return m[0][0]
    ctx = m[0][0].ctx
    out = ctx.zero()
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def principalize(ctx, gens, bound=1, **options) -> dict:
    """Resolve (ideal, bound): blow up until the controlled transform is
    trivial everywhere; the total transform is then exceptional monomials
    times units.  Returns the trace."""
    return Resolver(ctx, gens, bound, mode="principalize", **options).run()


def embedded_desing(ctx, gens, **options) -> dict:
    """Principalize, stopping at the stage where the invariant vector equals
    the smooth marker; the strict transform is then smooth and transversal
    to the exceptional divisors."""
    return Resolver(ctx, gens, 1, mode="desing", **options).run()
