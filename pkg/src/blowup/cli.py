"""Command-line front end: problem input, run control, and trace output.

A problem spec is a JSON object::

    {
      "variables": ["x", "y"],
      "generators": ["x^2 - y^3"],
      "bound": 1,
      "initial_divisors": ["x"],
      "budgets": {"max_steps": 64, "gb_budget": 20000}
    }

`variables` and `generators` are required; the rest are optional.
Polynomials use the same grammar everywhere: integer or rational
coefficients, `^` for powers, explicit `*` for products.

Commands:

  maxord        print the maximal order m of the input ideal and the
                generators of Delta^(m-1)(J), whose zero set is the locus
                where that order is attained
  singlocus     print generators of Delta^(b-1)(J), the equations of
                Sing(J, b) for the declared bound
  principalize  resolve (J, 1): make the pulled-back ideal a monomial in
                exceptional coordinates, with a unit-residual certificate
  desing        embedded desingularization of V(J): stop at the stage
                where the invariant vector reaches the smooth marker
  resolve       resolve (J, b) for the declared or given bound
  verify        audit a trace file: replay transforms, divisions,
                exponents, and invariant descent recorded in it

Exit status: 0 on success (full resolution, detection, or a passing
audit), 2 on a typed abort or a failed audit (the partial trace is still
written), 1 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .delta import delta_power, max_order
from .driver import DEFAULT_MAX_STEPS, Resolver
from .ideals import Ideal
from .invariants import parse_vector
from .polyring import Context, PolyError


class InputError(Exception):
    """Unusable spec or trace file; reported on stderr with exit 1."""


class AuditFailure(Exception):
    """A trace failed one of the auditor's checks; exit 2."""


# ---------------------------------------------------------------------------
# problem specs
# ---------------------------------------------------------------------------


def _load_json(path: str, kind: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {kind} file: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{kind} file is not valid JSON: {exc}")
    if not isinstance(doc, dict) or not doc:
        raise InputError(f"{kind} file must hold a non-empty JSON object")
    return doc


def _load_spec(path: str):
    doc = _load_json(path, "spec")
    variables = doc.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) and v for v in variables)
    ):
        raise InputError("spec needs a non-empty list of variable names")
    if len(set(variables)) != len(variables):
        raise InputError("variable names must be distinct")
    gens_text = doc.get("generators")
    if (
        not isinstance(gens_text, list)
        or not gens_text
        or not all(isinstance(g, str) for g in gens_text)
    ):
        raise InputError("spec needs a non-empty list of generator strings")
    try:
        ctx = Context(variables)
        gens = [ctx.parse(g) for g in gens_text]
    except PolyError as exc:
        raise InputError(str(exc))
    bound = doc.get("bound", 1)
    if not isinstance(bound, int) or bound < 1:
        raise InputError("the bound must be a positive integer")
    divisors = doc.get("initial_divisors", [])
    if not isinstance(divisors, list) or not all(
        isinstance(d, str) for d in divisors
    ):
        raise InputError("initial_divisors must be a list of variable names")
    try:
        divisor_indices = tuple(variables.index(d) for d in divisors)
    except ValueError:
        raise InputError("initial_divisors must name declared variables")
    if len(set(divisor_indices)) != len(divisor_indices):
        raise InputError("initial_divisors must be distinct")
    budgets = doc.get("budgets", {})
    if not isinstance(budgets, dict):
        raise InputError("budgets must be an object")
    return ctx, gens, bound, divisor_indices, budgets


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# static queries
# ---------------------------------------------------------------------------


def _cmd_maxord(args) -> int:
    ctx, gens, _, _, _ = _load_spec(args.spec)
    ideal = Ideal(ctx, gens)
    if ideal.is_zero():
        raise InputError("the zero ideal has no finite order")
    m = max_order(ideal)
    locus = delta_power(ideal, m - 1) if m >= 1 else ideal
    if args.format == "json":
        doc = {
            "max_order": m,
            "power": max(m - 1, 0),
            "generators": [str(g) for g in locus.gens],
        }
        _write_output(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = [f"max_order: {m}", f"Delta^{max(m - 1, 0)} generators:"]
        lines += [f"  {g}" for g in locus.gens]
        _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_singlocus(args) -> int:
    ctx, gens, bound, _, _ = _load_spec(args.spec)
    ideal = Ideal(ctx, gens)
    if ideal.is_zero():
        raise InputError("the zero ideal has no singular locus data")
    locus = delta_power(ideal, bound - 1)
    empty = locus.is_trivial()
    if args.format == "json":
        doc = {
            "bound": bound,
            "empty": empty,
            "generators": [str(g) for g in locus.gens],
        }
        _write_output(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = [f"bound: {bound}", f"empty: {'yes' if empty else 'no'}"]
        lines.append("Sing generators:")
        lines += [f"  {g}" for g in locus.gens]
        _write_output("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# resolution runs
# ---------------------------------------------------------------------------


def _run_resolver(args, command: str) -> int:
    ctx, gens, spec_bound, divisors, budgets = _load_spec(args.spec)
    if command == "resolve":
        bound = args.bound if args.bound is not None else spec_bound
        if bound < 1:
            raise InputError("the bound must be a positive integer")
    else:
        if spec_bound != 1:
            raise InputError(
                f"{command} works with bound 1; use `resolve --bound {spec_bound}`"
            )
        bound = 1
    mode = "desing" if command == "desing" else "principalize"
    max_steps = args.max_steps
    if max_steps is None:
        max_steps = budgets.get("max_steps", DEFAULT_MAX_STEPS)
    gb_budget = args.gb_budget
    if gb_budget is None:
        gb_budget = budgets.get("gb_budget")
    try:
        resolver = Resolver(
            ctx,
            gens,
            bound,
            initial_divisors=divisors,
            mode=mode,
            max_steps=max_steps,
            gb_budget=gb_budget,
        )
    except ValueError as exc:
        raise InputError(str(exc))
    trace = resolver.run()
    if args.format == "json":
        text = json.dumps(trace, indent=2, ensure_ascii=False) + "\n"
    elif args.format == "dot":
        text = _render_dot(trace)
    else:
        text = _render_text(trace)
    _write_output(text, args.out)
    if args.figure:
        from .figures import render_tree

        render_tree(trace, args.figure)
    status = trace["result"]["status"]
    return 0 if status in ("resolved", "desingularized") else 2


def _cmd_principalize(args) -> int:
    return _run_resolver(args, "principalize")


def _cmd_desing(args) -> int:
    return _run_resolver(args, "desing")


def _cmd_resolve(args) -> int:
    return _run_resolver(args, "resolve")


# ---------------------------------------------------------------------------
# renderers
# ---------------------------------------------------------------------------


def _exp_string(exps: dict) -> str:
    if not exps:
        return "-"
    parts = []
    for label in sorted(exps, key=int):
        parts.append(f"H{label}^{exps[label]}")
    return " ".join(parts)


def _center_string(center) -> str:
    if center is None:
        return "none"
    if center.get("hypersurface"):
        return f"divide by ({center['hypersurface']})^{center['bound']}"
    vars_ = ", ".join(center["vars"])
    text = f"V({vars_})"
    if center.get("change"):
        shifts = ", ".join(f"{v} -> {e}" for v, e in center["change"].items())
        text += f" after {shifts}"
    return text


def _render_text(trace: dict) -> str:
    lines = []
    lines.append("variables: " + ", ".join(trace["variables"]))
    lines.append("status: " + trace["result"]["status"])
    by_stage: dict[int, list] = {}
    for node in trace["nodes"]:
        by_stage.setdefault(node["stage"], []).append(node)
    for stage in sorted(by_stage):
        lines.append("")
        lines.append(f"stage {stage}:  invariant {by_stage[stage][0]['invariant']}")
        for node in by_stage[stage]:
            gens = ", ".join(node["J"])
            lines.append(f"  chart {node['chart']}: J = <{gens}>  b={node['b']}")
            lines.append(
                f"    exponents a: {_exp_string(node['a'])}"
                f"   total c: {_exp_string(node['c'])}"
            )
            lines.append(f"    center: {_center_string(node['center'])}")
    lines.append("")
    lines.append("charts:")
    for ch in trace["charts"]:
        divisors = ", ".join(f"H{d['label']}=V({d['var']})" for d in ch["divisors"])
        if ch["parent"] is None:
            lines.append(f"  chart 0: root  divisors: {divisors or '-'}")
        else:
            mp = ", ".join(f"{v} -> {e}" for v, e in ch["map"].items())
            lines.append(
                f"  chart {ch['id']} <- chart {ch['parent']} (pivot {ch['pivot']}):"
                f" {mp}  divisors: {divisors or '-'}"
            )
    if trace["changes"]:
        lines.append("")
        lines.append("coordinate changes:")
        for c in trace["changes"]:
            lines.append(
                f"  stage {c['stage']}, chart {c['chart']}:"
                f" {c['var']} -> {c['var']} + {c['shift']}"
            )
    if trace.get("descents"):
        lines.append("")
        lines.append("coefficient-ideal descents:")
        for d in trace["descents"]:
            gens = ", ".join(d["coefficient"])
            lines.append(
                f"  stage {d['stage']}, chart {d['chart']}: on V({d['variable']}),"
                f" coefficient ideal <{gens}> with bound {d['bound']}"
            )
    result = trace["result"]
    lines.append("")
    if result.get("principal"):
        lines.append("principal exponents:")
        for chart in sorted(result["principal"], key=int):
            lines.append(
                f"  chart {chart}: {_exp_string(result['principal'][chart])}"
            )
        factors = result.get("divisorial_factors") or {}
        for chart in sorted(factors, key=int):
            parts = ", ".join(
                f"({f['hypersurface']})^{f['power']}" for f in factors[chart]
            )
            lines.append(f"  chart {chart} divisorial factors: {parts}")
    if result.get("desing"):
        block = result["desing"]
        lines.append(f"embedded desingularization at stage {block['stage']}:")
        for chart in sorted(block["strict"], key=int):
            gens = ", ".join(block["strict"][chart]) or "1"
            smooth = "smooth" if block["smooth"][chart] else "NOT SMOOTH"
            crossings = block["crossings"][chart]
            meets = (
                "meets " + ", ".join(f"H{l}" for l in crossings)
                if crossings
                else "meets no divisor"
            )
            lines.append(f"  chart {chart}: strict <{gens}>  {smooth}, {meets}")
    if result.get("error"):
        err = result["error"]
        lines.append(f"abort: {err['error']}: {err['detail']}")
    return "\n".join(lines) + "\n"


def _render_dot(trace: dict) -> str:
    last_inv = {}
    for node in trace["nodes"]:
        last_inv[node["chart"]] = node["invariant"]
    lines = ["digraph charts {", "  rankdir=TB;", '  node [shape=box, fontname="monospace"];']
    for ch in trace["charts"]:
        label_lines = [f"chart {ch['id']}"]
        divisors = ", ".join(f"H{d['label']}=V({d['var']})" for d in ch["divisors"])
        if divisors:
            label_lines.append(divisors)
        if ch["id"] in last_inv:
            label_lines.append(last_inv[ch["id"]])
        label = "\\n".join(label_lines)
        lines.append(f'  c{ch["id"]} [label="{label}"];')
    for ch in trace["charts"]:
        if ch["parent"] is not None:
            lines.append(f'  c{ch["parent"]} -> c{ch["id"]} [label="{ch["pivot"]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the trace auditor
# ---------------------------------------------------------------------------


def _audit_parse(ctx: Context, text: str, where: str):
    try:
        return ctx.parse(text)
    except PolyError as exc:
        raise AuditFailure(f"{where}: unparseable polynomial {text!r} ({exc})")


class _Auditor:
    """Replays a trace: chart maps, controlled transforms, exact divisorial
    divisions, exponent recomputation, and strict descent of the invariant.
    Everything is generator arithmetic; the only Groebner work is the final
    unit-residual check of a principality certificate."""

    def __init__(self, trace: dict):
        if not isinstance(trace, dict):
            raise InputError("trace must be a JSON object")
        for key in ("variables", "charts", "changes", "nodes", "result"):
            if key not in trace:
                raise InputError(f"trace is missing the {key!r} block")
        variables = trace["variables"]
        if not isinstance(variables, list) or not variables:
            raise InputError("trace has no variables")
        if not trace["nodes"]:
            raise InputError("trace has no nodes to audit")
        self.trace = trace
        self.ctx = Context(variables)
        self.checks = 0

    def run(self) -> str:
        self._check_charts()
        self._check_nodes_shape()
        self._replay()
        self._check_descent()
        self._check_result()
        stages = 1 + max(n["stage"] for n in self.trace["nodes"])
        return (
            f"verify passed: {len(self.trace['charts'])} charts, "
            f"{stages} stages, {self.checks} checks"
        )

    # -- chart table ---------------------------------------------------------

    def _check_charts(self):
        ctx = self.ctx
        self.charts = {}
        self.children = {}
        for pos, ch in enumerate(self.trace["charts"]):
            cid = ch.get("id")
            if cid != pos:
                raise AuditFailure(f"chart ids must be consecutive, got {cid}")
            parent = ch.get("parent")
            if cid == 0:
                if parent is not None:
                    raise AuditFailure("chart 0 must be the root")
            else:
                if not isinstance(parent, int) or parent not in self.charts:
                    raise AuditFailure(f"chart {cid}: bad parent {parent!r}")
            images = None
            pivot = ch.get("pivot")
            if parent is not None:
                if pivot not in ctx.names:
                    raise AuditFailure(f"chart {cid}: bad pivot {pivot!r}")
                mp = ch.get("map")
                if not isinstance(mp, dict) or set(mp) != set(ctx.names):
                    raise AuditFailure(f"chart {cid}: map must cover all variables")
                images = [None] * ctx.nvars
                p = ctx.names.index(pivot)
                xp = ctx.var(p)
                center = set()
                for name, expr in mp.items():
                    i = ctx.names.index(name)
                    img = _audit_parse(ctx, expr, f"chart {cid} map")
                    if img == ctx.var(i):
                        pass
                    elif img == ctx.var(i) * xp:
                        center.add(i)
                    else:
                        raise AuditFailure(
                            f"chart {cid}: map {name} -> {expr} is not a"
                            " blow-up substitution"
                        )
                    images[i] = img
                if images[p] != xp:
                    raise AuditFailure(f"chart {cid}: pivot must map to itself")
                self.checks += 1
            divisors = ch.get("divisors")
            if not isinstance(divisors, list):
                raise AuditFailure(f"chart {cid}: bad divisors block")
            seen_labels = {}
            for d in divisors:
                if d["var"] not in ctx.names or not isinstance(d["label"], int):
                    raise AuditFailure(f"chart {cid}: bad divisor entry {d}")
                if d["label"] in seen_labels.values():
                    raise AuditFailure(f"chart {cid}: duplicate divisor label")
                seen_labels[ctx.names.index(d["var"])] = d["label"]
            if parent is not None:
                parent_div = self.charts[parent]["divisors"]
                p = ctx.names.index(pivot)
                inherited = {v: l for v, l in parent_div.items() if v != p}
                own = {v: l for v, l in seen_labels.items() if v != p}
                if own != inherited:
                    raise AuditFailure(
                        f"chart {cid}: divisors do not extend the parent's"
                    )
                if p not in seen_labels:
                    raise AuditFailure(f"chart {cid}: pivot carries no divisor")
                if seen_labels[p] <= max(parent_div.values(), default=0):
                    raise AuditFailure(f"chart {cid}: exceptional label not fresh")
                self.checks += 1
            self.charts[cid] = {
                "parent": parent,
                "pivot": None if pivot is None else ctx.names.index(pivot),
                "images": images,
                "divisors": seen_labels,
            }
            self.children.setdefault(parent, []).append(cid)

    # -- node table ----------------------------------------------------------

    def _check_nodes_shape(self):
        self.by_stage = {}
        bounds = set()
        for node in self.trace["nodes"]:
            stage = node.get("stage")
            cid = node.get("chart")
            if cid not in self.charts:
                raise AuditFailure(f"node at stage {stage}: unknown chart {cid}")
            group = self.by_stage.setdefault(stage, {})
            if cid in group:
                raise AuditFailure(f"stage {stage}: chart {cid} appears twice")
            group[cid] = node
            bounds.add(node.get("b"))
        if len(bounds) != 1 or not all(
            isinstance(b, int) and b >= 1 for b in bounds
        ):
            raise AuditFailure("all nodes must carry one positive bound")
        self.bound = bounds.pop()
        stages = sorted(self.by_stage)
        if stages != list(range(len(stages))):
            raise AuditFailure("stages must be consecutive from 0")
        if set(self.by_stage[0]) != {0}:
            raise AuditFailure("stage 0 must hold exactly the root chart")
        self.vectors = {}
        for stage in stages:
            invs = {n["invariant"] for n in self.by_stage[stage].values()}
            if len(invs) != 1:
                raise AuditFailure(
                    f"stage {stage}: charts disagree on the invariant vector"
                )
            try:
                vec = parse_vector(invs.pop())
            except ValueError as exc:
                raise AuditFailure(f"stage {stage}: {exc}")
            if len(vec.entries) != self.ctx.nvars + 1:
                raise AuditFailure(
                    f"stage {stage}: invariant vector has {len(vec.entries)}"
                    f" slots, expected {self.ctx.nvars + 1}"
                )
            self.vectors[stage] = vec
            self.checks += 1

    # -- the replay ----------------------------------------------------------

    def _node_ideal(self, node) -> Ideal:
        where = f"stage {node['stage']} chart {node['chart']}"
        raw = node.get("J")
        if not isinstance(raw, list) or not raw:
            raise AuditFailure(f"{where}: node has no generators")
        gens = [_audit_parse(self.ctx, g, where) for g in raw]
        out = Ideal(self.ctx, gens)
        if out.is_zero():
            raise AuditFailure(f"{where}: node records the zero ideal")
        return out

    def _changes_at(self, stage: int):
        for c in self.trace["changes"]:
            if c.get("stage") == stage:
                cid = c.get("chart")
                if cid not in self.charts:
                    raise AuditFailure(f"change at stage {stage}: unknown chart")
                var = c.get("var")
                if var not in self.ctx.names:
                    raise AuditFailure(f"change at stage {stage}: unknown variable")
                v = self.ctx.names.index(var)
                if v in self.charts[cid]["divisors"]:
                    raise AuditFailure(
                        f"change at stage {stage} chart {cid}: {var} carries"
                        " a divisor and cannot be re-centered"
                    )
                shift = _audit_parse(
                    self.ctx, c.get("shift", ""), f"change at stage {stage}"
                )
                yield cid, v, shift

    def _apply_changes(self, stage: int, states, totals):
        for cid, v, shift in self._changes_at(stage):
            if cid not in states:
                raise AuditFailure(
                    f"change at stage {stage}: chart {cid} is not on the frontier"
                )
            images = list(self.ctx.variables())
            images[v] = self.ctx.var(v) - shift
            states[cid] = Ideal(
                self.ctx, [g.substitute(images) for g in states[cid].gens]
            )
            totals[cid] = Ideal(
                self.ctx, [g.substitute(images) for g in totals[cid].gens]
            )
            self.checks += 1

    def _expect_equal(self, stage, cid, got: Ideal, recorded: Ideal):
        if [str(g) for g in got.gens] != [str(g) for g in recorded.gens]:
            raise AuditFailure(
                f"stage {stage} chart {cid}: replayed ideal"
                f" <{', '.join(str(g) for g in got.gens)}> does not match the"
                f" recorded <{', '.join(str(g) for g in recorded.gens)}>"
            )
        self.checks += 1

    def _check_exponents(self, node, state: Ideal, total: Ideal):
        stage, cid = node["stage"], node["chart"]
        divisors = self.charts[cid]["divisors"]
        for source, field in ((state, "a"), (total, "c")):
            recorded = node.get(field)
            if not isinstance(recorded, dict):
                raise AuditFailure(f"stage {stage} chart {cid}: missing {field}")
            want_labels = {str(l) for l in divisors.values()}
            if set(recorded) != want_labels:
                raise AuditFailure(
                    f"stage {stage} chart {cid}: {field} must list exactly the"
                    f" visible divisor labels {sorted(want_labels)}"
                )
            for v, label in divisors.items():
                got = min(g.var_order(v) for g in source.gens)
                if recorded[str(label)] != got:
                    raise AuditFailure(
                        f"stage {stage} chart {cid}: exponent {field}[{label}]"
                        f" is {recorded[str(label)]}, recomputed {got}"
                    )
                self.checks += 1

    def _replay(self):
        ctx = self.ctx
        last = max(self.by_stage)
        root_node = self.by_stage[0][0]
        states = {0: self._node_ideal(root_node)}
        totals = {0: states[0]}
        self._check_exponents(root_node, states[0], totals[0])
        for stage in range(last):
            group = self.by_stage[stage]
            stepped = {
                cid: n["center"] for cid, n in group.items() if n.get("center")
            }
            if not stepped:
                raise AuditFailure(
                    f"stage {stage}: no center recorded but the run continues"
                )
            kinds = {bool(c.get("hypersurface")) for c in stepped.values()}
            if len(kinds) > 1:
                raise AuditFailure(
                    f"stage {stage}: mixes blow-up and divisorial centers"
                )
            divisorial = kinds == {True}
            next_states = {}
            next_totals = {}
            for cid in group:
                if cid not in stepped or divisorial:
                    next_states[cid] = states[cid]
                    next_totals[cid] = totals[cid]
            if divisorial:
                for cid, center in stepped.items():
                    h = _audit_parse(ctx, center["hypersurface"], f"stage {stage}")
                    power = center.get("bound")
                    if not isinstance(power, int) or power < 1:
                        raise AuditFailure(f"stage {stage}: bad divisorial bound")
                    divisor = h**power
                    divided = []
                    for g in states[cid].gens:
                        q = g.divide_exact(divisor)
                        if q is None:
                            raise AuditFailure(
                                f"stage {stage} chart {cid}: {g} is not divisible"
                                f" by ({h})^{power}"
                            )
                        divided.append(q)
                    next_states[cid] = Ideal(ctx, divided)
                    next_totals[cid] = totals[cid]
                    self.checks += 1
            else:
                for cid, center in stepped.items():
                    center_vars = {
                        ctx.names.index(v) for v in center.get("vars", [])
                    }
                    if not center_vars:
                        raise AuditFailure(f"stage {stage}: empty blow-up center")
                    kids = [
                        k
                        for k in self.children.get(cid, [])
                        if k in self.by_stage.get(stage + 1, {})
                    ]
                    if not kids:
                        raise AuditFailure(
                            f"stage {stage} chart {cid}: blown up but no child"
                            " chart appears at the next stage"
                        )
                    for kid in kids:
                        info = self.charts[kid]
                        pivot = info["pivot"]
                        if pivot not in center_vars:
                            raise AuditFailure(
                                f"chart {kid}: pivot outside the recorded center"
                            )
                        images = info["images"]
                        xp = ctx.var(pivot) ** self.bound
                        new_gens = []
                        for g in states[cid].gens:
                            pulled = g.substitute(images)
                            q = pulled.divide_exact(xp)
                            if q is None:
                                raise AuditFailure(
                                    f"chart {kid}: controlled transform of {g}"
                                    f" is not divisible by {ctx.names[pivot]}^"
                                    f"{self.bound}"
                                )
                            new_gens.append(q)
                        next_states[kid] = Ideal(ctx, new_gens)
                        next_totals[kid] = Ideal(
                            ctx, [g.substitute(images) for g in totals[cid].gens]
                        )
                        self.checks += 1
            self._apply_changes(stage + 1, next_states, next_totals)
            next_group = self.by_stage[stage + 1]
            if set(next_group) != set(next_states):
                raise AuditFailure(
                    f"stage {stage + 1}: frontier charts {sorted(next_group)} do"
                    f" not match the replayed {sorted(next_states)}"
                )
            for cid, node in next_group.items():
                self._expect_equal(
                    stage + 1, cid, next_states[cid], self._node_ideal(node)
                )
                self._check_exponents(node, next_states[cid], next_totals[cid])
            states, totals = next_states, next_totals
        self.final_states = states
        self.final_totals = totals

    # -- invariant descent -----------------------------------------------------

    @staticmethod
    def _is_terminal(vec) -> bool:
        """True for the all-inf vector: the singular locus is empty."""
        return all(e.key() == (2,) for e in vec.entries)

    def _check_descent(self):
        last = max(self.by_stage)
        for stage in range(last):
            nxt = self.vectors[stage + 1]
            if self._is_terminal(nxt):
                if stage + 1 != last:
                    raise AuditFailure(
                        f"stage {stage + 1}: resolved vector before the final stage"
                    )
            elif not nxt < self.vectors[stage]:
                raise AuditFailure(
                    f"the invariant vector fails to drop from stage {stage}"
                    f" ({self.vectors[stage]}) to stage {stage + 1} ({nxt})"
                )
            self.checks += 1
        if any(n.get("center") for n in self.by_stage[last].values()):
            raise AuditFailure(f"stage {last}: final stage must not carry centers")
        if self.trace["result"].get("status") == "resolved" and not self._is_terminal(
            self.vectors[last]
        ):
            raise AuditFailure("resolved run must end with the empty-locus vector")

    # -- results ---------------------------------------------------------------

    def _check_result(self):
        result = self.trace["result"]
        status = result.get("status")
        ok = status in ("resolved", "desingularized") or (
            isinstance(status, str) and status.startswith("aborted:")
        )
        if not ok:
            raise AuditFailure(f"unknown status {status!r}")
        if status == "resolved":
            principal = result.get("principal")
            if not isinstance(principal, dict) or set(principal) != {
                str(c) for c in self.final_states
            }:
                raise AuditFailure(
                    "principal certificate must cover exactly the final charts"
                )
            factors = result.get("divisorial_factors") or {}
            for chart_key, exps in principal.items():
                cid = int(chart_key)
                residual = list(self.final_totals[cid].gens)
                for v, label in self.charts[cid]["divisors"].items():
                    if str(label) not in exps:
                        raise AuditFailure(
                            f"chart {cid}: certificate misses divisor {label}"
                        )
                    power = exps[str(label)]
                    if power:
                        xp = self.ctx.var(v) ** power
                        out = []
                        for g in residual:
                            q = g.divide_exact(xp)
                            if q is None:
                                raise AuditFailure(
                                    f"chart {cid}: recorded exponent {power} of"
                                    f" H{label} does not divide the total"
                                    " transform"
                                )
                            out.append(q)
                        residual = out
                for f in factors.get(chart_key, []):
                    h = _audit_parse(
                        self.ctx, f["hypersurface"], f"chart {cid} factor"
                    )
                    hp = h ** f["power"]
                    out = []
                    for g in residual:
                        q = g.divide_exact(hp)
                        if q is None:
                            raise AuditFailure(
                                f"chart {cid}: divisorial factor"
                                f" ({f['hypersurface']})^{f['power']} does not"
                                " divide the total transform"
                            )
                        out.append(q)
                    residual = out
                if not Ideal(self.ctx, residual).is_trivial():
                    raise AuditFailure(
                        f"chart {cid}: residual of the total transform is not"
                        " the unit ideal"
                    )
                self.checks += 1
        if status == "desingularized":
            block = result.get("desing")
            if not isinstance(block, dict):
                raise AuditFailure("desingularized run lacks its desing block")
            if block.get("stage") != max(self.by_stage):
                raise AuditFailure("desing stage does not match the final stage")
            for chart_key, gens in block.get("strict", {}).items():
                cid = int(chart_key)
                if cid not in self.final_states:
                    raise AuditFailure(f"desing block names unknown chart {cid}")
                for g in gens:
                    _audit_parse(self.ctx, g, f"desing strict chart {cid}")
                labels = set(self.charts[cid]["divisors"].values())
                for l in block.get("crossings", {}).get(chart_key, []):
                    if l not in labels:
                        raise AuditFailure(
                            f"desing block: chart {cid} meets no divisor {l}"
                        )
                self.checks += 1
        for d in self.trace.get("descents", []):
            if d.get("chart") not in self.charts:
                raise AuditFailure("descent entry names an unknown chart")
            if d.get("variable") not in self.ctx.names:
                raise AuditFailure("descent entry names an unknown variable")
            for g in d.get("coefficient", []):
                _audit_parse(self.ctx, g, "descent coefficient")
            if not isinstance(d.get("bound"), int) or d["bound"] < 1:
                raise AuditFailure("descent entry has a bad bound")
            self.checks += 1


def _cmd_verify(args) -> int:
    doc = _load_json(args.trace, "trace")
    try:
        summary = _Auditor(doc).run()
    except AuditFailure as exc:
        print(f"verify failed: {exc}", file=sys.stderr)
        return 2
    print(summary)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(sub, with_run_flags=True):
    sub.add_argument("spec", help="path to a JSON problem spec")
    sub.add_argument("--out", default=None, help="write output here instead of stdout")
    sub.add_argument(
        "--format",
        choices=("text", "json", "dot") if with_run_flags else ("text", "json"),
        default="text",
        help="output format",
    )
    if with_run_flags:
        sub.add_argument(
            "--max-steps",
            type=int,
            default=None,
            help=f"abort after this many blow-ups (default {DEFAULT_MAX_STEPS})",
        )
        sub.add_argument(
            "--gb-budget",
            type=int,
            default=None,
            help="cap on Groebner reduction steps per basis",
        )
        sub.add_argument(
            "--seed",
            type=int,
            default=None,
            help="accepted for property-test sampling scripts; runs themselves"
            " are deterministic",
        )
        sub.add_argument(
            "--figure",
            default=None,
            metavar="PATH",
            help="also render the chart tree as an image (PNG/SVG by extension)",
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowup",
        description="Exact resolution of basic objects (W, (J, b), E) in affine charts.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("maxord", help="maximal order and its locus")
    _add_common(s, with_run_flags=False)
    s.set_defaults(func=_cmd_maxord)

    s = subs.add_parser("singlocus", help="equations of Sing(J, b)")
    _add_common(s, with_run_flags=False)
    s.set_defaults(func=_cmd_singlocus)

    s = subs.add_parser("principalize", help="resolve (J, 1)")
    _add_common(s)
    s.set_defaults(func=_cmd_principalize)

    s = subs.add_parser("desing", help="embedded desingularization of V(J)")
    _add_common(s)
    s.set_defaults(func=_cmd_desing)

    s = subs.add_parser("resolve", help="resolve (J, b)")
    _add_common(s)
    s.add_argument("--bound", type=int, default=None, help="override the spec bound")
    s.set_defaults(func=_cmd_resolve)

    s = subs.add_parser("verify", help="audit a trace file")
    s.add_argument("trace", help="path to a trace JSON file")
    s.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
