"""Transforms of ideals under blow-ups.

For a pair (J, b) and a blow-up with exceptional divisor V(x_i) in a given
chart, the total transform is the substitution image of J and the
controlled transform divides it by x_i^b.  The division is exact whenever
the center lay inside Sing(J, b); failure to divide is therefore an
internal error, not an input condition.  The strict transform saturates the
total transform by the exceptional coordinates instead; it is what must
eventually become smooth in embedded desingularization.

After transforming, each generator splits off its monomial part in the
exceptional coordinates: J = x1^a1 ... xr^ar * Jbar with Jbar the reduced
part, where a_i is the minimum x_i-adic order over the generators.
"""

from __future__ import annotations

from .charts import Chart, ChartTree
from .errors import InternalCheckFailed
from .ideals import Ideal, saturate
from .polyring import Polynomial


def total_transform(a: Ideal, chart: Chart) -> Ideal:
    """Pull the ideal of the parent chart back along the chart map."""
    return Ideal(a.ctx, [chart.pull_from_parent(g) for g in a.gens])


def controlled_transform(a: Ideal, chart: Chart, bound: int) -> Ideal:
    """Total transform divided by the bound-th power of the new exceptional.

    For identity blow-ups (codimension-one centers V(x_i)) the substitution
    is trivial and only the division happens.
    """
    pivot = chart.pivot
    if pivot is None:
        raise InternalCheckFailed("controlled transform needs a blow-up chart")
    out = []
    for g in a.gens:
        t = chart.pull_from_parent(g)
        if t.is_zero():
            continue
        if t.var_order(pivot) < bound:
            raise InternalCheckFailed(
                f"controlled transform not divisible by "
                f"{a.ctx.names[pivot]}^{bound}: {t}"
            )
        out.append(t.divide_var_power(pivot, bound))
    return Ideal(a.ctx, out)


def strict_transform(a: Ideal, chart: Chart) -> Ideal:
    """Saturate the total transform by the new exceptional coordinate."""
    pivot = chart.pivot
    if pivot is None:
        raise InternalCheckFailed("strict transform needs a blow-up chart")
    return saturate(total_transform(a, chart), a.ctx.var(pivot))


def saturate_all_exceptional(a: Ideal, chart: Chart) -> Ideal:
    """Saturate by every divisor coordinate of the chart (full strict part)."""
    out = a
    for v in chart.exceptional_vars():
        out = saturate(out, a.ctx.var(v))
    return out


def exceptional_exponents(a: Ideal, chart: Chart, labels=None) -> dict[int, int]:
    """Exponents a_i of the divisor coordinates dividing the whole ideal.

    a_i is the minimum x_i-adic order over the generators, reported per
    divisor label.  `labels` restricts which divisors are inspected.
    """
    out: dict[int, int] = {}
    if a.is_zero():
        raise InternalCheckFailed("exceptional exponents of the zero ideal")
    for var, label in sorted(chart.divisors.items()):
        if labels is not None and label not in labels:
            continue
        out[label] = min(g.var_order(var) for g in a.gens)
    return out


def reduced_part(a: Ideal, chart: Chart, labels=None) -> tuple[Ideal, dict[int, int]]:
    """Split J = (monomial in divisor coordinates) * Jbar.

    Returns (Jbar, {label: exponent}).  Only exponents of the selected
    labels are divided out.
    """
    exps = exceptional_exponents(a, chart, labels)
    gens = list(a.gens)
    for var, label in sorted(chart.divisors.items()):
        k = exps.get(label, 0)
        if k:
            gens = [g.divide_var_power(var, k) for g in gens]
    return Ideal(a.ctx, gens), exps


def divisorial_blowdown(a: Ideal, h: Polynomial, bound: int) -> Ideal:
    """Controlled transform for a codimension-one center V(h), h not a
    coordinate: blowing up a hypersurface is an isomorphism, so the ideal is
    simply divided by h^bound (exactly)."""
    out = []
    hb = h**bound
    for g in a.gens:
        q = g.divide_exact(hb)
        if q is None:
            raise InternalCheckFailed(
                f"codimension-one center: {g} not divisible by ({h})^{bound}"
            )
        out.append(q)
    return Ideal(a.ctx, out)


def transform_ideal_to_child(
    tree: ChartTree, a: Ideal, child_id: int, bound: int
) -> Ideal:
    return controlled_transform(a, tree[child_id], bound)
