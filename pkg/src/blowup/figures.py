"""Render the blow-up chart tree of a trace to an image file.

matplotlib is imported lazily so the rest of the package works without it;
the Agg backend keeps rendering headless.
"""

from __future__ import annotations


def _positions(trace: dict):
    """Layered layout: depth by distance from the root, leaves at integer
    x slots, interior charts centred over their children."""
    children: dict = {}
    depth = {}
    for ch in trace["charts"]:
        children.setdefault(ch["parent"], []).append(ch["id"])
        parent = ch["parent"]
        depth[ch["id"]] = 0 if parent is None else depth[parent] + 1
    xpos: dict = {}
    cursor = 0.0
    stack = [(cid, False) for cid in reversed(children.get(None, []))]
    while stack:
        cid, expanded = stack.pop()
        kids = children.get(cid, [])
        if not kids:
            xpos[cid] = cursor
            cursor += 1.0
        elif expanded:
            xpos[cid] = sum(xpos[k] for k in kids) / len(kids)
        else:
            stack.append((cid, True))
            stack.extend((k, False) for k in reversed(kids))
    return xpos, depth


def render_tree(trace: dict, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xpos, depth = _positions(trace)
    last_inv = {}
    for node in trace["nodes"]:
        last_inv[node["chart"]] = node["invariant"]

    width = max(6.0, 2.2 * (max(xpos.values()) + 1) if xpos else 6.0)
    height = max(3.5, 1.9 * (max(depth.values()) + 1) if depth else 3.5)
    fig, ax = plt.subplots(figsize=(width, height))
    ax.set_axis_off()

    by_id = {ch["id"]: ch for ch in trace["charts"]}
    for ch in trace["charts"]:
        cid = ch["id"]
        if ch["parent"] is not None:
            px, py = xpos[ch["parent"]], -depth[ch["parent"]]
            cx, cy = xpos[cid], -depth[cid]
            ax.plot([px, cx], [py, cy], color="0.55", lw=1.0, zorder=1)
            ax.text(
                (px + cx) / 2,
                (py + cy) / 2,
                ch["pivot"],
                fontsize=8,
                color="0.35",
                ha="center",
                va="center",
                bbox=dict(boxstyle="round,pad=0.1", fc="white", ec="none"),
                zorder=2,
            )
    for ch in trace["charts"]:
        cid = ch["id"]
        lines = [f"chart {cid}"]
        divisors = ", ".join(f"H{d['label']}={d['var']}" for d in ch["divisors"])
        if divisors:
            lines.append(divisors)
        if cid in last_inv:
            lines.append(last_inv[cid])
        ax.text(
            xpos[cid],
            -depth[cid],
            "\n".join(lines),
            fontsize=8,
            family="monospace",
            ha="center",
            va="center",
            bbox=dict(boxstyle="round,pad=0.35", fc="#eef3fb", ec="#3a5a8c"),
            zorder=3,
        )
    status = trace["result"]["status"]
    ax.set_title(f"blow-up charts ({status})", fontsize=10)
    ax.margins(0.15)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
