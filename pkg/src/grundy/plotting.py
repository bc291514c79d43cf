"""Figures written next to the delimited reports (check summaries, search runs)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLORS = {"passes": "#4c9a2a", "fails": "#c0392b", "inconclusive": "#999999"}


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_check_summary(rows: list[dict], path: str, title: str = "theorem checks"):
    """Stacked bars of pass / fail / inconclusive counts per theorem."""
    names = [r["theorem_id"] for r in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 1.1 * len(names) + 1), 3.6))
    bottom = [0] * len(rows)
    for key in ("passes", "fails", "inconclusive"):
        vals = [r[key] for r in rows]
        ax.bar(names, vals, bottom=bottom, color=COLORS[key], label=key)
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_ylabel("graphs")
    ax.set_title(title)
    ax.tick_params(axis="x", rotation=30)
    ax.legend(frameon=False, fontsize=8)
    return _finish(fig, path)


def plot_delta_counts(search: dict, path: str):
    """How often each change in the L-Grundy number was seen during a search.

    Values outside the proved window would be drawn in red; none are expected.
    """
    allowed = range(-1, 3) if search["target"] == "edge-deltas" else range(-2, 1)
    counts = {int(k): v for k, v in search["delta_counts"].items()}
    xs = sorted(set(allowed) | set(counts))
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    ax.bar(
        [str(x) for x in xs],
        [counts.get(x, 0) for x in xs],
        color=["#34495e" if x in allowed else "#c0392b" for x in xs],
    )
    ax.set_xlabel("delta after one deletion")
    ax.set_ylabel("deletions observed")
    ax.set_title(f"{search['target']}  (seed {search['seed']}, {search['steps']} steps)", fontsize=9)
    return _finish(fig, path)
