"""Figure rendering for CLI reports.

Each function draws one figure to a file next to the delimited output.
Rendering is opt-in from the command line; the data outputs stay plain
JSON/CSV either way.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

VERDICT_COLORS = {"pass": "#2a9d34", "fail": "#c33434", "not-applicable": "#9a9a9a"}


def plot_convergence(table, path: str) -> None:
    """Sample-depth deviation against the DKW envelope, log-scale y."""
    ns = [r.n for r in table.rows]
    errs = [max(r.sup_error, 1e-16) for r in table.rows]
    bounds = [max(r.dkw_bound, 1e-300) for r in table.rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ns, errs, "o-", label="sup depth error")
    ax.plot(ns, bounds, "s--", label=rf"DKW bound $4e^{{-2\epsilon^2 n}}$, $\epsilon$={table.epsilon}")
    ax.axhline(table.epsilon, color="gray", lw=0.8, ls=":", label=rf"$\epsilon$ = {table.epsilon}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("sample size n")
    ax.set_ylabel("sup |population depth - sample depth|")
    ax.set_title("Consistency of the sample Tukey depth")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_rank(rows: list[dict], path: str) -> None:
    """Horizontal bars of depth values, deepest on top."""
    ids = [r["id"] for r in rows]
    vals = [r["value"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 0.5 * len(rows) + 1.5))
    pos = range(len(rows))
    ax.barh(pos, vals, color="#33679b")
    ax.set_yticks(list(pos), ids)
    ax.invert_yaxis()
    ax.set_xlim(0, 1)
    ax.set_xlabel("Tukey depth")
    ax.set_title("Depth ranking")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_property_suite(result, path: str) -> None:
    """One bar per axiom, colored by verdict, labels in the title."""
    ids = list(result.reports)
    verdicts = [result.reports[i].verdict for i in ids]
    colors = [VERDICT_COLORS[v] for v in verdicts]
    fig, ax = plt.subplots(figsize=(7.0, 3.2))
    ax.bar(ids, [1] * len(ids), color=colors)
    for k, (pid, verdict) in enumerate(zip(ids, verdicts)):
        ax.text(k, 0.5, verdict, ha="center", va="center", color="white", fontsize=9, rotation=90)
    ax.set_yticks([])
    labels = ", ".join(result.labels) if result.labels else "no label"
    ax.set_title(f"{result.evaluator}: {labels}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
