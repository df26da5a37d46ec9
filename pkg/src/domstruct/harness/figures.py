"""Delimited summaries and matplotlib figures for a corpus run."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from ..formats import ReportDocument  # noqa: E402
from ..verdicts import Verdict  # noqa: E402

VERDICT_COLORS = {
    Verdict.HOLDS: "#4c9a2a",
    Verdict.REFUTED: "#c0392b",
    Verdict.STRUCTURE_VIOLATION: "#e67e22",
    Verdict.SKIPPED: "#95a5a6",
    Verdict.BUDGET_EXCEEDED: "#34495e",
}

RC = {
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "domstruct",
}


def _pipeline_size(doc: ReportDocument) -> int | None:
    for s in doc.candidate_sets:
        if s.role == "pipeline":
            return s.size
    return None


def write_summary_csv(reports: list[ReportDocument], path: Path) -> Path:
    """One row per graph: sizes, oracle value, pipeline size and one column
    per claim verdict."""
    claim_names: list[str] = []
    for doc in reports:
        for c in doc.claims:
            if c.name not in claim_names:
                claim_names.append(c.name)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["graph_id", "n", "m", "gamma", "pipeline_size", *claim_names])
        for doc in reports:
            verdicts = {c.name: c.verdict.value for c in doc.claims}
            size = _pipeline_size(doc)
            w.writerow([
                doc.graph_id, doc.n, doc.m,
                "" if doc.oracle_gamma is None else doc.oracle_gamma,
                "" if size is None else size,
                *(verdicts.get(name, "") for name in claim_names),
            ])
    return path


def plot_verdicts(reports: list[ReportDocument], path: Path) -> Path:
    names: list[str] = []
    for doc in reports:
        names += [c.name for c in doc.claims if c.name not in names]
    counts = {v: [0] * len(names) for v in Verdict}
    for doc in reports:
        for c in doc.claims:
            counts[c.verdict][names.index(c.name)] += 1
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(8.5, 0.35 * max(len(names), 1) + 1.2))
        left = [0] * len(names)
        for v in Verdict:
            if any(counts[v]):
                ax.barh(names, counts[v], left=left, color=VERDICT_COLORS[v], label=v.value)
                left = [a + b for a, b in zip(left, counts[v])]
        ax.invert_yaxis()
        ax.set_xlabel("graphs")
        ax.set_title(f"claim verdicts over {len(reports)} graphs")
        if names:
            ax.legend(loc="center left", bbox_to_anchor=(1.01, 0.5), fontsize=7, frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_pipeline_vs_gamma(reports: list[ReportDocument], path: Path) -> Path:
    """Cascade candidate size against the optimum. Graphs landing on the same
    point are merged; marker area grows with their number."""
    groups: dict[tuple[int, int], list[int]] = {}
    for d in reports:
        size = _pipeline_size(d)
        if d.oracle_gamma is not None and size is not None:
            groups.setdefault((d.oracle_gamma, size), []).append(d.n)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.5, 4))
        if groups:
            pts = sorted(groups.items())
            xs = [x for (x, _), _ in pts]
            ys = [y for (_, y), _ in pts]
            sc = ax.scatter(xs, ys, s=[20 + 12 * len(ns) for _, ns in pts],
                            c=[max(ns) for _, ns in pts], cmap="viridis", alpha=0.8)
            fig.colorbar(sc, ax=ax, label="largest n at point")
            for (x, y), ns in pts:
                if len(ns) > 1:
                    ax.annotate(str(len(ns)), (x, y), xytext=(6, 4), textcoords="offset points", fontsize=7)
            hi = max(max(xs), max(ys)) + 1
            ax.plot([0, hi], [0, hi], color="0.6", lw=0.8, ls="--")
        ax.xaxis.set_major_locator(MaxNLocator(integer=True))
        ax.yaxis.set_major_locator(MaxNLocator(integer=True))
        ax.set_xlabel("domination number (oracle)")
        ax.set_ylabel("cascade candidate size")
        ax.set_title("cascade candidate vs. optimum")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def render_report_figures(reports: list[ReportDocument], outdir: Path | str) -> list[Path]:
    """Write ``summary.csv``, ``verdicts.png`` and ``pipeline_vs_gamma.png``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [
        write_summary_csv(reports, outdir / "summary.csv"),
        plot_verdicts(reports, outdir / "verdicts.png"),
        plot_pipeline_vs_gamma(reports, outdir / "pipeline_vs_gamma.png"),
    ]
