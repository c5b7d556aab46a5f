"""Class-count reporting: delimited output plus a rendered bar chart."""

from __future__ import annotations

import csv
import os

from .enumeration import count_classes


def write_report(p: int, max_order_exp: int, out_dir: str) -> tuple[str, str]:
    """Write class counts per order as a CSV table and a PNG bar chart.

    Rows cover every exponent from 1 to max_order_exp, zeros included.
    Returns (csv_path, png_path).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    counts = count_classes(p, max_order_exp)
    exps = list(range(1, max_order_exp + 1))
    values = [counts.get(e, 0) for e in exps]
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"classes_p{p}.csv")
    png_path = os.path.join(out_dir, f"classes_p{p}.png")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["exponent", "order", "classes"])
        for e, c in zip(exps, values):
            writer.writerow([e, p**e, c])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar([str(e) for e in exps], values, color="#3b6ea5")
    ax.set_xlabel(f"exponent e (group order {p}^e)")
    ax.set_ylabel("isomorphism classes")
    ax.set_title(f"2-generated cyclic-by-abelian classes, p = {p}")
    for idx, c in enumerate(values):
        if c:
            ax.annotate(str(c), (idx, c), ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return csv_path, png_path
