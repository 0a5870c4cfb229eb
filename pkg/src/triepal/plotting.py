"""Figures for ``triepal bench``."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bench(rows: list, path: str) -> None:
    """Log-log wall time per phase and peak memory against ``n``."""
    ns = [r["n"] for r in rows]
    build = [r["buildMs"] / 1000 for r in rows]
    mpal = [r["mpalMs"] / 1000 for r in rows]
    total = [b + m for b, m in zip(build, mpal)]
    peak = [r["peakBytes"] / 2**20 for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.loglog(ns, build, "o-", label="build")
    ax1.loglog(ns, mpal, "s-", label="palindromes")
    ax1.loglog(ns, total, "^-", label="total")
    if ns:
        ref = [total[0] * n / ns[0] for n in ns]
        ax1.loglog(ns, ref, "k:", label="linear")
    ax1.set_xscale("log", base=2)
    ax1.set_xlabel("n (edges)")
    ax1.set_ylabel("seconds (median)")
    ax1.legend()
    ax2.semilogx(ns, peak, "o-", base=2)
    ax2.set_xlabel("n (edges)")
    ax2.set_ylabel("peak RSS (MiB)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
