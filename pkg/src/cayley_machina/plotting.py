"""Figures written next to closure and sweep reports."""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _figure(width=6.0, height=None, ncols=1):
    golden = (math.sqrt(5) - 1.0) / 2.0
    height = height or width * golden
    return plt.subplots(1, ncols, figsize=(width, height), squeeze=False)


def _new_by_length(ax, growth, label=None, **kw):
    lengths = range(1, len(growth) + 1)
    ax.semilogy(lengths, [max(g, 0.8) for g in growth], marker="o", ms=3, label=label, **kw)


def closure_figure(doc, path):
    """New elements per word length for one closure run."""
    fig, axes = _figure()
    ax = axes[0][0]
    _new_by_length(ax, doc["growth_by_length"])
    verdict = f"finite, size {doc['size']}" if doc["verdict"] == "finite" else f"exhausted at {doc['elements_found']}"
    ax.set_title(f"{doc['source']} ({doc['machine']}): {verdict}", fontsize=10)
    ax.set_xlabel("word length")
    ax.set_ylabel("new elements")
    ax.grid(True, which="both", lw=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def sweep_figure(doc, path):
    """Closure growth for every class of a sweep, one panel per machine;
    finite closures drawn solid, exhausted ones dashed."""
    fig, axes = _figure(width=10.0, height=4.0, ncols=2)
    for ax, side, title in ((axes[0][0], "cayley", "C(S)"), (axes[0][1], "dual", "C*(S)")):
        for rec in doc["records"]:
            res = rec[side]
            finite = res["verdict"] == "finite"
            _new_by_length(ax, res["growth_by_length"], lw=0.8, alpha=0.7,
                           ls="-" if finite else "--", color="tab:blue" if finite else "tab:red")
        c = doc["counts"]
        ax.set_title(f"{title}, order {doc['order']}: {c[side + '_finite']}/{c['classes']} finite", fontsize=10)
        ax.set_xlabel("word length")
        ax.set_ylabel("new elements")
        ax.grid(True, which="both", lw=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
