"""Chart export for spectral pages: ASCII grid, JSON positions and SVG."""

import io
import json

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

import bredoncalc.exceptions as exc  # noqa: E402
from bredoncalc.groups import FGAbelianGroup  # noqa: E402
from bredoncalc.spectral import SpectralPage  # noqa: E402

CELL_WIDTH = 8


def _label(group: FGAbelianGroup) -> str:
    return str(group).replace(" + ", "+")


def _header(page: SpectralPage) -> str:
    theory = "homology" if page.variance == "covariant" else "cohomology"
    return (
        f"# E{page.r} {theory} of S^{{{page.ell}a}} S({page.m}g)+, "
        f"p={page.p}, coeff={page.coeff}\n"
        f"# s + t = n - offset, offset = {page.offset}"
    )


def render_ascii(page: SpectralPage) -> str:
    """The page as a text grid, rows t from top to bottom, d¹ arrows listed below."""
    lines = [_header(page)]
    for t in reversed(page.row_range()):
        cells = [_label(page[(s, t)]) if (s, t) in page.entries else "." for s in page.columns]
        lines.append(f"{t:>4} | " + "".join(c.ljust(CELL_WIDTH) for c in cells).rstrip())
    lines.append("     +-" + "-" * (CELL_WIDTH * len(page.columns)))
    lines.append("       " + "".join(str(s).ljust(CELL_WIDTH) for s in page.columns).rstrip())
    for d in page.differentials:
        lines.append(f"d{page.r}: {d.source} -> {d.target} {d.descriptor}")
    return "\n".join(lines) + "\n"


def render_json(page: SpectralPage) -> str:
    return json.dumps(page.to_json(), indent=2) + "\n"


def render_svg(page: SpectralPage) -> str:
    """The page as an SVG drawing with one label per nonzero entry."""
    rows = page.row_range()
    fig, ax = plt.subplots(figsize=(1.2 * len(page.columns) + 1, 0.8 * len(rows) + 1))
    try:
        for (s, t), group in page.entries.items():
            ax.annotate(_label(group), (s, t), ha="center", va="center", fontsize=9)
        for d in page.differentials:
            ax.annotate(
                "",
                xy=d.target,
                xytext=d.source,
                arrowprops={"arrowstyle": "->", "shrinkA": 12, "shrinkB": 12},
            )
        ax.set_xlim(-0.5, len(page.columns) - 0.5)
        ax.set_ylim(rows.start - 0.5, rows.stop - 0.5)
        ax.set_xticks(list(page.columns))
        ax.set_yticks(list(rows))
        ax.grid(True, linewidth=0.3)
        ax.set_xlabel("s")
        ax.set_ylabel("t")
        ax.set_title(_header(page).splitlines()[0].lstrip("# "), fontsize=9)
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg")
    finally:
        plt.close(fig)
    return buffer.getvalue()


def render(page: SpectralPage, fmt: str) -> str:
    """Dispatch on "ascii", "json" or "svg"."""
    renderers = {"ascii": render_ascii, "json": render_json, "svg": render_svg}
    if fmt not in renderers:
        raise exc.ValidationError("format", f"must be one of {tuple(renderers)}, got {fmt!r}")
    return renderers[fmt](page)
