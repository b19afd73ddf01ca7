"""
SVG line charts of per-episode return curves.
"""
# General imports
from typing import Dict, Sequence
import io

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

# Fixed ids and no timestamp, so equal curves give equal files.
SVG_RC_PARAMS = {"svg.hashsalt": "ugvdefend", "svg.fonttype": "none"}


def moving_average(values: Sequence[float], window: int) -> np.ndarray:
    """
    Trailing mean over at most `window` values; the first points average over what is available.
    """
    values = np.asarray(values, dtype=np.float64)
    if window <= 1 or values.size == 0:
        return values
    cumulative = np.concatenate(([0.0], np.cumsum(values)))
    upper = np.arange(1, values.size + 1)
    lower = np.maximum(upper - window, 0)
    return (cumulative[upper] - cumulative[lower]) / (upper - lower)


def render_line_chart(curves: Dict[str, Sequence[float]],
                      title: str = "Total reward per episode",
                      x_label: str = "Episode",
                      y_label: str = "Total reward",
                      window: int = 1,
                      ) -> str:
    """
    Returns the SVG document as a string.
    """
    with plt.rc_context(SVG_RC_PARAMS):
        fig, ax = plt.subplots(figsize=(8, 5))
        for name, values in curves.items():
            smoothed = moving_average(values, window)
            ax.plot(np.arange(smoothed.size), smoothed, linewidth=1.5, label=name)
        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        ax.set_title(title)
        if curves:
            ax.legend()
        ax.grid(True, alpha=0.3)
        fig.tight_layout()

        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buffer.getvalue()


def write_line_chart(path: str, curves: Dict[str, Sequence[float]], **kw_args) -> None:
    with open(path, "w", encoding="utf-8") as file:
        file.write(render_line_chart(curves, **kw_args))
