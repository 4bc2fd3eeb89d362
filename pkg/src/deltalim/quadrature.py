"""Composite Gauss-Legendre quadrature on breakpoint-respecting panels."""
from __future__ import annotations

import numpy as np

from .errors import QuadratureFailure

__all__ = ["panel_nodes", "integrate"]

_rule_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _rule_cache:
        _rule_cache[n] = np.polynomial.legendre.leggauss(n)
    return _rule_cache[n]


def panel_nodes(a: float, b: float, breakpoints=(), n: int = 16,
                max_panel: float | None = None, panel_budget: int = 100_000):
    """Gauss-Legendre nodes/weights on [a, b], split at interior breakpoints.

    Panels longer than ``max_panel`` are subdivided uniformly.  Returns the
    flat (nodes, weights) arrays.
    """
    if b <= a:
        return np.empty(0), np.empty(0)
    cuts = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    edges: list[float] = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        parts = 1 if max_panel is None else max(1, int(np.ceil((hi - lo) / max_panel)))
        edges.extend(np.linspace(lo, hi, parts + 1)[:-1])
    edges.append(b)
    if (len(edges) - 1) * n > panel_budget:
        raise QuadratureFailure(
            f"quadrature needs {(len(edges) - 1) * n} nodes, budget {panel_budget}")
    x, w = _rule(n)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        h = 0.5 * (hi - lo)
        nodes.append(lo + h * (x + 1.0))
        weights.append(h * w)
    return np.concatenate(nodes), np.concatenate(weights)


def integrate(f, a: float, b: float, breakpoints=(), n: int = 16,
              max_panel: float | None = None, panel_budget: int = 100_000):
    """Integrate a (vectorized) function over [a, b]."""
    nodes, weights = panel_nodes(a, b, breakpoints, n, max_panel, panel_budget)
    if nodes.size == 0:
        return 0.0
    return np.sum(weights * np.asarray(f(nodes)))
