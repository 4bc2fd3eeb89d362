"""Cauchy problems for the half-line Schrodinger reductions.

Solves -psi'' + (theta*V - gamma*z)*psi = 0 on [0, M] with adaptive
high-order Runge-Kutta stepping (DOP853, dense output), restarting at every
breakpoint of V so that coefficient discontinuities never sit inside a step.
Small-range solves at scale eps are always routed through the rescaling
u(x) = eps * psi_{eps^2*lambda, eps^2}(x / eps), which keeps the integrated
problem O(1) in the regime |lambda| = O(eps^-2).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NonConvergence
from .potential import Potential

__all__ = [
    "CauchyState",
    "Trajectory",
    "ScaledTrajectory",
    "solve_psi",
    "solve_psi_tilde",
    "solve_u",
    "solve_u_tilde",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class CauchyState:
    """Solution value and derivative at a point."""

    x: float
    value: complex
    derivative: complex


class Trajectory:
    """Dense solution of a second-order Cauchy problem on [0, x_end]."""

    def __init__(self, segments, node_x, node_y, tol):
        self._segments = segments          # list of (t0, t1, OdeSolution)
        self._edges = np.array([s[0] for s in segments] + [segments[-1][1]])
        self.node_x = node_x               # accepted step abscissae
        self.node_y = node_y               # shape (2, n): value, derivative
        self.tol = tol

    @property
    def x_end(self) -> float:
        return float(self._edges[-1])

    @property
    def nodes(self) -> list[CauchyState]:
        return [CauchyState(float(x), v, d)
                for x, v, d in zip(self.node_x, self.node_y[0], self.node_y[1])]

    @property
    def endpoint(self) -> CauchyState:
        return CauchyState(self.x_end, self.node_y[0, -1], self.node_y[1, -1])

    def __call__(self, x):
        """Return (value, derivative) at x (scalar or array) via the
        integrator's dense interpolant."""
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty((2, xs.size), dtype=self.node_y.dtype)
        idx = np.clip(np.searchsorted(self._edges, xs, side="right") - 1,
                      0, len(self._segments) - 1)
        for i in range(len(self._segments)):
            sel = idx == i
            if np.any(sel):
                out[:, sel] = self._segments[i][2](xs[sel])
        if np.isscalar(x) or np.asarray(x).ndim == 0:
            return out[0, 0], out[1, 0]
        return out[0], out[1]


class ScaledTrajectory:
    """View of a [0, M] trajectory rescaled to [0, eps*M]:
    u(x) = eps * psi(x/eps), u'(x) = psi'(x/eps)."""

    def __init__(self, base: Trajectory, eps: float):
        self.base = base
        self.eps = float(eps)
        self.tol = base.tol

    @property
    def x_end(self) -> float:
        return self.eps * self.base.x_end

    @property
    def endpoint(self) -> CauchyState:
        end = self.base.endpoint
        return CauchyState(self.x_end, self.eps * end.value, end.derivative)

    def __call__(self, x):
        v, d = self.base(np.asarray(x) / self.eps)
        return self.eps * v, d


def _integrate(coefficient, x_end, y0, breakpoints, tol) -> Trajectory:
    """March the first-order system (psi, psi') piecewise to x_end."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    cuts = sorted({0.0, float(x_end), *(b for b in breakpoints if 0.0 < b < x_end)})
    segments = []
    node_x, node_y = [], []
    y = np.asarray(y0)

    def rhs(x, y):
        return [y[1], coefficient(x) * y[0]]

    for lo, hi in zip(cuts[:-1], cuts[1:]):
        sol = solve_ivp(rhs, (lo, hi), y, method="DOP853",
                        rtol=tol, atol=tol * 1e-3, dense_output=True)
        if not sol.success or not np.all(np.isfinite(sol.y)):
            raise NonConvergence(f"integration failed on [{lo}, {hi}]: {sol.message}")
        segments.append((lo, hi, sol.sol))
        node_x.append(sol.t)
        node_y.append(sol.y)
        y = sol.y[:, -1]
    return Trajectory(segments, np.concatenate(node_x),
                      np.concatenate(node_y, axis=1), tol)


def _solve_second_order(V, theta, gamma, z, tol, y0):
    gz = gamma * z
    if np.iscomplexobj(np.asarray(gz)) and np.imag(gz) != 0.0:
        y0 = np.asarray(y0, dtype=complex)
        gz = complex(gz)
    else:
        y0 = np.asarray(y0, dtype=float)
        gz = float(np.real(gz))

    def coefficient(x):
        return theta * V(x) - gz

    return _integrate(coefficient, V.support_end, y0, V.breakpoints, tol)


def solve_psi(V: Potential, theta: float, gamma: float = 0.0, z=0.0,
              tol: float = DEFAULT_TOL) -> Trajectory:
    """Solution of -psi'' + (theta*V - gamma*z)*psi = 0, psi(0)=0, psi'(0)=1."""
    return _solve_second_order(V, theta, gamma, z, tol, (0.0, 1.0))


def solve_psi_tilde(V: Potential, theta: float, gamma: float = 0.0, z=0.0,
                    tol: float = DEFAULT_TOL) -> Trajectory:
    """Companion solution with psi(0)=1, psi'(0)=0 (spans the solution space
    together with solve_psi; their Wronskian is -1)."""
    return _solve_second_order(V, theta, gamma, z, tol, (1.0, 0.0))


def solve_u(V: Potential, lam: float, eps: float, z,
            tol: float = DEFAULT_TOL) -> ScaledTrajectory:
    """Interior solution u on [0, eps*M] with u(0)=0, u'(0)=1, computed on the
    fixed domain [0, M] via the rescaling identity."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    base = solve_psi(V, eps * eps * lam, eps * eps, z, tol)
    return ScaledTrajectory(base, eps)


def solve_u_tilde(V: Potential, lam: float, eps: float, z,
                  tol: float = DEFAULT_TOL) -> Trajectory:
    """Second interior solution v with v(0)=1, v'(0)=0 on [0, eps*M].

    v(x) = psi_tilde_{eps^2*lam, eps^2}(x/eps) solves the same scaled equation;
    no eps prefactor is needed for the Wronskian with u to stay nonzero.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    base = solve_psi_tilde(V, eps * eps * lam, eps * eps, z, tol)
    return _TildeView(base, eps)


class _TildeView:
    """v(x) = base(x/eps) value, derivative base'(x/eps)/eps."""

    def __init__(self, base: Trajectory, eps: float):
        self.base = base
        self.eps = float(eps)
        self.tol = base.tol

    @property
    def x_end(self) -> float:
        return self.eps * self.base.x_end

    @property
    def endpoint(self) -> CauchyState:
        end = self.base.endpoint
        return CauchyState(self.x_end, end.value, end.derivative / self.eps)

    def __call__(self, x):
        v, d = self.base(np.asarray(x) / self.eps)
        return v, d / self.eps
