"""Symmetric eigendecomposition and the spectral invariants of a graph.

The eigensolver is a cyclic Jacobi method in round-robin ordering: each
round rotates ``n // 2`` disjoint index pairs at once, which keeps the
Python-level loop at ``O(n)`` per sweep while all arithmetic stays in numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from .errors import NumericError
from .graph import Graph

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "EigenDecomposition",
    "SpectralEntry",
    "SpectrumSummary",
    "eigendecompose",
    "summarize",
    "group_spectrum",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used across the package.

    ``tol_group`` and ``tol_rank`` are relative: the effective eigenvalue gap
    threshold is ``tol_group * max(1, spectral radius)`` and the rank
    threshold is ``tol_rank * max|eigenvalue|`` of the matrix under test.
    ``tol_psd`` is scaled by ``max(1, max|eigenvalue|)``.
    """

    tol_residual: float = 1e-11
    tol_group: float = 1e-7
    tol_zero_angle: float = 1e-7
    tol_psd: float = 1e-9
    tol_rank: float = 1e-8
    tol_equality: float = 1e-8
    tol_bisect: float = 1e-12

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
                raise ValueError(f"{f.name} must be a positive finite number, got {v!r}")
        if not self.tol_group > self.tol_residual:
            raise ValueError("tol_group must exceed tol_residual")


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]


def _round_robin(n):
    """Yield index arrays (P, Q) for the n-1 (or n) rounds of a tournament."""
    m = n + (n % 2)
    players = list(range(m))
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            yield np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])
        players = [players[0], players[-1]] + players[1:-1]


def _jacobi(a, tol, max_sweeps=100):
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return a.diagonal().copy(), v
    norm = np.linalg.norm(a)
    rounds = list(_round_robin(n))

    def off(m):
        return float(np.linalg.norm(m - np.diag(m.diagonal())))

    target = tol * norm
    converged_once = False
    for _ in range(max_sweeps):
        if off(a) <= target:
            if converged_once or off(a) == 0.0:
                break
            # one more sweep pushes the remainder down to roundoff
            converged_once = True
        for p, q in rounds:
            apq = a[p, q]
            app, aqq = a[p, p], a[q, q]
            nz = apq != 0.0
            theta = np.where(nz, (aqq - app) / np.where(nz, 2.0 * apq, 1.0), 0.0)
            sgn = np.where(theta >= 0.0, 1.0, -1.0)
            t = np.where(nz, sgn / (np.abs(theta) + np.hypot(1.0, theta)), 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = ap * c - aq * s
            a[:, q] = ap * s + aq * c
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = a[q, p] = 0.0

            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    else:
        if off(a) > target:
            raise NumericError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return a.diagonal().copy(), v


def eigendecompose(a, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> EigenDecomposition:
    """Eigenpairs of a real symmetric matrix, eigenvalues ascending."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if not np.allclose(a, a.T, rtol=0.0, atol=cfg.tol_residual * scale):
        raise ValueError("matrix is not symmetric")
    a = (a + a.T) / 2.0
    w, v = _jacobi(a, cfg.tol_residual)
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]

    rho = float(np.abs(w).max(initial=0.0))
    if a.shape[0]:
        resid = np.linalg.norm(a @ v - v * w, axis=0).max()
        ortho = np.abs(v.T @ v - np.eye(a.shape[0])).max()
        if resid > cfg.tol_residual * max(1.0, rho) or ortho > cfg.tol_residual * max(1.0, a.shape[0]):
            raise NumericError(f"eigendecomposition residual {resid:.3g}, orthogonality error {ortho:.3g}")
    return EigenDecomposition(w, v)


@dataclass(frozen=True)
class SpectralEntry:
    tau: float
    mult: int
    main_angle: float


@dataclass(frozen=True)
class SpectrumSummary:
    """Distinct eigenvalues (ascending), multiplicities and main angles.

    ``bases`` holds an orthonormal basis of each eigenspace when the summary
    came from an actual decomposition; data-level summaries leave it empty.
    """

    n: int
    distinct: tuple[SpectralEntry, ...]
    bases: Optional[tuple[np.ndarray, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "distinct", tuple(self.distinct))
        if sum(e.mult for e in self.distinct) != self.n:
            raise ValueError("multiplicities must sum to n")
        taus = [e.tau for e in self.distinct]
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise ValueError("distinct eigenvalues must be strictly ascending")

    @classmethod
    def from_data(cls, taus, mults, betas) -> "SpectrumSummary":
        entries = tuple(SpectralEntry(float(t), int(m), float(b)) for t, m, b in zip(taus, mults, betas))
        return cls(sum(int(m) for m in mults), entries)

    @property
    def taus(self) -> np.ndarray:
        return np.array([e.tau for e in self.distinct])

    @property
    def mults(self) -> np.ndarray:
        return np.array([e.mult for e in self.distinct], dtype=int)

    @property
    def betas(self) -> np.ndarray:
        return np.array([e.main_angle for e in self.distinct])

    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues with repetition, ascending."""
        return np.repeat(self.taus, self.mults)

    @property
    def min_gap(self) -> Optional[float]:
        """Smallest gap between consecutive distinct eigenvalues."""
        if len(self.distinct) < 2:
            return None
        return float(np.diff(self.taus).min())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "distinct": [{"tau": e.tau, "mult": e.mult, "beta": e.main_angle} for e in self.distinct],
        }


def group_spectrum(dec: EigenDecomposition, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SpectrumSummary:
    w, v = dec.eigenvalues, dec.eigenvectors
    n = len(w)
    if n == 0:
        raise ValueError("empty spectrum")
    rho = float(np.abs(w).max())
    gap = cfg.tol_group * max(1.0, rho)
    cuts = np.flatnonzero(np.diff(w) > gap) + 1
    bounds = np.concatenate([[0], cuts, [n]])
    ones = np.ones(n)
    entries, bases = [], []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        block = v[:, lo:hi]
        beta = math.sqrt(float(np.sum((block.T @ ones) ** 2)) / n)
        if beta < cfg.tol_zero_angle:
            beta = 0.0
        entries.append(SpectralEntry(float(w[lo:hi].mean()), int(hi - lo), min(beta, 1.0)))
        bases.append(block)
    return SpectrumSummary(n, tuple(entries), tuple(bases))


def summarize(g: Graph, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SpectrumSummary:
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    return group_spectrum(eigendecompose(g.adjacency_matrix(), cfg), cfg)
