"""Independent checks of the representation number and of embeddings.

``brute_force_rep`` never consults the case analysis in :mod:`repdim.repnum`.
It scans the squared-distance ratio ``b`` directly: every singular point of
``(1-b)A - bI`` below ``-1``, a uniform grid, and the validity boundary, and
keeps the smallest embedding dimension that any distance matrix reached.
Spectra here come straight from LAPACK rather than the package's Jacobi
solver, so the two routes share no eigen-machinery either.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .embed import Embedding, affine_rank, schoenberg_batch
from .errors import GraphParseError, InapplicableError
from .formats import parse_graph6
from .graph import Graph, complement, regularity
from .spectral import DEFAULT_TOLERANCES, SpectrumSummary, ToleranceConfig, summarize

__all__ = [
    "ScanEntry",
    "OracleReport",
    "Verdict",
    "brute_force_rep",
    "verify_embedding",
    "complement_charpoly_residual",
    "sachs_complement_check",
    "read_graph6_stream",
]


@dataclass(frozen=True)
class ScanEntry:
    side: str  # "G" or "complement"
    kind: str  # "critical", "grid" or "boundary"
    b: float
    is_edm: bool
    dim: int
    x_rank: int  # rank of (1-b)A - bI

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "kind": self.kind,
            "b": self.b,
            "is_edm": self.is_edm,
            "dim": self.dim,
            "x_rank": self.x_rank,
        }


@dataclass(frozen=True)
class OracleReport:
    rep_oracle: int
    critical_only: bool
    details: tuple[ScanEntry, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "rep_oracle": self.rep_oracle,
            "critical_only": self.critical_only,
            "details": [d.to_dict() for d in self.details],
        }


def _distance_stack(a, bs):
    abar = 1.0 - a
    np.fill_diagonal(abar, 0.0)
    return a[None, :, :] + np.asarray(bs)[:, None, None] * abar[None, :, :]


def _x_ranks(eigs, bs):
    bs = np.asarray(bs, dtype=float)[:, None]
    x = np.abs((1.0 - bs) * eigs[None, :] - bs)
    return np.sum(x > 1e-9 * x.max(axis=1, keepdims=True), axis=1).tolist()


def _boundary(a, lo, hi, cfg):
    """Refine the validity boundary between a valid ``lo`` and an invalid ``hi``."""
    while hi - lo > cfg.tol_bisect * hi:
        mid = 0.5 * (lo + hi)
        if schoenberg_batch(_distance_stack(a, [mid]), cfg)[0].is_edm:
            lo = mid
        else:
            hi = mid
    return lo


def _scan_side(h: Graph, label: str, grid_points: int, cfg: ToleranceConfig) -> list[ScanEntry]:
    a = h.adjacency_matrix()
    eigs = np.linalg.eigvalsh(a)
    below = np.unique(np.round(eigs[eigs < -1.0 - 1e-9], 9))
    # take a raw eigenvalue from each cluster, not the rounded key
    criticals = [float(t / (t + 1.0)) for t in (eigs[np.argmin(np.abs(eigs - key))] for key in below)]
    distinct = sorted(set(np.round(eigs, 9)))
    b_max = 4.0
    if len(distinct) > 1 and distinct[1] < -1.0 - 1e-9:
        t2 = distinct[1]
        b_max = max(4.0, 2.0 * t2 / (t2 + 1.0))
    grid = np.linspace(1.0, b_max, grid_points + 1)[1:]

    entries = []
    for kind, bs in (("critical", criticals), ("grid", grid)):
        if len(bs) == 0:
            continue
        reports = schoenberg_batch(_distance_stack(a, bs), cfg)
        for b, rep, xr in zip(np.asarray(bs).tolist(), reports, _x_ranks(eigs, bs)):
            entries.append(ScanEntry(label, kind, b, rep.is_edm, rep.embedding_dim, xr))

    grid_entries = [e for e in entries if e.kind == "grid"]
    for prev, nxt in zip(grid_entries, grid_entries[1:]):
        if prev.is_edm and not nxt.is_edm:
            b = _boundary(a, prev.b, nxt.b, cfg)
            rep = schoenberg_batch(_distance_stack(a, [b]), cfg)[0]
            entries.append(ScanEntry(label, "boundary", b, rep.is_edm, rep.embedding_dim, _x_ranks(eigs, [b])[0]))
            break
    return entries


def brute_force_rep(g: Graph, grid_points: int = 1000, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> OracleReport:
    """Smallest embedding dimension over an exhaustive scan of ``b``, for ``g`` and its complement."""
    n = g.n
    if n < 3 or g.is_complete() or g.is_empty():
        raise InapplicableError("oracle needs n >= 3 and a graph that is neither complete nor empty")
    if grid_points < 100:
        raise ValueError("grid_points must be at least 100")

    details = _scan_side(g, "G", grid_points, cfg) + _scan_side(complement(g), "complement", grid_points, cfg)
    dims = [d.dim for d in details if d.is_edm]
    rep = min(dims + [n - 2])
    critical = [d.b for d in details if d.kind == "critical"]
    critical_only = all(
        d.dim >= n - 2
        for d in details
        if d.kind == "grid" and d.is_edm and not any(abs(d.b - c) <= 1e-9 * c for c in critical)
    )
    return OracleReport(rep, critical_only, tuple(details))


class Verdict:
    """Boolean outcome carrying the reasons for a failure."""

    __slots__ = ("ok", "reasons")

    def __init__(self, ok: bool, reasons: Sequence[str] = ()):
        self.ok = bool(ok)
        self.reasons = list(reasons)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Verdict(ok={self.ok}, reasons={self.reasons})"


def verify_embedding(g: Graph, e: Embedding, tol: float = 1e-8) -> Verdict:
    """Check edge/non-edge distances and that the points use exactly ``e.dim`` dimensions."""
    pts = np.asarray(e.points, dtype=float)
    reasons = []
    if pts.shape[0] != g.n:
        return Verdict(False, [f"expected {g.n} points, got {pts.shape[0]}"])
    if e.beta is not None and abs(e.alpha - e.beta) <= tol:
        reasons.append("alpha and beta coincide")
    if e.alpha <= 0 or (e.beta is not None and e.beta <= 0):
        reasons.append("distances must be positive")
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u, v]:
                if abs(dist[u, v] - e.alpha) > tol:
                    reasons.append(f"edge {u}-{v} has length {dist[u, v]:.12g}, expected {e.alpha:.12g}")
            elif e.beta is None:
                reasons.append(f"non-edge {u}-{v} present but no second distance given")
            elif abs(dist[u, v] - e.beta) > tol:
                reasons.append(f"non-edge {u}-{v} has length {dist[u, v]:.12g}, expected {e.beta:.12g}")
    rank = affine_rank(pts)
    if rank != pts.shape[1]:
        reasons.append(f"points span {rank} dimensions but have {pts.shape[1]} coordinates")
    return Verdict(not reasons, reasons)


def _charpoly(s: SpectrumSummary, x: float) -> float:
    return math.prod((x - e.tau) ** e.mult for e in s.distinct)


def complement_charpoly_residual(
    s_g: SpectrumSummary, s_gbar: SpectrumSummary, sample_points: Iterable[float]
) -> float:
    """Largest relative mismatch in the complement characteristic-polynomial identity."""
    n = s_g.n
    worst = 0.0
    for x in sample_points:
        for e in s_g.distinct:
            if abs(x + 1.0 + e.tau) < 1e-3:
                raise ValueError(f"sample point {x} is within 1e-3 of a pole at {-1.0 - e.tau}")
        lhs = _charpoly(s_gbar, x)
        correction = 1.0 - n * math.fsum(e.main_angle ** 2 / (x + 1.0 + e.tau) for e in s_g.distinct)
        rhs = (-1) ** n * _charpoly(s_g, -x - 1.0) * correction
        scale = max(abs(lhs), abs(rhs), 1e-300)
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def sachs_complement_check(g: Graph, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Complement spectrum of a k-regular graph equals {n-k-1} and {-lambda-1} over the rest."""
    k = regularity(g)
    if k is None:
        raise InapplicableError("graph is not regular")
    n = g.n
    lam = summarize(g, cfg).eigenvalues()
    # drop one copy of k (the largest eigenvalue)
    predicted = np.sort(np.concatenate([[n - k - 1.0], -lam[:-1] - 1.0]))
    actual = summarize(complement(g), cfg).eigenvalues()
    return bool(np.allclose(predicted, actual, rtol=0.0, atol=1e-8 * max(1.0, n)))


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Graphs from a graph6 stream, one per non-blank line."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield parse_graph6(line)
        except GraphParseError as exc:
            raise GraphParseError(f"{exc}", line=lineno) from exc
