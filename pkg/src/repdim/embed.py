"""Euclidean distance matrices and explicit minimal two-distance embeddings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InapplicableError, InconsistencyError, NotEDMError
from .graph import Graph, classify_clique_union, complement
from .repnum import (
    Branch,
    RepResult,
    Side,
    Tau2Verdict,
    critical_b,
    representation_number,
    tau2_condition,
)
from .spectral import DEFAULT_TOLERANCES, SpectrumSummary, ToleranceConfig, summarize

__all__ = [
    "DistanceMatrixReport",
    "Embedding",
    "build_distance_matrix",
    "centering_basis",
    "schoenberg_test",
    "schoenberg_batch",
    "gower_test",
    "realize",
    "affine_rank",
    "critical_b_tau1",
    "critical_b_tau2",
    "boundary_b_bisection",
    "minimal_embedding",
]


@dataclass(frozen=True)
class DistanceMatrixReport:
    is_edm: bool
    embedding_dim: int
    witness: float  # most positive eigenvalue of the projected matrix


@dataclass(frozen=True)
class Embedding:
    """Points realising a graph with edge length ``alpha`` and non-edge length ``beta``.

    ``beta`` and ``b`` are ``None`` when the matrix had no second distance.
    """

    points: np.ndarray
    alpha: float
    beta: Optional[float]
    b: Optional[float]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "alpha": self.alpha,
            "beta": self.beta,
            "points": self.points.tolist(),
        }


def build_distance_matrix(g: Graph, b: float) -> np.ndarray:
    """Squared distances: 1 on edges, ``b`` on non-edges, 0 on the diagonal."""
    if not b > 0:
        raise ValueError(f"b must be positive, got {b}")
    a = g.adjacency_matrix()
    m = a + b * (1.0 - a)
    np.fill_diagonal(m, 0.0)
    return m


def centering_basis(n: int) -> np.ndarray:
    """Orthonormal basis (n x n-1) of the complement of the all-ones vector (Helmert columns)."""
    q = np.zeros((n, max(n - 1, 0)))
    for k in range(1, n):
        q[:k, k - 1] = 1.0
        q[k, k - 1] = -k
        q[:, k - 1] /= math.sqrt(k * (k + 1))
    return q


def _check_premetric(m):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("distance matrix must be square")
    if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(m).max(initial=0.0))):
        raise ValueError("distance matrix must be symmetric")
    if np.any(m.diagonal() != 0.0):
        raise ValueError("distance matrix must have a zero diagonal")
    off = m[~np.eye(m.shape[0], dtype=bool)]
    if np.any(off <= 0.0):
        raise ValueError("off-diagonal entries must be positive")
    return m


def _reports(eigs, cfg) -> list[DistanceMatrixReport]:
    """Reports for a stack of projected spectra, shape ``(k, m)``."""
    eigs = np.atleast_2d(eigs)
    if eigs.shape[1] == 0:
        return [DistanceMatrixReport(True, 0, 0.0) for _ in range(eigs.shape[0])]
    top = np.abs(eigs).max(axis=1)
    witness = eigs.max(axis=1)
    is_edm = witness <= cfg.tol_psd * np.maximum(1.0, top)
    dims = np.sum(np.abs(eigs) > (cfg.tol_rank * top)[:, None], axis=1)
    dims[top == 0] = 0
    return [
        DistanceMatrixReport(bool(ok), int(d), float(w))
        for ok, d, w in zip(is_edm.tolist(), dims.tolist(), witness.tolist())
    ]


def _report(eigs, cfg) -> DistanceMatrixReport:
    return _reports(np.asarray(eigs)[None, :], cfg)[0]


def schoenberg_batch(ms: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> list[DistanceMatrixReport]:
    """Schoenberg test on a stack of matrices of shape ``(k, n, n)``.

    Inputs are assumed pre-validated. The spectrum of ``PMP`` is the spectrum
    of ``M`` compressed to the complement of the all-ones vector plus one
    structural zero, so the compression is what gets diagonalised.
    """
    ms = np.asarray(ms, dtype=float)
    q = centering_basis(ms.shape[-1])
    return _reports(np.linalg.eigvalsh(q.T @ ms @ q), cfg)


def schoenberg_test(m, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> DistanceMatrixReport:
    m = _check_premetric(m)
    n = m.shape[0]
    p = np.eye(n) - np.full((n, n), 1.0 / n)
    pmp = p @ m @ p
    return _report(np.linalg.eigvalsh((pmp + pmp.T) / 2.0), cfg)


def gower_test(m, v, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> DistanceMatrixReport:
    m = _check_premetric(m)
    n = m.shape[0]
    v = np.asarray(v, dtype=float).reshape(n)
    if abs(v.sum() - 1.0) > 1e-9:
        raise ValueError("weight vector must sum to one")
    left = np.eye(n) - np.outer(np.ones(n), v)
    f = left @ m @ left.T
    return _report(np.linalg.eigvalsh((f + f.T) / 2.0), cfg)


def affine_rank(points, rtol: float = 1e-8) -> int:
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] < 2 or pts.shape[1] == 0:
        return 0
    sv = np.linalg.svd(pts - pts.mean(axis=0), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def _infer_b(m):
    off = m[~np.eye(m.shape[0], dtype=bool)]
    others = off[np.abs(off - 1.0) > 1e-9]
    if others.size == 0:
        return None
    return float(np.median(others))


def realize(m, cfg: ToleranceConfig = DEFAULT_TOLERANCES, b: Optional[float] = None) -> Embedding:
    """Coordinates whose squared pairwise distances reproduce ``m``.

    The Gram matrix ``-PMP/2`` is factored over its eigenvalues above the
    rank threshold; the resulting dimension equals the embedding dimension.
    """
    m = _check_premetric(m)
    rep = schoenberg_test(m, cfg)
    if not rep.is_edm:
        raise NotEDMError(f"not a Euclidean distance matrix (positive eigenvalue {rep.witness:.3g})")
    n = m.shape[0]
    p = np.eye(n) - np.full((n, n), 1.0 / n)
    gram = -0.5 * (p @ m @ p)
    w, v = np.linalg.eigh((gram + gram.T) / 2.0)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    top = float(np.abs(w).max(initial=0.0))
    keep = w > cfg.tol_rank * top if top > 0 else np.zeros(n, dtype=bool)
    pts = v[:, keep] * np.sqrt(w[keep])
    if b is None:
        b = _infer_b(m)
    return Embedding(pts, 1.0, None if b is None else math.sqrt(b), b)


def critical_b_tau1(s: SpectrumSummary, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    tau = s.distinct[0].tau
    if not tau < -1.0 - cfg.tol_group * max(1.0, abs(tau)):
        raise InapplicableError("smallest eigenvalue is not below -1; graph is a union of cliques")
    return critical_b(tau)


def critical_b_tau2(s: SpectrumSummary, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Optional[float]:
    if len(s.distinct) < 2:
        return None
    tau = s.distinct[1].tau
    if not tau < -1.0 - cfg.tol_group * max(1.0, abs(tau)):
        return None
    return critical_b(tau)


def _top_compressed_eig(a, q, b):
    """Largest eigenvalue of ``A + b*Abar`` restricted to the complement of the ones vector."""
    m = a + b * (1.0 - a)
    np.fill_diagonal(m, 0.0)
    return float(np.linalg.eigvalsh(q.T @ m @ q)[-1])


def boundary_b_bisection(g: Graph, cfg: ToleranceConfig = DEFAULT_TOLERANCES, max_doublings: int = 60) -> float:
    """Largest ``b > 1`` for which ``A + b*Abar`` is still a distance matrix.

    At that boundary an eigenvalue of the projected matrix crosses zero, so
    the embedding dimension is at most ``n - 2``.
    """
    if g.is_complete() or g.is_empty():
        raise InapplicableError("complete and empty graphs have no distance boundary")
    a = g.adjacency_matrix()
    q = centering_basis(g.n)

    def f(b):
        return _top_compressed_eig(a, q, b)

    lo = 1.0 + 1e-6
    if f(lo) > 0.0:
        raise InconsistencyError("distance matrix invalid just above b = 1")
    hi = 2.0
    for _ in range(max_doublings):
        if f(hi) > 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise InconsistencyError("no sign change found while bracketing the distance boundary")
    while hi - lo > cfg.tol_bisect * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return lo


def _candidates(g, cfg):
    """Yield (side, branch, b_on_side, side_graph) for every b worth testing."""
    for side, h in ((Side.G, g), (Side.COMPLEMENT, complement(g))):
        if classify_clique_union(h) is not None:
            continue
        s = summarize(h, cfg)
        yield side, Branch.TAU1, critical_b_tau1(s, cfg), h
        b2 = critical_b_tau2(s, cfg)
        if b2 is not None and tau2_condition(s, cfg) in (Tau2Verdict.STRICT, Tau2Verdict.EQUALITY):
            yield side, Branch.TAU2, b2, h
        yield side, Branch.FALLBACK, boundary_b_bisection(h, cfg), h


_BRANCH_RANK = {Branch.TAU1: 0, Branch.TAU2: 1, Branch.FALLBACK: 2}


def minimal_embedding(g: Graph, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> tuple[Embedding, RepResult]:
    """Points for ``g`` in the smallest possible dimension, plus the spectral verdict.

    Edge length is always 1. Raises ``InconsistencyError`` if the dimension
    achieved differs from the computed representation number.
    """
    result = representation_number(g, cfg)
    n = g.n
    if n == 1:
        return Embedding(np.zeros((1, 0)), 1.0, None, None), result
    if g.is_complete() or g.is_empty():
        emb = realize(build_distance_matrix(g, 2.0), cfg, b=2.0)
        if emb.dim != result.rep:
            raise InconsistencyError(f"simplex realised in {emb.dim} dimensions, expected {result.rep}")
        return emb, result

    best = None
    for side, branch, b, h in _candidates(g, cfg):
        m = build_distance_matrix(h, b)
        rep = schoenberg_test(m, cfg)
        if not rep.is_edm:
            continue
        key = (rep.embedding_dim, _BRANCH_RANK[branch], side is Side.COMPLEMENT)
        if best is None or key < best[0]:
            best = (key, side, b, m)
    if best is None:
        raise InconsistencyError("no candidate distance matrix was valid")
    (dim, _, _), side, b, m = best
    if dim != result.rep:
        raise InconsistencyError(f"best embedding has dimension {dim}, representation number is {result.rep}")

    emb = realize(m, cfg, b=b)
    if side is Side.COMPLEMENT:
        # complement edges sit at distance 1, ours at sqrt(b): rescale so our edges are unit
        emb = Embedding(emb.points / math.sqrt(b), 1.0, 1.0 / math.sqrt(b), 1.0 / b)
    if emb.dim != dim or affine_rank(emb.points) != dim:
        raise InconsistencyError(
            f"realised points span {affine_rank(emb.points)} dimensions, expected {dim}"
        )
    return emb, result
