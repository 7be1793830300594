"""Euclidean representation number of a graph.

Every representation of ``G`` scales to a squared-distance matrix
``M = A + b * Abar`` with ``b > 1`` for ``G`` or for its complement. Such a
matrix can only embed below ``n - 2`` dimensions at ``b = tau/(tau + 1)`` for
the smallest or second smallest adjacency eigenvalue ``tau``; the functions
here decide which of those choices succeed and how many dimensions they save.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

from .errors import InapplicableError
from .graph import (
    Graph,
    bipartite_component_count,
    classify_clique_union,
    complement,
    components,
    regularity,
)
from .spectral import DEFAULT_TOLERANCES, SpectrumSummary, ToleranceConfig, summarize

__all__ = [
    "Case",
    "Side",
    "Branch",
    "Tau2Verdict",
    "Certificate",
    "RepResult",
    "m1_prime",
    "tau2_condition",
    "m2_prime",
    "critical_b",
    "representation_number",
    "representation_number_regular",
    "srg_rep",
    "line_graph_bound",
]


class Case(str, Enum):
    COMPLETE = "Complete"
    EMPTY = "Empty"
    CLIQUE_UNION = "CliqueUnion"
    CLIQUE_UNION_COMPLEMENT = "CliqueUnionComplement"
    SPECTRAL = "Spectral"


class Side(str, Enum):
    G = "G"
    COMPLEMENT = "complement"


class Branch(str, Enum):
    TAU1 = "Tau1"
    TAU2 = "Tau2"
    FALLBACK = "Fallback"


class Tau2Verdict(str, Enum):
    NOT_APPLICABLE = "NotApplicable"
    STRICT = "StrictInequality"
    EQUALITY = "Equality"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class Certificate:
    """Which choice of ``b`` (and on which side) attains the minimum.

    ``b`` is expressed on the chosen side: for ``Side.COMPLEMENT`` it is the
    squared-distance ratio of the complement's representation, so the input
    graph's own ratio is ``1 / b``. ``b`` is ``None`` for the fallback, whose
    value comes from a numerical search.
    """

    side: Side
    branch: Branch
    b: Optional[float]
    m1p: int
    m2p: int
    m1p_bar: int
    m2p_bar: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["side"] = self.side.value
        d["branch"] = self.branch.value
        return d


@dataclass(frozen=True)
class RepResult:
    rep: int
    case: Case
    certificate: Optional[Certificate] = None

    def to_dict(self) -> dict:
        return {
            "rep": self.rep,
            "case": self.case.value,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def _below_minus_one(tau: float, cfg: ToleranceConfig) -> bool:
    return tau < -1.0 - cfg.tol_group * max(1.0, abs(tau))


def critical_b(tau: float) -> float:
    """The ratio ``tau/(tau + 1)`` at which ``(1-b)A - bI`` becomes singular."""
    return tau / (tau + 1.0)


def m1_prime(s: SpectrumSummary) -> int:
    """Dimensions saved at the smallest eigenvalue: ``m1 + 1`` if its eigenspace is orthogonal to the all-ones vector."""
    first = s.distinct[0]
    return first.mult + 1 if first.main_angle == 0.0 else first.mult


def tau2_condition(s: SpectrumSummary, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Tau2Verdict:
    """Whether ``b = tau2/(tau2 + 1)`` yields a distance matrix, and if it is tight.

    Works on raw summary data, so exact spectra can be fed in directly.
    """
    d = s.distinct
    if len(d) < 2 or not _below_minus_one(d[1].tau, cfg) or d[0].mult != 1 or d[1].main_angle != 0.0:
        return Tau2Verdict.NOT_APPLICABLE
    t1, t2 = d[0].tau, d[1].tau
    lhs = d[0].main_angle ** 2 / (t2 - t1)
    rhs = math.fsum(e.main_angle ** 2 / (e.tau - t2) for e in d[2:])
    if abs(lhs - rhs) <= cfg.tol_equality * max(1.0, abs(lhs), abs(rhs)):
        return Tau2Verdict.EQUALITY
    return Tau2Verdict.STRICT if lhs > rhs else Tau2Verdict.VIOLATED


def m2_prime(s: SpectrumSummary, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> int:
    verdict = tau2_condition(s, cfg)
    if verdict is Tau2Verdict.EQUALITY:
        return s.distinct[1].mult + 2
    if verdict is Tau2Verdict.STRICT:
        return s.distinct[1].mult + 1
    return 0


def _side_primes(s: SpectrumSummary, cfg: ToleranceConfig) -> tuple[int, int]:
    if not _below_minus_one(s.distinct[0].tau, cfg):
        raise InapplicableError("smallest eigenvalue is not below -1; graph is a union of cliques")
    return m1_prime(s), m2_prime(s, cfg)


def _spectral_certificate(sg, sc, cfg, primes_g, primes_c) -> tuple[int, Certificate]:
    (m1p, m2p), (m1p_bar, m2p_bar) = primes_g, primes_c
    best = max(m1p, m2p, m1p_bar, m2p_bar, 2)
    # tie-break: Tau1 before Tau2 before Fallback, G before complement
    choices = [
        (m1p, Side.G, Branch.TAU1, sg, 0),
        (m1p_bar, Side.COMPLEMENT, Branch.TAU1, sc, 0),
        (m2p, Side.G, Branch.TAU2, sg, 1),
        (m2p_bar, Side.COMPLEMENT, Branch.TAU2, sc, 1),
    ]
    for value, side, branch, s, idx in choices:
        if s is not None and value == best:
            b = critical_b(s.distinct[idx].tau)
            return best, Certificate(side, branch, b, m1p, m2p, m1p_bar, m2p_bar)
    side = Side.G if sg is not None else Side.COMPLEMENT
    return best, Certificate(side, Branch.FALLBACK, None, m1p, m2p, m1p_bar, m2p_bar)


def representation_number(g: Graph, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RepResult:
    n = g.n
    if n == 0:
        raise InapplicableError("the representation number of the null graph is undefined")
    if g.is_complete():
        return RepResult(n - 1, Case.COMPLETE)
    if g.is_empty():
        return RepResult(n - 1, Case.EMPTY)

    gc = complement(g)
    info, info_c = classify_clique_union(g), classify_clique_union(gc)
    if info is not None or info_c is not None:
        # exactly one side is a union of >= 2 cliques; the other side carries the spectral data
        case = Case.CLIQUE_UNION if info is not None else Case.CLIQUE_UNION_COMPLEMENT
        r = (info or info_c).r
        if info is not None:
            s_other = summarize(gc, cfg)
            best, cert = _spectral_certificate(None, s_other, cfg, (0, 0), _side_primes(s_other, cfg))
        else:
            s_other = summarize(g, cfg)
            best, cert = _spectral_certificate(s_other, None, cfg, _side_primes(s_other, cfg), (0, 0))
        return RepResult(n - max(r, 2), case, cert)

    sg, sc = summarize(g, cfg), summarize(gc, cfg)
    best, cert = _spectral_certificate(sg, sc, cfg, _side_primes(sg, cfg), _side_primes(sc, cfg))
    return RepResult(n - best, Case.SPECTRAL, cert)


def representation_number_regular(g: Graph, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> int:
    """Shortcut for regular graphs, using multiplicities only."""
    k = regularity(g)
    if k is None:
        raise InapplicableError("graph is not regular")
    n = g.n
    if g.is_complete() or g.is_empty():
        return n - 1
    info = classify_clique_union(g) or classify_clique_union(complement(g))
    if info is not None:
        return n - info.r
    s = summarize(g, cfg)
    m1 = s.distinct[0].mult
    r = len(components(g))
    if r == 1:
        return n - 1 - max(m1, s.distinct[-2].mult)
    return n - 1 - max(m1, r - 1)


def srg_rep(n: int, k: int, lam: int, mu: int, tol: float = 1e-9) -> int:
    """Representation number of a primitive strongly regular graph from its parameters."""
    if mu == 0 or mu == k:
        raise InapplicableError("disjoint union of cliques or complete multipartite graph")
    disc = (mu - lam) ** 2 + 4 * (k - mu)
    if disc <= 0:
        raise InapplicableError("infeasible strongly regular parameters")
    skew = ((n - 1) * (mu - lam) - 2 * k) / math.sqrt(disc)
    mults = [((n - 1) + skew) / 2, ((n - 1) - skew) / 2]
    for m in mults:
        if abs(m - round(m)) > tol or round(m) <= 0:
            raise InapplicableError(f"infeasible parameters: eigenvalue multiplicity {m:.6g} is not a positive integer")
    rep = ((n - 1) - abs(skew)) / 2
    if abs(rep - round(rep)) > tol:
        raise InapplicableError("infeasible parameters: non-integral representation number")
    return int(round(rep))


def line_graph_bound(g: Graph) -> tuple[int, bool]:
    """Upper bound on the representation number of the line graph, and whether it is attained."""
    e = g.num_edges
    if e == 0:
        raise InapplicableError("line graph of an edgeless graph is undefined")
    r = bipartite_component_count(g)
    return g.n - 1 - r, e >= 2 * (g.n - r)
