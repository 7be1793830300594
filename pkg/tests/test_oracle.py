import math

import numpy as np
import pytest

from corpus import atlas_graphs, standard_corpus
from repdim.embed import Embedding, minimal_embedding
from repdim.errors import GraphParseError, InapplicableError
from repdim.formats import encode_graph6
from repdim.graph import complement, complete, cycle, disjoint_union, empty, path, petersen, regularity
from repdim.oracle import (
    brute_force_rep,
    complement_charpoly_residual,
    read_graph6_stream,
    sachs_complement_check,
    verify_embedding,
)
from repdim.repnum import representation_number
from repdim.spectral import SpectrumSummary, summarize

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
CANDIDATES = [0.37, 2.9, -0.43, 5.1, 1.7, -0.21, 3.6, 0.83]


def safe_samples(s, k=4):
    """First ``k`` candidate points at least 0.05 from every pole ``-1 - tau``."""
    return [x for x in CANDIDATES if all(abs(x + 1 + t) > 0.05 for t in s.taus)][:k]


def nontrivial(gs):
    return [g for g in gs if g.n >= 3 and not (g.is_complete() or g.is_empty())]


def test_brute_force_examples():
    assert brute_force_rep(path(3)).rep_oracle == 1
    assert brute_force_rep(cycle(4)).rep_oracle == 2


def test_brute_force_report_shape():
    r = brute_force_rep(cycle(5), grid_points=100)
    d = r.to_dict()
    assert list(d) == ["rep_oracle", "critical_only", "details"]
    kinds = {e["kind"] for e in d["details"]}
    assert {"critical", "grid"} <= kinds
    assert sum(e.kind == "grid" for e in r.details) == 200


def test_brute_force_preconditions():
    with pytest.raises(InapplicableError):
        brute_force_rep(complete(4))
    with pytest.raises(InapplicableError):
        brute_force_rep(empty(4))
    with pytest.raises(InapplicableError):
        brute_force_rep(path(2))
    with pytest.raises(ValueError):
        brute_force_rep(path(4), grid_points=50)


def test_verify_examples():
    e = Embedding(SQUARE, 1.0, math.sqrt(2), 2.0)
    v = verify_embedding(cycle(4), e)
    assert v and v.reasons == []
    bad = verify_embedding(path(4), e)
    assert not bad and any("non-edge 0-3" in r for r in bad.reasons)


def test_verify_octahedron():
    # antipodal pairs (0,1), (2,3), (4,5) are the non-edges
    pts = np.array([s * row for row in np.eye(3) for s in (1, -1)]) / math.sqrt(2)
    k222 = complement(disjoint_union([complete(2)] * 3))
    assert verify_embedding(k222, Embedding(pts, 1.0, math.sqrt(2), 2.0))


def test_verify_flags_wasted_dimension():
    padded = np.hstack([SQUARE, np.zeros((4, 1))])
    v = verify_embedding(cycle(4), Embedding(padded, 1.0, math.sqrt(2), 2.0))
    assert not v and "span 2" in v.reasons[0]


def test_verify_flags_equal_distances():
    v = verify_embedding(cycle(4), Embedding(SQUARE, 1.0, 1.0, 1.0))
    assert not v


def test_charpoly_residual_examples():
    assert complement_charpoly_residual(summarize(cycle(6)), summarize(complement(cycle(6))), [0.3, 5, -0.4]) < 1e-8
    p = petersen()
    assert complement_charpoly_residual(summarize(p), summarize(complement(p)), [0.3, 5, -0.4]) < 1e-8


def test_charpoly_residual_detects_corruption():
    s = summarize(path(4))
    betas = s.betas.copy()
    betas[-1] += 0.1
    bad = SpectrumSummary.from_data(s.taus, s.mults, betas)
    assert complement_charpoly_residual(bad, summarize(complement(path(4))), [0.3, 5, -0.4]) > 1e-3


def test_charpoly_residual_pole():
    s = summarize(cycle(6))
    with pytest.raises(ValueError):
        complement_charpoly_residual(s, summarize(complement(cycle(6))), [1.0])  # -1 - tau at tau = -2


@pytest.mark.parametrize("g", [cycle(5), petersen(), complete(4), cycle(6), empty(3)])
def test_sachs_examples(g):
    assert sachs_complement_check(g)


def test_sachs_rejects_irregular():
    with pytest.raises(InapplicableError):
        sachs_complement_check(path(3))


def test_read_graph6_stream():
    lines = [encode_graph6(cycle(5)) + "\n", "\n", encode_graph6(petersen())]
    assert list(read_graph6_stream(lines)) == [cycle(5), petersen()]
    with pytest.raises(GraphParseError) as exc:
        list(read_graph6_stream(["D?{", "A!"]))
    assert exc.value.line == 2


@pytest.mark.parametrize("g", nontrivial(standard_corpus()), ids=lambda g: f"n{g.n}e{g.num_edges}")
def test_oracle_agrees_with_engine(g):
    r = brute_force_rep(g)
    assert r.rep_oracle == representation_number(g).rep
    assert r.critical_only
    for d in r.details:
        if d.is_edm:
            assert d.dim >= d.x_rank - 2


@pytest.mark.parametrize("g", standard_corpus(), ids=lambda g: f"n{g.n}e{g.num_edges}")
def test_charpoly_identity_on_corpus(g):
    s = summarize(g)
    samples = safe_samples(s)
    assert len(samples) == 4
    assert complement_charpoly_residual(s, summarize(complement(g)), samples) < 1e-8
    if regularity(g) is not None:
        assert sachs_complement_check(g)


def test_exhaustive_seven_vertices():
    bad = []
    for g in nontrivial(atlas_graphs(7)):
        rep = representation_number(g).rep
        r = brute_force_rep(g, grid_points=200)
        e, _ = minimal_embedding(g)
        if not (r.rep_oracle == rep == e.dim and r.critical_only and verify_embedding(g, e)):
            bad.append(encode_graph6(g))
    assert bad == []
