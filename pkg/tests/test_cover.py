import pytest
from hypothesis import given, settings, strategies as st

from locc.chordality import is_chordal, is_r_locally_chordal
from locc.cover import (
    CoverResourceError,
    compare_covers,
    cover_chordal_within,
    cover_report,
    cover_to_dot,
    cover_to_text,
    identify_classes,
    is_identity_cover,
    is_tree_truncation,
    lift_clique,
    relator_walks,
    replay_transcript,
    short_cycle_generation_check,
    truncated_local_cover,
    verify_ball_preserving,
)
from locc.errors import PreconditionError
from locc.graph import Graph, girth, is_connected
from oracles import corpus, oracle_cover_key
from strategies import C, K, P, W, chordal_graphs, graphs


def test_c4_below_its_length_is_a_path():
    cov = truncated_local_cover(C(4), 3, R=3)
    assert cov.converged and cov.num_classes == 7
    assert is_tree_truncation(cov) and max(d for _, d in _degrees(cov.graph)) == 2
    assert sorted(cov.depth) == [0, 1, 1, 2, 2, 3, 3]


def test_c4_at_its_length_is_itself():
    cov = truncated_local_cover(C(4), 4, R=3)
    assert cov.converged and cov.num_classes == 4
    assert is_identity_cover(cov)


def _degrees(H):
    return [(v, len(H.adj[v])) for v in range(H.n)]


def test_cover_preconditions():
    with pytest.raises(PreconditionError):
        truncated_local_cover(C(4), -1)
    with pytest.raises(PreconditionError):
        truncated_local_cover(C(4), 3, base=4)
    with pytest.raises(PreconditionError):
        truncated_local_cover(C(4), 3, R=0)
    with pytest.raises(PreconditionError):
        truncated_local_cover(C(4), 3, R=4, L=3)


def test_relators_are_closed_walks():
    # relators are grouped by start vertex and list the vertices visited after it
    groups = relator_walks(C(4), 4)
    assert len(groups) == 4
    for v, group in enumerate(groups):
        assert len(group) == 2
        for w in group:
            assert len(w) == 4 and w[-1] == v
            assert all(C(4).has_edge(a, b) for a, b in zip((v,) + w, w))
    assert all(group == [] for group in relator_walks(C(4), 3))


@settings(max_examples=30)
@given(chordal_graphs(min_n=1, max_n=8))
def test_chordal_graphs_have_identity_covers(G):
    if not is_connected(G):
        return
    cov = truncated_local_cover(G, 3, R=G.n + 1)
    assert cov.converged and is_identity_cover(cov)


def test_small_covers_match_walk_oracle():
    checked = 0
    for G in corpus(5, connected=True):
        for r in (3, 4, 5):
            for R in (2, 3):
                L = 2 * R + 2 if max(len(a) for a in G.adj) <= 3 else min(R + 3, 6)
                cov = truncated_local_cover(G, r, R=R)
                if not cov.converged:
                    continue
                assert cov.key() == oracle_cover_key(G, r, 0, R, L), (G.edges, r, R)
                checked += 1
    assert checked >= 150


@settings(max_examples=40)
@given(graphs(min_n=2, max_n=7, connected=True), st.integers(3, 5))
def test_transcript_replays(G, r):
    cov = truncated_local_cover(G, r, R=3)
    assert replay_transcript(cov)


@settings(max_examples=40)
@given(graphs(min_n=2, max_n=6, connected=True), st.integers(3, 5), st.integers(2, 4))
def test_more_budget_never_adds_classes(G, r, R):
    sizes = [truncated_local_cover(G, r, R=R, L=L).num_classes for L in (R, R + 2, R + 4)]
    assert sizes == sorted(sizes, reverse=True)


def test_class_limit(monkeypatch):
    monkeypatch.setenv("LOCC_CLASS_LIMIT", "20")
    with pytest.raises(CoverResourceError):
        truncated_local_cover(C(6), 3, R=12)
    with pytest.raises(CoverResourceError):
        truncated_local_cover(C(5), 3, R=30, class_limit=10)


# ---------------------------------------------------------------- checks


def test_ball_preserving_examples():
    k4 = truncated_local_cover(K(4), 3)
    assert verify_ball_preserving(k4).passed
    path = truncated_local_cover(C(4), 3, R=6)
    assert verify_ball_preserving(path).passed
    over_zero = [c for c in range(path.num_classes) if path.projection[c] == 0]
    bad = identify_classes(path, *over_zero[:2])
    entry = verify_ball_preserving(bad)
    assert entry.verdict == "fail" and entry.witness is not None


def test_unconverged_cover_is_inconclusive():
    cov = truncated_local_cover(C(5), 3, R=4, L=4)
    assert not cov.converged
    assert verify_ball_preserving(cov).verdict == "inconclusive"
    assert cover_chordal_within(cov).verdict == "inconclusive"
    assert short_cycle_generation_check(cov).verdict == "inconclusive"
    assert cover_report(cov).verdict == "inconclusive"


def test_chordal_within_examples():
    assert cover_chordal_within(truncated_local_cover(C(6), 5, R=6)).passed
    c6 = cover_chordal_within(truncated_local_cover(C(6), 6, R=8))
    assert c6.verdict == "fail" and c6.witness["kind"] == "hole"
    assert c6.witness["host"] == [0, 1, 2, 3, 4, 5]
    w4 = cover_chordal_within(truncated_local_cover(W(4), 3))
    assert w4.verdict == "fail" and w4.witness["kind"] == "wheel" and w4.witness["host"] == [1, 2, 3, 4]


def test_chordal_within_matches_local_chordality():
    for G in corpus(6, connected=True):
        for r in (3, 4, 5):
            cov = truncated_local_cover(G, r)
            if cov.converged:
                assert cover_chordal_within(cov).passed == is_r_locally_chordal(G, r).holds


def test_lift_examples():
    one = lift_clique(truncated_local_cover(C(4), 4, R=4), {0, 1})
    assert one.ok and len(one.lifts) == 1
    many = lift_clique(truncated_local_cover(C(4), 3, R=4), {0, 1})
    assert many.ok and len(many.lifts) > 1 and many.neighbourhoods_disjoint
    tri = lift_clique(truncated_local_cover(K(4), 3), {0, 1, 2})
    assert tri.ok and len(tri.lifts) == 1
    with pytest.raises(PreconditionError):
        lift_clique(truncated_local_cover(C(4), 4), {0, 2})
    with pytest.raises(PreconditionError):
        lift_clique(truncated_local_cover(P(6), 3, R=3), {4, 5})


def test_corrupted_cover_breaks_lifts():
    path = truncated_local_cover(C(4), 3, R=6)
    # gluing the classes over 1 at depths 1 and 3 closes a 4-cycle next to the base
    a = next(c for c in range(path.num_classes) if path.projection[c] == 1 and path.depth[c] == 1)
    b = next(c for c in range(path.num_classes) if path.projection[c] == 1 and path.depth[c] == 3)
    rep = lift_clique(identify_classes(path, a, b), {0, 1})
    assert not rep.ok and rep.witness["shared"]


def test_short_cycle_generation_examples():
    c4 = short_cycle_generation_check(truncated_local_cover(C(4), 4))
    assert c4.passed and c4.detail["checked"] == 1
    tree = short_cycle_generation_check(truncated_local_cover(C(4), 3))
    assert tree.passed and tree.detail["checked"] == 0
    assert short_cycle_generation_check(truncated_local_cover(K(4), 3)).passed


def test_girth_and_tree_truncations():
    for G in corpus(6, connected=True):
        for r in (3, 4, 5):
            cov = truncated_local_cover(G, r)
            if cov.converged:
                assert is_tree_truncation(cov) == (girth(G).length > r)


# ---------------------------------------------------------------- comparison


def test_compare_examples():
    assert compare_covers(K(4), 5).status == "isomorphic"
    assert compare_covers(C(6), 5).status == "isomorphic"
    with pytest.raises(PreconditionError):
        compare_covers(C(4), 4)
    with pytest.raises(PreconditionError):
        compare_covers(K(3), 2)


@settings(max_examples=25)
@given(chordal_graphs(min_n=1, max_n=7))
def test_chordal_graphs_compare_isomorphic(G):
    assert is_chordal(G)
    assert compare_covers(G, 5).status == "isomorphic"


# ---------------------------------------------------------------- dumps


def test_text_dump():
    cov = truncated_local_cover(C(4), 4, R=3)
    lines = [ln for ln in cover_to_text(cov).splitlines() if not ln.startswith("#")]
    assert lines == ["4 4", "0 1", "0 2", "1 3", "2 3"]
    rows = [ln.split() for ln in cover_to_text(cov).splitlines() if ln.startswith("# ") and ln[2].isdigit()]
    assert [row[1:4] for row in rows][0] == ["0", "0", "0"]
    assert sorted(int(row[3]) for row in rows) == [0, 1, 2, 3]


def test_dot_dump():
    dot = cover_to_dot(truncated_local_cover(C(4), 3, R=2))
    assert dot.startswith("graph") and dot.rstrip().endswith("}")
    assert dot.count("--") == 4
