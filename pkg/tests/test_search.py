import numpy as np
import pytest

from g2kuls.g2group import group_for
from g2kuls.rootsys import ALPHA, OMEGA, Root
from g2kuls.search import CandidateSet, satisfies


@pytest.fixture(scope="module")
def G():
    return group_for(3)


def _brute(G, mats, conds):
    hits = []
    for i, m in enumerate(mats):
        g = m
        ok = True
        for x, y in conds:
            lhs = G.ctx.mul_arrays(g[:, :, None], x[None, :, :])
            lhs = np.bitwise_xor.reduce(lhs, axis=1)
            rhs = G.ctx.mul_arrays(y[:, :, None], g[None, :, :])
            rhs = np.bitwise_xor.reduce(rhs, axis=1)
            ok &= np.array_equal(lhs, rhs)
        if ok:
            hits.append(i)
    return hits


def test_first_and_count_match_brute_force(G):
    mats = G.G_omega.mats
    conds = [(G.kappa(OMEGA, 1).mat, G.kappa(OMEGA, 1).mat)]
    hits = _brute(G, mats, conds)
    cs = CandidateSet.from_array(G.ctx, "G_omega", mats, chunk=100)
    res = cs.first(conds)
    assert res.index == hits[0] and np.array_equal(res.witness, mats[hits[0]])
    assert cs.count(conds) == len(hits) == 8  # centralizer of a transvection in SL2(8)
    more = conds + [(G.kappa(OMEGA, 3).mat, G.kappa(OMEGA, 5).mat)]
    assert cs.first(more).index == (_brute(G, mats, more) or [None])[0]


def test_chunking_does_not_change_the_witness(G):
    mats = G.G_omega.mats
    conds = [(G.kappa(-OMEGA, 1).mat, G.kappa(-OMEGA, 1).mat), (G.kappa(OMEGA, 2).mat, G.kappa(OMEGA, 2).mat)]
    idx = {CandidateSet.from_array(G.ctx, "x", mats, chunk=c).first(conds).index for c in (1, 7, 64, 10_000)}
    assert len(idx) == 1


def test_memo_reuse_gives_same_answers(G):
    mats = G.G_omega.mats
    cs = CandidateSet.from_array(G.ctx, "G_omega", mats)
    base = (G.kappa(OMEGA, 1).mat, G.kappa(OMEGA, 1).mat)
    answers = []
    for b in range(8):
        answers.append(cs.first([base, (G.kappa(OMEGA, 3).mat, G.kappa(OMEGA, b).mat)]).index)
    fresh = [
        CandidateSet.from_array(G.ctx, "fresh", mats).first([base, (G.kappa(OMEGA, 3).mat, G.kappa(OMEGA, b).mat)]).index
        for b in range(8)
    ]
    assert answers == fresh
    assert answers[3] is not None and answers[5] is None


def test_satisfies_and_empty_conditions(G):
    mats = np.stack([G.identity.mat, G.kappa(ALPHA, 1).mat])
    x = G.kappa(Root(1, 1), 1).mat
    assert satisfies(G.ctx, mats, (x, x)).tolist() == [True, False]
    with pytest.raises(ValueError):
        CandidateSet.from_array(G.ctx, "x", mats).first([])


def test_streamed_size_is_checked(G):
    mats = G.G_omega.mats
    cs = CandidateSet(G.ctx, "wrong", len(mats) + 1, lambda: iter([mats]))
    with pytest.raises(AssertionError):
        cs.first([(G.identity.mat, G.identity.mat)])
