import itertools

import numpy as np
import pytest

from g2kuls.counterexample import ConfigError, Counterexample, RelationError, Representation, build_t, pairs, validate
from g2kuls.gammagrp import enumerate_gamma, from_word, gmul
from g2kuls.gf2m import field_make
from g2kuls.rootsys import ALPHA, BETA, OMEGA, ROOTS, Root, pairing


def test_configuration_validation():
    validate(7, 3)
    validate(5, 4)
    validate(3, 2, control=True)
    with pytest.raises(ConfigError):
        validate(5, 3)
    with pytest.raises(ConfigError):
        validate(3, 2)
    with pytest.raises(ConfigError):
        validate(4, 4)


def test_t_has_order_q(setup73, setup54):
    assert setup73.t.order() == 7
    assert setup54.t.order() == 5
    assert build_t(7, field_make(3)) == setup73.t


def test_rho_satisfies_relations_and_is_a_homomorphism(setup73):
    q = 7
    elems = enumerate_gamma(q)
    for a in range(8):
        rho = setup73.build_rho(a)
        assert all(rho.relation_checks().values())
        for x, y in itertools.product(elems[::5], elems[::3]):
            assert rho.image(gmul(x, y, q)) == rho.image(x) * rho.image(y)
        for word in ("rsRz", "zzsrrS", "RRRs"):
            assert rho.evaluate(word) == rho.image(from_word(word, q))


def test_broken_generator_images_are_rejected(setup73):
    rho = setup73.build_rho(1)
    bad = Representation(7, rho.ctx, rho.img_r, rho.img_s, setup73.G.kappa(ALPHA, 1))
    assert not all(bad.relation_checks().values())
    with pytest.raises(RelationError):
        bad.check()


def test_conj_u_properties(setup73):
    G = setup73.G
    assert setup73.conj_u(0).is_identity
    s = setup73.s_alpha
    for x in range(8):
        u = setup73.conj_u(x)
        assert u * s * u.inv() == s * G.kappa(OMEGA, G.ctx.mul(x, x))
        for y in range(8):
            assert u * G.kappa(OMEGA, y) == G.kappa(OMEGA, y) * u
    assert setup73.verify_restriction_conjugacy(0).is_identity
    for a in range(8):
        g = setup73.verify_restriction_conjugacy(a)
        assert G.v_coords(g) is not None


def test_full_representations_not_conjugate_by_u(setup73):
    for a in range(1, 8):
        g = setup73.conj_u(setup73.ctx.sqrt(a))
        assert setup73.build_rho(0).conjugate(g) != setup73.build_rho(a)


@pytest.mark.parametrize("fixture, dim", [("setup73", 4), ("setup54", 4), ("control32", 8)])
def test_centralizer_dimension(request, fixture, dim):
    setup = request.getfixturevalue(fixture)
    assert setup.centralizer_fixed_dim() == dim
    oracle = [r for r in ROOTS if pairing(r, ALPHA) % setup.q == 0]
    assert 2 + len(oracle) == dim
    assert setup.fixed_roots() == oracle


def test_control_fixed_roots(control32):
    assert set(control32.fixed_roots()) == {OMEGA, -OMEGA, BETA, -BETA, Root(3, 1), -Root(3, 1)}


def test_identity_centralizes_t(setup73):
    # Ad(1) - 1 = 0 leaves everything fixed
    assert setup73.centralizer_fixed_dim(setup73.G.identity) == 14


def test_nonconjugacy_scan_gf8(setup73):
    zeta = setup73.ctx.element_of_order(7)
    res = setup73.nonconjugacy_search(0, zeta)
    assert not res.found and res.scanned == 49 * 504 == 24696
    for a, b in pairs(range(8)):
        assert not setup73.nonconjugacy_search(a, b).found
    same = setup73.nonconjugacy_search(3, 3)
    assert same.found
    g = setup73.G.identity.__class__(setup73.ctx, same.witness)
    assert setup73.build_rho(3).conjugate(g) == setup73.build_rho(3)


def test_candidate_set_is_t_times_g_omega(setup73):
    G = setup73.G
    tgw = setup73.torus_times_g_omega
    assert tgw.size == 24696
    # every element of T*G_omega centralizes t; count via the r-condition alone
    t = setup73.t.mat
    assert tgw.count([(t, t)]) == 24696


def test_random_words_deterministic(setup73):
    w1 = setup73.random_words(50, seed=7, length=10)
    w2 = setup73.random_words(50, seed=7, length=10)
    w3 = setup73.random_words(50, seed=8, length=10)
    a = np.concatenate(list(w1._batches()))
    b = np.concatenate(list(w2._batches()))
    c = np.concatenate(list(w3._batches()))
    assert np.array_equal(a, b) and not np.array_equal(a, c)
    for m in a[:5]:
        assert setup73.G.is_lie_automorphism(setup73.G.identity.__class__(setup73.ctx, m))


def test_random_word_search_small(setup73):
    words = setup73.random_words(2000, seed=1)
    for a, b in pairs(range(8))[:6]:
        assert not setup73.random_word_search(words, a, b).found


def test_sl2_pair_test(setup73):
    assert setup73.sl2_pair_test(2, 2).found
    for a, b in pairs(range(8)):
        assert not setup73.sl2_pair_test(a, b).found
    assert not setup73.sl2_pair_test(0, 1).found


def test_structural_checks(setup73):
    rep = setup73.structural_checks()
    assert rep["order_G_alpha"] == rep["order_G_omega"] == 504
    assert rep["intersection"] == 1 and rep["intersection_is_identity"]
    assert rep["ker_alpha_in_T"] == 7 and rep["ker_alpha_in_G_omega"] == 7
    assert rep["noncommuting_generator_pairs"] == 0


def test_control_breaks_the_centralizer_argument(control32):
    # with q = 3 the element t also fixes beta-root spaces, so it centralizes U_beta
    t = control32.t
    G = control32.G
    assert t * G.kappa(BETA, 1) == G.kappa(BETA, 1) * t
