import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2kuls import linalg
from g2kuls.chevalley import DIM
from g2kuls.g2group import (
    BoundExceeded,
    GrpElem,
    commutator_check,
    enumerate_subgroup,
    group_for,
    kappa,
    root_pairs,
    s_delta,
    v_coords,
)
from g2kuls.gf2m import field_make
from g2kuls.rootsys import ALPHA, BETA, OMEGA, ROOT_INDEX, ROOTS, V_ROOTS, Root, pairing, reflect


@pytest.fixture(scope="module")
def G():
    return group_for(3)


def test_kappa_zero_and_torus_one_are_identity(G):
    for r in ROOTS:
        assert G.kappa(r, 0).is_identity
        assert G.coroot_elt(r, 1).is_identity


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 6), data=st.data())
def test_root_group_additivity(m, data):
    G = group_for(m)
    n = G.ctx.order
    r = data.draw(st.sampled_from(ROOTS))
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert G.kappa(r, a) * G.kappa(r, b) == G.kappa(r, a ^ b)


def test_additivity_exhaustive_gf8(G):
    for r in ROOTS:
        k = G.kappa_all(r)
        for a in range(8):
            prods = linalg.matmul(G.ctx, k[a], k)
            assert np.array_equal(prods, k[a ^ np.arange(8)])


def test_root_element_is_unipotent_automorphism(G):
    for r in ROOTS:
        g = G.kappa(r, 5)
        assert G.is_lie_automorphism(g)
        assert (g * g).is_identity  # char 2
        # kappa_r(a) e_{-r} picks up a h_r plus a^2 e_r in the e_r coordinate
        assert g.mat[ROOT_INDEX[r], ROOT_INDEX[-r]] == G.ctx.mul(5, 5)


def test_random_matrix_is_not_automorphism(G):
    rng = np.random.default_rng(3)
    mat = np.diag(rng.integers(1, 8, size=DIM)).astype(G.ctx.dtype)
    mat[0, 0], mat[1, 1] = 1, 1
    mat[0, 1] = 1
    assert not G.is_lie_automorphism(GrpElem(G.ctx, mat))


def test_commutator_formula_all_pairs_gf8(G):
    total = 0
    for d, e in root_pairs():
        rep = G.commutator_check(d, e)
        assert rep["failures"] == 0, (str(d), str(e))
        total += rep["cases"]
    assert len(root_pairs()) == 120 and total == 120 * 64


@pytest.mark.parametrize("m", [1, 2, 4])
def test_commutator_formula_other_fields(m):
    ctx = field_make(m)
    for d, e in root_pairs()[:: (3 if m == 4 else 1)]:
        assert commutator_check(d, e, ctx)["failures"] == 0


def test_perturbed_commutator_is_detected(G):
    # the true commutator of x_a, x_b has four factors; dropping all but one must fail
    for a, b in [(1, 1), (3, 5)]:
        x, y = G.kappa(ALPHA, a), G.kappa(BETA, b)
        comm = x * y * x * y
        assert comm != G.kappa(Root(1, 1), G.ctx.mul(a, b))
        assert not comm.is_identity
    # and commuting roots really commute
    for a in range(8):
        assert G.kappa(ALPHA, a) * G.kappa(OMEGA, 3) == G.kappa(OMEGA, 3) * G.kappa(ALPHA, a)


def test_torus_elements(G):
    mu = G.ctx.element_of_order(7)
    h = G.coroot_elt(ALPHA, mu)
    assert h.order() == 7
    diag = np.diag(h.mat)
    for i, e in enumerate(ROOTS):
        assert diag[i] == G.ctx.pow(mu, pairing(e, ALPHA))
    assert diag[ROOT_INDEX[OMEGA]] == 1
    # conjugation scales root elements by the character value
    for e in ROOTS:
        for x in range(8):
            lhs = h * G.kappa(e, x) * h.inv()
            assert lhs == G.kappa(e, G.ctx.mul(G.ctx.pow(mu, pairing(e, ALPHA)), x))


def test_weyl_representative(G):
    s = s_delta(ALPHA, G.ctx)
    assert not s.is_identity and (s * s).is_identity
    assert G.is_lie_automorphism(s)
    # s_a permutes root spaces according to the reflection (signs vanish mod 2)
    for e in ROOTS:
        col = s.mat[:, ROOT_INDEX[e]]
        target = ROOT_INDEX[reflect(ALPHA, e)]
        assert col[target] == 1 and np.count_nonzero(col) == 1
        assert s * G.kappa(e, 3) * s == G.kappa(reflect(ALPHA, e), 3)


def test_named_subgroup_orders(G):
    assert len(G.G_omega) == 504
    assert len(G.G_alpha) == 504
    assert len(G.torus) == 49
    g4 = group_for(2)
    assert len(g4.G_omega) == 60 and len(g4.torus) == 9


def test_subgroup_membership_matches_linear_scan(G):
    gw = G.G_omega
    mats = gw.mats
    probes = [G.kappa(OMEGA, 3), G.kappa(-OMEGA, 6), G.kappa(ALPHA, 1), G.coroot_elt(Root(3, 2), 5), G.s_delta(OMEGA)]
    for g in probes:
        scan = any(np.array_equal(m, g.mat) for m in mats)
        assert (g in gw) == scan
    assert G.coroot_elt(OMEGA, 5) in gw
    assert G.kappa(ALPHA, 1) not in gw


def test_subgroup_digest_independent_of_generator_order(G):
    gens = [G.kappa(r, c) for r in (OMEGA, -OMEGA) for c in (1, 2, 4)]
    a = enumerate_subgroup(gens, 504)
    b = enumerate_subgroup(gens[::-1], 504)
    assert a.digest() == b.digest() == G.G_omega.digest()


def test_bound_exceeded(G):
    with pytest.raises(BoundExceeded):
        enumerate_subgroup([G.kappa(OMEGA, 1), G.kappa(-OMEGA, 1)], 5)
    assert len(enumerate_subgroup([G.kappa(OMEGA, 1), G.kappa(-OMEGA, 1)], 6)) == 6


def test_v_coordinates(G):
    assert tuple(v_coords(G.identity)) == (0, 0, 0, 0, 0)
    for a in range(8):
        assert tuple(v_coords(kappa(OMEGA, G.ctx(a)))) == (0, 0, 0, 0, a)
    assert v_coords(G.s_delta(ALPHA)) is None
    assert G.v_coords_greedy(G.s_delta(ALPHA)) is None
    assert G.v_coords(G.kappa(ALPHA, 1)) is None


def test_v_normal_form_is_a_subgroup_and_bijective(G):
    table = G.v_table
    assert len(table) == 8 ** 5
    gens = [G.kappa(r, 1 << i) for r in V_ROOTS for i in range(3)]
    closure = enumerate_subgroup(gens, 8 ** 5)
    assert set(closure.keys) == set(table)


def test_greedy_coordinates_match_table(G):
    items = list(G.v_table.items())
    for key, coords in items[::37]:
        g = GrpElem(G.ctx, np.frombuffer(key, dtype=G.ctx.dtype).reshape(DIM, DIM))
        assert G.v_coords_greedy(g) == coords


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=5, max_size=5))
def test_greedy_coordinates_round_trip_gf16(coords):
    G = group_for(4)
    assert tuple(G.v_coords_greedy(G.v_element(coords))) == tuple(coords)


def test_group_element_basics(G):
    g = G.kappa(ALPHA, 3) * G.kappa(BETA, 5) * G.kappa(-OMEGA, 2)
    assert (g * g.inv()).is_identity
    assert g ** 0 == G.identity
    assert g.conj(G.identity) == G.identity
    assert hash(g) == hash(GrpElem(G.ctx, g.mat.copy()))
    with pytest.raises(ValueError):
        g.mat[0, 0] = 1
    assert len(g.to_json()) == DIM
