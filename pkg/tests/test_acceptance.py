"""Acceptance criteria; one PASS/FAIL line per criterion appears in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import cmath
import sys
from fractions import Fraction

import numpy as np
import pytest

from strategies import rand_entry, rand_pairs, rand_poly, rand_unit, rng
from syzmf import disks, toric
from syzmf.matfac import (
    MatrixFactorization,
    RingMatrix,
    mf_from_point,
    mf_koszul,
    mf_square,
    mf_tensor,
    mf_to_json,
    mf_verify,
)
from syzmf.ring import Monomial, LaurentPoly, lift, lp_eval, poly_to_json, qpow, zero
from syzmf.syz import floer_square_check, m1_eval, psi_to_factorization, sample_points, syz_inverse, syz_transform, syz_transform_matrix

H = Fraction(1, 2)
T = Fraction(1, 3)


def P(n, *terms):
    """Polynomial from (coeff, qexp, zexp) triples."""
    return LaurentPoly(n, {Monomial(e, z): c for c, e, z in terms})


@pytest.mark.criterion("1. P1 golden reproduction")
def test_p1_golden():
    m = psi_to_factorization(disks.p1_catalogue().psi())
    golden_F = P(1, (1, 0, (1,)), (-1, H, (0,)))
    golden_G = P(1, (1, 0, (0,)), (-1, H, (-1,)))
    js = mf_to_json(m)
    assert js["F"] == [[poly_to_json(golden_F)]]
    assert js["G"] == [[poly_to_json(golden_G)]]
    assert js["F"][0][0] == {
        "n": 1,
        "terms": [{"coeff": "1/1", "qexp": "0/1", "zexp": [1]}, {"coeff": "-1/1", "qexp": "1/2", "zexp": [0]}],
    }
    W = toric.superpotential(toric.surface_catalogue("P1"))
    rep = mf_verify(m, W)
    assert rep.passed
    assert rep.lam == P(1, (2, H, (0,)))


@pytest.mark.criterion("2. P2 golden reproduction")
def test_p2_golden():
    m = psi_to_factorization(disks.p2_catalogue().psi())
    z1, z2 = (1, 0), (0, 1)
    golden = [
        [None, None, P(2, (1, 0, z1), (-1, T, (0, 0))), P(2, (1, 0, z2), (-1, 2 * T, (-1, 0)))],
        [None, None, P(2, (-1, 0, (0, 0)), (1, T, (0, -1))), P(2, (1, 0, (0, 0)), (-1, T, (-1, 0)))],
        [P(2, (1, 0, (0, 0)), (-1, T, (-1, 0))), P(2, (-1, 0, z2), (1, 2 * T, (-1, 0))), None, None],
        [P(2, (1, 0, (0, 0)), (-1, T, (0, -1))), P(2, (1, 0, z1), (-1, T, (0, 0))), None, None],
    ]
    full = m.full()
    for i in range(4):
        for j in range(4):
            expect = golden[i][j] if golden[i][j] is not None else zero(2)
            assert full[i, j] == expect, (i, j)
    assert sum(1 for i in range(4) for j in range(4) if full[i, j]) == 8
    W = toric.superpotential(toric.surface_catalogue("P2"))
    rep = mf_verify(m, W)
    assert rep.passed
    assert rep.lam == P(2, (3, T, (0, 0)))


@pytest.mark.criterion("3. P2 enumerator census")
def test_enumerator_census():
    bipartite = {("++", "-+"), ("++", "+-"), ("--", "-+"), ("--", "+-"), ("-+", "++"), ("-+", "--"), ("+-", "++"), ("+-", "--")}
    allowed = {
        (Fraction(0), (Fraction(1), Fraction(0))),
        (Fraction(0), (Fraction(0), Fraction(1))),
        (T, (Fraction(0), Fraction(0))),
        (T, (Fraction(-1), Fraction(0))),
        (T, (Fraction(0), Fraction(-1))),
        (2 * T, (Fraction(-1), Fraction(0))),
        (Fraction(0), (Fraction(0), Fraction(0))),
    }
    # expected (v, area) per ordered pair
    table = {
        ("++", "-+"): {((1, 0), "x1"), ((0, 0), "t/3")},
        ("++", "+-"): {((0, 1), "x2"), ((-1, 0), "2t/3 - x1")},
        ("--", "-+"): {((0, 0), "0"), ((0, -1), "t/3 - x2")},
        ("--", "+-"): {((0, 0), "0"), ((-1, 0), "t/3 - x1")},
        ("-+", "++"): {((0, 0), "0"), ((-1, 0), "t/3 - x1")},
        ("-+", "--"): {((0, 1), "x2"), ((-1, 0), "2t/3 - x1")},
        ("+-", "++"): {((0, 0), "0"), ((0, -1), "t/3 - x2")},
        ("+-", "--"): {((1, 0), "x1"), ((0, 0), "t/3")},
    }
    total = 0
    for p in disks.P2_LABELS:
        for q in disks.P2_LABELS:
            pairs = disks.p2_enumerate(p, q)
            total += len(pairs)
            if (p, q) in bipartite:
                assert len(pairs) == 2, (p, q)
                assert {(r.v, str(r.area)) for r in pairs} == table[(p, q)]
                for r in pairs:
                    assert (r.area.t, r.area.x) in allowed
            else:
                assert pairs == [], (p, q)
    assert total == 16


@pytest.mark.criterion("4. Koszul square law")
def test_koszul_square_property():
    r = rng(4)
    for _ in range(500):
        n = r.randint(1, 3)
        pairs = rand_pairs(r, n, max_pairs=4, max_terms=5)
        m = mf_koszul(pairs)
        FG, GF = mf_square(m)
        target = RingMatrix.identity(m.r, n, sum((p.f * p.g for p in pairs), zero(n)))
        assert FG == target
        assert GF == target


def _random_factorization(r, n):
    if r.random() < 0.5:
        pairs = rand_pairs(r, n, max_pairs=2, max_terms=3)
        W = sum((p.f * p.g for p in pairs), zero(n))
        return mf_koszul(pairs, zero(n)), W
    W = rand_poly(r, n, max_terms=4)
    m = mf_from_point(W, [rand_unit(r, n) for _ in range(n)])
    return m, W


@pytest.mark.criterion("5. tensor law")
def test_tensor_property():
    r = rng(5)
    for _ in range(200):
        n = r.randint(1, 3)
        a, Wa = _random_factorization(r, n)
        b, Wb = _random_factorization(r, n)
        rep = mf_verify(mf_tensor(a, b), Wa + Wb)
        assert rep.passed
        assert rep.lam == a.lam + b.lam
    p1 = psi_to_factorization(disks.p1_catalogue().psi(), P(1, (2, H, (0,))))

    def up(m, i):
        F = RingMatrix([[lift(m.F[0, 0], 2, [i])]])
        G = RingMatrix([[lift(m.G[0, 0], 2, [i])]])
        return MatrixFactorization(1, F, G, lift(m.lam, 2, [i]))

    W = toric.superpotential(toric.surface_catalogue("P1xP1"))
    rep = mf_verify(mf_tensor(up(p1, 0), up(p1, 1)), W)
    assert rep.passed and rep.lam == P(2, (4, H, (0, 0)))


@pytest.mark.criterion("6. from-point factorizations")
def test_from_point_all_surfaces():
    for name in toric.SURFACES:
        pd = toric.surface_catalogue(name)
        W = toric.superpotential(pd)
        m = mf_from_point(W, toric.reference_point(toric.center_of_mass(pd)))
        assert mf_verify(m, W).passed, name
    W1 = toric.superpotential(toric.surface_catalogue("P1"))
    golden = psi_to_factorization(disks.p1_catalogue().psi(), P(1, (2, H, (0,))))
    assert mf_from_point(W1, [qpow(1, H)]) == golden


@pytest.mark.criterion("7. numeric Floer check")
def test_numeric_floer():
    for cat in (disks.p1_catalogue(), disks.p2_catalogue()):
        rep = floer_square_check(cat, samples=100, seed=7, tolerance=1e-12, qrange=(0.01, 0.9))
        assert rep.samples == 100
        assert rep.max_residual < 1e-12
        assert rep.max_oracle_error < 1e-12
        # symbolic transform then numeric evaluation, entry by entry
        M = syz_transform_matrix(cat.psi())
        for q, x, y in sample_points(cat, 100, seed=8):
            m1 = m1_eval(cat, q, x, y)
            z = [cmath.exp(-a + 1j * b) for a, b in zip(x, y)]
            sym = np.array([[lp_eval(M[i, j], q, z) for j in range(M.cols)] for i in range(M.rows)])
            assert np.max(np.abs(sym - m1)) <= 1e-12 * max(1.0, np.max(np.abs(sym)))


@pytest.mark.criterion("8. transform round trip")
def test_transform_round_trip():
    r = rng(8)
    for _ in range(500):
        e = rand_entry(r, r.randint(1, 3))
        p = syz_transform(e)
        back = syz_inverse(p)
        assert syz_transform(back) == p
        assert back == e


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
