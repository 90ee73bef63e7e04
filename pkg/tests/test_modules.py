import random
import warnings

import pytest

from heightbounds import (
    EquidimCertificate,
    Ideal,
    PolyMatrix,
    dual_presentation,
    equidim_certificate,
    fitting_ideal,
    krull_dim,
    minors,
    mu_at_prime,
    order_ideal,
    row_ideal,
    sym_presentation,
)
from heightbounds.errors import DimensionMismatch, InputError, ResourceLimit
from heightbounds.matrix import MAX_MINOR_SIZE, MinorTable
from heightbounds.modules import XNotInMNWarning, determinantal_ideal

from _fixtures import koszul
from _oracles import fp_ring, random_matrix, random_poly


def strs(fs):
    return [str(f) for f in fs]


@pytest.fixture
def R():
    return fp_ring("xyz", 0)


# -- minors ---------------------------------------------------------------------


def test_minors_examples():
    S = fp_ring("xyzw", 0)
    A = PolyMatrix.parse(S, [["x", "y"], ["z", "w"]])
    assert minors(A, 2) == [S.parse("x*w - y*z")]
    assert strs(minors(A, 2)) == ["-y*z + x*w"]  # grevlex: y*z > x*w
    assert strs(minors(A, 0)) == ["1"]
    assert minors(A, 3) == []


def test_koszul_determinant_vanishes(R):
    assert [f.is_zero() for f in minors(koszul(R, "x", "y", "z"), 3)] == [True]


def test_minor_table_matches_leibniz():
    rnd = random.Random(2)
    S = fp_ring("xyz", 7)
    from itertools import permutations

    def leibniz(M):
        n = len(M)
        total = S.zero()
        for perm in permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            term = S.const(sign)
            for i in range(n):
                term = term * M[i][perm[i]]
            total = total + term
        return total

    for _ in range(10):
        A = random_matrix(rnd, S, 4, 4, deg=1)
        T = MinorTable(A)
        assert T.det((0, 1, 2, 3), (0, 1, 2, 3)) == leibniz(A.rows())
        assert T.det((0, 2), (1, 3)) == leibniz([[A[0, 1], A[0, 3]], [A[2, 1], A[2, 3]]])


def test_minor_size_cap(R):
    A = PolyMatrix.identity(R, MAX_MINOR_SIZE + 1)
    with pytest.raises(ResourceLimit):
        minors(A, MAX_MINOR_SIZE + 1)


# -- Fitting ideals -----------------------------------------------------------------


def test_fitting_examples(R):
    S = fp_ring(["x1", "x2"], 0)
    A = PolyMatrix.parse(S, [["x1"], ["x2"]])
    assert fitting_ideal(A, 1) == Ideal(S, [S.var("x1"), S.var("x2")])
    assert fitting_ideal(A, 2).is_unit()
    assert fitting_ideal(A, 5).is_unit()
    F1 = fitting_ideal(koszul(R, "x", "y", "z"), 1)
    assert krull_dim(F1).height == 3


def test_fitting_negative_index(R):
    with pytest.raises(InputError):
        fitting_ideal(PolyMatrix.identity(R, 1), -1)


def test_fitting_chain():
    rnd = random.Random(40)
    S = fp_ring("xyz", 5)
    for _ in range(15):
        n = rnd.randint(1, 3)
        A = random_matrix(rnd, S, n, rnd.randint(0, 3), deg=rnd.randint(1, 2))
        chain = [fitting_ideal(A, i) for i in range(n + 1)]
        for lo, hi in zip(chain, chain[1:]):
            assert lo <= hi
        assert chain[-1].is_unit()


def _elementary(S, n, rnd):
    E = PolyMatrix.identity(S, n)
    if n < 2:
        return PolyMatrix(S, 1, 1, [S.const(rnd.randrange(1, 5))])
    i, j = rnd.sample(range(n), 2)
    entries = list(E.entries)
    entries[i * n + j] = random_poly(rnd, S, 1) or S.var("x")
    return PolyMatrix(S, n, n, entries)


def test_determinantal_invariance_under_elementary_ops():
    rnd = random.Random(41)
    S = fp_ring("xyz", 5)
    for _ in range(12):
        n, m = rnd.randint(1, 3), rnd.randint(1, 3)
        A = random_matrix(rnd, S, n, m, deg=1)
        B = _elementary(S, n, rnd) @ A @ _elementary(S, m, rnd)
        for t in range(1, min(n, m) + 1):
            assert determinantal_ideal(A, t) == determinantal_ideal(B, t)


# -- row ideals and Sym -------------------------------------------------------------


def test_row_ideal_examples(R):
    A = PolyMatrix.parse(R, [["x", "y"], ["z", "x*y"]])
    assert row_ideal(A, [1, 0]) == Ideal(R, A.row(0))
    assert row_ideal(A, [0, 1]) == Ideal(R, A.row(1))
    assert row_ideal(A, [0, 0]).is_zero()
    S = fp_ring(["x1", "x2"], 0)
    B = PolyMatrix.parse(S, [["x1"], ["x2"]])
    assert strs(row_ideal(B, ["x1", "x2"]).generators) == ["x1^2 + x2^2"]


def test_row_ideal_length_check(R):
    with pytest.raises(DimensionMismatch):
        row_ideal(PolyMatrix.identity(R, 2), [1])


def test_row_ideal_additive():
    rnd = random.Random(42)
    S = fp_ring("xyz", 5)
    for _ in range(15):
        n = rnd.randint(1, 3)
        A = random_matrix(rnd, S, n, rnd.randint(1, 3), deg=1)
        b1 = [random_poly(rnd, S, 1) for _ in range(n)]
        b2 = [random_poly(rnd, S, 1) for _ in range(n)]
        lhs = row_ideal(A, [a + b for a, b in zip(b1, b2)])
        assert lhs <= row_ideal(A, b1) + row_ideal(A, b2)


def test_sym_hypersurface():
    S = fp_ring(["x1", "x2"], 0)
    P = sym_presentation(PolyMatrix.parse(S, [["x1"], ["x2"]]))
    assert P.extended_ring.variables == ("T1", "T2", "x1", "x2")
    assert P.extended_ring.order.kind == "block" and P.extended_ring.order.split == 2
    assert strs(P.defining_ideal.generators) == ["T1*x1 + T2*x2"]
    assert P.n == 2


def test_sym_koszul(R):
    P = sym_presentation(koszul(R, "x", "y", "z"))
    E = P.extended_ring
    expected = Ideal(E, [E.parse(s) for s in ("y*T1 - x*T2", "z*T1 - x*T3", "z*T2 - y*T3")])
    assert P.defining_ideal == expected
    assert [str(g) for g in P.defining_ideal.generators] == [str(g) for g in expected.generators]
    assert P.dim() == 4


def test_sym_of_free_module(R):
    P = sym_presentation(PolyMatrix.zeros(R, 2, 3))
    assert P.defining_ideal.is_zero()
    assert P.dim() == 3 + 2


def test_sym_generators_linear_in_t():
    rnd = random.Random(43)
    S = fp_ring("xyz", 5)
    for _ in range(10):
        A = random_matrix(rnd, S, 2, rnd.randint(1, 3), deg=rnd.randint(1, 2))
        P = sym_presentation(A)
        k = P.n
        gens = P.defining_ideal.nonzero_generators()
        assert len(gens) <= A.ncols
        for g in gens:
            assert {sum(m[:k]) for m, _ in g.terms} == {1}


def test_sym_avoids_name_clash():
    S = fp_ring(["T1", "x"], 0)
    P = sym_presentation(PolyMatrix.parse(S, [["x"]]))
    assert len(set(P.extended_ring.variables)) == 3


# -- dual presentations and order ideals -----------------------------------------------


def test_dual_koszul_relation(Rxy):
    D = dual_presentation(PolyMatrix.parse(Rxy, [["y"], ["-x"]]))
    assert D.shape == (2, 1)
    assert strs(D.column(0)) == ["x", "y"]


def test_dual_of_free_and_zero(Rxy):
    D = dual_presentation(PolyMatrix.zeros(Rxy, 2, 1))
    assert D == PolyMatrix.identity(Rxy, 2)
    D = dual_presentation(PolyMatrix.identity(Rxy, 2))
    assert D.shape == (2, 0)


def test_dual_composes_to_zero():
    rnd = random.Random(44)
    S = fp_ring("xyz", 5)
    for _ in range(12):
        psi = random_matrix(rnd, S, rnd.randint(1, 3), rnd.randint(0, 2), deg=1)
        D = dual_presentation(psi)
        assert (psi.transpose() @ D).is_zero()


def test_order_ideal_examples(Rxy):
    psi = PolyMatrix.parse(Rxy, [["y"], ["-x"]])
    assert order_ideal(psi, ["x", "0"]) == Ideal(Rxy, [Rxy.parse("x^2")])
    F = PolyMatrix.zeros(Rxy, 2, 0)
    assert order_ideal(F, ["x^2", "x*y + y"]) == Ideal(Rxy, [Rxy.parse("x^2"), Rxy.parse("x*y + y")])
    assert order_ideal(psi, [0, 0]).is_zero()


def test_order_ideal_warns_outside_m(Rxy):
    with pytest.warns(XNotInMNWarning):
        order_ideal(PolyMatrix.zeros(Rxy, 1, 0), ["1 + x"])
    with pytest.raises(DimensionMismatch):
        order_ideal(PolyMatrix.zeros(Rxy, 2, 0), ["x"])


def random_presentation(rnd, S, n=None, m=None):
    """psi with linear entries (so entries lie in m: a minimal presentation)."""
    n = n or rnd.randint(1, 3)
    m = rnd.randint(0, 3) if m is None else m
    return random_matrix(rnd, S, n, m, deg=1)


def test_order_ideal_independent_of_representative():
    rnd = random.Random(45)
    S = fp_ring("xyz", 5)
    for _ in range(10):
        psi = random_presentation(rnd, S, m=rnd.randint(1, 2))
        x = [random_poly(rnd, S, 2, homogeneous_deg=2) for _ in range(psi.nrows)]
        j = rnd.randrange(psi.ncols)
        f = random_poly(rnd, S, 1) or S.one()
        x2 = [a + f * b for a, b in zip(x, psi.column(j))]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", XNotInMNWarning)
            assert order_ideal(psi, x) == order_ideal(psi, x2)


def test_mu_inequality_on_minimal_presentations():
    rnd = random.Random(46)
    S = fp_ring("xyz", 5)
    m = Ideal.maximal(S)
    for _ in range(10):
        psi = random_presentation(rnd, S)
        n = psi.nrows
        assert mu_at_prime(psi, m) == n  # minimality: entries in m
        assert n <= mu_at_prime(dual_presentation(psi), m) + mu_at_prime(psi, m)


# -- certificates -----------------------------------------------------------------------


def test_certificate_hypersurface():
    S = fp_ring(["x1", "x2"], 0)
    c = equidim_certificate(sym_presentation(PolyMatrix.parse(S, [["x1"], ["x2"]])))
    assert c.kind == "complete_intersection" and c.status == "verified"


def test_certificate_koszul_unknown_then_asserted(R):
    P = sym_presentation(koszul(R, "x", "y", "z"))
    assert krull_dim(P.defining_ideal).height == 2
    c = equidim_certificate(P)
    assert c.kind == "unknown" and c.status == "unverified"
    note = "2x2 minors of a generic 2x3 matrix are prime"
    c = equidim_certificate(P, note)
    assert c.kind == "user_asserted" and c.detail == note and c.status == "asserted"


def test_certificate_zero_matrix(R):
    c = equidim_certificate(sym_presentation(PolyMatrix.zeros(R, 2, 2)))
    assert c.kind == "complete_intersection"


def test_certificate_kind_validated():
    with pytest.raises(InputError):
        EquidimCertificate("prime")
