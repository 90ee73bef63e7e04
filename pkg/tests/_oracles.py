"""Independent oracles used by the tests.

None of these go through the Buchberger engine except where noted; they
are deliberately naive.
"""

from __future__ import annotations

import random
from itertools import combinations

import numpy as np
import sympy

from heightbounds import Ideal, PolyMatrix, PolyRing
from heightbounds.poly import CoefficientField, MonomialOrder
from heightbounds.sweep import monomials_up_to


# -- linear algebra mod p -------------------------------------------------------


def rref_mod_p(M, p):
    """Row-reduced echelon form of an integer matrix mod p; returns (R, pivots)."""
    A = np.array(M, dtype=np.int64) % p
    if A.size == 0:
        return A, []
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.nonzero(A[:, c])[0]
        for i in others:
            if i != r:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(M, p):
    return len(rref_mod_p(M, p)[1])


def nullspace_mod_p(M, p):
    """Basis of {v : M v = 0} over F_p, as a list of integer vectors."""
    M = np.array(M, dtype=np.int64)
    cols = M.shape[1]
    R, pivots = rref_mod_p(M, p)
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i, f]) % p
        out.append(v)
    return out


def _coeff_vector(f, index):
    v = [0] * len(index)
    for m, c in f.as_dict().items():
        v[index[m]] = int(c)
    return v


def truncated_member(f, gens, p):
    """f in (gens), decided inside the vector space spanned by m*g with
    deg(m*g) <= deg f.  Complete when the generators are homogeneous."""
    ring = f.ring
    if not f:
        return True
    D = f.total_degree()
    mons = monomials_up_to(ring.nvars, D)
    index = {m: i for i, m in enumerate(mons)}
    span = []
    for g in gens:
        if not g:
            continue
        dg = g.total_degree()
        if dg > D:
            continue
        for m in monomials_up_to(ring.nvars, D - dg):
            span.append(_coeff_vector(g.mul_term(m), index))
    target = _coeff_vector(f, index)
    if not span:
        return not any(target)
    return rank_mod_p(span, p) == rank_mod_p(span + [target], p)


def low_degree_syzygies(A: PolyMatrix, D, p):
    """All h in R^m with deg h_j <= D and A h = 0, as a basis over F_p."""
    ring = A.ring
    m = A.ncols
    hmons = monomials_up_to(ring.nvars, D)
    top = max([f.total_degree() for f in A.entries if f] + [0]) + D
    omons = monomials_up_to(ring.nvars, top)
    oidx = {mm: i for i, mm in enumerate(omons)}
    cols = []
    for j in range(m):
        for mono in hmons:
            col = []
            for i in range(A.nrows):
                col += _coeff_vector(A[i, j].mul_term(mono), oidx)
            cols.append(col)
    if not cols:
        return []
    M = np.array(cols, dtype=np.int64).T
    out = []
    for v in nullspace_mod_p(M, p):
        vec = []
        for j in range(m):
            d = {mono: int(v[j * len(hmons) + k]) for k, mono in enumerate(hmons)}
            vec.append(ring.from_dict(d))
        out.append(vec)
    return out


# -- dimension ------------------------------------------------------------------


def subset_dimension(I: Ideal):
    """Largest variable subset containing no leading-monomial support,
    by enumerating every subset (no pruning).  Uses the engine's GB."""
    n = I.ring.nvars
    gb = I.gb()
    if any(g.is_constant() for g in gb):
        return -1
    supports = [{i for i, e in enumerate(g.leading_monomial()) if e} for g in gb]
    best = 0
    for mask in range(1 << n):
        S = {i for i in range(n) if mask >> i & 1}
        if len(S) > best and not any(s <= S for s in supports):
            best = len(S)
    return best


def elimination_dimension(I: Ideal):
    """Largest S with I ∩ k[S] = 0, each test an elimination."""
    from heightbounds import eliminate

    ring = I.ring
    if I.is_unit():
        return -1
    names = list(ring.variables)
    for k in range(len(names), -1, -1):
        for S in combinations(names, k):
            others = [v for v in names if v not in S]
            if eliminate(I, others).is_zero():
                return k
    return -1


# -- CAS oracle -----------------------------------------------------------------


def to_sympy(f, syms):
    return sympy.sympify(str(f).replace("^", "**"), locals=dict(zip(f.ring.variables, syms)))


def sympy_groebner(polys, ring: PolyRing):
    syms = sympy.symbols(ring.variables)
    order = {"lex": "lex", "grevlex": "grevlex"}[ring.order.kind]
    p = ring.field.characteristic
    domain = sympy.GF(p) if p else sympy.QQ
    exprs = [to_sympy(f, syms) for f in polys]
    G = sympy.groebner(exprs, *syms, order=order, domain=domain)
    return {sympy.Poly(g, *syms, domain=domain).monic() for g in G.exprs}


def ours_as_sympy(G, ring):
    syms = sympy.symbols(ring.variables)
    p = ring.field.characteristic
    domain = sympy.GF(p) if p else sympy.QQ
    return {sympy.Poly(to_sympy(g, syms), *syms, domain=domain).monic() for g in G}


# -- random inputs ----------------------------------------------------------------


def fp_ring(names="xyz", p=5, order="grevlex"):
    names = list(names)
    return PolyRing(list(names), CoefficientField(p), MonomialOrder(order))


def random_poly(rnd: random.Random, ring, max_deg, homogeneous_deg=None, density=0.5):
    p = ring.field.characteristic or 7
    if homogeneous_deg is not None:
        mons = monomials_up_to(ring.nvars, homogeneous_deg, exact=True)
    else:
        mons = monomials_up_to(ring.nvars, max_deg)
    d = {m: rnd.randrange(1, p) for m in mons if rnd.random() < density}
    if ring.field.characteristic == 0:
        d = {m: rnd.choice([-3, -2, -1, 1, 2, 3]) for m in d}
    return ring.from_dict(d)


def random_matrix(rnd, ring, rows, cols, deg=1, homogeneous=True):
    entries = [random_poly(rnd, ring, deg, deg if homogeneous else None) for _ in range(rows * cols)]
    return PolyMatrix(ring, rows, cols, entries)
