"""Ideals with a cached reduced Groebner basis, and the operations derived
from elimination: intersection, saturation, radical membership, kernels."""

from __future__ import annotations

import threading

from .errors import InputError, RingMismatch
from .groebner import groebner, module_groebner, reduce
from .matrix import PolyMatrix
from .poly import MonomialOrder, PolyRing, Polynomial, extend_ring, fresh_names


class Ideal:
    """Ideal of a polynomial ring given by generators.

    The reduced Groebner basis is computed on first use and cached; a lock
    makes sure concurrent readers never see a partial basis.
    """

    def __init__(self, ring: PolyRing, generators=()):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            elif not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring is not ring and g.ring != ring:
                raise RingMismatch(f"generator {g} is not in {ring}")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = None
        self._lock = threading.Lock()

    def __getstate__(self):
        return {"ring": self.ring, "generators": self.generators, "_gb": self._gb}

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def maximal(cls, ring):
        """The ideal of all variables."""
        return cls(ring, ring.gens())

    def gb(self) -> tuple:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(groebner(self.generators, self.ring))
        return self._gb

    def nonzero_generators(self):
        return [g for g in self.generators if g]

    def is_zero(self):
        return not any(self.generators)

    def is_unit(self):
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def reduce(self, f: Polynomial) -> Polynomial:
        return reduce(f, self.gb())

    def contains(self, f) -> bool:
        if isinstance(f, Ideal):
            return all(self.contains(g) for g in f.generators)
        if isinstance(f, str):
            f = self.ring.parse(f)
        elif not isinstance(f, Polynomial):
            f = self.ring.const(f)
        return not reduce(f, self.gb())

    __contains__ = contains

    def __le__(self, other):
        return other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb() == other.gb()

    __hash__ = None

    def __add__(self, other):
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        _same_ring(self, other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def change_ring(self, ring):
        return Ideal(ring, [g.change_ring(ring) for g in self.generators])

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _same_ring(I, J):
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def membership(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def _eliminate_into(gens, ext_ring: PolyRing, front: int, target: PolyRing) -> Ideal:
    """GB of ``gens`` in a block order on ``ext_ring`` whose first ``front``
    variables are eliminated; survivors are moved into ``target``."""
    if ext_ring.order != MonomialOrder.block(front):
        ext_ring = ext_ring.with_order(MonomialOrder.block(front))
        gens = [g.change_ring(ext_ring) for g in gens]
    gb = groebner(gens, ext_ring)
    keep = [g for g in gb if not any(i < front for i in g.support())]
    return Ideal(target, [g.change_ring(target) for g in keep])


def eliminate(I: Ideal, front_vars) -> Ideal:
    """``I`` intersected with the subring of the remaining variables."""
    front_vars = list(front_vars)
    for v in front_vars:
        I.ring.index(v)
    if not front_vars:
        return I
    rest = [v for v in I.ring.variables if v not in front_vars]
    base_order = I.ring.order if I.ring.order.kind != "block" else MonomialOrder.grevlex()
    target = PolyRing(rest, I.ring.field, base_order)
    ext = PolyRing(front_vars + rest, I.ring.field, MonomialOrder.block(len(front_vars)))
    return _eliminate_into([g.change_ring(ext) for g in I.generators], ext, len(front_vars), target)


def _one_extra(ring, stem):
    (t,) = fresh_names(ring, stem, 1)
    ext = extend_ring(ring, [t], "front")
    return ext, ext.var(t)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` as ``(t*I + (1-t)*J) ∩ R``."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    ext, t = _one_extra(ring, "t")
    gens = [t * g.change_ring(ext) for g in I.nonzero_generators()]
    gens += [(1 - t) * g.change_ring(ext) for g in J.nonzero_generators()]
    return _eliminate_into(gens, ext, 1, ring)


def saturate_element(I: Ideal, g: Polynomial) -> Ideal:
    """``I : g^∞`` via ``(I + (1 - t*g)) ∩ R``."""
    ring = I.ring
    ext, t = _one_extra(ring, "t")
    gens = [f.change_ring(ext) for f in I.nonzero_generators()]
    gens.append(1 - t * g.change_ring(ext))
    return _eliminate_into(gens, ext, 1, ring)


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """``I : J^∞``, the intersection of ``I : g^∞`` over generators g of J."""
    _same_ring(I, J)
    gens = J.nonzero_generators()
    if not gens:
        raise InputError("cannot saturate by the zero ideal")
    result = None
    for g in gens:
        part = saturate_element(I, g)
        result = part if result is None else intersect(result, part)
    return Ideal(I.ring, result.gb())


def radical_member(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch: ``f`` is in the radical of I iff ``1 ∈ I + (1 - y*f)``."""
    if not f:
        return True
    ext, y = _one_extra(I.ring, "y")
    gens = [g.change_ring(ext) for g in I.nonzero_generators()]
    gens.append(1 - y * f.change_ring(ext))
    gb = groebner(gens, ext)
    return len(gb) == 1 and gb[0].is_constant()


def radical_contains(I: Ideal, J: Ideal) -> bool:
    """True when every generator of J lies in the radical of I."""
    return all(radical_member(g, I) for g in J.nonzero_generators())


def kernel(A: PolyMatrix) -> PolyMatrix:
    """Columns generating the syzygies of the columns of ``A``.

    The module Groebner basis of ``(column_j ⊕ e_j)`` in ``R^(n+m)`` under
    position-over-term eliminates the first n components; elements that
    vanish there carry the kernel in their last m components.  Columns are
    returned in decreasing order of leading term.
    """
    n, m = A.nrows, A.ncols
    R = A.ring
    if m == 0:
        return PolyMatrix(R, 0, 0)
    vecs = []
    for j, col in enumerate(A.columns()):
        unit = [R.one() if k == j else R.zero() for k in range(m)]
        vecs.append(col + unit)
    gb = module_groebner(vecs, n + m, R)
    cols = [v[n:] for v in gb if not any(v[:n])]
    cols.reverse()
    return PolyMatrix.from_columns(R, cols, m)


def syzygy_basis(A: PolyMatrix) -> list:
    """Module Groebner basis (as vectors of length cols) of ker A, suitable
    for :func:`heightbounds.groebner.module_reduce`."""
    return kernel(A).columns()
