"""Constructions on modules given by presentation matrices.

``coker(A)`` for an ``n x m`` matrix A is the module with n generators and
the columns of A as relations.  Everything here works on that encoding:
Fitting ideals, generalized row ideals, the symmetric algebra, the dual
presentation and order ideals.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .dimension import krull_dim
from .errors import DimensionMismatch, InputError
from .ideals import Ideal, kernel
from .matrix import PolyMatrix, minors
from .poly import PolyRing, Polynomial, extend_ring, fresh_names


class XNotInMNWarning(UserWarning):
    """An element vector has an entry with a nonzero constant term."""


def in_max_ideal(vec) -> bool:
    """True when every entry has zero constant term."""
    return all(not f.constant_coefficient() for f in vec)


def _vector(ring: PolyRing, vec):
    out = []
    for f in vec:
        if isinstance(f, str):
            f = ring.parse(f)
        elif not isinstance(f, Polynomial):
            f = ring.const(f)
        out.append(f)
    return out


def determinantal_ideal(A: PolyMatrix, t: int) -> Ideal:
    """I_t(A)."""
    return Ideal(A.ring, minors(A, t))


def fitting_ideal(A: PolyMatrix, i: int) -> Ideal:
    """Fitt_i(coker A) = I_{n-i}(A); the unit ideal once n - i <= 0."""
    if i < 0:
        raise InputError("Fitting index must be non-negative")
    t = A.nrows - i
    if t <= 0:
        return Ideal.unit(A.ring)
    return determinantal_ideal(A, t)


def row_ideal(A: PolyMatrix, b) -> Ideal:
    """Ideal generated by the entries of the row vector ``b * A``."""
    b = _vector(A.ring, b)
    if len(b) != A.nrows:
        raise DimensionMismatch(f"b has length {len(b)}, matrix has {A.nrows} rows")
    return Ideal(A.ring, A.apply_row(b))


@dataclass
class SymPresentation:
    """Sym(coker A) = extended_ring / defining_ideal, with the new variables
    T1..Tn placed in front of the base variables."""

    base_ring: PolyRing
    extended_ring: PolyRing
    defining_ideal: Ideal
    t_vars: tuple
    matrix: PolyMatrix

    @property
    def n(self):
        return len(self.t_vars)

    def dim(self) -> int:
        return krull_dim(self.defining_ideal).dim


def sym_presentation(A: PolyMatrix) -> SymPresentation:
    R = A.ring
    names = fresh_names(R, "T", A.nrows)
    S = extend_ring(R, names, "front")
    T = [S.var(v) for v in names]
    lifted = A.change_ring(S)
    gens = lifted.apply_row(T)
    return SymPresentation(R, S, Ideal(S, gens), tuple(names), A)


def dual_presentation(psi: PolyMatrix) -> PolyMatrix:
    """A presentation of coker(π*) where π: R^n -> N = coker(psi).

    Hom(N, R) is the kernel of psi^T inside R^n, and the returned n-row
    matrix has those kernel generators as columns.
    """
    H = kernel(psi.transpose())
    if H.ncols == 0:
        return PolyMatrix(psi.ring, psi.nrows, 0)
    return H


def order_ideal(psi: PolyMatrix, x_vec) -> Ideal:
    """N*(x): the values h(x) for h in Hom(N, R), N = coker(psi).

    ``x_vec`` gives x in terms of the n generators of N.
    """
    x = _vector(psi.ring, x_vec)
    if len(x) != psi.nrows:
        raise DimensionMismatch(f"x has length {len(x)}, presentation has {psi.nrows} rows")
    if not in_max_ideal(x):
        warnings.warn("x_vec has an entry outside the maximal ideal", XNotInMNWarning, stacklevel=2)
    H = dual_presentation(psi)
    return Ideal(psi.ring, H.apply_row(x))


@dataclass(frozen=True)
class EquidimCertificate:
    """Evidence that Sym(M) is equidimensional.

    ``kind`` is ``complete_intersection`` (height of the defining ideal was
    computed and equals its number of nonzero generators), ``user_asserted``
    (caller's word, with ``detail`` as provenance) or ``unknown``.
    """

    kind: str
    detail: str = ""

    KINDS = ("complete_intersection", "user_asserted", "unknown")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InputError(f"unknown certificate kind {self.kind!r}")

    @property
    def status(self):
        return {"complete_intersection": "verified", "user_asserted": "asserted"}.get(self.kind, "unverified")

    @classmethod
    def asserted(cls, note):
        return cls("user_asserted", note)


def equidim_certificate(S: SymPresentation, assertion: str | None = None) -> EquidimCertificate:
    gens = S.defining_ideal.nonzero_generators()
    ht = krull_dim(S.defining_ideal).height if gens else 0
    if ht == len(gens):
        return EquidimCertificate("complete_intersection", f"height {ht} = {len(gens)} generators")
    if assertion is not None:
        return EquidimCertificate("user_asserted", assertion)
    return EquidimCertificate("unknown", f"height {ht} < {len(gens)} generators")
