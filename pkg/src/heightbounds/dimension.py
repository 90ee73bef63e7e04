"""Krull dimension and height from the leading-term ideal."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonProperIdeal, ResourceLimit
from .ideals import Ideal
from .matrix import MinorTable, PolyMatrix

MAX_DIM_VARS = 24


@dataclass(frozen=True)
class DimensionResult:
    """``dim`` is -1 for the unit ideal, whose height is reported as n."""

    dim: int
    height: int
    witness_independent_set: tuple
    nvars: int
    unit: bool = False

    @property
    def vacuous(self):
        return self.unit


def leading_masks(I: Ideal) -> list:
    """Supports of the leading monomials of the reduced GB, as bitmasks."""
    masks = set()
    for g in I.gb():
        e = g.leading_monomial()
        masks.add(sum(1 << i for i, k in enumerate(e) if k))
    return sorted(masks)


def _max_independent_set(n, masks):
    # DFS over sorted index tuples (lexicographic preorder); dependent sets
    # are never extended, so the first maximum found is lexicographically first
    best = [()]

    def independent(S):
        return not any(m & ~S == 0 for m in masks)

    def dfs(start, S, chosen):
        if len(chosen) > len(best[0]):
            best[0] = tuple(chosen)
        if len(chosen) + (n - start) <= len(best[0]):
            return
        for i in range(start, n):
            T = S | (1 << i)
            if independent(T):
                chosen.append(i)
                dfs(i + 1, T, chosen)
                chosen.pop()
                if len(best[0]) == n:
                    return

    dfs(0, 0, [])
    return best[0]


def krull_dim(I: Ideal) -> DimensionResult:
    """Dimension of R/I: the largest set of variables containing no leading
    monomial of the reduced Groebner basis."""
    n = I.ring.nvars
    if n > MAX_DIM_VARS:
        raise ResourceLimit(f"independent-set search is capped at {MAX_DIM_VARS} variables")
    if I.is_unit():
        return DimensionResult(-1, n, (), n, unit=True)
    masks = leading_masks(I)
    best = _max_independent_set(n, masks)
    names = tuple(I.ring.variables[i] for i in best)
    return DimensionResult(len(best), n - len(best), names, n)


def height(I: Ideal) -> int:
    return krull_dim(I).height


def dim(I: Ideal) -> int:
    return krull_dim(I).dim


def _largest_escaping_minor(A: PolyMatrix, escapes) -> int:
    """Largest t such that some t x t minor satisfies ``escapes``; minors of
    size t+1 are combinations of size-t minors, so the scan stops at the
    first size where nothing escapes."""
    table = MinorTable(A)
    best = 0
    for t in range(1, min(A.nrows, A.ncols) + 1):
        if any(escapes(f) for f in table.minors(t)):
            best = t
        else:
            break
    return best


def matrix_rank(A: PolyMatrix) -> int:
    """Largest t with a nonzero t x t minor (rank over the fraction field)."""
    return _largest_escaping_minor(A, bool)


def mu_at_prime(A: PolyMatrix, Q: Ideal) -> int:
    """Minimal number of generators of coker(A) localized at the prime Q:
    rows minus the size of the largest minor not in Q.  Q is trusted to be
    prime; only properness is checked."""
    if Q.is_unit():
        raise NonProperIdeal("mu_at_prime needs a proper ideal")
    if Q.is_zero():
        return A.nrows - matrix_rank(A)
    return A.nrows - _largest_escaping_minor(A, lambda f: not Q.contains(f))
