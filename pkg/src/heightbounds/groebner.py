"""Buchberger's algorithm for ideals and for submodules of free modules.

Internally every term is keyed by a flat tuple ``(component, e_1, ..., e_n)``;
ideals live in component 0.  Module terms are compared position-over-term
with the lower component index dominant, so the first components are
eliminated first.  That single engine serves both :func:`groebner` and
:func:`module_groebner`.
"""

from __future__ import annotations

import heapq
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

from .errors import ConfigError, DimensionMismatch, RingMismatch, ResourceLimit
from .poly import Polynomial, PolyRing


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 50_000
    max_degree: int = 60
    max_basis: int = 5_000

    @classmethod
    def from_env(cls, environ=None):
        env = os.environ if environ is None else environ
        kw = {}
        for name, var in (("max_pairs", "GH_MAX_PAIRS"), ("max_degree", "GH_MAX_DEGREE"),
                          ("max_basis", "GH_MAX_BASIS")):
            if env.get(var):
                try:
                    kw[name] = int(env[var])
                except ValueError:
                    raise ConfigError(f"{var} must be an integer, got {env[var]!r}") from None
                if kw[name] < 1:
                    raise ConfigError(f"{var} must be positive")
        return cls(**kw)


_limits: ContextVar = ContextVar("heightbounds_limits", default=None)


def current_limits() -> Limits:
    lim = _limits.get()
    return lim if lim is not None else Limits.from_env()


@contextmanager
def resource_limits(limits=None, **overrides):
    """Temporarily replace the caps used by every Groebner computation."""
    base = limits if limits is not None else current_limits()
    token = _limits.set(replace(base, **overrides))
    try:
        yield _limits.get()
    finally:
        _limits.reset(token)


class _Elem:
    __slots__ = ("lm", "lc", "tail", "deg")

    def __init__(self, lm, lc, tail, deg):
        self.lm = lm
        self.lc = lc
        self.tail = tail  # list of (key, coeff) without the leading term
        self.deg = deg

    def as_dict(self):
        d = dict(self.tail)
        d[self.lm] = self.lc
        return d


def _divides(a, b):
    if a[0] != b[0]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return (a[0],) + tuple(x if x > y else y for x, y in zip(a[1:], b[1:]))


class _Engine:
    def __init__(self, ring: PolyRing, module: bool):
        self.ring = ring
        self.p = ring.field.characteristic
        self.module = module
        self._okey = ring.order.key
        self._sk = {}
        self._hk = {}

    def sortkey(self, k):
        v = self._sk.get(k)
        if v is None:
            v = (-k[0],) + self._okey(k[1:])
            self._sk[k] = v
        return v

    def heapkey(self, k):
        v = self._hk.get(k)
        if v is None:
            v = tuple(-x for x in self.sortkey(k))
            self._hk[k] = v
        return v

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def make_elem(self, d, monic=True):
        lm = max(d, key=self.sortkey)
        lc = d[lm]
        if monic and lc != 1:
            s = self.inv(lc)
            p = self.p
            d = {k: (c * s % p if p else c * s) for k, c in d.items()}
            lc = d[lm]
        tail = sorted(((k, c) for k, c in d.items() if k != lm), key=lambda t: self.sortkey(t[0]), reverse=True)
        deg = max(sum(k[1:]) for k in d)
        return _Elem(lm, lc, tail, deg)

    def nf(self, d, basis, full=True):
        """Normal form of ``d`` by ``basis`` (list of _Elem, order respected)."""
        if not d or not basis:
            return dict(d)
        p = self.p
        d = dict(d)
        hk = self.heapkey
        heap = [(hk(k), k) for k in d]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = d.pop(m, None)
            if c is None:
                continue
            for g in basis:
                gm = g.lm
                if gm[0] != m[0]:
                    continue
                ok = True
                for i in range(1, len(m)):
                    if gm[i] > m[i]:
                        ok = False
                        break
                if not ok:
                    continue
                q = c if g.lc == 1 else (c * self.inv(g.lc) % p if p else c / g.lc)
                shift = [a - b for a, b in zip(m[1:], gm[1:])]
                for k, gc in g.tail:
                    nk = (k[0],) + tuple(a + b for a, b in zip(k[1:], shift))
                    v = d.get(nk)
                    if v is None:
                        v = -q * gc
                        if p:
                            v %= p
                        if v:
                            d[nk] = v
                            heapq.heappush(heap, (hk(nk), nk))
                    else:
                        v = v - q * gc
                        if p:
                            v %= p
                        if v:
                            d[nk] = v
                        else:
                            del d[nk]
                break
            else:
                rem[m] = c
                if not full:
                    rem.update(d)
                    return rem
        return rem

    def spoly(self, f: _Elem, g: _Elem):
        lcm = _lcm(f.lm, g.lm)
        p = self.p
        d = {}
        for elem, sign in ((f, 1), (g, -1)):
            shift = [a - b for a, b in zip(lcm[1:], elem.lm[1:])]
            s = sign * (1 if elem.lc == 1 else self.inv(elem.lc))
            for k, c in elem.tail:
                nk = (k[0],) + tuple(a + b for a, b in zip(k[1:], shift))
                v = d.get(nk, 0) + s * c
                if p:
                    v %= p
                if v:
                    d[nk] = v
                else:
                    d.pop(nk, None)
        return d

    def buchberger(self, inputs, limits: Limits):
        """Reduced Groebner basis (list of _Elem, increasing LM) of ``inputs``."""
        store = []
        alive = []  # indices into store
        pairs = {}  # seq -> (i, j, lcm)
        heap = []
        seq = 0
        processed = 0

        # graded orders: (lcm degree, insertion); otherwise the smallest lcm
        # in the term order first, which keeps lex and block runs tame
        if not self.module and self.ring.order.kind == "grevlex":
            def pair_key(l):
                return (sum(l[1:]),)
        else:
            pair_key = self.sortkey

        def coprime(a, b):
            for x, y in zip(a[1:], b[1:]):
                if x and y:
                    return False
            return True

        def update(h_idx):
            nonlocal seq, alive
            h = store[h_idx]
            hm = h.lm
            cands = []
            for gi in alive:
                gm = store[gi].lm
                if gm[0] != hm[0]:
                    continue
                cands.append((gi, _lcm(hm, gm)))
            # Gebauer-Moeller: among new pairs keep one per minimal lcm;
            # pairs with coprime leading monomials help prune, then go away
            kept = []
            while cands:
                gi, l = cands.pop(0)
                cp = not self.module and coprime(hm, store[gi].lm)
                if cp or not any(_divides(l2, l) for _, l2, *_ in cands + kept):
                    kept.append((gi, l, cp))
            new = [(gi, l) for gi, l, cp in kept if not cp]
            # prune old pairs via the chain criterion
            for s in list(pairs):
                i, j, l = pairs[s]
                if _divides(hm, l) and _lcm(store[i].lm, hm) != l and _lcm(store[j].lm, hm) != l:
                    del pairs[s]
            for gi, l in new:
                pairs[seq] = (gi, h_idx, l)
                heapq.heappush(heap, (pair_key(l), seq))
                seq += 1
            alive = [gi for gi in alive if not _divides(hm, store[gi].lm)]
            alive.append(h_idx)

        def reducers():
            # smallest leading monomial first keeps tails short under lex
            return sorted((store[k] for k in alive), key=lambda e: self.sortkey(e.lm))

        def add(d):
            e = self.make_elem(d)
            if e.deg > limits.max_degree:
                raise ResourceLimit(f"basis element of degree {e.deg} exceeds max_degree={limits.max_degree}")
            store.append(e)
            if len(alive) + 1 > limits.max_basis:
                raise ResourceLimit(f"basis size exceeds max_basis={limits.max_basis}")
            update(len(store) - 1)
            return e

        for d in inputs:
            if not d:
                continue
            d = self.nf(d, reducers())
            if not d:
                continue
            e = add(d)
            if not self.module and not any(e.lm[1:]):
                return [e]

        while heap:
            _, s = heapq.heappop(heap)
            pr = pairs.pop(s, None)
            if pr is None:
                continue
            processed += 1
            if processed > limits.max_pairs:
                raise ResourceLimit(f"more than max_pairs={limits.max_pairs} S-pairs")
            i, j, _ = pr
            d = self.spoly(store[i], store[j])
            d = self.nf(d, reducers())
            if d:
                e = add(d)
                if not self.module and not any(e.lm[1:]):
                    return [e]

        basis = sorted((store[i] for i in alive), key=lambda e: self.sortkey(e.lm))
        reduced = []
        for idx, e in enumerate(basis):
            others = basis[:idx] + basis[idx + 1:]
            tail = self.nf(dict(e.tail), others)
            tail[e.lm] = e.lc
            reduced.append(self.make_elem(tail))
        return reduced

    # conversions

    def from_poly(self, f: Polynomial):
        return {(0,) + m: c for m, c in f._d.items()}

    def to_poly(self, d):
        return Polynomial(self.ring, {k[1:]: c for k, c in d.items()})

    def from_vector(self, vec):
        d = {}
        for comp, f in enumerate(vec):
            for m, c in f._d.items():
                d[(comp,) + m] = c
        return d

    def to_vector(self, d, rank, offset=0):
        parts = [{} for _ in range(rank)]
        for k, c in d.items():
            parts[k[0] - offset][k[1:]] = c
        return [Polynomial(self.ring, part) for part in parts]


def _common_ring(polys, ring=None):
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring is not ring and f.ring != ring:
            raise RingMismatch(f"{f.ring} vs {ring}")
    return ring


def groebner(polys, ring: PolyRing | None = None, limits: Limits | None = None) -> list:
    """Reduced Groebner basis, monic and sorted by increasing leading monomial.

    Zero generators are discarded; the zero ideal gives ``[]`` and the unit
    ideal ``[1]``.
    """
    polys = list(polys)
    ring = _common_ring(polys, ring)
    if ring is None:
        return []
    eng = _Engine(ring, module=False)
    basis = eng.buchberger([eng.from_poly(f) for f in polys], limits or current_limits())
    return [eng.to_poly(e.as_dict()) for e in basis]


def reduce(f: Polynomial, G) -> Polynomial:
    """Full normal form of ``f`` by ``G``.

    The largest reducible term is always removed first, using the first
    element of ``G`` (in the given order) whose leading monomial divides it.
    """
    G = [g for g in G if g]
    ring = _common_ring([f] + G)
    if not G or not f:
        return f
    eng = _Engine(ring, module=False)
    basis = [eng.make_elem(eng.from_poly(g), monic=False) for g in G]
    return eng.to_poly(eng.nf(eng.from_poly(f), basis))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = _common_ring([f, g])
    eng = _Engine(ring, module=False)
    a = eng.make_elem(eng.from_poly(f), monic=False)
    b = eng.make_elem(eng.from_poly(g), monic=False)
    return eng.to_poly(eng.spoly(a, b))


def is_groebner(G) -> bool:
    """True when every S-polynomial of ``G`` reduces to zero by ``G``."""
    G = [g for g in G if g]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if reduce(s_polynomial(G[i], G[j]), G):
                return False
    return True


# -- submodules of R^rank -----------------------------------------------------


def _check_vectors(vectors, rank, ring):
    out = []
    for v in vectors:
        v = list(v)
        if len(v) != rank:
            raise DimensionMismatch(f"vector of length {len(v)} in a module of rank {rank}")
        out.append(v)
    return _common_ring([f for v in out for f in v], ring), out


def module_groebner(vectors, rank: int, ring: PolyRing | None = None, limits: Limits | None = None) -> list:
    """Reduced Groebner basis of the submodule of ``R^rank`` spanned by
    ``vectors`` under position-over-term order (component 0 dominant).

    Returned as lists of polynomials, sorted by increasing leading term.
    """
    ring, vectors = _check_vectors(vectors, rank, ring)
    if ring is None:
        return []
    eng = _Engine(ring, module=True)
    basis = eng.buchberger([eng.from_vector(v) for v in vectors], limits or current_limits())
    return [eng.to_vector(e.as_dict(), rank) for e in basis]


def module_reduce(vec, basis) -> list:
    """Normal form of a vector by a list of vectors (same conventions as reduce)."""
    rank = len(vec)
    ring, all_vecs = _check_vectors([vec] + list(basis), rank, None)
    eng = _Engine(ring, module=True)
    elems = [eng.make_elem(eng.from_vector(b), monic=False) for b in all_vecs[1:] if any(b)]
    return eng.to_vector(eng.nf(eng.from_vector(all_vecs[0]), elems), rank)


def module_leading_component(vec, ring: PolyRing) -> int:
    """Index of the leading component under position-over-term (-1 for 0)."""
    for i, f in enumerate(vec):
        if f:
            return i
    return -1
