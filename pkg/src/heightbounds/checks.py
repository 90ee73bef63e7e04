"""Height bounds as executable checks.

Each ``check_*`` function evaluates one inequality ``lhs <= rhs`` on a
concrete instance and returns a :class:`BoundReport`.  Heights are computed
globally in k[x_1..x_n]; for homogeneous input this equals the height after
localizing at the origin, otherwise the report is marked ``conservative``.

Every hypothesis is listed with a status: ``verified`` (checked here),
``asserted`` (taken from the caller), ``unverified`` (could not be decided)
or ``violated`` (checked and false; the check raises
:class:`~heightbounds.errors.HypothesisViolated` carrying the report).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .dimension import krull_dim, matrix_rank, mu_at_prime
from .errors import HypothesisViolated, InputError, NonProperIdeal, WitnessNotContaining, XNotInMN
from .ideals import Ideal, radical_contains, saturate
from .matrix import PolyMatrix
from .modules import (
    EquidimCertificate,
    determinantal_ideal,
    dual_presentation,
    equidim_certificate,
    fitting_ideal,
    in_max_ideal,
    order_ideal,
    row_ideal,
    sym_presentation,
    _vector,
)

STATUSES = ("verified", "asserted", "unverified", "violated")

THEOREMS = (
    "lemma_1_1",
    "gpit",
    "mu_inequality",
    "macaulay_ee",
    "bruns",
    "row_ideal_equidim",
    "kwiecinski",
    "kwiecinski_refined",
    "huneke_rossi",
    "serre",
)


@dataclass
class BoundReport:
    theorem_id: str
    hypotheses: list = field(default_factory=list)
    lhs: int | None = None
    rhs: int | None = None
    slack: int | None = None
    holds: bool = False
    vacuous: bool = False
    exactness: str = "exact"
    notes: list = field(default_factory=list)
    certificate: str | None = None

    def finish(self):
        if self.lhs is not None and self.rhs is not None:
            self.slack = self.rhs - self.lhs
            self.holds = self.vacuous or self.lhs <= self.rhs
        else:
            self.slack = None
            self.holds = self.vacuous
        return self

    @property
    def all_verified(self):
        return all(status == "verified" for _, status in self.hypotheses)

    @property
    def trusted(self):
        """No hypothesis is unverified or violated."""
        return all(status in ("verified", "asserted") for _, status in self.hypotheses)

    def hypotheses_status(self):
        return ";".join(f"{name}={status}" for name, status in self.hypotheses)

    def to_dict(self):
        d = asdict(self)
        d["hypotheses"] = [{"name": n, "status": s} for n, s in self.hypotheses]
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def render(self):
        lines = [f"theorem {self.theorem_id}"]
        if self.vacuous:
            lines.append(f"  vacuous (lhs {self.lhs}, rhs {self.rhs})")
        elif self.lhs is None or self.rhs is None:
            lines.append("  not evaluated")
        else:
            rel = "≤" if self.lhs <= self.rhs else ">"
            verdict = "holds" if self.holds else "FAILS"
            head = f"  lhs {self.lhs} {rel} rhs {self.rhs}, {verdict}"
            if self.certificate:
                head += f", certificate {self.certificate}"
            lines.append(f"{head}, slack {self.slack}")
        lines.append(f"  exactness {self.exactness}")
        for name, status in self.hypotheses:
            lines.append(f"  hypothesis {name}: {status}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


@dataclass
class PrimeWitness:
    """An ideal the caller vouches for as prime.  Properness is verified."""

    ideal: Ideal
    asserted_prime: bool = True
    label: str = ""

    def __post_init__(self):
        if self.ideal.is_unit():
            raise NonProperIdeal(f"prime witness {self.label or self.ideal} is the unit ideal")

    @classmethod
    def zero(cls, ring):
        return cls(Ideal.zero(ring), True, "(0)")

    @classmethod
    def maximal(cls, ring):
        return cls(Ideal.maximal(ring), True, "m")

    def status(self):
        """Primality status: (0) and the ideal of all variables are primes
        we can recognise; anything else rests on the caller."""
        if self.ideal.is_zero() or self.is_origin():
            return "verified"
        return "asserted" if self.asserted_prime else "unverified"

    def is_origin(self):
        m = Ideal.maximal(self.ideal.ring)
        return m.gb() == self.ideal.gb()

    def name(self):
        return self.label or str(self.ideal)


def _exactness(*ideals):
    return "exact" if all(I.is_homogeneous() for I in ideals) else "conservative"


def _cert_hypothesis(cert, report):
    if cert is None:
        report.hypotheses.append(("sym_equidimensional", "unverified"))
        report.notes.append("no equidimensionality certificate supplied")
        return
    report.hypotheses.append(("sym_equidimensional", cert.status))
    report.certificate = cert.kind
    report.notes.append(f"certificate {cert.kind}" + (f" ({cert.detail})" if cert.detail else ""))


def _auto_cert(A, cert):
    return cert if cert is not None else equidim_certificate(sym_presentation(A))


def _height(I):
    return krull_dim(I).height


def _trivial(I):
    return I.is_zero() or I.is_unit()


# -- generalized row ideal ---------------------------------------------------------------


def check_lemma_1_1(A: PolyMatrix, b) -> BoundReport:
    """dim R/(b·A) >= dim Sym(coker A) - n, at the origin."""
    b = _vector(A.ring, b)
    rep = BoundReport("lemma_1_1")
    if not in_max_ideal(b):
        rep.hypotheses.append(("b_in_m", "violated"))
        raise XNotInMN("b has an entry with nonzero constant term", rep.finish())
    rep.hypotheses.append(("b_in_m", "verified"))
    S = sym_presentation(A)
    I = row_ideal(A, b)
    graded = S.defining_ideal.is_homogeneous() and I.is_homogeneous()
    # Sym is graded in T; the local dimension at (m, T) equals the global
    # one when the presentation is homogeneous in the standard grading
    rep.hypotheses.append(("graded_at_origin", "verified" if graded else "unverified"))
    dim_sym = krull_dim(S.defining_ideal).dim
    rep.lhs = dim_sym - A.nrows
    dI = krull_dim(I)
    rep.vacuous = dI.unit
    rep.rhs = dI.dim
    rep.exactness = "exact" if graded else "conservative"
    rep.notes.append(f"dim Sym = {dim_sym}, n = {A.nrows}")
    # lhs <= rhs is the inequality dim R/I >= dim Sym - n
    return rep.finish()


# -- generalized principal ideal theorem -------------------------------------


def check_gpit(psi: PolyMatrix, x_vec) -> BoundReport:
    """ht N*(x) <= rank N for x in mN, N = coker(psi)."""
    x = _vector(psi.ring, x_vec)
    rep = BoundReport("gpit")
    if not in_max_ideal(x):
        rep.hypotheses.append(("x_in_mN", "violated"))
        raise XNotInMN("x_vec has an entry with nonzero constant term", rep.finish())
    rep.hypotheses.append(("x_in_mN", "verified"))
    rep.hypotheses.append(("domain", "verified"))
    if not in_max_ideal(psi.entries):
        rep.notes.append("non_minimal_presentation")
    I = order_ideal(psi, x)
    rep.lhs = _height(I)
    rep.rhs = psi.nrows - matrix_rank(psi)
    rep.vacuous = _trivial(I)
    rep.exactness = _exactness(I)
    rep.notes.append(f"order ideal {I}")
    return rep.finish()


def check_mu_inequality(psi: PolyMatrix) -> BoundReport:
    """n <= mu(M) + mu(N) at the origin, for N = coker(psi) on n generators
    and M the cokernel of the dual presentation."""
    rep = BoundReport("mu_inequality")
    minimal = in_max_ideal(psi.entries)
    rep.hypotheses.append(("minimal_presentation", "verified" if minimal else "unverified"))
    m = Ideal.maximal(psi.ring)
    mu_n = mu_at_prime(psi, m)
    mu_m = mu_at_prime(dual_presentation(psi), m)
    rep.lhs = psi.nrows
    rep.rhs = mu_m + mu_n
    rep.exactness = _exactness(Ideal(psi.ring, psi.entries))
    rep.notes.append(f"mu(M) = {mu_m}, mu(N) = {mu_n}")
    return rep.finish()


# -- determinantal corollaries -----------------------------------------------


def check_macaulay_ee(A: PolyMatrix, c, t: int) -> BoundReport:
    """If I_t(A) = 0 and c has entries in m, ht I_t([A|c]) <= n - t + 1."""
    c = _vector(A.ring, c)
    if len(c) != A.nrows:
        raise InputError(f"column has length {len(c)}, matrix has {A.nrows} rows")
    if t < 1:
        raise InputError("t must be positive")
    rep = BoundReport("macaulay_ee")
    if any(determinantal_ideal(A, t).generators):
        rep.hypotheses.append(("minors_t_vanish", "violated"))
        raise HypothesisViolated(f"some {t}x{t} minor of A is nonzero", rep.finish())
    rep.hypotheses.append(("minors_t_vanish", "verified"))
    if not in_max_ideal(c):
        rep.hypotheses.append(("column_in_m", "violated"))
        raise XNotInMN("added column has an entry with nonzero constant term", rep.finish())
    rep.hypotheses.append(("column_in_m", "verified"))
    B = A.hstack(PolyMatrix.from_columns(A.ring, [c], A.nrows))
    I = determinantal_ideal(B, t)
    rep.lhs = _height(I)
    rep.rhs = A.nrows - t + 1
    rep.vacuous = _trivial(I)
    rep.exactness = _exactness(I)
    return rep.finish()


def check_bruns(A: PolyMatrix, t: int) -> BoundReport:
    """If I_{t+1}(A) = 0 then ht I_t(A) <= rows + cols - 2t + 1."""
    if t < 1:
        raise InputError("t must be positive")
    rep = BoundReport("bruns")
    if any(determinantal_ideal(A, t + 1).generators):
        rep.hypotheses.append(("minors_t_plus_1_vanish", "violated"))
        raise HypothesisViolated(f"some {t + 1}x{t + 1} minor of A is nonzero", rep.finish())
    rep.hypotheses.append(("minors_t_plus_1_vanish", "verified"))
    I = determinantal_ideal(A, t)
    rep.lhs = _height(I)
    rep.rhs = A.nrows + A.ncols - 2 * t + 1
    rep.vacuous = _trivial(I)
    rep.exactness = _exactness(I)
    return rep.finish()


# -- row ideals and Fitting ideals -------------------------------------------


def check_row_ideal_equidim(A: PolyMatrix, b, cert: EquidimCertificate | None,
                            Q: PrimeWitness | None = None) -> BoundReport:
    """ht(b·A) <= n + ht Q - mu_Q(coker A) when Sym(coker A) is
    equidimensional; evaluated on the smallest-height minimal prime."""
    if Q is None:
        Q = PrimeWitness.zero(A.ring)
    rep = BoundReport("row_ideal_equidim")
    _cert_hypothesis(cert, rep)
    rep.hypotheses.append((f"Q_prime[{Q.name()}]", Q.status()))
    rep.hypotheses.append(("Q_inside_P", "verified" if Q.ideal.is_zero() else "asserted"))
    I = row_ideal(A, b)
    dI = krull_dim(I)
    rep.vacuous = dI.unit
    rep.lhs = dI.height
    rep.rhs = A.nrows + _height(Q.ideal) - mu_at_prime(A, Q.ideal)
    rep.exactness = _exactness(I)
    rep.notes.append("lhs is the height of the smallest minimal prime of the row ideal")
    return rep.finish()


def _rank_module(A):
    return A.nrows - matrix_rank(A)


def check_kwiecinski(A: PolyMatrix, i: int, cert: EquidimCertificate | None = None) -> BoundReport:
    """ht P <= i(i - rank M) for minimal primes P of Fitt_{i-1} that do not
    contain Fitt_i.  Those primes are isolated by saturation; the check uses
    the one of smallest height, so it is always marked conservative."""
    if i < 1:
        raise InputError("i must be a positive integer")
    cert = _auto_cert(A, cert)
    rep = BoundReport("kwiecinski", exactness="conservative")
    _cert_hypothesis(cert, rep)
    rep.hypotheses.append(("regular_domain", "verified"))
    lower = fitting_ideal(A, i - 1)
    upper = fitting_ideal(A, i)
    e = _rank_module(A)
    rep.rhs = i * (i - e)
    if lower.is_unit():
        rep.vacuous = True
        rep.notes.append(f"Fitt_{i - 1} is the unit ideal")
        J = lower
    elif upper.is_zero():
        rep.vacuous = True
        rep.notes.append(f"Fitt_{i} = 0 lies in every prime")
        J = Ideal.unit(A.ring)
    else:
        J = saturate(lower, upper)
        rep.vacuous = J.is_unit()
        if rep.vacuous:
            rep.notes.append(f"every minimal prime of Fitt_{i - 1} contains Fitt_{i}")
    dJ = krull_dim(J)
    rep.lhs = dJ.height
    rep.notes.append(f"rank M = {e}")
    return rep.finish()


def kwiecinski_vacuity_oracle(A: PolyMatrix, i: int) -> bool:
    """Fitt_i inside the radical of Fitt_{i-1} (decided by Rabinowitsch)."""
    return radical_contains(fitting_ideal(A, i - 1), fitting_ideal(A, i))


def check_kwiecinski_refined(A: PolyMatrix, i: int, cert: EquidimCertificate | None = None,
                             P: PrimeWitness | None = None) -> BoundReport:
    """ht P <= i(i - rank M) + mu_P(M) - i for a minimal prime P of
    Fitt_{i-1}, i >= rank M.  Without a witness, P ranges over the minimal
    primes of Fitt_{i-1} with mu_P bounded by the row count."""
    cert = _auto_cert(A, cert)
    e = _rank_module(A)
    rep = BoundReport("kwiecinski_refined")
    _cert_hypothesis(cert, rep)
    rep.hypotheses.append(("regular_domain", "verified"))
    if i < e:
        rep.hypotheses.append(("i_at_least_rank", "violated"))
        raise HypothesisViolated(f"i = {i} is below rank M = {e}", rep.finish())
    rep.hypotheses.append(("i_at_least_rank", "verified"))
    lower = fitting_ideal(A, i - 1) if i >= 1 else Ideal.unit(A.ring)
    if P is None:
        rep.exactness = "conservative"
        rep.notes.append("witness-free mode: mu_P replaced by the number of rows")
        if lower.is_unit():
            rep.vacuous = True
        rep.lhs = _height(lower)
        rep.rhs = i * (i - e) + A.nrows - i
        return rep.finish()
    if not P.ideal.contains(lower):
        rep.hypotheses.append(("P_contains_Fitt", "violated"))
        raise WitnessNotContaining(f"{P.name()} does not contain Fitt_{i - 1}", rep.finish())
    rep.hypotheses.append(("P_contains_Fitt", "verified"))
    rep.hypotheses.append((f"P_minimal_prime[{P.name()}]", "asserted" if P.asserted_prime else "unverified"))
    mu = mu_at_prime(A, P.ideal)
    rep.lhs = _height(P.ideal)
    rep.rhs = i * (i - e) + mu - i
    rep.exactness = _exactness(P.ideal, lower)
    rep.notes.append(f"rank M = {e}, mu_P = {mu}")
    return rep.finish()


def check_huneke_rossi(A: PolyMatrix, witnesses=()) -> BoundReport:
    """dim Sym(M) >= dim R/Q + mu_Q(M) for every prime Q; (0) and the
    origin are always included."""
    R = A.ring
    rep = BoundReport("huneke_rossi", exactness="exact")
    S = sym_presentation(A)
    dim_sym = krull_dim(S.defining_ideal).dim
    cands = [PrimeWitness.zero(R), PrimeWitness.maximal(R)] + list(witnesses)
    best = None
    attained = []
    for Q in cands:
        rep.hypotheses.append((f"Q_prime[{Q.name()}]", Q.status()))
        val = krull_dim(Q.ideal).dim + mu_at_prime(A, Q.ideal)
        rep.notes.append(f"Q = {Q.name()}: dim R/Q + mu_Q = {val}")
        if val == dim_sym:
            attained.append(Q.name())
        best = val if best is None else max(best, val)
    rep.lhs = best
    rep.rhs = dim_sym
    if attained:
        rep.notes.append("equality attained at " + ", ".join(attained))
    return rep.finish()


def check_serre_subadditivity(I: Ideal, J: Ideal) -> BoundReport:
    """ht(I + J) <= ht I + ht J in a polynomial ring."""
    rep = BoundReport("serre")
    rep.hypotheses.append(("regular_ring", "verified"))
    hom = I.is_homogeneous() and J.is_homogeneous()
    rep.hypotheses.append(("homogeneous", "verified" if hom else "unverified"))
    K = I + J
    dK = krull_dim(K)
    rep.vacuous = dK.unit
    rep.lhs = dK.height
    rep.rhs = _height(I) + _height(J)
    rep.exactness = "exact" if hom else "conservative"
    return rep.finish()
