"""Randomized sweeps: sample matrices over F_p and run one check per sample.

Sampling is reproducible across implementations.  The generator is
SplitMix64 seeded with the sweep seed; draws are consumed in this order per
sample: matrix entries row-major, then (if the theorem needs one) the extra
vector.  For each entry, every monomial of degree <= d (exactly d when
homogeneous), in increasing grevlex order, takes one draw: it is included
when the top bit is set, and then a second draw picks the coefficient
``1 + draw % (p - 1)``.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .checks import (
    BoundReport,
    PrimeWitness,
    check_bruns,
    check_gpit,
    check_huneke_rossi,
    check_kwiecinski,
    check_kwiecinski_refined,
    check_lemma_1_1,
    check_macaulay_ee,
    check_mu_inequality,
    check_row_ideal_equidim,
    check_serre_subadditivity,
)
from .errors import ConfigError, HeightBoundsError, HypothesisViolated, ResourceLimit
from .groebner import Limits, resource_limits
from .ideals import Ideal
from .matrix import PolyMatrix
from .poly import CoefficientField, MonomialOrder, PolyRing, is_prime

CSV_HEADER = ["sample_index", "rows", "cols", "char", "theorem", "lhs", "rhs", "slack", "holds",
              "vacuous", "exactness", "hypotheses_status", "seed"]

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def monomials_up_to(nvars: int, d: int, exact: bool = False) -> list:
    """Exponent tuples of degree <= d (== d if ``exact``), increasing grevlex."""
    out = []
    for deg in range(d if exact else 0, d + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    key = MonomialOrder.grevlex().key
    return sorted(set(out), key=key)


def random_poly(rng: SplitMix64, ring: PolyRing, d: int, homogeneous: bool):
    p = ring.field.characteristic
    terms = {}
    for m in monomials_up_to(ring.nvars, d, homogeneous):
        if rng.next() >> 63:
            terms[m] = 1 + rng.next() % (p - 1)
    return ring.from_dict(terms)


@dataclass(frozen=True)
class SweepConfig:
    theorem: str
    rows: int = 2
    cols: int = 1
    char: int = 5
    max_deg: int = 1
    homogeneous: bool = True
    samples: int = 100
    seed: int = 42
    nvars: int = 3
    index: int | None = None  # t for bruns / macaulay_ee, i for the Fitting checks
    limits: Limits = field(default_factory=Limits.from_env)
    workers: int = 1

    def validate(self):
        if self.theorem not in SAMPLERS:
            raise ConfigError(f"unknown theorem {self.theorem!r}; choose from {sorted(SAMPLERS)}")
        if self.samples < 1:
            raise ConfigError("sample count must be at least 1")
        if not is_prime(self.char) or self.char >= 2**31:
            raise ConfigError(f"characteristic must be a prime below 2^31, got {self.char}")
        if self.rows < 1 or self.cols < 0 or self.nvars < 1 or self.max_deg < 0:
            raise ConfigError("rows, nvars must be positive; cols, max_deg non-negative")
        if self.homogeneous and self.max_deg == 0:
            raise ConfigError("homogeneous sampling needs max_deg >= 1")
        if self.theorem == "serre" and self.rows < 2:
            raise ConfigError("serre sweeps need at least two rows")
        return self

    def ring(self):
        names = ["x", "y", "z"] if self.nvars == 3 else [f"x{i + 1}" for i in range(self.nvars)]
        return PolyRing(names, CoefficientField(self.char), MonomialOrder.grevlex())


@dataclass
class Sample:
    index: int
    matrix: PolyMatrix
    vector: list | None = None


def _draw_matrix(rng, cfg, ring, rows, cols):
    entries = [random_poly(rng, ring, cfg.max_deg, cfg.homogeneous) for _ in range(rows * cols)]
    return PolyMatrix(ring, rows, cols, entries)


def _draw_vector(rng, cfg, ring, n):
    return [random_poly(rng, ring, cfg.max_deg, cfg.homogeneous) for _ in range(n)]


def draw_samples(cfg: SweepConfig) -> list:
    ring = cfg.ring()
    rng = SplitMix64(cfg.seed)
    needs_vector = cfg.theorem in ("macaulay_ee", "gpit", "lemma_1_1", "row_ideal_equidim")
    out = []
    for k in range(cfg.samples):
        A = _draw_matrix(rng, cfg, ring, cfg.rows, cfg.cols)
        v = _draw_vector(rng, cfg, ring, cfg.rows) if needs_vector else None
        out.append(Sample(k, A, v))
    return out


def _run_bruns(s, cfg):
    return check_bruns(s.matrix, cfg.index or 2)


def _run_macaulay_ee(s, cfg):
    return check_macaulay_ee(s.matrix, s.vector, cfg.index or s.matrix.ncols + 1)


def _run_kwiecinski(s, cfg):
    return check_kwiecinski(s.matrix, cfg.index or s.matrix.nrows)


def _run_kwiecinski_refined(s, cfg):
    return check_kwiecinski_refined(s.matrix, cfg.index or s.matrix.nrows)


def _run_gpit(s, cfg):
    return check_gpit(s.matrix, s.vector)


def _run_mu_inequality(s, cfg):
    return check_mu_inequality(s.matrix)


def _run_lemma_1_1(s, cfg):
    return check_lemma_1_1(s.matrix, s.vector)


def _run_row_ideal_equidim(s, cfg):
    from .modules import equidim_certificate, sym_presentation

    cert = equidim_certificate(sym_presentation(s.matrix))
    return check_row_ideal_equidim(s.matrix, s.vector, cert, PrimeWitness.zero(s.matrix.ring))


def _run_huneke_rossi(s, cfg):
    return check_huneke_rossi(s.matrix)


def _run_serre(s, cfg):
    A = s.matrix
    return check_serre_subadditivity(Ideal(A.ring, A.row(0)), Ideal(A.ring, A.row(1)))


SAMPLERS = {
    "bruns": _run_bruns,
    "macaulay_ee": _run_macaulay_ee,
    "kwiecinski": _run_kwiecinski,
    "kwiecinski_refined": _run_kwiecinski_refined,
    "gpit": _run_gpit,
    "mu_inequality": _run_mu_inequality,
    "lemma_1_1": _run_lemma_1_1,
    "row_ideal_equidim": _run_row_ideal_equidim,
    "huneke_rossi": _run_huneke_rossi,
    "serre": _run_serre,
}


@dataclass
class SampleOutcome:
    index: int
    report: BoundReport
    status: str  # ok | hypothesis_violated | resource_limit


def run_sample(sample: Sample, cfg: SweepConfig) -> SampleOutcome:
    with resource_limits(cfg.limits):
        try:
            rep = SAMPLERS[cfg.theorem](sample, cfg)
            return SampleOutcome(sample.index, rep, "ok")
        except HypothesisViolated as exc:
            rep = exc.report or BoundReport(cfg.theorem, [("hypothesis", "violated")])
            rep.notes.append(str(exc))
            return SampleOutcome(sample.index, rep, "hypothesis_violated")
        except ResourceLimit as exc:
            rep = BoundReport(cfg.theorem, [("resource_limit", "unverified")], notes=[str(exc)]).finish()
            return SampleOutcome(sample.index, rep, "resource_limit")


def _run_pair(args):
    return run_sample(*args)


class SweepViolation(HeightBoundsError):
    """A sample with all hypotheses verified broke its bound."""

    def __init__(self, bundle):
        self.bundle = bundle
        super().__init__(f"bound violated at sample {bundle['index']} (seed {bundle['seed']})")


def serialize_sample(sample: Sample, cfg: SweepConfig) -> str:
    """The sample as a session document, ready for the CLI."""
    ring = sample.matrix.ring
    lines = ["[ring]", f"vars = {', '.join(ring.variables)}", f"field = Fp {cfg.char}", "order = grevlex", "",
             "[matrix A]"]
    A = sample.matrix
    if A.ncols == 0:
        lines.append(f"shape = {A.nrows} x 0")
    for r in A.rows():
        if r:
            lines.append("; ".join(str(f) for f in r))
    if sample.vector is not None:
        lines += ["", "[vector v]", "; ".join(str(f) for f in sample.vector)]
    return "\n".join(lines) + "\n"


@dataclass
class SweepResult:
    config: SweepConfig
    outcomes: list

    @property
    def reports(self):
        return [o.report for o in self.outcomes]

    def counts(self) -> dict:
        c = Counter()
        for o in self.outcomes:
            r = o.report
            c["samples"] += 1
            if o.status == "resource_limit":
                c["resource_limited"] += 1
                continue
            if o.status == "hypothesis_violated":
                c["hypothesis_violated"] += 1
            elif not r.all_verified:
                c["hypothesis_unverified"] += 1
            if r.vacuous:
                c["vacuous"] += 1
            if r.holds and o.status == "ok":
                c["holds"] += 1
            if o.status == "ok" and r.all_verified and not r.holds:
                c["violations"] += 1
        for key in ("samples", "holds", "vacuous", "hypothesis_unverified", "hypothesis_violated",
                    "resource_limited", "violations"):
            c.setdefault(key, 0)
        return dict(c)

    def slack_histogram(self) -> dict:
        h = Counter(o.report.slack for o in self.outcomes
                    if o.status == "ok" and not o.report.vacuous and o.report.slack is not None)
        return dict(sorted(h.items()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        cfg = self.config
        for o in self.outcomes:
            r = o.report
            w.writerow([o.index, cfg.rows, cfg.cols, cfg.char, cfg.theorem,
                        "" if r.lhs is None else r.lhs, "" if r.rhs is None else r.rhs,
                        "" if r.slack is None else r.slack, str(r.holds).lower(), str(r.vacuous).lower(),
                        r.exactness, r.hypotheses_status(), cfg.seed])
        return buf.getvalue()

    def summary(self) -> str:
        c = self.counts()
        parts = [f"{k} {v}" for k, v in c.items()]
        hist = ", ".join(f"{k}: {v}" for k, v in self.slack_histogram().items())
        return "; ".join(parts) + f"\nslack histogram {{{hist}}}"


def sweep(cfg: SweepConfig) -> SweepResult:
    """Run the configured check on every sample.

    Raises :class:`SweepViolation` with a reproduction bundle as soon as a
    fully verified sample fails its bound.
    """
    cfg.validate()
    samples = draw_samples(cfg)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_run_pair, [(s, cfg) for s in samples]))
    else:
        outcomes = [run_sample(s, cfg) for s in samples]
    outcomes.sort(key=lambda o: o.index)
    for o in outcomes:
        r = o.report
        if o.status == "ok" and r.all_verified and not r.holds:
            s = samples[o.index]
            raise SweepViolation({
                "seed": cfg.seed,
                "index": o.index,
                "theorem": cfg.theorem,
                "session": serialize_sample(s, cfg),
                "report": r.to_dict(),
            })
    return SweepResult(cfg, outcomes)
