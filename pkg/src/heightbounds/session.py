"""Session documents: one text file declaring a ring and named objects.

::

    [ring]
    vars = x, y, z
    field = Q            # or: Fp 5
    order = grevlex      # or: lex

    [poly f]
    x^2 + y

    [matrix A]           # one row per line, entries separated by ';'
    y; z; 0
    -x; 0; z

    [matrix F]
    shape = 2 x 0        # empty shapes need an explicit shape line

    [vector b]
    x; y

    [ideal I]
    (x*y, x*z)

    [prime P]
    gens = x, y, z       # or: ideal = I
    asserted = true

    [certificate C]
    kind = user_asserted # or: complete_intersection, with matrix = A
    note = 2x2 minors of a generic 2x3 matrix are prime

Objects may only refer to names declared above them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError
from .ideals import Ideal
from .matrix import PolyMatrix
from .modules import EquidimCertificate, equidim_certificate, sym_presentation
from .poly import CoefficientField, MonomialOrder, PolyRing, parse_poly

_HEADER = re.compile(r"\[\s*([a-z]+)(?:\s+([A-Za-z][A-Za-z0-9_]*))?\s*\]\Z")
_KINDS = ("ring", "poly", "matrix", "vector", "ideal", "prime", "certificate")


class SessionError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class Session:
    ring: PolyRing
    polys: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    primes: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)

    def _get(self, table, name, what):
        try:
            return table[name]
        except KeyError:
            raise InputError(f"no {what} named {name!r}") from None

    def matrix(self, name):
        return self._get(self.matrices, name, "matrix")

    def vector(self, name):
        return self._get(self.vectors, name, "vector")

    def prime(self, name):
        return self._get(self.primes, name, "prime")

    def certificate(self, name):
        return self._get(self.certificates, name, "certificate")

    def ideal(self, name):
        """An ideal by name; a poly name gives its principal ideal."""
        if name in self.ideals:
            return self.ideals[name]
        if name in self.polys:
            return Ideal(self.ring, [self.polys[name]])
        if name in self.primes:
            return self.primes[name][0]
        raise InputError(f"no ideal named {name!r}")


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _strip_outer_parens(text):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        return text
    depth = 0
    for k, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and k < len(text) - 1:
            return text
    return text[1:-1].strip()


def _keyvals(body):
    out = {}
    for lineno, line in body:
        if "=" not in line:
            raise SessionError(f"expected 'key = value', got {line!r}", lineno)
        k, v = line.split("=", 1)
        k = k.strip()
        if k in out:
            raise SessionError(f"duplicate key {k!r}", lineno)
        out[k] = (v.strip(), lineno)
    return out


def _parse_ring(body):
    kv = _keyvals(body)
    if "vars" not in kv:
        raise SessionError("[ring] needs a 'vars' line")
    names = [v.strip() for v in kv["vars"][0].split(",") if v.strip()]
    fld = kv.get("field", ("Q", None))
    m = re.fullmatch(r"Q|Fp\s+(\d+)", fld[0])
    if not m:
        raise SessionError(f"field must be 'Q' or 'Fp <p>', got {fld[0]!r}", fld[1])
    field_ = CoefficientField(int(m.group(1)) if m.group(1) else 0)
    order = kv.get("order", ("grevlex", None))
    if order[0] not in ("grevlex", "lex"):
        raise SessionError(f"order must be grevlex or lex, got {order[0]!r}", order[1])
    unknown = set(kv) - {"vars", "field", "order"}
    if unknown:
        raise SessionError(f"unknown [ring] keys {sorted(unknown)}")
    return PolyRing(names, field_, MonomialOrder(order[0]))


def _poly(src, ring, lineno):
    try:
        return parse_poly(src, ring)
    except InputError as exc:
        raise SessionError(str(exc), lineno) from None


def _parse_matrix(body, ring):
    shape = None
    rows = []
    for lineno, line in body:
        if line.startswith("shape"):
            m = re.fullmatch(r"shape\s*=\s*(\d+)\s*x\s*(\d+)", line)
            if not m:
                raise SessionError("shape must read 'shape = n x m'", lineno)
            shape = (int(m.group(1)), int(m.group(2)))
            continue
        rows.append([_poly(s, ring, lineno) for s in _split_top(line, ";")])
    if shape is not None:
        if rows and (len(rows), len(rows[0])) != shape:
            raise SessionError(f"declared shape {shape} does not match the rows given")
        if not rows:
            return PolyMatrix(ring, shape[0], shape[1])
    if not rows:
        raise SessionError("empty matrix needs a shape line")
    if any(len(r) != len(rows[0]) for r in rows):
        raise SessionError("matrix rows have different lengths", body[0][0])
    return PolyMatrix.from_rows(ring, rows)


def _parse_vector(body, ring):
    out = []
    for lineno, line in body:
        out += [_poly(s, ring, lineno) for s in _split_top(line, ";") if s]
    return out


def _parse_gens(text, ring, lineno):
    text = _strip_outer_parens(text)
    if not text:
        return []
    return [_poly(s, ring, lineno) for s in _split_top(text, ",") if s]


def _parse_ideal(body, ring):
    gens = []
    for lineno, line in body:
        gens += _parse_gens(line, ring, lineno)
    return Ideal(ring, gens)


def _truthy(value, lineno):
    v = value.lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise SessionError(f"expected true or false, got {value!r}", lineno)


def parse_session(text: str) -> Session:
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = _HEADER.match(line)
            if not m or m.group(1) not in _KINDS:
                raise SessionError(f"bad section header {line!r}", lineno)
            kind, name = m.groups()
            if (kind == "ring") != (name is None):
                raise SessionError("[ring] takes no name; every other section needs one", lineno)
            current = (kind, name, lineno, [])
            sections.append(current)
        else:
            if current is None:
                raise SessionError("content before the first section", lineno)
            current[3].append((lineno, line))

    if not sections or sections[0][0] != "ring":
        raise SessionError("the first section must be [ring]")
    ring = _parse_ring(sections[0][3])
    sess = Session(ring)
    seen = set()
    for kind, name, lineno, body in sections[1:]:
        if kind == "ring":
            raise SessionError("only one [ring] section is allowed", lineno)
        if name in seen:
            raise SessionError(f"name {name!r} is declared twice", lineno)
        if kind == "poly":
            if not body:
                raise SessionError("empty [poly] section", lineno)
            sess.polys[name] = _poly(" ".join(l for _, l in body), ring, body[0][0])
        elif kind == "matrix":
            sess.matrices[name] = _parse_matrix(body, ring)
        elif kind == "vector":
            sess.vectors[name] = _parse_vector(body, ring)
        elif kind == "ideal":
            sess.ideals[name] = _parse_ideal(body, ring)
        elif kind == "prime":
            kv = _keyvals(body)
            if "gens" in kv:
                I = Ideal(ring, _parse_gens(kv["gens"][0], ring, kv["gens"][1]))
            elif "ideal" in kv:
                ref, ref_line = kv["ideal"]
                if ref not in seen:
                    raise SessionError(f"{ref!r} is not declared above", ref_line)
                I = sess.ideal(ref)
            else:
                raise SessionError("[prime] needs 'gens' or 'ideal'", lineno)
            asserted = _truthy(*kv["asserted"]) if "asserted" in kv else False
            sess.primes[name] = (I, asserted)
        elif kind == "certificate":
            kv = _keyvals(body)
            kind_, kl = kv.get("kind", ("", lineno))
            note = kv.get("note", ("", None))[0]
            if kind_ == "user_asserted":
                sess.certificates[name] = EquidimCertificate.asserted(note)
            elif kind_ == "complete_intersection":
                if "matrix" not in kv:
                    raise SessionError("a complete_intersection certificate names its matrix", kl)
                ref, ref_line = kv["matrix"]
                if ref not in sess.matrices:
                    raise SessionError(f"{ref!r} is not a matrix declared above", ref_line)
                cert = equidim_certificate(sym_presentation(sess.matrices[ref]))
                if cert.kind != "complete_intersection":
                    raise SessionError(f"Sym of {ref} is not a complete intersection ({cert.detail})", kl)
                sess.certificates[name] = cert
            else:
                raise SessionError("certificate kind must be user_asserted or complete_intersection", kl)
        seen.add(name)
    return sess


def load_session(path) -> Session:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"session file {str(p)!r} does not exist") from None
    except OSError as exc:
        raise InputError(f"cannot read session file {str(p)!r}: {exc}") from None
    return parse_session(text)
