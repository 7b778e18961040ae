"""Lie algebras given by structure constants: parsing, validation, direct sums.

Algebra files look like::

    # Kodaira-Thurston algebra n3 + R
    dim 4;
    generators x, e1, e2, e3;
    [2,3] = -1*4;
    form omega = e1^e3 + e2^x;

Besides brackets, a file may give differentials directly (``d[4] = a1^a2;``),
which are converted to brackets, and named 2-forms (``form NAME = EXPR;``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import ParseError
from .exterior import Form, mask_indices

_GEN_INDEX = re.compile(r"a(\d+)$")


@dataclass(frozen=True)
class StructureConstants:
    """``[X_i, X_j] = sum_k c[k] X_k`` for ``i < j`` (1-based indices).

    ``brackets`` maps ``(i, j)`` with ``i < j`` to a dict ``{k: c}`` without
    zero entries. Brackets with ``i > j`` are answered by antisymmetry.
    """

    n: int
    brackets: dict = field(default_factory=dict)
    names: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        if self.names is not None and len(self.names) != self.n:
            raise ValueError("need exactly one name per generator")

    def bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_vector(self, u, v):
        """Bracket of two vectors given in the X-basis (lists of length n)."""
        out = [Fraction(0)] * self.n
        for (i, j), targets in self.brackets.items():
            coef = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]
            if coef:
                for k, c in targets.items():
                    out[k - 1] += coef * c
        return out

    def generator_names(self) -> list[str]:
        return list(self.names) if self.names else [f"a{i}" for i in range(1, self.n + 1)]

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return (self.n, self.brackets, self.names) == (other.n, other.brackets, other.names)

    def __hash__(self):
        items = tuple(sorted((ij, tuple(sorted(t.items()))) for ij, t in self.brackets.items()))
        return hash((self.n, items, self.names))


@dataclass
class AlgebraReport:
    jacobi_ok: bool
    violations: list
    nilpotent: bool
    nilpotency_class: int | None
    lower_central_series: list
    lattice_criterion: bool = True

    def to_dict(self):
        return {
            "jacobi_ok": self.jacobi_ok,
            "violations": [list(v) for v in self.violations],
            "nilpotent": self.nilpotent,
            "nilpotency_class": self.nilpotency_class,
            "lower_central_series": self.lower_central_series,
            "lattice_criterion": self.lattice_criterion,
        }


@dataclass
class AlgebraFile:
    """Everything read from an algebra file."""

    algebra: StructureConstants
    forms: dict = field(default_factory=dict)
    form_sources: dict = field(default_factory=dict)


# tokenizer


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<punct>[\[\],=+\-*/^;])"
)


@dataclass
class _Tok:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def tok(self):
        return self.toks[self.pos]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def accept(self, value):
        if self.tok.kind in ("punct", "ident") and self.tok.value == value:
            return self.next()
        return None

    def expect(self, value):
        t = self.accept(value)
        if t is None:
            shown = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {shown!r}")
        return t

    def integer(self):
        if self.tok.kind != "int":
            raise self.error(f"expected integer, found {self.tok.value or 'end of input'!r}")
        return int(self.next().value)

    def rational(self):
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        num = self.integer()
        if self.accept("/"):
            start = self.tok
            den = self.integer()
            if den == 0:
                raise self.error("zero denominator", start)
            return sign * Fraction(num, den)
        return Fraction(sign * num)


def _check_gen(p: _Parser, n: int, i: int, tok: _Tok):
    if not 1 <= i <= n:
        raise p.error(f"generator index {i} out of range 1..{n}", tok)


def _parse_form_expr(p: _Parser, n: int, symbols: dict, stop=(";", "eof")) -> Form:
    """form := term (("+"|"-") term)*, term := (RATIONAL "*")? atom ("^" atom)*."""
    total = Form.zero(n)
    sign = 1
    if p.accept("-"):
        sign = -1
    else:
        p.accept("+")
    while True:
        coeff = Fraction(1)
        if p.tok.kind == "int":
            coeff = p.rational()
            if not p.accept("*"):
                # a bare scalar term
                total = total + Form.scalar(n, sign * coeff)
                if not _more_terms(p, stop):
                    return total
                sign = -1 if p.next().value == "-" else 1
                continue
        term = Form.scalar(n, sign * coeff)
        term = term ^ _atom(p, n, symbols)
        while p.accept("^"):
            term = term ^ _atom(p, n, symbols)
        total = total + term
        if not _more_terms(p, stop):
            return total
        sign = -1 if p.next().value == "-" else 1


def _more_terms(p: _Parser, stop) -> bool:
    t = p.tok
    if t.kind == "punct" and t.value in ("+", "-"):
        return True
    if (t.kind == "eof" and "eof" in stop) or (t.kind == "punct" and t.value in stop):
        return False
    raise p.error(f"unexpected {t.value or 'end of input'!r} in form expression")


def _atom(p: _Parser, n: int, symbols: dict) -> Form:
    t = p.tok
    if t.kind != "ident":
        raise p.error(f"expected generator, found {t.value or 'end of input'!r}")
    p.next()
    if t.value in symbols:
        return symbols[t.value]
    m = _GEN_INDEX.match(t.value)
    if m:
        i = int(m.group(1))
        _check_gen(p, n, i, t)
        return Form.generator(n, i)
    raise p.error(f"unknown symbol {t.value!r}", t)


def parse_algebra_file(text: str) -> AlgebraFile:
    p = _Parser(text)
    p.expect("dim")
    dim_tok = p.tok
    n = p.integer()
    if n < 1:
        raise p.error("dimension must be at least 1", dim_tok)
    p.expect(";")

    names = None
    brackets: dict = {}
    bracket_tok: dict = {}
    diffs: dict = {}
    forms: dict = {}
    form_sources: dict = {}
    symbols: dict = {}

    if p.accept("generators"):
        first = p.tok
        names = []
        while True:
            t = p.tok
            if t.kind != "ident":
                raise p.error("expected generator name")
            p.next()
            if t.value in names:
                raise p.error(f"duplicate generator name {t.value!r}", t)
            if _GEN_INDEX.match(t.value) or t.value in ("d", "form"):
                raise p.error(f"reserved generator name {t.value!r}", t)
            names.append(t.value)
            if not p.accept(","):
                break
        if len(names) != n:
            raise p.error(f"{len(names)} generator names given for dim {n}", first)
        p.expect(";")
        for i, name in enumerate(names, 1):
            symbols[name] = Form.generator(n, i)

    while p.tok.kind != "eof":
        start = p.tok
        if p.accept("["):
            ti = p.tok
            i = p.integer()
            _check_gen(p, n, i, ti)
            p.expect(",")
            tj = p.tok
            j = p.integer()
            _check_gen(p, n, j, tj)
            p.expect("]")
            p.expect("=")
            vec: dict = {}
            while True:
                c = p.rational()
                p.expect("*")
                tk = p.tok
                k = p.integer()
                _check_gen(p, n, k, tk)
                vec[k] = vec.get(k, 0) + c
                if p.tok.kind == "punct" and p.tok.value in "+-" and p.tok.value:
                    if p.tok.value == "+":
                        p.next()
                    continue
                break
            p.expect(";")
            vec = {k: c for k, c in vec.items() if c}
            if i == j:
                if vec:
                    raise p.error(f"[{i},{i}] must vanish", start)
                continue
            if i > j:
                i, j = j, i
                vec = {k: -c for k, c in vec.items()}
            if (i, j) in bracket_tok:
                raise p.error(f"duplicate bracket [{i},{j}]", start)
            bracket_tok[(i, j)] = start
            if vec:
                brackets[(i, j)] = vec
        elif p.tok.kind == "ident" and p.tok.value == "d" and p.toks[p.pos + 1].value == "[":
            p.next()
            p.expect("[")
            tk = p.tok
            k = p.integer()
            _check_gen(p, n, k, tk)
            p.expect("]")
            p.expect("=")
            if k in diffs:
                raise p.error(f"duplicate differential d[{k}]", start)
            dk = _parse_form_expr(p, n, {})
            if dk and dk.degrees() != {2}:
                raise p.error(f"d[{k}] must be a 2-form", start)
            diffs[k] = (dk, start)
            p.expect(";")
        elif p.accept("form"):
            t = p.tok
            if t.kind != "ident":
                raise p.error("expected form name")
            p.next()
            if t.value in symbols or _GEN_INDEX.match(t.value):
                raise p.error(f"name {t.value!r} already in use", t)
            p.expect("=")
            src_start = p.pos
            w = _parse_form_expr(p, n, symbols)
            form_sources[t.value] = " ".join(tok.value for tok in p.toks[src_start:p.pos])
            forms[t.value] = w
            symbols[t.value] = w
            p.expect(";")
        else:
            raise p.error(f"unexpected {p.tok.value!r}")

    if diffs:
        _merge_differentials(p, n, brackets, diffs)

    sc = StructureConstants(n, {ij: brackets[ij] for ij in sorted(brackets)},
                            tuple(names) if names else None)
    return AlgebraFile(sc, forms, form_sources)


def _merge_differentials(p, n, brackets, diffs):
    # d a_k = -sum_{i<j} c_k^{ij} a_i a_j
    for k, (dk, tok) in sorted(diffs.items()):
        implied = {}
        for mono, c in dk.items():
            i, j = mask_indices(mono)
            implied[(i, j)] = -c
        existing = {ij: t[k] for ij, t in brackets.items() if k in t}
        if existing and existing != implied:
            raise p.error(f"d[{k}] disagrees with the brackets", tok)
        for ij, c in implied.items():
            brackets.setdefault(ij, {})[k] = c
    for ij in list(brackets):
        brackets[ij] = {k: brackets[ij][k] for k in sorted(brackets[ij])}


def parse_algebra(text: str) -> StructureConstants:
    return parse_algebra_file(text).algebra


def parse_form(text: str, sc: StructureConstants, named: dict | None = None,
               degree: int | None = None, homogeneous: bool = True) -> Form:
    """Parse a form expression over ``sc``'s generators.

    Atoms are ``aN``, generator names of ``sc``, or keys of ``named``.
    If ``degree`` is given, the result must be homogeneous of that degree;
    otherwise mixed degrees are rejected unless ``homogeneous`` is False.
    """
    p = _Parser(text)
    symbols = {}
    if sc.names:
        symbols.update({name: Form.generator(sc.n, i) for i, name in enumerate(sc.names, 1)})
    if named:
        symbols.update(named)
    w = _parse_form_expr(p, sc.n, symbols, stop=("eof",))
    if degree is not None and w and w.degrees() != {degree}:
        raise ParseError(f"expected a homogeneous {degree}-form, got degrees {sorted(w.degrees())}")
    if homogeneous and not w.is_homogeneous():
        raise ParseError(f"mixed-degree form (degrees {sorted(w.degrees())})")
    return w


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize(sc: StructureConstants, forms: dict | None = None) -> str:
    lines = [f"dim {sc.n};"]
    if sc.names:
        lines.append("generators " + ", ".join(sc.names) + ";")
    for (i, j), targets in sorted(sc.brackets.items()):
        rhs = " + ".join(f"{_fmt(c)}*{k}" for k, c in sorted(targets.items()))
        lines.append(f"[{i},{j}] = {rhs};")
    for name, w in (forms or {}).items():
        lines.append(f"form {name} = {w};")
    return "\n".join(lines) + "\n"


# validation


def jacobi_violations(sc: StructureConstants) -> list:
    n = sc.n
    unit = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    bad = []
    for i, j, k in combinations(range(n), 3):
        xi, xj, xk = unit[i], unit[j], unit[k]
        s = [Fraction(0)] * n
        for a, b, c in ((xi, xj, xk), (xj, xk, xi), (xk, xi, xj)):
            t = sc.bracket_vector(sc.bracket_vector(a, b), c)
            s = [x + y for x, y in zip(s, t)]
        if any(s):
            bad.append((i + 1, j + 1, k + 1))
    return bad


def lower_central_series(sc: StructureConstants) -> list[int]:
    """Dimensions of g, [g,g], [g,[g,g]], ... up to stabilisation."""
    n = sc.n
    unit = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    current = unit
    dims = [n]
    while True:
        vecs = [sc.bracket_vector(x, v) for x in unit for v in current]
        current = linalg.row_space(vecs, n)
        dims.append(len(current))
        if len(current) == 0 or len(current) == dims[-2]:
            return dims


def validate(sc: StructureConstants) -> AlgebraReport:
    bad = jacobi_violations(sc)
    series = lower_central_series(sc)
    nilpotent = series[-1] == 0
    # class = number of non-zero terms of the series; abelian gives 1
    cls = sum(1 for d in series if d) if nilpotent else None
    return AlgebraReport(not bad, bad, nilpotent, cls, series)


def direct_sum(a: StructureConstants, b: StructureConstants) -> StructureConstants:
    shift = a.n
    brackets = dict(a.brackets)
    for (i, j), targets in b.brackets.items():
        brackets[(i + shift, j + shift)] = {k + shift: c for k, c in targets.items()}
    names = None
    if a.names and b.names and not set(a.names) & set(b.names):
        names = a.names + b.names
    return StructureConstants(a.n + b.n, brackets, names)


def abelian(n: int) -> StructureConstants:
    return StructureConstants(n, {})
