"""The representation file format: parsing with line/column diagnostics, and serialization.

One declaration per line, ``#`` starts a comment::

    field laurent p=<prime> prec=<n>
    field ratfunc p=<prime> var=<sym>
    field number minpoly=<poly>
    field cm real=<poly> delta=<expr>
    gen <letter> [[e, e], [e, e]]
    puncture <word>
    edge <u> <v> <word>

Entries are integer polynomials in the field variable (t, the ratfunc
variable, x, or x and s in cm mode) with ``+ - * ^``, parentheses, ``/``
(ratfunc, number and cm modes) and ``O(t^N)`` in laurent mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..arith.fp import check_prime
from ..arith.laurent import INF, LaurentSeries
from ..arith.numberfield import NumberFieldElem, format_poly
from ..arith.ratfunc import RationalFunction, format_fp_poly
from ..errors import DeterminantNotOne, ParseError, UnknownGenerator
from ..matrix import Matrix2, check_det_one, free_reduce, is_zero
from ..rep import CMSpec, LaurentSpec, NumberSpec, RatFuncSpec, RepPresentation
from ..treeharm import GainGraph

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class _Expr:
    """Recursive-descent evaluator producing domain elements directly."""

    def __init__(self, text: str, spec, line: int, col0: int):
        self.text = text
        self.spec = spec
        self.line = line
        self.col0 = col0
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            self.toks.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        self.i = 0
        self.variables = spec.variables()

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, self.line, self.col0 + pos + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            self.error(f"expected {value!r}" if value else "unexpected end of expression")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            self.error("empty entry")
        v = self.expr()
        if self.i != len(self.toks):
            self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while True:
            kind, val, pos = self.peek()
            if val == "*":
                self.take()
                v = v * self.unary()
            elif val == "/":
                if self.spec.mode == "laurent":
                    self.error("'/' is not allowed in laurent mode")
                self.take()
                d = self.unary()
                if is_zero(d):
                    self.error("division by zero", pos)
                v = v / d
            elif kind in ("name", "int") or val == "(":
                v = v * self.unary()  # juxtaposition, e.g. 2t or 3(x+1)
            else:
                return v

    def unary(self):
        val = self.peek()[1]
        if val == "-":
            self.take()
            return -self.unary()
        if val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, val, pos = self.take()
            if kind != "int":
                self.error("exponent must be an integer", pos)
            n = sign * int(val)
            if n < 0 and self.spec.mode != "laurent":
                self.error("negative exponents are only allowed in laurent mode", pos)
            base = base**n
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self.spec.const(int(val))
        if kind == "name":
            if val == "O" and self.peek()[1] == "(":
                return self.big_o(pos)
            if val not in self.variables:
                self.error(f"unknown symbol {val!r}", pos)
            return self.variables[val]
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        self.error(f"unexpected {val!r}", pos)

    def big_o(self, pos):
        if self.spec.mode != "laurent":
            self.error("O(...) terms are only allowed in laurent mode", pos)
        self.take("(")
        inner = self.expr()
        self.take(")")
        terms = inner.terms()
        if inner.prec != INF or len(terms) != 1 or list(terms.values())[0] % inner.p != 1:
            self.error("O(...) takes a monomial t^N", pos)
        (n,) = terms
        return LaurentSeries.zero(inner.p, prec=n)


def parse_expression(text: str, spec, line: int = 1, col0: int = 0):
    return _Expr(text, spec, line, col0).parse()


# --- files --------------------------------------------------------------------

@dataclass
class RepFile:
    spec: object
    generators: dict[str, Matrix2] = field(default_factory=dict)
    punctures: list[str] = field(default_factory=list)
    edges: list[tuple[str, str, str]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    @property
    def mode(self) -> str:
        return self.spec.mode

    def presentation(self) -> RepPresentation:
        return RepPresentation(self.spec, dict(self.generators), list(self.punctures))

    def gain_graph(self) -> GainGraph:
        if self.mode != "laurent":
            raise ValueError("gain graphs need laurent entries")
        rep = self.presentation()
        return GainGraph.from_edges([(u, v, rep.evaluate(w), w) for u, v, w in self.edges])

    def to_object(self):
        return self.gain_graph() if self.edges else self.presentation()


_KV = re.compile(r"(\w+)=(\S+)")


def _parse_header(rest: str, line: int, col0: int):
    parts = rest.split(None, 1)
    if not parts:
        raise ParseError("field line needs a mode", line, col0 + 1)
    mode = parts[0]
    kv_text = parts[1] if len(parts) > 1 else ""
    kvs = {}
    for m in re.finditer(r"\S+", kv_text):
        km = _KV.fullmatch(m.group(0))
        col = col0 + len(mode) + 2 + m.start()
        if not km:
            raise ParseError(f"expected key=value, got {m.group(0)!r}", line, col)
        kvs[km.group(1)] = (km.group(2), col)
    allowed = {
        "laurent": ({"p"}, {"prec"}),
        "ratfunc": ({"p"}, {"var"}),
        "number": ({"minpoly"}, set()),
        "cm": ({"real", "delta"}, set()),
    }
    if mode not in allowed:
        raise ParseError(f"unknown field mode {mode!r}", line, col0 + 1)
    required, optional = allowed[mode]
    for k, (_, col) in kvs.items():
        if k not in required | optional:
            raise ParseError(f"unknown key {k!r} for field {mode}", line, col)
    for k in required:
        if k not in kvs:
            raise ParseError(f"field {mode} needs {k}=", line, col0 + 1)

    def integer(key):
        val, col = kvs[key]
        if not re.fullmatch(r"\d+", val):
            raise ParseError(f"{key} must be a nonnegative integer", line, col)
        return int(val)

    def prime(key):
        p = integer(key)
        try:
            check_prime(p)
        except ValueError as e:
            raise ParseError(str(e), line, kvs[key][1]) from None
        return p

    if mode == "laurent":
        prec = integer("prec") if "prec" in kvs else LaurentSpec(2).prec
        return LaurentSpec(prime("p"), prec)
    if mode == "ratfunc":
        var = kvs.get("var", ("y", 0))[0]
        if not re.fullmatch(r"[a-z]", var) or var == "O":
            raise ParseError("var must be a single lower-case letter", line, kvs["var"][1])
        return RatFuncSpec(prime("p"), var)
    if mode == "number":
        return NumberSpec(_int_poly(kvs["minpoly"], line))
    real = _int_poly(kvs["real"], line)
    try:
        from ..arith.numberfield import NumberField

        F = NumberField(real)
    except ValueError as e:
        raise ParseError(str(e), line, kvs["real"][1]) from None
    delta_val, col = kvs["delta"]
    delta = parse_expression(delta_val, NumberSpec(F.minpoly), line, col - 1)
    try:
        spec = CMSpec(real, tuple(delta.coords))
        spec.field
    except ValueError as e:
        raise ParseError(str(e), line, col) from None
    return spec


def _int_poly(item, line) -> tuple[int, ...]:
    text, col = item
    coeffs = _poly_coeffs(text, line, col)
    if not coeffs or coeffs[-1] != 1:
        raise ParseError("polynomial must be monic with integer coefficients", line, col)
    if any(Fraction(c).denominator != 1 for c in coeffs):
        raise ParseError("polynomial must have integer coefficients", line, col)
    try:
        NumberSpec(tuple(coeffs)).field
    except ValueError as e:
        raise ParseError(str(e), line, col) from None
    return tuple(int(c) for c in coeffs)


class _PolyQ:
    """Dense polynomial over Q used only while parsing field polynomials."""

    def __init__(self, c):
        c = [Fraction(x) for x in c]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.c = c or [Fraction(0)]

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        return _PolyQ([(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0) for i in range(n)])

    def __neg__(self):
        return _PolyQ([-x for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return _PolyQ(out)

    def __truediv__(self, o):
        if len(o.c) != 1:
            raise ZeroDivisionError("only constant divisors")
        return _PolyQ([x / o.c[0] for x in self.c])

    def __pow__(self, n):
        out = _PolyQ([1])
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return self.c == [0]


class _PolySpec:
    mode = "poly"

    def variables(self):
        return {"x": _PolyQ([0, 1])}

    def const(self, c):
        return _PolyQ([c])


def _poly_coeffs(text, line, col):
    try:
        return parse_expression(text, _PolySpec(), line, col - 1).c
    except ZeroDivisionError as e:
        raise ParseError(str(e), line, col) from None


_GEN = re.compile(r"^\[\s*\[(?P<r1>[^\[\]]*)\]\s*,\s*\[(?P<r2>[^\[\]]*)\]\s*\]$")
_WORD = re.compile(r"^(?:1|[A-Za-z]+)$")


def _split_entries(row: str, offset: int) -> list[tuple[str, int]]:
    out, start, depth = [], 0, 0
    for i, ch in enumerate(row):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((row[start:i], offset + start))
            start = i + 1
    out.append((row[start:], offset + start))
    return out


def parse_file(text: str) -> RepFile:
    """Parse a representation file; ParseError carries line and column."""
    rf = None
    pending_words = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        keyword, _, rest = line.partition(" ")
        rest_col = indent + len(keyword) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if keyword == "field":
            if rf is not None:
                raise ParseError("duplicate field line", lineno, indent + 1)
            rf = RepFile(_parse_header(rest, lineno, rest_col))
            continue
        if rf is None:
            raise ParseError("the first declaration must be a field line", lineno, indent + 1)
        if keyword == "gen":
            name, _, mat = rest.partition(" ")
            if not re.fullmatch(r"[a-z]", name):
                raise ParseError("generator names are single lower-case letters", lineno, rest_col + 1)
            if name in rf.generators:
                raise ParseError(f"generator {name} declared twice", lineno, rest_col + 1)
            mat_col = rest_col + len(name) + 1 + (len(mat) - len(mat.lstrip()))
            mat = mat.strip()
            m = _GEN.match(mat)
            if not m:
                raise ParseError("matrix must look like [[e, e], [e, e]]", lineno, mat_col + 1)
            entries = []
            for key in ("r1", "r2"):
                parts = _split_entries(m.group(key), mat_col + m.start(key))
                if len(parts) != 2:
                    raise ParseError("each matrix row needs two entries", lineno, mat_col + m.start(key) + 1)
                entries += [parse_expression(t, rf.spec, lineno, c) for t, c in parts]
            M = Matrix2(*entries)
            try:
                check_det_one(M, f"generator {name}")
            except DeterminantNotOne as e:
                e.line = lineno
                raise
            rf.generators[name] = M
        elif keyword == "puncture":
            if not _WORD.match(rest):
                raise ParseError("puncture words use generator letters (upper case = inverse)", lineno, rest_col + 1)
            rf.punctures.append(rest)
            pending_words.append((rest, lineno, rest_col))
        elif keyword == "edge":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError("edge lines read: edge <u> <v> <word>", lineno, rest_col + 1)
            u, v, w = parts
            if not _WORD.match(w):
                raise ParseError("edge gain must be a word in the generators", lineno, rest_col + 1)
            rf.edges.append((u, v, w))
            pending_words.append((w, lineno, rest_col))
        else:
            raise ParseError(f"unknown declaration {keyword!r}", lineno, indent + 1)
    if rf is None:
        raise ParseError("missing field line", 1, 1)
    for w, lineno, col in pending_words:
        for ch in w:
            if ch != "1" and ch.lower() not in rf.generators:
                raise ParseError(f"unknown generator {ch.lower()!r}", lineno, col + 1)
    if rf.edges and rf.mode != "laurent":
        raise ParseError("edge lines need a laurent field", 1, 1)
    return rf


def parse(text: str):
    """RepPresentation, or GainGraph when the file declares edges."""
    rf = parse_file(text)
    try:
        return rf.to_object()
    except UnknownGenerator as e:
        raise ParseError(f"unknown generator {e}") from None


# --- serialization ------------------------------------------------------------

def format_laurent(x: LaurentSeries) -> str:
    parts = []
    for k, c in sorted(x.terms().items()):
        if k == 0:
            mono = str(c)
        else:
            power = "t" if k == 1 else f"t^{k}"
            mono = power if c == 1 else f"{c}*{power}"
        parts.append(mono)
    if x.prec != INF:
        parts.append(f"O(t^{x.prec})")
    return " + ".join(parts) if parts else "0"


def format_ratfunc(r: RationalFunction) -> str:
    num = format_fp_poly(r.num, r.var)
    if tuple(r.den) == (1,):
        return num
    den = format_fp_poly(r.den, r.var)
    wrap = lambda s: f"({s})" if " " in s or "*" in s or "^" in s else s
    return f"{wrap(num)}/{wrap(den)}"


def format_number(e: NumberFieldElem) -> str:
    return format_poly(e.coords, "x")


def format_entry(e) -> str:
    if isinstance(e, LaurentSeries):
        return format_laurent(e)
    if isinstance(e, RationalFunction):
        return format_ratfunc(e)
    if isinstance(e, NumberFieldElem):
        return format_number(e)
    if hasattr(e, "conj"):  # CM element
        xs, ys = format_number(e.x), format_number(e.y)
        if e.y.is_zero():
            return xs
        spart = {"1": "s", "-1": "-s"}.get(ys, f"({ys})*s")
        if e.x.is_zero():
            return spart
        return f"{xs} + {spart}"
    return str(e)


def format_matrix(M: Matrix2) -> str:
    a, b, c, d = (format_entry(e) for e in M.entries())
    return f"[[{a}, {b}], [{c}, {d}]]"


def serialize(obj, edges=None, comments=()) -> str:
    """Text of a RepFile, RepPresentation or GainGraph-bearing RepFile."""
    if isinstance(obj, RepFile):
        spec, gens, punct, edges = obj.spec, obj.generators, obj.punctures, obj.edges
        comments = list(comments) or obj.comments
    else:
        spec, gens, punct = obj.spec, obj.generators, obj.punctures
        edges = edges or []
    lines = [f"# {c}" for c in comments]
    lines.append(spec.header())
    for name, M in gens.items():
        lines.append(f"gen {name} {format_matrix(M)}")
    for w in punct:
        lines.append(f"puncture {w}")
    for u, v, w in edges:
        lines.append(f"edge {u} {v} {w}")
    return "\n".join(lines) + "\n"


def same_file(x: RepFile, y: RepFile) -> bool:
    """Structural equality used by round-trip checks."""
    if x.spec != y.spec or list(x.generators) != list(y.generators):
        return False
    if [free_reduce(w) for w in x.punctures] != [free_reduce(w) for w in y.punctures]:
        return False
    if x.edges != y.edges:
        return False
    return all(
        all(type(p) is type(q) and p == q for p, q in zip(x.generators[n].entries(), y.generators[n].entries()))
        for n in x.generators
    )


BEGIN = "-----BEGIN REPFILE-----"
END = "-----END REPFILE-----"


def embed_repfile(text: str) -> list[str]:
    return [BEGIN] + text.rstrip("\n").splitlines() + [END]


def extract_repfiles(report: str) -> list[str]:
    out, cur = [], None
    for line in report.splitlines():
        if line == BEGIN:
            cur = []
        elif line == END and cur is not None:
            out.append("\n".join(cur) + "\n")
            cur = None
        elif cur is not None:
            cur.append(line)
    return out
