"""Text formats for every value type, and the certificate file format.

All formats are whitespace-insensitive and round-trip bit-exactly::

    3/4                                   scalar
    { -2:1 0:3 | inf }                    Laurent coefficient (u-exponents)
    series(W, 0, 3) [ {0:1|inf} ; ... ]   patch series
    rat( x^1 t^0 * 1 ; x^0 t^0 * 1 )      element of k(x, t)
    matrix(2,2) [ a ; b ; c ; d ]         row-major
    vector(2) [ a ; b ]
    mpoly(2) [ (1,0) * rat(...) ; ... ]
    ratmap( mpoly ; mpoly )
    chart gl 2 | chart so { matrix } | chart weil { chart ; spoly [ rat ; ... ] }
    chart raw d { ratmap ; ... }
    tensor(p,q) [ entries ]               dense array of n^(p+q) entries
    problem { n ; tensors [ ... ] ; tensors [ ... ] ; matrix }
"""

from __future__ import annotations

import re

from .errors import IncompatibleTags, ParseError
from .mpoly import MPoly, RatMap
from .rational import Poly2, RationalF
from .scalars import Field
from .series import INF, Laurent, PatchSeries, Tag, fmt_prec

_TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z_][A-Za-z0-9_\-]*)|(.))")


def tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad input at offset {pos}")
        pos = m.end()
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("id", m.group(2)))
        elif m.group(3) is not None and not m.group(3).isspace():
            out.append(("p", m.group(3)))
    return out


class Parser:
    def __init__(self, text: str, field: Field):
        self.toks = tokenize(text)
        self.i = 0
        self.field = field

    # token helpers -------------------------------------------------------------
    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, found {tok[1]!r}")
        return tok[1]

    def accept(self, kind, value=None):
        tok = self.peek()
        if tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return True
        return False

    def at_end(self):
        return self.i >= len(self.toks)

    def int_(self):
        return self.expect("int")

    # values --------------------------------------------------------------------
    def scalar(self):
        num = self.int_()
        den = 1
        if self.accept("p", "/"):
            den = self.int_()
        if den == 0:
            raise ParseError("zero denominator")
        from fractions import Fraction

        return self.field(Fraction(num, den))

    def prec(self):
        if self.accept("id", "inf"):
            return INF
        return self.int_()

    def laurent(self):
        self.expect("p", "{")
        terms = {}
        while not self.accept("p", "|"):
            e = self.int_()
            self.expect("p", ":")
            terms[e] = self.scalar()
        up = self.prec()
        self.expect("p", "}")
        c = Laurent(self.field, terms, up)
        if len(c.terms) != len(terms):
            raise ParseError("Laurent coefficient stores a zero term or an exponent past its horizon")
        return c

    def series(self):
        self.expect("id", "series")
        self.expect("p", "(")
        tag = Tag(self.expect("id"))
        self.expect("p", ",")
        tord = self.int_()
        self.expect("p", ",")
        tprec = self.int_()
        self.expect("p", ")")
        coeffs = self._list(self.laurent)
        return PatchSeries(self.field, tag, tord, coeffs, tprec)

    def _list(self, item):
        self.expect("p", "[")
        out = []
        if self.accept("p", "]"):
            return out
        out.append(item())
        while self.accept("p", ";"):
            out.append(item())
        self.expect("p", "]")
        return out

    def poly2(self):
        if self.peek() == ("int", 0):
            self.next()
            return Poly2(self.field)
        terms = {}
        while True:
            self.expect("id", "x")
            self.expect("p", "^")
            i = self.int_()
            self.expect("id", "t")
            self.expect("p", "^")
            j = self.int_()
            self.expect("p", "*")
            terms[i, j] = terms.get((i, j), 0) + self.scalar()
            if not self.accept("p", "+"):
                break
        return Poly2(self.field, terms)

    def rat(self):
        self.expect("id", "rat")
        self.expect("p", "(")
        num = self.poly2()
        self.expect("p", ";")
        den = self.poly2()
        self.expect("p", ")")
        return RationalF(num, den)

    def matrix(self, item=None):
        self.expect("id", "matrix")
        self.expect("p", "(")
        r = self.int_()
        self.expect("p", ",")
        c = self.int_()
        self.expect("p", ")")
        flat = self._list(item or self.value)
        if len(flat) != r * c:
            raise ParseError(f"matrix({r},{c}) needs {r * c} entries, got {len(flat)}")
        return [flat[i * c:(i + 1) * c] for i in range(r)]

    def vector(self, item=None):
        self.expect("id", "vector")
        self.expect("p", "(")
        n = self.int_()
        self.expect("p", ")")
        flat = self._list(item or self.value)
        if len(flat) != n:
            raise ParseError(f"vector({n}) needs {n} entries, got {len(flat)}")
        return flat

    def mpoly(self):
        self.expect("id", "mpoly")
        self.expect("p", "(")
        nv = self.int_()
        self.expect("p", ")")

        def term():
            self.expect("p", "(")
            ex = [self.int_()]
            while self.accept("p", ","):
                ex.append(self.int_())
            self.expect("p", ")")
            if len(ex) != nv:
                raise ParseError(f"monomial has {len(ex)} exponents, expected {nv}")
            self.expect("p", "*")
            return tuple(ex), self.rat()

        return MPoly(nv, dict(self._list(term)))

    def ratmap(self):
        self.expect("id", "ratmap")
        self.expect("p", "(")
        num = self.mpoly()
        self.expect("p", ";")
        den = self.mpoly()
        self.expect("p", ")")
        return RatMap(num, den)

    def chart(self):
        from .charts import cayley_chart, gl_chart, raw_chart, weil_restrict_chart

        self.expect("id", "chart")
        kind = self.expect("id")
        if kind == "gl":
            return gl_chart(self.int_(), self.field)
        if kind == "so":
            self.expect("p", "{")
            Q = self.matrix(self.rat)
            self.expect("p", "}")
            return cayley_chart(Q)
        if kind == "weil":
            self.expect("p", "{")
            base = self.chart()
            self.expect("p", ";")
            self.expect("id", "spoly")
            mod = self._list(self.rat)
            self.expect("p", "}")
            return weil_restrict_chart(base, mod)
        if kind == "raw":
            d = self.int_()
            self.expect("p", "{")
            maps = [self.ratmap()]
            while self.accept("p", ";"):
                maps.append(self.ratmap())
            self.expect("p", "}")
            if len(maps) != d:
                raise ParseError(f"raw chart of dimension {d} needs {d} maps")
            return raw_chart(maps, self.field)
        raise ParseError(f"unknown chart kind {kind!r}")

    def tensor(self):
        from .patching import Tensor

        self.expect("id", "tensor")
        self.expect("p", "(")
        p = self.int_()
        self.expect("p", ",")
        q = self.int_()
        self.expect("p", ")")
        return Tensor.from_flat(p, q, self._list(self.value))

    def tensors(self):
        self.expect("id", "tensors")
        return self._list(self.tensor)

    def problem(self):
        from .patching import PatchingProblem, TensorObject

        self.expect("id", "problem")
        self.expect("p", "{")
        n = self.int_()
        self.expect("p", ";")
        s1 = self.tensors()
        self.expect("p", ";")
        s2 = self.tensors()
        self.expect("p", ";")
        T = self.matrix(self.series)
        self.expect("p", "}")
        return PatchingProblem(n=n, side1=TensorObject(n, tuple(s1)), side2=TensorObject(n, tuple(s2)),
                               transition=tuple(tuple(r) for r in T))

    def value(self):
        kind, val = self.peek()
        if kind == "p" and val == "{":
            return self.laurent()
        if kind == "int":
            return self.scalar()
        if kind == "id":
            handler = {
                "series": self.series, "rat": self.rat, "matrix": self.matrix, "vector": self.vector,
                "mpoly": self.mpoly, "ratmap": self.ratmap, "chart": self.chart, "tensor": self.tensor,
                "tensors": self.tensors, "problem": self.problem,
            }.get(val)
            if handler:
                return handler()
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str, field: Field):
    """Parse one value of any supported kind."""
    p = Parser(text, field)
    try:
        v = p.value()
    except ParseError:
        raise
    except (ValueError, ZeroDivisionError, IncompatibleTags) as e:
        # constructors reject ill-formed values; report them as input errors
        raise ParseError(str(e)) from e
    if not p.at_end():
        raise ParseError(f"trailing input after value: {p.peek()[1]!r}")
    return v


# formatting ------------------------------------------------------------------


def fmt(obj, field: Field | None = None) -> str:
    """Format a value (series, rational, matrix as list of rows, vector as list, ...)."""
    from .charts import Chart
    from .patching import PatchingProblem, Tensor

    if isinstance(obj, (PatchSeries, Laurent, RationalF, Poly2)):
        return obj.to_text()
    if isinstance(obj, Chart):
        return format_chart(obj)
    if isinstance(obj, MPoly):
        return format_mpoly(obj)
    if isinstance(obj, RatMap):
        return f"ratmap( {format_mpoly(obj.num)} ; {format_mpoly(obj.den)} )"
    if isinstance(obj, Tensor):
        return f"tensor({obj.p},{obj.q}) [ " + " ; ".join(fmt(e, field) for e in obj.flat()) + " ]"
    if isinstance(obj, PatchingProblem):
        return format_problem(obj)
    if isinstance(obj, (list, tuple)):
        if obj and isinstance(obj[0], (list, tuple)):
            r, c = len(obj), len(obj[0])
            body = " ; ".join(fmt(e, field) for row in obj for e in row)
            return f"matrix({r},{c}) [ {body} ]"
        return f"vector({len(obj)}) [ " + " ; ".join(fmt(e, field) for e in obj) + " ]"
    if field is None:
        raise TypeError(f"cannot format {type(obj).__name__} without a field")
    return field.fmt(obj)


def format_mpoly(p: MPoly) -> str:
    items = sorted(p.terms.items())
    body = " ; ".join("(" + ",".join(str(k) for k in e) + ") * " + c.to_text() for e, c in items)
    return f"mpoly({p.nvars}) [ {body} ]" if body else f"mpoly({p.nvars}) [ ]"


def format_chart(ch) -> str:
    if ch.kind == "gl":
        return f"chart gl {ch.n}"
    if ch.kind == "so":
        return "chart so { " + fmt([list(r) for r in ch.Q]) + " }"
    if ch.kind == "weil":
        mod = " ; ".join(c.to_text() for c in ch.modulus)
        return "chart weil { " + format_chart(ch.base) + " ; spoly [ " + mod + " ] }"
    maps = " ; ".join(fmt(rm) for rm in ch.coords)
    return f"chart raw {ch.d} {{ {maps} }}"


def format_problem(pp) -> str:
    s1 = "tensors [ " + " ; ".join(fmt(t) for t in pp.side1.tensors) + " ]"
    s2 = "tensors [ " + " ; ".join(fmt(t) for t in pp.side2.tensors) + " ]"
    return f"problem {{ {pp.n} ; {s1} ; {s2} ; {fmt([list(r) for r in pp.transition])} }}"


# certificates ----------------------------------------------------------------

_CERT_HEADER = "fieldpatch-certificate 1"


def format_cert(cert) -> str:
    lines = [
        _CERT_HEADER,
        f"kind {cert.kind}",
        f"field {cert.field.spec}",
        f"convention {cert.convention}",
        f"chart {cert.chart[len('chart '):] if cert.chart.startswith('chart ') else cert.chart}",
        f"tprec {cert.tprec}",
        f"uprec {'none' if cert.uprec is None else cert.uprec}",
        f"input {fmt(_listify(cert.inputs))}",
        f"factor1 {fmt(_listify(cert.factor1))}",
        f"factor2 {fmt(_listify(cert.factor2))}",
        f"residual_ord {fmt_prec(cert.residual_ord)}",
        "trace " + " ".join(fmt_prec(o) for o in cert.trace),
        "end",
    ]
    return "\n".join(lines) + "\n"


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(e) for e in x]
    return x


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(e) for e in x)
    return x


def parse_cert(text: str):
    from .factorization import FactorCert

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _CERT_HEADER:
        raise ParseError("not a fieldpatch certificate")
    kv = {}
    for ln in lines[1:]:
        if ln == "end":
            break
        key, _, rest = ln.partition(" ")
        kv[key] = rest.strip()
    need = ["kind", "field", "convention", "chart", "tprec", "uprec", "input", "factor1", "factor2",
            "residual_ord", "trace"]
    missing = [k for k in need if k not in kv]
    if missing:
        raise ParseError(f"certificate lacks {', '.join(missing)}")
    field = Field.from_spec(kv["field"])
    up = None if kv["uprec"] == "none" else int(kv["uprec"])
    return FactorCert(
        kind=kv["kind"], field=field, chart="chart " + kv["chart"], tprec=int(kv["tprec"]), uprec=up,
        inputs=_tuplify(parse(kv["input"], field)), factor1=_tuplify(parse(kv["factor1"], field)),
        factor2=_tuplify(parse(kv["factor2"], field)),
        residual_ord=INF if kv["residual_ord"] == "inf" else int(kv["residual_ord"]),
        trace=tuple(INF if tok == "inf" else int(tok) for tok in kv["trace"].split()),
        convention=kv["convention"],
    )
