"""Expression language for algebra elements.

Grammar (EBNF):

    expr      = term { ("+" | "-") term } ;
    term      = factor { ("*" | "/") factor } ;
    factor    = atom [ "^" integer ] ;
    atom      = generator | toral | divided | binom | bar | scalar | "(" expr ")" ;
    generator = ("E" | "F") "[" integer "]" ;
    toral     = ("L" | "K") "[" integer { "," integer } "]" ;
    divided   = "dp" "(" atom "," integer ")" ;
    binom     = "binom" "(" "M" "[" integer "]" "," integer "," integer ")" ;
    bar       = "bar" "(" atom ")" ;
    scalar    = integer | integer "/" integer | "q" [ "^" integer ] ;

Generator indices are 1-based; toral vectors are written in the mu-basis of
the session lattice (K vectors in the alpha-basis, double presentation only).
Division requires a scalar divisor; "^" takes integer exponents (negative
only on torals and scalars)."""

from __future__ import annotations

import re

from .errors import SyntaxError_
from .forms import FormBasisMonomial, materialize
from .pbw import AlgebraElement, Presentation, simple_root_index
from .qcoeff import QScalar

_TOKEN = re.compile(
    r"\s*(?:(?P<name>dp|binom|bar|[EFLKM])|(?P<int>-?\d+)|(?P<q>q)|(?P<op>[\^+\-*/(),\[\]]))"
)


def tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise SyntaxError_(f"unexpected character {text[pos]!r}", pos)
            break
        for kind in ("name", "int", "q", "op"):
            val = m.group(kind)
            if val is not None:
                out.append((kind, val, m.start(kind)))
                break
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class Value:
    """Either a scalar or an element; arithmetic coerces scalars on demand."""

    def __init__(self, scalar=None, element=None):
        self.scalar = scalar
        self.element = element

    def as_element(self, pres) -> AlgebraElement:
        if self.element is not None:
            return self.element
        return AlgebraElement.scalar(pres, self.scalar)

    def is_scalar(self) -> bool:
        return self.element is None


class Parser:
    def __init__(self, text: str, pres: Presentation):
        self.tokens = tokenize(text)
        self.k = 0
        self.pres = pres

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise SyntaxError_(f"expected {value!r}, found {val!r}", pos)

    def parse(self) -> AlgebraElement:
        v = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise SyntaxError_(f"trailing input {val!r}", pos)
        return v.as_element(self.pres)

    def expr(self) -> Value:
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            w = self.term()
            v = self._add(v, w, op == "-")
        return v

    def _add(self, v: Value, w: Value, negate: bool) -> Value:
        if v.is_scalar() and w.is_scalar():
            return Value(scalar=v.scalar - w.scalar if negate else v.scalar + w.scalar)
        a = v.as_element(self.pres)
        b = w.as_element(self.pres)
        return Value(element=a - b if negate else a + b)

    def term(self) -> Value:
        v = self.factor()
        while self.peek()[1] in ("*", "/"):
            op, _, pos = self.next()[1], None, self.peek()[2]
            w = self.factor()
            if op == "/":
                if not w.is_scalar() or w.scalar.is_zero():
                    raise SyntaxError_("division requires a nonzero scalar divisor", pos)
                if v.is_scalar():
                    v = Value(scalar=v.scalar / w.scalar)
                else:
                    v = Value(element=v.element * w.scalar.inv())
            elif v.is_scalar() and w.is_scalar():
                v = Value(scalar=v.scalar * w.scalar)
            elif v.is_scalar():
                v = Value(element=v.scalar * w.element)
            elif w.is_scalar():
                v = Value(element=v.element * w.scalar)
            else:
                v = Value(element=v.element * w.element)
        return v

    def factor(self) -> Value:
        v = self.atom()
        if self.peek()[1] == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "int":
                raise SyntaxError_("exponent must be an integer", pos)
            e = int(val)
            if v.is_scalar():
                return Value(scalar=v.scalar**e)
            if e < 0:
                inv = _invert_toral(v.element)
                if inv is None:
                    raise SyntaxError_(
                        "negative powers are defined only for scalars and torals", pos
                    )
                return Value(element=inv ** (-e))
            return Value(element=v.element**e)
        return v

    def atom(self) -> Value:
        kind, val, pos = self.next()
        if kind == "int":
            if self.peek()[1] == "/":
                save = self.k
                self.next()
                k2, v2, _ = self.next()
                if k2 == "int":
                    return Value(scalar=QScalar.from_int(int(val)) / QScalar.from_int(int(v2)))
                self.k = save
            return Value(scalar=QScalar.from_int(int(val)))
        if kind == "q":
            if self.peek()[1] == "^":
                self.next()
                k2, v2, p2 = self.next()
                if k2 != "int":
                    raise SyntaxError_("exponent must be an integer", p2)
                return Value(scalar=QScalar.q_power(int(v2)))
            return Value(scalar=QScalar.q_power(1))
        if val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if val in ("E", "F"):
            i = self._bracket_index(pos)
            gen = (
                AlgebraElement.generator_e(self.pres, i)
                if val == "E"
                else AlgebraElement.generator_f(self.pres, i)
            )
            return Value(element=gen)
        if val in ("L", "K"):
            vec = self._bracket_vector(pos)
            if val == "L":
                if len(vec) != self.pres.n:
                    raise SyntaxError_(f"L expects {self.pres.n} exponents", pos)
                return Value(element=AlgebraElement.toral(self.pres, vec))
            if self.pres.has_kappa:
                return Value(element=AlgebraElement.toral(self.pres, (0,) * self.pres.n, vec))
            # in the quotient, K[alpha-vector] means L of the same weight
            w = self.pres.datum.from_alpha_coords(vec)
            return Value(element=AlgebraElement.toral_weight(self.pres, w))
        if val == "dp":
            self.expect("(")
            inner = self.atom()
            self.expect(",")
            k2, v2, p2 = self.next()
            if k2 != "int" or int(v2) < 0:
                raise SyntaxError_("divided power index must be a nonnegative integer", p2)
            self.expect(")")
            return Value(element=self._divided_power(inner, int(v2), pos))
        if val == "binom":
            self.expect("(")
            k2, v2, p2 = self.next()
            if v2 != "M":
                raise SyntaxError_("binom expects M[i]", p2)
            i = self._bracket_index(p2)
            self.expect(",")
            k3, c, p3 = self.next()
            if k3 != "int":
                raise SyntaxError_("binom center must be an integer", p3)
            self.expect(",")
            k4, t, p4 = self.next()
            if k4 != "int" or int(t) < 0:
                raise SyntaxError_("binom height must be a nonnegative integer", p4)
            self.expect(")")
            return Value(element=self._toral_binom(i, int(c), int(t)))
        if val == "bar":
            self.expect("(")
            inner = self.atom()
            self.expect(")")
            return Value(element=self._bar(inner, pos))
        raise SyntaxError_(f"unexpected token {val!r}", pos)

    def _bracket_index(self, pos) -> int:
        self.expect("[")
        kind, val, p = self.next()
        if kind != "int":
            raise SyntaxError_("expected a generator index", p)
        self.expect("]")
        i = int(val) - 1
        if not 0 <= i < self.pres.n:
            raise IndexError(f"generator index {val} out of range 1..{self.pres.n}")
        return i

    def _bracket_vector(self, pos):
        self.expect("[")
        out = []
        while True:
            kind, val, p = self.next()
            if kind != "int":
                raise SyntaxError_("expected an integer exponent", p)
            out.append(int(val))
            kind, val, p = self.next()
            if val == "]":
                return tuple(out)
            if val != ",":
                raise SyntaxError_("expected ',' or ']'", p)

    def _single_generator(self, v: Value, pos):
        if v.is_scalar() or len(v.element.terms) != 1:
            raise SyntaxError_("dp/bar take a single generator", pos)
        ((m, c),) = v.element.terms.items()
        if not c.is_one():
            raise SyntaxError_("dp/bar take a bare generator", pos)
        es, fs = sum(m.e), sum(m.f)
        if es + fs != 1 or any(m.mu) or any(m.kappa):
            raise SyntaxError_("dp/bar take a single root-vector generator", pos)
        side = 1 if es else -1
        r = (m.e if es else m.f).index(1)
        return side, r

    def _divided_power(self, v: Value, k: int, pos) -> AlgebraElement:
        side, r = self._single_generator(v, pos)
        mono = FormBasisMonomial(
            "restricted",
            tuple(k if (side > 0 and s == r) else 0 for s in range(self.pres.N)),
            (0,) * self.pres.n,
            tuple(k if (side < 0 and s == r) else 0 for s in range(self.pres.N)),
        )
        return materialize(mono, self.pres)

    def _toral_binom(self, i: int, c: int, t: int) -> AlgebraElement:
        from .forms import toral_binomial_poly
        from .pbw import PBWMonomial, _add_term
        from .qcoeff import ONE

        poly = toral_binomial_poly(c, t, self.pres.datum.d[i])
        out: dict = {}
        for k, coeff in poly.items():
            mu = tuple(k if s == i else 0 for s in range(self.pres.n))
            _add_term(out, PBWMonomial((0,) * self.pres.N, mu, (0,) * self.pres.n, (0,) * self.pres.N), coeff)
        return AlgebraElement(self.pres, out)

    def _bar(self, v: Value, pos) -> AlgebraElement:
        side, r = self._single_generator(v, pos)
        d = self.pres.datum.root_data.d_alpha[r]
        return (QScalar.q_power(d) - QScalar.q_power(-d)) * v.element


def _invert_toral(x: AlgebraElement):
    if len(x.terms) != 1:
        return None
    ((m, c),) = x.terms.items()
    if any(m.e) or any(m.f) or not c.is_unit_monomial():
        return None
    from .pbw import PBWMonomial

    mono = PBWMonomial(m.e, tuple(-t for t in m.mu), tuple(-t for t in m.kappa), m.f)
    return AlgebraElement(x.pres, {mono: c.inv()})


def parse(text: str, pres: Presentation) -> AlgebraElement:
    """Parse an expression in the given presentation; SyntaxError_ carries the
    offending position, IndexError flags out-of-range generator indices."""
    return Parser(text, pres).parse()


def _root_vector_text(datum, side: int, r: int) -> str:
    """Expression for a root vector; non-simple ones render through their
    bracket definition."""
    from .pbw import root_vector_decomposition

    roots = datum.root_data.roots_alpha
    if sum(roots[r]) == 1:
        i = roots[r].index(1)
        return f"E[{i + 1}]" if side > 0 else f"F[{i + 1}]"
    a, b = root_vector_decomposition(datum, r)
    excl = int(
        datum.bilinear(datum.root_data.positive_roots[a], datum.root_data.positive_roots[b])
    )
    ta = _root_vector_text(datum, side, a)
    tb = _root_vector_text(datum, side, b)
    return f"({ta}*{tb} - q^{excl}*{tb}*{ta})"


def render(x: AlgebraElement) -> str:
    """Expression text that parses back to the same element."""
    if not x.terms:
        return "0"
    datum = x.pres.datum
    parts = []
    for m, c in sorted(x.terms.items()):
        bits = []
        for r in range(x.pres.N - 1, -1, -1):
            if m.e[r]:
                t = _root_vector_text(datum, +1, r)
                bits.append(t if m.e[r] == 1 else f"{t}^{m.e[r]}")
        if any(m.mu):
            bits.append("L[" + ",".join(str(t) for t in m.mu) + "]")
        if any(m.kappa):
            bits.append("K[" + ",".join(str(t) for t in m.kappa) + "]")
        for r in range(x.pres.N):
            if m.f[r]:
                t = _root_vector_text(datum, -1, r)
                bits.append(t if m.f[r] == 1 else f"{t}^{m.f[r]}")
        body = "*".join(bits) if bits else "1"
        parts.append(f"({_scalar_text(c)})*{body}")
    return " + ".join(parts)


def _scalar_text(c: QScalar) -> str:
    def poly_text(p):
        bits = []
        for e, coeff in sorted(p.terms.items(), reverse=True):
            frac = (
                str(coeff)
                if coeff.denominator == 1
                else f"{coeff.numerator}/{coeff.denominator}"
            )
            if e == 0:
                bits.append(frac)
            else:
                qq = f"q^{e}" if e != 1 else "q"
                bits.append(f"{frac}*{qq}")
        return " + ".join(bits) if bits else "0"

    if c.den.is_one():
        return poly_text(c.num)
    return f"({poly_text(c.num)})/({poly_text(c.den)})"
