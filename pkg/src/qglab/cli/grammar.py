"""Text grammar for elements: a recursive-descent parser and a canonical printer.

    element := term { ("+" | "-") term }
    term    := [ coeff ] { factor }
    factor  := atom [ "^" integer ]
    atom    := a | a* | g | g* | u | u* | v | w | v* | w* | q | zeta | i | 1 | "(" element ")"

Juxtaposition is multiplication.  ``z``/``z*`` are accepted for the
commutative circle algebra (the codomain of the circle quotient).
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..core.algebra import Algebra, Element, Monomial, TensorElement, TorusMonomial, one
from ..core.coeffs import Coeff, GaussianRational

__all__ = ["ParseError", "parse_expression", "print_element", "print_tensor", "format_coeff_value", "format_scalar", "infer_algebra"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>zeta|[agquvwzi])(?P<star>\*)?|(?P<op>[-+^()]))"
)

# generator name -> (algebras where legal, monomial builder)
_GENERATORS = {
    "a": ((Algebra.SUQ2, Algebra.GQTHETA), lambda s: Monomial(-1 if s else 1)),
    "g": ((Algebra.SUQ2, Algebra.GQTHETA), lambda s: Monomial(0, 0, 1) if s else Monomial(0, 1)),
    "u": ((Algebra.GQTHETA, Algebra.CIRCLE), None),
    "v": ((Algebra.TORUS,), lambda s: TorusMonomial(-1 if s else 1, 0)),
    "w": ((Algebra.TORUS,), lambda s: TorusMonomial(0, -1 if s else 1)),
    "z": ((Algebra.CIRCLE,), lambda s: TorusMonomial(-1 if s else 1, 0)),
}
_INVERTIBLE = {"u", "v", "w", "z", "q", "zeta"}


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unknown token {text[pos:].strip()[:8]!r}", pos, text)
        start = m.start(m.lastgroup if m.lastgroup != "star" else "name")
        if m.group("num") is not None:
            try:
                value = Fraction(m.group("num"))
            except ZeroDivisionError:
                raise ParseError("zero denominator", start, text) from None
            tokens.append(("num", value, start))
        elif m.group("name") is not None:
            name = m.group("name")
            star = bool(m.group("star"))
            if star and name in ("q", "zeta", "i"):
                raise ParseError(f"'{name}*' is not a generator", start, text)
            tokens.append(("name", (name, star), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


def infer_algebra(text: str) -> Algebra:
    """Smallest algebra tag containing every generator that occurs in ``text``."""
    tags = set()
    for kind, val, pos in _tokenize(text):
        if kind != "name":
            continue
        name = val[0]
        if name == "u":
            tags.add(Algebra.GQTHETA)
        elif name in ("v", "w"):
            tags.add(Algebra.TORUS)
        elif name == "z":
            tags.add(Algebra.CIRCLE)
    if not tags:
        return Algebra.SUQ2
    if len(tags) == 1:
        return tags.pop()
    if tags == {Algebra.GQTHETA, Algebra.CIRCLE}:
        return Algebra.CIRCLE
    raise ParseError("expression mixes generators of different algebras", 0, text)


class _Parser:
    def __init__(self, text: str, algebra: Algebra):
        self.text = text
        self.alg = algebra
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        if tok[0] != "end":
            self.i += 1
        return tok

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self) -> Element:
        x = self.element()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return x

    def element(self) -> Element:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        x = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                x = x + t if val == "+" else x - t
            else:
                return x

    def term(self) -> Element:
        factors = []
        while True:
            kind, val, _ = self.peek()
            if kind in ("num", "name") or (kind == "op" and val == "("):
                factors.append(self.factor())
            else:
                break
        if not factors:
            self.fail("expected a term")
        x = factors[0]
        for f in factors[1:]:
            x = x * f
        return x

    def factor(self) -> Element:
        tok = self.peek()
        base, invertible = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            neg = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                neg = True
            k, e, epos = self.take()
            if k != "num" or e.denominator != 1:
                raise ParseError("exponent must be an integer", epos, self.text)
            e = int(e)
            if neg:
                if not invertible:
                    self.fail("negative exponent on a non-invertible factor", tok)
                e = -e
            return self._power(base, e)
        return base

    def _power(self, base: Element, e: int) -> Element:
        if e >= 0:
            return base**e
        # invertible atoms are single monomials with monomial coefficient
        ((m, c),) = base.terms.items()
        if isinstance(m, Monomial):
            inv = Monomial(-m.a, m.g, m.gs, -m.u)
        else:
            inv = TorusMonomial(-m.v, -m.w)
        return Element(self.alg, {inv: c ** -1}) ** (-e)

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return one(self.alg) * Coeff.const(GaussianRational(val)), False
        if kind == "op" and val == "(":
            x = self.element()
            if self.take()[1] != ")":
                self.fail("expected ')'")
            return x, False
        if kind != "name":
            raise ParseError(f"unexpected {val!r}", pos, self.text)
        name, star = val
        if name == "q":
            return one(self.alg) * Coeff.mono(1, 0), True
        if name == "zeta":
            return one(self.alg) * Coeff.mono(0, 1), True
        if name == "i":
            return one(self.alg) * Coeff.const(GaussianRational(0, 1)), False
        legal, build = _GENERATORS[name]
        if self.alg not in legal:
            raise ParseError(f"generator {name}{'*' if star else ''} is illegal in {self.alg.value}", pos, self.text)
        if name == "u":
            m = Monomial(0, 0, 0, -1 if star else 1) if self.alg is Algebra.GQTHETA else TorusMonomial(0, -1 if star else 1)
        else:
            m = build(star)
        return Element._raw(self.alg, {m: Coeff.const(1)}), name in _INVERTIBLE


def parse_expression(text: str, algebra=None) -> Element:
    """Parse ``text`` into a normal-form Element.

    ``algebra`` pins the session algebra; when omitted it is inferred from
    the generators present (SUq2 if there are none).
    """
    alg = Algebra(algebra) if algebra is not None else infer_algebra(text)
    if not text.strip():
        raise ParseError("empty expression", 0, text)
    return _Parser(text, alg).parse()


# ---------------------------------------------------------------------------
# printing


def _fmt_rational(x) -> str:
    x = Fraction(int(x.numerator), int(x.denominator))
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_coeff_value(v: GaussianRational):
    """(sign, magnitude text) with magnitude '' meaning a bare unit."""
    re_, im = v.re, v.im
    if not im:
        s = -1 if re_ < 0 else 1
        mag = abs(re_)
        return s, "" if mag == 1 else _fmt_rational(mag)
    if not re_:
        s = -1 if im < 0 else 1
        mag = abs(im)
        return s, "i" if mag == 1 else f"{_fmt_rational(mag)} i"
    op = "+" if im > 0 else "-"
    return 1, f"({_fmt_rational(re_)} {op} {_fmt_rational(abs(im))} i)"


def format_scalar(v: GaussianRational) -> str:
    """Standalone text for a Gaussian rational, e.g. '-3/4' or '(1 + 2 i)'."""
    if not isinstance(v, GaussianRational):
        v = GaussianRational(v)
    return _join([_term_pieces(0, 0, v, "")]) if v else "0"


def _pow(sym: str, e: int) -> str:
    return sym if e == 1 else f"{sym}^{e}"


def _signed_pow(sym: str, e: int) -> str:
    return _pow(sym, e) if e > 0 else _pow(sym + "*", -e)


def monomial_text(alg: Algebra, m) -> str:
    parts = []
    if isinstance(m, Monomial):
        if m.a:
            parts.append(_signed_pow("a", m.a))
        if m.g:
            parts.append(_pow("g", m.g))
        if m.gs:
            parts.append(_pow("g*", m.gs))
        if m.u:
            parts.append(_signed_pow("u", m.u))
    else:
        first = "z" if alg is Algebra.CIRCLE else "v"
        second = "u" if alg is Algebra.CIRCLE else "w"
        if m.v:
            parts.append(_signed_pow(first, m.v))
        if m.w:
            parts.append(_signed_pow(second, m.w))
    return " ".join(parts)


def _scalar_symbols(qe: int, ze: int) -> list:
    out = []
    if qe:
        out.append(_pow("q", qe))
    if ze:
        out.append(_pow("zeta", ze))
    return out


def _expand(c: Coeff, q, zeta):
    """Yield (qexp, zexp, value) after optional exact substitution."""
    if q is None:
        for (qe, ze), v in c.sorted_items():
            yield qe, ze, v
        return
    sub = c.substitute_q(q)
    if zeta is None:
        for ze in sorted(sub):
            yield 0, ze, sub[ze]
    else:
        total = c.evaluate_exact(q, zeta)
        if total:
            yield 0, 0, total


def _join(terms: list) -> str:
    if not terms:
        return "0"
    out = []
    for k, (sign, body) in enumerate(terms):
        if k == 0:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(out)


def _term_pieces(qe, ze, v, mono_text) -> tuple:
    sign, mag = format_coeff_value(v)
    pieces = [p for p in [mag] if p] + _scalar_symbols(qe, ze)
    if mono_text:
        pieces.append(mono_text)
    return sign, " ".join(pieces) if pieces else "1"


def print_element(x: Element, q=None, zeta=None) -> str:
    """Canonical text; optional exact rational ``q`` (and Gaussian ``zeta``) substitution."""
    if q is not None:
        q = Fraction(str(q)) if isinstance(q, (str, float)) else Fraction(q)
    if zeta is not None and not isinstance(zeta, GaussianRational):
        zeta = GaussianRational(zeta)
    terms = []
    for m, c in sorted(x.terms.items(), key=lambda t: tuple(t[0])):
        mt = monomial_text(x.algebra, m)
        for qe, ze, v in _expand(c, q, zeta):
            terms.append(_term_pieces(qe, ze, v, mt))
    return _join(terms)


def print_tensor(t: TensorElement) -> str:
    terms = []
    for key, c in sorted(t.terms.items(), key=lambda kv: tuple(tuple(m) for m in kv[0])):
        legs = " (x) ".join(monomial_text(a, m) or "1" for a, m in zip(t.algebras, key))
        for (qe, ze), v in c.sorted_items():
            terms.append(_term_pieces(qe, ze, v, legs))
    return _join(terms)
