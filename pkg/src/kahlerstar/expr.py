"""Expression grammar for ring elements.

EBNF::

    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = ("+" | "-") , unary | power ;
    power   = atom , [ "^" , [ "-" ] , INT ] ;
    atom    = INT | "h" | "vac"
            | ("z" | "zb" | "dPhi" | "dbPhi") , "[" , INT , "]"
            | "B" , "(" , [ "-" ] , INT , "," , [ "-" ] , INT , ")"
            | "(" , expr , ")" ;

``B(p,q)`` is B^(p + q/h).  Division is only allowed by scalars (elements
of Q(h)); negative exponents only on scalar multiples of B powers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from .ring import RingElem, Space, dbarphi, dphi, vacuum
from .scalars import RationalH, frac_str


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>dbPhi|dPhi|zb|z|vac|h|B)|(?P<op>[-+*/^()\[\],]))"
)


@dataclass
class Node:
    kind: str
    pos: int
    value: object = None
    children: List["Node"] = field(default_factory=list)


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip()) if text[pos:].strip() else pos
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise ExprSyntaxError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = Node("add" if op == "+" else "sub", pos, children=[node, self.term()])
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            node = Node("mul" if op == "*" else "div", pos, children=[node, self.unary()])
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else Node("neg", tok[2], children=[inner])
        return self.power()

    def _signed_int(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            sign = -1
        tok = self.peek()
        if tok[0] != "int":
            raise ExprSyntaxError("exponent must be an integer", tok[2])
        self.take()
        return sign * int(tok[1])

    def power(self):
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            _, _, pos = self.take()
            node = Node("pow", pos, value=self._signed_int(), children=[node])
        return node

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return Node("num", pos, value=int(val))
        if kind == "name":
            self.take()
            if val in ("h", "vac"):
                return Node(val, pos)
            if val == "B":
                self.take("op", "(")
                p = self._signed_int()
                self.take("op", ",")
                q = self._signed_int()
                self.take("op", ")")
                return Node("B", pos, value=(p, q))
            self.take("op", "[")
            idx = self.take("int")
            self.take("op", "]")
            return Node(val, pos, value=int(idx[1]))
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ExprSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def lower(node: Node, space: Space) -> RingElem:
    k = node.kind
    if k == "num":
        return RingElem.const(space, Fraction(node.value))
    if k == "h":
        return RingElem.const(space, RationalH.h())
    if k == "vac":
        return vacuum(space)
    if k == "B":
        p, q = node.value
        return RingElem.B(space, p, q)
    if k in ("z", "zb", "dPhi", "dbPhi"):
        idx = node.value
        if not 1 <= idx <= space.N:
            raise ExprSyntaxError(f"index {idx} out of range 1..{space.N}", node.pos)
        return {"z": RingElem.z, "zb": RingElem.zbar, "dPhi": dphi, "dbPhi": dbarphi}[k](space, idx)
    if k == "neg":
        return -lower(node.children[0], space)
    if k in ("add", "sub", "mul"):
        a, b = (lower(c, space) for c in node.children)
        return a + b if k == "add" else a - b if k == "sub" else a * b
    if k == "div":
        a, b = (lower(c, space) for c in node.children)
        if not b.is_scalar() or b.is_zero():
            raise ExprSyntaxError("division is only allowed by nonzero scalars", node.pos)
        sv = b.scalar_value()
        return a * (sv.inverse() if isinstance(sv, RationalH) else 1 / Fraction(sv))
    if k == "pow":
        base = lower(node.children[0], space)
        try:
            return base ** node.value
        except ValueError as exc:
            raise ExprSyntaxError(str(exc), node.pos) from None
    raise AssertionError(k)


def parse_expr(text: str, space: Space) -> RingElem:
    """Parse and lower an expression to a ring element of ``space``."""
    return lower(parse_ast(text), space)


# ---------------------------------------------------------------------------
# printing


def _monomial_str(key) -> str:
    a, b, p, q = key
    parts = []
    for i, e in enumerate(a):
        if e:
            parts.append(f"z[{i + 1}]" + (f"^{e}" if e > 1 else ""))
    for i, e in enumerate(b):
        if e:
            parts.append(f"zb[{i + 1}]" + (f"^{e}" if e > 1 else ""))
    if p or q:
        parts.append(f"B({p},{q})")
    return "*".join(parts)


def _coeff_parts(c):
    """(sign, magnitude-string or None for unit) of a coefficient."""
    if isinstance(c, RationalH) and c.is_constant():
        c = c.constant_value()
    if isinstance(c, RationalH):
        return "+", f"({c})"
    c = Fraction(c)
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    return sign, (None if mag == 1 else frac_str(mag))


def format_ring(f: RingElem) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for key, c in f.sorted_terms():
        sign, mag = _coeff_parts(c)
        mono = _monomial_str(key)
        if mono and mag:
            body = f"{mag}*{mono}"
        else:
            body = mono or mag or "1"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def coeff_json(c) -> str:
    if isinstance(c, RationalH) and c.is_constant():
        c = c.constant_value()
    return frac_str(c)


def ring_to_json(f: RingElem) -> dict:
    return {
        "space": f.space.name,
        "N": f.space.N,
        "terms": [
            {"z": list(a), "zb": list(b), "B": [p, q], "coeff": coeff_json(c)}
            for (a, b, p, q), c in f.sorted_terms()
        ],
    }
