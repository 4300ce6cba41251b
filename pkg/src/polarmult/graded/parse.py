"""Polynomial strings -> sparse polynomials in k[u][x].

Grammar: integer literals, declared variable names, + - * ^ and parentheses.
``^`` is rewritten to ``**`` and the result is parsed with :mod:`ast`; only a
small whitelist of node types is accepted.

A polynomial is a dict ``{(x_exps, u_exps): coeff}``.
"""

from __future__ import annotations

import ast

from ..errors import InputError


class PolyRing:
    """k[u_1..u_s][x_1..x_m]; the field supplies coefficient arithmetic."""

    def __init__(self, base_vars, poly_vars, fld):
        base_vars = list(base_vars)
        poly_vars = list(poly_vars)
        names = base_vars + poly_vars
        if len(set(names)) != len(names):
            raise InputError("variable names must be distinct", field="base_vars/poly_vars")
        for name in names:
            if not name.isidentifier():
                raise InputError(f"invalid variable name {name!r}", token=name)
        self.base_vars = tuple(base_vars)
        self.poly_vars = tuple(poly_vars)
        self.fld = fld
        self.s = len(base_vars)
        self.m = len(poly_vars)

    @property
    def uzero(self):
        return (0,) * self.s

    @property
    def xzero(self):
        return (0,) * self.m

    def const(self, c) -> dict:
        c = self.fld(c)
        return {} if c == 0 else {(self.xzero, self.uzero): c}

    def var(self, name) -> dict:
        if name in self.base_vars:
            i = self.base_vars.index(name)
            u = tuple(1 if j == i else 0 for j in range(self.s))
            return {(self.xzero, u): 1}
        i = self.poly_vars.index(name)
        x = tuple(1 if j == i else 0 for j in range(self.m))
        return {(x, self.uzero): 1}

    def add(self, a, b) -> dict:
        out = dict(a)
        for k, c in b.items():
            v = self.fld.add(out.get(k, 0), c)
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return out

    def neg(self, a) -> dict:
        return {k: self.fld.neg(c) for k, c in a.items()}

    def sub(self, a, b) -> dict:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> dict:
        out: dict = {}
        fld = self.fld
        for (xa, ua), ca in a.items():
            for (xb, ub), cb in b.items():
                k = (tuple(i + j for i, j in zip(xa, xb)), tuple(i + j for i, j in zip(ua, ub)))
                v = fld.add(out.get(k, 0), fld.mul(ca, cb))
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
        return out

    def power(self, a, k: int) -> dict:
        out = self.const(1)
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def x_degrees(self, f) -> set:
        return {sum(x) for (x, _u) in f}

    def x_degree(self, f):
        """The x-degree of a homogeneous polynomial (None for zero)."""
        degs = self.x_degrees(f)
        if not degs:
            return None
        if len(degs) > 1:
            raise InputError(f"polynomial {self.format(f)} is not homogeneous in {', '.join(self.poly_vars)}")
        return degs.pop()

    def parse(self, text, *, field=None) -> dict:
        return parse_polynomial(text, self, field=field)

    def format(self, f) -> str:
        return format_polynomial(f, self)


def _column_map(text):
    """Rewrite ^ as ** and remember where each rewritten column came from."""
    out, cols = [], []
    for i, ch in enumerate(text):
        if ch == "^":
            out.append("**")
            cols.extend([i, i])
        else:
            out.append(ch)
            cols.append(i)
    cols.append(len(text))
    return "".join(out), cols


_ALLOWED_BIN = (ast.Add, ast.Sub, ast.Mult, ast.Pow)


def parse_polynomial(text, ring: PolyRing, *, field=None) -> dict:
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return ring.const(text)
        raise InputError(f"expected a polynomial string, got {type(text).__name__}", field=field)
    if "\n" in text:
        raise InputError("polynomial strings must fit on one line", field=field)
    src, cols = _column_map(text)
    lead = len(src) - len(src.lstrip())
    src, cols = src[lead:], cols[lead:]

    def fail(msg, node=None, token=None):
        col = None
        if node is not None and getattr(node, "col_offset", None) is not None:
            col = cols[min(node.col_offset, len(cols) - 1)] + 1
            end = getattr(node, "end_col_offset", None)
            if token is None and end is not None:
                token = text[col - 1: cols[min(end, len(cols) - 1)]]
        raise InputError(msg, line=1, column=col, token=token, field=field)

    if not src.strip():
        raise InputError("empty polynomial", field=field)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        col = exc.offset
        if col is not None:
            col = cols[min(col - 1, len(cols) - 1)] + 1
        tok = text[col - 1] if col and col - 1 < len(text) else None
        raise InputError("syntax error", line=1, column=col, token=tok, field=field) from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                fail("only integer literals are allowed", node)
            return ring.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in ring.base_vars and node.id not in ring.poly_vars:
                fail(f"undeclared variable {node.id!r}", node, node.id)
            return ring.var(node.id)
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return ring.neg(walk(node.operand))
            if isinstance(node.op, ast.UAdd):
                return walk(node.operand)
            fail("unsupported unary operator", node)
        if isinstance(node, ast.BinOp):
            if not isinstance(node.op, _ALLOWED_BIN):
                fail("unsupported operator (use + - * ^)", node)
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)
                        and not isinstance(exp.value, bool) and exp.value >= 0):
                    fail("exponents must be nonnegative integer literals", exp)
                return ring.power(walk(node.left), exp.value)
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return ring.add(a, b)
            if isinstance(node.op, ast.Sub):
                return ring.sub(a, b)
            return ring.mul(a, b)
        fail(f"unsupported syntax ({type(node).__name__})", node)

    return walk(tree)


def _mono_str(names, exps):
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return parts


def format_polynomial(f, ring: PolyRing) -> str:
    if not f:
        return "0"
    terms = sorted(f.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], sum(kv[0][1]), kv[0][1]), reverse=True)
    out = []
    for (x, u), c in terms:
        mono = _mono_str(ring.base_vars, u) + _mono_str(ring.poly_vars, x)
        neg = False
        if not ring.fld.is_prime_field and c < 0:
            neg, c = True, -c
        if mono:
            body = "*".join(mono) if c == 1 else f"{c}*" + "*".join(mono)
        else:
            body = str(c)
        if "/" in body:
            raise InputError("non-integer coefficient cannot be written in the input grammar")
        out.append(("- " if neg else "+ ") + body)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
