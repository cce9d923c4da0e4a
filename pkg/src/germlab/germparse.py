"""Textual format for polynomial map-germs.

Format: an optional header ``vars: x1,x2 | `` followed by the components
separated by ``;``.  Components are polynomial expressions over the
declared variables with integer or rational (p/q) literals, the
operators + - * ^ and parentheses.  ``^`` binds a single nonnegative
integer literal (so ``x1^(1/2)`` is a syntax error, by design).
Implicit multiplication is not supported; whitespace is ignored.

Without a header the variables are inferred: every identifier must be of
the form x<k> and the source dimension is the largest k mentioned.

The constant term of every component must vanish (germ condition); a
nonzero constant term is reported with its component index.

All failures raise ParseError with a line/column position -- the parser
never escapes with anything else, whatever the input bytes.
"""

from fractions import Fraction

from .polyring import Poly
from .germ import MapGerm


class ParseError(ValueError):
    """Structured parse failure with 1-based line/column position."""

    def __init__(self, message, line, col):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.message = message
        self.line = line
        self.col = col


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in "+-*^();,:/|":
            tokens.append(_Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(_Token("eof", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, varmap, nvars):
        self.tokens = tokens
        self.pos = 0
        self.varmap = varmap  # name -> 1-based index, or None (inference mode)
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t.kind != kind:
            raise ParseError("expected %r, found %r" % (kind, t.value),
                             t.line, t.col)
        return t

    def fail(self, message, token=None):
        t = token or self.peek()
        raise ParseError(message, t.line, t.col)

    # expr := term (("+" | "-") term)*
    def expr(self):
        if self.peek().kind == "+":  # allow a leading +
            self.next()
        p = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            q = self.term()
            p = p + q if op.kind == "+" else p - q
        return p

    # term := factor ("*" factor)*
    def term(self):
        p = self.factor()
        while self.peek().kind == "*":
            self.next()
            p = p * self.factor()
        return p

    # factor := "-" factor | power
    def factor(self):
        if self.peek().kind == "-":
            self.next()
            return -self.factor()
        return self.power()

    # power := atom ("^" nonnegative-integer)?
    def power(self):
        p = self.atom()
        if self.peek().kind == "^":
            self.next()
            t = self.peek()
            if t.kind != "int":
                self.fail("exponent must be a nonnegative integer literal")
            self.next()
            return p ** t.value
        return p

    # atom := number | variable | "(" expr ")"
    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.next()
            value = Fraction(t.value)
            if self.peek().kind == "/":
                self.next()
                d = self.expect("int")
                if d.value == 0:
                    self.fail("zero denominator", d)
                value = Fraction(t.value, d.value)
            return Poly.const(value, self.nvars)
        if t.kind == "ident":
            self.next()
            idx = self.varmap.get(t.value)
            if idx is None:
                self.fail("unknown identifier %r" % t.value, t)
            return Poly.var(idx, self.nvars)
        if t.kind == "(":
            self.next()
            p = self.expr()
            self.expect(")")
            return p
        self.fail("expected a number, variable or parenthesized expression", t)


def _split_header(text):
    """Returns (var_names or None, body, body_line_offset)."""
    stripped = text.lstrip()
    if not stripped.lower().startswith("vars"):
        return None, text
    bar = text.index("|") if "|" in text else None
    if bar is None:
        raise ParseError("header must end with '|'", 1, 1)
    header = text[:bar]
    colon = header.index(":") if ":" in header else None
    if colon is None:
        raise ParseError("header must look like 'vars: x1,x2 | ...'", 1, 1)
    names = [s.strip() for s in header[colon + 1:].split(",")]
    if not names or any(not s for s in names):
        raise ParseError("empty variable name in header", 1, 1)
    for s in names:
        if not (s[0].isalpha() or s[0] == "_") or \
                not all(c.isalnum() or c == "_" for c in s):
            raise ParseError("invalid variable name %r" % s, 1, 1)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name in header", 1, 1)
    # keep the prefix so line/column positions stay correct
    body = " " * (bar + 1) + text[bar + 1:]
    return names, body


def _infer_vars(tokens):
    """Without a header every identifier must be x<k>; nvars = max k."""
    nvars = 0
    for t in tokens:
        if t.kind != "ident":
            continue
        name = t.value
        if not (name.startswith("x") and name[1:].isdigit() and
                not name[1:].startswith("0")):
            raise ParseError(
                "identifier %r needs a 'vars:' header (only x1, x2, ... "
                "can be inferred)" % name, t.line, t.col)
        nvars = max(nvars, int(name[1:]))
    if nvars == 0:
        # no variables at all; still need a positive dimension
        nvars = 1
    return nvars


def parse_map(text):
    """Parse the textual format into an exact MapGerm."""
    if not isinstance(text, str):
        try:
            text = bytes(text).decode("utf-8")
        except (UnicodeDecodeError, TypeError, ValueError):
            raise ParseError("input is not valid UTF-8 text", 1, 1)
    names, body = _split_header(text)
    tokens = _tokenize(body)
    if names is not None:
        nvars = len(names)
        varmap = {name: i + 1 for i, name in enumerate(names)}
    else:
        nvars = _infer_vars(tokens)
        varmap = {"x%d" % i: i for i in range(1, nvars + 1)}
    parser = _Parser(tokens, varmap, nvars)
    comps = []
    spans = []
    while True:
        start = parser.peek()
        comps.append(parser.expr())
        spans.append(start)
        t = parser.next()
        if t.kind == "eof":
            break
        if t.kind != ";":
            raise ParseError("expected ';' or end of input, found %r"
                             % t.value, t.line, t.col)
    for i, (p, tok) in enumerate(zip(comps, spans)):
        if p.constant_term() != 0:
            raise ParseError("nonzero constant term in component %d" % (i + 1),
                             tok.line, tok.col)
    return MapGerm(comps, src_dim=nvars)


def render_map(f, names=None):
    """Textual form of a MapGerm that parse_map round-trips exactly."""
    if names is None:
        names = ["x%d" % i for i in range(1, f.src_dim + 1)]
    header = "vars: %s | " % ",".join(names)
    return header + " ; ".join(c.render(names) for c in f.components)
