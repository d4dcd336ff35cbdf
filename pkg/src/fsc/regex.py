"""Regular-expression language and rule files.

Operator precedence, tightest first::

    postfix * + and pairs a:b
    ignore /
    prefix ~ $
    concatenation (juxtaposition)
    & -
    |
    .x. and the replace family -> @-> @> ->@ >@ (with || contexts, ``,`` lists)
    .o.

``[ ]`` groups, ``( )`` marks an optional part, ``[]`` is the empty-string
language.  A bare single character is a symbol, ``0`` is the empty string,
``?`` any symbol, ``%c`` the literal ``c`` and ``"name"`` a (possibly
multicharacter) symbol.  Bare words of two or more letters refer to
definitions.
"""

from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Optional as Opt, Tuple

from . import network as fst
from . import replace as rp
from .alphabet import BOUNDARY, DEFAULT_TABLE, EPSILON, OTHER, OTHER_ID, OTHER_PAIR
from .errors import (
    DanglingEscape,
    FscError,
    RegexSyntaxError,
    UnknownName,
    UnsupportedRule,
    UnterminatedQuote,
)

# -- lexer -----------------------------------------------------------------

OPERATORS = [".x.", ".o.", ".#.", "...", "@->", "->@", "@>", ">@", "->", "||",
             "[", "]", "(", ")", "*", "+", "~", "$", "/", "|", "&", "-", ",", "_", ":", ";", "?"]
RESERVED_CHARS = set("[]()*+~$/|&-,_:;?%\"!@>.")
REPLACE_OPS = {"->", "@->", "@>", "->@", ">@"}
_QUOTE_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", '"': '"', "r": "\r"}


@dataclass(frozen=True)
class Token:
    kind: str     # 'SYM', 'NAME', 'EPS', 'OP', 'EOF'
    value: str
    offset: int


def tokenize(src: str):
    """Split regex or rule-file source into tokens."""
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c == "!":
            j = src.find("\n", i)
            i = n if j < 0 else j + 1
            continue
        if c == "%":
            if i + 1 >= n:
                raise DanglingEscape("'%' at end of input", i, src)
            tokens.append(Token("SYM", src[i + 1], i))
            i += 2
            continue
        if c == '"':
            j = i + 1
            buf = []
            while j < n and src[j] != '"':
                if src[j] == "\\":
                    if j + 1 >= n:
                        raise UnterminatedQuote("unterminated quoted symbol", i, src)
                    esc = src[j + 1]
                    if esc not in _QUOTE_ESCAPES:
                        raise RegexSyntaxError(f"unknown escape '\\{esc}' in quoted symbol", j, src)
                    buf.append(_QUOTE_ESCAPES[esc])
                    j += 2
                    continue
                buf.append(src[j])
                j += 1
            if j >= n:
                raise UnterminatedQuote("unterminated quoted symbol", i, src)
            if not buf:
                raise RegexSyntaxError("empty quoted symbol", i, src)
            tokens.append(Token("SYM", "".join(buf), i))
            i = j + 1
            continue
        for op in OPERATORS:
            if src.startswith(op, i):
                tokens.append(Token("OP", op, i))
                i += len(op)
                break
        else:
            if c.isalnum():
                j = i + 1
                while j < n and (src[j].isalnum() or src[j] == "_"):
                    j += 1
                word = src[i:j]
                if word == "0":
                    tokens.append(Token("EPS", "0", i))
                elif len(word) == 1:
                    tokens.append(Token("SYM", word, i))
                else:
                    tokens.append(Token("NAME", word, i))
                i = j
            elif c in RESERVED_CHARS:
                raise RegexSyntaxError(f"unexpected {c!r}; write %{c} for the literal symbol", i, src)
            else:
                tokens.append(Token("SYM", c, i))
                i += 1
    tokens.append(Token("EOF", "", n))
    return tokens


# -- syntax tree -----------------------------------------------------------

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Symbol(Node):
    name: str


@dataclass(frozen=True)
class Epsilon(Node):
    pass


@dataclass(frozen=True)
class EmptyStringLang(Node):
    pass


@dataclass(frozen=True)
class Any(Node):
    pass


@dataclass(frozen=True)
class Boundary(Node):
    pass


@dataclass(frozen=True)
class Pair(Node):
    upper: Node
    lower: Node


@dataclass(frozen=True)
class NameRef(Node):
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Union(Node):
    items: Tuple[Node, ...]


@dataclass(frozen=True)
class Concat(Node):
    items: Tuple[Node, ...]


@dataclass(frozen=True)
class Intersect(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Minus(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Ignore(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Contains(Node):
    item: Node


@dataclass(frozen=True)
class Complement(Node):
    item: Node


@dataclass(frozen=True)
class Star(Node):
    item: Node


@dataclass(frozen=True)
class Plus(Node):
    item: Node


@dataclass(frozen=True)
class Optional(Node):
    item: Node


@dataclass(frozen=True)
class Crossproduct(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Compose(Node):
    items: Tuple[Node, ...]


@dataclass(frozen=True)
class SimpleReplace(Node):
    upper: Node
    lower: Node


@dataclass(frozen=True)
class ConditionalReplace(Node):
    upper: Node
    lower: Node
    left: Opt[Node]
    right: Opt[Node]


@dataclass(frozen=True)
class DirectedReplace(Node):
    upper: Node
    lower: Node
    op: str
    left: Opt[Node] = None
    right: Opt[Node] = None
    has_context: bool = False


@dataclass(frozen=True)
class MarkupReplace(Node):
    upper: Node
    prefix: Node
    suffix: Node
    op: str
    left: Opt[Node] = None
    right: Opt[Node] = None
    has_context: bool = False


@dataclass(frozen=True)
class ParallelReplace(Node):
    rules: Tuple[Node, ...]


RULE_NODES = (SimpleReplace, ConditionalReplace, DirectedReplace, MarkupReplace)


# -- parser ----------------------------------------------------------------

_ATOM_START_OPS = {"[", "(", "~", "$", "?", ".#."}
_CONTEXT_END_OPS = {",", ";", "]", ")", ".o."}


class _Parser:
    def __init__(self, tokens, src):
        self.tokens = tokens
        self.src = src
        self.pos = 0

    @property
    def tok(self):
        return self.tokens[self.pos]

    def at(self, *ops):
        t = self.tok
        return t.kind == "OP" and t.value in ops

    def advance(self):
        t = self.tok
        self.pos += 1
        return t

    def expect(self, op):
        if not self.at(op):
            self.error(f"expected {op!r}")
        return self.advance()

    def error(self, message):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.value)
        raise RegexSyntaxError(f"{message}, found {found}", t.offset, self.src)

    def starts_atom(self):
        t = self.tok
        return t.kind in ("SYM", "NAME", "EPS") or (t.kind == "OP" and t.value in _ATOM_START_OPS)

    def compose(self):
        items = [self.cross()]
        while self.at(".o."):
            self.advance()
            items.append(self.cross())
        return items[0] if len(items) == 1 else Compose(tuple(items))

    def cross(self):
        left = self.union()
        if self.at(".x."):
            self.advance()
            return Crossproduct(left, self.union())
        if self.tok.kind == "OP" and self.tok.value in REPLACE_OPS:
            rules = [self.rule(left)]
            while self.at(","):
                self.advance()
                rules.append(self.rule(self.union()))
            return rules[0] if len(rules) == 1 else ParallelReplace(tuple(rules))
        return left

    def rule(self, upper):
        if not (self.tok.kind == "OP" and self.tok.value in REPLACE_OPS):
            self.error("expected a replace operator")
        op = self.advance().value
        markup = False
        if self.at("..."):
            prefix, markup = EmptyStringLang(), True
        else:
            prefix = self.union()
            markup = self.at("...")
        if markup:
            if op == "->":
                self.error("'...' is only allowed with directed operators")
            self.advance()
            suffix = self.union() if self.starts_atom() else EmptyStringLang()
        left = right = None
        has_context = False
        if self.at("||"):
            self.advance()
            has_context = True
            left = None if self.at("_") else self.union()
            self.expect("_")
            right = None if (self.tok.kind == "EOF" or self.at(*_CONTEXT_END_OPS)) else self.union()
        if markup:
            return MarkupReplace(upper, prefix, suffix, op, left, right, has_context)
        if op != "->":
            return DirectedReplace(upper, prefix, op, left, right, has_context)
        if has_context:
            return ConditionalReplace(upper, prefix, left, right)
        return SimpleReplace(upper, prefix)

    def union(self):
        items = [self.intersection()]
        while self.at("|"):
            self.advance()
            items.append(self.intersection())
        return items[0] if len(items) == 1 else Union(tuple(items))

    def intersection(self):
        node = self.concat()
        while self.at("&", "-"):
            op = self.advance().value
            right = self.concat()
            node = Intersect(node, right) if op == "&" else Minus(node, right)
        return node

    def concat(self):
        if not self.starts_atom():
            self.error("expected an expression")
        items = [self.prefix()]
        while self.starts_atom():
            items.append(self.prefix())
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def prefix(self):
        if self.at("~"):
            self.advance()
            return Complement(self.prefix())
        if self.at("$"):
            self.advance()
            return Contains(self.prefix())
        return self.ignore()

    def ignore(self):
        node = self.postfix()
        while self.at("/"):
            self.advance()
            node = Ignore(node, self.postfix())
        return node

    def postfix(self):
        node = self.atom()
        while self.at("*", "+"):
            node = Star(node) if self.advance().value == "*" else Plus(node)
        return node

    def pair_side(self):
        t = self.tok
        if t.kind == "SYM":
            self.advance()
            return Symbol(t.value)
        if t.kind == "EPS":
            self.advance()
            return Epsilon()
        if self.at("?"):
            self.advance()
            return Any()
        self.error("expected a symbol, 0 or ? in a pair")

    def atom(self):
        t = self.tok
        if t.kind in ("SYM", "EPS") or self.at("?"):
            side = self.pair_side()
            if self.at(":"):
                self.advance()
                return Pair(side, self.pair_side())
            return side
        if t.kind == "NAME":
            self.advance()
            return NameRef(t.value, t.offset)
        if self.at(".#."):
            self.advance()
            return Boundary()
        if self.at("["):
            self.advance()
            if self.at("]"):
                self.advance()
                return EmptyStringLang()
            node = self.compose()
            self.expect("]")
            return node
        if self.at("("):
            self.advance()
            node = self.compose()
            self.expect(")")
            return Optional(node)
        self.error("expected an expression")


def parse(tokens_or_src, src=None):
    """Parse one expression (source text or a token list) into a syntax tree."""
    if isinstance(tokens_or_src, str):
        src = tokens_or_src
        tokens = tokenize(src)
    else:
        tokens = list(tokens_or_src)
    p = _Parser(tokens, src if src is not None else "")
    node = p.compose()
    if p.at(";"):
        p.advance()
    if p.tok.kind != "EOF":
        p.error("unexpected token after expression")
    return node


# -- pretty printer --------------------------------------------------------

_PREC = {
    Compose: 0, Crossproduct: 1, SimpleReplace: 1, ConditionalReplace: 1, DirectedReplace: 1,
    MarkupReplace: 1, ParallelReplace: 1, Union: 2, Intersect: 3, Minus: 3, Concat: 4,
    Complement: 5, Contains: 5, Ignore: 6, Star: 7, Plus: 7,
}
_ATOMIC = 8


def _prec(node):
    return _PREC.get(type(node), _ATOMIC)


def _symbol_source(name):
    if len(name) == 1:
        if name.isalnum() and name != "0":
            return name
        if not name.isspace() or name == " ":
            return "%" + name
    return '"' + "".join({"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}.get(c, c)
                         for c in name) + '"'


def to_source(node):
    """Source text that parses back to an equal tree."""

    def wrap(child, minimum):
        text = to_source(child)
        return f"[{text}]" if _prec(child) < minimum else text

    def context(left, right):
        lt = "" if left is None else wrap(left, 2) + " "
        rt = "" if right is None else " " + wrap(right, 2)
        return f" || {lt}_{rt}"

    if isinstance(node, Symbol):
        return _symbol_source(node.name)
    if isinstance(node, Epsilon):
        return "0"
    if isinstance(node, EmptyStringLang):
        return "[]"
    if isinstance(node, Any):
        return "?"
    if isinstance(node, Boundary):
        return ".#."
    if isinstance(node, Pair):
        return f"{to_source(node.upper)}:{to_source(node.lower)}"
    if isinstance(node, NameRef):
        return node.name
    if isinstance(node, Optional):
        return f"({to_source(node.item)})"
    if isinstance(node, Star):
        return wrap(node.item, 7) + "*"
    if isinstance(node, Plus):
        return wrap(node.item, 7) + "+"
    if isinstance(node, Ignore):
        return f"{wrap(node.left, 6)}/{wrap(node.right, 7)}"
    if isinstance(node, Complement):
        return "~" + wrap(node.item, 5)
    if isinstance(node, Contains):
        return "$" + wrap(node.item, 5)
    if isinstance(node, Concat):
        return " ".join(wrap(i, 5) for i in node.items)
    if isinstance(node, Intersect):
        return f"{wrap(node.left, 3)} & {wrap(node.right, 4)}"
    if isinstance(node, Minus):
        return f"{wrap(node.left, 3)} - {wrap(node.right, 4)}"
    if isinstance(node, Union):
        return " | ".join(wrap(i, 3) for i in node.items)
    if isinstance(node, Crossproduct):
        return f"{wrap(node.left, 2)} .x. {wrap(node.right, 2)}"
    if isinstance(node, Compose):
        return " .o. ".join(wrap(i, 1) for i in node.items)
    if isinstance(node, SimpleReplace):
        return f"{wrap(node.upper, 2)} -> {wrap(node.lower, 2)}"
    if isinstance(node, ConditionalReplace):
        return f"{wrap(node.upper, 2)} -> {wrap(node.lower, 2)}" + context(node.left, node.right)
    if isinstance(node, DirectedReplace):
        text = f"{wrap(node.upper, 2)} {node.op} {wrap(node.lower, 2)}"
        return text + (context(node.left, node.right) if node.has_context else "")
    if isinstance(node, MarkupReplace):
        pre = "" if isinstance(node.prefix, EmptyStringLang) else wrap(node.prefix, 2) + " "
        suf = "" if isinstance(node.suffix, EmptyStringLang) else " " + wrap(node.suffix, 2)
        text = f"{wrap(node.upper, 2)} {node.op} {pre}...{suf}"
        return text + (context(node.left, node.right) if node.has_context else "")
    if isinstance(node, ParallelReplace):
        return ", ".join(to_source(r) for r in node.rules)
    raise TypeError(f"not a syntax tree node: {node!r}")


# -- compiler --------------------------------------------------------------

class Definitions(OrderedDict):
    """Named networks; each may only refer to names defined before it."""


def _pair_symbol(side, table):
    if isinstance(side, Symbol):
        return table.intern(side.name)
    if isinstance(side, Epsilon):
        return EPSILON
    return OTHER


def compile(node, defs=None, table=DEFAULT_TABLE, src=None):
    """Compile a syntax tree (or source text) into a network."""
    if isinstance(node, str):
        src = node
        node = parse(node)
    defs = defs if defs is not None else Definitions()
    return fst.minimize(_Compiler(defs, table, src).build(node))


class _Compiler:
    def __init__(self, defs, table, src):
        self.defs = defs
        self.table = table
        self.src = src

    def context(self, node):
        return None if node is None else self.build(node, boundary_ok=True)

    def build(self, node, boundary_ok=False):
        t = self.table
        b = self.build
        if isinstance(node, Symbol):
            return fst.symbol(node.name, t)
        if isinstance(node, (Epsilon, EmptyStringLang)):
            return fst.empty_string(t)
        if isinstance(node, Any):
            return fst.any_symbol(t)
        if isinstance(node, Boundary):
            if not boundary_ok:
                raise UnsupportedRule(".#. is only meaningful inside a replace context")
            return fst.Network(t, [((BOUNDARY, BOUNDARY, 1),), ()], 0, (1,))
        if isinstance(node, Pair):
            up, low = _pair_symbol(node.upper, t), _pair_symbol(node.lower, t)
            if up == OTHER and low == OTHER:
                return fst.label_set([OTHER_ID, OTHER_PAIR], t)
            return fst.atom((up, low), t)
        if isinstance(node, NameRef):
            if node.name not in self.defs:
                line = col = None
                if self.src is not None:
                    err = RegexSyntaxError("", node.offset, self.src)
                    line, col = err.line, err.column
                raise UnknownName(node.name, line, col)
            return self.defs[node.name]
        sub = (lambda n: b(n, boundary_ok))
        if isinstance(node, Union):
            return fst.union(*[sub(i) for i in node.items])
        if isinstance(node, Concat):
            return fst.concat(*[sub(i) for i in node.items])
        if isinstance(node, Intersect):
            return fst.intersect(sub(node.left), sub(node.right))
        if isinstance(node, Minus):
            return fst.difference(sub(node.left), sub(node.right))
        if isinstance(node, Ignore):
            return fst.ignore(sub(node.left), sub(node.right))
        if isinstance(node, Complement):
            return fst.complement(sub(node.item))
        if isinstance(node, Contains):
            return fst.contains(sub(node.item))
        if isinstance(node, Star):
            return fst.star(sub(node.item))
        if isinstance(node, Plus):
            return fst.plus(sub(node.item))
        if isinstance(node, Optional):
            return fst.optional(sub(node.item))
        if isinstance(node, Crossproduct):
            return fst.crossproduct(b(node.left), b(node.right))
        if isinstance(node, Compose):
            result = b(node.items[0])
            for item in node.items[1:]:
                result = fst.minimize(fst.compose(result, b(item)))
            return result
        if isinstance(node, SimpleReplace):
            return rp.replace_simple(b(node.upper), b(node.lower))
        if isinstance(node, ConditionalReplace):
            ctx = rp.ContextSpec(self.context(node.left), self.context(node.right))
            return rp.replace_conditional(b(node.upper), b(node.lower), ctx)
        if isinstance(node, (DirectedReplace, MarkupReplace)):
            return rp.replace_directed(self.spec(node))
        if isinstance(node, ParallelReplace):
            if not all(isinstance(r, (DirectedReplace, MarkupReplace)) for r in node.rules):
                raise UnsupportedRule("parallel rule lists must use directed operators")
            if len({r.op for r in node.rules}) != 1:
                raise UnsupportedRule("parallel rules must all use the same directed operator")
            return rp.replace_parallel_directed([self.spec(r) for r in node.rules])
        raise TypeError(f"cannot compile {node!r}")

    def spec(self, node):
        if node.has_context:
            raise UnsupportedRule("contexts are not supported on directed replacement")
        direction, length = rp.MODES[node.op]
        if isinstance(node, MarkupReplace):
            action = rp.Markup(self.build(node.prefix), self.build(node.suffix))
        else:
            action = rp.Lower(self.build(node.lower))
        return rp.ReplaceSpec(self.build(node.upper), action, direction, length)


# -- rule files ------------------------------------------------------------

def load_program(src: str, table=DEFAULT_TABLE):
    """Compile a rule file: ``define NAME expr ;`` lines, then one main ``expr ;``.

    Returns ``(definitions, main_network)``.  Errors carry line and column.
    """
    tokens = tokenize(src)
    defs = Definitions()
    main = None
    pos = 0
    while tokens[pos].kind != "EOF":
        if main is not None:
            t = tokens[pos]
            raise RegexSyntaxError("only one main expression is allowed", t.offset, src)
        if tokens[pos].kind == "NAME" and tokens[pos].value == "define":
            name_tok = tokens[pos + 1]
            if name_tok.kind != "NAME":
                raise RegexSyntaxError("define needs a name of two or more letters",
                                       name_tok.offset, src)
            end = _statement_end(tokens, pos + 2, src)
            node = parse(tokens[pos + 2:end] + [Token("EOF", "", tokens[end].offset)], src)
            defs[name_tok.value] = _compile_at(node, defs, table, src, tokens[pos].offset)
        else:
            end = _statement_end(tokens, pos, src)
            node = parse(tokens[pos:end] + [Token("EOF", "", tokens[end].offset)], src)
            main = _compile_at(node, defs, table, src, tokens[pos].offset)
        pos = end + 1
    if main is None:
        raise RegexSyntaxError("program has no main expression", len(src), src)
    return defs, main


def _statement_end(tokens, pos, src):
    depth = 0
    for i in range(pos, len(tokens)):
        t = tokens[i]
        if t.kind == "OP" and t.value in ("[", "("):
            depth += 1
        elif t.kind == "OP" and t.value in ("]", ")"):
            depth -= 1
        elif t.kind == "OP" and t.value == ";" and depth == 0:
            if i == pos:
                raise RegexSyntaxError("empty statement", t.offset, src)
            return i
        elif t.kind == "EOF":
            raise RegexSyntaxError("missing ';' at end of statement", t.offset, src)
    raise RegexSyntaxError("missing ';'", len(src), src)


def _compile_at(node, defs, table, src, offset):
    try:
        return compile(node, defs, table, src)
    except (RegexSyntaxError, UnknownName):
        raise
    except FscError as exc:
        err = RegexSyntaxError("", offset, src)
        exc.line, exc.column = err.line, err.column
        exc.args = (f"{exc} (statement at line {err.line}, column {err.column})",)
        raise
