import pytest

from fsc import network as fst
from fsc import regex as rx
from fsc.apply import down
from fsc.errors import (
    DanglingEscape,
    EpsilonInUpper,
    NotAnAutomaton,
    RegexSyntaxError,
    UnknownName,
    UnsupportedRule,
    UnterminatedQuote,
)
from fsc.regex import (
    Any,
    Boundary,
    Complement,
    Concat,
    Contains,
    ConditionalReplace,
    DirectedReplace,
    EmptyStringLang,
    Epsilon,
    Ignore,
    MarkupReplace,
    Optional,
    Pair,
    ParallelReplace,
    Plus,
    Star,
    Symbol,
    Union,
)

from conftest import strings


def kinds(src):
    return [(t.kind, t.value) for t in rx.tokenize(src)][:-1]


def test_tokenize_examples():
    assert kinds("a b | b") == [("SYM", "a"), ("SYM", "b"), ("OP", "|"), ("SYM", "b")]
    assert kinds("%[") == [("SYM", "[")]
    assert kinds('"END_OF_TOKEN"') == [("SYM", "END_OF_TOKEN")]
    assert kinds("NP 0 ? .#. ...") == [("NAME", "NP"), ("EPS", "0"), ("OP", "?"),
                                       ("OP", ".#."), ("OP", "...")]
    assert kinds("a ! comment\nb") == [("SYM", "a"), ("SYM", "b")]
    assert kinds('"a\\"b\\tc"') == [("SYM", 'a"b\tc')]


def test_tokenize_operators_prefer_longest():
    assert [v for _, v in kinds("@-> @> ->@ >@ -> .x. .o. ||")] == [
        "@->", "@>", "->@", ">@", "->", ".x.", ".o.", "||"]


@pytest.mark.parametrize("src, err", [('"abc', UnterminatedQuote), ("a %", DanglingEscape),
                                      ('"a\\', UnterminatedQuote), ('""', RegexSyntaxError),
                                      ("a > b", RegexSyntaxError), ('"\\q"', RegexSyntaxError)])
def test_tokenize_errors(src, err):
    with pytest.raises(err):
        rx.tokenize(src)


def test_syntax_error_has_line_and_column():
    with pytest.raises(RegexSyntaxError) as info:
        rx.parse("a\n  b |")
    assert (info.value.line, info.value.column) == (2, 6)


def test_precedence():
    assert rx.parse("a b | b a") == Union((Concat((Symbol("a"), Symbol("b"))),
                                          Concat((Symbol("b"), Symbol("a")))))
    assert rx.parse("~a/b") == Complement(Ignore(Symbol("a"), Symbol("b")))
    assert rx.parse("$a b") == Concat((Contains(Symbol("a")), Symbol("b")))
    assert rx.parse("a:b*") == Star(Pair(Symbol("a"), Symbol("b")))
    assert rx.parse("a b & c | d") == Union((rx.Intersect(Concat((Symbol("a"), Symbol("b"))),
                                                          Symbol("c")), Symbol("d")))
    assert rx.parse("a - b - c") == rx.Minus(rx.Minus(Symbol("a"), Symbol("b")), Symbol("c"))
    assert isinstance(rx.parse("a .x. b .o. c"), rx.Compose)
    assert rx.parse("[]") == EmptyStringLang()
    assert rx.parse("0:?") == Pair(Epsilon(), Any())


def test_markup_parse():
    node = rx.parse("(d) a* n+ @-> %[ ... %]")
    assert node == MarkupReplace(
        Concat((Optional(Symbol("d")), Star(Symbol("a")), Plus(Symbol("n")))),
        Symbol("["), Symbol("]"), "@->")
    assert rx.parse("a @-> ... x").prefix == EmptyStringLang()
    assert rx.parse("a @-> x ...").suffix == EmptyStringLang()


def test_parallel_and_context_parse():
    node = rx.parse("a+ @-> b, b+ @-> a")
    assert isinstance(node, ParallelReplace) and len(node.rules) == 2
    cond = rx.parse("a -> b || .#. | c _ d")
    assert cond == ConditionalReplace(Symbol("a"), Symbol("b"),
                                      Union((Boundary(), Symbol("c"))), Symbol("d"))
    assert rx.parse("a -> b || _").left is None
    assert isinstance(rx.parse("a @> b || c _"), DirectedReplace)


def test_markup_only_with_directed_operators():
    with pytest.raises(RegexSyntaxError):
        rx.parse("a -> x ... y")


ROUND_TRIP = [
    "a", "a b c", "a | b", "[a | b] | c", "a & b", "a - b", "a - [b - c]", "a*", "a+", "[a b]*",
    "(a)", "~a", "$a", "~$[a b]", "a/b", "[a b]/[c d]", "a:b", "0:a", "?:0", "?", "%[ %] %% % ",
    '"END_OF_TOKEN" "<A>"', "[]", "a .x. b c", "a .o. b .o. c", "a b | b -> x", "a @-> x",
    "a @> x", "a ->@ x", "a >@ x", "a @-> %[ ... %]", "a @-> ... x", "a+ @-> b, b+ @-> a",
    "a -> b || c _ d", "a -> b || .#. | c _", "a -> b || _ .#.", "NP @-> x", "~[a b]*",
    "[a .x. b]*", "[a @-> b] .o. [b -> c]", '"a\\tb" "x\\"y"', "~~a", "[a | b] c & d",
]


@pytest.mark.parametrize("src", ROUND_TRIP)
def test_pretty_print_round_trip(src):
    tree = rx.parse(src)
    assert rx.parse(rx.to_source(tree)) == tree


def test_round_trip_corpus_covers_every_node_type():
    seen = set()

    def walk(node):
        seen.add(type(node))
        for v in vars(node).values():
            for x in (v if isinstance(v, tuple) else (v,)):
                if isinstance(x, rx.Node):
                    walk(x)

    for src in ROUND_TRIP:
        walk(rx.parse(src))
    everything = {cls for cls in vars(rx).values()
                  if isinstance(cls, type) and issubclass(cls, rx.Node) and cls is not rx.Node}
    assert everything <= seen


def test_compile_semantics(c):
    assert strings(c("a b | b a")) == {"ab", "ba"}
    assert strings(c("(d) a")) == {"a", "da"}
    assert strings(c("[a|b] - a")) == {"b"}
    assert strings(c("[]")) == {""}
    assert strings(c("0")) == {""}
    assert down(c("a b|b|b a|a b a -> x"), "aba") == {"axa", "ax", "xa", "x"}


def test_compile_errors(c):
    with pytest.raises(UnknownName):
        c("NP a")
    with pytest.raises(NotAnAutomaton):
        c("~[a:b]")
    with pytest.raises(EpsilonInUpper):
        c("[] @-> x")
    with pytest.raises(UnsupportedRule):
        c("a @-> b || c _")
    with pytest.raises(UnsupportedRule):
        c(".#. a")
    with pytest.raises(UnsupportedRule):
        c("a @-> b, b -> a")
    with pytest.raises(UnsupportedRule):
        c("a @-> b, b @> a")


def test_compile_is_deterministic(c):
    src = "(d) a* n+ @-> %[ ... %] .o. a -> b || n _"
    assert fst.to_text(c(src)) == fst.to_text(c(src))


def test_definitions():
    defs, main = rx.load_program("define NP [(d) a* n+] ;\nNP @-> \"[NP\" ... %] ;")
    assert list(defs) == ["NP"]
    assert down(main, "dan", render={"[NP": "<"}) == {"<dan]"}


def test_definitions_may_only_use_earlier_names():
    with pytest.raises(UnknownName) as info:
        rx.load_program("define AA BB ;\ndefine BB a ;\nAA ;")
    assert info.value.line == 1


@pytest.mark.parametrize("src", ["", "! only a comment\n", "define AA a ;"])
def test_program_needs_a_main_expression(src):
    with pytest.raises(RegexSyntaxError):
        rx.load_program(src)


@pytest.mark.parametrize("src", ["a ; b ;", "a", "define a b ;", "define AA ;"])
def test_program_errors(src):
    with pytest.raises(RegexSyntaxError):
        rx.load_program(src)


def test_compile_error_reports_its_statement_line():
    with pytest.raises(EpsilonInUpper) as info:
        rx.load_program("define AA a ;\n\n[] @-> x ;")
    assert info.value.line == 3


WORKED_EXPRESSIONS = [
    "a b | b | b a | a b a -> x",
    "a b | b | b a | a b a @-> x",
    "a+ b @-> x",
    "(d) a* n+ @-> %[ ... %]",
    '"<A>" ~$["<A>" | "</A>"] "</A>" @-> []',
    '~$"</A>" "<A>" @-> "<A>" .o. "</A>" ~$"<A>" @-> "</A>"',
    "a+ @-> b, b+ @-> a",
]


@pytest.mark.parametrize("src", WORKED_EXPRESSIONS)
def test_worked_expressions_parse_and_compile(src):
    rx.compile(src)


@pytest.mark.parametrize("name", ["tokenizer", "filter_neg", "filter_pos", "np_vp", "parallel_ab"])
def test_recipes_compile(name):
    from fsc.selftest import load_recipe
    assert load_recipe(name).num_states > 1
