"""Acceptance checks shared by ``fsc selftest`` and the pytest suite.

Each check returns ``(passed, detail)``.  Checks that need the random rule
corpus share it through a per-run cache so the oracle sweep and the
unambiguity sweep compile each transducer once.
"""

import contextlib
import itertools
import random
from dataclasses import dataclass
from importlib import resources

from . import network as fst
from . import oracle
from . import regex as rx
from .apply import apply_down
from .replace import MODES, Lower, Markup, ReplaceSpec, mutated_length_constraint, replace_directed

SEED = 20260917
OPERATORS = ("@->", "@>", "->@", ">@")
FILTER_INPUT = "<B>one</B><A>two</A><C>three</C><A>four</A>"

# frozen after checking each value against the oracle chain below
GOLDEN = {
    "filter_pos": "<A>two</A><A>four</A>",
    "filter_neg": "<B>one</B><C>three</C>",
    "np_vp": "[NP d a n n ] [VP v [NP a a n ] ]",
    "tokenizer": {
        "we are at  least here": ["we", "are", "at least", "here"],
        "de plus on y va": ["de plus", "on", "y", "va"],
        "on y va de plus en plus": ["on", "y", "va", "de plus en plus"],
    },
}


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    group: str
    description: str
    func: object


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    group: str
    description: str
    passed: bool
    detail: str


CHECKS = []


def check(number, name, group, description):
    def register(func):
        CHECKS.append(Check(number, name, group, description, func))
        return func
    return register


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def recipe_source(name):
    return resources.files("fsc").joinpath("recipes", f"{name}.fsc").read_text(encoding="utf-8")


def load_recipe(name):
    return rx.load_program(recipe_source(name))[1]


def random_regex(rng, depth, alphabet="ab"):
    """Random syntax tree over ``alphabet`` with nesting at most ``depth``."""
    if depth == 0 or rng.random() < 0.25:
        return rx.Symbol(rng.choice(alphabet))
    sub = lambda: random_regex(rng, depth - 1, alphabet)  # noqa: E731
    kind = rng.choice("ucspoim")
    if kind == "u":
        return rx.Union((sub(), sub()))
    if kind == "c":
        return rx.Concat((sub(), sub()))
    if kind == "s":
        return rx.Star(sub())
    if kind == "p":
        return rx.Plus(sub())
    if kind == "o":
        return rx.Optional(sub())
    if kind == "i":
        return rx.Intersect(sub(), sub())
    return rx.Minus(sub(), sub())


def random_upper(rng, depth=4, alphabet="ab"):
    """Random epsilon-free UPPER language as a syntax tree."""
    return rx.Minus(random_regex(rng, depth, alphabet), rx.EmptyStringLang())


def _outputs(net, w):
    return set(apply_down(net, list(w)).outputs)


def _show(t):
    return "".join(t) if all(len(s) == 1 for s in t) else " ".join(t)


# -- worked examples -------------------------------------------------------

def _expect(net, cases):
    bad = []
    for w, want in cases:
        got = {"".join(o) for o in _outputs(net, w)}
        if got != want:
            bad.append(f"{w!r}: got {sorted(got)}, want {sorted(want)}")
    return (not bad, "; ".join(bad) or f"{len(cases)} inputs match")


@check(1, "simple-replace", "worked", "simple replace gives four outputs on aba")
def _simple_replace(ctx):
    net = rx.compile("a b | b | b a | a b a -> x")
    return _expect(net, [("aba", {"axa", "ax", "xa", "x"})])


@check(2, "longest-match", "worked", "left-to-right longest match maps aba to x only")
def _longest_match(ctx):
    net = rx.compile("a b | b | b a | a b a @-> x")
    ok, detail = _expect(net, [("aba", {"x"})])
    if not ok:
        return ok, detail
    multi = [_show(w) for w in words("ab", 8) if len(_outputs(net, w)) != 1]
    if multi:
        return False, f"not functional on {multi[:5]}"
    return True, "aba -> x; one output for every word up to length 8"


@check(3, "lookahead", "worked", "a+ b @-> x rewrites only when a b follows")
def _lookahead(ctx):
    net = rx.compile("a+ b @-> x")
    return _expect(net, [("ab", {"x"}), ("aab", {"x"}), ("aaab", {"x"}),
                         ("a", {"a"}), ("aa", {"aa"}), ("aaa", {"aaa"})])


@check(4, "markup-np", "worked", "noun phrases are bracketed")
def _markup(ctx):
    net = rx.compile("(d) a* n+ @-> %[ ... %]")
    return _expect(net, [("dannvaan", {"[dann]v[aan]"}), ("n", {"[n]"}), ("v", {"v"})])


@check(5, "sgml-filters", "recipes", "positive and negative SGML filters")
def _filters(ctx):
    bad = []
    for name in ("filter_pos", "filter_neg"):
        got = apply_down(load_recipe(name), FILTER_INPUT).texts()
        if got != [GOLDEN[name]]:
            bad.append(f"{name}: got {got}")
    # the negative filter is one directed rule; confirm the golden with the oracle
    upper = rx.compile('"<A>" ~$["<A>" | "</A>"] "</A>"')
    spec = ReplaceSpec(upper, Lower(rx.compile("[]")))
    tokens = _sgml_tokens(FILTER_INPUT)
    want = {"".join(o) for o in oracle.rewrite(spec, tokens)}
    if want != {GOLDEN["filter_neg"]}:
        bad.append(f"oracle disagrees with negative-filter golden: {sorted(want)}")
    return (not bad, "; ".join(bad) or "both filters match")


def _sgml_tokens(text):
    out, i = [], 0
    while i < len(text):
        for tag in ("</A>", "<A>"):
            if text.startswith(tag, i):
                out.append(tag)
                i += len(tag)
                break
        else:
            out.append(text[i])
            i += 1
    return out


@check(6, "np-vp-parser", "recipes", "noun and verb phrase spotter on dannvaan")
def _np_vp(ctx):
    got = apply_down(load_recipe("np_vp"), "dannvaan").outputs
    want = tuple(GOLDEN["np_vp"].split(" "))
    if got != (want,):
        return False, f"got {[' '.join(o) for o in got]}"
    return True, GOLDEN["np_vp"]


@check(7, "parallel-replace", "worked", "a+ @-> b, b+ @-> a without feeding")
def _parallel(ctx):
    net = load_recipe("parallel_ab")
    ok, detail = _expect(net, [("aaa", {"b"}), ("bb", {"a"}), ("aaabba", {"bab"})])
    if ok:
        specs = [ReplaceSpec(rx.compile("a+"), Lower(rx.compile("b"))),
                 ReplaceSpec(rx.compile("b+"), Lower(rx.compile("a")))]
        if oracle.rewrite(specs, "aaabba") != {tuple("bab")}:
            return False, "oracle disagrees on aaabba"
    return ok, detail


@check(8, "tokenizer", "recipes", "tokens with multiwords, separated by END_OF_TOKEN")
def _tokenizer(ctx):
    net = load_recipe("tokenizer")
    bad = []
    for text, tokens in GOLDEN["tokenizer"].items():
        got = apply_down(net, text).outputs
        want = tuple(itertools.chain.from_iterable(list(t) + ["END_OF_TOKEN"] for t in tokens))
        if got != (want,):
            bad.append(f"{text!r}: got {[_show(o) for o in got]}")
        if _tokenize_by_oracle(text) != want:
            bad.append(f"{text!r}: oracle chain gives {_show(_tokenize_by_oracle(text))}")
    return (not bad, "; ".join(bad) or f"{len(GOLDEN['tokenizer'])} sentences match")


def _tokenize_by_oracle(text):
    # stage 1 and 2 through the oracle; stage 3 deletes spaces after a
    # boundary or END_OF_TOKEN directly
    white = rx.compile('[% | "\\t" | "\\n"]+')
    stage1 = ReplaceSpec(white, Lower(rx.compile("% ")))
    (w,) = oracle.rewrite(stage1, list(text))
    defs, _ = rx.load_program(recipe_source("tokenizer"))
    token = rx.compile("[LETTER+ | MULTIWORD]", defs)
    stage2 = ReplaceSpec(token, Markup(rx.compile("[]"), rx.compile('"END_OF_TOKEN"')))
    (w,) = oracle.rewrite(stage2, w)
    out = []
    for sym in w:
        if sym == " " and (not out or out[-1] == "END_OF_TOKEN"):
            continue
        out.append(sym)
    return tuple(out)


# -- property sweeps -------------------------------------------------------

def _corpus(ctx):
    """200 random UPPER languages x 4 operators, applied to all words up to 7."""
    if "corpus" in ctx:
        return ctx["corpus"]
    rng = random.Random(SEED)
    lowers = ["x", "[]", "b a", "x x"]
    all_words = list(words("ab", 7))
    mismatches, ambiguous, compared = [], [], 0
    for k in range(200):
        ast = random_upper(rng, 4)
        upper = rx.compile(ast)
        lower_src = lowers[k % len(lowers)]
        lower = rx.compile(lower_src)
        for op in OPERATORS:
            direction, length = MODES[op]
            spec = ReplaceSpec(upper, Lower(lower), direction, length)
            net = replace_directed(spec)
            rewriter = oracle.Rewriter(spec)
            for w in all_words:
                got = _outputs(net, w)
                compared += 1
                if len(got) != 1:
                    ambiguous.append((rx.to_source(ast), op, _show(w), len(got)))
                want = rewriter(w)
                if got != want:
                    mismatches.append((rx.to_source(ast), op, lower_src, _show(w),
                                       sorted(map(_show, got)), sorted(map(_show, want))))
    ctx["corpus"] = (compared, mismatches, ambiguous)
    return ctx["corpus"]


@check(9, "oracle-equivalence", "oracle", "compiled rules agree with the oracle")
def _oracle_sweep(ctx):
    compared, mismatches, _ = _corpus(ctx)
    if mismatches:
        return False, f"{len(mismatches)} of {compared} differ, first: {mismatches[0]}"
    return True, f"{compared} applications agree"


@check(10, "unambiguity", "oracle", "exactly one output for a single-string LOWER")
def _unambiguous(ctx):
    compared, _, ambiguous = _corpus(ctx)
    if ambiguous:
        return False, f"{len(ambiguous)} of {compared} not unique, first: {ambiguous[0]}"
    return True, f"{compared} applications have one output"


def _all_strings(alphabet, max_len):
    return set(words(alphabet, max_len))


@check(11, "algebra-laws", "algebra", "determinize, minimize, compose and complement laws")
def _algebra(ctx):
    rng = random.Random(SEED + 11)
    n = 5
    universe = _all_strings(("a", "b") + oracle.PROBES, n)
    failures = []

    def law(name, ok):
        if not ok:
            failures.append(name)

    def same(x, y, max_len=n):
        return oracle.assert_equivalent(x, y, max_len).equivalent

    ab = {fst.DEFAULT_TABLE.intern(c) for c in "ab"}
    for k in range(30):
        a_ast, b_ast = random_regex(rng, 3), random_regex(rng, 3)
        a = fst.minimize(rx.compile(a_ast).extend_sigma(ab))
        b = fst.minimize(rx.compile(b_ast).extend_sigma(ab))
        raw = rx._Compiler(rx.Definitions(), a.table, None).build(a_ast).extend_sigma(ab)
        la = oracle.enumerate_language(a, n)
        lb = oracle.enumerate_language(b, n)
        tag = rx.to_source(a_ast)
        law(f"determinize preserves {tag}", same(fst.determinize(raw), raw))
        law(f"minimize preserves {tag}", same(fst.minimize(raw), raw))
        law(f"minimize idempotent {tag}", fst.isomorphic(fst.minimize(a), a))
        law(f"minimize canonical {tag}", fst.isomorphic(fst.minimize(fst.determinize(raw)), a))
        comp = fst.complement(a)
        law(f"complement {tag}", oracle.enumerate_language(comp, n) == universe - la)
        law(f"double complement {tag}", same(fst.complement(comp), a))
        law(f"union {tag}", oracle.enumerate_language(fst.union(a, b), n) == la | lb)
        law(f"intersect {tag}", oracle.enumerate_language(fst.intersect(a, b), n) == la & lb)
        law(f"difference {tag}", oracle.enumerate_language(fst.difference(a, b), n) == la - lb)
        law(f"de morgan {tag}", same(fst.complement(fst.union(a, b)),
                                     fst.intersect(fst.complement(a), fst.complement(b))))
        law(f"reverse {tag}", oracle.enumerate_language(fst.reverse(a), n)
            == {tuple(reversed(w)) for w in la})

    for k in range(15):
        r = [fst.crossproduct(rx.compile(random_regex(rng, 2)), rx.compile(random_regex(rng, 2)))
             for _ in range(3)]
        x, y, z = r
        law(f"compose associative #{k}",
            same(fst.compose(fst.compose(x, y), z), fst.compose(x, fst.compose(y, z)), 4))
        ident = fst.star(fst.any_symbol(x.table))
        law(f"compose identity #{k}", same(fst.compose(x, ident), x, 4))
        rel_xy = oracle.enumerate_relation(fst.compose(x, y), 3)
        ex, ey = oracle.enumerate_relation(x, 5), oracle.enumerate_relation(y, 5)
        joined = {(u, l2) for u, m1 in ex for m2, l2 in ey if m1 == m2
                  and len(u) <= 3 and len(l2) <= 3}
        law(f"compose relational join #{k}", rel_xy == joined)
        law(f"inverse involution #{k}", same(fst.inverse(fst.inverse(x)), x, 4))
    if failures:
        return False, f"{len(failures)} law failures, first: {failures[:3]}"
    return True, "30 languages and 15 relation triples obey every law"


@check(12, "markup-inverse", "markup", "removing inserted marks recovers the input")
def _markup_inverse(ctx):
    rng = random.Random(SEED + 12)
    marks = ["<", ">", "[", "]", "{", "}"]
    inputs = ["".join(rng.choice("abc") for _ in range(rng.randint(0, 10))) for _ in range(500)]
    failures = []
    for k in range(50):
        ast = random_upper(rng, 3, "abc")
        prefix = "".join(rng.sample(marks, rng.randint(0, 2)))
        suffix = "".join(rng.sample(marks, rng.randint(1, 2)))
        upper = rx.compile(ast)
        spec = ReplaceSpec(upper, Markup(_literal(prefix), _literal(suffix)),
                           *MODES[OPERATORS[k % 4]])
        net = replace_directed(spec)
        rewriter = oracle.Rewriter(spec)
        for w in inputs:
            outs = apply_down(net, list(w)).outputs
            if len(outs) != 1:
                failures.append((rx.to_source(ast), w, "outputs", len(outs)))
                continue
            if _strip_marks(outs[0], rewriter.spans(list(w)), w, prefix, suffix) != w:
                failures.append((rx.to_source(ast), w, _show(outs[0])))
    if failures:
        return False, f"{len(failures)} failures, first: {failures[0]}"
    return True, "50 markup rules x 500 inputs recover their input"


def _literal(text):
    if not text:
        return rx.compile("[]")
    return rx.compile(" ".join("%" + c for c in text))


def _strip_marks(out, spans, w, prefix, suffix):
    """Undo markup using the oracle's span list; None if the layout is wrong."""
    out = "".join(out)
    pos, recovered = 0, []
    for s in spans:
        seg = w[s.start:s.end]
        if s.matched:
            if not out.startswith(prefix, pos):
                return None
            pos += len(prefix)
        if not out.startswith(seg, pos):
            return None
        recovered.append(seg)
        pos += len(seg)
        if s.matched:
            if not out.startswith(suffix, pos):
                return None
            pos += len(suffix)
    return "".join(recovered) if pos == len(out) else None


# -- running ---------------------------------------------------------------

def select(filter_name=None):
    if not filter_name:
        return list(CHECKS)
    return [c for c in CHECKS
            if filter_name in (c.group, str(c.number)) or filter_name in c.name]


def run_checks(filter_name=None, mutate=False):
    """Run the acceptance checks; ``mutate`` disables the length constraint."""
    ctx = {}
    results = []
    guard = mutated_length_constraint() if mutate else contextlib.nullcontext()
    with guard:
        for c in select(filter_name):
            try:
                passed, detail = c.func(ctx)
            except Exception as exc:  # a crash is a failed check, not a crashed run
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(c.number, c.name, c.group, c.description, passed, detail))
    return results


def format_table(results):
    width = max((len(r.name) for r in results), default=4)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.number:>2}  {r.name:<{width}}  {status}  {r.description}")
        lines.append(f"    {'':<{width}}        {r.detail}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
