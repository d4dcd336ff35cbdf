"""Replacement transducers.

Directed replacement is a cascade of compositions::

    aux-free input
      .o. caret insertion      (a ^ before every position where UPPER starts)
      .o. left-to-right        (^ becomes <, a > closes the match, no stray ^)
      .o. length constraint    (longest or shortest match from each <)
      .o. rewrite              (< ... > replaced by LOWER, or marked up)

Only three auxiliary marks are used: CARET, LBRACKET and RBRACKET.  User
networks get these symbols declared in their sigma before anything else
happens, so a ``?`` in a user pattern never matches a mark.
"""

import contextlib
import enum
from dataclasses import dataclass
from typing import Optional, Union

from . import network as fst
from .alphabet import AUXILIARIES, BOUNDARY, CARET, EPSILON, LBRACKET, RBRACKET
from .errors import EmptyRuleSet, EpsilonInUpper, NotAnAutomaton, UnsupportedContextOrientation
from .network import Network


class Direction(enum.Enum):
    LTR = "ltr"
    RTL = "rtl"


class Length(enum.Enum):
    LONGEST = "longest"
    SHORTEST = "shortest"


@dataclass(frozen=True)
class Lower:
    lower: Network


@dataclass(frozen=True)
class Markup:
    prefix: Network
    suffix: Network


@dataclass(frozen=True)
class ReplaceSpec:
    upper: Network
    action: Union[Lower, Markup]
    direction: Direction = Direction.LTR
    length: Length = Length.LONGEST

    @property
    def is_markup(self):
        return isinstance(self.action, Markup)

    @property
    def lower(self):
        return None if self.is_markup else self.action.lower

    @property
    def prefix(self):
        return self.action.prefix if self.is_markup else None

    @property
    def suffix(self):
        return self.action.suffix if self.is_markup else None

    @property
    def operator(self):
        return OPERATORS[(self.direction, self.length)]


OPERATORS = {
    (Direction.LTR, Length.LONGEST): "@->",
    (Direction.LTR, Length.SHORTEST): "@>",
    (Direction.RTL, Length.LONGEST): "->@",
    (Direction.RTL, Length.SHORTEST): ">@",
}
MODES = {op: mode for mode, op in OPERATORS.items()}


@dataclass(frozen=True)
class ContextSpec:
    """Upper-side (``||``) context; ``None`` means unconstrained."""
    left: Optional[Network] = None
    right: Optional[Network] = None
    orientation: str = "||"


_MARKS = AUXILIARIES | {BOUNDARY}

# test hook: when set, replaces the length constraint (see mutated_length_constraint)
_length_override = None


@contextlib.contextmanager
def mutated_length_constraint(factory=None):
    """Swap the length constraint for ``factory(upper, mode)``.

    The default factory returns the identity on every string, which disables
    the constraint entirely.  Used by the self-test to prove that the golden
    checks notice a broken construction.
    """
    global _length_override
    old = _length_override
    _length_override = factory or (lambda upper, mode: fst.universal(upper.table))
    try:
        yield
    finally:
        _length_override = old


# -- small building blocks -------------------------------------------------

def _prep(net):
    if not net.is_automaton:
        raise NotAnAutomaton("replace operands must be automata")
    return net.declare(_MARKS)


def _plain(table):
    """Any one symbol that is not an auxiliary mark or the boundary."""
    return fst.any_symbol(table).declare(_MARKS)


def _sym(sid, table):
    return _pair(sid, sid, table)


def _pair(upper, lower, table):
    # built directly: atom() refuses the boundary pair, which only the
    # context machinery may use
    return Network(table, [((upper, lower, 1),), ()], 0, (1,))


def _everything(table, *extra):
    return fst.star(fst.union(_plain(table), *[_sym(s, table) for s in extra]))


def _check_epsilon_free(upper):
    if _accepts_empty(upper):
        raise EpsilonInUpper("UPPER must not contain the empty string")


def _accepts_empty(net):
    net = fst.remove_epsilons(net)
    return net.start in net.finals


def _stage(net):
    return fst.minimize(net)


# -- the stages of directed replacement -----------------------------------

def aux_free_filter(table):
    """``~$[^ | < | >]``: identity on strings without auxiliary marks."""
    return _everything(table)


def insert_single_caret(upper):
    """One caret before every position where some UPPER string begins."""
    upper = _prep(upper)
    _check_epsilon_free(upper)
    t = upper.table
    plain = _plain(t)
    caret = _sym(CARET, t)
    upper_c = fst.ignore(upper, {CARET}, nonfinal=True)
    starts = fst.concat(upper_c, fst.universal(t))
    inserter = fst.star(fst.union(plain, fst.concat(_pair(EPSILON, CARET, t), plain)))
    every = _everything(t, CARET)
    # each caret is followed by a match
    f1 = fst.complement(fst.concat(every, caret, fst.complement(starts)))
    # no match starts at an unmarked position
    unmarked = fst.union(fst.empty_string(t), fst.concat(every, plain))
    f2 = fst.complement(fst.concat(unmarked, fst.intersect(starts, fst.concat(plain, every))))
    return _stage(fst.compose(inserter, _stage(fst.intersect(f1, f2))))


def l2r_constraint(upper):
    """Brackets around matches that start at carets; no caret left outside."""
    upper = _prep(upper)
    _check_epsilon_free(upper)
    t = upper.table
    plain = _plain(t)
    upper_c = fst.ignore(upper, {CARET}, nonfinal=True)
    gap = fst.star(plain)
    region = fst.concat(_pair(CARET, LBRACKET, t), upper_c, _pair(EPSILON, RBRACKET, t))
    bracketing = fst.concat(fst.star(fst.concat(gap, region)), gap)
    drop_carets = fst.star(fst.union(plain, _sym(LBRACKET, t), _sym(RBRACKET, t),
                                     _pair(CARET, EPSILON, t)))
    return _stage(fst.compose(_stage(bracketing), drop_carets))


def length_constraint(upper, mode=Length.LONGEST):
    """Identity on bracketed strings whose regions have the required length."""
    mode = Length(mode)
    upper = _prep(upper)
    _check_epsilon_free(upper)
    if _length_override is not None:
        return _length_override(upper, mode)
    t = upper.table
    lbr = _sym(LBRACKET, t)
    if mode is Length.LONGEST:
        upper_b = fst.ignore(upper, {LBRACKET, RBRACKET}, nonfinal=True)
        crossing = fst.intersect(upper_b, fst.contains(_sym(RBRACKET, t)))
        bad = fst.concat(lbr, crossing)
    else:
        bad = fst.concat(lbr, upper, _plain(t))
    return _stage(fst.complement(fst.contains(bad)))


def rewrite_brackets(action, content=None):
    """Replace or mark up every ``< ... >`` region.

    ``content`` restricts what a region may contain (parallel rules use it
    to pick the rule whose UPPER matched); by default any nonempty text.
    """
    if isinstance(action, Lower):
        lower = _prep(action.lower)
        t = lower.table
        body = fst.plus(_plain(t)) if content is None else _prep(content)
        region = fst.concat(_pair(LBRACKET, EPSILON, t), fst.crossproduct(body, lower),
                            _pair(RBRACKET, EPSILON, t))
        return _stage(fst.star(fst.union(_plain(t), region)))
    prefix, suffix = _prep(action.prefix), _prep(action.suffix)
    t = prefix.table
    if content is not None:
        region = fst.concat(fst.crossproduct(_sym(LBRACKET, t), prefix), _prep(content),
                            fst.crossproduct(_sym(RBRACKET, t), suffix))
        return _stage(fst.star(fst.union(_plain(t), region)))
    opening = fst.star(fst.union(_plain(t), _sym(RBRACKET, t),
                                 fst.crossproduct(_sym(LBRACKET, t), prefix)))
    closing = fst.star(fst.union(_plain(t), fst.crossproduct(_sym(RBRACKET, t), suffix)))
    return _stage(fst.compose(_stage(opening), _stage(closing)))


def _finish(net):
    net = fst.minimize(net)
    if any(u in _MARKS or l in _MARKS for arcs in net.arcs for u, l, _ in arcs):
        raise AssertionError("internal marks survived the construction")
    return net.without_sigma(_MARKS)


def _cascade(upper, length, rewrite):
    t = upper.table
    result = aux_free_filter(t)
    for stage in (insert_single_caret(upper), l2r_constraint(upper),
                  length_constraint(upper, length), rewrite):
        result = _stage(fst.compose(result, stage))
    return _finish(result)


def _reverse_action(action):
    if isinstance(action, Lower):
        return Lower(fst.reverse(action.lower))
    # reversal swaps which side of the match each insertion lands on
    return Markup(fst.reverse(action.suffix), fst.reverse(action.prefix))


def replace_directed(spec: ReplaceSpec) -> Network:
    """Transducer for one directed rule (``@->``, ``@>``, ``->@``, ``>@``)."""
    upper = _prep(spec.upper)
    _check_epsilon_free(upper)
    if spec.direction is Direction.RTL:
        mirrored = ReplaceSpec(fst.reverse(upper), _reverse_action(spec.action),
                               Direction.LTR, spec.length)
        return fst.minimize(fst.reverse(replace_directed(mirrored)))
    return _cascade(upper, spec.length, rewrite_brackets(spec.action))


def markup_directed(spec: ReplaceSpec) -> Network:
    if not spec.is_markup:
        raise ValueError("markup_directed needs a Markup action")
    return replace_directed(spec)


def replace_parallel_directed(rules) -> Network:
    """Several directed rules applied in one left-to-right (or right-to-left) pass."""
    rules = list(rules)
    if not rules:
        raise EmptyRuleSet("parallel replacement needs at least one rule")
    direction, length = rules[0].direction, rules[0].length
    if any(r.direction is not direction or r.length is not length for r in rules):
        raise ValueError("parallel rules must share direction and match length")
    uppers = [_prep(r.upper) for r in rules]
    for u in uppers:
        _check_epsilon_free(u)
    if direction is Direction.RTL:
        mirrored = [ReplaceSpec(fst.reverse(u), _reverse_action(r.action), Direction.LTR, length)
                    for u, r in zip(uppers, rules)]
        return fst.minimize(fst.reverse(replace_parallel_directed(mirrored)))
    if len(rules) == 1:
        return replace_directed(rules[0])
    t = uppers[0].table
    regions = []
    for u, r in zip(uppers, rules):
        if r.is_markup:
            regions.append(fst.concat(fst.crossproduct(_sym(LBRACKET, t), _prep(r.prefix)), u,
                                      fst.crossproduct(_sym(RBRACKET, t), _prep(r.suffix))))
        else:
            regions.append(fst.concat(_pair(LBRACKET, EPSILON, t),
                                      fst.crossproduct(u, _prep(r.lower)),
                                      _pair(RBRACKET, EPSILON, t)))
    rewrite = _stage(fst.star(fst.union(_plain(t), *regions)))
    return _cascade(fst.union(*uppers), length, rewrite)


# -- undirected replacement ------------------------------------------------

def replace_simple(upper, lower):
    """``UPPER -> LOWER``: obligatory, unconditional, every factorization."""
    upper, lower = _prep(upper), _prep(lower)
    t = upper.table
    nonempty = fst.difference(upper, fst.empty_string(t))
    no_upper = fst.difference(_everything(t), fst.contains(nonempty))
    step = fst.concat(no_upper, fst.crossproduct(upper, lower))
    return _finish(fst.concat(fst.star(step), no_upper))


def replace_conditional(upper, lower, ctx: ContextSpec):
    """``UPPER -> LOWER || LEFT _ RIGHT`` with contexts read on the input side.

    Contexts may be anchored with the boundary symbol: a LEFT starting with
    ``.#.`` only matches at the start of the string, a RIGHT ending with it
    only at the end.
    """
    if ctx.orientation != "||":
        raise UnsupportedContextOrientation(f"context orientation {ctx.orientation!r} is not supported")
    upper, lower = _prep(upper), _prep(lower)
    _check_epsilon_free(upper)
    t = upper.table
    left = _prep(ctx.left) if ctx.left is not None else fst.empty_string(t)
    right = _prep(ctx.right) if ctx.right is not None else fst.empty_string(t)
    plain = _plain(t)
    bound = _sym(BOUNDARY, t)
    lbr, rbr = _sym(LBRACKET, t), _sym(RBRACKET, t)
    brackets = {LBRACKET, RBRACKET}

    add_bounds = fst.concat(_pair(EPSILON, BOUNDARY, t), fst.star(plain), _pair(EPSILON, BOUNDARY, t))
    region = fst.concat(_pair(EPSILON, LBRACKET, t), upper, _pair(EPSILON, RBRACKET, t))
    bracketing = fst.concat(bound, fst.star(fst.union(plain, region)), bound)

    text = fst.star(fst.union(plain, bound))
    anything = _everything(t, BOUNDARY, LBRACKET, RBRACKET)
    before = fst.ignore(fst.concat(text, left), brackets)
    after = fst.ignore(fst.concat(right, text), brackets)
    left_ok = fst.complement(fst.concat(fst.complement(before), lbr, anything))
    right_ok = fst.complement(fst.concat(anything, rbr, fst.complement(after)))
    open_region = fst.concat(anything, lbr, fst.star(fst.union(plain, bound, lbr)))
    outside = fst.difference(before, open_region)
    missed = fst.concat(outside, upper, after)
    constraint = fst.intersect(fst.intersect(left_ok, right_ok), fst.complement(missed))

    rewrite = fst.star(fst.union(plain, bound, fst.concat(
        _pair(LBRACKET, EPSILON, t), fst.crossproduct(upper, lower), _pair(RBRACKET, EPSILON, t))))
    drop_bounds = fst.concat(_pair(BOUNDARY, EPSILON, t), fst.star(plain), _pair(BOUNDARY, EPSILON, t))

    result = _stage(add_bounds)
    for stage in (bracketing, constraint, rewrite, drop_bounds):
        result = _stage(fst.compose(result, _stage(stage)))
    return _finish(result)
