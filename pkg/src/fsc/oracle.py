"""Brute-force reference semantics for directed replacement.

Nothing here calls into the network algorithms that build transducers: the
oracle simulates the UPPER automaton arc by arc, scans the input position by
position, and performs the string surgery directly.  It is slow and only
meant for desk-scale checking.
"""

from dataclasses import dataclass, field

from .alphabet import EPSILON, OTHER, OTHER_NEQ
from .errors import ActionLanguageInfinite, EpsilonInUpper

# stand-ins for symbols outside a network's sigma when enumerating
PROBES = ("¤",)


@dataclass(frozen=True)
class MatchSpan:
    start: int
    end: int
    matched: bool


class _Matcher:
    """Direct NFA simulation of an automaton over symbol names."""

    def __init__(self, net):
        self.net = net
        self.ids = {net.table.name(s): s for s in net.sigma}
        self._closure = {}
        self._steps = {}
        self._start = None

    def closure(self, states):
        out = set()
        for q in states:
            c = self._closure.get(q)
            if c is None:
                c = {q}
                stack = [q]
                while stack:
                    p = stack.pop()
                    for u, l, t in self.net.arcs[p]:
                        if u == EPSILON and l == EPSILON and t not in c:
                            c.add(t)
                            stack.append(t)
                self._closure[q] = c = frozenset(c)
            out |= c
        return out

    def start(self):
        if self._start is None:
            self._start = frozenset(self.closure({self.net.start}))
        return self._start

    def step(self, states, name):
        sid = self.ids.get(name, OTHER)
        key = (states, sid)
        hit = self._steps.get(key)
        if hit is not None:
            return hit
        nxt = set()
        for q in states:
            for u, l, t in self.net.arcs[q]:
                if u == sid and l == sid:
                    nxt.add(t)
        hit = self._steps[key] = frozenset(self.closure(nxt))
        return hit

    def accepts_empty(self):
        return bool(self.start() & self.net.finals)

    def ends_from(self, w, i):
        """All j > i with w[i:j] in the language."""
        states = self.start()
        ends = []
        for j in range(i, len(w)):
            states = self.step(states, w[j])
            if not states:
                break
            if states & self.net.finals:
                ends.append(j + 1)
        return ends

    def accepts(self, w):
        states = self.start()
        for name in w:
            states = self.step(states, name)
            if not states:
                return False
        return bool(states & self.net.finals)


def _matchers(upper):
    nets = upper if isinstance(upper, (list, tuple)) else [upper]
    ms = [n if isinstance(n, _Matcher) else _Matcher(n) for n in nets]
    for m in ms:
        if not m.net.is_automaton:
            raise ValueError("UPPER must be an automaton")
        if m.accepts_empty():
            raise EpsilonInUpper("UPPER accepts the empty string")
    return ms


def _direction_value(direction):
    return getattr(direction, "value", direction)


def match_spans(upper, w, direction="ltr", length="longest"):
    """Directed factorization of ``w`` with respect to ``upper``.

    ``upper`` may be one automaton or a list of automata (their union).
    ``w`` is a sequence of symbol names.
    """
    w = list(w)
    direction = _direction_value(direction)
    length = _direction_value(length)
    ms = _matchers(upper)
    n = len(w)
    ends = [sorted({j for m in ms for j in m.ends_from(w, i)}) for i in range(n)]
    spans = []

    def copy(a, b):
        if spans and not spans[-1].matched and spans[-1].end == a:
            spans[-1] = MatchSpan(spans[-1].start, b, False)
        else:
            spans.append(MatchSpan(a, b, False))

    if direction == "ltr":
        i = 0
        while i < n:
            if ends[i]:
                j = ends[i][-1] if length == "longest" else ends[i][0]
                spans.append(MatchSpan(i, j, True))
                i = j
            else:
                copy(i, i + 1)
                i += 1
        return spans
    if direction != "rtl":
        raise ValueError(f"unknown direction {direction!r}")
    starts = [[] for _ in range(n + 1)]
    for i in range(n):
        for j in ends[i]:
            starts[j].append(i)
    j = n
    rev = []
    while j > 0:
        if starts[j]:
            i = min(starts[j]) if length == "longest" else max(starts[j])
            rev.append(MatchSpan(i, j, True))
            j = i
        else:
            rev.append(MatchSpan(j - 1, j, False))
            j -= 1
    for s in reversed(rev):
        if s.matched:
            spans.append(s)
        else:
            copy(s.start, s.end)
    return spans


def _walk(net, max_len, probes):
    """All (upper, lower) symbol-name tuple pairs with both sides <= max_len."""
    name = net.table.name
    sigma_names = {name(s) for s in net.sigma}
    unknowns = [p for p in probes if p not in sigma_names]

    def expand(u, l):
        if u == OTHER and l == OTHER:
            return [(p, p) for p in unknowns]
        if u == OTHER and l == OTHER_NEQ:
            return [(p, q) for p in unknowns for q in unknowns if p != q]
        ups = unknowns if u == OTHER else [None if u == EPSILON else name(u)]
        lows = unknowns if l == OTHER else [None if l == EPSILON else name(l)]
        return [(x, y) for x in ups for y in lows]

    labels = [[(expand(u, l), t) for u, l, t in arcs] for arcs in net.arcs]
    results = set()
    start = (net.start, (), ())
    seen = {start}
    stack = [start]
    while stack:
        q, up, low = stack.pop()
        if q in net.finals:
            results.add((up, low))
        for pairs, t in labels[q]:
            for x, y in pairs:
                nup = up if x is None else up + (x,)
                nlow = low if y is None else low + (y,)
                if len(nup) > max_len or len(nlow) > max_len:
                    continue
                cfg = (t, nup, nlow)
                if cfg not in seen:
                    seen.add(cfg)
                    stack.append(cfg)
    return results


def enumerate_language(net, max_len, probes=PROBES):
    """Exhaustive path walk.

    Returns a set of name tuples for automata and a set of
    ``(upper, lower)`` tuple pairs for genuine relations.  OTHER arcs are
    instantiated with the ``probes`` names that are outside sigma.
    """
    if max_len > 12:
        raise ValueError("max_len is capped at 12")
    pairs = _walk(net, max_len, probes)
    if net.is_automaton:
        return {up for up, _ in pairs}
    return pairs


def enumerate_relation(net, max_len, probes=PROBES):
    """Like :func:`enumerate_language` but always returns pairs."""
    return _walk(net, max_len, probes)


def _longer_than(net, bound):
    """True if the automaton accepts some string longer than ``bound``."""
    rev = {}
    for q, arcs in enumerate(net.arcs):
        for _, _, t in arcs:
            rev.setdefault(t, set()).add(q)
    useful = set(net.finals)
    stack = list(net.finals)
    while stack:
        q = stack.pop()
        for p in rev.get(q, ()):
            if p not in useful:
                useful.add(p)
                stack.append(p)
    if net.start not in useful:
        return False
    cap = bound + 1
    seen = {(net.start, 0)}
    stack = [(net.start, 0)]
    while stack:
        q, k = stack.pop()
        if k >= cap:
            return True
        for u, l, t in net.arcs[q]:
            if t not in useful:
                continue
            cfg = (t, k + (0 if u == EPSILON else 1))
            if cfg not in seen:
                seen.add(cfg)
                stack.append(cfg)
    return False


def action_strings(net, bound, probes=PROBES):
    if _longer_than(net, bound):
        raise ActionLanguageInfinite(f"language has strings longer than {bound}")
    return sorted(enumerate_language(net, bound, probes))


class Rewriter:
    """Directed rewriting for one rule (or parallel rule list), by string surgery.

    Action languages are enumerated once; calling the rewriter on a word
    returns the set of output strings as tuples of symbol names.
    """

    def __init__(self, spec, bound=6, probes=PROBES):
        self.rules = list(spec) if isinstance(spec, (list, tuple)) else [spec]
        first = self.rules[0]
        self.direction, self.length = first.direction, first.length
        self.matchers = _matchers([r.upper for r in self.rules])
        self.actions = []
        for r in self.rules:
            if r.is_markup:
                self.actions.append((None, action_strings(r.prefix, bound, probes),
                                     action_strings(r.suffix, bound, probes)))
            else:
                self.actions.append((action_strings(r.lower, bound, probes), None, None))

    def spans(self, w):
        return match_spans(self.matchers, w, self.direction, self.length)

    def __call__(self, w):
        w = list(w)
        outputs = {()}
        for s in self.spans(w):
            seg = tuple(w[s.start:s.end])
            if not s.matched:
                choices = {seg}
            else:
                choices = set()
                for m, (lowers, prefixes, suffixes) in zip(self.matchers, self.actions):
                    if not m.accepts(seg):
                        continue
                    if lowers is not None:
                        choices.update(lowers)
                    else:
                        choices.update(p + seg + x for p in prefixes for x in suffixes)
            outputs = {o + c for o in outputs for c in choices}
        return outputs


def rewrite(spec, w, bound=6, probes=PROBES):
    """Apply a directed rule (or list of parallel rules) by string surgery.

    Returns the set of output strings as tuples of symbol names.
    """
    return Rewriter(spec, bound, probes)(w)


@dataclass
class EquivalenceReport:
    equivalent: bool
    max_len: int
    counterexamples: list = field(default_factory=list)

    def __bool__(self):
        return self.equivalent


def assert_equivalent(a, b, max_len, probes=PROBES):
    """Compare two networks by exhaustive enumeration up to ``max_len``."""
    ea = enumerate_relation(a, max_len, probes)
    eb = enumerate_relation(b, max_len, probes)
    diff = sorted(ea ^ eb)
    examples = []
    for up, low in diff[:10]:
        side = "left" if (up, low) in ea else "right"
        examples.append((" ".join(up), " ".join(low), side))
    return EquivalenceReport(not diff, max_len, examples)
