"""Finite-state networks and the classical algorithms over them.

A :class:`Network` is an immutable transducer whose arcs carry symbol pairs.
An automaton is simply a network in which every pair is an identity pair.
Every operation returns a fresh network; operands are never mutated.
"""

from .alphabet import (
    BOUNDARY,
    DEFAULT_TABLE,
    EPSILON,
    NOTATION,
    OTHER,
    OTHER_ID,
    OTHER_NEQ,
    OTHER_PAIR,
    SymbolTable,
    expand_label,
    harmonize,
    is_unknown,
)
from .errors import NotAnAutomaton

EPS_PAIR = (EPSILON, EPSILON)


class Network:
    """A finite-state transducer over a shared :class:`SymbolTable`.

    ``arcs[q]`` is a sorted tuple of ``(upper, lower, target)`` triples.
    ``sigma`` holds the symbols the network knows explicitly; OTHER on an
    arc ranges over everything outside it.
    """

    __slots__ = ("table", "start", "finals", "arcs", "sigma",
                 "is_deterministic", "is_minimized", "_automaton")

    def __init__(self, table, arcs, start=0, finals=(), sigma=(),
                 deterministic=False, minimized=False):
        self.table = table
        self.arcs = tuple(tuple(sorted(set(state_arcs))) for state_arcs in arcs)
        if not self.arcs:
            self.arcs = ((),)
        n = len(self.arcs)
        if not 0 <= start < n:
            raise ValueError(f"start state {start} out of range")
        self.start = start
        self.finals = frozenset(finals)
        syms = set(sigma)
        for state_arcs in self.arcs:
            for u, l, t in state_arcs:
                if not 0 <= t < n:
                    raise ValueError(f"arc target {t} out of range")
                syms.add(u)
                syms.add(l)
        self.sigma = frozenset(syms - NOTATION)
        self.is_deterministic = deterministic
        self.is_minimized = minimized
        self._automaton = None

    def __setattr__(self, name, value):
        if hasattr(self, "_automaton") and name != "_automaton":
            raise AttributeError("Network is immutable")
        object.__setattr__(self, name, value)

    @property
    def num_states(self):
        return len(self.arcs)

    @property
    def num_arcs(self):
        return sum(len(a) for a in self.arcs)

    @property
    def is_automaton(self):
        if self._automaton is None:
            object.__setattr__(self, "_automaton", all(
                u == l for state_arcs in self.arcs for u, l, _ in state_arcs))
        return self._automaton

    def labels(self):
        return sorted({(u, l) for state_arcs in self.arcs for u, l, _ in state_arcs})

    def is_final(self, q):
        return q in self.finals

    def extend_sigma(self, symbols):
        """Same relation, with ``symbols`` moved out of OTHER into sigma."""
        new = sorted(set(symbols) - self.sigma - NOTATION)
        if not new:
            return self
        arcs = []
        for state_arcs in self.arcs:
            out = list(state_arcs)
            for u, l, t in state_arcs:
                out.extend((eu, el, t) for eu, el in expand_label((u, l), new))
            arcs.append(out)
        return Network(self.table, arcs, self.start, self.finals,
                       self.sigma | set(new))

    def declare(self, symbols):
        """Add ``symbols`` to sigma *without* expanding OTHER.

        Unlike :meth:`extend_sigma` this changes the relation: OTHER stops
        matching the declared symbols.  The replace constructions use it to
        keep user patterns from ever matching an auxiliary mark.
        """
        if set(symbols) <= self.sigma:
            return self
        return Network(self.table, self.arcs, self.start, self.finals,
                       self.sigma | set(symbols), self.is_deterministic)

    def without_sigma(self, symbols):
        """Drop symbols that no arc mentions from sigma."""
        used = {s for state_arcs in self.arcs for u, l, _ in state_arcs for s in (u, l)}
        drop = set(symbols) - used
        if not drop & self.sigma:
            return self
        return Network(self.table, self.arcs, self.start, self.finals,
                       self.sigma - drop, self.is_deterministic, self.is_minimized)

    def symbol_name(self, sid):
        return self.table.name(sid)

    def __repr__(self):
        kind = "automaton" if self.is_automaton else "transducer"
        return f"<Network {kind} states={self.num_states} arcs={self.num_arcs} sigma={len(self.sigma)}>"


def _require_automaton(*nets):
    for n in nets:
        if not n.is_automaton:
            raise NotAnAutomaton("operation is only defined for automata (identity relations)")


def _union_sigma(*nets):
    out = frozenset()
    for n in nets:
        out |= n.sigma
    return out


# -- constructors ----------------------------------------------------------

def empty_language(table=DEFAULT_TABLE, sigma=()):
    return Network(table, [()], 0, (), sigma, deterministic=True, minimized=True)


def empty_string(table=DEFAULT_TABLE):
    return Network(table, [()], 0, (0,), (), deterministic=True, minimized=True)


def atom(pair, table=DEFAULT_TABLE):
    """Two-state network accepting exactly the symbol pair ``pair``."""
    upper, lower = pair
    if upper == BOUNDARY and lower == BOUNDARY:
        raise ValueError("a boundary pair cannot be an atom")
    if pair == EPS_PAIR:
        return empty_string(table)
    return Network(table, [((upper, lower, 1),), ()], 0, (1,))


def symbol(name, table=DEFAULT_TABLE):
    sid = table.intern(name)
    return atom((sid, sid), table)


def any_symbol(table=DEFAULT_TABLE):
    return atom(OTHER_ID, table)


def universal(table=DEFAULT_TABLE):
    """``?*``: every string over any alphabet."""
    return Network(table, [((OTHER, OTHER, 0),)], 0, (0,), deterministic=True, minimized=True)


def string_acceptor(names, table=DEFAULT_TABLE):
    """Acceptor for the single string spelled by the symbol names ``names``."""
    ids = [table.intern(n) for n in names]
    arcs = [((s, s, i + 1),) for i, s in enumerate(ids)] + [()]
    return Network(table, arcs, 0, (len(ids),))


def symbol_set(ids, table=DEFAULT_TABLE):
    """Acceptor for the one-symbol strings whose ids are in ``ids``."""
    return Network(table, [tuple((s, s, 1) for s in ids), ()], 0, (1,), ids)


def label_set(labels, table=DEFAULT_TABLE, sigma=()):
    """Network accepting exactly the one-arc paths with the given labels."""
    return Network(table, [tuple((u, l, 1) for u, l in labels), ()], 0, (1,), sigma)


# -- structural helpers ----------------------------------------------------

def _combine(nets, extra_states=0):
    """Lay out several networks side by side; return arcs and offsets."""
    arcs = [[] for _ in range(extra_states)]
    offsets = []
    for n in nets:
        off = len(arcs)
        offsets.append(off)
        for state_arcs in n.arcs:
            arcs.append([(u, l, t + off) for u, l, t in state_arcs])
    return arcs, offsets


def trim(net):
    """Drop states that are unreachable or cannot reach a final state."""
    n = net.num_states
    fwd = {net.start}
    stack = [net.start]
    while stack:
        q = stack.pop()
        for _, _, t in net.arcs[q]:
            if t not in fwd:
                fwd.add(t)
                stack.append(t)
    rev = [[] for _ in range(n)]
    for q, state_arcs in enumerate(net.arcs):
        for _, _, t in state_arcs:
            rev[t].append(q)
    bwd = set(net.finals)
    stack = list(net.finals)
    while stack:
        q = stack.pop()
        for p in rev[q]:
            if p not in bwd:
                bwd.add(p)
                stack.append(p)
    live = fwd & bwd
    if net.start not in live:
        return empty_language(net.table, net.sigma)
    if len(live) == n:
        return net
    order = sorted(live)
    order.remove(net.start)
    order.insert(0, net.start)
    index = {q: i for i, q in enumerate(order)}
    arcs = [[(u, l, index[t]) for u, l, t in net.arcs[q] if t in index] for q in order]
    return Network(net.table, arcs, 0, [index[q] for q in net.finals if q in index],
                   net.sigma, net.is_deterministic)


def _eps_closure(net, q, cache):
    if q in cache:
        return cache[q]
    seen = {q}
    stack = [q]
    while stack:
        p = stack.pop()
        for u, l, t in net.arcs[p]:
            if u == EPSILON and l == EPSILON and t not in seen:
                seen.add(t)
                stack.append(t)
    cache[q] = frozenset(seen)
    return cache[q]


def remove_epsilons(net):
    """Equivalent network without ``0:0`` arcs."""
    if not any(u == EPSILON and l == EPSILON for a in net.arcs for u, l, _ in a):
        return net
    cache = {}
    arcs = []
    finals = []
    for q in range(net.num_states):
        closure = _eps_closure(net, q, cache)
        out = set()
        for p in closure:
            for u, l, t in net.arcs[p]:
                if not (u == EPSILON and l == EPSILON):
                    out.add((u, l, t))
        arcs.append(out)
        if closure & net.finals:
            finals.append(q)
    return trim(Network(net.table, arcs, net.start, finals, net.sigma))


# -- regular operations ----------------------------------------------------

def union(*nets):
    if not nets:
        raise ValueError("union of no networks")
    nets = _harmonize_all(nets)
    if len(nets) == 1:
        return nets[0]
    arcs, offsets = _combine(nets, extra_states=1)
    arcs[0] = [(EPSILON, EPSILON, off + n.start) for n, off in zip(nets, offsets)]
    finals = [f + off for n, off in zip(nets, offsets) for f in n.finals]
    return trim(remove_epsilons(Network(nets[0].table, arcs, 0, finals, _union_sigma(*nets))))


def concat(*nets):
    if not nets:
        raise ValueError("concatenation of no networks")
    nets = _harmonize_all(nets)
    if len(nets) == 1:
        return nets[0]
    arcs, offsets = _combine(nets)
    for i in range(len(nets) - 1):
        nxt = offsets[i + 1] + nets[i + 1].start
        for f in nets[i].finals:
            arcs[f + offsets[i]].append((EPSILON, EPSILON, nxt))
    finals = [f + offsets[-1] for f in nets[-1].finals]
    return trim(remove_epsilons(Network(nets[0].table, arcs, offsets[0] + nets[0].start,
                                        finals, _union_sigma(*nets))))


def star(net):
    arcs, _ = _combine([net], extra_states=1)
    arcs[0] = [(EPSILON, EPSILON, net.start + 1)]
    for f in net.finals:
        arcs[f + 1].append((EPSILON, EPSILON, 0))
    return trim(remove_epsilons(Network(net.table, arcs, 0, [0], net.sigma)))


def plus(net):
    return concat(net, star(net))


def optional(net):
    return union(net, empty_string(net.table))


def reverse(net):
    arcs = [[] for _ in range(net.num_states + 1)]
    for q, state_arcs in enumerate(net.arcs):
        for u, l, t in state_arcs:
            arcs[t + 1].append((u, l, q + 1))
    arcs[0] = [(EPSILON, EPSILON, f + 1) for f in net.finals]
    return trim(remove_epsilons(Network(net.table, arcs, 0, [net.start + 1], net.sigma)))


def inverse(net):
    arcs = [[(u, l, t) if (u, l) == OTHER_PAIR else (l, u, t) for u, l, t in state_arcs]
            for state_arcs in net.arcs]
    return Network(net.table, arcs, net.start, net.finals, net.sigma)


def project(net, side="upper"):
    """Upper- or lower-side language as an automaton."""
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    arcs = []
    for state_arcs in net.arcs:
        out = []
        for u, l, t in state_arcs:
            s = u if side == "upper" else l
            if s == OTHER_NEQ:
                s = OTHER
            out.append((s, s, t))
        arcs.append(out)
    return trim(remove_epsilons(Network(net.table, arcs, net.start, net.finals, net.sigma)))


def relabel(net, mapping):
    """Substitute symbol ids on both sides of every arc."""
    arcs = [[(mapping.get(u, u), mapping.get(l, l), t) for u, l, t in state_arcs]
            for state_arcs in net.arcs]
    sigma = {mapping.get(s, s) for s in net.sigma}
    return trim(remove_epsilons(Network(net.table, arcs, net.start, net.finals, sigma - NOTATION)))


def _harmonize_all(nets):
    if len(nets) == 1:
        return list(nets)
    table = nets[0].table
    if any(n.table is not table for n in nets):
        raise ValueError("networks must share one SymbolTable")
    total = _union_sigma(*nets)
    return [n.extend_sigma(total - n.sigma) for n in nets]


# -- determinization and minimization -------------------------------------

def determinize(net):
    """Subset construction over whole pair labels."""
    if net.is_deterministic:
        return net
    net = remove_epsilons(net)
    start = frozenset([net.start])
    index = {start: 0}
    subsets = [start]
    arcs = []
    finals = []
    i = 0
    while i < len(subsets):
        subset = subsets[i]
        if subset & net.finals:
            finals.append(i)
        moves = {}
        for q in subset:
            for u, l, t in net.arcs[q]:
                moves.setdefault((u, l), set()).add(t)
        out = []
        for label in sorted(moves):
            target = frozenset(moves[label])
            j = index.get(target)
            if j is None:
                j = index[target] = len(subsets)
                subsets.append(target)
            out.append((label[0], label[1], j))
        arcs.append(out)
        i += 1
    return Network(net.table, arcs, 0, finals, net.sigma, deterministic=True)


def minimize(net):
    """Minimal deterministic network over pair labels, canonically numbered."""
    if net.is_minimized:
        return net
    dfa = trim(determinize(net))
    n = dfa.num_states
    block = [1 if q in dfa.finals else 0 for q in range(n)]
    count = len(set(block))
    while True:
        sigs = {}
        new_block = []
        for q in range(n):
            sig = (block[q], tuple((u, l, block[t]) for u, l, t in dfa.arcs[q]))
            new_block.append(sigs.setdefault(sig, len(sigs)))
        block = new_block
        if len(sigs) == count:
            break
        count = len(sigs)
    rep = {}
    for q in range(n):
        rep.setdefault(block[q], q)
    arcs = [[(u, l, block[t]) for u, l, t in dfa.arcs[rep[b]]] for b in range(count)]
    finals = {block[q] for q in dfa.finals}
    merged = Network(dfa.table, arcs, block[dfa.start], finals, dfa.sigma, deterministic=True)
    return _renumber_bfs(merged, minimized=True)


def _label_key(net, u, l):
    return (net.table.name(u), net.table.name(l))


def _renumber_bfs(net, minimized=False):
    """Renumber states in breadth-first order, arcs visited by label names."""
    order = [net.start]
    index = {net.start: 0}
    i = 0
    while i < len(order):
        q = order[i]
        for u, l, t in sorted(net.arcs[q], key=lambda a: (_label_key(net, a[0], a[1]), a[2])):
            if t not in index:
                index[t] = len(order)
                order.append(t)
        i += 1
    arcs = [[(u, l, index[t]) for u, l, t in net.arcs[q]] for q in order]
    return Network(net.table, arcs, 0, [index[f] for f in net.finals if f in index],
                   net.sigma, net.is_deterministic, minimized)


def canonical(net):
    """Name-based, table-independent description of the minimal network."""
    m = minimize(net)
    name = m.table.name
    arcs = tuple(tuple(sorted((name(u), name(l), t) for u, l, t in a)) for a in m.arcs)
    return (tuple(sorted(name(s) for s in m.sigma)), tuple(sorted(m.finals)), arcs)


def isomorphic(a, b):
    """True iff the minimized networks are identical up to state numbering."""
    a, b = _harmonize_all([a, b])
    return canonical(a) == canonical(b)


# -- boolean operations on automata ---------------------------------------

def _complete_labels(net):
    return [(s, s) for s in sorted(net.sigma)] + [OTHER_ID]


def complement(net):
    _require_automaton(net)
    dfa = determinize(net)
    labels = _complete_labels(dfa)
    n = dfa.num_states
    sink = n
    arcs = []
    for q in range(n):
        present = {(u, l) for u, l, _ in dfa.arcs[q]}
        out = list(dfa.arcs[q])
        out.extend((u, l, sink) for u, l in labels if (u, l) not in present)
        arcs.append(out)
    arcs.append([(u, l, sink) for u, l in labels])
    finals = [q for q in range(n + 1) if q not in dfa.finals]
    return trim(Network(net.table, arcs, dfa.start, finals, dfa.sigma, deterministic=True))


def _product(a, b):
    a, b = _harmonize_all([a, b])
    a = remove_epsilons(a)
    b = remove_epsilons(b)
    index = {(a.start, b.start): 0}
    pairs = [(a.start, b.start)]
    arcs = []
    finals = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        if p in a.finals and q in b.finals:
            finals.append(i)
        by_label = {}
        for u, l, t in b.arcs[q]:
            by_label.setdefault((u, l), []).append(t)
        out = []
        for u, l, t in a.arcs[p]:
            for t2 in by_label.get((u, l), ()):
                key = (t, t2)
                j = index.get(key)
                if j is None:
                    j = index[key] = len(pairs)
                    pairs.append(key)
                out.append((u, l, j))
        arcs.append(out)
        i += 1
    return trim(Network(a.table, arcs, 0, finals, a.sigma | b.sigma))


def intersect(a, b):
    _require_automaton(a, b)
    return _product(a, b)


def difference(a, b):
    _require_automaton(a, b)
    a, b = _harmonize_all([a, b])
    return _product(a, complement(b))


def contains(net):
    """``$A``: strings having a substring in A."""
    _require_automaton(net)
    u = universal(net.table)
    return concat(u, net, u)


def ignore(net, other, nonfinal=False):
    """``A/B``: A with strings of B freely interleaved.

    ``other`` is either a network or an iterable of symbol ids.  With
    ``nonfinal=True`` (symbol sets only) the interleaved symbols may not
    end the string.
    """
    _require_automaton(net)
    if isinstance(other, Network):
        _require_automaton(other)
        syms = _single_symbols(other)
        if syms is None:
            if nonfinal:
                raise ValueError("nonfinal ignore needs a set of single symbols")
            return _ignore_language(net, other)
    else:
        syms = frozenset(other)
    if not syms:
        return net
    net = net.extend_sigma(syms)
    if nonfinal:
        net = remove_epsilons(net)
    n = net.num_states
    if not nonfinal:
        arcs = [list(a) + [(s, s, q) for s in sorted(syms)] for q, a in enumerate(net.arcs)]
        return Network(net.table, arcs, net.start, net.finals, net.sigma)
    # states n..2n-1 are copies entered after an ignored symbol; never final
    arcs = []
    for copy in (0, 1):
        for q in range(n):
            out = [(u, l, t) for u, l, t in net.arcs[q]]
            out.extend((s, s, q + n) for s in sorted(syms))
            arcs.append(out)
    return trim(Network(net.table, arcs, net.start, net.finals, net.sigma))


def _single_symbols(net):
    """Symbols of a language of one-symbol strings, or None."""
    net = trim(remove_epsilons(net))
    if net.start in net.finals:
        return None
    syms = set()
    for u, l, t in net.arcs[net.start]:
        if u == OTHER or t not in net.finals or net.arcs[t]:
            return None
        syms.add(u)
    for q in range(net.num_states):
        if q != net.start and q not in net.finals:
            return None
    return frozenset(syms)


def _ignore_language(net, other):
    insert_other = crossproduct(empty_string(net.table), other)
    spread = star(union(any_symbol(net.table), insert_other))
    return project(compose(net, spread), "lower")


# -- relations -------------------------------------------------------------

def _cross_labels(x, y):
    if x == OTHER and y == OTHER:
        return [OTHER_ID, OTHER_PAIR]
    return [(x, y)]


def crossproduct(a, b):
    """``A .x. B``: every string of A paired with every string of B.

    Symbols are aligned one-to-one from the left; the longer side continues
    against 0, so ``[a b] .x. x`` is the path ``a:x b:0``.
    """
    _require_automaton(a, b)
    a, b = _harmonize_all([a, b])
    a = remove_epsilons(a)
    b = remove_epsilons(b)
    start = (a.start, b.start, 0)
    index = {start: 0}
    states = [start]
    arcs = []
    finals = []

    def visit(key):
        j = index.get(key)
        if j is None:
            j = index[key] = len(states)
            states.append(key)
        return j

    i = 0
    while i < len(states):
        p, q, mode = states[i]
        if p in a.finals and q in b.finals:
            finals.append(i)
        out = []
        if mode == 0:
            for x, _, pt in a.arcs[p]:
                for y, _, qt in b.arcs[q]:
                    j = visit((pt, qt, 0))
                    out.extend((u, l, j) for u, l in _cross_labels(x, y))
        if mode in (0, 1) and q in b.finals:
            for x, _, pt in a.arcs[p]:
                out.append((x, EPSILON, visit((pt, q, 1))))
        if mode in (0, 2) and p in a.finals:
            for y, _, qt in b.arcs[q]:
                out.append((EPSILON, y, visit((p, qt, 2))))
        arcs.append(out)
        i += 1
    return trim(Network(a.table, arcs, 0, finals, a.sigma | b.sigma))


def _compose_labels(x, y, z):
    """Labels for an ``x:y`` arc followed by a ``y':z`` arc that matched on y."""
    if not is_unknown(y):
        return _cross_labels(x, z)
    # the middle symbol is some unknown m
    if x == OTHER and is_unknown(z):
        x_eq = y == OTHER
        z_eq = z == OTHER
        if x_eq and z_eq:
            return [OTHER_ID]
        if x_eq or z_eq:
            return [OTHER_PAIR]
        return [OTHER_ID, OTHER_PAIR]
    return [(x, OTHER if is_unknown(z) else z)]


def compose(*nets):
    """``A .o. B``: relation composition with a three-mode epsilon filter."""
    if not nets:
        raise ValueError("composition of no networks")
    result = nets[0]
    for other in nets[1:]:
        result = _compose2(result, other)
    return result


def _compose2(a, b):
    a, b = _harmonize_all([a, b])
    a = remove_epsilons(a)
    b = remove_epsilons(b)
    by_upper = []
    for state_arcs in b.arcs:
        d = {}
        for u, l, t in state_arcs:
            d.setdefault(u, []).append((l, t))
        by_upper.append(d)
    start = (a.start, b.start, 0)
    index = {start: 0}
    states = [start]
    arcs = []
    finals = []

    def visit(key):
        j = index.get(key)
        if j is None:
            j = index[key] = len(states)
            states.append(key)
        return j

    i = 0
    while i < len(states):
        p, q, mode = states[i]
        if p in a.finals and q in b.finals:
            finals.append(i)
        out = []
        b_eps = by_upper[q].get(EPSILON, ())
        for x, y, pt in a.arcs[p]:
            if y == EPSILON:
                if mode in (0, 1):
                    out.append((x, EPSILON, visit((pt, q, 1))))
                if mode == 0:
                    for z, qt in b_eps:
                        out.append((x, z, visit((pt, qt, 0))))
                continue
            key = OTHER if is_unknown(y) else y
            for z, qt in by_upper[q].get(key, ()):
                j = visit((pt, qt, 0))
                out.extend((u, l, j) for u, l in _compose_labels(x, y, z))
        if mode in (0, 2):
            for z, qt in b_eps:
                out.append((EPSILON, z, visit((p, qt, 2))))
        arcs.append(out)
        i += 1
    return trim(remove_epsilons(Network(a.table, arcs, 0, finals, a.sigma | b.sigma)))


# -- text serialization ----------------------------------------------------

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", ",": "\\,", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", ",": ",", "r": "\r"}


def escape_name(name):
    return "".join(_ESCAPES.get(c, c) for c in name)


def unescape_name(text):
    out = []
    it = iter(text)
    for c in it:
        if c == "\\":
            nxt = next(it, None)
            if nxt not in _UNESCAPES:
                raise ValueError(f"bad escape in symbol name {text!r}")
            out.append(_UNESCAPES[nxt])
        else:
            out.append(c)
    return "".join(out)


def _split_sigma(text):
    items, cur, it = [], [], iter(text)
    for c in it:
        if c == "\\":
            cur.append(c)
            cur.append(next(it, ""))
        elif c == ",":
            items.append("".join(cur))
            cur = []
        else:
            cur.append(c)
    if cur:
        items.append("".join(cur))
    return [unescape_name(i) for i in items if i]


def to_text(net):
    """Serialize as ``#fsc1`` text: one arc per line, finals as ``state<TAB>``.

    States are renumbered breadth-first so that equal constructions give
    byte-identical output.
    """
    net = _renumber_bfs(net, net.is_minimized)
    name = net.table.name
    sigma = ",".join(escape_name(s) for s in sorted(name(x) for x in net.sigma))
    lines = [f"#fsc1 sigma={sigma}"]
    for q, state_arcs in enumerate(net.arcs):
        for u, l, t in sorted(state_arcs, key=lambda a: (name(a[0]), name(a[1]), a[2])):
            lines.append(f"{q}\t{t}\t{escape_name(name(u))}\t{escape_name(name(l))}")
    for f in sorted(net.finals):
        lines.append(f"{f}\t")
    return "\n".join(lines) + "\n"


def from_text(text, table=DEFAULT_TABLE):
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#fsc1"):
        raise ValueError("missing '#fsc1' header")
    header = lines[0][len("#fsc1"):].strip()
    if not header.startswith("sigma="):
        raise ValueError("header lacks sigma=")
    sigma = [_intern_any(table, s) for s in _split_sigma(header[len("sigma="):])]
    arcs = {}
    finals = []
    n = 1
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) == 2 and fields[1] == "":
            f = int(fields[0])
            finals.append(f)
            n = max(n, f + 1)
        elif len(fields) == 4:
            src, dst = int(fields[0]), int(fields[1])
            u = _intern_any(table, unescape_name(fields[2]))
            l = _intern_any(table, unescape_name(fields[3]))
            arcs.setdefault(src, []).append((u, l, dst))
            n = max(n, src + 1, dst + 1)
        else:
            raise ValueError(f"line {lineno}: expected 4 tab-separated fields or 'state<TAB>'")
    return Network(table, [arcs.get(q, ()) for q in range(n)], 0, finals, sigma)


def _intern_any(table, name):
    sid = table.lookup(name)
    return sid if sid is not None else table.intern(name)


__all__ = [
    "Network", "SymbolTable", "atom", "symbol", "any_symbol", "universal", "empty_language",
    "empty_string", "string_acceptor", "symbol_set", "label_set", "union", "concat", "star",
    "plus", "optional", "reverse", "inverse", "project", "relabel", "determinize", "minimize",
    "complement", "intersect", "difference", "contains", "ignore", "crossproduct", "compose",
    "trim", "remove_epsilons", "canonical", "isomorphic", "to_text", "from_text", "harmonize",
]
