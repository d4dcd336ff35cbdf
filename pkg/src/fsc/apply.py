"""Running compiled networks on text."""

from dataclasses import dataclass

from .alphabet import EPSILON, OTHER, OTHER_NEQ
from .errors import AmbiguousOutput
from .network import Network, inverse

# how an unknown output symbol with no input counterpart is shown
UNKNOWN_OUTPUT = "?"


@dataclass(frozen=True)
class InputTokenization:
    """Input split into symbols; ``pieces[i]`` is the raw text of ``ids[i]``.

    Characters that match no symbol of the network are bound to OTHER and
    keep their own text in ``pieces``.
    """
    ids: tuple
    pieces: tuple

    def render(self):
        return "".join(self.pieces)

    def __len__(self):
        return len(self.ids)


def tokenize_input(net: Network, text: str) -> InputTokenization:
    """Greedy longest-match segmentation of ``text`` into ``net``'s symbols."""
    name = net.table.name
    by_first = {}
    for sid in net.sigma:
        spelled = name(sid)
        by_first.setdefault(spelled[0], []).append((spelled, sid))
    for cands in by_first.values():
        cands.sort(key=lambda c: -len(c[0]))
    ids, pieces = [], []
    i = 0
    while i < len(text):
        for spelled, sid in by_first.get(text[i], ()):
            if text.startswith(spelled, i):
                ids.append(sid)
                pieces.append(spelled)
                i += len(spelled)
                break
        else:
            ids.append(OTHER)
            pieces.append(text[i])
            i += 1
    return InputTokenization(tuple(ids), tuple(pieces))


def symbols_input(net: Network, names) -> InputTokenization:
    """Tokenization from an explicit sequence of symbol names."""
    ids = []
    for n in names:
        sid = net.table.lookup(n)
        ids.append(sid if sid is not None and sid in net.sigma else OTHER)
    return InputTokenization(tuple(ids), tuple(names))


@dataclass(frozen=True)
class ApplyResult:
    """Distinct outputs as tuples of symbol names, in sorted order."""
    outputs: tuple
    truncated: bool = False

    def texts(self, render=None):
        render = render or {}
        return ["".join(render.get(s, s) for s in out) for out in self.outputs]

    def __len__(self):
        return len(self.outputs)

    def __iter__(self):
        return iter(self.texts())

    def __contains__(self, text):
        return text in self.texts()


def _as_tokens(net, data):
    if isinstance(data, InputTokenization):
        return data
    if isinstance(data, str):
        return tokenize_input(net, data)
    return symbols_input(net, list(data))


def apply_down(net: Network, data, limit: int = 1000) -> ApplyResult:
    """All lower-side strings of paths whose upper side is ``data``.

    ``data`` is raw text, a list of symbol names, or an
    :class:`InputTokenization`.  Epsilon-input cycles are cut: within one
    input position a path never revisits a state.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    tokens = _as_tokens(net, data)
    name = net.table.name
    # output prefixes are hash-consed: node id -> (parent id, symbol name)
    nodes = [None]
    node_ids = {}

    def extend(node, sym):
        key = (node, sym)
        nid = node_ids.get(key)
        if nid is None:
            nid = node_ids[key] = len(nodes)
            nodes.append(key)
        return nid

    def out_symbol(lower, piece):
        if lower == OTHER:
            return piece if piece is not None else UNKNOWN_OUTPUT
        if lower == OTHER_NEQ:
            return UNKNOWN_OUTPUT
        return name(lower)

    def closure(configs):
        seen = set(configs)
        stack = [(q, node, frozenset([q])) for q, node in configs]
        while stack:
            q, node, path = stack.pop()
            for u, l, t in net.arcs[q]:
                if u != EPSILON or t in path:
                    continue
                nxt = node if l == EPSILON else extend(node, out_symbol(l, None))
                if (t, nxt) not in seen:
                    seen.add((t, nxt))
                    stack.append((t, nxt, path | {t}))
        return seen

    configs = closure({(net.start, 0)})
    for sid, piece in zip(tokens.ids, tokens.pieces):
        step = set()
        for q, node in configs:
            for u, l, t in net.arcs[q]:
                if u != sid:
                    continue
                if l == EPSILON:
                    step.add((t, node))
                elif sid == OTHER and l == OTHER:
                    step.add((t, extend(node, piece)))
                else:
                    step.add((t, extend(node, out_symbol(l, None))))
        if not step:
            return ApplyResult(())
        configs = closure(step)

    def materialize(nid):
        out = []
        while nid:
            parent, sym = nodes[nid]
            out.append(sym)
            nid = parent
        return tuple(reversed(out))

    results = sorted({materialize(node) for q, node in configs if q in net.finals})
    truncated = len(results) > limit
    return ApplyResult(tuple(results[:limit]), truncated)


def apply_up(net: Network, data, limit: int = 1000) -> ApplyResult:
    return apply_down(inverse(net), data, limit)


def down(net: Network, data, limit: int = 1000, render=None) -> set:
    """Set of rendered output strings; a convenience over :func:`apply_down`."""
    return set(apply_down(net, data, limit).texts(render))


@dataclass
class StreamStats:
    chunks: int = 0
    symbols_in: int = 0
    symbols_out: int = 0


def transduce_stream(net: Network, reader, writer, render=None, all_outputs=False,
                     up=False, limit=1000) -> StreamStats:
    """Apply ``net`` line by line; each line must have exactly one output.

    With ``all_outputs`` every output is written on its own line prefixed by
    a tab, and ambiguity is not an error.
    """
    if up:
        net = inverse(net)
    stats = StreamStats()
    for line in reader:
        newline = line.endswith("\n")
        chunk = line[:-1] if newline else line
        stats.chunks += 1
        tokens = tokenize_input(net, chunk)
        stats.symbols_in += len(tokens)
        result = apply_down(net, tokens, limit)
        texts = result.texts(render)
        if all_outputs:
            for out, text in zip(result.outputs, texts):
                stats.symbols_out += len(out)
                writer.write("\t" + text + "\n")
            continue
        if len(result) != 1:
            raise AmbiguousOutput(stats.chunks, len(result))
        stats.symbols_out += len(result.outputs[0])
        writer.write(texts[0] + ("\n" if newline else ""))
    return stats
