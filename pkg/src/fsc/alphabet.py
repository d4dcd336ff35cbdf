"""Symbol interning and the reserved special symbols.

Every network refers to symbols by small integer ids handed out by a
:class:`SymbolTable`.  The first few ids are reserved and can never be
produced by :meth:`SymbolTable.intern`, so no user expression can spell an
auxiliary mark used inside the replace constructions.

The OTHER symbol stands for "any symbol outside the network's sigma".  On
arcs it appears in these shapes:

* ``(OTHER, OTHER)``      any unknown symbol mapped to itself (``OTHER_ID``)
* ``(OTHER, OTHER_NEQ)``  an unknown symbol mapped to a *different* unknown
                          symbol (``OTHER_PAIR``)
* ``(OTHER, y)``          any unknown symbol mapped to the known ``y`` or to 0
* ``(x, OTHER)``          known ``x`` (or 0) mapped to any unknown symbol
"""

import threading

from .errors import EmptyName, ReservedName

EPSILON = 0
OTHER = 1
BOUNDARY = 2
CARET = 3
LBRACKET = 4
RBRACKET = 5
OTHER_NEQ = 6

FIRST_USER_ID = 7

OTHER_ID = (OTHER, OTHER)
OTHER_PAIR = (OTHER, OTHER_NEQ)

AUXILIARIES = frozenset({CARET, LBRACKET, RBRACKET})
# symbols that never belong to sigma; they are arc-label notation only
NOTATION = frozenset({EPSILON, OTHER, OTHER_NEQ})

RESERVED_SPELLINGS = {
    EPSILON: "@0@",
    OTHER: "@?@",
    BOUNDARY: "@#@",
    CARET: "@^@",
    LBRACKET: "@<@",
    RBRACKET: "@>@",
    OTHER_NEQ: "@?!@",
}


class SymbolTable:
    """Append-only bidirectional map between symbol names and ids."""

    def __init__(self):
        self._lock = threading.Lock()
        self._names = [RESERVED_SPELLINGS[i] for i in range(FIRST_USER_ID)]
        self._ids = {}

    def intern(self, name: str) -> int:
        if not isinstance(name, str) or name == "":
            raise EmptyName("symbol names must be nonempty strings")
        sid = self._ids.get(name)
        if sid is not None:
            return sid
        if name in _RESERVED_NAMES:
            raise ReservedName(f"{name!r} is a reserved spelling")
        with self._lock:
            sid = self._ids.get(name)
            if sid is None:
                sid = len(self._names)
                self._names.append(name)
                self._ids[name] = sid
        return sid

    def lookup(self, name: str):
        """Return the id of an already interned name, or None."""
        if name in _RESERVED_NAMES:
            return _RESERVED_NAMES[name]
        return self._ids.get(name)

    def name(self, sid: int) -> str:
        return self._names[sid]

    def __len__(self):
        return len(self._names)

    def __contains__(self, name):
        return name in self._ids

    def user_symbols(self):
        return list(self._names[FIRST_USER_ID:])


_RESERVED_NAMES = {v: k for k, v in RESERVED_SPELLINGS.items()}

DEFAULT_TABLE = SymbolTable()


def intern_symbol(table: SymbolTable, name: str) -> int:
    return table.intern(name)


def is_unknown(sym: int) -> bool:
    return sym == OTHER or sym == OTHER_NEQ


def expand_label(label, new_symbols):
    """Explicit labels that ``label`` gains when ``new_symbols`` join sigma.

    The returned labels, together with ``label`` itself (whose OTHER now
    excludes ``new_symbols``), denote the same set of symbol pairs as
    ``label`` did over the smaller sigma.
    """
    upper, lower = label
    if upper != OTHER and lower != OTHER:
        return []
    if label == OTHER_ID:
        return [(s, s) for s in new_symbols]
    if label == OTHER_PAIR:
        out = []
        for s in new_symbols:
            out.append((s, OTHER))
            out.append((OTHER, s))
            out.extend((s, t) for t in new_symbols if t != s)
        return out
    if upper == OTHER:
        return [(s, lower) for s in new_symbols]
    return [(upper, s) for s in new_symbols]


def harmonize(a, b):
    """Rewrite ``a`` and ``b`` over the union of their alphabets.

    OTHER arcs of each network get explicit parallels for the symbols only
    the other network knows, so the relations denoted over the infinite
    total alphabet stay the same.
    """
    if a.table is not b.table:
        raise ValueError("networks must share one SymbolTable")
    if a.sigma == b.sigma:
        return a, b
    return a.extend_sigma(b.sigma - a.sigma), b.extend_sigma(a.sigma - b.sigma)
