"""Compiled-artifact files: a symbol table section followed by a network."""

import hashlib

from .alphabet import FIRST_USER_ID, SymbolTable
from .errors import ArtifactError
from .network import escape_name, from_text, to_text, unescape_name

HEADER = "#fsc-artifact 1"


def source_hash(source: str) -> str:
    return hashlib.sha256(source.encode("utf-8")).hexdigest()


def dumps(net, source: str = "") -> str:
    table = net.table
    names = [escape_name(table.name(s)) for s in sorted(net.sigma) if s >= FIRST_USER_ID]
    lines = [HEADER, f"#source-sha256 {source_hash(source)}", f"#symbols {len(names)}"]
    lines.extend(names)
    return "\n".join(lines) + "\n" + to_text(net)


def loads(text: str):
    """Parse an artifact into ``(network, source_hash)`` with a fresh symbol table."""
    lines = text.split("\n")
    if len(lines) < 3 or lines[0] != HEADER:
        raise ArtifactError("not an fsc artifact (bad header)")
    if not lines[1].startswith("#source-sha256 "):
        raise ArtifactError("artifact lacks the source hash line")
    digest = lines[1].split(" ", 1)[1]
    try:
        count = int(lines[2].removeprefix("#symbols "))
    except ValueError:
        raise ArtifactError("artifact lacks the symbols section") from None
    table = SymbolTable()
    try:
        for name in lines[3:3 + count]:
            table.intern(unescape_name(name))
        net = from_text("\n".join(lines[3 + count:]), table)
    except (ValueError, IndexError) as exc:
        raise ArtifactError(f"corrupt artifact: {exc}") from None
    return net, digest


def save(path, net, source=""):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(net, source))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
