"""graph6 codec (short header form only, n <= 32)."""
from typing import Iterable, Iterator

from src.errors import Graph6FormatError
from src.graph import MAX_VERTICES, Graph

_HEADER = ">>graph6<<"


def _edge_byte_count(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def from_graph6(text: str) -> Graph:
    """Decode one graph6 string.

    The upper triangle is read column by column: (0,1), (0,2), (1,2), (0,3), ...
    six bits per byte, most significant first, each byte offset by 63.
    """
    raw = text.strip()
    if raw.startswith(_HEADER):
        raw = raw[len(_HEADER):]
    if not raw:
        raise Graph6FormatError("empty graph6 string", text)
    codes = [ord(ch) for ch in raw]
    for code in codes:
        if not 63 <= code <= 126:
            raise Graph6FormatError(f"byte {code} outside the printable range 63..126", text)
    n = codes[0] - 63
    if n > 62:
        raise Graph6FormatError("extended (n > 62) headers are not supported", text)
    if n > MAX_VERTICES:
        raise Graph6FormatError(f"{n} vertices exceeds the cap of {MAX_VERTICES}", text)
    expected = _edge_byte_count(n)
    if len(codes) - 1 != expected:
        raise Graph6FormatError(
            f"expected {expected} edge bytes for n={n}, got {len(codes) - 1}", text
        )

    bits = 0
    for code in codes[1:]:
        bits = (bits << 6) | (code - 63)
    total = 6 * expected
    pairs = n * (n - 1) // 2
    if bits & ((1 << (total - pairs)) - 1):
        raise Graph6FormatError("non-zero padding bits", text)

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (bits >> (total - 1 - k)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def to_graph6(graph: Graph) -> str:
    n = graph.n
    bits = 0
    for j in range(1, n):
        column = graph.adj[j]
        for i in range(j):
            bits = (bits << 1) | ((column >> i) & 1)
    count = _edge_byte_count(n)
    bits <<= 6 * count - n * (n - 1) // 2
    out = [chr(63 + n)]
    for k in range(count - 1, -1, -1):
        out.append(chr(63 + ((bits >> (6 * k)) & 0x3F)))
    return "".join(out)


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Graphs from a graph6 stream such as geng output; blank lines are skipped."""
    for line in lines:
        line = line.strip()
        if not line or line == _HEADER:
            continue
        yield from_graph6(line)
