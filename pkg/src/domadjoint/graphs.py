"""Immutable simple-graph type and graph6 text serialization.

Vertices are dense integer indices 0..n-1 and every per-vertex neighbor set
is packed into a Python int used as a bitmask, so set algebra on small graphs
is a handful of integer operations. Graphs with isolated vertices are
rejected at construction time: everything downstream assumes minimum degree
at least one, and failing fast here keeps that assumption out of the
algorithms.

graph6 is the only interchange format: one graph per line, printable ASCII,
characters 63..126, big-endian packing of the upper adjacency triangle in
column order (0,1),(0,2),(1,2),(0,3),... The parser is strict (canonical
size prefix, exact character count, zero padding bits).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import IsolatedVertex, MalformedGraph6, VertexOutOfRange

__all__ = ["Graph", "parse_graph6", "emit_graph6", "bits_of", "mask_of"]


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph without isolated vertices.

    ``adj[u]`` is the neighbor bitmask of vertex ``u``; ``edge_count`` is the
    number of undirected edges. Instances are immutable and hashable, hence
    safe to share across worker processes.
    """

    n: int
    adj: tuple[int, ...]
    edge_count: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        degree_sum = 0
        for u, row in enumerate(self.adj):
            if row >> self.n:
                raise ValueError(f"vertex {u} has a neighbor outside 0..{self.n - 1}")
            if (row >> u) & 1:
                raise ValueError(f"self-loop at vertex {u}")
            if row == 0:
                raise IsolatedVertex(f"vertex {u} has no neighbors")
            degree_sum += row.bit_count()
        for u, row in enumerate(self.adj):
            rest = row
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                if not (self.adj[v] >> u) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if degree_sum != 2 * self.edge_count:
            raise ValueError("edge_count does not match adjacency")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an undirected edge list (duplicates collapse)."""
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        edge_count = sum(m.bit_count() for m in masks) // 2
        return cls(n, tuple(masks), edge_count)

    def _check_vertex(self, u: int) -> None:
        if not (0 <= u < self.n):
            raise VertexOutOfRange(f"vertex {u} outside 0..{self.n - 1}")

    def neighbors(self, u: int) -> frozenset[int]:
        """Open neighborhood of ``u``; never contains ``u`` itself."""
        self._check_vertex(u)
        return frozenset(bits_of(self.adj[u]))

    def neighbor_mask(self, u: int) -> int:
        self._check_vertex(u)
        return self.adj[u]

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return self.adj[u].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, sorted."""
        out = []
        for u in range(self.n):
            higher = self.adj[u] >> (u + 1)
            for off in bits_of(higher):
                out.append((u, u + 1 + off))
        return out

    def induced_edges(self, members: Iterable[int]) -> int:
        """Number of edges with both endpoints in ``members``."""
        m = mask_of(members)
        if m >> self.n:
            raise VertexOutOfRange("member set contains out-of-range vertices")
        return sum((self.adj[v] & m).bit_count() for v in bits_of(m)) // 2


# graph6 size prefixes: one char for n <= 62, '~' + 3 chars for 63..258047.
_SHORT_MAX = 62
_LONG_MAX = 258047


def _decode_size(s: str) -> tuple[int, str]:
    first = ord(s[0])
    if first == 126:  # '~'
        if len(s) >= 2 and ord(s[1]) == 126:
            raise MalformedGraph6("vertex counts beyond 258047 are not supported")
        if len(s) < 4:
            raise MalformedGraph6("truncated long-form size prefix")
        vals = []
        for ch in s[1:4]:
            code = ord(ch)
            if not 63 <= code <= 126:
                raise MalformedGraph6(f"invalid character {ch!r} in size prefix")
            vals.append(code - 63)
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        if n <= _SHORT_MAX:
            raise MalformedGraph6("non-canonical long-form size prefix")
        return n, s[4:]
    if not 63 <= first <= 126:
        raise MalformedGraph6(f"invalid character {s[0]!r} in size prefix")
    return first - 63, s[1:]


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 line into a :class:`Graph`.

    Raises :class:`MalformedGraph6` for undecodable text and
    :class:`IsolatedVertex` for a valid encoding of a graph with a
    degree-zero vertex (a domain precondition, not a format error).
    """
    s = line.rstrip("\r\n")
    if not s:
        raise MalformedGraph6("empty line")
    n, body = _decode_size(s)
    if n == 0:
        raise MalformedGraph6("zero-vertex graph")
    if n == 1:
        # Decodes fine but a single vertex is necessarily isolated.
        if body:
            raise MalformedGraph6("trailing characters after edge bits")
        raise IsolatedVertex("vertex 0 has no neighbors")
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    if len(body) < nchars:
        raise MalformedGraph6("truncated edge bits")
    if len(body) > nchars:
        raise MalformedGraph6("trailing characters after edge bits")
    acc = 0
    for ch in body:
        code = ord(ch)
        if not 63 <= code <= 126:
            raise MalformedGraph6(f"invalid character {ch!r} in edge bits")
        acc = (acc << 6) | (code - 63)
    pad = nchars * 6 - nbits
    if pad and acc & ((1 << pad) - 1):
        raise MalformedGraph6("nonzero padding bits")
    acc >>= pad
    edges = []
    pos = nbits - 1  # acc holds bit k of the stream at position nbits-1-k
    for j in range(1, n):
        for i in range(j):
            if (acc >> pos) & 1:
                edges.append((i, j))
            pos -= 1
    return Graph.from_edges(n, edges)


def emit_graph6(g: Graph) -> str:
    """Encode a graph as one graph6 line (no trailing newline).

    The output is canonical for the given vertex labeling; no relabeling is
    performed, so ``parse_graph6(emit_graph6(g)) == g`` exactly.
    """
    n = g.n
    if n <= _SHORT_MAX:
        prefix = chr(n + 63)
    elif n <= _LONG_MAX:
        prefix = "~" + chr(((n >> 12) & 63) + 63) + chr(((n >> 6) & 63) + 63) + chr((n & 63) + 63)
    else:
        raise ValueError("graph too large for supported graph6 range")
    acc = 0
    nbits = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | ((g.adj[i] >> j) & 1)
    pad = (6 - nbits % 6) % 6
    acc <<= pad
    chars = []
    for k in range(((nbits + 5) // 6) - 1, -1, -1):
        chars.append(chr(((acc >> (6 * k)) & 63) + 63))
    return prefix + "".join(chars)
