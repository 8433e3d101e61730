"""Simple undirected graphs, exact degree statistics, graph6 I/O and generators.

Adjacency is one integer bitmask per vertex, which keeps graphs hashable and
cheap to build from the edge masks produced by labeled enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

MAX_N = 62
MAX_LABELED_N = 8

GRAPH6_HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"vertex count must be in [1, {MAX_N}], got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError("need one adjacency row per vertex")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {u} references vertices >= n")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
            for v in _bits(row):
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    @property
    def m(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def neighbors(self, u: int) -> list[int]:
        return list(_bits(self.rows[u]))

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for root in range(self.n):
            if color[root] >= 0:
                continue
            color[root] = 0
            stack = [root]
            while stack:
                u = stack.pop()
                for v in _bits(self.rows[u]):
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        stack.append(v)
                    elif color[v] == color[u]:
                        return False
        return True

    def __str__(self) -> str:
        return emit_graph6(self).decode("ascii")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class DegreeStats:
    degrees: tuple[int, ...]
    m: int
    d: Fraction
    delta_min: int
    delta_max: int
    s: Fraction

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def psi(self) -> Fraction:
        return min(self.d, self.n - 1 - self.d)


def degree_stats(g: Graph) -> DegreeStats:
    degs = tuple(g.degrees())
    total = sum(degs)
    d = Fraction(total, g.n)
    s = sum((abs(k - d) for k in degs), Fraction(0))
    return DegreeStats(degs, total // 2, d, min(degs), max(degs), s)


# graph6 ---------------------------------------------------------------------


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one short-form graph6 line (optional ``>>graph6<<`` header)."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    start = 0
    if data.startswith(GRAPH6_HEADER):
        start = len(GRAPH6_HEADER)
    if start == len(data):
        raise Graph6Error("empty input", start)
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"byte {data[i]!r} outside printable graph6 range", i)
    n = data[start] - 63
    if n == 63:
        raise Graph6Error(f"long-form header unsupported (n > {MAX_N})", start)
    if n < 1:
        raise Graph6Error("graph with zero vertices", start)
    nbits = n * (n - 1) // 2
    body = data[start + 1:]
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}",
                          start + 1 + min(len(body), need))
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need:
        pad = 6 * need - nbits
        if (body[-1] - 63) & ((1 << pad) - 1):
            raise Graph6Error("nonzero padding bits", start + need)
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> bytes:
    if g.n > MAX_N:
        raise ValueError(f"short-form graph6 needs n <= {MAX_N}")
    out = bytearray([g.n + 63])
    acc = nacc = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.rows[i] >> j & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out)


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Yield ``(line_number, graph_or_error)``; blank lines are skipped."""
    for lineno, line in enumerate(lines, 1):
        raw = line.encode("ascii", "replace") if isinstance(line, str) else line
        raw = raw.strip()
        if not raw:
            continue
        try:
            yield lineno, parse_graph6(raw)
        except Graph6Error as exc:
            yield lineno, exc


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse ``u v`` lines (0-indexed); ``#`` starts a comment."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    return Graph.from_edges(n, edges)


# labeled enumeration --------------------------------------------------------


def pair_index(n: int) -> list[tuple[int, int]]:
    """Bit k of an edge mask is the k-th pair in graph6 (column-major) order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int) -> Graph:
    rows = [0] * n
    for k, (i, j) in enumerate(pair_index(n)):
        if mask >> k & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def labeled_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def enumerate_labeled(n: int, visit: Callable[[Graph], object],
                      start: int = 0, stop: int | None = None) -> int:
    """Call ``visit`` on every labeled graph whose edge mask lies in [start, stop).

    The default range covers all ``2**(n(n-1)/2)`` graphs; callers split the
    range to partition work.
    """
    if not 1 <= n <= MAX_LABELED_N:
        raise ValueError(f"labeled enumeration supports 1 <= n <= {MAX_LABELED_N}")
    total = labeled_count(n)
    stop = total if stop is None else min(stop, total)
    if not 0 <= start <= stop:
        raise ValueError("need 0 <= start <= stop")
    pairs = pair_index(n)
    count = 0
    for mask in range(start, stop):
        rows = [0] * n
        k = mask
        idx = 0
        while k:
            if k & 1:
                i, j = pairs[idx]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k >>= 1
            idx += 1
        visit(Graph(n, tuple(rows)))
        count += 1
    return count


# extremal families ----------------------------------------------------------

FAMILIES = ("union_clique", "join_clique", "semiregular_bipartite", "complete",
            "empty", "star", "path", "cycle")


def make_family(family: str, params: Sequence[int]) -> Graph:
    """Build a named graph.

    union_clique(n, q)          K_q plus n-q isolated vertices
    join_clique(n, t)           K_t joined to n-t independent vertices
    semiregular_bipartite(a, b) K_{a,b}; first a vertices have degree b
    complete(n), empty(n), path(n), cycle(n)
    star(n)                     K_{1,n-1}, centre is vertex 0
    """
    p = list(params)

    def need(k):
        if len(p) != k:
            raise ValueError(f"{family} takes {k} parameter(s), got {len(p)}")

    if family == "union_clique":
        need(2)
        n, q = p
        if not 0 <= q <= n:
            raise ValueError("union_clique needs 0 <= q <= n")
        return Graph.from_edges(n, combinations(range(q), 2))
    if family == "join_clique":
        need(2)
        n, t = p
        if not 0 <= t <= n:
            raise ValueError("join_clique needs 0 <= t <= n")
        edges = [(u, v) for u in range(t) for v in range(u + 1, n)]
        return Graph.from_edges(n, edges)
    if family == "semiregular_bipartite":
        need(2)
        a, b = p
        if a < 1 or b < 1:
            raise ValueError("semiregular_bipartite needs part sizes >= 1")
        return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])
    if family in ("complete", "empty", "star", "path", "cycle"):
        need(1)
        (n,) = p
        if family == "complete":
            return Graph.from_edges(n, combinations(range(n), 2))
        if family == "empty":
            return Graph.from_edges(n, [])
        if family == "star":
            return Graph.from_edges(n, [(0, v) for v in range(1, n)])
        if family == "path":
            return Graph.from_edges(n, [(u, u + 1) for u in range(n - 1)])
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph.from_edges(n, [(u, (u + 1) % n) for u in range(n)])
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
