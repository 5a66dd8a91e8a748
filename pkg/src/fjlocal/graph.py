"""Immutable CSR graph with forward and reverse adjacency.

An arc ``(i, j)`` means *i listens to j*: the FJ update at ``i`` averages over
the out-neighbours ``N_i`` and ``d_i`` is the out-degree.  For undirected
graphs both orientations are stored and the two adjacencies coincide.
"""
from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np


class EdgeListError(ValueError):
    """Raised for malformed or empty edge-list input."""


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    m: int
    directed: bool
    out_offsets: np.ndarray
    out_targets: np.ndarray
    in_offsets: np.ndarray
    in_targets: np.ndarray
    d: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("out_offsets", "out_targets", "in_offsets", "in_targets", "d"):
            getattr(self, name).setflags(write=False)

    @property
    def num_arcs(self) -> int:
        return int(self.out_offsets[-1])

    @property
    def d_max(self) -> int:
        return int(self.d.max()) if self.n else 0

    def out_neighbors(self, v: int) -> np.ndarray:
        self._check(v)
        return self.out_targets[self.out_offsets[v]:self.out_offsets[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        self._check(v)
        return self.in_targets[self.in_offsets[v]:self.in_offsets[v + 1]]

    def _check(self, v):
        if not 0 <= v < self.n:
            raise IndexError(f"node {v} out of range [0, {self.n})")

    def arcs(self) -> np.ndarray:
        """All stored arcs as an ``(num_arcs, 2)`` array of (source, target)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.d)
        return np.column_stack([src, self.out_targets])

    def edges(self) -> np.ndarray:
        """Arcs for directed graphs; each undirected edge once as (min, max)."""
        a = self.arcs()
        if self.directed:
            return a
        return a[a[:, 0] < a[:, 1]]

    def same_structure(self, other: "Graph") -> bool:
        return (
            self.n == other.n
            and self.m == other.m
            and self.directed == other.directed
            and all(
                np.array_equal(getattr(self, k), getattr(other, k))
                for k in ("out_offsets", "out_targets", "in_offsets", "in_targets", "d")
            )
        )

    def content_hash(self) -> str:
        """SHA-256 over the canonical arc list (plus n and orientation flag)."""
        h = hashlib.sha256()
        h.update(f"{self.n}:{int(self.directed)}:".encode())
        h.update(np.ascontiguousarray(self.edges(), dtype="<i8").tobytes())
        return h.hexdigest()


def _csr(n, src, dst):
    order = np.lexsort((dst, src))
    targets = dst[order].astype(np.int64)
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, targets


def from_edges(n: int, edges, directed: bool = False) -> Graph:
    """Build a graph on nodes ``0..n-1``; self-loops and duplicates are dropped."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if e.size and (e.min() < 0 or e.max() >= n):
        raise ValueError("edge endpoint outside [0, n)")
    e = e[e[:, 0] != e[:, 1]]
    if not directed:
        e = np.sort(e, axis=1)
    if len(e):
        e = np.unique(e, axis=0)
    m = len(e)
    if directed:
        src, dst = e[:, 0], e[:, 1]
    else:
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
    out_offsets, out_targets = _csr(n, src, dst)
    if directed:
        in_offsets, in_targets = _csr(n, dst, src)
    else:
        in_offsets, in_targets = out_offsets.copy(), out_targets.copy()
    d = np.diff(out_offsets)
    return Graph(n, m, directed, out_offsets, out_targets, in_offsets, in_targets, d)


def transpose(G: Graph) -> Graph:
    """Reverse every arc (identity on undirected graphs)."""
    if not G.directed:
        return G
    return from_edges(G.n, G.arcs()[:, ::-1], directed=True)


def _lines(source) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def load_edge_list(source: TextIO | str, directed: bool = False, return_labels: bool = False):
    """Parse a SNAP/KONECT style edge list.

    Lines starting with ``#`` or ``%`` are comments.  Node ids are compacted to
    ``0..n-1`` in order of first appearance; ``labels[k]`` is the original id
    of node ``k`` when ``return_labels`` is set.
    """
    ids: dict[int, int] = {}
    src: list[int] = []
    dst: list[int] = []
    for lineno, line in enumerate(_lines(source), start=1):
        line = line.strip()
        if not line or line[0] in "#%":
            continue
        tok = line.split()
        if len(tok) != 2:
            raise EdgeListError(f"line {lineno}: expected 2 node ids, got {len(tok)} fields")
        try:
            a, b = int(tok[0]), int(tok[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer node id in {line!r}") from None
        if a < 0 or b < 0:
            raise EdgeListError(f"line {lineno}: negative node id in {line!r}")
        src.append(ids.setdefault(a, len(ids)))
        dst.append(ids.setdefault(b, len(ids)))
    if not ids:
        raise EdgeListError("empty graph")
    G = from_edges(len(ids), np.column_stack([src, dst]), directed=directed)
    if return_labels:
        return G, np.fromiter(ids.keys(), dtype=np.int64, count=len(ids))
    return G


def read_edge_list(path, directed: bool = False, return_labels: bool = False):
    with open(path, "r", encoding="ascii", newline=None) as fh:
        return load_edge_list(fh, directed=directed, return_labels=return_labels)


def dump_edge_list(G: Graph, stream: TextIO | None = None) -> str | None:
    """Write ``G`` so that :func:`load_edge_list` rebuilds it with the same ids.

    Where an edge would introduce a node ahead of smaller, still unseen ids,
    those ids are announced first with a self-loop line ``v v`` (dropped on
    load, but it registers the id).  The same covers isolated nodes.
    """
    a = G.edges()
    lo = a.min(axis=1) if len(a) else a[:, 0]
    hi = a.max(axis=1) if len(a) else a[:, 0]
    reversed_ = (a[:, 0] != lo).astype(np.int64)
    # grouping by the larger endpoint keeps the padding lines rare
    order = np.lexsort((reversed_, -lo, hi))
    out: list[str] = []
    seen = 0
    for i, j in a[order].tolist():
        for x in (i, j):
            if x >= seen:
                out.extend(f"{y} {y}\n" for y in range(seen, x))
                seen = x + 1
        out.append(f"{i} {j}\n")
    out.extend(f"{y} {y}\n" for y in range(seen, G.n))
    text = "".join(out)
    if stream is None:
        return text
    stream.write(text)
    return None


# -- synthetic graphs ------------------------------------------------------

def erdos_renyi(n: int, p: float, seed=None, directed: bool = False) -> Graph:
    """G(n, p): a binomial edge count, then that many distinct pair indices."""
    rng = np.random.default_rng(seed)
    total = n * (n - 1) if directed else n * (n - 1) // 2
    if total == 0 or p <= 0:
        return from_edges(n, np.empty((0, 2), dtype=np.int64), directed)
    k = rng.binomial(total, p)
    idx = rng.choice(total, size=k, replace=False)
    if directed:
        i, j = np.divmod(idx, n - 1)
        j = j + (j >= i)
    else:
        # row i (i < j) starts at i*(2n-i-1)/2
        i = (n - 2 - np.floor(np.sqrt(-8 * idx + 4 * n * (n - 1) - 7) / 2 - 0.5)).astype(np.int64)
        j = idx + i + 1 - n * (n - 1) // 2 + (n - i) * ((n - i) - 1) // 2
    return from_edges(n, np.column_stack([i, j]), directed)


def barabasi_albert(n: int, m: int, seed=None) -> Graph:
    """Preferential attachment, each new node wiring ``m`` distinct edges."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    rng = np.random.default_rng(seed)
    edges = []
    repeated: list[int] = []
    targets = list(range(m))
    for v in range(m, n):
        edges.extend((v, t) for t in targets)
        repeated.extend(targets)
        repeated.extend([v] * m)
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(repeated[rng.integers(len(repeated))])
        targets = list(chosen)
    return from_edges(n, edges, directed=False)


def grid_2d(rows: int, cols: int) -> Graph:
    idx = np.arange(rows * cols).reshape(rows, cols)
    horiz = np.column_stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()])
    vert = np.column_stack([idx[:-1, :].ravel(), idx[1:, :].ravel()])
    return from_edges(rows * cols, np.vstack([horiz, vert]), directed=False)


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
