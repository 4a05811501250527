"""Uniform hypergraphs over bitmask vertex sets.

A vertex set is a plain ``int`` whose bit ``v`` is set when vertex ``v`` is a
member.  Edges are stored as such masks, sorted lexicographically by their
member tuples, so two hypergraphs with the same edge set compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence


class InvalidArgument(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class FormatError(ValueError):
    """Malformed hypergraph text; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


# -- vertex sets ----------------------------------------------------------

def vset(items: Iterable[int] | int) -> int:
    """Mask for an iterable of vertex ids (ints pass through unchanged)."""
    if isinstance(items, int):
        if items < 0:
            raise InvalidArgument("vertex mask must be nonnegative")
        return items
    mask = 0
    for v in items:
        if v < 0:
            raise InvalidArgument(f"negative vertex id {v}")
        mask |= 1 << v
    return mask


def bits(mask: int) -> tuple[int, ...]:
    """Members of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def _edge_order(mask: int) -> tuple[int, ...]:
    return bits(mask)


# -- core types -----------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    """Vertex count ``n``, deduplicated edges, optional uniformity tag ``r``.

    ``edges`` may be given as masks or iterables of vertex ids; they are
    normalized to sorted masks on construction.
    """

    n: int
    edges: tuple[int, ...] = ()
    r: int | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidArgument("vertex count must be nonnegative")
        limit = 1 << self.n
        masks = set()
        for e in self.edges:
            m = vset(e)
            if m == 0:
                raise InvalidArgument("edges must be nonempty")
            if m >= limit:
                raise InvalidArgument(f"edge {bits(m)} leaves [0, {self.n})")
            if self.r is not None and popcount(m) != self.r:
                raise InvalidArgument(f"edge {bits(m)} is not {self.r}-uniform")
            masks.add(m)
        object.__setattr__(self, "edges", tuple(sorted(masks, key=_edge_order)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @cached_property
    def support(self) -> int:
        """Mask of non-isolated vertices."""
        acc = 0
        for e in self.edges:
            acc |= e
        return acc

    @cached_property
    def uniformity(self) -> int | None:
        """Tagged ``r`` or the common edge size; ``None`` if mixed or empty."""
        if self.r is not None:
            return self.r
        sizes = {popcount(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def has_isolated(self) -> bool:
        return self.support != full_mask(self.n)

    def degree(self, v: int) -> int:
        bit = 1 << v
        return sum(1 for e in self.edges if e & bit)

    def edge_tuples(self) -> list[tuple[int, ...]]:
        return [bits(e) for e in self.edges]

    def contains(self, e: Iterable[int] | int) -> bool:
        return vset(e) in self.edge_set

    def add_edge(self, e: Iterable[int] | int) -> "Hypergraph":
        return type(self)(self.n, self.edges + (vset(e),), self.r)

    def relabel(self, perm: Sequence[int], n: int | None = None) -> "Hypergraph":
        """Image under ``v -> perm[v]``."""
        target = self.n if n is None else n
        new = []
        for e in self.edges:
            acc = 0
            for v in bits(e):
                acc |= 1 << perm[v]
            new.append(acc)
        return type(self)(target, tuple(new), self.r)

    def drop_isolated(self) -> "Hypergraph":
        """Relabel the non-isolated vertices onto ``0..v-1`` preserving order."""
        keep = bits(self.support)
        perm = [0] * self.n
        for i, v in enumerate(keep):
            perm[v] = i
        return self.relabel(perm, len(keep))

    def __str__(self) -> str:
        body = ", ".join("".join(map(str, t)) if self.n <= 10 else str(t) for t in self.edge_tuples())
        return f"{type(self).__name__}(n={self.n}, [{body}])"


@dataclass(frozen=True, eq=True)
class Graph(Hypergraph):
    """Simple graph: a 2-uniform hypergraph with neighbor masks."""

    r: int | None = 2

    def __post_init__(self) -> None:
        if self.r != 2:
            raise InvalidArgument("a Graph is 2-uniform")
        super().__post_init__()

    @cached_property
    def adj(self) -> tuple[int, ...]:
        nbrs = [0] * self.n
        for e in self.edges:
            u, v = bits(e)
            nbrs[u] |= 1 << v
            nbrs[v] |= 1 << u
        return tuple(nbrs)

    def deg(self, v: int) -> int:
        return popcount(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((popcount(a) for a in self.adj), default=0)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def induced(self, S: int) -> "Graph":
        """Subgraph induced on ``S`` relabeled onto ``0..|S|-1``."""
        keep = bits(S)
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in map(bits, self.edges) if u in pos and v in pos]
        return Graph(len(keep), tuple(edges))


def as_graph(H: Hypergraph) -> Graph:
    if isinstance(H, Graph):
        return H
    if any(popcount(e) != 2 for e in H.edges):
        raise InvalidArgument("hypergraph is not 2-uniform")
    return Graph(H.n, H.edges)


# -- small builders -------------------------------------------------------

def complete_hypergraph(m: int, r: int, n: int | None = None) -> Hypergraph:
    """K^r_m on vertices ``0..m-1`` (padded to ``n`` vertices if given)."""
    total = m if n is None else n
    edges = tuple(vset(c) for c in itertools.combinations(range(m), r))
    if r == 2:
        return Graph(total, edges)
    return Hypergraph(total, edges, r)


def complete_graph(m: int, n: int | None = None) -> Graph:
    return complete_hypergraph(m, 2, n)  # type: ignore[return-value]


def cycle_graph(m: int) -> Graph:
    return Graph(m, tuple((i, (i + 1) % m) for i in range(m)))


def path_graph(m: int) -> Graph:
    return Graph(m, tuple((i, i + 1) for i in range(m - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def matching_graph(k: int) -> Graph:
    return Graph(2 * k, tuple((2 * i, 2 * i + 1) for i in range(k)))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


# -- operations -----------------------------------------------------------

def _checked_subset(H: Hypergraph, S: Iterable[int] | int) -> int:
    mask = vset(S)
    if mask >> H.n:
        raise InvalidArgument(f"vertex set {bits(mask)} leaves [0, {H.n})")
    return mask


def trace(H: Hypergraph, S: Iterable[int] | int) -> Hypergraph:
    """Trace of ``H`` on ``S``: distinct nonempty ``e & S``.

    Vertex ids are kept, so the result lives on the same ``n``.
    """
    mask = _checked_subset(H, S)
    return Hypergraph(H.n, tuple({e & mask for e in H.edges if e & mask}))


def exact_pair_graph(H: Hypergraph, S: Iterable[int] | int) -> Graph:
    """Graph of the trace members of size exactly two."""
    mask = _checked_subset(H, S)
    return Graph(H.n, tuple({e & mask for e in H.edges if popcount(e & mask) == 2}))


def two_shadow(H: Hypergraph) -> Graph:
    pairs = set()
    for e in H.edges:
        for u, v in itertools.combinations(bits(e), 2):
            pairs.add((1 << u) | (1 << v))
    return Graph(H.n, tuple(pairs))


def link(H: Hypergraph, v: int) -> Hypergraph:
    if not 0 <= v < H.n:
        raise InvalidArgument(f"vertex {v} outside [0, {H.n})")
    r = H.uniformity
    if H.m and r is None:
        raise InvalidArgument("link needs a uniform hypergraph")
    if r is not None and r < 2:
        raise InvalidArgument("link needs uniformity at least 2")
    bit = 1 << v
    edges = tuple(e ^ bit for e in H.edges if e & bit)
    if r == 3:
        return Graph(H.n, edges)
    return Hypergraph(H.n, edges, None if r is None else r - 1)


def codegree(H: Hypergraph, S: Iterable[int] | int) -> int:
    mask = vset(S)
    return sum(1 for e in H.edges if e & mask == mask)


def subsets_of_size(mask: int, k: int) -> Iterator[int]:
    for combo in itertools.combinations(bits(mask), k):
        yield vset(combo)


def count_hypercliques(H: Hypergraph, t: int) -> int:
    """Number of t-sets all of whose r-subsets are edges."""
    r = H.uniformity
    if r is None:
        if H.m:
            raise InvalidArgument("clique counting needs a uniform hypergraph")
        r = H.r or 1
    if t < r:
        raise InvalidArgument(f"t = {t} is below the uniformity {r}")
    if H.m == 0 or t > H.n:
        return 0
    if r == 1:
        return comb(popcount(H.support), t)
    if r == 2:
        return _count_graph_cliques(as_graph(H).adj, t)
    E = H.edge_set
    n = H.n

    def grow(clique: list[int], cand: int, need: int) -> int:
        if need == 0:
            return 1
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            if popcount(cand) < need - 1:
                break
            # w stays admissible iff T + {v, w} is an edge for every (r-2)-subset T
            nxt = 0
            rest = cand
            while rest:
                wl = rest & -rest
                rest ^= wl
                ok = True
                if len(clique) >= r - 2:
                    for T in itertools.combinations(clique, r - 2):
                        if (vset(T) | low | wl) not in E:
                            ok = False
                            break
                if ok:
                    nxt |= wl
            clique.append(v)
            total += grow(clique, nxt, need - 1)
            clique.pop()
        return total

    return grow([], full_mask(n), t)


def _count_graph_cliques(adj: Sequence[int], t: int) -> int:
    def grow(cand: int, need: int) -> int:
        if need == 0:
            return 1
        if need == 1:
            return popcount(cand)
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            if popcount(cand) < need - 1:
                break
            total += grow(cand & adj[low.bit_length() - 1], need - 1)
        return total

    return grow(full_mask(len(adj)), t)


def spanning_embeds(F: Graph, G: Graph) -> tuple[int, ...] | None:
    """Bijection ``lam`` with ``lam[u] lam[v]`` an edge of G for each F-edge uv."""
    if F.n != G.n:
        raise InvalidArgument(f"v(F) = {F.n} differs from v(G) = {G.n}")
    n = F.n
    if F.m > G.m:
        return None
    fadj, gadj = F.adj, G.adj
    fdeg = [popcount(a) for a in fadj]
    gdeg = [popcount(a) for a in gadj]
    if any(a > b for a, b in zip(sorted(fdeg, reverse=True), sorted(gdeg, reverse=True))):
        return None

    # most-constrained-first: many mapped neighbours, then high degree
    order: list[int] = []
    placed = 0
    for _ in range(n):
        best = max(
            (u for u in range(n) if not placed >> u & 1),
            key=lambda u: (popcount(fadj[u] & placed), fdeg[u], -u),
        )
        order.append(best)
        placed |= 1 << best

    lam = [-1] * n

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        u = order[i]
        need = fdeg[u]
        allowed = full_mask(n) & ~used
        for w in bits(fadj[u]):
            if lam[w] >= 0:
                allowed &= gadj[lam[w]]
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            x = low.bit_length() - 1
            if gdeg[x] < need:
                continue
            lam[u] = x
            if place(i + 1, used | low):
                return True
        lam[u] = -1
        return False

    return tuple(lam) if place(0, 0) else None


# -- text format ----------------------------------------------------------

def format_hypergraph(H: Hypergraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{H.n} {H.m} {H.r or 0}")
    lines.extend(" ".join(map(str, t)) for t in H.edge_tuples())
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str, source: str = "<string>") -> Hypergraph:
    """Parse the ``n m r`` text format; ``r = 0`` marks a non-uniform file."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise FormatError("missing header line 'n m r'", None, source)
    lineno, head = rows[0]
    if len(head) != 3:
        raise FormatError("header must be 'n m r'", lineno, source)
    try:
        n, m, r = (int(x) for x in head)
    except ValueError:
        raise FormatError("header fields must be integers", lineno, source) from None
    if n < 0 or m < 0 or r < 0:
        raise FormatError("header fields must be nonnegative", lineno, source)
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise FormatError(f"header announces {m} edges, found {len(body)}", where, source)
    edges = []
    seen = set()
    for lineno, fields in body:
        try:
            ids = [int(x) for x in fields]
        except ValueError:
            raise FormatError("vertex ids must be integers", lineno, source) from None
        if r and len(ids) != r:
            raise FormatError(f"expected {r} vertices, got {len(ids)}", lineno, source)
        if any(b <= a for a, b in zip(ids, ids[1:])):
            raise FormatError("vertex ids must be strictly ascending", lineno, source)
        if ids[0] < 0 or ids[-1] >= n:
            raise FormatError(f"vertex id outside [0, {n})", lineno, source)
        mask = vset(ids)
        if mask in seen:
            raise FormatError("duplicate edge", lineno, source)
        seen.add(mask)
        edges.append(mask)
    if r == 2:
        return Graph(n, tuple(edges))
    return Hypergraph(n, tuple(edges), r or None)


def read_hypergraph(path: str) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read(), source=path)
