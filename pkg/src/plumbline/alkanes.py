"""Alkanes: free trees with maximum degree 4.

A genus-g alkane is a connected acyclic graph on vertices 1..g in which
every vertex has degree at most 4 (quadrivalent carbon).  These index the
branch patterns handled by the period-matrix modules, so enumeration must
be exact: one representative per isomorphism class, in a deterministic
order.

Enumeration strategy: free trees are generated centroid-rooted.  A tree
with a unique centroid is produced exactly once as a rooted tree whose
root subtrees all have <= floor((g-1)/2) vertices; a bicentroidal tree
(g even) is produced once as an unordered pair of rooted halves of g/2
vertices joined root-to-root.  Children multisets are generated in
canonical (sorted-code) order, so no isomorphism dedup pass is needed.
The Pruefer-sequence brute force at the bottom exists purely as an
independent test oracle.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import RangeError, StructureError

MAX_CARBON_DEGREE = 4
DEFAULT_GENUS_CAP = 16

Edge = Tuple[int, int]


def _normalize_edges(edges: Iterable[Sequence[int]]) -> Tuple[Edge, ...]:
    out = []
    for e in edges:
        i, j = e
        if i == j:
            raise StructureError(f"self-loop at vertex {i}")
        out.append((min(i, j), max(i, j)))
    if len(set(out)) != len(out):
        raise StructureError("duplicate edges")
    return tuple(sorted(out))


@dataclass(frozen=True)
class Alkane:
    """Labeled representative of a max-degree-4 free tree on {1..genus}."""

    genus: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", _normalize_edges(self.edges))
        g = self.genus
        if g < 1:
            raise RangeError(f"genus must be >= 1, got {g}")
        if len(self.edges) != g - 1:
            raise StructureError(f"{len(self.edges)} edges on {g} vertices is not a tree")
        adj = self.adjacency()
        if any(v < 1 or v > g for e in self.edges for v in e):
            raise StructureError("edge endpoint outside 1..genus")
        if any(len(nbrs) > MAX_CARBON_DEGREE for nbrs in adj.values()):
            raise StructureError("vertex of degree > 4")
        # connectivity (with the right edge count this also rules out cycles)
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != g:
            raise StructureError("edge set is not connected")

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in range(1, self.genus + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> Dict[int, int]:
        deg = {v: 0 for v in range(1, self.genus + 1)}
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def relabel(self, perm: Dict[int, int]) -> "Alkane":
        """Apply a vertex bijection {1..g}->{1..g}."""
        if sorted(perm) != list(range(1, self.genus + 1)) or sorted(perm.values()) != list(
            range(1, self.genus + 1)
        ):
            raise StructureError("relabeling is not a bijection of 1..genus")
        return Alkane(self.genus, [(perm[i], perm[j]) for i, j in self.edges])

    @classmethod
    def chain(cls, g: int) -> "Alkane":
        """The linear alkane with path labeling 1-2-...-g."""
        return cls(g, [(i, i + 1) for i in range(1, g)])

    @classmethod
    def star(cls, g: int) -> "Alkane":
        """Center 1 joined to leaves 2..g (needs g <= 5)."""
        return cls(g, [(1, j) for j in range(2, g + 1)])

    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "edges": [list(e) for e in self.edges],
            "code": canonical_code(self),
            "valency": list(valency_profile(self)),
            "hydrogens": hydrogen_count(self),
        }


@dataclass(frozen=True)
class ValencyProfile:
    """Counts of vertices bonded to 1, 2, 3, 4 other carbons."""

    g1: int
    g2: int
    g3: int
    g4: int

    def __iter__(self):
        return iter((self.g1, self.g2, self.g3, self.g4))


# ---------------------------------------------------------------------------
# canonical codes


def _rooted_code(adj: Dict[int, List[int]], root: int, parent: int | None = None) -> str:
    kids = sorted(
        _rooted_code(adj, w, root) for w in adj[root] if w != parent
    )
    return "(" + "".join(kids) + ")"


def _centroids(a: Alkane) -> List[int]:
    g = a.genus
    if g == 1:
        return [1]
    adj = a.adjacency()
    size = {}

    def subtree(v: int, parent: int | None):
        s = 1
        for w in adj[v]:
            if w != parent:
                s += subtree(w, v)
        size[(v, parent)] = s
        return s

    subtree(1, None)

    best, out = g + 1, []
    for v in range(1, g + 1):
        # max component of the forest left by deleting v
        worst = 0
        for w in adj[v]:
            s = size.get((w, v))
            if s is None:
                s = g - size[(v, w)]
            worst = max(worst, s)
        if worst < best:
            best, out = worst, [v]
        elif worst == best:
            out.append(v)
    return out


def canonical_code(a: Alkane) -> str:
    """AHU-style nested-parentheses code, rooted at the centroid.

    Bicentroidal trees take the lexicographically smaller of the two
    centroid-rooted codes.  Equal codes <=> isomorphic alkanes.
    """
    adj = a.adjacency()
    return min(_rooted_code(adj, c) for c in _centroids(a))


def valency_profile(a: Alkane) -> ValencyProfile:
    counts = [0, 0, 0, 0, 0]
    for d in a.degrees().values():
        counts[d] += 1
    return ValencyProfile(*counts[1:])


def hydrogen_count(a: Alkane) -> int:
    return sum(MAX_CARBON_DEGREE - d for d in a.degrees().values())


def is_chain(a: Alkane) -> bool:
    return all(d <= 2 for d in a.degrees().values())


# ---------------------------------------------------------------------------
# enumeration


def _partitions(total: int, max_parts: int, max_part: int) -> Iterator[Tuple[int, ...]]:
    """Non-increasing positive parts of ``total``, at most max_parts, each <= max_part."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def _rooted_codes(n: int, max_children: int) -> Tuple[str, ...]:
    """Canonical codes of rooted trees on n vertices; non-root vertices have
    <= 3 children (degree <= 4 once the parent edge is counted)."""
    if n == 1:
        return ("()",)
    out = []
    for part in _partitions(n - 1, max_children, n - 1):
        sizes = sorted(set(part), reverse=True)
        pools = []
        for s in sizes:
            mult = part.count(s)
            pools.append(
                list(itertools.combinations_with_replacement(_rooted_codes(s, 3), mult))
            )
        for combo in itertools.product(*pools):
            kids = [c for group in combo for c in group]
            out.append("(" + "".join(sorted(kids)) + ")")
    return tuple(out)


def _root_children(code: str) -> List[str]:
    """Top-level balanced substrings of code[1:-1]."""
    kids, depth, start = [], 0, 1
    for pos in range(1, len(code) - 1):
        ch = code[pos]
        if ch == "(":
            if depth == 0:
                start = pos
            depth += 1
        else:
            depth -= 1
            if depth == 0:
                kids.append(code[start : pos + 1])
    return kids


def _attach(host: str, extra: str) -> str:
    return "(" + "".join(sorted(_root_children(host) + [extra])) + ")"


@functools.lru_cache(maxsize=None)
def _free_codes(g: int) -> Tuple[str, ...]:
    if g == 1:
        return ("()",)
    out = []
    half = (g - 1) // 2
    for part in _partitions(g - 1, MAX_CARBON_DEGREE, half):
        sizes = sorted(set(part), reverse=True)
        pools = []
        for s in sizes:
            mult = part.count(s)
            pools.append(
                list(itertools.combinations_with_replacement(_rooted_codes(s, 3), mult))
            )
        for combo in itertools.product(*pools):
            kids = [c for group in combo for c in group]
            out.append("(" + "".join(sorted(kids)) + ")")
    if g % 2 == 0:
        halves = sorted(_rooted_codes(g // 2, 3))
        for c1, c2 in itertools.combinations_with_replacement(halves, 2):
            out.append(min(_attach(c1, c2), _attach(c2, c1)))
    return tuple(sorted(out))


def alkane_from_code(code: str) -> Alkane:
    """Labeled representative: vertices numbered in DFS preorder of the code."""
    edges = []
    counter = itertools.count(1)

    def build(c: str) -> int:
        v = next(counter)
        for kid in _root_children(c):
            w = build(kid)
            edges.append((v, w))
        return v

    build(code)
    g = next(counter) - 1
    return Alkane(g, edges)


def enumerate_alkanes(g: int, cap: int = DEFAULT_GENUS_CAP) -> List[Alkane]:
    """One labeled representative per isomorphism class, sorted by code."""
    if not 1 <= g <= cap:
        raise RangeError(f"genus {g} outside 1..{cap}")
    return [alkane_from_code(code) for code in _free_codes(g)]


def count_alkanes(g: int, cap: int = DEFAULT_GENUS_CAP) -> int:
    if not 1 <= g <= cap:
        raise RangeError(f"genus {g} outside 1..{cap}")
    return len(_free_codes(g))


# ---------------------------------------------------------------------------
# Pruefer brute force (test oracle only; exponential in g)


def prufer_decode(seq: Sequence[int], n: int) -> List[Edge]:
    """Labeled tree on 1..n from a Pruefer sequence of length n-2."""
    if n == 1:
        return []
    if n == 2:
        return [(1, 2)]
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(u, w), max(u, w)))
    return edges


def brute_force_alkane_codes(g: int) -> FrozenSet[str]:
    """Canonical codes of all degree-<=4 labeled trees on 1..g, via every
    Pruefer sequence.  Feasible only for small g (g^(g-2) sequences)."""
    if g == 1:
        return frozenset({"()"})
    if g == 2:
        return frozenset({canonical_code(Alkane(2, [(1, 2)]))})
    codes = set()
    for seq in itertools.product(range(1, g + 1), repeat=g - 2):
        # degree of v is 1 + multiplicity in the sequence
        counts: Dict[int, int] = {}
        ok = True
        for v in seq:
            c = counts.get(v, 0) + 1
            if c > MAX_CARBON_DEGREE - 1:
                ok = False
                break
            counts[v] = c
        if not ok:
            continue
        codes.add(canonical_code(Alkane(g, prufer_decode(seq, g))))
    return frozenset(codes)


def brute_force_alkane_count(g: int) -> int:
    return len(brute_force_alkane_codes(g))


def random_degree_bounded_tree(g: int, rng) -> Alkane:
    """Rejection-sample a labeled degree-<=4 tree via random Pruefer sequences."""
    if g <= 2:
        return Alkane(g, [] if g == 1 else [(1, 2)])
    while True:
        seq = [rng.randint(1, g) for _ in range(g - 2)]
        if max(seq.count(v) for v in set(seq)) <= MAX_CARBON_DEGREE - 1:
            return Alkane(g, prufer_decode(seq, g))
