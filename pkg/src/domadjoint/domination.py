"""Domination predicates, exact solver, canonical repair, and surjections.

The exact solver (:func:`gamma_exact`) is a branch-and-bound over dominator
choices for an undominated vertex, warm-started by a greedy cover and pruned
with a packing lower bound. :func:`gamma_bruteforce` is its deliberately dumb
oracle: scan subsets by increasing cardinality. The two must always agree;
tests enforce this over exhaustive corpora.

``canonicalize`` repairs a minimum dominating set until every member owns a
private neighbor, swapping out members with none. Each swap strictly grows
the number of edges inside the set, which bounds the loop by the edge count
of the host graph. ``build_surjection`` then maps every non-dominated vertex
onto a dominating neighbor: private neighbors are forced, the rest follow a
tie-break policy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    InternalContradiction,
    NotCanonical,
    NotInDominatingSet,
    NotMinimum,
    OracleLimitExceeded,
    VertexOutOfRange,
)
from .graphs import Graph, bits_of, mask_of

__all__ = [
    "DominationCertificate",
    "Surjection",
    "is_dominating",
    "is_minimal_dominating",
    "gamma_exact",
    "gamma_bruteforce",
    "private_neighbors",
    "canonical_repair_steps",
    "canonicalize",
    "enumerate_canonical",
    "build_surjection",
    "enumerate_surjections",
]

DEFAULT_ORACLE_LIMIT = 20


@dataclass(frozen=True)
class DominationCertificate:
    """A vertex set claimed to dominate ``host``, with the strength of the claim.

    kind is one of ``dominating`` (covers the graph), ``minimum`` (dominating
    and of cardinality gamma), or ``canonical`` (minimum and every member has
    a private neighbor).
    """

    host: Graph
    members: frozenset[int]
    kind: str

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


@dataclass(frozen=True, eq=False)
class Surjection:
    """Total map from the non-dominated vertices of ``host`` onto ``dom_set``.

    ``mapping[v] = u`` implies ``u`` is a neighbor of ``v`` and ``u`` is in
    ``dom_set``; every member of ``dom_set`` is hit by at least one vertex.
    """

    host: Graph
    dom_set: frozenset[int]
    mapping: dict[int, int]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Surjection):
            return NotImplemented
        return (
            self.host == other.host
            and self.dom_set == other.dom_set
            and self.mapping == other.mapping
        )


def _member_mask(g: Graph, d: frozenset[int] | set[int]) -> int:
    m = 0
    for v in d:
        if not (0 <= v < g.n):
            raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
        m |= 1 << v
    return m


def _closed(g: Graph) -> tuple[int, ...]:
    return tuple(g.adj[v] | (1 << v) for v in range(g.n))


def is_dominating(g: Graph, d: frozenset[int] | set[int]) -> bool:
    """True iff every vertex outside ``d`` has a neighbor inside ``d``."""
    m = _member_mask(g, d)
    cover = m
    for v in bits_of(m):
        cover |= g.adj[v]
    return cover == (1 << g.n) - 1


def is_minimal_dominating(g: Graph, d: frozenset[int] | set[int]) -> bool:
    """True iff ``d`` dominates and no single removal still dominates."""
    if not is_dominating(g, d):
        return False
    ds = set(d)
    for v in d:
        ds.discard(v)
        if is_dominating(g, ds):
            return False
        ds.add(v)
    return True


def gamma_exact(g: Graph) -> tuple[int, DominationCertificate]:
    """Minimum domination number with a witness, by branch and bound.

    Branches on the undominated vertex with the fewest potential dominators;
    prunes with a lower bound from greedily packed pairwise-disjoint closed
    neighborhoods. Fully deterministic.
    """
    n = g.n
    full = (1 << n) - 1
    closed = _closed(g)

    # Greedy warm start: repeatedly take the vertex covering most uncovered.
    covered = 0
    greedy: list[int] = []
    while covered != full:
        best_v, best_gain = -1, -1
        for v in range(n):
            gain = (closed[v] & ~covered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        greedy.append(best_v)
        covered |= closed[best_v]

    by_closure = sorted(range(n), key=lambda v: (closed[v].bit_count(), v))

    def lower_bound(covered: int) -> int:
        # Uncovered vertices with pairwise disjoint closed neighborhoods need
        # pairwise distinct dominators.
        used = 0
        count = 0
        for v in by_closure:
            if (covered >> v) & 1 or closed[v] & used:
                continue
            used |= closed[v]
            count += 1
        return count

    best_size = len(greedy)
    best_set: tuple[int, ...] = tuple(greedy)

    chosen: list[int] = []

    def branch(covered: int) -> None:
        nonlocal best_size, best_set
        if covered == full:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_set = tuple(chosen)
            return
        if len(chosen) + lower_bound(covered) >= best_size:
            return
        # Undominated vertex with the fewest dominator options.
        pick, pick_opts = -1, n + 2
        rem = full & ~covered
        while rem:
            low = rem & -rem
            v = low.bit_length() - 1
            rem ^= low
            k = closed[v].bit_count()
            if k < pick_opts:
                pick, pick_opts = v, k
        for u in bits_of(closed[pick]):
            chosen.append(u)
            branch(covered | closed[u])
            chosen.pop()

    branch(0)
    witness = frozenset(best_set)
    if len(witness) != best_size or not is_dominating(g, witness):
        raise InternalContradiction("solver produced an invalid witness")
    return best_size, DominationCertificate(g, witness, "minimum")


def gamma_bruteforce(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Smallest dominating cardinality by exhaustive subset scan.

    Independent oracle for :func:`gamma_exact`; checks subsets in order of
    increasing cardinality and returns the first size that covers the graph.
    """
    if g.n > limit:
        raise OracleLimitExceeded(f"n={g.n} exceeds oracle limit {limit}")
    full = (1 << g.n) - 1
    closed = _closed(g)
    for k in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), k):
            cover = 0
            for v in combo:
                cover |= closed[v]
            if cover == full:
                return k
    raise InternalContradiction("no dominating set found")  # unreachable: V dominates


def private_neighbors(g: Graph, d: frozenset[int] | set[int], u: int) -> frozenset[int]:
    """Vertices outside ``d`` adjacent to ``u`` whose only dominator is ``u``."""
    m = _member_mask(g, d)
    if u < 0 or not (m >> u) & 1:
        raise NotInDominatingSet(f"vertex {u} is not in the given set")
    out = []
    for v in bits_of(g.adj[u] & ~m):
        if g.adj[v] & m == 1 << u:
            out.append(v)
    return frozenset(out)


def _has_private(g: Graph, m: int, u: int) -> bool:
    for v in bits_of(g.adj[u] & ~m):
        if g.adj[v] & m == 1 << u:
            return True
    return False


def canonical_repair_steps(
    g: Graph, members: frozenset[int] | set[int]
) -> list[tuple[frozenset[int], int]]:
    """Swap trace from a minimum dominating set to canonical form.

    Returns snapshots ``(working_set, induced_edge_count)`` starting with the
    seed; each subsequent snapshot replaces one member without a private
    neighbor by its lowest-indexed neighbor. The caller is responsible for
    passing a minimum dominating set; on such input a member without private
    neighbors cannot have a neighbor inside the set (that would make the set
    shrinkable), so a violation raises :class:`InternalContradiction`.
    """
    work = set(members)
    m = _member_mask(g, work)
    steps = [(frozenset(work), g.induced_edges(work))]
    max_swaps = g.edge_count
    for _ in range(max_swaps + 1):
        bad = next((u for u in sorted(work) if not _has_private(g, m, u)), None)
        if bad is None:
            return steps
        if g.adj[bad] & m:
            raise InternalContradiction(
                f"member {bad} has no private neighbor but a neighbor in the set; "
                "the seed was not minimum"
            )
        # All of bad's neighbors are outside the set; take the lowest-indexed.
        swap_in = next(bits_of(g.adj[bad]))
        work.remove(bad)
        work.add(swap_in)
        m = (m ^ (1 << bad)) | (1 << swap_in)
        induced = g.induced_edges(work)
        if induced <= steps[-1][1]:
            raise InternalContradiction("swap did not increase induced edge count")
        steps.append((frozenset(work), induced))
    raise InternalContradiction("repair exceeded the edge-count bound")


def canonicalize(g: Graph, seed: DominationCertificate) -> DominationCertificate:
    """Repair a minimum dominating set into canonical form.

    The result has the same cardinality and every member owns at least one
    private neighbor. Raises :class:`NotMinimum` if the seed is not a minimum
    dominating set of ``g``.
    """
    if seed.host != g:
        raise ValueError("certificate host does not match the given graph")
    if not is_dominating(g, seed.members):
        raise NotMinimum("seed does not dominate the graph")
    gamma, _ = gamma_exact(g)
    if len(seed.members) != gamma:
        raise NotMinimum(f"seed has size {len(seed.members)}, gamma is {gamma}")
    steps = canonical_repair_steps(g, seed.members)
    return DominationCertificate(g, steps[-1][0], "canonical")


def enumerate_canonical(
    g: Graph, cap: int, limit: int = DEFAULT_ORACLE_LIMIT
) -> list[DominationCertificate]:
    """Up to ``cap`` canonical minimum dominating sets, lexicographically.

    Exhaustive scan over all size-gamma subsets, filtered to dominating sets
    in canonical form, in lexicographic order of sorted member lists.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if g.n > limit:
        raise OracleLimitExceeded(f"n={g.n} exceeds enumeration limit {limit}")
    gamma, _ = gamma_exact(g)
    full = (1 << g.n) - 1
    closed = _closed(g)
    out: list[DominationCertificate] = []
    for combo in itertools.combinations(range(g.n), gamma):
        cover = 0
        for v in combo:
            cover |= closed[v]
        if cover != full:
            continue
        m = mask_of(combo)
        if all(_has_private(g, m, u) for u in combo):
            out.append(DominationCertificate(g, frozenset(combo), "canonical"))
            if len(out) == cap:
                break
    return out


def _require_canonical(g: Graph, d: DominationCertificate) -> int:
    if d.host != g:
        raise ValueError("certificate host does not match the given graph")
    if d.kind != "canonical":
        raise NotCanonical(f"certificate kind is {d.kind!r}")
    m = _member_mask(g, d.members)
    if not is_dominating(g, d.members):
        raise NotCanonical("set does not dominate the graph")
    for u in d.members:
        if not _has_private(g, m, u):
            raise NotCanonical(f"member {u} has no private neighbor")
    return m


def _forced_and_free(g: Graph, m: int) -> tuple[dict[int, int], list[int]]:
    forced: dict[int, int] = {}
    free: list[int] = []
    for v in bits_of(((1 << g.n) - 1) & ~m):
        doms = g.adj[v] & m
        if doms.bit_count() == 1:
            forced[v] = doms.bit_length() - 1
        else:
            free.append(v)
    return forced, free


def _check_surjection(g: Graph, d: frozenset[int], mapping: dict[int, int]) -> None:
    outside = set(range(g.n)) - d
    if set(mapping) != outside:
        raise InternalContradiction("mapping is not total on the non-dominated vertices")
    for v, u in mapping.items():
        if u not in d or not g.has_edge(u, v):
            raise InternalContradiction(f"image of {v} is not a dominating neighbor")
    if set(mapping.values()) != set(d):
        raise InternalContradiction("mapping is not surjective onto the dominating set")


def build_surjection(
    g: Graph, d: DominationCertificate, policy: str = "lowest"
) -> Surjection:
    """Map every non-dominated vertex to a dominating neighbor.

    Private neighbors have exactly one dominator and are forced; remaining
    vertices take their lowest-indexed dominating neighbor (``policy``
    ``"lowest"``, the default) or the highest (``"highest"``). Surjectivity
    onto the set follows from canonical form: every member owns a private
    neighbor, which is forced to it.
    """
    if policy not in ("lowest", "highest"):
        raise ValueError(f"unknown tie-break policy {policy!r}")
    m = _require_canonical(g, d)
    forced, free = _forced_and_free(g, m)
    mapping = dict(forced)
    for v in free:
        doms = g.adj[v] & m
        mapping[v] = doms.bit_length() - 1 if policy == "highest" else next(bits_of(doms))
    _check_surjection(g, d.members, mapping)
    return Surjection(g, d.members, mapping)


def enumerate_surjections(
    g: Graph, d: DominationCertificate, cap: int
) -> list[Surjection]:
    """Up to ``cap`` surjections for a canonical set, lexicographically.

    Private neighbors keep their forced image; the free vertices range over
    all of their dominating neighbors, enumerated as a Cartesian product in
    increasing vertex order.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    m = _require_canonical(g, d)
    forced, free = _forced_and_free(g, m)
    choice_lists = [sorted(bits_of(g.adj[v] & m)) for v in free]
    out: list[Surjection] = []
    for picks in itertools.product(*choice_lists):
        mapping = dict(forced)
        mapping.update(zip(free, picks))
        _check_surjection(g, d.members, mapping)
        out.append(Surjection(g, d.members, mapping))
        if len(out) == cap:
            break
    return out
