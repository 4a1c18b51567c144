"""Cartesian products, the adjoined edge set, and minimality verification.

The Cartesian product of graphs G and H lives on all pairs (u, v); two pairs
are adjacent when they agree in one coordinate and are adjacent in the other.
Given canonical minimum dominating sets D_G, D_H and neighbor-respecting
surjections F_G, F_H onto them, every pair with both coordinates outside its
dominating set gets one extra edge to (F_G(u), F_H(v)). The resulting graph
is the product plus exactly (|V(G)|-|D_G|)*(|V(H)|-|D_H|) new edges, and
D_G x D_H is a minimal dominating set for it. ``verify_dominates`` and
``verify_minimal`` check that claim by direct computation rather than by
trusting the construction; ``minimality_witnesses`` reports, for each member
of D_G x D_H, the product vertices that only it can dominate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domination import (
    DominationCertificate,
    Surjection,
    is_dominating,
    private_neighbors,
)
from .errors import (
    DomainViolation,
    InternalContradiction,
    NotDominating,
    ProductTooLarge,
    VertexOutOfRange,
)
from .graphs import Graph

__all__ = [
    "ProductIndex",
    "AdjointGraph",
    "cartesian_product",
    "s_map",
    "build_adjoint",
    "verify_dominates",
    "verify_minimal",
    "minimality_witnesses",
]

DEFAULT_PRODUCT_CAP = 4096


@dataclass(frozen=True)
class ProductIndex:
    """Bijection between vertex pairs (u, v) and flat indices u*n_h + v."""

    n_g: int
    n_h: int

    @property
    def size(self) -> int:
        return self.n_g * self.n_h

    def encode(self, u: int, v: int) -> int:
        if not (0 <= u < self.n_g):
            raise VertexOutOfRange(f"first coordinate {u} outside 0..{self.n_g - 1}")
        if not (0 <= v < self.n_h):
            raise VertexOutOfRange(f"second coordinate {v} outside 0..{self.n_h - 1}")
        return u * self.n_h + v

    def decode(self, x: int) -> tuple[int, int]:
        if not (0 <= x < self.size):
            raise VertexOutOfRange(f"product vertex {x} outside 0..{self.size - 1}")
        return divmod(x, self.n_h)


def cartesian_product(g: Graph, h: Graph, max_vertices: int = DEFAULT_PRODUCT_CAP) -> Graph:
    """Cartesian product of two graphs under the flat pair indexing.

    (u,v) ~ (u',v') iff u == u' and v ~ v' in H, or v == v' and u ~ u' in G.
    The edge count is n_g*|E(H)| + n_h*|E(G)|.
    """
    index = ProductIndex(g.n, h.n)
    if index.size > max_vertices:
        raise ProductTooLarge(
            f"product has {index.size} vertices, cap is {max_vertices}"
        )
    masks = [0] * index.size
    for u in range(g.n):
        base = u * h.n
        g_row = g.adj[u]
        for v in range(h.n):
            row = h.adj[v] << base  # same u, adjacent v
            spread = g_row
            while spread:  # adjacent u, same v
                low = spread & -spread
                row |= 1 << ((low.bit_length() - 1) * h.n + v)
                spread ^= low
            masks[base + v] = row
    edge_count = sum(m.bit_count() for m in masks) // 2
    product = Graph(index.size, tuple(masks), edge_count)
    if edge_count != g.n * h.edge_count + h.n * g.edge_count:
        raise InternalContradiction("product edge count identity failed")
    return product


def s_map(
    u: int,
    v: int,
    dg: DominationCertificate,
    dh: DominationCertificate,
    fg: Surjection,
    fh: Surjection,
) -> tuple[int, int]:
    """Image of (u, v) under the total assignment onto D_G x D_H.

    Pairs with one coordinate inside its dominating set map along the other
    coordinate's surjection; pairs with both coordinates outside map along
    both. Pairs inside D_G x D_H are outside the domain.
    """
    in_dg = u in dg.members
    in_dh = v in dh.members
    if in_dg and in_dh:
        raise DomainViolation(f"({u},{v}) lies in the dominating-set product")
    if not (0 <= u < dg.host.n):
        raise VertexOutOfRange(f"first coordinate {u} outside host graph")
    if not (0 <= v < dh.host.n):
        raise VertexOutOfRange(f"second coordinate {v} outside host graph")
    if in_dg:
        return u, fh.mapping[v]
    if in_dh:
        return fg.mapping[u], v
    return fg.mapping[u], fh.mapping[v]


@dataclass(frozen=True)
class AdjointGraph:
    """Product graph plus adjoined edges, with full provenance.

    ``adjoined`` holds only the new edges; ``combined`` is ``base`` plus
    ``adjoined``. The certificates and surjections that produced the edge set
    are kept so reports can be reproduced choice for choice.
    """

    g: Graph
    h: Graph
    index: ProductIndex
    base: Graph
    adjoined: tuple[tuple[int, int], ...]
    combined: Graph
    dom_g: DominationCertificate
    dom_h: DominationCertificate
    sur_g: Surjection
    sur_h: Surjection

    def dominators(self) -> frozenset[int]:
        """D_G x D_H as flat product indices."""
        return frozenset(
            self.index.encode(u, v)
            for u in self.dom_g.members
            for v in self.dom_h.members
        )


def build_adjoint(
    g: Graph,
    h: Graph,
    dg: DominationCertificate,
    dh: DominationCertificate,
    fg: Surjection,
    fh: Surjection,
    max_vertices: int = DEFAULT_PRODUCT_CAP,
) -> AdjointGraph:
    """Adjoin one edge per doubly-non-dominated pair to the product.

    Every (u, v) with u outside D_G and v outside D_H gains the edge to
    (F_G(u), F_H(v)). The new edges are disjoint from the product's edge set
    (they change both coordinates, product edges never do) and number exactly
    (n_g - |D_G|) * (n_h - |D_H|); both facts are checked, not assumed.
    """
    if dg.host != g or dh.host != h:
        raise ValueError("certificate host does not match the given graphs")
    if fg.host != g or fg.dom_set != dg.members:
        raise ValueError("first surjection does not belong to the first certificate")
    if fh.host != h or fh.dom_set != dh.members:
        raise ValueError("second surjection does not belong to the second certificate")
    base = cartesian_product(g, h, max_vertices)
    index = ProductIndex(g.n, h.n)
    outside_g = [u for u in range(g.n) if u not in dg.members]
    outside_h = [v for v in range(h.n) if v not in dh.members]
    adjoined: list[tuple[int, int]] = []
    for u in outside_g:
        for v in outside_h:
            a = index.encode(u, v)
            b = index.encode(*s_map(u, v, dg, dh, fg, fh))
            adjoined.append((a, b) if a < b else (b, a))
    expected = (g.n - len(dg.members)) * (h.n - len(dh.members))
    if len(set(adjoined)) != expected:
        raise InternalContradiction("adjoined edge count does not match")
    for a, b in adjoined:
        if base.has_edge(a, b):
            raise InternalContradiction("adjoined edge already present in the product")
    combined = Graph.from_edges(index.size, base.edges() + adjoined)
    return AdjointGraph(
        g, h, index, base, tuple(adjoined), combined, dg, dh, fg, fh
    )


def verify_dominates(a: AdjointGraph) -> bool:
    """Direct check that D_G x D_H dominates the combined graph."""
    return is_dominating(a.combined, a.dominators())


def verify_minimal(a: AdjointGraph) -> bool:
    """Direct check that no single removal from D_G x D_H still dominates."""
    dominators = a.dominators()
    if not is_dominating(a.combined, dominators):
        raise NotDominating("the dominating-set product does not dominate")
    rest = set(dominators)
    for x in dominators:
        rest.discard(x)
        if is_dominating(a.combined, rest):
            return False
        rest.add(x)
    return True


def minimality_witnesses(a: AdjointGraph) -> dict[tuple[int, int], frozenset[int]]:
    """For each (u, v) in D_G x D_H, the vertices only it dominates.

    The witness set for (u, v) is the product of the private neighbors of u
    and of v; each member's sole dominating neighbor in the combined graph is
    (u, v) itself, so removal leaves it undominated. Every witness set is
    verified against the combined graph and must be nonempty.
    """
    dominators = a.dominators()
    out: dict[tuple[int, int], frozenset[int]] = {}
    for u in sorted(a.dom_g.members):
        pg = private_neighbors(a.g, a.dom_g.members, u)
        for v in sorted(a.dom_h.members):
            ph = private_neighbors(a.h, a.dom_h.members, v)
            removed = a.index.encode(u, v)
            witnesses = frozenset(
                a.index.encode(x, y) for x in pg for y in ph
            )
            if not witnesses:
                raise InternalContradiction(
                    f"({u},{v}) has an empty witness set; certificates not canonical"
                )
            shrunk = dominators - {removed}
            for w in witnesses:
                row = a.combined.adj[w]
                if any((row >> x) & 1 for x in shrunk) or w in shrunk:
                    raise InternalContradiction(
                        f"witness {w} for ({u},{v}) is still dominated"
                    )
            out[(u, v)] = witnesses
    return out
