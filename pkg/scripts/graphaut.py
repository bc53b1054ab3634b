"""Bitset backtracking search for automorphisms of small graphs.

Used only by the fixture-building scripts: finds generators of the full
automorphism group of a vertex-colored graph up to a known target order.
Vertices are 0..n-1; adjacency is kept as per-vertex bitmasks and the
candidate sets of the partial-map search are pruned by adjacency and
non-adjacency constraints, so rigid strongly regular graphs collapse fast.
"""

from __future__ import annotations


class SearchBudgetExceeded(RuntimeError):
    pass


def _popcount(x: int) -> int:
    return x.bit_count()


class GraphAutSearch:
    def __init__(self, adj: list[int], colors: list[int] | None = None):
        self.n = n = len(adj)
        self.adj = adj
        self.full = (1 << n) - 1
        self.nonadj = [self.full ^ a ^ (1 << v) for v, a in enumerate(adj)]
        if colors is None:
            colors = [0] * n
        self.colors = colors
        self.color_mask: dict[int, int] = {}
        for v, c in enumerate(colors):
            self.color_mask[c] = self.color_mask.get(c, 0) | (1 << v)

    def find(self, prescribed: dict[int, int], node_budget: int = 200_000) -> list[int] | None:
        """One automorphism extending the prescribed vertex map, or None."""
        n = self.n
        cand = [self.color_mask[self.colors[v]] for v in range(n)]
        assigned: dict[int, int] = {}
        self._nodes = 0
        self._budget = node_budget

        def assign(v: int, w: int, cand: list[int]) -> list[int] | None:
            if not (cand[v] >> w) & 1:
                return None
            new = cand[:]
            new[v] = 1 << w
            av, aw = self.adj[v], self.adj[w]
            nv, nw = self.nonadj[v], self.nonadj[w]
            clear = ~(1 << w)
            for u in range(n):
                if u == v or u in assigned:
                    continue
                c = new[u] & clear
                if (av >> u) & 1:
                    c &= aw
                elif (nv >> u) & 1:
                    c &= nw
                if c == 0:
                    return None
                new[u] = c
            return new

        for v, w in prescribed.items():
            cand = assign(v, w, cand)
            if cand is None:
                return None
            assigned[v] = w

        def search(cand: list[int]) -> bool:
            self._nodes += 1
            if self._nodes > self._budget:
                raise SearchBudgetExceeded(f"aut search exceeded {self._budget} nodes")
            if len(assigned) == n:
                return True
            # most-constrained unassigned vertex
            best_v, best_c, best_k = -1, 0, 1 << 60
            for u in range(n):
                if u in assigned:
                    continue
                k = _popcount(cand[u])
                if k < best_k:
                    best_v, best_c, best_k = u, cand[u], k
                    if k == 1:
                        break
            c = best_c
            while c:
                w = (c & -c).bit_length() - 1
                c &= c - 1
                new = assign(best_v, w, cand)
                if new is not None:
                    assigned[best_v] = w
                    if search(new):
                        return True
                    del assigned[best_v]
            return False

        if search(cand):
            return [assigned[v] for v in range(n)]
        return None


def automorphism_group_gens(adj, target_order, group_cls, colors=None,
                            node_budget=200_000, verbose=False):
    """Generators of Aut(graph), collected until the known order is reached.

    Sweeps a stabilizer-chain-like schedule: for each prefix of the vertex
    list, tries to map the next vertex to every possible image while fixing
    the prefix pointwise.  Returns a group of the given class.
    """
    search = GraphAutSearch(adj, colors)
    n = len(adj)
    gens = []
    group = group_cls(n, [])

    for depth in range(n):
        if group.order() == target_order:
            break
        prefix = {v: v for v in range(depth)}
        for w in range(n):
            if w == depth:
                continue
            if group.order() == target_order:
                break
            try:
                got = search.find({**prefix, depth: w}, node_budget)
            except SearchBudgetExceeded:
                got = None
            if got is not None:
                candidate = gens + [got]
                bigger = group_cls(n, candidate)
                if bigger.order() > group.order():
                    gens = candidate
                    group = bigger
                    if verbose:
                        print(f"  depth {depth}, image {w}: order now {group.order()}")
    if group.order() != target_order:
        raise RuntimeError(
            f"automorphism search reached order {group.order()}, wanted {target_order}")
    return gens
