"""Union-find with per-vertex Z2 parity.

Each vertex carries the negative-edge parity of its path to the current set
root.  Path compression updates stored parities so that for any two vertices
in the same set, the XOR of their parities equals the negative-edge parity of
any connecting path in the union forest.  Union by rank; rank ties promote
the first argument's root.
"""

from __future__ import annotations


class ParityDSU:
    __slots__ = ("parent", "rank", "parity", "set_count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.parity = [0] * n
        self.set_count = n

    def find(self, v: int) -> tuple[int, int]:
        """Return (root, parity of v relative to root), compressing the path."""
        parent = self.parent
        parity = self.parity
        root = v
        par = 0
        while parent[root] != root:
            par ^= parity[root]
            root = parent[root]
        cur = v
        cur_par = par
        while parent[cur] != root:
            nxt = parent[cur]
            nxt_par = cur_par ^ parity[cur]
            parent[cur] = root
            parity[cur] = cur_par
            cur = nxt
            cur_par = nxt_par
        return root, par

    def union(self, u: int, v: int, sign_bit: int) -> bool:
        """Merge the sets of u and v so that parity(u) XOR parity(v) == sign_bit.

        Returns True if a merge happened, False if u and v were already in the
        same set (state unchanged; the caller checks parity consistency).
        """
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            return False
        offset = pu ^ pv ^ sign_bit
        if self.rank[ru] < self.rank[rv]:
            self.parent[ru] = rv
            self.parity[ru] = offset
        else:
            self.parent[rv] = ru
            self.parity[rv] = offset
            if self.rank[ru] == self.rank[rv]:
                self.rank[ru] += 1
        self.set_count -= 1
        return True

    def same_set(self, u: int, v: int) -> bool:
        return self.find(u)[0] == self.find(v)[0]
