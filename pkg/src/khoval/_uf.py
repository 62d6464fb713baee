"""Tiny union-find used for circle and component bookkeeping."""


class UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller element as root so labels are canonical
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry

    def labels(self):
        """Class label per element; classes numbered 0.. by smallest member."""
        out = []
        ids = {}
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in ids:
                ids[r] = len(ids)
            out.append(ids[r])
        return out, len(ids)
