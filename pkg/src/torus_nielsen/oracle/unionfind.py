class UnionFind:
    """Union-find over ``0..size-1`` with path compression, counting components.

    The root of every component is its least element.

    >>> uf = UnionFind(4)
    >>> uf.union(3, 2); uf.union(1, 0); uf.union(0, 1)
    >>> uf.num_components, uf.find(3)
    (2, 2)
    """

    def __init__(self, size: int):
        self.size = size
        self.parents = list(range(size))
        self.num_components = size

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        # compress the path so every visited element points at the root
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.num_components -= 1
