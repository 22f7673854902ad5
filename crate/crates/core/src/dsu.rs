/// Disjoint-set union with path compression, union by size, and an edge
/// counter per root.
#[derive(Clone, Debug)]
pub(crate) struct EdgeCountingDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<u64>,
}

impl EdgeCountingDsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            edges: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Records the edge `{a, b}`, merging the two sets if needed.
    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            self.edges[ra] += 1;
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.edges[ra] += self.edges[rb] + 1;
    }

    pub(crate) fn edge_count(&mut self, node: usize) -> u64 {
        let root = self.find(node);
        self.edges[root]
    }
}

/// Union-find without path compression so that unions can be undone in
/// LIFO order. Used by the branch-and-bound search.
#[derive(Clone, Debug)]
pub(crate) struct RollbackDsu {
    parent: Vec<u16>,
    size: Vec<u16>,
    edges: Vec<u32>,
    history: Vec<Undo>,
}

#[derive(Clone, Copy, Debug)]
enum Undo {
    Internal(u16),
    Merge { child: u16, root: u16 },
}

impl RollbackDsu {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n <= u16::MAX as usize);
        Self {
            parent: (0..n as u16).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut node: usize) -> usize {
        while self.parent[node] as usize != node {
            node = self.parent[node] as usize;
        }
        node
    }

    /// Adds the edge and returns the edge count of the resulting component.
    pub(crate) fn add_edge(&mut self, a: usize, b: usize) -> u32 {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            self.edges[ra] += 1;
            self.history.push(Undo::Internal(ra as u16));
            return self.edges[ra];
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u16;
        self.size[ra] += self.size[rb];
        self.edges[ra] += self.edges[rb] + 1;
        self.history.push(Undo::Merge {
            child: rb as u16,
            root: ra as u16,
        });
        self.edges[ra]
    }

    /// Reverts the most recent `add_edge`.
    pub(crate) fn undo(&mut self) {
        match self.history.pop().expect("undo without matching add_edge") {
            Undo::Internal(root) => self.edges[root as usize] -= 1,
            Undo::Merge { child, root } => {
                let (child, root) = (child as usize, root as usize);
                self.parent[child] = child as u16;
                self.size[root] -= self.size[child];
                self.edges[root] -= self.edges[child] + 1;
            }
        }
    }
}
