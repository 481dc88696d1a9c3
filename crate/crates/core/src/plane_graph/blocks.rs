use super::Graph;

/// Biconnected components (blocks) of any simple graph, each as a sorted
/// vertex list. Bridges give two-vertex blocks and isolated vertices give
/// singleton blocks; a cut vertex appears in every block it belongs to.
/// Blocks are sorted lexicographically.
pub fn blocks<G: Graph>(g: &G) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut state = Tarjan {
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        out: Vec::new(),
    };
    for root in 0..n {
        if state.disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            state.disc[root] = state.time;
            state.time += 1;
            state.out.push(vec![root]);
            continue;
        }
        state.visit(g, root, usize::MAX);
    }
    let mut out = state.out;
    for b in &mut out {
        b.sort_unstable();
        b.dedup();
    }
    out.sort();
    out
}

struct Tarjan {
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl Tarjan {
    fn visit<G: Graph>(&mut self, g: &G, v: usize, parent: usize) {
        self.disc[v] = self.time;
        self.low[v] = self.time;
        self.time += 1;
        for &u in g.neighbors(v) {
            if self.disc[u] == usize::MAX {
                self.edge_stack.push((v, u));
                self.visit(g, u, v);
                self.low[v] = self.low[v].min(self.low[u]);
                if self.low[u] >= self.disc[v] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (v, u) {
                            break;
                        }
                    }
                    self.out.push(block);
                }
            } else if u != parent && self.disc[u] < self.disc[v] {
                self.edge_stack.push((v, u));
                self.low[v] = self.low[v].min(self.disc[u]);
            }
        }
    }
}
