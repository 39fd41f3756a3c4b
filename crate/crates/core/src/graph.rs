//! Small weighted graphs with exact pairings as edge weights, and
//! weight-preserving isomorphism search.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::lorentz::{q_key, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    /// a (-2)-curve, drawn filled
    Curve,
    /// a rational face class, drawn as a circle
    Face,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    pub names: Vec<String>,
    pub kinds: Vec<VertexKind>,
    /// symmetric; zero means no edge; the diagonal is ignored
    pub w: Vec<Vec<Q>>,
}

impl Graph {
    pub fn new(names: Vec<String>, kinds: Vec<VertexKind>) -> Graph {
        let n = names.len();
        Graph { names, kinds, w: vec![vec![Q::zero(); n]; n] }
    }

    /// Graph of the nonzero pairings among `n` items.
    pub fn from_pairing(names: Vec<String>, kinds: Vec<VertexKind>, pair: impl Fn(usize, usize) -> Q) -> Graph {
        let mut g = Graph::new(names, kinds);
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                g.set(i, j, pair(i, j));
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.w[i][j] = x;
        self.w[j][i] = x;
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.len()).filter(|&j| j != i && !self.w[i][j].is_zero()).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !self.w[i][j].is_zero() {
                    out.push((i, j, self.w[i][j]));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Induced subgraph on the given vertices, in that order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let kinds = keep.iter().map(|&i| self.kinds[i]).collect();
        Graph::from_pairing(names, kinds, |a, b| self.w[keep[a]][keep[b]])
    }

    /// Graphviz rendering: weight-2 edges as two parallel edges, other
    /// weights labelled, faces as outlined circles.
    pub fn to_dot(&self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{title}\" {{");
        let _ = writeln!(s, "  node [label=\"\", width=0.15, height=0.15];");
        for (i, n) in self.names.iter().enumerate() {
            let style = match self.kinds[i] {
                VertexKind::Curve => "shape=point, style=filled",
                VertexKind::Face => "shape=circle, style=solid",
            };
            let _ = writeln!(s, "  v{i} [{style}, xlabel=\"{}\"];", n.replace('"', "\\\""));
        }
        for (i, j, w) in self.edges() {
            let k = q_key(w);
            match k.as_str() {
                "1" => {
                    let _ = writeln!(s, "  v{i} -- v{j} [weight=1];");
                }
                "2" => {
                    let _ = writeln!(s, "  v{i} -- v{j} [weight=2];");
                    let _ = writeln!(s, "  v{i} -- v{j} [weight=2];");
                }
                _ => {
                    let _ = writeln!(s, "  v{i} -- v{j} [weight=\"{k}\", label=\"{k}\", style=dashed];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Shared colour refinement of both graphs, so colours are comparable.
fn refine(gs: [&Graph; 2]) -> [Vec<usize>; 2] {
    let init = |g: &Graph, i: usize| {
        let mut ws: Vec<Q> = (0..g.len()).filter(|&j| j != i && !g.w[i][j].is_zero()).map(|j| g.w[i][j]).collect();
        ws.sort();
        format!("{:?}{:?}", g.kinds[i], ws)
    };
    let mut labels: [Vec<String>; 2] = [0, 1].map(|k| (0..gs[k].len()).map(|i| init(gs[k], i)).collect());
    let mut colours = intern(&labels);
    for _ in 0..gs[0].len().max(gs[1].len()) {
        labels = [0, 1].map(|k| {
            let g = gs[k];
            (0..g.len())
                .map(|i| {
                    let mut nb: Vec<(Q, usize)> = (0..g.len()).filter(|&j| j != i && !g.w[i][j].is_zero()).map(|j| (g.w[i][j], colours[k][j])).collect();
                    nb.sort();
                    format!("{}|{:?}", colours[k][i], nb)
                })
                .collect()
        });
        let next = intern(&labels);
        let count = |c: &[Vec<usize>; 2]| c.iter().flatten().collect::<std::collections::HashSet<_>>().len();
        let done = count(&next) == count(&colours);
        colours = next;
        if done {
            break;
        }
    }
    colours
}

fn intern(labels: &[Vec<String>; 2]) -> [Vec<usize>; 2] {
    let mut all: Vec<&String> = labels.iter().flatten().collect();
    all.sort();
    all.dedup();
    let id: HashMap<&String, usize> = all.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    [0, 1].map(|k| labels[k].iter().map(|s| id[s]).collect())
}

struct Search<'a> {
    a: &'a Graph,
    b: &'a Graph,
    ca: Vec<usize>,
    cb: Vec<usize>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn go(&mut self, k: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if k == self.order.len() {
            self.found.push(self.map.clone());
            return;
        }
        let v = self.order[k];
        for t in 0..self.b.len() {
            if self.used[t] || self.cb[t] != self.ca[v] {
                continue;
            }
            let ok = self.order[..k].iter().all(|&u| self.a.w[v][u] == self.b.w[t][self.map[u]]);
            if !ok {
                continue;
            }
            self.map[v] = t;
            self.used[t] = true;
            self.go(k + 1);
            self.used[t] = false;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn search(a: &Graph, b: &Graph, limit: usize) -> Vec<Vec<usize>> {
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return Vec::new();
    }
    let [ca, cb] = refine([a, b]);
    let hist = |c: &[usize]| {
        let mut m = BTreeMap::new();
        for x in c {
            *m.entry(*x).or_insert(0usize) += 1;
        }
        m
    };
    if hist(&ca) != hist(&cb) {
        return Vec::new();
    }
    // rarest colour first, then grow along edges so constraints bite early
    let freq = hist(&ca);
    let mut order: Vec<usize> = Vec::with_capacity(a.len());
    let mut placed = vec![false; a.len()];
    while order.len() < a.len() {
        let next = (0..a.len())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| !a.w[v][u].is_zero()).count();
                (links, usize::MAX - freq[&ca[v]], usize::MAX - v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut s = Search { a, b, ca, cb, order, map: vec![0; a.len()], used: vec![false; b.len()], limit, found: Vec::new() };
    s.go(0);
    s.found
}

/// A weight- and kind-preserving bijection `a -> b`, if one exists.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    search(a, b, 1).pop()
}

pub fn automorphism_count(g: &Graph) -> usize {
    search(g, g, usize::MAX).len()
}

pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    search(g, g, usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new((0..n).map(|i| i.to_string()).collect(), vec![VertexKind::Curve; n]);
        for &(i, j) in edges {
            g.set(i, j, Q::from_integer(1));
        }
        g
    }

    #[test]
    fn k4_is_not_c4() {
        let k4 = plain(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c4 = plain(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(isomorphism(&k4, &c4).is_none());
        assert_eq!(automorphism_count(&k4), 24);
        assert_eq!(automorphism_count(&c4), 8);
    }

    #[test]
    fn weights_are_preserved() {
        let mut a = plain(3, &[(0, 1), (1, 2)]);
        let b = plain(3, &[(0, 1), (1, 2)]);
        assert!(isomorphism(&a, &b).is_some());
        a.set(0, 1, Q::from_integer(2));
        assert!(isomorphism(&a, &b).is_none());
        assert_eq!(automorphism_count(&a), 1);
    }

    #[test]
    fn relabelled_path() {
        let a = plain(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let b = plain(5, &[(4, 2), (2, 0), (0, 3), (3, 1)]);
        let m = isomorphism(&a, &b).unwrap();
        for (i, j, w) in a.edges() {
            assert_eq!(b.w[m[i]][m[j]], w);
        }
    }
}
