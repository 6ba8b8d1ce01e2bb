use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::space::FiniteMetricSpace;
use crate::error::{Error, Result};

/// An undirected graph with positive edge lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
    adj: Vec<Vec<(usize, f64)>>,
}

/// Total order on f64 distances for the heap.
#[derive(Debug, Clone, Copy)]
struct Dist(f64);
impl PartialEq for Dist {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o).is_eq()
    }
}
impl Eq for Dist {}
impl PartialOrd for Dist {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Dist {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

impl Graph {
    /// Parallel edges keep the shorter length.
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let n = labels.len();
        let mut best: HashMap<(usize, usize), f64> = HashMap::new();
        let mut order = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at `{}`", labels[u])));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({},{}) has non-positive length {w}",
                    labels[u], labels[v]
                )));
            }
            let key = (u.min(v), u.max(v));
            match best.get_mut(&key) {
                Some(old) => *old = old.min(w),
                None => {
                    best.insert(key, w);
                    order.push(key);
                }
            }
        }
        let edges: Vec<_> = order.into_iter().map(|k| (k.0, k.1, best[&k])).collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for a in &mut adj {
            a.sort_by_key(|e| e.0);
        }
        Ok(Graph { labels, edges, adj })
    }

    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            (0..n).map(|i| i.to_string()).collect(),
            edges.iter().map(|&(u, v)| (u, v, 1.0)).collect(),
        )
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::unit(n, &e).expect("valid path")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("a cycle needs 3 vertices".into()));
        }
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::unit(n, &e)
    }

    /// The `w × h` grid graph; vertex `(x, y)` has index `y·w + x` and label `x,y`.
    pub fn grid(w: usize, h: usize) -> Self {
        let mut e = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                if x + 1 < w {
                    e.push((i, i + 1, 1.0));
                }
                if y + 1 < h {
                    e.push((i, i + w, 1.0));
                }
            }
        }
        let labels = (0..w * h).map(|i| format!("{},{}", i % w, i / w)).collect();
        Self::new(labels, e).expect("valid grid")
    }

    /// Complete binary tree of the given depth in heap order (root 0).
    pub fn binary_tree(depth: usize) -> Self {
        let n = (1usize << (depth + 1)) - 1;
        let e: Vec<_> = (1..n).map(|i| ((i - 1) / 2, i)).collect();
        Self::unit(n, &e).expect("valid tree")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    pub fn edge_length(&self, u: usize, v: usize) -> Option<f64> {
        self.adj[u].iter().find(|e| e.0 == v).map(|e| e.1)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Dijkstra from `s`. Ties are broken toward the smaller predecessor
    /// index, so the resulting shortest-path tree is deterministic.
    pub fn shortest_paths(&self, s: usize) -> (Vec<f64>, Vec<Option<usize>>) {
        let n = self.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        dist[s] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Dist(0.0), s)));
        while let Some(Reverse((Dist(d), u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &(v, w) in &self.adj[u] {
                let nd = d + w;
                let better = nd < dist[v]
                    || (nd == dist[v] && !done[v] && pred[v].is_some_and(|p| u < p));
                if better {
                    dist[v] = nd;
                    pred[v] = Some(u);
                    heap.push(Reverse((Dist(nd), v)));
                }
            }
        }
        (dist, pred)
    }

    /// Subgraph induced on `idx` (in that order).
    pub fn induced(&self, idx: &[usize]) -> Graph {
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v, w)| Some((*pos.get(&u)?, *pos.get(&v)?, w)))
            .collect();
        Graph::new(idx.iter().map(|&i| self.labels[i].clone()).collect(), edges)
            .expect("subgraph of a valid graph")
    }
}

/// All-pairs shortest-path metric.
pub fn graph_metric(g: &Graph) -> Result<FiniteMetricSpace> {
    let mut d = Vec::with_capacity(g.len());
    for s in 0..g.len() {
        let (row, _) = g.shortest_paths(s);
        if let Some(t) = row.iter().position(|x| x.is_infinite()) {
            return Err(Error::Disconnected(format!(
                "no path from `{}` to `{}`",
                g.labels[s], g.labels[t]
            )));
        }
        d.push(row);
    }
    Ok(FiniteMetricSpace::new_unchecked(g.labels.clone(), d))
}

/// Deterministic geodesics between all pairs: `paths.get(u, v)` is the
/// vertex sequence of the tree path from `min(u,v)` to `max(u,v)`, oriented
/// from `u` to `v`.
pub struct Geodesics {
    pred: Vec<Vec<Option<usize>>>,
}

impl Geodesics {
    pub fn new(g: &Graph) -> Self {
        Geodesics {
            pred: (0..g.len()).map(|s| g.shortest_paths(s).1).collect(),
        }
    }

    pub fn get(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (u.min(v), u.max(v));
        let mut p = vec![b];
        let mut cur = b;
        while cur != a {
            cur = self.pred[a][cur].expect("connected graph");
            p.push(cur);
        }
        // p runs b -> a
        if u == a {
            p.reverse();
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_cycle_metrics() {
        let m = graph_metric(&Graph::path(3)).unwrap();
        assert_eq!(m.d(0, 2), 2.0);
        let c = graph_metric(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(c.d(0, 2), 2.0);
        assert_eq!(c.d(0, 1), 1.0);
    }

    #[test]
    fn weighted_triangle_is_corrected() {
        let g = Graph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, 1.0), (1, 2, 2.0), (0, 2, 4.0)],
        )
        .unwrap();
        let m = graph_metric(&g).unwrap();
        assert_eq!((m.d(0, 1), m.d(1, 2), m.d(0, 2)), (1.0, 2.0, 3.0));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Graph::unit(2, &[(0, 0)]).is_err());
        assert!(Graph::new(vec!["a".into(), "b".into()], vec![(0, 1, 0.0)]).is_err());
        let g = Graph::unit(3, &[(0, 1)]).unwrap();
        assert!(matches!(graph_metric(&g), Err(Error::Disconnected(_))));
    }

    #[test]
    fn geodesics_are_consistent_both_ways() {
        let g = Graph::cycle(6).unwrap();
        let geo = Geodesics::new(&g);
        let p = geo.get(0, 3);
        let mut q = geo.get(3, 0);
        q.reverse();
        assert_eq!(p, q);
        assert_eq!(p.len(), 4);
    }
}
