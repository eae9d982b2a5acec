//! Mixed graphs: a vertex set `0..n` with a set of ordered arcs.
//!
//! An unordered pair `{x, y}` is realized in one of three ways: the single
//! arc `(x, y)`, the single arc `(y, x)`, or both (a digon). The underlying
//! graph replaces every realized pair with a digon.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How an unordered pair `{x, y}` is realized, seen from `x`'s side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Only `(x, y)` is an arc.
    Forward,
    /// Only `(y, x)` is an arc.
    Backward,
    /// Both directions are arcs.
    Digon,
}

impl Orientation {
    /// `+1` forward, `-1` backward, `0` digon.
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Forward => 1,
            Orientation::Backward => -1,
            Orientation::Digon => 0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
            Orientation::Digon => Orientation::Digon,
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'f' | '>' => Some(Orientation::Forward),
            'b' | '<' => Some(Orientation::Backward),
            'd' | '-' => Some(Orientation::Digon),
            _ => None,
        }
    }
}

/// A weakly connected mixed graph without loops or repeated arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl MixedGraph {
    /// Builds a graph on `n` vertices from a list of arcs.
    ///
    /// Rejects loops, duplicate arcs, out-of-range endpoints and graphs whose
    /// underlying graph is disconnected.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::domain("a mixed graph needs at least one vertex"));
        }
        let mut set = BTreeSet::new();
        for (o, t) in arcs {
            if o >= n || t >= n {
                return Err(Error::domain(format!(
                    "arc ({o}, {t}) has an endpoint outside 0..{n}"
                )));
            }
            if o == t {
                return Err(Error::domain(format!("self-loop at vertex {o}")));
            }
            if !set.insert((o, t)) {
                return Err(Error::domain(format!("duplicate arc ({o}, {t})")));
            }
        }
        let mut neighbors = vec![BTreeSet::new(); n];
        for &(o, t) in &set {
            neighbors[o].insert(t);
            neighbors[t].insert(o);
        }
        let neighbors: Vec<Vec<usize>> = neighbors
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let g = MixedGraph {
            n,
            arcs: set,
            neighbors,
        };
        if !g.is_connected() {
            return Err(Error::domain("underlying graph is disconnected"));
        }
        Ok(g)
    }

    /// Builds a graph from unordered pairs with explicit orientations.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Orientation)>,
    {
        let mut arcs = Vec::new();
        for (x, y, o) in pairs {
            match o {
                Orientation::Forward => arcs.push((x, y)),
                Orientation::Backward => arcs.push((y, x)),
                Orientation::Digon => {
                    arcs.push((x, y));
                    arcs.push((y, x));
                }
            }
        }
        MixedGraph::new(n, arcs)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// The arc set in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, o: usize, t: usize) -> bool {
        self.arcs.contains(&(o, t))
    }

    /// How `{x, y}` is realized, or `None` if the vertices are not adjacent.
    pub fn orientation(&self, x: usize, y: usize) -> Option<Orientation> {
        match (self.has_arc(x, y), self.has_arc(y, x)) {
            (true, true) => Some(Orientation::Digon),
            (true, false) => Some(Orientation::Forward),
            (false, true) => Some(Orientation::Backward),
            (false, false) => None,
        }
    }

    /// Neighbors of `x` in the underlying graph, ascending.
    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.neighbors[x]
    }

    /// Degree of `x` in the underlying graph.
    pub fn degree(&self, x: usize) -> Result<usize> {
        if x >= self.n {
            return Err(Error::domain(format!(
                "vertex {x} out of range 0..{}",
                self.n
            )));
        }
        Ok(self.neighbors[x].len())
    }

    pub(crate) fn deg(&self, x: usize) -> usize {
        self.neighbors[x].len()
    }

    /// Number of edges of the underlying graph.
    pub fn n_edges(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `{x, y}` with `x < y`, each with its orientation from `x`.
    pub fn edges(&self) -> Vec<(usize, usize, Orientation)> {
        let mut out = Vec::with_capacity(self.n_edges());
        for x in 0..self.n {
            for &y in &self.neighbors[x] {
                if x < y {
                    out.push((x, y, self.orientation(x, y).expect("adjacent")));
                }
            }
        }
        out
    }

    /// Number of digons.
    pub fn n_digons(&self) -> usize {
        self.edges()
            .iter()
            .filter(|e| e.2 == Orientation::Digon)
            .count()
    }

    /// The underlying graph: every adjacency becomes a digon.
    pub fn underlying(&self) -> MixedGraph {
        let mut arcs = self.arcs.clone();
        for &(o, t) in &self.arcs {
            arcs.insert((t, o));
        }
        MixedGraph {
            n: self.n,
            arcs,
            neighbors: self.neighbors.clone(),
        }
    }

    /// Reverses every arc.
    pub fn reversed(&self) -> MixedGraph {
        MixedGraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(o, t)| (t, o)).collect(),
            neighbors: self.neighbors.clone(),
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<MixedGraph> {
        check_permutation(perm, self.n)?;
        MixedGraph::new(self.n, self.arcs.iter().map(|&(o, t)| (perm[o], perm[t])))
    }

    /// Length of a shortest cycle of the underlying graph, `None` for trees.
    ///
    /// Breadth-first search from every vertex; a non-tree edge `{v, w}` found
    /// from root `r` closes a cycle of length at most `d(v) + d(w) + 1`, and
    /// the minimum over all roots is exact.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.neighbors[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// True when the underlying graph is a tree.
    pub fn is_tree(&self) -> bool {
        self.n_edges() + 1 == self.n
    }

    /// True when the underlying graph is a path on at least two vertices.
    pub fn is_path(&self) -> bool {
        self.n >= 2 && self.is_tree() && self.neighbors.iter().all(|nb| nb.len() <= 2)
    }

    /// True when the underlying graph is a cycle.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.neighbors.iter().all(|nb| nb.len() == 2)
    }

    /// Vertices of a cycle in traversal order, starting at 0 and stepping to
    /// its smaller neighbor first.
    pub fn cycle_traversal(&self) -> Result<Vec<usize>> {
        if !self.is_cycle() {
            return Err(Error::domain("underlying graph is not a cycle"));
        }
        let mut order = Vec::with_capacity(self.n);
        let mut prev = 0;
        let mut cur = self.neighbors[0][0];
        order.push(0);
        while cur != 0 {
            order.push(cur);
            let nb = &self.neighbors[cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        Ok(order)
    }

    /// Vertices of a path in order from the smaller-labelled endpoint.
    pub fn path_order(&self) -> Result<Vec<usize>> {
        if !self.is_path() {
            return Err(Error::domain("underlying graph is not a path"));
        }
        let start = (0..self.n)
            .find(|&v| self.neighbors[v].len() == 1)
            .expect("a path has an endpoint");
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.neighbors[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Ok(order)
    }

    /// The symmetric arc set with its index.
    pub fn arc_index(&self) -> ArcIndex {
        ArcIndex::new(self)
    }

    /// Serializable form; forward-only arcs go to `arcs`, digons to `edges`.
    pub fn to_json(&self) -> GraphJson {
        let mut arcs = Vec::new();
        let mut edges = Vec::new();
        for (x, y, o) in self.edges() {
            match o {
                Orientation::Forward => arcs.push([x, y]),
                Orientation::Backward => arcs.push([y, x]),
                Orientation::Digon => edges.push([x, y]),
            }
        }
        arcs.sort_unstable();
        GraphJson {
            n: self.n,
            arcs,
            edges,
        }
    }

    pub fn from_json(doc: &GraphJson) -> Result<Self> {
        let mut arcs = Vec::with_capacity(doc.arcs.len() + 2 * doc.edges.len());
        arcs.extend(doc.arcs.iter().map(|a| (a[0], a[1])));
        for e in &doc.edges {
            arcs.push((e[0], e[1]));
            arcs.push((e[1], e[0]));
        }
        MixedGraph::new(doc.n, arcs)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(s)?;
        MixedGraph::from_json(&doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        MixedGraph::from_json_str(&text)
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedGraph(n={}", self.n)?;
        for (x, y, o) in self.edges() {
            let sym = match o {
                Orientation::Forward => "->",
                Orientation::Backward => "<-",
                Orientation::Digon => "--",
            };
            write!(f, " {x}{sym}{y}")?;
        }
        write!(f, ")")
    }
}

/// JSON interchange form of a mixed graph.
///
/// `edges` is shorthand for digons and may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default)]
    pub arcs: Vec<[usize; 2]>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::domain(format!(
            "permutation has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::domain("relabeling is not a permutation"));
        }
    }
    Ok(())
}

/// The mixed cycle of type `j` on `n` vertices.
///
/// Vertex `i` plays the role of `x_{i+1}`: the first `j` steps
/// `(0,1), …, (j-1, j)` are single arcs (indices mod `n`), the remaining
/// steps are digons.
pub fn build_cycle(n: usize, j: usize) -> Result<MixedGraph> {
    if n < 3 {
        return Err(Error::InvalidCycle(n));
    }
    if j > n {
        return Err(Error::domain(format!("cycle type {j} outside 0..={n}")));
    }
    let pairs = (0..n).map(|i| {
        let o = if i < j {
            Orientation::Forward
        } else {
            Orientation::Digon
        };
        (i, (i + 1) % n, o)
    });
    MixedGraph::from_pairs(n, pairs)
}

/// A mixed path on `n` vertices; step `i` realizes edge `{i, i+1}`.
///
/// `n = 1` yields the single vertex, which is the `P_1` base case of the
/// path determinant.
pub fn build_path(n: usize, orientation: &[Orientation]) -> Result<MixedGraph> {
    if n == 0 {
        return Err(Error::domain("a path needs at least one vertex"));
    }
    if orientation.len() != n - 1 {
        return Err(Error::domain(format!(
            "path on {n} vertices needs {} orientation symbols, got {}",
            n - 1,
            orientation.len()
        )));
    }
    MixedGraph::from_pairs(
        n,
        orientation.iter().enumerate().map(|(i, &o)| (i, i + 1, o)),
    )
}

/// Undirected path `P_n`.
pub fn undirected_path(n: usize) -> Result<MixedGraph> {
    build_path(n, &vec![Orientation::Digon; n.saturating_sub(1)])
}

/// The symmetric arc set `A^±` in lexicographic order.
///
/// Row and column `i` of every arc-space operator corresponds to
/// `arcs()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcIndex {
    arcs: Vec<(usize, usize)>,
    inverse: Vec<usize>,
}

impl ArcIndex {
    pub fn new(g: &MixedGraph) -> Self {
        let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(2 * g.n_edges());
        for x in 0..g.n_vertices() {
            for &y in g.neighbors(x) {
                arcs.push((x, y));
            }
        }
        // neighbors are ascending, so `arcs` is already lexicographic
        let inverse = arcs
            .iter()
            .map(|&(o, t)| arcs.binary_search(&(t, o)).expect("symmetric"))
            .collect();
        ArcIndex { arcs, inverse }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> (usize, usize) {
        self.arcs[i]
    }

    pub fn position(&self, o: usize, t: usize) -> Option<usize> {
        self.arcs.binary_search(&(o, t)).ok()
    }

    /// Index of the reversed arc.
    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn origin(&self, i: usize) -> usize {
        self.arcs[i].0
    }

    pub fn terminus(&self, i: usize) -> usize {
        self.arcs[i].1
    }
}
