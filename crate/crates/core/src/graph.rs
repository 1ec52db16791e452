//! Finite multigraphs without looping edges, their induced subgraphs
//! and quotients, acyclic orientations with radial sectors, the
//! chromatic polynomial, and the graph Laplacian.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A finite multigraph without looping edges. Vertices carry string
/// labels in a fixed declared order; edges are an ordered list of
/// unordered vertex pairs, so parallel edges are allowed and every
/// edge has a stable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

/// JSON wire form: `{"vertices": ["a","b"], "edges": [["a","b"],["a","b"]]}`.
#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex label {l:?}")));
            }
        }
        for &(a, b) in &edges {
            if a >= labels.len() || b >= labels.len() {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "looping edge at vertex {:?}",
                    labels[a]
                )));
            }
        }
        Ok(Self { labels, edges })
    }

    pub fn from_labeled_edges<S: Into<String> + Clone>(
        vertices: Vec<S>,
        edges: &[(S, S)],
    ) -> Result<Self> {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut resolved = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b): (String, String) = (a.clone().into(), b.clone().into());
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {a:?}")))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {b:?}")))?;
            resolved.push((ia, ib));
        }
        Self::new(labels, resolved)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_labeled_edges(parsed.vertices, &parsed.edges)
    }

    pub fn to_json(&self) -> String {
        let wire = GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        };
        serde_json::to_string(&wire).expect("graph serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Valence counting parallel edges.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Distinct neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.insert(b);
            } else if b == v {
                out.insert(a);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return false;
        }
        let reached = self.component_of(0, &BTreeSet::new());
        reached.len() == self.labels.len()
    }

    /// First Betti number `|E| - |V| + b0`.
    pub fn betti_one(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count()
    }

    pub fn component_count(&self) -> usize {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut count = 0;
        for v in 0..self.labels.len() {
            if !seen.contains(&v) {
                count += 1;
                seen.extend(self.component_of(v, &BTreeSet::new()));
            }
        }
        count
    }

    /// BFS component of `start` in the graph minus the `excluded` vertices.
    fn component_of(&self, start: usize, excluded: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        if excluded.contains(&start) {
            return seen;
        }
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !excluded.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Distinct unordered vertex pairs carrying at least one edge.
    pub fn simple_edges(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect()
    }
}

/// An induced subgraph of a parent [`Graph`]: a vertex subset together
/// with every parent edge inside it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InducedSubgraph {
    /// Sorted vertex indices into the parent.
    pub vertices: Vec<usize>,
    /// Parent edge indices with both endpoints in `vertices`.
    pub edges: Vec<usize>,
}

impl InducedSubgraph {
    pub fn new(parent: &Graph, vertex_subset: &BTreeSet<usize>) -> Result<Self> {
        for &v in vertex_subset {
            if v >= parent.vertex_count() {
                return Err(Error::NotInduced(format!("vertex index {v} out of range")));
            }
        }
        let edges = parent
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| vertex_subset.contains(&a) && vertex_subset.contains(&b))
            .map(|(i, _)| i)
            .collect();
        Ok(Self { vertices: vertex_subset.iter().copied().collect(), edges })
    }

    pub fn empty() -> Self {
        Self { vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    /// Check the defining property against a parent graph.
    pub fn validate(&self, parent: &Graph) -> Result<()> {
        let set = self.vertex_set();
        let expect = InducedSubgraph::new(parent, &set)?;
        if expect.edges != self.edges {
            return Err(Error::NotInduced(
                "edge list does not match the induced edge set".into(),
            ));
        }
        Ok(())
    }

    /// The subgraph as a standalone graph (labels inherited).
    pub fn to_graph(&self, parent: &Graph) -> Graph {
        let pos: HashMap<usize, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Graph {
            labels: self.vertices.iter().map(|&v| parent.labels[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|&e| {
                    let (a, b) = parent.edges[e];
                    (pos[&a], pos[&b])
                })
                .collect(),
        }
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self, parent: &Graph) -> usize {
        self.to_graph(parent).component_count()
    }

    pub fn label_string(&self, parent: &Graph) -> String {
        let names: Vec<&str> = self.vertices.iter().map(|&v| parent.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// All induced subgraphs, restricted to `k` vertices when given, in
/// lexicographic order on the vertex subsets. `k = 0` yields an empty list.
pub fn induced_subgraphs(g: &Graph, k: Option<usize>) -> Vec<InducedSubgraph> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let sizes: Vec<usize> = match k {
        Some(0) => return out,
        Some(k) if k <= n => vec![k],
        Some(_) => return out,
        None => (1..=n).collect(),
    };
    // lexicographic enumeration of k-subsets of 0..n
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for k in sizes {
        rec(0, n, k, &mut Vec::new(), &mut subsets);
    }
    subsets.sort();
    for s in subsets {
        let set: BTreeSet<usize> = s.into_iter().collect();
        out.push(InducedSubgraph::new(g, &set).expect("subset in range"));
    }
    out
}

/// Biconnectivity: connected, and removing any single vertex with its
/// star leaves the rest connected. A single edge counts as biconnected.
pub fn is_biconnected(g: &Graph) -> Result<bool> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Ok(false);
    }
    if g.vertex_count() == 1 {
        return Ok(g.edge_count() > 0); // isolated vertex is not biconnected
    }
    for v in 0..g.vertex_count() {
        let excluded: BTreeSet<usize> = [v].into_iter().collect();
        let start = (0..g.vertex_count()).find(|&w| w != v).unwrap();
        let reached = g.component_of(start, &excluded);
        if reached.len() != g.vertex_count() - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Gamma // gamma`: shrink each connected component of the induced
/// subgraph to a fresh vertex. Edges internal to components disappear;
/// no looping edges can arise because `gamma` is induced.
pub fn quotient(g: &Graph, gamma: &InducedSubgraph) -> Result<Graph> {
    gamma.validate(g)?;
    let sub = gamma.to_graph(g);
    // representative (smallest parent index) per component of gamma
    let mut rep: HashMap<usize, usize> = HashMap::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for i in 0..sub.vertex_count() {
        if seen.contains(&i) {
            continue;
        }
        let comp = sub.component_of(i, &BTreeSet::new());
        let smallest = comp.iter().map(|&j| gamma.vertices[j]).min().unwrap();
        for &j in &comp {
            rep.insert(gamma.vertices[j], smallest);
        }
        seen.extend(comp);
    }
    let representative = |v: usize| -> usize { *rep.get(&v).unwrap_or(&v) };
    // quotient vertices in order of first occurrence of their representative
    let mut order: Vec<usize> = Vec::new();
    let mut pos: HashMap<usize, usize> = HashMap::new();
    for v in 0..g.vertex_count() {
        let r = representative(v);
        if !pos.contains_key(&r) {
            pos.insert(r, order.len());
            order.push(r);
        }
    }
    let labels = order.iter().map(|&r| g.labels[r].clone()).collect();
    let mut edges = Vec::new();
    for &(a, b) in &g.edges {
        let (ra, rb) = (representative(a), representative(b));
        if ra != rb {
            edges.push((pos[&ra], pos[&rb]));
        }
    }
    Ok(Graph { labels, edges })
}

/// An edge orientation: per-edge `(source, target)` pairs aligned with
/// the parent's edge indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Orientation {
    pub directions: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn source(&self, e: usize) -> usize {
        self.directions[e].0
    }

    pub fn target(&self, e: usize) -> usize {
        self.directions[e].1
    }

    /// True when the directed graph has no directed cycle. A pair of
    /// anti-parallel copies of the same edge is a directed 2-cycle.
    pub fn is_acyclic(&self, g: &Graph) -> bool {
        // Kahn's algorithm on the directed multigraph.
        let n = g.vertex_count();
        let mut indeg = vec![0usize; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(s, t) in &self.directions {
            indeg[t] += 1;
            adj[s].push(t);
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        removed == n
    }
}

/// All acyclic orientations, parallel edges co-oriented, in a
/// deterministic order (lexicographic in the per-class direction bits).
pub fn acyclic_orientations(g: &Graph) -> Vec<Orientation> {
    // one direction bit per parallel-edge class
    let classes: Vec<(usize, usize)> = {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &(a, b) in g.edges() {
            let key = (a.min(b), a.max(b));
            if seen.insert(key) {
                out.push(key);
            }
        }
        out
    };
    let m = classes.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let mut dir_of_class: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (i, &(a, b)) in classes.iter().enumerate() {
            let d = if mask >> i & 1 == 0 { (a, b) } else { (b, a) };
            dir_of_class.insert((a, b), d);
        }
        let directions = g
            .edges()
            .iter()
            .map(|&(a, b)| dir_of_class[&(a.min(b), a.max(b))])
            .collect();
        let o = Orientation { directions };
        if o.is_acyclic(g) {
            out.push(o);
        }
    }
    out
}

/// Chromatic polynomial of the underlying simple graph, coefficients in
/// ascending degree, by deletion–contraction with memoization on
/// canonical forms.
pub fn chromatic_polynomial(g: &Graph) -> Vec<i64> {
    let n = g.vertex_count();
    let simple: Vec<(usize, usize)> = g.simple_edges().into_iter().collect();
    let mut memo: HashMap<Vec<u64>, Vec<i64>> = HashMap::new();
    chromatic_rec(n, &simple, &mut memo)
}

fn chromatic_rec(
    n: usize,
    edges: &[(usize, usize)],
    memo: &mut HashMap<Vec<u64>, Vec<i64>>,
) -> Vec<i64> {
    if edges.is_empty() {
        // t^n
        let mut p = vec![0i64; n + 1];
        p[n] = 1;
        return p;
    }
    let key = canonical_form(n, edges);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let (a, b) = edges[0];
    // deletion
    let deleted: Vec<(usize, usize)> = edges[1..].to_vec();
    let p_del = chromatic_rec(n, &deleted, memo);
    // contraction: merge b into a, relabel to 0..n-2, drop duplicates
    let mut contracted: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(x, y) in &edges[1..] {
        let map = |v: usize| -> usize {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let (x, y) = (map(x), map(y));
        if x != y {
            contracted.insert((x.min(y), x.max(y)));
        }
    }
    let contracted: Vec<(usize, usize)> = contracted.into_iter().collect();
    let p_con = chromatic_rec(n - 1, &contracted, memo);
    let mut p = vec![0i64; n + 1];
    for (i, &c) in p_del.iter().enumerate() {
        p[i] += c;
    }
    for (i, &c) in p_con.iter().enumerate() {
        p[i] -= c;
    }
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    let q = p.clone();
    memo.insert(key, p);
    q
}

/// Canonical form of a simple graph on `n` vertices: the minimum
/// adjacency bitset over the labelings compatible with the stable
/// coloring from 1-dimensional Weisfeiler–Leman refinement. Vertices
/// in distinct color classes never swap, so only products of
/// within-class permutations are enumerated; the bitset records the
/// full adjacency, so equal keys mean isomorphic graphs.
fn canonical_form(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // color refinement to a fixpoint
    let mut color: Vec<u64> = adj.iter().map(|nb| nb.len() as u64).collect();
    for _ in 0..n {
        let mut sig: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = adj[v].iter().map(|&w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut sorted: Vec<(u64, Vec<u64>)> = sig.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u64> =
            sig.drain(..).map(|s| sorted.binary_search(&s).unwrap() as u64).collect();
        if next == color {
            break;
        }
        color = next;
    }
    // vertices ordered by color; permutations only within color classes
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (color[v], v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if color[c[0]] == color[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<u64>> = None;
    let mut position = vec![0usize; n];
    enumerate_class_perms(&classes, 0, &mut position, &mut |position| {
        let mut bits = vec![0u64; (n * n + 63) / 64 + 1];
        bits[0] = n as u64; // guard against cross-size collisions
        for &(a, b) in edges {
            let (x, y) = (position[a].min(position[b]), position[a].max(position[b]));
            let idx = x * n + y + 64;
            bits[idx / 64] |= 1 << (idx % 64);
        }
        if best.as_ref().map_or(true, |b| bits < *b) {
            best = Some(bits);
        }
    });
    best.unwrap()
}

/// Visit every labeling obtained by permuting vertices within their
/// color classes; `position[v]` is the new label of `v`.
fn enumerate_class_perms(
    classes: &[Vec<usize>],
    class_idx: usize,
    position: &mut Vec<usize>,
    visit: &mut impl FnMut(&Vec<usize>),
) {
    if class_idx == classes.len() {
        visit(position);
        return;
    }
    let offset: usize = classes[..class_idx].iter().map(|c| c.len()).sum();
    let members = &classes[class_idx];
    let mut perm: Vec<usize> = (0..members.len()).collect();
    loop {
        for (slot, &p) in perm.iter().enumerate() {
            position[members[p]] = offset + slot;
        }
        enumerate_class_perms(classes, class_idx + 1, position, visit);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Evaluate an integer polynomial (ascending coefficients) at `t`.
pub fn eval_poly(p: &[i64], t: i64) -> i64 {
    p.iter().rev().fold(0i64, |acc, &c| acc * t + c)
}

/// The radial sector attached to an acyclic orientation: the closure
/// of the per-edge inequalities `r_{s(e)} <= r_{t(e)}`, with sources
/// and sinks identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub orientation: Orientation,
    /// Pairs `(v, w)` with `r_v <= r_w` in the transitive closure, `v != w`.
    pub relations: Vec<(usize, usize)>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub multiplicity: u32,
}

/// Build the sector of an acyclic orientation. The multiplicity slot
/// defaults to 1; it is data, not something this crate computes.
pub fn sector(g: &Graph, o: &Orientation) -> Result<Sector> {
    sector_with_multiplicity(g, o, 1)
}

pub fn sector_with_multiplicity(g: &Graph, o: &Orientation, multiplicity: u32) -> Result<Sector> {
    if !o.is_acyclic(g) {
        return Err(Error::NotAcyclic);
    }
    let n = g.vertex_count();
    // Floyd–Warshall reachability
    let mut reach = vec![vec![false; n]; n];
    for &(s, t) in &o.directions {
        reach[s][t] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut relations = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if v != w && reach[v][w] {
                relations.push((v, w));
            }
        }
    }
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for &(s, t) in &o.directions {
        has_out[s] = true;
        has_in[t] = true;
    }
    let sources = (0..n).filter(|&v| !has_in[v] && has_out[v]).collect();
    let sinks = (0..n).filter(|&v| !has_out[v] && has_in[v]).collect();
    Ok(Sector { orientation: o.clone(), relations, sources, sinks, multiplicity })
}

impl Sector {
    /// Whether the radial point (indexed like the graph's vertices)
    /// satisfies every sector inequality.
    pub fn contains(&self, r: &[f64]) -> bool {
        self.relations.iter().all(|&(v, w)| r[v] <= r[w])
    }
}

/// Integer graph Laplacian `(Delta h)(v) = N_v h(v) - sum_{w ~ v} h(w)`
/// with `N_v` the number of distinct neighbors, so that row sums vanish
/// and constants are harmonic also on multigraphs.
pub fn graph_laplacian(g: &Graph) -> Result<Vec<Vec<i64>>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    for v in 0..n {
        let nb = g.neighbors(v);
        m[v][v] = nb.len() as i64;
        for w in nb {
            m[v][w] -= 1;
        }
    }
    Ok(m)
}

/// Per-vertex harmonic defect `h(v) - (1/N_v) sum_{w ~ v} h(w)`
/// (zero at isolated vertices).
pub fn harmonic_defects(g: &Graph, h: &BTreeMap<String, f64>) -> Result<Vec<f64>> {
    for l in g.labels() {
        if !h.contains_key(l) {
            return Err(Error::MissingVertex(l.clone()));
        }
    }
    let mut out = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let nb = g.neighbors(v);
        if nb.is_empty() {
            out.push(0.0);
            continue;
        }
        let mean: f64 = nb.iter().map(|&w| h[g.label(w)]).sum::<f64>() / nb.len() as f64;
        out.push(h[g.label(v)] - mean);
    }
    Ok(out)
}

/// `h(v) = (1/N_v) sum_{w ~ v} h(w)` at every vertex, within `tol`.
pub fn is_harmonic(g: &Graph, h: &BTreeMap<String, f64>, tol: f64) -> Result<bool> {
    Ok(harmonic_defects(g, h)?.iter().all(|d| d.abs() <= tol))
}

/// Census helpers shared by tests and the acceptance suite.
pub mod census {
    use super::*;

    pub fn single_edge() -> Graph {
        Graph::from_labeled_edges(vec!["a", "b"], &[("a", "b")]).unwrap()
    }

    pub fn triangle() -> Graph {
        Graph::from_labeled_edges(vec!["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
            .unwrap()
    }

    pub fn path3() -> Graph {
        Graph::from_labeled_edges(vec!["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    pub fn banana3() -> Graph {
        Graph::from_labeled_edges(vec!["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")]).unwrap()
    }

    /// Cycle graph with `k` vertices/edges.
    pub fn polygon(k: usize) -> Graph {
        let labels: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::new(labels, edges).unwrap()
    }

    /// All connected simple graphs on exactly `n` labeled vertices.
    pub fn connected_simple_graphs(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let g = Graph::new(labels, edges).unwrap();
            if g.is_connected() {
                out.push(g);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::census::*;
    use super::*;

    #[test]
    fn graph_construction() {
        assert!(Graph::from_labeled_edges(vec!["a"], &[("a", "a")]).is_err());
        assert!(Graph::from_labeled_edges(vec!["a", "a"], &[]).is_err());
        let g = Graph::from_json(r#"{"vertices":["a","b"],"edges":[["a","b"],["a","b"]]}"#)
            .unwrap();
        assert_eq!(g.edge_count(), 2);
        let round = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, round);
    }

    #[test]
    fn induced_subgraph_enumeration() {
        let t = triangle();
        let subs = induced_subgraphs(&t, Some(2));
        assert_eq!(subs.len(), 3);
        for s in &subs {
            assert_eq!(s.edge_count(), 1);
        }
        assert_eq!(induced_subgraphs(&t, Some(3)).len(), 1);
        assert_eq!(induced_subgraphs(&t, Some(3))[0].edge_count(), 3);
        assert_eq!(induced_subgraphs(&t, Some(0)).len(), 0);
        // 3-banana: the unique 2-subset inherits all parallel edges
        let b = banana3();
        let subs = induced_subgraphs(&b, Some(2));
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].edge_count(), 3);
        // binomial count
        let g = connected_simple_graphs(4).pop().unwrap();
        for k in 0..=4 {
            let expect = [1usize, 4, 6, 4, 1][k];
            let got = induced_subgraphs(&g, Some(k)).len();
            if k == 0 {
                assert_eq!(got, 0);
            } else {
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn biconnectivity() {
        assert!(is_biconnected(&single_edge()).unwrap());
        assert!(!is_biconnected(&path3()).unwrap());
        assert!(is_biconnected(&triangle()).unwrap());
        assert!(is_biconnected(&banana3()).unwrap());
        let empty = Graph::new(Vec::<String>::new(), vec![]).unwrap();
        assert_eq!(is_biconnected(&empty), Err(Error::EmptyGraph));
    }

    #[test]
    fn quotient_examples() {
        let t = triangle();
        let e = InducedSubgraph::new(&t, &[0usize, 1].into_iter().collect()).unwrap();
        let q = quotient(&t, &e).unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edge_count(), 2); // two parallel edges
        assert_eq!(q.simple_edges().len(), 1);

        let q_id = quotient(&t, &InducedSubgraph::empty()).unwrap();
        assert_eq!(q_id, t);

        let whole = InducedSubgraph::new(&t, &[0usize, 1, 2].into_iter().collect()).unwrap();
        let q_pt = quotient(&t, &whole).unwrap();
        assert_eq!(q_pt.vertex_count(), 1);
        assert_eq!(q_pt.edge_count(), 0);
    }

    #[test]
    fn quotient_vertex_bookkeeping() {
        // |V(G//gamma)| = |V| - |V_gamma| + b0(gamma) over a small census
        for g in connected_simple_graphs(4) {
            for sub in induced_subgraphs(&g, None) {
                let q = quotient(&g, &sub).unwrap();
                let b0 = sub.component_count(&g);
                assert_eq!(
                    q.vertex_count(),
                    g.vertex_count() - sub.vertex_count() + b0
                );
                for &(a, b) in q.edges() {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn orientations_and_chromatic() {
        assert_eq!(acyclic_orientations(&triangle()).len(), 6);
        assert_eq!(acyclic_orientations(&banana3()).len(), 2);
        assert_eq!(acyclic_orientations(&single_edge()).len(), 2);

        // triangle: t(t-1)(t-2) = -2t + 3t^2 - ... ascending: [0, 2, -3, 1]
        assert_eq!(chromatic_polynomial(&triangle()), vec![0, 2, -3, 1]);
        assert_eq!(chromatic_polynomial(&single_edge()), vec![0, -1, 1]);
        assert_eq!(chromatic_polynomial(&banana3()), vec![0, -1, 1]);

        // identity on the banana: (-1)^2 P(-1) = 2
        let p = chromatic_polynomial(&banana3());
        assert_eq!(eval_poly(&p, -1), 2);
    }

    #[test]
    fn chromatic_against_coloring_counts() {
        // proper-coloring brute force as an independent oracle
        fn colorings(g: &Graph, t: usize) -> i64 {
            let n = g.vertex_count();
            let simple: Vec<(usize, usize)> = g.simple_edges().into_iter().collect();
            let mut count = 0i64;
            let mut assign = vec![0usize; n];
            loop {
                if simple.iter().all(|&(a, b)| assign[a] != assign[b]) {
                    count += 1;
                }
                let mut i = 0;
                loop {
                    if i == n {
                        return count;
                    }
                    assign[i] += 1;
                    if assign[i] < t {
                        break;
                    }
                    assign[i] = 0;
                    i += 1;
                }
            }
        }
        for g in [triangle(), path3(), banana3()] {
            let p = chromatic_polynomial(&g);
            for t in 0..=4i64 {
                assert_eq!(eval_poly(&p, t), colorings(&g, t as usize), "t={t}");
            }
        }
    }

    #[test]
    fn orientation_chromatic_identity_small_census() {
        for n in 1..=4 {
            for g in connected_simple_graphs(n) {
                let p = chromatic_polynomial(&g);
                let expected = if n % 2 == 0 { eval_poly(&p, -1) } else { -eval_poly(&p, -1) };
                assert_eq!(acyclic_orientations(&g).len() as i64, expected);
            }
        }
    }

    #[test]
    fn sectors() {
        let t = triangle();
        // a->b, b->c, a->c
        let o = Orientation { directions: vec![(0, 1), (1, 2), (0, 2)] };
        let s = sector(&t, &o).unwrap();
        assert!(s.relations.contains(&(0, 1)));
        assert!(s.relations.contains(&(1, 2)));
        assert!(s.relations.contains(&(0, 2))); // closure
        assert_eq!(s.sources, vec![0]);
        assert_eq!(s.sinks, vec![2]);
        assert!(s.contains(&[0.1, 0.5, 0.9]));
        assert!(!s.contains(&[0.5, 0.1, 0.9]));

        let cyclic = Orientation { directions: vec![(0, 1), (1, 2), (2, 0)] };
        assert_eq!(sector(&t, &cyclic), Err(Error::NotAcyclic));

        let b = banana3();
        let ob = Orientation { directions: vec![(0, 1), (0, 1), (0, 1)] };
        let sb = sector(&b, &ob).unwrap();
        assert_eq!(sb.relations, vec![(0, 1)]);
        assert_eq!(sb.sources, vec![0]);
        assert_eq!(sb.sinks, vec![1]);
        assert_eq!(sb.multiplicity, 1);
    }

    #[test]
    fn orientation_partial_order_antisymmetry() {
        for g in connected_simple_graphs(4) {
            for o in acyclic_orientations(&g) {
                let s = sector(&g, &o).unwrap();
                for &(v, w) in &s.relations {
                    assert!(!s.relations.contains(&(w, v)), "antisymmetry violated");
                }
            }
        }
    }

    #[test]
    fn laplacian_and_harmonicity() {
        let p = path3();
        let m = graph_laplacian(&p).unwrap();
        assert_eq!(m, vec![vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]]);
        for row in &m {
            assert_eq!(row.iter().sum::<i64>(), 0);
        }
        // multigraph rows also sum to zero
        for row in graph_laplacian(&banana3()).unwrap() {
            assert_eq!(row.iter().sum::<i64>(), 0);
        }

        // h = (0, 1, 2) is harmonic at the interior vertex b but not
        // at the endpoints
        let h: BTreeMap<String, f64> =
            [("a", 0.0), ("b", 1.0), ("c", 2.0)].map(|(k, v)| (k.to_string(), v)).into();
        let defects = harmonic_defects(&p, &h).unwrap();
        assert!(defects[1].abs() < 1e-15); // 1 = (0 + 2)/2
        assert!(!is_harmonic(&p, &h, 1e-12).unwrap()); // endpoints fail

        let t = triangle();
        let constant: BTreeMap<String, f64> =
            [("a", 3.0), ("b", 3.0), ("c", 3.0)].map(|(k, v)| (k.to_string(), v)).into();
        assert!(is_harmonic(&t, &constant, 1e-12).unwrap());
        let bad: BTreeMap<String, f64> =
            [("a", 0.0), ("b", 0.0), ("c", 1.0)].map(|(k, v)| (k.to_string(), v)).into();
        assert!(!is_harmonic(&t, &bad, 1e-12).unwrap());
        let missing: BTreeMap<String, f64> =
            [("a", 0.0), ("b", 0.0)].map(|(k, v)| (k.to_string(), v)).into();
        assert!(is_harmonic(&t, &missing, 1e-12).is_err());
        // constants harmonic on a multigraph too
        let cb: BTreeMap<String, f64> =
            [("v", 2.0), ("w", 2.0)].map(|(k, v)| (k.to_string(), v)).into();
        assert!(is_harmonic(&banana3(), &cb, 1e-12).unwrap());
    }
}
