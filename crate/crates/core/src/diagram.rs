//! Finite diagrams of vector spaces and linear maps.
//!
//! A [`Diagram`] is validated when it is built: edge matrices must match the
//! node dimensions, the graph must be acyclic and (as an undirected graph)
//! connected, and by default every pair of parallel paths must compose to the
//! same matrix.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ElementInfo, Poset, Provenance};
use crate::linalg::{
    kernel_basis, quotient_with_injections, rank, subspace_with_projections, FpMatrix,
    QuotientRealization, SubspaceRealization,
};

/// What a node stands for when a diagram already contains derived spaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    #[default]
    Original,
    Limit,
    Colimit,
}

/// Optional annotation naming one of the canonical shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeHint {
    Chain,
    Grid,
    Zigzag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub dim: usize,
    pub label: Option<String>,
    pub kind: NodeKind,
    /// Position in a canonical shape, e.g. `[i, j]` on a grid.
    pub at: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub matrix: FpMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<NodeKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    at: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    source: String,
    target: String,
    matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    prime: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<ShapeHint>,
    nodes: Vec<NodeDoc>,
    edges: Vec<EdgeDoc>,
}

/// Load-time switches.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Accept diagrams whose parallel paths disagree.
    pub allow_noncommutative: bool,
}

/// Two paths between the same nodes with different composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub source: String,
    pub target: String,
    /// Edge ids along each path, in order.
    pub first: Vec<String>,
    pub second: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = |p: &[String]| {
            if p.is_empty() {
                "identity".to_string()
            } else {
                p.join(" then ")
            }
        };
        write!(
            f,
            "{} to {}: [{}] differs from [{}]",
            self.source,
            self.target,
            path(&self.first),
            path(&self.second)
        )
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    prime: u32,
    shape: Option<ShapeHint>,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
    /// Outgoing edge indices per node, in edge order.
    out_edges: Vec<Vec<usize>>,
    topo: Vec<usize>,
    /// `reach[u]` holds every `v` with a directed path `u → v` (including `u`).
    reach: Vec<FixedBitSet>,
}

/// Fluent construction of a [`Diagram`].
///
/// ```
/// use persilat::diagram::DiagramBuilder;
/// let d = DiagramBuilder::new(2)
///     .node("A", 1)
///     .node("B", 1)
///     .edge("f", "A", "B", vec![vec![1]])
///     .build()
///     .unwrap();
/// assert_eq!(d.edges().len(), 1);
/// ```
#[derive(Clone, Debug)]
pub struct DiagramBuilder {
    doc: DiagramDoc,
    options: LoadOptions,
}

impl DiagramBuilder {
    pub fn new(prime: u32) -> Self {
        Self {
            doc: DiagramDoc {
                prime,
                shape: None,
                nodes: Vec::new(),
                edges: Vec::new(),
            },
            options: LoadOptions::default(),
        }
    }

    pub fn shape(mut self, shape: ShapeHint) -> Self {
        self.doc.shape = Some(shape);
        self
    }

    pub fn node(self, id: impl Into<String>, dim: usize) -> Self {
        self.node_with(id, dim, NodeKind::Original, None)
    }

    pub fn node_with(
        mut self,
        id: impl Into<String>,
        dim: usize,
        kind: NodeKind,
        at: Option<Vec<usize>>,
    ) -> Self {
        self.doc.nodes.push(NodeDoc {
            id: id.into(),
            dim,
            label: None,
            kind: (kind != NodeKind::Original).then_some(kind),
            at,
        });
        self
    }

    /// Attaches a display label to the most recently added node.
    pub fn label(mut self, label: impl Into<String>) -> Self {
        if let Some(n) = self.doc.nodes.last_mut() {
            n.label = Some(label.into());
        }
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        matrix: Vec<Vec<u32>>,
    ) -> Self {
        self.doc.edges.push(EdgeDoc {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            matrix,
        });
        self
    }

    pub fn edge_matrix(
        self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        matrix: &FpMatrix,
    ) -> Self {
        self.edge(id, source, target, matrix.to_rows())
    }

    pub fn allow_noncommutative(mut self, allow: bool) -> Self {
        self.options.allow_noncommutative = allow;
        self
    }

    pub fn build(self) -> Result<Diagram> {
        Diagram::from_doc(self.doc, self.options)
    }
}

impl Diagram {
    /// Parses and validates a JSON document, rejecting non-commutative input.
    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json_str_with(text, LoadOptions::default())
    }

    pub fn from_json_str_with(text: &str, options: LoadOptions) -> Result<Self> {
        let doc: DiagramDoc =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_doc(doc, options)
    }

    fn from_doc(doc: DiagramDoc, options: LoadOptions) -> Result<Self> {
        let prime = doc.prime;
        if !crate::linalg::is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if doc.nodes.is_empty() {
            return Err(Error::Schema("diagram has no nodes".into()));
        }
        let mut index = HashMap::new();
        let mut nodes = Vec::with_capacity(doc.nodes.len());
        for n in doc.nodes {
            if index.insert(n.id.clone(), nodes.len()).is_some() {
                return Err(Error::DuplicateId(n.id));
            }
            nodes.push(Node {
                id: n.id,
                dim: n.dim,
                label: n.label,
                kind: n.kind.unwrap_or_default(),
                at: n.at,
            });
        }
        let mut edge_ids = HashMap::new();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in doc.edges {
            if index.contains_key(&e.id) || edge_ids.insert(e.id.clone(), ()).is_some() {
                return Err(Error::DuplicateId(e.id));
            }
            let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownNode(id.to_string()));
            let source = lookup(&e.source)?;
            let target = lookup(&e.target)?;
            let (rows, cols) = (nodes[target].dim, nodes[source].dim);
            let bad_row = e.matrix.iter().find(|r| r.len() != cols);
            if e.matrix.len() != rows || bad_row.is_some() {
                return Err(Error::EdgeDimensionMismatch {
                    edge: e.id,
                    rows,
                    cols,
                    found_rows: e.matrix.len(),
                    found_cols: bad_row.or(e.matrix.first()).map_or(cols, Vec::len),
                });
            }
            let matrix = FpMatrix::from_rows(prime, cols, &e.matrix)?;
            edges.push(Edge {
                id: e.id,
                source,
                target,
                matrix,
            });
        }

        let n = nodes.len();
        let mut out_edges = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            out_edges[e.source].push(k);
        }
        let topo = topological_order(&nodes, &edges, &out_edges)?;
        check_connected(&nodes, &edges)?;

        let mut reach = vec![FixedBitSet::with_capacity(n); n];
        for &u in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(u);
            for &k in &out_edges[u] {
                set.union_with(&reach[edges[k].target]);
            }
            reach[u] = set;
        }

        let d = Diagram {
            prime,
            shape: doc.shape,
            nodes,
            edges,
            index,
            out_edges,
            topo,
            reach,
        };
        if !options.allow_noncommutative {
            let violations = check_commutativity(&d);
            if !violations.is_empty() {
                return Err(Error::NonCommutative(violations.len()));
            }
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        let doc = DiagramDoc {
            prime: self.prime,
            shape: self.shape,
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeDoc {
                    id: n.id.clone(),
                    dim: n.dim,
                    label: n.label.clone(),
                    kind: (n.kind != NodeKind::Original).then_some(n.kind),
                    at: n.at.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    source: self.nodes[e.source].id.clone(),
                    target: self.nodes[e.target].id.clone(),
                    matrix: e.matrix.to_rows(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("diagram serializes")
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn shape(&self) -> Option<ShapeHint> {
        self.shape
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn node(&self, id: &str) -> Result<&Node> {
        Ok(&self.nodes[self.node_index(id)?])
    }

    /// Whether there is a directed path from `u` to `v` (indices).
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.reach[u].contains(v)
    }

    /// Composite matrix along the first path found from `u` to `v`, or `None`
    /// if `v` is unreachable. On a commutative diagram every path gives the
    /// same matrix.
    pub fn composite(&self, u: usize, v: usize) -> Option<FpMatrix> {
        if !self.reaches(u, v) {
            return None;
        }
        self.walk_from(u, &mut Vec::new()).swap_remove(v).map(|(m, _)| m)
    }

    /// Propagates composites from `u` in topological order. Each node keeps
    /// the first path that reached it; every other incoming path is compared
    /// against it and disagreements are appended to `violations`.
    fn walk_from(&self, u: usize, violations: &mut Vec<Violation>) -> Vec<Option<(FpMatrix, Vec<usize>)>> {
        let mut comp: Vec<Option<(FpMatrix, Vec<usize>)>> = vec![None; self.nodes.len()];
        comp[u] = Some((FpMatrix::identity(self.nodes[u].dim, self.prime), Vec::new()));
        for &w in &self.topo {
            let Some((mw, pw)) = comp[w].clone() else { continue };
            for &k in &self.out_edges[w] {
                let e = &self.edges[k];
                let m = e.matrix.mul(&mw).expect("validated dimensions");
                let mut path = pw.clone();
                path.push(k);
                match &comp[e.target] {
                    None => comp[e.target] = Some((m, path)),
                    Some((existing, first)) if *existing != m => {
                        let ids = |p: &[usize]| p.iter().map(|&i| self.edges[i].id.clone()).collect();
                        violations.push(Violation {
                            source: self.nodes[u].id.clone(),
                            target: self.nodes[e.target].id.clone(),
                            first: ids(first),
                            second: ids(&path),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        comp
    }

    fn pair(&self, x: &str, y: &str) -> Result<(usize, usize)> {
        Ok((self.node_index(x)?, self.node_index(y)?))
    }

    fn common_targets(&self, x: usize, y: usize) -> Vec<usize> {
        let mut common = self.reach[x].clone();
        common.intersect_with(&self.reach[y]);
        common.ones().collect()
    }

    fn common_sources(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&z| self.reaches(z, x) && self.reaches(z, y))
            .collect()
    }

    fn meet_over(&self, x: usize, y: usize, targets: &[usize]) -> Result<SubspaceRealization> {
        let (dx, dy) = (self.nodes[x].dim, self.nodes[y].dim);
        let mut constraints = FpMatrix::zeros(0, dx + dy, self.prime);
        for &z in targets {
            let f = self.composite(x, z).expect("common target");
            let g = self.composite(y, z).expect("common target");
            constraints = constraints.vstack(&f.hstack(&g.neg())?)?;
        }
        let basis = kernel_basis(&constraints);
        let (xid, yid) = (self.nodes[x].id.as_str(), self.nodes[y].id.as_str());
        Ok(subspace_with_projections(basis, [(xid, dx), (yid, dy)]))
    }

    fn join_over(&self, x: usize, y: usize, sources: &[usize]) -> Result<QuotientRealization> {
        let (dx, dy) = (self.nodes[x].dim, self.nodes[y].dim);
        let mut relations = FpMatrix::zeros(dx + dy, 0, self.prime);
        for &z in sources {
            let f = self.composite(z, x).expect("common source");
            let g = self.composite(z, y).expect("common source");
            relations = relations.hstack(&f.vstack(&g.neg())?)?;
        }
        let (xid, yid) = (self.nodes[x].id.as_str(), self.nodes[y].id.as_str());
        Ok(quotient_with_injections(&relations, [(xid, dx), (yid, dy)]))
    }

    /// Meet realized over every common target, not only the minimal ones.
    pub fn meet_realize_all_targets(&self, x: &str, y: &str) -> Result<SubspaceRealization> {
        let (xi, yi) = self.pair(x, y)?;
        let targets = self.common_targets(xi, yi);
        if targets.is_empty() {
            return Err(no_target(x, y));
        }
        self.meet_over(xi, yi, &targets)
    }

    /// Join realized over every common source, not only the maximal ones.
    pub fn join_realize_all_sources(&self, x: &str, y: &str) -> Result<QuotientRealization> {
        let (xi, yi) = self.pair(x, y)?;
        let sources = self.common_sources(xi, yi);
        if sources.is_empty() {
            return Err(no_source(x, y));
        }
        self.join_over(xi, yi, &sources)
    }
}

fn no_target(x: &str, y: &str) -> Error {
    Error::NoCommonTarget {
        x: x.to_string(),
        y: y.to_string(),
    }
}

fn no_source(x: &str, y: &str) -> Error {
    Error::NoCommonSource {
        x: x.to_string(),
        y: y.to_string(),
    }
}

fn topological_order(nodes: &[Node], edges: &[Edge], out_edges: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = nodes.len();
    let mut indegree = vec![0usize; n];
    for e in edges {
        indegree[e.target] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| indegree[u] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &k in &out_edges[u] {
            let v = edges[k].target;
            indegree[v] -= 1;
            if indegree[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover node has a leftover predecessor, so walking backwards
    // through leftovers must revisit a node, which then lies on a cycle.
    let mut preds = vec![None; n];
    for e in edges {
        if indegree[e.source] > 0 && indegree[e.target] > 0 {
            preds[e.target].get_or_insert(e.source);
        }
    }
    let mut seen = vec![false; n];
    let mut u = (0..n).find(|&u| indegree[u] > 0).expect("leftover node");
    while !seen[u] {
        seen[u] = true;
        u = preds[u].expect("leftover nodes have leftover predecessors");
    }
    Err(Error::Cycle {
        node: nodes[u].id.clone(),
    })
}

fn check_connected(nodes: &[Node], edges: &[Edge]) -> Result<()> {
    let n = nodes.len();
    let mut adjacent = vec![Vec::new(); n];
    for e in edges {
        adjacent[e.source].push(e.target);
        adjacent[e.target].push(e.source);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adjacent[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(missing) => Err(Error::Disconnected {
            node: nodes[missing].id.clone(),
            root: nodes[0].id.clone(),
        }),
        None => Ok(()),
    }
}

pub fn load_diagram(text: &str) -> Result<Diagram> {
    Diagram::from_json_str(text)
}

/// Every pair of paths with the same endpoints whose composites differ.
///
/// Paths are compared locally: from each source, each node keeps the first
/// composite that reached it and every other incoming edge is checked
/// against it. If all local checks pass, all paths agree by induction.
pub fn check_commutativity(d: &Diagram) -> Vec<Violation> {
    let mut violations = Vec::new();
    for u in 0..d.nodes.len() {
        d.walk_from(u, &mut violations);
    }
    violations
}

/// The reachability order of a diagram. Each class holds the node ids
/// identified together; element `k` of `poset` is class `k`.
#[derive(Clone, Debug)]
pub struct DiagramPoset {
    pub classes: Vec<Vec<String>>,
    pub poset: Poset,
}

impl DiagramPoset {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Order on nodes given by reachability.
///
/// Validated diagrams are acyclic, so no two nodes reach each other and every
/// class is a single node.
pub fn poset_of(d: &Diagram) -> Result<DiagramPoset> {
    let elements = d
        .nodes
        .iter()
        .map(|n| {
            let provenance = match n.kind {
                NodeKind::Original => Provenance::Original(n.id.clone()),
                NodeKind::Limit => Provenance::Limit,
                NodeKind::Colimit => Provenance::Colimit,
            };
            ElementInfo::new(n.id.clone(), provenance)
        })
        .collect();
    let poset = Poset::from_up_sets(elements, d.reach.clone())?;
    Ok(DiagramPoset {
        classes: d.nodes.iter().map(|n| vec![n.id.clone()]).collect(),
        poset,
    })
}

/// `x ∧ y` as the subspace of `X ⊕ Y` cut out by the pullbacks over the
/// minimal common targets. Projections are named by node id.
pub fn meet_realize(d: &Diagram, x: &str, y: &str) -> Result<SubspaceRealization> {
    let (xi, yi) = d.pair(x, y)?;
    let common = d.common_targets(xi, yi);
    if common.is_empty() {
        return Err(no_target(x, y));
    }
    let minimal: Vec<usize> = common
        .iter()
        .copied()
        .filter(|&z| !common.iter().any(|&w| w != z && d.reaches(w, z)))
        .collect();
    d.meet_over(xi, yi, &minimal)
}

/// `x ∨ y` as the quotient of `X ⊕ Y` by the gluing over the maximal common
/// sources. Injections are named by node id.
pub fn join_realize(d: &Diagram, x: &str, y: &str) -> Result<QuotientRealization> {
    let (xi, yi) = d.pair(x, y)?;
    let common = d.common_sources(xi, yi);
    if common.is_empty() {
        return Err(no_source(x, y));
    }
    let maximal: Vec<usize> = common
        .iter()
        .copied()
        .filter(|&z| !common.iter().any(|&w| w != z && d.reaches(z, w)))
        .collect();
    d.join_over(xi, yi, &maximal)
}

/// Rank of `x ∧ y → X → x ∨ y`: projection out of the meet followed by the
/// injection into the join.
pub fn persistence_rank(d: &Diagram, x: &str, y: &str) -> Result<usize> {
    let meet = meet_realize(d, x, y)?;
    let join = join_realize(d, x, y)?;
    // Both realizations name their first summand after `x`.
    let project = &meet.projections[0].1;
    let inject = &join.injections[0].1;
    Ok(rank(&inject.mul(project)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::solve_matrix;

    fn chain(m: u32) -> Diagram {
        DiagramBuilder::new(2)
            .node("X0", 1)
            .node("X1", 1)
            .edge("e", "X0", "X1", vec![vec![m]])
            .build()
            .unwrap()
    }

    fn cospan() -> Diagram {
        DiagramBuilder::new(2)
            .node("X0", 1)
            .node("X01", 1)
            .node("X1", 1)
            .edge("a", "X0", "X01", vec![vec![1]])
            .edge("b", "X1", "X01", vec![vec![1]])
            .build()
            .unwrap()
    }

    fn square(bottom_right: u32) -> DiagramBuilder {
        DiagramBuilder::new(2)
            .node("A", 1)
            .node("B", 1)
            .node("C", 1)
            .node("D", 1)
            .edge("ab", "A", "B", vec![vec![1]])
            .edge("bd", "B", "D", vec![vec![1]])
            .edge("ac", "A", "C", vec![vec![1]])
            .edge("cd", "C", "D", vec![vec![bottom_right]])
    }

    #[test]
    fn loads_json_chain() {
        let text = r#"{"prime": 2,
            "nodes": [{"id": "A", "dim": 1}, {"id": "B", "dim": 1, "label": "H1"}],
            "edges": [{"id": "f", "source": "A", "target": "B", "matrix": [[1]]}]}"#;
        let d = load_diagram(text).unwrap();
        assert_eq!(d.nodes().len(), 2);
        assert_eq!(d.edges().len(), 1);
        assert_eq!(d.node("B").unwrap().label.as_deref(), Some("H1"));
        let again = load_diagram(&d.to_json()).unwrap();
        assert_eq!(again.nodes(), d.nodes());
        assert_eq!(again.edges(), d.edges());
    }

    #[test]
    fn load_errors_name_the_culprit() {
        let err = DiagramBuilder::new(2)
            .node("A", 1)
            .node("B", 1)
            .edge("f", "A", "B", vec![vec![1, 0], vec![0, 1]])
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::EdgeDimensionMismatch { ref edge, .. } if edge == "f"));

        let err = DiagramBuilder::new(2)
            .node("A", 1)
            .node("B", 1)
            .edge("f", "A", "B", vec![vec![1]])
            .edge("g", "B", "A", vec![vec![0]])
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Cycle { .. }));

        let err = DiagramBuilder::new(2).node("A", 1).node("B", 1).build().unwrap_err();
        assert_eq!(
            err,
            Error::Disconnected {
                node: "B".into(),
                root: "A".into()
            }
        );

        let err = DiagramBuilder::new(2).node("A", 1).node("A", 2).build().unwrap_err();
        assert_eq!(err, Error::DuplicateId("A".into()));

        let err = DiagramBuilder::new(2)
            .node("A", 1)
            .edge("f", "A", "Z", vec![vec![1]])
            .build()
            .unwrap_err();
        assert_eq!(err, Error::UnknownNode("Z".into()));

        assert!(matches!(load_diagram("{\"prime\": 2}"), Err(Error::Schema(_))));
        assert!(matches!(
            load_diagram(r#"{"prime": 4, "nodes": [{"id": "A", "dim": 0}], "edges": []}"#),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn cycle_error_names_a_node_on_the_cycle() {
        let err = DiagramBuilder::new(2)
            .node("S", 1)
            .node("A", 1)
            .node("B", 1)
            .edge("s", "S", "A", vec![vec![1]])
            .edge("f", "A", "B", vec![vec![1]])
            .edge("g", "B", "A", vec![vec![1]])
            .build()
            .unwrap_err();
        let Error::Cycle { node } = err else { panic!("expected cycle") };
        assert!(node == "A" || node == "B");
    }

    #[test]
    fn commutativity_reports() {
        assert!(check_commutativity(&square(1).build().unwrap()).is_empty());
        assert!(check_commutativity(&chain(1)).is_empty());
        let err = square(0).build().unwrap_err();
        assert_eq!(err, Error::NonCommutative(1));
        let d = square(0).allow_noncommutative(true).build().unwrap();
        let report = check_commutativity(&d);
        assert_eq!(report.len(), 1);
        let v = &report[0];
        assert_eq!((v.source.as_str(), v.target.as_str()), ("A", "D"));
        let mut paths = vec![v.first.clone(), v.second.clone()];
        paths.sort();
        assert_eq!(paths, vec![vec!["ab", "bd"], vec!["ac", "cd"]]);
    }

    #[test]
    fn poset_examples() {
        let p = poset_of(&cospan()).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.leq(0, 1) && p.leq(2, 1));
        assert!(!p.leq(0, 2) && !p.leq(2, 0));

        let grid = DiagramBuilder::new(2)
            .node("X00", 1)
            .node("X01", 1)
            .node("X10", 1)
            .node("X11", 1)
            .edge("a", "X00", "X01", vec![vec![1]])
            .edge("b", "X00", "X10", vec![vec![1]])
            .edge("c", "X01", "X11", vec![vec![1]])
            .edge("d", "X10", "X11", vec![vec![1]])
            .build()
            .unwrap();
        let p = poset_of(&grid).unwrap();
        assert!((0..4).all(|k| p.leq(0, k) && p.leq(k, 3)));
        assert!(!p.leq(1, 2) && !p.leq(2, 1));
    }

    #[test]
    fn meet_examples() {
        let d = chain(1);
        let m = meet_realize(&d, "X0", "X0").unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(meet_realize(&d, "X0", "X1").unwrap().dim(), 1);
        let m = meet_realize(&cospan(), "X0", "X1").unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.basis.column(0), vec![1, 1]);
        assert_eq!(
            meet_realize(&cospan(), "X01", "X1").unwrap().dim(),
            1,
            "related elements meet in the lower one"
        );
    }

    #[test]
    fn join_examples() {
        let d = chain(1);
        assert_eq!(join_realize(&d, "X1", "X1").unwrap().dim(), 1);
        assert_eq!(join_realize(&d, "X0", "X1").unwrap().dim(), 1);
        let span = DiagramBuilder::new(2)
            .node("P", 1)
            .node("X0", 1)
            .node("X1", 1)
            .edge("a", "P", "X0", vec![vec![1]])
            .edge("b", "P", "X1", vec![vec![1]])
            .build()
            .unwrap();
        assert_eq!(join_realize(&span, "X0", "X1").unwrap().dim(), 1);
        assert_eq!(
            join_realize(&cospan(), "X0", "X1").unwrap_err(),
            Error::NoCommonSource {
                x: "X0".into(),
                y: "X1".into()
            }
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(persistence_rank(&chain(1), "X0", "X1").unwrap(), 1);
        assert_eq!(persistence_rank(&chain(0), "X0", "X1").unwrap(), 0);
        let wide = DiagramBuilder::new(3)
            .node("A", 3)
            .node("B", 2)
            .edge("f", "A", "B", vec![vec![1, 2, 0], vec![2, 1, 0]])
            .build()
            .unwrap();
        assert_eq!(persistence_rank(&wide, "A", "A").unwrap(), 3);
        assert_eq!(persistence_rank(&wide, "A", "B").unwrap(), 1);
    }

    #[test]
    fn minimal_targets_agree_with_all_targets() {
        // Diamond with a tail: A → B, A → C, B → D, C → D, D → E.
        let d = DiagramBuilder::new(2)
            .node("A", 2)
            .node("B", 2)
            .node("C", 1)
            .node("D", 1)
            .node("E", 2)
            .edge("ab", "A", "B", vec![vec![1, 0], vec![1, 1]])
            .edge("ac", "A", "C", vec![vec![1, 1]])
            .edge("bd", "B", "D", vec![vec![0, 1]])
            .edge("cd", "C", "D", vec![vec![1]])
            .edge("de", "D", "E", vec![vec![1], vec![0]])
            .build()
            .unwrap();
        for x in ["A", "B", "C", "D", "E"] {
            for y in ["A", "B", "C", "D", "E"] {
                if let Ok(m) = meet_realize(&d, x, y) {
                    assert_eq!(m, d.meet_realize_all_targets(x, y).unwrap());
                }
                if let Ok(j) = join_realize(&d, x, y) {
                    assert_eq!(j, d.join_realize_all_sources(x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn lower_bounds_factor_through_meet() {
        let d = DiagramBuilder::new(2)
            .node("D", 1)
            .node("X", 2)
            .node("Y", 1)
            .node("Z", 1)
            .edge("dx", "D", "X", vec![vec![1], vec![1]])
            .edge("dy", "D", "Y", vec![vec![1]])
            .edge("xz", "X", "Z", vec![vec![1, 0]])
            .edge("yz", "Y", "Z", vec![vec![1]])
            .build()
            .unwrap();
        let m = meet_realize(&d, "X", "Y").unwrap();
        let (di, xi, yi) = (0, 1, 2);
        let pair = d.composite(di, xi).unwrap().vstack(&d.composite(di, yi).unwrap()).unwrap();
        assert!(solve_matrix(&m.basis, &pair).unwrap().is_some());
    }
}
