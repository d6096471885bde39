//! Normalized zig-zag modules `X0 → X01 ← X1 → X12 ← … ← Xn` and the
//! lattice of their pullbacks and pushouts.
//!
//! Elements are closed intervals `[lo, hi] ⊆ [0, n]` of two kinds. `Q(i, j)`
//! is the pushout glueing `X_i … X_j` together (so `Q(i, i+1)` is the edge
//! space `X_{i,i+1}`), and `P(i, j)` is the pullback of the same stretch.
//! Singletons of either kind are the vertex space `X_i`.
//!
//! The lattice is isomorphic to the `(n+1) × (n+1)` grid through
//! `P(i, j) ↦ (n − j, i)` and `Q(i, j) ↦ (n − i, j)`, which is how the
//! closed-form implication is computed.

use std::collections::HashMap;
use std::fmt;

use super::pair_label;
use crate::diagram::{Diagram, DiagramBuilder, NodeKind, ShapeHint};
use crate::error::{Error, Result};
use crate::heyting::HeytingAlgebra;
use crate::lattice::{Elem, ElementInfo, Lattice, Provenance};
use crate::linalg::{pullback, pushout, FpMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZigzagKind {
    P,
    Q,
}

/// An interval element; construct through [`ZigzagElement::p`] and
/// [`ZigzagElement::q`], which canonicalize singletons to kind `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZigzagElement {
    pub kind: ZigzagKind,
    pub lo: usize,
    pub hi: usize,
}

impl ZigzagElement {
    pub fn p(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        let kind = if lo == hi { ZigzagKind::Q } else { ZigzagKind::P };
        Self { kind, lo, hi }
    }

    pub fn q(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self {
            kind: ZigzagKind::Q,
            lo,
            hi,
        }
    }

    /// The vertex space `X_i`.
    pub fn vertex(i: usize) -> Self {
        Self::q(i, i)
    }

    /// The edge space `X_{i,i+1}`.
    pub fn edge(i: usize) -> Self {
        Self::q(i, i + 1)
    }

    pub fn is_vertex(self) -> bool {
        self.lo == self.hi
    }

    pub fn is_edge(self) -> bool {
        self.kind == ZigzagKind::Q && self.hi == self.lo + 1
    }

    /// Vertex and edge spaces, i.e. the nodes of the module itself.
    pub fn is_original(self) -> bool {
        self.is_vertex() || self.is_edge()
    }

    pub fn leq(self, other: Self) -> bool {
        use ZigzagKind::{P, Q};
        let (a, b) = (self, other);
        match (a.kind, b.kind) {
            (Q, Q) => b.lo <= a.lo && a.hi <= b.hi,
            (P, P) => a.lo <= b.lo && b.hi <= a.hi,
            (P, Q) => a.lo <= b.hi && b.lo <= a.hi,
            (Q, P) => false,
        }
    }

    /// Grid coordinates `(α, β)` of the isomorphism with `(n+1) × (n+1)`.
    pub fn to_grid(self, n: usize) -> (usize, usize) {
        match self.kind {
            ZigzagKind::P => (n - self.hi, self.lo),
            ZigzagKind::Q => (n - self.lo, self.hi),
        }
    }

    pub fn from_grid(n: usize, alpha: usize, beta: usize) -> Self {
        if alpha + beta <= n {
            Self::p(beta, n - alpha)
        } else {
            Self::q(n - alpha, beta)
        }
    }

    pub fn label(self) -> String {
        if self.is_vertex() {
            format!("X{}", self.lo)
        } else if self.is_edge() {
            pair_label("X", self.lo, self.hi)
        } else {
            let prefix = if self.kind == ZigzagKind::P { "P" } else { "Q" };
            pair_label(prefix, self.lo, self.hi)
        }
    }
}

impl fmt::Display for ZigzagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One space of a zig-zag. `copy` marks spaces inserted by normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagSpace {
    pub name: String,
    pub dim: usize,
    pub copy: bool,
}

impl ZigzagSpace {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Self {
            name: name.into(),
            dim,
            copy: false,
        }
    }
}

/// Arrow between consecutive spaces of a raw zig-zag. `forward` means
/// `spaces[k] → spaces[k+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawArrow {
    pub forward: bool,
    pub matrix: FpMatrix,
}

/// A zig-zag with arbitrary arrow directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawZigzag {
    pub prime: u32,
    pub spaces: Vec<ZigzagSpace>,
    pub arrows: Vec<RawArrow>,
}

/// Normalized zig-zag of length `n`: `spaces` alternates vertex and edge
/// spaces (`2n + 1` of them) and `maps[2i]: X_i → X_{i,i+1}`,
/// `maps[2i+1]: X_{i+1} → X_{i,i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagModule {
    prime: u32,
    spaces: Vec<ZigzagSpace>,
    maps: Vec<FpMatrix>,
}

impl ZigzagModule {
    pub fn new(prime: u32, spaces: Vec<ZigzagSpace>, maps: Vec<FpMatrix>) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::EmptyModule);
        }
        if spaces.len().is_multiple_of(2) || maps.len() + 1 != spaces.len() {
            return Err(Error::NotNormalized(format!(
                "{} spaces and {} maps do not alternate vertex, edge, …, vertex",
                spaces.len(),
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            let vertex = if k % 2 == 0 { k } else { k + 1 };
            let edge = if k % 2 == 0 { k + 1 } else { k };
            if m.prime() != prime {
                return Err(Error::PrimeMismatch {
                    left: prime,
                    right: m.prime(),
                });
            }
            if m.rows() != spaces[edge].dim || m.cols() != spaces[vertex].dim {
                return Err(Error::EdgeDimensionMismatch {
                    edge: format!("{} -> {}", spaces[vertex].name, spaces[edge].name),
                    rows: spaces[edge].dim,
                    cols: spaces[vertex].dim,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        Ok(Self { prime, spaces, maps })
    }

    /// Length-`n` module of one-dimensional spaces and identity maps.
    pub fn uniform(n: usize, prime: u32) -> Result<Self> {
        super::require_prime(prime)?;
        let spaces = (0..=2 * n)
            .map(|k| {
                let e = if k % 2 == 0 {
                    ZigzagElement::vertex(k / 2)
                } else {
                    ZigzagElement::edge(k / 2)
                };
                ZigzagSpace::new(e.label(), 1)
            })
            .collect();
        Self::new(prime, spaces, vec![FpMatrix::identity(1, prime); 2 * n])
    }

    /// Reads a path-shaped diagram, normalizing it if its arrows do not
    /// alternate. Nodes carrying `at` coordinates are ordered by them;
    /// otherwise the path is walked from its first endpoint in node order.
    pub fn from_diagram(d: &Diagram) -> Result<Self> {
        let n = d.nodes().len();
        let mut neighbours: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in d.edges().iter().enumerate() {
            neighbours[e.source].push((e.target, k));
            neighbours[e.target].push((e.source, k));
        }
        if d.edges().len() + 1 != n || neighbours.iter().any(|v| v.len() > 2) {
            return Err(Error::NotNormalized("diagram is not a path".into()));
        }
        let order: Vec<usize> = if d.nodes().iter().all(|node| node.at.is_some()) {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by_key(|&k| d.nodes()[k].at.clone());
            idx
        } else {
            let start = (0..n).find(|&k| neighbours[k].len() <= 1).expect("a path has an endpoint");
            let mut order = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            while let Some(&(next, _)) = neighbours[cur].iter().find(|&&(v, _)| v != prev) {
                order.push(next);
                prev = cur;
                cur = next;
            }
            order
        };
        let spaces = order
            .iter()
            .map(|&k| ZigzagSpace::new(d.nodes()[k].id.clone(), d.nodes()[k].dim))
            .collect();
        let mut arrows = Vec::new();
        for pair in order.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let &(_, k) = neighbours[a]
                .iter()
                .find(|&&(v, _)| v == b)
                .ok_or_else(|| Error::NotNormalized("`at` order does not follow the path".into()))?;
            let e = &d.edges()[k];
            arrows.push(RawArrow {
                forward: e.source == a,
                matrix: e.matrix.clone(),
            });
        }
        zigzag_normalize(&RawZigzag {
            prime: d.prime(),
            spaces,
            arrows,
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn length(&self) -> usize {
        self.maps.len() / 2
    }

    pub fn spaces(&self) -> &[ZigzagSpace] {
        &self.spaces
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn vertex_dim(&self, i: usize) -> usize {
        self.spaces[2 * i].dim
    }

    pub fn edge_dim(&self, i: usize) -> usize {
        self.spaces[2 * i + 1].dim
    }

    /// The module as raw arrows (forward, backward, forward, …).
    pub fn to_raw(&self) -> RawZigzag {
        RawZigzag {
            prime: self.prime,
            spaces: self.spaces.clone(),
            arrows: self
                .maps
                .iter()
                .enumerate()
                .map(|(k, m)| RawArrow {
                    forward: k % 2 == 0,
                    matrix: m.clone(),
                })
                .collect(),
        }
    }

    /// The module's own diagram: vertex and edge spaces only.
    pub fn diagram(&self) -> Result<Diagram> {
        let n = self.length();
        let mut b = DiagramBuilder::new(self.prime).shape(ShapeHint::Zigzag);
        for i in 0..=n {
            b = b.node_with(ZigzagElement::vertex(i).label(), self.vertex_dim(i), NodeKind::Original, Some(vec![2 * i]));
            if i < n {
                b = b.node_with(ZigzagElement::edge(i).label(), self.edge_dim(i), NodeKind::Original, Some(vec![2 * i + 1]));
            }
        }
        for i in 0..n {
            let edge = ZigzagElement::edge(i).label();
            b = b.edge_matrix(format!("f{i}"), ZigzagElement::vertex(i).label(), edge.clone(), &self.maps[2 * i]);
            b = b.edge_matrix(format!("g{i}"), ZigzagElement::vertex(i + 1).label(), edge, &self.maps[2 * i + 1]);
        }
        b.build()
    }
}

/// Inserts identity-mapped copies so that arrows alternate starting with a
/// forward arrow, and pads the end so the module finishes on a vertex space.
pub fn zigzag_normalize(raw: &RawZigzag) -> Result<ZigzagModule> {
    if raw.spaces.is_empty() {
        return Err(Error::EmptyModule);
    }
    if raw.arrows.len() + 1 != raw.spaces.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} spaces need {} arrows, got {}",
            raw.spaces.len(),
            raw.spaces.len() - 1,
            raw.arrows.len()
        )));
    }
    let p = raw.prime;
    let copy_of = |s: &ZigzagSpace| ZigzagSpace {
        name: format!("{}'", s.name),
        dim: s.dim,
        copy: true,
    };
    let mut spaces = vec![raw.spaces[0].clone()];
    let mut maps: Vec<FpMatrix> = Vec::new();
    for (k, arrow) in raw.arrows.iter().enumerate() {
        let (from, to) = (&raw.spaces[k], &raw.spaces[k + 1]);
        let (rows, cols) = if arrow.forward { (to.dim, from.dim) } else { (from.dim, to.dim) };
        if arrow.matrix.rows() != rows || arrow.matrix.cols() != cols {
            return Err(Error::EdgeDimensionMismatch {
                edge: format!("{} - {}", from.name, to.name),
                rows,
                cols,
                found_rows: arrow.matrix.rows(),
                found_cols: arrow.matrix.cols(),
            });
        }
        let expect_forward = maps.len().is_multiple_of(2);
        if arrow.forward != expect_forward {
            let last = spaces.last().expect("nonempty").clone();
            spaces.push(copy_of(&last));
            maps.push(FpMatrix::identity(last.dim, p));
        }
        spaces.push(to.clone());
        maps.push(arrow.matrix.clone());
    }
    if maps.len() % 2 == 1 {
        let last = spaces.last().expect("nonempty").clone();
        spaces.push(copy_of(&last));
        maps.push(FpMatrix::identity(last.dim, p));
    }
    ZigzagModule::new(p, spaces, maps)
}

/// Diagram of the module together with every pullback `P(i, j)` and
/// pushout `Q(i, j)` (`j ≥ i + 2`), each built from its two neighbours one
/// step shorter.
pub fn zigzag_completion_diagram(z: &ZigzagModule) -> Result<Diagram> {
    let n = z.length();
    let p = z.prime;
    let mut dims: HashMap<ZigzagElement, usize> = HashMap::new();
    // Edges keyed by (source, target).
    let mut maps: HashMap<(ZigzagElement, ZigzagElement), FpMatrix> = HashMap::new();
    for i in 0..=n {
        dims.insert(ZigzagElement::vertex(i), z.vertex_dim(i));
    }
    for i in 0..n {
        dims.insert(ZigzagElement::edge(i), z.edge_dim(i));
        maps.insert((ZigzagElement::vertex(i), ZigzagElement::edge(i)), z.maps[2 * i].clone());
        maps.insert((ZigzagElement::vertex(i + 1), ZigzagElement::edge(i)), z.maps[2 * i + 1].clone());
    }
    for len in 1..=n {
        for i in 0..=n - len {
            let j = i + len;
            // P(i, j) over the cospan P(i, j−1) → M ← P(i+1, j).
            let (left, right) = (ZigzagElement::p(i, j - 1), ZigzagElement::p(i + 1, j));
            let middle = if len == 1 { ZigzagElement::edge(i) } else { ZigzagElement::p(i + 1, j - 1) };
            let pb = pullback(&maps[&(left, middle)], &maps[&(right, middle)])?;
            let apex = ZigzagElement::p(i, j);
            dims.insert(apex, pb.dim());
            maps.insert((apex, left), pb.projections[0].1.clone());
            maps.insert((apex, right), pb.projections[1].1.clone());
            if len >= 2 {
                // Q(i, j) under the span Q(i, j−1) ← Q(i+1, j−1) → Q(i+1, j).
                let (left, right) = (ZigzagElement::q(i, j - 1), ZigzagElement::q(i + 1, j));
                let middle = ZigzagElement::q(i + 1, j - 1);
                let po = pushout(&maps[&(middle, left)], &maps[&(middle, right)])?;
                let apex = ZigzagElement::q(i, j);
                dims.insert(apex, po.dim());
                maps.insert((left, apex), po.injections[0].1.clone());
                maps.insert((right, apex), po.injections[1].1.clone());
            }
        }
    }

    let elements = zigzag_elements(n);
    let mut b = DiagramBuilder::new(p);
    for e in &elements {
        let kind = if e.is_original() {
            NodeKind::Original
        } else if e.kind == ZigzagKind::P {
            NodeKind::Limit
        } else {
            NodeKind::Colimit
        };
        b = b.node_with(e.label(), dims[e], kind, None);
    }
    let mut edges: Vec<_> = maps.into_iter().collect();
    edges.sort_by_key(|((s, t), _)| (*s, *t));
    for (k, ((s, t), m)) in edges.into_iter().enumerate() {
        b = b.edge_matrix(format!("m{k}"), s.label(), t.label(), &m);
    }
    b.build()
}

/// All elements of the length-`n` lattice: the module's spaces in path
/// order, then the `P`s and then the remaining `Q`s, each by length and
/// left end.
pub fn zigzag_elements(n: usize) -> Vec<ZigzagElement> {
    let mut out = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        out.push(ZigzagElement::vertex(i));
        if i < n {
            out.push(ZigzagElement::edge(i));
        }
    }
    for len in 1..=n {
        out.extend((0..=n - len).map(|i| ZigzagElement::p(i, i + len)));
    }
    for len in 2..=n {
        out.extend((0..=n - len).map(|i| ZigzagElement::q(i, i + len)));
    }
    out
}

/// The interval lattice of a length-`n` zig-zag together with the
/// correspondence between its elements and [`ZigzagElement`]s.
#[derive(Clone, Debug)]
pub struct ZigzagLattice {
    n: usize,
    elements: Vec<ZigzagElement>,
    index: HashMap<ZigzagElement, Elem>,
    lattice: Lattice,
}

impl ZigzagLattice {
    pub fn new(n: usize) -> Result<Self> {
        let elements = zigzag_elements(n);
        let infos = elements
            .iter()
            .map(|e| {
                if e.is_original() {
                    ElementInfo::original(e.label())
                } else if e.kind == ZigzagKind::P {
                    ElementInfo::new(e.label(), Provenance::Limit)
                } else {
                    ElementInfo::new(e.label(), Provenance::Colimit)
                }
            })
            .collect();
        let lattice = Lattice::from_leq(infos, |a, b| elements[a].leq(elements[b]))?;
        let index = elements.iter().enumerate().map(|(k, &e)| (e, Elem(k))).collect();
        Ok(Self {
            n,
            elements,
            index,
            lattice,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn elements(&self) -> &[ZigzagElement] {
        &self.elements
    }

    pub fn elem(&self, e: ZigzagElement) -> Result<Elem> {
        self.index
            .get(&e)
            .copied()
            .ok_or_else(|| Error::UnknownElement(e.label()))
    }

    pub fn element(&self, e: Elem) -> ZigzagElement {
        self.elements[e.0]
    }

    pub fn find(&self, label: &str) -> Result<ZigzagElement> {
        Ok(self.element(self.lattice.find(label)?))
    }
}

pub fn zigzag_lattice(z: &ZigzagModule) -> Result<ZigzagLattice> {
    ZigzagLattice::new(z.length())
}

/// A known inconsistency in the zig-zag theorem or its worked examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub id: &'static str,
    pub description: &'static str,
}

/// Every case where the closed-form table and the definition of `⇒`
/// disagree. Answers in these cases come from the definition.
pub const DISCREPANCIES: [Discrepancy; 4] = [
    Discrepancy {
        id: "top-label",
        description: "the note `Q0n = X0` conflicts with Q0n being the top; Q0n is treated as the top",
    },
    Discrepancy {
        id: "edge-to-endpoint",
        description: "(X_ik => X_i) = X_ik is not a relative pseudo-complement; the definition gives Q(0,i) or Q(i,n)",
    },
    Discrepancy {
        id: "worked-example-index",
        description: "X0 => (X2 & X3) is expanded with X0 => X1 where X0 => X2 is meant; the final value X3 holds either way",
    },
    Discrepancy {
        id: "grid-bicartesian",
        description: "the grid closed form presumes bicartesian squares and is not asserted otherwise",
    },
];

fn discrepancy(id: &str) -> &'static Discrepancy {
    DISCREPANCIES.iter().find(|d| d.id == id).expect("known discrepancy")
}

/// What the zig-zag theorem says about `a ⇒ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremEntry {
    Stated(ZigzagElement),
    /// The theorem states `stated`, which conflicts with the definition.
    Discrepancy {
        stated: ZigzagElement,
        note: &'static Discrepancy,
    },
    /// The theorem only covers vertex and edge spaces.
    NotCovered,
}

/// The theorem's table for vertex spaces `V(i) = X_i` and edge spaces
/// `E(i) = X_{i,i+1}`.
pub fn zigzag_theorem(n: usize, a: ZigzagElement, b: ZigzagElement) -> TheoremEntry {
    use TheoremEntry::{Discrepancy as Flagged, NotCovered, Stated};
    let top = ZigzagElement::q(0, n);
    let q = ZigzagElement::q;
    if !a.is_original() || !b.is_original() {
        return NotCovered;
    }
    if a == b {
        return Stated(top);
    }
    match (a.is_vertex(), b.is_vertex()) {
        (true, true) => {
            let (i, j) = (a.lo, b.lo);
            Stated(if i < j { q(j, n) } else { q(0, j) })
        }
        (false, false) => {
            let (i, j) = (a.lo, b.lo);
            Stated(if i < j { q(j, n) } else { q(0, j + 1) })
        }
        (true, false) => {
            let (v, e) = (a.lo, b.lo);
            if v == e || v == e + 1 {
                Stated(top)
            } else if v < e {
                Stated(q(e, n))
            } else {
                Stated(q(0, e + 1))
            }
        }
        (false, true) => {
            let (e, v) = (a.lo, b.lo);
            if v == e || v == e + 1 {
                Flagged {
                    stated: a,
                    note: discrepancy("edge-to-endpoint"),
                }
            } else if v < e {
                Stated(q(0, v))
            } else {
                Stated(q(v, n))
            }
        }
    }
}

/// `a ⇒ b` on a zig-zag lattice with what the theorem says about it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZigzagImplication {
    /// Value from the tabulated Heyting implication.
    pub value: ZigzagElement,
    /// Value from the grid isomorphism.
    pub closed_form: ZigzagElement,
    pub theorem: TheoremEntry,
}

impl ZigzagImplication {
    /// False only when the theorem states a value, without a recorded
    /// discrepancy, that differs from the definition.
    pub fn consistent(&self) -> bool {
        match self.theorem {
            TheoremEntry::Stated(s) => s == self.value,
            _ => true,
        }
    }
}

/// `a ⇒ b` through the grid isomorphism: coordinatewise, the top
/// coordinate where `a` is below `b` and `b`'s coordinate elsewhere.
pub fn zigzag_closed_form(n: usize, a: ZigzagElement, b: ZigzagElement) -> ZigzagElement {
    let (aa, ab) = a.to_grid(n);
    let (ba, bb) = b.to_grid(n);
    ZigzagElement::from_grid(n, if aa <= ba { n } else { ba }, if ab <= bb { n } else { bb })
}

pub fn zigzag_implies(
    z: &ZigzagLattice,
    h: &HeytingAlgebra,
    a: ZigzagElement,
    b: ZigzagElement,
) -> Result<ZigzagImplication> {
    let value = z.element(h.implies(z.elem(a)?, z.elem(b)?));
    Ok(ZigzagImplication {
        value,
        closed_form: zigzag_closed_form(z.n, a, b),
        theorem: zigzag_theorem(z.n, a, b),
    })
}

/// Chain from `a ∧ b` up to `a ⇒ b` by covering steps, widening to the
/// right (the `Q` direction) first and then to the left.
pub fn implication_filtration(
    z: &ZigzagLattice,
    h: &HeytingAlgebra,
    a: ZigzagElement,
    b: ZigzagElement,
) -> Result<Vec<ZigzagElement>> {
    let n = z.n;
    let (ea, eb) = (z.elem(a)?, z.elem(b)?);
    let start = z.element(h.meet(ea, eb));
    let end = z.element(h.implies(ea, eb));
    let (mut alpha, mut beta) = start.to_grid(n);
    let (end_alpha, end_beta) = end.to_grid(n);
    let mut chain = vec![start];
    while beta < end_beta {
        beta += 1;
        chain.push(ZigzagElement::from_grid(n, alpha, beta));
    }
    while alpha < end_alpha {
        alpha += 1;
        chain.push(ZigzagElement::from_grid(n, alpha, beta));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{check_commutativity, poset_of};
    use crate::lattice::{dm_completion, infinite_distributivity_check, DEFAULT_ELEMENT_BUDGET};

    fn x(i: usize) -> ZigzagElement {
        ZigzagElement::vertex(i)
    }

    fn algebra(n: usize) -> (ZigzagLattice, HeytingAlgebra) {
        let z = ZigzagLattice::new(n).unwrap();
        let h = HeytingAlgebra::new(z.lattice().clone()).unwrap();
        (z, h)
    }

    #[test]
    fn length_three_lattice() {
        let z = ZigzagLattice::new(3).unwrap();
        let l = z.lattice();
        assert_eq!(l.len(), 16);
        let labels: Vec<&str> = l.iter().map(|e| l.label(e)).collect();
        assert_eq!(
            labels,
            [
                "X0", "X01", "X1", "X12", "X2", "X23", "X3", "P01", "P12", "P23", "P02", "P13", "P03",
                "Q02", "Q13", "Q03"
            ]
        );
        assert_eq!(l.label(l.bottom()), "P03");
        assert_eq!(l.label(l.top()), "Q03");
        let e = |s| l.find(s).unwrap();
        assert_eq!(l.meet(e("X0"), e("X1")), e("P01"));
        assert_eq!(l.join(e("X0"), e("X1")), e("X01"));
    }

    #[test]
    fn grid_coordinates_are_an_isomorphism() {
        for n in 0..=5 {
            let elements = zigzag_elements(n);
            assert_eq!(elements.len(), (n + 1) * (n + 1));
            for &a in &elements {
                let (al, be) = a.to_grid(n);
                assert_eq!(ZigzagElement::from_grid(n, al, be), a);
                for &b in &elements {
                    let (bl, bb) = b.to_grid(n);
                    assert_eq!(a.leq(b), al <= bl && be <= bb, "{a} <= {b}");
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_definition() {
        for n in 1..=5 {
            let (z, h) = algebra(n);
            for &a in z.elements() {
                for &b in z.elements() {
                    let imp = zigzag_implies(&z, &h, a, b).unwrap();
                    assert_eq!(imp.closed_form, imp.value, "{a} => {b}");
                    assert!(imp.consistent(), "{a} => {b}: {:?}", imp.theorem);
                }
            }
        }
    }

    #[test]
    fn edge_to_endpoint_entries_are_flagged() {
        let (z, h) = algebra(3);
        let imp = zigzag_implies(&z, &h, ZigzagElement::edge(1), x(1)).unwrap();
        assert_eq!(imp.value, ZigzagElement::q(0, 1));
        assert!(matches!(imp.theorem, TheoremEntry::Discrepancy { stated, .. } if stated == ZigzagElement::edge(1)));
        let imp = zigzag_implies(&z, &h, ZigzagElement::edge(1), x(2)).unwrap();
        assert_eq!(imp.value, ZigzagElement::q(2, 3));
    }

    #[test]
    fn worked_values() {
        let (z, h) = algebra(3);
        let imp = |a, b| zigzag_implies(&z, &h, a, b).unwrap().value;
        assert_eq!(imp(x(0), x(1)), ZigzagElement::q(1, 3));
        assert_eq!(imp(x(1), x(2)), ZigzagElement::edge(2));
        assert_eq!(imp(x(2), x(3)), x(3));
        assert_eq!(imp(x(0), x(3)), x(3));
        assert_eq!(imp(x(3), x(0)), x(0));
    }

    #[test]
    fn filtration_examples() {
        let (z, h) = algebra(3);
        let chain = implication_filtration(&z, &h, x(0), x(1)).unwrap();
        let labels: Vec<String> = chain.iter().map(|e| e.label()).collect();
        assert_eq!(labels, ["P01", "X1", "X12", "Q13"]);
        let (z, h) = algebra(5);
        let labels: Vec<String> = implication_filtration(&z, &h, x(0), x(1))
            .unwrap()
            .iter()
            .map(|e| e.label())
            .collect();
        assert_eq!(labels, ["P01", "X1", "X12", "Q13", "Q14", "Q15"]);
        let chain = implication_filtration(&z, &h, x(2), x(2)).unwrap();
        assert_eq!(chain.first(), Some(&x(2)));
        assert_eq!(chain.last(), Some(&ZigzagElement::q(0, 5)));
        for pair in chain.windows(2) {
            assert!(z.lattice().covers(z.elem(pair[0]).unwrap(), z.elem(pair[1]).unwrap()));
        }
    }

    #[test]
    fn normalization() {
        let one = |p| FpMatrix::identity(1, p);
        let raw = RawZigzag {
            prime: 2,
            spaces: vec![ZigzagSpace::new("A", 1), ZigzagSpace::new("B", 1), ZigzagSpace::new("C", 1)],
            arrows: vec![
                RawArrow { forward: true, matrix: one(2) },
                RawArrow { forward: true, matrix: one(2) },
            ],
        };
        let z = zigzag_normalize(&raw).unwrap();
        let names: Vec<&str> = z.spaces().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["A", "B", "B'", "C", "C'"]);
        assert_eq!(z.length(), 2);
        assert_eq!(z.spaces().iter().filter(|s| !s.copy).count(), 3);
        assert_eq!(zigzag_normalize(&z.to_raw()).unwrap(), z);

        let single = RawZigzag {
            prime: 2,
            spaces: vec![ZigzagSpace::new("A", 2)],
            arrows: vec![],
        };
        assert_eq!(zigzag_normalize(&single).unwrap().length(), 0);
        let empty = RawZigzag {
            prime: 2,
            spaces: vec![],
            arrows: vec![],
        };
        assert_eq!(zigzag_normalize(&empty).unwrap_err(), Error::EmptyModule);

        let backwards = RawZigzag {
            prime: 2,
            spaces: vec![ZigzagSpace::new("A", 1), ZigzagSpace::new("B", 1)],
            arrows: vec![RawArrow { forward: false, matrix: one(2) }],
        };
        let names: Vec<String> = zigzag_normalize(&backwards)
            .unwrap()
            .spaces()
            .iter()
            .map(|s| s.name.clone())
            .collect();
        assert_eq!(names, ["A", "A'", "B"]);
    }

    #[test]
    fn module_round_trips_through_its_diagram() {
        let z = ZigzagModule::uniform(3, 2).unwrap();
        let d = z.diagram().unwrap();
        assert_eq!(ZigzagModule::from_diagram(&d).unwrap(), z);
    }

    #[test]
    fn completion_diagram_matches_interval_lattice() {
        for n in 1..=5 {
            let module = ZigzagModule::uniform(n, 2).unwrap();
            let d = zigzag_completion_diagram(&module).unwrap();
            assert!(check_commutativity(&d).is_empty());
            let l = dm_completion(&poset_of(&d).unwrap().poset, DEFAULT_ELEMENT_BUDGET).unwrap();
            let z = ZigzagLattice::new(n).unwrap();
            assert_eq!(l.len(), z.lattice().len());
            for a in l.iter() {
                assert_eq!(l.label(a), z.lattice().label(a));
                assert_eq!(l.provenance(a), z.lattice().provenance(a));
                for b in l.iter() {
                    assert_eq!(l.leq(a, b), z.lattice().leq(a, b));
                }
            }
        }
    }

    #[test]
    fn completion_spaces_over_f3() {
        // X0 = F^2 → X01 = F ← X1 = F, with X0 → X01 the projection.
        let spaces = vec![ZigzagSpace::new("X0", 2), ZigzagSpace::new("X01", 1), ZigzagSpace::new("X1", 1)];
        let maps = vec![
            FpMatrix::from_rows(3, 2, &[vec![1, 0]]).unwrap(),
            FpMatrix::identity(1, 3),
        ];
        let module = ZigzagModule::new(3, spaces, maps).unwrap();
        let d = zigzag_completion_diagram(&module).unwrap();
        assert_eq!(d.node("P01").unwrap().dim, 2);
    }

    #[test]
    fn bare_fence_completion_is_smaller() {
        // Order alone cannot see the pullbacks and pushouts.
        let d = ZigzagModule::uniform(3, 2).unwrap().diagram().unwrap();
        let l = dm_completion(&poset_of(&d).unwrap().poset, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(l.len(), 9);
        assert!(!l.distributivity().holds);
    }

    #[test]
    fn interval_lattices_distribute() {
        for n in 1..=5 {
            let z = ZigzagLattice::new(n).unwrap();
            assert!(z.lattice().distributivity().holds);
            assert!(infinite_distributivity_check(z.lattice(), 16, 0));
        }
    }
}
