use std::fmt;

use super::pair_label;
use crate::diagram::{meet_realize, join_realize, Diagram, DiagramBuilder, NodeKind, ShapeHint};
use crate::error::{Error, Result};
use crate::lattice::{Elem, ElementInfo, Lattice};
use crate::linalg::{rank, FpMatrix};

/// Position `(i, j)` in a grid with `0 ≤ i ≤ m`, `0 ≤ j ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridIndex {
    pub i: usize,
    pub j: usize,
}

impl GridIndex {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn leq(self, other: GridIndex) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    pub fn label(self) -> String {
        pair_label("X", self.i, self.j)
    }

    /// Element of [`grid_lattice`]`(m, n)` at this position.
    pub fn elem(self, n: usize) -> Elem {
        Elem(self.i * (n + 1) + self.j)
    }

    pub fn of_elem(e: Elem, n: usize) -> Self {
        Self::new(e.0 / (n + 1), e.0 % (n + 1))
    }

    fn check(self, m: usize, n: usize) -> Result<Self> {
        if self.i > m || self.j > n {
            return Err(Error::IndexOutOfRange(format!("{self} outside a {m}x{n} grid")));
        }
        Ok(self)
    }
}

impl fmt::Display for GridIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Product of an `(m+1)`-chain and an `(n+1)`-chain; `X{i}{j}` is element
/// `i·(n+1) + j`.
pub fn grid_lattice(m: usize, n: usize) -> Result<Lattice> {
    let w = n + 1;
    let labels = (0..(m + 1) * w)
        .map(|k| ElementInfo::original(GridIndex::new(k / w, k % w).label()))
        .collect();
    Lattice::from_leq(labels, |a, b| a / w <= b / w && a % w <= b % w)
}

/// Grid diagram with the given node dimensions (`dims[i][j]`) and maps.
/// `right[i][j]` maps `(i, j) → (i, j+1)` and `up[i][j]` maps `(i, j) → (i+1, j)`.
pub fn grid_diagram(
    prime: u32,
    dims: &[Vec<usize>],
    right: &[Vec<FpMatrix>],
    up: &[Vec<FpMatrix>],
) -> Result<Diagram> {
    let mut b = DiagramBuilder::new(prime).shape(ShapeHint::Grid);
    for (i, row) in dims.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            b = b.node_with(GridIndex::new(i, j).label(), d, NodeKind::Original, Some(vec![i, j]));
        }
    }
    let name = |i, j| GridIndex::new(i, j).label();
    for (i, row) in right.iter().enumerate() {
        for (j, mat) in row.iter().enumerate() {
            b = b.edge_matrix(format!("r{i}_{j}"), name(i, j), name(i, j + 1), mat);
        }
    }
    for (i, row) in up.iter().enumerate() {
        for (j, mat) in row.iter().enumerate() {
            b = b.edge_matrix(format!("u{i}_{j}"), name(i, j), name(i + 1, j), mat);
        }
    }
    b.build()
}

/// `(m+1)×(n+1)` grid of one-dimensional spaces joined by identities.
pub fn uniform_grid_diagram(m: usize, n: usize, prime: u32) -> Result<Diagram> {
    super::require_prime(prime)?;
    let id = FpMatrix::identity(1, prime);
    let dims = vec![vec![1; n + 1]; m + 1];
    let right = vec![vec![id.clone(); n]; m + 1];
    let up = vec![vec![id; n + 1]; m];
    grid_diagram(prime, &dims, &right, &up)
}

/// `a ⇒ b` on the grid: coordinatewise, the top coordinate where
/// `a` is below `b` and `b`'s coordinate elsewhere.
pub fn grid_implies(m: usize, n: usize, a: GridIndex, b: GridIndex) -> Result<GridIndex> {
    a.check(m, n)?;
    b.check(m, n)?;
    Ok(GridIndex::new(
        if a.i <= b.i { m } else { b.i },
        if a.j <= b.j { n } else { b.j },
    ))
}

/// The bifiltration theorem read literally: top when `a ≤ b`, `b` when
/// `b ≤ a`, and `(m, w)` or `(z, n)` for unrelated pairs. Differs from
/// [`grid_implies`] when `b < a` and the two share a coordinate.
pub fn grid_implies_as_stated(m: usize, n: usize, a: GridIndex, b: GridIndex) -> Result<GridIndex> {
    a.check(m, n)?;
    b.check(m, n)?;
    Ok(if a.leq(b) {
        GridIndex::new(m, n)
    } else if b.leq(a) {
        b
    } else if a.i <= b.i {
        GridIndex::new(m, b.j)
    } else {
        GridIndex::new(b.i, n)
    })
}

/// The two axis chains `(0, j)` and `(i, 0)`, including `(0, 0)`.
pub fn grid_nonzero_negation_elements(m: usize, n: usize) -> Vec<GridIndex> {
    let mut out: Vec<GridIndex> = (0..=n).map(|j| GridIndex::new(0, j)).collect();
    out.extend((1..=m).map(|i| GridIndex::new(i, 0)));
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceAxis {
    /// Fix `i`, let `j` vary.
    Row(usize),
    /// Fix `j`, let `i` vary.
    Column(usize),
}

/// One-parameter filtration inside the grid, as a chain lattice.
pub fn grid_chain_slice(m: usize, n: usize, axis: SliceAxis) -> Result<Lattice> {
    let grid = grid_lattice(m, n)?;
    let keep: Vec<Elem> = match axis {
        SliceAxis::Row(i) if i <= m => (0..=n).map(|j| GridIndex::new(i, j).elem(n)).collect(),
        SliceAxis::Column(j) if j <= n => (0..=m).map(|i| GridIndex::new(i, j).elem(n)).collect(),
        _ => return Err(Error::IndexOutOfRange(format!("{axis:?} in a {m}x{n} grid"))),
    };
    grid.restrict(&keep)
}

/// Whether every unit square of a grid diagram is both a pullback and a
/// pushout. Nodes are located through their `at` coordinates.
pub fn grid_is_bicartesian(d: &Diagram) -> Result<bool> {
    let mut ids = std::collections::HashMap::new();
    for node in d.nodes() {
        if let Some([i, j]) = node.at.as_deref() {
            ids.insert((*i, *j), node.id.clone());
        }
    }
    for (&(i, j), low) in &ids {
        let (Some(right), Some(up), Some(high)) =
            (ids.get(&(i, j + 1)), ids.get(&(i + 1, j)), ids.get(&(i + 1, j + 1)))
        else {
            continue;
        };
        let (lo, r, u, hi) = (
            d.node_index(low)?,
            d.node_index(right)?,
            d.node_index(up)?,
            d.node_index(high)?,
        );
        let to_r = d.composite(lo, r).expect("grid edge");
        let to_u = d.composite(lo, u).expect("grid edge");
        let from_r = d.composite(r, hi).expect("grid edge");
        let from_u = d.composite(u, hi).expect("grid edge");
        let low_dim = d.nodes()[lo].dim;
        let high_dim = d.nodes()[hi].dim;
        // Corner → pullback is an isomorphism.
        let pb = meet_realize(d, right, up)?;
        if pb.dim() != low_dim || rank(&to_r.vstack(&to_u)?) != low_dim {
            return Ok(false);
        }
        // Pushout → corner is an isomorphism.
        let po = join_realize(d, right, up)?;
        if po.dim() != high_dim || rank(&from_r.hstack(&from_u)?) != high_dim {
            return Ok(false);
        }
    }
    Ok(true)
}
