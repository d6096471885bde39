use crate::diagram::{Diagram, DiagramBuilder, NodeKind, ShapeHint};
use crate::error::{Error, Result};
use crate::heyting::HeytingAlgebra;
use crate::lattice::{Elem, ElementInfo, Lattice};
use crate::linalg::FpMatrix;

/// Total order `X0 < X1 < … < X{n-1}`.
pub fn chain_lattice(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("a chain needs at least one element".into()));
    }
    let labels = (0..n).map(|i| ElementInfo::original(format!("X{i}"))).collect();
    Lattice::from_leq(labels, |a, b| a <= b)
}

/// Filtration diagram `X0 → X1 → …` with the given dimensions and maps.
pub fn chain_diagram(prime: u32, dims: &[usize], maps: &[FpMatrix]) -> Result<Diagram> {
    if dims.is_empty() || maps.len() + 1 != dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} spaces need {} maps, got {}",
            dims.len(),
            dims.len().saturating_sub(1),
            maps.len()
        )));
    }
    let mut b = DiagramBuilder::new(prime).shape(ShapeHint::Chain);
    for (i, &d) in dims.iter().enumerate() {
        b = b.node_with(format!("X{i}"), d, NodeKind::Original, Some(vec![i]));
    }
    for (i, m) in maps.iter().enumerate() {
        b = b.edge_matrix(format!("e{i}"), format!("X{i}"), format!("X{}", i + 1), m);
    }
    b.build()
}

/// Chain of `n` one-dimensional spaces joined by identities.
pub fn uniform_chain_diagram(n: usize, prime: u32) -> Result<Diagram> {
    super::require_prime(prime)?;
    let maps = vec![FpMatrix::identity(1, prime); n.saturating_sub(1)];
    chain_diagram(prime, &vec![1; n], &maps)
}

/// Index of `Xi ⇒ Xj` in a chain of `n`: the top if `i ≤ j`, else `j`.
pub fn chain_implies(n: usize, i: usize, j: usize) -> Result<usize> {
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange(format!("({i}, {j}) in a chain of {n}")));
    }
    Ok(if i <= j { n - 1 } else { j })
}

/// Outcome of the most-persistent-feature query on a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `b` is the top of the chain.
    BIsTop,
    /// `a ≤ b`, so `a ⇒ b` reached the top.
    TopReached,
    /// `b < a`; carries `a ⇒ b`, which is `b`.
    OrderIs(Elem),
}

/// Tests whether `b = (b ⇒ b)`, then classifies `a ⇒ b`.
pub fn most_persistent_query(h: &HeytingAlgebra, a: Elem, b: Elem) -> Result<Verdict> {
    if !h.lattice().is_chain() {
        return Err(Error::NotAChain("query needs a totally ordered lattice".into()));
    }
    if h.implies(b, b) == b {
        return Ok(Verdict::BIsTop);
    }
    let c = h.implies(a, b);
    Ok(if c == h.top() {
        Verdict::TopReached
    } else {
        Verdict::OrderIs(c)
    })
}
