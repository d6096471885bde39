//! Filtered simplicial complexes, their homology over F_p, and the chain
//! diagrams of homology spaces they induce.
//!
//! Two independent computations are provided: homology bases with induced
//! maps (which feed [`diagram_from_filtration`]) and the classical column
//! reduction of the whole filtered boundary matrix (which yields
//! [`persistence_bars`] and [`persistent_betti_oracle`]).

use std::collections::HashMap;

use serde::Deserialize;

use crate::diagram::{Diagram, DiagramBuilder, NodeKind, ShapeHint};
use crate::error::{Error, Result};
use crate::linalg::{image_basis, is_prime, kernel_basis, solve_preimage, FpMatrix};

/// Simplices with the level at which they enter, ordered by level, then
/// dimension, then vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    prime: u32,
    simplices: Vec<(Vec<usize>, usize)>,
    max_level: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplexDoc {
    level: usize,
    verts: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    #[serde(default = "default_prime")]
    prime: u32,
    simplices: Vec<SimplexDoc>,
}

fn default_prime() -> u32 {
    2
}

impl FilteredComplex {
    /// Sorts each simplex's vertices and checks that faces enter no later
    /// than the simplices containing them.
    pub fn new(prime: u32, simplices: Vec<(Vec<usize>, usize)>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let mut level_of: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sorted = Vec::with_capacity(simplices.len());
        for (mut verts, level) in simplices {
            verts.sort_unstable();
            if verts.is_empty() || verts.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Schema(format!("simplex {verts:?} must list distinct vertices")));
            }
            if level_of.insert(verts.clone(), level).is_some() {
                return Err(Error::DuplicateSimplex(verts));
            }
            sorted.push((verts, level));
        }
        sorted.sort_by(|(a, la), (b, lb)| la.cmp(lb).then(a.len().cmp(&b.len())).then(a.cmp(b)));
        for (verts, level) in &sorted {
            if verts.len() < 2 {
                continue;
            }
            for face in faces(verts) {
                match level_of.get(&face) {
                    Some(l) if l <= level => {}
                    _ => {
                        return Err(Error::FaceClosure {
                            simplex: verts.clone(),
                            face,
                        })
                    }
                }
            }
        }
        let max_level = sorted.iter().map(|(_, l)| *l).max().unwrap_or(0);
        Ok(Self {
            prime,
            simplices: sorted,
            max_level,
        })
    }

    /// Lines of the form `level v0 v1 …`; `#` starts a comment.
    pub fn from_text(text: &str, prime: u32) -> Result<Self> {
        let mut simplices = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let numbers = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Schema(format!("line {}: {e}", lineno + 1)))?;
            if numbers.len() < 2 {
                return Err(Error::Schema(format!(
                    "line {}: expected a level followed by at least one vertex",
                    lineno + 1
                )));
            }
            simplices.push((numbers[1..].to_vec(), numbers[0]));
        }
        Self::new(prime, simplices)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::new(doc.prime, doc.simplices.into_iter().map(|s| (s.verts, s.level)).collect())
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn simplices(&self) -> &[(Vec<usize>, usize)] {
        &self.simplices
    }

    /// `k`-simplices present at `level`, in filtration order.
    pub fn simplices_at(&self, level: usize, k: usize) -> Vec<&[usize]> {
        self.simplices
            .iter()
            .filter(|(s, l)| *l <= level && s.len() == k + 1)
            .map(|(s, _)| s.as_slice())
            .collect()
    }
}

/// Text or JSON, told apart by a leading `{`. `prime` applies to text input.
pub fn load_filtration(text: &str, prime: u32) -> Result<FilteredComplex> {
    if text.trim_start().starts_with('{') {
        FilteredComplex::from_json(text)
    } else {
        FilteredComplex::from_text(text, prime)
    }
}

/// Codimension-one faces, the `t`-th omitting vertex `t`.
fn faces(verts: &[usize]) -> Vec<Vec<usize>> {
    (0..verts.len())
        .map(|t| {
            let mut f = verts.to_vec();
            f.remove(t);
            f
        })
        .collect()
}

/// `(-1)^t` reduced mod `p`.
fn sign(t: usize, p: u32) -> u32 {
    if t.is_multiple_of(2) {
        1
    } else {
        p - 1
    }
}

/// `∂_k` at `level`: columns are `k`-simplices, rows `(k−1)`-simplices.
pub fn boundary_matrix(fc: &FilteredComplex, level: usize, k: usize) -> FpMatrix {
    let p = fc.prime;
    let cols = fc.simplices_at(level, k);
    if k == 0 {
        return FpMatrix::zeros(0, cols.len(), p);
    }
    let rows = fc.simplices_at(level, k - 1);
    let row_of: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(r, s)| (*s, r)).collect();
    let mut m = FpMatrix::zeros(rows.len(), cols.len(), p);
    for (c, s) in cols.iter().enumerate() {
        for (t, face) in faces(s).iter().enumerate() {
            m.set(row_of[face.as_slice()], c, sign(t, p));
        }
    }
    m
}

/// `H_k = ker ∂_k / im ∂_{k+1}` at one level, with chosen representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBasis {
    /// Basis of `ker ∂_k` (columns are chains).
    pub cycles: FpMatrix,
    /// Basis of `im ∂_{k+1}`.
    pub boundaries: FpMatrix,
    /// Cycles whose classes form the homology basis.
    pub representatives: FpMatrix,
    /// Homology coordinates of each column of `cycles`.
    pub quotient_map: FpMatrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    /// Coordinates of the class of the cycle `z`, or `None` if `z` is not
    /// a cycle.
    pub fn coordinates(&self, z: &[u32]) -> Result<Option<Vec<u32>>> {
        let system = self.boundaries.hstack(&self.representatives)?;
        Ok(solve_preimage(&system, z)?.map(|c| c[self.boundaries.cols()..].to_vec()))
    }
}

pub fn homology_basis(fc: &FilteredComplex, level: usize, k: usize) -> Result<HomologyBasis> {
    let p = fc.prime;
    let cycles = kernel_basis(&boundary_matrix(fc, level, k));
    let boundaries = image_basis(&boundary_matrix(fc, level, k + 1));
    let n = cycles.rows();
    // Greedily keep cycles that are independent of boundaries and of the
    // cycles kept so far.
    let mut span = boundaries.clone();
    let mut kept = Vec::new();
    for c in 0..cycles.cols() {
        let col = cycles.column(c);
        if solve_preimage(&span, &col)?.is_none() {
            span = span.hstack(&FpMatrix::column_vector(p, &col)?)?;
            kept.push(c);
        }
    }
    let representatives = if kept.is_empty() {
        FpMatrix::zeros(n, 0, p)
    } else {
        cycles.select_columns(&kept)
    };
    let mut basis = HomologyBasis {
        cycles,
        boundaries,
        representatives,
        quotient_map: FpMatrix::zeros(0, 0, p),
    };
    let mut q = FpMatrix::zeros(basis.dim(), basis.cycles.cols(), p);
    for c in 0..basis.cycles.cols() {
        let coords = basis
            .coordinates(&basis.cycles.column(c))?
            .ok_or_else(|| Error::Internal("cycle outside cycles + boundaries".into()))?;
        for (r, v) in coords.into_iter().enumerate() {
            q.set(r, c, v);
        }
    }
    basis.quotient_map = q;
    Ok(basis)
}

/// `H_k(X_i) → H_k(X_j)` induced by inclusion, in the chosen bases.
pub fn induced_map(fc: &FilteredComplex, i: usize, j: usize, k: usize) -> Result<FpMatrix> {
    if i > j {
        return Err(Error::IndexOutOfRange(format!("levels {i} > {j}")));
    }
    let source = homology_basis(fc, i, k)?;
    let target = homology_basis(fc, j, k)?;
    let n_target = fc.simplices_at(j, k).len();
    let mut m = FpMatrix::zeros(target.dim(), source.dim(), fc.prime);
    for c in 0..source.dim() {
        // Level-i simplices are a prefix of the level-j list.
        let mut z = source.representatives.column(c);
        z.resize(n_target, 0);
        let coords = target
            .coordinates(&z)?
            .ok_or_else(|| Error::Internal(format!("cycle {c} of level {i} is not a cycle at level {j}")))?;
        for (r, v) in coords.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

/// Chain diagram `H_k(X_0) → H_k(X_1) → … → H_k(X_max)`.
pub fn diagram_from_filtration(fc: &FilteredComplex, k: usize) -> Result<Diagram> {
    let mut b = DiagramBuilder::new(fc.prime).shape(ShapeHint::Chain);
    for level in 0..=fc.max_level {
        let dim = homology_basis(fc, level, k)?.dim();
        b = b
            .node_with(format!("X{level}"), dim, NodeKind::Original, Some(vec![level]))
            .label(format!("H{k}(K{level})"));
    }
    for level in 0..fc.max_level {
        b = b.edge_matrix(
            format!("e{level}"),
            format!("X{level}"),
            format!("X{}", level + 1),
            &induced_map(fc, level, level + 1, k)?,
        );
    }
    b.build()
}

/// A persistence interval; `death == None` means the class never dies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bar {
    pub dim: usize,
    pub birth: usize,
    pub death: Option<usize>,
}

fn inverse(a: u32, p: u32) -> u32 {
    let (mut base, mut exp, mut acc) = (a as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Nonempty intervals from the standard reduction of the filtered
/// boundary matrix, sorted.
pub fn persistence_bars(fc: &FilteredComplex) -> Vec<Bar> {
    let p = fc.prime;
    let n = fc.simplices.len();
    let position: HashMap<&[usize], usize> =
        fc.simplices.iter().enumerate().map(|(k, (s, _))| (s.as_slice(), k)).collect();
    let mut columns: Vec<Vec<u32>> = fc
        .simplices
        .iter()
        .map(|(s, _)| {
            let mut col = vec![0u32; n];
            if s.len() > 1 {
                for (t, face) in faces(s).iter().enumerate() {
                    col[position[face.as_slice()]] = sign(t, p);
                }
            }
            col
        })
        .collect();
    let low = |col: &[u32]| col.iter().rposition(|&v| v != 0);
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut paired = vec![false; n];
    let mut bars = Vec::new();
    for j in 0..n {
        while let Some(l) = low(&columns[j]) {
            let Some(o) = owner[l] else { break };
            let factor = columns[j][l] as u64 * inverse(columns[o][l], p) as u64 % p as u64;
            let pivot = columns[o].clone();
            for (x, y) in columns[j].iter_mut().zip(pivot) {
                *x = ((*x as u64 + (p as u64 - factor) * y as u64) % p as u64) as u32;
            }
        }
        if let Some(l) = low(&columns[j]) {
            owner[l] = Some(j);
            paired[l] = true;
            paired[j] = true;
            let (birth, death) = (fc.simplices[l].1, fc.simplices[j].1);
            if birth < death {
                bars.push(Bar {
                    dim: fc.simplices[l].0.len() - 1,
                    birth,
                    death: Some(death),
                });
            }
        }
    }
    for (k, (s, level)) in fc.simplices.iter().enumerate() {
        if !paired[k] && low(&columns[k]).is_none() {
            bars.push(Bar {
                dim: s.len() - 1,
                birth: *level,
                death: None,
            });
        }
    }
    bars.sort();
    bars
}

/// Number of degree-`k` classes born by level `i` and still alive at `j`,
/// counted from the bars of the column reduction.
pub fn persistent_betti_oracle(fc: &FilteredComplex, i: usize, j: usize, k: usize) -> Result<usize> {
    if i > j {
        return Err(Error::IndexOutOfRange(format!("levels {i} > {j}")));
    }
    Ok(persistence_bars(fc)
        .iter()
        .filter(|b| b.dim == k && b.birth <= i && b.death.is_none_or(|d| d > j))
        .count())
}
