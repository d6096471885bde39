//! Finite lattices given by an order relation, with tabulated meets and joins.
//!
//! A [`Lattice`] is built from a partial order on a list of labelled
//! elements; construction computes the meet and join of every pair and fails
//! if some pair lacks a greatest lower or least upper bound. Posets that are
//! not lattices are completed with [`dm_completion`].

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on the number of cuts a completion may produce.
pub const DEFAULT_ELEMENT_BUDGET: usize = 4096;
/// Seed used by sampled checks unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0;

/// Index of an element inside one particular lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Where an element of a completed lattice comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// An input space, by node id.
    Original(String),
    /// Only reachable from above: a meet of inputs with no input below it.
    Limit,
    /// Only reachable from below: a join of inputs with no input above it.
    Colimit,
    /// New cut with inputs both above and below.
    Cut,
}

impl Provenance {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Original(_) => "original",
            Provenance::Limit => "limit",
            Provenance::Colimit => "colimit",
            Provenance::Cut => "cut",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementInfo {
    pub label: String,
    pub provenance: Provenance,
}

impl ElementInfo {
    pub fn original(id: impl Into<String>) -> Self {
        let id = id.into();
        Self {
            label: id.clone(),
            provenance: Provenance::Original(id),
        }
    }

    pub fn new(label: impl Into<String>, provenance: Provenance) -> Self {
        Self {
            label: label.into(),
            provenance,
        }
    }
}

/// A finite partial order. `up[a]` is the set of `b` with `a ≤ b`.
#[derive(Clone, Debug)]
pub struct Poset {
    elements: Vec<ElementInfo>,
    up: Vec<FixedBitSet>,
}

impl Poset {
    /// Takes the reflexive-transitive closure of `relations` (pairs `a ≤ b`)
    /// and rejects it if antisymmetry fails.
    pub fn from_relations(elements: Vec<ElementInfo>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, set) in up.iter_mut().enumerate() {
            set.insert(a);
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange(format!("relation ({a}, {b}) on {n} elements")));
            }
            up[a].insert(b);
        }
        // Warshall closure on bitsets.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_sets(elements, up)
    }

    pub fn from_up_sets(elements: Vec<ElementInfo>, up: Vec<FixedBitSet>) -> Result<Self> {
        check_partial_order(&elements, &up)?;
        Ok(Self { elements, up })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementInfo] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }
}

fn check_partial_order(elements: &[ElementInfo], up: &[FixedBitSet]) -> Result<()> {
    let n = elements.len();
    if up.len() != n || up.iter().any(|s| s.len() != n) {
        return Err(Error::DimensionMismatch("order relation does not match element count".into()));
    }
    for a in 0..n {
        if !up[a].contains(a) {
            return Err(Error::NotALattice(format!("`{}` is not ≤ itself", elements[a].label)));
        }
        for b in up[a].ones() {
            if b != a && up[b].contains(a) {
                return Err(Error::NotALattice(format!(
                    "`{}` and `{}` are mutually ≤ but distinct",
                    elements[a].label, elements[b].label
                )));
            }
            if !up[b].is_subset(&up[a]) {
                return Err(Error::NotALattice(format!(
                    "order is not transitive through `{}`",
                    elements[b].label
                )));
            }
        }
    }
    Ok(())
}

fn transpose_sets(up: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = up.len();
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (a, set) in up.iter().enumerate() {
        for b in set.ones() {
            down[b].insert(a);
        }
    }
    down
}

/// Result of checking the distributive laws over all triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distributivity {
    pub holds: bool,
    /// First triple `(x, y, z)` violating `x∧(y∨z) = (x∧y)∨(x∧z)`.
    pub witness: Option<(Elem, Elem, Elem)>,
    /// Whether the three equivalent formulations gave the same verdict.
    pub axioms_agree: bool,
}

/// Finite lattice with tabulated operations.
#[derive(Clone)]
pub struct Lattice {
    elements: Vec<ElementInfo>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    distributivity: OnceLock<Distributivity>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("elements", &self.elements.iter().map(|e| &e.label).collect::<Vec<_>>())
            .field("bottom", &self.elements[self.bottom].label)
            .field("top", &self.elements[self.top].label)
            .finish()
    }
}

impl Lattice {
    /// Builds the lattice of a partial order given as up-sets, failing with
    /// [`Error::NotALattice`] if a pair has no meet or no join.
    pub fn from_up_sets(elements: Vec<ElementInfo>, up: Vec<FixedBitSet>) -> Result<Self> {
        check_partial_order(&elements, &up)?;
        let n = elements.len();
        if n == 0 {
            return Err(Error::NotALattice("no elements".into()));
        }
        let down = transpose_sets(&up);
        let bound = |sets: &[FixedBitSet], other: &[FixedBitSet], a: usize, b: usize| -> Option<usize> {
            // Candidates are common bounds; the extreme one contains all others.
            let mut common = sets[a].clone();
            common.intersect_with(&sets[b]);
            let best = common.ones().max_by_key(|&c| other[c].count_ones(..))?;
            common.is_subset(&other[best]).then_some(best)
        };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = bound(&down, &down, a, b).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "`{}` and `{}` have no greatest lower bound",
                        elements[a].label, elements[b].label
                    ))
                })?;
                let j = bound(&up, &up, a, b).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "`{}` and `{}` have no least upper bound",
                        elements[a].label, elements[b].label
                    ))
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = (0..n).find(|&a| up[a].count_ones(..) == n).expect("finite lattice has a bottom");
        let top = (0..n).find(|&a| down[a].count_ones(..) == n).expect("finite lattice has a top");
        Ok(Self {
            elements,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            distributivity: OnceLock::new(),
        })
    }

    /// Builds a lattice from a `leq` predicate on indices.
    pub fn from_leq(elements: Vec<ElementInfo>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let up = (0..n)
            .map(|a| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|&b| leq(a, b)));
                s
            })
            .collect();
        Self::from_up_sets(elements, up)
    }

    pub fn from_poset(p: &Poset) -> Result<Self> {
        Self::from_up_sets(p.elements.clone(), p.up.clone())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.elements.len()).map(Elem)
    }

    pub fn elements(&self) -> &[ElementInfo] {
        &self.elements
    }

    pub fn info(&self, e: Elem) -> &ElementInfo {
        &self.elements[e.0]
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.elements[e.0].label
    }

    pub fn provenance(&self, e: Elem) -> &Provenance {
        &self.elements[e.0].provenance
    }

    /// Looks an element up by label.
    pub fn find(&self, label: &str) -> Result<Elem> {
        self.elements
            .iter()
            .position(|e| e.label == label)
            .map(Elem)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn bottom(&self) -> Elem {
        Elem(self.bottom)
    }

    pub fn top(&self) -> Elem {
        Elem(self.top)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a.0].contains(b.0)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.0 * self.len() + b.0])
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.0 * self.len() + b.0])
    }

    /// Meet of a family; the empty meet is ⊤.
    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top(), |acc, e| self.meet(acc, e))
    }

    /// Join of a family; the empty join is ⊥.
    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    pub fn up_set(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.up[a.0].ones().map(Elem)
    }

    pub fn down_set(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.down[a.0].ones().map(Elem)
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: Elem, b: Elem) -> bool {
        if !self.lt(a, b) {
            return false;
        }
        let mut between = self.up[a.0].clone();
        between.intersect_with(&self.down[b.0]);
        between.count_ones(..) == 2
    }

    pub fn upper_covers(&self, a: Elem) -> Vec<Elem> {
        self.up_set(a).filter(|&b| self.covers(a, b)).collect()
    }

    pub fn lower_covers(&self, a: Elem) -> Vec<Elem> {
        self.down_set(a).filter(|&b| self.covers(b, a)).collect()
    }

    /// All covering pairs `(a, b)`, sorted.
    pub fn covering_pairs(&self) -> Vec<(Elem, Elem)> {
        self.iter()
            .flat_map(|a| self.upper_covers(a).into_iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        self.iter().all(|a| self.iter().all(|b| self.comparable(a, b)))
    }

    /// Distributivity over all triples, computed once and cached.
    pub fn distributivity(&self) -> &Distributivity {
        self.distributivity.get_or_init(|| check_distributive(self))
    }

    /// Sub-order on `keep`, which must itself be a lattice under the induced
    /// order (a chain slice always is).
    pub fn restrict(&self, keep: &[Elem]) -> Result<Lattice> {
        let elements = keep.iter().map(|&e| self.info(e).clone()).collect();
        Lattice::from_leq(elements, |a, b| self.leq(keep[a], keep[b]))
    }
}

fn check_distributive(l: &Lattice) -> Distributivity {
    let mut witness = None;
    let (mut a_ok, mut b_ok, mut c_ok) = (true, true, true);
    for x in l.iter() {
        for y in l.iter() {
            for z in l.iter() {
                let lhs = l.meet(x, l.join(y, z));
                let rhs = l.join(l.meet(x, y), l.meet(x, z));
                if lhs != rhs {
                    a_ok = false;
                    witness.get_or_insert((x, y, z));
                }
                if b_ok && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), l.join(x, z)) {
                    b_ok = false;
                }
                if c_ok {
                    let upper = l.meet(l.meet(l.join(x, y), l.join(x, z)), l.join(y, z));
                    let lower = l.join(l.join(l.meet(x, y), l.meet(x, z)), l.meet(y, z));
                    c_ok = upper == lower;
                }
            }
        }
    }
    Distributivity {
        holds: a_ok,
        witness,
        axioms_agree: a_ok == b_ok && b_ok == c_ok,
    }
}

pub fn meet(l: &Lattice, a: Elem, b: Elem) -> Elem {
    l.meet(a, b)
}

pub fn join(l: &Lattice, a: Elem, b: Elem) -> Elem {
    l.join(a, b)
}

pub fn is_distributive(l: &Lattice) -> (bool, Option<(Elem, Elem, Elem)>) {
    let d = l.distributivity();
    (d.holds, d.witness)
}

/// Largest lattice for which every subset is enumerated.
const EXHAUSTIVE_SUBSET_CAP: usize = 20;
const SAMPLED_SUBSETS: usize = 1000;

/// Checks `x ∧ ⋁S = ⋁{x ∧ s : s ∈ S}`.
///
/// Lattices with at most `subset_budget` elements (and at most 20) are
/// checked on every subset; larger ones on every subset of size ≤ 3 plus
/// 1000 random subsets drawn from `seed`.
pub fn infinite_distributivity_check(l: &Lattice, subset_budget: usize, seed: u64) -> bool {
    let n = l.len();
    if n <= subset_budget.min(EXHAUSTIVE_SUBSET_CAP) {
        let full = 1usize << n;
        let mut joins = vec![l.bottom(); full];
        for mask in 1..full {
            let low = mask.trailing_zeros() as usize;
            joins[mask] = l.join(joins[mask & (mask - 1)], Elem(low));
        }
        for x in l.iter() {
            let mut distributed = vec![l.bottom(); full];
            for mask in 1..full {
                let low = mask.trailing_zeros() as usize;
                distributed[mask] = l.join(distributed[mask & (mask - 1)], l.meet(x, Elem(low)));
                if l.meet(x, joins[mask]) != distributed[mask] {
                    return false;
                }
            }
        }
        return true;
    }
    let holds_on = |subset: &[Elem]| {
        l.iter().all(|x| {
            let lhs = l.meet(x, l.join_all(subset.iter().copied()));
            let rhs = l.join_all(subset.iter().map(|&s| l.meet(x, s)));
            lhs == rhs
        })
    };
    let elems: Vec<Elem> = l.iter().collect();
    for (i, &a) in elems.iter().enumerate() {
        if !holds_on(&[a]) {
            return false;
        }
        for (j, &b) in elems.iter().enumerate().skip(i + 1) {
            if !holds_on(&[a, b]) {
                return false;
            }
            for &c in &elems[j + 1..] {
                if !holds_on(&[a, b, c]) {
                    return false;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SAMPLED_SUBSETS).all(|_| {
        let subset: Vec<Elem> = elems.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        holds_on(&subset)
    })
}

/// Elements `a ≠ ⊥` such that `a = b ∨ c` forces `a ∈ {b, c}`.
pub fn join_irreducibles(l: &Lattice) -> Vec<Elem> {
    let mut reducible = vec![false; l.len()];
    reducible[l.bottom().0] = true;
    for b in l.iter() {
        for c in l.iter() {
            let a = l.join(b, c);
            if a != b && a != c {
                reducible[a.0] = true;
            }
        }
    }
    l.iter().filter(|a| !reducible[a.0]).collect()
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram in DOT: one node per element in id order, one edge per
/// covering pair, pointing upwards.
pub fn hasse_dot(l: &Lattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for e in l.iter() {
        out.push_str(&format!("  e{} [label=\"{}\"];\n", e.0, dot_escape(l.label(e))));
    }
    for (a, b) in l.covering_pairs() {
        out.push_str(&format!("  e{} -> e{};\n", a.0, b.0));
    }
    out.push_str("}\n");
    out
}

/// Dedekind–MacNeille completion.
///
/// Cuts are represented by their lower sets, which are exactly the
/// intersections of principal ideals (the full set being the empty
/// intersection). Elements `0..p.len()` of the result are the principal cuts
/// of the input elements in input order; new cuts follow, ordered by size and
/// then by content. A new cut is labelled `Limit` when no input lies below
/// it, `Colimit` when none lies above it, and `Cut` otherwise.
pub fn dm_completion(p: &Poset, budget: usize) -> Result<Lattice> {
    let n = p.len();
    if n == 0 {
        return Err(Error::NotALattice("cannot complete an empty poset".into()));
    }
    let principal: Vec<FixedBitSet> = transpose_sets(&p.up);
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut cuts: Vec<FixedBitSet> = Vec::new();
    let mut queue = VecDeque::new();

    let mut push = |cut: FixedBitSet, cuts: &mut Vec<FixedBitSet>, queue: &mut VecDeque<usize>| -> Result<()> {
        if index.contains_key(&cut) {
            return Ok(());
        }
        if cuts.len() >= budget {
            return Err(Error::ElementBudgetExceeded { budget });
        }
        index.insert(cut.clone(), cuts.len());
        queue.push_back(cuts.len());
        cuts.push(cut);
        Ok(())
    };

    for ideal in &principal {
        push(ideal.clone(), &mut cuts, &mut queue)?;
    }
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    push(full, &mut cuts, &mut queue)?;
    while let Some(i) = queue.pop_front() {
        for ideal in &principal {
            let mut next = cuts[i].clone();
            next.intersect_with(ideal);
            push(next, &mut cuts, &mut queue)?;
        }
    }

    let mut extra: Vec<FixedBitSet> = cuts.split_off(n);
    extra.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().collect::<Vec<_>>().cmp(&b.ones().collect::<Vec<_>>()))
    });

    let upper_bounds = |cut: &FixedBitSet| -> Vec<usize> {
        (0..n).filter(|&u| cut.is_subset(&principal[u])).collect()
    };
    let extremal = |set: &[usize], maximal: bool| -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&a| {
                !set.iter().any(|&b| b != a && if maximal { p.leq(a, b) } else { p.leq(b, a) })
            })
            .collect()
    };
    let names = |ids: &[usize]| -> String {
        ids.iter().map(|&i| p.elements[i].label.as_str()).collect::<Vec<_>>().join(",")
    };

    let mut elements = p.elements.clone();
    let mut taken: std::collections::HashSet<String> = elements.iter().map(|e| e.label.clone()).collect();
    for cut in &extra {
        let below: Vec<usize> = cut.ones().collect();
        let above = upper_bounds(cut);
        let (provenance, label) = if below.is_empty() {
            (Provenance::Limit, format!("P{{{}}}", names(&extremal(&above, false))))
        } else if above.is_empty() {
            (Provenance::Colimit, format!("Q{{{}}}", names(&extremal(&below, true))))
        } else {
            (
                Provenance::Cut,
                format!("C{{{};{}}}", names(&extremal(&below, true)), names(&extremal(&above, false))),
            )
        };
        let mut label = label;
        while !taken.insert(label.clone()) {
            label.push('\'');
        }
        elements.push(ElementInfo::new(label, provenance));
    }
    cuts.extend(extra);

    let m = cuts.len();
    let up = (0..m)
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(m);
            s.extend((0..m).filter(|&b| cuts[a].is_subset(&cuts[b])));
            s
        })
        .collect();
    Lattice::from_up_sets(elements, up)
}
