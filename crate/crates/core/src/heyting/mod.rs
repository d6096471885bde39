//! Implication and pseudo-complement on finite distributive lattices.

mod formula;
mod laws;

pub use formula::{eval_formula, is_valid, parse_formula, Formula, Validity, Valuation, DEFAULT_VAR_BUDGET};
pub use laws::{law_suite, AxiomResult, LawReport, LawResult, LawStatus};

use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};

/// A distributive lattice with tabulated `⇒` and `¬`.
#[derive(Clone, Debug)]
pub struct HeytingAlgebra {
    lattice: Lattice,
    implies: Vec<usize>,
    negation: Vec<usize>,
}

impl HeytingAlgebra {
    /// Fails with [`Error::NonDistributive`] naming a witness triple when the
    /// lattice does not distribute.
    pub fn new(lattice: Lattice) -> Result<Self> {
        let d = lattice.distributivity();
        if !d.holds {
            let (x, y, z) = d.witness.expect("failing check has a witness");
            return Err(Error::NonDistributive(
                lattice.label(x).to_string(),
                lattice.label(y).to_string(),
                lattice.label(z).to_string(),
            ));
        }
        let n = lattice.len();
        let mut implies = vec![0; n * n];
        for a in lattice.iter() {
            for b in lattice.iter() {
                implies[a.0 * n + b.0] = greatest_solution(&lattice, a, b)
                    .expect("distributive lattices have relative pseudo-complements")
                    .0;
            }
        }
        let bottom = lattice.bottom().0;
        let negation = (0..n).map(|a| implies[a * n + bottom]).collect();
        Ok(Self {
            lattice,
            implies,
            negation,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.lattice.iter()
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn label(&self, e: Elem) -> &str {
        self.lattice.label(e)
    }

    pub fn implies(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.implies[a.0 * self.len() + b.0])
    }

    /// `¬a = a ⇒ ⊥`.
    pub fn not(&self, a: Elem) -> Elem {
        Elem(self.negation[a.0])
    }

    /// Whether `¬¬a = a` for every `a`.
    pub fn is_boolean(&self) -> bool {
        self.iter().all(|a| self.not(self.not(a)) == a)
    }
}

/// The element of `{x : x ∧ a ≤ b}` lying above every other one, if any.
fn greatest_solution(l: &Lattice, a: Elem, b: Elem) -> Option<Elem> {
    let solutions: Vec<Elem> = l.iter().filter(|&x| l.leq(l.meet(x, a), b)).collect();
    solutions
        .iter()
        .copied()
        .find(|&g| solutions.iter().all(|&x| l.leq(x, g)))
}

pub fn implication(h: &HeytingAlgebra, a: Elem, b: Elem) -> Elem {
    h.implies(a, b)
}

pub fn pseudo_complement(h: &HeytingAlgebra, a: Elem) -> Elem {
    h.not(a)
}

pub fn is_boolean(h: &HeytingAlgebra) -> bool {
    h.is_boolean()
}

/// `⋁{x : x ∧ a ≤ b}` by scanning every element. Refuses lattices that do
/// not distribute, where the join need not satisfy the adjunction.
pub fn implication_oracle(l: &Lattice, a: Elem, b: Elem) -> Result<Elem> {
    let d = l.distributivity();
    if let Some((x, y, z)) = d.witness {
        return Err(Error::NonDistributive(
            l.label(x).to_string(),
            l.label(y).to_string(),
            l.label(z).to_string(),
        ));
    }
    Ok(join_of_solutions(l, a, b))
}

fn join_of_solutions(l: &Lattice, a: Elem, b: Elem) -> Elem {
    l.join_all(l.iter().filter(|&x| l.leq(l.meet(x, a), b)))
}

/// Implication computed on any lattice, marked with whether the result
/// actually is a relative pseudo-complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImplicationDiagnostic {
    pub value: Elem,
    /// `value ∧ a ≤ b`, i.e. the join is itself a solution.
    pub is_heyting: bool,
}

pub fn implication_diagnostic(l: &Lattice, a: Elem, b: Elem) -> ImplicationDiagnostic {
    let value = join_of_solutions(l, a, b);
    ImplicationDiagnostic {
        value,
        is_heyting: l.leq(l.meet(value, a), b),
    }
}
