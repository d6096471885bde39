//! From a diagram to its completed lattice, with closed-form implication
//! wherever the diagram has one of the recognized shapes.

use std::fmt;

use crate::diagram::{poset_of, Diagram, ShapeHint};
use crate::error::{Error, Result};
use crate::heyting::HeytingAlgebra;
use crate::lattice::{dm_completion, Elem, Lattice};
use crate::shapes::{
    chain_implies, grid_implies, grid_implies_as_stated, grid_is_bicartesian, uniform_chain_diagram,
    uniform_grid_diagram, zigzag_completion_diagram, zigzag_implies, GridIndex, TheoremEntry,
    ZigzagLattice, ZigzagModule, DISCREPANCIES,
};

/// Closed-form description of a completed lattice.
#[derive(Clone, Debug)]
pub enum ShapeInfo {
    /// `rank[e]` is the position of `e` in the chain.
    Chain { rank: Vec<usize> },
    /// Grid of `(m+1) × (n+1)` spaces; `index[e]` locates `e`.
    Grid {
        m: usize,
        n: usize,
        index: Vec<GridIndex>,
        bicartesian: bool,
    },
    /// Element `e` of the lattice is element `e` of the interval lattice.
    Zigzag(Box<ZigzagLattice>),
}

/// A diagram together with the lattice it completes to.
#[derive(Clone, Debug)]
pub struct Completion {
    diagram: Diagram,
    lattice: Lattice,
    shape: Option<ShapeInfo>,
}

/// Oracle answer for `a ⇒ b`, with the closed form where one applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationAnswer {
    pub value: Elem,
    pub closed_form: Option<Elem>,
    /// Id of a recorded discrepancy that explains a missing closed form.
    pub discrepancy: Option<&'static str>,
    pub note: Option<String>,
}

impl ImplicationAnswer {
    /// `None` when there is nothing to compare against.
    pub fn agrees(&self) -> Option<bool> {
        self.closed_form.map(|c| c == self.value)
    }
}

/// Counts and verdicts printed by `complete`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub elements: usize,
    pub original: usize,
    pub limit: usize,
    pub colimit: usize,
    pub cut: usize,
    pub distributive: bool,
    pub witness: Option<(String, String, String)>,
    pub boolean: Option<bool>,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [
            (self.original, "original"),
            (self.limit, "limit"),
            (self.colimit, "colimit"),
            (self.cut, "cut"),
        ]
        .iter()
        .filter(|(c, _)| *c > 0)
        .map(|(c, k)| format!("{c} {k}"))
        .collect();
        write!(f, "{} elements; {}; distributive: ", self.elements, parts.join(", "))?;
        match &self.witness {
            None => write!(f, "yes")?,
            Some((x, y, z)) => write!(f, "no (witness {x}, {y}, {z})")?,
        }
        if let Some(b) = self.boolean {
            write!(f, "; boolean: {}", if b { "yes" } else { "no" })?;
        }
        Ok(())
    }
}

impl Completion {
    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn shape(&self) -> Option<&ShapeInfo> {
        self.shape.as_ref()
    }

    pub fn heyting(&self) -> Result<HeytingAlgebra> {
        HeytingAlgebra::new(self.lattice.clone())
    }

    pub fn summary(&self) -> Summary {
        let l = &self.lattice;
        let count = |kind: &str| l.iter().filter(|&e| l.provenance(e).kind() == kind).count();
        let d = l.distributivity();
        let witness = d.witness.map(|(x, y, z)| {
            (l.label(x).to_string(), l.label(y).to_string(), l.label(z).to_string())
        });
        let boolean = if d.holds {
            self.heyting().ok().map(|h| h.is_boolean())
        } else {
            None
        };
        Summary {
            elements: l.len(),
            original: count("original"),
            limit: count("limit"),
            colimit: count("colimit"),
            cut: count("cut"),
            distributive: d.holds,
            witness,
            boolean,
        }
    }

    /// `a ⇒ b` from the Heyting table, compared with the closed form.
    pub fn implies(&self, h: &HeytingAlgebra, a: Elem, b: Elem) -> Result<ImplicationAnswer> {
        let value = h.implies(a, b);
        let mut answer = ImplicationAnswer {
            value,
            closed_form: None,
            discrepancy: None,
            note: None,
        };
        match &self.shape {
            None => {}
            Some(ShapeInfo::Chain { rank }) => {
                let c = chain_implies(rank.len(), rank[a.0], rank[b.0])?;
                answer.closed_form = rank.iter().position(|&r| r == c).map(Elem);
            }
            Some(ShapeInfo::Grid {
                m,
                n,
                index,
                bicartesian,
            }) => {
                let (ga, gb) = (index[a.0], index[b.0]);
                if *bicartesian {
                    answer.closed_form = Some(grid_implies(*m, *n, ga, gb)?.elem(*n));
                    let stated = grid_implies_as_stated(*m, *n, ga, gb)?;
                    if stated.elem(*n) != value {
                        answer.note = Some(format!(
                            "the literal closed-form rule gives {}, which is not the relative pseudo-complement",
                            stated.label()
                        ));
                    }
                } else {
                    answer.discrepancy = Some(DISCREPANCIES[3].id);
                }
            }
            Some(ShapeInfo::Zigzag(z)) => {
                let r = zigzag_implies(z, h, z.element(a), z.element(b))?;
                match r.theorem {
                    TheoremEntry::Stated(s) => answer.closed_form = Some(z.elem(s)?),
                    TheoremEntry::Discrepancy { stated, note } => {
                        answer.discrepancy = Some(note.id);
                        answer.note = Some(format!("theorem states {}: {}", stated.label(), note.description));
                    }
                    TheoremEntry::NotCovered => {
                        answer.closed_form = Some(z.elem(r.closed_form)?);
                        answer.note = Some("closed form from grid coordinates".into());
                    }
                }
            }
        }
        Ok(answer)
    }
}

/// Completes `d`. Zig-zag diagrams are first normalized and filled in with
/// their pullbacks and pushouts; all others are completed from their
/// reachability order.
pub fn complete(d: &Diagram, budget: usize) -> Result<Completion> {
    if d.shape() == Some(ShapeHint::Zigzag) {
        let module = ZigzagModule::from_diagram(d)?;
        let diagram = zigzag_completion_diagram(&module)?;
        let lattice = dm_completion(&poset_of(&diagram)?.poset, budget)?;
        let z = ZigzagLattice::new(module.length())?;
        let zl = z.lattice();
        let same = lattice.len() == zl.len()
            && lattice.iter().all(|e| lattice.label(e) == zl.label(e))
            && lattice.iter().all(|a| lattice.iter().all(|b| lattice.leq(a, b) == zl.leq(a, b)));
        if !same {
            return Err(Error::Internal(
                "zig-zag completion differs from the interval lattice".into(),
            ));
        }
        return Ok(Completion {
            diagram,
            lattice,
            shape: Some(ShapeInfo::Zigzag(Box::new(z))),
        });
    }
    let lattice = dm_completion(&poset_of(d)?.poset, budget)?;
    let shape = match d.shape() {
        Some(ShapeHint::Chain) => Some(chain_shape(&lattice)?),
        Some(ShapeHint::Grid) => Some(grid_shape(d, &lattice)?),
        _ => None,
    };
    Ok(Completion {
        diagram: d.clone(),
        lattice,
        shape,
    })
}

fn chain_shape(l: &Lattice) -> Result<ShapeInfo> {
    if !l.is_chain() {
        return Err(Error::NotAChain("diagram marked as a chain is not totally ordered".into()));
    }
    Ok(ShapeInfo::Chain {
        rank: l.iter().map(|e| l.down_set(e).count() - 1).collect(),
    })
}

fn grid_shape(d: &Diagram, l: &Lattice) -> Result<ShapeInfo> {
    let bad = |msg: &str| Error::Schema(format!("grid diagram: {msg}"));
    if l.len() != d.nodes().len() {
        return Err(bad("completion adds elements, so the nodes do not form a full grid"));
    }
    let mut index = Vec::with_capacity(l.len());
    for node in d.nodes() {
        match node.at.as_deref() {
            Some(&[i, j]) => index.push(GridIndex::new(i, j)),
            _ => return Err(bad(&format!("node {} needs two coordinates in `at`", node.id))),
        }
    }
    let m = index.iter().map(|g| g.i).max().unwrap_or(0);
    let n = index.iter().map(|g| g.j).max().unwrap_or(0);
    let mut seen = vec![false; (m + 1) * (n + 1)];
    for g in &index {
        seen[g.elem(n).0] = true;
    }
    if index.len() != seen.len() || seen.contains(&false) {
        return Err(bad("coordinates do not cover a rectangle exactly once"));
    }
    for a in l.iter() {
        for b in l.iter() {
            if l.leq(a, b) != index[a.0].leq(index[b.0]) {
                return Err(bad("reachability is not the componentwise order"));
            }
        }
    }
    Ok(ShapeInfo::Grid {
        m,
        n,
        index,
        bicartesian: grid_is_bicartesian(d)?,
    })
}

/// Completion of the chain of `n` one-dimensional spaces.
pub fn chain(n: usize, prime: u32) -> Result<Completion> {
    complete(&uniform_chain_diagram(n, prime)?, crate::lattice::DEFAULT_ELEMENT_BUDGET)
}

/// Completion of the `(m+1) × (n+1)` grid of one-dimensional spaces.
pub fn grid(m: usize, n: usize, prime: u32) -> Result<Completion> {
    complete(&uniform_grid_diagram(m, n, prime)?, crate::lattice::DEFAULT_ELEMENT_BUDGET)
}

/// Completion of the normalized zig-zag of length `n` with identity maps.
pub fn zigzag(n: usize, prime: u32) -> Result<Completion> {
    complete(&ZigzagModule::uniform(n, prime)?.diagram()?, crate::lattice::DEFAULT_ELEMENT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramBuilder;
    use crate::heyting::implication_oracle;

    fn all_agree(c: &Completion) {
        let h = c.heyting().unwrap();
        let l = c.lattice();
        for a in l.iter() {
            for b in l.iter() {
                let ans = c.implies(&h, a, b).unwrap();
                assert_eq!(ans.value, implication_oracle(l, a, b).unwrap());
                assert_ne!(ans.agrees(), Some(false), "{} => {}", l.label(a), l.label(b));
            }
        }
    }

    #[test]
    fn summaries() {
        let z = zigzag(3, 2).unwrap();
        assert_eq!(
            z.summary().to_string(),
            "16 elements; 7 original, 6 limit, 3 colimit; distributive: yes; boolean: no"
        );
        let g = grid(3, 3, 2).unwrap();
        assert_eq!(g.summary().to_string(), "16 elements; 16 original; distributive: yes; boolean: no");
        assert_eq!(chain(1, 2).unwrap().summary().boolean, Some(true));
    }

    #[test]
    fn closed_forms_match_the_oracle() {
        for n in 1..=6 {
            all_agree(&chain(n, 2).unwrap());
        }
        for (m, n) in [(1, 1), (1, 3), (3, 3)] {
            all_agree(&grid(m, n, 3).unwrap());
        }
        for n in 1..=4 {
            all_agree(&zigzag(n, 2).unwrap());
        }
    }

    #[test]
    fn grid_example_and_stated_note() {
        let g = grid(3, 3, 2).unwrap();
        let h = g.heyting().unwrap();
        let e = |s: &str| g.lattice().find(s).unwrap();
        let ans = g.implies(&h, e("X02"), e("X11")).unwrap();
        assert_eq!(ans.value, e("X31"));
        assert_eq!(ans.agrees(), Some(true));
        let ans = g.implies(&h, e("X31"), e("X01")).unwrap();
        assert_eq!(ans.value, e("X03"));
        assert!(ans.note.is_some());
    }

    #[test]
    fn zigzag_discrepancy_is_reported() {
        let z = zigzag(3, 2).unwrap();
        let h = z.heyting().unwrap();
        let e = |s: &str| z.lattice().find(s).unwrap();
        assert_eq!(z.implies(&h, e("X0"), e("X1")).unwrap().value, e("Q13"));
        let ans = z.implies(&h, e("X12"), e("X1")).unwrap();
        assert_eq!(ans.discrepancy, Some("edge-to-endpoint"));
        assert_eq!(ans.value, e("X01"));
    }

    #[test]
    fn non_bicartesian_grid_has_no_closed_form() {
        let d = DiagramBuilder::new(2)
            .shape(ShapeHint::Grid)
            .node_with("X00", 1, Default::default(), Some(vec![0, 0]))
            .node_with("X01", 1, Default::default(), Some(vec![0, 1]))
            .node_with("X10", 1, Default::default(), Some(vec![1, 0]))
            .node_with("X11", 1, Default::default(), Some(vec![1, 1]))
            .edge("a", "X00", "X01", vec![vec![0]])
            .edge("b", "X00", "X10", vec![vec![0]])
            .edge("c", "X01", "X11", vec![vec![1]])
            .edge("d", "X10", "X11", vec![vec![1]])
            .build()
            .unwrap();
        let c = complete(&d, 64).unwrap();
        let h = c.heyting().unwrap();
        let ans = c.implies(&h, Elem(1), Elem(2)).unwrap();
        assert_eq!(ans.discrepancy, Some("grid-bicartesian"));
        assert_eq!(ans.agrees(), None);
    }

    #[test]
    fn non_distributive_summary_names_a_witness() {
        let d = DiagramBuilder::new(2)
            .node("lo", 1)
            .node("a", 1)
            .node("b", 1)
            .node("c", 1)
            .node("hi", 1)
            .edge("1", "lo", "a", vec![vec![1]])
            .edge("2", "lo", "b", vec![vec![1]])
            .edge("3", "lo", "c", vec![vec![1]])
            .edge("4", "a", "hi", vec![vec![1]])
            .edge("5", "b", "hi", vec![vec![1]])
            .edge("6", "c", "hi", vec![vec![1]])
            .build()
            .unwrap();
        let s = complete(&d, 64).unwrap().summary();
        assert!(!s.distributive);
        assert!(s.witness.is_some());
        assert_eq!(s.boolean, None);
    }
}
