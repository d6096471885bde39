//! Implication on a filtration: everything that persists from `a` reaches
//! the top, otherwise the answer is `b` itself.

use persilat::heyting::HeytingAlgebra;
use persilat::shapes::{chain_implies, chain_lattice, most_persistent_query, Verdict};

fn main() -> persilat::Result<()> {
    let n = 5;
    let h = HeytingAlgebra::new(chain_lattice(n)?)?;
    for (i, j) in [(1, 3), (3, 1), (2, 2), (4, 0)] {
        let value = h.implies(h.lattice().find(&format!("X{i}"))?, h.lattice().find(&format!("X{j}"))?);
        println!("X{i} => X{j} = {} (closed form X{})", h.label(value), chain_implies(n, i, j)?);
    }
    for (a, b) in [("X1", "X3"), ("X3", "X1"), ("X0", "X4")] {
        let verdict = most_persistent_query(&h, h.lattice().find(a)?, h.lattice().find(b)?)?;
        let text = match verdict {
            Verdict::BIsTop => "b is the top".to_string(),
            Verdict::TopReached => "a <= b, so the implication is the top".to_string(),
            Verdict::OrderIs(e) => format!("b < a, implication is {}", h.label(e)),
        };
        println!("{a}, {b}: {text}");
    }
    Ok(())
}
