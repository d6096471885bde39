//! Normalize a zig-zag, complete it with pullbacks and pushouts, and read
//! off implications.

use persilat::complete::complete;
use persilat::lattice::DEFAULT_ELEMENT_BUDGET;
use persilat::linalg::FpMatrix;
use persilat::shapes::{
    implication_filtration, zigzag_implies, zigzag_normalize, RawArrow, RawZigzag, TheoremEntry, ZigzagElement,
    ZigzagLattice, ZigzagSpace,
};

fn main() -> persilat::Result<()> {
    // A → B → C ← D: two forward arrows in a row force a copy of B.
    let id = FpMatrix::identity(1, 2);
    let raw = RawZigzag {
        prime: 2,
        spaces: ["A", "B", "C", "D"].iter().map(|s| ZigzagSpace::new(*s, 1)).collect(),
        arrows: vec![
            RawArrow { forward: true, matrix: id.clone() },
            RawArrow { forward: true, matrix: id.clone() },
            RawArrow { forward: false, matrix: id },
        ],
    };
    let module = zigzag_normalize(&raw)?;
    let names: Vec<&str> = module.spaces().iter().map(|s| s.name.as_str()).collect();
    println!("normalized: {} (length {})", names.join(" "), module.length());

    let c = complete(&module.diagram()?, DEFAULT_ELEMENT_BUDGET)?;
    println!("{}", c.summary());

    let z = ZigzagLattice::new(3)?;
    let h = persilat::heyting::HeytingAlgebra::new(z.lattice().clone())?;
    let x = ZigzagElement::vertex;
    for (a, b) in [(x(0), x(1)), (x(1), x(2)), (x(3), x(0)), (ZigzagElement::edge(1), x(1))] {
        let r = zigzag_implies(&z, &h, a, b)?;
        let theorem = match r.theorem {
            TheoremEntry::Stated(s) => format!("theorem {}", s.label()),
            TheoremEntry::Discrepancy { stated, note } => format!("theorem says {} [{}]", stated.label(), note.id),
            TheoremEntry::NotCovered => "not covered".into(),
        };
        println!("{} => {} = {}   ({theorem})", a.label(), b.label(), r.value.label());
    }
    let walk: Vec<String> = implication_filtration(&z, &h, x(0), x(1))?.iter().map(|e| e.label()).collect();
    println!("from X0 & X1 up to X0 => X1: {}", walk.join(" -> "));
    Ok(())
}
