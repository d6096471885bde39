//! Load a diagram and realize meets and joins of its spaces as pullbacks and
//! pushouts.

use persilat::diagram::{check_commutativity, join_realize, load_diagram, meet_realize, persistence_rank, poset_of};

fn main() -> persilat::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/two_filtrations.json");
    let d = load_diagram(&std::fs::read_to_string(path).expect("fixture"))?;
    println!("{} nodes, {} edges over F_{}", d.nodes().len(), d.edges().len(), d.prime());
    println!("commutativity violations: {}", check_commutativity(&d).len());

    let p = poset_of(&d)?;
    println!("A <= C: {}, A <= B: {}", p.leq(0, 2), p.leq(0, 1));

    let meet = meet_realize(&d, "A", "B")?;
    println!("A & B has dimension {} inside A + B", meet.dim());
    let join = join_realize(&d, "A", "B")?;
    println!("A | B has dimension {}", join.dim());
    println!("persistence rank of A & B -> A | B: {}", persistence_rank(&d, "A", "B")?);
    Ok(())
}
