//! Complete a diagram to its lattice and summarize it.

use persilat::complete::complete;
use persilat::diagram::load_diagram;
use persilat::lattice::DEFAULT_ELEMENT_BUDGET;

fn main() -> persilat::Result<()> {
    for name in ["zigzag_3", "grid_4x4", "chain_4", "diamond_m3"] {
        let path = format!("{}/examples/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let d = load_diagram(&std::fs::read_to_string(path).expect("fixture"))?;
        let c = complete(&d, DEFAULT_ELEMENT_BUDGET)?;
        println!("{name}: {}", c.summary());
    }

    let c = persilat::complete::zigzag(3, 2)?;
    let l = c.lattice();
    let labels: Vec<String> = l
        .iter()
        .map(|e| format!("{} ({})", l.label(e), l.provenance(e).kind()))
        .collect();
    println!("zig-zag elements: {}", labels.join(", "));
    Ok(())
}
