//! Turn a filtered complex into a chain of homology spaces and compare
//! persistence ranks with the bars of the boundary reduction.

use persilat::diagram::persistence_rank;
use persilat::homology::{diagram_from_filtration, load_filtration, persistence_bars, persistent_betti_oracle};

fn main() -> persilat::Result<()> {
    for name in ["circle_then_fill", "two_circles", "merging_components"] {
        let path = format!("{}/examples/data/{name}.txt", env!("CARGO_MANIFEST_DIR"));
        let fc = load_filtration(&std::fs::read_to_string(path).expect("fixture"), 2)?;
        println!("{name}: {} simplices, levels 0..={}", fc.simplices().len(), fc.max_level());
        for bar in persistence_bars(&fc) {
            let death = bar.death.map_or("inf".to_string(), |d| d.to_string());
            println!("  H{} bar [{}, {death})", bar.dim, bar.birth);
        }
        for k in 0..=1 {
            let d = diagram_from_filtration(&fc, k)?;
            let dims: Vec<usize> = d.nodes().iter().map(|n| n.dim).collect();
            let mut ranks = Vec::new();
            for i in 0..=fc.max_level() {
                for j in i..=fc.max_level() {
                    let r = persistence_rank(&d, &format!("X{i}"), &format!("X{j}"))?;
                    assert_eq!(r, persistent_betti_oracle(&fc, i, j, k)?);
                    ranks.push(format!("({i},{j})={r}"));
                }
            }
            println!("  H{k} dims {dims:?}; ranks {}", ranks.join(" "));
        }
    }
    Ok(())
}
