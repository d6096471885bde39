//! The Heyting implication, the law suite and formula validity.

use persilat::heyting::{is_valid, law_suite, parse_formula, HeytingAlgebra};
use persilat::shapes::chain_lattice;

fn main() -> persilat::Result<()> {
    let h = HeytingAlgebra::new(chain_lattice(4)?)?;
    let report = law_suite(&h);
    println!("chain of 4: {}", report.summary());
    print!("{report}");

    let three = HeytingAlgebra::new(chain_lattice(3)?)?;
    for text in ["p | !p", "!!(p | !p)", "(p -> q) | (q -> p)", "((p -> q) -> p) -> p"] {
        let v = is_valid(&three, &parse_formula(text)?, 3)?;
        match v.counter {
            None => println!("{text}: valid"),
            Some(c) => println!("{text}: invalid; {}", c.describe(&three)),
        }
    }
    Ok(())
}
