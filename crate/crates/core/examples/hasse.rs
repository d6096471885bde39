//! Hasse diagram of a completed lattice in DOT.

use persilat::lattice::hasse_dot;

fn main() -> persilat::Result<()> {
    let c = persilat::complete::zigzag(2, 2)?;
    print!("{}", hasse_dot(c.lattice()));
    Ok(())
}
