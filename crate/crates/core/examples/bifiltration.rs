//! Implication on a bifiltration grid: the componentwise closed form next to
//! the value the theorem states.

use persilat::heyting::HeytingAlgebra;
use persilat::shapes::{grid_implies, grid_implies_as_stated, grid_lattice, grid_nonzero_negation_elements, GridIndex};

fn main() -> persilat::Result<()> {
    let (m, n) = (3, 3);
    let h = HeytingAlgebra::new(grid_lattice(m, n)?)?;
    let pairs = [((0, 1), (3, 1)), ((3, 1), (0, 1)), ((0, 2), (1, 1)), ((1, 1), (0, 2))];
    for ((ai, aj), (bi, bj)) in pairs {
        let (a, b) = (GridIndex::new(ai, aj), GridIndex::new(bi, bj));
        let value = h.implies(a.elem(n), b.elem(n));
        println!(
            "{} => {} = {}   closed form {}, as stated {}",
            a.label(),
            b.label(),
            h.label(value),
            grid_implies(m, n, a, b)?.label(),
            grid_implies_as_stated(m, n, a, b)?.label()
        );
    }
    let axes: Vec<String> = grid_nonzero_negation_elements(m, n).iter().map(|g| g.label()).collect();
    println!("elements with a nonzero negation: {}", axes.join(" "));
    for a in ["X03", "X30", "X20", "X11"] {
        let e = h.lattice().find(a)?;
        println!("!{a} = {}", h.label(h.not(e)));
    }
    Ok(())
}
