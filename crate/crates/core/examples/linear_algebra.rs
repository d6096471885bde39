//! Exact linear algebra over F_p: rank, kernels, pullbacks and pushouts.

use persilat::linalg::{kernel_basis, pullback, pushout, rank, FpMatrix};

fn main() -> persilat::Result<()> {
    let m = FpMatrix::from_rows(3, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]])?;
    let k = kernel_basis(&m);
    println!("rank {} with a kernel of dimension {}", rank(&m), k.cols());
    println!("kernel basis columns: {:?}", k.to_rows());

    // Two planes in F_3^3 meet in a line.
    let f = FpMatrix::from_rows(3, 2, &[vec![1, 0], vec![0, 1], vec![0, 0]])?;
    let g = FpMatrix::from_rows(3, 2, &[vec![1, 0], vec![0, 0], vec![0, 1]])?;
    let pb = pullback(&f, &g)?;
    println!("pullback of two planes: dimension {}", pb.dim());
    for (name, p) in &pb.projections {
        println!("  projection to {name}: {:?}", p.to_rows());
    }

    // Two lines glued along a common point of F_3.
    let f = FpMatrix::from_rows(3, 1, &[vec![1], vec![0]])?;
    let g = FpMatrix::from_rows(3, 1, &[vec![0], vec![1]])?;
    let po = pushout(&f, &g)?;
    println!("pushout: dimension {} (2 + 2 - 1)", po.dim());
    Ok(())
}
