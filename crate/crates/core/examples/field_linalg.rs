//! Arithmetic in GF(4) and GF(9), and Gaussian elimination over them.

use anyhow::Result;
use tautilt::field::FieldSpec;
use tautilt::matrix::FFMatrix;

fn main() -> Result<()> {
    let f4 = FieldSpec::new(2, 2)?;
    let w = f4.primitive_element();
    println!("GF(4) modulus {:?}, generator {w}", f4.modulus());
    for k in 0..4 {
        print!("w^{k} = {}  ", f4.pow(w, k));
    }
    println!();

    let f9 = FieldSpec::new(3, 2)?;
    let a = FFMatrix::from_rows(&f9, &[vec![1, 2, 0, 4], vec![2, 4, 1, 8], vec![3, 6, 1, 3]]);
    let (r, pivots) = a.rref();
    println!("rank {} over GF(9), pivots {pivots:?}", a.rank());
    for i in 0..r.rows() {
        println!("  {:?}", r.row(i));
    }
    let kernel = a.nullspace();
    println!(
        "nullspace has dimension {}; A * N is zero: {}",
        kernel.cols(),
        a.mul(&kernel).is_zero()
    );

    let b = FFMatrix::from_rows(&f9, &[vec![1, 1], vec![0, 5]]);
    let inv = b.inverse().expect("invertible");
    println!("B * B^-1 = I: {}", b.mul(&inv).is_identity());
    Ok(())
}
