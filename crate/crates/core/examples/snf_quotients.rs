//! Smith normal form over `Z` and quotients of submodules of `(Z/m)^n`.

use tame_approx::{kernel_mod, quotient_structure, snf, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = snf(&a);
    println!("A has invariant factors {:?}", s.diagonal_entries());
    assert_eq!(s.left.mul(&a).mul(&s.right), s.diagonal);

    // the kernel of x ↦ 2x on (Z/8)^2 is (4Z/8)^2, a copy of (Z/2)^2
    let doubling = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 2]]);
    let ker = kernel_mod(&doubling, 8).unwrap();
    let everything = IntMatrix::identity(2);
    println!("ker(2) in (Z/8)^2 spanned by columns of {ker:?}");
    let q = quotient_structure(&ker, &everything, 8).unwrap();
    println!("(Z/8)^2 / ker(2) = {q}");
    assert_eq!(q.factors(), &[4, 4]);
}
