//! The least primes `p ≡ 1 + ℓⁿ mod ℓⁿ⁺¹` and matching `q` for small `(ℓ, n)`.

use tame_approx::arithmetic::{
    find_p, find_q, is_ellth_power_residue, residue_witness, DEFAULT_Q_BOUND,
};

fn main() {
    for (ell, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let p = find_p(ell, n, 2).unwrap();
        let q = find_q(ell, p, DEFAULT_Q_BOUND).unwrap();
        assert!(!is_ellth_power_residue(q, p, ell).unwrap());
        println!(
            "ell = {ell}, n = {n}: p = {p:>5}, q = {q:>5}  (q^((p-1)/{ell}) = {} mod p)",
            residue_witness(q, p, ell)
        );
    }
}
