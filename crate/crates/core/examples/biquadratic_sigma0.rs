//! Decomposition groups in `Q(√a, √b)` and the places where they are not cyclic.

use tame_approx::arithmetic::{
    decomposition_subgroup, local_square_table, sigma0_biquadratic, KummerPair, Place,
};

fn main() {
    for (a, b) in [(3, 17), (5, 13), (7, 17), (-1, 2), (3, 5)] {
        let pair = KummerPair::new(a, b).unwrap();
        println!("Q(sqrt({a}), sqrt({b})), ab = {}", pair.ab());
        for place in pair.ramified_places() {
            let d = decomposition_subgroup(&pair, place);
            let squares: Vec<String> = local_square_table(&pair, place)
                .iter()
                .map(|c| format!("{}{}", c.value, if c.is_square { "" } else { "*" }))
                .collect();
            println!(
                "  {:>4}: |D| = {}  non-squares marked *: {}",
                place,
                d.order(),
                squares.join(" ")
            );
        }
        // an unramified place: D is generated by Frobenius
        let d = decomposition_subgroup(&pair, Place::Prime(101));
        println!("  101: |D| = {}", d.order());
        println!("  Sigma0 = {{{}}}", sigma0_biquadratic(&pair).join(", "));
    }
}
