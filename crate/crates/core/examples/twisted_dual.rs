//! Duals `Hom(M, μ_e)` under the trivial and a non-trivial twist, and their `H¹`.

use tame_approx::{h1, GModule, Group};

fn main() {
    let g = Group::builtin("klein4").unwrap();
    let (ideal, _, _) = GModule::augmentation_ideal(&g, 4).unwrap();
    // elements 1 and 2 act on μ_4 by inversion, element 3 trivially
    for twist in [vec![1, 1, 1, 1], vec![1, 3, 3, 1]] {
        let dual = ideal.dual(&twist).unwrap();
        let res = h1(&g, &dual).unwrap();
        println!("twist {twist:?}: H^1(G, I') = {}", res.structure);
    }
    match ideal.dual(&[1, 3, 1, 1]) {
        Err(e) => println!("twist [1, 3, 1, 1] rejected: {e}"),
        Ok(_) => unreachable!("not a character"),
    }
}
