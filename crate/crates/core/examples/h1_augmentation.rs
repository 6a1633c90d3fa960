//! `H¹` of the augmentation ideal for a few groups, with cocycle representatives.

use tame_approx::{h1, tate_h0, GModule, Group};

fn main() {
    for name in ["z4", "klein4", "s3", "q8", "z2xz4"] {
        let g = Group::builtin(name).unwrap();
        let m = g.order() as u64;
        let (ideal, _, _) = GModule::augmentation_ideal(&g, m).unwrap();
        let res = h1(&g, &ideal).unwrap();
        let trivial = GModule::trivial(&g, m, 1).unwrap();
        println!(
            "{name:>7}: H^1(G, I mod {m}) = {:<10}  H^0_T(G, Z/{m}) = {}",
            res.structure.to_string(),
            tate_h0(&g, &trivial).unwrap()
        );
        for z in &res.cocycle_reps {
            assert!(z.is_cocycle(&ideal));
        }
    }

    let g = Group::builtin("klein4").unwrap();
    let (ideal, _, _) = GModule::augmentation_ideal(&g, 4).unwrap();
    let res = h1(&g, &ideal).unwrap();
    println!("\ngenerator of H^1(klein4, I mod 4):");
    for x in g.elements() {
        let v: Vec<String> = res.cocycle_reps[0]
            .value(x)
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("  {:>6} -> [{}]", g.name(x), v.join(", "));
    }
}
