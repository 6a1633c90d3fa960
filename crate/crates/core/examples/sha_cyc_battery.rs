//! `Ш¹_cyc` of the augmentation ideal mod `|G|` across the builtin groups.
//! Non-trivial exactly when `G` is not cyclic.

use tame_approx::cohomology::verify_augmentation_lemma;
use tame_approx::{sha_cyc, GModule, Group};

fn main() {
    println!(
        "{:>8} {:>4} {:>4}  {:<10} lemma",
        "group", "|G|", "exp", "Sha_cyc"
    );
    for name in ["z2", "z4", "z6", "klein4", "s3", "q8", "z2xz4", "z3xz3"] {
        let g = Group::builtin(name).unwrap();
        let (ideal, _, _) = GModule::augmentation_ideal(&g, g.order() as u64).unwrap();
        let sha = sha_cyc(&g, &ideal).unwrap();
        let report = verify_augmentation_lemma(&g).unwrap();
        println!(
            "{name:>8} {:>4} {:>4}  {:<10} {}",
            g.order(),
            g.exponent(),
            sha.to_string(),
            if report.pass { "ok" } else { "FAIL" }
        );
        assert!(report.pass);
    }
}
