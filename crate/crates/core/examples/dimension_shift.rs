//! For each subgroup `H`, `H¹(H, I)` should match `Ĥ⁰(H, Z/n)` and the group
//! ring should be cohomologically trivial.

use tame_approx::cohomology::dimension_shift_check;
use tame_approx::Group;

fn main() {
    for name in ["klein4", "q8", "z2xz4"] {
        let g = Group::builtin(name).unwrap();
        let everything = g.all_subgroups();
        let report = dimension_shift_check(&g, &everything).unwrap();
        println!("{name} ({} subgroups checked)", report.rows.len());
        for row in &report.rows {
            println!(
                "  |H| = {:>2}  H1(H,I) = {:<8} H1(H,ring) = {:<4} {{{}}}",
                row.order,
                row.h1_ideal.to_string(),
                row.h1_group_ring.to_string(),
                row.elements.join(", ")
            );
        }
        assert!(report.pass);
    }
}
