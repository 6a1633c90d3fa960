mod common;

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use tame_approx::arithmetic::{
    decomposition_subgroup, find_p, find_q, is_prime, is_squarefree, jacobi, local_square,
    sigma0_biquadratic, KummerPair, Place, DEFAULT_Q_BOUND,
};
use tame_approx::certificate::{certify, CertifyOptions};
use tame_approx::cohomology::{h1, sha_cyc, tate_h0, PlaceRecord, ShaEngine};
use tame_approx::module::augmentation_sequence_is_exact;
use tame_approx::{kernel_mod, linalg::QuotientPresentation, snf, GModule, Group, IntMatrix};

use common::{all_vectors, bareiss_det, random_module, small_groups};

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::new(
        rows,
        cols,
        entries.iter().map(|&x| BigInt::from(x)).collect(),
    )
    .unwrap()
}

/// Subgroup of `(Z/m)^n` generated by the columns, by closure.
fn span(cols: &[Vec<u64>], n: usize, m: u64) -> BTreeSet<Vec<u64>> {
    let mut seen = BTreeSet::from([vec![0; n]]);
    let mut queue = VecDeque::from([vec![0; n]]);
    while let Some(v) = queue.pop_front() {
        for c in cols {
            let w: Vec<u64> = v.iter().zip(c).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn columns_u64(a: &IntMatrix, m: u64) -> Vec<Vec<u64>> {
    a.reduce_mod(m)
        .columns()
        .into_iter()
        .map(|c| c.iter().map(|x| x.to_u64().unwrap()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(
        (rows, cols, entries) in (0usize..=6, 0usize..=6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-50i64..=50, r * c)))
    ) {
        let m = matrix(rows, cols, &entries);
        let s = snf(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal.clone());
        prop_assert_eq!(bareiss_det(&s.left).magnitude().to_u64(), Some(1));
        prop_assert_eq!(bareiss_det(&s.right).magnitude().to_u64(), Some(1));
        let d = s.diagonal_entries();
        for w in d.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn kernel_mod_spans_the_brute_force_kernel(
        (m, rows, cols, entries) in (2u64..=9, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(m, r, c)| (Just(m), Just(r), Just(c), prop::collection::vec(0i64..20, r * c)))
    ) {
        let a = matrix(rows, cols, &entries);
        let k = kernel_mod(&a, m).unwrap();
        let brute: BTreeSet<Vec<u64>> = all_vectors(m, cols)
            .into_iter()
            .filter(|x| {
                (0..rows).all(|r| {
                    let s: i64 = (0..cols).map(|c| entries[r * cols + c] * x[c] as i64).sum();
                    s.rem_euclid(m as i64) == 0
                })
            })
            .collect();
        prop_assert_eq!(span(&columns_u64(&k, m), cols, m), brute);
    }

    #[test]
    fn quotient_order_counts_cosets(
        (m, n, amb, mix) in (2u64..=12, 1usize..=4)
            .prop_filter("ambient order ≤ 2^14", |(m, n)| m.pow(*n as u32) <= 1 << 14)
            .prop_flat_map(|(m, n)| (
                Just(m),
                Just(n),
                prop::collection::vec(0i64..40, n * 3),
                prop::collection::vec(0i64..12, 3 * 3),
            ))
    ) {
        // ambient: three generators; sub: three combinations of them
        let amb_m = matrix(n, 3, &amb);
        let sub_m = amb_m.mul(&matrix(3, 3, &mix)).reduce_mod(m);
        let q = QuotientPresentation::new(&sub_m, &amb_m, m).unwrap();
        let big = span(&columns_u64(&amb_m, m), n, m);
        let small = span(&columns_u64(&sub_m, m), n, m);
        prop_assert_eq!(q.structure().order(), BigInt::from(big.len() / small.len()));
        for (i, g) in q.generators().iter().enumerate() {
            let c = q.coordinates(g).unwrap();
            for (j, x) in c.iter().enumerate() {
                prop_assert_eq!(x == &BigInt::from(1), i == j);
            }
        }
        for col in sub_m.columns() {
            prop_assert!(q.coordinates(&col).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn permutation_groups_are_groups(
        perms in prop::collection::vec(Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), 1..=2)
    ) {
        let g = Group::from_permutations(&perms, 120).unwrap();
        let n = g.order();
        for a in 0..n {
            prop_assert_eq!(g.mul(g.identity(), a), a);
            prop_assert_eq!(g.mul(a, g.inverse(a)), g.identity());
            for b in 0..n {
                for c in 0..n {
                    prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        prop_assert_eq!(n % g.exponent(), 0);
        let cyclic = g.cyclic_subgroups();
        for h in &cyclic {
            prop_assert_eq!(n % h.order(), 0);
        }
        if n <= 24 {
            let brute: BTreeSet<Vec<usize>> = (0..n)
                .map(|x| g.generate(&[x]).unwrap().elements().to_vec())
                .collect();
            let lib: BTreeSet<Vec<usize>> = cyclic.iter().map(|h| h.elements().to_vec()).collect();
            prop_assert_eq!(lib, brute);
            for h in g.all_subgroups() {
                prop_assert_eq!(n % h.order(), 0);
            }
        }
    }

    #[test]
    fn random_modules_are_actions_with_valid_cocycles(seed in any::<u64>(), which in 0usize..8) {
        let (_, g) = small_groups().swap_remove(which);
        let mut rng = StdRng::seed_from_u64(seed);
        let module = random_module(&g, &mut rng, 81);
        for a in g.elements() {
            for b in g.elements() {
                let prod = module.action(a).mul(module.action(b)).reduce_mod(module.modulus());
                prop_assert_eq!(&prod, module.action(g.mul(a, b)));
            }
        }
        let res = h1(&g, &module).unwrap();
        prop_assert_eq!(res.cocycle_reps.len(), res.structure.factors().len());
        for z in &res.cocycle_reps {
            prop_assert!(z.is_cocycle(&module));
            prop_assert!(!res.is_trivial_class(z).unwrap() || res.structure.is_trivial());
        }
    }

    #[test]
    fn herbrand_quotient_is_one_on_cyclic_groups(seed in any::<u64>(), which in 0usize..8) {
        let (_, g) = small_groups().swap_remove(which);
        let mut rng = StdRng::seed_from_u64(seed);
        let module = random_module(&g, &mut rng, 81);
        for c in g.cyclic_subgroups() {
            let mc = module.restrict(&c).unwrap();
            let t = tate_h0(mc.group(), &mc).unwrap();
            let h = h1(mc.group(), &mc).unwrap().structure;
            prop_assert_eq!(t.order(), h.order());
        }
    }

    #[test]
    fn sha_sigma_is_monotone_in_the_excluded_set(
        subgroup_picks in prop::collection::vec(0usize..16, 1..=4),
        excluded_mask in 0u32..16,
        extra_mask in 0u32..16,
    ) {
        let g = Group::builtin("z2xz4").unwrap();
        let (ideal, _, _) = GModule::augmentation_ideal(&g, 8).unwrap();
        let subgroups = g.all_subgroups();
        let places: Vec<PlaceRecord> = subgroup_picks
            .iter()
            .enumerate()
            .map(|(i, &k)| PlaceRecord::new(format!("v{i}"), subgroups[k % subgroups.len()].clone(), true))
            .collect();
        let pick = |mask: u32| -> BTreeSet<String> {
            places.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.label.clone()).collect()
        };
        let small = pick(excluded_mask);
        let large: BTreeSet<String> = small.union(&pick(extra_mask)).cloned().collect();
        let mut engine = ShaEngine::new(&g, &ideal).unwrap();
        let a = engine.sha_sigma(&places, &small).unwrap();
        let b = engine.sha_sigma(&places, &large).unwrap();
        prop_assert!((b.structure.order() % a.structure.order()).is_zero());
        // excluding every non-cyclic record recovers Ш¹_cyc
        let non_cyclic: BTreeSet<String> =
            places.iter().filter(|p| !p.is_cyclic()).map(|p| p.label.clone()).collect();
        let all = engine.sha_sigma(&places, &non_cyclic).unwrap();
        prop_assert_eq!(all.structure, sha_cyc(&g, &ideal).unwrap());
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..2_000_000) {
        let trial = n >= 2 && (2..).take_while(|d: &u64| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), trial);
    }

    #[test]
    fn unramified_decomposition_groups_are_frobenius(a in -30i64..30, b in -30i64..30) {
        prop_assume!(KummerPair::new(a, b).is_ok());
        let pair = KummerPair::new(a, b).unwrap();
        for p in (3..500u64).filter(|&p| is_prime(p)) {
            let d = decomposition_subgroup(&pair, Place::Prime(p));
            let ramified = (a * b) % p as i64 == 0;
            if d.order() == 4 {
                prop_assert!(ramified);
            }
            if !ramified {
                // Frobenius flips √a iff (a/p) = -1, √b iff (b/p) = -1
                let frob = usize::from(jacobi(a, p) == -1) | usize::from(jacobi(b, p) == -1) << 1;
                let generated = d.parent().generate(&[frob]).unwrap();
                prop_assert_eq!(d.elements(), generated.elements());
            }
        }
    }
}

/// `x² ≡ d` solvable mod `p³` (odd `p`) or mod `2⁵`: for squarefree `d` this
/// decides squareness in `Q_p`.
fn brute_local_square(d: i64, p: u64) -> bool {
    let m = if p == 2 { 32 } else { p.pow(3) } as i64;
    let target = d.rem_euclid(m);
    (0..m).any(|x| (x * x) % m == target)
}

fn brute_sigma0(pair: &KummerPair) -> Vec<String> {
    let mut out = Vec::new();
    for p in (2..200u64).filter(|&p| is_prime(p)) {
        let squares = pair
            .classes()
            .iter()
            .filter(|&&d| brute_local_square(d, p))
            .count();
        if squares == 0 {
            out.push(p.to_string());
        }
    }
    out
}

#[test]
fn local_squares_match_hensel_lifting() {
    for p in (2..60u64).filter(|&p| is_prime(p)) {
        for d in (-50i64..=50).filter(|&d| is_squarefree(d)) {
            assert_eq!(
                local_square(d, Place::Prime(p)).is_square,
                brute_local_square(d, p),
                "d = {d}, p = {p}"
            );
        }
    }
}

#[test]
fn sigma0_matches_local_square_oracle() {
    for (a, b) in [
        (3, 17),
        (5, 13),
        (-1, 2),
        (2, 3),
        (-3, 7),
        (5, 41),
        (7, 11),
        (-5, 13),
    ] {
        let pair = KummerPair::new(a, b).unwrap();
        assert_eq!(sigma0_biquadratic(&pair), brute_sigma0(&pair), "({a}, {b})");
    }
    assert_eq!(
        sigma0_biquadratic(&KummerPair::new(5, 13).unwrap()),
        vec!["5", "13"]
    );
}

#[test]
fn sigma0_of_searched_pairs_is_p_and_q() {
    for p in (3..200u64).filter(|&p| is_prime(p)) {
        let q = find_q(2, p, DEFAULT_Q_BOUND).unwrap();
        let pair = KummerPair::new(p as i64, q as i64).unwrap();
        let sigma0 = sigma0_biquadratic(&pair);
        assert!(sigma0.contains(&p.to_string()));
        if jacobi(p as i64, q) == -1 {
            assert!(sigma0.contains(&q.to_string()));
        }
        if p % 4 == 1 {
            let mut expected = [p, q];
            expected.sort_unstable();
            assert_eq!(sigma0, expected.map(|x| x.to_string()));
        }
    }
}

#[test]
fn searches_return_the_least_solution() {
    for ell in [2u64, 3, 5, 7] {
        for n in 1..=3u32 {
            let step = ell.pow(n);
            let p = find_p(ell, n, 2).unwrap();
            let brute = (2..).find(|&x: &u64| x % step == 1 && is_prime(x)).unwrap();
            assert_eq!(p, brute);
            let qm = if ell == 2 { 8 } else { ell * ell };
            let q = find_q(ell, p, DEFAULT_Q_BOUND).unwrap();
            let brute = (3..)
                .find(|&x: &u64| {
                    x % qm == 1
                        && is_prime(x)
                        && x != p
                        && (1..p).all(|y| {
                            let mut v = 1u64;
                            for _ in 0..ell {
                                v = v * y % p;
                            }
                            v != x % p
                        })
                })
                .unwrap();
            assert_eq!(q, brute, "ell = {ell}, p = {p}");
        }
    }
}

#[test]
fn augmentation_ideals_have_the_expected_order() {
    for (ell, n) in [(2usize, 1u32), (2, 2), (3, 1), (2, 3)] {
        let g = Group::ell_group(ell, n);
        let m = g.order() as u64;
        let (ideal, incl, aug) = GModule::augmentation_ideal(&g, m).unwrap();
        assert_eq!(ideal.rank(), g.order() - 1);
        let a = (n as u64 + 1) * (m - 1);
        assert_eq!(ideal.log_order(ell as u64), Some(a));
        assert!(augmentation_sequence_is_exact(&incl, &aug));
    }
    for (_, g) in small_groups().into_iter().filter(|(_, g)| g.order() > 1) {
        let (_, incl, aug) = GModule::augmentation_ideal(&g, 6).unwrap();
        assert!(augmentation_sequence_is_exact(&incl, &aug));
    }
}

#[test]
fn certificates_never_put_places_over_ell_in_sigma0() {
    for (ell, n, p) in [
        (2u64, 1u32, 3u64),
        (2, 1, 7),
        (2, 1, 97),
        (3, 1, 7),
        (3, 1, 13),
        (2, 2, 5),
        (2, 2, 13),
        (2, 3, 17),
    ] {
        let c = certify(ell, n, p, None, CertifyOptions::default()).unwrap();
        assert!(
            c.is_certified(),
            "({ell}, {n}, {p}): {:?}",
            c.first_failure()
        );
        let over = [ell.to_string(), format!("over:{ell}")];
        assert!(c.sigma0.iter().all(|l| !over.contains(l)));
        let json: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert!(json["p"].is_string() && json["q"].is_string() && json["ell"].is_string());
    }
}
