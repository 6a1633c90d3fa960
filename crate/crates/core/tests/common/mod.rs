//! Independent oracles and random inputs shared by the integration tests.
//! Nothing here calls the elimination code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use tame_approx::{GModule, Group, IntMatrix};

/// Every group of order at most 6, up to isomorphism.
pub fn small_groups() -> Vec<(&'static str, Group)> {
    [
        ("cyclic:1", "cyclic:1"),
        ("z2", "z2"),
        ("z3", "z3"),
        ("z4", "z4"),
        ("klein4", "klein4"),
        ("z5", "cyclic:5"),
        ("z6", "z6"),
        ("s3", "s3"),
    ]
    .into_iter()
    .map(|(label, name)| (label, Group::builtin(name).unwrap()))
    .collect()
}

/// Determinant by fraction-free Gaussian elimination.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// All vectors of `(Z/m)^r` in lexicographic order.
pub fn all_vectors(m: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn act(module: &GModule, g: usize, v: &[u64]) -> Vec<u64> {
    let a = module.action(g);
    let m = module.modulus();
    (0..module.rank())
        .map(|i| {
            let mut s = 0u64;
            for (j, x) in v.iter().enumerate() {
                s = (s + a.get(i, j).to_u64().unwrap() * x) % m;
            }
            s
        })
        .collect()
}

fn add(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
}

fn sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + m - y) % m).collect()
}

/// Brute-force `Z¹` and `B¹` of a module.
pub struct BruteCohomology {
    pub cocycles: Vec<Vec<Vec<u64>>>,
    pub coboundaries: BTreeSet<Vec<Vec<u64>>>,
}

impl BruteCohomology {
    pub fn h1_order(&self) -> usize {
        assert_eq!(self.cocycles.len() % self.coboundaries.len(), 0);
        self.cocycles.len() / self.coboundaries.len()
    }
}

/// A cocycle is fixed by its values on generators: try every assignment,
/// extend with `z(xs) = z(x) + x·z(s)` and keep the consistent ones.
pub fn brute_cohomology(module: &GModule) -> BruteCohomology {
    let g = module.group();
    let m = module.modulus();
    let r = module.rank();
    let gens = g.generators();
    let vectors = all_vectors(m, r);
    let mut cocycles = Vec::new();
    let assignments = all_vectors(vectors.len() as u64, gens.len());
    for choice in assignments {
        let mut z: Vec<Option<Vec<u64>>> = vec![None; g.order()];
        z[g.identity()] = Some(vec![0; r]);
        let mut queue = VecDeque::from([g.identity()]);
        let mut ok = true;
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let zs = &vectors[choice[k] as usize];
                let zx = z[x].clone().unwrap();
                let y = g.mul(x, s);
                let val = add(&zx, &act(module, x, zs), m);
                match &z[y] {
                    Some(old) if *old != val => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        z[y] = Some(val);
                        queue.push_back(y);
                    }
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        let z: Vec<Vec<u64>> = z.into_iter().map(Option::unwrap).collect();
        let identity_holds = g.elements().all(|a| {
            g.elements()
                .all(|b| z[g.mul(a, b)] == add(&z[a], &act(module, a, &z[b]), m))
        });
        if identity_holds {
            cocycles.push(z);
        }
    }
    let coboundaries = vectors
        .iter()
        .map(|a| {
            g.elements()
                .map(|x| sub(&act(module, x, a), a, m))
                .collect()
        })
        .collect();
    BruteCohomology {
        cocycles,
        coboundaries,
    }
}

/// Is `z` restricted to `elements` of the form `h ↦ h·a - a`?
pub fn restricts_to_coboundary(module: &GModule, elements: &[usize], z: &[Vec<u64>]) -> bool {
    let m = module.modulus();
    all_vectors(m, module.rank()).iter().any(|a| {
        elements
            .iter()
            .all(|&h| sub(&act(module, h, a), a, m) == z[h])
    })
}

pub fn to_big(z: &[Vec<u64>]) -> Vec<Vec<BigInt>> {
    z.iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn random_unit(rng: &mut StdRng, m: u64) -> u64 {
    loop {
        let x = rng.gen_range(1..m.max(2));
        if x.gcd(&m) == 1 {
            return x;
        }
    }
}

/// A random character `G -> (Z/m)^*`: random units on generators, accepted
/// when they extend to a homomorphism.
fn random_character(g: &Group, m: u64, rng: &mut StdRng) -> GModule {
    loop {
        let given: BTreeMap<usize, IntMatrix> = g
            .generators()
            .into_iter()
            .map(|s| (s, IntMatrix::from_rows(&[vec![random_unit(rng, m) as i64]])))
            .collect();
        if let Ok(module) = GModule::from_partial_action(g, m, 1, &given) {
            return module;
        }
    }
}

/// `Z/m[G/H]` for a random subgroup `H`, cosets ordered by first element.
fn random_permutation_module(
    g: &Group,
    m: u64,
    max_rank: usize,
    rng: &mut StdRng,
) -> Option<GModule> {
    let subgroups: Vec<_> = g
        .all_subgroups()
        .into_iter()
        .filter(|h| g.order() / h.order() <= max_rank)
        .collect();
    if subgroups.is_empty() {
        return None;
    }
    let h = &subgroups[rng.gen_range(0..subgroups.len())];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        if cosets.iter().any(|c| c.contains(&x)) {
            continue;
        }
        let mut c: Vec<usize> = h.elements().iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        cosets.push(c);
    }
    let coset_of = |x: usize| cosets.iter().position(|c| c.contains(&x)).unwrap();
    let k = cosets.len();
    let action = g
        .elements()
        .map(|x| {
            let mut a = IntMatrix::zeros(k, k);
            for (j, c) in cosets.iter().enumerate() {
                a.set(coset_of(g.mul(x, c[0])), j, BigInt::one());
            }
            a
        })
        .collect();
    Some(GModule::new(g, m, k, action).unwrap())
}

fn block_sum(g: &Group, m: u64, blocks: &[GModule]) -> GModule {
    let r: usize = blocks.iter().map(GModule::rank).sum();
    let action = g
        .elements()
        .map(|x| {
            let mut a = IntMatrix::zeros(r, r);
            let mut off = 0;
            for b in blocks {
                let bx = b.action(x);
                for i in 0..b.rank() {
                    for j in 0..b.rank() {
                        a.set(off + i, off + j, bx.get(i, j).clone());
                    }
                }
                off += b.rank();
            }
            a
        })
        .collect();
    GModule::new(g, m, r, action).unwrap()
}

/// A random matrix in `GL_r(Z/m)` with its inverse, as a product of
/// elementary operations.
fn random_gl(r: usize, m: u64, rng: &mut StdRng) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(r);
    let mut q = IntMatrix::identity(r);
    for _ in 0..3 * r {
        let mut e = IntMatrix::identity(r);
        let mut f = IntMatrix::identity(r);
        if r >= 2 && rng.gen_bool(0.7) {
            let i = rng.gen_range(0..r);
            let mut j = rng.gen_range(0..r - 1);
            if j >= i {
                j += 1;
            }
            let c = rng.gen_range(1..m) as i64;
            e.set(i, j, BigInt::from(c));
            f.set(i, j, BigInt::from(m as i64 - c));
        } else {
            let i = rng.gen_range(0..r);
            let u = random_unit(rng, m);
            let inv = (1..m).find(|v| (u * v) % m == 1).unwrap();
            e.set(i, i, BigInt::from(u));
            f.set(i, i, BigInt::from(inv));
        }
        p = e.mul(&p).reduce_mod(m);
        q = q.mul(&f).reduce_mod(m);
    }
    (p, q)
}

/// Moduli with `m^r ≤ 81` for some `r ≥ 1`.
pub const MODULI: [u64; 8] = [2, 3, 4, 5, 6, 7, 8, 9];

pub fn max_rank(m: u64, size_limit: u64) -> usize {
    let mut r = 0;
    let mut size = 1;
    while size * m <= size_limit {
        size *= m;
        r += 1;
    }
    r
}

/// A block sum of characters and permutation modules, conjugated by a random
/// invertible matrix, with `|M| ≤ size_limit`.
pub fn random_module(g: &Group, rng: &mut StdRng, size_limit: u64) -> GModule {
    let m = MODULI[rng.gen_range(0..MODULI.len())];
    let cap = max_rank(m, size_limit);
    let target = rng.gen_range(1..=cap);
    let mut blocks = Vec::new();
    let mut rank = 0;
    while rank < target {
        let left = target - rank;
        let block = if rng.gen_bool(0.5) {
            random_permutation_module(g, m, left, rng)
        } else {
            None
        }
        .unwrap_or_else(|| random_character(g, m, rng));
        rank += block.rank();
        blocks.push(block);
    }
    let sum = block_sum(g, m, &blocks);
    let (p, q) = random_gl(rank, m, rng);
    let action = g
        .elements()
        .map(|x| p.mul(sum.action(x)).mul(&q).reduce_mod(m))
        .collect();
    GModule::new(g, m, rank, action).unwrap()
}
