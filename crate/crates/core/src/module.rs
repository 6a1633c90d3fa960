//! Finite G-modules `(Z/mZ)^r` with an explicit action by matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Deserialize;

use crate::error::ModuleError;
use crate::group::{Group, Subgroup};
use crate::linalg::{kernel_mod, quotient_structure, IntMatrix};

/// Groups up to this order get a full pairwise homomorphism check.
const FULL_CHECK_ORDER: usize = 64;

/// `(Z/mZ)^rank` with `G` acting through `action[g]`, entries kept in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: Group,
    modulus: u64,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl GModule {
    /// Builds a module from one matrix per group element and checks that the
    /// action is a homomorphism `G -> GL_r(Z/m)`.
    pub fn new(
        group: &Group,
        modulus: u64,
        rank: usize,
        action: Vec<IntMatrix>,
    ) -> Result<Self, ModuleError> {
        if modulus < 2 {
            return Err(ModuleError::Modulus(modulus));
        }
        if action.len() != group.order() {
            return Err(ModuleError::ActionCount {
                found: action.len(),
                order: group.order(),
            });
        }
        for (element, a) in action.iter().enumerate() {
            if a.rows() != rank || a.cols() != rank {
                return Err(ModuleError::ActionShape {
                    element,
                    rows: a.rows(),
                    cols: a.cols(),
                    rank,
                });
            }
        }
        let action: Vec<IntMatrix> = action.iter().map(|a| a.reduce_mod(modulus)).collect();
        let module = GModule {
            group: group.clone(),
            modulus,
            rank,
            action,
        };
        module.check_homomorphism()?;
        Ok(module)
    }

    /// Extends matrices given on some elements (typically generators) to the
    /// whole group by multiplying them out, rejecting inconsistent input.
    pub fn from_partial_action(
        group: &Group,
        modulus: u64,
        rank: usize,
        given: &BTreeMap<usize, IntMatrix>,
    ) -> Result<Self, ModuleError> {
        if modulus < 2 {
            return Err(ModuleError::Modulus(modulus));
        }
        let mut known: Vec<Option<IntMatrix>> = vec![None; group.order()];
        known[group.identity()] = Some(IntMatrix::identity(rank));
        for (&g, a) in given {
            if g >= group.order() {
                return Err(ModuleError::Spec(format!(
                    "element index {g} out of range for group of order {}",
                    group.order()
                )));
            }
            if a.rows() != rank || a.cols() != rank {
                return Err(ModuleError::ActionShape {
                    element: g,
                    rows: a.rows(),
                    cols: a.cols(),
                    rank,
                });
            }
            let a = a.reduce_mod(modulus);
            if g == group.identity() && a != IntMatrix::identity(rank) {
                return Err(ModuleError::IdentityAction);
            }
            known[g] = Some(a);
        }
        let gens: Vec<usize> = given.keys().copied().collect();
        let mut visited = vec![false; group.order()];
        visited[group.identity()] = true;
        let mut queue = std::collections::VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = group.mul(x, s);
                let product = mat_mul_mod(
                    known[x].as_ref().expect("queued elements are known"),
                    known[s].as_ref().expect("generators are known"),
                    modulus,
                );
                if let Some(existing) = &known[y] {
                    if *existing != product {
                        return Err(ModuleError::NotHomomorphism { a: x, b: s });
                    }
                }
                known[y] = Some(product);
                if !visited[y] {
                    visited[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if known.iter().any(Option::is_none) {
            return Err(ModuleError::IncompleteAction);
        }
        let action = known.into_iter().map(|a| a.expect("checked")).collect();
        GModule::new(group, modulus, rank, action)
    }

    /// Parses `{"modulus": m, "rank": r, "action": {"<element>": [[..],..], ..}}`.
    /// Actions on a generating set are enough.
    pub fn from_json(group: &Group, text: &str) -> Result<Self, ModuleError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Input {
            modulus: u64,
            rank: usize,
            action: BTreeMap<String, Vec<Vec<i64>>>,
        }
        let input: Input =
            serde_json::from_str(text).map_err(|e| ModuleError::Input(e.to_string()))?;
        let mut given = BTreeMap::new();
        for (key, rows) in input.action {
            let g: usize = key
                .trim()
                .parse()
                .map_err(|_| ModuleError::Input(format!("element key {key:?} is not an index")))?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err(ModuleError::Input(format!(
                    "action of element {g} is not square"
                )));
            }
            given.insert(g, IntMatrix::from_rows(&rows));
        }
        GModule::from_partial_action(group, input.modulus, input.rank, &given)
    }

    /// `Z/m` with trivial action, repeated `rank` times.
    pub fn trivial(group: &Group, modulus: u64, rank: usize) -> Result<Self, ModuleError> {
        let action = vec![IntMatrix::identity(rank); group.order()];
        GModule::new(group, modulus, rank, action)
    }

    /// The group ring `Z/m[G]`: basis indexed by elements, `g` acting by left translation.
    pub fn group_ring(group: &Group, modulus: u64) -> Result<Self, ModuleError> {
        let n = group.order();
        let action = group
            .elements()
            .map(|g| {
                let mut a = IntMatrix::zeros(n, n);
                for h in group.elements() {
                    a.set(group.mul(g, h), h, BigInt::one());
                }
                a
            })
            .collect();
        GModule::new(group, modulus, n, action)
    }

    /// The augmentation ideal `I ⊂ Z/m[G]` with basis `{g - 1 : g ≠ e}` in element
    /// order, its inclusion into the group ring and the augmentation onto `Z/m`.
    pub fn augmentation_ideal(
        group: &Group,
        modulus: u64,
    ) -> Result<(GModule, ModuleMap, ModuleMap), ModuleError> {
        let ring = GModule::group_ring(group, modulus)?;
        let e = group.identity();
        let basis: Vec<usize> = group.elements().filter(|&g| g != e).collect();
        let pos: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let r = basis.len();
        let m = BigInt::from(modulus);
        let minus_one: BigInt = &m - 1;

        // x·(g - 1) = (xg - 1) - (x - 1)
        let action = group
            .elements()
            .map(|x| {
                let mut a = IntMatrix::zeros(r, r);
                for (col, &g) in basis.iter().enumerate() {
                    let mut column = vec![BigInt::zero(); r];
                    let xg = group.mul(x, g);
                    if xg != e {
                        column[pos[&xg]] += 1;
                    }
                    if x != e {
                        column[pos[&x]] -= 1;
                    }
                    for (row, v) in column.into_iter().enumerate() {
                        a.set(row, col, v.mod_floor(&m));
                    }
                }
                a
            })
            .collect();
        let ideal = GModule::new(group, modulus, r, action)?;

        let mut incl = IntMatrix::zeros(group.order(), r);
        for (col, &g) in basis.iter().enumerate() {
            incl.set(g, col, BigInt::one());
            incl.set(e, col, minus_one.clone());
        }
        let trivial = GModule::trivial(group, modulus, 1)?;
        let aug = IntMatrix::new(1, group.order(), vec![BigInt::one(); group.order()])
            .expect("shape is consistent");
        let incl = ModuleMap::new(&ideal, &ring, incl)?;
        let aug = ModuleMap::new(&ring, &trivial, aug)?;
        Ok((ideal, incl, aug))
    }

    /// Same underlying group, action restricted to `H` (re-indexed as a standalone group).
    pub fn restrict(&self, subgroup: &Subgroup) -> Result<GModule, ModuleError> {
        if *subgroup.parent() != self.group {
            return Err(ModuleError::ForeignSubgroup);
        }
        let h = subgroup.to_group();
        let action = subgroup
            .elements()
            .iter()
            .map(|&g| self.action[g].clone())
            .collect();
        Ok(GModule {
            group: h,
            modulus: self.modulus,
            rank: self.rank,
            action,
        })
    }

    /// Additive exponent: `m` unless the module is zero.
    pub fn exponent(&self) -> u64 {
        if self.rank == 0 {
            1
        } else {
            self.modulus
        }
    }

    /// `Hom(M, μ_e)` with `g` acting by `twist(g) · action(g⁻¹)ᵀ` over `Z/e`,
    /// `e` the exponent of `M`. `twist[g]` must be a homomorphism into `(Z/e)^*`.
    pub fn dual(&self, twist: &[u64]) -> Result<GModule, ModuleError> {
        let e = self.exponent();
        if e < 2 {
            return Err(ModuleError::Modulus(e));
        }
        let g = &self.group;
        if twist.len() != g.order() {
            return Err(ModuleError::ActionCount {
                found: twist.len(),
                order: g.order(),
            });
        }
        for (element, &t) in twist.iter().enumerate() {
            if t.gcd(&e) != 1 {
                return Err(ModuleError::TwistNotUnit {
                    element,
                    value: t,
                    modulus: e,
                });
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let lhs = twist[g.mul(a, b)] % e;
                let rhs = ((twist[a] as u128 * twist[b] as u128) % e as u128) as u64;
                if lhs != rhs {
                    return Err(ModuleError::TwistNotMultiplicative { a, b, modulus: e });
                }
            }
        }
        let action = g
            .elements()
            .map(|x| {
                let base = self.action[g.inverse(x)].transpose();
                let k = BigInt::from(twist[x]);
                let scaled = IntMatrix::new(
                    base.rows(),
                    base.cols(),
                    base.entries().iter().map(|v| v * &k).collect(),
                )
                .expect("same shape");
                scaled.reduce_mod(e)
            })
            .collect();
        GModule::new(g, e, self.rank, action)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    /// `g · v`, reduced mod `m`.
    pub fn act(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        let m = BigInt::from(self.modulus);
        self.action[g]
            .mul_vec(v)
            .into_iter()
            .map(|x| x.mod_floor(&m))
            .collect()
    }

    /// `|M| = m^r`, as `(m, r)`.
    pub fn order_as_power(&self) -> (u64, usize) {
        (self.modulus, self.rank)
    }

    /// `log_base |M|` when `m` is a power of `base`.
    pub fn log_order(&self, base: u64) -> Option<u64> {
        let mut k = 0u64;
        let mut x = self.modulus;
        while x > 1 && x.is_multiple_of(base) {
            x /= base;
            k += 1;
        }
        (x == 1).then_some(k * self.rank as u64)
    }

    fn check_homomorphism(&self) -> Result<(), ModuleError> {
        let g = &self.group;
        if self.action[g.identity()] != IntMatrix::identity(self.rank) {
            return Err(ModuleError::IdentityAction);
        }
        let right: Vec<usize> = if g.order() <= FULL_CHECK_ORDER {
            g.elements().collect()
        } else {
            g.generators()
        };
        for a in g.elements() {
            for &b in &right {
                let prod = mat_mul_mod(&self.action[a], &self.action[b], self.modulus);
                if prod != self.action[g.mul(a, b)] {
                    return Err(ModuleError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// A `G`-equivariant map between modules over the same `Z/m`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: GModule,
    target: GModule,
    matrix: IntMatrix,
}

impl ModuleMap {
    pub fn new(source: &GModule, target: &GModule, matrix: IntMatrix) -> Result<Self, ModuleError> {
        if source.group != target.group
            || source.modulus != target.modulus
            || matrix.rows() != target.rank
            || matrix.cols() != source.rank
        {
            return Err(ModuleError::MapShape);
        }
        let m = source.modulus;
        let matrix = matrix.reduce_mod(m);
        for g in source.group.elements() {
            let lhs = mat_mul_mod(target.action(g), &matrix, m);
            let rhs = mat_mul_mod(&matrix, source.action(g), m);
            if lhs != rhs {
                return Err(ModuleError::NotEquivariant { element: g });
            }
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if first.target != self.source {
            return Err(ModuleError::MapShape);
        }
        let m = self.source.modulus;
        ModuleMap::new(
            &first.source,
            &self.target,
            mat_mul_mod(&self.matrix, &first.matrix, m),
        )
    }

    /// True when the underlying matrix is injective mod `m`.
    pub fn is_injective(&self) -> bool {
        kernel_mod(&self.matrix, self.source.modulus)
            .map(|k| k.cols() == 0)
            .unwrap_or(false)
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`: `g∘f = 0` and `ker g = im f`.
pub fn is_exact_at(f: &ModuleMap, g: &ModuleMap) -> bool {
    let Ok(gf) = g.compose(f) else {
        return false;
    };
    if !gf.matrix.is_zero() {
        return false;
    }
    let m = f.source.modulus;
    let Ok(ker) = kernel_mod(&g.matrix, m) else {
        return false;
    };
    quotient_structure(&f.matrix, &ker, m)
        .map(|q| q.is_trivial())
        .unwrap_or(false)
}

/// Exactness of `0 -> I -> Z/m[G] -> Z/m -> 0` at all three spots.
pub fn augmentation_sequence_is_exact(incl: &ModuleMap, aug: &ModuleMap) -> bool {
    let m = aug.source.modulus;
    let surjective = {
        let all = IntMatrix::identity(aug.target.rank);
        quotient_structure(&aug.matrix, &all, m)
            .map(|q| q.is_trivial())
            .unwrap_or(false)
    };
    incl.is_injective() && is_exact_at(incl, aug) && surjective
}

pub(crate) fn mat_mul_mod(a: &IntMatrix, b: &IntMatrix, m: u64) -> IntMatrix {
    a.mul(b).reduce_mod(m)
}

/// Parses the module spec strings `aug`, `ring`, `trivial:<m>`; `aug` and
/// `ring` use `modulus`, defaulting to `|G|`.
pub fn module_from_spec(
    group: &Group,
    spec: &str,
    modulus: Option<u64>,
) -> Result<GModule, ModuleError> {
    let default_m = modulus.unwrap_or(group.order() as u64);
    match spec {
        "aug" => Ok(GModule::augmentation_ideal(group, default_m)?.0),
        "ring" => GModule::group_ring(group, default_m),
        _ => {
            if let Some(m) = spec.strip_prefix("trivial:") {
                let m: u64 = m.parse().map_err(|_| ModuleError::Spec(spec.to_string()))?;
                GModule::trivial(group, m, 1)
            } else {
                Err(ModuleError::Spec(spec.to_string()))
            }
        }
    }
}

/// Converts a matrix with small entries for display.
pub fn matrix_to_u64_rows(m: &IntMatrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_u64().unwrap_or(0)).collect())
        .collect()
}
