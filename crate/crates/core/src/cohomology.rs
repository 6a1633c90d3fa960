//! First cohomology of finite groups with coefficients in finite modules,
//! restriction maps, and the Tate–Shafarevich kernels built from them.
//!
//! Cochains are flattened element-major: coordinate `g * r + i` holds the
//! `i`-th component of `z(g)`. The coboundary maps `d0`, `d1` are materialized
//! as integer matrices and everything else is a kernel or quotient computed by
//! the modular elimination in [`crate::linalg`].

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::CohomologyError;
use crate::group::{Group, Subgroup};
use crate::linalg::{
    kernel_mod, quotient_structure, AbGroupStructure, IntMatrix, QuotientPresentation,
};
use crate::module::GModule;

/// A 1-cochain: one module vector per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    values: Vec<Vec<BigInt>>,
}

impl Cocycle {
    pub fn from_values(values: Vec<Vec<BigInt>>) -> Self {
        Cocycle { values }
    }

    fn from_flat(flat: &[BigInt], rank: usize) -> Self {
        let values = if rank == 0 {
            Vec::new()
        } else {
            flat.chunks(rank).map(<[BigInt]>::to_vec).collect()
        };
        Cocycle { values }
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &[BigInt] {
        &self.values[g]
    }

    pub fn flatten(&self) -> Vec<BigInt> {
        self.values.iter().flatten().cloned().collect()
    }

    /// `z(gh) = z(g) + g·z(h)` for all `g, h`.
    pub fn is_cocycle(&self, module: &GModule) -> bool {
        let g = module.group();
        if self.values.len() != g.order() {
            return false;
        }
        let m = BigInt::from(module.modulus());
        g.elements().all(|a| {
            g.elements().all(|b| {
                let moved = module.act(a, &self.values[b]);
                let lhs = &self.values[g.mul(a, b)];
                lhs.iter()
                    .zip(&self.values[a])
                    .zip(&moved)
                    .all(|((l, x), y)| (l - x - y).mod_floor(&m).is_zero())
            })
        })
    }

    /// The cochain restricted to a subgroup, indexed like `Subgroup::to_group`.
    pub fn restrict(&self, subgroup: &Subgroup) -> Cocycle {
        Cocycle {
            values: subgroup
                .elements()
                .iter()
                .map(|&g| self.values[g].clone())
                .collect(),
        }
    }
}

impl Serialize for Cocycle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = self
            .values
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        v.serialize(s)
    }
}

/// `H¹(G, M)` with representatives and a coordinate map.
#[derive(Clone, Debug)]
pub struct H1Result {
    pub structure: AbGroupStructure,
    /// One normalized cocycle per invariant factor, in the same order.
    pub cocycle_reps: Vec<Cocycle>,
    /// `(representative index, order of the class)` for each invariant factor.
    pub basis_correspondence: Vec<(usize, u64)>,
    presentation: QuotientPresentation,
    rank: usize,
}

impl H1Result {
    /// Coordinates of the class of `z` in the invariant-factor basis, or
    /// `None` if `z` is not a cocycle.
    pub fn coordinates(&self, z: &Cocycle) -> Option<Vec<BigInt>> {
        self.presentation.coordinates(&z.flatten())
    }

    /// True when `z` is a coboundary.
    pub fn is_trivial_class(&self, z: &Cocycle) -> Option<bool> {
        self.coordinates(z).map(|c| c.iter().all(Zero::is_zero))
    }

    /// `Σ c_j · rep_j`.
    pub fn combine(&self, coefficients: &[BigInt], modulus: u64) -> Cocycle {
        let m = BigInt::from(modulus);
        let len = self
            .cocycle_reps
            .first()
            .map_or(0, |z| z.values.len() * self.rank);
        let mut acc = vec![BigInt::zero(); len];
        for (c, z) in coefficients.iter().zip(&self.cocycle_reps) {
            for (a, x) in acc.iter_mut().zip(z.flatten()) {
                *a += c * x;
            }
        }
        for a in acc.iter_mut() {
            *a = a.mod_floor(&m);
        }
        Cocycle::from_flat(&acc, self.rank)
    }
}

/// `d0: M -> C¹`, `(d0 a)(g) = g·a - a`.
pub fn coboundary_d0(module: &GModule) -> IntMatrix {
    let g = module.group();
    let r = module.rank();
    let mut d = IntMatrix::zeros(g.order() * r, r);
    for x in g.elements() {
        let a = module.action(x);
        for i in 0..r {
            for j in 0..r {
                let mut v = a.get(i, j).clone();
                if i == j {
                    v -= 1;
                }
                d.set(x * r + i, j, v);
            }
        }
    }
    d.reduce_mod(module.modulus())
}

/// `d1: C¹ -> C²`, `(d1 z)(g, h) = g·z(h) - z(gh) + z(g)`.
pub fn coboundary_d1(module: &GModule) -> IntMatrix {
    let grp = module.group();
    let n = grp.order();
    let r = module.rank();
    let mut d = IntMatrix::zeros(n * n * r, n * r);
    for g in grp.elements() {
        let a = module.action(g);
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            for i in 0..r {
                let row = (g * n + h) * r + i;
                for j in 0..r {
                    let v = a.get(i, j);
                    if !v.is_zero() {
                        let cur = d.get(row, h * r + j) + v;
                        d.set(row, h * r + j, cur);
                    }
                }
                let cur = d.get(row, gh * r + i) - 1;
                d.set(row, gh * r + i, cur);
                let cur = d.get(row, g * r + i) + 1;
                d.set(row, g * r + i, cur);
            }
        }
    }
    d.reduce_mod(module.modulus())
}

fn check_group(group: &Group, module: &GModule) -> Result<(), CohomologyError> {
    if group != module.group() {
        return Err(CohomologyError::GroupMismatch);
    }
    Ok(())
}

/// `H¹(G, M) = Z¹ / B¹`.
pub fn h1(group: &Group, module: &GModule) -> Result<H1Result, CohomologyError> {
    check_group(group, module)?;
    let m = module.modulus();
    let cocycles = kernel_mod(&coboundary_d1(module), m)?;
    let coboundaries = coboundary_d0(module);
    let presentation = QuotientPresentation::new(&coboundaries, &cocycles, m)?;
    let structure = presentation.structure().clone();
    let cocycle_reps: Vec<Cocycle> = presentation
        .generators()
        .iter()
        .map(|flat| Cocycle::from_flat(flat, module.rank()))
        .collect();
    let basis_correspondence = structure.factors().iter().copied().enumerate().collect();
    Ok(H1Result {
        structure,
        cocycle_reps,
        basis_correspondence,
        presentation,
        rank: module.rank(),
    })
}

/// `Ĥ⁰(H, M) = M^H / N_H M`.
pub fn tate_h0(group: &Group, module: &GModule) -> Result<AbGroupStructure, CohomologyError> {
    check_group(group, module)?;
    let m = module.modulus();
    let r = module.rank();
    let mut stacked = IntMatrix::zeros(0, r);
    let mut norm = IntMatrix::zeros(r, r);
    for h in group.elements() {
        let a = module.action(h);
        let mut shifted = a.clone();
        for i in 0..r {
            let v = shifted.get(i, i) - 1;
            shifted.set(i, i, v);
        }
        stacked = stacked.vstack(&shifted);
        for i in 0..r {
            for j in 0..r {
                let v = norm.get(i, j) + a.get(i, j);
                norm.set(i, j, v);
            }
        }
    }
    let fixed = kernel_mod(&stacked, m)?;
    Ok(quotient_structure(&norm.reduce_mod(m), &fixed, m)?)
}

/// The restriction `H¹(G, M) -> H¹(H, M|_H)` in invariant-factor coordinates.
///
/// Column `j` holds the image of the `j`-th generator of the source; entry
/// `(i, j)` lives in `Z/target.factors()[i]`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub source: AbGroupStructure,
    pub target: AbGroupStructure,
    pub matrix: IntMatrix,
}

impl Restriction {
    /// Applies the map to a coordinate vector of the source.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.matrix.mul_vec(x);
        y.into_iter()
            .zip(self.target.factors())
            .map(|(v, &d)| v.mod_floor(&BigInt::from(d)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

fn restriction_between(
    source: &H1Result,
    target: &H1Result,
    subgroup: &Subgroup,
) -> Result<Restriction, CohomologyError> {
    let rows = target.structure.factors().len();
    let cols: Vec<Vec<BigInt>> = source
        .cocycle_reps
        .iter()
        .map(|z| {
            target
                .coordinates(&z.restrict(subgroup))
                .expect("restriction of a cocycle is a cocycle")
        })
        .collect();
    Ok(Restriction {
        source: source.structure.clone(),
        target: target.structure.clone(),
        matrix: IntMatrix::from_columns(rows, &cols),
    })
}

/// `res: H¹(G, M) -> H¹(H, M|_H)`.
pub fn res_h1(
    group: &Group,
    subgroup: &Subgroup,
    module: &GModule,
) -> Result<Restriction, CohomologyError> {
    check_group(group, module)?;
    if subgroup.parent() != group {
        return Err(CohomologyError::ForeignSubgroup);
    }
    let source = h1(group, module)?;
    let restricted = module.restrict(subgroup)?;
    let target = h1(restricted.group(), &restricted)?;
    restriction_between(&source, &target, subgroup)
}

/// A place of the base field with its decomposition group in `Gal(L/k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceRecord {
    pub label: String,
    pub subgroup: Subgroup,
    pub ramified: bool,
}

impl PlaceRecord {
    pub fn new(label: impl Into<String>, subgroup: Subgroup, ramified: bool) -> Self {
        PlaceRecord {
            label: label.into(),
            subgroup,
            ramified,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.subgroup.is_cyclic()
    }
}

/// A subgroup of `H¹(G, M)` with generating cocycles.
#[derive(Clone, Debug, Serialize)]
pub struct ShaResult {
    pub structure: AbGroupStructure,
    pub generators: Vec<Cocycle>,
}

/// Caches `H¹` of `G` and of the subgroups restricted to, so a batch of
/// Ш computations on one module shares the work.
pub struct ShaEngine {
    group: Group,
    module: GModule,
    global: H1Result,
    cyclic: Vec<Subgroup>,
    local: BTreeMap<Vec<usize>, H1Result>,
}

impl ShaEngine {
    pub fn new(group: &Group, module: &GModule) -> Result<Self, CohomologyError> {
        check_group(group, module)?;
        let global = h1(group, module)?;
        Ok(ShaEngine {
            group: group.clone(),
            module: module.clone(),
            global,
            cyclic: group.cyclic_subgroups(),
            local: BTreeMap::new(),
        })
    }

    pub fn h1(&self) -> &H1Result {
        &self.global
    }

    pub fn restriction(&mut self, subgroup: &Subgroup) -> Result<Restriction, CohomologyError> {
        if subgroup.parent() != &self.group {
            return Err(CohomologyError::ForeignSubgroup);
        }
        let key = subgroup.elements().to_vec();
        if !self.local.contains_key(&key) {
            let restricted = self.module.restrict(subgroup)?;
            let local = h1(restricted.group(), &restricted)?;
            self.local.insert(key.clone(), local);
        }
        restriction_between(&self.global, &self.local[&key], subgroup)
    }

    /// Kernel of the joint restriction to the given subgroups.
    pub fn kernel(&mut self, subgroups: &[Subgroup]) -> Result<ShaResult, CohomologyError> {
        let m = self.module.modulus();
        let modulus = BigInt::from(m);
        let source = self.global.structure.clone();
        let s = source.factors().len();
        if s == 0 {
            return Ok(ShaResult {
                structure: AbGroupStructure::trivial(),
                generators: Vec::new(),
            });
        }
        // Stack rows (m / e_i) * res_i so that every condition reads "≡ 0 mod m".
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for h in subgroups {
            let res = self.restriction(h)?;
            for (i, &e) in res.target.factors().iter().enumerate() {
                let scale = BigInt::from(m / e);
                rows.push(
                    (0..s)
                        .map(|j| (res.matrix.get(i, j) * &scale).mod_floor(&modulus))
                        .collect(),
                );
            }
        }
        let mut stacked = IntMatrix::zeros(rows.len(), s);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                stacked.set(i, j, v);
            }
        }
        let kernel = kernel_mod(&stacked, m)?;
        let mut relations = IntMatrix::zeros(s, s);
        for (j, &d) in source.factors().iter().enumerate() {
            relations.set(j, j, BigInt::from(d));
        }
        let presentation = QuotientPresentation::new(&relations, &kernel, m)?;
        let generators = presentation
            .generators()
            .iter()
            .map(|coeffs| self.global.combine(coeffs, m))
            .collect();
        Ok(ShaResult {
            structure: presentation.structure().clone(),
            generators,
        })
    }

    /// `Ш¹_cyc(G, M)`.
    pub fn sha_cyc(&mut self) -> Result<ShaResult, CohomologyError> {
        let cyclic = self.cyclic.clone();
        self.kernel(&cyclic)
    }

    /// `Ш¹_Σ` for `Σ = excluded`: kernel of restriction to every cyclic subgroup
    /// (the unramified places) and to every listed place outside `excluded`.
    pub fn sha_sigma(
        &mut self,
        places: &[PlaceRecord],
        excluded: &BTreeSet<String>,
    ) -> Result<ShaResult, CohomologyError> {
        for label in excluded {
            let listed = places.iter().any(|p| &p.label == label);
            if !listed && !is_place_token(label) {
                return Err(CohomologyError::UnknownLabel(label.clone()));
            }
        }
        for p in places {
            if p.subgroup.parent() != &self.group {
                return Err(CohomologyError::ForeignSubgroup);
            }
        }
        let mut subgroups = self.cyclic.clone();
        for p in places.iter().filter(|p| !excluded.contains(&p.label)) {
            if !subgroups.contains(&p.subgroup) {
                subgroups.push(p.subgroup.clone());
            }
        }
        self.kernel(&subgroups)
    }
}

/// A rational prime or `inf`.
fn is_place_token(label: &str) -> bool {
    label == "inf"
        || label
            .parse::<u64>()
            .map(crate::arithmetic::is_prime)
            .unwrap_or(false)
}

/// `Ш¹_Σ(G, M)` for the finite place model described on [`ShaEngine::sha_sigma`].
pub fn sha_sigma(
    group: &Group,
    module: &GModule,
    places: &[PlaceRecord],
    excluded: &BTreeSet<String>,
) -> Result<ShaResult, CohomologyError> {
    ShaEngine::new(group, module)?.sha_sigma(places, excluded)
}

/// `Ш¹_cyc(G, M)`: kernel of restriction to all cyclic subgroups.
pub fn sha_cyc(group: &Group, module: &GModule) -> Result<AbGroupStructure, CohomologyError> {
    Ok(ShaEngine::new(group, module)?.sha_cyc()?.structure)
}

/// Outcome of checking `Ш¹_cyc(G, I) ≅ Z/(n/e)` for the augmentation ideal of `Z/n[G]`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    #[serde(serialize_with = "as_decimal")]
    pub order: u64,
    #[serde(serialize_with = "as_decimal")]
    pub exponent: u64,
    pub expected: AbGroupStructure,
    pub computed: AbGroupStructure,
    pub pass: bool,
}

pub fn verify_augmentation_lemma(group: &Group) -> Result<LemmaReport, CohomologyError> {
    let n = group.order() as u64;
    let e = group.exponent() as u64;
    let expected = AbGroupStructure::cyclic(n / e);
    if n < 2 {
        // I = 0 over the trivial group; nothing to compute.
        return Ok(LemmaReport {
            order: n,
            exponent: e,
            pass: expected.is_trivial(),
            computed: AbGroupStructure::trivial(),
            expected,
        });
    }
    let (ideal, _, _) = GModule::augmentation_ideal(group, n)?;
    let computed = sha_cyc(group, &ideal)?;
    Ok(LemmaReport {
        order: n,
        exponent: e,
        pass: computed == expected,
        expected,
        computed,
    })
}

/// One row of the dimension-shift table.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionShiftRow {
    pub elements: Vec<String>,
    #[serde(serialize_with = "as_decimal")]
    pub order: u64,
    pub h1_ideal: AbGroupStructure,
    pub expected: AbGroupStructure,
    pub h1_group_ring: AbGroupStructure,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionShiftReport {
    pub rows: Vec<DimensionShiftRow>,
    pub pass: bool,
}

/// For each cyclic subgroup, the whole group and every extra subgroup `H`:
/// `H¹(H, I|_H) = Z/|H|` and `H¹(H, Z/n[G]|_H) = 0`, with `n = |G|`.
pub fn dimension_shift_check(
    group: &Group,
    extra: &[Subgroup],
) -> Result<DimensionShiftReport, CohomologyError> {
    let n = group.order() as u64;
    let mut subgroups = group.cyclic_subgroups();
    subgroups.push(group.whole());
    for h in extra {
        if h.parent() != group {
            return Err(CohomologyError::ForeignSubgroup);
        }
        subgroups.push(h.clone());
    }
    let mut seen = BTreeSet::new();
    subgroups.retain(|h| seen.insert(h.elements().to_vec()));

    let mut rows = Vec::new();
    if n < 2 {
        return Ok(DimensionShiftReport { rows, pass: true });
    }
    let (ideal, _, _) = GModule::augmentation_ideal(group, n)?;
    let ring = GModule::group_ring(group, n)?;
    for h in subgroups {
        let ideal_h = ideal.restrict(&h)?;
        let ring_h = ring.restrict(&h)?;
        let h1_ideal = h1(ideal_h.group(), &ideal_h)?.structure;
        let h1_group_ring = h1(ring_h.group(), &ring_h)?.structure;
        let expected = AbGroupStructure::cyclic(h.order() as u64);
        let pass = h1_ideal == expected && h1_group_ring.is_trivial();
        rows.push(DimensionShiftRow {
            elements: h.names(),
            order: h.order() as u64,
            h1_ideal,
            expected,
            h1_group_ring,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(DimensionShiftReport { rows, pass })
}

pub(crate) fn as_decimal<S: Serializer, T: ToString>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Order of a class in coordinates, for reporting.
pub fn class_order(coords: &[BigInt], structure: &AbGroupStructure) -> u64 {
    coords
        .iter()
        .zip(structure.factors())
        .map(|(c, &d)| {
            let c = c.to_u64().unwrap_or(0) % d;
            d / c.gcd(&d)
        })
        .fold(1u64, |acc, o| acc.lcm(&o))
}
