//! Certificates for the failure of approximation for the augmentation ideal of
//! `Z/ℓ^{n+1}[Z/ℓⁿ × Z/ℓ]` over `k = Q(ζ_{ℓⁿ})`.
//!
//! Over `Q` (`ℓ = 2`, `n = 1`) the splitting field is `Q(√p, √q)` and every
//! decomposition group is computed. For other parameters only the modular
//! facts the construction rests on are checked, and `Σ₀` is reported partially.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arithmetic::{
    decomposition_subgroup, find_q, is_prime, local_square_table, q_modulus, residue_witness,
    sigma0_biquadratic, KummerPair, LocalSquareClass, DEFAULT_Q_BOUND,
};
use crate::cohomology::{
    as_decimal, dimension_shift_check, DimensionShiftReport, PlaceRecord, ShaEngine,
};
use crate::error::ArithmeticError;
use crate::group::{Group, Subgroup};
use crate::linalg::{factor_u64, AbGroupStructure};
use crate::module::GModule;

/// Largest Galois group order `certify` accepts by default; the cochain
/// matrices grow like `|G|³`.
pub const DEFAULT_CERTIFY_ORDER: usize = 16;

pub const CERTIFIED: &str = "certified";

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub q_bound: u64,
    pub max_order: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            q_bound: DEFAULT_Q_BOUND,
            max_order: DEFAULT_CERTIFY_ORDER,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub witness: String,
    pub pass: bool,
}

impl Check {
    fn new(
        name: &str,
        statement: impl Into<String>,
        witness: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            name: name.to_string(),
            statement: statement.into(),
            witness: witness.into(),
            pass,
        }
    }
}

/// A place of `k` in the finite model with its decomposition group.
#[derive(Clone, Debug, Serialize)]
pub struct PlaceWitness {
    pub label: String,
    pub decomposition_group: Vec<String>,
    #[serde(serialize_with = "as_decimal")]
    pub order: usize,
    pub cyclic: bool,
    pub ramified: bool,
    /// Local square classes of `a`, `b`, `ab` (exact path only).
    pub local_squares: Vec<LocalSquareClass>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ShaSummary {
    pub sha_cyc: Option<AbGroupStructure>,
    pub sha_sigma0: Option<AbGroupStructure>,
    /// `Ш¹_{Σ₀ ∖ {v}}` for each designated `v`.
    pub sha_sigma0_minus: BTreeMap<String, AbGroupStructure>,
    pub sha: Option<AbGroupStructure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub format: String,
    #[serde(serialize_with = "as_decimal")]
    pub ell: u64,
    #[serde(serialize_with = "as_decimal")]
    pub n: u32,
    #[serde(serialize_with = "as_decimal")]
    pub p: u64,
    #[serde(serialize_with = "optional_decimal")]
    pub q: Option<u64>,
    pub field_desc: String,
    pub galois_group: String,
    #[serde(serialize_with = "optional_decimal")]
    pub modulus: Option<u64>,
    /// `a` with `|I| = ℓ^a`.
    #[serde(serialize_with = "optional_decimal")]
    pub order_exponent: Option<u64>,
    pub checks: Vec<Check>,
    pub places: Vec<PlaceWitness>,
    pub sigma0: Vec<String>,
    pub sigma0_exact: bool,
    pub sigma0_statement: String,
    pub place_model: String,
    pub sha_results: ShaSummary,
    pub dimension_shift: Option<DimensionShiftReport>,
    pub corollary: String,
    pub conclusion: String,
}

fn optional_decimal<S: serde::Serializer, T: ToString>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.conclusion == CERTIFIED
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    fn finish(mut self) -> Self {
        self.conclusion = match self.first_failure() {
            Some(c) => format!("refuted: {}", c.name),
            None => CERTIFIED.to_string(),
        };
        if self.is_certified() {
            self.corollary = format!(
                "the dual module of I has approximation in Σ₀ ∖ {{v}} for each v in {{{}}} but not in Σ₀",
                self.sigma0.join(", ")
            );
        }
        self
    }
}

const PLACE_MODEL: &str = "Unramified places are represented by every cyclic subgroup of G (each occurs as a Frobenius decomposition group); ramified places are listed explicitly with their decomposition groups. Ш¹_Σ is the kernel of restriction to the cyclic subgroups and to every listed place outside Σ.";

fn primality_witness(x: u64) -> String {
    if is_prime(x) {
        "deterministic Miller-Rabin".to_string()
    } else if x < 2 {
        format!("{x} < 2")
    } else if x < 1 << 40 {
        let f = factor_u64(x)[0].0;
        format!("{x} = {f} * {}", x / f)
    } else {
        "a Miller-Rabin base witnesses compositeness".to_string()
    }
}

fn ell_power(ell: u64, k: u32) -> Result<u64, ArithmeticError> {
    ell.checked_pow(k).ok_or(ArithmeticError::Overflow)
}

fn valuation(mut x: u64, ell: u64) -> u32 {
    let mut k = 0;
    while x > 0 && x.is_multiple_of(ell) {
        x /= ell;
        k += 1;
    }
    k
}

/// Runs every check for the parameters `(ℓ, n, p, q)`; `q = None` searches
/// for the least admissible `q`.
pub fn certify(
    ell: u64,
    n: u32,
    p: u64,
    q: Option<u64>,
    options: CertifyOptions,
) -> Result<Certificate, ArithmeticError> {
    if n == 0 {
        return Err(ArithmeticError::ZeroExponent);
    }
    let exact = ell == 2 && n == 1;
    let mut cert = Certificate {
        format: "tame-approx-certificate/1".to_string(),
        ell,
        n,
        p,
        q,
        field_desc: format!("Q(zeta_{ell}^{n})"),
        galois_group: format!("Z/{ell}^{n} x Z/{ell}"),
        modulus: None,
        order_exponent: None,
        checks: Vec::new(),
        places: Vec::new(),
        sigma0: Vec::new(),
        sigma0_exact: exact,
        sigma0_statement: String::new(),
        place_model: PLACE_MODEL.to_string(),
        sha_results: ShaSummary::default(),
        dimension_shift: None,
        corollary: String::new(),
        conclusion: String::new(),
    };

    cert.checks.push(Check::new(
        "ell_prime",
        format!("ℓ = {ell} is prime"),
        primality_witness(ell),
        is_prime(ell),
    ));
    if !is_prime(ell) {
        return Ok(cert.finish());
    }
    let ell_n = ell_power(ell, n)?;
    cert.field_desc = if exact {
        "Q".into()
    } else {
        format!("Q(zeta_{ell_n})")
    };
    cert.galois_group = format!("Z/{ell_n} x Z/{ell}");

    cert.checks.push(Check::new(
        "p_prime",
        format!("p = {p} is prime"),
        primality_witness(p),
        is_prime(p),
    ));
    cert.checks.push(Check::new(
        "p_congruence",
        format!("p ≡ 1 (mod {ell_n})"),
        format!("p mod {ell_n} = {}", p % ell_n),
        p % ell_n == 1,
    ));
    if cert.first_failure().is_some() {
        return Ok(cert.finish());
    }

    let q = match q {
        Some(q) => q,
        None => find_q(ell, p, options.q_bound)?,
    };
    cert.q = Some(q);
    let qm = q_modulus(ell);
    cert.checks.push(Check::new(
        "q_prime",
        format!("q = {q} is prime"),
        primality_witness(q),
        is_prime(q),
    ));
    cert.checks.push(Check::new(
        "q_odd_distinct",
        "q is odd and q ≠ p",
        format!("q mod 2 = {}, q - p = {}", q % 2, q as i128 - p as i128),
        q % 2 == 1 && q != p,
    ));
    cert.checks.push(Check::new(
        "q_congruence",
        format!("q ≡ 1 (mod {qm})"),
        format!("q mod {qm} = {}", q % qm),
        q % qm == 1,
    ));
    let r = residue_witness(q, p, ell);
    cert.checks.push(Check::new(
        "q_not_ell_power_mod_p",
        format!(
            "q is not an ℓ-th power mod p (ℓ = {ell}), so x^{ell} - q stays irreducible over the residue field F_{p} and places over p have residue degree {ell}"
        ),
        format!("q^((p-1)/{ell}) ≡ {r} (mod {p})"),
        q % p != 0 && r != 1,
    ));
    let v = valuation(q.wrapping_sub(1), ell);
    cert.checks.push(Check::new(
        "q_local_power_at_ell",
        format!("q is an ℓ-th power in Q_{ell} (Hensel), so places over {ell} have cyclic decomposition group"),
        format!("v_{ell}(q - 1) = {v}"),
        if ell == 2 { q % 8 == 1 } else { v >= 2 },
    ));
    cert.checks.push(Check::new(
        "eisenstein_at_p",
        format!("x^{ell_n} - p is Eisenstein at every place over p, so those places are totally ramified in k(p^(1/{ell_n}))"),
        format!("p ≡ 1 (mod {ell_n}) splits p completely in k, residue field F_{p}, v(p) = 1"),
        p % ell_n == 1 && is_prime(p),
    ));
    if cert.first_failure().is_some() {
        return Ok(cert.finish());
    }

    let order = ell_n.checked_mul(ell).ok_or(ArithmeticError::Overflow)?;
    if order > options.max_order as u64 {
        return Err(ArithmeticError::GroupTooLarge {
            order,
            limit: options.max_order,
        });
    }
    let group = Group::ell_group(ell as usize, n);
    let modulus = order;
    cert.modulus = Some(modulus);
    let (ideal, _, _) = GModule::augmentation_ideal(&group, modulus)?;
    let a = (n as u64 + 1) * (order - 1);
    let log = ideal.log_order(ell);
    cert.order_exponent = log;
    cert.checks.push(Check::new(
        "order_exponent",
        format!("|I| = {ell}^a with a = (n+1)(ℓ^(n+1) - 1) = {a}"),
        format!("rank {} over Z/{modulus}", ideal.rank()),
        log == Some(a),
    ));

    let mut engine = ShaEngine::new(&group, &ideal)?;
    let sha_cyc = engine.sha_cyc()?.structure;
    cert.checks.push(Check::new(
        "sha_cyc",
        format!("Ш¹_cyc(G, I) ≅ Z/{ell}, the exponent quotient |G|/exp(G)"),
        format!("computed {sha_cyc}"),
        sha_cyc == AbGroupStructure::cyclic(ell),
    ));
    cert.sha_results.sha_cyc = Some(sha_cyc);

    let shift = dimension_shift_check(&group, &[])?;
    cert.checks.push(Check::new(
        "dimension_shift",
        "H¹(H, I) ≅ Z/|H| and H¹(H, Z/m[G]) = 0 for every cyclic H and for G",
        format!("{} subgroups checked", shift.rows.len()),
        shift.pass,
    ));
    cert.dimension_shift = Some(shift);

    let (records, sigma0, designated) = if exact {
        exact_places(&mut cert, &group, p, q)?
    } else {
        partial_places(&mut cert, &group, ell, p)
    };
    cert.sigma0 = sigma0.clone();

    let sigma0_set: BTreeSet<String> = sigma0.iter().cloned().collect();
    let sha_sigma0 = engine.sha_sigma(&records, &sigma0_set)?.structure;
    let sha = engine.sha_sigma(&records, &BTreeSet::new())?.structure;
    for v in &designated {
        let mut smaller = sigma0_set.clone();
        smaller.remove(v);
        let s = engine.sha_sigma(&records, &smaller)?.structure;
        cert.checks.push(Check::new(
            &format!("sha_without_{v}"),
            format!("Ш¹_(Σ₀ ∖ {{{v}}}) = Ш¹"),
            format!("computed {s}, Ш¹ = {sha}"),
            s == sha,
        ));
        cert.sha_results.sha_sigma0_minus.insert(v.clone(), s);
    }
    cert.checks.push(Check::new(
        "sha_sigma0_exceeds_sha",
        "Ш¹_Σ₀ ≠ Ш¹",
        format!("Ш¹_Σ₀ = {sha_sigma0}, Ш¹ = {sha}"),
        sha_sigma0 != sha,
    ));
    let over_ell: Vec<&String> = sigma0
        .iter()
        .filter(|l| l.as_str() == ell.to_string() || l.as_str() == over_label(ell))
        .collect();
    let unramified: Vec<&String> = sigma0
        .iter()
        .filter(|l| !records.iter().any(|r| &r.label == *l && r.ramified))
        .collect();
    cert.checks.push(Check::new(
        "bad_sets",
        format!("Σ₀ ⊆ Bad^r ∖ Bad^d: every place of Σ₀ ramifies and none lies over {ell}"),
        format!("over {ell}: {over_ell:?}; unramified: {unramified:?}"),
        over_ell.is_empty() && unramified.is_empty(),
    ));
    cert.sha_results.sha_sigma0 = Some(sha_sigma0);
    cert.sha_results.sha = Some(sha);
    Ok(cert.finish())
}

fn over_label(prime: u64) -> String {
    format!("over:{prime}")
}

type PlaceModel = (Vec<PlaceRecord>, Vec<String>, Vec<String>);

/// Witnesses and place records for every ramified place of `Q(√a, √b)`,
/// with decomposition groups inside `group` (a Klein four group in the same
/// element order as [`KummerPair::galois_group`]).
pub fn biquadratic_places(
    pair: &KummerPair,
    group: &Group,
) -> (Vec<PlaceWitness>, Vec<PlaceRecord>) {
    let mut witnesses = Vec::new();
    let mut records = Vec::new();
    for place in pair.ramified_places() {
        let d = decomposition_subgroup(pair, place);
        let d = Subgroup::from_elements(group, d.elements()).expect("same Klein four table");
        witnesses.push(PlaceWitness {
            label: place.to_string(),
            decomposition_group: d.names(),
            order: d.order(),
            cyclic: d.is_cyclic(),
            ramified: true,
            local_squares: local_square_table(pair, place).to_vec(),
            reason: "G_v fixes √d exactly for the classes d ∈ {a, b, ab} that are local squares"
                .into(),
        });
        records.push(PlaceRecord::new(place.to_string(), d, true));
    }
    (witnesses, records)
}

fn exact_places(
    cert: &mut Certificate,
    group: &Group,
    p: u64,
    q: u64,
) -> Result<PlaceModel, ArithmeticError> {
    let to_i64 = |x: u64| i64::try_from(x).map_err(|_| ArithmeticError::Overflow);
    let pair = KummerPair::new(to_i64(p)?, to_i64(q)?)?;
    debug_assert_eq!(&pair.galois_group(), group);
    let (witnesses, records) = biquadratic_places(&pair, group);
    cert.places = witnesses;
    let sigma0 = sigma0_biquadratic(&pair);
    cert.sigma0_statement = format!(
        "Σ₀ = {{{}}}, computed from the decomposition groups of all ramified places of Q(√{p}, √{q})",
        sigma0.join(", ")
    );
    cert.checks.push(Check::new(
        "sigma0_contains_p",
        "Σ₀ contains every place over p",
        format!("Σ₀ = {sigma0:?}"),
        sigma0.contains(&p.to_string()),
    ));
    let designated = sigma0.clone();
    Ok((records, sigma0, designated))
}

fn partial_places(cert: &mut Certificate, group: &Group, ell: u64, p: u64) -> PlaceModel {
    let whole = group.whole();
    // q is an ℓ-th power at ℓ, so decomposition groups there fix q^(1/ℓ)
    let first_factor = group.generate(&[1]).expect("element 1 exists");
    let p_label = over_label(p);
    let ell_label = over_label(ell);
    cert.places.push(PlaceWitness {
        label: p_label.clone(),
        decomposition_group: whole.names(),
        order: whole.order(),
        cyclic: whole.is_cyclic(),
        ramified: true,
        local_squares: Vec::new(),
        reason: "totally ramified by Eisenstein with residue degree ℓ from the power-residue check, so G_v = G".into(),
    });
    cert.places.push(PlaceWitness {
        label: ell_label.clone(),
        decomposition_group: first_factor.names(),
        order: first_factor.order(),
        cyclic: first_factor.is_cyclic(),
        ramified: true,
        local_squares: Vec::new(),
        reason:
            "q is an ℓ-th power in Q_ℓ, so G_v fixes q^(1/ℓ) and lies in the cyclic factor Z/ℓⁿ"
                .into(),
    });
    let records = vec![
        PlaceRecord::new(p_label.clone(), whole, true),
        PlaceRecord::new(ell_label, first_factor, true),
    ];
    cert.sigma0_statement = format!(
        "Σ₀ contains all places over {p}; contains no place over {ell}; membership of other ramified places not determined"
    );
    let sigma0 = vec![p_label.clone()];
    (records, sigma0, vec![p_label])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flagship() {
        let c = certify(2, 1, 3, None, CertifyOptions::default()).unwrap();
        assert!(c.is_certified(), "{:?}", c.first_failure());
        assert_eq!(c.q, Some(17));
        assert_eq!(c.sigma0, vec!["3", "17"]);
        assert_eq!(c.order_exponent, Some(6));
        assert_eq!(c.sha_results.sha_sigma0.as_ref().unwrap().factors(), &[2]);
        assert!(c.sha_results.sha.as_ref().unwrap().is_trivial());
        assert_eq!(c.sha_results.sha_sigma0_minus.len(), 2);
        assert!(c
            .sha_results
            .sha_sigma0_minus
            .values()
            .all(AbGroupStructure::is_trivial));
    }

    #[test]
    fn composite_q_is_refuted() {
        let c = certify(2, 1, 3, Some(15), CertifyOptions::default()).unwrap();
        assert_eq!(c.conclusion, "refuted: q_prime");
        assert!(c.sha_results.sha_cyc.is_none());
    }

    #[test]
    fn bad_p_is_refuted() {
        let c = certify(3, 1, 5, None, CertifyOptions::default()).unwrap();
        assert_eq!(c.conclusion, "refuted: p_congruence");
        let c = certify(4, 1, 5, None, CertifyOptions::default()).unwrap();
        assert_eq!(c.conclusion, "refuted: ell_prime");
    }

    #[test]
    fn q_residue_failure_is_refuted() {
        // 41 ≡ 1 mod 8 but 41 ≡ 1 mod 5 is a square
        let c = certify(2, 1, 5, Some(41), CertifyOptions::default()).unwrap();
        assert_eq!(c.conclusion, "refuted: q_not_ell_power_mod_p");
    }

    #[test]
    fn cubic_case() {
        let c = certify(3, 1, 7, Some(19), CertifyOptions::default()).unwrap();
        assert!(c.is_certified(), "{:?}", c.first_failure());
        assert!(!c.sigma0_exact);
        assert_eq!(c.sha_results.sha_cyc.as_ref().unwrap().factors(), &[3]);
        assert_eq!(c.order_exponent, Some(16));
        assert_eq!(c.field_desc, "Q(zeta_3)");
    }

    #[test]
    fn group_limit() {
        let opts = CertifyOptions {
            max_order: 4,
            ..CertifyOptions::default()
        };
        assert!(matches!(
            certify(3, 1, 7, None, opts),
            Err(ArithmeticError::GroupTooLarge { order: 9, limit: 4 })
        ));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let c = certify(2, 1, 3, None, CertifyOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["q"], "17");
        assert_eq!(v["ell"], "2");
        assert_eq!(v["sha_results"]["sha_sigma0"], serde_json::json!(["2"]));
        assert_eq!(v["conclusion"], "certified");
    }
}
