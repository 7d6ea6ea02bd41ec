//! Exhaustive certification of a diagonal rule at a fixed `(n, d)`.
//!
//! [`verify_bijection`] runs six checks over every partition of `n`:
//!
//! | check                        | property                                               |
//! |------------------------------|--------------------------------------------------------|
//! | `weight_preservation`        | `weight(f(p)) = n`                                     |
//! | `injectivity`                | `f` has no repeated image                              |
//! | `round_trip`                 | `f^-1(f(p)) = p` and `f(f^-1(p)) = p`                  |
//! | `a_onto_b`                   | `f(A_n) = B_n` as sets                                 |
//! | `complement_onto_complement` | `f(nondivisible) = regular` as sets                    |
//! | `merge_map_agreement`        | `f(p) = merge_map(p)` for every d-nondivisible `p`     |
//!
//! Partitions are visited in [`enumerate_partitions`] order and each failing
//! check keeps the first counterexample found, so reports are reproducible.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::diagonal::{DiagonalPermutation, DiagonalRule};
use crate::digit_matrix::Cell;
use crate::{
    apply_forward, apply_inverse, check_modulus, count_nondivisible, count_regular,
    enumerate_partitions, merge_map, partition_count, Error, Partition, PermutationScheme, Result,
    MAX_ENUMERATION_N,
};

/// Largest `n` for which [`verify_counts`] also cross-checks the DPs against
/// enumeration.
pub const DUAL_ORACLE_MAX_N: u64 = 30;

pub const CHECK_NAMES: [&str; 6] = [
    "weight_preservation",
    "injectivity",
    "round_trip",
    "a_onto_b",
    "complement_onto_complement",
    "merge_map_agreement",
];

/// An input partition and the image that broke a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: Partition,
    pub image: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn pass(name: &str) -> Self {
        Self {
            name: name.to_string(),
            passed: true,
            counterexample: None,
            detail: None,
        }
    }

    fn fail(name: &str, input: &Partition, image: &Partition, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: false,
            counterexample: Some(Counterexample {
                input: input.clone(),
                image: image.clone(),
            }),
            detail: Some(detail.into()),
        }
    }
}

/// Outcome of one verification run.
///
/// `elapsed_ms` is kept out of the JSON so that identical runs serialize
/// identically.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: u64,
    pub d: u64,
    pub scheme: String,
    pub total_partitions: u64,
    #[serde(rename = "card_A")]
    pub card_a: u64,
    #[serde(rename = "card_B")]
    pub card_b: u64,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable summary, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n={} d={} scheme={} partitions={} |A|={} |B|={}",
            self.n, self.d, self.scheme, self.total_partitions, self.card_a, self.card_b
        );
        for c in &self.checks {
            let _ = write!(
                out,
                "  [{}] {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name
            );
            if let Some(ce) = &c.counterexample {
                let _ = write!(out, ": {} -> {}", ce.input, ce.image);
            }
            if let Some(detail) = &c.detail {
                let _ = write!(out, " ({detail})");
            }
            out.push('\n');
        }
        out
    }
}

/// Runs all six checks for `rule` over every partition of `n`.
pub fn verify_bijection<R: DiagonalRule + ?Sized>(
    n: u64,
    d: u64,
    rule: &R,
) -> Result<VerificationReport> {
    check_modulus(d)?;
    if n > MAX_ENUMERATION_N {
        return Err(Error::EnumerationCeiling {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    let start = Instant::now();

    let domain: Vec<Partition> = enumerate_partitions(n).collect();
    let images = domain
        .iter()
        .map(|p| apply_forward(p, d, rule))
        .collect::<Result<Vec<_>>>()?;
    let preimages = domain
        .iter()
        .map(|p| apply_inverse(p, d, rule))
        .collect::<Result<Vec<_>>>()?;

    let mut in_a = Vec::with_capacity(domain.len());
    let mut in_b = Vec::with_capacity(domain.len());
    for p in &domain {
        in_a.push(!p.is_d_nondivisible(d)?);
        in_b.push(!p.is_d_regular(d)?);
    }
    let card_a = in_a.iter().filter(|&&a| a).count() as u64;
    let card_b = in_b.iter().filter(|&&b| b).count() as u64;

    let mut checks = Vec::with_capacity(CHECK_NAMES.len());

    checks.push(
        domain
            .iter()
            .zip(&images)
            .find(|(_, q)| q.weight() != n)
            .map(|(p, q)| {
                Check::fail(
                    "weight_preservation",
                    p,
                    q,
                    format!("image has weight {}", q.weight()),
                )
            })
            .unwrap_or_else(|| Check::pass("weight_preservation")),
    );

    let mut first_with_image: HashMap<&Partition, &Partition> =
        HashMap::with_capacity(domain.len());
    let mut injectivity = Check::pass("injectivity");
    for (p, q) in domain.iter().zip(&images) {
        if let Some(earlier) = first_with_image.insert(q, p) {
            injectivity = Check::fail("injectivity", p, q, format!("{earlier} has the same image"));
            break;
        }
    }
    checks.push(injectivity);

    let mut round_trip = Check::pass("round_trip");
    for ((p, q), r) in domain.iter().zip(&images).zip(&preimages) {
        let back = apply_inverse(q, d, rule)?;
        if &back != p {
            round_trip = Check::fail("round_trip", p, &back, "inverse(forward(p)) != p");
            break;
        }
        let forth = apply_forward(r, d, rule)?;
        if &forth != p {
            round_trip = Check::fail("round_trip", p, &forth, "forward(inverse(p)) != p");
            break;
        }
    }
    checks.push(round_trip);

    let lookup: HashMap<&Partition, usize> =
        domain.iter().enumerate().map(|(idx, p)| (p, idx)).collect();
    checks.push(class_check(
        "a_onto_b", &domain, &images, &in_a, &in_b, &lookup, "B",
    ));
    let not_a: Vec<bool> = in_a.iter().map(|a| !a).collect();
    let not_b: Vec<bool> = in_b.iter().map(|b| !b).collect();
    checks.push(class_check(
        "complement_onto_complement",
        &domain,
        &images,
        &not_a,
        &not_b,
        &lookup,
        "the d-regular class",
    ));

    let mut agreement = Check::pass("merge_map_agreement");
    for ((p, q), &a) in domain.iter().zip(&images).zip(&in_a) {
        if a {
            continue;
        }
        let merged = merge_map(p, d)?;
        if &merged != q {
            agreement = Check::fail(
                "merge_map_agreement",
                p,
                q,
                format!("merge_map gives {merged}"),
            );
            break;
        }
    }
    checks.push(agreement);

    Ok(VerificationReport {
        n,
        d,
        scheme: rule.label(),
        total_partitions: domain.len() as u64,
        card_a,
        card_b,
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// `f(source) = target` as sets: first a source element whose image misses
/// the target class, otherwise a target element no source element reaches
/// (reported with its preimage under `f`, when the domain has one).
fn class_check(
    name: &str,
    domain: &[Partition],
    images: &[Partition],
    source: &[bool],
    target: &[bool],
    lookup: &HashMap<&Partition, usize>,
    target_label: &str,
) -> Check {
    let mut reached = HashSet::new();
    for ((p, q), &s) in domain.iter().zip(images).zip(source) {
        if !s {
            continue;
        }
        match lookup.get(q) {
            Some(&idx) if target[idx] => {
                reached.insert(idx);
            }
            _ => return Check::fail(name, p, q, format!("image is not in {target_label}")),
        }
    }
    for (idx, q) in domain.iter().enumerate() {
        if !target[idx] || reached.contains(&idx) {
            continue;
        }
        let preimage = domain.iter().zip(images).find(|(_, img)| *img == q);
        return match preimage {
            Some((p, _)) => Check::fail(
                name,
                p,
                q,
                format!("{q} is reached only from outside the source class"),
            ),
            None => Check::fail(name, q, q, format!("{q} is not in the image")),
        };
    }
    Check::pass(name)
}

/// Count identities for `n = 0..=n_max`:
///
/// - `glaisher_identity`: a(n) = b(n) from the DPs, for every `n`;
/// - `dual_oracle`: for `n <= min(n_max, 30)`, p(n), a(n), b(n), |A_n| and
///   |B_n| from the DPs equal the counts obtained by filtering the
///   enumeration.
///
/// The summary fields describe `n_max`.
pub fn verify_counts(n_max: u64, d: u64) -> Result<VerificationReport> {
    check_modulus(d)?;
    let start = Instant::now();

    let mut identity = Check::pass("glaisher_identity");
    for n in 0..=n_max {
        let a = count_nondivisible(n, d)?;
        let b = count_regular(n, d)?;
        if a != b {
            identity.passed = false;
            identity.detail = Some(format!("n={n}: a={a} b={b}"));
            break;
        }
    }

    let mut dual = Check::pass("dual_oracle");
    for n in 0..=n_max.min(DUAL_ORACLE_MAX_N) {
        let (mut total, mut nondiv, mut regular, mut card_a, mut card_b) =
            (0u64, 0u64, 0u64, 0u64, 0u64);
        for p in enumerate_partitions(n) {
            total += 1;
            if p.is_d_nondivisible(d)? {
                nondiv += 1;
            } else {
                card_a += 1;
            }
            if p.is_d_regular(d)? {
                regular += 1;
            } else {
                card_b += 1;
            }
        }
        let p_n = partition_count(n);
        let a_n = count_nondivisible(n, d)?;
        let b_n = count_regular(n, d)?;
        let dp = [
            p_n.clone(),
            a_n.clone(),
            b_n.clone(),
            &p_n - &a_n,
            &p_n - &b_n,
        ];
        let enumerated = [total, nondiv, regular, card_a, card_b].map(BigUint::from);
        if dp != enumerated {
            dual.passed = false;
            dual.detail = Some(format!(
                "n={n}: dp (p,a,b,|A|,|B|) = {dp:?}, enumeration = {enumerated:?}"
            ));
            break;
        }
    }

    let as_u64 = |v: BigUint| u64::try_from(v).map_err(|_| Error::Overflow);
    let p_n = partition_count(n_max);
    let a_n = count_nondivisible(n_max, d)?;
    let b_n = count_regular(n_max, d)?;
    Ok(VerificationReport {
        n: n_max,
        d,
        scheme: "counts".to_string(),
        total_partitions: as_u64(p_n.clone())?,
        card_a: as_u64(&p_n - &a_n)?,
        card_b: as_u64(&p_n - &b_n)?,
        checks: vec![identity, dual],
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// An admissible scheme with the permutation of one diagonal replaced.
///
/// Used to show what breaks when the endpoint constraint is dropped.
#[derive(Clone, Debug)]
pub struct PatchedRule {
    pub base: PermutationScheme,
    pub patch: DiagonalPermutation,
}

impl DiagonalRule for PatchedRule {
    fn permutation(&self, x: u64, k: u32) -> DiagonalPermutation {
        if k == self.patch.diagonal().index() {
            self.patch.clone()
        } else {
            self.base.permutation(x, k)
        }
    }

    fn label(&self) -> String {
        format!("{}+patched[{}]", self.base, self.patch)
    }
}

/// Swap everywhere except `D(4)`, which gets the inadmissible
/// `(2,2) -> (1,3)`, `(1,3) -> (2,2)`, `(3,1)` fixed.
///
/// For `d = 2` this sends `2+2` (in `A_4`) to `4`, which is not in `B_4`.
pub fn inadmissible_k4_fixture() -> PatchedRule {
    let patch = DiagonalPermutation::from_pairs(
        4,
        &[
            (Cell::new(2, 2), Cell::new(1, 3)),
            (Cell::new(1, 3), Cell::new(2, 2)),
            (Cell::new(3, 1), Cell::new(3, 1)),
        ],
    )
    .expect("fixture cells lie on D(4)");
    PatchedRule {
        base: PermutationScheme::Swap,
        patch,
    }
}
