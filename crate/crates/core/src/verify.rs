//! Verification levels: bundles of checks run by `verify --level`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classifier::{
    expected_hyperplane_od, expected_point_od, orbit_size_formula, Classifier, OrbitLabel,
};
use crate::group::{stabilizer_reports, verify_generators, StabilizerReport};
use crate::pencil::Geometry;
use crate::projgeom::gaussian_count;
use crate::records::HistogramRecord;
use crate::sweep::{
    census_checks, classification_sweep_with_progress, collision_check, exhaustive_checks,
    histogram_check, sampled_base_identities, Check,
};
use crate::ParseError;

/// Number of random solids for the sampled base-point identities at q = 8.
pub const Q8_SAMPLES: usize = 100_000;
pub const Q8_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Level {
    #[serde(rename = "q2-full")]
    Q2Full,
    #[serde(rename = "q4-full")]
    Q4Full,
    #[serde(rename = "q8-reps")]
    Q8Reps,
    #[serde(rename = "q8-full")]
    Q8Full,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Q2Full => "q2-full",
            Level::Q4Full => "q4-full",
            Level::Q8Reps => "q8-reps",
            Level::Q8Full => "q8-full",
        }
    }

    pub fn q(self) -> usize {
        match self {
            Level::Q2Full => 2,
            Level::Q4Full => 4,
            Level::Q8Reps | Level::Q8Full => 8,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Level::Q2Full, Level::Q4Full, Level::Q8Reps, Level::Q8Full]
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| ParseError::Token(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<HistogramRecord>,
    #[serde(skip)]
    pub stabilizers: Vec<StabilizerReport>,
    /// Names of the failing checks.
    pub failed: Vec<String>,
    pub pass: bool,
}

/// Distributions and classification of every representative.
pub fn representative_checks(classifier: &Classifier) -> Vec<Check> {
    let geom = classifier.geometry();
    let q = geom.q() as u64;
    OrbitLabel::all()
        .map(|label| {
            let s = crate::group::representative(&geom.field, label);
            let d = s.distributions(geom);
            let got = classifier.classify_with(&s, d);
            let pass = d.point_od == expected_point_od(label, q)
                && d.hyperplane_od == expected_hyperplane_od(label, q)
                && got.as_ref().map(|c| c.label) == Ok(label);
            Check::new(
                format!("representative {label}, q={q}"),
                pass,
                format!(
                    "point OD {:?}, hyperplane OD {:?}",
                    d.point_od, d.hyperplane_od
                ),
            )
            .with_witness((!pass).then(|| s.to_text()))
        })
        .collect()
}

/// Stabiliser structure of every representative and the orbit-size sum.
pub fn stabilizer_checks(geom: &Geometry) -> (Vec<StabilizerReport>, Vec<Check>) {
    let q = geom.q() as u64;
    let reports = stabilizer_reports(geom);
    let mut checks: Vec<Check> = reports
        .iter()
        .map(|r| {
            let size = r.orbit_size();
            Check::new(
                format!("stabiliser {}, q={q}", r.label),
                r.pass && size == orbit_size_formula(r.label, q),
                format!(
                    "order {} (expected {}), orbit size {size}",
                    r.order, r.expected_order
                ),
            )
        })
        .collect();
    let sum: u64 = reports.iter().map(|r| r.orbit_size()).sum();
    let gauss = gaussian_count(6, 4, q);
    checks.push(Check::new(
        format!("orbit sizes sum to the number of solids, q={q}"),
        sum == gauss,
        format!("{sum} vs {gauss}"),
    ));
    (reports, checks)
}

pub fn generator_checks(geom: &Geometry) -> Vec<Check> {
    [8, 13, 14, 15]
        .into_iter()
        .map(|i| {
            let label = OrbitLabel::new(i).expect("valid");
            match verify_generators(&geom.field, label) {
                Ok(c) => Check::new(
                    format!("explicit generators {label}, q={}", geom.q()),
                    c.pass,
                    c.generators
                        .iter()
                        .map(|g| format!("{} (order {}, fixes {})", g.matrix, g.order, g.fixes))
                        .collect::<Vec<_>>()
                        .join(", "),
                ),
                Err(e) => Check::new(
                    format!("explicit generators {label}, q={}", geom.q()),
                    false,
                    e.to_string(),
                ),
            }
        })
        .collect()
}

/// Runs every check of `level`.
pub fn run(level: Level) -> VerifyReport {
    run_with_progress(level, &|_, _| {})
}

/// As [`run`]; `progress(done, total)` is called during the q = 8 sweep.
pub fn run_with_progress(level: Level, progress: &(dyn Fn(u64, u64) + Sync)) -> VerifyReport {
    let geom = Geometry::new(level.q()).expect("supported field");
    let q = geom.q();
    let classifier = Classifier::new(geom.clone());
    let mut checks = Vec::new();
    let mut histogram = None;
    let mut stabilizers = Vec::new();
    match level {
        Level::Q2Full | Level::Q4Full => {
            let (tally, sweep) = exhaustive_checks(&classifier);
            histogram = Some(HistogramRecord {
                q,
                counts: tally.counts,
                total: tally.total,
                pass: sweep[0].pass,
            });
            checks.extend(sweep);
            checks.extend(census_checks(&geom.field));
            checks.push(collision_check(q as u64));
            checks.extend(representative_checks(&classifier));
            let (reports, stab) = stabilizer_checks(&geom);
            stabilizers = reports;
            checks.extend(stab);
            checks.extend(generator_checks(&geom));
        }
        Level::Q8Reps => {
            checks.push(collision_check(q as u64));
            checks.extend(representative_checks(&classifier));
            let (reports, stab) = stabilizer_checks(&geom);
            stabilizers = reports;
            checks.extend(stab);
            checks.extend(generator_checks(&geom));
            let failures = sampled_base_identities(&geom, Q8_SAMPLES, Q8_SEED);
            checks.push(
                Check::new(
                    format!("base-point identities, {Q8_SAMPLES} random solids, q={q}"),
                    failures.is_empty(),
                    format!("{} violations", failures.len()),
                )
                .with_witness(failures.first().cloned()),
            );
        }
        Level::Q8Full => {
            let tally = classification_sweep_with_progress(&classifier, progress);
            let check = histogram_check(q as u64, &tally);
            histogram = Some(HistogramRecord {
                q,
                counts: tally.counts,
                total: tally.total,
                pass: check.pass,
            });
            checks.push(check);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    let failed = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.clone())
        .collect();
    VerifyReport {
        level,
        checks,
        histogram,
        stabilizers,
        failed,
        pass,
    }
}
