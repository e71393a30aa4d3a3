//! Exhaustive and sampled sweeps over the solids of PG(5, q), and the
//! invariant checks built on them.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{
    expected_table, od_collisions, ClassificationInconsistency, Classifier, OrbitLabel,
};
use crate::field::{Fe, Field};
use crate::pencil::{Geometry, OrbitDistributions, PencilSolid};
use crate::projgeom::{pack, Subspace, SubspaceEnumerator};
use crate::veronese::{
    classify_conic, classify_conic_by_count, hyperplane_census_formula, point_census_formula,
    point_type, ConicKind,
};

/// Contiguous index range inside one pivot pattern.
#[derive(Clone, Copy, Debug)]
struct Shard {
    pattern: usize,
    start: u64,
    end: u64,
}

fn shards(e: &SubspaceEnumerator<6>, q: usize, size: u64) -> Vec<Shard> {
    let mut out = Vec::new();
    for (pattern, p) in e.patterns().iter().enumerate() {
        let n = p.len(q);
        let mut start = 0;
        while start < n {
            let end = (start + size).min(n);
            out.push(Shard {
                pattern,
                start,
                end,
            });
            start = end;
        }
    }
    out
}

/// Folds `step` over every solid of PG(5, q) in parallel and merges the
/// per-shard accumulators with `merge`. The result does not depend on the
/// number of workers as long as `merge` is associative and commutative.
pub fn fold_solids<A, I, S, M>(geom: &Geometry, init: I, step: S, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &PencilSolid) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    fold_solids_with_progress(geom, init, step, merge, &|_, _| {})
}

/// As [`fold_solids`], calling `progress(done, total)` with solid counts
/// after every finished shard.
pub fn fold_solids_with_progress<A, I, S, M>(
    geom: &Geometry,
    init: I,
    step: S,
    merge: M,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &PencilSolid) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let q = geom.q();
    let e = SubspaceEnumerator::<6>::new(q, 4);
    let total = e.len();
    let size = (total / 256).max(64);
    let done = AtomicU64::new(0);
    shards(&e, q, size)
        .into_par_iter()
        .map(|sh| {
            let mut acc = init();
            let pattern = &e.patterns()[sh.pattern];
            for i in sh.start..sh.end {
                let rows = e.decode_in(pattern, i);
                let solid = Subspace::from_echelon(rows);
                let s = PencilSolid::from_solid(&geom.field, solid).expect("rank 4");
                step(&mut acc, &s);
            }
            let n = done.fetch_add(sh.end - sh.start, Ordering::Relaxed) + sh.end - sh.start;
            progress(n, total);
            acc
        })
        .reduce(&init, &merge)
}

/// Per-label counts from classifying every solid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassificationTally {
    pub counts: [u64; 15],
    pub total: u64,
    pub inconsistencies: Vec<ClassificationInconsistency>,
}

impl ClassificationTally {
    fn merge(mut self, other: ClassificationTally) -> ClassificationTally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.total += other.total;
        self.inconsistencies.extend(other.inconsistencies);
        self
    }

    fn record(&mut self, r: Result<OrbitLabel, ClassificationInconsistency>) {
        self.total += 1;
        match r {
            Ok(label) => self.counts[label.index() as usize - 1] += 1,
            Err(e) => self.inconsistencies.push(e),
        }
    }
}

/// Everything the exhaustive sweep checks in a single pass.
#[derive(Clone, Debug, Default)]
pub struct SweepTally {
    pub classification: ClassificationTally,
    /// Solids violating the base-point identities (checked only for q > 2).
    pub base_identity_failures: Vec<String>,
    /// Solids with q+1 singular conics and no base point.
    pub all_singular_empty_base: Vec<String>,
    /// Solids with hyperplane-orbit distribution `[1, 0, a2i, 0]`, a2i > 0.
    pub double_line_imaginary_only: Vec<String>,
    /// For each packed nonsingular conic: number of solids through its
    /// hyperplane that also lie in a double-line and a line-pair hyperplane.
    pub flagged_per_conic: Vec<u32>,
}

impl SweepTally {
    fn new(geom: &Geometry) -> SweepTally {
        SweepTally {
            flagged_per_conic: vec![0; 1 << (6 * geom.h())],
            ..Default::default()
        }
    }

    fn merge(mut self, other: SweepTally) -> SweepTally {
        self.classification = self.classification.merge(other.classification);
        self.base_identity_failures
            .extend(other.base_identity_failures);
        self.all_singular_empty_base
            .extend(other.all_singular_empty_base);
        self.double_line_imaginary_only
            .extend(other.double_line_imaginary_only);
        for (a, b) in self
            .flagged_per_conic
            .iter_mut()
            .zip(other.flagged_per_conic)
        {
            *a += b;
        }
        self
    }
}

/// Classifies every solid of PG(5, q) and runs the per-solid checks.
pub fn exhaustive_sweep(classifier: &Classifier) -> SweepTally {
    let geom = classifier.geometry();
    let q = geom.q() as u64;
    let h = geom.h();
    fold_solids(
        geom,
        || SweepTally::new(geom),
        |t, s| {
            let d = s.distributions(geom);
            t.classification
                .record(classifier.classify_with(s, d).map(|c| c.label));
            let [a1, a2r, a2i, a3] = d.hyperplane_od;
            if q > 2 && !d.satisfies_base_identities(q) {
                t.base_identity_failures.push(s.to_text());
            }
            if a3 == 0 && d.base_count == 0 {
                t.all_singular_empty_base.push(s.to_text());
            }
            if a1 == 1 && a2r == 0 && a2i > 0 && a3 == 0 {
                t.double_line_imaginary_only.push(s.to_text());
            }
            if a1 > 0 && a2r + a2i > 0 {
                for c in s.conics(&geom.field) {
                    let w = pack(h, c.coeffs());
                    if geom.strata.conic_kind(w) == ConicKind::Nonsingular {
                        t.flagged_per_conic[w as usize] += 1;
                    }
                }
            }
        },
        SweepTally::merge,
    )
}

/// Classification histogram only; the lighter sweep used for q = 8.
pub fn classification_sweep(classifier: &Classifier) -> ClassificationTally {
    classification_sweep_with_progress(classifier, &|_, _| {})
}

pub fn classification_sweep_with_progress(
    classifier: &Classifier,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> ClassificationTally {
    fold_solids_with_progress(
        classifier.geometry(),
        ClassificationTally::default,
        |t, s| t.record(classifier.classify(s).map(|c| c.label)),
        ClassificationTally::merge,
        progress,
    )
}

/// A uniformly random solid: the row space of a random full-rank 4x6 matrix.
pub fn random_solid<R: Rng>(field: &Field, rng: &mut R) -> PencilSolid {
    let q = field.q() as u8;
    loop {
        let rows: Vec<[Fe; 6]> = (0..4)
            .map(|_| std::array::from_fn(|_| Fe(rng.gen_range(0..q))))
            .collect();
        if let Ok(solid) = Subspace::span(field, &rows) {
            if solid.rank() == 4 {
                return PencilSolid::from_solid(field, solid).expect("rank 4");
            }
        }
    }
}

/// Checks the base-point identities on `n` random solids; returns failures.
pub fn sampled_base_identities(geom: &Geometry, n: usize, seed: u64) -> Vec<String> {
    let q = geom.q() as u64;
    (0..n)
        .into_par_iter()
        .chunks(1024)
        .flat_map_iter(|chunk| {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed ^ (chunk[0] as u64));
            chunk
                .into_iter()
                .filter_map(|_| {
                    let s = random_solid(&geom.field, &mut rng);
                    let d: OrbitDistributions = s.distributions(geom);
                    (!d.satisfies_base_identities(q)).then(|| s.to_text())
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Point-type counts over all points of PG(5, q), by direct rank computation.
pub fn point_census(field: &Field) -> [u64; 4] {
    let all = SubspaceEnumerator::<6>::new(field.q(), 1);
    let mut out = [0; 4];
    for p in all.iter() {
        out[point_type(field, &p.rows()[0]).index()] += 1;
    }
    out
}

/// Conic-kind counts over all conics (equivalently, hyperplanes) of PG(2, q).
pub fn hyperplane_census(field: &Field) -> [u64; 4] {
    let all = SubspaceEnumerator::<6>::new(field.q(), 1);
    let mut out = [0; 4];
    for c in all.iter() {
        out[classify_conic(field, &c.rows()[0]).index()] += 1;
    }
    out
}

/// Conics on which the fast classification and point counting disagree,
/// and the number of conics compared.
pub fn conic_oracle_disagreements(field: &Field) -> (u64, Vec<String>) {
    let all = SubspaceEnumerator::<6>::new(field.q(), 1);
    let mut bad = Vec::new();
    let mut n = 0;
    for c in all.iter() {
        let a = c.rows()[0];
        n += 1;
        if classify_conic(field, &a) != classify_conic_by_count(field, &a) {
            bad.push(c.to_hex());
        }
    }
    (n, bad)
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: Option<String>) -> Check {
        self.witness = w;
        self
    }
}

/// ", in Ω13 (21)" style summary of the orbits of some solids.
fn labels_of(classifier: &Classifier, solids: &[String]) -> String {
    let mut counts = [0u64; 15];
    for text in solids {
        if let Some(c) = PencilSolid::parse(text)
            .ok()
            .and_then(|s| classifier.classify(&s).ok())
        {
            counts[c.label.index() as usize - 1] += 1;
        }
    }
    let parts: Vec<String> = OrbitLabel::all()
        .filter(|l| counts[l.index() as usize - 1] > 0)
        .map(|l| format!("{l} ({})", counts[l.index() as usize - 1]))
        .collect();
    if parts.is_empty() {
        String::new()
    } else {
        format!(", in {}", parts.join(", "))
    }
}

/// The histogram check and the per-solid checks of an exhaustive sweep.
pub fn exhaustive_checks(classifier: &Classifier) -> (ClassificationTally, Vec<Check>) {
    let geom = classifier.geometry();
    let q = geom.q() as u64;
    let t = exhaustive_sweep(classifier);
    let mut checks = vec![histogram_check(q, &t.classification)];
    if q > 2 {
        checks.push(
            Check::new(
                format!("base-point identities, all solids, q={q}"),
                t.base_identity_failures.is_empty(),
                format!("{} violations", t.base_identity_failures.len()),
            )
            .with_witness(t.base_identity_failures.first().cloned()),
        );
    }
    checks.push(
        Check::new(
            format!("no all-singular pencil with empty base, q={q}"),
            t.all_singular_empty_base.is_empty(),
            format!(
                "{} violations{}",
                t.all_singular_empty_base.len(),
                labels_of(classifier, &t.all_singular_empty_base)
            ),
        )
        .with_witness(t.all_singular_empty_base.first().cloned()),
    );
    checks.push(
        Check::new(
            format!("no hyperplane distribution [1,0,a2i>0,0], q={q}"),
            t.double_line_imaginary_only.is_empty(),
            format!("{} violations", t.double_line_imaginary_only.len()),
        )
        .with_witness(t.double_line_imaginary_only.first().cloned()),
    );
    let mut nonsingular = 0;
    let mut wrong = None;
    for (w, &n) in t.flagged_per_conic.iter().enumerate() {
        if w == 0 || geom.strata.conic_kind(w as u32) != ConicKind::Nonsingular {
            continue;
        }
        // Each projective conic appears q-1 times as a packed vector; only
        // normalized ones are ever tallied.
        let v = crate::projgeom::unpack::<6>(geom.h(), w as u32);
        if crate::projgeom::normalize(&geom.field, &v) != Some(v) {
            continue;
        }
        nonsingular += 1;
        if n as u64 != q * q && wrong.is_none() {
            wrong = Some(format!(
                "conic {} lies in {n} flagged solids",
                crate::projgeom::ProjectivePoint::<6>::new(&geom.field, v)
                    .expect("nonzero")
                    .to_hex()
            ));
        }
    }
    checks.push(
        Check::new(
            format!("q^2 flagged solids in every nonsingular-conic hyperplane, q={q}"),
            wrong.is_none() && nonsingular == q.pow(5) - q * q,
            format!(
                "{nonsingular} hyperplanes checked, expected {} solids each",
                q * q
            ),
        )
        .with_witness(wrong),
    );
    (t.classification, checks)
}

pub fn histogram_check(q: u64, t: &ClassificationTally) -> Check {
    let expected: Vec<u64> = expected_table(q).iter().map(|r| r.orbit_size).collect();
    let gauss = crate::projgeom::gaussian_count(6, 4, q);
    let pass = t.counts.as_slice() == expected.as_slice()
        && t.inconsistencies.is_empty()
        && t.total == gauss;
    Check::new(
        format!("classification histogram, q={q}"),
        pass,
        format!(
            "counts {:?}, total {}, {} inconsistencies",
            t.counts,
            t.total,
            t.inconsistencies.len()
        ),
    )
    .with_witness(t.inconsistencies.first().map(|e| e.to_string()))
}

pub fn census_checks(field: &Field) -> Vec<Check> {
    let q = field.q() as u64;
    let (n, bad) = conic_oracle_disagreements(field);
    let points = point_census(field);
    let hyperplanes = hyperplane_census(field);
    vec![
        Check::new(
            format!("conic classification agrees with point counting, q={q}"),
            bad.is_empty() && n == crate::projgeom::point_count(6, q),
            format!("{n} conics, {} disagreements", bad.len()),
        )
        .with_witness(bad.first().cloned()),
        Check::new(
            format!("point census, q={q}"),
            points == point_census_formula(q),
            format!("{points:?}"),
        ),
        Check::new(
            format!("hyperplane census, q={q}"),
            hyperplanes == hyperplane_census_formula(q),
            format!("{hyperplanes:?}"),
        ),
    ]
}

/// Only {Ω11, Ω12} share distributions, plus {Ω4, Ω9} at q = 2.
pub fn collision_check(q: u64) -> Check {
    let l = |i| OrbitLabel::new(i).expect("valid");
    let mut expected = vec![vec![l(11), l(12)]];
    if q == 2 {
        expected.insert(0, vec![l(4), l(9)]);
    }
    let found = od_collisions(q);
    let text: Vec<String> = found
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("=")
        })
        .collect();
    Check::new(
        format!("distribution collisions, q={q}"),
        found == expected,
        text.join(", "),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_visits_every_solid_once() {
        let geom = Geometry::new(2).unwrap();
        let all = fold_solids(
            &geom,
            Vec::new,
            |v: &mut Vec<String>, s| v.push(s.to_text()),
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 651);
        assert_eq!(all.len(), 651);
    }

    #[test]
    fn random_solids_are_solids() {
        let f = Field::new(8).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(random_solid(&f, &mut rng).solid().rank(), 4);
        }
    }
}
