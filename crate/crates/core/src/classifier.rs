//! The fifteen orbits of solids: their evaluated invariants and a classifier
//! that labels an arbitrary solid.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::pencil::{Geometry, O6Mode, OrbitDistributions, PencilSolid};
use crate::ParseError;

/// One of the orbits Ω1..Ω15.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel(u8);

impl OrbitLabel {
    pub fn new(index: u8) -> Option<OrbitLabel> {
        (1..=15).contains(&index).then_some(OrbitLabel(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = OrbitLabel> {
        (1..=15).map(OrbitLabel)
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ω{}", self.0)
    }
}

/// Accepts `9`, `O9`, `Ω9` and `Omega9`.
impl FromStr for OrbitLabel {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t
            .strip_prefix("Omega")
            .or_else(|| t.strip_prefix('Ω'))
            .or_else(|| t.strip_prefix('O'))
            .unwrap_or(t);
        digits
            .parse::<u8>()
            .ok()
            .and_then(OrbitLabel::new)
            .ok_or_else(|| ParseError::Token(s.to_string()))
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `|PGL(3, q)| = q^3 (q^3 - 1)(q^2 - 1)`.
pub fn pgl3_order(q: u64) -> u64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

/// The invariants of one orbit, evaluated at a given q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedRow {
    pub label: OrbitLabel,
    pub point_od: [u64; 4],
    pub hyperplane_od: [u64; 4],
    /// Name of the stabiliser's isomorphism type.
    pub stabilizer: &'static str,
    pub stabilizer_order: u64,
    pub orbit_size: u64,
}

/// Stabiliser order of each orbit at q.
pub fn stabilizer_order(label: OrbitLabel, q: u64) -> u64 {
    match label.0 {
        1 => q.pow(3) * (q - 1),
        2 => q.pow(3) * (q - 1) * (q - 1),
        3 => q.pow(3) * (q - 1) * (q * q - 1),
        4 => q * (q - 1) * (q * q - 1),
        5 => q * q * (q - 1),
        6 => 2 * (q - 1) * (q - 1),
        7 => 2 * (q + 1) * (q - 1),
        8 | 10 => 2 * (q - 1),
        9 => 24,
        11 => q * (q - 1),
        12 | 14 => 4,
        13 => 8,
        15 => 3,
        _ => unreachable!(),
    }
}

/// Orbit size of each orbit at q, as a closed form in q.
pub fn orbit_size_formula(label: OrbitLabel, q: u64) -> u64 {
    let q3 = q.pow(3);
    let generic = q3 * (q3 - 1) * (q * q - 1);
    match label.0 {
        1 => (q3 - 1) * (q + 1),
        2 => (q * q + q + 1) * (q + 1),
        3 => q * q + q + 1,
        4 => q * q * (q * q + q + 1),
        5 => q * (q3 - 1) * (q + 1),
        6 => q3 * (q * q + q + 1) * (q + 1) / 2,
        7 => q3 * (q3 - 1) / 2,
        8 | 10 => q3 * (q3 - 1) * (q + 1) / 2,
        9 => generic / 24,
        11 => q * q * (q3 - 1) * (q + 1),
        12 | 14 => generic / 4,
        13 => generic / 8,
        15 => generic / 3,
        _ => unreachable!(),
    }
}

pub fn stabilizer_name(label: OrbitLabel) -> &'static str {
    match label.0 {
        1 => "E_q^2:(E_q x C_{q-1})",
        2 => "E_q^{1+2}:C_{q-1}^2",
        3 => "E_q^2:GL(2,q)",
        4 => "GL(2,q)",
        5 => "E_q^2:C_{q-1}",
        6 => "C_{q-1}^2:C_2",
        7 => "D_{2(q+1)} x C_{q-1}",
        8 | 10 => "C_{q-1} x C_2",
        9 => "Sym_4",
        11 => "E_q:C_{q-1}",
        12 => "C_2^2",
        13 => "C_2^2:C_2",
        14 => "C_4",
        15 => "C_3",
        _ => unreachable!(),
    }
}

pub fn expected_point_od(label: OrbitLabel, q: u64) -> [u64; 4] {
    let (q2, q3) = (q * q, q.pow(3));
    match label.0 {
        1 => [1, q + 1, 2 * q2 - 1, q3 - q2],
        2 => [q + 1, q + 1, 2 * q2 - q - 1, q3 - q2],
        3 => [1, q2 + q + 1, q2 - 1, q3 - q2],
        4 => [q + 2, 1, 2 * q2 - 2, q3 - q2],
        5 => [1, q + 1, q2 - 1, q3],
        6 => [2, q + 1, q2 + q - 2, q3 - q],
        7 => [0, q + 1, q2 + q, q3 - q],
        8 => [3, 1, q2 + 2 * q - 3, q3 - q],
        9 => [4, 1, q2 + 3 * q - 4, q3 - 2 * q],
        10 => [1, 1, q2 + 2 * q - 1, q3 - q],
        11 | 12 => [2, 1, q2 + q - 2, q3],
        13 => [0, 1, q2 + 3 * q, q3 - 2 * q],
        14 => [0, 1, q2 + q, q3],
        15 => [1, 1, q2 - 1, q3 + q],
        _ => unreachable!(),
    }
}

pub fn expected_hyperplane_od(label: OrbitLabel, q: u64) -> [u64; 4] {
    match label.0 {
        1 => [1, q / 2, q / 2, 0],
        2 => [1, q, 0, 0],
        3 => [q + 1, 0, 0, 0],
        4 => [0, q + 1, 0, 0],
        5 => [1, 0, 0, q],
        6 => [1, 1, 0, q - 1],
        7 => [1, 0, 1, q - 1],
        8 => [0, 2, 0, q - 1],
        9 => [0, 3, 0, q - 2],
        10 => [0, 1, 1, q - 1],
        11 | 12 => [0, 1, 0, q],
        13 => [0, 1, 2, q - 2],
        14 => [0, 0, 1, q],
        15 => [0, 0, 0, q + 1],
        _ => unreachable!(),
    }
}

/// All fifteen rows evaluated at q (q even, q >= 2).
pub fn expected_table(q: u64) -> Vec<ExpectedRow> {
    assert!(
        q >= 2 && q.is_power_of_two(),
        "q must be a power of two, got {q}"
    );
    OrbitLabel::all()
        .map(|label| ExpectedRow {
            label,
            point_od: expected_point_od(label, q),
            hyperplane_od: expected_hyperplane_od(label, q),
            stabilizer: stabilizer_name(label),
            stabilizer_order: stabilizer_order(label, q),
            orbit_size: orbit_size_formula(label, q),
        })
        .collect()
}

type OdPair = ([u64; 4], [u64; 4]);

/// Groups of labels whose evaluated distribution pairs coincide.
pub fn od_collisions(q: u64) -> Vec<Vec<OrbitLabel>> {
    let mut groups: Vec<(OdPair, Vec<OrbitLabel>)> = Vec::new();
    for row in expected_table(q) {
        let key = (row.point_od, row.hyperplane_od);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(row.label),
            None => groups.push((key, vec![row.label])),
        }
    }
    groups
        .into_iter()
        .map(|(_, v)| v)
        .filter(|v| v.len() > 1)
        .collect()
}

/// Raised when a solid's invariants contradict the fifteen-orbit table.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[error("classification inconsistency for {solid}: {reason}")]
pub struct ClassificationInconsistency {
    pub solid: String,
    pub point_od: [u64; 4],
    pub hyperplane_od: [u64; 4],
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub label: OrbitLabel,
    pub distributions: OrbitDistributions,
    /// Number of o6 lines, when a tie-break needed it.
    pub o6_lines: Option<u64>,
}

/// Table lookup from distribution pairs to labels for one q.
pub struct Classifier {
    geom: Geometry,
    by_od: HashMap<([u64; 4], [u64; 4]), Vec<OrbitLabel>>,
}

impl Classifier {
    pub fn new(geom: Geometry) -> Classifier {
        let mut by_od: HashMap<_, Vec<OrbitLabel>> = HashMap::new();
        for row in expected_table(geom.q() as u64) {
            by_od
                .entry((row.point_od, row.hyperplane_od))
                .or_default()
                .push(row.label);
        }
        Classifier { geom, by_od }
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geom
    }

    pub fn classify(&self, s: &PencilSolid) -> Result<Classification, ClassificationInconsistency> {
        let distributions = s.distributions(&self.geom);
        self.classify_with(s, distributions)
    }

    /// Classification from already computed distributions.
    pub fn classify_with(
        &self,
        s: &PencilSolid,
        distributions: OrbitDistributions,
    ) -> Result<Classification, ClassificationInconsistency> {
        let q = self.geom.q() as u64;
        let fail = |reason: String| ClassificationInconsistency {
            solid: s.to_text(),
            point_od: distributions.point_od,
            hyperplane_od: distributions.hyperplane_od,
            reason,
        };
        let candidates = self
            .by_od
            .get(&(distributions.point_od, distributions.hyperplane_od))
            .ok_or_else(|| fail("no orbit has these distributions".into()))?;
        let done = |label, o6_lines| {
            Ok(Classification {
                label,
                distributions,
                o6_lines,
            })
        };
        match candidates.as_slice() {
            [label] => done(*label, None),
            [a, b] if (a.0, b.0) == (11, 12) => {
                let n = s
                    .count_o6_lines(&self.geom, O6Mode::Candidates)
                    .map_err(|e| fail(e.to_string()))?;
                match n {
                    1 => done(*a, Some(n)),
                    0 => done(*b, Some(n)),
                    _ => Err(fail(format!(
                        "{n} o6 lines among the candidates, expected 0 or 1"
                    ))),
                }
            }
            [a, b] if (a.0, b.0) == (4, 9) && q == 2 => {
                let n = s
                    .count_o6_lines(&self.geom, O6Mode::Full)
                    .map_err(|e| fail(e.to_string()))?;
                match n {
                    3 => done(*a, Some(n)),
                    0 => done(*b, Some(n)),
                    _ => Err(fail(format!("{n} o6 lines, expected 3 or 0"))),
                }
            }
            other => Err(fail(format!("unresolvable tie between {other:?}"))),
        }
    }
}

/// Labels a solid, building the lookup tables for its field.
pub fn classify(s: &PencilSolid) -> Result<Classification, ClassificationInconsistency> {
    let geom = Geometry::new(s.q()).expect("solid was built over a supported field");
    Classifier::new(geom).classify(s)
}

/// Correspondence with an earlier classification of pencils of conics over
/// fields of characteristic 2: each of its classes and the orbits it covers.
pub const CAMPBELL_TABLE: [(&str, &[u8]); 17] = [
    ("Class 1", &[3]),
    ("Class 2", &[5]),
    ("Class 3", &[1]),
    ("Class 4", &[2]),
    ("Class 5", &[7]),
    ("Class 6", &[6]),
    ("Class 7", &[9]),
    ("Class 8", &[12]),
    ("Class 9", &[8]),
    ("Set 10", &[9, 12, 13]),
    ("Class 11", &[11]),
    ("Class 12", &[4]),
    ("Class 13", &[10]),
    ("Set 14", &[14]),
    ("Set 15", &[13]),
    ("Set 16", &[15]),
    ("Set 17", &[15]),
];

/// Entries of the correspondence table mentioning `label`.
pub fn campbell_classes(label: OrbitLabel) -> Vec<&'static str> {
    CAMPBELL_TABLE
        .iter()
        .filter(|(_, ls)| ls.contains(&label.0))
        .map(|(name, _)| *name)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_parsing() {
        for s in ["9", "O9", "Ω9", "Omega9"] {
            assert_eq!(s.parse::<OrbitLabel>().unwrap().index(), 9);
        }
        for s in ["0", "16", "Ωx", ""] {
            assert!(s.parse::<OrbitLabel>().is_err());
        }
        assert_eq!(OrbitLabel::new(13).unwrap().to_string(), "Ω13");
    }

    #[test]
    fn table_rows_sum_correctly() {
        for q in [2u64, 4, 8, 16] {
            for row in expected_table(q) {
                assert_eq!(
                    row.point_od.iter().sum::<u64>(),
                    q.pow(3) + q * q + q + 1,
                    "{}",
                    row.label
                );
                assert_eq!(
                    row.hyperplane_od.iter().sum::<u64>(),
                    q + 1,
                    "{}",
                    row.label
                );
                assert_eq!(
                    row.stabilizer_order * row.orbit_size,
                    pgl3_order(q),
                    "{}",
                    row.label
                );
            }
        }
    }

    #[test]
    fn table_examples() {
        let t2 = expected_table(2);
        assert_eq!(t2[0].point_od, [1, 3, 7, 4]);
        assert_eq!(t2[0].hyperplane_od, [1, 1, 1, 0]);
        assert_eq!(t2[0].orbit_size, 21);
        let t4 = expected_table(4);
        assert_eq!(t4[5].hyperplane_od, [1, 1, 0, 3]);
        assert_eq!(t4[5].orbit_size, 3360);
        assert_eq!(
            expected_table(8).iter().map(|r| r.orbit_size).sum::<u64>(),
            19_477_641
        );
    }

    #[test]
    fn collisions() {
        let l = |i| OrbitLabel::new(i).unwrap();
        assert_eq!(od_collisions(2), vec![vec![l(4), l(9)], vec![l(11), l(12)]]);
        for q in [4, 8, 16] {
            assert_eq!(od_collisions(q), vec![vec![l(11), l(12)]]);
        }
    }

    #[test]
    fn campbell_covers_every_orbit() {
        for label in OrbitLabel::all() {
            assert!(!campbell_classes(label).is_empty(), "{label}");
        }
    }
}
