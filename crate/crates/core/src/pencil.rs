//! Solids of PG(5, q) and the pencils of conics dual to them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::projgeom::{pack, unpack, PlanePoint, Subspace, SubspaceEnumerator};
use crate::veronese::{nu_inverse, plane_points, Conic, PointType, Strata};
use crate::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PencilError {
    #[error("the two conics are proportional")]
    ProportionalConics,
    #[error("expected a solid (rank 4), got rank {0}")]
    NotASolid(usize),
    #[error("expected a pencil (rank 2), got rank {0}")]
    NotAPencil(usize),
    #[error("candidate o6 search needs point-orbit distribution [2,1,q^2+q-2,q^3], got {0:?}")]
    NotAnO6Candidate([u64; 4]),
}

/// A field together with its lookup tables; shared by all heavy computations.
#[derive(Clone)]
pub struct Geometry {
    pub field: Field,
    pub strata: Strata,
    /// `scale_digit[c][d] = c * d`
    scale_digit: [[u8; 16]; 16],
}

impl Geometry {
    pub fn new(q: usize) -> Result<Geometry, FieldError> {
        Ok(Geometry::with_field(Field::new(q)?))
    }

    pub fn with_field(field: Field) -> Geometry {
        let mut scale_digit = [[0u8; 16]; 16];
        for c in field.elements() {
            for d in field.elements() {
                scale_digit[c.0 as usize][d.0 as usize] = field.mul(c, d).0;
            }
        }
        Geometry {
            strata: Strata::new(&field),
            field,
            scale_digit,
        }
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn h(&self) -> u32 {
        self.field.degree()
    }

    /// `c * w` for a packed 6-vector `w`.
    #[inline]
    pub fn scale_packed(&self, c: Fe, w: u32) -> u32 {
        let h = self.h();
        let mask = (1u32 << h) - 1;
        let row = &self.scale_digit[c.0 as usize];
        let mut out = 0;
        for i in (0..6).rev() {
            let shift = h * i;
            out |= (row[((w >> shift) & mask) as usize] as u32) << shift;
        }
        out
    }

    /// All `q` multiples of each packed row.
    pub fn multiples(&self, rows: &[u32]) -> Vec<Vec<u32>> {
        rows.iter()
            .map(|&w| {
                self.field
                    .elements()
                    .map(|c| self.scale_packed(c, w))
                    .collect()
            })
            .collect()
    }
}

/// Calls `f` once per projective point of the span of `rows` (given as
/// packed, linearly independent vectors), with a packed representative.
pub fn for_each_point_packed(geom: &Geometry, rows: &[u32], mut f: impl FnMut(u32)) {
    let q = geom.q();
    let mults = geom.multiples(rows);
    for lead in 0..rows.len() {
        let tail = &mults[lead + 1..];
        let combos = q.pow(tail.len() as u32);
        for mut idx in 0..combos {
            let mut w = rows[lead];
            for m in tail.iter().rev() {
                w ^= m[idx % q];
                idx /= q;
            }
            f(w);
        }
    }
}

/// Point-orbit distribution of the span of packed rows.
pub fn point_od_packed(geom: &Geometry, rows: &[u32]) -> [u64; 4] {
    let mut od = [0u64; 4];
    for_each_point_packed(geom, rows, |w| od[geom.strata.point_type(w).index()] += 1);
    od
}

/// Point- and hyperplane-orbit distributions and the number of base points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitDistributions {
    /// `[r1, r2n, r2s, r3]`
    pub point_od: [u64; 4],
    /// `[a1, a2r, a2i, a3]`
    pub hyperplane_od: [u64; 4],
    pub base_count: u64,
}

impl OrbitDistributions {
    /// The two identities relating the hyperplane-orbit distribution to the
    /// number of base points. They hold for q > 2.
    pub fn satisfies_base_identities(&self, q: u64) -> bool {
        let [a1, a2r, a2i, a3] = self.hyperplane_od;
        let b = self.base_count;
        a1 + 2 * a2r + a3 == q + b && a2r + 1 == a2i + b
    }
}

/// How `count_o6_lines` chooses the lines it inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum O6Mode {
    /// Only the lines joining the nucleus point to the two base points.
    Candidates,
    /// Every line of the solid.
    Full,
}

/// A solid of PG(5, q) with its dual pencil of conics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PencilSolid {
    q: usize,
    solid: Subspace<6>,
    pencil: Subspace<6>,
}

impl PencilSolid {
    pub fn from_solid(field: &Field, solid: Subspace<6>) -> Result<PencilSolid, PencilError> {
        if solid.rank() != 4 {
            return Err(PencilError::NotASolid(solid.rank()));
        }
        let pencil = solid.annihilator(field);
        Ok(PencilSolid {
            q: field.q(),
            solid,
            pencil,
        })
    }

    pub fn from_pencil(field: &Field, pencil: Subspace<6>) -> Result<PencilSolid, PencilError> {
        if pencil.rank() != 2 {
            return Err(PencilError::NotAPencil(pencil.rank()));
        }
        let solid = pencil.annihilator(field);
        Ok(PencilSolid {
            q: field.q(),
            solid,
            pencil,
        })
    }

    /// The solid `delta(c1) ∩ delta(c2)`.
    pub fn from_conics(field: &Field, c1: &Conic, c2: &Conic) -> Result<PencilSolid, PencilError> {
        let pencil =
            Subspace::span(field, &[*c1.coeffs(), *c2.coeffs()]).expect("conics are nonzero");
        if pencil.rank() != 2 {
            return Err(PencilError::ProportionalConics);
        }
        PencilSolid::from_pencil(field, pencil)
    }

    /// Convenience constructor from raw coefficient vectors.
    pub fn from_coefficients(
        field: &Field,
        c1: [Fe; 6],
        c2: [Fe; 6],
    ) -> Result<PencilSolid, PencilError> {
        let c1 = Conic::new(field, c1).map_err(|_| PencilError::ProportionalConics)?;
        let c2 = Conic::new(field, c2).map_err(|_| PencilError::ProportionalConics)?;
        PencilSolid::from_conics(field, &c1, &c2)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn solid(&self) -> &Subspace<6> {
        &self.solid
    }

    pub fn pencil(&self) -> &Subspace<6> {
        &self.pencil
    }

    fn check_field(&self, field: &Field) {
        assert_eq!(
            field.q(),
            self.q,
            "solid over GF({}) used with GF({})",
            self.q,
            field.q()
        );
    }

    /// The q+1 conics `λ c1 + μ c2`, `(λ:μ)` normalized, `c1, c2` the
    /// canonical pencil basis.
    pub fn conics(&self, field: &Field) -> Vec<Conic> {
        self.check_field(field);
        let [c1, c2] = [self.pencil.rows()[0], self.pencil.rows()[1]];
        let mut out: Vec<Conic> = field
            .elements()
            .map(|mu| {
                let v: [Fe; 6] = std::array::from_fn(|i| c1[i] + field.mul(mu, c2[i]));
                Conic::new(field, v).expect("independent")
            })
            .collect();
        out.push(Conic::new(field, c2).expect("nonzero"));
        out
    }

    pub fn packed_solid_rows(&self, h: u32) -> [u32; 4] {
        std::array::from_fn(|i| pack(h, &self.solid.rows()[i]))
    }

    pub fn point_od(&self, geom: &Geometry) -> [u64; 4] {
        self.check_field(&geom.field);
        point_od_packed(geom, &self.packed_solid_rows(geom.h()))
    }

    pub fn hyperplane_od(&self, geom: &Geometry) -> [u64; 4] {
        self.check_field(&geom.field);
        let h = geom.h();
        let c1 = pack(h, &self.pencil.rows()[0]);
        let c2 = pack(h, &self.pencil.rows()[1]);
        let mut od = [0u64; 4];
        for mu in geom.field.elements() {
            od[geom
                .strata
                .conic_kind(c1 ^ geom.scale_packed(mu, c2))
                .index()] += 1;
        }
        od[geom.strata.conic_kind(c2).index()] += 1;
        od
    }

    pub fn distributions(&self, geom: &Geometry) -> OrbitDistributions {
        let point_od = self.point_od(geom);
        OrbitDistributions {
            point_od,
            hyperplane_od: self.hyperplane_od(geom),
            base_count: point_od[0],
        }
    }

    /// Base points of the pencil, as preimages of the rank-1 points of the solid.
    pub fn base_points(&self, field: &Field) -> Vec<PlanePoint> {
        self.check_field(field);
        let mut out: Vec<PlanePoint> = self
            .solid
            .points(field)
            .filter_map(|p| nu_inverse(field, p.coords()).ok())
            .collect();
        out.sort();
        out
    }

    /// Common zeros of the conics of the pencil, by evaluation.
    pub fn common_zeros(&self, field: &Field) -> Vec<PlanePoint> {
        self.check_field(field);
        let conics = self.conics(field);
        let mut out: Vec<PlanePoint> = plane_points(field)
            .filter(|p| {
                conics
                    .iter()
                    .all(|c| c.evaluate(field, p.coords()).is_zero())
            })
            .collect();
        out.sort();
        out
    }

    /// Number of lines of the solid with point-orbit distribution `[1,1,q-1,0]`.
    pub fn count_o6_lines(&self, geom: &Geometry, mode: O6Mode) -> Result<u64, PencilError> {
        self.check_field(&geom.field);
        let q = geom.q() as u64;
        let target = [1, 1, q - 1, 0];
        let h = geom.h();
        match mode {
            O6Mode::Candidates => {
                let od = self.point_od(geom);
                if od != [2, 1, q * q + q - 2, q * q * q] {
                    return Err(PencilError::NotAnO6Candidate(od));
                }
                let mut nucleus = None;
                let mut rank1 = Vec::new();
                for_each_point_packed(geom, &self.packed_solid_rows(h), |w| {
                    match geom.strata.point_type(w) {
                        PointType::Rank2Nucleus => nucleus = Some(w),
                        PointType::Rank1 => rank1.push(w),
                        _ => {}
                    }
                });
                let nucleus = nucleus.expect("one nucleus point");
                Ok(rank1
                    .iter()
                    .filter(|&&p| point_od_packed(geom, &[nucleus, p]) == target)
                    .count() as u64)
            }
            O6Mode::Full => {
                let rows = self.packed_solid_rows(h);
                let mults = geom.multiples(&rows);
                let lines = SubspaceEnumerator::<4>::new(geom.q(), 2);
                let mut count = 0;
                for line in lines.iter() {
                    let packed: Vec<u32> = line
                        .rows()
                        .iter()
                        .map(|coeffs| (0..4).fold(0, |acc, i| acc ^ mults[i][coeffs[i].0 as usize]))
                        .collect();
                    if point_od_packed(geom, &packed) == target {
                        count += 1;
                    }
                }
                Ok(count)
            }
        }
    }

    /// `candidates` when the point-orbit distribution allows it, `full` otherwise.
    pub fn count_o6_lines_auto(&self, geom: &Geometry) -> u64 {
        self.count_o6_lines(geom, O6Mode::Candidates)
            .or_else(|_| self.count_o6_lines(geom, O6Mode::Full))
            .expect("full mode has no precondition")
    }

    /// `q=<q>:` followed by the 24 digits of the canonical basis.
    pub fn to_text(&self) -> String {
        format!("q={}:{}", self.q, self.solid.to_hex())
    }

    /// Parses `q=<q>:<24 hex digits>`. The rows need not be in echelon form
    /// but must span a solid.
    pub fn parse(s: &str) -> Result<PencilSolid, ParseError> {
        let s = s.trim();
        let bad = || ParseError::SolidSyntax(s.to_string());
        let rest = s.strip_prefix("q=").ok_or_else(bad)?;
        let (q, digits) = rest.split_once(':').ok_or_else(bad)?;
        let q: usize = q.parse().map_err(|_| bad())?;
        let field = Field::new(q)?;
        PencilSolid::parse_digits(&field, digits)
    }

    /// Parses the 24 digits of a 4x6 basis over `field`.
    pub fn parse_digits(field: &Field, digits: &str) -> Result<PencilSolid, ParseError> {
        let v = crate::projgeom::parse_hex_vector::<24>(field, digits)?;
        let rows: Vec<[Fe; 6]> = (0..4)
            .map(|i| std::array::from_fn(|j| v[6 * i + j]))
            .collect();
        let solid = Subspace::span(field, &rows)?;
        if solid.rank() != 4 {
            return Err(ParseError::NotASolid(digits.to_string(), solid.rank()));
        }
        Ok(PencilSolid::from_solid(field, solid).expect("rank checked"))
    }

    /// The canonical basis as packed rows, for sweep code.
    pub fn from_packed_rows(geom: &Geometry, rows: &[u32; 4]) -> Result<PencilSolid, PencilError> {
        let rows: Vec<[Fe; 6]> = rows.iter().map(|&w| unpack(geom.h(), w)).collect();
        let solid = Subspace::span(&geom.field, &rows).map_err(|_| PencilError::NotASolid(0))?;
        PencilSolid::from_solid(&geom.field, solid)
    }
}

impl fmt::Display for PencilSolid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Kind tallies of a pencil by direct classification, without lookup tables.
pub fn hyperplane_od_direct(field: &Field, s: &PencilSolid) -> [u64; 4] {
    let mut od = [0; 4];
    for c in s.conics(field) {
        od[crate::veronese::classify_conic_by_count(field, c.coeffs()).index()] += 1;
    }
    od
}

/// Point tallies by direct rank computation, without lookup tables.
pub fn point_od_direct(field: &Field, s: &PencilSolid) -> [u64; 4] {
    let mut od = [0; 4];
    for p in s.solid().points(field) {
        od[crate::veronese::point_type(field, p.coords()).index()] += 1;
    }
    od
}
