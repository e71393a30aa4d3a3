//! The Veronese map PG(2,q) -> PG(5,q), the rank stratification of PG(5,q),
//! conics of PG(2,q) and their correspondence with hyperplanes of PG(5,q),
//! and the lift of PGL(3,q) to PG(5,q).
//!
//! Coordinates of PG(5,q) are `(Y0..Y5) = (m00, m01, m02, m11, m12, m22)` of
//! the symmetric matrix of a point, and a conic `sum a_ij X_i X_j` has its
//! coefficients in the same order, so the conic/hyperplane correspondence is
//! the identity on coefficient vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::mat3::Mat3;
use crate::projgeom::{self, dot, normalize, pack, unpack, PlanePoint, Point, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VeroneseError {
    #[error("matrix is singular")]
    Singular,
    #[error("expected a hyperplane (rank 5), got a subspace of rank {0}")]
    NotAHyperplane(usize),
    #[error("the zero form does not define a conic")]
    ZeroConic,
    #[error("point is not on the Veronese surface")]
    NotRankOne,
}

/// The symmetric 3x3 matrix of a point of PG(5, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymMat3(pub [Fe; 6]);

impl SymMat3 {
    pub fn from_coords(coords: &[Fe; 6]) -> Self {
        SymMat3(*coords)
    }

    pub fn coords(&self) -> &[Fe; 6] {
        &self.0
    }

    pub fn to_full(&self) -> [[Fe; 3]; 3] {
        let [m00, m01, m02, m11, m12, m22] = self.0;
        [[m00, m01, m02], [m01, m11, m12], [m02, m12, m22]]
    }

    pub fn from_full(m: &[[Fe; 3]; 3]) -> Self {
        debug_assert!(m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1]);
        SymMat3([m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]])
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut rows = self.to_full();
        projgeom::row_reduce(field, &mut rows)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.0[0].is_zero() && self.0[3].is_zero() && self.0[5].is_zero()
    }

    /// `A M A^T`.
    pub fn congruent(&self, field: &Field, a: &Mat3) -> SymMat3 {
        let m = Mat3(self.to_full());
        let out = a.mul(field, &m).mul(field, &a.transpose());
        SymMat3::from_full(&out.0)
    }
}

/// The four K-orbits on points of PG(5, q), q even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointType {
    /// Rank 1: the Veronese surface.
    Rank1,
    /// Rank 2 inside the nucleus plane (zero diagonal).
    Rank2Nucleus,
    /// Rank 2 outside the nucleus plane.
    Rank2Secant,
    Rank3,
}

impl PointType {
    pub const ALL: [PointType; 4] = [
        PointType::Rank1,
        PointType::Rank2Nucleus,
        PointType::Rank2Secant,
        PointType::Rank3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

pub fn point_type(field: &Field, coords: &[Fe; 6]) -> PointType {
    let m = SymMat3::from_coords(coords);
    match m.rank(field) {
        1 => PointType::Rank1,
        2 if m.has_zero_diagonal() => PointType::Rank2Nucleus,
        2 => PointType::Rank2Secant,
        3 => PointType::Rank3,
        _ => panic!("point_type called on the zero vector"),
    }
}

/// Expected sizes of the point orbits `[rank 1, nucleus, secant, rank 3]`.
pub fn point_census_formula(q: u64) -> [u64; 4] {
    [
        q * q + q + 1,
        q * q + q + 1,
        (q * q - 1) * (q * q + q + 1),
        q.pow(5) - q * q,
    ]
}

/// The Veronese map `(u0,u1,u2) -> (u0^2, u0u1, u0u2, u1^2, u1u2, u2^2)`.
pub fn nu(field: &Field, p: &PlanePoint) -> Point {
    let [u0, u1, u2] = *p.coords();
    let m = |a, b| field.mul(a, b);
    Point::new(
        field,
        [
            m(u0, u0),
            m(u0, u1),
            m(u0, u2),
            m(u1, u1),
            m(u1, u2),
            m(u2, u2),
        ],
    )
    .expect("image of a nonzero vector is nonzero")
}

/// Preimage of a rank-1 point: the square roots of the diagonal.
pub fn nu_inverse(field: &Field, coords: &[Fe; 6]) -> Result<PlanePoint, VeroneseError> {
    if point_type(field, coords) != PointType::Rank1 {
        return Err(VeroneseError::NotRankOne);
    }
    let u = [
        field.sqrt(coords[0]),
        field.sqrt(coords[3]),
        field.sqrt(coords[5]),
    ];
    PlanePoint::new(field, u).map_err(|_| VeroneseError::NotRankOne)
}

/// Kind of a conic of PG(2, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConicKind {
    /// A double line (hyperplane orbit H1).
    DoubleLine,
    /// Two distinct lines over GF(q) (H2r).
    RealPair,
    /// Two conjugate lines over GF(q^2) (H2i).
    ImaginaryPair,
    /// Nonsingular (H3).
    Nonsingular,
}

impl ConicKind {
    /// Order used by hyperplane orbit distributions `[a1, a2r, a2i, a3]`.
    pub const ALL: [ConicKind; 4] = [
        ConicKind::DoubleLine,
        ConicKind::RealPair,
        ConicKind::ImaginaryPair,
        ConicKind::Nonsingular,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn code(self) -> &'static str {
        match self {
            ConicKind::Nonsingular => "N",
            ConicKind::DoubleLine => "L2",
            ConicKind::RealPair => "R",
            ConicKind::ImaginaryPair => "I",
        }
    }

    /// Number of GF(q)-rational points of a conic of this kind.
    pub fn rational_points(self, q: u64) -> u64 {
        match self {
            ConicKind::Nonsingular | ConicKind::DoubleLine => q + 1,
            ConicKind::RealPair => 2 * q + 1,
            ConicKind::ImaginaryPair => 1,
        }
    }
}

impl fmt::Display for ConicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ConicKind {
    type Err = crate::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConicKind::ALL
            .into_iter()
            .find(|k| k.code() == s)
            .ok_or_else(|| crate::ParseError::Token(s.to_string()))
    }
}

/// Expected hyperplane-class sizes `[|H1|, |H2r|, |H2i|, |H3|]`.
pub fn hyperplane_census_formula(q: u64) -> [u64; 4] {
    let plane = q * q + q + 1;
    [
        plane,
        q * (q + 1) * plane / 2,
        q * (q - 1) * plane / 2,
        q.pow(5) - q * q,
    ]
}

/// `a00 a12^2 + a11 a02^2 + a22 a01^2 + a01 a02 a12`; nonzero iff nonsingular.
pub fn discriminant(field: &Field, a: &[Fe; 6]) -> Fe {
    let [a00, a01, a02, a11, a12, a22] = *a;
    let m = |x, y| field.mul(x, y);
    m(a00, field.square(a12))
        + m(a11, field.square(a02))
        + m(a22, field.square(a01))
        + m(m(a01, a02), a12)
}

/// A conic of PG(2, q), coefficients `(a00, a01, a02, a11, a12, a22)` scaled
/// so the first nonzero one is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conic([Fe; 6]);

impl Conic {
    pub fn new(field: &Field, coeffs: [Fe; 6]) -> Result<Conic, VeroneseError> {
        normalize(field, &coeffs)
            .map(Conic)
            .ok_or(VeroneseError::ZeroConic)
    }

    pub fn coeffs(&self) -> &[Fe; 6] {
        &self.0
    }

    pub fn evaluate(&self, field: &Field, p: &[Fe; 3]) -> Fe {
        evaluate_form(field, &self.0, p)
    }

    pub fn kind(&self, field: &Field) -> ConicKind {
        classify_conic(field, &self.0)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|c| c.to_hex()).collect()
    }

    pub fn parse_hex(field: &Field, s: &str) -> Result<Conic, crate::ParseError> {
        let v = projgeom::parse_hex_vector::<6>(field, s)?;
        Ok(Conic::new(field, v)?)
    }

    /// Rational points, by evaluating at every point of PG(2, q).
    pub fn rational_points(&self, field: &Field) -> Vec<PlanePoint> {
        plane_points(field)
            .filter(|p| self.evaluate(field, p.coords()).is_zero())
            .collect()
    }
}

/// Value of the quadratic form with coefficients `a` at `p`.
pub fn evaluate_form(field: &Field, a: &[Fe; 6], p: &[Fe; 3]) -> Fe {
    let [x0, x1, x2] = *p;
    let m = |x, y| field.mul(x, y);
    m(a[0], m(x0, x0))
        + m(a[1], m(x0, x1))
        + m(a[2], m(x0, x2))
        + m(a[3], m(x1, x1))
        + m(a[4], m(x1, x2))
        + m(a[5], m(x2, x2))
}

pub fn plane_points(field: &Field) -> impl Iterator<Item = PlanePoint> + '_ {
    projgeom::normalized_coefficients(field, 3)
        .map(|c| PlanePoint::new(field, [c[0], c[1], c[2]]).expect("nonzero"))
}

/// Discriminant test, then the double-line test, then (for line pairs) the
/// number of points in which the conic meets a line missing its vertex.
pub fn classify_conic(field: &Field, a: &[Fe; 6]) -> ConicKind {
    if !discriminant(field, a).is_zero() {
        return ConicKind::Nonsingular;
    }
    let [a00, a01, a02, a11, a12, a22] = *a;
    if a01.is_zero() && a02.is_zero() && a12.is_zero() {
        return ConicKind::DoubleLine;
    }
    // The vertex (a12, a02, a01) spans the radical of the polar form. Pick the
    // coordinate line X_k = 0 with the vertex off it and restrict the form.
    let vertex = [a12, a02, a01];
    let k = vertex
        .iter()
        .position(|c| !c.is_zero())
        .expect("some off-diagonal coefficient is nonzero");
    let (alpha, beta, gamma) = match k {
        0 => (a11, a12, a22), // line X0 = 0, spanned by e1, e2
        1 => (a00, a02, a22), // X1 = 0: e0, e2
        _ => (a00, a01, a11), // X2 = 0: e0, e1
    };
    // Projective roots of alpha s^2 + beta s t + gamma t^2; beta != 0 here,
    // since the restriction of a line pair to a line off its vertex is never
    // a square.
    let roots = if alpha.is_zero() {
        2 // (1:0) and the root of beta s + gamma t
    } else {
        field
            .quadratic_root_count(alpha, beta, gamma)
            .expect("alpha != 0")
    };
    if roots == 2 {
        ConicKind::RealPair
    } else {
        ConicKind::ImaginaryPair
    }
}

/// Kind decided from the discriminant, the double-line test and the number
/// of rational points (2q+1 for a real pair, 1 for an imaginary pair).
pub fn classify_conic_by_count(field: &Field, a: &[Fe; 6]) -> ConicKind {
    if !discriminant(field, a).is_zero() {
        return ConicKind::Nonsingular;
    }
    if a[1].is_zero() && a[2].is_zero() && a[4].is_zero() {
        return ConicKind::DoubleLine;
    }
    let q = field.q() as u64;
    let count = plane_points(field)
        .filter(|p| evaluate_form(field, a, p.coords()).is_zero())
        .count() as u64;
    if count == 2 * q + 1 {
        ConicKind::RealPair
    } else if count == 1 {
        ConicKind::ImaginaryPair
    } else {
        panic!("singular conic {a:?} has {count} rational points")
    }
}

/// The hyperplane of PG(5, q) whose points are the images of the conic's points.
pub fn delta(field: &Field, c: &Conic) -> Subspace<6> {
    Subspace::span(field, &[*c.coeffs()])
        .expect("conics are nonzero")
        .annihilator(field)
}

pub fn delta_inv(field: &Field, hyperplane: &Subspace<6>) -> Result<Conic, VeroneseError> {
    if hyperplane.rank() != 5 {
        return Err(VeroneseError::NotAHyperplane(hyperplane.rank()));
    }
    let form = hyperplane.annihilator(field);
    Conic::new(field, form.rows()[0])
}

/// The projectivity of PG(5, q) induced by `A`: `M_P -> A M_P A^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    a: Mat3,
    /// Image of the i-th coordinate vector.
    images: [[Fe; 6]; 6],
}

impl Lift {
    pub fn new(field: &Field, a: &Mat3) -> Result<Lift, VeroneseError> {
        if !a.is_invertible(field) {
            return Err(VeroneseError::Singular);
        }
        let images = std::array::from_fn(|i| {
            let mut e = [Fe::ZERO; 6];
            e[i] = Fe::ONE;
            *SymMat3::from_coords(&e).congruent(field, a).coords()
        });
        Ok(Lift { a: *a, images })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.a
    }

    /// Images of the six coordinate vectors.
    pub fn images(&self) -> &[[Fe; 6]; 6] {
        &self.images
    }

    pub fn apply(&self, field: &Field, v: &[Fe; 6]) -> [Fe; 6] {
        let mut out = [Fe::ZERO; 6];
        for (&c, img) in v.iter().zip(&self.images) {
            if !c.is_zero() {
                for (o, &x) in out.iter_mut().zip(img) {
                    *o += field.mul(c, x);
                }
            }
        }
        out
    }

    pub fn apply_point(&self, field: &Field, p: &Point) -> Point {
        Point::new(field, self.apply(field, p.coords())).expect("lift is invertible")
    }

    pub fn apply_subspace(&self, field: &Field, s: &Subspace<6>) -> Subspace<6> {
        let rows: Vec<[Fe; 6]> = s.rows().iter().map(|r| self.apply(field, r)).collect();
        Subspace::span(field, &rows).expect("lift is invertible")
    }
}

/// Point types and conic kinds of every vector of GF(q)^6, indexed by the
/// packed vector. Entry 0 (the zero vector) is meaningless.
#[derive(Clone)]
pub struct Strata {
    h: u32,
    point_types: Vec<PointType>,
    conic_kinds: Vec<ConicKind>,
}

impl Strata {
    pub fn new(field: &Field) -> Strata {
        let h = field.degree();
        let size = 1usize << (6 * h);
        let mut point_types = Vec::with_capacity(size);
        let mut conic_kinds = Vec::with_capacity(size);
        point_types.push(PointType::Rank3);
        conic_kinds.push(ConicKind::Nonsingular);
        for w in 1..size as u32 {
            let v = unpack::<6>(h, w);
            point_types.push(point_type(field, &v));
            conic_kinds.push(classify_conic(field, &v));
        }
        Strata {
            h,
            point_types,
            conic_kinds,
        }
    }

    #[inline]
    pub fn point_type(&self, packed: u32) -> PointType {
        self.point_types[packed as usize]
    }

    #[inline]
    pub fn conic_kind(&self, packed: u32) -> ConicKind {
        self.conic_kinds[packed as usize]
    }

    pub fn point_type_of(&self, v: &[Fe; 6]) -> PointType {
        self.point_type(pack(self.h, v))
    }

    pub fn conic_kind_of(&self, v: &[Fe; 6]) -> ConicKind {
        self.conic_kind(pack(self.h, v))
    }
}

/// Whether `p` lies on the hyperplane with linear form `form`.
pub fn on_hyperplane(field: &Field, form: &[Fe; 6], p: &[Fe; 6]) -> bool {
    dot(field, form, p).is_zero()
}
