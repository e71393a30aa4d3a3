//! 3x3 matrices over GF(q).

use crate::field::{Fe, Field};

/// A 3x3 matrix, row-major.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3(pub [[Fe; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([
        [Fe::ONE, Fe::ZERO, Fe::ZERO],
        [Fe::ZERO, Fe::ONE, Fe::ZERO],
        [Fe::ZERO, Fe::ZERO, Fe::ONE],
    ]);

    pub fn from_rows(rows: [[u8; 3]; 3]) -> Mat3 {
        Mat3(rows.map(|r| r.map(Fe)))
    }

    pub fn diag(a: Fe, b: Fe, c: Fe) -> Mat3 {
        Mat3([
            [a, Fe::ZERO, Fe::ZERO],
            [Fe::ZERO, b, Fe::ZERO],
            [Fe::ZERO, Fe::ZERO, c],
        ])
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.0[i][j]
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i])
        }))
    }

    pub fn mul(&self, field: &Field, other: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(Fe::ZERO, |acc, k| {
                    acc + field.mul(self.0[i][k], other.0[k][j])
                })
            })
        }))
    }

    pub fn apply(&self, field: &Field, v: &[Fe; 3]) -> [Fe; 3] {
        std::array::from_fn(|i| (0..3).fold(Fe::ZERO, |acc, k| acc + field.mul(self.0[i][k], v[k])))
    }

    pub fn det(&self, field: &Field) -> Fe {
        let m = &self.0;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            field.mul(m[1][a], m[2][b]) + field.mul(m[1][c], m[2][d])
        };
        field.mul(m[0][0], minor(1, 2, 2, 1))
            + field.mul(m[0][1], minor(0, 2, 2, 0))
            + field.mul(m[0][2], minor(0, 1, 1, 0))
    }

    pub fn is_invertible(&self, field: &Field) -> bool {
        !self.det(field).is_zero()
    }

    /// Inverse via the adjugate (characteristic 2, so cofactor signs vanish).
    pub fn inverse(&self, field: &Field) -> Option<Mat3> {
        let d = self.det(field);
        let dinv = field.inv(d)?;
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            field.mul(m[r0][c0], m[r1][c1]) + field.mul(m[r0][c1], m[r1][c0])
        };
        let others = |i: usize| match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        Some(Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                // adj[i][j] = cofactor of entry (j, i)
                let (r0, r1) = others(j);
                let (c0, c1) = others(i);
                field.mul(dinv, cof(r0, r1, c0, c1))
            })
        })))
    }

    pub fn scale(&self, field: &Field, s: Fe) -> Mat3 {
        Mat3(self.0.map(|r| r.map(|x| field.mul(s, x))))
    }

    /// Scales so the first nonzero entry in row-major order is 1.
    pub fn normalized(&self, field: &Field) -> Option<Mat3> {
        let lead = *self.0.iter().flatten().find(|x| !x.is_zero())?;
        Some(self.scale(field, field.inv(lead)?))
    }

    /// Whether the matrix is a nonzero scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let d = self.0[0][0];
        !d.is_zero()
            && (0..3).all(|i| (0..3).all(|j| self.0[i][j] == if i == j { d } else { Fe::ZERO }))
    }

    /// Nine hex digits, row-major.
    pub fn to_hex(&self) -> String {
        self.0.iter().flatten().map(|x| x.to_hex()).collect()
    }

    pub fn parse_hex(field: &Field, s: &str) -> Result<Mat3, crate::ParseError> {
        let v = crate::projgeom::parse_hex_vector::<9>(field, s)?;
        Ok(Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| v[3 * i + j])
        })))
    }
}
