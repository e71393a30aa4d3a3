//! Arithmetic in GF(2^h) for 1 <= h <= 4.
//!
//! Elements are bitstrings of polynomials over GF(2) reduced modulo a fixed
//! irreducible polynomial. All products go through a full q x q table that is
//! filled once from a carry-less multiply, so a [`Field`] is a small `Copy`
//! value that can be handed to any number of workers.

use std::fmt;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 4;

/// Default moduli, indexed by `h`. Bit `i` is the coefficient of `x^i`.
const DEFAULT_MODULI: [u32; 5] = [0, 0b11, 0b111, 0b1011, 0b10011];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported field order {0}: expected q = 2^h with 1 <= h <= 4")]
    UnsupportedOrder(usize),
    #[error("modulus {modulus:#b} is not an irreducible polynomial of degree {degree}")]
    BadModulus { degree: u32, modulus: u32 },
    #[error("leading coefficient of the quadratic is zero")]
    ZeroLeadingCoefficient,
    #[error("{0:?} is not an element of GF({1})")]
    NotAnElement(u8, usize),
    #[error("invalid field element digit {0:?}")]
    BadDigit(char),
}

/// An element of GF(2^h), stored as the bitstring of its polynomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u8);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Single lowercase hex digit.
    pub fn to_hex(self) -> char {
        char::from_digit(self.0 as u32, 16).expect("field elements fit in one hex digit")
    }
}

/// Serialized as its hex digit.
impl serde::Serialize for Fe {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.to_hex())
    }
}

// Characteristic 2: addition is XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// Carry-less product of `a` and `b`, reduced modulo `modulus` of degree `h`.
pub fn clmul_reduce(a: u32, b: u32, h: u32, modulus: u32) -> u32 {
    let mut acc = 0u32;
    for i in 0..h {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
    }
    for bit in (h..2 * h).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= modulus << (bit - h);
        }
    }
    acc
}

/// Roots of a quadratic over GF(q): none, one (a double root) or two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticRoots {
    None,
    One(Fe),
    Two(Fe, Fe),
}

impl QuadraticRoots {
    pub fn len(&self) -> usize {
        match self {
            QuadraticRoots::None => 0,
            QuadraticRoots::One(_) => 1,
            QuadraticRoots::Two(..) => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, QuadraticRoots::None)
    }

    /// The roots in ascending order.
    pub fn to_vec(&self) -> Vec<Fe> {
        match *self {
            QuadraticRoots::None => vec![],
            QuadraticRoots::One(x) => vec![x],
            QuadraticRoots::Two(x, y) => vec![x.min(y), x.max(y)],
        }
    }
}

/// The field GF(2^h) with its arithmetic tables.
#[derive(Clone, Copy)]
pub struct Field {
    h: u32,
    modulus: u32,
    mul: [[u8; 16]; 16],
    inv: [u8; 16],
    sqrt: [u8; 16],
    trace: [u8; 16],
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q())
            .field("modulus", &format_args!("{:#b}", self.modulus))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn is_irreducible(h: u32, modulus: u32) -> bool {
    if modulus >> h != 1 {
        return false;
    }
    // Trial division by every polynomial of degree 1..=h/2.
    let degree = |p: u32| 31 - p.leading_zeros();
    for d in 1..=h / 2 {
        for p in (1u32 << d)..(1u32 << (d + 1)) {
            let mut r = modulus;
            while r != 0 && degree(r) >= d {
                r ^= p << (degree(r) - d);
            }
            if r == 0 {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(q) with the default modulus: x+1, x^2+x+1, x^3+x+1 or x^4+x+1.
    pub fn new(q: usize) -> Result<Field, FieldError> {
        let h = match q {
            2 => 1,
            4 => 2,
            8 => 3,
            16 => 4,
            _ => return Err(FieldError::UnsupportedOrder(q)),
        };
        Field::with_modulus(h, DEFAULT_MODULI[h as usize])
    }

    /// GF(2^h) defined by an explicit modulus (bit `i` = coefficient of `x^i`).
    pub fn with_modulus(h: u32, modulus: u32) -> Result<Field, FieldError> {
        if h == 0 || h > MAX_DEGREE {
            return Err(FieldError::UnsupportedOrder(1usize << h.min(31)));
        }
        if !is_irreducible(h, modulus) {
            return Err(FieldError::BadModulus { degree: h, modulus });
        }
        let q = 1usize << h;
        let mut field = Field {
            h,
            modulus,
            mul: [[0; 16]; 16],
            inv: [0; 16],
            sqrt: [0; 16],
            trace: [0; 16],
        };
        for a in 0..q {
            for b in 0..q {
                field.mul[a][b] = clmul_reduce(a as u32, b as u32, h, modulus) as u8;
            }
        }
        for a in 1..q {
            field.inv[a] = (1..q)
                .find(|&b| field.mul[a][b] == 1)
                .expect("nonzero elements are invertible") as u8;
        }
        for a in 0..q {
            let s = field.mul[a][a] as usize;
            field.sqrt[s] = a as u8;
            let mut t = a as u8;
            let mut power = a as u8;
            for _ in 1..h {
                power = field.mul[power as usize][power as usize];
                t ^= power;
            }
            debug_assert!(t <= 1);
            field.trace[a] = t;
        }
        Ok(field)
    }

    #[inline]
    pub fn q(&self) -> usize {
        1 << self.h
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// All elements in ascending bitstring order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q() as u8).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q() as u8).map(Fe)
    }

    pub fn element(&self, bits: u8) -> Result<Fe, FieldError> {
        if (bits as usize) < self.q() {
            Ok(Fe(bits))
        } else {
            Err(FieldError::NotAnElement(bits, self.q()))
        }
    }

    pub fn parse_digit(&self, c: char) -> Result<Fe, FieldError> {
        let d = c
            .to_digit(16)
            .filter(|_| !c.is_ascii_uppercase())
            .ok_or(FieldError::BadDigit(c))?;
        self.element(d as u8)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.0 as usize][b.0 as usize])
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (!a.is_zero()).then(|| Fe(self.inv[a.0 as usize]))
    }

    /// `a / b`; panics on division by zero.
    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b).expect("division by zero in GF(2^h)"))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// The unique square root (squaring is a bijection in characteristic 2).
    #[inline]
    pub fn sqrt(&self, a: Fe) -> Fe {
        Fe(self.sqrt[a.0 as usize])
    }

    /// Absolute trace to GF(2): `a + a^2 + ... + a^(2^(h-1))`, as 0 or 1.
    #[inline]
    pub fn trace(&self, a: Fe) -> u8 {
        self.trace[a.0 as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> usize {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut x = a;
        let mut k = 1;
        while x != Fe::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// First generator of the multiplicative group in ascending order.
    pub fn primitive_element(&self) -> Fe {
        self.nonzero()
            .find(|&a| self.order(a) == self.q() - 1)
            .expect("GF(q)* is cyclic")
    }

    /// First element of multiplicative order 3, if the field has one (h even).
    pub fn primitive_cube_root_of_unity(&self) -> Option<Fe> {
        self.nonzero().find(|&a| self.order(a) == 3)
    }

    pub fn is_cube(&self, a: Fe) -> bool {
        self.elements().any(|x| self.mul(self.square(x), x) == a)
    }

    /// Solves `y^2 + y = c` assuming `trace(c) == 0`; the other root is `y + 1`.
    fn artin_schreier_root(&self, c: Fe) -> Fe {
        // y = sum_i (sum_{j>i} z^(2^j)) c^(2^i) for any z of trace 1.
        let z = self
            .elements()
            .find(|&z| self.trace(z) == 1)
            .expect("trace is onto GF(2)");
        let h = self.h as usize;
        let mut z_pows = Vec::with_capacity(h);
        let mut c_pows = Vec::with_capacity(h);
        let (mut zp, mut cp) = (z, c);
        for _ in 0..h {
            z_pows.push(zp);
            c_pows.push(cp);
            zp = self.square(zp);
            cp = self.square(cp);
        }
        let mut y = Fe::ZERO;
        for i in 0..h {
            let coeff = z_pows[i + 1..].iter().fold(Fe::ZERO, |acc, &t| acc + t);
            y += self.mul(coeff, c_pows[i]);
        }
        y
    }

    /// Roots of `alpha x^2 + beta x + gamma` in GF(q).
    pub fn solve_quadratic(
        &self,
        alpha: Fe,
        beta: Fe,
        gamma: Fe,
    ) -> Result<QuadraticRoots, FieldError> {
        if alpha.is_zero() {
            return Err(FieldError::ZeroLeadingCoefficient);
        }
        if beta.is_zero() {
            return Ok(QuadraticRoots::One(self.sqrt(self.div(gamma, alpha))));
        }
        let c = self.div(self.mul(alpha, gamma), self.square(beta));
        if self.trace(c) == 1 {
            return Ok(QuadraticRoots::None);
        }
        // x = (beta / alpha) y turns the equation into y^2 + y + c = 0.
        let y = self.artin_schreier_root(c);
        let scale = self.div(beta, alpha);
        let (x0, x1) = (self.mul(scale, y), self.mul(scale, y + Fe::ONE));
        Ok(QuadraticRoots::Two(x0.min(x1), x0.max(x1)))
    }

    /// Number of roots in GF(q), straight from the trace criterion.
    pub fn quadratic_root_count(
        &self,
        alpha: Fe,
        beta: Fe,
        gamma: Fe,
    ) -> Result<usize, FieldError> {
        if alpha.is_zero() {
            return Err(FieldError::ZeroLeadingCoefficient);
        }
        if beta.is_zero() {
            return Ok(1);
        }
        let c = self.div(self.mul(alpha, gamma), self.square(beta));
        Ok(if self.trace(c) == 0 { 2 } else { 0 })
    }

    /// First nonzero `gamma` with `Tr(1/gamma) = 1`.
    pub fn find_gamma_inv_trace(&self) -> Fe {
        self.nonzero()
            .find(|&g| self.trace(self.div(Fe::ONE, g)) == 1)
            .expect("half of GF(q)* has inverse trace 1")
    }

    /// First nonzero `gamma` with `Tr(gamma) = 1`.
    pub fn find_gamma_trace(&self) -> Fe {
        self.nonzero()
            .find(|&g| self.trace(g) == 1)
            .expect("trace is onto GF(2)")
    }

    /// Whether `b l^3 + c l + 1` has no root in GF(q).
    pub fn cubic_has_no_root(&self, b: Fe, c: Fe) -> bool {
        self.elements().all(|l| {
            let l3 = self.mul(self.square(l), l);
            !(self.mul(b, l3) + self.mul(c, l) + Fe::ONE).is_zero()
        })
    }

    /// First `(b, c)` with `b != 0` such that `b l^3 + c l + 1` is irreducible.
    ///
    /// The search runs over `c` ascending (starting at 0) with `b` ascending
    /// inside, so the `c = 0`, `b` a non-cube solution is found whenever one
    /// exists.
    pub fn find_irreducible_cubic_params(&self) -> (Fe, Fe) {
        for c in self.elements() {
            for b in self.nonzero() {
                if self.cubic_has_no_root(b, c) {
                    return (b, c);
                }
            }
        }
        unreachable!("irreducible trinomials b l^3 + c l + 1 exist over every GF(2^h)")
    }
}
