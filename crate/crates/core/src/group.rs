//! PGL(3, q) acting on solids: enumeration, stabilisers, structural
//! profiles of stabilisers, and the fifteen orbit representatives.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{pgl3_order, stabilizer_name, stabilizer_order, OrbitLabel};
use crate::field::{Fe, Field};
use crate::mat3::Mat3;
use crate::pencil::{Geometry, PencilSolid};
use crate::projgeom::{pack, unpack};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix is singular")]
    Singular,
    #[error("no explicit generators are recorded for {0}")]
    NoGenerators(OrbitLabel),
    #[error("parameter search failed: {0}")]
    ParameterSearch(&'static str),
}

/// An element of PGL(3, q): an invertible matrix scaled so that its first
/// nonzero entry (row-major) is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Mat3);

impl GroupElement {
    pub fn new(field: &Field, a: &Mat3) -> Result<GroupElement, GroupError> {
        if !a.is_invertible(field) {
            return Err(GroupError::Singular);
        }
        Ok(GroupElement(a.normalized(field).expect("nonzero")))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn mul(&self, field: &Field, other: &GroupElement) -> GroupElement {
        GroupElement(
            self.0
                .mul(field, &other.0)
                .normalized(field)
                .expect("invertible"),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Mat3::IDENTITY
    }

    /// Order in PGL(3, q).
    pub fn order(&self, field: &Field) -> u64 {
        let mut x = self.0;
        let mut k = 1;
        while !x.is_scalar() {
            x = x.mul(field, &self.0);
            k += 1;
        }
        k
    }

    pub fn commutes_with(&self, field: &Field, other: &GroupElement) -> bool {
        self.mul(field, other) == other.mul(field, self)
    }

    /// The image of a solid under the lift of this element.
    pub fn apply(&self, field: &Field, s: &PencilSolid) -> PencilSolid {
        let lift = crate::veronese::Lift::new(field, &self.0).expect("invertible");
        PencilSolid::from_solid(field, lift.apply_subspace(field, s.solid()))
            .expect("rank is preserved")
    }
}

fn cross(field: &Field, a: &[Fe; 3], b: &[Fe; 3]) -> [Fe; 3] {
    let m = |x, y| field.mul(x, y);
    [
        m(a[1], b[2]) + m(a[2], b[1]),
        m(a[0], b[2]) + m(a[2], b[0]),
        m(a[0], b[1]) + m(a[1], b[0]),
    ]
}

fn dot3(field: &Field, a: &[Fe; 3], b: &[Fe; 3]) -> Fe {
    (0..3).fold(Fe::ZERO, |acc, i| acc + field.mul(a[i], b[i]))
}

/// Normalized nonzero vectors of GF(q)^3; the possible first rows.
pub fn first_rows(field: &Field) -> Vec<[Fe; 3]> {
    crate::projgeom::normalized_coefficients(field, 3)
        .map(|c| [c[0], c[1], c[2]])
        .collect()
}

/// Calls `f` on every normalized invertible matrix with first row `r1`.
pub fn for_each_with_first_row(field: &Field, r1: [Fe; 3], mut f: impl FnMut(&Mat3)) {
    let h = field.degree();
    let n = 1u32 << (3 * h);
    for w2 in 0..n {
        let r2 = unpack::<3>(h, w2);
        let c = cross(field, &r1, &r2);
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        for w3 in 0..n {
            let r3 = unpack::<3>(h, w3);
            if !dot3(field, &r3, &c).is_zero() {
                f(&Mat3([r1, r2, r3]));
            }
        }
    }
}

/// Every element of PGL(3, q) exactly once.
pub fn enumerate_pgl3(field: &Field) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(pgl3_order(field.q() as u64) as usize);
    for r1 in first_rows(field) {
        for_each_with_first_row(field, r1, |a| out.push(GroupElement(*a)));
    }
    out
}

/// Images of the six coordinate vectors of PG(5, q) under `M -> A M A^T`.
#[inline]
fn lift_images(field: &Field, a: &Mat3) -> [[Fe; 6]; 6] {
    const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let m = &a.0;
    std::array::from_fn(|k| {
        let (i, j) = PAIRS[k];
        std::array::from_fn(|c| {
            let (r, s) = PAIRS[c];
            if i == j {
                field.mul(m[r][i], m[s][i])
            } else {
                field.mul(m[r][i], m[s][j]) + field.mul(m[r][j], m[s][i])
            }
        })
    })
}

/// A solid prepared for fast stabiliser tests: its basis rows as sparse
/// coefficient lists and a bitset of its vectors.
struct Target {
    rows: Vec<Vec<(usize, Fe)>>,
    member: Vec<u64>,
}

impl Target {
    fn new(geom: &Geometry, s: &PencilSolid) -> Target {
        let h = geom.h();
        let mut member = vec![0u64; (1usize << (6 * h)).div_ceil(64)];
        let packed = s.packed_solid_rows(h);
        let mults = geom.multiples(&packed);
        let q = geom.q();
        for idx in 0..q.pow(4) {
            let mut w = 0;
            let mut k = idx;
            for m in &mults {
                w ^= m[k % q];
                k /= q;
            }
            member[(w / 64) as usize] |= 1 << (w % 64);
        }
        let rows = s
            .solid()
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, &c)| (i, c))
                    .collect()
            })
            .collect();
        Target { rows, member }
    }

    #[inline]
    fn fixed_by(&self, field: &Field, h: u32, images: &[[Fe; 6]; 6]) -> bool {
        self.rows.iter().all(|row| {
            let mut v = [Fe::ZERO; 6];
            for &(i, c) in row {
                for (o, &x) in v.iter_mut().zip(&images[i]) {
                    *o += field.mul(c, x);
                }
            }
            let w = pack(h, &v);
            self.member[(w / 64) as usize] >> (w % 64) & 1 == 1
        })
    }
}

/// Stabilisers of several solids in one pass over PGL(3, q). Each list is
/// sorted.
pub fn stabilizers(geom: &Geometry, solids: &[PencilSolid]) -> Vec<Vec<GroupElement>> {
    let field = geom.field;
    let h = geom.h();
    let targets: Vec<Target> = solids.iter().map(|s| Target::new(geom, s)).collect();
    let mut found = first_rows(&field)
        .into_par_iter()
        .map(|r1| {
            let mut local = vec![Vec::new(); targets.len()];
            for_each_with_first_row(&field, r1, |a| {
                let images = lift_images(&field, a);
                for (t, out) in targets.iter().zip(local.iter_mut()) {
                    if t.fixed_by(&field, h, &images) {
                        out.push(GroupElement(*a));
                    }
                }
            });
            local
        })
        .reduce(
            || vec![Vec::new(); targets.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.extend(y);
                }
                a
            },
        );
    for list in &mut found {
        list.sort();
    }
    found
}

pub fn stabilizer(geom: &Geometry, s: &PencilSolid) -> Vec<GroupElement> {
    stabilizers(geom, std::slice::from_ref(s))
        .pop()
        .expect("one solid")
}

/// Groups above this order are not profiled beyond order and abelianness.
pub const PROFILE_LIMIT: usize = 4096;

/// Order, abelianness, element orders and centre of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub order: u64,
    pub abelian: bool,
    pub order_multiset: BTreeMap<u64, u64>,
    /// Only for groups of order at most `PROFILE_LIMIT`.
    pub center_order: Option<u64>,
}

/// Minimal interface for profiling: elements, multiplication, identity test.
trait FiniteGroup {
    type E: Clone + Eq;
    fn elements(&self) -> &[Self::E];
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_identity(&self, a: &Self::E) -> bool;

    fn element_order(&self, a: &Self::E) -> u64 {
        let mut x = a.clone();
        let mut k = 1;
        while !self.is_identity(&x) {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    fn commute(&self, a: &Self::E, b: &Self::E) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    fn profile(&self) -> Profile {
        let els = self.elements();
        let mut order_multiset = BTreeMap::new();
        for e in els {
            *order_multiset.entry(self.element_order(e)).or_insert(0) += 1;
        }
        let abelian = els
            .iter()
            .enumerate()
            .all(|(i, a)| els[i + 1..].iter().all(|b| self.commute(a, b)));
        let center_order = (els.len() <= PROFILE_LIMIT).then(|| {
            els.iter()
                .filter(|a| els.iter().all(|b| self.commute(a, b)))
                .count() as u64
        });
        Profile {
            order: els.len() as u64,
            abelian,
            order_multiset,
            center_order,
        }
    }
}

struct MatrixGroup<'a> {
    field: &'a Field,
    elements: Vec<GroupElement>,
}

impl FiniteGroup for MatrixGroup<'_> {
    type E = GroupElement;
    fn elements(&self) -> &[GroupElement] {
        &self.elements
    }
    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.mul(self.field, b)
    }
    fn is_identity(&self, a: &GroupElement) -> bool {
        a.is_identity()
    }
    fn element_order(&self, a: &GroupElement) -> u64 {
        a.order(self.field)
    }
}

/// Profile of a set of elements of PGL(3, q) assumed to form a group.
pub fn profile_elements(field: &Field, elements: &[GroupElement]) -> Profile {
    MatrixGroup {
        field,
        elements: elements.to_vec(),
    }
    .profile()
}

/// Centre order of the subgroup of elements of 2-power order, when that set
/// is a subgroup of order at most `PROFILE_LIMIT`.
pub fn two_part_center_order(field: &Field, elements: &[GroupElement]) -> Option<u64> {
    let part: Vec<GroupElement> = elements
        .iter()
        .filter(|e| e.order(field).is_power_of_two())
        .copied()
        .collect();
    if part.len() > PROFILE_LIMIT || !part.len().is_power_of_two() {
        return None;
    }
    MatrixGroup {
        field,
        elements: part,
    }
    .profile()
    .center_order
}

/// Permutation groups used as independent models of the named stabiliser
/// types.
pub mod models {
    use super::*;

    pub type Perm = Vec<u16>;

    pub struct PermGroup {
        elements: Vec<Perm>,
    }

    impl FiniteGroup for PermGroup {
        type E = Perm;
        fn elements(&self) -> &[Perm] {
            &self.elements
        }
        fn mul(&self, a: &Perm, b: &Perm) -> Perm {
            b.iter().map(|&i| a[i as usize]).collect()
        }
        fn is_identity(&self, a: &Perm) -> bool {
            a.iter().enumerate().all(|(i, &x)| i == x as usize)
        }
    }

    impl PermGroup {
        /// Closure of the generators on `degree` points.
        pub fn generate(degree: usize, generators: &[Perm]) -> PermGroup {
            let id: Perm = (0..degree as u16).collect();
            let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
            let mut elements = vec![id];
            let mut i = 0;
            while i < elements.len() {
                for g in generators {
                    let x: Perm = g.iter().map(|&j| elements[i][j as usize]).collect();
                    if seen.insert(x.clone()) {
                        elements.push(x);
                    }
                }
                i += 1;
            }
            PermGroup { elements }
        }

        pub fn order(&self) -> usize {
            self.elements.len()
        }

        pub fn profile(&self) -> Profile {
            FiniteGroup::profile(self)
        }

        pub fn degree(&self) -> usize {
            self.elements[0].len()
        }

        /// Direct product acting on the disjoint union of the two domains.
        pub fn product(&self, other: &PermGroup) -> PermGroup {
            let (d1, d2) = (self.degree(), other.degree());
            let lift_left = |p: &Perm| {
                p.iter()
                    .copied()
                    .chain(d1 as u16..(d1 + d2) as u16)
                    .collect::<Perm>()
            };
            let lift_right = |p: &Perm| {
                (0..d1 as u16)
                    .chain(p.iter().map(|&x| x + d1 as u16))
                    .collect::<Perm>()
            };
            let gens: Vec<Perm> = self
                .elements
                .iter()
                .map(lift_left)
                .chain(other.elements.iter().map(lift_right))
                .collect();
            PermGroup::generate(d1 + d2, &gens)
        }
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let g: Perm = (0..n).map(|i| ((i + 1) % n) as u16).collect();
        PermGroup::generate(n, &[g])
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> PermGroup {
        let r: Perm = (0..n).map(|i| ((i + 1) % n) as u16).collect();
        let s: Perm = (0..n).map(|i| ((n - i) % n) as u16).collect();
        PermGroup::generate(n, &[r, s])
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let t: Perm = (0..n)
            .map(|i| [1, 0].get(i).copied().unwrap_or(i) as u16)
            .collect();
        let c: Perm = (0..n).map(|i| ((i + 1) % n) as u16).collect();
        PermGroup::generate(n, &[t, c])
    }

    fn vec_index(field: &Field, v: &[Fe; 2]) -> u16 {
        (v[0].0 as usize * field.q() + v[1].0 as usize) as u16
    }

    /// Maps `v -> L v + t` on GF(q)^2 for every `L` in `linear` and every `t`
    /// (or only `t = 0`).
    fn affine_plane(field: &Field, linear: &[[[Fe; 2]; 2]], translations: bool) -> PermGroup {
        let q = field.q();
        let vectors: Vec<[Fe; 2]> = field
            .elements()
            .flat_map(|a| field.elements().map(move |b| [a, b]))
            .collect();
        let ts: Vec<[Fe; 2]> = if translations {
            vectors.clone()
        } else {
            vec![[Fe::ZERO; 2]]
        };
        let mut gens = Vec::new();
        for l in linear {
            for t in &ts {
                gens.push(
                    vectors
                        .iter()
                        .map(|v| {
                            let img: [Fe; 2] = std::array::from_fn(|i| {
                                field.mul(l[i][0], v[0]) + field.mul(l[i][1], v[1]) + t[i]
                            });
                            vec_index(field, &img)
                        })
                        .collect(),
                );
            }
        }
        PermGroup::generate(q * q, &gens)
    }

    fn gl2(field: &Field) -> Vec<[[Fe; 2]; 2]> {
        let mut out = Vec::new();
        for a in field.elements() {
            for b in field.elements() {
                for c in field.elements() {
                    for d in field.elements() {
                        if field.mul(a, d) != field.mul(b, c) {
                            out.push([[a, b], [c, d]]);
                        }
                    }
                }
            }
        }
        out
    }

    /// `x -> a x + b` on GF(q).
    pub fn affine_line(field: &Field) -> PermGroup {
        let gens: Vec<Perm> = field
            .nonzero()
            .flat_map(|a| field.elements().map(move |b| (a, b)))
            .map(|(a, b)| {
                field
                    .elements()
                    .map(|x| (field.mul(a, x) + b).0 as u16)
                    .collect()
            })
            .collect();
        PermGroup::generate(field.q(), &gens)
    }

    pub fn general_linear_2(field: &Field) -> PermGroup {
        affine_plane(field, &gl2(field), false)
    }

    pub fn affine_general_linear_2(field: &Field) -> PermGroup {
        affine_plane(field, &gl2(field), true)
    }

    /// Translations extended by `v -> [[a, b], [0, a]] v`.
    pub fn translations_by_scalar_unipotent(field: &Field) -> PermGroup {
        let linear: Vec<_> = field
            .nonzero()
            .flat_map(|a| field.elements().map(move |b| [[a, b], [Fe::ZERO, a]]))
            .collect();
        affine_plane(field, &linear, true)
    }

    /// Translations extended by scalars.
    pub fn translations_by_scalars(field: &Field) -> PermGroup {
        let linear: Vec<_> = field
            .nonzero()
            .map(|a| [[a, Fe::ZERO], [Fe::ZERO, a]])
            .collect();
        affine_plane(field, &linear, true)
    }

    /// A group of 3x3 matrices modulo scalars, acting on the points of PG(2, q).
    fn projective(field: &Field, gens: &[Mat3]) -> PermGroup {
        let points: Vec<[Fe; 3]> = crate::projgeom::normalized_coefficients(field, 3)
            .map(|c| [c[0], c[1], c[2]])
            .collect();
        let index: HashMap<[Fe; 3], u16> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u16))
            .collect();
        let perms: Vec<Perm> = gens
            .iter()
            .map(|g| {
                points
                    .iter()
                    .map(|p| {
                        let img = crate::projgeom::normalize(field, &g.apply(field, p))
                            .expect("invertible");
                        index[&img]
                    })
                    .collect()
            })
            .collect();
        PermGroup::generate(points.len(), &perms)
    }

    /// Upper triangular matrices modulo scalars.
    pub fn upper_triangular(field: &Field) -> PermGroup {
        let w = field.primitive_element();
        let mut gens = vec![
            Mat3::diag(Fe::ONE, w, Fe::ONE),
            Mat3::diag(Fe::ONE, Fe::ONE, w),
        ];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for t in field.nonzero() {
                let mut m = Mat3::IDENTITY;
                m.0[i][j] = t;
                gens.push(m);
            }
        }
        projective(field, &gens)
    }

    /// Diagonal matrices together with the swap of the first two coordinates,
    /// modulo scalars.
    pub fn monomial_swap(field: &Field) -> PermGroup {
        let w = field.primitive_element();
        let swap = Mat3::from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        projective(
            field,
            &[
                Mat3::diag(Fe::ONE, w, Fe::ONE),
                Mat3::diag(Fe::ONE, Fe::ONE, w),
                swap,
            ],
        )
    }
}

/// Orders up to this size have their element-order multiset checked
/// against a model of the named group.
pub const MODEL_LIMIT: u64 = 24;

/// What the stabiliser of an orbit representative should look like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedStructure {
    pub name: &'static str,
    pub order: u64,
    pub abelian: bool,
    pub order_multiset: Option<BTreeMap<u64, u64>>,
    pub center_order: Option<u64>,
    /// Centre order of the subgroup of elements of 2-power order.
    pub two_part_center_order: Option<u64>,
}

/// A permutation model of the named stabiliser type of `label` at this q.
pub fn structure_model(label: OrbitLabel, field: &Field) -> models::PermGroup {
    use models::*;
    let q = field.q();
    match label.index() {
        1 => translations_by_scalar_unipotent(field),
        2 => upper_triangular(field),
        3 => affine_general_linear_2(field),
        4 => general_linear_2(field),
        5 => translations_by_scalars(field),
        6 => monomial_swap(field),
        7 => dihedral(q + 1).product(&cyclic(q - 1)),
        8 | 10 => cyclic(q - 1).product(&cyclic(2)),
        9 => symmetric(4),
        11 => affine_line(field),
        12 => cyclic(2).product(&cyclic(2)),
        13 => dihedral(4),
        14 => cyclic(4),
        15 => cyclic(3),
        _ => unreachable!(),
    }
}

pub fn expected_structure(label: OrbitLabel, field: &Field) -> ExpectedStructure {
    let q = field.q() as u64;
    let order = stabilizer_order(label, q);
    let model = (order <= MODEL_LIMIT).then(|| structure_model(label, field).profile());
    if let Some(m) = &model {
        assert_eq!(
            m.order, order,
            "model of {label} at q={q} has the wrong order"
        );
    }
    ExpectedStructure {
        name: stabilizer_name(label),
        order,
        // Every named type of order above the model limit is non-abelian.
        abelian: model.as_ref().is_some_and(|m| m.abelian),
        order_multiset: model.as_ref().map(|m| m.order_multiset.clone()),
        center_order: model.as_ref().and_then(|m| m.center_order),
        two_part_center_order: (label.index() == 2).then_some(q),
    }
}

/// Computed stabiliser of a representative against its expected structure.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub label: OrbitLabel,
    pub q: usize,
    pub order: u64,
    pub expected_order: u64,
    pub abelian: bool,
    pub order_multiset: BTreeMap<u64, u64>,
    pub center_order: Option<u64>,
    pub pass: bool,
    #[serde(skip)]
    pub expected: ExpectedStructure,
    #[serde(skip)]
    pub two_part_center_order: Option<u64>,
    #[serde(skip)]
    pub elements: Vec<GroupElement>,
}

impl StabilizerReport {
    pub fn new(label: OrbitLabel, field: &Field, elements: Vec<GroupElement>) -> StabilizerReport {
        let expected = expected_structure(label, field);
        let profile = profile_elements(field, &elements);
        let two_part = expected
            .two_part_center_order
            .and_then(|_| two_part_center_order(field, &elements));
        let pass = profile.order == expected.order
            && profile.abelian == expected.abelian
            && expected
                .order_multiset
                .as_ref()
                .is_none_or(|m| *m == profile.order_multiset)
            && expected
                .center_order
                .is_none_or(|c| profile.center_order == Some(c))
            && expected
                .two_part_center_order
                .is_none_or(|c| two_part == Some(c));
        StabilizerReport {
            label,
            q: field.q(),
            order: profile.order,
            expected_order: expected.order,
            abelian: profile.abelian,
            order_multiset: profile.order_multiset,
            center_order: profile.center_order,
            pass,
            expected,
            two_part_center_order: two_part,
            elements,
        }
    }

    /// `|PGL(3, q)| / |stabiliser|`.
    pub fn orbit_size(&self) -> u64 {
        let n = pgl3_order(self.q as u64);
        assert_eq!(
            n % self.order,
            0,
            "stabiliser order does not divide |PGL(3,q)|"
        );
        n / self.order
    }
}

/// Stabiliser reports for all fifteen representatives in one pass.
pub fn stabilizer_reports(geom: &Geometry) -> Vec<StabilizerReport> {
    let labels: Vec<OrbitLabel> = OrbitLabel::all().collect();
    let reps: Vec<PencilSolid> = labels
        .iter()
        .map(|&l| representative(&geom.field, l))
        .collect();
    stabilizers(geom, &reps)
        .into_iter()
        .zip(labels)
        .map(|(els, label)| StabilizerReport::new(label, &geom.field, els))
        .collect()
}

/// Parameters of the representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RepParams {
    /// `Tr(1/gamma) = 1`, used by Ω7, Ω10, Ω12.
    pub gamma_inv_trace: Fe,
    /// `Tr(gamma) = 1`, used by Ω13, Ω14.
    pub gamma_trace: Fe,
    /// `b l^3 + c l + 1` irreducible, used by Ω15.
    pub b: Fe,
    pub c: Fe,
}

impl RepParams {
    pub fn search(field: &Field) -> RepParams {
        let (b, c) = field.find_irreducible_cubic_params();
        RepParams {
            gamma_inv_trace: field.find_gamma_inv_trace(),
            gamma_trace: field.find_gamma_trace(),
            b,
            c,
        }
    }
}

/// Generating conics of the representative, coefficients in the order
/// `(a00, a01, a02, a11, a12, a22)`.
pub fn representative_conics(
    label: OrbitLabel,
    p: &RepParams,
    field: &Field,
) -> ([Fe; 6], [Fe; 6]) {
    let (z, o) = (Fe::ZERO, Fe::ONE);
    let e = |i: usize| std::array::from_fn(|j| if i == j { o } else { z });
    // X0X1 + X2^2
    let c = [z, o, z, z, z, o];
    let g = p.gamma_inv_trace;
    let t = p.gamma_trace;
    match label.index() {
        1 => ([z, z, z, o, z, o], e(4)),
        2 => (e(5), e(4)),
        3 => (e(3), e(5)),
        4 => (e(1), e(4)),
        5 => (c, e(0)),
        6 => (c, e(5)),
        7 => (c, [o, z, z, o, z, field.square(g)]),
        8 => (c, [z, o, o, z, o, o]),
        9 => ([o, o, z, z, z, z], [z, z, z, z, o, o]),
        10 => (c, [z, o, z, o, g, z]),
        11 => (c, e(4)),
        12 => (c, [z, z, o, z, o, g]),
        13 => ([t, o, z, o, z, z], [t, z, o, z, z, o]),
        14 => ([z, z, o, o, z, t], [t, o, z, o, z, z]),
        15 => (c, [z, z, o, p.b, z, p.c]),
        _ => unreachable!(),
    }
}

pub fn representative_with(field: &Field, label: OrbitLabel, p: &RepParams) -> PencilSolid {
    let (c1, c2) = representative_conics(label, p, field);
    PencilSolid::from_coefficients(field, c1, c2).expect("representative conics are independent")
}

/// The representative of `label`, with parameters from the default searches.
pub fn representative(field: &Field, label: OrbitLabel) -> PencilSolid {
    representative_with(field, label, &RepParams::search(field))
}

/// `|PGL(3, q)| / |stabiliser|` for a representative.
pub fn orbit_size(geom: &Geometry, label: OrbitLabel) -> u64 {
    let els = stabilizer(geom, &representative(&geom.field, label));
    let n = pgl3_order(geom.q() as u64);
    assert_eq!(
        n % els.len() as u64,
        0,
        "stabiliser order does not divide |PGL(3,q)|"
    );
    n / els.len() as u64
}

/// One explicit generator and whether it fixes the representative.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorResult {
    pub matrix: String,
    pub order: u64,
    pub fixes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub label: OrbitLabel,
    pub q: usize,
    pub solid: String,
    pub generators: Vec<GeneratorResult>,
    /// Order of the group the generators generate.
    pub generated_order: u64,
    pub pass: bool,
}

fn generated_order(field: &Field, gens: &[GroupElement]) -> u64 {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let id = GroupElement::new(field, &Mat3::IDENTITY).expect("invertible");
    seen.insert(id);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(field, g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    seen.len() as u64
}

/// The explicit stabiliser generators recorded for Ω8, Ω13, Ω14 and Ω15,
/// with the representative they are stated for.
pub fn explicit_generators(
    field: &Field,
    label: OrbitLabel,
) -> Result<(PencilSolid, Vec<Mat3>), GroupError> {
    let mut p = RepParams::search(field);
    let (z, o) = (Fe::ZERO, Fe::ONE);
    let gens = match label.index() {
        8 => {
            let w = field.primitive_element();
            vec![
                Mat3::from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
                Mat3([[o, z, w + o], [z, o, w + o], [z, z, w]]),
            ]
        }
        13 => vec![
            Mat3::from_rows([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
            Mat3::from_rows([[1, 0, 0], [0, 1, 0], [1, 0, 1]]),
            Mat3::from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        ],
        14 => {
            let gi = field.inv(p.gamma_trace).expect("nonzero");
            vec![Mat3([[o, z, z], [o, o, z], [z, gi, o]])]
        }
        15 => {
            let h = field.degree();
            if h.is_multiple_of(2) {
                let zeta = field
                    .primitive_cube_root_of_unity()
                    .ok_or(GroupError::ParameterSearch("cube root"))?;
                let b = field
                    .nonzero()
                    .find(|&b| !field.is_cube(b))
                    .ok_or(GroupError::ParameterSearch("non-cube"))?;
                p.b = b;
                p.c = z;
                vec![Mat3::diag(o, zeta, field.square(zeta))]
            } else {
                let b = field
                    .nonzero()
                    .find(|&b| field.cubic_has_no_root(b, b))
                    .ok_or(GroupError::ParameterSearch(
                        "b with b l^3 + b l + 1 irreducible",
                    ))?;
                p.b = b;
                p.c = b;
                // zeta = b^(2^2) + b^(2^4) + ... + b^(2^(h-1))
                let mut zeta = z;
                let mut pw = b;
                for k in 1..h {
                    pw = field.square(pw);
                    if k % 2 == 0 {
                        zeta += pw;
                    }
                }
                vec![Mat3([
                    [o, z, z],
                    [z, zeta, b],
                    [z, b, field.square(zeta) + field.square(b)],
                ])]
            }
        }
        _ => return Err(GroupError::NoGenerators(label)),
    };
    Ok((representative_with(field, label, &p), gens))
}

/// Checks that each explicit generator fixes its representative. The Ω14
/// generator must have order 4 and the Ω15 one order 3.
pub fn verify_generators(field: &Field, label: OrbitLabel) -> Result<GeneratorCheck, GroupError> {
    let (s, mats) = explicit_generators(field, label)?;
    let els: Vec<GroupElement> = mats
        .iter()
        .map(|m| GroupElement::new(field, m))
        .collect::<Result<_, _>>()?;
    let generators: Vec<GeneratorResult> = els
        .iter()
        .map(|g| GeneratorResult {
            matrix: g.matrix().to_hex(),
            order: g.order(field),
            fixes: g.apply(field, &s) == s,
        })
        .collect();
    let required_order = match label.index() {
        14 => Some(4),
        15 => Some(3),
        _ => None,
    };
    let pass = generators
        .iter()
        .all(|g| g.fixes && required_order.is_none_or(|o| g.order == o));
    Ok(GeneratorCheck {
        label,
        q: field.q(),
        solid: s.to_text(),
        generated_order: generated_order(field, &els),
        generators,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::veronese::Lift;

    #[test]
    fn pgl_counts() {
        for (q, n) in [(2, 168), (4, 60_480)] {
            let f = Field::new(q).unwrap();
            let all = enumerate_pgl3(&f);
            assert_eq!(all.len(), n);
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), n);
            assert!(all
                .iter()
                .all(|g| g.matrix().normalized(&f).unwrap() == *g.matrix()));
        }
    }

    #[test]
    fn lift_images_match_lift() {
        let f = Field::new(4).unwrap();
        for g in enumerate_pgl3(&f).iter().step_by(997) {
            let lift = Lift::new(&f, g.matrix()).unwrap();
            assert_eq!(&lift_images(&f, g.matrix()), lift.images());
        }
    }

    #[test]
    fn models_have_named_orders() {
        let f2 = Field::new(2).unwrap();
        let f4 = Field::new(4).unwrap();
        assert_eq!(models::symmetric(4).order(), 24);
        assert_eq!(models::dihedral(4).order(), 8);
        assert_eq!(models::affine_line(&f4).order(), 12);
        assert_eq!(models::general_linear_2(&f2).order(), 6);
        assert_eq!(models::affine_general_linear_2(&f2).order(), 24);
        assert_eq!(models::upper_triangular(&f2).order(), 8);
        assert_eq!(models::monomial_swap(&f4).order(), 18);
        assert_eq!(models::translations_by_scalar_unipotent(&f2).order(), 8);
        let s4 = models::symmetric(4).profile();
        assert_eq!(
            s4.order_multiset,
            BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)])
        );
        assert_eq!(s4.center_order, Some(1));
        let d8 = models::dihedral(4).profile();
        assert_eq!(d8.order_multiset, BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        assert!(!d8.abelian);
        let a4 = models::affine_line(&f4).profile();
        assert_eq!(a4.order_multiset, BTreeMap::from([(1, 1), (2, 3), (3, 8)]));
    }

    #[test]
    fn generated_orders() {
        let f = Field::new(4).unwrap();
        let g = GroupElement::new(&f, &Mat3::diag(Fe(1), Fe(2), Fe(3))).unwrap();
        assert_eq!(g.order(&f), 3);
        assert_eq!(generated_order(&f, &[g]), 3);
    }
}
