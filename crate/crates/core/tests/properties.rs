use proptest::prelude::*;

use pencil_orbits::classifier::Classifier;
use pencil_orbits::group::GroupElement;
use pencil_orbits::pencil::Geometry;
use pencil_orbits::projgeom::{pack, unpack};
use pencil_orbits::veronese::{delta, delta_inv, discriminant, point_type, Lift};
use pencil_orbits::{Conic, Fe, Field, Mat3, PencilSolid, Subspace};

fn fe(f: &Field, b: u8) -> Fe {
    f.element(b % f.q() as u8).unwrap()
}

fn vector<const N: usize>(f: &Field, bytes: &[u8]) -> [Fe; N] {
    std::array::from_fn(|i| fe(f, bytes[i]))
}

fn field_for(i: usize) -> Field {
    Field::new([2, 4, 8][i]).unwrap()
}

fn matrix(f: &Field, bytes: &[u8]) -> Mat3 {
    Mat3(std::array::from_fn(|i| {
        std::array::from_fn(|j| fe(f, bytes[3 * i + j]))
    }))
}

/// An invertible matrix over `f`: the first invertible one among the
/// candidates, or the identity when none is.
fn invertible(f: &Field, candidates: &[Vec<u8>]) -> Mat3 {
    candidates
        .iter()
        .map(|b| matrix(f, b))
        .find(|m| m.is_invertible(f))
        .unwrap_or(Mat3::IDENTITY)
}

/// A solid spanned by four rows, or None when they are dependent.
fn solid(f: &Field, bytes: &[u8]) -> Option<PencilSolid> {
    let rows: Vec<[Fe; 6]> = bytes.chunks(6).map(|c| vector(f, c)).collect();
    let s = Subspace::span(f, &rows).ok()?;
    (s.rank() == 4).then(|| PencilSolid::from_solid(f, s).unwrap())
}

fn bytes(n: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), n)
}

fn matrices() -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(bytes(9), 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_idempotent(fi in 0usize..3, raw in bytes(24), k in 1usize..=4) {
        let f = field_for(fi);
        let rows: Vec<[Fe; 6]> = raw.chunks(6).take(k).map(|c| vector(&f, c)).collect();
        if let Ok(s) = Subspace::span(&f, &rows) {
            prop_assert_eq!(Subspace::span(&f, s.rows()).unwrap(), s.clone());
            for r in &rows {
                prop_assert!(s.contains(&f, r));
            }
        }
    }

    #[test]
    fn annihilator_is_an_inclusion_reversing_involution(fi in 0usize..3, raw in bytes(30), k in 1usize..=4) {
        let f = field_for(fi);
        let rows: Vec<[Fe; 6]> = raw.chunks(6).map(|c| vector(&f, c)).collect();
        if let (Ok(small), Ok(big)) = (Subspace::span(&f, &rows[..k]), Subspace::span(&f, &rows)) {
            let (a_small, a_big) = (small.annihilator(&f), big.annihilator(&f));
            prop_assert_eq!(a_small.rank() + small.rank(), 6);
            prop_assert!(a_small.contains_subspace(&f, &a_big));
            if a_small.rank() > 0 {
                prop_assert_eq!(a_small.annihilator(&f), small);
            }
        }
    }

    #[test]
    fn lift_preserves_point_types(fi in 0usize..3, ms in matrices(), points in prop::collection::vec(bytes(6), 32)) {
        let f = field_for(fi);
        let lift = Lift::new(&f, &invertible(&f, &ms)).unwrap();
        for p in points {
            let v: [Fe; 6] = vector(&f, &p);
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            prop_assert_eq!(point_type(&f, &lift.apply(&f, &v)), point_type(&f, &v));
        }
    }

    #[test]
    fn lift_preserves_singularity_of_conics(fi in 0usize..3, ms in matrices(), c in bytes(6)) {
        let f = field_for(fi);
        let coeffs: [Fe; 6] = vector(&f, &c);
        let Ok(conic) = Conic::new(&f, coeffs) else { return Ok(()) };
        let lift = Lift::new(&f, &invertible(&f, &ms)).unwrap();
        let image = delta_inv(&f, &lift.apply_subspace(&f, &delta(&f, &conic))).unwrap();
        prop_assert_eq!(discriminant(&f, image.coeffs()).is_zero(), discriminant(&f, &coeffs).is_zero());
        prop_assert_eq!(image.kind(&f), conic.kind(&f));
    }

    #[test]
    fn action_is_a_homomorphism(raw in bytes(24), a in matrices(), b in matrices()) {
        let f = Field::new(4).unwrap();
        let Some(s) = solid(&f, &raw) else { return Ok(()) };
        let ga = GroupElement::new(&f, &invertible(&f, &a)).unwrap();
        let gb = GroupElement::new(&f, &invertible(&f, &b)).unwrap();
        prop_assert_eq!(ga.apply(&f, &gb.apply(&f, &s)), ga.mul(&f, &gb).apply(&f, &s));
    }

    #[test]
    fn distributions_and_labels_are_invariant(fi in 0usize..3, raw in bytes(24), ms in matrices()) {
        let f = field_for(fi);
        let Some(s) = solid(&f, &raw) else { return Ok(()) };
        let geom = Geometry::with_field(f);
        let classifier = Classifier::new(geom.clone());
        let g = GroupElement::new(&f, &invertible(&f, &ms)).unwrap();
        let t = g.apply(&f, &s);
        prop_assert_eq!(t.distributions(&geom), s.distributions(&geom));
        let (cs, ct) = (classifier.classify(&s).unwrap(), classifier.classify(&t).unwrap());
        prop_assert_eq!(cs.label, ct.label);
    }

    #[test]
    fn solid_text_round_trips(fi in 0usize..3, raw in bytes(24)) {
        let f = field_for(fi);
        let Some(s) = solid(&f, &raw) else { return Ok(()) };
        prop_assert_eq!(PencilSolid::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn packing_round_trips(fi in 0usize..3, raw in bytes(6)) {
        let f = field_for(fi);
        let v: [Fe; 6] = vector(&f, &raw);
        prop_assert_eq!(unpack::<6>(f.degree(), pack(f.degree(), &v)), v);
    }
}

/// Every solid at q = 2 against a handful of group elements.
#[test]
fn labels_invariant_exhaustive_q2() {
    use pencil_orbits::projgeom::SubspaceEnumerator;
    let geom = Geometry::new(2).unwrap();
    let f = geom.field;
    let classifier = Classifier::new(geom.clone());
    let gens = [
        Mat3::from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        Mat3::from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        Mat3::from_rows([[1, 0, 1], [0, 1, 1], [0, 0, 1]]),
    ];
    for sub in SubspaceEnumerator::<6>::new(2, 4).iter() {
        let s = PencilSolid::from_solid(&f, sub).unwrap();
        let label = classifier.classify(&s).unwrap().label;
        for m in &gens {
            let t = GroupElement::new(&f, m).unwrap().apply(&f, &s);
            assert_eq!(classifier.classify(&t).unwrap().label, label, "{s}");
        }
    }
}
