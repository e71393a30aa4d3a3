//! Results must not depend on the irreducible polynomial chosen for GF(2^h).

use rand::rngs::StdRng;
use rand::SeedableRng;

use pencil_orbits::classifier::{expected_hyperplane_od, expected_point_od, Classifier};
use pencil_orbits::group::{representative, stabilizer_reports};
use pencil_orbits::pencil::Geometry;
use pencil_orbits::sweep::random_solid;
use pencil_orbits::{Fe, Field, OrbitLabel, PencilSolid, Subspace};

/// The isomorphism from `from` to `to` sending x to a root in `to` of the
/// modulus of `from`.
fn isomorphism(from: &Field, to: &Field) -> Vec<Fe> {
    let h = from.degree();
    let root = to
        .elements()
        .find(|&r| {
            let value = (0..=h)
                .filter(|i| from.modulus() >> i & 1 == 1)
                .fold(Fe::ZERO, |acc, i| acc + to.pow(r, i as u64));
            value.is_zero() && !r.is_zero()
        })
        .expect("the modulus splits in any field of the same order");
    from.elements()
        .map(|a| {
            (0..h)
                .filter(|i| a.0 >> i & 1 == 1)
                .fold(Fe::ZERO, |acc, i| acc + to.pow(root, i as u64))
        })
        .collect()
}

fn map_solid(phi: &[Fe], to: &Field, s: &PencilSolid) -> PencilSolid {
    let rows: Vec<[Fe; 6]> = s
        .solid()
        .rows()
        .iter()
        .map(|r| r.map(|c| phi[c.0 as usize]))
        .collect();
    PencilSolid::from_solid(to, Subspace::span(to, &rows).unwrap()).unwrap()
}

#[test]
fn isomorphism_respects_arithmetic() {
    let (f, g) = (
        Field::new(8).unwrap(),
        Field::with_modulus(3, 0b1101).unwrap(),
    );
    let phi = isomorphism(&f, &g);
    for a in f.elements() {
        for b in f.elements() {
            assert_eq!(
                phi[f.mul(a, b).0 as usize],
                g.mul(phi[a.0 as usize], phi[b.0 as usize])
            );
            assert_eq!(
                phi[(a + b).0 as usize],
                phi[a.0 as usize] + phi[b.0 as usize]
            );
        }
    }
}

#[test]
fn random_solids_agree_across_moduli_q8() {
    let (f, g) = (
        Field::new(8).unwrap(),
        Field::with_modulus(3, 0b1101).unwrap(),
    );
    let phi = isomorphism(&f, &g);
    let (gf, gg) = (Geometry::with_field(f), Geometry::with_field(g));
    let (cf, cg) = (Classifier::new(gf.clone()), Classifier::new(gg.clone()));
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..2000 {
        let s = random_solid(&f, &mut rng);
        let t = map_solid(&phi, &g, &s);
        assert_eq!(s.distributions(&gf), t.distributions(&gg), "{s}");
        assert_eq!(
            cf.classify(&s).unwrap().label,
            cg.classify(&t).unwrap().label,
            "{s}"
        );
    }
}

#[test]
fn representatives_and_stabilizers_alternative_modulus_q8() {
    let g = Field::with_modulus(3, 0b1101).unwrap();
    let geom = Geometry::with_field(g);
    for label in OrbitLabel::all() {
        let d = representative(&g, label).distributions(&geom);
        assert_eq!(d.point_od, expected_point_od(label, 8), "{label}");
        assert_eq!(d.hyperplane_od, expected_hyperplane_od(label, 8), "{label}");
    }
    for r in stabilizer_reports(&geom) {
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn representatives_q16_both_moduli() {
    for field in [
        Field::new(16).unwrap(),
        Field::with_modulus(4, 0b11001).unwrap(),
    ] {
        let geom = Geometry::with_field(field);
        let classifier = Classifier::new(geom.clone());
        for label in OrbitLabel::all() {
            let s = representative(&field, label);
            let d = s.distributions(&geom);
            assert_eq!(
                d.point_od,
                expected_point_od(label, 16),
                "{label} modulus {:#b}",
                field.modulus()
            );
            assert_eq!(
                d.hyperplane_od,
                expected_hyperplane_od(label, 16),
                "{label}"
            );
            assert_eq!(classifier.classify(&s).unwrap().label, label);
        }
    }
}
