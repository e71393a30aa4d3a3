use pencil_orbits::classifier::{expected_hyperplane_od, expected_point_od, Classifier};
use pencil_orbits::group::{representative, stabilizer_reports, verify_generators};
use pencil_orbits::pencil::Geometry;
use pencil_orbits::OrbitLabel;

#[test]
fn representatives_have_tabulated_distributions() {
    for q in [2usize, 4, 8] {
        let geom = Geometry::new(q).unwrap();
        let classifier = Classifier::new(geom.clone());
        for label in OrbitLabel::all() {
            let s = representative(&geom.field, label);
            let d = s.distributions(&geom);
            assert_eq!(
                d.point_od,
                expected_point_od(label, q as u64),
                "{label} q={q}"
            );
            assert_eq!(
                d.hyperplane_od,
                expected_hyperplane_od(label, q as u64),
                "{label} q={q}"
            );
            assert_eq!(classifier.classify(&s).unwrap().label, label, "q={q}");
        }
    }
}

#[test]
fn stabilizers_small_fields() {
    for q in [2usize, 4] {
        let geom = Geometry::new(q).unwrap();
        for r in stabilizer_reports(&geom) {
            println!("{}", serde_json::to_string(&r).unwrap());
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn generators() {
    for q in [2usize, 4, 8] {
        let geom = Geometry::new(q).unwrap();
        for i in [8, 13, 14, 15] {
            let c = verify_generators(&geom.field, OrbitLabel::new(i).unwrap()).unwrap();
            println!("{}", serde_json::to_string(&c).unwrap());
            assert!(c.pass);
        }
    }
}

#[test]
fn stabilizers_q8() {
    let t = std::time::Instant::now();
    let geom = Geometry::new(8).unwrap();
    for r in stabilizer_reports(&geom) {
        println!("{}", serde_json::to_string(&r).unwrap());
        assert!(r.pass, "{r:?}");
    }
    println!("{:?}", t.elapsed());
}
