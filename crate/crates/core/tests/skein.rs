use betalink::diagram::Side;
use betalink::skein::{conway, conway_matrix, conway_with, is_descending, ConwayConfig, Engine, SkeinEngine};
use betalink::{ConwayPoly, Diagram, Visit};

fn o(c: usize) -> Visit {
    Visit::over(c)
}
fn u(c: usize) -> Visit {
    Visit::under(c)
}
fn hopf(sign: i8) -> Diagram {
    Diagram::from_gauss(vec![vec![o(0), u(1)], vec![u(0), o(1)]], vec![sign, sign]).unwrap()
}
fn trefoil(sign: i8) -> Diagram {
    Diagram::from_gauss(vec![vec![o(0), u(1), o(2), u(0), o(1), u(2)]], vec![sign; 3]).unwrap()
}
fn figure_eight() -> Diagram {
    betalink::diagram::parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap()
}
fn skein(d: &Diagram) -> ConwayPoly {
    conway_with(d, &ConwayConfig { engine: Engine::Skein, ..Default::default() }).unwrap()
}

#[test]
fn base_oracles() {
    assert_eq!(skein(&Diagram::unknot()), ConwayPoly::one());
    assert_eq!(skein(&Diagram::unlink(2)), ConwayPoly::zero());
    assert_eq!(skein(&hopf(1)), ConwayPoly::z());
    assert_eq!(skein(&hopf(-1)), -ConwayPoly::z());
    assert_eq!(skein(&trefoil(1)), ConwayPoly::from_i64(&[1, 0, 1]));
    assert_eq!(skein(&trefoil(-1)), ConwayPoly::from_i64(&[1, 0, 1]));
    assert_eq!(skein(&figure_eight()), ConwayPoly::from_i64(&[1, 0, -1]));
}

#[test]
fn matrix_engine_agrees() {
    for d in [hopf(1), hopf(-1), trefoil(1), trefoil(-1), figure_eight()] {
        assert_eq!(conway_matrix(&d).unwrap(), skein(&d), "{d}");
    }
}

#[test]
fn descending_examples() {
    assert!(is_descending(&Diagram::unknot(), &[0], &[0]).unwrap());
    let kink = Diagram::unknot().r1_add(0, Side::Left, true).unwrap();
    // Edge 0 arrives at the over visit.
    assert!(is_descending(&kink, &[0], &[0]).unwrap());
    let t = trefoil(1);
    for e in 0..6 {
        assert!(!is_descending(&t, &[e], &[0]).unwrap());
    }
    assert!(is_descending(&hopf(1), &[0], &[0, 1]).is_err());
}

#[test]
fn audit_passes() {
    let e = SkeinEngine::new(1 << 20);
    let d = trefoil(1).r1_add(2, Side::Right, false).unwrap();
    let f8 = figure_eight();
    e.conway(&d).unwrap();
    e.conway(&f8).unwrap();
    let r = e.audit(100, 7).unwrap();
    assert!(r.checked > 0);
    assert!(r.failures.is_empty(), "{:?}", r.failures);
}

#[test]
fn poly_text() {
    assert_eq!(ConwayPoly::from_i64(&[0, 0, 0, 1]).to_string(), "z^3");
    assert_eq!(ConwayPoly::from_i64(&[1, 0, -2]).to_string(), "1 - 2*z^2");
    assert_eq!("1+z2".parse::<ConwayPoly>().unwrap(), ConwayPoly::from_i64(&[1, 0, 1]));
    assert_eq!("2*z^3 - z".parse::<ConwayPoly>().unwrap(), ConwayPoly::from_i64(&[0, -1, 0, 2]));
    assert_eq!(conway(&Diagram::unknot()).unwrap().to_string(), "1");
}
