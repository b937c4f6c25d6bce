mod common;

use betalink::families::{gen_w, generate};
use betalink::skein::conway;
use betalink::surgery::*;
use betalink::{ConwayPoly, Diagram, Error, Side};
use common::*;

fn corpus() -> Vec<(String, Diagram)> {
    let mut v: Vec<(String, Diagram)> = standard_corpus().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    for (f, ns) in [("W", vec![1]), ("W", vec![2]), ("M", vec![1, 0])] {
        let l = generate(f, &ns).unwrap();
        v.push((l.name, l.diagram));
    }
    v
}

#[test]
fn framing_law() {
    for (name, d) in corpus() {
        let places = d.places();
        for i in 0..d.num_components() {
            let selfc = places.iter().filter(|p| p.over.0 == i && p.under.0 == i).count();
            let mixed = places.iter().filter(|p| (p.over.0 == i) != (p.under.0 == i)).count();
            for t in -3..=3 {
                for side in [Side::Left, Side::Right] {
                    let p = parallel_pushoff_side(&d, i, t, side).unwrap();
                    let j = p.num_components() - 1;
                    assert_eq!(p.linking_number(j, i).unwrap(), d.writhe(i).unwrap() + t, "{name} {i} {t}");
                    assert_eq!(p.num_crossings(), d.num_crossings() + 3 * selfc + mixed + 2 * t.unsigned_abs() as usize);
                    p.faces().check_euler().unwrap();
                }
            }
        }
    }
}

#[test]
fn kinked_unknot() {
    let k = Diagram::unknot().r1_add(0, Side::Right, true).unwrap();
    assert_eq!(k.writhe(0).unwrap(), 1);
    let lk = |t| {
        let p = parallel_pushoff(&k, 0, t).unwrap();
        p.linking_number(1, 0).unwrap()
    };
    assert_eq!(lk(0), 1);
    assert_eq!(lk(-1), 0);
}

#[test]
fn zero_pushoffs() {
    let h = hopf(1);
    assert_eq!(zero_framing(&h, 1).unwrap(), -1);
    let w2 = gen_w(2).unwrap();
    for (d, i) in [(h, 1), (w2.clone(), 0), (w2, 1), (Diagram::unknot(), 0)] {
        for side in [Side::Left, Side::Right] {
            let p = zero_pushoff_side(&d, i, side).unwrap();
            let j = p.num_components() - 1;
            let total: i64 = (0..j).map(|k| p.linking_number(j, k).unwrap()).sum();
            assert_eq!(total, 0);
        }
    }
    assert_eq!(zero_pushoff(&Diagram::unknot(), 0).unwrap().num_crossings(), 0);
    assert!(matches!(parallel_pushoff(&Diagram::unknot(), 3, 0), Err(Error::UnknownComponent(3))));
}

#[test]
fn unlink_band_sum_is_unknot() {
    let u = Diagram::unlink(2);
    let bands = valid_bands(&u, 0, 1, &[]).unwrap();
    assert!(!bands.is_empty());
    for b in bands {
        let k = band_sum(&u, 0, 1, &b, &[]).unwrap();
        assert_eq!((k.num_components(), k.num_crossings()), (1, 0));
    }
}

#[test]
fn hopf_band_sum_result() {
    for s in [1, -1] {
        let h = hopf(s);
        let b = auto_band(&h, 0, 1, &[]).unwrap();
        let k = band_sum(&h, 0, 1, &b, &[]).unwrap();
        assert_eq!(conway(&k).unwrap(), ConwayPoly::one());
        k.faces().check_euler().unwrap();
    }
}

#[test]
fn bad_bands_are_rejected() {
    let d = gen_w(1).unwrap();
    let fm = d.faces();
    let off = d.edge_offsets();
    let mut found = false;
    'outer: for e0 in off[0]..off[1] {
        for e1 in off[1]..off[2] {
            if fm.face_of(e0, Side::Left).unwrap() != fm.face_of(e1, Side::Left).unwrap() {
                let b = BandSpec { e0, e1, face: fm.face_of(e0, Side::Left).unwrap(), side0: Side::Left, side1: Side::Left };
                assert!(matches!(band_sum(&d, 0, 1, &b, &[]), Err(Error::Band(_))));
                found = true;
                break 'outer;
            }
        }
    }
    assert!(found);
    let good = auto_band(&d, 0, 1, &[]).unwrap();
    let flipped = BandSpec { side1: good.side0.flip(), ..good };
    assert!(band_sum(&d, 0, 1, &flipped, &[]).is_err());
    assert!(band_sum(&d, 0, 0, &good, &[]).is_err());
}

#[test]
fn protection_removes_bands() {
    let p = zero_pushoff(&gen_w(1).unwrap(), 0).unwrap();
    let all = valid_bands(&p, 0, 1, &[]).unwrap();
    let kept = valid_bands(&p, 0, 1, &[2]).unwrap();
    assert!(kept.len() < all.len());
    assert!(kept.iter().all(|b| all.contains(b)));
}

#[test]
fn split_union_band_sum_multiplies() {
    let cases = [
        (trefoil(1), figure_eight()),
        (trefoil(1), trefoil(-1)),
        (braid(2, &[1, 1, 1, 1, 1]), figure_eight()),
    ];
    for (a, b) in cases {
        let d = disjoint_union(&a, &b);
        let expect = &conway(&a).unwrap() * &conway(&b).unwrap();
        for band in valid_bands(&d, 0, 1, &[]).unwrap().into_iter().step_by(7) {
            let k = band_sum(&d, 0, 1, &band, &[]).unwrap();
            assert_eq!(k.num_crossings(), d.num_crossings());
            assert_eq!(conway(&k).unwrap(), expect);
        }
    }
}
