//! Conway polynomial from the Alexander matrix of the Wirtinger
//! presentation, evaluated modulo primes and interpolated.
//!
//! With `t = s^2` and `z = s - 1/s`, a codimension-one minor `d(t)` of the
//! Alexander matrix satisfies `d(s^2) = ±s^e ∇(z)`. The exponent `e` is read
//! off from `d(s^2) / d(s^-2)`; the global sign is fixed afterwards from the
//! constant term (knots) or the linking number (two components).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, eval_poly, interpolate, mul, pow};
use super::{remove_kinks, trivial_value, ConwayPoly};
use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Number of extra evaluation points used to confirm each interpolation.
const CHECK_POINTS: usize = 2;

pub fn conway_matrix(d: &Diagram) -> Result<ConwayPoly> {
    let d = remove_kinks(d.clone());
    if let Some(v) = trivial_value(&d) {
        return Ok(v);
    }
    match d.num_components() {
        1 => {
            let p = up_to_sign(&d)?;
            Ok(if p.coeff(0).is_negative() { -p } else { p })
        }
        2 => {
            let lk = d.linking_number(0, 1)?;
            if lk != 0 {
                let p = up_to_sign(&d)?;
                Ok(if p.coeff(1) == BigInt::from(lk) { p } else { -p })
            } else {
                // One skein step at a crossing between the components: the
                // switched link has nonzero linking number and the smoothed
                // diagram is a knot, so both signs are determined.
                let places = d.places();
                let c = (0..d.num_crossings())
                    .find(|&c| places[c].over.0 != places[c].under.0)
                    .expect("a connected two-component diagram has a mixed crossing");
                let sw = conway_matrix(&d.switch_crossing(c)?)?;
                let sm = conway_matrix(&d.smooth_crossing(c)?)?;
                Ok(&sw + &sm.shift(1).scale(&BigInt::from(d.sign(c))))
            }
        }
        k => Err(Error::Precondition(format!("matrix engine handles at most two components, got {k}"))),
    }
}

/// Number of circles produced by smoothing every crossing.
fn seifert_circles(d: &Diagram) -> usize {
    let off = d.edge_offsets();
    let places = d.places();
    let ne = d.num_edges();
    let mut next = vec![0usize; ne];
    for (i, comp) in d.components().iter().enumerate() {
        for (p, v) in comp.iter().enumerate() {
            let pl = places[v.crossing];
            let (j, q) = if pl.over == (i, p) { pl.under } else { pl.over };
            let len = d.component(j).len();
            next[off[i] + p] = off[j] + (q + 1) % len;
        }
    }
    let mut seen = vec![false; ne];
    let mut count = 0;
    for s in 0..ne {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut e = s;
        while !seen[e] {
            seen[e] = true;
            e = next[e];
        }
    }
    count
}

struct Minor {
    /// Per crossing: (over arc, incoming under arc, outgoing under arc, sign).
    rows: Vec<([usize; 3], i8)>,
    size: usize,
}

impl Minor {
    fn new(d: &Diagram) -> Self {
        let (arcs, rel) = d.arc_relations();
        debug_assert_eq!(arcs, d.num_crossings());
        let rows = rel.into_iter().enumerate().map(|(c, r)| (r, d.sign(c))).collect();
        Minor { rows, size: arcs - 1 }
    }

    /// The minor with the last row and column removed, at `t`.
    fn det(&self, t: u64, p: u64) -> u64 {
        let m = self.size;
        let one_minus_t = (1 + p - t) % p;
        let t_minus_one = (t + p - 1) % p;
        let rows = self.rows[..m]
            .iter()
            .map(|&([k, i, j], sign)| {
                let vals = if sign > 0 { [one_minus_t, t, p - 1] } else { [t_minus_one, 1, (p - t) % p] };
                let mut row: Vec<(u32, u64)> = vec![];
                for (col, v) in [k, i, j].into_iter().zip(vals) {
                    if col >= m {
                        continue;
                    }
                    match row.iter_mut().find(|e| e.0 as usize == col) {
                        Some(e) => e.1 = (e.1 + v) % p,
                        None => row.push((col as u32, v)),
                    }
                }
                row.retain(|e| e.1 != 0);
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        modp::sparse_det(rows, p)
    }
}

/// Coefficients of `±∇` modulo `p` (length `deg + 1`).
fn residues(minor: &Minor, comps: usize, deg: usize, p: u64) -> Result<Vec<u64>> {
    let par = (comps - 1) % 2;
    let gdeg = (deg - par) / 2;
    let needed = gdeg + 1 + CHECK_POINTS;
    let bound = 2 * minor.size as i64 + 4;
    let mut exponent: Option<i64> = None;
    let mut points: Vec<(u64, u64)> = vec![];
    let mut s = 2u64;
    let mut any_nonzero = false;
    while points.len() < needed || (any_nonzero && exponent.is_none()) {
        if s > 1 << 16 {
            return Err(Error::Topology("could not determine the Alexander minor normalization".into()));
        }
        let t = mul(s, s, p);
        let a = minor.det(t, p);
        any_nonzero |= a != 0;
        if exponent.is_none() && a != 0 {
            let b = minor.det(modp::inv(t, p), p);
            let mut ratio = mul(a, modp::inv(b, p), p);
            if par == 1 {
                ratio = (p - ratio) % p;
            }
            let hits: Vec<i64> = (-bound..=bound).filter(|&e| pow_signed(t, e, p) == ratio).collect();
            if hits.len() == 1 {
                exponent = Some(hits[0]);
            }
        }
        points.push((s, a));
        s += 1;
    }
    let Some(e) = exponent else {
        return Ok(vec![0; deg + 1]);
    };
    let mut ws = vec![];
    let mut gs = vec![];
    for &(s, a) in &points {
        let sinv = modp::inv(s, p);
        let z = (s + p - sinv) % p;
        let v = mul(a, pow_signed(s, -e, p), p);
        let g = if par == 1 { mul(v, modp::inv(z, p), p) } else { v };
        ws.push(mul(z, z, p));
        gs.push(g);
    }
    let g = interpolate(&ws[..gdeg + 1], &gs[..gdeg + 1], p);
    for k in gdeg + 1..ws.len() {
        if eval_poly(&g, ws[k], p) != gs[k] {
            return Err(Error::Topology("Alexander minor exceeds the Seifert degree bound".into()));
        }
    }
    let mut out = vec![0u64; deg + 1];
    for (i, c) in g.into_iter().enumerate() {
        out[par + 2 * i] = c;
    }
    Ok(out)
}

fn pow_signed(a: u64, e: i64, p: u64) -> u64 {
    if e >= 0 {
        pow(a, e as u64, p)
    } else {
        pow(modp::inv(a, p), (-e) as u64, p)
    }
}

/// `±∇` with integer coefficients recovered by Chinese remaindering until the
/// symmetric lift is stable (or the coefficient bound is reached).
fn up_to_sign(d: &Diagram) -> Result<ConwayPoly> {
    let n = d.num_crossings();
    let deg = n + 1 - seifert_circles(d);
    let minor = Minor::new(d);
    let comps = d.num_components();
    // The minor's coefficients have absolute sum at most 4^(n-1), and
    // rewriting in z multiplies that by at most 2^deg.
    let cap_bits = 2 * (n as u64) + deg as u64 + 2;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); deg + 1];
    let mut prev: Option<Vec<BigInt>> = None;
    for p in modp::primes() {
        let r = residues(&minor, comps, deg, p)?;
        let pb = BigInt::from(p);
        let minv = BigInt::from(modp::inv((&modulus % &pb).to_u64().expect("residue fits"), p));
        for (a, &ri) in acc.iter_mut().zip(&r) {
            let diff = (BigInt::from(ri) - &*a).mod_floor(&pb);
            let k = (diff * &minv).mod_floor(&pb);
            *a += &modulus * k;
        }
        modulus *= &pb;
        let half = &modulus >> 1;
        let lift: Vec<BigInt> = acc.iter().map(|a| if *a > half { a - &modulus } else { a.clone() }).collect();
        if prev.as_ref() == Some(&lift) || modulus.bits() > cap_bits + 1 {
            return Ok(ConwayPoly::from_coeffs(lift));
        }
        prev = Some(lift);
    }
    unreachable!("prime supply exhausted")
}
