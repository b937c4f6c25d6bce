//! Parallel pushoffs and band sums.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Side, Visit};
use crate::error::{Error, Result};

/// Where a band joins two components: edge `e0` on one, `e1` on the other,
/// both with `face` on the given sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandSpec {
    pub e0: usize,
    pub e1: usize,
    pub face: usize,
    pub side0: Side,
    pub side1: Side,
}

impl BandSpec {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("band spec serializes")
    }

    pub fn from_json(text: &str) -> Result<BandSpec> {
        serde_json::from_str(text).map_err(|e| Error::Syntax { pos: e.column().saturating_sub(1), msg: e.to_string() })
    }
}

/// Blackboard parallel of component `i` with `t` extra full twists, laid on
/// the left of the orientation and appended as the last component.
pub fn parallel_pushoff(d: &Diagram, i: usize, t: i64) -> Result<Diagram> {
    parallel_pushoff_side(d, i, t, Side::Left)
}

pub fn parallel_pushoff_side(d: &Diagram, i: usize, t: i64, side: Side) -> Result<Diagram> {
    pushoff_with_ids(d, i, t, side).map(|(p, _)| p)
}

/// Pushoff together with the new id of each (old crossing, over copy,
/// under copy); copy 1 is the pushoff.
pub(crate) type CopyIds = Vec<[[usize; 2]; 2]>;

pub(crate) fn pushoff_with_ids(d: &Diagram, i: usize, t: i64, side: Side) -> Result<(Diagram, CopyIds)> {
    d.check_comp(i)?;
    let n = d.num_crossings();
    let places = d.places();
    let on_k = |p: (usize, usize)| p.0 == i;

    // Copy 1 only exists for strands of component i.
    let mut ids = vec![[[usize::MAX; 2]; 2]; n];
    let mut signs: Vec<i8> = vec![];
    for c in 0..n {
        let oc = if on_k(places[c].over) { 2 } else { 1 };
        let uc = if on_k(places[c].under) { 2 } else { 1 };
        for a in 0..oc {
            for b in 0..uc {
                ids[c][a][b] = signs.len();
                signs.push(d.sign(c));
            }
        }
    }

    // Copies of the other strand met by a strand crossing it. A strand
    // crossing from the other's right to its left meets the original first
    // when the pushoff lies on the left.
    let other_copies = |c: usize, over: bool| -> Vec<usize> {
        let other = if over { places[c].under } else { places[c].over };
        if !on_k(other) {
            return vec![0];
        }
        let right_to_left = if over { d.sign(c) < 0 } else { d.sign(c) > 0 };
        if right_to_left == (side == Side::Left) {
            vec![0, 1]
        } else {
            vec![1, 0]
        }
    };
    let visits_for = |v: Visit, copy: usize| -> Vec<Visit> {
        other_copies(v.crossing, v.over)
            .into_iter()
            .map(|o| {
                let id = if v.over { ids[v.crossing][copy][o] } else { ids[v.crossing][o][copy] };
                Visit { crossing: id, over: v.over }
            })
            .collect()
    };

    // Twist crossings at the start of component i and its copy. L is the
    // strand on the left.
    let (k_is_left, mut k_twist, mut j_twist) = (side == Side::Right, vec![], vec![]);
    for _ in 0..t.unsigned_abs() {
        let c1 = signs.len();
        let c2 = c1 + 1;
        let sign: i8 = if t > 0 { 1 } else { -1 };
        signs.push(sign);
        signs.push(sign);
        // Positive: L over R, then R over L. Negative: R over L, then L over R.
        let l_over_first = t > 0;
        let (l_first, l_second) = (l_over_first, !l_over_first);
        let (lv, rv) = (
            [Visit { crossing: c1, over: l_first }, Visit { crossing: c2, over: l_second }],
            [Visit { crossing: c1, over: !l_first }, Visit { crossing: c2, over: !l_second }],
        );
        if k_is_left {
            k_twist.extend(lv);
            j_twist.extend(rv);
        } else {
            k_twist.extend(rv);
            j_twist.extend(lv);
        }
    }

    let mut comps: Vec<Vec<Visit>> = vec![];
    for (ci, comp) in d.components().iter().enumerate() {
        if ci == i {
            let mut seq = k_twist.clone();
            for &v in comp {
                seq.extend(visits_for(v, 0));
            }
            comps.push(seq);
        } else {
            comps.push(comp.iter().flat_map(|&v| visits_for(v, 0)).collect());
        }
    }
    let mut j = j_twist;
    for &v in d.component(i) {
        j.extend(visits_for(v, 1));
    }
    comps.push(j);
    Ok((Diagram::from_gauss(comps, signs)?, ids))
}

/// Framing that makes the pushoff of `i` unlinked from the whole diagram.
pub fn zero_framing(d: &Diagram, i: usize) -> Result<i64> {
    Ok(-d.writhe(i)? - d.linking_with_rest(i)?)
}

pub fn zero_pushoff(d: &Diagram, i: usize) -> Result<Diagram> {
    zero_pushoff_side(d, i, Side::Left)
}

pub fn zero_pushoff_side(d: &Diagram, i: usize, side: Side) -> Result<Diagram> {
    parallel_pushoff_side(d, i, zero_framing(d, i)?, side)
}

/// Checks `band` for a sum of components `i` and `j` that keeps the band
/// face clear of the `protected` components.
pub fn check_band(d: &Diagram, i: usize, j: usize, band: &BandSpec, protected: &[usize]) -> Result<()> {
    d.check_comp(i)?;
    d.check_comp(j)?;
    if i == j {
        return Err(Error::Band("a band sum needs two distinct components".into()));
    }
    if d.edge_component(band.e0)? != i {
        return Err(Error::Band(format!("edge {} is not on component {i}", band.e0)));
    }
    if d.edge_component(band.e1)? != j {
        return Err(Error::Band(format!("edge {} is not on component {j}", band.e1)));
    }
    if band.side0 != band.side1 {
        return Err(Error::Band("band sides give incompatible orientations".into()));
    }
    let fm = d.faces();
    let f0 = fm.face_of(band.e0, band.side0)?;
    let f1 = fm.face_of(band.e1, band.side1)?;
    let same_piece = fm.piece_of_face(f0) == fm.piece_of_face(f1);
    if same_piece && f0 != f1 {
        return Err(Error::Band(format!("edges {} and {} are not on a common face", band.e0, band.e1)));
    }
    if band.face != f0 {
        return Err(Error::Band(format!("face {} is not on side {:?} of edge {}", band.face, band.side0, band.e0)));
    }
    for &p in protected {
        for &f in &[f0, f1] {
            if fm.face(f).iter().any(|&(e, _)| d.edge_component(e).ok() == Some(p)) {
                return Err(Error::Band(format!("band face {f} touches protected component {p}")));
            }
        }
    }
    Ok(())
}

/// All valid bands between components `i` and `j`, in increasing order.
pub fn valid_bands(d: &Diagram, i: usize, j: usize, protected: &[usize]) -> Result<Vec<BandSpec>> {
    d.check_comp(i)?;
    d.check_comp(j)?;
    let fm = d.faces();
    let off = d.edge_offsets();
    let mut out = vec![];
    for e0 in off[i]..off[i + 1] {
        for e1 in off[j]..off[j + 1] {
            for side in [Side::Left, Side::Right] {
                let band = BandSpec { e0, e1, face: fm.face_of(e0, side)?, side0: side, side1: side };
                if check_band(d, i, j, &band, protected).is_ok() {
                    out.push(band);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The lexicographically least valid band.
pub fn auto_band(d: &Diagram, i: usize, j: usize, protected: &[usize]) -> Result<BandSpec> {
    valid_bands(d, i, j, protected)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Band(format!("no valid band joins components {i} and {j}")))
}

/// Merges components `i` and `j` along a planar band. The merged component
/// takes position `min(i, j)` and starts at the head of `e0`.
pub fn band_sum(d: &Diagram, i: usize, j: usize, band: &BandSpec, protected: &[usize]) -> Result<Diagram> {
    check_band(d, i, j, band, protected)?;
    let (_, p0) = d.edge_place(band.e0)?;
    let (_, p1) = d.edge_place(band.e1)?;
    let (mut comps, signs) = d.clone().into_parts();
    let rot = |c: &[Visit], p: usize| -> Vec<Visit> {
        if c.is_empty() {
            vec![]
        } else {
            c[p..].iter().chain(&c[..p]).copied().collect()
        }
    };
    let mut merged = rot(&comps[i], p0);
    merged.extend(rot(&comps[j], p1));
    let (lo, hi) = (i.min(j), i.max(j));
    comps[lo] = merged;
    comps.remove(hi);
    Diagram::from_gauss(comps, signs)
}
