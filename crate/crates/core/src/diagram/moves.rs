//! Scripted Reidemeister moves. These are edits for building test instances,
//! not a simplification engine.

use super::{Diagram, Side, Visit};
use crate::error::{Error, Result};

/// A triangular face where a third Reidemeister move applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidemeisterSite {
    pub face: usize,
    pub edges: [usize; 3],
}

/// Triangular faces whose three strands have a consistent height order.
pub fn r3_sites(d: &Diagram) -> Vec<ReidemeisterSite> {
    let fm = d.faces();
    (0..fm.len())
        .filter_map(|f| {
            let b = fm.face(f);
            if b.len() != 3 {
                return None;
            }
            let edges = [b[0].0, b[1].0, b[2].0];
            r3_heights_ok(d, &edges).then_some(ReidemeisterSite { face: f, edges })
        })
        .collect()
}

fn edge_ends(d: &Diagram, e: usize) -> Result<(usize, usize, usize)> {
    let (i, p) = d.edge_place(e)?;
    let k = d.component(i).len();
    if k < 2 {
        return Err(Error::Move(format!("edge {e} does not run between two crossings")));
    }
    Ok((i, (p + k - 1) % k, p))
}

fn r3_heights_ok(d: &Diagram, edges: &[usize; 3]) -> bool {
    let mut crossings = vec![];
    let mut strands = vec![];
    for &e in edges {
        let Ok((i, a, b)) = edge_ends(d, e) else { return false };
        let comp = d.component(i);
        let (va, vb) = (comp[a], comp[b]);
        if va.crossing == vb.crossing {
            return false;
        }
        crossings.push(va.crossing);
        crossings.push(vb.crossing);
        strands.push((va, vb));
    }
    crossings.sort_unstable();
    crossings.dedup();
    if crossings.len() != 3 {
        return false;
    }
    // Each strand is top, middle or bottom: top is over at both ends, bottom
    // under at both, and exactly one of each occurs.
    let mut top = 0;
    let mut bottom = 0;
    for (va, vb) in strands {
        match (va.over, vb.over) {
            (true, true) => top += 1,
            (false, false) => bottom += 1,
            _ => {}
        }
    }
    top == 1 && bottom == 1
}

impl Diagram {
    /// Adds a kink at the end of edge `e`, with its loop on `side`. The
    /// strand meets the new crossing first on the over-strand when
    /// `over_first` is set.
    pub fn r1_add(&self, e: usize, side: Side, over_first: bool) -> Result<Diagram> {
        let (i, p) = self.edge_place(e)?;
        let c = self.num_crossings();
        let sign: i8 = match (side, over_first) {
            (Side::Left, true) | (Side::Right, false) => -1,
            _ => 1,
        };
        let (mut comps, mut signs) = self.clone().into_parts();
        comps[i].splice(p..p, [Visit { crossing: c, over: over_first }, Visit { crossing: c, over: !over_first }]);
        signs.push(sign);
        Diagram::from_gauss(comps, signs)
    }

    /// Removes a kink: a crossing whose two visits are consecutive.
    pub fn r1_remove(&self, c: usize) -> Result<Diagram> {
        let pl = self.places().get(c).copied().ok_or(Error::UnknownCrossing(c))?;
        if pl.over.0 != pl.under.0 {
            return Err(Error::Move(format!("crossing {c} is not a kink")));
        }
        let k = self.component(pl.over.0).len();
        let (a, b) = (pl.over.1, pl.under.1);
        if (a + 1) % k != b && (b + 1) % k != a {
            return Err(Error::Move(format!("crossing {c} is not a kink")));
        }
        let mut dead = vec![false; self.num_crossings()];
        dead[c] = true;
        Ok(super::retain_crossings(self.comps.clone(), &self.signs, &dead))
    }

    /// Pushes a finger of edge `a` across edge `b` inside the face they
    /// share (on `side_a` of `a` and `side_b` of `b`), creating two
    /// crossings where `a` is over iff `a_over`.
    pub fn r2_add(&self, a: usize, side_a: Side, b: usize, side_b: Side, a_over: bool) -> Result<Diagram> {
        if a == b {
            return Err(Error::Move("second Reidemeister move needs two distinct edges".into()));
        }
        let fm = self.faces();
        let fa = fm.face_of(a, side_a)?;
        let fb = fm.face_of(b, side_b)?;
        let same_piece = fm.piece_of_face(fa) == fm.piece_of_face(fb);
        if same_piece && fa != fb {
            return Err(Error::Move(format!("edges {a} and {b} do not share a face on the given sides")));
        }
        let (ia, pa) = self.edge_place(a)?;
        let (ib, pb) = self.edge_place(b)?;
        let c1 = self.num_crossings();
        let c2 = c1 + 1;
        let e1: i8 = (if side_b == Side::Left { 1 } else { -1 }) * (if a_over { 1 } else { -1 });
        let along_a = [Visit { crossing: c1, over: a_over }, Visit { crossing: c2, over: a_over }];
        let along_b = if side_a != side_b {
            [Visit { crossing: c1, over: !a_over }, Visit { crossing: c2, over: !a_over }]
        } else {
            [Visit { crossing: c2, over: !a_over }, Visit { crossing: c1, over: !a_over }]
        };
        let (mut comps, mut signs) = self.clone().into_parts();
        // Insert at the later position first so the earlier index stays valid.
        if (ia, pa) > (ib, pb) {
            comps[ia].splice(pa..pa, along_a);
            comps[ib].splice(pb..pb, along_b);
        } else {
            comps[ib].splice(pb..pb, along_b);
            comps[ia].splice(pa..pa, along_a);
        }
        signs.push(e1);
        signs.push(-e1);
        Diagram::from_gauss(comps, signs)
    }

    /// Removes a bigon: crossings `c1`, `c2` adjacent along both strands,
    /// with one strand over at both.
    pub fn r2_remove(&self, c1: usize, c2: usize) -> Result<Diagram> {
        let places = self.places();
        let (p1, p2) = match (places.get(c1), places.get(c2)) {
            (Some(a), Some(b)) if c1 != c2 => (*a, *b),
            _ => return Err(Error::Move(format!("crossings {c1}, {c2} do not form a bigon"))),
        };
        let adjacent = |x: (usize, usize), y: (usize, usize)| {
            let k = self.component(x.0).len();
            x.0 == y.0 && ((x.1 + 1) % k == y.1 || (y.1 + 1) % k == x.1)
        };
        let ok = (adjacent(p1.over, p2.over) && adjacent(p1.under, p2.under))
            && self.signs[c1] == -self.signs[c2];
        if !ok {
            return Err(Error::Move(format!("crossings {c1}, {c2} do not form a bigon")));
        }
        let mut dead = vec![false; self.num_crossings()];
        dead[c1] = true;
        dead[c2] = true;
        let d = super::retain_crossings(self.comps.clone(), &self.signs, &dead);
        d.faces().check_euler()?;
        Ok(d)
    }

    /// Third Reidemeister move across the triangular face `face`.
    pub fn r3(&self, face: usize) -> Result<Diagram> {
        let fm = self.faces();
        if face >= fm.len() {
            return Err(Error::Move(format!("no face {face}")));
        }
        let b = fm.face(face);
        if b.len() != 3 {
            return Err(Error::Move(format!("face {face} is not a triangle")));
        }
        let edges = [b[0].0, b[1].0, b[2].0];
        if !r3_heights_ok(self, &edges) {
            return Err(Error::Move(format!("face {face} does not admit a third move")));
        }
        let (mut comps, signs) = self.clone().into_parts();
        for e in edges {
            let (i, a, bb) = edge_ends(self, e)?;
            comps[i].swap(a, bb);
        }
        Diagram::from_gauss(comps, signs)
    }
}
