//! Oriented, ordered link diagrams.
//!
//! A diagram is stored as a signed Gauss code: each component is the cyclic
//! list of crossing visits met along its orientation, and each crossing
//! carries a sign. The PD code (rotation data) is derived from this.
//!
//! Sign convention: a crossing is positive when the under-strand passes from
//! right to left as seen along the over-strand. In PD terms, `X[a,b,c,d]`
//! lists edges counterclockwise from the incoming under-edge; the crossing
//! is positive exactly when `b` is the outgoing over-edge.
//!
//! Edge numbering: edge `j` of a component is the edge arriving at visit `j`;
//! edge 0 carries the component's basepoint. Global edge ids run through the
//! components in order. A crossing-free component has exactly one edge.

mod faces;
mod moves;
mod pd;

pub use pd::{parse_pd, serialize_pd};

pub use faces::{FaceMap, Side};
pub use moves::{r3_sites, ReidemeisterSite};

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

impl Visit {
    pub fn over(crossing: usize) -> Self {
        Visit { crossing, over: true }
    }
    pub fn under(crossing: usize) -> Self {
        Visit { crossing, over: false }
    }
}

/// Position of a visit: (component, index in its visit list).
pub type Place = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    signs: Vec<i8>,
    comps: Vec<Vec<Visit>>,
}

/// Where the two strands of a crossing sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingPlaces {
    pub over: Place,
    pub under: Place,
}

impl Diagram {
    /// Builds a diagram from a signed Gauss code and checks that it is
    /// combinatorially consistent and planar.
    pub fn from_gauss(comps: Vec<Vec<Visit>>, signs: Vec<i8>) -> Result<Self> {
        let d = Self::from_gauss_unchecked(comps, signs)?;
        d.faces().check_euler()?;
        Ok(d)
    }

    /// Like [`Diagram::from_gauss`] but skips the planarity check. Used by
    /// edits that are known to preserve planarity.
    pub(crate) fn from_gauss_unchecked(comps: Vec<Vec<Visit>>, signs: Vec<i8>) -> Result<Self> {
        let n = signs.len();
        let mut seen = vec![[false; 2]; n];
        for comp in &comps {
            for v in comp {
                if v.crossing >= n {
                    return Err(Error::Topology(format!(
                        "visit to crossing {} but only {} crossings",
                        v.crossing, n
                    )));
                }
                let slot = &mut seen[v.crossing][v.over as usize];
                if *slot {
                    return Err(Error::Topology(format!(
                        "crossing {} visited twice as {}",
                        v.crossing,
                        if v.over { "over" } else { "under" }
                    )));
                }
                *slot = true;
            }
        }
        for (c, s) in seen.iter().enumerate() {
            if !(s[0] && s[1]) {
                return Err(Error::Topology(format!("crossing {c} lacks an over or under strand")));
            }
        }
        if let Some(c) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::Topology(format!("crossing {c} has sign {}", signs[c])));
        }
        Ok(Diagram { signs, comps })
    }

    /// The empty diagram with `k` crossing-free components.
    pub fn unlink(k: usize) -> Self {
        Diagram { signs: vec![], comps: vec![vec![]; k] }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn num_crossings(&self) -> usize {
        self.signs.len()
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &[Visit] {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Vec<Visit>] {
        &self.comps
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub(crate) fn into_parts(self) -> (Vec<Vec<Visit>>, Vec<i8>) {
        (self.comps, self.signs)
    }

    pub(crate) fn check_comp(&self, i: usize) -> Result<()> {
        if i < self.comps.len() {
            Ok(())
        } else {
            Err(Error::UnknownComponent(i))
        }
    }

    /// Over and under places of every crossing.
    pub fn places(&self) -> Vec<CrossingPlaces> {
        let mut over = vec![(0, 0); self.signs.len()];
        let mut under = vec![(0, 0); self.signs.len()];
        for (i, comp) in self.comps.iter().enumerate() {
            for (p, v) in comp.iter().enumerate() {
                if v.over {
                    over[v.crossing] = (i, p);
                } else {
                    under[v.crossing] = (i, p);
                }
            }
        }
        over.into_iter().zip(under).map(|(over, under)| CrossingPlaces { over, under }).collect()
    }

    /// Number of edges of component `i`.
    pub fn comp_edges(&self, i: usize) -> usize {
        self.comps[i].len().max(1)
    }

    /// Global id of the first edge of each component, plus the total.
    pub fn edge_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.comps.len() + 1);
        let mut acc = 0;
        for i in 0..self.comps.len() {
            out.push(acc);
            acc += self.comp_edges(i);
        }
        out.push(acc);
        out
    }

    pub fn num_edges(&self) -> usize {
        (0..self.comps.len()).map(|i| self.comp_edges(i)).sum()
    }

    /// Global edge id to (component, index).
    pub fn edge_place(&self, e: usize) -> Result<Place> {
        let mut rest = e;
        for i in 0..self.comps.len() {
            let k = self.comp_edges(i);
            if rest < k {
                return Ok((i, rest));
            }
            rest -= k;
        }
        Err(Error::UnknownEdge(e))
    }

    pub fn edge_id(&self, comp: usize, idx: usize) -> usize {
        self.edge_offsets()[comp] + idx
    }

    /// Component owning global edge `e`.
    pub fn edge_component(&self, e: usize) -> Result<usize> {
        self.edge_place(e).map(|p| p.0)
    }

    /// PD slots of every crossing: edges counterclockwise from the incoming
    /// under-edge.
    pub fn pd_slots(&self) -> Vec<[usize; 4]> {
        let off = self.edge_offsets();
        let places = self.places();
        let edge_in = |(i, p): Place| off[i] + p;
        let edge_out = |(i, p): Place| off[i] + (p + 1) % self.comps[i].len();
        places
            .iter()
            .enumerate()
            .map(|(c, pl)| {
                let uin = edge_in(pl.under);
                let uout = edge_out(pl.under);
                let oin = edge_in(pl.over);
                let oout = edge_out(pl.over);
                if self.signs[c] > 0 {
                    [uin, oout, uout, oin]
                } else {
                    [uin, oin, uout, oout]
                }
            })
            .collect()
    }

    pub fn faces(&self) -> FaceMap {
        FaceMap::new(self)
    }

    /// Groups of components that form connected diagram pieces.
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let k = self.comps.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for pl in self.places() {
            let a = find(&mut parent, pl.over.0);
            let b = find(&mut parent, pl.under.0);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<usize, usize> = HashMap::new();
        for i in 0..k {
            let r = find(&mut parent, i);
            let g = *index.entry(r).or_insert_with(|| {
                groups.push(vec![]);
                groups.len() - 1
            });
            groups[g].push(i);
        }
        groups
    }

    pub fn is_split_diagram(&self) -> bool {
        self.pieces().len() > 1
    }

    /// Linking number of components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        self.check_comp(i)?;
        self.check_comp(j)?;
        if i == j {
            return Err(Error::Precondition("linking number needs two distinct components".into()));
        }
        let mut twice = 0i64;
        for (c, pl) in self.places().iter().enumerate() {
            let (a, b) = (pl.over.0, pl.under.0);
            if (a == i && b == j) || (a == j && b == i) {
                twice += self.signs[c] as i64;
            }
        }
        debug_assert!(twice % 2 == 0);
        Ok(twice / 2)
    }

    /// Sum of the signs of the self-crossings of component `i`.
    pub fn writhe(&self, i: usize) -> Result<i64> {
        self.check_comp(i)?;
        Ok(self
            .places()
            .iter()
            .enumerate()
            .filter(|(_, pl)| pl.over.0 == i && pl.under.0 == i)
            .map(|(c, _)| self.signs[c] as i64)
            .sum())
    }

    /// Sum of all crossing signs.
    pub fn total_writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Linking number of component `i` with the union of all the others.
    pub fn linking_with_rest(&self, i: usize) -> Result<i64> {
        let mut total = 0;
        for j in 0..self.comps.len() {
            if j != i {
                total += self.linking_number(i, j)?;
            }
        }
        Ok(total)
    }

    /// Number of Fox 3-colorings, i.e. `3^(arcs - rank)` over GF(3).
    pub fn count_3_colorings(&self) -> BigUint {
        let (arcs, rows) = self.arc_relations();
        let rank = rank_mod3(rows, arcs);
        BigUint::from(3u32).pow((arcs - rank) as u32)
    }

    /// Arc count and, per crossing, (over arc, incoming under arc, outgoing
    /// under arc).
    pub(crate) fn arc_relations(&self) -> (usize, Vec<[usize; 3]>) {
        let off = self.edge_offsets();
        let mut arc_of_edge = vec![0usize; self.num_edges()];
        let mut arcs = 0;
        for (i, comp) in self.comps.iter().enumerate() {
            let k = comp.len();
            let first_under = comp.iter().position(|v| !v.over);
            match first_under {
                None => {
                    for p in 0..self.comp_edges(i) {
                        arc_of_edge[off[i] + p] = arcs;
                    }
                    arcs += 1;
                }
                Some(u) => {
                    // Start on the edge leaving an under visit; a new arc
                    // begins after every under visit.
                    let mut cur = arcs;
                    for step in 0..k {
                        let p = (u + 1 + step) % k;
                        arc_of_edge[off[i] + p] = cur;
                        if !comp[p].over {
                            cur += 1;
                        }
                    }
                    arcs = cur;
                }
            }
        }
        let places = self.places();
        let rows = places
            .iter()
            .map(|pl| {
                let (oi, op) = pl.over;
                let (ui, up) = pl.under;
                let kk = self.comps[ui].len();
                [
                    arc_of_edge[off[oi] + op],
                    arc_of_edge[off[ui] + up],
                    arc_of_edge[off[ui] + (up + 1) % kk],
                ]
            })
            .collect();
        (arcs, rows)
    }

    // ------------------------------------------------------------------
    // Edits. All return new diagrams.
    // ------------------------------------------------------------------

    /// Reverses the orientation of component `i`. Crossings between `i` and
    /// other components change sign.
    pub fn reverse_component(&self, i: usize) -> Result<Diagram> {
        self.check_comp(i)?;
        let mut d = self.clone();
        d.comps[i].reverse();
        for (c, pl) in self.places().iter().enumerate() {
            if (pl.over.0 == i) != (pl.under.0 == i) {
                d.signs[c] = -d.signs[c];
            }
        }
        Ok(d)
    }

    /// Mirror image: every crossing is switched.
    pub fn mirror(&self) -> Diagram {
        let comps = self
            .comps
            .iter()
            .map(|c| c.iter().map(|v| Visit { crossing: v.crossing, over: !v.over }).collect())
            .collect();
        Diagram { signs: self.signs.iter().map(|s| -s).collect(), comps }
    }

    pub fn swap_components(&self, i: usize, j: usize) -> Result<Diagram> {
        self.check_comp(i)?;
        self.check_comp(j)?;
        let mut d = self.clone();
        d.comps.swap(i, j);
        Ok(d)
    }

    /// Moves the basepoint of component `i` forward by `k` visits.
    pub fn rotate_component(&self, i: usize, k: usize) -> Result<Diagram> {
        self.check_comp(i)?;
        let mut d = self.clone();
        let len = d.comps[i].len();
        if len > 0 {
            d.comps[i].rotate_left(k % len);
        }
        Ok(d)
    }

    /// Removes component `i` together with all crossings it takes part in.
    pub fn delete_component(&self, i: usize) -> Result<Diagram> {
        self.check_comp(i)?;
        let places = self.places();
        let dead: Vec<bool> = places.iter().map(|pl| pl.over.0 == i || pl.under.0 == i).collect();
        let mut comps = self.comps.clone();
        comps.remove(i);
        Ok(retain_crossings(comps, &self.signs, &dead))
    }

    /// Switches crossing `c` (over and under strands exchange).
    pub fn switch_crossing(&self, c: usize) -> Result<Diagram> {
        if c >= self.signs.len() {
            return Err(Error::UnknownCrossing(c));
        }
        let mut d = self.clone();
        d.signs[c] = -d.signs[c];
        for comp in d.comps.iter_mut() {
            for v in comp.iter_mut() {
                if v.crossing == c {
                    v.over = !v.over;
                }
            }
        }
        Ok(d)
    }

    /// Orientation-respecting smoothing of crossing `c`. A self-crossing
    /// splits its component in two (the second piece is appended last); an
    /// inter-component crossing merges the two components at the smaller
    /// position.
    pub fn smooth_crossing(&self, c: usize) -> Result<Diagram> {
        if c >= self.signs.len() {
            return Err(Error::UnknownCrossing(c));
        }
        let pl = self.places()[c];
        let (i, p) = pl.over;
        let (j, q) = pl.under;
        let mut comps = self.comps.clone();
        if i == j {
            let comp = &self.comps[i];
            let k = comp.len();
            let (a, b) = (p.min(q), p.max(q));
            // Pieces strictly between the two visits form one loop; the rest
            // (wrapping around the basepoint) forms the other.
            let inner: Vec<Visit> = comp[a + 1..b].to_vec();
            let mut outer: Vec<Visit> = comp[b + 1..k].to_vec();
            outer.extend_from_slice(&comp[..a]);
            comps[i] = outer;
            comps.push(inner);
        } else {
            let (lo, hi) = (i.min(j), i.max(j));
            let (plo, phi) = if lo == i { (p, q) } else { (q, p) };
            let a = &self.comps[lo];
            let b = &self.comps[hi];
            // Arrive at the crossing along `lo`, leave along `hi`, go around
            // `hi`, arrive back, leave along `lo`.
            let mut merged: Vec<Visit> = Vec::with_capacity(a.len() + b.len());
            merged.extend_from_slice(&a[..plo]);
            merged.extend_from_slice(&b[phi + 1..]);
            merged.extend_from_slice(&b[..phi]);
            merged.extend_from_slice(&a[plo + 1..]);
            comps[lo] = merged;
            comps.remove(hi);
        }
        let mut dead = vec![false; self.signs.len()];
        dead[c] = true;
        Ok(retain_crossings(comps, &self.signs, &dead))
    }

    /// Renumbers crossings in order of first appearance along the components.
    pub fn normalized(&self) -> Diagram {
        let mut map = vec![usize::MAX; self.signs.len()];
        let mut next = 0;
        for comp in &self.comps {
            for v in comp {
                if map[v.crossing] == usize::MAX {
                    map[v.crossing] = next;
                    next += 1;
                }
            }
        }
        let mut signs = vec![0i8; self.signs.len()];
        for (c, &m) in map.iter().enumerate() {
            signs[m] = self.signs[c];
        }
        let comps = self
            .comps
            .iter()
            .map(|comp| comp.iter().map(|v| Visit { crossing: map[v.crossing], over: v.over }).collect())
            .collect();
        Diagram { signs, comps }
    }

    /// Removes a trailing run of components, keeping the first `k`.
    pub fn truncate_components(&self, k: usize) -> Result<Diagram> {
        let mut d = self.clone();
        while d.num_components() > k {
            d = d.delete_component(d.num_components() - 1)?;
        }
        Ok(d)
    }
}

/// Drops the crossings flagged `dead`, renumbering the survivors in order.
pub(crate) fn retain_crossings(comps: Vec<Vec<Visit>>, signs: &[i8], dead: &[bool]) -> Diagram {
    let mut map = vec![usize::MAX; signs.len()];
    let mut new_signs = Vec::with_capacity(signs.len());
    for c in 0..signs.len() {
        if !dead[c] {
            map[c] = new_signs.len();
            new_signs.push(signs[c]);
        }
    }
    let comps = comps
        .into_iter()
        .map(|comp| {
            comp.into_iter()
                .filter(|v| !dead[v.crossing])
                .map(|v| Visit { crossing: map[v.crossing], over: v.over })
                .collect()
        })
        .collect();
    Diagram { signs: new_signs, comps }
}

fn rank_mod3(rows: Vec<[usize; 3]>, cols: usize) -> usize {
    let mut m: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![0u8; cols];
            row[r[0]] = (row[r[0]] + 2) % 3;
            row[r[1]] = (row[r[1]] + 2) % 3;
            row[r[2]] = (row[r[2]] + 2) % 3;
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col]; // 1 and 2 are self-inverse mod 3
        for x in m[rank].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for cc in col..cols {
                    m[r][cc] = (m[r][cc] + 3 * 3 - f * m[rank][cc]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}
