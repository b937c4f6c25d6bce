#![allow(dead_code)]

use betalink::diagram::{parse_pd, serialize_pd};
use betalink::{ConwayPoly, Diagram, Visit};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn o(c: usize) -> Visit {
    Visit::over(c)
}

pub fn u(c: usize) -> Visit {
    Visit::under(c)
}

pub fn hopf(sign: i8) -> Diagram {
    Diagram::from_gauss(vec![vec![o(0), u(1)], vec![u(0), o(1)]], vec![sign, sign]).unwrap()
}

pub fn trefoil(sign: i8) -> Diagram {
    Diagram::from_gauss(vec![vec![o(0), u(1), o(2), u(0), o(1), u(2)]], vec![sign; 3]).unwrap()
}

pub fn figure_eight() -> Diagram {
    parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap()
}

/// Closure of a braid on `strands` strands. Letter `±i` is `σ_i^{±1}`
/// (1-based); in `σ_i` the strand at position `i` passes over.
pub fn braid(strands: usize, word: &[i32]) -> Diagram {
    let n = word.len();
    let signs: Vec<i8> = word.iter().map(|&g| if g > 0 { 1 } else { -1 }).collect();
    // For each position at the bottom, follow the strand up through the word.
    let mut perm = vec![0usize; strands];
    let mut visits_from: Vec<Vec<Visit>> = vec![vec![]; strands];
    for start in 0..strands {
        let mut pos = start;
        for (c, &g) in word.iter().enumerate() {
            let i = g.unsigned_abs() as usize - 1;
            if pos == i {
                visits_from[start].push(Visit { crossing: c, over: g > 0 });
                pos = i + 1;
            } else if pos == i + 1 {
                visits_from[start].push(Visit { crossing: c, over: g < 0 });
                pos = i;
            }
        }
        perm[start] = pos;
    }
    let mut seen = vec![false; strands];
    let mut comps = vec![];
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            comp.extend(visits_from[p].iter().copied());
            p = perm[p];
        }
        comps.push(comp);
    }
    assert_eq!(signs.len(), n);
    Diagram::from_gauss(comps, signs).unwrap()
}

/// Places `b` beside `a`.
pub fn disjoint_union(a: &Diagram, b: &Diagram) -> Diagram {
    let off = a.num_crossings();
    let mut comps: Vec<Vec<Visit>> = a.components().to_vec();
    comps.extend(
        b.components()
            .iter()
            .map(|c| c.iter().map(|v| Visit { crossing: v.crossing + off, over: v.over }).collect()),
    );
    let mut signs = a.signs().to_vec();
    signs.extend_from_slice(b.signs());
    Diagram::from_gauss(comps, signs).unwrap()
}

/// Small knots and links with known Conway polynomials.
pub fn standard_corpus() -> Vec<(&'static str, Diagram)> {
    vec![
        ("unknot", Diagram::unknot()),
        ("unlink2", Diagram::unlink(2)),
        ("hopf+", hopf(1)),
        ("hopf-", hopf(-1)),
        ("trefoil+", trefoil(1)),
        ("trefoil-", trefoil(-1)),
        ("figure-eight", figure_eight()),
        ("cinquefoil", braid(2, &[1, 1, 1, 1, 1])),
        ("solomon", braid(2, &[1, 1, 1, 1])),
        ("three-twist", braid(3, &[1, 1, 1, -2, 1, -2])),
        ("borromean", braid(3, &[1, -2, 1, -2, 1, -2])),
        ("whitehead", braid(3, &[1, 1, -2, 1, -2])),
    ]
}

// ---------------------------------------------------------------------
// Alexander polynomial oracle: exact Bareiss elimination over Z[t] on the
// Wirtinger matrix read from PD text.
// ---------------------------------------------------------------------

type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn psub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default()).collect())
}

fn pdiv_exact(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    if r.is_empty() {
        return vec![];
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        assert!((&c * &lead) == r[r.len() - 1], "inexact division");
        q[k] = c.clone();
        let mut sub = vec![BigInt::zero(); k];
        sub.extend(b.iter().map(|x| x * &c));
        r = psub(&r, &sub);
    }
    assert!(r.is_empty(), "nonzero remainder");
    trim(q)
}

fn det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut sign = BigInt::one();
    let mut prev: Poly = vec![BigInt::one()];
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_empty()) else {
            return vec![];
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = psub(&pmul(&m[i][j], &m[k][k]), &pmul(&m[i][k], &m[k][j]));
                m[i][j] = pdiv_exact(&v, &prev);
            }
            m[i][k] = vec![];
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].iter().map(|c| c * &sign).collect()
}

/// Alexander polynomial up to units, from the PD text of `d`. `None` when
/// some component never passes under, so arcs and crossings differ.
pub fn alexander_oracle(d: &Diagram) -> Option<Poly> {
    let pd = serialize_pd(d);
    let body = pd.trim_start_matches("PD[");
    let mut crossings: Vec<[usize; 4]> = vec![];
    for item in body.split("X[").skip(1) {
        let nums: Vec<usize> = item
            .split(']')
            .next()
            .unwrap()
            .split(',')
            .map(|s| s.trim().parse().unwrap())
            .collect();
        crossings.push([nums[0], nums[1], nums[2], nums[3]]);
    }
    let n = crossings.len();
    if d.num_components() > 1 && d.components().iter().any(|c| c.is_empty()) {
        // A free circle splits off.
        return Some(vec![]);
    }
    if n == 0 {
        return Some(if d.num_components() == 1 { vec![BigInt::one()] } else { vec![] });
    }
    let max_label = crossings.iter().flatten().copied().max().unwrap();
    let mut parent: Vec<usize> = (0..=max_label).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for x in &crossings {
        let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
        parent[a] = b;
    }
    let mut arc_ids = std::collections::BTreeMap::new();
    for x in &crossings {
        for &l in x {
            let r = find(&mut parent, l);
            let next = arc_ids.len();
            arc_ids.entry(r).or_insert(next);
        }
    }
    let arcs = arc_ids.len();
    if arcs != n {
        return None;
    }
    let t = |c: i64, e: usize| -> Poly {
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::from(c);
        p
    };
    let mut rows: Vec<Vec<Poly>> = vec![vec![vec![]; arcs]; n];
    for (r, x) in crossings.iter().enumerate() {
        let over = arc_ids[&find(&mut parent, x[1])];
        let uin = arc_ids[&find(&mut parent, x[0])];
        let uout = arc_ids[&find(&mut parent, x[2])];
        let positive = d.sign(r) > 0;
        let adds: [(usize, Poly); 3] = if positive {
            [(over, psub(&t(1, 0), &t(1, 1))), (uin, t(1, 1)), (uout, t(-1, 0))]
        } else {
            [(over, psub(&t(1, 1), &t(1, 0))), (uin, t(1, 0)), (uout, t(-1, 1))]
        };
        for (col, v) in adds {
            rows[r][col] = trim(psub(&rows[r][col], &v.iter().map(|c| -c).collect()));
        }
    }
    let minor: Vec<Vec<Poly>> = rows[..n - 1].iter().map(|row| row[..arcs - 1].to_vec()).collect();
    Some(det(minor))
}

/// Normal form of a Laurent polynomial in `s`: lowest power removed and
/// leading coefficient made positive.
fn normal(mut p: Poly) -> Poly {
    p = trim(p);
    let low = p.iter().position(|c| !c.is_zero()).unwrap_or(p.len());
    p.drain(..low);
    if p.last().is_some_and(|c| c.is_negative()) {
        p = p.iter().map(|c| -c).collect();
    }
    p
}

/// `Δ(s^2)` in normal form.
pub fn alexander_in_s(d: &Diagram) -> Option<Poly> {
    let a = alexander_oracle(d)?;
    let mut p = vec![BigInt::zero(); 2 * a.len()];
    for (k, c) in a.iter().enumerate() {
        p[2 * k] = c.clone();
    }
    Some(normal(p))
}

/// `∇(s - 1/s)` in normal form.
pub fn conway_in_s(c: &ConwayPoly) -> Poly {
    let Some(deg) = c.degree() else { return vec![] };
    let mut total: Poly = vec![];
    for (k, ck) in c.coeffs().iter().enumerate() {
        // (s^2 - 1)^k s^(deg - k)
        let mut term: Poly = vec![ck.clone()];
        for _ in 0..k {
            term = pmul(&term, &vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]);
        }
        let mut shifted = vec![BigInt::zero(); deg - k];
        shifted.extend(term);
        let n = total.len().max(shifted.len());
        total = (0..n)
            .map(|i| total.get(i).cloned().unwrap_or_default() + shifted.get(i).cloned().unwrap_or_default())
            .collect();
    }
    normal(total)
}

// ---------------------------------------------------------------------
// Random Reidemeister edits.
// ---------------------------------------------------------------------

use betalink::diagram::{r3_sites, Side};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// One random first, second or third move; `None` when the chosen kind has
/// no site.
pub fn random_move(d: &Diagram, rng: &mut StdRng) -> Option<(&'static str, Diagram)> {
    let edges = d.num_edges();
    match rng.gen_range(0..3) {
        0 => {
            let e = rng.gen_range(0..edges);
            let side = if rng.gen() { Side::Left } else { Side::Right };
            d.r1_add(e, side, rng.gen()).ok().map(|x| ("R1", x))
        }
        1 => {
            let fm = d.faces();
            let f = rng.gen_range(0..fm.len());
            let b = fm.face(f).to_vec();
            if b.len() < 2 {
                return None;
            }
            let i = rng.gen_range(0..b.len());
            let j = (i + rng.gen_range(1..b.len())) % b.len();
            let ((a, sa), (bb, sb)) = (b[i], b[j]);
            if a == bb {
                return None;
            }
            d.r2_add(a, sa, bb, sb, rng.gen()).ok().map(|x| ("R2", x))
        }
        _ => {
            let sites = r3_sites(d);
            if sites.is_empty() {
                return None;
            }
            let s = &sites[rng.gen_range(0..sites.len())];
            d.r3(s.face).ok().map(|x| ("R3", x))
        }
    }
}

/// Applies `count` successful random moves and returns the kinds applied.
pub fn scramble(d: &Diagram, count: usize, seed: u64) -> (Diagram, Vec<&'static str>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut kinds = vec![];
    let mut tries = 0;
    while kinds.len() < count && tries < 50 * count {
        tries += 1;
        if let Some((k, next)) = random_move(&cur, &mut rng) {
            cur = next;
            kinds.push(k);
        }
    }
    (cur, kinds)
}
