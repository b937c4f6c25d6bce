//! Generators for the twisted-double link families.
//!
//! Every family member is a pair `(K, B)` with `B` an unknotted round
//! component. A level of the construction takes a knot `J` in the
//! complement of `B`, adds a parallel copy `J'` with `lk(J, J') = f`,
//! reverses it, and joins `J` to `-J'` by a band that winds `d` times around
//! `B`. The innermost `J` is a small loop lying over `B`.

use crate::diagram::{Diagram, Side, Visit};
use crate::error::{Error, Result};
use crate::surgery::{auto_band, band_sum, pushoff_with_ids};

/// Full twists inserted between a strand and its parallel copy. Expands to
/// `2|twists|` crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistRegion {
    pub site: usize,
    pub twists: i64,
}

impl TwistRegion {
    pub fn crossings(&self) -> usize {
        2 * self.twists.unsigned_abs() as usize
    }
}

/// A generated link with the twist regions used and the expected series
/// coefficients `β_1, β_2, ...`.
#[derive(Clone, Debug)]
pub struct FamilyLink {
    pub name: String,
    pub diagram: Diagram,
    pub regions: Vec<TwistRegion>,
    pub expected: Vec<i64>,
}

/// Small loop `J` (component 0) passing over the round component `B`
/// (component 1) twice, once at each sign.
fn base_loop() -> Diagram {
    let (o, u) = (Visit::over, Visit::under);
    Diagram::from_gauss(vec![vec![o(0), o(1)], vec![u(0), u(1)]], vec![1, -1]).expect("base loop is planar")
}

/// One level: doubles component 0 with framing `f` and a band winding `d`
/// times around component 1. Returns the new diagram and the number of full
/// twists inserted.
fn double_around(dg: &Diagram, f: i64, d: usize) -> Result<(Diagram, i64)> {
    if d == 0 {
        return Err(Error::Precondition("band winding must be positive".into()));
    }
    let places = dg.places();
    // Site: a positive crossing of component 0 over component 1.
    let site = dg
        .component(0)
        .iter()
        .find(|v| v.over && places[v.crossing].under.0 == 1 && dg.sign(v.crossing) > 0)
        .map(|v| v.crossing)
        .ok_or_else(|| Error::Precondition("no positive crossing over the round component".into()))?;
    let twists = f - dg.writhe(0)?;
    let (pushed, ids) = pushoff_with_ids(dg, 0, twists, Side::Left)?;
    let last = pushed.num_components() - 1;
    let pushed = pushed.reverse_component(last)?;
    let (xs, xp) = (ids[site][0][0], ids[site][1][0]);

    let (mut comps, mut signs) = pushed.into_parts();
    let p_comp = comps.pop().expect("pushoff component");
    let mut e1 = vec![];
    let mut e2 = vec![];
    for _ in 0..2 * d {
        e1.push(signs.len());
        signs.push(1);
        e2.push(signs.len());
        signs.push(-1);
    }
    let edge_over = |k: usize| k % 2 == 0;

    let pos = |c: &[Visit], x: usize| c.iter().position(|v| v.crossing == x).expect("site crossing on component");
    let k_comp = &comps[0];
    let ks = pos(k_comp, xs);
    let pp = pos(&p_comp, xp);
    let mut k_new: Vec<Visit> = k_comp[ks..].iter().chain(&k_comp[..ks]).copied().collect();
    k_new.extend((0..2 * d).map(|k| Visit { crossing: e1[k], over: edge_over(k) }));
    k_new.extend(p_comp[pp + 1..].iter().chain(&p_comp[..pp]).copied());
    k_new.push(Visit::over(xp));
    k_new.extend((0..2 * d).rev().map(|k| Visit { crossing: e2[k], over: edge_over(k) }));

    let b = &comps[1];
    let bs = pos(b, xs);
    if b[(bs + 1) % b.len()].crossing != xp {
        return Err(Error::Topology("round component does not meet the site and its copy in turn".into()));
    }
    let mut b_new = b[..=bs].to_vec();
    for k in 0..2 * d {
        // Edges lie over the round component at every other crossing; the
        // lower edge alternates between the two band edges.
        let (lower, upper) = if edge_over(k) { (e2[k], e1[k]) } else { (e1[k], e2[k]) };
        b_new.push(Visit { crossing: lower, over: !edge_over(k) });
        b_new.push(Visit { crossing: upper, over: !edge_over(k) });
    }
    b_new.extend_from_slice(&b[bs + 1..]);
    comps[0] = k_new;
    comps[1] = b_new;
    Ok((Diagram::from_gauss(comps, signs)?, twists))
}

/// `W_n`: the twisted Whitehead link with `n` full twists.
pub fn gen_w(n: i64) -> Result<Diagram> {
    gen_wm(&[n])
}

/// `W_{n_1,...,n_m}`.
pub fn gen_wm(ns: &[i64]) -> Result<Diagram> {
    build_wm(ns).map(|(d, _)| d)
}

fn build_wm(ns: &[i64]) -> Result<(Diagram, Vec<TwistRegion>)> {
    if ns.is_empty() {
        return Err(Error::Precondition("at least one twist parameter is needed".into()));
    }
    let mut d = base_loop();
    let mut regions = vec![];
    for (site, &f) in ns.iter().enumerate().rev() {
        let (next, twists) = double_around(&d, f, 1)?;
        d = next;
        regions.push(TwistRegion { site, twists });
    }
    regions.reverse();
    Ok((d, regions))
}

/// `t^d + t^-d - 2` as a polynomial in `x = 2 - t - 1/t`.
fn winding_poly(d: usize) -> Vec<i128> {
    let s1 = [2i128, -1];
    let mul_s1 = |p: &[i128]| {
        let mut out = vec![0i128; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            out[i] += c * s1[0];
            out[i + 1] += c * s1[1];
        }
        out
    };
    let (mut prev, mut cur) = (vec![2i128], s1.to_vec());
    for _ in 1..d {
        let mut next = mul_s1(&cur);
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur[0] -= 2;
    cur
}

/// Framings `f_1..f_m` with `-Σ f_d P_d(x) = Σ n_i x^i`, where a piece with
/// winding `d` contributes `-f_d P_d`.
pub fn m_framings(ns: &[i64]) -> Result<Vec<i64>> {
    let m = ns.len();
    let mut rest = vec![0i128; m + 1];
    for (i, &n) in ns.iter().enumerate() {
        rest[i + 1] = -(n as i128);
    }
    let mut fs = vec![0i64; m];
    for d in (1..=m).rev() {
        let p = winding_poly(d);
        let lead = p[d];
        let f = rest[d] / lead;
        for (k, &c) in p.iter().enumerate() {
            rest[k] -= f * c;
        }
        fs[d - 1] = i64::try_from(f).map_err(|_| Error::Precondition("framing overflows".into()))?;
    }
    debug_assert!(rest.iter().all(|&c| c == 0));
    Ok(fs)
}

/// `M_{n_1,...,n_m}`: one doubled loop per winding number `d = 1..m`, all
/// strung along the round component and joined by planar bands.
pub fn gen_mm(ns: &[i64]) -> Result<Diagram> {
    build_mm(ns).map(|(d, _)| d)
}

fn build_mm(ns: &[i64]) -> Result<(Diagram, Vec<TwistRegion>)> {
    if ns.is_empty() {
        return Err(Error::Precondition("at least one twist parameter is needed".into()));
    }
    let fs = m_framings(ns)?;
    let mut knots = vec![];
    let mut round = vec![];
    let mut signs: Vec<i8> = vec![];
    let mut regions = vec![];
    for (i, &f) in fs.iter().enumerate() {
        let (piece, twists) = double_around(&base_loop(), f, i + 1)?;
        regions.push(TwistRegion { site: i, twists });
        let off = signs.len();
        let shift = |c: &[Visit]| c.iter().map(|v| Visit { crossing: v.crossing + off, over: v.over }).collect::<Vec<_>>();
        knots.push(shift(piece.component(0)));
        round.extend(shift(piece.component(1)));
        signs.extend_from_slice(piece.signs());
    }
    let m = knots.len();
    let mut comps = knots;
    comps.push(round);
    let mut d = Diagram::from_gauss(comps, signs)?;
    // Components are K_1..K_m then B; fold the knots into component 0.
    for _ in 1..m {
        let band = auto_band(&d, 0, 1, &[])?;
        d = band_sum(&d, 0, 1, &band, &[])?;
    }
    Ok((d, regions))
}

fn params_name(family: &str, ns: &[i64]) -> String {
    let p: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
    format!("{family}:{}", p.join(","))
}

/// Builds a family member by name (`W` or `M`).
pub fn generate(family: &str, ns: &[i64]) -> Result<FamilyLink> {
    let (diagram, regions) = match family {
        "W" | "w" => build_wm(ns)?,
        "M" | "m" => build_mm(ns)?,
        other => return Err(Error::Precondition(format!("unknown family {other:?}; expected W or M"))),
    };
    Ok(FamilyLink { name: params_name(&family.to_uppercase(), ns), diagram, regions, expected: ns.to_vec() })
}

/// Every W and M member with exactly `max_m` parameters drawn from
/// `twist_range` (shorter parameter lists are covered by trailing zeros).
pub fn corpus(max_m: usize, twist_range: std::ops::RangeInclusive<i64>) -> Result<Vec<FamilyLink>> {
    let values: Vec<i64> = twist_range.collect();
    let mut tuples: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_m {
        tuples = tuples.into_iter().flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect();
    }
    let mut out = vec![];
    for family in ["W", "M"] {
        for t in &tuples {
            out.push(generate(family, t)?);
        }
    }
    Ok(out)
}
