//! PD text input and output.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! pd     := "PD[" [ item { "," item } ] [ "," clause ] "]"
//! item   := "X[" int "," int "," int "," int "]" | "O[" int "]"
//! clause := "components=[" list { "," list } "]"
//! list   := "[" int { "," int } "]"
//! ```
//!
//! Each component list names the edges of one component in traversal
//! order, starting with the edge that carries the basepoint.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{Diagram, Visit};
use crate::error::{Error, Result};

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        match text.parse::<i64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected integer")
            }
        }
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect("[")?;
        let mut out = vec![self.int()?];
        while self.eat(",") {
            out.push(self.int()?);
        }
        self.expect("]")?;
        Ok(out)
    }
}

struct RawPd {
    xs: Vec<[i64; 4]>,
    os: Vec<i64>,
    clause: Option<Vec<Vec<i64>>>,
}

fn lex_pd(text: &str) -> Result<RawPd> {
    let mut lx = Lexer::new(text);
    lx.expect("PD")?;
    lx.expect("[")?;
    let mut raw = RawPd { xs: vec![], os: vec![], clause: None };
    if lx.eat("]") {
        return finish(lx, raw);
    }
    loop {
        if lx.eat("X") {
            let at = lx.pos;
            let v = lx.int_list()?;
            if v.len() != 4 {
                return Err(Error::Syntax { pos: at, msg: "X[...] needs four edge ids".into() });
            }
            raw.xs.push([v[0], v[1], v[2], v[3]]);
        } else if lx.eat("O") {
            let at = lx.pos;
            let v = lx.int_list()?;
            if v.len() != 1 {
                return Err(Error::Syntax { pos: at, msg: "O[...] needs one edge id".into() });
            }
            raw.os.push(v[0]);
        } else if lx.eat("components") {
            lx.expect("=")?;
            lx.expect("[")?;
            let mut lists = vec![lx.int_list()?];
            while lx.eat(",") {
                lists.push(lx.int_list()?);
            }
            lx.expect("]")?;
            raw.clause = Some(lists);
            lx.expect("]")?;
            return finish(lx, raw);
        } else {
            return lx.err("expected `X[`, `O[` or `components=`");
        }
        if lx.eat("]") {
            return finish(lx, raw);
        }
        lx.expect(",")?;
    }
}

fn finish(mut lx: Lexer<'_>, raw: RawPd) -> Result<RawPd> {
    if lx.peek().is_some() {
        return lx.err("trailing input after PD code");
    }
    Ok(raw)
}

/// One traversal of a strand cycle: (crossing, slot) of each arrival, and
/// the label of the edge arriving there.
struct Cycle {
    arrivals: Vec<(usize, usize)>,
    labels: Vec<i64>,
}

fn walk(xs: &[[i64; 4]], occ: &HashMap<i64, Vec<(usize, usize)>>, label: i64, head: (usize, usize)) -> Cycle {
    let mut arrivals = vec![];
    let mut labels = vec![];
    let (mut l, mut h) = (label, head);
    loop {
        arrivals.push(h);
        labels.push(l);
        let (c, s) = h;
        let out_slot = (s + 2) % 4;
        let next = xs[c][out_slot];
        let o = &occ[&next];
        let nh = if o[0] == (c, out_slot) { o[1] } else { o[0] };
        l = next;
        h = nh;
        if l == label && h == head {
            break;
        }
    }
    Cycle { arrivals, labels }
}

/// Whether a traversal agrees with the under-strand directions it meets.
fn orientation_votes(cyc: &Cycle) -> Result<Option<bool>> {
    let mut fwd = false;
    let mut bwd = false;
    for &(_, s) in &cyc.arrivals {
        match s {
            0 => fwd = true,
            2 => bwd = true,
            _ => {}
        }
    }
    match (fwd, bwd) {
        (true, true) => Err(Error::Topology(format!(
            "under-strands along the cycle through edge {} disagree in direction",
            cyc.labels[0]
        ))),
        (true, false) => Ok(Some(true)),
        (false, true) => Ok(Some(false)),
        (false, false) => Ok(None),
    }
}

pub fn parse_pd(text: &str) -> Result<Diagram> {
    let raw = lex_pd(text)?;
    let xs = &raw.xs;
    if xs.is_empty() && raw.os.is_empty() {
        return Err(Error::Topology("diagram has no components".into()));
    }
    let mut occ: HashMap<i64, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in xs.iter().enumerate() {
        for (s, &l) in x.iter().enumerate() {
            occ.entry(l).or_default().push((c, s));
        }
    }
    for (l, o) in &occ {
        if o.len() != 2 {
            return Err(Error::Topology(format!("edge {l} appears {} times among crossing slots", o.len())));
        }
    }
    let mut o_seen = std::collections::HashSet::new();
    for &k in &raw.os {
        if occ.contains_key(&k) || !o_seen.insert(k) {
            return Err(Error::Topology(format!("closed-component edge {k} is used elsewhere")));
        }
    }

    // Collect strand cycles, each oriented by its under-strands when possible.
    let mut labels: Vec<i64> = occ.keys().copied().collect();
    labels.sort_unstable();
    let mut done: HashMap<i64, usize> = HashMap::new();
    let mut cycles: Vec<(Cycle, bool)> = vec![];
    for &l in &labels {
        if done.contains_key(&l) {
            continue;
        }
        let o = &occ[&l];
        let a = walk(xs, &occ, l, o[0]);
        let forced = orientation_votes(&a)?;
        let cyc = match forced {
            Some(true) => a,
            Some(false) => walk(xs, &occ, l, o[1]),
            None => {
                // Over-only cycle: orient by increasing labels.
                let b = walk(xs, &occ, l, o[1]);
                let ascend = |c: &Cycle| c.labels.len() < 2 || c.labels[1] > c.labels[0];
                if ascend(&a) || !ascend(&b) {
                    a
                } else {
                    b
                }
            }
        };
        for &m in &cyc.labels {
            done.insert(m, cycles.len());
        }
        cycles.push((cyc, forced.is_some()));
    }
    // Build components in declared or default order.
    enum Src {
        Cycle(usize, usize),
        Loop,
    }
    let mut order: Vec<Src> = vec![];
    match &raw.clause {
        Some(lists) => {
            let mut used = vec![false; cycles.len()];
            let mut used_o = std::collections::HashSet::new();
            for list in lists {
                if list.len() == 1 && o_seen.contains(&list[0]) {
                    if !used_o.insert(list[0]) {
                        return Err(Error::Topology(format!("component [{}] listed twice", list[0])));
                    }
                    order.push(Src::Loop);
                    continue;
                }
                let Some(&ci) = done.get(&list[0]) else {
                    return Err(Error::Topology(format!("components clause names unknown edge {}", list[0])));
                };
                if used[ci] {
                    return Err(Error::Topology(format!("component through edge {} listed twice", list[0])));
                }
                used[ci] = true;
                let (cyc, forced) = &cycles[ci];
                let n = cyc.labels.len();
                let start = cyc.labels.iter().position(|&m| m == list[0]).unwrap();
                let fwd: Vec<i64> = (0..n).map(|k| cyc.labels[(start + k) % n]).collect();
                if *list == fwd {
                    order.push(Src::Cycle(ci, start));
                    continue;
                }
                let bwd: Vec<i64> = (0..n).map(|k| cyc.labels[(start + n - k) % n]).collect();
                if *list == bwd {
                    if *forced {
                        return Err(Error::Topology(format!(
                            "component through edge {} is listed against its crossing orientation",
                            list[0]
                        )));
                    }
                    // Rebuild this over-only cycle in the listed direction.
                    let o = &occ[&list[0]];
                    let other = if cyc.arrivals[start] == o[0] { o[1] } else { o[0] };
                    let rev = walk(xs, &occ, list[0], other);
                    cycles[ci] = (rev, false);
                    order.push(Src::Cycle(ci, 0));
                    continue;
                }
                return Err(Error::Topology(format!(
                    "components clause entry {:?} is not a closed strand of the diagram",
                    list
                )));
            }
            if used.iter().any(|u| !u) || used_o.len() != o_seen.len() {
                return Err(Error::Topology("components clause does not list every component".into()));
            }
        }
        None => {
            let mut keyed: Vec<(i64, Src)> = vec![];
            for (ci, (cyc, _)) in cycles.iter().enumerate() {
                let (start, &min) = cyc.labels.iter().enumerate().min_by_key(|p| p.1).unwrap();
                keyed.push((min, Src::Cycle(ci, start)));
            }
            for &k in &raw.os {
                keyed.push((k, Src::Loop));
            }
            keyed.sort_by_key(|p| p.0);
            order = keyed.into_iter().map(|p| p.1).collect();
        }
    }

    let mut comps = vec![];
    for src in order {
        match src {
            Src::Loop => comps.push(vec![]),
            Src::Cycle(ci, start) => {
                let arr = &cycles[ci].0.arrivals;
                let n = arr.len();
                comps.push(
                    (0..n)
                        .map(|k| {
                            let (c, s) = arr[(start + k) % n];
                            Visit { crossing: c, over: s % 2 == 1 }
                        })
                        .collect(),
                );
            }
        }
    }
    // The over-strand enters at slot 3 exactly when the crossing is positive.
    let mut signs = vec![0i8; xs.len()];
    for (cyc, _) in &cycles {
        for &(c, s) in &cyc.arrivals {
            if s == 3 {
                signs[c] = 1;
            } else if s == 1 {
                signs[c] = -1;
            }
        }
    }
    Diagram::from_gauss(comps, signs)
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Diagram> {
        parse_pd(s)
    }
}

pub fn serialize_pd(d: &Diagram) -> String {
    let off = d.edge_offsets();
    let mut items: Vec<String> = d
        .pd_slots()
        .iter()
        .map(|s| format!("X[{},{},{},{}]", s[0] + 1, s[1] + 1, s[2] + 1, s[3] + 1))
        .collect();
    for i in 0..d.num_components() {
        if d.component(i).is_empty() {
            items.push(format!("O[{}]", off[i] + 1));
        }
    }
    let lists: Vec<String> = (0..d.num_components())
        .map(|i| {
            let ids: Vec<String> = (off[i]..off[i + 1]).map(|e| (e + 1).to_string()).collect();
            format!("[{}]", ids.join(","))
        })
        .collect();
    items.push(format!("components=[{}]", lists.join(",")));
    format!("PD[{}]", items.join(","))
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_pd(self))
    }
}
