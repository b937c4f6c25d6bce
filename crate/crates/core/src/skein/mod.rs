//! Conway polynomial of a diagram.
//!
//! The primary engine is the skein recursion: switch the first crossing that
//! breaks descending order and smooth it, until every leaf is descending.
//! A modular Alexander-matrix engine handles diagrams too large for the
//! recursion; both are exposed so that they can check each other.

mod matrix;
mod modp;
mod poly;

pub use poly::ConwayPoly;

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use dashmap::DashMap;
use num_bigint::BigInt;

use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Crossing count from which the recursion evaluates both children in
/// parallel.
const PARALLEL_MIN: usize = 10;

/// Crossing count above which [`Engine::Auto`] switches to the matrix engine.
const AUTO_SKEIN_MAX: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    Skein,
    Matrix,
    #[default]
    Auto,
}

#[derive(Clone, Debug)]
pub struct ConwayConfig {
    pub budget: u64,
    pub engine: Engine,
    pub parallel: bool,
}

impl Default for ConwayConfig {
    fn default() -> Self {
        ConwayConfig { budget: DEFAULT_BUDGET, engine: Engine::Auto, parallel: true }
    }
}

pub fn conway(d: &Diagram) -> Result<ConwayPoly> {
    conway_with(d, &ConwayConfig::default())
}

pub fn conway_with(d: &Diagram, cfg: &ConwayConfig) -> Result<ConwayPoly> {
    let use_skein = match cfg.engine {
        Engine::Skein => true,
        Engine::Matrix => d.num_components() > 2,
        Engine::Auto => d.num_components() > 2 || d.num_crossings() <= AUTO_SKEIN_MAX,
    };
    if use_skein {
        let mut engine = SkeinEngine::new(cfg.budget);
        engine.parallel = cfg.parallel;
        engine.conway(d)
    } else {
        matrix::conway_matrix(d)
    }
}

/// Conway polynomial by the modular Alexander-matrix route only (one or
/// two components).
pub fn conway_matrix(d: &Diagram) -> Result<ConwayPoly> {
    matrix::conway_matrix(d)
}

/// True iff, walking the components in `order` starting from the edges in
/// `basepoints` (one global edge id per component, indexed by component),
/// every crossing is first met on its over-strand.
pub fn is_descending(d: &Diagram, basepoints: &[usize], order: &[usize]) -> Result<bool> {
    let k = d.num_components();
    if basepoints.len() != k || order.len() != k {
        return Err(Error::Precondition(format!("need one basepoint and one order slot for each of {k} components")));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..k).collect::<Vec<_>>() {
        return Err(Error::Precondition("component order is not a permutation".into()));
    }
    let mut starts = vec![0; k];
    for (i, &e) in basepoints.iter().enumerate() {
        let (ci, p) = d.edge_place(e)?;
        if ci != i {
            return Err(Error::Precondition(format!("basepoint edge {e} is not on component {i}")));
        }
        starts[i] = p;
    }
    Ok(first_violation(d, order, &starts).is_none())
}

fn first_violation(d: &Diagram, order: &[usize], starts: &[usize]) -> Option<usize> {
    let mut seen = vec![false; d.num_crossings()];
    for &i in order {
        let comp = d.component(i);
        let len = comp.len();
        for s in 0..len {
            let v = comp[(starts[i] + s) % len];
            if !seen[v.crossing] {
                if !v.over {
                    return Some(v.crossing);
                }
                seen[v.crossing] = true;
            }
        }
    }
    None
}

/// Removes kinks until none is left.
pub(crate) fn remove_kinks(mut d: Diagram) -> Diagram {
    loop {
        let mut kink = None;
        'scan: for comp in d.components() {
            let len = comp.len();
            for p in 0..len {
                if len >= 2 && comp[p].crossing == comp[(p + 1) % len].crossing {
                    kink = Some(comp[p].crossing);
                    break 'scan;
                }
            }
        }
        match kink {
            Some(c) => d = d.r1_remove(c).expect("consecutive visits form a kink"),
            None => return d,
        }
    }
}

/// Values forced without recursion: crossing-free diagrams, split
/// diagrams, and links with a component lying entirely above or below.
pub(crate) fn trivial_value(d: &Diagram) -> Option<ConwayPoly> {
    if d.num_components() == 0 {
        return Some(ConwayPoly::zero());
    }
    if d.num_crossings() == 0 {
        return Some(if d.num_components() == 1 { ConwayPoly::one() } else { ConwayPoly::zero() });
    }
    if d.num_components() > 1 {
        if d.is_split_diagram() {
            return Some(ConwayPoly::zero());
        }
        for comp in d.components() {
            if comp.iter().all(|v| v.over) || comp.iter().all(|v| !v.over) {
                return Some(ConwayPoly::zero());
            }
        }
    }
    None
}

/// Memo key: Gauss code relabeled by first appearance, minimized over the
/// starting point of the first component with later starts chosen greedily.
pub(crate) fn canonical_key(d: &Diagram) -> Vec<u32> {
    let comps = d.components();
    let k0 = comps.first().map_or(0, |c| c.len());
    let mut best: Option<Vec<u32>> = None;
    for r0 in 0..k0.max(1) {
        let key = encode(d, r0);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_default()
}

fn encode(d: &Diagram, r0: usize) -> Vec<u32> {
    let n = d.num_crossings();
    let mut map = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut out = vec![d.num_components() as u32];
    for (i, comp) in d.components().iter().enumerate() {
        let len = comp.len();
        out.push(len as u32);
        if len == 0 {
            continue;
        }
        let rot = if i == 0 {
            r0
        } else {
            // Greedy: the rotation giving the smallest code under the
            // labels assigned so far.
            let code = |r: usize| {
                let mut fresh: Vec<(usize, u32)> = vec![];
                (0..len)
                    .map(|s| {
                        let v = comp[(r + s) % len];
                        let id = if map[v.crossing] != u32::MAX {
                            map[v.crossing]
                        } else if let Some(&(_, f)) = fresh.iter().find(|p| p.0 == v.crossing) {
                            f
                        } else {
                            let f = next + fresh.len() as u32;
                            fresh.push((v.crossing, f));
                            f
                        };
                        id * 2 + v.over as u32
                    })
                    .collect::<Vec<u32>>()
            };
            (0..len).min_by_key(|&r| code(r)).unwrap_or(0)
        };
        for s in 0..len {
            let v = comp[(rot + s) % len];
            if map[v.crossing] == u32::MAX {
                map[v.crossing] = next;
                next += 1;
            }
            out.push(map[v.crossing] * 2 + v.over as u32);
        }
    }
    let mut signs = vec![0u32; n];
    for c in 0..n {
        signs[map[c] as usize] = (d.sign(c) > 0) as u32;
    }
    out.extend(signs);
    out
}

/// Result of re-checking the skein relation on sampled recursion nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Skein recursion with a shared memo table and a node budget.
pub struct SkeinEngine {
    budget: u64,
    memo: DashMap<Vec<u32>, ConwayPoly>,
    explored: AtomicU64,
    samples: Mutex<BTreeMap<u64, Diagram>>,
    sample_cap: usize,
    variant: u64,
    pub parallel: bool,
}

impl SkeinEngine {
    pub fn new(budget: u64) -> Self {
        SkeinEngine {
            budget,
            memo: DashMap::new(),
            explored: AtomicU64::new(0),
            samples: Mutex::new(BTreeMap::new()),
            sample_cap: 100,
            variant: 0,
            parallel: true,
        }
    }

    /// An engine that starts its descending walks at shifted basepoints.
    /// Different variants explore different recursion trees.
    pub fn with_variant(budget: u64, variant: u64) -> Self {
        SkeinEngine { variant, ..Self::new(budget) }
    }

    pub fn explored(&self) -> u64 {
        self.explored.load(Ordering::Relaxed)
    }

    pub fn conway(&self, d: &Diagram) -> Result<ConwayPoly> {
        self.eval(d.clone())
    }

    fn starts(&self, d: &Diagram) -> Vec<usize> {
        d.components()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.variant == 0 || c.is_empty() {
                    0
                } else {
                    let mut h = DefaultHasher::new();
                    (self.variant, i, c.len()).hash(&mut h);
                    (h.finish() % c.len() as u64) as usize
                }
            })
            .collect()
    }

    fn eval(&self, d: Diagram) -> Result<ConwayPoly> {
        let d = remove_kinks(d);
        if let Some(v) = trivial_value(&d) {
            return Ok(v);
        }
        let key = canonical_key(&d);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let explored = self.explored.fetch_add(1, Ordering::Relaxed) + 1;
        if explored > self.budget {
            return Err(Error::Budget { budget: self.budget, explored });
        }
        self.sample(&key, &d);
        let order: Vec<usize> = (0..d.num_components()).collect();
        let value = match first_violation(&d, &order, &self.starts(&d)) {
            None => {
                if d.num_components() == 1 {
                    ConwayPoly::one()
                } else {
                    ConwayPoly::zero()
                }
            }
            Some(c) => {
                let eps = BigInt::from(d.sign(c));
                let sw = d.switch_crossing(c)?;
                let sm = d.smooth_crossing(c)?;
                let (a, b) = if self.parallel && d.num_crossings() >= PARALLEL_MIN {
                    rayon::join(|| self.eval(sw), || self.eval(sm))
                } else {
                    (self.eval(sw), self.eval(sm))
                };
                &a? + &b?.shift(1).scale(&eps)
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    fn sample(&self, key: &[u32], d: &Diagram) {
        let mut h = DefaultHasher::new();
        key.hash(&mut h);
        let hash = h.finish();
        let mut s = self.samples.lock().expect("sample lock");
        if s.len() < self.sample_cap {
            s.insert(hash, d.clone());
        } else if let Some((&top, _)) = s.iter().next_back() {
            if hash < top {
                s.remove(&top);
                s.insert(hash, d.clone());
            }
        }
    }

    /// Re-verifies the skein relation at a random crossing of up to
    /// `count` recorded nodes, using a fresh engine with another variant.
    pub fn audit(&self, count: usize, seed: u64) -> Result<AuditReport> {
        let nodes: Vec<(u64, Diagram)> =
            self.samples.lock().expect("sample lock").iter().take(count).map(|(h, d)| (*h, d.clone())).collect();
        let fresh = SkeinEngine::with_variant(self.budget, seed | 1);
        let mut failures = vec![];
        for (h, d) in &nodes {
            let c = ((h ^ seed) % d.num_crossings() as u64) as usize;
            let whole = fresh.conway(d)?;
            let sw = fresh.conway(&d.switch_crossing(c)?)?;
            let sm = fresh.conway(&d.smooth_crossing(c)?)?;
            let (plus, minus) = if d.sign(c) > 0 { (&whole, &sw) } else { (&sw, &whole) };
            if plus - minus != sm.shift(1) {
                failures.push(format!("skein relation fails at crossing {c} of {d}"));
            }
            if let Some(v) = self.memo.get(&canonical_key(d)) {
                if *v != whole {
                    failures.push(format!("memo value {} differs from recomputation {} for {d}", *v, whole));
                }
            }
        }
        Ok(AuditReport { checked: nodes.len(), failures })
    }
}
