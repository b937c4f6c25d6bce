//! Subsequence embedding of multi-indices and the gcd-chain audit of
//! residues `μ̄_I = μ_I mod gcd{μ_J : J properly embeds in I}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::big_number;

/// A finite sequence of letters `1..=m`.
pub type MultiIndex = Vec<u32>;

/// Whether `i` is a subsequence of `j`.
pub fn embeds(i: &[u32], j: &[u32]) -> bool {
    let mut rest = j.iter();
    i.iter().all(|a| rest.any(|b| b == a))
}

/// `i` embeds in `j` and differs from it.
pub fn properly_embeds(i: &[u32], j: &[u32]) -> bool {
    i != j && embeds(i, j)
}

fn check_binary(i: &[u32]) -> Result<()> {
    match i.iter().find(|&&a| a != 1 && a != 2) {
        Some(a) => Err(Error::Precondition(format!("entry {a} is outside the alphabet {{1, 2}}"))),
        None => Ok(()),
    }
}

/// Number of 2s immediately followed by a 1.
pub fn alpha(i: &[u32]) -> Result<usize> {
    check_binary(i)?;
    Ok(i.windows(2).filter(|w| w == &[2, 1]).count())
}

pub fn lambda(i: &[u32]) -> usize {
    i.len()
}

/// Lexicographically least `(k, l)`, 1-based with `k < l`, such that the
/// `k`-th index embeds in the `l`-th. A pair is accepted without scanning
/// when the later index has at least twice as many descents as the earlier
/// one has letters.
pub fn find_embedded_pair(seq: &[MultiIndex]) -> Result<Option<(usize, usize)>> {
    let alphas = seq.iter().map(|i| alpha(i)).collect::<Result<Vec<_>>>()?;
    for k in 0..seq.len() {
        for l in k + 1..seq.len() {
            if alphas[l] >= 2 * lambda(&seq[k]) || embeds(&seq[k], &seq[l]) {
                return Ok(Some((k + 1, l + 1)));
            }
        }
    }
    Ok(None)
}

/// Integer values attached to multi-indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MuTable {
    pub entries: BTreeMap<MultiIndex, BigInt>,
}

#[derive(Deserialize)]
struct MuEntryJson {
    #[serde(rename = "I")]
    index: MultiIndex,
    mu: serde_json::Number,
}

#[derive(Deserialize)]
struct MuTableJson {
    entries: Vec<MuEntryJson>,
}

impl MuTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, index: MultiIndex, mu: impl Into<BigInt>) {
        self.entries.insert(index, mu.into());
    }

    /// Reads `{"entries":[{"I":[1,1,2,2],"mu":1}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MuTableJson = serde_json::from_str(text)
            .map_err(|e| Error::Syntax { pos: e.column().saturating_sub(1), msg: e.to_string() })?;
        let mut t = MuTable::new();
        for e in raw.entries {
            let mu: BigInt = e
                .mu
                .to_string()
                .parse()
                .map_err(|_| Error::Precondition(format!("mu value {} is not an integer", e.mu)))?;
            if t.entries.insert(e.index.clone(), mu).is_some() {
                return Err(Error::Precondition(format!("multi-index {:?} appears twice", e.index)));
            }
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuRow {
    pub index: MultiIndex,
    pub mu: BigInt,
    /// Nonnegative generator of the ideal of values below `index`.
    pub g: BigInt,
    pub mu_bar: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuAudit {
    pub rows: Vec<MuRow>,
    /// Pairs `(I, J)` with `μ̄_I ≠ 0`, `I` properly embedded in `J`, and
    /// `g_J` not a strict divisor of `g_I`.
    pub violations: Vec<(MultiIndex, MultiIndex)>,
}

impl MuAudit {
    pub fn nonzero(&self) -> Vec<&MultiIndex> {
        self.rows.iter().filter(|r| !r.mu_bar.is_zero()).map(|r| &r.index).collect()
    }

    pub fn chain_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "I": r.index,
                "mu": big_number(&r.mu),
                "g": big_number(&r.g),
                "mu_bar": big_number(&r.mu_bar),
            })).collect::<Vec<_>>(),
            "nonzero": self.nonzero(),
            "chain_ok": self.chain_ok(),
            "violations": self.violations.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        })
    }
}

/// `a` divides `b` and generates a strictly larger ideal. Every integer
/// other than 0 strictly divides 0.
pub fn strictly_divides(a: &BigInt, b: &BigInt) -> bool {
    let (a, b) = (a.abs(), b.abs());
    if a.is_zero() {
        return false;
    }
    b.is_multiple_of(&a) && a != b
}

pub fn mu_audit(t: &MuTable) -> MuAudit {
    let rows: Vec<MuRow> = t
        .entries
        .iter()
        .map(|(i, mu)| {
            let g = t
                .entries
                .iter()
                .filter(|(j, _)| properly_embeds(j, i))
                .fold(BigInt::zero(), |g, (_, m)| g.gcd(m));
            let mu_bar = if g.is_zero() { mu.clone() } else { mu.mod_floor(&g) };
            MuRow { index: i.clone(), mu: mu.clone(), g, mu_bar }
        })
        .collect();
    let mut violations = vec![];
    for a in &rows {
        if a.mu_bar.is_zero() {
            continue;
        }
        for b in &rows {
            if properly_embeds(&a.index, &b.index) && !strictly_divides(&b.g, &a.g) {
                violations.push((a.index.clone(), b.index.clone()));
            }
        }
    }
    MuAudit { rows, violations }
}
