//! The series `C_L(x) = Σ β_i x^i` of a two-component link with linking
//! number zero, from `-z C_L(-z^2) = ∇_Λ(z) / ∇_{K_1}(z)`.
//!
//! `Λ = (K, -J_0)` where `J_0` is a zero pushoff of `K_0` and `K` is a band
//! sum of `K_0` and `K_1` along a band missing `J_0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::diagram::{Diagram, Side};
use crate::error::{Error, Result};
use crate::json::big_values;
use crate::series::{berlekamp_massey, gcd_all, poly_div_series, to_rationals, RecurrenceResult, TruncSeries, Var};
use crate::skein::{conway_with, ConwayConfig, ConwayPoly};
use crate::surgery::{auto_band, band_sum, check_band, valid_bands, zero_pushoff_side, BandSpec};

pub const DEFAULT_ORDER: usize = 16;

/// Pipeline settings. The pushoff's twists sit on edge `twist_site` of the
/// pushed component; band edge ids refer to the diagram after the pushoff
/// has been appended as component 2. With neither a band nor a site given,
/// the first site admitting a band is used.
#[derive(Clone, Debug)]
pub struct CochranConfig {
    pub order: usize,
    pub band: Option<BandSpec>,
    pub side: Side,
    pub twist_site: Option<usize>,
    pub conway: ConwayConfig,
}

impl Default for CochranConfig {
    fn default() -> Self {
        CochranConfig {
            order: DEFAULT_ORDER,
            band: None,
            side: Side::Left,
            twist_site: None,
            conway: ConwayConfig::default(),
        }
    }
}

impl CochranConfig {
    pub fn with_order(order: usize) -> Self {
        CochranConfig { order, ..Self::default() }
    }
}

#[derive(Clone, Debug)]
pub struct CochranSeries {
    /// `β_1 x + β_2 x^2 + ...` through `x^N`.
    pub series: TruncSeries,
    /// `∇_Λ / ∇_{K_1}` through `z^(2N+1)`.
    pub quotient: TruncSeries,
    pub lk: i64,
    pub band: BandSpec,
    pub side: Side,
    pub twist_site: usize,
    pub kink: Option<Kink>,
    pub lambda: Diagram,
}

impl CochranSeries {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `β_1, ..., β_N`.
    pub fn betas(&self) -> Vec<BigInt> {
        let ints = self.series.integer_coeffs().expect("β coefficients are integers");
        ints[1..].to_vec()
    }

    pub fn recurrence(&self) -> RecurrenceResult {
        berlekamp_massey(&to_rationals(&self.betas()))
    }

    pub fn to_json(&self) -> Value {
        let rec = self.recurrence();
        let mut v = json!({
            "lk": self.lk,
            "N": self.order(),
            "betas": big_values(&self.betas()),
            "band": self.band.to_json(),
            "side": self.side,
            "twist_site": self.twist_site,
            "kink": self.kink.map(|k| json!({ "edge": k.edge, "side": k.side })),
            "checks": {
                "z1_zero": self.quotient.coeff(1).is_zero(),
                "parity": (0..=self.quotient.order()).step_by(2).all(|k| self.quotient.coeff(k).is_zero()),
            },
        });
        if rec.found {
            let r = rec.to_json();
            v["recurrence"] = json!({ "c": r["c"], "k0": r["k0"] });
        }
        v
    }
}

fn check_two(d: &Diagram) -> Result<()> {
    if d.num_components() != 2 {
        return Err(Error::Precondition(format!("need a two-component link, got {} components", d.num_components())));
    }
    Ok(())
}

/// Diagram with a zero pushoff of `comp` appended, its twists on edge
/// `site` of `comp`.
fn pushed(d: &Diagram, comp: usize, side: Side, site: usize, reverse: bool) -> Result<Diagram> {
    let n = d.comp_edges(comp);
    if site >= n {
        return Err(Error::Precondition(format!("twist site {site} outside the {n} edges of component {comp}")));
    }
    let p = zero_pushoff_side(&d.rotate_component(comp, site)?, comp, side)?;
    if reverse {
        p.reverse_component(2)
    } else {
        Ok(p)
    }
}

/// A first Reidemeister kink added to edge `edge` of the input diagram, its
/// loop on `side`, before the pushoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kink {
    pub edge: usize,
    pub side: Side,
}

impl Kink {
    fn apply(&self, d: &Diagram) -> Result<Diagram> {
        d.r1_add(self.edge, self.side, true)
    }
}

/// Pushes off `comp`, then sums components 0 and 1 along a band that misses
/// the pushoff. Returns the banded diagram, the band, the twist site and
/// the kink used.
///
/// In automatic mode a diagram where the two components run parallel along
/// every shared face gets a kink on the other component, which turns one of
/// its edges around inside a face.
fn banded(d: &Diagram, comp: usize, reverse: bool, cfg: &CochranConfig) -> Result<Banded> {
    match banded_at(d, comp, reverse, cfg) {
        Err(Error::Band(msg)) if cfg.band.is_none() && cfg.twist_site.is_none() => {
            let other = 1 - comp;
            let off = d.edge_offsets();
            for edge in off[other]..off[other + 1] {
                for side in [Side::Left, Side::Right] {
                    let kink = Kink { edge, side };
                    if let Ok((b, band, site)) = banded_at(&kink.apply(d)?, comp, reverse, cfg) {
                        return Ok((b, band, site, Some(kink)));
                    }
                }
            }
            Err(Error::Band(msg))
        }
        other => other.map(|(b, band, site)| (b, band, site, None)),
    }
}

type Banded = (Diagram, BandSpec, usize, Option<Kink>);

fn banded_at(d: &Diagram, comp: usize, reverse: bool, cfg: &CochranConfig) -> Result<(Diagram, BandSpec, usize)> {
    let sites: Vec<usize> = match (cfg.twist_site, cfg.band) {
        (Some(s), _) => vec![s],
        (None, Some(_)) => vec![0],
        (None, None) => (0..d.comp_edges(comp)).collect(),
    };
    let mut last = None;
    for site in sites {
        let p = pushed(d, comp, cfg.side, site, reverse)?;
        let band = match &cfg.band {
            Some(b) => check_band(&p, 0, 1, b, &[2]).map(|_| *b),
            None => auto_band(&p, 0, 1, &[2]),
        };
        match band {
            Ok(b) => return Ok((band_sum(&p, 0, 1, &b, &[2])?, b, site)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Band("no twist site admits a band".into())))
}

/// Bands usable by the pipeline for `d` with the given side and twist site.
pub fn pipeline_bands(d: &Diagram, side: Side, site: usize) -> Result<Vec<BandSpec>> {
    check_two(d)?;
    valid_bands(&pushed(d, 0, side, site, true)?, 0, 1, &[2])
}

/// `Λ = (K, -J_0)` with the band, twist site and kink actually used.
pub fn lambda_link(d: &Diagram, cfg: &CochranConfig) -> Result<(Diagram, BandSpec, usize, Option<Kink>)> {
    check_two(d)?;
    banded(d, 0, true, cfg)
}

fn run(d: &Diagram, cfg: &CochranConfig, strict: bool) -> Result<CochranSeries> {
    check_two(d)?;
    let lk = d.linking_number(0, 1)?;
    if strict && lk != 0 {
        return Err(Error::Precondition(format!(
            "linking number is {lk}, but the series needs linking number 0; use hat_cochran with an explicit band"
        )));
    }
    let (lambda, band, twist_site, kink) = lambda_link(d, cfg)?;
    let nabla_lambda = conway_with(&lambda, &cfg.conway)?;
    let nabla_k1 = conway_with(&d.delete_component(0)?, &cfg.conway)?;
    let quotient = poly_div_series(&nabla_lambda, &nabla_k1, 2 * cfg.order + 1)?;
    let series = quotient.extract_from_odd()?;
    Ok(CochranSeries { series, quotient, lk, band, side: cfg.side, twist_site, kink, lambda })
}

pub fn cochran_series(d: &Diagram, order: usize, band: Option<&BandSpec>) -> Result<CochranSeries> {
    cochran_series_with(d, &CochranConfig { band: band.copied(), ..CochranConfig::with_order(order) })
}

pub fn cochran_series_with(d: &Diagram, cfg: &CochranConfig) -> Result<CochranSeries> {
    run(d, cfg, true)
}

/// The same quotient for any linking number. Depends on the band when the
/// linking number is nonzero, so the band must be given.
pub fn hat_cochran(d: &Diagram, order: usize, band: &BandSpec) -> Result<CochranSeries> {
    hat_cochran_with(d, &CochranConfig { band: Some(*band), ..CochranConfig::with_order(order) })
}

pub fn hat_cochran_with(d: &Diagram, cfg: &CochranConfig) -> Result<CochranSeries> {
    if cfg.band.is_none() {
        return Err(Error::Precondition("the hat series depends on the band; give one explicitly".into()));
    }
    run(d, cfg, false)
}

/// β' series: the series of the link with its components exchanged.
pub fn swapped_series(d: &Diagram, order: usize) -> Result<CochranSeries> {
    cochran_series(&d.swap_components(0, 1)?, order, None)
}

/// `∇_L / (∇_{K_0} ∇_{K_1}) = α_0 z + α_1 z^3 + ...`; coefficient `k` of the
/// result is `α_k`.
pub fn alpha_series(d: &Diagram, order: usize) -> Result<TruncSeries> {
    alpha_series_with(d, order, &ConwayConfig::default())
}

pub fn alpha_series_with(d: &Diagram, order: usize, cfg: &ConwayConfig) -> Result<TruncSeries> {
    check_two(d)?;
    let nl = conway_with(d, cfg)?;
    let k0 = conway_with(&d.delete_component(1)?, cfg)?;
    let k1 = conway_with(&d.delete_component(0)?, cfg)?;
    let q = poly_div_series(&nl, &(&k0 * &k1), 2 * order + 1)?;
    if let Some(k) = (0..=q.order()).step_by(2).find(|&k| !q.coeff(k).is_zero()) {
        return Err(Error::Series(format!("link quotient has even term z^{k}")));
    }
    let alphas: Vec<BigRational> = (0..=order).map(|k| q.coeff(2 * k + 1)).collect();
    let lk = d.linking_number(0, 1)?;
    if alphas[0] != BigRational::from_integer(lk.into()) {
        return Err(Error::Series(format!("α_0 = {} differs from the linking number {lk}", alphas[0])));
    }
    Ok(TruncSeries::new(Var::X, order, alphas))
}

/// `α_1`, defined here for linking number zero.
pub fn sato_levine(d: &Diagram) -> Result<BigInt> {
    check_two(d)?;
    let lk = d.linking_number(0, 1)?;
    if lk != 0 {
        return Err(Error::Precondition(format!("linking number is {lk}, expected 0")));
    }
    Ok(alpha_series(d, 1)?.coeff(1).to_integer())
}

/// `β_n` modulo `g = gcd(β_1, ..., β_(n-1))`, with `g = 0` meaning no
/// reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaBar {
    pub value: BigInt,
    pub modulus: BigInt,
}

pub fn beta_bar(betas: &[BigInt], n: usize) -> Result<BetaBar> {
    if n == 0 || n > betas.len() {
        return Err(Error::Precondition(format!("index {n} outside 1..={}", betas.len())));
    }
    let g = gcd_all(&betas[..n - 1]);
    let b = &betas[n - 1];
    let value = if g.is_zero() { b.clone() } else { b.mod_floor(&g) };
    Ok(BetaBar { value, modulus: g })
}

/// Outcome of comparing `∇_L` with `z ∇_K (lk - C_Λ(-z^2))`, `Λ = (J_1, K)`.
#[derive(Clone, Debug)]
pub struct TheoremAReport {
    pub lk: i64,
    pub band: BandSpec,
    /// Coefficients compared: `z^0 .. z^order`.
    pub order: usize,
    pub lhs: ConwayPoly,
    pub rhs: TruncSeries,
    pub c_lambda: TruncSeries,
    pub first_difference: Option<usize>,
}

impl TheoremAReport {
    pub fn holds(&self) -> bool {
        self.first_difference.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lk": self.lk,
            "band": self.band.to_json(),
            "order": self.order,
            "lhs": self.lhs,
            "rhs": self.rhs.to_json(),
            "c_lambda": self.c_lambda.to_json(),
            "holds": self.holds(),
            "first_difference": self.first_difference,
        })
    }
}

pub fn theorem_a_check(d: &Diagram, order: usize) -> Result<TheoremAReport> {
    theorem_a_check_with(d, &CochranConfig::with_order(order))
}

pub fn theorem_a_check_with(d: &Diagram, cfg: &CochranConfig) -> Result<TheoremAReport> {
    check_two(d)?;
    let lk = d.linking_number(0, 1)?;
    let (banded, band, _, _) = banded(d, 1, false, cfg)?;
    if banded.linking_number(0, 1)? != 0 {
        return Err(Error::Topology("pushoff links the band sum".into()));
    }
    let lambda = banded.swap_components(0, 1)?;
    let inner = CochranConfig { band: None, twist_site: None, ..cfg.clone() };
    let c_lambda = cochran_series_with(&lambda, &inner)?.series;
    let nabla_k = conway_with(&banded.delete_component(1)?, &cfg.conway)?;
    let lhs = conway_with(d, &cfg.conway)?;

    let n = 2 * cfg.order + 1;
    let inner_term = TruncSeries::from_i64(Var::Z, n, &[lk]).sub(&c_lambda.subst_neg_z2()?)?;
    let zk = TruncSeries::from_ints(Var::Z, n, nabla_k.shift(1).coeffs());
    let rhs = zk.mul(&inner_term)?;
    let first_difference = (0..=n).find(|&k| rhs.coeff(k) != BigRational::from_integer(lhs.coeff(k)));
    Ok(TheoremAReport { lk, band, order: n, lhs, rhs, c_lambda, first_difference })
}

/// Nonnegative residues `β̄_1, ..., β̄_N` for a computed series.
pub fn beta_bars(s: &CochranSeries) -> Vec<BetaBar> {
    let b = s.betas();
    (1..=b.len()).map(|n| beta_bar(&b, n).expect("index in range")).collect()
}

