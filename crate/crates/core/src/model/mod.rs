//! System configuration, channel, quantization and RF-chain selection types,
//! plus the scalar quantization/power formulas they induce.
//!
//! Powers are stored in watts internally; the key=value config files accept
//! the milliwatt fields used in the usual parameter tables and convert on
//! load (see [`SystemConfig::from_kv_text`]).

mod config;
pub mod rng;

pub use config::parse_kv_lines;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::rng::standard_complex;

/// Physical and power constants plus problem dimensions.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SystemConfig {
    /// Transmit antenna count N_t.
    pub n_tx: usize,
    /// User count K.
    pub n_users: usize,
    /// Symbols per PRI, L.
    pub block_len: usize,
    /// Per-antenna transmit power, watts.
    pub p_ant: f64,
    /// Receiver noise power, watts.
    pub noise_power: f64,
    /// Power amplifier efficiency, in (0, 1].
    pub eta_pa: f64,
    /// Analog circuitry power per active RF chain, watts.
    pub p_circ: f64,
    /// Frequency synthesizer power, watts.
    pub p_syn: f64,
    /// Baseband processing power, watts.
    pub p_bb: f64,
    /// DAC power consumption coefficient, watts.
    pub p_dac: f64,
    /// DSP data-interface power per Gbps, watts.
    pub p_int: f64,
    /// DAC sampling rate per port, Gbps.
    pub s_dac: f64,
    /// Normalized element spacing d (wavelengths).
    pub d_norm: f64,
    /// CSIT error scale, in [0, 1).
    pub sigma_ce: f64,
}

impl Default for SystemConfig {
    /// Baseline simulation parameters (8 antennas, 2 users, 10-symbol PRI).
    fn default() -> Self {
        SystemConfig {
            n_tx: 8,
            n_users: 2,
            block_len: 10,
            p_ant: 0.125,
            noise_power: 1e-3,
            eta_pa: 0.39,
            p_circ: 1.0,
            p_syn: 2.0,
            p_bb: 1.0,
            p_dac: 1e-3,
            p_int: 25e-3,
            s_dac: 0.125,
            d_norm: 0.5,
            sigma_ce: 0.2,
        }
    }
}

impl SystemConfig {
    /// Check the documented invariants.
    pub fn validate(&self) -> Result<()> {
        if self.n_tx < 1 || self.n_users < 1 || self.block_len < 1 {
            return Err(Error::InvalidArgument(
                "n_tx, n_users and block_len must all be >= 1".into(),
            ));
        }
        if !(self.eta_pa > 0.0 && self.eta_pa <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "eta_pa must be in (0, 1], got {}",
                self.eta_pa
            )));
        }
        let powers = [
            self.p_ant,
            self.noise_power,
            self.p_circ,
            self.p_syn,
            self.p_bb,
            self.p_dac,
            self.p_int,
            self.s_dac,
        ];
        if powers.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidArgument(
                "power constants must be finite and nonnegative".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.sigma_ce) {
            return Err(Error::InvalidArgument(format!(
                "sigma_ce must be in [0, 1), got {}",
                self.sigma_ce
            )));
        }
        Ok(())
    }

    /// Apply a single key=value pair; returns false for keys this type does
    /// not own (so callers layering their own keys can delegate here).
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<bool> {
        match key {
            "n_tx" => self.n_tx = parse_num(key, value)?,
            "n_users" => self.n_users = parse_num(key, value)?,
            "block_len" => self.block_len = parse_num(key, value)?,
            "p_ant_mw" => self.p_ant = parse_f64(key, value)? * 1e-3,
            "noise_mw" => self.noise_power = parse_f64(key, value)? * 1e-3,
            "eta_pa" => self.eta_pa = parse_f64(key, value)?,
            "p_circ_w" => self.p_circ = parse_f64(key, value)?,
            "p_syn_w" => self.p_syn = parse_f64(key, value)?,
            "p_bb_w" => self.p_bb = parse_f64(key, value)?,
            "p_dac_mw" => self.p_dac = parse_f64(key, value)? * 1e-3,
            "p_int_mw" => self.p_int = parse_f64(key, value)? * 1e-3,
            "s_dac_gbps" => self.s_dac = parse_f64(key, value)?,
            "d_norm" => self.d_norm = parse_f64(key, value)?,
            "sigma_ce" => self.sigma_ce = parse_f64(key, value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// Load from key=value text. Unknown keys are rejected.
    pub fn from_kv_text(text: &str) -> Result<SystemConfig> {
        let mut cfg = SystemConfig::default();
        for (key, value) in parse_kv_lines(text)? {
            if !cfg.apply_kv(&key, &value)? {
                return Err(Error::BadConfig(format!("unknown key `{key}`")));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_num(key: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| Error::BadConfig(format!("key `{key}`: expected integer, got `{value}`")))
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| Error::BadConfig(format!("key `{key}`: expected number, got `{value}`")))
}

/// Which quantization-noise variance expression backs a [`QuantConfig`].
///
/// The squared form is the one used throughout the optimization pipeline;
/// the plain additive-quantization-noise-model form is kept behind this
/// switch for comparison runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum QuantNoiseForm {
    /// sigma_e = delta^2 (1 - delta^2)^2
    Squared,
    /// sigma_e = delta^2 (1 - delta^2)
    Aqnm,
}

/// Per-chain DAC resolution together with the derived linear-gain and
/// noise-variance parameters of the additive quantization model.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuantConfig {
    /// Per-chain bit counts (diagonal of B).
    pub bits: Vec<u32>,
    /// Per-chain linear gain delta_i (diagonal of the gain matrix).
    pub delta: Vec<f64>,
    /// Per-chain quantization-noise variance sigma_e,i (diagonal of Sigma).
    pub sigma_e: Vec<f64>,
    /// Variance expression in effect.
    pub form: QuantNoiseForm,
}

impl QuantConfig {
    /// Identical resolution on every chain (the usual assumption).
    pub fn uniform(bits: u32, n_chains: usize) -> Result<QuantConfig> {
        QuantConfig::per_chain(&vec![bits; n_chains], QuantNoiseForm::Squared)
    }

    /// Per-chain resolutions with an explicit noise-variance form.
    pub fn per_chain(bits: &[u32], form: QuantNoiseForm) -> Result<QuantConfig> {
        if bits.is_empty() {
            return Err(Error::InvalidArgument("empty bit vector".into()));
        }
        let mut delta = Vec::with_capacity(bits.len());
        let mut sigma_e = Vec::with_capacity(bits.len());
        for &b in bits {
            let d = quant_delta(b)?;
            delta.push(d);
            let var = match form {
                QuantNoiseForm::Squared => quant_noise_var(d)?,
                QuantNoiseForm::Aqnm => d * d * (1.0 - d * d),
            };
            sigma_e.push(var);
        }
        Ok(QuantConfig {
            bits: bits.to_vec(),
            delta,
            sigma_e,
            form,
        })
    }

    pub fn n_chains(&self) -> usize {
        self.bits.len()
    }
}

/// Linear quantizer gain for a b-bit DAC:
/// delta = sqrt(1 - (pi*sqrt(3)/2) * 2^(-2b)).
pub fn quant_delta(bits: u32) -> Result<f64> {
    if bits < 1 {
        return Err(Error::InvalidArgument("bit count must be >= 1".into()));
    }
    let scale = std::f64::consts::PI * 3f64.sqrt() / 2.0;
    Ok((1.0 - scale * (-2.0 * bits as f64).exp2()).sqrt())
}

/// Quantization-noise variance sigma_e = delta^2 (1 - delta^2)^2.
pub fn quant_noise_var(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta must be in (0, 1), got {delta}"
        )));
    }
    let d2 = delta * delta;
    Ok(d2 * (1.0 - d2) * (1.0 - d2))
}

/// Per-DAC power draw: p_dac * sqrt(pi*sqrt(3) / (2(1 - delta^2))).
///
/// When delta comes from [`quant_delta`] this collapses to p_dac * 2^b.
pub fn dac_power(delta: f64, p_dac: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta must be in (0, 1), got {delta}"
        )));
    }
    let scale = std::f64::consts::PI * 3f64.sqrt();
    Ok(p_dac * (scale / (2.0 * (1.0 - delta * delta))).sqrt())
}

/// True channels per user, with optional CSIT estimates and conditional
/// samples for the sample-average machinery.
#[derive(Debug, Clone)]
pub struct ChannelSet {
    /// True channel vectors h_k, length N_t each.
    pub h: Vec<DVector<Complex64>>,
    /// CSIT estimates, when the transmitter only sees imperfect CSI.
    pub h_hat: Option<Vec<DVector<Complex64>>>,
    /// Per-user conditional samples h_k^(m), outer index = user.
    pub samples: Option<Vec<Vec<DVector<Complex64>>>>,
}

impl ChannelSet {
    pub fn new(h: Vec<DVector<Complex64>>) -> Result<ChannelSet> {
        if h.is_empty() {
            return Err(Error::InvalidArgument("need at least one user".into()));
        }
        let n = h[0].len();
        if h.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(
                "all channel vectors must share one length".into(),
            ));
        }
        Ok(ChannelSet {
            h,
            h_hat: None,
            samples: None,
        })
    }

    /// i.i.d. unit-variance circularly-symmetric complex Gaussian entries.
    pub fn rayleigh(n_tx: usize, n_users: usize, rng: &mut impl Rng) -> ChannelSet {
        let h = (0..n_users)
            .map(|_| DVector::from_fn(n_tx, |_, _| standard_complex(rng)))
            .collect();
        ChannelSet {
            h,
            h_hat: None,
            samples: None,
        }
    }

    pub fn n_users(&self) -> usize {
        self.h.len()
    }

    pub fn n_tx(&self) -> usize {
        self.h[0].len()
    }

    /// Channels the transmitter designs against: estimates when present,
    /// true channels otherwise.
    pub fn design_channels(&self) -> &[DVector<Complex64>] {
        self.h_hat.as_deref().unwrap_or(&self.h)
    }

    /// Split a perfectly known channel into (estimate, realization) per the
    /// mixture model h = sqrt(1 - sigma_ce^2) h_hat + sigma_ce h_err.
    ///
    /// The given channels become the estimates and a fresh realization is
    /// drawn, so downstream rate evaluation sees a channel consistent with
    /// the estimate.
    pub fn degrade_csit(&self, sigma_ce: f64, rng: &mut impl Rng) -> Result<ChannelSet> {
        if !(0.0..1.0).contains(&sigma_ce) {
            return Err(Error::InvalidArgument(format!(
                "sigma_ce must be in [0, 1), got {sigma_ce}"
            )));
        }
        let h_hat = self.h.clone();
        let scale = (1.0 - sigma_ce * sigma_ce).sqrt();
        let h = h_hat
            .iter()
            .map(|hh| {
                DVector::from_fn(hh.len(), |i, _| {
                    scale * hh[i] + sigma_ce * standard_complex(rng)
                })
            })
            .collect();
        Ok(ChannelSet {
            h,
            h_hat: Some(h_hat),
            samples: None,
        })
    }
}

/// Draw M i.i.d. conditional channel samples per user:
/// h^(m) = sqrt(1 - sigma_ce^2) h_hat + sigma_ce h_err^(m),
/// with unit-variance circularly-symmetric error entries.
pub fn draw_csit_samples(
    estimates: &[DVector<Complex64>],
    sigma_ce: f64,
    m: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Vec<DVector<Complex64>>>> {
    if m < 1 {
        return Err(Error::InvalidArgument("sample count must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&sigma_ce) {
        return Err(Error::InvalidArgument(format!(
            "sigma_ce must be in [0, 1], got {sigma_ce}"
        )));
    }
    let scale = (1.0 - sigma_ce * sigma_ce).sqrt();
    Ok(estimates
        .iter()
        .map(|hh| {
            (0..m)
                .map(|_| {
                    DVector::from_fn(hh.len(), |i, _| {
                        scale * hh[i] + sigma_ce * standard_complex(rng)
                    })
                })
                .collect()
        })
        .collect())
}

/// RF-chain activation vector, binary when hard or in [0,1] when relaxed,
/// with its optional lifted matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RfSelection {
    /// Per-chain activation lambda_i.
    pub lambda: DVector<f64>,
    /// Lifted selection matrix (lambda lambda^T for hard selections).
    pub lifted: Option<DMatrix<f64>>,
}

impl RfSelection {
    /// All chains active.
    pub fn all_on(n_tx: usize) -> RfSelection {
        RfSelection {
            lambda: DVector::from_element(n_tx, 1.0),
            lifted: None,
        }
    }

    /// Hard selection from a boolean mask. At least one chain must be on.
    pub fn hard(mask: &[bool]) -> Result<RfSelection> {
        if !mask.iter().any(|&b| b) {
            return Err(Error::InvalidArgument(
                "at least one RF chain must stay active".into(),
            ));
        }
        Ok(RfSelection {
            lambda: DVector::from_iterator(
                mask.len(),
                mask.iter().map(|&b| if b { 1.0 } else { 0.0 }),
            ),
            lifted: None,
        })
    }

    /// Relaxed selection with entries clamped to [0,1].
    pub fn relaxed(lambda: DVector<f64>) -> Result<RfSelection> {
        if lambda.iter().all(|&v| v <= 0.0) {
            return Err(Error::InvalidArgument(
                "at least one entry must be positive".into(),
            ));
        }
        Ok(RfSelection {
            lambda: lambda.map(|v| v.clamp(0.0, 1.0)),
            lifted: None,
        })
    }

    pub fn n_tx(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_hard(&self) -> bool {
        self.lambda.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Number of active chains; counts fractional entries as active.
    pub fn active_count(&self) -> usize {
        self.lambda.iter().filter(|&&v| v > 0.0).count()
    }

    /// tr(Lambda).
    pub fn trace(&self) -> f64 {
        self.lambda.sum()
    }

    /// The lifted matrix lambda lambda^T.
    pub fn lift(&self) -> DMatrix<f64> {
        &self.lambda * self.lambda.transpose()
    }
}

/// Precoders for one PRI: L matrices of N_t x (K+1) columns
/// (column 0 = common stream), the common-rate allocations C_l and the
/// symbol vectors s_l used in the covariance constraint.
#[derive(Debug, Clone)]
pub struct PrecoderBlock {
    pub p: Vec<DMatrix<Complex64>>,
    pub c: DVector<f64>,
    pub s: Vec<DVector<Complex64>>,
}

impl PrecoderBlock {
    pub fn new(
        p: Vec<DMatrix<Complex64>>,
        c: DVector<f64>,
        s: Vec<DVector<Complex64>>,
    ) -> Result<PrecoderBlock> {
        if p.is_empty() || p.len() != c.len() || p.len() != s.len() {
            return Err(Error::DimensionMismatch(
                "precoders, allocations and symbols must share length L >= 1".into(),
            ));
        }
        let (n_tx, streams) = (p[0].nrows(), p[0].ncols());
        if streams < 2 {
            return Err(Error::DimensionMismatch(
                "need a common column plus at least one private column".into(),
            ));
        }
        for (pl, sl) in p.iter().zip(&s) {
            if pl.nrows() != n_tx || pl.ncols() != streams || sl.len() != streams {
                return Err(Error::DimensionMismatch(
                    "inconsistent precoder/symbol dimensions across symbols".into(),
                ));
            }
        }
        if c.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidArgument(
                "common-rate allocations must be nonnegative".into(),
            ));
        }
        Ok(PrecoderBlock { p, c, s })
    }

    pub fn block_len(&self) -> usize {
        self.p.len()
    }

    pub fn n_tx(&self) -> usize {
        self.p[0].nrows()
    }

    /// K, the number of private streams.
    pub fn n_users(&self) -> usize {
        self.p[0].ncols() - 1
    }

    /// Common-stream column of symbol l.
    pub fn common(&self, l: usize) -> DVector<Complex64> {
        self.p[l].column(0).into_owned()
    }

    /// Private column of user k (zero-based) at symbol l.
    pub fn private(&self, l: usize, k: usize) -> DVector<Complex64> {
        self.p[l].column(k + 1).into_owned()
    }

    /// Unit-power QPSK-like symbol vectors, fixed by the seed.
    pub fn draw_symbols(streams: usize, block_len: usize, rng: &mut impl Rng) -> Vec<DVector<Complex64>> {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        (0..block_len)
            .map(|_| {
                DVector::from_fn(streams, |_, _| {
                    let re = if rng.gen::<bool>() { scale } else { -scale };
                    let im = if rng.gen::<bool>() { scale } else { -scale };
                    Complex64::new(re, im)
                })
            })
            .collect()
    }
}

/// Apply the additive quantization model to one transmit vector:
/// Delta*Lambda*x + Lambda*eps with per-chain CN(0, sigma_e,i) noise.
pub fn quantize_signal(
    x: &DVector<Complex64>,
    quant: &QuantConfig,
    sel: &RfSelection,
    rng: &mut impl Rng,
) -> Result<DVector<Complex64>> {
    let n = x.len();
    if quant.n_chains() != n || sel.n_tx() != n {
        return Err(Error::DimensionMismatch(format!(
            "signal length {n} vs {} quant chains / {} selection entries",
            quant.n_chains(),
            sel.n_tx()
        )));
    }
    Ok(DVector::from_fn(n, |i, _| {
        let noise = standard_complex(rng) * quant.sigma_e[i].sqrt();
        sel.lambda[i] * (quant.delta[i] * x[i] + noise)
    }))
}

#[cfg(test)]
mod tests;
