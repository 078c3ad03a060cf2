//! Probability distributions and the entropy catalog.
//!
//! Every functional here maps a [`Distribution`] to a nonnegative real,
//! vanishes on a deterministic distribution, and can also be evaluated in
//! closed form on a uniform distribution specified only by `ln W` — the
//! route used when the state count is far too large to enumerate.
//!
//! The multivariate Z-entropy is the workhorse:
//!
//! ```text
//! Z_{χ,α₁..α_n}(p) = ln_χ( Π_k (Σ_i p_i^{α_k})^{1/(1−α_k)} ) = χ( Σ_k R_{α_k}(p) )
//! ```
//!
//! with `R_α` the Rényi entropy and `ln_χ(x) = χ(ln x)`. Each catalog kind
//! is either an instance of this template for a specific deformation `χ`
//! (exponential, power root, shifted logarithm, Lambert-conjugated) or a
//! classical measure kept as its own kind.

use rand::Rng;

use crate::special::{group_log, lambert_w0, lambert_w0_from_ln, Generator};
use crate::{Error, Result};

/// Entropic parameters must be positive and not 1 (every closed form below
/// divides by 1 − α; the α → 1 limit is the separate Shannon kind).
fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "entropic parameter must be positive, got {alpha}"
        )));
    }
    if alpha == 1.0 {
        return Err(Error::InvalidParameter(
            "entropic parameter α = 1 is excluded; use the shannon kind".into(),
        ));
    }
    Ok(())
}

/// Probabilities below this are treated as exact zeros (`0^α = 0`
/// continuity convention), so expansibility holds exactly.
const PROB_FLOOR: f64 = 1e-300;

/// Neumaier compensated summation.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// A finite probability vector: entries in `[0,1]` summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probs, 1e-12)
    }

    pub fn with_tolerance(probs: Vec<f64>, tol: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no entries".into()));
        }
        for &p in &probs {
            if !(0.0..=1.0 + 1e-12).contains(&p) || p.is_nan() {
                return Err(Error::InvalidDistribution(format!("entry {p} outside [0, 1]")));
            }
        }
        let sum = compensated_sum(probs.iter().copied());
        if (sum - 1.0).abs() > tol {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    pub fn uniform(w: usize) -> Self {
        assert!(w >= 1);
        Self { probs: vec![1.0 / w as f64; w] }
    }

    /// All mass on state `hot`.
    pub fn deterministic(w: usize, hot: usize) -> Result<Self> {
        if hot >= w || w == 0 {
            return Err(Error::InvalidDistribution(format!(
                "deterministic state {hot} outside 0..{w}"
            )));
        }
        let mut probs = vec![0.0; w];
        probs[hot] = 1.0;
        Ok(Self { probs })
    }

    /// Uniform sample from the simplex (normalized exponentials).
    pub fn sample_random<R: Rng>(w: usize, rng: &mut R) -> Self {
        assert!(w >= 1);
        let mut probs: Vec<f64> = (0..w)
            .map(|_| -(1.0 - rng.gen::<f64>()).ln())
            .collect();
        let total: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= total;
        }
        Self { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one entry
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Joint distribution of two independent systems: `p_ij = p_i q_j`,
    /// flattened row-major.
    pub fn product(&self, other: &Self) -> Self {
        let mut probs = Vec::with_capacity(self.len() * other.len());
        for &a in &self.probs {
            for &b in &other.probs {
                probs.push(a * b);
            }
        }
        Self { probs }
    }

    /// Append an event of zero probability (expansibility, SK3).
    pub fn expand_zero(&self) -> Self {
        let mut probs = self.probs.clone();
        probs.push(0.0);
        Self { probs }
    }

    /// `Σ_i p_i^α` with the `0^α = 0` convention, compensated.
    pub fn power_sum(&self, alpha: f64) -> f64 {
        compensated_sum(
            self.probs
                .iter()
                .filter(|&&p| p > PROB_FLOOR)
                .map(|&p| p.powf(alpha)),
        )
    }

    /// Parse a JSON array of decimal reals.
    pub fn from_json(text: &str) -> Result<Self> {
        let probs: Vec<f64> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("distribution JSON: {e}")))?;
        Self::new(probs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.probs).expect("serializing a float vec cannot fail")
    }
}

/// Rényi entropy `R_α(p) = ln(Σ p_i^α)/(1−α)`.
pub fn renyi(p: &Distribution, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(p.power_sum(alpha).ln() / (1.0 - alpha))
}

/// Shannon entropy in nats.
pub fn shannon(p: &Distribution) -> f64 {
    compensated_sum(
        p.probs()
            .iter()
            .filter(|&&x| x > PROB_FLOOR)
            .map(|&x| -x * x.ln()),
    )
}

/// Tsallis entropy `(1 − Σ p_i^q)/(q − 1)`.
pub fn tsallis(p: &Distribution, q: f64) -> Result<f64> {
    check_alpha(q)?;
    Ok((1.0 - p.power_sum(q)) / (q - 1.0))
}

/// Multivariate Z-entropy: `χ` applied to the sum of the Rényi entropies
/// `R_{α_k}(p)`. `χ` must be strictly increasing with `χ(0) = 0`.
pub fn mze(p: &Distribution, chi: &Generator, alphas: &[f64]) -> Result<f64> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("mze needs at least one α".into()));
    }
    for &a in alphas {
        check_alpha(a)?;
    }
    require_group_log_shape(chi)?;
    let total = compensated_sum(
        alphas
            .iter()
            .map(|&a| p.power_sum(a).ln() / (1.0 - a)),
    );
    chi.forward(total)
}

/// Univariate Z-entropy `ln_G(Σ p_i^α)/(1−α)`; related to [`mze`] through
/// the identification `χ(t) = G((1−α)t)/(1−α)`.
pub fn z_univariate(p: &Distribution, gen: &Generator, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(group_log(gen, p.power_sum(alpha))? / (1.0 - alpha))
}

fn require_group_log_shape(chi: &Generator) -> Result<()> {
    if !chi.is_increasing() {
        return Err(Error::InvalidParameter(format!(
            "deformation {} must be strictly increasing",
            chi.name()
        )));
    }
    let at_zero = chi.forward(0.0)?;
    if at_zero.abs() > 1e-14 {
        return Err(Error::InvalidParameter(format!(
            "deformation {} must vanish at zero, got {at_zero}",
            chi.name()
        )));
    }
    Ok(())
}

/// A catalog entry: an entropy functional with its parameters, evaluable on
/// an explicit distribution or on a uniform state given `ln W`.
#[derive(Clone, Debug)]
pub enum EntropyFunctional {
    Shannon,
    Renyi { alpha: f64 },
    Tsallis { q: f64 },
    /// `ln_G(Σ p^α)/(1−α)` for an invertible generator `G`.
    ZUnivariate { gen: Generator, alpha: f64 },
    /// `χ(Σ_k R_{α_k}(p))`.
    Mze { chi: Generator, alphas: Vec<f64> },
    /// `Σ_k λ_k R_{α_k}(p)` with positive weights.
    LinearRenyiComb { weights: Vec<f64>, alphas: Vec<f64> },
    /// `((Σ_k R_{α_k})/γ)^{1/β}`, extensive for `ln W(N) = γN^β`.
    Stretched { rate: f64, beta: f64, alphas: Vec<f64> },
    /// `k₁ ln(Σ_k R_{α_k}/k₁ + 1)`, extensive for doubly exponential growth.
    RapidGrowth { k1: f64, alphas: Vec<f64> },
    /// `exp(W₀(g⁻¹(R_α))) − 1`, extensive for `ln W(N) = g(N ln N)`.
    SuperExp { g: Generator, alpha: f64 },
    SuperExpMulti { g: Generator, alphas: Vec<f64> },
}

impl EntropyFunctional {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Shannon => "shannon",
            Self::Renyi { .. } => "renyi",
            Self::Tsallis { .. } => "tsallis",
            Self::ZUnivariate { .. } => "z-univariate",
            Self::Mze { .. } => "mze",
            Self::LinearRenyiComb { .. } => "linear-renyi",
            Self::Stretched { .. } => "stretched",
            Self::RapidGrowth { .. } => "rapid-growth",
            Self::SuperExp { .. } => "super-exp",
            Self::SuperExpMulti { .. } => "super-exp-multi",
        }
    }

    /// Number of entropic parameters (the `n` of the multivariate family).
    pub fn n_alphas(&self) -> usize {
        match self {
            Self::Shannon => 0,
            Self::Renyi { .. } | Self::Tsallis { .. } | Self::ZUnivariate { .. } | Self::SuperExp { .. } => 1,
            Self::Mze { alphas, .. }
            | Self::LinearRenyiComb { alphas, .. }
            | Self::Stretched { alphas, .. }
            | Self::RapidGrowth { alphas, .. }
            | Self::SuperExpMulti { alphas, .. } => alphas.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check_alphas = |alphas: &[f64]| -> Result<()> {
            if alphas.is_empty() {
                return Err(Error::InvalidParameter("at least one α required".into()));
            }
            alphas.iter().try_for_each(|&a| check_alpha(a))
        };
        match self {
            Self::Shannon => Ok(()),
            Self::Renyi { alpha } => check_alpha(*alpha),
            Self::Tsallis { q } => check_alpha(*q),
            Self::ZUnivariate { gen, alpha } => {
                check_alpha(*alpha)?;
                // The identified χ(t) = G((1−α)t)/(1−α) must be a valid
                // group-log deformation.
                require_group_log_shape(&Generator::scaled_arg(gen.clone(), 1.0 - alpha)?)
            }
            Self::Mze { chi, alphas } => {
                check_alphas(alphas)?;
                require_group_log_shape(chi)
            }
            Self::LinearRenyiComb { weights, alphas } => {
                check_alphas(alphas)?;
                if weights.len() != alphas.len() {
                    return Err(Error::InvalidParameter(format!(
                        "{} weights for {} parameters",
                        weights.len(),
                        alphas.len()
                    )));
                }
                if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
                    return Err(Error::InvalidParameter("weights must be positive".into()));
                }
                Ok(())
            }
            Self::Stretched { rate, beta, alphas } => {
                check_alphas(alphas)?;
                if !(*rate > 0.0) || !(*beta > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "stretched kind needs γ > 0 and β > 0, got γ={rate}, β={beta}"
                    )));
                }
                Ok(())
            }
            Self::RapidGrowth { k1, alphas } => {
                check_alphas(alphas)?;
                if !(*k1 > 0.0) {
                    return Err(Error::InvalidParameter(format!("k₁ must be positive, got {k1}")));
                }
                Ok(())
            }
            Self::SuperExp { g, alpha } => {
                check_alpha(*alpha)?;
                require_group_log_shape(g)
            }
            Self::SuperExpMulti { g, alphas } => {
                check_alphas(alphas)?;
                require_group_log_shape(g)
            }
        }
    }

    /// Evaluate on an explicit distribution.
    pub fn eval(&self, p: &Distribution) -> Result<f64> {
        self.validate()?;
        let renyi_total = |alphas: &[f64]| -> f64 {
            compensated_sum(alphas.iter().map(|&a| p.power_sum(a).ln() / (1.0 - a)))
        };
        match self {
            Self::Shannon => Ok(shannon(p)),
            Self::Renyi { alpha } => renyi(p, *alpha),
            Self::Tsallis { q } => tsallis(p, *q),
            Self::ZUnivariate { gen, alpha } => z_univariate(p, gen, *alpha),
            Self::Mze { chi, alphas } => mze(p, chi, alphas),
            Self::LinearRenyiComb { weights, alphas } => Ok(compensated_sum(
                weights
                    .iter()
                    .zip(alphas)
                    .map(|(&w, &a)| w * p.power_sum(a).ln() / (1.0 - a)),
            )),
            Self::Stretched { rate, beta, alphas } => {
                Ok((renyi_total(alphas) / rate).powf(1.0 / beta))
            }
            Self::RapidGrowth { k1, alphas } => Ok(k1 * (renyi_total(alphas) / k1).ln_1p()),
            Self::SuperExp { g, alpha } => {
                super_exp_value(g, p.power_sum(*alpha).ln() / (1.0 - alpha))
            }
            Self::SuperExpMulti { g, alphas } => super_exp_value(g, renyi_total(alphas)),
        }
    }

    /// Closed-form value on a uniform distribution over `W = e^{logW}`
    /// states. On a uniform state `Σ p^α = W^{1−α}`, so every Rényi factor
    /// collapses to `logW` and the catalog reduces to the forms below.
    pub fn uniform_eval(&self, log_w: f64) -> Result<f64> {
        self.validate()?;
        if !(log_w >= 0.0) {
            return Err(Error::DomainError(format!("uniform_eval needs logW ≥ 0, got {log_w}")));
        }
        let n = self.n_alphas().max(1) as f64;
        match self {
            Self::Shannon | Self::Renyi { .. } => Ok(log_w),
            Self::Tsallis { q } => Ok(((1.0 - q) * log_w).exp_m1() / (1.0 - q)),
            Self::ZUnivariate { gen, alpha } => {
                Ok(gen.forward((1.0 - alpha) * log_w)? / (1.0 - alpha))
            }
            Self::Mze { chi, .. } => chi.forward(n * log_w),
            Self::LinearRenyiComb { weights, .. } => {
                Ok(compensated_sum(weights.iter().map(|&w| w * log_w)))
            }
            Self::Stretched { rate, beta, .. } => Ok((n * log_w / rate).powf(1.0 / beta)),
            Self::RapidGrowth { k1, .. } => Ok(k1 * (n * log_w / k1).ln_1p()),
            Self::SuperExp { g, .. } => super_exp_value(g, log_w),
            Self::SuperExpMulti { g, .. } => super_exp_value(g, n * log_w),
        }
    }
}

/// `exp(W₀(γ(r))) − 1` with `γ = g⁻¹`; switches to the log-domain Lambert
/// evaluation once the argument is huge.
fn super_exp_value(g: &Generator, renyi_value: f64) -> Result<f64> {
    let x = g.inverse(renyi_value)?;
    if x < 0.0 {
        return Err(Error::DomainError(format!(
            "super-exponential kind needs γ(R) ≥ 0, got {x}"
        )));
    }
    let w = if x > 1e15 {
        lambert_w0_from_ln(x.ln())?
    } else {
        lambert_w0(x)?
    };
    Ok(w.exp_m1())
}
