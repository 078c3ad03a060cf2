//! Composition laws, composability checks, and extensivity over growth
//! classes.
//!
//! [`law_for`] pairs each catalog entropy with its closed-form composition
//! law `Φ`; [`check_composability`] then measures the residual
//! `|S(A×B) − Φ(S(A), S(B))|` over random independent pairs — the numerical
//! form of the composability theorem for the multivariate Z-family.
//!
//! [`GrowthFunction`] models a state-space growth rate `W(N)` in the log
//! domain (only `ln W` is ever formed, since `W(N) = N^{νN}` overflows any
//! native float long before desk scale). [`law_from_growth`] evaluates the
//! universal law induced by a growth function,
//!
//! ```text
//! φ(x,y) = λ·( W⁻¹[ W(x/λ + W⁻¹(1)) · W(y/λ + W⁻¹(1)) ] − W⁻¹(1) )
//! ```
//!
//! and [`extensivity_scan`] tabulates `S(uniform over W(N))/N` to estimate
//! the extensivity constant `c`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::entropy::{Distribution, EntropyFunctional};
use crate::special::{lambert_w0, lambert_w0_from_ln, Generator};
use crate::{Error, Result};

/// A closed-form bivariate composition map `Φ(x, y)`.
#[derive(Clone, Debug)]
pub struct CompositionLaw {
    kind: LawKind,
    /// Catalog kind this law composes, when it came from [`law_for`].
    pub origin: Option<String>,
}

#[derive(Clone, Debug)]
enum LawKind {
    /// x + y
    Additive,
    /// x + y + σxy
    Multiplicative { sigma: f64 },
    /// χ(χ⁻¹(x) + χ⁻¹(y))
    ChiConjugated { chi: Generator },
    /// G(G⁻¹(x)·G⁻¹(y)) — a ring product, not a group law (no C3)
    PsiConjugated { gen: Generator },
    /// (x^β + y^β)^{1/β}
    PowerMean { beta: f64 },
    /// k₁ ln(e^{x/k₁} + e^{y/k₁} − 1)
    LogExpSum { k1: f64 },
    /// exp(W₀(γ(g(u)+g(v)))) − 1 at u = (x+1)ln(x+1), v = (y+1)ln(y+1)
    LambertConjugated { g: Generator },
    /// (x + y + axy)/(1 + bxy)
    Rational { a: f64, b: f64 },
    /// The law induced by a growth function at a fixed λ.
    FromGrowth { growth: GrowthFunction, lambda: f64 },
}

impl CompositionLaw {
    pub fn additive() -> Self {
        Self { kind: LawKind::Additive, origin: None }
    }

    pub fn multiplicative(sigma: f64) -> Self {
        Self { kind: LawKind::Multiplicative { sigma }, origin: None }
    }

    pub fn chi_conjugated(chi: Generator) -> Self {
        Self { kind: LawKind::ChiConjugated { chi }, origin: None }
    }

    /// The deformed product paired with a generator's group law; satisfies
    /// C1 and C2 but not null-composability.
    pub fn psi_conjugated(gen: Generator) -> Self {
        Self { kind: LawKind::PsiConjugated { gen }, origin: None }
    }

    pub fn power_mean(beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::InvalidParameter(format!("power-mean law needs β > 0, got {beta}")));
        }
        Ok(Self { kind: LawKind::PowerMean { beta }, origin: None })
    }

    pub fn log_exp_sum(k1: f64) -> Result<Self> {
        if !(k1 > 0.0) {
            return Err(Error::InvalidParameter(format!("log-exp-sum law needs k₁ > 0, got {k1}")));
        }
        Ok(Self { kind: LawKind::LogExpSum { k1 }, origin: None })
    }

    pub fn lambert_conjugated(g: Generator) -> Self {
        Self { kind: LawKind::LambertConjugated { g }, origin: None }
    }

    pub fn rational(a: f64, b: f64) -> Self {
        Self { kind: LawKind::Rational { a, b }, origin: None }
    }

    pub fn from_growth(growth: GrowthFunction, lambda: Option<f64>) -> Result<Self> {
        let lambda = resolve_lambda(&growth, lambda)?;
        Ok(Self { kind: LawKind::FromGrowth { growth, lambda }, origin: None })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            LawKind::Additive => "x+y".into(),
            LawKind::Multiplicative { sigma } => format!("x+y+{sigma}·xy"),
            LawKind::ChiConjugated { chi } => format!("conjugated-sum[{}]", chi.name()),
            LawKind::PsiConjugated { gen } => format!("conjugated-product[{}]", gen.name()),
            LawKind::PowerMean { beta } => format!("(x^{beta}+y^{beta})^(1/{beta})"),
            LawKind::LogExpSum { k1 } => format!("{k1}·ln(e^(x/{k1})+e^(y/{k1})−1)"),
            LawKind::LambertConjugated { g } => format!("lambert-conjugated[{}]", g.name()),
            LawKind::Rational { a, b } => format!("(x+y+{a}·xy)/(1+{b}·xy)"),
            LawKind::FromGrowth { growth, lambda } => {
                format!("growth-induced[{}, λ={lambda}]", growth.kind_name())
            }
        }
    }

    /// Whether null-composability is part of this law's contract.
    pub fn is_group_law(&self) -> bool {
        !matches!(self.kind, LawKind::PsiConjugated { .. })
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        match &self.kind {
            LawKind::Additive => Ok(x + y),
            LawKind::Multiplicative { sigma } => Ok(x + y + sigma * x * y),
            LawKind::ChiConjugated { chi } => chi.forward(chi.inverse(x)? + chi.inverse(y)?),
            LawKind::PsiConjugated { gen } => gen.forward(gen.inverse(x)? * gen.inverse(y)?),
            LawKind::PowerMean { beta } => {
                if x < 0.0 || y < 0.0 {
                    return Err(Error::DomainError(format!(
                        "power-mean law needs x,y ≥ 0, got ({x}, {y})"
                    )));
                }
                Ok((x.powf(*beta) + y.powf(*beta)).powf(1.0 / beta))
            }
            LawKind::LogExpSum { k1 } => {
                // Log-sum-exp shift keeps the exponentials bounded.
                let (a, b) = (x / k1, y / k1);
                let m = a.max(b).max(0.0);
                Ok(k1 * (m + ((a - m).exp() + (b - m).exp() - (-m).exp()).ln()))
            }
            LawKind::LambertConjugated { g } => {
                if x <= -1.0 || y <= -1.0 {
                    return Err(Error::DomainError(format!(
                        "lambert-conjugated law needs x,y > −1, got ({x}, {y})"
                    )));
                }
                let u = (x + 1.0) * x.ln_1p();
                let v = (y + 1.0) * y.ln_1p();
                let phi = g.inverse(g.forward(u)? + g.forward(v)?)?;
                let w = if phi > 1e15 { lambert_w0_from_ln(phi.ln())? } else { lambert_w0(phi)? };
                Ok(w.exp_m1())
            }
            LawKind::Rational { a, b } => {
                let den = 1.0 + b * x * y;
                if den == 0.0 {
                    return Err(Error::DomainError(format!(
                        "rational law denominator vanishes at ({x}, {y})"
                    )));
                }
                Ok((x + y + a * x * y) / den)
            }
            LawKind::FromGrowth { growth, lambda } => {
                law_from_growth(growth, Some(*lambda), x, y)
            }
        }
    }

    /// Upper bound for sampling valid arguments in the axiom checks.
    fn sample_hi(&self) -> f64 {
        const CAP: f64 = 4.0;
        match &self.kind {
            // Tsallis with q > 1 has σ < 0 and values bounded by 1/|σ|;
            // stay inside the closed sub-interval.
            LawKind::Multiplicative { sigma } if *sigma < 0.0 => (0.95 / sigma.abs()).min(CAP),
            LawKind::ChiConjugated { chi } => {
                let hi = chi.range().hi;
                if hi.is_finite() {
                    (0.95 * hi).min(CAP)
                } else {
                    CAP
                }
            }
            _ => CAP,
        }
    }

    /// Sample C1 (symmetry), C2 (associativity) and C3 (null-composability)
    /// at random points; residuals are scaled by `max(1, |lhs|, |rhs|)`.
    pub fn check_axioms_sampled(&self, points: usize, seed: u64) -> Result<LawCheckReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hi = self.sample_hi();
        let mut report = LawCheckReport {
            points,
            c1_symmetry_max: 0.0,
            c2_associativity_max: 0.0,
            c3_null_max: self.is_group_law().then_some(0.0),
        };
        let value = |law: &Self, x: f64, y: f64| law.eval(x, y);
        for _ in 0..points {
            let x = rng.gen_range(0.0..hi);
            let y = rng.gen_range(0.0..hi);
            let z = rng.gen_range(0.0..hi);

            let xy = value(self, x, y)?;
            let yx = value(self, y, x)?;
            report.c1_symmetry_max = report.c1_symmetry_max.max(scaled_resid(xy, yx));

            let lhs = value(self, xy, z)?;
            let rhs = value(self, x, value(self, y, z)?)?;
            report.c2_associativity_max = report.c2_associativity_max.max(scaled_resid(lhs, rhs));

            if let Some(c3) = report.c3_null_max.as_mut() {
                let x0 = value(self, x, 0.0)?;
                *c3 = c3.max(scaled_resid(x0, x));
            }
        }
        Ok(report)
    }
}

fn scaled_resid(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

/// Residuals of the sampled composition-law axiom checks.
#[derive(Clone, Debug)]
pub struct LawCheckReport {
    pub points: usize,
    pub c1_symmetry_max: f64,
    pub c2_associativity_max: f64,
    /// Absent for ring products, which are not null-composable.
    pub c3_null_max: Option<f64>,
}

impl LawCheckReport {
    pub fn max_residual(&self) -> f64 {
        self.c1_symmetry_max
            .max(self.c2_associativity_max)
            .max(self.c3_null_max.unwrap_or(0.0))
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// The closed-form law composing a catalog entropy.
pub fn law_for(s: &EntropyFunctional) -> Result<CompositionLaw> {
    s.validate()?;
    let mut law = match s {
        EntropyFunctional::Shannon
        | EntropyFunctional::Renyi { .. }
        | EntropyFunctional::LinearRenyiComb { .. } => CompositionLaw::additive(),
        EntropyFunctional::Tsallis { q } => CompositionLaw::multiplicative(1.0 - q),
        EntropyFunctional::ZUnivariate { gen, alpha } => {
            CompositionLaw::chi_conjugated(Generator::scaled_arg(gen.clone(), 1.0 - alpha)?)
        }
        EntropyFunctional::Mze { chi, .. } => CompositionLaw::chi_conjugated(chi.clone()),
        EntropyFunctional::Stretched { beta, .. } => CompositionLaw::power_mean(*beta)?,
        EntropyFunctional::RapidGrowth { k1, .. } => CompositionLaw::log_exp_sum(*k1)?,
        EntropyFunctional::SuperExp { g, .. } | EntropyFunctional::SuperExpMulti { g, .. } => {
            CompositionLaw::lambert_conjugated(g.clone())
        }
    };
    law.origin = Some(s.kind_name().to_string());
    Ok(law)
}

/// Residual report of a composability check over random independent pairs.
#[derive(Clone, Debug)]
pub struct ComposabilityReport {
    pub kind: String,
    pub law: String,
    pub trials: usize,
    pub seed: u64,
    pub max_residual: f64,
    /// Sizes of the pair attaining the maximum residual.
    pub worst_pair: Option<(usize, usize)>,
}

/// Draw `trials` random independent pairs `(A, B)` with sizes in `sizes`
/// and report the maximum of `|S(A×B) − Φ(S(A), S(B))|`.
pub fn check_composability(
    s: &EntropyFunctional,
    trials: usize,
    sizes: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Result<ComposabilityReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("composability check needs trials ≥ 1".into()));
    }
    if *sizes.start() < 1 {
        return Err(Error::InvalidParameter("system sizes must be ≥ 1".into()));
    }
    let law = law_for(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = 0.0f64;
    let mut worst_pair = None;
    for _ in 0..trials {
        let wa = rng.gen_range(*sizes.start()..=*sizes.end());
        let wb = rng.gen_range(*sizes.start()..=*sizes.end());
        let a = Distribution::sample_random(wa, &mut rng);
        let b = Distribution::sample_random(wb, &mut rng);
        let joint = s.eval(&a.product(&b))?;
        let composed = law.eval(s.eval(&a)?, s.eval(&b)?)?;
        let resid = (joint - composed).abs();
        if resid > max_residual {
            max_residual = resid;
            worst_pair = Some((wa, wb));
        }
    }
    Ok(ComposabilityReport {
        kind: s.kind_name().to_string(),
        law: law.name(),
        trials,
        seed,
        max_residual,
        worst_pair,
    })
}

/// A state-space growth rate `W(N)`, handled entirely through `ln W`.
#[derive(Clone, Debug)]
pub struct GrowthFunction {
    kind: GrowthKind,
}

#[derive(Clone, Debug)]
enum GrowthKind {
    /// W = e^N
    Exponential,
    /// ln W = γ N^β
    Stretched { rate: f64, beta: f64 },
    /// ln W = k₂ e^{k₃N} − k₁
    DoubleExponential { k1: f64, k2: f64, k3: f64 },
    /// ln W = g(N ln N)
    SuperExponential { g: Generator },
}

impl GrowthFunction {
    pub fn exponential() -> Self {
        Self { kind: GrowthKind::Exponential }
    }

    pub fn stretched(rate: f64, beta: f64) -> Result<Self> {
        if !(rate > 0.0) || !(beta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "stretched growth needs γ > 0 and β > 0, got γ={rate}, β={beta}"
            )));
        }
        Ok(Self { kind: GrowthKind::Stretched { rate, beta } })
    }

    pub fn double_exponential(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        if !(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "double-exponential growth needs k₁,k₂,k₃ > 0, got ({k1}, {k2}, {k3})"
            )));
        }
        Ok(Self { kind: GrowthKind::DoubleExponential { k1, k2, k3 } })
    }

    /// `ln W(N) = g(N ln N)` for a strictly increasing `g` with `g(0) = 0`.
    pub fn super_exponential(g: Generator) -> Result<Self> {
        if !g.is_increasing() {
            return Err(Error::InvalidParameter(format!(
                "interpolation function {} must be increasing",
                g.name()
            )));
        }
        let g0 = g.forward(0.0)?;
        if g0.abs() > 1e-14 {
            return Err(Error::InvalidParameter(format!(
                "interpolation function must satisfy g(0)=0, got {g0}"
            )));
        }
        Ok(Self { kind: GrowthKind::SuperExponential { g } })
    }

    pub fn kind_name(&self) -> String {
        match &self.kind {
            GrowthKind::Exponential => "exponential".into(),
            GrowthKind::Stretched { rate, beta } => format!("stretched(γ={rate}, β={beta})"),
            GrowthKind::DoubleExponential { k1, k2, k3 } => {
                format!("double-exponential(k₁={k1}, k₂={k2}, k₃={k3})")
            }
            GrowthKind::SuperExponential { g } => format!("super-exponential[{}]", g.name()),
        }
    }

    /// `ln W(N)`.
    pub fn log_w(&self, n: f64) -> Result<f64> {
        match &self.kind {
            GrowthKind::Exponential => Ok(n),
            GrowthKind::Stretched { rate, beta } => {
                if n < 0.0 {
                    return Err(Error::DomainError(format!("stretched growth needs N ≥ 0, got {n}")));
                }
                Ok(rate * n.powf(*beta))
            }
            GrowthKind::DoubleExponential { k1, k2, k3 } => Ok(k2 * (k3 * n).exp() - k1),
            GrowthKind::SuperExponential { g } => {
                if n < 1.0 {
                    return Err(Error::DomainError(format!(
                        "super-exponential growth needs N ≥ 1, got {n}"
                    )));
                }
                g.forward(n * n.ln())
            }
        }
    }

    /// Inverse in the log domain: the `N` with `ln W(N) = u`.
    pub fn inverse_from_log(&self, u: f64) -> Result<f64> {
        match &self.kind {
            GrowthKind::Exponential => Ok(u),
            GrowthKind::Stretched { rate, beta } => {
                if u < 0.0 {
                    return Err(Error::DomainError(format!(
                        "stretched growth has ln W ≥ 0, got {u}"
                    )));
                }
                Ok((u / rate).powf(1.0 / beta))
            }
            GrowthKind::DoubleExponential { k1, k2, k3 } => {
                if u + k1 <= 0.0 {
                    return Err(Error::DomainError(format!(
                        "double-exponential growth has ln W > −k₁, got {u}"
                    )));
                }
                Ok(((u + k1) / k2).ln() / k3)
            }
            GrowthKind::SuperExponential { g } => {
                // N ln N = γ(u), so N = exp(W₀(γ(u))).
                let v = g.inverse(u)?;
                if v < 0.0 {
                    return Err(Error::DomainError(format!(
                        "super-exponential inverse needs γ(u) ≥ 0, got {v}"
                    )));
                }
                let w = if v > 1e15 { lambert_w0_from_ln(v.ln())? } else { lambert_w0(v)? };
                Ok(w.exp())
            }
        }
    }

    /// The natural scale `λ = 1/(W⁻¹)'(1)`, when the derivative is finite
    /// and nonzero. Stretched growth violates that assumption (for β > 1
    /// the derivative diverges, for β < 1 it vanishes), so it has no
    /// natural λ.
    pub fn natural_lambda(&self) -> Option<f64> {
        match &self.kind {
            GrowthKind::Exponential => Some(1.0),
            GrowthKind::Stretched { .. } => None,
            GrowthKind::DoubleExponential { k1, k3, .. } => Some(k1 * k3),
            GrowthKind::SuperExponential { g } => {
                // (W⁻¹)'(1) = γ'(0) = 1/g'(0), so λ = g'(0).
                let h = 9.5367431640625e-7; // 2⁻²⁰
                let fh = g.forward(h).ok()?;
                let d = match g.forward(-h) {
                    Ok(fm) => (fh - fm) / (2.0 * h),
                    Err(_) => fh / h, // one-sided; g(0) = 0 by construction
                };
                (d.is_finite() && d != 0.0).then_some(d)
            }
        }
    }
}

fn resolve_lambda(growth: &GrowthFunction, lambda: Option<f64>) -> Result<f64> {
    match lambda {
        Some(l) if l != 0.0 && l.is_finite() => Ok(l),
        Some(l) => Err(Error::InvalidParameter(format!("λ must be finite and nonzero, got {l}"))),
        None => growth.natural_lambda().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "growth {} violates the (W⁻¹)'(1) ≠ 0 assumption; pass λ explicitly",
                growth.kind_name()
            ))
        }),
    }
}

/// Evaluate the composition law induced by a growth function,
/// `φ(x,y) = λ(W⁻¹[W(x/λ+n₁)·W(y/λ+n₁)] − n₁)` with `n₁ = W⁻¹(1)`,
/// entirely in the log domain. `lambda = None` selects the natural choice.
pub fn law_from_growth(
    growth: &GrowthFunction,
    lambda: Option<f64>,
    x: f64,
    y: f64,
) -> Result<f64> {
    let lam = resolve_lambda(growth, lambda)?;
    let n1 = growth.inverse_from_log(0.0)?;
    let u = growth.log_w(x / lam + n1)? + growth.log_w(y / lam + n1)?;
    Ok(lam * (growth.inverse_from_log(u)? - n1))
}

/// One row of an extensivity scan.
#[derive(Clone, Debug)]
pub struct ExtensivityRow {
    pub n: f64,
    pub s: f64,
    pub ratio: f64,
}

/// Behaviour of `S(N)/N` over the scanned range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanClass {
    /// Ratio settles toward a finite positive constant.
    Converged,
    /// Ratio keeps growing — a mismatched entropy/growth pairing.
    Divergent,
    /// Ratio decays toward zero.
    Degenerate,
}

#[derive(Clone, Debug)]
pub struct ExtensivityScan {
    pub rows: Vec<ExtensivityRow>,
    /// Two-point Richardson estimate from the last two rows (the `c` of the
    /// extensivity limit when the scan converges).
    pub c_estimate: Option<f64>,
    pub classification: ScanClass,
}

/// Tabulate `uniform_eval(S, ln W(N))/N` over `n_list` (increasing) and
/// extrapolate the extensivity constant.
///
/// Mismatched pairings are allowed — the scan then reports divergence or
/// degeneracy, which is the point of scanning.
pub fn extensivity_scan(
    s: &EntropyFunctional,
    growth: &GrowthFunction,
    n_list: &[f64],
) -> Result<ExtensivityScan> {
    if n_list.len() < 2 {
        return Err(Error::InvalidParameter("extensivity scan needs at least two N values".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] <= 0.0 {
        return Err(Error::InvalidParameter("N values must be positive and increasing".into()));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let value = s.uniform_eval(growth.log_w(n)?)?;
        rows.push(ExtensivityRow { n, s: value, ratio: value / n });
    }

    // Two-point Richardson on r(N) = c + d/N: c = (N₂r₂ − N₁r₁)/(N₂ − N₁).
    let k = rows.len();
    let (a, b) = (&rows[k - 2], &rows[k - 1]);
    let c_est = (b.n * b.ratio - a.n * a.ratio) / (b.n - a.n);

    let classification = classify(&rows, c_est);
    let c_estimate = (classification == ScanClass::Converged).then_some(c_est);
    Ok(ExtensivityScan { rows, c_estimate, classification })
}

/// Desk-scale heuristic over the catalog growth families: increments of the
/// ratio must die out for convergence; steadily growing ratios with
/// non-decaying increments mean divergence; a Richardson constant far below
/// a decaying ratio means decay to zero.
fn classify(rows: &[ExtensivityRow], c_est: f64) -> ScanClass {
    let k = rows.len();
    let r_last = rows[k - 1].ratio;
    let d_last = rows[k - 1].ratio - rows[k - 2].ratio;
    if d_last.abs() <= 1e-9 * r_last.abs().max(1.0) {
        return ScanClass::Converged;
    }
    if k >= 3 {
        let d_prev = rows[k - 2].ratio - rows[k - 3].ratio;
        if d_last > 0.0 && d_prev > 0.0 && d_last >= 0.6 * d_prev {
            return ScanClass::Divergent;
        }
    }
    if d_last < 0.0 && (c_est <= 1e-9 || c_est <= 0.7 * r_last) {
        return ScanClass::Degenerate;
    }
    ScanClass::Converged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (|Δ| = {:.3e})", (a - b).abs());
    }

    #[test]
    fn law_dispatch() {
        let renyi = EntropyFunctional::Renyi { alpha: 0.5 };
        assert_eq!(law_for(&renyi).unwrap().name(), "x+y");
        let tsallis = EntropyFunctional::Tsallis { q: 2.0 };
        assert!((law_for(&tsallis).unwrap().eval(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(law_for(&EntropyFunctional::Renyi { alpha: 1.0 }).is_err());
    }

    #[test]
    fn super_exp_law_null_composability_is_lambert_identity() {
        // Φ(x, 0) = exp(W₀((x+1)ln(x+1))) − 1 = x for the identity g.
        let law = CompositionLaw::lambert_conjugated(Generator::identity());
        for &x in &[0.0, 0.3, 1.0, 5.0, 40.0] {
            assert_close(law.eval(x, 0.0).unwrap(), x, 1e-12 * x.max(1.0));
        }
    }

    #[test]
    fn rapid_growth_law_null_composability() {
        let law = CompositionLaw::log_exp_sum(2.0).unwrap();
        for &x in &[0.0, 0.7, 3.0, 10.0] {
            assert_close(law.eval(x, 0.0).unwrap(), x, 1e-12);
        }
    }

    #[test]
    fn sampled_axioms_hold_across_catalog_laws() {
        let laws = vec![
            CompositionLaw::additive(),
            CompositionLaw::multiplicative(2.0),
            CompositionLaw::multiplicative(-0.5),
            CompositionLaw::chi_conjugated(Generator::exp_sigma(1.0).unwrap()),
            CompositionLaw::power_mean(2.0).unwrap(),
            CompositionLaw::log_exp_sum(2.0).unwrap(),
            CompositionLaw::lambert_conjugated(Generator::linear(2.0).unwrap()),
            CompositionLaw::rational(1.0, 1.0),
        ];
        for law in &laws {
            let report = law.check_axioms_sampled(2000, 42).unwrap();
            assert!(
                report.passes(1e-10),
                "{}: max residual {:.3e}",
                law.name(),
                report.max_residual()
            );
        }
    }

    #[test]
    fn composability_renyi_machine_exact() {
        let s = EntropyFunctional::Renyi { alpha: 0.5 };
        let report = check_composability(&s, 200, 2..=6, 1).unwrap();
        assert!(report.max_residual <= 1e-12, "residual {:.3e}", report.max_residual);
    }

    #[test]
    fn composability_deterministic_factor_is_neutral() {
        let s = EntropyFunctional::Mze {
            chi: Generator::exp_sigma(1.0).unwrap(),
            alphas: vec![0.4, 0.7],
        };
        let det = Distribution::deterministic(3, 1).unwrap();
        let b = Distribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let sb = s.eval(&b).unwrap();
        let joint = s.eval(&det.product(&b)).unwrap();
        let law = law_for(&s).unwrap();
        assert_close(law.eval(0.0, sb).unwrap(), sb, 1e-13);
        assert_close(joint, sb, 1e-12);
    }

    #[test]
    fn exponential_growth_induces_plain_addition() {
        let w = GrowthFunction::exponential();
        for &(x, y) in &[(0.0, 0.0), (1.0, 2.0), (0.3, 4.5), (7.0, 0.1)] {
            assert_close(law_from_growth(&w, None, x, y).unwrap(), x + y, 1e-12);
        }
    }

    #[test]
    fn growth_law_null_composability() {
        let g = GrowthFunction::super_exponential(Generator::linear(2.0).unwrap()).unwrap();
        for &x in &[0.5, 1.0, 4.0] {
            assert_close(law_from_growth(&g, Some(1.0), x, 0.0).unwrap(), x, 1e-10);
        }
    }

    #[test]
    fn super_exponential_growth_law_matches_closed_form() {
        // At λ = 1 the induced law is exactly the Lambert-conjugated law.
        let nu = 2.0;
        let growth = GrowthFunction::super_exponential(Generator::linear(nu).unwrap()).unwrap();
        let closed = CompositionLaw::lambert_conjugated(Generator::linear(nu).unwrap());
        for &(x, y) in &[(0.2, 0.4), (1.0, 1.0), (2.5, 0.7), (4.0, 3.0)] {
            let a = law_from_growth(&growth, Some(1.0), x, y).unwrap();
            let b = closed.eval(x, y).unwrap();
            assert_close(a, b, 1e-9 * a.abs().max(1.0));
        }
    }

    #[test]
    fn double_exponential_growth_law_matches_rapid_growth_law() {
        let (k1, k2, k3) = (2.0, 3.0, 0.5);
        let growth = GrowthFunction::double_exponential(k1, k2, k3).unwrap();
        assert_close(growth.natural_lambda().unwrap(), k1 * k3, 1e-15);
        let closed = CompositionLaw::log_exp_sum(k1).unwrap();
        for &(x, y) in &[(0.1, 0.2), (1.0, 2.0), (3.0, 0.5)] {
            let a = law_from_growth(&growth, None, x, y).unwrap();
            let b = closed.eval(x, y).unwrap();
            assert_close(a, b, 1e-11);
        }
    }

    #[test]
    fn stretched_growth_has_no_natural_lambda_but_unit_lambda_works() {
        let growth = GrowthFunction::stretched(1.0, 2.0).unwrap();
        assert!(growth.natural_lambda().is_none());
        assert!(law_from_growth(&growth, None, 1.0, 1.0).is_err());
        assert!(law_from_growth(&growth, Some(0.0), 1.0, 1.0).is_err());
        let closed = CompositionLaw::power_mean(2.0).unwrap();
        for &(x, y) in &[(0.5, 0.5), (1.0, 3.0), (2.0, 0.1)] {
            let a = law_from_growth(&growth, Some(1.0), x, y).unwrap();
            assert_close(a, closed.eval(x, y).unwrap(), 1e-12);
        }
    }

    #[test]
    fn extensivity_renyi_exponential_is_exactly_linear() {
        let s = EntropyFunctional::Renyi { alpha: 0.5 };
        let scan = extensivity_scan(
            &s,
            &GrowthFunction::exponential(),
            &[10.0, 100.0, 1000.0],
        )
        .unwrap();
        for row in &scan.rows {
            assert_eq!(row.ratio, 1.0);
        }
        assert_eq!(scan.classification, ScanClass::Converged);
        assert_close(scan.c_estimate.unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn extensivity_super_exp_is_n_minus_one() {
        let nu = 2.0;
        let s = EntropyFunctional::SuperExp { g: Generator::linear(nu).unwrap(), alpha: 0.5 };
        let growth = GrowthFunction::super_exponential(Generator::linear(nu).unwrap()).unwrap();
        let scan = extensivity_scan(&s, &growth, &[10.0, 100.0, 1000.0]).unwrap();
        for row in &scan.rows {
            assert_close(row.s, row.n - 1.0, 1e-8 * row.n);
        }
        assert_eq!(scan.classification, ScanClass::Converged);
        assert_close(scan.c_estimate.unwrap(), 1.0, 1e-9);
    }

    #[test]
    fn extensivity_mismatch_is_divergent() {
        let s = EntropyFunctional::Renyi { alpha: 0.5 };
        let growth = GrowthFunction::super_exponential(Generator::linear(2.0).unwrap()).unwrap();
        let scan = extensivity_scan(&s, &growth, &[125.0, 250.0, 500.0, 1000.0]).unwrap();
        assert_eq!(scan.classification, ScanClass::Divergent);
        assert!(scan.c_estimate.is_none());
    }

    #[test]
    fn extensivity_degenerate_pairing() {
        // Stretched entropy against plain exponential growth decays to 0.
        let s = EntropyFunctional::Stretched { rate: 1.0, beta: 2.0, alphas: vec![0.5] };
        let scan = extensivity_scan(
            &s,
            &GrowthFunction::exponential(),
            &[125.0, 250.0, 500.0, 1000.0],
        )
        .unwrap();
        assert_eq!(scan.classification, ScanClass::Degenerate);
    }
}
