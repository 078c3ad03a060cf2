//! Scalar special functions and invertible generator maps.
//!
//! Two things live here: the principal branch of the Lambert W function
//! (`w·e^w = x`, solved by Halley iteration, with a log-domain variant for
//! arguments too large to exponentiate), and [`Generator`] — a closed-form
//! strictly monotone scalar map with forward and inverse evaluation. The
//! entropy catalog is parameterized by generators: the deformation `χ` of
//! the group logarithm `ln_χ(x) = χ(ln x)`, the interpolation function `g`
//! selecting a super-exponential growth regime, and the generators `G` of
//! the functional-equation solutions.

use std::f64::consts::E;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

const NEG_INV_E: f64 = -0.367_879_441_171_442_33;

/// Principal real branch `W₀`: the solution `w ≥ −1` of `w·e^w = x`,
/// defined for `x ≥ −1/e`.
///
/// Halley iteration from a piecewise initial guess (`ln x − ln ln x` for
/// large arguments, `x(1−x)` near zero, a branch-point series near `−1/e`);
/// converges to a residual `|w·e^w − x| ≲ 1e-15·max(1,|x|)`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::DomainError("lambert_w0(NaN)".into()));
    }
    if x < NEG_INV_E - 1e-12 {
        return Err(Error::DomainError(format!(
            "lambert_w0 needs x ≥ −1/e, got {x}"
        )));
    }
    if x <= NEG_INV_E {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = if x < -0.25 {
        // Series around the branch point in p = √(2(ex+1)).
        let p = (2.0 * (E * x + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x < 0.5 {
        x * (1.0 - x)
    } else if x < E {
        (1.0 + x).ln()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let half_next = (w + 2.0) / (2.0 * w + 2.0);
        // Near the branch point Halley's correction term degenerates;
        // fall back to the series value we already have.
        if !half_next.is_finite() {
            break;
        }
        let dw = f / (ew * (w + 1.0) - half_next * f);
        w -= dw;
        if dw.abs() <= 1e-15 * (w.abs() + f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(w)
}

/// Log-domain variant: given `u = ln x`, return `W₀(x)` without ever forming
/// `x`. Solves `w + ln w = u` by Newton iteration for large `u`; needed when
/// `x = e^u` overflows (super-exponential state-space counts).
pub fn lambert_w0_from_ln(u: f64) -> Result<f64> {
    if u.is_nan() {
        return Err(Error::DomainError("lambert_w0_from_ln(NaN)".into()));
    }
    if u <= 2.0 {
        return lambert_w0(u.exp());
    }
    let mut w = u - u.ln();
    for _ in 0..50 {
        let next = w * (1.0 + u - w.ln()) / (w + 1.0);
        let dw = next - w;
        w = next;
        if dw.abs() <= 1e-15 * w.abs() {
            break;
        }
    }
    Ok(w)
}

/// A real interval, endpoints possibly infinite. Open endpoints are enforced
/// by the owning generator's own domain checks; `contains` is inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn all() -> Self {
        Self { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn at_least(lo: f64) -> Self {
        Self { lo, hi: f64::INFINITY }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum GenKind {
    /// t ↦ t
    Identity,
    /// t ↦ νt
    Linear { nu: f64 },
    /// t ↦ (e^{σt} − 1)/σ
    ExpSigma { sigma: f64 },
    /// t ↦ e^t
    Exp,
    /// t ↦ ln t
    Ln,
    /// t ↦ 2(e^{rt}−1) / (−a(e^{rt}−1) + √(a²+4b)(e^{rt}+1))
    RationalExp { a: f64, b: f64, r: f64 },
    /// t ↦ (t/γ)^{1/β}
    StretchedRoot { gamma: f64, beta: f64 },
    /// t ↦ k₁ ln(t/k₁ + 1)
    LogShift { k1: f64 },
    /// t ↦ e^{W₀(t)} − 1 (inverse u ↦ (1+u)ln(1+u))
    ExpLambert,
    /// t ↦ inner(s·t)/s — the χ/G identification with s = 1 − α
    ScaledArg { inner: Box<Generator>, s: f64 },
    /// t ↦ outer(inner(t))
    Compose { outer: Box<Generator>, inner: Box<Generator> },
    /// forward and inverse exchanged
    Inverted { inner: Box<Generator> },
    Custom {
        name: String,
        f: ScalarFn,
        f_inv: Option<ScalarFn>,
        domain: Interval,
        increasing: bool,
    },
}

/// An invertible closed-form scalar map with a domain of validity.
///
/// Forward evaluation is domain-checked; the inverse uses the closed form
/// when one exists and bracketed bisection otherwise.
#[derive(Clone)]
pub struct Generator {
    kind: GenKind,
}

impl Generator {
    pub fn identity() -> Self {
        Self { kind: GenKind::Identity }
    }

    pub fn linear(nu: f64) -> Result<Self> {
        if nu == 0.0 || !nu.is_finite() {
            return Err(Error::InvalidParameter(format!("linear generator needs ν ≠ 0, got {nu}")));
        }
        Ok(Self { kind: GenKind::Linear { nu } })
    }

    pub fn exp_sigma(sigma: f64) -> Result<Self> {
        if sigma == 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exponential generator needs σ ≠ 0, got {sigma}"
            )));
        }
        Ok(Self { kind: GenKind::ExpSigma { sigma } })
    }

    pub fn exp() -> Self {
        Self { kind: GenKind::Exp }
    }

    pub fn ln_gen() -> Self {
        Self { kind: GenKind::Ln }
    }

    /// Solution generator of the rational law `(x+y+axy)/(1+bxy)`;
    /// requires `a > 0`, `b ≥ 0` (so `a² + 4b ≥ 0`) and `r ≠ 0`.
    pub fn rational(a: f64, b: f64, r: f64) -> Result<Self> {
        if a * a + 4.0 * b < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "rational generator needs a² + 4b ≥ 0, got a={a}, b={b}"
            )));
        }
        if a <= 0.0 || b < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "rational generator needs a > 0 and b ≥ 0, got a={a}, b={b}"
            )));
        }
        if r == 0.0 {
            return Err(Error::InvalidParameter("rational generator needs r ≠ 0".into()));
        }
        Ok(Self { kind: GenKind::RationalExp { a, b, r } })
    }

    pub fn stretched_root(gamma: f64, beta: f64) -> Result<Self> {
        if gamma <= 0.0 || beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "stretched-root generator needs γ > 0 and β > 0, got γ={gamma}, β={beta}"
            )));
        }
        Ok(Self { kind: GenKind::StretchedRoot { gamma, beta } })
    }

    pub fn log_shift(k1: f64) -> Result<Self> {
        if k1 <= 0.0 {
            return Err(Error::InvalidParameter(format!("log-shift generator needs k₁ > 0, got {k1}")));
        }
        Ok(Self { kind: GenKind::LogShift { k1 } })
    }

    pub fn exp_lambert() -> Self {
        Self { kind: GenKind::ExpLambert }
    }

    /// `t ↦ inner(s·t)/s`, the rescaling that identifies a univariate-Z
    /// generator `G` with the group-logarithm deformation `χ`.
    pub fn scaled_arg(inner: Generator, s: f64) -> Result<Self> {
        if s == 0.0 || !s.is_finite() {
            return Err(Error::InvalidParameter("scaled_arg needs s ≠ 0".into()));
        }
        Ok(Self { kind: GenKind::ScaledArg { inner: Box::new(inner), s } })
    }

    pub fn compose(outer: Generator, inner: Generator) -> Self {
        Self { kind: GenKind::Compose { outer: Box::new(outer), inner: Box::new(inner) } }
    }

    pub fn inverted(inner: Generator) -> Self {
        Self { kind: GenKind::Inverted { inner: Box::new(inner) } }
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_inv: Option<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
        domain: Interval,
        increasing: bool,
    ) -> Self {
        Self {
            kind: GenKind::Custom {
                name: name.into(),
                f: Arc::new(f),
                f_inv: f_inv.map(Arc::from),
                domain,
                increasing,
            },
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            GenKind::Identity => "identity".into(),
            GenKind::Linear { nu } => format!("linear(ν={nu})"),
            GenKind::ExpSigma { sigma } => format!("exp-sigma(σ={sigma})"),
            GenKind::Exp => "exp".into(),
            GenKind::Ln => "ln".into(),
            GenKind::RationalExp { a, b, r } => format!("rational(a={a}, b={b}, r={r})"),
            GenKind::StretchedRoot { gamma, beta } => format!("stretched-root(γ={gamma}, β={beta})"),
            GenKind::LogShift { k1 } => format!("log-shift(k₁={k1})"),
            GenKind::ExpLambert => "exp-lambert".into(),
            GenKind::ScaledArg { inner, s } => format!("scaled[{}, s={s}]", inner.name()),
            GenKind::Compose { outer, inner } => format!("{} ∘ {}", outer.name(), inner.name()),
            GenKind::Inverted { inner } => format!("inverse[{}]", inner.name()),
            GenKind::Custom { name, .. } => name.clone(),
        }
    }

    pub fn domain(&self) -> Interval {
        match &self.kind {
            GenKind::Identity
            | GenKind::Linear { .. }
            | GenKind::ExpSigma { .. }
            | GenKind::Exp
            | GenKind::RationalExp { .. } => Interval::all(),
            GenKind::Ln => Interval::at_least(0.0),
            GenKind::StretchedRoot { .. } => Interval::at_least(0.0),
            GenKind::LogShift { k1 } => Interval::at_least(-k1),
            GenKind::ExpLambert => Interval::at_least(NEG_INV_E),
            GenKind::ScaledArg { inner, s } => {
                let d = inner.domain();
                if *s > 0.0 {
                    Interval::new(d.lo / s, d.hi / s)
                } else {
                    Interval::new(d.hi / s, d.lo / s)
                }
            }
            // The outer map's constraint is enforced at evaluation time.
            GenKind::Compose { inner, .. } => inner.domain(),
            GenKind::Inverted { inner } => inner.range(),
            GenKind::Custom { domain, .. } => *domain,
        }
    }

    /// Image of the domain under the forward map (monotone, so an interval).
    pub fn range(&self) -> Interval {
        let d = self.domain();
        let at = |x: f64, sign: f64| -> f64 {
            if x.is_finite() {
                self.forward(x).unwrap_or(sign * f64::INFINITY)
            } else {
                // Monotone maps on unbounded domains are unbounded or
                // asymptotic; probe far out.
                self.forward(x.signum() * 1e12).unwrap_or(sign * f64::INFINITY)
            }
        };
        if self.is_increasing() {
            Interval::new(at(d.lo, -1.0), at(d.hi, 1.0))
        } else {
            Interval::new(at(d.hi, -1.0), at(d.lo, 1.0))
        }
    }

    pub fn is_increasing(&self) -> bool {
        match &self.kind {
            GenKind::Identity
            | GenKind::ExpSigma { .. }
            | GenKind::Exp
            | GenKind::Ln
            | GenKind::StretchedRoot { .. }
            | GenKind::LogShift { .. }
            | GenKind::ExpLambert => true,
            GenKind::Linear { nu } => *nu > 0.0,
            GenKind::RationalExp { r, .. } => *r > 0.0,
            GenKind::ScaledArg { inner, .. } => inner.is_increasing(),
            GenKind::Compose { outer, inner } => outer.is_increasing() == inner.is_increasing(),
            GenKind::Inverted { inner } => inner.is_increasing(),
            GenKind::Custom { increasing, .. } => *increasing,
        }
    }

    pub fn forward(&self, x: f64) -> Result<f64> {
        match &self.kind {
            GenKind::Identity => Ok(x),
            GenKind::Linear { nu } => Ok(nu * x),
            GenKind::ExpSigma { sigma } => Ok((sigma * x).exp_m1() / sigma),
            GenKind::Exp => Ok(x.exp()),
            GenKind::Ln => {
                if x <= 0.0 {
                    Err(Error::DomainError(format!("ln needs x > 0, got {x}")))
                } else {
                    Ok(x.ln())
                }
            }
            GenKind::RationalExp { a, b, r } => {
                let c = (a * a + 4.0 * b).sqrt();
                let t = r * x;
                if t < 30.0 {
                    let u = t.exp_m1(); // e^{rt} − 1
                    Ok(2.0 * u / (-a * u + c * (u + 2.0)))
                } else {
                    // Divide through by e^{rt} to avoid overflow.
                    let ei = (-t).exp();
                    Ok(2.0 * (1.0 - ei) / (-a * (1.0 - ei) + c * (1.0 + ei)))
                }
            }
            GenKind::StretchedRoot { gamma, beta } => {
                if x < 0.0 {
                    Err(Error::DomainError(format!("stretched-root needs t ≥ 0, got {x}")))
                } else {
                    Ok((x / gamma).powf(1.0 / beta))
                }
            }
            GenKind::LogShift { k1 } => {
                if x / k1 <= -1.0 {
                    Err(Error::DomainError(format!("log-shift needs t > −k₁, got {x}")))
                } else {
                    Ok(k1 * (x / k1).ln_1p())
                }
            }
            GenKind::ExpLambert => Ok(lambert_w0(x)?.exp_m1()),
            GenKind::ScaledArg { inner, s } => Ok(inner.forward(s * x)? / s),
            GenKind::Compose { outer, inner } => outer.forward(inner.forward(x)?),
            GenKind::Inverted { inner } => inner.inverse(x),
            GenKind::Custom { f, domain, .. } => {
                if !domain.contains(x) {
                    Err(Error::DomainError(format!("{x} outside custom domain")))
                } else {
                    Ok(f(x))
                }
            }
        }
    }

    /// Inverse map; closed form where available, bracketed bisection
    /// otherwise.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        match &self.kind {
            GenKind::Identity => Ok(y),
            GenKind::Linear { nu } => Ok(y / nu),
            GenKind::ExpSigma { sigma } => {
                let arg = sigma * y;
                if arg <= -1.0 {
                    Err(Error::DomainError(format!("{y} outside the range of (e^{{σt}}−1)/σ")))
                } else {
                    Ok(arg.ln_1p() / sigma)
                }
            }
            GenKind::Exp => {
                if y <= 0.0 {
                    Err(Error::DomainError(format!("exp inverse needs y > 0, got {y}")))
                } else {
                    Ok(y.ln())
                }
            }
            GenKind::Ln => Ok(y.exp()),
            GenKind::RationalExp { a, b, r } => {
                let c = (a * a + 4.0 * b).sqrt();
                let den = 2.0 - y * (c - a);
                let num = 2.0 + y * (c + a);
                if den <= 0.0 || num <= 0.0 {
                    return Err(Error::DomainError(format!(
                        "{y} outside the range of the rational generator"
                    )));
                }
                Ok((num / den).ln() / r)
            }
            GenKind::StretchedRoot { gamma, beta } => {
                if y < 0.0 {
                    Err(Error::DomainError(format!("stretched-root inverse needs y ≥ 0, got {y}")))
                } else {
                    Ok(gamma * y.powf(*beta))
                }
            }
            GenKind::LogShift { k1 } => Ok(k1 * (y / k1).exp_m1()),
            GenKind::ExpLambert => {
                if y <= -1.0 {
                    Err(Error::DomainError(format!("exp-lambert inverse needs y > −1, got {y}")))
                } else {
                    // (1+y)·ln(1+y)
                    Ok((1.0 + y) * y.ln_1p())
                }
            }
            GenKind::ScaledArg { inner, s } => Ok(inner.inverse(s * y)? / s),
            GenKind::Compose { outer, inner } => inner.inverse(outer.inverse(y)?),
            GenKind::Inverted { inner } => inner.forward(y),
            GenKind::Custom { f_inv: Some(f_inv), .. } => Ok(f_inv(y)),
            GenKind::Custom { f_inv: None, .. } => invert_numeric(self, y),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.name())
    }
}

/// The group logarithm `ln_χ(x) = χ(ln x)`, the deformation of the natural
/// logarithm by a strictly increasing `χ` with `χ(0) = 0`.
pub fn group_log(chi: &Generator, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::DomainError(format!("group_log needs x > 0, got {x}")));
    }
    chi.forward(x.ln())
}

/// Invert a monotone generator numerically: find `x` with `g(x) = y` by
/// doubling out to a bracket, then bisecting to f64 resolution.
pub fn invert_numeric(g: &Generator, y: f64) -> Result<f64> {
    let dom = g.domain();
    let sign = if g.is_increasing() { 1.0 } else { -1.0 };
    let f = |x: f64| -> Result<f64> { Ok(sign * g.forward(x)?) };
    let target = sign * y;

    // Starting point inside the domain.
    let start = if dom.contains(0.0) {
        0.0
    } else if dom.lo.is_finite() {
        if dom.hi.is_finite() {
            0.5 * (dom.lo + dom.hi)
        } else {
            dom.lo + 1.0
        }
    } else {
        dom.hi - 1.0
    };

    // Expand downward until f(lo) ≤ target, clamping toward a finite
    // domain edge by halving the gap (the edge itself may be singular).
    let mut lo = start;
    let mut step = 1.0;
    let mut found = false;
    for _ in 0..200 {
        if f(lo).map(|v| v <= target).unwrap_or(false) {
            found = true;
            break;
        }
        lo = if dom.lo.is_finite() {
            dom.lo + (lo - dom.lo) / 4.0
        } else {
            step *= 2.0;
            lo - step
        };
    }
    if !found {
        return Err(Error::BracketNotFound { target: y });
    }

    let mut hi = start.max(lo);
    step = 1.0;
    found = false;
    for _ in 0..200 {
        if f(hi).map(|v| v >= target).unwrap_or(false) {
            found = true;
            break;
        }
        hi = if dom.hi.is_finite() {
            dom.hi - (dom.hi - hi) / 4.0
        } else {
            step *= 2.0;
            hi + step
        };
    }
    if !found {
        return Err(Error::BracketNotFound { target: y });
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval has collapsed to adjacent floats
        }
        match f(mid) {
            Ok(v) if v < target => lo = mid,
            Ok(_) => hi = mid,
            Err(_) => hi = mid,
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Result of sampling-based generator validation.
#[derive(Clone, Debug)]
pub struct GeneratorCheck {
    pub strictly_monotone: bool,
    pub increasing: bool,
    pub max_roundtrip_error: f64,
    pub vanishes_at_zero: Option<bool>,
}

impl Generator {
    /// Sample `n` points of a window inside the domain; check strict
    /// monotonicity and the inverse round trip at 1e-12 relative tolerance.
    /// Strictness is asserted by sampling, not proven.
    pub fn validate_sampled(&self, n: usize, window: Interval) -> Result<GeneratorCheck> {
        let dom = self.domain();
        let lo = window.lo.max(if dom.lo.is_finite() { dom.lo + 1e-6 } else { window.lo });
        let hi = window.hi.min(if dom.hi.is_finite() { dom.hi - 1e-6 } else { window.hi });
        if !(lo < hi) {
            return Err(Error::InvalidParameter("empty validation window".into()));
        }
        let mut prev = None;
        let mut monotone = true;
        let mut max_rt = 0.0f64;
        let dir = if self.is_increasing() { 1.0 } else { -1.0 };
        for i in 0..n {
            let x = lo + (hi - lo) * (i as f64) / ((n - 1) as f64);
            let v = self.forward(x)?;
            if let Some(p) = prev {
                if dir * (v - p) <= 0.0 {
                    monotone = false;
                }
            }
            prev = Some(v);
            if let Ok(back) = self.inverse(v) {
                let err = (back - x).abs() / x.abs().max(1.0);
                max_rt = max_rt.max(err);
            }
        }
        let vanishes = if dom.contains(0.0) {
            Some(self.forward(0.0).map(|v| v.abs() <= 1e-14).unwrap_or(false))
        } else {
            None
        };
        Ok(GeneratorCheck {
            strictly_monotone: monotone,
            increasing: self.is_increasing(),
            max_roundtrip_error: max_rt,
            vanishes_at_zero: vanishes,
        })
    }
}
