//! Exact truncated power-series algebra.
//!
//! A [`TruncatedSeries`] is a univariate power series with arbitrary-precision
//! rational coefficients, known exactly up to a truncation degree `M`.
//! A [`MultivarPoly`] is the same thing in two or three variables, truncated
//! by total degree. Coefficients beyond the truncation order are discarded,
//! never approximated, so every identity check below is exact.
//!
//! Invariants:
//! - all arithmetic (add, multiply, compose, invert) is closed at the shared
//!   truncation order;
//! - a series admits a compositional inverse iff its constant term is zero
//!   and its degree-1 coefficient is nonzero.
//!
//! [`law`] builds formal group laws `Φ(s₁,s₂) = G(G⁻¹(s₁)+G⁻¹(s₂))` and ring
//! products `Ψ(s₁,s₂) = G(G⁻¹(s₁)·G⁻¹(s₂))` from a generator series `G` and
//! verifies the group/ring axioms coefficient by coefficient.

mod law;
mod multivar;

pub use law::{
    construct_group_law, construct_ring_product, philaw_reduction_poly, rational_law_generator,
    rational_law_poly, tsallis_product_poly, verify_group_axioms, verify_ring_axioms, AxiomCheck,
    AxiomReport, CoeffMismatch,
};
pub use multivar::MultivarPoly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Default truncation degree used by the command-line tools.
pub const DEFAULT_ORDER: u32 = 12;

/// Exact rational coefficient.
pub type Rat = BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A power series truncated at degree `order`, with exact rational
/// coefficients indexed by degree `0..=order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
    order: u32,
}

impl TruncatedSeries {
    /// Build a series from coefficients in degree order; missing entries are
    /// zero, extra entries beyond `order` are dropped.
    pub fn from_coeffs(coeffs: Vec<Rat>, order: u32) -> Self {
        let mut c = coeffs;
        c.resize((order + 1) as usize, Rat::zero());
        Self { coeffs: c, order }
    }

    pub fn zero(order: u32) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    /// The identity series `t`.
    pub fn identity(order: u32) -> Self {
        Self::monomial(Rat::one(), 1, order)
    }

    pub fn constant(c: Rat, order: u32) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn monomial(c: Rat, degree: u32, order: u32) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree as usize] = c;
        }
        s
    }

    /// `(e^{σt} − 1)/σ`, the group exponential of the multiplicative law
    /// `x + y + σxy`. Coefficient of `t^k` is `σ^{k−1}/k!`.
    pub fn exp_sigma(sigma: &Rat, order: u32) -> Result<Self> {
        if sigma.is_zero() {
            return Err(Error::InvalidParameter(
                "exp_sigma needs σ ≠ 0 (the σ → 0 limit is the identity series)".into(),
            ));
        }
        let mut coeffs = vec![Rat::zero(); (order + 1) as usize];
        let mut c = Rat::one(); // σ^{k−1}/k! at k = 1
        for k in 1..=order {
            coeffs[k as usize] = c.clone();
            c = c * sigma / Rat::from(BigInt::from(k as i64 + 1));
        }
        Ok(Self { coeffs, order })
    }

    /// `ln(1 + σs)/σ`, the compositional inverse of [`Self::exp_sigma`].
    pub fn log_sigma(sigma: &Rat, order: u32) -> Result<Self> {
        if sigma.is_zero() {
            return Err(Error::InvalidParameter("log_sigma needs σ ≠ 0".into()));
        }
        let mut coeffs = vec![Rat::zero(); (order + 1) as usize];
        let mut p = Rat::one(); // σ^{k−1}
        for k in 1..=order {
            let term = &p / Rat::from(BigInt::from(k as i64));
            coeffs[k as usize] = if k % 2 == 0 { -term } else { term };
            p = p * sigma;
        }
        Ok(Self { coeffs, order })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, degree: u32) -> &Rat {
        &self.coeffs[degree as usize]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs, order: self.order })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs, order: self.order })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            order: self.order,
        }
    }

    /// Product truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = (self.order + 1) as usize;
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + a * b;
                }
            }
        }
        Ok(Self { coeffs, order: self.order })
    }

    /// Substitute `inner` into `self`: coefficients of `self(inner(t))`,
    /// exact to the truncation order. `inner` must have zero constant term,
    /// otherwise the composition is undefined in the truncated ring.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm(inner.coeffs[0].to_string()));
        }
        // Horner: result = (..(c_M · inner + c_{M−1}) · inner + ..) + c_0
        let mut result = Self::constant(self.coeffs[self.order as usize].clone(), self.order);
        for k in (0..self.order).rev() {
            result = result.mul(inner)?;
            result.coeffs[0] = &result.coeffs[0] + &self.coeffs[k as usize];
        }
        Ok(result)
    }

    /// Compositional inverse: the series `h` with `self(h(t)) = t` up to the
    /// truncation order. Needs zero constant term and nonzero linear
    /// coefficient; each coefficient of `h` is solved for in turn.
    pub fn compositional_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonInvertibleSeries(format!(
                "constant term {} is nonzero",
                self.coeffs[0]
            )));
        }
        let s1 = &self.coeffs[1];
        if s1.is_zero() {
            return Err(Error::NonInvertibleSeries(
                "zero linear coefficient".into(),
            ));
        }
        let mut h = Self::monomial(s1.recip(), 1, self.order);
        for k in 2..=self.order {
            let r = self.compose(&h)?;
            // With h exact below degree k, (self∘h − t) starts at degree k
            // and its degree-k coefficient is linear in h_k with slope s1.
            h.coeffs[k as usize] = -&r.coeffs[k as usize] / s1;
        }
        Ok(h)
    }

    /// Multiplicative reciprocal `1/self`, requires nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let s0 = &self.coeffs[0];
        if s0.is_zero() {
            return Err(Error::NonInvertibleSeries(
                "reciprocal of a series with zero constant term".into(),
            ));
        }
        let mut r = vec![Rat::zero(); (self.order + 1) as usize];
        r[0] = s0.recip();
        for k in 1..=self.order as usize {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + &self.coeffs[j] * &r[k - j];
                }
            }
            r[k] = -acc / s0;
        }
        Ok(Self { coeffs: r, order: self.order })
    }

    /// Termwise antiderivative with zero constant term; the degree-`order`
    /// input coefficient has nowhere to go and is dropped.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![Rat::zero(); (self.order + 1) as usize];
        for k in 0..self.order as usize {
            if !self.coeffs[k].is_zero() {
                coeffs[k + 1] = &self.coeffs[k] / Rat::from(BigInt::from(k as i64 + 1));
            }
        }
        Self { coeffs, order: self.order }
    }

    /// Structured-text form: `series 1 <order>` header, then one
    /// `<degree> <numerator> <denominator>` record per nonzero coefficient.
    /// Round-trips exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("series 1 {}\n", self.order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.push_str(&format!("{} {} {}\n", k, c.numer(), c.denom()));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (vars, order, records) = parse_series_text(text)?;
        if vars != 1 {
            return Err(Error::VariableCountMismatch { expected: 1, found: vars });
        }
        let mut s = Self::zero(order);
        for (exps, c) in records {
            let d = exps[0];
            if d > order {
                return Err(Error::Parse(format!(
                    "degree {d} exceeds truncation order {order}"
                )));
            }
            s.coeffs[d as usize] = c;
        }
        Ok(s)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = if first || !c.is_negative() { c.clone() } else { -c };
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}·t")?,
                _ => write!(f, "{a}·t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

/// Shared parser for the series/poly text format. Returns
/// `(vars, order, records)` with exact rational coefficients.
pub(crate) fn parse_series_text(text: &str) -> Result<(usize, u32, Vec<(Vec<u32>, Rat)>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty series text".into()))?;
    let mut h = header.split_whitespace();
    if h.next() != Some("series") {
        return Err(Error::Parse("expected `series <vars> <order>` header".into()));
    }
    let vars: usize = h
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad variable count in header".into()))?;
    let order: u32 = h
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad order in header".into()))?;
    if !(1..=3).contains(&vars) {
        return Err(Error::Parse(format!("unsupported variable count {vars}")));
    }

    let mut records = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != vars + 2 {
            return Err(Error::Parse(format!(
                "record `{line}` should have {} fields (degree tuple, numerator, denominator)",
                vars + 2
            )));
        }
        let mut exps = Vec::with_capacity(vars);
        for t in &toks[..vars] {
            exps.push(
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent `{t}`")))?,
            );
        }
        let num: BigInt = toks[vars]
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator `{}`", toks[vars])))?;
        let den: BigInt = toks[vars + 1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator `{}`", toks[vars + 1])))?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        records.push((exps, Rat::new(num, den)));
    }
    Ok((vars, order, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_series(order: u32) -> TruncatedSeries {
        TruncatedSeries::exp_sigma(&Rat::one(), order).unwrap()
    }

    #[test]
    fn compose_identity_outer_returns_inner() {
        let s = TruncatedSeries::from_coeffs(vec![rat(0, 1), rat(3, 2), rat(-1, 5)], 6);
        let id = TruncatedSeries::identity(6);
        assert_eq!(id.compose(&s).unwrap(), s);
    }

    #[test]
    fn compose_direct_expansion() {
        // (t + t²) ∘ (2t) = 2t + 4t²
        let outer = TruncatedSeries::from_coeffs(vec![rat(0, 1), rat(1, 1), rat(1, 1)], 4);
        let inner = TruncatedSeries::monomial(rat(2, 1), 1, 4);
        let got = outer.compose(&inner).unwrap();
        let want = TruncatedSeries::from_coeffs(vec![rat(0, 1), rat(2, 1), rat(4, 1)], 4);
        assert_eq!(got, want);
    }

    #[test]
    fn compose_exp_log_is_identity() {
        // exp-series t + t²/2 + t³/6 composed with log-series t − t²/2 + t³/3
        let e = TruncatedSeries::from_coeffs(vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 6)], 3);
        let l = TruncatedSeries::from_coeffs(vec![rat(0, 1), rat(1, 1), rat(-1, 2), rat(1, 3)], 3);
        assert_eq!(e.compose(&l).unwrap(), TruncatedSeries::identity(3));
    }

    #[test]
    fn compose_rejects_nonzero_constant_term() {
        let outer = TruncatedSeries::identity(4);
        let inner = TruncatedSeries::constant(rat(1, 1), 4);
        assert!(matches!(
            outer.compose(&inner),
            Err(Error::NonzeroConstantTerm(_))
        ));
    }

    #[test]
    fn inverse_of_identity() {
        let id = TruncatedSeries::identity(8);
        assert_eq!(id.compositional_inverse().unwrap(), id);
    }

    #[test]
    fn inverse_of_exp_is_log() {
        let e = exp_series(9);
        let l = TruncatedSeries::log_sigma(&Rat::one(), 9).unwrap();
        assert_eq!(e.compositional_inverse().unwrap(), l);
        assert_eq!(e.compose(&l).unwrap(), TruncatedSeries::identity(9));
        assert_eq!(l.compose(&e).unwrap(), TruncatedSeries::identity(9));
    }

    #[test]
    fn inverse_rejects_zero_linear_coefficient() {
        let s = TruncatedSeries::monomial(rat(1, 1), 2, 5);
        assert!(matches!(
            s.compositional_inverse(),
            Err(Error::NonInvertibleSeries(_))
        ));
    }

    #[test]
    fn inverse_coefficient_relations() {
        // With G(t) = Σ a_k t^{k+1}/(k+1) and G⁻¹(s) = Σ b_j s^{j+1}/(j+1),
        // a_0 = 1 forces a_1 = −b_1 and a_2 = (3/2)b_1² − b_2.
        for (b1, b2) in [(rat(2, 3), rat(-1, 4)), (rat(-5, 2), rat(7, 3)), (rat(1, 1), rat(1, 1))] {
            let ginv = TruncatedSeries::from_coeffs(
                vec![rat(0, 1), rat(1, 1), &b1 / rat(2, 1), &b2 / rat(3, 1)],
                6,
            );
            let g = ginv.compositional_inverse().unwrap();
            let a1 = g.coeff(2) * rat(2, 1);
            let a2 = g.coeff(3) * rat(3, 1);
            assert_eq!(a1, -b1.clone());
            assert_eq!(a2, rat(3, 2) * &b1 * &b1 - b2);
        }
    }

    #[test]
    fn reciprocal_times_self_is_one() {
        let s = TruncatedSeries::from_coeffs(vec![rat(2, 1), rat(-1, 3), rat(4, 7)], 8);
        let r = s.reciprocal().unwrap();
        assert_eq!(s.mul(&r).unwrap(), TruncatedSeries::constant(rat(1, 1), 8));
    }

    #[test]
    fn text_round_trip() {
        let s = TruncatedSeries::from_coeffs(vec![rat(0, 1), rat(1, 1), rat(-3, 7), rat(22, 5)], 10);
        let back = TruncatedSeries::from_text(&s.to_text()).unwrap();
        assert_eq!(back, s);
    }
}
