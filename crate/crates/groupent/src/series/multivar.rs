//! Truncated polynomials in two or three variables.
//!
//! Truncation is by total degree, consistent with substituting bivariate
//! laws into one another. Terms are kept sparse in a `BTreeMap` keyed by the
//! exponent tuple; zero coefficients are never stored, so structural
//! equality is coefficient equality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{parse_series_text, Rat, TruncatedSeries};
use crate::{Error, Result};

/// Exponent tuple; unused trailing variables stay zero.
pub(crate) type Exp = [u16; 3];

fn total_degree(e: &Exp) -> u32 {
    e[0] as u32 + e[1] as u32 + e[2] as u32
}

/// A polynomial in `vars` (2 or 3) variables with exact rational
/// coefficients, truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivarPoly {
    vars: usize,
    order: u32,
    terms: BTreeMap<Exp, Rat>,
}

impl MultivarPoly {
    pub fn zero(vars: usize, order: u32) -> Self {
        assert!((2..=3).contains(&vars), "2 or 3 variables supported");
        Self { vars, order, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, order: u32, c: Rat) -> Self {
        let mut p = Self::zero(vars, order);
        p.add_term([0, 0, 0], c);
        p
    }

    /// The bare variable `x_idx`.
    pub fn var(vars: usize, order: u32, idx: usize) -> Self {
        assert!(idx < vars);
        let mut p = Self::zero(vars, order);
        let mut e = [0u16; 3];
        e[idx] = 1;
        p.add_term(e, Rat::one());
        p
    }

    /// A univariate series read as a polynomial in variable `idx`.
    pub fn from_univariate(series: &TruncatedSeries, vars: usize, idx: usize) -> Self {
        let mut p = Self::zero(vars, series.order());
        assert!(idx < vars);
        for k in 0..=series.order() {
            let c = series.coeff(k);
            if !c.is_zero() {
                let mut e = [0u16; 3];
                e[idx] = k as u16;
                p.add_term(e, c.clone());
            }
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u16]) -> Rat {
        let mut e = [0u16; 3];
        e[..exps.len()].copy_from_slice(exps);
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&[0, 0, 0])
    }

    /// Iterate `(exponents, coefficient)` in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    /// Leading (lexicographically first) term, used to report the first
    /// failing coefficient of an identity check.
    pub fn first_term(&self) -> Option<(Exp, Rat)> {
        self.terms.iter().next().map(|(e, c)| (*e, c.clone()))
    }

    fn add_term(&mut self, e: Exp, c: Rat) {
        if c.is_zero() || total_degree(&e) > self.order {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableCountMismatch { expected: self.vars, found: other.vars });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars, self.order);
        }
        Self {
            vars: self.vars,
            order: self.order,
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Product truncated at total degree `order`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.vars, self.order);
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &other.terms {
                if d1 + total_degree(e2) > self.order {
                    continue;
                }
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::constant(self.vars, self.order, Rat::one());
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiplicative reciprocal by geometric expansion; the constant term
    /// must be nonzero. This is how closed-form rational laws are admitted
    /// into the exact verifier.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NonInvertibleSeries(
                "reciprocal of a polynomial with zero constant term".into(),
            ));
        }
        let mut rest = self.clone();
        rest.terms.remove(&[0, 0, 0]);
        let scaled = rest.scale(&(-c0.recip())); // −N/c
        let mut out = Self::constant(self.vars, self.order, Rat::one());
        let mut power = Self::constant(self.vars, self.order, Rat::one());
        for _ in 1..=self.order {
            power = power.mul(&scaled)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out.scale(&c0.recip()))
    }

    /// Exchange two variables (e.g. to test `Φ(x,y) = Φ(y,x)`).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = *e;
                f.swap(i, j);
                (f, c.clone())
            })
            .collect();
        Self { vars: self.vars, order: self.order, terms }
    }

    /// Substitute zero for variable `idx`.
    pub fn set_var_zero(&self, idx: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[idx] == 0)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        Self { vars: self.vars, order: self.order, terms }
    }

    /// Embed a bivariate polynomial into the trivariate ring, sending its
    /// two variables to positions `pos[0]` and `pos[1]`.
    pub fn embed3(&self, pos: [usize; 2]) -> Result<Self> {
        if self.vars != 2 {
            return Err(Error::VariableCountMismatch { expected: 2, found: self.vars });
        }
        assert!(pos[0] < 3 && pos[1] < 3 && pos[0] != pos[1]);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = [0u16; 3];
                f[pos[0]] = e[0];
                f[pos[1]] = e[1];
                (f, c.clone())
            })
            .collect();
        Ok(Self { vars: 3, order: self.order, terms })
    }

    /// Evaluate a univariate series at this polynomial (which must have zero
    /// constant term so that the truncation stays exact).
    pub fn apply_series(series: &TruncatedSeries, arg: &Self) -> Result<Self> {
        if series.order() != arg.order {
            return Err(Error::OrderMismatch(series.order(), arg.order));
        }
        if !arg.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm(arg.constant_term().to_string()));
        }
        let m = series.order();
        let mut out = Self::constant(arg.vars, arg.order, series.coeff(m).clone());
        for k in (0..m).rev() {
            out = out.mul(arg)?;
            out.add_term([0, 0, 0], series.coeff(k).clone());
        }
        Ok(out)
    }

    /// Substitute `(p, q)` into a bivariate polynomial: `Σ c_ij p^i q^j`.
    /// Both arguments must have zero constant term.
    pub fn compose_bivariate(&self, p: &Self, q: &Self) -> Result<Self> {
        if self.vars != 2 {
            return Err(Error::VariableCountMismatch { expected: 2, found: self.vars });
        }
        p.check_compatible(q)?;
        if !p.constant_term().is_zero() || !q.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm(
                "composition arguments must vanish at the origin".into(),
            ));
        }
        let max_i = self.terms.keys().map(|e| e[0]).max().unwrap_or(0) as u32;
        let max_j = self.terms.keys().map(|e| e[1]).max().unwrap_or(0) as u32;

        let mut q_pow = Vec::with_capacity(max_j as usize + 1);
        q_pow.push(Self::constant(p.vars, p.order, Rat::one()));
        for j in 1..=max_j {
            let next = q_pow[(j - 1) as usize].mul(q)?;
            q_pow.push(next);
        }

        // inner[i] = Σ_j c_ij q^j, then Horner over powers of p.
        let mut inner = vec![Self::zero(p.vars, p.order); max_i as usize + 1];
        for (e, c) in &self.terms {
            let contrib = q_pow[e[1] as usize].scale(c);
            inner[e[0] as usize] = inner[e[0] as usize].add(&contrib)?;
        }
        let mut out = inner[max_i as usize].clone();
        for i in (0..max_i).rev() {
            out = out.mul(p)?;
            out = out.add(&inner[i as usize])?;
        }
        Ok(out)
    }

    /// Structured-text form, same record layout as the univariate series;
    /// round-trips exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("series {} {}\n", self.vars, self.order);
        for (e, c) in &self.terms {
            for v in 0..self.vars {
                out.push_str(&format!("{} ", e[v]));
            }
            out.push_str(&format!("{} {}\n", c.numer(), c.denom()));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (vars, order, records) = parse_series_text(text)?;
        if vars < 2 {
            return Err(Error::VariableCountMismatch { expected: 2, found: vars });
        }
        let mut p = Self::zero(vars, order);
        for (exps, c) in records {
            let mut e = [0u16; 3];
            for (v, d) in exps.iter().enumerate() {
                e[v] = u16::try_from(*d)
                    .map_err(|_| Error::Parse(format!("exponent {d} too large")))?;
            }
            if total_degree(&e) > order {
                return Err(Error::Parse(format!(
                    "record exceeds truncation order {order}"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for MultivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [char; 3] = ['x', 'y', 'z'];
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for v in 0..self.vars {
                match e[v] {
                    0 => {}
                    1 => write!(f, "·{}", NAMES[v])?,
                    d => write!(f, "·{}^{}", NAMES[v], d)?,
                }
            }
        }
        Ok(())
    }
}
