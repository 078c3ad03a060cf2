//! Exactly solvable functional equations and discrete dynamical systems.
//!
//! Every generator `G` induces a compatible pair of laws
//! `Φ(x,y) = G(G⁻¹(x)+G⁻¹(y))` and `Ψ(x,y) = G(G⁻¹(x)·G⁻¹(y))`, and with
//! them four master functional equations:
//!
//! ```text
//! f(x+y) = Φ(f(x), f(y))      solved by f = G
//! f(x+y) = Ψ(f(x), f(y))      solved by f = G ∘ exp
//! f(x·y) = Φ(f(x), f(y))      solved by f = G ∘ ln     (x, y > 0)
//! f(x·y) = Ψ(f(x), f(y))      solved by f = G
//! ```
//!
//! Discretizing over an integer lattice (`z_n := f(n)`) turns these into
//! difference equations with the same closed-form solutions; for the
//! multiplicative-index Tsallis form with integer exponent the rescaled
//! solution `q_n = n^p − 1` generates integer sequences satisfying
//! `q_{n·m} = q_n + q_m + q_n q_m` exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::laws::CompositionLaw;
use crate::special::Generator;
use crate::{Error, Result};

/// The four master equations: additive or multiplicative combination on the
/// argument side, group law or ring product on the value side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationKind {
    AdditivePhi,
    AdditivePsi,
    MultiplicativePhi,
    MultiplicativePsi,
}

impl EquationKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::AdditivePhi => "additive-phi",
            Self::AdditivePsi => "additive-psi",
            Self::MultiplicativePhi => "multiplicative-phi",
            Self::MultiplicativePsi => "multiplicative-psi",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "additive-phi" => Ok(Self::AdditivePhi),
            "additive-psi" => Ok(Self::AdditivePsi),
            "multiplicative-phi" => Ok(Self::MultiplicativePhi),
            "multiplicative-psi" => Ok(Self::MultiplicativePsi),
            _ => Err(Error::UnknownKind {
                given: name.into(),
                valid: "additive-phi, additive-psi, multiplicative-phi, multiplicative-psi".into(),
            }),
        }
    }

    fn is_multiplicative_args(&self) -> bool {
        matches!(self, Self::MultiplicativePhi | Self::MultiplicativePsi)
    }

    fn uses_ring_product(&self) -> bool {
        matches!(self, Self::AdditivePsi | Self::MultiplicativePsi)
    }
}

/// A rectangular evaluation grid, `n` points per axis.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo < hi) || n < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs lo < hi and n ≥ 2, got [{lo}, {hi}] × {n}"
            )));
        }
        Ok(Self { lo, hi, n })
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64)
    }
}

/// One of the master equations instantiated with a generator.
#[derive(Clone, Debug)]
pub struct FunctionalEquation {
    kind: EquationKind,
    gen: Generator,
    law: CompositionLaw,
}

/// Residual report of a grid verification.
#[derive(Clone, Debug)]
pub struct GridReport {
    pub max_residual: f64,
    pub worst_point: (f64, f64),
    pub points: usize,
}

impl FunctionalEquation {
    pub fn new(kind: EquationKind, gen: Generator) -> Self {
        let law = if kind.uses_ring_product() {
            CompositionLaw::psi_conjugated(gen.clone())
        } else {
            CompositionLaw::chi_conjugated(gen.clone())
        };
        Self { kind, gen, law }
    }

    pub fn kind(&self) -> EquationKind {
        self.kind
    }

    pub fn generator(&self) -> &Generator {
        &self.gen
    }

    pub fn law(&self) -> &CompositionLaw {
        &self.law
    }

    /// The closed-form solution of this equation: `G`, `G∘exp`, `G∘ln`, `G`
    /// for the four kinds respectively.
    pub fn lemma_solution(&self) -> Generator {
        match self.kind {
            EquationKind::AdditivePhi | EquationKind::MultiplicativePsi => self.gen.clone(),
            EquationKind::AdditivePsi => Generator::compose(self.gen.clone(), Generator::exp()),
            EquationKind::MultiplicativePhi => {
                Generator::compose(self.gen.clone(), Generator::ln_gen())
            }
        }
    }

    /// Default verification window. The value side of the Ψ equations grows
    /// doubly exponentially, so the multiplicative-Ψ grid stops at 2 to keep
    /// everything representable.
    pub fn default_grid(&self) -> GridSpec {
        match self.kind {
            EquationKind::MultiplicativePsi => GridSpec { lo: 0.1, hi: 2.0, n: 20 },
            _ => GridSpec { lo: 0.1, hi: 3.0, n: 20 },
        }
    }

    /// Max residual of `f(x∘y) = Law(f(x), f(y))` over the grid square.
    /// Residuals are scaled by `max(1, |lhs|, |rhs|)`: the Ψ-side values
    /// reach magnitudes like `e^{e⁴}` where only relative comparison is
    /// meaningful in f64.
    pub fn verify_on_grid(&self, f: &Generator, grid: &GridSpec) -> Result<GridReport> {
        if self.kind.is_multiplicative_args() && grid.lo <= 0.0 {
            return Err(Error::DomainError(
                "multiplicative equations need a positive grid".into(),
            ));
        }
        let mut max_residual = 0.0f64;
        let mut worst_point = (grid.lo, grid.lo);
        let mut count = 0usize;
        for x in grid.points() {
            for y in grid.points() {
                let combined = if self.kind.is_multiplicative_args() { x * y } else { x + y };
                let lhs = f.forward(combined)?;
                let rhs = self.law.eval(f.forward(x)?, f.forward(y)?)?;
                let resid = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
                if resid > max_residual {
                    max_residual = resid;
                    worst_point = (x, y);
                }
                count += 1;
            }
        }
        Ok(GridReport { max_residual, worst_point, points: count })
    }
}

/// Closed-form solution of `f(x+y) = (f(x)+f(y)+a·f(x)f(y))/(1+b·f(x)f(y))`:
/// `f(x) = 2(e^{rx}−1)/(−a(e^{rx}−1)+√(a²+4b)(e^{rx}+1))`.
pub fn rational_solution(a: f64, b: f64, r: f64) -> Result<Generator> {
    Generator::rational(a, b, r)
}

/// The multiplicative variant (`x^r` in place of `e^{rx}`, for `x > 0`) is
/// the additive solution composed with `ln`.
pub fn rational_solution_multiplicative(a: f64, b: f64, r: f64) -> Result<Generator> {
    Ok(Generator::compose(Generator::rational(a, b, r)?, Generator::ln_gen()))
}

/// Which discrete equation: additive or multiplicative index, Φ or Ψ law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeKind {
    De1,
    De2,
    De3,
    De4,
}

impl DeKind {
    pub fn parse(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Self::De1),
            2 => Ok(Self::De2),
            3 => Ok(Self::De3),
            4 => Ok(Self::De4),
            _ => Err(Error::UnknownKind { given: n.to_string(), valid: "1, 2, 3, 4".into() }),
        }
    }

    fn equation_kind(&self) -> EquationKind {
        match self {
            Self::De1 => EquationKind::AdditivePhi,
            Self::De2 => EquationKind::AdditivePsi,
            Self::De3 => EquationKind::MultiplicativePhi,
            Self::De4 => EquationKind::MultiplicativePsi,
        }
    }

    fn multiplies_index(&self) -> bool {
        matches!(self, Self::De3 | Self::De4)
    }
}

/// The law family a discrete system is built on.
#[derive(Clone, Debug)]
pub enum SystemLaw {
    /// Φ = x+y+pxy, Ψ its deformed product; generator `(e^{pt}−1)/p`.
    Tsallis { p: f64 },
    /// The rescaled integer form of the multiplicative-index Tsallis
    /// system: `q_n = n^p − 1` with `q_{nm} = q_n + q_m + q_n q_m`.
    TsallisQ { p: u32 },
    /// The rational law with its exponential solution.
    Rational { a: f64, b: f64, r: f64 },
}

#[derive(Clone, Debug)]
pub struct DiscreteSystem {
    pub kind: DeKind,
    pub law: SystemLaw,
}

/// Sequence values; exact where the arithmetic is exact.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceValues {
    Integer(Vec<BigInt>),
    Rational(Vec<BigRational>),
    Real(Vec<f64>),
}

#[derive(Clone, Debug)]
pub struct GeneratedSequence {
    pub start: i64,
    pub values: SequenceValues,
}

impl GeneratedSequence {
    pub fn len(&self) -> usize {
        match &self.values {
            SequenceValues::Integer(v) => v.len(),
            SequenceValues::Rational(v) => v.len(),
            SequenceValues::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> i64 {
        self.start + self.len() as i64 - 1
    }

    fn index_of(&self, n: i64) -> Result<usize> {
        if n < self.start || n > self.end() {
            return Err(Error::IndexOutOfRange { index: n, lo: self.start, hi: self.end() });
        }
        Ok((n - self.start) as usize)
    }
}

impl DiscreteSystem {
    pub fn generator(&self) -> Result<Generator> {
        match &self.law {
            SystemLaw::Tsallis { p } => Generator::exp_sigma(*p),
            SystemLaw::TsallisQ { .. } => Generator::exp_sigma(1.0),
            SystemLaw::Rational { a, b, r } => Generator::rational(*a, *b, *r),
        }
    }

    fn validate(&self) -> Result<()> {
        match &self.law {
            SystemLaw::Tsallis { p } => {
                if *p == 0.0 || !p.is_finite() {
                    return Err(Error::InvalidParameter(
                        "tsallis system needs p ≠ 0 (the p → 0 limit is the additive system)"
                            .into(),
                    ));
                }
            }
            SystemLaw::TsallisQ { p } => {
                if *p == 0 {
                    return Err(Error::InvalidParameter("q-sequence needs p ≥ 1".into()));
                }
                if self.kind != DeKind::De3 {
                    return Err(Error::InvalidParameter(
                        "the rescaled q-sequence solves the multiplicative-index group law (DE3)"
                            .into(),
                    ));
                }
            }
            SystemLaw::Rational { .. } => {
                self.generator()?;
            }
        }
        Ok(())
    }
}

/// Closed-form solution values of a discrete system over `range`.
/// Integer/rational cases are exact (arbitrary precision); real cases are
/// f64 evaluations of the lemma solution.
pub fn gen_sequence(
    sys: &DiscreteSystem,
    range: std::ops::RangeInclusive<i64>,
) -> Result<GeneratedSequence> {
    sys.validate()?;
    let (start, end) = (*range.start(), *range.end());
    if start > end {
        return Err(Error::InvalidParameter(format!("empty range {start}..={end}")));
    }

    // Exact integer sequence q_n = n^p − 1.
    if let SystemLaw::TsallisQ { p } = &sys.law {
        let values = (start..=end)
            .map(|n| BigInt::from(n).pow(*p) - BigInt::one())
            .collect();
        return Ok(GeneratedSequence { start, values: SequenceValues::Integer(values) });
    }

    // Exact rational sequence w_n = (n^p − 1)/p for integer p on DE3.
    if let SystemLaw::Tsallis { p } = &sys.law {
        if sys.kind == DeKind::De3 && p.fract() == 0.0 && p.abs() <= 2f64.powi(31) {
            let pi = *p as i64;
            if pi > 0 {
                let denom = BigInt::from(pi);
                let values = (start..=end)
                    .map(|n| {
                        BigRational::new(BigInt::from(n).pow(pi as u32) - BigInt::one(), denom.clone())
                    })
                    .collect();
                return Ok(GeneratedSequence { start, values: SequenceValues::Rational(values) });
            }
        }
    }

    // Real-valued lemma solution z_n = f(n).
    let equation = FunctionalEquation::new(sys.kind.equation_kind(), sys.generator()?);
    let f = equation.lemma_solution();
    let mut values = Vec::with_capacity((end - start + 1) as usize);
    for n in start..=end {
        // The DE3 solution G(ln n) only exists on the positive lattice.
        if sys.kind == DeKind::De3 && n < 1 {
            return Err(Error::DomainError(format!(
                "the multiplicative-index group-law system needs n ≥ 1 for real exponents, got {n}"
            )));
        }
        let v = f.forward(n as f64)?;
        if !v.is_finite() {
            return Err(Error::DomainError(format!("solution overflows f64 at n = {n}")));
        }
        values.push(v);
    }
    Ok(GeneratedSequence { start, values: SequenceValues::Real(values) })
}

/// Recurrence verification report. `exact` is set for integer/rational
/// sequences, where equality is checked in arbitrary precision.
#[derive(Clone, Debug)]
pub struct RecurrenceReport {
    pub pairs_checked: usize,
    pub exact: bool,
    pub max_residual: f64,
    pub failures: Vec<(i64, i64)>,
}

impl RecurrenceReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.failures.is_empty() && (self.exact || self.max_residual <= tol)
    }
}

/// Check the defining recurrence of `sys` on the stored sequence for each
/// `(n, m)` pair. Indices (and their sum/product) must lie in the stored
/// range.
pub fn check_recurrence(
    sys: &DiscreteSystem,
    seq: &GeneratedSequence,
    pairs: &[(i64, i64)],
) -> Result<RecurrenceReport> {
    sys.validate()?;
    let combine = |n: i64, m: i64| if sys.kind.multiplies_index() { n * m } else { n + m };

    let mut report = RecurrenceReport {
        pairs_checked: pairs.len(),
        exact: !matches!(seq.values, SequenceValues::Real(_)),
        max_residual: 0.0,
        failures: Vec::new(),
    };
    let equation = FunctionalEquation::new(sys.kind.equation_kind(), sys.generator()?);

    for &(n, m) in pairs {
        let k = seq.index_of(combine(n, m))?;
        let i = seq.index_of(n)?;
        let j = seq.index_of(m)?;
        match &seq.values {
            SequenceValues::Integer(v) => {
                // q_{nm} = q_n + q_m + q_n q_m
                let rhs = &v[i] + &v[j] + &v[i] * &v[j];
                if v[k] != rhs {
                    report.failures.push((n, m));
                }
            }
            SequenceValues::Rational(v) => {
                let p = match &sys.law {
                    SystemLaw::Tsallis { p } => BigRational::from(BigInt::from(*p as i64)),
                    _ => BigRational::one(),
                };
                let rhs = &v[i] + &v[j] + &v[i] * &v[j] * &p;
                if v[k] != rhs {
                    report.failures.push((n, m));
                }
            }
            SequenceValues::Real(v) => {
                let rhs = equation.law().eval(v[i], v[j])?;
                let resid = (v[k] - rhs).abs() / v[k].abs().max(rhs.abs()).max(1.0);
                report.max_residual = report.max_residual.max(resid);
            }
        }
    }
    Ok(report)
}

/// All pairs `(n, m)` from the stored range whose combined index also lies
/// in the range — the full exactness check for integer sequences.
pub fn all_checkable_pairs(sys: &DiscreteSystem, seq: &GeneratedSequence) -> Vec<(i64, i64)> {
    let mut pairs = Vec::new();
    for n in seq.start..=seq.end() {
        for m in seq.start..=seq.end() {
            let c = if sys.kind.multiplies_index() {
                n.checked_mul(m)
            } else {
                n.checked_add(m)
            };
            if let Some(c) = c {
                if c >= seq.start && c <= seq.end() {
                    pairs.push((n, m));
                }
            }
        }
    }
    pairs
}

/// Render sequence values for text output; exact values print exactly.
pub fn value_strings(seq: &GeneratedSequence) -> Vec<String> {
    match &seq.values {
        SequenceValues::Integer(v) => v.iter().map(|x| x.to_string()).collect(),
        SequenceValues::Rational(v) => v
            .iter()
            .map(|x| {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            })
            .collect(),
        SequenceValues::Real(v) => v.iter().map(|x| format!("{x:.16e}")).collect(),
    }
}

/// Convert an exact sequence to f64 (for JSON emission); loses exactness.
pub fn values_as_f64(seq: &GeneratedSequence) -> Vec<f64> {
    match &seq.values {
        SequenceValues::Integer(v) => v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
        SequenceValues::Rational(v) => v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
        SequenceValues::Real(v) => v.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (|Δ| = {:.3e})", (a - b).abs());
    }

    #[test]
    fn cauchy_solution_for_identity_generator() {
        let eq = FunctionalEquation::new(EquationKind::AdditivePhi, Generator::identity());
        let f = eq.lemma_solution();
        let grid = eq.default_grid();
        let report = eq.verify_on_grid(&f, &grid).unwrap();
        assert_eq!(report.max_residual, 0.0);
        assert_eq!(report.points, 400);
    }

    #[test]
    fn tsallis_additive_phi_identity_at_one_one() {
        // f(2) = e² − 1 must equal 2(e−1) + (e−1)².
        let e = std::f64::consts::E;
        let eq = FunctionalEquation::new(
            EquationKind::AdditivePhi,
            Generator::exp_sigma(1.0).unwrap(),
        );
        let f = eq.lemma_solution();
        let lhs = f.forward(2.0).unwrap();
        let z1 = e - 1.0;
        assert_close(lhs, 2.0 * z1 + z1 * z1, 1e-12);
        assert_close(lhs, e * e - 1.0, 1e-12);
    }

    #[test]
    fn tsallis_additive_psi_solution_is_double_exponential() {
        let eq = FunctionalEquation::new(
            EquationKind::AdditivePsi,
            Generator::exp_sigma(1.0).unwrap(),
        );
        let f = eq.lemma_solution();
        // f(x) = G(e^x) = e^{e^x} − 1
        assert_close(f.forward(1.0).unwrap(), (std::f64::consts::E.exp()) - 1.0, 1e-12);
        let grid = GridSpec::new(1e-9, 2.0, 20).unwrap();
        let report = eq.verify_on_grid(&f, &grid).unwrap();
        assert!(report.max_residual <= 1e-10, "residual {:.3e}", report.max_residual);
    }

    #[test]
    fn logarithm_solves_multiplicative_phi_for_identity() {
        let eq = FunctionalEquation::new(EquationKind::MultiplicativePhi, Generator::identity());
        let f = eq.lemma_solution();
        assert_close(f.forward(std::f64::consts::E).unwrap(), 1.0, 1e-14);
        let report = eq.verify_on_grid(&f, &eq.default_grid()).unwrap();
        assert!(report.max_residual <= 1e-14);
    }

    #[test]
    fn lemma_suite_all_kinds_and_generators() {
        let kinds = [
            EquationKind::AdditivePhi,
            EquationKind::AdditivePsi,
            EquationKind::MultiplicativePhi,
            EquationKind::MultiplicativePsi,
        ];
        let generators = [
            Generator::identity(),
            Generator::exp_sigma(1.0).unwrap(),
            Generator::rational(1.0, 1.0, 1.0).unwrap(),
        ];
        for kind in kinds {
            for gen in &generators {
                let eq = FunctionalEquation::new(kind, gen.clone());
                let f = eq.lemma_solution();
                let report = eq.verify_on_grid(&f, &eq.default_grid()).unwrap();
                assert!(
                    report.max_residual <= 1e-10,
                    "{} with {}: residual {:.3e} at {:?}",
                    kind.name(),
                    gen.name(),
                    report.max_residual,
                    report.worst_point
                );
            }
        }
    }

    #[test]
    fn rational_solution_satisfies_its_equation() {
        let (a, b, r) = (1.0, 1.0, 1.0);
        let f = rational_solution(a, b, r).unwrap();
        assert_eq!(f.forward(0.0).unwrap(), 0.0);
        let law = CompositionLaw::rational(a, b);
        let lhs = f.forward(3.0).unwrap();
        let rhs = law.eval(f.forward(1.0).unwrap(), f.forward(2.0).unwrap()).unwrap();
        assert_close(lhs, rhs, 1e-12);
        assert!(rational_solution(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn rational_solution_multiplicative_variant() {
        let f = rational_solution_multiplicative(1.0, 1.0, 1.0).unwrap();
        let law = CompositionLaw::rational(1.0, 1.0);
        for (x, y) in [(1.5, 2.0), (0.3, 0.9), (2.0, 2.5)] {
            let lhs = f.forward(x * y).unwrap();
            let rhs = law.eval(f.forward(x).unwrap(), f.forward(y).unwrap()).unwrap();
            assert_close(lhs, rhs, 1e-12);
        }
    }

    #[test]
    fn rational_solution_degenerates_to_exponential_form() {
        // As b → 0 with a = σ the solution approaches (e^{rx}−1)/a.
        let (a, r) = (1.0, 1.0);
        let f = rational_solution(a, 1e-8, r).unwrap();
        for i in 0..=20 {
            let x = 0.1 * i as f64;
            let limit = ((r * x).exp() - 1.0) / a;
            assert!(
                (f.forward(x).unwrap() - limit).abs() <= 1e-6 * limit.max(1.0),
                "x = {x}"
            );
        }
    }

    #[test]
    fn de1_tsallis_sequence_identity() {
        let sys = DiscreteSystem { kind: DeKind::De1, law: SystemLaw::Tsallis { p: 1.0 } };
        let seq = gen_sequence(&sys, 0..=6).unwrap();
        let SequenceValues::Real(v) = &seq.values else { panic!("expected reals") };
        let e = std::f64::consts::E;
        assert_close(v[2], e * e - 1.0, 1e-12);
        let report = check_recurrence(&sys, &seq, &[(1, 1), (2, 3), (0, 4)]).unwrap();
        assert!(report.passes(1e-10), "residual {:.3e}", report.max_residual);
    }

    #[test]
    fn de3_integer_p_is_exact_rational() {
        let sys = DiscreteSystem { kind: DeKind::De3, law: SystemLaw::Tsallis { p: 3.0 } };
        let seq = gen_sequence(&sys, -8..=8).unwrap();
        let SequenceValues::Rational(v) = &seq.values else { panic!("expected rationals") };
        // w_2 = (2³−1)/3 = 7/3
        assert_eq!(v[10], BigRational::new(BigInt::from(7), BigInt::from(3)));
        let pairs = all_checkable_pairs(&sys, &seq);
        let report = check_recurrence(&sys, &seq, &pairs).unwrap();
        assert!(report.exact && report.failures.is_empty());
    }

    #[test]
    fn de3_closed_form_agrees_with_float_transform_route() {
        // Exact route (n^p−1)/p against the f64 evaluation of G(ln n).
        let p = 3.0;
        let sys = DiscreteSystem { kind: DeKind::De3, law: SystemLaw::Tsallis { p } };
        let eq = FunctionalEquation::new(EquationKind::MultiplicativePhi, sys.generator().unwrap());
        let f = eq.lemma_solution();
        let seq = gen_sequence(&sys, 1..=20).unwrap();
        let SequenceValues::Rational(v) = &seq.values else { panic!() };
        for n in 1..=20i64 {
            let exact = v[(n - 1) as usize].to_f64().unwrap();
            let float = f.forward(n as f64).unwrap();
            assert!((exact - float).abs() <= 1e-11 * exact.abs().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn q_sequence_p3_matches_published_list() {
        let sys = DiscreteSystem { kind: DeKind::De3, law: SystemLaw::TsallisQ { p: 3 } };
        let seq = gen_sequence(&sys, -8..=8).unwrap();
        let expected: Vec<i64> = vec![
            -513, -344, -217, -126, -65, -28, -9, -2, -1, 0, 7, 26, 63, 124, 215, 342, 511,
        ];
        let SequenceValues::Integer(v) = &seq.values else { panic!() };
        let got: Vec<i64> = v.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn q_sequence_recurrence_examples() {
        let sys = DiscreteSystem { kind: DeKind::De3, law: SystemLaw::TsallisQ { p: 3 } };
        let seq = gen_sequence(&sys, -8..=8).unwrap();
        // q₆ = 215 = 7 + 26 + 7·26
        let report = check_recurrence(&sys, &seq, &[(2, 3), (1, 5), (-2, 4), (1, 1)]).unwrap();
        assert!(report.failures.is_empty());
        // Out-of-range products are rejected.
        assert!(check_recurrence(&sys, &seq, &[(3, 3)]).is_err());
    }

    #[test]
    fn q_sequence_full_exactness_small_exponents() {
        for p in 1..=6u32 {
            let sys = DiscreteSystem { kind: DeKind::De3, law: SystemLaw::TsallisQ { p } };
            let seq = gen_sequence(&sys, -12..=12).unwrap();
            let pairs = all_checkable_pairs(&sys, &seq);
            let report = check_recurrence(&sys, &seq, &pairs).unwrap();
            assert!(report.failures.is_empty(), "p = {p}: {:?}", report.failures);
        }
    }

    #[test]
    fn de2_overflow_is_rejected() {
        let sys = DiscreteSystem { kind: DeKind::De2, law: SystemLaw::Tsallis { p: 1.0 } };
        assert!(gen_sequence(&sys, 0..=5).is_ok());
        assert!(gen_sequence(&sys, 0..=10).is_err());
    }

    #[test]
    fn de4_tsallis_recurrence() {
        let sys = DiscreteSystem { kind: DeKind::De4, law: SystemLaw::Tsallis { p: 0.5 } };
        let seq = gen_sequence(&sys, 1..=12).unwrap();
        let pairs = all_checkable_pairs(&sys, &seq);
        let report = check_recurrence(&sys, &seq, &pairs).unwrap();
        assert!(report.passes(1e-10), "residual {:.3e}", report.max_residual);
    }

    #[test]
    fn rational_law_discrete_systems() {
        for kind in [DeKind::De1, DeKind::De3] {
            let sys = DiscreteSystem {
                kind,
                law: SystemLaw::Rational { a: 1.0, b: 1.0, r: 1.0 },
            };
            let seq = gen_sequence(&sys, 1..=12).unwrap();
            let pairs = all_checkable_pairs(&sys, &seq);
            let report = check_recurrence(&sys, &seq, &pairs).unwrap();
            assert!(report.passes(1e-10), "{kind:?}: residual {:.3e}", report.max_residual);
        }
    }

    #[test]
    fn q_sequence_rejects_wrong_kind_and_zero_p() {
        let bad = DiscreteSystem { kind: DeKind::De1, law: SystemLaw::TsallisQ { p: 3 } };
        assert!(gen_sequence(&bad, 0..=4).is_err());
        let zero = DiscreteSystem { kind: DeKind::De3, law: SystemLaw::TsallisQ { p: 0 } };
        assert!(gen_sequence(&zero, 0..=4).is_err());
        let zero_p = DiscreteSystem { kind: DeKind::De1, law: SystemLaw::Tsallis { p: 0.0 } };
        assert!(gen_sequence(&zero_p, 0..=4).is_err());
    }
}
