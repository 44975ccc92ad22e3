use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::report::{Method, Quantity, Relation, Statement, VerificationReport};
use crate::catalog::{standard_corpus, NamedCode, NamedCss};
use crate::codes::{ClassicalCode, CssCode, Distance, Limits};
use crate::constructions::{
    check_product_classical, check_product_quantum, cp_standard_ltc, duplicate_checks,
    duplicate_css, locality, standardize_checks, standardize_classical, standardize_css,
};
use crate::f2::{BinaryMatrix, BitVec};
use crate::homology::{
    balanced_heavy_qubits, balanced_heavy_x_checks, distance_balanced_css, gauge_fixed_duplicate,
    RepetitionVariant,
};
use crate::{Error, Rational, Result};

/// What a statement is checked on.
///
/// Text forms: `rep3` (classical), `gauge:rep3` (CSS), `rep3*hamming7`
/// (classical pair), `css422*rep3` (CSS with classical), and
/// `rep3;ell=2;star` (balanced code input).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Instance {
    Classical(NamedCode),
    Css(NamedCss),
    Pair(NamedCode, NamedCode),
    QuantumClassical(NamedCss, NamedCode),
    Balanced {
        h: NamedCode,
        ell: usize,
        variant: RepetitionVariant,
    },
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Classical(c) => write!(f, "{c}"),
            Instance::Css(q) => write!(f, "{q}"),
            Instance::Pair(a, b) => write!(f, "{a}*{b}"),
            Instance::QuantumClassical(q, c) => write!(f, "{q}*{c}"),
            Instance::Balanced { h, ell, variant } => write!(f, "{h};ell={ell};{variant}"),
        }
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some((h, rest)) = s.split_once(';') {
            let (ell, variant) = rest
                .split_once(';')
                .ok_or_else(|| Error::BadParameter(format!("expected CODE;ell=L;VARIANT, got {s:?}")))?;
            let ell = ell
                .strip_prefix("ell=")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| Error::BadParameter(format!("bad ell in {s:?}")))?;
            if ell < 2 {
                return Err(Error::BadParameter(format!("ell must be >= 2, got {ell}")));
            }
            return Ok(Instance::Balanced {
                h: h.parse()?,
                ell,
                variant: variant.parse()?,
            });
        }
        if let Some((a, b)) = s.split_once('*') {
            return match a.parse::<NamedCss>() {
                Ok(q) => Ok(Instance::QuantumClassical(q, b.parse()?)),
                Err(_) => Ok(Instance::Pair(a.parse()?, b.parse()?)),
            };
        }
        match s.parse::<NamedCss>() {
            Ok(q) => Ok(Instance::Css(q)),
            Err(_) => Ok(Instance::Classical(s.parse()?)),
        }
    }
}

fn wrong_instance(statement: Statement, instance: &Instance) -> Error {
    Error::BadParameter(format!("{statement} cannot be checked on instance {instance}"))
}

struct Check {
    predicted: Quantity,
    measured: Quantity,
    pass: bool,
    method: Method,
}

fn compare<T: Ord>(
    relation: Relation,
    predicted: T,
    measured: T,
    wrap: impl Fn(T) -> Quantity,
    method: Method,
) -> Check {
    let pass = relation.holds(&measured, &predicted);
    Check {
        predicted: wrap(predicted),
        measured: wrap(measured),
        pass,
        method,
    }
}

fn soundness(h: &BinaryMatrix, limits: &Limits) -> Result<Rational> {
    Ok(ClassicalCode::new(h.clone()).soundness(limits)?.lower)
}

fn distance(h: &BinaryMatrix, limits: &Limits) -> Result<Distance> {
    ClassicalCode::new(h.clone()).distance(limits)
}

fn dimension(h: &BinaryMatrix) -> usize {
    h.cols() - h.rank()
}

/// Builds the instance, computes the predicted value from the statement's
/// formula and the measured value with an exact oracle, and compares them.
pub fn verify(statement: Statement, instance: &Instance, limits: &Limits) -> Result<VerificationReport> {
    use Statement::*;
    let check = match (statement, instance) {
        (DupSoundness, Instance::Classical(c)) => {
            let h = c.checks()?;
            let rho = soundness(&h, limits)?;
            let measured = duplicate_checks(&h).soundness(limits)?.lower;
            compare(Relation::Equal, rho * 2, measured, Quantity::Ratio, Method::Exhaustive)
        }
        (DupCssParams, Instance::Classical(c)) => {
            let h = c.checks()?;
            let q = duplicate_css(&h);
            let predicted = (2 * h.cols(), 2 * dimension(&h), Distance::Finite(2));
            let measured = (q.n(), q.dimension(), q.distance(limits)?);
            compare(
                Relation::Equal,
                predicted,
                measured,
                |(n, k, d)| Quantity::Params { n, k, d },
                Method::Enumeration,
            )
        }
        (CpDualTensor, Instance::Pair(a, b)) => dual_tensor(&a.checks()?, &b.checks()?)?,
        (CpDimension, Instance::Pair(a, b)) => {
            let (h1, h2) = (a.checks()?, b.checks()?);
            let (n1, n2) = (h1.cols(), h2.cols());
            let predicted = n1 * n2 - (n1 - dimension(&h1)) * (n2 - dimension(&h2));
            let measured = check_product_classical(&h1, &h2).dimension();
            compare(Relation::Equal, predicted, measured, Quantity::Count, Method::Rank)
        }
        (CpDistance, Instance::Pair(a, b)) => {
            let (h1, h2) = (a.checks()?, b.checks()?);
            let predicted = distance(&h1, limits)?.min(distance(&h2, limits)?);
            let measured = check_product_classical(&h1, &h2).distance(limits)?;
            compare(Relation::Equal, predicted, measured, Quantity::Distance, Method::Enumeration)
        }
        (QcpDistance, Instance::QuantumClassical(q, c)) => {
            let (q, h) = (q.code()?, c.checks()?);
            let predicted = distance(&h, limits)?
                .min(distance(q.h_x(), limits)?)
                .min(distance(q.h_z(), limits)?);
            let measured = check_product_quantum(&q, &h).distance(limits)?;
            compare(Relation::Equal, predicted, measured, Quantity::Distance, Method::Enumeration)
        }
        (StdSoundness, Instance::Classical(c)) => {
            let s = standardize_classical(&ClassicalCode::new(c.checks()?));
            let predicted = Rational::new(s.n() as u64, s.m() as u64);
            let measured = s.soundness(limits)?.lower;
            compare(Relation::AtLeast, predicted, measured, Quantity::Ratio, Method::Exhaustive)
        }
        (StdCss, Instance::Css(q)) => {
            let s = standardize_css(&q.code()?);
            let n = s.n() as u64;
            let (m_x, m_z) = (s.h_x().rows() as u64, s.h_z().rows() as u64);
            if m_x == 0 || m_z == 0 {
                return Err(Error::TrivialCode);
            }
            let predicted = Rational::new(n, m_x).min(Rational::new(n, m_z));
            let measured = s.soundness_interval(limits)?.lower;
            compare(Relation::AtLeast, predicted, measured, Quantity::Ratio, Method::Exhaustive)
        }
        (CpLtcSoundness, Instance::Pair(a, b)) => {
            let (h1, h2) = (standardize_checks(&a.checks()?), b.checks()?);
            if h1.rows() == 0 {
                return Err(Error::TrivialCode);
            }
            let n_over_m = Rational::new(h1.cols() as u64, h1.rows() as u64);
            let predicted = soundness(&h2, limits)? * n_over_m;
            let measured = soundness(&h1.kronecker(&h2), limits)?;
            compare(Relation::AtLeast, predicted, measured, Quantity::Ratio, Method::Exhaustive)
        }
        (CpQltcSoundness | CpQltcDistance | CpQltcLocality | CpQltcDimension, Instance::QuantumClassical(q, c)) => {
            let out = cp_standard_ltc(&q.code()?, &ClassicalCode::new(c.checks()?), limits)?;
            let (claims, code) = (&out.claims, &out.code);
            match statement {
                CpQltcSoundness => {
                    let measured = code.soundness_interval(limits)?.lower;
                    compare(Relation::AtLeast, claims.soundness, measured, Quantity::Ratio, Method::Exhaustive)
                }
                CpQltcDistance => {
                    let measured = code.distance(limits)?;
                    compare(Relation::Equal, claims.distance, measured, Quantity::Distance, Method::Enumeration)
                }
                CpQltcLocality => {
                    let measured = locality(code.h_x()).max(locality(code.h_z()));
                    compare(Relation::AtMost, claims.locality, measured, Quantity::Count, Method::Exhaustive)
                }
                _ => compare(Relation::Equal, claims.dimension, code.dimension(), Quantity::Count, Method::Rank),
            }
        }
        (NestedRate, Instance::Css(q @ NamedCss::Nested { n, .. })) => {
            let measured = q.code()?.dimension();
            compare(Relation::Equal, n / 2, measured, Quantity::Count, Method::Rank)
        }
        (
            BalancedQubits | BalancedDimension | BalancedDx | BalancedDz | BalancedDistance | BalancedLocality
            | BalancedSoundnessZ | BalancedSoundnessX,
            &Instance::Balanced { h, ell, variant },
        ) => balanced(statement, &h.checks()?, ell, variant, limits)?,
        _ => return Err(wrong_instance(statement, instance)),
    };
    Ok(VerificationReport {
        statement,
        instance: instance.to_string(),
        predicted: check.predicted,
        measured: check.measured,
        pass: check.pass,
        method: check.method,
    })
}

/// Compares `ker(H1 (x) H2)` with the span of `u (x) e_j` and `e_i (x) v`
/// for `u` in `C1`, `v` in `C2`. Equal dimensions plus containment of every
/// generator in the kernel make the subspaces equal.
fn dual_tensor(h1: &BinaryMatrix, h2: &BinaryMatrix) -> Result<Check> {
    let (n1, n2) = (h1.cols(), h2.cols());
    let n = n1 * n2;
    let mut generators = Vec::new();
    for u in h1.kernel_basis().row_vecs() {
        for j in 0..n2 {
            let ones: Vec<usize> = u.iter_ones().map(|i| i * n2 + j).collect();
            generators.push(BitVec::from_indices(n, &ones));
        }
    }
    for v in h2.kernel_basis().row_vecs() {
        for i in 0..n1 {
            let ones: Vec<usize> = v.iter_ones().map(|j| i * n2 + j).collect();
            generators.push(BitVec::from_indices(n, &ones));
        }
    }
    let product = h1.kronecker(h2);
    let mut contained = true;
    for g in &generators {
        contained &= product.mul_vec(g)?.is_zero();
    }
    let predicted = BinaryMatrix::from_bitvecs(n, &generators)?.rank();
    let measured = n - product.rank();
    let mut check = compare(Relation::Equal, predicted, measured, Quantity::Count, Method::Rank);
    check.pass &= contained;
    Ok(check)
}

fn balanced(
    statement: Statement,
    h: &BinaryMatrix,
    ell: usize,
    variant: RepetitionVariant,
    limits: &Limits,
) -> Result<Check> {
    use Statement::*;
    let (m, n) = h.shape();
    let code = distance_balanced_css(h, ell, variant)?;
    Ok(match statement {
        BalancedQubits => compare(Relation::Equal, 2 * n * ell + m * (ell - 1), code.n(), Quantity::Count, Method::Rank),
        BalancedDimension => compare(Relation::Equal, dimension(h), code.dimension(), Quantity::Count, Method::Rank),
        BalancedDx | BalancedDz => {
            let (dx, dz) = gauge_fixed_duplicate(h).distances(limits)?;
            let (mx, mz) = code.distances(limits)?;
            if statement == BalancedDx {
                compare(Relation::Equal, dx.scale(ell), mx, Quantity::Distance, Method::Enumeration)
            } else {
                compare(Relation::Equal, dz, mz, Quantity::Distance, Method::Enumeration)
            }
        }
        BalancedDistance => {
            let predicted = distance(h, limits)?.min(Distance::Finite(2 * ell));
            compare(Relation::Equal, predicted, code.distance(limits)?, Quantity::Distance, Method::Enumeration)
        }
        BalancedLocality => {
            if variant != RepetitionVariant::Star {
                return Err(Error::BadParameter("the locality structure is stated for the star variant".into()));
            }
            balanced_locality(h, ell, &code)
        }
        BalancedSoundnessZ => {
            let rho = soundness(&BinaryMatrix::hstack(&[h, h])?, limits)?;
            let measured = soundness(code.h_x(), limits)?;
            compare(Relation::AtLeast, rho / 8, measured, Quantity::Ratio, Method::Exhaustive)
        }
        BalancedSoundnessX => {
            let measured = soundness(code.h_z(), limits)?;
            compare(Relation::AtLeast, Rational::new(1, 3), measured, Quantity::Ratio, Method::Exhaustive)
        }
        _ => unreachable!("only balanced statements are routed here"),
    })
}

/// Exact locality structure of the star-balanced code.
///
/// The reported count is the number of X-checks `c_i (x) v_l` whose weight
/// is `2|h_i| + l - 1`, against the prediction `m`. The pass flag also
/// requires every other X-check to weigh at most `2 w + 1`, every Z-check at
/// most `c + 2`, each of the `2n` qubits `q_i (x) v_l` to have Z-degree
/// exactly `l` with `2n l <= N`, and every other qubit to have Z-degree at
/// most `max(2, 2w)` and X-degree at most `max(2, c)`. Here `w` and `c` are
/// the largest row and column weights of `H`.
fn balanced_locality(h: &BinaryMatrix, ell: usize, code: &CssCode) -> Check {
    let (m, n) = h.shape();
    let row_w = h.row_weights();
    let w = row_w.iter().copied().max().unwrap_or(0);
    let c = h.col_weights().into_iter().max().unwrap_or(0);

    let x_weights = code.h_x().row_weights();
    let heavy_checks = balanced_heavy_x_checks(m, ell);
    let heavy = heavy_checks
        .iter()
        .zip(&row_w)
        .filter(|&(&idx, &wi)| x_weights[idx] == 2 * wi + ell - 1)
        .count();
    let mut is_heavy = alloc::vec![false; x_weights.len()];
    heavy_checks.iter().for_each(|&i| is_heavy[i] = true);
    let light_checks = (0..x_weights.len())
        .filter(|&i| !is_heavy[i])
        .all(|i| x_weights[i] <= 2 * w + 1);
    let z_checks = code.h_z().row_weights().into_iter().all(|wt| wt <= c + 2);

    let z_degree = code.h_z().col_weights();
    let x_degree = code.h_x().col_weights();
    let heavy_qubits = balanced_heavy_qubits(n, m, ell);
    let mut is_heavy_qubit = alloc::vec![false; code.n()];
    heavy_qubits.iter().for_each(|&q| is_heavy_qubit[q] = true);
    let heavy_degrees = heavy_qubits.iter().all(|&q| z_degree[q] == ell);
    let fraction = heavy_qubits.len() * ell <= code.n();
    let light_qubits = (0..code.n())
        .filter(|&q| !is_heavy_qubit[q])
        .all(|q| z_degree[q] <= 2.max(2 * w) && x_degree[q] <= 2.max(c));

    let mut check = compare(Relation::Equal, m, heavy, Quantity::Count, Method::Exhaustive);
    check.pass &= light_checks && z_checks && heavy_degrees && fraction && light_qubits;
    check
}

/// Every (statement, instance) pair of the standard suite, in a fixed order.
pub fn standard_suite(seed: u64) -> Vec<(Statement, Instance)> {
    use Statement::*;
    let corpus = standard_corpus(seed);
    let lengths: Vec<usize> = corpus
        .iter()
        .map(|c| c.checks().map(|h| h.cols()).unwrap_or(0))
        .collect();
    let ranks: Vec<usize> = corpus
        .iter()
        .map(|c| c.checks().map(|h| h.rank()).unwrap_or(0))
        .collect();
    let mut suite = Vec::new();

    for &c in &corpus {
        suite.push((DupSoundness, Instance::Classical(c)));
        suite.push((DupCssParams, Instance::Classical(c)));
        suite.push((StdSoundness, Instance::Classical(c)));
    }
    suite.push((StdCss, Instance::Css(NamedCss::Css422)));
    for &c in &corpus {
        suite.push((StdCss, Instance::Css(NamedCss::Gauge(c))));
    }
    for (i, &a) in corpus.iter().enumerate() {
        for (j, &b) in corpus.iter().enumerate() {
            if lengths[i] * lengths[j] <= 100 {
                for s in [CpDualTensor, CpDimension, CpDistance] {
                    suite.push((s, Instance::Pair(a, b)));
                }
            }
            if ranks[i] * ranks[j] <= 16 {
                suite.push((CpLtcSoundness, Instance::Pair(a, b)));
            }
        }
    }
    let rep3 = NamedCode::Repetition(3);
    let nested8 = NamedCss::Nested { n: 8, seed };
    let quantum = [NamedCss::Css422, NamedCss::Duplicate(rep3), NamedCss::Gauge(rep3), nested8];
    let quantum_len = [4, 6, 6, 8];
    for (q, nq) in quantum.into_iter().zip(quantum_len) {
        for (&c, &n) in corpus.iter().zip(&lengths) {
            if nq * n <= 100 {
                suite.push((QcpDistance, Instance::QuantumClassical(q, c)));
            }
        }
    }
    let small = [rep3, NamedCode::Repetition(5), NamedCode::Hamming7];
    for q in [NamedCss::Css422, nested8] {
        for c in small {
            for s in [CpQltcSoundness, CpQltcDistance, CpQltcLocality, CpQltcDimension] {
                suite.push((s, Instance::QuantumClassical(q, c)));
            }
        }
    }
    for n in [8, 12, 16] {
        for i in 0..NESTED_SEEDS {
            let q = NamedCss::Nested {
                n,
                seed: seed.wrapping_add(i),
            };
            suite.push((NestedRate, Instance::Css(q)));
        }
    }
    for h in small {
        for ell in 2..=4 {
            for variant in RepetitionVariant::ALL {
                let inst = Instance::Balanced { h, ell, variant };
                for s in [BalancedQubits, BalancedDimension, BalancedDx, BalancedDz, BalancedDistance] {
                    suite.push((s, inst));
                }
                if variant == RepetitionVariant::Star {
                    suite.push((BalancedLocality, inst));
                }
            }
        }
    }
    let sound = [(rep3, 2), (rep3, 3), (rep3, 4), (NamedCode::Repetition(5), 2), (NamedCode::Hamming7, 2)];
    for (h, ell) in sound {
        let inst = Instance::Balanced {
            h,
            ell,
            variant: RepetitionVariant::Star,
        };
        suite.push((BalancedSoundnessZ, inst));
        suite.push((BalancedSoundnessX, inst));
    }
    suite
}

/// Seeds per length for the nested-rate checks of the standard suite.
pub const NESTED_SEEDS: u64 = 100;

/// Runs `suite` sequentially.
pub fn verify_all(suite: &[(Statement, Instance)], limits: &Limits) -> Result<Vec<VerificationReport>> {
    suite.iter().map(|(s, i)| verify(*s, i, limits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(statement: Statement, instance: &str) -> VerificationReport {
        verify(statement, &instance.parse().unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn instances_round_trip() {
        for s in ["rep3", "gauge:rep3", "rep3*hamming7", "css422*rep3", "nested:n=8:seed=2*rep5", "rep3;ell=2;star", "random:n=6:seed=1;ell=4;line"] {
            assert_eq!(s.parse::<Instance>().unwrap().to_string(), s);
        }
        assert!("rep3;ell=1;star".parse::<Instance>().is_err());
        assert!("rep3;ell=2".parse::<Instance>().is_err());
    }

    #[test]
    fn duplicated_soundness_report() {
        let r = run(Statement::DupSoundness, "rep3");
        assert_eq!(r.predicted, Quantity::Ratio(Rational::from_integer(3)));
        assert_eq!(r.measured, r.predicted);
        assert!(r.pass);
        assert_eq!(r.method, Method::Exhaustive);
    }

    #[test]
    fn balanced_reports() {
        let r = run(Statement::BalancedDimension, "rep3;ell=3;star");
        assert_eq!((r.predicted.clone(), r.measured.clone()), (Quantity::Count(1), Quantity::Count(1)));
        let r = run(Statement::BalancedSoundnessX, "rep3;ell=2;star");
        assert_eq!(r.measured, Quantity::Ratio(Rational::new(7, 6)));
        assert!(r.pass);
        let r = run(Statement::BalancedSoundnessZ, "rep3;ell=2;star");
        assert_eq!(r.predicted, Quantity::Ratio(Rational::new(3, 8)));
        assert_eq!(r.measured, Quantity::Ratio(Rational::new(7, 2)));
        assert!(run(Statement::BalancedLocality, "rep3;ell=4;star").pass);
    }

    #[test]
    fn mismatched_instances_are_rejected() {
        let lim = Limits::default();
        let i: Instance = "rep3".parse().unwrap();
        assert!(matches!(verify(Statement::CpDimension, &i, &lim), Err(Error::BadParameter(_))));
        let i: Instance = "rep3;ell=2;line".parse().unwrap();
        assert!(verify(Statement::BalancedLocality, &i, &lim).is_err());
    }

    #[test]
    fn suite_is_deterministic() {
        assert_eq!(standard_suite(7), standard_suite(7));
        assert_ne!(standard_suite(7), standard_suite(8));
    }
}
