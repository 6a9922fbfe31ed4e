//! Verifiers for the product-sum capacity inequality and its entropy and
//! multiplicity corollaries. All sides are evaluated in exact-value
//! arithmetic; graphs without exact capacity certificates are refused.

use super::{AtomAnalysis, CapacityOpts};
use crate::error::{Error, Result};
use crate::exact::{rat, ExactValue, Rat};
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct InequalityReport {
    /// Left side: capacity of the strong product.
    pub lhs: ExactValue,
    /// Right side of the inequality.
    pub rhs: ExactValue,
    /// rhs - lhs; nonnegative when the inequality holds.
    pub slack: ExactValue,
    /// True when lhs and rhs coincide exactly (only decidable within one
    /// field; None when the comparison is interval-based).
    pub equality: Option<bool>,
    pub holds: bool,
}

fn report(lhs: ExactValue, rhs: ExactValue) -> InequalityReport {
    let slack = rhs.sub(&lhs);
    let equality = match lhs.compare(&rhs) {
        Some(std::cmp::Ordering::Equal) => Some(true),
        Some(_) => Some(false),
        None => None,
    };
    let (slack_lo, _) = slack.to_interval();
    InequalityReport {
        holds: slack_lo >= -1e-12,
        lhs,
        rhs,
        slack,
        equality,
    }
}

fn exact_capacities(analyses: &[&AtomAnalysis]) -> Result<Vec<ExactValue>> {
    analyses
        .iter()
        .map(|a| {
            a.exact_capacity().cloned().ok_or_else(|| {
                Error::domain(format!(
                    "no exact capacity certificate for {}; refusing to verify with bounds",
                    a.atom.name()
                ))
            })
        })
        .collect()
}

/// Capacity of a strong product against the power of the capacity of the
/// disjoint union: Theta(G1 x ... x Gl) <= (Theta(G1 + ... + Gl)/l)^l,
/// with equality exactly when all capacities agree.
pub fn verify_product_sum_inequality(
    analyses: &[&AtomAnalysis],
    _opts: &CapacityOpts,
) -> Result<InequalityReport> {
    if analyses.len() < 2 {
        return Err(Error::domain("need at least two graphs"));
    }
    if !analyses.iter().all(|a| a.capacity_is_theta) {
        return Err(Error::domain(
            "the product capacity is only certified when every factor has capacity equal to theta",
        ));
    }
    let caps = exact_capacities(analyses)?;
    let l = caps.len() as u64;
    let mut lhs = ExactValue::one();
    let mut sum = ExactValue::zero();
    for c in &caps {
        lhs = lhs.mul(c);
        sum = sum.add(c);
    }
    let mean = sum.mul(&ExactValue::from_rat(rat(1, l as i64)));
    let rhs = mean.pow(l);
    Ok(report(lhs, rhs))
}

/// Multiplicity form: Theta(G1 x ... x Gl) <= (ml)^(-l)
/// Theta(m1 G1 + ... + ml Gl)^l with m the geometric mean of the m_i. The
/// prefactor (ml)^(-l) = 1/(l^l m1...ml) is rational and exact.
pub fn verify_scaled_inequality(
    analyses: &[&AtomAnalysis],
    multiplicities: &[u64],
    _opts: &CapacityOpts,
) -> Result<InequalityReport> {
    if analyses.len() != multiplicities.len() || analyses.is_empty() {
        return Err(Error::domain("multiplicity list must match the graphs"));
    }
    if multiplicities.iter().any(|&m| m == 0) {
        return Err(Error::domain("multiplicities must be >= 1"));
    }
    if !analyses.iter().all(|a| a.capacity_is_theta) {
        return Err(Error::domain(
            "scaled inequality needs capacity = theta certificates",
        ));
    }
    let caps = exact_capacities(analyses)?;
    let l = caps.len() as u64;
    let mut lhs = ExactValue::one();
    let mut scaled_sum = ExactValue::zero();
    let mut m_product = Rat::one();
    for (c, &m) in caps.iter().zip(multiplicities) {
        lhs = lhs.mul(c);
        scaled_sum = scaled_sum.add(&c.mul(&ExactValue::from_nat(m)));
        m_product *= Rat::from_integer(m.into());
    }
    let l_pow: Rat = (0..l).fold(Rat::one(), |acc, _| acc * Rat::from_integer(l.into()));
    let prefactor = ExactValue::from_rat((l_pow * m_product).recip());
    let rhs = prefactor.mul(&scaled_sum.pow(l));
    Ok(report(lhs, rhs))
}

/// Entropy form: for a rational probability vector a and k with k a_j all
/// natural, Theta(G1^(a1 k) x ... x Gl^(al k)) <= exp(-k H(a))
/// Theta(G1 + ... + Gl)^k. Since k a_j is natural, exp(-k H(a)) equals
/// the rational number prod_j a_j^(k a_j), so the check is exact; H(a) is
/// also reported as a float.
pub fn verify_entropy_inequality(
    analyses: &[&AtomAnalysis],
    alpha: &[Rat],
    k: u64,
    _opts: &CapacityOpts,
) -> Result<(InequalityReport, f64)> {
    if analyses.len() != alpha.len() || analyses.is_empty() {
        return Err(Error::domain("probability vector must match the graphs"));
    }
    let total: Rat = alpha.iter().cloned().sum();
    if total != Rat::one() {
        return Err(Error::domain("probabilities must sum to 1"));
    }
    if alpha.iter().any(|a| a.is_zero() || a < &Rat::zero()) {
        return Err(Error::domain("probabilities must be positive"));
    }
    let k_rat = Rat::from_integer(k.into());
    let mut exponents = Vec::with_capacity(alpha.len());
    for a in alpha {
        let ka = a * &k_rat;
        if !ka.is_integer() {
            return Err(Error::domain(format!(
                "k = {k} is not admissible: k*{a} is not a natural number"
            )));
        }
        exponents.push(ka.to_integer().to_u64().ok_or_else(|| {
            Error::Overflow("entropy inequality exponent".into())
        })?);
    }
    if !analyses.iter().all(|a| a.capacity_is_theta) {
        return Err(Error::domain(
            "entropy inequality needs capacity = theta certificates",
        ));
    }
    let caps = exact_capacities(analyses)?;
    let mut lhs = ExactValue::one();
    let mut sum = ExactValue::zero();
    let mut entropy_factor = Rat::one();
    let mut entropy = 0.0f64;
    for ((c, &e), a) in caps.iter().zip(&exponents).zip(alpha) {
        lhs = lhs.mul(&c.pow(e));
        sum = sum.add(c);
        // a^(k a) as an exact rational
        let mut pow = Rat::one();
        for _ in 0..e {
            pow *= a.clone();
        }
        entropy_factor *= pow;
        let af = a.to_f64().unwrap_or(0.0);
        entropy -= af * af.ln();
    }
    let rhs = ExactValue::from_rat(entropy_factor).mul(&sum.pow(k));
    Ok((report(lhs, rhs), entropy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::analyze_atom;
    use crate::exact::rat_int;
    use crate::families::GraphAtom;

    fn analysis(atom: GraphAtom) -> AtomAnalysis {
        analyze_atom(&atom, &CapacityOpts::default()).unwrap()
    }

    #[test]
    fn equal_pentagons_reach_equality() {
        let opts = CapacityOpts::default();
        let c5 = analysis(GraphAtom::Cycle(5));
        let r = verify_product_sum_inequality(&[&c5, &c5], &opts).unwrap();
        assert!(r.holds);
        assert_eq!(r.equality, Some(true));
        assert_eq!(r.lhs, ExactValue::from_nat(5));
    }

    #[test]
    fn empty_graphs_strict() {
        let opts = CapacityOpts::default();
        let e2 = analysis(GraphAtom::Empty(2));
        let e3 = analysis(GraphAtom::Empty(3));
        let r = verify_product_sum_inequality(&[&e2, &e3], &opts).unwrap();
        assert!(r.holds);
        assert_eq!(r.equality, Some(false));
        assert_eq!(r.lhs, ExactValue::from_nat(6));
        assert_eq!(r.rhs, ExactValue::from_rat(rat(25, 4)));
    }

    #[test]
    fn refuses_without_certificates() {
        let opts = CapacityOpts::default();
        let c7 = analysis(GraphAtom::Cycle(7));
        let c5 = analysis(GraphAtom::Cycle(5));
        assert!(verify_product_sum_inequality(&[&c7, &c5], &opts).is_err());
    }

    #[test]
    fn entropy_form_equality_for_pentagon_pair() {
        let opts = CapacityOpts::default();
        let c5 = analysis(GraphAtom::Cycle(5));
        let alpha = vec![rat(1, 2), rat(1, 2)];
        let (r, h) = verify_entropy_inequality(&[&c5, &c5], &alpha, 2, &opts).unwrap();
        assert!(r.holds);
        assert_eq!(r.equality, Some(true));
        assert_eq!(r.lhs, ExactValue::from_nat(5));
        assert!((h - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn entropy_form_rejects_inadmissible_k() {
        let opts = CapacityOpts::default();
        let c5 = analysis(GraphAtom::Cycle(5));
        let e1 = analysis(GraphAtom::Empty(1));
        let alpha = vec![rat(1, 3), rat(2, 3)];
        assert!(verify_entropy_inequality(&[&c5, &e1], &alpha, 2, &opts).is_err());
    }

    #[test]
    fn entropy_form_empty_graphs() {
        let opts = CapacityOpts::default();
        let e1 = analysis(GraphAtom::Empty(1));
        let e2 = analysis(GraphAtom::Empty(2));
        let alpha = vec![rat(1, 2), rat(1, 2)];
        let (r, _) = verify_entropy_inequality(&[&e1, &e2], &alpha, 2, &opts).unwrap();
        // lhs = 1*2 = 2, rhs = 1/4 * (1+2)^2 = 9/4
        assert_eq!(r.lhs, ExactValue::from_nat(2));
        assert_eq!(r.rhs, ExactValue::from_rat(rat(9, 4)));
        assert!(r.holds);
    }

    #[test]
    fn scaled_form() {
        let opts = CapacityOpts::default();
        let e2 = analysis(GraphAtom::Empty(2));
        let e3 = analysis(GraphAtom::Empty(3));
        let r = verify_scaled_inequality(&[&e2, &e3], &[3, 2], &opts).unwrap();
        // lhs = 6; rhs = (3*2 + 2*3)^2 / (2^2 * 6) = 144/24 = 6: equality
        assert!(r.holds);
        assert_eq!(r.equality, Some(true));
    }

    #[test]
    fn mixed_fields_still_hold_by_interval() {
        let opts = CapacityOpts::default();
        let c5 = analysis(GraphAtom::Cycle(5));
        let p13 = analysis(GraphAtom::Paley(13));
        let r = verify_product_sum_inequality(&[&c5, &p13], &opts).unwrap();
        assert!(r.holds);
        // sqrt5 != sqrt13, so equality must not be claimed
        assert_ne!(r.equality, Some(true));
    }
}
