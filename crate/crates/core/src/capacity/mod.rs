//! Certified capacity bounds for polynomials in graphs.
//!
//! The engine combines, per expression: family closed forms, power-root
//! lower bounds alpha(G^k)^(1/k), theta upper bounds evaluated through the
//! polynomial, sum-decomposition licenses that upgrade bounds to exact
//! values, a product-side cross-check, and unattainability certificates.

mod alon;
mod certify;
pub mod constants;
mod inequality;
mod tadpole;

pub use alon::{alon_independent_set, AlonSet};
pub use certify::{
    adjacency_reducing_map, certify_unattainable, check_certificate_desk_scale,
    AdjacencyReducingMap, RouteCertificate, RouteKind, UnattainabilityCertificate,
};
pub use inequality::{
    verify_entropy_inequality, verify_product_sum_inequality, verify_scaled_inequality,
    InequalityReport,
};
pub use tadpole::{odd_cycle_square_alpha, tadpole_bounds, tadpole_bounds_with};

use crate::error::{Error, Result};
use crate::exact::{rat, ExactValue, Rat};
use crate::expr::GraphExpr;
use crate::families::{build_atom, gaussian_binomial, GraphAtom};
use crate::fractional;
use crate::graph::{strong_power, Caps, Graph};
use crate::invariants::{self, SearchOpts};
use crate::theta::{self, ThetaOpts};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::time::Duration;

fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// One side of a capacity bound: the value and a witness descriptor saying
/// where it came from.
#[derive(Debug, Clone)]
pub struct Bound {
    pub value: ExactValue,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct CapacityBounds {
    pub lower: Bound,
    pub upper: Bound,
    /// True when lower and upper are the same exact value.
    pub exact: bool,
    pub rules_fired: Vec<String>,
    /// Literature constants the bounds depend on.
    pub provenance: Vec<String>,
}

impl CapacityBounds {
    pub fn exact(value: ExactValue, witness: String, rules: Vec<String>) -> CapacityBounds {
        CapacityBounds {
            lower: Bound {
                value: value.clone(),
                witness: witness.clone(),
            },
            upper: Bound { value, witness },
            exact: true,
            rules_fired: rules,
            provenance: Vec::new(),
        }
    }

    /// Interval sanity: the lower enclosure must not exceed the upper one.
    pub fn is_consistent(&self) -> bool {
        let (lo, _) = self.lower.value.to_interval();
        let (_, hi) = self.upper.value.to_interval();
        lo <= hi + 1e-12
    }
}

#[derive(Debug, Clone)]
pub struct CapacityOpts {
    pub caps: Caps,
    /// Highest strong power used for alpha-root lower bounds.
    pub max_power: u64,
    /// Per-search budget for branch-and-bound alpha calls.
    pub alpha_budget: Option<Duration>,
    /// Largest graph order the engine will run branch and bound on.
    pub alpha_order_cap: usize,
    /// Use the built-in table of published cycle-power values.
    pub literature_constants: bool,
    pub theta: ThetaOpts,
    pub enum_cap: usize,
    pub color_cap: usize,
    pub iso_cap: usize,
}

impl Default for CapacityOpts {
    fn default() -> Self {
        CapacityOpts {
            caps: Caps::default(),
            max_power: 2,
            alpha_budget: Some(Duration::from_secs(10)),
            alpha_order_cap: 300,
            literature_constants: true,
            theta: ThetaOpts::default(),
            enum_cap: fractional::DEFAULT_ENUM_CAP,
            color_cap: 64,
            iso_cap: 24,
        }
    }
}

impl CapacityOpts {
    fn search_opts(&self) -> SearchOpts {
        SearchOpts {
            budget: self.alpha_budget,
        }
    }
}

/// Known exact capacity of a family atom, with the rule tag that justifies
/// it. Odd cycles of length >= 7 (and tadpoles reducing to them) return
/// `None`: their capacity is open and only bounds are ever reported.
pub fn known_capacity(atom: &GraphAtom) -> Option<(ExactValue, &'static str)> {
    use GraphAtom::*;
    match atom {
        Complete(_) => Some((ExactValue::one(), "perfect-collapse")),
        Empty(n) => Some((ExactValue::from_nat(*n), "perfect-collapse")),
        Path(n) => Some((ExactValue::from_nat(n.div_ceil(2)), "path-universal")),
        Cycle(k) => match (*k % 2, *k) {
            (_, 3) => Some((ExactValue::one(), "perfect-collapse")),
            (0, _) => Some((
                ExactValue::from_rat(rat(*k as i64, 2)),
                "even-cycle-universal",
            )),
            (_, 5) => Some((ExactValue::sqrt_nat(5), "pentagon-self-complementary")),
            _ => None,
        },
        Kneser(n, r) => {
            let v = if *n >= 2 * r {
                binomial(n - 1, r - 1)
            } else {
                binomial(*n, *r)
            };
            Some((ExactValue::from_nat(v as u64), "kneser-family"))
        }
        QKneser(n, k, q) => Some((
            ExactValue::from_nat(gaussian_binomial(n - 1, k - 1, *q) as u64),
            "q-kneser-family",
        )),
        Tadpole(k, l) => {
            if *k == 3 || k % 2 == 0 || l % 2 == 1 {
                Some((
                    ExactValue::from_nat(k / 2 + l.div_ceil(2)),
                    "tadpole-tight-parity",
                ))
            } else if *k == 5 {
                Some((
                    ExactValue::sqrt_nat(5).add(&ExactValue::from_rat(rat(*l as i64, 2))),
                    "tadpole-pentagon-tail",
                ))
            } else {
                None
            }
        }
        Paley(q) => Some((ExactValue::sqrt_nat(*q), "self-complementary-sqrt-order")),
        CompleteMultipartite(parts) => Some((
            ExactValue::from_nat(parts.iter().copied().max().unwrap_or(0)),
            "perfect-collapse",
        )),
        Complement(inner) => known_capacity_complement(inner),
        Custom(_) => None,
    }
}

fn known_capacity_complement(inner: &GraphAtom) -> Option<(ExactValue, &'static str)> {
    use GraphAtom::*;
    match inner {
        Cycle(5) => Some((ExactValue::sqrt_nat(5), "pentagon-self-complementary")),
        Path(4) => Some((ExactValue::from_nat(2), "path-universal")),
        Paley(q) => Some((ExactValue::sqrt_nat(*q), "self-complementary-sqrt-order")),
        Complete(n) => Some((ExactValue::from_nat(*n), "perfect-collapse")),
        Empty(_) => Some((ExactValue::one(), "perfect-collapse")),
        Path(n) => Some((
            ExactValue::from_nat(if *n >= 2 { 2 } else { 1 }),
            "perfect-collapse",
        )),
        Cycle(k) if k % 2 == 0 => Some((ExactValue::from_nat(2), "perfect-collapse")),
        Cycle(3) => Some((ExactValue::from_nat(3), "perfect-collapse")),
        Kneser(n, r) => {
            if *n < 2 * r {
                // the inner graph is empty, so the complement is complete
                return Some((ExactValue::one(), "perfect-collapse"));
            }
            if n % r == 0 {
                Some((
                    ExactValue::from_rat(rat(*n as i64, *r as i64)),
                    "kneser-complement-universal",
                ))
            } else {
                None
            }
        }
        CompleteMultipartite(parts) => Some((
            ExactValue::from_nat(parts.len() as u64),
            "perfect-collapse",
        )),
        Complement(inner2) => known_capacity(inner2),
        _ => None,
    }
}

/// Everything the engine learns about one atom of a polynomial.
#[derive(Debug, Clone)]
pub struct AtomAnalysis {
    pub atom: GraphAtom,
    pub bounds: CapacityBounds,
    /// theta(atom) as an exact value or certified interval.
    pub theta: ExactValue,
    /// Capacity known and equal to theta.
    pub capacity_is_theta: bool,
}

impl AtomAnalysis {
    pub fn exact_capacity(&self) -> Option<&ExactValue> {
        if self.bounds.exact {
            Some(&self.bounds.lower.value)
        } else {
            None
        }
    }
}

/// Capacity bounds and certificates for a single atom.
pub fn analyze_atom(atom: &GraphAtom, opts: &CapacityOpts) -> Result<AtomAnalysis> {
    let theta_value = match theta::theta_closed_form_atom(atom) {
        Some(t) => t.exact_or_interval(),
        None => {
            let g = build_atom(atom, &opts.caps)?;
            theta::theta(&g, &opts.theta)?.exact_or_interval()
        }
    };
    if let Some((value, tag)) = known_capacity(atom) {
        let capacity_is_theta = value == theta_value;
        let bounds = CapacityBounds::exact(
            value,
            format!("family closed form for {}", atom.name()),
            vec![tag.to_string()],
        );
        return Ok(AtomAnalysis {
            atom: atom.clone(),
            bounds,
            theta: theta_value,
            capacity_is_theta,
        });
    }
    // open families with dedicated bound machinery
    match atom {
        GraphAtom::Cycle(k) => {
            let b = tadpole::tadpole_bounds_with(*k, 0, opts.literature_constants)?;
            return Ok(AtomAnalysis {
                atom: atom.clone(),
                bounds: b,
                theta: theta_value,
                capacity_is_theta: false,
            });
        }
        GraphAtom::Tadpole(k, l) => {
            let b = tadpole::tadpole_bounds_with(*k, *l, opts.literature_constants)?;
            return Ok(AtomAnalysis {
                atom: atom.clone(),
                bounds: b,
                theta: theta_value,
                capacity_is_theta: false,
            });
        }
        _ => {}
    }
    // generic atom: sandwich collapse checks, then [power roots, theta]
    let g = build_atom(atom, &opts.caps)?;
    if let Some((value, tag, witness)) = sandwich_collapse(&g, opts)? {
        let capacity_is_theta = value == theta_value;
        return Ok(AtomAnalysis {
            atom: atom.clone(),
            bounds: CapacityBounds::exact(value, witness, vec![tag.to_string()]),
            theta: theta_value,
            capacity_is_theta,
        });
    }
    let (lower_value, lower_witness, rules) = capacity_lower_bound_powers(&g, opts)?;
    let bounds = CapacityBounds {
        lower: Bound {
            value: lower_value,
            witness: lower_witness,
        },
        upper: Bound {
            value: theta_value.clone(),
            witness: format!("theta({})", atom.name()),
        },
        exact: false,
        rules_fired: rules,
        provenance: Vec::new(),
    };
    Ok(AtomAnalysis {
        atom: atom.clone(),
        bounds,
        theta: theta_value,
        capacity_is_theta: false,
    })
}

/// Collapse checks for concrete graphs: alpha equal to the clique-cover
/// number, alpha equal to fractional alpha (universality), or verified
/// self-complementary vertex-transitive / strongly regular (capacity
/// sqrt(n) when those hold).
fn sandwich_collapse(
    g: &Graph,
    opts: &CapacityOpts,
) -> Result<Option<(ExactValue, &'static str, String)>> {
    let search = opts.search_opts();
    if g.n() > opts.alpha_order_cap {
        return Ok(None);
    }
    let alpha = invariants::independence_number(g, &search);
    if !alpha.optimal {
        return Ok(None);
    }
    if g.n() <= opts.color_cap {
        let cc = invariants::clique_cover_number(g, opts.color_cap, &search)?;
        if cc.count == alpha.size {
            return Ok(Some((
                ExactValue::from_nat(alpha.size as u64),
                "clique-cover-collapse",
                format!(
                    "independent set of size {} meets a clique cover of size {}",
                    alpha.size, cc.count
                ),
            )));
        }
    }
    if let Ok(af) = fractional::fractional_independence_number(g, opts.enum_cap) {
        if af.value == Rat::from_integer(alpha.size.into()) {
            return Ok(Some((
                ExactValue::from_nat(alpha.size as u64),
                "universal-collapse",
                format!("alpha = fractional alpha = {}", alpha.size),
            )));
        }
    }
    let p = g.props();
    let (sc, special) =
        if p.self_complementary && (p.vertex_transitive || p.strongly_regular.is_some()) {
            (true, true)
        } else if g.n() <= opts.iso_cap {
            let sc = invariants::check_self_complementary(g, opts.iso_cap).is_yes();
            let special = sc
                && (invariants::check_vertex_transitive(g, opts.iso_cap).is_yes()
                    || invariants::check_strongly_regular(g).is_some());
            (sc, special)
        } else {
            (false, false)
        };
    if sc && special {
        return Ok(Some((
            ExactValue::sqrt_nat(g.n() as u64),
            "self-complementary-sqrt-order",
            format!(
                "self-complementary symmetric graph on {} vertices",
                g.n()
            ),
        )));
    }
    Ok(None)
}

/// Definition-based lower bound: the best alpha(g^k)^(1/k) over
/// k = 1..=max_power within the resource caps. Budget-limited searches
/// still produce valid lower bounds, marked in the witness.
pub fn capacity_lower_bound_powers(
    g: &Graph,
    opts: &CapacityOpts,
) -> Result<(ExactValue, String, Vec<String>)> {
    let search = opts.search_opts();
    let mut candidates: Vec<(ExactValue, String, Option<String>)> = Vec::new();
    for k in 1..=opts.max_power {
        let order = (g.n() as u128).pow(k as u32);
        if order > opts.caps.product as u128 || order > opts.alpha_order_cap as u128 {
            break;
        }
        let power = strong_power(g, k, &opts.caps)?;
        let alpha = invariants::independence_number(&power, &search);
        let value = ExactValue::radical(alpha.size as u64, k as u32, Rat::zero());
        let note = if alpha.optimal { "" } else { ", budget-limited" };
        candidates.push((
            value,
            format!(
                "alpha(G^{k}) >= {}{note}, {k}-th-root lower bound",
                alpha.size
            ),
            None,
        ));
    }
    if candidates.is_empty() {
        candidates.push((
            ExactValue::one(),
            "trivial single-vertex lower bound".into(),
            None,
        ));
    }
    let (value, witness, _) = tadpole::pick_max(candidates);
    Ok((value, witness, vec!["power-root-lower".into()]))
}

/// A sum-decomposition license: the capacity of every polynomial in these
/// atoms equals the polynomial of their capacities. The license always
/// carries both the additive and the multiplicative tags; the duality
/// between the two makes them inseparable.
pub fn decompose_sum(analyses: &[AtomAnalysis], opts: &CapacityOpts) -> Option<Vec<String>> {
    let mut rules = Vec::new();
    if analyses.len() == 1 {
        rules.push("sum-additivity:single-variable".to_string());
    }
    if analyses.iter().all(|a| a.capacity_is_theta) {
        rules.push("sum-additivity:theta-agreement".to_string());
    }
    // fractional route: capacity == fractional alpha for >= l-1 atoms
    let mut collapsed = 0usize;
    for a in analyses {
        if atom_capacity_equals_fractional(a, opts) {
            collapsed += 1;
        }
    }
    if collapsed + 1 >= analyses.len() {
        rules.push("sum-additivity:fractional-agreement".to_string());
    }
    if rules.is_empty() {
        return None;
    }
    rules.push("product-multiplicativity".to_string());
    rules.push("polynomial-decomposition".to_string());
    Some(rules)
}

fn atom_capacity_equals_fractional(a: &AtomAnalysis, opts: &CapacityOpts) -> bool {
    let Some(cap) = a.exact_capacity() else {
        return false;
    };
    let Some(cap_rat) = cap.as_rational().cloned() else {
        return false; // irrational capacity never equals the rational LP value
    };
    let Ok(g) = build_atom(&a.atom, &opts.caps) else {
        return false;
    };
    match fractional::fractional_independence_number(&g, opts.enum_cap) {
        Ok(af) => af.value == cap_rat,
        Err(_) => false,
    }
}

/// Full pipeline: expand, analyze atoms, evaluate bound polynomials, apply
/// decomposition licenses, then tighten with whole-graph searches and the
/// product-sum inequality.
pub fn capacity_bounds(expr: &GraphExpr, opts: &CapacityOpts) -> Result<CapacityBounds> {
    let poly = expr.expand()?;
    if poly.0.is_empty() {
        return Err(Error::domain("empty polynomial"));
    }
    let atoms = poly.atoms();
    let mut analyses = Vec::with_capacity(atoms.len());
    for atom in &atoms {
        analyses.push(analyze_atom(atom, opts)?);
    }
    let mut rules: Vec<String> = Vec::new();
    let mut provenance: Vec<String> = Vec::new();
    for a in &analyses {
        for r in &a.bounds.rules_fired {
            if !rules.contains(r) {
                rules.push(r.clone());
            }
        }
        for p in &a.bounds.provenance {
            if !provenance.contains(p) {
                provenance.push(p.clone());
            }
        }
    }

    let lower_map: BTreeMap<String, ExactValue> = analyses
        .iter()
        .map(|a| (a.atom.name(), a.bounds.lower.value.clone()))
        .collect();
    let theta_map: BTreeMap<String, ExactValue> = analyses
        .iter()
        .map(|a| (a.atom.name(), a.theta.clone()))
        .collect();
    let mut lower = Bound {
        value: poly.eval_numeric(&lower_map)?,
        witness: "polynomial of per-atom lower bounds".to_string(),
    };
    let mut upper = Bound {
        value: poly.eval_numeric(&theta_map)?,
        witness: "polynomial of per-atom theta values".to_string(),
    };
    if !rules.contains(&"theta-upper".to_string()) {
        rules.push("theta-upper".to_string());
    }

    let license = decompose_sum(&analyses, opts);
    let all_exact = analyses.iter().all(|a| a.bounds.exact);
    let mut exact = false;
    if let Some(license_rules) = license {
        for r in license_rules {
            if !rules.contains(&r) {
                rules.push(r);
            }
        }
        if all_exact {
            let value = lower.value.clone();
            lower = Bound {
                value: value.clone(),
                witness: "polynomial of exact atom capacities".to_string(),
            };
            upper = lower.clone();
            exact = true;
        }
    }

    if !exact {
        // a direct search on the evaluated graph can raise the lower bound
        if let Ok(g) = expr.evaluate(&opts.caps) {
            if g.n() <= opts.alpha_order_cap {
                if let Ok((value, witness, _)) = capacity_lower_bound_powers(&g, opts) {
                    if let Some(std::cmp::Ordering::Greater) = value.compare(&lower.value) {
                        lower = Bound { value, witness };
                        if !rules.contains(&"power-root-lower".to_string()) {
                            rules.push("power-root-lower".to_string());
                        }
                    }
                }
            }
        }
        // product-sum inequality: a pure product of atoms with exact theta
        // capacities is also bounded by ((sum of capacities) / l)^l
        if poly.0.len() == 1 && poly.0[0].0 == 1 {
            let monomial = &poly.0[0].1;
            let degree = monomial.total_degree();
            if degree >= 2 && all_exact && analyses.iter().all(|a| a.capacity_is_theta) {
                let mut sum = ExactValue::zero();
                for (atom, e) in &monomial.0 {
                    let a = analyses.iter().find(|a| &a.atom == atom).unwrap();
                    let cap = a.exact_capacity().unwrap();
                    sum = sum.add(&cap.mul(&ExactValue::from_nat(*e)));
                }
                let mean = sum.mul(&ExactValue::from_rat(rat(1, degree as i64)));
                let am_gm_upper = mean.pow(degree);
                if let Some(std::cmp::Ordering::Less) = am_gm_upper.compare(&upper.value) {
                    upper = Bound {
                        value: am_gm_upper,
                        witness: "product bounded through the capacity of the sum".to_string(),
                    };
                    rules.push("product-sum-power-upper".to_string());
                }
            }
        }
    }

    let bounds = CapacityBounds {
        lower,
        upper,
        exact,
        rules_fired: rules,
        provenance,
    };
    debug_assert!(bounds.is_consistent());
    Ok(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::expr::parse;

    fn bounds(src: &str) -> CapacityBounds {
        capacity_bounds(&parse(src).unwrap(), &CapacityOpts::default()).unwrap()
    }

    #[test]
    fn known_capacities() {
        assert_eq!(
            known_capacity(&GraphAtom::Kneser(5, 2)).unwrap().0,
            ExactValue::from_nat(4)
        );
        assert_eq!(
            known_capacity(&GraphAtom::QKneser(4, 2, 2)).unwrap().0,
            ExactValue::from_nat(7)
        );
        assert_eq!(
            known_capacity(&GraphAtom::Tadpole(4, 3)).unwrap().0,
            ExactValue::from_nat(4)
        );
        assert_eq!(
            known_capacity(&GraphAtom::Paley(9)).unwrap().0,
            ExactValue::from_nat(3)
        );
        assert!(known_capacity(&GraphAtom::Cycle(7)).is_none());
    }

    #[test]
    fn pentagon_plus_k1_is_exact() {
        let b = bounds("C5+K1");
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::surd(rat_int(1), rat_int(1), 5));
        assert!(b
            .rules_fired
            .iter()
            .any(|r| r == "sum-additivity:fractional-agreement"));
        assert!(b
            .rules_fired
            .iter()
            .any(|r| r == "product-multiplicativity"));
    }

    #[test]
    fn kneser_product_is_exact() {
        let b = bounds("KG(5,2)*KG(5,2)");
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::from_nat(16));
    }

    #[test]
    fn kneser_sum_adds() {
        let b = bounds("KG(5,2)+KG(7,3)");
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::from_nat(19));
        assert!(b
            .rules_fired
            .iter()
            .any(|r| r == "sum-additivity:theta-agreement"));
    }

    #[test]
    fn pentagon_plus_complement_doubles() {
        let b = bounds("C5+co(C5)");
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::surd(rat_int(0), rat_int(2), 5));
    }

    #[test]
    fn odd_cycle_pair_stays_inexact() {
        let b = bounds("C7+C7");
        assert!(!b.exact);
        assert!(b.is_consistent());
        // capacity of C7 is open: lower from power roots, upper from theta
        let (lo, _) = b.lower.value.to_interval();
        let (_, hi) = b.upper.value.to_interval();
        assert!(lo >= 2.0 * 10f64.sqrt() - 1e-9);
        assert!(hi <= 2.0 * 3.3176673);
    }

    #[test]
    fn t76_endpoints() {
        let b = bounds("T(7,6)");
        assert!(!b.exact);
        assert_eq!(b.lower.value, ExactValue::radical(367, 5, rat_int(3)));
        assert!(b.lower.value.approx_eq(6.2578659, 1e-7));
        assert!(b.upper.value.approx_eq(6.3176672, 1e-7));
        assert_eq!(b.provenance, vec!["polak-schrijver-2019".to_string()]);
    }

    #[test]
    fn t92_default_lower() {
        let b = capacity_bounds(
            &parse("T(9,2)").unwrap(),
            &CapacityOpts {
                literature_constants: false,
                ..CapacityOpts::default()
            },
        )
        .unwrap();
        // sqrt(16 + 2) + 1 = 1 + 3 sqrt 2
        assert_eq!(b.lower.value, ExactValue::surd(rat_int(1), rat_int(3), 2));
    }

    #[test]
    fn complete_any_power_is_one() {
        let b = bounds("K4^3");
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::one());
    }
}
