//! The Lovász theta function: closed-form evaluators for the structured
//! families, the SDP solver for everything else, and regular-graph spectral
//! bounds.

pub mod sdp;

pub use sdp::{solve_theta_sdp, SdpOutcome, SdpSettings};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, ExactValue};
use crate::families::{gaussian_binomial, GraphAtom};
use crate::graph::Graph;
use crate::invariants::spectrum;
use serde::Serialize;

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

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThetaMethod {
    Sdp,
    HoffmanClosedForm,
    CycleClosedForm,
    KneserClosedForm,
    QKneserClosedForm,
    TadpoleClosedForm,
    VertexTransitiveComplementRelation,
    /// Sandwich-tight families where alpha equals the clique-cover number:
    /// complete, empty, path, even cycle, complete multipartite.
    SandwichCollapse,
    /// Sum over connected components.
    ComponentSum,
    /// Fallback interval from regular-graph eigenvalue bounds.
    SpectralBounds,
}

#[derive(Debug, Clone)]
pub struct ThetaResult {
    pub value: f64,
    /// Exact form when a closed form applies (an interval for symbolic
    /// values that only evaluate numerically).
    pub exact: Option<ExactValue>,
    pub primal_residual: f64,
    pub dual_gap: f64,
    pub method: ThetaMethod,
}

impl ThetaResult {
    fn from_exact(e: ExactValue, method: ThetaMethod) -> ThetaResult {
        ThetaResult {
            value: e.to_f64(),
            exact: Some(e),
            primal_residual: 0.0,
            dual_gap: 0.0,
            method,
        }
    }

    /// Best available exact value: the closed form when present, else the
    /// certified float enclosure.
    pub fn exact_or_interval(&self) -> ExactValue {
        self.exact.clone().unwrap_or(ExactValue::Interval {
            lo: self.value - self.dual_gap,
            hi: self.value + self.dual_gap,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ThetaOpts {
    /// Order cap for the SDP fallback.
    pub sdp_cap: usize,
    pub sdp: SdpSettings,
    /// When set, always run the SDP alongside a closed form and require
    /// agreement within `cross_check_tol`.
    pub cross_check: bool,
    pub cross_check_tol: f64,
}

impl Default for ThetaOpts {
    fn default() -> Self {
        ThetaOpts {
            sdp_cap: 64,
            sdp: SdpSettings::default(),
            cross_check: false,
            cross_check_tol: 1e-6,
        }
    }
}

/// Closed form for theta of a family atom, when one exists.
pub fn theta_closed_form_atom(atom: &GraphAtom) -> Option<ThetaResult> {
    use GraphAtom::*;
    match atom {
        Complete(_) => Some(ThetaResult::from_exact(
            ExactValue::one(),
            ThetaMethod::SandwichCollapse,
        )),
        Empty(n) => Some(ThetaResult::from_exact(
            ExactValue::from_nat(*n),
            ThetaMethod::SandwichCollapse,
        )),
        Path(n) => Some(ThetaResult::from_exact(
            ExactValue::from_nat(n.div_ceil(2)),
            ThetaMethod::SandwichCollapse,
        )),
        Cycle(k) => Some(theta_cycle(*k)),
        Kneser(n, r) => {
            let v = if *n >= 2 * r {
                binomial(n - 1, r - 1)
            } else {
                // no two r-subsets are disjoint: the graph is empty
                binomial(*n, *r)
            };
            Some(ThetaResult::from_exact(
                ExactValue::from_nat(v as u64),
                ThetaMethod::KneserClosedForm,
            ))
        }
        QKneser(n, k, q) => {
            let v = gaussian_binomial(n - 1, k - 1, *q);
            Some(ThetaResult::from_exact(
                ExactValue::from_nat(v as u64),
                ThetaMethod::QKneserClosedForm,
            ))
        }
        Tadpole(k, l) => Some(theta_tadpole(*k, *l)),
        Paley(q) => Some(ThetaResult::from_exact(
            ExactValue::sqrt_nat(*q),
            ThetaMethod::VertexTransitiveComplementRelation,
        )),
        CompleteMultipartite(parts) => {
            let alpha = parts.iter().copied().max().unwrap_or(0);
            Some(ThetaResult::from_exact(
                ExactValue::from_nat(alpha),
                ThetaMethod::SandwichCollapse,
            ))
        }
        Complement(inner) => theta_complement_closed_form(inner),
        Custom(_) => None,
    }
}

fn theta_cycle(k: u64) -> ThetaResult {
    if k % 2 == 0 {
        ThetaResult::from_exact(
            ExactValue::from_rat(rat(k as i64, 2)),
            ThetaMethod::SandwichCollapse,
        )
    } else if k == 3 {
        ThetaResult::from_exact(ExactValue::one(), ThetaMethod::SandwichCollapse)
    } else {
        ThetaResult::from_exact(ExactValue::theta_odd_cycle(k), ThetaMethod::CycleClosedForm)
    }
}

/// floor(k/2) + ceil(l/2) when k is 3 or even or l is odd; theta(C_k) + l/2
/// when k >= 5 is odd and l is even.
fn theta_tadpole(k: u64, l: u64) -> ThetaResult {
    let case1 = k == 3 || k % 2 == 0 || l % 2 == 1;
    if case1 {
        ThetaResult::from_exact(
            ExactValue::from_nat(k / 2 + l.div_ceil(2)),
            ThetaMethod::TadpoleClosedForm,
        )
    } else {
        let e = ExactValue::theta_odd_cycle(k).add(&ExactValue::from_rat(rat(l as i64, 2)));
        ThetaResult::from_exact(e, ThetaMethod::TadpoleClosedForm)
    }
}

fn theta_complement_closed_form(inner: &GraphAtom) -> Option<ThetaResult> {
    use GraphAtom::*;
    match inner {
        // self-complementary families keep their theta
        Cycle(5) => Some(ThetaResult::from_exact(
            ExactValue::sqrt_nat(5),
            ThetaMethod::CycleClosedForm,
        )),
        Path(4) => Some(ThetaResult::from_exact(
            ExactValue::from_nat(2),
            ThetaMethod::SandwichCollapse,
        )),
        Paley(q) => Some(ThetaResult::from_exact(
            ExactValue::sqrt_nat(*q),
            ThetaMethod::VertexTransitiveComplementRelation,
        )),
        Complete(n) => Some(ThetaResult::from_exact(
            ExactValue::from_nat(*n),
            ThetaMethod::SandwichCollapse,
        )),
        Empty(_) => Some(ThetaResult::from_exact(
            ExactValue::one(),
            ThetaMethod::SandwichCollapse,
        )),
        Kneser(n, r) if *n >= 2 * r => Some(ThetaResult::from_exact(
            ExactValue::from_rat(rat(*n as i64, *r as i64)),
            ThetaMethod::KneserClosedForm,
        )),
        // vertex-transitive: theta(co G) = n / theta(G)
        Cycle(k) => {
            let t = theta_cycle(*k);
            let e = ExactValue::from_nat(*k).mul(&t.exact?.recip());
            Some(ThetaResult::from_exact(
                e,
                ThetaMethod::VertexTransitiveComplementRelation,
            ))
        }
        Complement(inner2) => theta_closed_form_atom(inner2),
        _ => None,
    }
}

/// Recognize structural families of an unlabeled graph: empty, complete,
/// cycle, path, tadpole, complete multipartite. Operation results carry no
/// constructor provenance, so this keeps them on closed-form routes.
pub fn recognize_family(g: &Graph) -> Option<GraphAtom> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let m = g.edge_count();
    if m == 0 {
        return Some(GraphAtom::Empty(n as u64));
    }
    if m == n * (n - 1) / 2 {
        return Some(GraphAtom::Complete(n as u64));
    }
    let comps = g.components();
    if comps.len() == 1 {
        let mut degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        if n >= 3 && degs[0] == 2 && degs[n - 1] == 2 {
            return Some(GraphAtom::Cycle(n as u64));
        }
        if m == n - 1 && degs[n - 1] <= 2 {
            return Some(GraphAtom::Path(n as u64));
        }
        // tadpole: one deg-1, one deg-3, rest deg-2, and n == m
        if n == m && n >= 4 && degs[0] == 1 && degs[1] == 2 && degs[n - 2] == 2 && degs[n - 1] == 3
        {
            let start = (0..n).find(|&v| g.degree(v) == 1).unwrap();
            let mut path_len = 1usize;
            let mut prev = start;
            let mut cur = g.neighbors(start)[0];
            while g.degree(cur) == 2 {
                let next = g.neighbors(cur).into_iter().find(|&u| u != prev).unwrap();
                prev = cur;
                cur = next;
                path_len += 1;
            }
            if g.degree(cur) == 3 {
                let k = n - path_len;
                if k >= 3 {
                    return Some(GraphAtom::Tadpole(k as u64, path_len as u64));
                }
            }
        }
    }
    // complete multipartite: the complement is a disjoint union of cliques
    let comp = crate::graph::complement(g);
    let parts = comp.components();
    if parts.len() >= 2 {
        let all_cliques = parts
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &u)| p[i + 1..].iter().all(|&v| comp.adjacent(u, v))));
        if all_cliques {
            let mut sizes: Vec<u64> = parts.iter().map(|p| p.len() as u64).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            return Some(GraphAtom::CompleteMultipartite(sizes));
        }
    }
    None
}

/// Closed form for a concrete graph: family provenance first, then
/// structural recognition, then flag-based routes (self-complementary
/// vertex-transitive or strongly regular, and Hoffman for edge-transitive
/// regular graphs).
pub fn theta_closed_form(g: &Graph) -> Option<ThetaResult> {
    if let Some(atom) = g.family() {
        if let Some(r) = theta_closed_form_atom(atom) {
            return Some(r);
        }
    }
    if let Some(atom) = recognize_family(g) {
        if let Some(r) = theta_closed_form_atom(&atom) {
            return Some(r);
        }
    }
    let p = g.props();
    if p.self_complementary && (p.vertex_transitive || p.strongly_regular.is_some()) {
        return Some(ThetaResult::from_exact(
            ExactValue::sqrt_nat(g.n() as u64),
            ThetaMethod::VertexTransitiveComplementRelation,
        ));
    }
    if p.edge_transitive {
        if let Some(d) = p.regular {
            return hoffman_theta(g, d);
        }
    }
    None
}

/// Hoffman bound -n*lambda_min/(d - lambda_min), exact for edge-transitive
/// regular graphs. The smallest eigenvalue snaps to an integer when within
/// 1e-7 of one (the integral-spectrum families); otherwise the result is a
/// small certified interval.
pub fn hoffman_theta(g: &Graph, d: usize) -> Option<ThetaResult> {
    let n = g.n();
    if d == 0 || n < 2 {
        return Some(ThetaResult::from_exact(
            ExactValue::from_nat(n as u64),
            ThetaMethod::SandwichCollapse,
        ));
    }
    let s = spectrum(g, 4096).ok()?;
    let lam = s.smallest();
    let snapped = lam.round();
    let exact = if (lam - snapped).abs() <= 1e-7 && snapped < 0.0 {
        let num = rat_int(n as i64) * rat_int(-snapped as i64);
        let den = rat_int(d as i64) - rat_int(snapped as i64);
        ExactValue::from_rat(num / den)
    } else {
        let v = -(n as f64) * lam / (d as f64 - lam);
        ExactValue::interval(v - 1e-8 * n as f64, v + 1e-8 * n as f64)
    };
    Some(ThetaResult {
        value: exact.to_f64(),
        exact: Some(exact),
        primal_residual: s.residual,
        dual_gap: 0.0,
        method: ThetaMethod::HoffmanClosedForm,
    })
}

/// theta(g): closed form when available, else the SDP (per connected
/// component), with an optional SDP cross-check of closed forms.
pub fn theta(g: &Graph, opts: &ThetaOpts) -> Result<ThetaResult> {
    if g.n() == 0 {
        return Ok(ThetaResult::from_exact(
            ExactValue::zero(),
            ThetaMethod::SandwichCollapse,
        ));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut total = ExactValue::zero();
        let mut value = 0.0;
        let mut gap = 0.0;
        let mut residual = 0.0f64;
        for comp in &comps {
            let sub = g.induced(comp);
            let r = theta(&sub, opts)?;
            total = total.add(&r.exact_or_interval());
            value += r.value;
            gap += r.dual_gap;
            residual = residual.max(r.primal_residual);
        }
        return Ok(ThetaResult {
            value,
            exact: Some(total),
            primal_residual: residual,
            dual_gap: gap,
            method: ThetaMethod::ComponentSum,
        });
    }
    if let Some(closed) = theta_closed_form(g) {
        if opts.cross_check && g.n() <= opts.sdp_cap {
            let out = solve_theta_sdp(g, false, &opts.sdp)?;
            if (out.value() - closed.value).abs() > opts.cross_check_tol {
                return Err(Error::NoConvergence(format!(
                    "closed form {:.8} and SDP {:.8} disagree",
                    closed.value,
                    out.value()
                )));
            }
        }
        return Ok(closed);
    }
    if g.n() <= opts.sdp_cap {
        let out = solve_theta_sdp(g, false, &opts.sdp)?;
        return Ok(ThetaResult {
            value: out.value(),
            exact: Some(ExactValue::interval(out.lower - 1e-12, out.upper + 1e-12)),
            primal_residual: out.primal_min_eig.abs().max(out.trace_error),
            dual_gap: out.gap(),
            method: ThetaMethod::Sdp,
        });
    }
    // bounds-only fallback for large regular graphs
    if let Some((lo, hi)) = theta_regular_bounds(g) {
        return Ok(ThetaResult {
            value: 0.5 * (lo + hi),
            exact: Some(ExactValue::interval(lo, hi)),
            primal_residual: 0.0,
            dual_gap: hi - lo,
            method: ThetaMethod::SpectralBounds,
        });
    }
    Err(Error::resource(
        "theta SDP order",
        opts.sdp_cap as u64,
        g.n() as u64,
    ))
}

/// Schrijver's variant: the same SDP with entrywise nonnegativity added.
/// Reported for information; never used as a capacity upper bound.
pub fn schrijver_theta(g: &Graph, opts: &ThetaOpts) -> Result<ThetaResult> {
    if g.n() == 0 {
        return Ok(ThetaResult::from_exact(
            ExactValue::zero(),
            ThetaMethod::SandwichCollapse,
        ));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut value = 0.0;
        let mut gap = 0.0;
        for comp in &comps {
            let sub = g.induced(comp);
            let r = schrijver_theta(&sub, opts)?;
            value += r.value;
            gap += r.dual_gap;
        }
        return Ok(ThetaResult {
            value,
            exact: None,
            primal_residual: 0.0,
            dual_gap: gap,
            method: ThetaMethod::ComponentSum,
        });
    }
    if g.n() > opts.sdp_cap {
        return Err(Error::resource(
            "theta SDP order",
            opts.sdp_cap as u64,
            g.n() as u64,
        ));
    }
    let out = solve_theta_sdp(g, true, &opts.sdp)?;
    Ok(ThetaResult {
        value: out.value(),
        exact: None,
        primal_residual: out.primal_min_eig.abs().max(out.trace_error),
        dual_gap: out.gap(),
        method: ThetaMethod::Sdp,
    })
}

/// Eigenvalue bounds on theta(g) + theta(complement g) for a d-regular
/// graph with spectrum lambda_1 >= ... >= lambda_n:
///
/// ```text
/// 2 + (n-d-1)/(1+lambda_2) - d/lambda_n
///     <= theta(G) + theta(co G)
///     <= n(1+lambda_2)/(n-d+lambda_2) - n*lambda_n/(d-lambda_n)
/// ```
///
/// Returns `None` for irregular input or when a denominator degenerates
/// (complete or empty graphs: the complement has no spectrum to divide by).
pub fn theta_spectral_bounds(g: &Graph) -> Option<(f64, f64)> {
    let n = g.n();
    let d = g.props().regular.or_else(|| {
        let d0 = g.degree(0);
        if (1..n).all(|v| g.degree(v) == d0) {
            Some(d0)
        } else {
            None
        }
    })?;
    if n < 2 || d == 0 || d == n - 1 {
        return None;
    }
    let s = spectrum(g, 4096).ok()?;
    let lam2 = s.second()?;
    let lamn = s.smallest();
    if (1.0 + lam2).abs() < 1e-12 || lamn >= 0.0 {
        return None;
    }
    let nf = n as f64;
    let df = d as f64;
    let lower = 2.0 + (nf - df - 1.0) / (1.0 + lam2) - df / lamn;
    let upper = nf * (1.0 + lam2) / (nf - df + lam2) - nf * lamn / (df - lamn);
    Some((lower, upper))
}

/// Bounds on theta(g) alone for a regular graph: the Hoffman form above and
/// the complement part inverted through theta(G) theta(co G) >= n.
pub fn theta_regular_bounds(g: &Graph) -> Option<(f64, f64)> {
    let n = g.n();
    let d = g.props().regular?;
    if n < 2 || d == 0 || d == n - 1 {
        return None;
    }
    let s = spectrum(g, 4096).ok()?;
    let lam2 = s.second()?;
    let lamn = s.smallest();
    if lamn >= 0.0 {
        return None;
    }
    let nf = n as f64;
    let df = d as f64;
    let upper = -nf * lamn / (df - lamn);
    let lower = (nf - df + lam2) / (1.0 + lam2);
    Some((lower.max(1.0), upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::families;
    use crate::graph::{complement, disjoint_union, strong_product, Caps};

    fn th(g: &Graph) -> ThetaResult {
        theta(g, &ThetaOpts::default()).unwrap()
    }

    #[test]
    fn closed_forms_match_known_values() {
        let caps = Caps::default();
        let petersen = families::make_kneser(5, 2, &caps).unwrap();
        let r = th(&petersen);
        assert_eq!(r.exact, Some(ExactValue::from_nat(4)));
        assert_eq!(r.method, ThetaMethod::KneserClosedForm);

        let qk = families::make_q_kneser(4, 2, 2, &caps).unwrap();
        let r = th(&qk);
        assert_eq!(r.exact, Some(ExactValue::from_nat(7)));

        let t56 = families::make_tadpole(5, 6, &caps).unwrap();
        let r = th(&t56);
        assert_eq!(r.exact, Some(ExactValue::surd(rat_int(3), rat_int(1), 5)));

        let p13 = families::make_paley(13, &caps).unwrap();
        assert_eq!(th(&p13).exact, Some(ExactValue::sqrt_nat(13)));
    }

    #[test]
    fn hoffman_route_matches_qkneser() {
        // -35*(-4)/(16+4) = 7 = the Gaussian coefficient (3,1) at q=2
        let g = families::make_q_kneser(4, 2, 2, &Caps::default()).unwrap();
        let r = hoffman_theta(&g, 16).unwrap();
        assert_eq!(r.exact, Some(ExactValue::from_nat(7)));
    }

    #[test]
    fn dispatcher_handles_sums_and_products() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        let two_c5 = disjoint_union(&c5, &c5);
        let r = th(&two_c5);
        assert_eq!(r.exact, Some(ExactValue::surd(rat_int(0), rat_int(2), 5)));
        assert_eq!(r.method, ThetaMethod::ComponentSum);

        // C5 x C5 has no closed form here; the SDP must see 5
        let prod = strong_product(&c5, &c5, &caps).unwrap();
        let r = th(&prod);
        assert!((r.value - 5.0).abs() <= 1e-6, "{}", r.value);
    }

    #[test]
    fn schrijver_below_theta() {
        let caps = Caps::default();
        let opts = ThetaOpts::default();
        for g in [
            families::make_cycle(5, &caps).unwrap(),
            families::make_cycle(7, &caps).unwrap(),
            families::make_kneser(5, 2, &caps).unwrap(),
            families::make_paley(13, &caps).unwrap(),
        ] {
            let t = theta(&g, &opts).unwrap();
            let tp = schrijver_theta(&g, &opts).unwrap();
            assert!(tp.value <= t.value + 2.0 * opts.sdp.tol);
        }
        // equality for C5 observed within 1e-6
        let c5 = families::make_cycle(5, &caps).unwrap();
        let tp = schrijver_theta(&c5, &opts).unwrap();
        assert!((tp.value - 5f64.sqrt()).abs() <= 1e-6);
    }

    #[test]
    fn spectral_sum_bounds() {
        let caps = Caps::default();
        // strongly regular: both sides collapse to 2 sqrt(13)
        let p13 = families::make_paley(13, &caps).unwrap();
        let (lo, hi) = theta_spectral_bounds(&p13).unwrap();
        let target = 2.0 * 13f64.sqrt();
        assert!((lo - target).abs() < 1e-9);
        assert!((hi - target).abs() < 1e-9);

        let petersen = families::make_kneser(5, 2, &caps).unwrap();
        let (lo, hi) = theta_spectral_bounds(&petersen).unwrap();
        assert!((hi - (2.5 + 4.0)).abs() < 1e-9);
        assert!(lo <= hi);

        // degenerate guard: complete graph has an empty complement
        let k5 = families::make_complete(5, &caps).unwrap();
        assert!(theta_spectral_bounds(&k5).is_none());
    }

    #[test]
    fn theta_product_of_complements() {
        // theta(G) * theta(co G) >= n, equality for vertex-transitive
        let caps = Caps::default();
        let opts = ThetaOpts::default();
        for g in [
            families::make_cycle(7, &caps).unwrap(),
            families::make_kneser(5, 2, &caps).unwrap(),
        ] {
            let t = theta(&g, &opts).unwrap().value;
            let tc = theta(&complement(&g), &opts).unwrap().value;
            assert!(t * tc >= g.n() as f64 - 1e-5);
            if g.props().vertex_transitive {
                assert!((t * tc - g.n() as f64).abs() <= 1e-5);
            }
        }
    }

    #[test]
    fn recognizer_identifies_structures() {
        let caps = Caps::default();
        let c5 = families::make_cycle(5, &caps).unwrap();
        let prod =
            strong_product(&c5, &families::make_complete(1, &caps).unwrap(), &caps).unwrap();
        assert_eq!(recognize_family(&prod), Some(GraphAtom::Cycle(5)));

        let t = families::make_tadpole(7, 4, &caps).unwrap();
        let rebuilt = Graph::from_edges(t.n(), &t.edges()).unwrap();
        assert_eq!(recognize_family(&rebuilt), Some(GraphAtom::Tadpole(7, 4)));

        let km = families::make_complete_multipartite(&[3, 2], &caps).unwrap();
        let rebuilt = Graph::from_edges(km.n(), &km.edges()).unwrap();
        assert_eq!(
            recognize_family(&rebuilt),
            Some(GraphAtom::CompleteMultipartite(vec![3, 2]))
        );
    }
}
