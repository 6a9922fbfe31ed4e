//! Capacity bounds for odd cycles and tadpole graphs.
//!
//! A tadpole with an even tail over an odd cycle of length k >= 5 has
//! capacity theta(C_k) + l/2, so its bounds reduce to odd-cycle bounds
//! shifted by l/2. The lower-bound candidates for an odd cycle C_k are:
//!
//! - the square-power value alpha(C_k^2) = ((k-1)/2)^2 + floor((k-1)/4);
//! - d-th-power values alpha(C_k^d) >= n k^(d-1) + ((k-1)/2) k^(d-2)
//!   whenever k = n 2^d + 2^(d-1) + 1 for naturals n, d;
//! - optionally, published constants from the built-in table.

use super::constants::constants_for_cycle;
use super::{Bound, CapacityBounds};
use crate::error::{Error, Result};
use crate::exact::{rat, ExactValue, Rat};
use num_traits::Zero;

/// alpha of the strong square of an odd cycle: ((k-1)/2)^2 + floor((k-1)/4).
pub fn odd_cycle_square_alpha(k: u64) -> u64 {
    debug_assert!(k % 2 == 1 && k >= 3);
    let j = (k - 1) / 2;
    j * j + j / 2
}

/// Power-bound instantiations for an odd cycle: (degree, alpha lower bound)
/// for every d >= 2 with k = n 2^d + 2^(d-1) + 1, n >= 1.
pub fn cycle_power_bounds(k: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    for d in 2..=12u32 {
        let half = 1u64 << (d - 1);
        let full = 1u64 << d;
        if k <= half + 1 {
            break;
        }
        let rest = k - half - 1;
        if rest % full != 0 {
            continue;
        }
        let n = rest / full;
        if n == 0 {
            continue;
        }
        let kk = k as u128;
        let value = n as u128 * kk.pow(d - 1) + ((k - 1) / 2) as u128 * kk.pow(d - 2);
        if let Ok(v) = u64::try_from(value) {
            out.push((d, v));
        }
    }
    out
}

/// Lower-bound candidates for the capacity of the odd cycle C_k, as
/// (value, witness, provenance) triples.
pub fn odd_cycle_lower_candidates(
    k: u64,
    literature: bool,
) -> Vec<(ExactValue, String, Option<String>)> {
    let mut out = Vec::new();
    out.push((
        ExactValue::from_nat((k - 1) / 2),
        format!("independent set in C{k}"),
        None,
    ));
    let a2 = odd_cycle_square_alpha(k);
    out.push((
        ExactValue::radical(a2, 2, Rat::zero()),
        format!("alpha(C{k}^2) = {a2}, square-root lower bound"),
        None,
    ));
    for (d, v) in cycle_power_bounds(k) {
        out.push((
            ExactValue::radical(v, d, Rat::zero()),
            format!("alpha(C{k}^{d}) >= {v}, {d}-th-root lower bound"),
            None,
        ));
    }
    if literature {
        for c in constants_for_cycle(k) {
            out.push((
                ExactValue::radical(c.alpha, c.power, Rat::zero()),
                format!(
                    "alpha(C{}^{}) {} {}, {}-th-root lower bound [{}]",
                    c.cycle,
                    c.power,
                    if c.exact { "=" } else { ">=" },
                    c.alpha,
                    c.power,
                    c.source
                ),
                Some(c.source.to_string()),
            ));
        }
    }
    out
}

pub(crate) fn pick_max(
    candidates: Vec<(ExactValue, String, Option<String>)>,
) -> (ExactValue, String, Option<String>) {
    let mut best: Option<(ExactValue, String, Option<String>)> = None;
    for cand in candidates {
        let better = match &best {
            None => true,
            Some((bv, _, _)) => match cand.0.compare(bv) {
                Some(std::cmp::Ordering::Greater) => true,
                Some(_) => false,
                None => cand.0.to_f64() > bv.to_f64(),
            },
        };
        if better {
            best = Some(cand);
        }
    }
    best.expect("candidate list is never empty")
}

/// Capacity bounds for the tadpole T(k, l) from the family formulas alone
/// (no search, no literature constants unless `literature` is set).
///
/// Exact when k is 3 or even, or l is odd (capacity = floor(k/2) +
/// ceil(l/2)), and when k = 5 with l even (sqrt 5 + l/2). For odd k >= 7
/// with even l the result is an interval whose width is below 1/2.
pub fn tadpole_bounds_with(k: u64, l: u64, literature: bool) -> Result<CapacityBounds> {
    if k < 3 {
        return Err(Error::domain("tadpole requires cycle length k >= 3"));
    }
    let half_tail = ExactValue::from_rat(rat(l as i64, 2));
    let case1 = k == 3 || k % 2 == 0 || l % 2 == 1;
    if case1 {
        let v = ExactValue::from_nat(k / 2 + l.div_ceil(2));
        return Ok(CapacityBounds::exact(
            v,
            format!("independent set meets clique cover in T({k},{l})"),
            vec!["tadpole-tight-parity".into()],
        ));
    }
    if k == 5 {
        let v = ExactValue::sqrt_nat(5).add(&half_tail);
        return Ok(CapacityBounds::exact(
            v,
            format!("pentagon capacity plus half the tail of T(5,{l})"),
            vec!["tadpole-pentagon-tail".into()],
        ));
    }
    // odd k >= 7, even l: capacity is theta(C_k) + l/2 with theta(C_k) open
    let mut provenance = Vec::new();
    let candidates: Vec<(ExactValue, String, Option<String>)> =
        odd_cycle_lower_candidates(k, literature)
            .into_iter()
            .map(|(v, w, p)| (v.add(&half_tail), format!("{w}, plus half the tail"), p))
            .collect();
    let (lower_v, lower_w, prov) = pick_max(candidates);
    if let Some(p) = prov {
        provenance.push(p);
    }
    let upper_v = ExactValue::theta_odd_cycle(k).add(&half_tail);
    Ok(CapacityBounds {
        lower: Bound {
            value: lower_v,
            witness: lower_w,
        },
        upper: Bound {
            value: upper_v,
            witness: format!("theta(C{k}) plus half the tail"),
        },
        exact: false,
        rules_fired: vec![
            "tadpole-tail-reduction".into(),
            "cycle-power-root-lower".into(),
            "theta-upper".into(),
        ],
        provenance,
    })
}

/// Formula-only tadpole bounds (the public entry point).
pub fn tadpole_bounds(k: u64, l: u64) -> Result<CapacityBounds> {
    tadpole_bounds_with(k, l, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn exact_cases() {
        let b = tadpole_bounds(5, 6).unwrap();
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::surd(rat_int(3), rat_int(1), 5));
        assert!(b.lower.value.approx_eq(5.23607, 1e-5));

        let b = tadpole_bounds(4, 3).unwrap();
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::from_nat(4));

        let b = tadpole_bounds(7, 3).unwrap();
        assert!(b.exact);
        assert_eq!(b.lower.value, ExactValue::from_nat(5));
    }

    #[test]
    fn t76_uses_the_square_bound_by_default() {
        let b = tadpole_bounds(7, 6).unwrap();
        assert!(!b.exact);
        // sqrt(10) + 3
        assert_eq!(b.lower.value, ExactValue::radical(10, 2, rat_int(3)));
        assert!(b.upper.value.approx_eq(6.3176672, 1e-7));
    }

    #[test]
    fn t76_with_literature_reaches_the_published_bound() {
        let b = tadpole_bounds_with(7, 6, true).unwrap();
        assert_eq!(b.lower.value, ExactValue::radical(367, 5, rat_int(3)));
        assert!(b.lower.value.approx_eq(6.2578659, 1e-7));
        assert_eq!(b.provenance, vec!["polak-schrijver-2019".to_string()]);
    }

    #[test]
    fn c13_gets_the_cube_bound_from_the_formula() {
        // 13 = 1*2^3 + 2^2 + 1: the d = 3 instantiation gives 247
        assert_eq!(cycle_power_bounds(13), vec![(3, 247)]);
        let b = tadpole_bounds(13, 0).unwrap();
        assert_eq!(b.lower.value, ExactValue::radical(247, 3, rat_int(0)));
    }

    #[test]
    fn power_bound_matches_square_bound_where_both_apply() {
        // d = 2 instantiations coincide with the square formula
        for k in [7u64, 11, 15, 19] {
            if let Some(&(2, v)) = cycle_power_bounds(k).iter().find(|(d, _)| *d == 2) {
                assert_eq!(v, odd_cycle_square_alpha(k), "k = {k}");
            }
        }
    }

    #[test]
    fn gap_below_half_for_small_odd_tadpoles() {
        for k in (7..=15u64).step_by(2) {
            for l in (0..=10u64).step_by(2) {
                let b = tadpole_bounds(k, l).unwrap();
                let (lo, _) = b.lower.value.to_interval();
                let (_, hi) = b.upper.value.to_interval();
                assert!(hi - lo < 0.5, "gap for T({k},{l}) is {}", hi - lo);
                assert!(lo <= hi);
            }
        }
    }
}
