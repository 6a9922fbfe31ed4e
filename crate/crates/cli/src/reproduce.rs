//! The reproduction suite: one row per reference value, each recomputed
//! from scratch and compared at its stated tolerance. The table is always
//! printed in full; any failing row makes the exit status nonzero.

use crate::config::RunConfig;
use capgraph_core::capacity::{
    self, alon_independent_set, capacity_bounds, certify_unattainable, tadpole_bounds,
    verify_product_sum_inequality, RouteKind,
};
use capgraph_core::exact::{rat, rat_int, render_significant, ExactValue};
use capgraph_core::expr::parse;
use capgraph_core::families;
use capgraph_core::fractional;
use capgraph_core::graph::strong_power;
use capgraph_core::invariants::{self, SearchOpts};
use capgraph_core::theta::{self, solve_theta_sdp};

pub struct Row {
    pub id: &'static str,
    pub description: &'static str,
    pub status: bool,
    pub detail: String,
}

fn row(
    id: &'static str,
    description: &'static str,
    body: impl FnOnce() -> Result<String, String>,
) -> Row {
    let (status, detail) = match body() {
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    Row {
        id,
        description,
        status,
        detail,
    }
}

fn check(cond: bool, ok: String, fail: String) -> Result<String, String> {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

pub fn run_suite(config: &RunConfig) -> Vec<Row> {
    let caps = config.caps();
    let opts = config.capacity_opts();
    let theta_opts = config.theta_opts();
    let search = SearchOpts {
        budget: Some(std::time::Duration::from_secs_f64(config.alpha_budget_secs)),
    };
    let mut rows = Vec::new();

    rows.push(row("alpha-tadpole", "alpha(T(5,6)) = 5", || {
        let g = families::make_tadpole(5, 6, &caps).map_err(|e| e.to_string())?;
        let a = invariants::independence_number(&g, &search);
        check(a.size == 5, format!("alpha = {}", a.size), format!("alpha = {}", a.size))
    }));

    rows.push(row("alpha-petersen", "alpha(KG(5,2)) = 4", || {
        let g = families::make_kneser(5, 2, &caps).map_err(|e| e.to_string())?;
        let a = invariants::independence_number(&g, &search);
        check(a.size == 4, format!("alpha = {}", a.size), format!("alpha = {}", a.size))
    }));

    rows.push(row(
        "alpha-odd-cycle-products",
        "alpha(C(2j+1) x C(2k+1)) = jk + floor(j/2), 2 <= j <= k <= 4",
        || {
            let mut seen = Vec::new();
            for j in 2..=4u64 {
                for k in j..=4u64 {
                    let cj = families::make_cycle(2 * j + 1, &caps).map_err(|e| e.to_string())?;
                    let ck = families::make_cycle(2 * k + 1, &caps).map_err(|e| e.to_string())?;
                    let prod = capgraph_core::graph::strong_product(&cj, &ck, &caps)
                        .map_err(|e| e.to_string())?;
                    let a = invariants::independence_number(&prod, &search);
                    let expect = j * k + j / 2;
                    if a.size as u64 != expect {
                        return Err(format!("({j},{k}): alpha = {} expected {expect}", a.size));
                    }
                    seen.push(format!("({j},{k})={}", a.size));
                }
            }
            Ok(seen.join(" "))
        },
    ));

    rows.push(row("alpha-tadpole-square", "alpha(T(5,6)^2) = 26", || {
        let g = families::make_tadpole(5, 6, &caps).map_err(|e| e.to_string())?;
        let sq = strong_power(&g, 2, &caps).map_err(|e| e.to_string())?;
        let a = invariants::independence_number(&sq, &search);
        if !a.optimal {
            return check(
                a.size >= 26,
                format!("budget expired, certified alpha >= {}", a.size),
                format!("budget expired with alpha >= {} < 26", a.size),
            );
        }
        check(a.size == 26, format!("alpha = {}", a.size), format!("alpha = {}", a.size))
    }));

    rows.push(row("theta-sdp-values", "theta SDP: C5, C7, KG(5,2)", || {
        let mut parts = Vec::new();
        for (g, target, name) in [
            (families::make_cycle(5, &caps).unwrap(), 5f64.sqrt(), "C5"),
            (families::make_cycle(7, &caps).unwrap(), 3.3176672, "C7"),
            (families::make_kneser(5, 2, &caps).unwrap(), 4.0, "KG(5,2)"),
        ] {
            let out = solve_theta_sdp(&g, false, &theta_opts.sdp).map_err(|e| e.to_string())?;
            if (out.value() - target).abs() > 1e-6 {
                return Err(format!("{name}: {} vs {target}", out.value()));
            }
            parts.push(format!("{name}={:.7}", out.value()));
        }
        Ok(parts.join(" "))
    }));

    rows.push(row(
        "q-kneser",
        "QK(4,2,2): order 35, alpha 7, theta 7, capacity exact 7",
        || {
            let g = families::make_q_kneser(4, 2, 2, &caps).map_err(|e| e.to_string())?;
            if g.n() != 35 {
                return Err(format!("order = {}", g.n()));
            }
            let a = invariants::independence_number(&g, &search);
            if a.size != 7 {
                return Err(format!("alpha = {}", a.size));
            }
            let t = theta::theta(&g, &theta_opts).map_err(|e| e.to_string())?;
            if t.exact != Some(ExactValue::from_nat(7)) {
                return Err(format!("theta = {}", t.value));
            }
            let b = capacity_bounds(&parse("QK(4,2,2)").unwrap(), &opts)
                .map_err(|e| e.to_string())?;
            check(
                b.exact && b.lower.value == ExactValue::from_nat(7),
                "all four values equal 7".into(),
                "capacity engine disagrees".into(),
            )
        },
    ));

    rows.push(row(
        "fractional",
        "alpha_f(C5) = 5/2, alpha_f(KG(5,2)) = 5, chi_f(KG(5,2)) = 5/2",
        || {
            let c5 = families::make_cycle(5, &caps).unwrap();
            let petersen = families::make_kneser(5, 2, &caps).unwrap();
            let af_c5 = fractional::fractional_independence_number(&c5, opts.enum_cap)
                .map_err(|e| e.to_string())?;
            let af_p = fractional::fractional_independence_number(&petersen, opts.enum_cap)
                .map_err(|e| e.to_string())?;
            let cf_p = fractional::fractional_chromatic_number(&petersen, opts.enum_cap)
                .map_err(|e| e.to_string())?;
            check(
                af_c5.value == rat(5, 2) && af_p.value == rat_int(5) && cf_p.value == rat(5, 2),
                format!("{} {} {}", af_c5.value, af_p.value, cf_p.value),
                format!("{} {} {}", af_c5.value, af_p.value, cf_p.value),
            )
        },
    ));

    rows.push(row("capacity-c5-k1", "capacity(C5+K1) exact 1+sqrt5", || {
        let b = capacity_bounds(&parse("C5+K1").unwrap(), &opts).map_err(|e| e.to_string())?;
        check(
            b.exact && b.lower.value == ExactValue::surd(rat_int(1), rat_int(1), 5),
            format!("{}", b.lower.value.render()),
            format!("exact = {}, value = {}", b.exact, b.lower.value.render()),
        )
    }));

    rows.push(row(
        "capacity-t56",
        "capacity(T(5,6)) exact 3+sqrt5, printed 5.23607",
        || {
            let b = capacity_bounds(&parse("T(5,6)").unwrap(), &opts).map_err(|e| e.to_string())?;
            let printed = render_significant(b.lower.value.to_f64(), 6);
            check(
                b.exact
                    && b.lower.value == ExactValue::surd(rat_int(3), rat_int(1), 5)
                    && printed == "5.23607",
                format!("{} = {printed}", b.lower.value.render()),
                format!("exact = {}, printed {printed}", b.exact),
            )
        },
    ));

    rows.push(row(
        "capacity-t76",
        "capacity(T(7,6)) in [6.2578659, 6.3176672]",
        || {
            let b = capacity_bounds(&parse("T(7,6)").unwrap(), &opts).map_err(|e| e.to_string())?;
            let lo = render_significant(b.lower.value.to_f64(), 8);
            let hi = render_significant(b.upper.value.to_f64(), 8);
            check(
                lo == "6.2578659" && hi == "6.3176672",
                format!("[{lo}, {hi}]"),
                format!("[{lo}, {hi}]"),
            )
        },
    ));

    rows.push(row(
        "tadpole-gap",
        "tadpole bound gap < 1/2 for odd k in 7..15, even l in 0..10",
        || {
            for k in (7..=15u64).step_by(2) {
                for l in (0..=10u64).step_by(2) {
                    let b = tadpole_bounds(k, l).map_err(|e| e.to_string())?;
                    let (lo, _) = b.lower.value.to_interval();
                    let (_, hi) = b.upper.value.to_interval();
                    if hi - lo >= 0.5 {
                        return Err(format!("T({k},{l}) gap = {}", hi - lo));
                    }
                }
            }
            Ok("30 pairs below 1/2".into())
        },
    ));

    rows.push(row(
        "certificates",
        "unattainability: C5+K1 (two routes), T(5,6), Paley(9)+Paley(13)",
        || {
            let c = certify_unattainable(&parse("C5+K1").unwrap(), &opts)
                .map_err(|e| e.to_string())?
                .ok_or("no certificate for C5+K1")?;
            let kinds: Vec<RouteKind> = c.routes.iter().map(|r| r.route).collect();
            if !kinds.contains(&RouteKind::UniversalPlusGap)
                || !kinds.contains(&RouteKind::SurdPower)
            {
                return Err(format!("C5+K1 routes {kinds:?}"));
            }
            let c = certify_unattainable(&parse("T(5,6)").unwrap(), &opts)
                .map_err(|e| e.to_string())?
                .ok_or("no certificate for T(5,6)")?;
            if !c.routes.iter().any(|r| r.route == RouteKind::ConnectedPathGadget) {
                return Err("T(5,6) missed the path-gadget route".into());
            }
            let c = certify_unattainable(&parse("Paley(9)+Paley(13)").unwrap(), &opts)
                .map_err(|e| e.to_string())?
                .ok_or("no certificate for Paley(9)+Paley(13)")?;
            if !c.routes.iter().any(|r| r.route == RouteKind::SurdPower) {
                return Err("Paley pair missed the surd route".into());
            }
            Ok("all three certificates issued".into())
        },
    ));

    rows.push(row(
        "product-sum-inequality",
        "product vs sum bound: equality on [C5,C5]; doubling values 2 sqrt n",
        || {
            let c5 = capacity::analyze_atom(&capgraph_core::GraphAtom::Cycle(5), &opts)
                .map_err(|e| e.to_string())?;
            let r = verify_product_sum_inequality(&[&c5, &c5], &opts).map_err(|e| e.to_string())?;
            if r.equality != Some(true) {
                return Err("no equality for the pentagon pair".into());
            }
            // doubling: capacity(G + co G) = 2 sqrt n for C5 and Paley(13)
            let b = capacity_bounds(&parse("C5+co(C5)").unwrap(), &opts)
                .map_err(|e| e.to_string())?;
            if !(b.exact && b.lower.value == ExactValue::surd(rat_int(0), rat_int(2), 5)) {
                return Err(format!("C5+co(C5) = {}", b.lower.value.render()));
            }
            let b = capacity_bounds(&parse("Paley(13)+co(Paley(13))").unwrap(), &opts)
                .map_err(|e| e.to_string())?;
            if !(b.exact && b.lower.value == ExactValue::surd(rat_int(0), rat_int(2), 13)) {
                return Err(format!("Paley(13)+co = {}", b.lower.value.render()));
            }
            Ok("equality and both doubling values verified".into())
        },
    ));

    rows.push(row(
        "interleaving-set",
        "balanced interleaving set independent in (C5+co C5)^2",
        || {
            let c5 = families::make_cycle(5, &caps).unwrap();
            let set = alon_independent_set(&c5, 1, &caps).map_err(|e| e.to_string())?;
            check(
                set.verified && set.witness.size == 10,
                format!("size {} verified", set.witness.size),
                format!("size {} verified={}", set.witness.size, set.verified),
            )
        },
    ));

    if config.slow {
        rows.push(row("slow-alpha-t56-cube", "alpha(T(5,6)^3) = 136", || {
            let g = families::make_tadpole(5, 6, &caps).map_err(|e| e.to_string())?;
            let cube = strong_power(&g, 3, &caps).map_err(|e| e.to_string())?;
            let a = invariants::independence_number(&cube, &search);
            if a.optimal {
                check(a.size == 136, format!("alpha = {}", a.size), format!("alpha = {}", a.size))
            } else {
                check(
                    a.size >= 136,
                    format!("budget expired, certified alpha >= {}", a.size),
                    format!("budget expired with alpha >= {} < 136", a.size),
                )
            }
        }));
        rows.push(row("slow-alpha-c13-cube", "alpha(C13^3) = 247", || {
            let g = families::make_cycle(13, &caps).map_err(|e| e.to_string())?;
            let cube = strong_power(&g, 3, &caps).map_err(|e| e.to_string())?;
            let a = invariants::independence_number(&cube, &search);
            if a.optimal {
                check(a.size == 247, format!("alpha = {}", a.size), format!("alpha = {}", a.size))
            } else {
                check(
                    a.size >= 247,
                    format!("budget expired, certified alpha >= {}", a.size),
                    format!("budget expired with alpha >= {} < 247", a.size),
                )
            }
        }));
    }

    rows
}
