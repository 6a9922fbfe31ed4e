//! Built-in table of published independence numbers of odd-cycle strong
//! powers. These are inputs, not computed values; every bound derived from
//! them carries the source tag in its witness descriptor.

/// Table format version; bump when entries change.
pub const TABLE_VERSION: &str = "1";

#[derive(Debug, Clone, Copy)]
pub struct CyclePowerConstant {
    pub cycle: u64,
    pub power: u32,
    pub alpha: u64,
    /// True when the value is known exactly, false for a lower bound.
    pub exact: bool,
    pub source: &'static str,
}

/// alpha(C_k^d) values from the literature.
///
/// - (7, 5): alpha(C7^5) >= 367, Polak and Schrijver 2019.
/// - (8n+5, 3) for prime 8n+5: alpha = (8n+5)[(2n+1)(8n+5) - 1]/2 exactly,
///   Bohman, Holzman and Natarajan 2013.
pub const CYCLE_POWER_CONSTANTS: &[CyclePowerConstant] = &[
    CyclePowerConstant {
        cycle: 7,
        power: 5,
        alpha: 367,
        exact: false,
        source: "polak-schrijver-2019",
    },
    CyclePowerConstant {
        cycle: 13,
        power: 3,
        alpha: 247,
        exact: true,
        source: "bohman-holzman-natarajan-2013",
    },
    CyclePowerConstant {
        cycle: 29,
        power: 3,
        alpha: 2929,
        exact: true,
        source: "bohman-holzman-natarajan-2013",
    },
    CyclePowerConstant {
        cycle: 37,
        power: 3,
        alpha: 6142,
        exact: true,
        source: "bohman-holzman-natarajan-2013",
    },
    CyclePowerConstant {
        cycle: 53,
        power: 3,
        alpha: 18232,
        exact: true,
        source: "bohman-holzman-natarajan-2013",
    },
    CyclePowerConstant {
        cycle: 61,
        power: 3,
        alpha: 27877,
        exact: true,
        source: "bohman-holzman-natarajan-2013",
    },
];

pub fn constants_for_cycle(k: u64) -> impl Iterator<Item = &'static CyclePowerConstant> {
    CYCLE_POWER_CONSTANTS.iter().filter(move |c| c.cycle == k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bohman_holzman_entries_match_their_closed_form() {
        // alpha(C_{8n+5}^3) = (8n+5)[(2n+1)(8n+5) - 1]/2 for prime 8n+5
        for c in CYCLE_POWER_CONSTANTS.iter().filter(|c| c.power == 3) {
            let k = c.cycle;
            assert_eq!(k % 8, 5);
            let n = (k - 5) / 8;
            let expect = k * ((2 * n + 1) * k - 1) / 2;
            assert_eq!(c.alpha, expect, "cycle {k}");
            assert!(c.exact);
        }
    }
}
