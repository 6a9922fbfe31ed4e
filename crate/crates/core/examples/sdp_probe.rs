use capgraph_core::families;
use capgraph_core::graph::Caps;
use capgraph_core::theta::sdp::{solve_theta_sdp, SdpSettings};
use std::time::Instant;

fn main() {
    let caps = Caps::default();
    let cases: Vec<(&str, capgraph_core::Graph)> = vec![
        ("C5", families::make_cycle(5, &caps).unwrap()),
        ("C7", families::make_cycle(7, &caps).unwrap()),
        ("Petersen", families::make_kneser(5, 2, &caps).unwrap()),
        ("KG(6,2)", families::make_kneser(6, 2, &caps).unwrap()),
        ("KG(7,3)", families::make_kneser(7, 3, &caps).unwrap()),
        ("QK(4,2,2)", families::make_q_kneser(4, 2, 2, &caps).unwrap()),
        ("Paley(13)", families::make_paley(13, &caps).unwrap()),
        ("Paley(9)", families::make_paley(9, &caps).unwrap()),
        ("T(5,6)", families::make_tadpole(5, 6, &caps).unwrap()),
        ("T(7,6)", families::make_tadpole(7, 6, &caps).unwrap()),
        ("C13", families::make_cycle(13, &caps).unwrap()),
    ];
    for (name, g) in cases {
        let t = Instant::now();
        match solve_theta_sdp(&g, false, &SdpSettings::default()) {
            Ok(out) => println!(
                "{name:10} n={:3} value={:.8} gap={:.2e} iters={} {:?}",
                g.n(), out.value(), out.gap(), out.iterations, t.elapsed()
            ),
            Err(e) => println!("{name:10} FAILED: {e}"),
        }
        let t = Instant::now();
        match solve_theta_sdp(&g, true, &SdpSettings::default()) {
            Ok(out) => println!(
                "  schrijver       value={:.8} gap={:.2e} iters={} {:?}",
                out.value(), out.gap(), out.iterations, t.elapsed()
            ),
            Err(e) => println!("  schrijver FAILED: {e}"),
        }
    }
}
