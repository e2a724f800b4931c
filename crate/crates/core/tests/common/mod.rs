#![allow(dead_code)]

use std::f64::consts::TAU;

use cs_intercept::tables::benchmark_tables;
use cs_intercept::{Pose, Scenario};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Draws a scenario from the reference sampling box: positions in [-20, 20]²,
/// headings in [0, 2π), V_P in [2, 15], V_T in (0, V_P), R in [0.5, 5].
pub fn random_scenario(rng: &mut impl Rng) -> Scenario {
    let vp = rng.gen_range(2.0..=15.0);
    let mut vt: f64 = rng.gen_range(0.0..vp);
    while vt <= 0.0 {
        vt = rng.gen_range(0.0..vp);
    }
    Scenario::from_parts(
        Pose::new(
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(0.0..TAU),
        ),
        vp,
        rng.gen_range(0.5..=5.0),
        Pose::new(
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(0.0..TAU),
        ),
        vt,
    )
    .expect("sampled scenario is valid")
}

pub fn seeded_scenarios(seed: u64, count: usize) -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_scenario(&mut rng)).collect()
}

/// Distinct scenarios from the benchmark tables.
pub fn table_scenarios() -> Vec<(&'static str, Scenario)> {
    let mut out: Vec<(&'static str, Scenario)> = Vec::new();
    for table in benchmark_tables() {
        for row in table.rows {
            if !out.iter().any(|(_, s)| *s == row.scenario) {
                out.push((row.id, row.scenario));
            }
        }
    }
    out
}

/// Table scenarios followed by 200 seeded random ones.
pub fn property_scenarios() -> Vec<(String, Scenario)> {
    table_scenarios()
        .into_iter()
        .map(|(id, s)| (id.to_string(), s))
        .chain(
            seeded_scenarios(0x5eed, 200)
                .into_iter()
                .enumerate()
                .map(|(i, s)| (format!("random-{i}"), s)),
        )
        .collect()
}
