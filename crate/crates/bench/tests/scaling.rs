//! Gradient cost is linear in the edge count: quadrupling n at fixed mean
//! degree should quadruple the time, within a factor of 4 either way.

use mqo_bench::{er_graph, random_state};
use mqo_core::ObjectiveSpec;
use std::time::Instant;

fn median_secs(spec: &ObjectiveSpec, n: usize) -> f64 {
    let g = er_graph(n, 20.0, 5);
    let x = random_state(n, spec.domain(), 6).x;
    let mut out = vec![0.0; n];
    let reps = (2_000_000 / n).max(5);
    let mut samples: Vec<f64> = (0..9)
        .map(|_| {
            let t = Instant::now();
            for _ in 0..reps {
                spec.gradient_into(&g, std::hint::black_box(&x), &mut out);
            }
            t.elapsed().as_secs_f64() / reps as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

#[test]
fn gradient_time_scales_linearly_in_n() {
    for spec in [ObjectiveSpec::mis(), ObjectiveSpec::default()] {
        let small = median_secs(&spec, 4000);
        let large = median_secs(&spec, 16000);
        let ratio = large / small;
        assert!(
            (1.0..=16.0).contains(&ratio),
            "{}: 4x vertices took {ratio:.2}x the time",
            spec.name()
        );
    }
}
