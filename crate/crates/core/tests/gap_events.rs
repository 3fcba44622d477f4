//! Per-level gap events under uniform order: exact marginals and mutual independence.

use penbench::instances::power_counts;
use penbench::rng::trial_rng;
use penbench::secretary::{gap_levels, level};

/// `events[j-1]`: among values above level `j-1`, the last to arrive is above level `j`.
fn events(order: &[f64], k: usize, top: f64) -> Vec<bool> {
    (1..k)
        .map(|j| {
            let lo = level(j - 1, k, top);
            let hi = level(j, k, top);
            order
                .iter()
                .rev()
                .find(|&&x| x > lo)
                .is_some_and(|&x| x > hi)
        })
        .collect()
}

#[test]
fn gap_events_factorize() {
    let inst = power_counts(8, 2).unwrap();
    let n = inst.n();
    let k = gap_levels(n);
    assert_eq!(k, 6);
    let top = inst.benchmark;
    let above = |j: usize| {
        inst.values
            .iter()
            .filter(|&&x| x > level(j, k, top))
            .count() as f64
    };
    let marginals: Vec<f64> = (1..k).map(|j| above(j) / above(j - 1)).collect();

    let trials = 40_000u64;
    let cells = 1usize << (k - 1);
    let mut counts = vec![0u64; cells];
    for t in 0..trials {
        let order = inst.arrival(&mut trial_rng(77, t));
        let e = events(&order, k, top);
        let idx = e
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | ((b as usize) << i));
        counts[idx] += 1;
    }
    // Marginals within 4 standard errors of the exact ratios.
    for (j, &p) in marginals.iter().enumerate() {
        let hits: u64 = counts
            .iter()
            .enumerate()
            .filter(|(c, _)| c >> j & 1 == 1)
            .map(|(_, &v)| v)
            .sum();
        let est = hits as f64 / trials as f64;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((est - p).abs() <= 4.0 * se, "E_{}: {est} vs {p}", j + 1);
    }
    // Joint law against the product of exact marginals.
    let mut chi2 = 0.0;
    for (c, &obs) in counts.iter().enumerate() {
        let p: f64 = marginals
            .iter()
            .enumerate()
            .map(|(j, &m)| if c >> j & 1 == 1 { m } else { 1.0 - m })
            .product();
        let expected = p * trials as f64;
        chi2 += (obs as f64 - expected).powi(2) / expected;
    }
    // 0.1% critical value of chi-square with 31 degrees of freedom.
    assert!(chi2 < 61.1, "chi-square {chi2}");
}
