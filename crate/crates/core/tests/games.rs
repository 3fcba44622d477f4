//! Every strategy plays legal games whose transcripts replay and whose scores match
//! the recorded tests.

use penbench::distributions::Law;
use penbench::engine::{play, Information, Strategy};
use penbench::instances::{power_counts, shuffled};
use penbench::prophet::{single_sample_prophet, IidPlan, TailGroupProfile};
use penbench::rng::seeded;
use penbench::secretary::{
    arbitrary_order_hinted, baseline_uniform, gap_algorithm, hinted_random_order,
    no_info_random_order, optimum_info_random_order, warmup_full_info,
};

fn check(values: &[f64], info: &Information, strategy: &mut dyn Strategy) {
    let result = play(values.iter().copied(), info, strategy).unwrap();
    result.check_score_identity().unwrap();
    let replayed = result.transcript.replay(values).unwrap();
    assert_eq!(replayed.score, result.score);
    let top = values.iter().copied().fold(0.0, f64::max);
    assert!(result.score >= 0.0 && result.score <= top);
}

#[test]
fn secretary_strategies() {
    let base = power_counts(5, 2).unwrap().values;
    let n = base.len();
    let full = Information::full(&base);
    for seed in 0..50 {
        let mut rng = seeded(seed);
        let values = shuffled(&base, &mut rng);
        check(&values, &full, &mut warmup_full_info(&base).unwrap());
        check(&values, &full, &mut gap_algorithm(&base).unwrap());
        check(
            &values,
            &Information::Optimum(5.0),
            &mut optimum_info_random_order(5.0, n, &mut rng).unwrap(),
        );
        check(
            &values,
            &Information::Hint(2.5),
            &mut hinted_random_order(2.5, n, &mut rng).unwrap(),
        );
        check(
            &values,
            &Information::Optimum(5.0),
            &mut arbitrary_order_hinted(5.0, n, &mut rng).unwrap(),
        );
        check(
            &values,
            &Information::Nothing,
            &mut no_info_random_order(n, &mut rng),
        );
        check(
            &values,
            &Information::Nothing,
            &mut baseline_uniform(n, &mut rng).unwrap(),
        );
    }
}

#[test]
fn prophet_strategies() {
    let exp = Law::exponential(1.0).unwrap();
    let plan = IidPlan::new(exp.clone(), 32).unwrap();
    let laws: Vec<Law> = (0..32)
        .map(|i| {
            if i % 2 == 0 {
                exp.clone()
            } else {
                Law::uniform(0.0, 2.0).unwrap()
            }
        })
        .collect();
    let profile = TailGroupProfile::new(laws.clone()).unwrap();
    for seed in 0..50 {
        let mut rng = seeded(seed);
        let values: Vec<f64> = laws
            .iter()
            .map(|l| penbench::distributions::Distribution::sample(l, &mut rng))
            .collect();
        let samples: Vec<f64> = laws
            .iter()
            .map(|l| penbench::distributions::Distribution::sample(l, &mut rng))
            .collect();
        let none = Information::Nothing;
        check(&values, &none, &mut plan.first());
        check(&values, &none, &mut plan.second(&mut rng));
        check(&values, &none, &mut plan.mixture(&mut rng));
        check(&values, &none, &mut plan.refined(&mut rng).unwrap());
        check(&values, &none, &mut profile.strategy(&mut rng));
        check(
            &values,
            &none,
            &mut single_sample_prophet(&samples, &mut rng).unwrap(),
        );
    }
}
