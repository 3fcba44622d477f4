//! Play single games by hand with a scripted strategy and inspect the transcript.

use penbench::engine::{play, Action, Information, StepContext, StepOutcome, Strategy};
use penbench::prophet::SingleThreshold;

/// Tests each option at 1, then again at 1 more; accepts after two passes.
struct TwoRungs {
    passes: usize,
}

impl Strategy for TwoRungs {
    fn begin_step(&mut self, _ctx: &StepContext<'_>) -> Action {
        self.passes = 0;
        Action::Test(1.0)
    }

    fn on_outcome(&mut self, _ctx: &StepContext<'_>, outcome: StepOutcome) -> Action {
        if !outcome.passed() {
            return Action::Reject;
        }
        self.passes += 1;
        if self.passes == 2 {
            Action::Accept
        } else {
            Action::Test(1.0)
        }
    }
}

fn main() -> penbench::Result<()> {
    let values = [1.0, 5.0];
    let result = play(
        values,
        &Information::Nothing,
        &mut SingleThreshold::new(2.0),
    )?;
    println!(
        "threshold 2 on (1, 5): score {} at option {:?}",
        result.score, result.accepted_index
    );

    let values = [1.5, 0.5, 3.25];
    let result = play(values, &Information::Nothing, &mut TwoRungs { passes: 0 })?;
    for step in result.transcript.steps() {
        let tests: Vec<String> = step
            .tests
            .iter()
            .map(|t| format!("{} -> {:?}", t.threshold.value(), t.outcome))
            .collect();
        println!(
            "option {}: [{}] then {:?}",
            step.index,
            tests.join(", "),
            step.decision
        );
    }
    println!("score {} (value 3.25 minus spend 2)", result.score);
    result.check_score_identity()?;
    let replay = result.transcript.replay(&values)?;
    assert_eq!(replay.score, result.score);
    println!(
        "transcript JSON: {}",
        serde_json::to_string(&result.transcript).unwrap()
    );
    Ok(())
}
