//! The online pen testing game.
//!
//! A game is played over `n` hidden values `X_1, ..., X_n >= 0`, revealed to the
//! referee one step at a time. At each step the player may run a finite sequence of
//! tests and then accepts or rejects the option. Tests are cumulative: after tests at
//! `t_1, ..., t_m` the option has been tested at `c = t_1 + ... + t_m`. A test passes
//! iff `X_i > c`, which is the only bit the player learns; otherwise it fails
//! (`X_i <= c`), the player observes `X_i` exactly and the option is worthless.
//! Accepting ends the game with score `max(X_i - c, 0)`. Rejecting the last option
//! ends the game with score zero.
//!
//! [`Session`] is the referee state machine and can be driven by hand;
//! [`play`] drives a session with a [`Strategy`].

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the number of tests a strategy may issue within one step.
pub const DEFAULT_TEST_CAP: usize = 64;

/// A test threshold in `[0, +inf]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Threshold(f64);

impl Threshold {
    pub const ZERO: Threshold = Threshold(0.0);
    /// Observe the value at the cost of all remaining utility.
    pub const INFINITE: Threshold = Threshold(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::validation(format!(
                "threshold must lie in [0, +inf], got {value}"
            )));
        }
        Ok(Threshold(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ThresholdVisitor;

        impl Visitor<'_> for ThresholdVisitor {
            type Value = Threshold;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Threshold, E> {
                Threshold::new(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Threshold, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Threshold, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Threshold, E> {
                match v {
                    "inf" | "+inf" | "infinity" => Ok(Threshold::INFINITE),
                    other => Err(E::custom(format!("unexpected threshold string {other:?}"))),
                }
            }
        }

        deserializer.deserialize_any(ThresholdVisitor)
    }
}

/// Result of a single test, as seen by the player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepOutcome {
    /// The value exceeds the cumulative threshold. No numeric payload.
    Pass,
    /// The value is at most the cumulative threshold and is now known.
    Fail { observed: f64 },
}

impl StepOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, StepOutcome::Pass)
    }

    pub fn observed(&self) -> Option<f64> {
        match *self {
            StepOutcome::Pass => None,
            StepOutcome::Fail { observed } => Some(observed),
        }
    }
}

/// What a strategy asks the referee to do next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    /// Test again; the argument is the increment added to the cumulative threshold.
    Test(f64),
    Accept,
    Reject,
}

impl Action {
    /// Test at `+inf`: learn the value, keep nothing.
    pub fn observe() -> Action {
        Action::Test(f64::INFINITY)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
}

/// The information payload a game is played under, fixed at game start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "regime", content = "payload", rename_all = "lowercase")]
pub enum Information {
    #[default]
    Nothing,
    /// The maximum of the hidden values.
    Optimum(f64),
    /// An estimate of the maximum.
    Hint(f64),
    /// The full multiset of values, sorted ascending.
    Full(Vec<f64>),
}

impl Information {
    /// Full information with the multiset sorted ascending.
    pub fn full(values: &[f64]) -> Information {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Information::Full(sorted)
    }
}

/// Public context handed to a strategy at every callback.
#[derive(Debug, Clone, Copy)]
pub struct StepContext<'a> {
    pub n: usize,
    /// 1-based index of the current option.
    pub index: usize,
    pub info: &'a Information,
}

/// The player. Sees only `n`, the step index, the information payload and test outcomes.
pub trait Strategy {
    /// Called when option `ctx.index` arrives.
    fn begin_step(&mut self, ctx: &StepContext<'_>) -> Action;

    /// Called after every test of the current option.
    fn on_outcome(&mut self, ctx: &StepContext<'_>, outcome: StepOutcome) -> Action;
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn begin_step(&mut self, ctx: &StepContext<'_>) -> Action {
        (**self).begin_step(ctx)
    }

    fn on_outcome(&mut self, ctx: &StepContext<'_>, outcome: StepOutcome) -> Action {
        (**self).on_outcome(ctx, outcome)
    }
}

impl<S: Strategy + ?Sized> Strategy for &mut S {
    fn begin_step(&mut self, ctx: &StepContext<'_>) -> Action {
        (**self).begin_step(ctx)
    }

    fn on_outcome(&mut self, ctx: &StepContext<'_>, outcome: StepOutcome) -> Action {
        (**self).on_outcome(ctx, outcome)
    }
}

/// Publicly visible bookkeeping of the open step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepState {
    /// 1-based index of the open step.
    pub index: usize,
    /// Sum of all thresholds tested so far in this step.
    pub cumulative_spent: f64,
    /// A test has failed in this step.
    pub exhausted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestRecord {
    pub threshold: Threshold,
    pub outcome: StepOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct StepSpan {
    index: usize,
    start: usize,
    len: usize,
    decision: Decision,
}

/// Borrowed view of one step of a transcript.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepView<'a> {
    pub index: usize,
    pub tests: &'a [TestRecord],
    pub decision: Decision,
}

impl StepView<'_> {
    /// Total threshold spent on this option.
    pub fn spent(&self) -> f64 {
        self.tests.iter().map(|t| t.threshold.value()).sum()
    }
}

/// Complete per-step record of a game. Stored flat; serialized as one object per step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Transcript {
    tests: Vec<TestRecord>,
    steps: Vec<StepSpan>,
}

impl Transcript {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> impl Iterator<Item = StepView<'_>> + '_ {
        self.steps.iter().map(move |s| StepView {
            index: s.index,
            tests: &self.tests[s.start..s.start + s.len],
            decision: s.decision,
        })
    }

    pub fn step(&self, index: usize) -> Option<StepView<'_>> {
        self.steps().find(|s| s.index == index)
    }

    /// Re-run the recorded actions against `values` and check every outcome matches.
    pub fn replay(&self, values: &[f64]) -> Result<GameResult> {
        let mut session = Session::new(values.len(), usize::MAX)?;
        for step in self.steps() {
            let value = *values.get(step.index - 1).ok_or_else(|| {
                Error::contract(format!("transcript step {} beyond instance", step.index))
            })?;
            session.open(value)?;
            for test in step.tests {
                let outcome = session.test(test.threshold.value())?;
                if outcome != test.outcome {
                    return Err(Error::contract(format!(
                        "replay diverged at step {}: recorded {:?}, got {:?}",
                        step.index, test.outcome, outcome
                    )));
                }
            }
            match step.decision {
                Decision::Accept => {
                    session.accept()?;
                }
                Decision::Reject => session.reject()?,
            }
        }
        session.finish()
    }

    fn push_test(&mut self, record: TestRecord) {
        self.tests.push(record);
    }

    fn close_step(&mut self, index: usize, first_test: usize, decision: Decision) {
        self.steps.push(StepSpan {
            index,
            start: first_test,
            len: self.tests.len() - first_test,
            decision,
        });
    }
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    index: usize,
    thresholds: Vec<Threshold>,
    outcomes: Vec<StepOutcome>,
    decision: Decision,
}

impl Serialize for Transcript {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for step in self.steps() {
            seq.serialize_element(&StepJson {
                index: step.index,
                thresholds: step.tests.iter().map(|t| t.threshold).collect(),
                outcomes: step.tests.iter().map(|t| t.outcome).collect(),
                decision: step.decision,
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Transcript {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let steps = Vec::<StepJson>::deserialize(deserializer)?;
        let mut transcript = Transcript::default();
        for step in steps {
            if step.thresholds.len() != step.outcomes.len() {
                return Err(de::Error::custom(format!(
                    "step {}: {} thresholds but {} outcomes",
                    step.index,
                    step.thresholds.len(),
                    step.outcomes.len()
                )));
            }
            let first = transcript.tests.len();
            for (threshold, outcome) in step.thresholds.into_iter().zip(step.outcomes) {
                transcript.push_test(TestRecord { threshold, outcome });
            }
            transcript.close_step(step.index, first, step.decision);
        }
        Ok(transcript)
    }
}

/// Outcome of a completed game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameResult {
    pub n: usize,
    pub score: f64,
    /// 1-based index of the accepted option.
    pub accepted_index: Option<usize>,
    /// True value of the accepted option, recorded by the referee after the game.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accepted_value: Option<f64>,
    pub transcript: Transcript,
}

impl GameResult {
    /// Re-derive the score from the transcript: `max(X_a - sum of thresholds at a, 0)`.
    pub fn check_score_identity(&self) -> Result<()> {
        let expected = match (self.accepted_index, self.accepted_value) {
            (None, _) => 0.0,
            (Some(a), Some(x)) => {
                let step = self.transcript.step(a).ok_or_else(|| {
                    Error::Assertion(format!("accepted step {a} missing from transcript"))
                })?;
                (x - step.spent()).max(0.0)
            }
            (Some(a), None) => {
                return Err(Error::Assertion(format!(
                    "accepted step {a} has no recorded value"
                )))
            }
        };
        if expected != self.score {
            return Err(Error::Assertion(format!(
                "score identity violated: score {} but transcript implies {}",
                self.score, expected
            )));
        }
        if let Some(a) = self.accepted_index {
            if self.transcript.steps().any(|s| s.index > a) {
                return Err(Error::Assertion("steps recorded after acceptance".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    /// Waiting for the referee to open the next option.
    Between,
    Open,
    Finished,
}

/// Referee state machine for one game.
#[derive(Debug, Clone)]
pub struct Session {
    n: usize,
    test_cap: usize,
    phase: Phase,
    index: usize,
    value: f64,
    spent: f64,
    exhausted: bool,
    tests_this_step: usize,
    first_test: usize,
    score: f64,
    accepted: Option<(usize, f64)>,
    transcript: Transcript,
}

impl Session {
    pub fn new(n: usize, test_cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("a game needs at least one option"));
        }
        Ok(Session {
            n,
            test_cap,
            phase: Phase::Between,
            index: 0,
            value: 0.0,
            spent: 0.0,
            exhausted: false,
            tests_this_step: 0,
            first_test: 0,
            score: 0.0,
            accepted: None,
            transcript: Transcript::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_finished(&self) -> bool {
        self.phase == Phase::Finished
    }

    /// Bookkeeping of the open step, if any.
    pub fn step_state(&self) -> Option<StepState> {
        (self.phase == Phase::Open).then_some(StepState {
            index: self.index,
            cumulative_spent: self.spent,
            exhausted: self.exhausted,
        })
    }

    /// Reveal the next hidden value to the referee and open its step.
    pub fn open(&mut self, value: f64) -> Result<usize> {
        match self.phase {
            Phase::Finished => return Err(Error::contract("game already ended")),
            Phase::Open => return Err(Error::contract("previous step not decided")),
            Phase::Between => {}
        }
        if self.index >= self.n {
            return Err(Error::contract("all options already presented"));
        }
        if value.is_nan() || value < 0.0 {
            return Err(Error::validation(format!(
                "option values must be nonnegative, got {value}"
            )));
        }
        self.index += 1;
        self.value = value;
        self.spent = 0.0;
        self.exhausted = false;
        self.tests_this_step = 0;
        self.first_test = self.transcript.tests.len();
        self.phase = Phase::Open;
        Ok(self.index)
    }

    fn require_open(&self, what: &str) -> Result<()> {
        match self.phase {
            Phase::Open => Ok(()),
            Phase::Finished => Err(Error::contract(format!("{what} after the game ended"))),
            Phase::Between => Err(Error::contract(format!("{what} with no open step"))),
        }
    }

    /// Test the open option, raising the cumulative threshold by `theta`.
    pub fn test(&mut self, theta: f64) -> Result<StepOutcome> {
        self.require_open("test")?;
        let threshold = Threshold::new(theta)?;
        if self.tests_this_step >= self.test_cap {
            return Err(Error::contract(format!(
                "more than {} tests in step {}",
                self.test_cap, self.index
            )));
        }
        self.tests_this_step += 1;
        self.spent += threshold.value();
        let outcome = if self.exhausted || self.value <= self.spent {
            self.exhausted = true;
            StepOutcome::Fail {
                observed: self.value,
            }
        } else {
            StepOutcome::Pass
        };
        self.transcript.push_test(TestRecord { threshold, outcome });
        Ok(outcome)
    }

    /// Accept the open option; returns the score.
    pub fn accept(&mut self) -> Result<f64> {
        self.require_open("accept")?;
        self.score = if self.exhausted {
            0.0
        } else {
            (self.value - self.spent).max(0.0)
        };
        self.accepted = Some((self.index, self.value));
        self.transcript
            .close_step(self.index, self.first_test, Decision::Accept);
        self.phase = Phase::Finished;
        Ok(self.score)
    }

    pub fn reject(&mut self) -> Result<()> {
        self.require_open("reject")?;
        self.transcript
            .close_step(self.index, self.first_test, Decision::Reject);
        self.phase = if self.index == self.n {
            Phase::Finished
        } else {
            Phase::Between
        };
        Ok(())
    }

    /// Consume a finished session.
    pub fn finish(self) -> Result<GameResult> {
        if self.phase != Phase::Finished {
            return Err(Error::contract(format!(
                "game not finished: {} of {} steps decided",
                self.transcript.len(),
                self.n
            )));
        }
        Ok(GameResult {
            n: self.n,
            score: self.score,
            accepted_index: self.accepted.map(|(i, _)| i),
            accepted_value: self.accepted.map(|(_, x)| x),
            transcript: self.transcript,
        })
    }

    #[cfg(test)]
    fn remaining_utility(&self) -> f64 {
        if self.exhausted {
            0.0
        } else {
            (self.value - self.spent).max(0.0)
        }
    }
}

/// Engine knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameConfig {
    pub test_cap: usize,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            test_cap: DEFAULT_TEST_CAP,
        }
    }
}

/// Play one game with the default configuration.
///
/// `values` is consumed lazily: options after the accepted one are never drawn.
pub fn play<I>(values: I, info: &Information, strategy: &mut dyn Strategy) -> Result<GameResult>
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: ExactSizeIterator,
{
    play_with(values, info, strategy, &GameConfig::default())
}

pub fn play_with<I>(
    values: I,
    info: &Information,
    strategy: &mut dyn Strategy,
    config: &GameConfig,
) -> Result<GameResult>
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: ExactSizeIterator,
{
    let values = values.into_iter();
    let n = values.len();
    let mut session = Session::new(n, config.test_cap)?;
    for value in values {
        let index = session.open(value)?;
        let ctx = StepContext { n, index, info };
        let mut action = strategy.begin_step(&ctx);
        loop {
            match action {
                Action::Test(theta) => {
                    let outcome = session.test(theta)?;
                    action = strategy.on_outcome(&ctx, outcome);
                }
                Action::Accept => {
                    session.accept()?;
                    return session.finish();
                }
                Action::Reject => {
                    session.reject()?;
                    break;
                }
            }
        }
    }
    session.finish()
}
