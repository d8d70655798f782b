//! Shared text-environment contract: actions, observations, transcripts,
//! step accounting, and the [`Environment`] trait all task families implement.
//!
//! Every interaction with an environment is one [`Environment::step`] call and
//! consumes exactly one step of the budget, including malformed commands and
//! query-style commands such as `Check`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Observation returned for any command the family grammar cannot parse.
pub const INVALID_ACTION_OBSERVATION: &str =
    "Invalid action. Type 'Help' for available actions.";

/// Errors surfaced by environment construction and stepping.
#[derive(Debug, Error)]
pub enum EnvError {
    #[error("invalid task: family '{family}' has no variant '{variant}'")]
    InvalidTask { family: String, variant: String },
    #[error("invalid task spec: {0}")]
    InvalidSpec(String),
    #[error("episode is already done; no further steps are accepted")]
    EpisodeDone,
    #[error("action text must be a non-empty single line")]
    MalformedAction,
}

/// A single-line command as emitted by an agent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionText(String);

impl ActionText {
    /// Builds an action, rejecting empty or multi-line text.
    pub fn new(raw: impl Into<String>) -> Result<Self, EnvError> {
        let raw = raw.into();
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.contains('\n') || trimmed.contains('\r') {
            return Err(EnvError::MalformedAction);
        }
        Ok(ActionText(trimmed.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for ActionText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Observation text; a deterministic function of (hidden state, action, seed).
pub type ObservationText = String;

/// One (action, observation) pair in a transcript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub action: ActionText,
    pub observation: ObservationText,
}

/// Append-only record of every interaction in an episode, plus history-reset
/// markers used by the agent layer. Markers never erase entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
    /// Indices into `entries`: a marker sits immediately before `entries[i]`.
    markers: Vec<usize>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, action: ActionText, observation: ObservationText) {
        self.entries.push(TranscriptEntry { action, observation });
    }

    /// Marks a history boundary at the current position.
    pub fn place_marker(&mut self) {
        self.markers.push(self.entries.len());
    }

    pub fn steps_used(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    pub fn markers(&self) -> &[usize] {
        &self.markers
    }

    /// Entries recorded after the most recent marker (all entries if none).
    pub fn since_last_marker(&self) -> &[TranscriptEntry] {
        let from = self.markers.last().copied().unwrap_or(0);
        &self.entries[from..]
    }

    /// Serializes as JSON Lines, one record per step:
    /// `{"i": <index>, "a": <action>, "o": <observation>, "marker": <bool>}`
    /// where `marker` says a history reset sits immediately before entry `i`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (i, entry) in self.entries.iter().enumerate() {
            let rec = serde_json::json!({
                "i": i,
                "a": entry.action.as_str(),
                "o": entry.observation,
                "marker": self.markers.contains(&i),
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the JSON Lines form produced by [`Transcript::to_jsonl`].
    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        #[derive(Deserialize)]
        struct Rec {
            #[allow(dead_code)]
            i: usize,
            a: String,
            o: String,
            marker: bool,
        }
        let mut t = Transcript::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let rec: Rec = serde_json::from_str(line)?;
            if rec.marker {
                t.place_marker();
            }
            t.entries.push(TranscriptEntry {
                action: ActionText(rec.a),
                observation: rec.o,
            });
        }
        Ok(t)
    }
}

/// Result of one environment step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepOutcome {
    pub observation: ObservationText,
    pub done: bool,
    pub success: bool,
    pub budget_exhausted: bool,
}

/// Family-specific hidden state and command semantics.
///
/// Implementations parse one command against their grammar and mutate hidden
/// state; the shared [`Episode`] wrapper owns budgets, transcripts, the
/// universal `Help` action, and the invalid-action fallback.
pub trait World {
    /// Natural-language domain description: goal, action menu, and for
    /// perturbed variants no disclosure of the perturbation. Stable for the
    /// whole episode.
    fn describe(&self) -> String;

    /// One-sentence goal statement (the "Your task is to: ..." form).
    fn goal_text(&self) -> String;

    /// Numbered action menu, also returned by the universal `Help` action.
    fn action_menu(&self) -> String;

    /// Current observable state rendered as the family's Check output.
    fn state_summary(&self) -> String;

    /// Parses and applies one command. `Err(())` means the command does not
    /// match the family grammar; the caller substitutes the invalid-action
    /// observation. The step is charged either way.
    fn apply(&mut self, command: &str) -> Result<ObservationText, ()>;

    /// Whether the task's success condition currently holds.
    fn succeeded(&self) -> bool;
}

/// The uniform environment surface used by agents and the harness.
pub trait Environment {
    fn describe(&self) -> String;
    fn goal_text(&self) -> String;
    fn state_summary(&self) -> String;
    fn step(&mut self, action: &ActionText) -> Result<StepOutcome, EnvError>;
    fn reset_history_marker(&mut self);
    fn transcript(&self) -> &Transcript;
    fn history_since_marker(&self) -> &[TranscriptEntry];
    fn steps_used(&self) -> usize;
    fn step_budget(&self) -> usize;
    fn is_done(&self) -> bool;
    fn is_success(&self) -> bool;
}

/// Generic episode driver wrapping a family [`World`].
///
/// Owns the step budget, success latching, transcript, and history markers.
pub struct Episode<W: World> {
    world: W,
    transcript: Transcript,
    step_budget: usize,
    done: bool,
    success: bool,
}

impl<W: World> Episode<W> {
    pub fn new(world: W, step_budget: usize) -> Self {
        Episode {
            world,
            transcript: Transcript::new(),
            step_budget,
            done: false,
            success: false,
        }
    }

    pub fn world(&self) -> &W {
        &self.world
    }
}

impl<W: World> Environment for Episode<W> {
    fn describe(&self) -> String {
        self.world.describe()
    }

    fn goal_text(&self) -> String {
        self.world.goal_text()
    }

    fn state_summary(&self) -> String {
        self.world.state_summary()
    }

    fn step(&mut self, action: &ActionText) -> Result<StepOutcome, EnvError> {
        if self.done {
            return Err(EnvError::EpisodeDone);
        }
        let command = action.as_str();
        let observation = if command.trim().eq_ignore_ascii_case("help") {
            self.world.action_menu()
        } else {
            self.world
                .apply(command)
                .unwrap_or_else(|_| INVALID_ACTION_OBSERVATION.to_string())
        };
        self.transcript.push(action.clone(), observation.clone());
        self.success = self.world.succeeded();
        let exhausted = self.transcript.steps_used() >= self.step_budget && !self.success;
        self.done = self.success || self.transcript.steps_used() >= self.step_budget;
        Ok(StepOutcome {
            observation,
            done: self.done,
            success: self.success,
            budget_exhausted: exhausted,
        })
    }

    fn reset_history_marker(&mut self) {
        self.transcript.place_marker();
    }

    fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    fn history_since_marker(&self) -> &[TranscriptEntry] {
        self.transcript.since_last_marker()
    }

    fn steps_used(&self) -> usize {
        self.transcript.steps_used()
    }

    fn step_budget(&self) -> usize {
        self.step_budget
    }

    fn is_done(&self) -> bool {
        self.done
    }

    fn is_success(&self) -> bool {
        self.success
    }
}

/// Formats a coordinate with two decimals, normalizing negative zero so small
/// negative roundoff never prints as "-0.00".
pub(crate) fn fmt2(v: f64) -> String {
    let rounded = (v * 100.0).round() / 100.0;
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:.2}")
}

#[cfg(test)]
mod tests {
    use super::*;

    struct EchoWorld {
        wins_on: &'static str,
        won: bool,
    }

    impl World for EchoWorld {
        fn describe(&self) -> String {
            "echo world".into()
        }
        fn goal_text(&self) -> String {
            "say the magic word".into()
        }
        fn action_menu(&self) -> String {
            "1) say <word>\n2) Help: View the available action options.".into()
        }
        fn state_summary(&self) -> String {
            format!("won: {}", self.won)
        }
        fn apply(&mut self, command: &str) -> Result<ObservationText, ()> {
            let word = command.strip_prefix("say ").ok_or(())?;
            if word == self.wins_on {
                self.won = true;
            }
            Ok(format!("you said {word}"))
        }
        fn succeeded(&self) -> bool {
            self.won
        }
    }

    fn episode(budget: usize) -> Episode<EchoWorld> {
        Episode::new(
            EchoWorld {
                wins_on: "xyzzy",
                won: false,
            },
            budget,
        )
    }

    fn act(s: &str) -> ActionText {
        ActionText::new(s).unwrap()
    }

    #[test]
    fn action_text_rejects_empty_and_multiline() {
        assert!(ActionText::new("").is_err());
        assert!(ActionText::new("   ").is_err());
        assert!(ActionText::new("a\nb").is_err());
        assert_eq!(ActionText::new("  Move 1 2  ").unwrap().as_str(), "Move 1 2");
    }

    #[test]
    fn invalid_actions_consume_a_step() {
        let mut env = episode(10);
        let out = env.step(&act("frobnicate")).unwrap();
        assert_eq!(out.observation, INVALID_ACTION_OBSERVATION);
        assert!(!out.done);
        assert_eq!(env.steps_used(), 1);
    }

    #[test]
    fn help_is_universal_and_counts() {
        let mut env = episode(10);
        let out = env.step(&act("HELP")).unwrap();
        assert!(out.observation.contains("Help: View the available action options."));
        assert_eq!(env.steps_used(), 1);
    }

    #[test]
    fn budget_exhaustion_sets_done() {
        let mut env = episode(3);
        env.step(&act("say a")).unwrap();
        env.step(&act("say b")).unwrap();
        let out = env.step(&act("say c")).unwrap();
        assert!(out.done && out.budget_exhausted && !out.success);
        assert!(matches!(env.step(&act("say d")), Err(EnvError::EpisodeDone)));
    }

    #[test]
    fn success_latches_and_refuses_further_steps() {
        let mut env = episode(10);
        let out = env.step(&act("say xyzzy")).unwrap();
        assert!(out.success && out.done && !out.budget_exhausted);
        assert!(matches!(env.step(&act("say again")), Err(EnvError::EpisodeDone)));
        assert_eq!(env.steps_used(), 1);
    }

    #[test]
    fn success_on_final_budgeted_step_is_not_exhaustion() {
        let mut env = episode(1);
        let out = env.step(&act("say xyzzy")).unwrap();
        assert!(out.success && out.done && !out.budget_exhausted);
    }

    #[test]
    fn markers_do_not_consume_steps_or_entries() {
        let mut env = episode(10);
        env.step(&act("say a")).unwrap();
        let before = env.steps_used();
        env.reset_history_marker();
        assert_eq!(env.steps_used(), before);
        env.step(&act("say b")).unwrap();
        env.step(&act("say c")).unwrap();
        assert_eq!(env.history_since_marker().len(), 2);
        env.reset_history_marker();
        assert!(env.history_since_marker().is_empty());
    }

    #[test]
    fn transcript_jsonl_round_trip_preserves_markers() {
        let mut t = Transcript::new();
        t.push(act("say a"), "you said a".into());
        t.place_marker();
        t.push(act("say b"), "you said b".into());
        t.push(act("say c"), "you said c".into());
        let text = t.to_jsonl();
        let back = Transcript::from_jsonl(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.since_last_marker().len(), 2);
    }

    #[test]
    fn fmt2_normalizes_negative_zero() {
        assert_eq!(fmt2(-1e-13), "0.00");
        assert_eq!(fmt2(-0.968246), "-0.97");
        assert_eq!(fmt2(2.0), "2.00");
        assert_eq!(fmt2(-0.004), "0.00");
    }
}
