//! Task identification: family, variant, seed, and step budget.
//!
//! The benchmark evaluates exactly eleven (family, variant) combinations:
//! arm and nav each in basic/perturbed form, color in basic/contaminated/
//! wronglabel form, and the two block-stacking sizes each in basic/perturbed
//! form. Any other pair is rejected at construction.

use serde::{Deserialize, Serialize};

use crate::core::EnvError;

pub const DEFAULT_STEP_BUDGET: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Arm,
    Nav,
    Color,
    Blocks,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Arm => "arm",
            Family::Nav => "nav",
            Family::Color => "color",
            Family::Blocks => "blocks",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Task variant. Block stacking carries its size in the variant name because
/// single/multiple each come in a basic and a perturbed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "basic")]
    Basic,
    #[serde(rename = "perturbed")]
    Perturbed,
    #[serde(rename = "contaminated")]
    Contaminated,
    #[serde(rename = "wronglabel")]
    WrongLabel,
    #[serde(rename = "single_basic")]
    SingleBasic,
    #[serde(rename = "single_perturbed")]
    SinglePerturbed,
    #[serde(rename = "multiple_basic")]
    MultipleBasic,
    #[serde(rename = "multiple_perturbed")]
    MultiplePerturbed,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Perturbed => "perturbed",
            Variant::Contaminated => "contaminated",
            Variant::WrongLabel => "wronglabel",
            Variant::SingleBasic => "single_basic",
            Variant::SinglePerturbed => "single_perturbed",
            Variant::MultipleBasic => "multiple_basic",
            Variant::MultiplePerturbed => "multiple_perturbed",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All eleven valid (family, variant) combinations.
pub const ALL_TASKS: [(Family, Variant); 11] = [
    (Family::Arm, Variant::Basic),
    (Family::Arm, Variant::Perturbed),
    (Family::Nav, Variant::Basic),
    (Family::Nav, Variant::Perturbed),
    (Family::Color, Variant::Basic),
    (Family::Color, Variant::Contaminated),
    (Family::Color, Variant::WrongLabel),
    (Family::Blocks, Variant::SingleBasic),
    (Family::Blocks, Variant::SinglePerturbed),
    (Family::Blocks, Variant::MultipleBasic),
    (Family::Blocks, Variant::MultiplePerturbed),
];

/// Specification of one task instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub family: Family,
    pub variant: Variant,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub step_budget: usize,
    /// Overrides the seeded actuation offset for the perturbed arm task.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arm_offset: Option<(f64, f64)>,
}

fn default_budget() -> usize {
    DEFAULT_STEP_BUDGET
}

impl TaskSpec {
    pub fn new(family: Family, variant: Variant, seed: u64) -> Result<Self, EnvError> {
        let spec = TaskSpec {
            family,
            variant,
            seed,
            step_budget: DEFAULT_STEP_BUDGET,
            arm_offset: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_budget(mut self, step_budget: usize) -> Self {
        self.step_budget = step_budget;
        self
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        if !ALL_TASKS.contains(&(self.family, self.variant)) {
            return Err(EnvError::InvalidTask {
                family: self.family.to_string(),
                variant: self.variant.to_string(),
            });
        }
        if self.step_budget < 1 {
            return Err(EnvError::InvalidSpec("step_budget must be >= 1".into()));
        }
        Ok(())
    }

    /// Short stable identifier, e.g. `arm/perturbed`.
    pub fn task_id(&self) -> String {
        format!("{}/{}", self.family, self.variant)
    }
}
