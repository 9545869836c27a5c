use serde::{Deserialize, Serialize};

use crate::affine::AffineFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RankingClass {
    Lrf,
    Bms,
    Bg,
    Adfg,
}

impl RankingClass {
    pub fn tag(self) -> &'static str {
        match self {
            RankingClass::Lrf => "lrf",
            RankingClass::Bms => "bms",
            RankingClass::Bg => "bg",
            RankingClass::Adfg => "adfg",
        }
    }

    pub fn from_tag(s: &str) -> Option<RankingClass> {
        match s {
            "lrf" => Some(RankingClass::Lrf),
            "bms" => Some(RankingClass::Bms),
            "bg" => Some(RankingClass::Bg),
            "adfg" => Some(RankingClass::Adfg),
            _ => None,
        }
    }
}

/// `⟨ρ₁, …, ρ_d⟩`. For path-level classes `assignment[ℓ]` is the (0-based)
/// component ranking path `ℓ`, `None` for empty paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexRankingFunction {
    pub components: Vec<AffineFunction>,
    pub class: RankingClass,
    pub assignment: Option<Vec<Option<usize>>>,
}

impl LexRankingFunction {
    pub fn new(
        components: Vec<AffineFunction>,
        class: RankingClass,
        assignment: Option<Vec<Option<usize>>>,
    ) -> LexRankingFunction {
        LexRankingFunction { components, class, assignment }
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    /// Paths ranked by component `i` according to the assignment.
    pub fn ranked_by(&self, i: usize) -> Vec<usize> {
        match &self.assignment {
            Some(a) => (0..a.len()).filter(|&l| a[l] == Some(i)).collect(),
            None => Vec::new(),
        }
    }
}
