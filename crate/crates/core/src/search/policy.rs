use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Which null-move scheme governs the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PruningPolicy {
    /// Plain NegaScout, no null moves.
    NoNull,
    /// Cut off as soon as the reduced null-move search fails high.
    Standard { r: u8 },
    /// On a fail-high, reduce the depth by one ply and keep searching with
    /// standard pruning below; re-search at full depth if the node turns out
    /// to be a zugzwang.
    Verified { r: u8 },
    /// Never cut off on a fail-high; reduce the depth by two plies instead.
    VariantNoCutoffReduce2 { r: u8 },
    /// Never cut off anywhere; reduce the depth by one ply on every fail-high.
    VariantReduceOneEverywhere { r: u8 },
    /// Reduce by one ply at verified nodes, by two plies (instead of cutting
    /// off) inside their subtrees.
    VariantReduceOneThenTwo { r: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("unknown pruning policy '{0}' (expected nonull, std, verified, var-nocut2, var-reduce1 or var-reduce12)")]
    UnknownName(String),
    #[error("invalid depth reduction '{0}': must be an integer >= 1")]
    BadReduction(String),
    #[error("policy 'nonull' takes no depth reduction")]
    ReductionOnNoNull,
}

impl PruningPolicy {
    pub const fn standard(r: u8) -> PruningPolicy {
        PruningPolicy::Standard { r }
    }

    pub const fn verified(r: u8) -> PruningPolicy {
        PruningPolicy::Verified { r }
    }

    /// Builds a policy from its family name and an optional R; families that
    /// need an R default to the verified setting of 3.
    pub fn from_parts(name: &str, r: Option<u8>) -> Result<PruningPolicy, PolicyError> {
        if let Some(0) = r {
            return Err(PolicyError::BadReduction("0".into()));
        }
        let r_or = |default| r.unwrap_or(default);
        let policy = match name.to_ascii_lowercase().as_str() {
            "nonull" | "none" => {
                if r.is_some() {
                    return Err(PolicyError::ReductionOnNoNull);
                }
                PruningPolicy::NoNull
            }
            "std" | "standard" => PruningPolicy::Standard { r: r_or(2) },
            "verified" | "vrfd" => PruningPolicy::Verified { r: r_or(3) },
            "var-nocut2" => PruningPolicy::VariantNoCutoffReduce2 { r: r_or(3) },
            "var-reduce1" => PruningPolicy::VariantReduceOneEverywhere { r: r_or(3) },
            "var-reduce12" => PruningPolicy::VariantReduceOneThenTwo { r: r_or(3) },
            other => return Err(PolicyError::UnknownName(other.to_string())),
        };
        Ok(policy)
    }

    /// The null-move depth reduction R, or `None` when null moves are off.
    pub const fn reduction(self) -> Option<u8> {
        match self {
            PruningPolicy::NoNull => None,
            PruningPolicy::Standard { r }
            | PruningPolicy::Verified { r }
            | PruningPolicy::VariantNoCutoffReduce2 { r }
            | PruningPolicy::VariantReduceOneEverywhere { r }
            | PruningPolicy::VariantReduceOneThenTwo { r } => Some(r),
        }
    }

    /// Whether the search carries a `verify` flag that starts out true at
    /// the root.
    pub const fn uses_verification(self) -> bool {
        matches!(
            self,
            PruningPolicy::Verified { .. } | PruningPolicy::VariantReduceOneThenTwo { .. }
        )
    }

    pub const fn family(self) -> &'static str {
        match self {
            PruningPolicy::NoNull => "nonull",
            PruningPolicy::Standard { .. } => "std",
            PruningPolicy::Verified { .. } => "verified",
            PruningPolicy::VariantNoCutoffReduce2 { .. } => "var-nocut2",
            PruningPolicy::VariantReduceOneEverywhere { .. } => "var-reduce1",
            PruningPolicy::VariantReduceOneThenTwo { .. } => "var-reduce12",
        }
    }

    /// Column heading used in text reports, e.g. `Std R=2`, `Vrfd R=3`.
    pub fn label(self) -> String {
        match self {
            PruningPolicy::NoNull => "No null".to_string(),
            PruningPolicy::Standard { r } => format!("Std R={r}"),
            PruningPolicy::Verified { r } => format!("Vrfd R={r}"),
            PruningPolicy::VariantNoCutoffReduce2 { r } => format!("NoCut-2 R={r}"),
            PruningPolicy::VariantReduceOneEverywhere { r } => format!("Red-1 R={r}"),
            PruningPolicy::VariantReduceOneThenTwo { r } => format!("Red-1/2 R={r}"),
        }
    }
}

impl Default for PruningPolicy {
    fn default() -> Self {
        PruningPolicy::Verified { r: 3 }
    }
}

/// `nonull`, or `<family>:<R>` such as `std:2` and `verified:3`.
impl fmt::Display for PruningPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reduction() {
            None => f.write_str(self.family()),
            Some(r) => write!(f, "{}:{r}", self.family()),
        }
    }
}

impl serde::Serialize for PruningPolicy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for PruningPolicy {
    type Err = PolicyError;

    /// Accepts `nonull`, `std:2`, `verified:3`, and the shorthands `std2`,
    /// `vrfd3`; a missing R takes the family default.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((name, r)) = s.split_once(':') {
            let r: u8 = r
                .trim()
                .parse()
                .map_err(|_| PolicyError::BadReduction(r.to_string()))?;
            return PruningPolicy::from_parts(name.trim(), Some(r));
        }
        let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        if digits > 0 && !s.starts_with("var-") {
            let (name, r) = s.split_at(s.len() - digits);
            let r: u8 = r.parse().map_err(|_| PolicyError::BadReduction(r.to_string()))?;
            return PruningPolicy::from_parts(name, Some(r));
        }
        PruningPolicy::from_parts(s, None)
    }
}
