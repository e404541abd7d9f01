use std::fmt;
use std::str::FromStr;

/// Ceilings for the exhaustive and transfer-matrix methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest edge count scanned subset by subset when computing a
    /// reliability polynomial.
    pub brute_max_edges: usize,
    /// Largest sweep width accepted by the frontier engine.
    pub frontier_max_width: usize,
    /// Largest edge count for direct (subset filter) mincut enumeration.
    pub mincut_max_edges: usize,
    /// Largest edge count for the all-subsets pathset/cutset correspondence check.
    pub exhaustive_max_edges: usize,
}

/// Masks are single machine words.
pub const MASK_EDGES_MAX: usize = 63;

/// Source-joined blocks are tracked in one 64-bit mask and the active
/// points of a sweep step number at most `width + 2`.
pub const FRONTIER_WIDTH_MAX: usize = 60;

impl Default for Limits {
    fn default() -> Self {
        Self {
            brute_max_edges: 24,
            frontier_max_width: 8,
            mincut_max_edges: 20,
            exhaustive_max_edges: 16,
        }
    }
}

/// Which exact engine computes a reliability polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    Brute,
    Frontier,
    /// Brute force when the edge count is within `brute_max_edges`,
    /// frontier otherwise.
    #[default]
    Auto,
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brute" => Ok(Engine::Brute),
            "frontier" => Ok(Engine::Frontier),
            "auto" => Ok(Engine::Auto),
            other => Err(format!("unknown engine `{other}` (expected brute, frontier or auto)")),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Brute => "brute",
            Engine::Frontier => "frontier",
            Engine::Auto => "auto",
        })
    }
}
