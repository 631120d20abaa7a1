use core::cmp::Ordering;
use core::fmt;

/// A shortest-path distance, or the absence of any path.
///
/// `Unreachable` compares greater than every finite distance, so `min` and
/// `max` over mixed values behave like arithmetic on `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Dist {
    Finite(u32),
    #[default]
    Unreachable,
}

impl Dist {
    pub const ZERO: Dist = Dist::Finite(0);

    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    #[inline]
    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Unreachable => None,
        }
    }

    /// Adds an edge weight. Panics if the sum leaves `u32`, which would mean
    /// the graph's weights are out of the supported range.
    #[inline]
    pub fn plus(self, w: u32) -> Dist {
        match self {
            Dist::Finite(d) => Dist::Finite(d.checked_add(w).expect("distance overflow")),
            Dist::Unreachable => Dist::Unreachable,
        }
    }

    #[inline]
    pub fn sum(self, other: Dist) -> Dist {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => {
                Dist::Finite(a.checked_add(b).expect("distance overflow"))
            }
            _ => Dist::Unreachable,
        }
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => a.cmp(b),
            (Dist::Finite(_), Dist::Unreachable) => Ordering::Less,
            (Dist::Unreachable, Dist::Finite(_)) => Ordering::Greater,
            (Dist::Unreachable, Dist::Unreachable) => Ordering::Equal,
        }
    }
}

impl From<u32> for Dist {
    fn from(d: u32) -> Self {
        Dist::Finite(d)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Unreachable => f.write_str("inf"),
        }
    }
}
