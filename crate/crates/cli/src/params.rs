//! Cluster-size presets and generator specs.

use std::str::FromStr;

use minorvc_core::{generate, lower_bound, Graph};

/// Named rules for the cluster size `r` as a function of `n` and `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// `n^{2/(3h−1)}`: undirected eccentricities, Wiener index and oracle.
    Undirected,
    /// `n^{1/(h−2)}`: directed oracle.
    DirectedOracle,
    /// `n^{2/(3h²+6)}`: directed eccentricities.
    DirectedEcc,
    /// `√n`, independent of `h`. The theoretical rules give tiny clusters at
    /// desk-scale `n`; this is the benchmark default.
    Sqrt,
}

impl Preset {
    pub fn exponent(self, h: u32) -> f64 {
        let h = f64::from(h);
        match self {
            Preset::Undirected => 2.0 / (3.0 * h - 1.0),
            Preset::DirectedOracle => 1.0 / (h - 2.0),
            Preset::DirectedEcc => 2.0 / (3.0 * h * h + 6.0),
            Preset::Sqrt => 0.5,
        }
    }

    /// `round(n^exponent)`, at least 1.
    pub fn r(self, n: usize, h: u32) -> usize {
        ((n.max(1) as f64).powf(self.exponent(h)).round() as usize).max(1)
    }
}

/// A named generator with its size parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Grid(usize, usize),
    Path(usize),
    Cycle(usize),
    DirectedCycle(usize),
    Tree(usize),
    Planar(usize),
    /// Random orientation; usually not strongly connected.
    PlanarOriented(usize),
    PlanarStrong(usize),
    /// Lower-bound gadget with `u32` weights (r ≤ 3).
    Gadget(usize),
}

impl FromStr for GenSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| format!("expected KIND:SIZE, got `{s}`"))?;
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad size `{t}` in `{s}`"));
        Ok(match kind {
            "grid" => {
                let (w, h) = arg.split_once('x').ok_or_else(|| format!("grid needs WxH, got `{arg}`"))?;
                GenSpec::Grid(num(w)?, num(h)?)
            }
            "path" => GenSpec::Path(num(arg)?),
            "cycle" => GenSpec::Cycle(num(arg)?),
            "dcycle" => GenSpec::DirectedCycle(num(arg)?),
            "tree" => GenSpec::Tree(num(arg)?),
            "planar" => GenSpec::Planar(num(arg)?),
            "planar-oriented" => GenSpec::PlanarOriented(num(arg)?),
            "planar-strong" => GenSpec::PlanarStrong(num(arg)?),
            "gadget" => GenSpec::Gadget(num(arg)?),
            _ => return Err(format!("unknown generator `{kind}`")),
        })
    }
}

impl GenSpec {
    pub fn build(&self, seed: u64) -> minorvc_core::Result<Graph> {
        match *self {
            GenSpec::Grid(w, h) => generate::grid(w, h),
            GenSpec::Path(n) => generate::path(n),
            GenSpec::Cycle(n) => generate::cycle(n),
            GenSpec::DirectedCycle(n) => generate::directed_cycle(n),
            GenSpec::Tree(n) => generate::random_tree(n, seed),
            GenSpec::Planar(n) => generate::random_planar(n, seed),
            GenSpec::PlanarOriented(n) => generate::orient(&generate::random_planar(n, seed)?, seed),
            GenSpec::PlanarStrong(n) => generate::orient_strong(&generate::random_planar(n, seed)?, seed),
            GenSpec::Gadget(r) => lower_bound::build_gadget(r, 2, None)?.to_graph(),
        }
    }
}
