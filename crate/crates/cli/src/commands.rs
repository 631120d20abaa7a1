//! Subcommand implementations. Each writes its primary output to `out` and
//! reports whether its own verification passed.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use minorvc_core::division::build_r_division;
use minorvc_core::graph::ALL_PAIRS_CAP;
use minorvc_core::lower_bound::{self, Gadget, ShatteringReport};
use minorvc_core::set_system::{self, SetFamily, MAX_VC_CAP};
use minorvc_core::{directed, undirected, Dist, DivisionQuality, Graph};
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::io;
use crate::oracle::{self, AnyOracle, BenchRow};
use crate::params::Preset;
use crate::verify::{par_map, CheckReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Success
        } else {
            Outcome::VerificationFailed
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Stats(a) => stats(&a, out),
        Command::OracleBuild(a) => oracle_build(&a, out),
        Command::OracleQuery(a) => oracle_query(&a, out),
        Command::Vcdim(a) => vcdim(&a, threads, out),
        Command::Lowerbound(a) => lowerbound(&a, out),
        Command::Bench(a) => bench(&a, threads, out),
        Command::Gen(a) => gen(&a, out),
    }
}

fn load_input(a: &InputArgs) -> anyhow::Result<Graph> {
    match (&a.input, &a.gen) {
        (Some(p), None) => Ok(io::read_graph(p)?),
        (None, Some(spec)) => Ok(spec.build(a.seed)?),
        _ => bail!("give exactly one of --input or --gen"),
    }
}

fn resolve_r(d: &DivisionArgs, n: usize, default: Preset) -> usize {
    d.r.map_or_else(|| d.preset.unwrap_or(default).r(n, d.h), |r| r as usize)
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

#[derive(Serialize)]
struct StatsReport {
    n: usize,
    m: usize,
    directed: bool,
    r: usize,
    h: u32,
    division: DivisionQuality,
    diameter: u32,
    ecc: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wiener: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strongly_connected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hypothesis_violations: Option<usize>,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_match: Option<bool>,
}

fn stats(a: &StatsArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let g = load_input(&a.input)?;
    if a.brute && g.n() > ALL_PAIRS_CAP {
        bail!("--brute is limited to n ≤ {ALL_PAIRS_CAP}, got {}", g.n());
    }
    let default = if g.is_directed() { Preset::DirectedEcc } else { Preset::Undirected };
    let r = resolve_r(&a.division, g.n(), default);
    let start = Instant::now();
    let div = build_r_division(&g, r)?;
    if let Some(p) = &a.dump_division {
        write_file(p, &io::format_division(&div))?;
    }
    let (ecc, diameter, wiener, strongly, violations) = if g.is_directed() {
        let res = directed::directed_eccentricities_with(&g, &div)?;
        (res.ecc, res.diameter, None, Some(res.strongly_connected), Some(res.hypothesis_violations))
    } else {
        let res = undirected::eccentricities_with(&g, &div)?;
        let w = undirected::wiener_index_with(&g, &div)?;
        (res.ecc, res.diameter, Some(w), None, None)
    };
    let elapsed_ms = ms(start);
    let brute_match = if a.brute {
        let d = g.all_pairs()?;
        let want: Vec<u32> = (0..g.n()).map(|u| d.row(u).iter().filter_map(|x| x.finite()).max().unwrap_or(0)).collect();
        let mut ok = want == ecc && want.iter().copied().max().unwrap_or(0) == diameter;
        if let Some(w) = wiener {
            ok &= d.finite_sum() / 2 == w;
        }
        Some(ok)
    } else {
        None
    };
    let report = StatsReport {
        n: g.n(),
        m: g.m(),
        directed: g.is_directed(),
        r,
        h: a.division.h,
        division: div.quality(),
        diameter,
        ecc,
        wiener,
        strongly_connected: strongly,
        hypothesis_violations: violations,
        elapsed_ms,
        brute_match,
    };
    serde_json::to_writer(&mut *out, &report)?;
    writeln!(out)?;
    Ok(Outcome::from_pass(brute_match != Some(false) && violations.unwrap_or(0) == 0))
}

fn oracle_build(a: &OracleBuildArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let g = load_input(&a.input)?;
    let default = if g.is_directed() { Preset::DirectedOracle } else { Preset::Undirected };
    let r = resolve_r(&a.division, g.n(), default);
    let start = Instant::now();
    let div = build_r_division(&g, r)?;
    let o = AnyOracle::build(&g, div)?;
    let build_ms = ms(start);
    let file_bytes = o.save(&a.out)?;
    let report = json!({
        "kind": format!("{:?}", o.kind()).to_lowercase(),
        "n": g.n(),
        "r": r,
        "h": a.division.h,
        "division": o.division().quality(),
        "pattern_count": o.pattern_count(),
        "cap_ok": o.cap_ok(),
        "space_bytes": o.space_bytes(),
        "file_bytes": file_bytes,
        "build_ms": build_ms,
    });
    writeln!(out, "{report}")?;
    Ok(Outcome::Success)
}

fn format_dist(d: Dist) -> String {
    d.finite().map_or_else(|| "inf".to_string(), |x| x.to_string())
}

fn oracle_query(a: &OracleQueryArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let o = AnyOracle::load(&a.oracle)?;
    let n = o.n();
    let pairs = match (&a.pairs, a.random) {
        (Some(p), None) => io::read_pairs(p)?,
        (None, Some(k)) => oracle::random_pairs(n, k, a.seed),
        _ => bail!("give exactly one of --pairs or --random"),
    };
    if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u >= n || v >= n) {
        bail!("query pair ({u}, {v}) out of range for n = {n}");
    }
    let (answers, mean_ns) = oracle::timed_queries(&o, &pairs);
    let mut text = String::with_capacity(pairs.len() * 12);
    for (&(u, v), &d) in pairs.iter().zip(&answers) {
        text.push_str(&format!("{u} {v} {}\n", format_dist(d)));
    }
    match &a.out {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    let mut verified = None;
    if let Some(gp) = &a.verify {
        let g = io::read_graph(gp)?;
        if g.n() != n || g.is_directed() != matches!(o, AnyOracle::Directed(_)) {
            bail!("verification graph does not match the oracle");
        }
        let mut rep = CheckReport::default();
        let mut rows: std::collections::HashMap<usize, Vec<Dist>> = Default::default();
        for (&(u, v), &d) in pairs.iter().zip(&answers) {
            let row = rows.entry(u).or_insert_with(|| g.sssp(u, false).dist);
            rep.merge(CheckReport { checked: 1, mismatches: u64::from(row[v] != d) });
        }
        verified = Some(rep);
    }
    let summary = json!({ "pairs": pairs.len(), "mean_query_ns": mean_ns, "verified": verified });
    eprintln!("{summary}");
    Ok(Outcome::from_pass(verified.is_none_or(|r| r.ok())))
}

#[derive(Serialize)]
struct VcLine {
    seed: u64,
    family: Family,
    n: usize,
    directed: bool,
    ground: usize,
    sets: usize,
    excluded: usize,
    dimension: usize,
    capped: bool,
    witness: Vec<usize>,
    witness_elements: Vec<String>,
    shattered_per_size: Vec<usize>,
}

/// Builds the requested family for one instance.
pub fn build_family(family: Family, g: &Graph, terminals: usize, seed: u64) -> anyhow::Result<(SetFamily, usize)> {
    Ok(match family {
        Family::Balls => (set_system::ball_system(g)?, 0),
        Family::SpTrees => (set_system::sp_tree_system(g)?, 0),
        Family::LpHat => {
            if terminals < 2 || terminals > g.n() {
                bail!("need 2 ≤ terminals ≤ n, got {terminals}");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s: Vec<usize> = sample(&mut rng, g.n(), terminals).into_vec();
            let m = set_system::realized_differences(g, &s);
            if m.is_empty() {
                bail!("no realized terminal differences");
            }
            let lp = set_system::lp_hat_system(g, &s, &m)?;
            (lp.family, lp.excluded.len())
        }
    })
}

fn vcdim(a: &VcdimArgs, threads: usize, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if a.cap == 0 || a.cap > MAX_VC_CAP {
        bail!("--cap must be in 1..={MAX_VC_CAP}");
    }
    let seeds: Vec<u64> = (0..a.count).map(|k| a.input.seed + k).collect();
    let lines = par_map(&seeds, threads, |&seed| -> anyhow::Result<VcLine> {
        let g = load_input(&InputArgs { seed, ..a.input.clone() })?;
        let (f, excluded) = build_family(a.family, &g, a.terminals, seed)?;
        let rep = set_system::vc_dimension(&f, a.cap);
        Ok(VcLine {
            seed,
            family: a.family,
            n: g.n(),
            directed: g.is_directed(),
            ground: f.ground_size(),
            sets: f.len(),
            excluded,
            dimension: rep.dimension,
            capped: rep.capped,
            witness_elements: rep.witness.iter().map(|&i| format!("{:?}", f.ground()[i])).collect(),
            witness: rep.witness,
            shattered_per_size: rep.shattered_per_size,
        })
    });
    let mut pass = true;
    for line in lines {
        let line = line?;
        if let Some(k) = a.expect_max {
            pass &= !line.capped && line.dimension <= k;
        }
        if let Some(k) = a.expect_min {
            pass &= line.dimension >= k;
        }
        serde_json::to_writer(&mut *out, &line)?;
        writeln!(out)?;
    }
    Ok(Outcome::from_pass(pass))
}

fn report_json(rep: &ShatteringReport) -> serde_json::Value {
    json!({
        "pass": rep.pass,
        "realized": rep.realized,
        "failures": rep.failures.iter().map(|f| json!({"anchor": f.anchor, "expected": f.expected, "found": f.found})).collect::<Vec<_>>(),
        "ties": rep.ties,
    })
}

fn lowerbound(a: &LowerboundArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let m = a
        .m
        .as_deref()
        .map(|s| s.parse::<BigUint>().with_context(|| format!("bad --m `{s}`")))
        .transpose()?;
    let gd = lower_bound::build_gadget(a.r, a.a0, m)?;
    let growth_ok = lower_bound::check_growth(&gd.a).is_ok();
    let rep = lower_bound::verify_shattering(&gd);
    let claims = lower_bound::check_path_claims(&gd);
    let unweighted = if a.unweighted {
        Some(lower_bound::verify_shattering_unweighted(&gd, lower_bound::SUBDIVISION_CAP)?)
    } else {
        None
    };
    if let Some(p) = &a.graph_out {
        write_file(p, &io::format_weighted_edges(gd.n, true, &gd.edges))?;
    }
    let (en, em) = Gadget::expected_counts(gd.r);
    let manifest = json!({
        "r": gd.r,
        "n": gd.n,
        "edges": gd.edges.len(),
        "expected_counts": [en, em],
        "x": gd.x,
        "anchors": gd.anchors,
        "a": gd.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "m": gd.m.to_string(),
        "m_is_large": gd.m_is_large(),
        "growth_ok": growth_ok,
        "total_weight": gd.total_weight().to_string(),
        "shattering": report_json(&rep),
        "path_claim_failures": claims,
        "unweighted": unweighted.as_ref().map(report_json),
    });
    writeln!(out, "{manifest}")?;
    let pass = growth_ok && rep.pass && claims.is_empty() && unweighted.is_none_or(|u| u.pass);
    Ok(Outcome::from_pass(pass))
}

fn bench(a: &BenchArgs, threads: usize, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let rows = par_map(&a.sizes, threads, |&n| -> anyhow::Result<BenchRow> {
        let base = minorvc_core::generate::random_planar(n, a.seed)?;
        let g = if a.directed { minorvc_core::generate::orient(&base, a.seed)? } else { base };
        let r = resolve_r(&a.division, n, Preset::Sqrt);
        oracle::bench_row(&g, r, a.queries, a.seed)
    });
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut pass = true;
    for row in rows {
        let row = row?;
        pass &= row.cap_ok;
        w.serialize(&row)?;
    }
    let text = String::from_utf8(w.into_inner()?)?;
    match &a.out {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Outcome::from_pass(pass))
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let g = a.gen.build(a.seed)?;
    let text = io::format_graph(&g);
    match &a.out {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Outcome::Success)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run_args(args: &[&str]) -> (Outcome, String) {
        let cli = Cli::try_parse_from(std::iter::once("minorvc").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let o = run(cli, &mut buf).unwrap();
        (o, String::from_utf8(buf).unwrap())
    }

    fn json_of(s: &str) -> serde_json::Value {
        serde_json::from_str(s.lines().next().unwrap()).unwrap()
    }

    #[test]
    fn stats_examples() {
        let (o, s) = run_args(&["stats", "--gen", "grid:8x8", "--brute"]);
        assert_eq!(o, Outcome::Success);
        let v = json_of(&s);
        assert_eq!(v["diameter"], 14);
        assert_eq!(v["brute_match"], true);
        assert_eq!(json_of(&run_args(&["stats", "--gen", "cycle:6"]).1)["diameter"], 3);
        let v = json_of(&run_args(&["stats", "--gen", "dcycle:5", "--brute"]).1);
        assert_eq!((v["diameter"].as_u64(), v["brute_match"].as_bool()), (Some(4), Some(true)));
    }

    #[test]
    fn vcdim_balls_and_gadget() {
        let (o, s) = run_args(&["vcdim", "--family", "balls", "--gen", "planar:30", "--count", "3", "--expect-max", "4"]);
        assert_eq!(o, Outcome::Success);
        assert_eq!(s.lines().count(), 3);
        let (o, s) = run_args(&["vcdim", "--family", "sp-trees", "--gen", "gadget:3", "--cap", "3", "--expect-min", "3"]);
        assert_eq!(o, Outcome::Success, "{s}");
    }

    #[test]
    fn lowerbound_manifest() {
        let (o, s) = run_args(&["lowerbound", "--r", "2"]);
        assert_eq!(o, Outcome::Success);
        let v = json_of(&s);
        assert_eq!(v["m"], "1280");
        assert_eq!(v["shattering"]["realized"], 4);
    }
}
