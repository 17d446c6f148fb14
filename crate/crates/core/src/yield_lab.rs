//! Monte-Carlo clique-yield experiments on randomly defective square grids.
//!
//! Each trial deletes `round(rate * 2 * N^2 * L)` qubits chosen uniformly
//! without replacement, runs the full sweep, and records the largest clique.
//! Trial seeds are derived from the base seed and the trial's coordinates,
//! so results do not depend on scheduling and a rerun reproduces the CSV
//! byte for byte (unless timings are requested).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dp::sweep;
use crate::embedding::{validate_embedding, NativeCliqueEmbedding};
use crate::error::{Error, Result};
use crate::topology::{random_qubits, ChimeraShape, HardwareGraph};

pub const FAMILY: &str = "ell";

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Square grid sizes `N` (shapes `C(N,N,L)`).
    pub sizes: Vec<u32>,
    pub l: u32,
    /// Fractions of qubits deleted.
    pub rates: Vec<f64>,
    pub trials: u32,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.sizes.is_empty() || self.rates.is_empty() {
            return bad("need at least one size and one rate".into());
        }
        if let Some(s) = self.sizes.iter().find(|&&s| s < 2) {
            return bad(format!("grid size {s} is below 2"));
        }
        if self.l == 0 {
            return bad("L must be at least 1".into());
        }
        if let Some(r) = self.rates.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return bad(format!("rate {r} is outside [0, 1]"));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        Ok(())
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(base: u64, size: u32, rate: f64, trial: u32) -> u64 {
    let mut h = splitmix(base);
    h = splitmix(h ^ size as u64);
    h = splitmix(h ^ rate.to_bits());
    splitmix(h ^ trial as u64)
}

pub fn dead_qubit_count(shape: ChimeraShape, rate: f64) -> usize {
    (rate * shape.num_qubits() as f64).round() as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct YieldRecord {
    pub size: u32,
    pub l: u32,
    pub rate: f64,
    pub trial: u32,
    pub seed: u64,
    /// Chain length parameter of the winning embedding (chains have `n + 1` qubits).
    pub n: u32,
    pub clique_yield: usize,
    pub runtime_ms: f64,
}

/// The defective graph a trial runs on.
pub fn sample_graph(size: u32, l: u32, rate: f64, seed: u64) -> Result<HardwareGraph> {
    let shape = ChimeraShape::new(size, size, l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dead = random_qubits(shape, dead_qubit_count(shape, rate), &mut rng);
    HardwareGraph::build(shape)?.without_qubits(&dead)
}

/// Runs one trial; the embedding is validated against the sampled graph before it counts.
pub fn run_trial(
    size: u32,
    l: u32,
    rate: f64,
    trial: u32,
    base_seed: u64,
) -> Result<(YieldRecord, NativeCliqueEmbedding)> {
    let seed = trial_seed(base_seed, size, rate, trial);
    let g = sample_graph(size, l, rate, seed)?;
    let start = Instant::now();
    let best = sweep(&g)?.best;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = validate_embedding(&g, &best);
    if !report.valid {
        return Err(Error::MalformedEmbedding(format!(
            "trial N={size} rate={rate} #{trial}: {:?}",
            report.violations.first()
        )));
    }
    let record = YieldRecord { size, l, rate, trial, seed, n: best.n, clique_yield: best.clique_size(), runtime_ms };
    Ok((record, best))
}

/// All trials, ordered by size, then rate (config order), then trial index.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<YieldRecord>> {
    cfg.check()?;
    let tasks: Vec<(u32, f64, u32)> = cfg
        .sizes
        .iter()
        .flat_map(|&s| cfg.rates.iter().flat_map(move |&r| (0..cfg.trials).map(move |t| (s, r, t))))
        .collect();
    tasks.par_iter().map(|&(s, r, t)| run_trial(s, cfg.l, r, t, cfg.seed).map(|(rec, _)| rec)).collect()
}

/// Per-trial CSV. `runtime_ms` is left blank unless `timing` is set, since
/// wall-clock times would break byte-for-byte reproducibility.
pub fn records_csv(records: &[YieldRecord], timing: bool) -> String {
    let mut out = String::from("family,N,L,rate,trial,seed,n,yield,runtime_ms\n");
    for r in records {
        let runtime = if timing { format!("{:.3}", r.runtime_ms) } else { String::new() };
        writeln!(
            out,
            "{FAMILY},{},{},{},{},{},{},{},{}",
            r.size, r.l, r.rate, r.trial, r.seed, r.n, r.clique_yield, runtime
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quartiles {
    pub min: usize,
    pub q1: usize,
    pub median: usize,
    pub q3: usize,
    pub max: usize,
}

/// Order statistics at `floor((len - 1) * p)`; for even counts the median is
/// the lower of the two middle values.
pub fn quartiles(values: &[usize]) -> Result<Quartiles> {
    if values.is_empty() {
        return Err(Error::EmptyCell);
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let at = |p: f64| v[((v.len() - 1) as f64 * p).floor() as usize];
    Ok(Quartiles { min: v[0], q1: at(0.25), median: at(0.5), q3: at(0.75), max: v[v.len() - 1] })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub size: u32,
    pub l: u32,
    pub rate: f64,
    pub stats: Quartiles,
    pub trials: usize,
}

/// One row per `(N, L, rate)`, sorted by `N`, then `L`, then rate.
pub fn aggregate(records: &[YieldRecord]) -> Result<Vec<AggregateRow>> {
    // Rates are non-negative, so their bit patterns sort numerically.
    let mut cells: BTreeMap<(u32, u32, u64), Vec<usize>> = BTreeMap::new();
    for r in records {
        cells.entry((r.size, r.l, r.rate.to_bits())).or_default().push(r.clique_yield);
    }
    cells
        .into_iter()
        .map(|((size, l, rate), values)| {
            Ok(AggregateRow { size, l, rate: f64::from_bits(rate), stats: quartiles(&values)?, trials: values.len() })
        })
        .collect()
}

pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut out = String::from("family,N,L,rate,min,q1,median,q3,max,trials\n");
    for r in rows {
        let s = r.stats;
        writeln!(
            out,
            "{FAMILY},{},{},{},{},{},{},{},{},{}",
            r.size, r.l, r.rate, s.min, s.q1, s.median, s.q3, s.max, r.trials
        )
        .unwrap();
    }
    out
}

/// Self-contained SVG: median yield against `N`, one line per rate, with
/// the interquartile range shaded.
pub fn aggregate_svg(rows: &[AggregateRow]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const PAD: f64 = 50.0;
    const COLORS: [&str; 6] = ["#c0392b", "#2471a3", "#229954", "#8e44ad", "#d68910", "#566573"];

    let mut by_rate: BTreeMap<u64, Vec<&AggregateRow>> = BTreeMap::new();
    for r in rows {
        by_rate.entry(r.rate.to_bits()).or_default().push(r);
    }
    let min_n = rows.iter().map(|r| r.size).min().unwrap_or(0) as f64;
    let max_n = rows.iter().map(|r| r.size).max().unwrap_or(1) as f64;
    let max_y = rows.iter().map(|r| r.stats.max).max().unwrap_or(1).max(1) as f64;
    let sx = |n: f64| PAD + (n - min_n) / (max_n - min_n).max(1.0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - y / max_y * (H - 2.0 * PAD);

    let mut svg = String::new();
    writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#)
        .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<path d="M{PAD} {} L{} {} M{PAD} {} L{PAD} {PAD}" stroke="black" fill="none"/>"#,
        H - PAD,
        W - PAD,
        H - PAD,
        H - PAD
    )
    .unwrap();
    writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">grid size N</text>"#, W / 2.0, H - 12.0)
        .unwrap();
    writeln!(
        svg,
        r#"<text x="14" y="{}" font-size="12" transform="rotate(-90 14 {})" text-anchor="middle">clique yield</text>"#,
        H / 2.0,
        H / 2.0
    )
    .unwrap();
    for r in rows.iter().map(|r| r.size).collect::<std::collections::BTreeSet<_>>() {
        writeln!(
            svg,
            r#"<text x="{:.1}" y="{}" text-anchor="middle" font-size="10">{r}</text>"#,
            sx(r as f64),
            H - PAD + 14.0
        )
        .unwrap();
    }
    for (i, (rate, series)) in by_rate.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let upper: Vec<String> =
            series.iter().map(|r| format!("{:.1},{:.1}", sx(r.size as f64), sy(r.stats.q3 as f64))).collect();
        let lower: Vec<String> =
            series.iter().rev().map(|r| format!("{:.1},{:.1}", sx(r.size as f64), sy(r.stats.q1 as f64))).collect();
        writeln!(
            svg,
            r#"<polygon points="{} {}" fill="{color}" fill-opacity="0.2" stroke="none"/>"#,
            upper.join(" "),
            lower.join(" ")
        )
        .unwrap();
        let median: Vec<String> =
            series.iter().map(|r| format!("{:.1},{:.1}", sx(r.size as f64), sy(r.stats.median as f64))).collect();
        writeln!(svg, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, median.join(" "))
            .unwrap();
        writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="11" fill="{color}">rate {}</text>"#,
            PAD + 10.0,
            PAD + 14.0 * i as f64,
            f64::from_bits(*rate)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(sizes: Vec<u32>, rates: Vec<f64>, trials: u32) -> ExperimentConfig {
        ExperimentConfig { sizes, l: 2, rates, trials, seed: 7 }
    }

    #[test]
    fn extremes() {
        let recs = run_experiment(&cfg(vec![2, 3, 4], vec![0.0, 1.0], 3)).unwrap();
        assert_eq!(recs.len(), 18);
        for r in &recs {
            if r.rate == 0.0 {
                assert_eq!(r.clique_yield, 2 * r.size as usize);
            } else {
                assert_eq!(r.clique_yield, 0);
            }
        }
    }

    #[test]
    fn config_checks() {
        assert!(cfg(vec![4], vec![1.5], 1).check().is_err());
        assert!(cfg(vec![4], vec![0.1], 0).check().is_err());
        assert!(cfg(vec![], vec![0.1], 1).check().is_err());
        assert!(cfg(vec![1], vec![0.1], 1).check().is_err());
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(trial_seed(7, 4, 0.05, 3), trial_seed(7, 4, 0.05, 3));
        let seeds: std::collections::BTreeSet<_> =
            (0..100).map(|t| trial_seed(7, 4, 0.05, t)).chain([trial_seed(8, 4, 0.05, 0)]).collect();
        assert_eq!(seeds.len(), 101);
        let g = sample_graph(4, 2, 0.25, 11).unwrap();
        assert_eq!(g.dead_qubits().len(), 16);
        assert_eq!(g, sample_graph(4, 2, 0.25, 11).unwrap());
    }

    #[test]
    fn quartile_convention() {
        let q = quartiles(&[7]).unwrap();
        assert_eq!((q.min, q.q1, q.median, q.q3, q.max), (7, 7, 7, 7, 7));
        let q = quartiles(&[26, 20, 24, 22]).unwrap();
        assert_eq!((q.min, q.q1, q.median, q.q3, q.max), (20, 20, 22, 24, 26));
        assert_eq!(quartiles(&[]), Err(Error::EmptyCell));
    }

    #[test]
    fn aggregate_rows_and_csv() {
        let c = cfg(vec![3, 4], vec![0.0, 0.05, 0.1], 4);
        let recs = run_experiment(&c).unwrap();
        let rows = aggregate(&recs).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.trials == 4));
        let csv = records_csv(&recs, false);
        assert_eq!(csv.lines().count(), 25);
        assert!(csv.lines().nth(1).unwrap().starts_with("ell,3,2,0,0,"));
        assert!(csv.lines().nth(1).unwrap().ends_with(','));
        assert_eq!(csv, records_csv(&run_experiment(&c).unwrap(), false));
        let agg = aggregate_csv(&rows);
        assert_eq!(agg.lines().next().unwrap(), "family,N,L,rate,min,q1,median,q3,max,trials");
        let svg = aggregate_svg(&rows);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 3);
    }
}
