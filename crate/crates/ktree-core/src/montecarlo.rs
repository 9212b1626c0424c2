//! Monte Carlo harness: independent random trees, aggregated profile and
//! shape statistics, deterministic for a fixed master seed.
//!
//! Trial `i` draws its randomness from stream `i` of the master seed, and
//! per-trial records are reduced in trial order, so the output is
//! bit-identical no matter how many threads run the trials.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ktree::grow_random;
use crate::profile::{
    connectivity_profile, degrees, sample_pair_distance, PairDistanceSample, ProfileMatrix,
};
use crate::rng::RngFactory;

/// Default ceiling on `k · n · trials`.
pub const DEFAULT_MAX_WORK: u64 = 200_000_000_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub k: usize,
    pub n: usize,
    pub trials: u64,
    /// Levels reported per (d, j) cell; deeper levels still count toward
    /// height/width.
    pub d_max: usize,
    pub seed: u64,
    /// Worker threads; 0 uses the global default.
    pub threads: usize,
    /// Aggregate the full vertex-degree histogram (costs an extra pass).
    pub collect_degrees: bool,
    /// Random vertex pairs per tree for distance sampling (0 = off).
    pub pairs_per_tree: u64,
    /// Guard on `k · n · trials`, checked before any allocation.
    pub max_work: u64,
}

impl MonteCarloConfig {
    pub fn new(k: usize, n: usize, trials: u64, seed: u64) -> Self {
        Self {
            k,
            n,
            trials,
            d_max: default_d_max(n),
            seed,
            threads: 0,
            collect_degrees: false,
            pairs_per_tree: 0,
            max_work: DEFAULT_MAX_WORK,
        }
    }
}

/// Default level cutoff: past ~4·log n the expected counts are negligible.
pub fn default_d_max(n: usize) -> usize {
    (4.0 * (n.max(2) as f64).ln()).ceil() as usize
}

/// Mean/variance/standard error of one profile cell across trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub d: usize,
    pub j: usize,
    pub mean: f64,
    pub var: f64,
    pub stderr: f64,
}

/// Location/spread summary of one scalar statistic across trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarStats {
    pub mean: f64,
    pub var: f64,
    pub stderr: f64,
    pub min: u64,
    pub max: u64,
    pub histogram: BTreeMap<u64, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub k: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub d_max: usize,
    pub cells: Vec<CellStats>,
    pub height: ScalarStats,
    pub width: ScalarStats,
    pub root_degree: ScalarStats,
    /// Aggregated vertex-degree histogram, if collected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_histogram: Option<BTreeMap<u64, u64>>,
    /// Pooled pair-distance sample, if collected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_distance: Option<PairDistanceSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDistanceSummary {
    pub pairs: u64,
    pub mean: f64,
    pub histogram: BTreeMap<u64, u64>,
}

impl SummaryStats {
    pub fn cell(&self, d: usize, j: usize) -> Option<&CellStats> {
        self.cells.iter().find(|c| c.d == d && c.j == j)
    }

    /// Profile cells as CSV.
    pub fn cells_csv(&self) -> String {
        let mut s = String::from("k,n,d,j,mean,var,stderr,trials,seed\n");
        for c in &self.cells {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                self.k, self.n, c.d, c.j, c.mean, c.var, c.stderr, self.trials, self.seed
            ));
        }
        s
    }

    /// Scalar-statistic histograms as CSV.
    pub fn histograms_csv(&self) -> String {
        let mut s = String::from("k,n,stat,value,count\n");
        let mut emit = |name: &str, hist: &BTreeMap<u64, u64>| {
            for (value, count) in hist {
                s.push_str(&format!("{},{},{name},{value},{count}\n", self.k, self.n));
            }
        };
        emit("height", &self.height.histogram);
        emit("width", &self.width.histogram);
        emit("root_degree", &self.root_degree.histogram);
        if let Some(h) = &self.degree_histogram {
            emit("degree", h);
        }
        if let Some(p) = &self.pair_distance {
            emit("pair_distance", &p.histogram);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("SummaryStats serializes")
    }
}

struct TrialRecord {
    profile: ProfileMatrix,
    degrees: Option<Vec<u32>>,
    pairs: Option<PairDistanceSample>,
}

/// Run the harness: grow `trials` independent trees and aggregate their
/// profiles and shape statistics.
pub fn monte_carlo(cfg: &MonteCarloConfig) -> Result<SummaryStats> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if cfg.k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let work = (cfg.k as u64)
        .saturating_mul(cfg.n as u64)
        .saturating_mul(cfg.trials);
    if work > cfg.max_work {
        return Err(Error::GuardExceeded(format!(
            "k*n*trials = {work} exceeds max_work = {}",
            cfg.max_work
        )));
    }

    let factory = RngFactory::new(cfg.seed);
    let run_trial = |trial: u64| -> Result<TrialRecord> {
        let mut rng = factory.stream(trial);
        let tree = grow_random(cfg.k, cfg.n, &mut rng)?;
        let profile = connectivity_profile(&tree);
        let degs = cfg.collect_degrees.then(|| degrees(&tree));
        let pairs = if cfg.pairs_per_tree > 0 && tree.vertex_count() >= 2 {
            Some(sample_pair_distance(&tree, cfg.pairs_per_tree, &mut rng)?)
        } else {
            None
        };
        Ok(TrialRecord {
            profile,
            degrees: degs,
            pairs,
        })
    };

    // Records come back ordered by trial index (the parallel collect
    // preserves order), so the reduction below is schedule-independent.
    let records: Result<Vec<TrialRecord>> = if cfg.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| (0..cfg.trials).into_par_iter().map(run_trial).collect())
    } else {
        (0..cfg.trials).into_par_iter().map(run_trial).collect()
    };
    let records = records?;

    reduce(cfg, records)
}

fn reduce(cfg: &MonteCarloConfig, records: Vec<TrialRecord>) -> Result<SummaryStats> {
    let k = cfg.k;
    let cells = cfg.d_max * k;
    let mut acc = vec![Welford::default(); cells];
    let mut height = ScalarAccumulator::default();
    let mut width = ScalarAccumulator::default();
    let mut root_degree = ScalarAccumulator::default();
    let mut degree_histogram: Option<BTreeMap<u64, u64>> =
        cfg.collect_degrees.then(BTreeMap::new);
    let mut pair_hist: BTreeMap<u64, u64> = BTreeMap::new();
    let mut pair_sum = 0.0;
    let mut pair_count = 0u64;

    for rec in &records {
        let p = &rec.profile;
        for d in 1..=cfg.d_max {
            for j in 1..=k {
                acc[(d - 1) * k + (j - 1)].push(p.count(d, j) as f64);
            }
        }
        height.push(u64::from(p.height()));
        width.push(p.width());
        root_degree.push(p.root_degree());
        if let (Some(hist), Some(degs)) = (degree_histogram.as_mut(), rec.degrees.as_ref()) {
            for &dg in degs {
                *hist.entry(u64::from(dg)).or_insert(0) += 1;
            }
        }
        if let Some(sample) = &rec.pairs {
            for (&d, &c) in &sample.histogram {
                *pair_hist.entry(u64::from(d)).or_insert(0) += c;
            }
            pair_sum += sample.mean * sample.pairs as f64;
            pair_count += sample.pairs;
        }
    }

    let trials = cfg.trials;
    let cells = (1..=cfg.d_max)
        .flat_map(|d| (1..=k).map(move |j| (d, j)))
        .map(|(d, j)| {
            let w = &acc[(d - 1) * k + (j - 1)];
            CellStats {
                d,
                j,
                mean: w.mean(),
                var: w.variance(),
                stderr: w.stderr(),
            }
        })
        .collect();

    Ok(SummaryStats {
        k,
        n: cfg.n,
        trials,
        seed: cfg.seed,
        d_max: cfg.d_max,
        cells,
        height: height.finish(),
        width: width.finish(),
        root_degree: root_degree.finish(),
        degree_histogram,
        pair_distance: (pair_count > 0).then(|| PairDistanceSummary {
            pairs: pair_count,
            mean: pair_sum / pair_count as f64,
            histogram: pair_hist,
        }),
    })
}

/// Streaming mean/variance.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance (0 for a single observation).
    fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

#[derive(Debug, Clone, Default)]
struct ScalarAccumulator {
    w: Welford,
    min: Option<u64>,
    max: u64,
    histogram: BTreeMap<u64, u64>,
}

impl ScalarAccumulator {
    fn push(&mut self, x: u64) {
        self.w.push(x as f64);
        self.min = Some(self.min.map_or(x, |m| m.min(x)));
        self.max = self.max.max(x);
        *self.histogram.entry(x).or_insert(0) += 1;
    }

    fn finish(self) -> ScalarStats {
        ScalarStats {
            mean: self.w.mean(),
            var: self.w.variance(),
            stderr: self.w.stderr(),
            min: self.min.unwrap_or(0),
            max: self.max,
            histogram: self.histogram,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktree::grow_random;
    use crate::profile::connectivity_profile;

    #[test]
    fn single_trial_reproduces_the_tree_profile_exactly() {
        let mut cfg = MonteCarloConfig::new(2, 50, 1, 99);
        cfg.d_max = 30;
        let stats = monte_carlo(&cfg).unwrap();
        let tree = grow_random(2, 50, &mut RngFactory::new(99).stream(0)).unwrap();
        let p = connectivity_profile(&tree);
        for c in &stats.cells {
            assert_eq!(c.mean, p.count(c.d, c.j) as f64);
            assert_eq!(c.var, 0.0);
        }
        assert_eq!(stats.height.mean, f64::from(p.height()));
        assert_eq!(stats.width.mean, p.width() as f64);
    }

    #[test]
    fn mean_x11_at_small_size_matches_enumeration_value() {
        // E X[1][1] = 5/3 for k=2, n=2.
        let cfg = MonteCarloConfig::new(2, 2, 40_000, 7);
        let stats = monte_carlo(&cfg).unwrap();
        let cell = stats.cell(1, 1).unwrap();
        let exact = 5.0 / 3.0;
        assert!(
            (cell.mean - exact).abs() <= 4.0 * cell.stderr,
            "mean {} exact {exact} stderr {}",
            cell.mean,
            cell.stderr
        );
    }

    #[test]
    fn output_is_identical_across_thread_counts() {
        let mut cfg = MonteCarloConfig::new(3, 40, 64, 1234);
        cfg.collect_degrees = true;
        cfg.pairs_per_tree = 4;
        cfg.threads = 1;
        let a = monte_carlo(&cfg).unwrap();
        cfg.threads = 2;
        let b = monte_carlo(&cfg).unwrap();
        cfg.threads = 4;
        let c = monte_carlo(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.cells_csv(), b.cells_csv());
        assert_eq!(a.to_json(), c.to_json());
    }

    #[test]
    fn guards_and_validation() {
        let mut cfg = MonteCarloConfig::new(2, 10, 0, 1);
        assert!(matches!(
            monte_carlo(&cfg),
            Err(Error::InvalidParameter(_))
        ));
        cfg.trials = 10;
        cfg.max_work = 10;
        assert!(matches!(monte_carlo(&cfg), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn csv_headers_are_stable() {
        let cfg = MonteCarloConfig::new(2, 5, 3, 5);
        let stats = monte_carlo(&cfg).unwrap();
        assert!(stats
            .cells_csv()
            .starts_with("k,n,d,j,mean,var,stderr,trials,seed\n"));
        assert!(stats.histograms_csv().starts_with("k,n,stat,value,count\n"));
    }
}
