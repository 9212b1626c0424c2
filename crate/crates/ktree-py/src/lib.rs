//! Python bindings: the tree generator, profile measurements, exact
//! expectation tables, asymptotic constants, and limit-law series, driven
//! in-process from Python.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ktree_core::asym;
use ktree_core::error::Error as CoreError;
use ktree_core::exact;
use ktree_core::ktree;
use ktree_core::limit;
use ktree_core::montecarlo::{monte_carlo, MonteCarloConfig};
use ktree_core::profile;
use ktree_core::rng::RngFactory;

fn to_py_err(err: CoreError) -> PyErr {
    match err {
        CoreError::NonConvergence(_) | CoreError::RootCollision(_) => {
            PyRuntimeError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

/// An increasing k-tree grown by the clique-uniform process.
#[pyclass(frozen)]
struct KTree {
    inner: ktree::KTree,
}

#[pymethods]
impl KTree {
    /// The root clique on {1, …, k}.
    #[new]
    fn new(k: usize) -> PyResult<Self> {
        Ok(Self {
            inner: ktree::KTree::new_root_clique(k).map_err(to_py_err)?,
        })
    }

    /// Grow a random tree with `n` added vertices from a seed.
    #[staticmethod]
    #[pyo3(signature = (k, n, seed, stream=0))]
    fn grow_random(k: usize, n: usize, seed: u64, stream: u64) -> PyResult<Self> {
        let mut rng = RngFactory::new(seed).stream(stream);
        Ok(Self {
            inner: ktree::grow_random(k, n, &mut rng).map_err(to_py_err)?,
        })
    }

    /// Attach the next vertex to the clique at `clique_index`, returning
    /// the grown tree.
    fn apply_step(&self, clique_index: usize) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.apply_step(clique_index).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn clique_count(&self) -> usize {
        self.inner.clique_count()
    }

    /// Clique index each added vertex was attached to.
    fn attachments(&self) -> Vec<u32> {
        self.inner.attachments().to_vec()
    }

    /// Edges as (u, v) pairs in creation order.
    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges()
    }

    /// All registered cliques as sorted member lists.
    fn cliques(&self) -> Vec<Vec<u32>> {
        self.inner.cliques()
    }

    /// Edge-list text with the standard header.
    #[pyo3(signature = (seed=0))]
    fn edge_list_text(&self, seed: u64) -> String {
        self.inner.edge_list_text(seed)
    }

    /// Distances of each added vertex to each root vertex
    /// (row per added vertex).
    fn root_distances(&self) -> Vec<Vec<u32>> {
        let table = profile::root_distances(&self.inner);
        (0..self.inner.n())
            .map(|i| (0..self.inner.k()).map(|r| table.distance(i, r)).collect())
            .collect()
    }

    /// BFS distances from a vertex (entry i = distance of vertex i+1).
    fn bfs_distances(&self, source: u32) -> PyResult<Vec<u32>> {
        profile::bfs_distances(&self.inner, source).map_err(to_py_err)
    }

    /// Profile counts: rows indexed by level d−1, columns by root-set
    /// size j−1.
    fn connectivity_profile(&self) -> Vec<Vec<u64>> {
        let p = profile::connectivity_profile(&self.inner);
        (1..=p.depth())
            .map(|d| (1..=self.inner.k()).map(|j| p.count(d, j)).collect())
            .collect()
    }

    /// (height, width, root_degree).
    fn summary(&self) -> (u32, u64, u64) {
        let s = profile::summary(&self.inner);
        (s.height, s.width, s.root_degree)
    }

    /// Degree of every vertex, by label.
    fn degrees(&self) -> Vec<u32> {
        profile::degrees(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "KTree(k={}, n={}, vertices={}, cliques={})",
            self.inner.k(),
            self.inner.n(),
            self.inner.vertex_count(),
            self.inner.clique_count()
        )
    }
}

/// Number of increasing k-trees with n added vertices (exact).
#[pyfunction]
fn count_ktrees(k: usize, n: usize) -> PyResult<BigUint> {
    ktree::count_ktrees(k, n).map_err(to_py_err)
}

/// Exact expected profile values E(X_{n;d,j}) as floats, for all
/// n <= n_max, d <= d_max, j <= k. Returns rows (n, d, j, value).
#[pyfunction]
#[pyo3(signature = (k, n_max, d_max, max_cells=50_000_000))]
fn expected_profile(
    k: usize,
    n_max: usize,
    d_max: usize,
    max_cells: u64,
) -> PyResult<Vec<(usize, usize, usize, f64)>> {
    let table = exact::expected_profile_exact(k, n_max, d_max, max_cells).map_err(to_py_err)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for d in 1..=d_max {
            for j in 1..=k {
                rows.push((
                    n,
                    d,
                    j,
                    table.expectation(d, j, n).to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
    }
    Ok(rows)
}

/// Exact expected profile at large sizes (float recurrence): rows
/// (n, d, j, value) for each checkpoint size.
#[pyfunction]
fn expected_profile_float(
    k: usize,
    checkpoints: Vec<usize>,
    d_max: usize,
) -> PyResult<Vec<(usize, usize, usize, f64)>> {
    let table = exact::expected_profile_float(k, &checkpoints, d_max).map_err(to_py_err)?;
    let mut rows = Vec::new();
    for &n in table.checkpoints() {
        for d in 1..=d_max {
            for j in 1..=k {
                rows.push((n, d, j, table.expectation(d, j, n).map_err(to_py_err)?));
            }
        }
    }
    Ok(rows)
}

/// Exact mean count at distance 1 from the root vertex, as a float.
#[pyfunction]
fn expected_d1(k: usize, n: usize) -> PyResult<f64> {
    Ok(exact::expected_d1_closed_form(k, n)
        .map_err(to_py_err)?
        .to_f64()
        .unwrap_or(f64::NAN))
}

/// Exact root-degree law P(X_{n;1,1} = l), l = 0..n, as floats.
#[pyfunction]
fn root_degree_pmf(k: usize, n: usize) -> PyResult<Vec<f64>> {
    Ok(exact::root_degree_pmf(k, n)
        .map_err(to_py_err)?
        .iter()
        .map(|p| p.to_f64().unwrap_or(f64::NAN))
        .collect())
}

/// Dominant spectral root and derivatives:
/// (lambda1, lambda1', lambda1'', roots) at w.
#[pyfunction]
fn lambda_spectrum(k: usize, w: f64) -> PyResult<(f64, f64, f64, Vec<(f64, f64)>)> {
    let s = asym::lambda_spectrum(k, w).map_err(to_py_err)?;
    Ok((
        s.lambda1,
        s.lambda1_prime,
        s.lambda1_second,
        s.roots.iter().map(|r| (r.re, r.im)).collect(),
    ))
}

/// The height constant: (alpha_plus, v, loglog_coefficient).
#[pyfunction]
fn alpha_plus(k: usize) -> PyResult<(f64, f64, f64)> {
    let hc = asym::alpha_plus(k).map_err(to_py_err)?;
    Ok((hc.alpha_plus, hc.v, hc.loglog_coefficient))
}

/// Fixed-level estimate of the expected profile.
#[pyfunction]
fn asym_fixed_d(k: usize, n: f64, d: usize, j: usize) -> PyResult<f64> {
    asym::asym_fixed_d(k, n, d, j).map_err(to_py_err)
}

/// Saddle-point estimate: (rho, estimate, limit_evaluated).
#[pyfunction]
fn asym_large_d(k: usize, n: f64, d: f64, j: usize) -> PyResult<(f64, f64, bool)> {
    let s = asym::asym_large_d(k, n, d, j).map_err(to_py_err)?;
    Ok((s.rho, s.estimate, s.limit_evaluated))
}

/// Gaussian level approximation at level d.
#[pyfunction]
fn llt_gaussian(k: usize, n: f64, d: f64) -> PyResult<f64> {
    asym::llt_gaussian(k, n, d).map_err(to_py_err)
}

/// Leading upper bound on the expected height.
#[pyfunction]
fn height_bound(k: usize, n: f64) -> PyResult<f64> {
    asym::height_bound(k, n).map_err(to_py_err)
}

/// Representative of the expected width order (the Gaussian peak).
#[pyfunction]
fn width_order(k: usize, n: f64) -> PyResult<f64> {
    asym::width_order(k, n).map_err(to_py_err)
}

/// Limit-law series coefficients c_m as (numerator, denominator) strings.
#[pyfunction]
#[pyo3(signature = (k, d, j, order=20))]
fn limit_series(k: usize, d: usize, j: usize, order: usize) -> PyResult<Vec<(String, String)>> {
    let s = limit::limit_law_series(k, d, j, order).map_err(to_py_err)?;
    Ok(s.coeffs
        .iter()
        .map(|c| (c.numer().to_string(), c.denom().to_string()))
        .collect())
}

/// Moments of the limit variable at (k, d, j).
#[pyfunction]
#[pyo3(signature = (k, d, j, order=8))]
fn limit_moments(k: usize, d: usize, j: usize, order: usize) -> PyResult<Vec<f64>> {
    limit::limit_moments(k, d, j, order).map_err(to_py_err)
}

/// Monte Carlo profile statistics, returned as a JSON document matching
/// schemas/summary_stats.schema.json.
#[pyfunction]
#[pyo3(signature = (k, n, trials, seed, d_max=0, threads=0, degrees=false, pairs=0))]
#[allow(clippy::too_many_arguments)]
fn monte_carlo_json(
    k: usize,
    n: usize,
    trials: u64,
    seed: u64,
    d_max: usize,
    threads: usize,
    degrees: bool,
    pairs: u64,
) -> PyResult<String> {
    let mut cfg = MonteCarloConfig::new(k, n, trials, seed);
    if d_max > 0 {
        cfg.d_max = d_max;
    }
    cfg.threads = threads;
    cfg.collect_degrees = degrees;
    cfg.pairs_per_tree = pairs;
    Ok(monte_carlo(&cfg).map_err(to_py_err)?.to_json())
}

/// Monte Carlo check of the normalized depth-d count against its limit
/// law, as JSON.
#[pyfunction]
#[pyo3(signature = (k, d, j, n, trials, seed, threads=0))]
fn limit_check_json(
    k: usize,
    d: usize,
    j: usize,
    n: usize,
    trials: u64,
    seed: u64,
    threads: usize,
) -> PyResult<String> {
    let cfg = limit::LimitCheckConfig {
        k,
        d,
        j,
        n,
        trials,
        seed,
        threads,
    };
    let report = limit::empirical_limit_check(&cfg).map_err(to_py_err)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn ktree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<KTree>()?;
    m.add_function(wrap_pyfunction!(count_ktrees, m)?)?;
    m.add_function(wrap_pyfunction!(expected_profile, m)?)?;
    m.add_function(wrap_pyfunction!(expected_profile_float, m)?)?;
    m.add_function(wrap_pyfunction!(expected_d1, m)?)?;
    m.add_function(wrap_pyfunction!(root_degree_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_plus, m)?)?;
    m.add_function(wrap_pyfunction!(asym_fixed_d, m)?)?;
    m.add_function(wrap_pyfunction!(asym_large_d, m)?)?;
    m.add_function(wrap_pyfunction!(llt_gaussian, m)?)?;
    m.add_function(wrap_pyfunction!(height_bound, m)?)?;
    m.add_function(wrap_pyfunction!(width_order, m)?)?;
    m.add_function(wrap_pyfunction!(limit_series, m)?)?;
    m.add_function(wrap_pyfunction!(limit_moments, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo_json, m)?)?;
    m.add_function(wrap_pyfunction!(limit_check_json, m)?)?;
    Ok(())
}
