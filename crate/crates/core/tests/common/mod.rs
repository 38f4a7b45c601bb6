//! Fixtures and criterion checks shared by the integration tests and the
//! acceptance runner.
#![allow(dead_code)]

use std::time::Instant;

use camcoh::complex::{ComplexBuilder, FilteredComplex};
use camcoh::diagram::diagram_diff;
use camcoh::engine::{compute_persistence, Engine, EngineOptions};
use camcoh::field::FieldSpec;
use camcoh::oracle;
use camcoh::reorder;
use camcoh::rips::{build_rips, PointCloud};
use camcoh::{diagram_equal, RunStats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 4] = [2, 3, 11, 7919];
pub const RANDOM_RIPS: usize = 100;
pub const RIPS_SEED: u64 = 0x5eed_cafe;
pub const TORUS_POINTS: usize = 100;
pub const TORUS_SEED: u64 = 7;
pub const TORUS_RHO: f64 = 1.5;
pub const COMPRESSION_FACTOR: usize = 4;

pub fn z(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

pub type Check = Result<String, String>;

/// How filtration values are assigned to a list of maximal simplices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    /// Every simplex at its own value, ordered by dimension then lexicographically.
    Distinct,
    /// Value equals dimension.
    ByDimension,
    /// Whole complex at one value.
    Flat,
}

/// Closes `tops` under faces and assigns values.
pub fn complex_from(tops: &[&[u32]], valuation: Valuation) -> FilteredComplex {
    let mut b = ComplexBuilder::new();
    for t in tops {
        b.insert_simplex(t, 0.0).unwrap();
    }
    let closed = b.close();
    let mut out = ComplexBuilder::new();
    for (i, (s, _)) in closed.sorted_simplices().into_iter().enumerate() {
        let v = match valuation {
            Valuation::Distinct => i as f64,
            Valuation::ByDimension => s.dim() as f64,
            Valuation::Flat => 0.0,
        };
        out.insert_simplex(s.vertices(), v).unwrap();
    }
    out.finalize().unwrap()
}

pub fn full_triangle_tops() -> Vec<Vec<u32>> {
    vec![vec![0, 1, 2]]
}

pub fn hollow_triangle_tops() -> Vec<Vec<u32>> {
    vec![vec![0, 1], vec![0, 2], vec![1, 2]]
}

pub fn sphere_tops() -> Vec<Vec<u32>> {
    vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
}

/// Seven-vertex torus.
pub fn torus_tops() -> Vec<Vec<u32>> {
    let mut t = Vec::new();
    for i in 0..7u32 {
        t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    t
}

/// Six-vertex real projective plane.
pub fn rp2_tops() -> Vec<Vec<u32>> {
    [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect()
}

pub fn two_triangles_tops() -> Vec<Vec<u32>> {
    vec![vec![0, 1, 2], vec![1, 2, 3]]
}

pub fn build(tops: &[Vec<u32>], valuation: Valuation) -> FilteredComplex {
    let refs: Vec<&[u32]> = tops.iter().map(Vec::as_slice).collect();
    complex_from(&refs, valuation)
}

/// The five prefix-validity fixtures.
pub fn named_fixtures() -> Vec<(&'static str, Vec<Vec<u32>>)> {
    vec![
        ("full_triangle", full_triangle_tops()),
        ("hollow_triangle", hollow_triangle_tops()),
        ("sphere", sphere_tops()),
        ("torus7", torus_tops()),
        ("rp2_6", rp2_tops()),
    ]
}

pub fn random_cloud(rng: &mut ChaCha8Rng, grid: bool) -> PointCloud {
    let n = rng.gen_range(3..=12);
    let pts = (0..n)
        .map(|_| {
            (0..3)
                .map(|_| {
                    if grid {
                        rng.gen_range(0..3) as f64 * 0.5
                    } else {
                        rng.gen::<f64>()
                    }
                })
                .collect()
        })
        .collect();
    PointCloud::new(pts).unwrap()
}

/// Seeded random Rips complexes in the unit cube; every fourth one uses
/// grid coordinates so that many simplices share a value.
pub fn random_rips(count: usize, seed: u64) -> Vec<(String, FilteredComplex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let grid = i % 4 == 3;
            let pc = random_cloud(&mut rng, grid);
            let rho = rng.gen_range(0.2..1.2);
            let c = build_rips(&pc, rho, 3).unwrap();
            (format!("rips#{i} n={} rho={rho:.3}", pc.len()), c)
        })
        .collect()
}

/// Fixtures under every valuation.
pub fn fixture_corpus() -> Vec<(String, FilteredComplex)> {
    let mut all = named_fixtures();
    all.push(("two_triangles", two_triangles_tops()));
    let mut out = Vec::new();
    for (name, tops) in all {
        for v in [Valuation::Distinct, Valuation::ByDimension, Valuation::Flat] {
            out.push((format!("{name}/{v:?}"), build(&tops, v)));
        }
    }
    out
}

pub fn corpus() -> Vec<(String, FilteredComplex)> {
    let mut out = fixture_corpus();
    out.extend(random_rips(RANDOM_RIPS, RIPS_SEED));
    out
}

pub fn options(lazy: bool, reorder: bool) -> EngineOptions {
    EngineOptions { lazy, reorder, ..Default::default() }
}

fn compare(name: &str, p: u64, what: &str, a: &camcoh::PersistenceDiagram, b: &camcoh::PersistenceDiagram) -> Result<(), String> {
    if diagram_equal(a, b) {
        Ok(())
    } else {
        Err(format!("{name} p={p} {what}:\n{}", diagram_diff(a, b)))
    }
}

pub fn check_oracle_equivalence(corpus: &[(String, FilteredComplex)]) -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for (name, c) in corpus {
        for p in PRIMES {
            let f = z(p);
            let reference = oracle::reduce(c, &f);
            for (lazy, re) in [(true, true), (false, false)] {
                let (d, _) = compute_persistence(c, f, options(lazy, re)).map_err(|e| e.to_string())?;
                compare(name, p, "engine vs oracle", &d, &reference)?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs over {} inputs in {:.2?}", corpus.len(), start.elapsed()))
}

pub fn check_lazy_invariance(corpus: &[(String, FilteredComplex)]) -> Check {
    let mut runs = 0;
    for (name, c) in corpus {
        for p in PRIMES {
            for re in [false, true] {
                let (a, _) = compute_persistence(c, z(p), options(true, re)).map_err(|e| e.to_string())?;
                let (b, _) = compute_persistence(c, z(p), options(false, re)).map_err(|e| e.to_string())?;
                compare(name, p, "lazy on vs off", &a, &b)?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} comparisons"))
}

pub fn check_reorder_invariance(corpus: &[(String, FilteredComplex)]) -> Check {
    let mut runs = 0;
    let mut flat = 0;
    for (name, c) in corpus {
        if reorder::slab_partition(c).len() == 1 {
            flat += 1;
        }
        for p in PRIMES {
            for lazy in [false, true] {
                let (a, _) = compute_persistence(c, z(p), options(lazy, true)).map_err(|e| e.to_string())?;
                let (b, _) = compute_persistence(c, z(p), options(lazy, false)).map_err(|e| e.to_string())?;
                compare(name, p, "reorder on vs off", &a, &b)?;
                runs += 1;
            }
        }
    }
    if flat == 0 {
        return Err("corpus has no single-slab input".into());
    }
    Ok(format!("{runs} comparisons, {flat} single-slab inputs"))
}

/// Standard engine, filtration order: after each insertion the live row count
/// of every dimension must equal the Betti number of the prefix.
pub fn prefix_validity(c: &FilteredComplex, p: u64) -> Result<usize, String> {
    let f = z(p);
    let mut engine = Engine::new(c, f, EngineOptions::standard());
    let dims = c.dimension().map_or(0, |k| k + 1);
    for (i, &id) in c.filtration_order().iter().enumerate() {
        engine.insert(id).map_err(|e| e.to_string())?;
        let betti = oracle::betti_numbers(c, &f, i + 1);
        for q in 0..dims {
            let g = engine.live_rows(q);
            let b = betti.get(q).copied().unwrap_or(0);
            if g != b {
                return Err(format!("prefix {} dim {q}: live rows {g}, betti {b}", i + 1));
            }
        }
    }
    Ok(c.len())
}

pub fn check_prefix_validity() -> Check {
    let mut steps = 0;
    for (name, tops) in named_fixtures() {
        for v in [Valuation::Distinct, Valuation::ByDimension] {
            for p in PRIMES {
                steps += prefix_validity(&build(&tops, v), p).map_err(|e| format!("{name}/{v:?} p={p}: {e}"))?;
            }
        }
    }
    Ok(format!("{steps} prefixes checked"))
}

pub fn check_field_sensitivity() -> Check {
    let c = build(&rp2_tops(), Valuation::Distinct);
    for (p, expect) in [(2, vec![1, 1, 1]), (3, vec![1, 0, 0])] {
        let f = z(p);
        let oracle_betti = oracle::betti_numbers(&c, &f, c.len());
        for opts in [options(true, true), options(false, false)] {
            let (d, _) = compute_persistence(&c, f, opts).map_err(|e| e.to_string())?;
            let counts = d.essential_counts();
            let engine_betti: Vec<usize> = (0..3).map(|q| counts.get(q).copied().unwrap_or(0)).collect();
            if engine_betti != expect {
                return Err(format!("p={p} engine {engine_betti:?}, expected {expect:?}"));
            }
        }
        if oracle_betti != expect {
            return Err(format!("p={p} oracle {oracle_betti:?}, expected {expect:?}"));
        }
    }
    Ok("Z2 (1,1,1), Z3 (1,0,0) from engine and oracle".into())
}

pub fn stats_of(c: &FilteredComplex, lazy: bool, reorder: bool) -> RunStats {
    let opts = EngineOptions { lazy, reorder, record_stats: true, ..Default::default() };
    compute_persistence(c, z(2), opts).unwrap().1
}

pub fn peak(stats: &RunStats, dim: usize) -> usize {
    stats.per_dim_peaks.get(dim).map_or(0, |d| d.g_m)
}

pub fn check_reordering_effectiveness() -> Check {
    let start = Instant::now();
    let two = build(&two_triangles_tops(), Valuation::Flat);
    let with = peak(&stats_of(&two, false, true), 1);
    let without = peak(&stats_of(&two, false, false), 1);
    if (with, without) != (1, 2) {
        return Err(format!("two triangles peak g_1: {with} with reordering, {without} without"));
    }
    let sphere = build(&sphere_tops(), Valuation::Flat);
    let g_with = stats_of(&sphere, false, true).g_max_total;
    let g_without = stats_of(&sphere, false, false).g_max_total;
    if g_with > g_without {
        return Err(format!("sphere G_m {g_with} with reordering > {g_without} without"));
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("peak g_1 1 vs 2; sphere G_m {g_with} vs {g_without}; {elapsed:.2?}"))
}

/// Points sampled uniformly in angle on a torus with radii 2 and 1.
pub fn torus_cloud(n: usize, seed: u64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    let pts = (0..n)
        .map(|_| {
            let (u, v) = (rng.gen::<f64>() * tau, rng.gen::<f64>() * tau);
            vec![(2.0 + v.cos()) * u.cos(), (2.0 + v.cos()) * u.sin(), v.sin()]
        })
        .collect();
    PointCloud::new(pts).unwrap()
}

pub fn check_compression() -> Check {
    let start = Instant::now();
    let c = build_rips(&torus_cloud(TORUS_POINTS, TORUS_SEED), TORUS_RHO, 2).map_err(|e| e.to_string())?;
    let stats = stats_of(&c, true, true);
    let mut detail = Vec::new();
    for q in 0..=2 {
        let n = c.count_of_dim(q);
        let d = stats.per_dim_peaks.get(q).cloned().unwrap_or_default();
        if d.s_m >= n {
            return Err(format!("dim {q}: s_m {} not below {n} simplices", d.s_m));
        }
        if d.s_m > COMPRESSION_FACTOR * d.g_m {
            return Err(format!("dim {q}: s_m {} exceeds {COMPRESSION_FACTOR} * g_m {}", d.s_m, d.g_m));
        }
        detail.push(format!("dim {q}: n={n} g_m={} s_m={}", d.g_m, d.s_m));
    }
    if stats.s_max_total >= c.len() {
        return Err(format!("S_m {} not below {} simplices", stats.s_max_total, c.len()));
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 30.0 {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("{}; S_m={}; {elapsed:.2?}", detail.join(", "), stats.s_max_total))
}

/// Engine with the exhaustive matrix checks after every operation, plus a
/// direct check that boundaries compose to zero.
pub fn check_structural_invariants(corpus: &[(String, FilteredComplex)]) -> Check {
    let mut runs = 0;
    for (name, c) in corpus {
        for p in [2, 3, 11] {
            let f = z(p);
            boundary_squared_zero(c, &f).map_err(|e| format!("{name} p={p}: {e}"))?;
            for (lazy, re) in [(false, false), (true, false), (false, true), (true, true)] {
                let opts = EngineOptions { lazy, reorder: re, check_invariants: true, ..Default::default() };
                compute_persistence(c, f, opts).map_err(|e| format!("{name} p={p}: {e}"))?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} checked runs, zero violations"))
}

pub fn boundary_squared_zero(c: &FilteredComplex, f: &FieldSpec) -> Result<(), String> {
    use std::collections::HashMap;
    for &id in c.filtration_order() {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for outer in c.boundary(id) {
            for inner in c.boundary(outer.face) {
                *acc.entry(inner.face.index()).or_default() += (outer.sign * inner.sign) as i64;
            }
        }
        if acc.values().any(|&v| !f.element(v).is_zero()) {
            return Err(format!("boundary of boundary of {} is nonzero", c.simplex(id)));
        }
    }
    Ok(())
}

/// Runs the binary twice on each fixture and compares the output bytes.
pub fn check_cli_determinism(bin: &str) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = 0;
    for (i, (name, c)) in fixture_corpus().iter().enumerate().step_by(2) {
        let input = dir.path().join(format!("in{i}.flt"));
        camcoh::io::write_filtration(c, &input, None).map_err(|e| e.to_string())?;
        for p in ["2", "3"] {
            let mut outputs = Vec::new();
            for run in 0..2 {
                let out = dir.path().join(format!("out{i}_{p}_{run}.dgm"));
                let status = std::process::Command::new(bin)
                    .args(["--input", input.to_str().unwrap(), "--field", p, "--stats", "--output", out.to_str().unwrap()])
                    .status()
                    .map_err(|e| e.to_string())?;
                if !status.success() {
                    return Err(format!("{name}: exit status {status}"));
                }
                outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
            }
            if outputs[0] != outputs[1] {
                return Err(format!("{name} p={p}: outputs differ"));
            }
            files += 1;
        }
    }
    Ok(format!("{files} configurations byte-identical"))
}
