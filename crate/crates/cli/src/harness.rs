//! Benchmark harness: generated instances, one search per instance,
//! aggregated per-structure rows.
//!
//! Instances run concurrently; instance `i` of a run always generates from
//! stream `derive_seed(seed, i)` and searches with stream
//! `derive_seed(derive_seed(seed, i), 1)`, so all reported statistics are
//! independent of scheduling and repeat runs reproduce Success and
//! Iterations exactly. Wall-clock columns are measured around the search
//! only and naturally vary between runs.

use std::io::Write;
use std::time::Instant;

use anyhow::{Context, bail};
use rayon::prelude::*;
use serde::Serialize;

use msdecomp_core::{InstanceSpec, SearchConfig, derive_seed, generate_nth, iterated_search};

/// Parameters of one benchmark row.
#[derive(Debug, Clone)]
pub struct BenchParams {
    pub structure: Vec<u64>,
    pub range: u64,
    pub count: u64,
    pub seed: u64,
    pub max_iterations: u64,
    pub deterministic_neighbor_order: bool,
}

/// Outcome of a single instance.
#[derive(Debug, Clone, Copy)]
pub struct InstanceRun {
    pub found: bool,
    /// Local optima visited; failed runs count the whole budget.
    pub iterations: u64,
    pub seconds: f64,
}

/// One benchmark table row. Iterations average over all runs, with failures
/// contributing the full budget; the ratio columns are derived from the
/// averages as printed.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub size: u64,
    pub structure: String,
    pub success_pct: f64,
    pub iterations_avg: f64,
    pub time_avg_s: f64,
    pub time_per_iter_s: f64,
    pub time_per_size_s: f64,
    pub seed: u64,
    pub instance_count: u64,
}

/// A row plus its raw per-instance runs.
#[derive(Debug, Clone)]
pub struct StructureBench {
    pub record: BenchRecord,
    pub runs: Vec<InstanceRun>,
    /// Average iterations over successful runs only; absent when none succeed.
    pub iterations_avg_success: Option<f64>,
}

/// JSON shape of a row; carries both iteration averages and the range, which
/// the CSV schema does not include.
#[derive(Debug, Clone, Serialize)]
pub struct BenchJsonRecord {
    pub size: u64,
    pub structure: String,
    pub range: u64,
    pub max_iterations: u64,
    pub success_pct: f64,
    pub iterations_avg: f64,
    pub iterations_avg_success: Option<f64>,
    pub time_avg_s: f64,
    pub time_per_iter_s: f64,
    pub time_per_size_s: f64,
    pub seed: u64,
    pub instance_count: u64,
    pub failures: u64,
}

/// Expands a structure spec: comma-separated entries, each `v` or `v^k`
/// (`2^10` means ten factors of cardinality 2).
pub fn parse_structure(text: &str) -> anyhow::Result<Vec<u64>> {
    let mut out = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        if token.is_empty() {
            bail!("empty entry in structure `{text}`");
        }
        match token.split_once('^') {
            Some((base, power)) => {
                let base: u64 = base
                    .trim()
                    .parse()
                    .with_context(|| format!("invalid cardinality `{base}` in `{text}`"))?;
                let power: usize = power
                    .trim()
                    .parse()
                    .with_context(|| format!("invalid power `{power}` in `{text}`"))?;
                if power == 0 {
                    bail!("power must be at least 1 in `{token}`");
                }
                out.extend(std::iter::repeat_n(base, power));
            }
            None => out.push(
                token
                    .parse()
                    .with_context(|| format!("invalid cardinality `{token}` in `{text}`"))?,
            ),
        }
    }
    Ok(out)
}

/// Runs all instances of one structure and aggregates the row. The target
/// cardinality is the smallest structure entry (the search assumes the
/// factor cardinality is known, as the instances are generated with it).
pub fn run_bench(params: &BenchParams) -> anyhow::Result<StructureBench> {
    if params.count == 0 {
        bail!("instance count must be at least 1");
    }
    let spec = InstanceSpec::new(params.structure.clone(), params.range, params.seed)?;
    if spec.is_trivially_structured() {
        bail!(
            "structure {} is trivial (fewer than two factors, or a factor of cardinality 1); \
             instances would not be guaranteed reducible",
            spec.structure_label()
        );
    }
    let size = spec.expected_cardinality()?;
    let target_cardinality = *spec.structure.iter().min().expect("structure is non-empty");

    let runs: Vec<InstanceRun> = (0..params.count)
        .into_par_iter()
        .map(|index| -> anyhow::Result<InstanceRun> {
            let generated = generate_nth(&spec, index)?;
            let config = SearchConfig {
                max_iterations: params.max_iterations,
                seed: derive_seed(derive_seed(params.seed, index), 1),
                deterministic_neighbor_order: params.deterministic_neighbor_order,
            };
            let started = Instant::now();
            let outcome = iterated_search(&generated.instance, target_cardinality, &config)
                .expect("generated instances admit the smallest structure entry");
            let seconds = started.elapsed().as_secs_f64();
            Ok(match outcome {
                Some(success) => InstanceRun {
                    found: true,
                    iterations: success.iterations,
                    seconds,
                },
                None => InstanceRun {
                    found: false,
                    iterations: params.max_iterations,
                    seconds,
                },
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;

    let count = params.count as f64;
    let found: Vec<&InstanceRun> = runs.iter().filter(|r| r.found).collect();
    let success_pct = 100.0 * found.len() as f64 / count;
    let iterations_avg = runs.iter().map(|r| r.iterations as f64).sum::<f64>() / count;
    let time_avg_s = runs.iter().map(|r| r.seconds).sum::<f64>() / count;
    let time_per_iter_s = if iterations_avg > 0.0 {
        time_avg_s / iterations_avg
    } else {
        0.0
    };
    let time_per_size_s = time_avg_s / size as f64;
    let iterations_avg_success = if found.is_empty() {
        None
    } else {
        Some(found.iter().map(|r| r.iterations as f64).sum::<f64>() / found.len() as f64)
    };

    Ok(StructureBench {
        record: BenchRecord {
            size,
            structure: spec.structure_label(),
            success_pct,
            iterations_avg,
            time_avg_s,
            time_per_iter_s,
            time_per_size_s,
            seed: params.seed,
            instance_count: params.count,
        },
        runs,
        iterations_avg_success,
    })
}

pub const CSV_HEADER: [&str; 9] = [
    "Size",
    "Structure",
    "Success",
    "Iterations",
    "Time",
    "Time/Iter",
    "Time/Size",
    "Seed",
    "Count",
];

/// Stable machine-readable CSV; Success and Iterations are deterministic for
/// a fixed seed, the time columns are not.
pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> anyhow::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for r in records {
        writer.write_record([
            r.size.to_string(),
            r.structure.clone(),
            r.success_pct.to_string(),
            r.iterations_avg.to_string(),
            format!("{:.6}", r.time_avg_s),
            format!("{:.6}", r.time_per_iter_s),
            format!("{:.8}", r.time_per_size_s),
            r.seed.to_string(),
            r.instance_count.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Human-readable aligned table with the same columns as the CSV.
pub fn write_table<W: Write>(mut out: W, records: &[BenchRecord]) -> anyhow::Result<()> {
    writeln!(
        out,
        "{:>8}  {:<12} {:>8} {:>11} {:>10} {:>10} {:>11} {:>12} {:>6}",
        "Size",
        "Structure",
        "Success",
        "Iterations",
        "Time",
        "Time/Iter",
        "Time/Size",
        "Seed",
        "Count"
    )?;
    for r in records {
        writeln!(
            out,
            "{:>8}  {:<12} {:>8} {:>11} {:>10.6} {:>10.6} {:>11.8} {:>12} {:>6}",
            r.size,
            r.structure,
            r.success_pct,
            r.iterations_avg,
            r.time_avg_s,
            r.time_per_iter_s,
            r.time_per_size_s,
            r.seed,
            r.instance_count
        )?;
    }
    Ok(())
}

pub fn to_json_record(bench: &StructureBench, range: u64, max_iterations: u64) -> BenchJsonRecord {
    let r = &bench.record;
    BenchJsonRecord {
        size: r.size,
        structure: r.structure.clone(),
        range,
        max_iterations,
        success_pct: r.success_pct,
        iterations_avg: r.iterations_avg,
        iterations_avg_success: bench.iterations_avg_success,
        time_avg_s: r.time_avg_s,
        time_per_iter_s: r.time_per_iter_s,
        time_per_size_s: r.time_per_size_s,
        seed: r.seed,
        instance_count: r.instance_count,
        failures: bench.runs.iter().filter(|run| !run.found).count() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_shorthand() {
        assert_eq!(parse_structure("5,5").unwrap(), vec![5, 5]);
        assert_eq!(parse_structure("2^10").unwrap(), vec![2; 10]);
        assert_eq!(parse_structure("3^2,5").unwrap(), vec![3, 3, 5]);
        assert_eq!(parse_structure("20, 10").unwrap(), vec![20, 10]);
        assert!(parse_structure("").is_err());
        assert!(parse_structure("2^0").is_err());
        assert!(parse_structure("a").is_err());
    }

    #[test]
    fn bench_rows_are_deterministic_and_consistent() {
        let params = BenchParams {
            structure: vec![3, 3],
            range: 5,
            count: 20,
            seed: 4,
            max_iterations: 100,
            deterministic_neighbor_order: true,
        };
        let first = run_bench(&params).unwrap();
        let second = run_bench(&params).unwrap();
        assert_eq!(first.record.success_pct, second.record.success_pct);
        assert_eq!(first.record.iterations_avg, second.record.iterations_avg);
        assert_eq!(first.record.size, 9);
        assert_eq!(first.record.structure, "3,3");
        // Ratio columns follow from the averages.
        let r = &first.record;
        assert!((r.time_per_iter_s - r.time_avg_s / r.iterations_avg).abs() < 1e-12);
        assert!((r.time_per_size_s - r.time_avg_s / r.size as f64).abs() < 1e-12);
    }

    #[test]
    fn trivial_structures_are_refused() {
        for structure in [vec![1, 4], vec![3]] {
            let params = BenchParams {
                structure,
                range: 5,
                count: 5,
                seed: 0,
                max_iterations: 100,
                deterministic_neighbor_order: true,
            };
            assert!(run_bench(&params).is_err());
        }
    }

    #[test]
    fn csv_has_the_pinned_header() {
        let params = BenchParams {
            structure: vec![2, 2],
            range: 3,
            count: 5,
            seed: 1,
            max_iterations: 100,
            deterministic_neighbor_order: true,
        };
        let bench = run_bench(&params).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &[bench.record]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "Size,Structure,Success,Iterations,Time,Time/Iter,Time/Size,Seed,Count"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("4,\"2,2\","), "row was: {row}");
    }
}
