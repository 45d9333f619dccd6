//! Reproducible generation of reducible benchmark instances.
//!
//! An instance is the Minkowski sum of `structure.len()` random multisets:
//! the i-th has cardinality `structure[i]`, elements drawn uniformly from
//! `[0, range]` (both ends inclusive), and its first draw overwritten with 0
//! so every factor contains 0. The ground-truth factors are kept alongside
//! the instance. Generation is pure given the seed: the RNG is ChaCha8 and
//! instance `index` of a spec always uses the stream `derive_seed(seed, index)`,
//! so files are reproducible element for element.

use std::io::{self, BufRead, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::multiset::{Multiset, MultisetError, ParseMultisetError};
use crate::seeding::derive_seed;

/// Name of the generator recorded in instance file headers.
pub const GENERATOR_ID: &str = "chacha8";

/// Generator parameters: factor cardinalities, element upper bound, seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub structure: Vec<u64>,
    pub range: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("structure must list at least one factor cardinality")]
    EmptyStructure,
    #[error("structure entries must be at least 1")]
    ZeroCardinality,
    #[error(transparent)]
    Multiset(#[from] MultisetError),
}

impl InstanceSpec {
    pub fn new(structure: Vec<u64>, range: u64, seed: u64) -> Result<Self, InstanceError> {
        if structure.is_empty() {
            return Err(InstanceError::EmptyStructure);
        }
        if structure.contains(&0) {
            return Err(InstanceError::ZeroCardinality);
        }
        Ok(Self {
            structure,
            range,
            seed,
        })
    }

    /// Product of the structure entries, i.e. the instance cardinality.
    pub fn expected_cardinality(&self) -> Result<u64, InstanceError> {
        let mut product: u64 = 1;
        for &c in &self.structure {
            product =
                product
                    .checked_mul(c)
                    .ok_or(InstanceError::Multiset(MultisetError::Overflow(
                        "cardinality product",
                    )))?;
        }
        Ok(product)
    }

    /// A spec is trivially structured when it cannot guarantee a reducible
    /// instance: fewer than two factors, or a factor of cardinality 1.
    pub fn is_trivially_structured(&self) -> bool {
        self.structure.len() < 2 || self.structure.iter().any(|&c| c < 2)
    }

    /// Structure rendered compactly: uniform lists of three or more entries
    /// as `v^k`, everything else comma-joined.
    pub fn structure_label(&self) -> String {
        let first = self.structure[0];
        if self.structure.len() >= 3 && self.structure.iter().all(|&c| c == first) {
            format!("{}^{}", first, self.structure.len())
        } else {
            self.structure
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

/// An instance together with the factors that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub instance: Multiset,
    pub factors: Vec<Multiset>,
    pub spec: InstanceSpec,
}

/// Generates one instance from the given RNG stream.
pub fn generate<R: Rng + ?Sized>(
    spec: &InstanceSpec,
    rng: &mut R,
) -> Result<GeneratedInstance, InstanceError> {
    if spec.structure.is_empty() {
        return Err(InstanceError::EmptyStructure);
    }
    if spec.structure.contains(&0) {
        return Err(InstanceError::ZeroCardinality);
    }
    let mut factors = Vec::with_capacity(spec.structure.len());
    let mut instance = Multiset::identity();
    for &cardinality in &spec.structure {
        let mut values: Vec<u64> = (0..cardinality)
            .map(|_| rng.random_range(0..=spec.range))
            .collect();
        values[0] = 0; // every factor contains at least one 0
        let factor = Multiset::from_elements(values).expect("cardinality is at least 1");
        instance = instance.minkowski_sum(&factor)?;
        factors.push(factor);
    }
    Ok(GeneratedInstance {
        instance,
        factors,
        spec: spec.clone(),
    })
}

/// Generates instance number `index` of a spec, on its own derived stream.
/// The same `(spec, index)` always produces the same instance.
pub fn generate_nth(spec: &InstanceSpec, index: u64) -> Result<GeneratedInstance, InstanceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.seed, index));
    generate(spec, &mut rng)
}

fn header_line(spec: &InstanceSpec) -> String {
    let structure = spec
        .structure
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "# structure={} range={} seed={} rng={}",
        structure, spec.range, spec.seed, GENERATOR_ID
    )
}

/// Writes the instance file format: one header line, then one instance per
/// line as a flat element list.
pub fn write_instances<W: Write>(
    out: &mut W,
    spec: &InstanceSpec,
    instances: &[GeneratedInstance],
) -> io::Result<()> {
    writeln!(out, "{}", header_line(spec))?;
    for g in instances {
        writeln!(out, "{}", g.instance)?;
    }
    Ok(())
}

/// Writes the ground-truth sidecar: same header, then per instance the
/// factors joined by ` | `.
pub fn write_factor_sidecar<W: Write>(
    out: &mut W,
    spec: &InstanceSpec,
    instances: &[GeneratedInstance],
) -> io::Result<()> {
    writeln!(out, "{}", header_line(spec))?;
    for g in instances {
        let line = g
            .factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(" | ");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// A failure while reading a multiset file, with its 1-based line number.
#[derive(Debug, Error)]
pub enum ReadError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: ParseMultisetError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reads every multiset from a file in the instance format. Lines starting
/// with `#` and blank lines are skipped.
pub fn read_multisets<R: BufRead>(input: R) -> Result<Vec<Multiset>, ReadError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ms = trimmed
            .parse::<Multiset>()
            .map_err(|source| ReadError::Parse {
                line: i + 1,
                source,
            })?;
        out.push(ms);
    }
    Ok(out)
}
