//! Run configuration shared by every subcommand.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use braidalg::braided::Backend;
use braidalg::qscalar::{Field, Rational};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;

/// Output encoding of a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum BackendKind {
    Exact,
    #[default]
    Specialize,
}

/// Specialization points a seed may draw from when `--q0` is not given.
const SEEDED_POINTS: [(i64, i64); 12] = [
    (7, 5),
    (2, 1),
    (3, 2),
    (5, 3),
    (-2, 1),
    (-3, 2),
    (4, 3),
    (7, 3),
    (-5, 4),
    (9, 7),
    (3, 1),
    (11, 8),
];

/// Specialization point drawn from `seed` when `--q0` is absent.
pub fn seeded_q0(seed: u64) -> Rational {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let &(n, d) = SEEDED_POINTS.choose(&mut rng).expect("point list is nonempty");
    Rational::new(n, d)
}

/// Validated configuration of one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "serialize_backend")]
    pub backend: Backend,
    pub seed: Option<u64>,
    pub max_block: usize,
    pub max_degree: usize,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

fn serialize_backend<S: serde::Serializer>(b: &Backend, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(b)
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            backend: Backend::default(),
            seed: None,
            max_block: braidalg::braided::DEFAULT_MAX_BLOCK,
            max_degree: 16,
            format: Format::Json,
            cache_dir: None,
        }
    }
}

impl RunConfig {
    /// Assemble and validate a configuration from raw flag values.
    ///
    /// With the specialize backend, `q0` wins over `seed`; a seed alone
    /// picks a point from a fixed list, and neither gives `7/5`.
    pub fn build(
        backend: BackendKind,
        q0: Option<&str>,
        seed: Option<u64>,
        max_block: usize,
        max_degree: usize,
        format: Format,
        cache_dir: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        if max_block == 0 || max_degree == 0 {
            return Err(CliError::Usage("limits must be positive".into()));
        }
        let backend = match backend {
            BackendKind::Exact => {
                if q0.is_some() {
                    return Err(CliError::Usage("--q0 only applies to the specialize backend".into()));
                }
                Backend::Exact
            }
            BackendKind::Specialize => {
                let point = match (q0, seed) {
                    (Some(s), _) => Rational::from_str(s).map_err(|e| CliError::Usage(e.to_string()))?,
                    (None, Some(seed)) => seeded_q0(seed),
                    (None, None) => Backend::default_q0(),
                };
                if point.is_zero() || point.abs() == Rational::one() {
                    return Err(CliError::Usage(format!("q0 = {point} is degenerate; pick q0 outside {{0, 1, -1}}")));
                }
                Backend::Specialize(point)
            }
        };
        Ok(RunConfig {
            backend,
            seed,
            max_block,
            max_degree,
            format,
            cache_dir,
        })
    }

    pub fn check_degree(&self, what: &str, degree: usize) -> Result<(), CliError> {
        if degree > self.max_degree {
            return Err(CliError::Usage(format!(
                "{what} reaches degree {degree}, above --max-degree {}",
                self.max_degree
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_points_are_rejected() {
        for bad in ["0", "1", "-1", "2/2", "x"] {
            let r = RunConfig::build(BackendKind::Specialize, Some(bad), None, 10, 10, Format::Json, None);
            assert!(matches!(r, Err(CliError::Usage(_))), "{bad}");
        }
        assert!(RunConfig::build(BackendKind::Exact, None, None, 0, 10, Format::Json, None).is_err());
        assert!(RunConfig::build(BackendKind::Exact, Some("7/5"), None, 10, 10, Format::Json, None).is_err());
    }

    #[test]
    fn point_selection() {
        let c = RunConfig::build(BackendKind::Specialize, None, None, 10, 10, Format::Json, None).unwrap();
        assert_eq!(c.backend, Backend::Specialize(Rational::new(7, 5)));
        let c = RunConfig::build(BackendKind::Specialize, Some("-3/2"), Some(9), 10, 10, Format::Json, None).unwrap();
        assert_eq!(c.backend, Backend::Specialize(Rational::new(-3, 2)));
        let a = RunConfig::build(BackendKind::Specialize, None, Some(4), 10, 10, Format::Json, None).unwrap();
        let b = RunConfig::build(BackendKind::Specialize, None, Some(4), 10, 10, Format::Json, None).unwrap();
        assert_eq!(a, b);
    }
}
