//! Drawing a permutation (with colors when the law is colored) and evaluating a statistic.

use permlab_core::sampling::{sample_colored, ColoredPermutation, LawSpec};
use permlab_core::stats::StatisticSpec;
use permlab_core::walks::run_to_single_cycle;
use permlab_core::{Permutation, RandomSource};

use crate::error::Result;

/// A draw from a law descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum Draw {
    Plain(Permutation),
    Colored(ColoredPermutation),
}

impl Draw {
    pub fn sample(law: &LawSpec, n: usize, rng: &mut RandomSource) -> Result<Self> {
        Ok(match law {
            LawSpec::Colored { m, base } => Self::Colored(sample_colored(n, *m, base, rng)?),
            _ => Self::Plain(law.sample(n, rng)?),
        })
    }

    pub fn sigma(&self) -> &Permutation {
        match self {
            Self::Plain(s) => s,
            Self::Colored(pi) => pi.sigma(),
        }
    }

    pub fn eval(&self, stat: &StatisticSpec) -> Result<f64> {
        Ok(match self {
            Self::Plain(s) => stat.eval(s)?,
            Self::Colored(pi) => stat.eval_colored(pi)?,
        })
    }

    /// Runs the merge walk on the permutation part; colors are carried along unchanged.
    pub fn merge_to_cycle(&self, rng: &mut RandomSource) -> Result<(Self, usize)> {
        let (end, trace) = run_to_single_cycle(self.sigma(), rng, false);
        let out = match self {
            Self::Plain(_) => Self::Plain(end),
            Self::Colored(pi) => Self::Colored(ColoredPermutation::new(end, pi.colors().to_vec(), pi.m())?),
        };
        Ok((out, trace.steps))
    }
}

impl std::fmt::Display for Draw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Plain(s) => write!(f, "{s}"),
            Self::Colored(pi) => {
                let colors: Vec<String> = pi.colors().iter().map(ToString::to_string).collect();
                write!(f, "{}|{}", pi.sigma(), colors.join(","))
            }
        }
    }
}
