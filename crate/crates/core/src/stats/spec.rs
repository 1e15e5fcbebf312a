//! Statistic descriptors used by the harness and the oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sampling::ColoredPermutation;

use super::local::*;
use super::rsk::{height_sup_distance, rsk_shape};
use super::subsequences::{colored_lis, lds, ldcs, lics, lis};
use super::vincular::{vincular_count, VincularPattern};

/// Vertex selector for `deg:k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeVertex {
    At(usize),
    Mid,
    Last,
}

impl DegreeVertex {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Self::At(k) => k,
            Self::Mid => n.div_ceil(2),
            Self::Last => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatisticSpec {
    Lis,
    Lds,
    Lics,
    Ldcs,
    RskRow(usize),
    RskPrefix(usize),
    HeightDistance,
    Las,
    Descents,
    JDescents(usize),
    Exceedances(usize),
    Peaks,
    FixedPoints,
    Cycles,
    CyclesOfLength(usize),
    TracePower(u64),
    Clicks(usize),
    Degree(DegreeVertex),
    Vincular(VincularPattern),
    DescentSet(Vec<usize>),
    ColoredLis,
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
        .collect()
}

fn positive(s: &str, what: &str) -> Result<usize> {
    s.parse::<usize>()
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| Error::Parse(format!("bad {what} `{s}`")))
}

impl StatisticSpec {
    /// Parses descriptors such as `lis`, `rsk:2`, `desc:3`, `deg:mid`, `vinc:132:1`, `descset:1,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let spec = match (head, rest) {
            ("lis", "") => Self::Lis,
            ("lds", "") => Self::Lds,
            ("lics", "") => Self::Lics,
            ("ldcs", "") => Self::Ldcs,
            ("rsk", i) => Self::RskRow(positive(i, "row index")?),
            ("rsk-prefix", i) => Self::RskPrefix(positive(i, "row index")?),
            ("height-dist", "") => Self::HeightDistance,
            ("las", "") => Self::Las,
            ("desc", "") => Self::Descents,
            ("desc", j) => Self::JDescents(positive(j, "descent gap")?),
            ("exc", j) => Self::Exceedances(j.parse().map_err(|_| Error::Parse(format!("bad exceedance gap `{j}`")))?),
            ("peaks", "") => Self::Peaks,
            ("fix", "") => Self::FixedPoints,
            ("cycles", "") => Self::Cycles,
            ("cyc", j) => Self::CyclesOfLength(positive(j, "cycle length")?),
            ("trace", k) => Self::TracePower(positive(k, "power")? as u64),
            ("inv", "") => Self::Clicks(2),
            ("clicks", j) => Self::Clicks(positive(j, "clique size")?),
            ("deg", k) => Self::Degree(match k {
                "mid" => DegreeVertex::Mid,
                "last" => DegreeVertex::Last,
                k => DegreeVertex::At(positive(k, "vertex")?),
            }),
            ("vinc", body) => {
                let (tau, x) = body.split_once(':').unwrap_or((body, ""));
                Self::Vincular(VincularPattern::parse(tau, x)?)
            }
            ("descset", a) => {
                let a = parse_list(a)?;
                if a.is_empty() || a.contains(&0) {
                    return Err(Error::Parse(format!("bad descent set in `{s}`")));
                }
                Self::DescentSet(a)
            }
            ("colored-lis", "") => Self::ColoredLis,
            _ => return Err(Error::Parse(format!("unknown statistic `{s}`"))),
        };
        Ok(spec)
    }

    /// Whether the statistic is integer valued (and therefore admits exact laws).
    pub fn is_integer(&self) -> bool {
        !matches!(self, Self::HeightDistance)
    }

    /// Integer value of the statistic; errors for real-valued or colored statistics.
    pub fn eval_int(&self, sigma: &Permutation) -> Result<i64> {
        let n = sigma.len();
        let v = match self {
            Self::Lis => lis(sigma) as i64,
            Self::Lds => lds(sigma) as i64,
            Self::Lics => lics(sigma) as i64,
            Self::Ldcs => ldcs(sigma) as i64,
            Self::RskRow(i) => rsk_shape(sigma).part(*i) as i64,
            Self::RskPrefix(i) => rsk_shape(sigma).prefix_sum(*i) as i64,
            Self::Las => las(sigma) as i64,
            Self::Descents => descent_count(sigma) as i64,
            Self::JDescents(j) => j_descent_count(sigma, *j) as i64,
            Self::Exceedances(j) => exceedance_count(sigma, *j) as i64,
            Self::Peaks => peak_count(sigma) as i64,
            Self::FixedPoints => fixed_point_count(sigma) as i64,
            Self::Cycles => sigma.num_cycles() as i64,
            Self::CyclesOfLength(j) => cycles_of_length(sigma, *j) as i64,
            Self::TracePower(k) => trace_power(sigma, *k) as i64,
            Self::Clicks(j) => i64::try_from(clicks(sigma, *j)?)
                .map_err(|_| Error::Degenerate("click count exceeds 64 bits".into()))?,
            Self::Degree(k) => degree(sigma, k.resolve(n))? as i64,
            Self::Vincular(p) => vincular_count(sigma, p)? as i64,
            Self::DescentSet(a) => descent_indicator(sigma, a)? as i64,
            Self::HeightDistance => return Err(Error::InvalidParameter("height-dist is real valued".into())),
            Self::ColoredLis => return Err(Error::InvalidParameter("colored-lis needs a colored permutation".into())),
        };
        Ok(v)
    }

    pub fn eval(&self, sigma: &Permutation) -> Result<f64> {
        match self {
            Self::HeightDistance => height_sup_distance(&rsk_shape(sigma), sigma.len()),
            _ => self.eval_int(sigma).map(|v| v as f64),
        }
    }

    pub fn eval_colored(&self, pi: &ColoredPermutation) -> Result<f64> {
        match self {
            Self::ColoredLis => Ok(colored_lis(pi) as f64),
            _ => self.eval(pi.sigma()),
        }
    }

    /// `(k, m)` when the statistic is local of type `k` with window `m`.
    pub fn local_type(&self) -> Option<(usize, usize)> {
        match self {
            Self::FixedPoints | Self::Exceedances(_) => Some((1, 1)),
            Self::Descents | Self::JDescents(_) => Some((1, 2)),
            Self::Peaks | Self::Las => Some((1, 3)),
            Self::Clicks(j) => Some((*j, 1)),
            Self::CyclesOfLength(j) => Some((*j, 1)),
            Self::TracePower(k) => Some((*k as usize, 1)),
            Self::Degree(_) => Some((2, 1)),
            Self::DescentSet(a) => Some((a.len(), 2)),
            _ => None,
        }
    }
}

impl fmt::Display for StatisticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lis => write!(f, "lis"),
            Self::Lds => write!(f, "lds"),
            Self::Lics => write!(f, "lics"),
            Self::Ldcs => write!(f, "ldcs"),
            Self::RskRow(i) => write!(f, "rsk:{i}"),
            Self::RskPrefix(i) => write!(f, "rsk-prefix:{i}"),
            Self::HeightDistance => write!(f, "height-dist"),
            Self::Las => write!(f, "las"),
            Self::Descents => write!(f, "desc"),
            Self::JDescents(j) => write!(f, "desc:{j}"),
            Self::Exceedances(j) => write!(f, "exc:{j}"),
            Self::Peaks => write!(f, "peaks"),
            Self::FixedPoints => write!(f, "fix"),
            Self::Cycles => write!(f, "cycles"),
            Self::CyclesOfLength(j) => write!(f, "cyc:{j}"),
            Self::TracePower(k) => write!(f, "trace:{k}"),
            Self::Clicks(j) => write!(f, "clicks:{j}"),
            Self::Degree(DegreeVertex::At(k)) => write!(f, "deg:{k}"),
            Self::Degree(DegreeVertex::Mid) => write!(f, "deg:mid"),
            Self::Degree(DegreeVertex::Last) => write!(f, "deg:last"),
            Self::Vincular(p) => {
                let tau: String = p.tau().one_line().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
                let x: Vec<String> = p.adjacency().iter().map(|i| i.to_string()).collect();
                write!(f, "vinc:{tau}:{}", x.join(","))
            }
            Self::DescentSet(a) => {
                let a: Vec<String> = a.iter().map(|i| i.to_string()).collect();
                write!(f, "descset:{}", a.join(","))
            }
            Self::ColoredLis => write!(f, "colored-lis"),
        }
    }
}
