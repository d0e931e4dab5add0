use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use super::{Family, GeneratedInstance, InstanceMeta};
use crate::error::{Error, Result};
use crate::geom::Point;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    /// Uniform in `[0, 1]^d`.
    #[default]
    UniformCube,
    /// About `sqrt n` Gaussian blobs of about `sqrt n` points each.
    Clustered,
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "uniform" | "uniform-cube" => Ok(Distribution::UniformCube),
            "clustered" => Ok(Distribution::Clustered),
            other => Err(Error::InvalidParameter(format!("unknown distribution '{other}'"))),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution::UniformCube => "uniform-cube",
            Distribution::Clustered => "clustered",
        })
    }
}

/// `n` random points in dimension `d`, deterministic in `seed`.
pub fn gen_random(n: usize, d: usize, distribution: Distribution, seed: u64) -> Result<GeneratedInstance> {
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = match distribution {
        Distribution::UniformCube => (0..n)
            .map(|_| Point::new((0..d).map(|_| rng.random::<f64>()).collect::<Vec<_>>()))
            .collect(),
        Distribution::Clustered => {
            let blobs = (n as f64).sqrt().ceil() as usize;
            let centers: Vec<Vec<f64>> = (0..blobs)
                .map(|_| (0..d).map(|_| rng.random::<f64>()).collect())
                .collect();
            let spread = Normal::new(0.0, 0.1 / blobs as f64).expect("positive sigma");
            (0..n)
                .map(|i| {
                    let c = &centers[i % blobs];
                    Point::new(c.iter().map(|&x| x + rng.sample(spread)).collect::<Vec<_>>())
                })
                .collect()
        }
    };
    let mut meta = InstanceMeta::new(Family::Random, n, d);
    meta.seed = Some(seed);
    meta.distribution = Some(distribution);
    GeneratedInstance::build(points, None, meta)
}
