//! Branch data of candidate branched covers of curves.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("invalid branch datum: {0}")]
    InvalidDatum(String),
    #[error("Riemann-Hurwitz gives a non-integral source genus ({0}/2)")]
    NonIntegral(i64),
    #[error("Riemann-Hurwitz gives a negative source genus ({0})")]
    Negative(i64),
    #[error("m*d - m~ = {0} is odd")]
    ParityViolation(i64),
    #[error("source genus is unknown")]
    UnknownSourceGenus,
    #[error("branch datum is not compatible")]
    IncompatibleDatum,
}

/// `(g_source, g_target, m, d, partitions)`; `m` is implied by the number of
/// partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDatum {
    #[serde(default)]
    pub g_source: Option<u32>,
    pub g_target: u32,
    pub m: u32,
    pub d: u32,
    pub partitions: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realizability {
    Realizable,
    Unknown,
}

impl BranchDatum {
    pub fn new(g_source: Option<u32>, g_target: u32, d: u32, partitions: Vec<Vec<u32>>) -> Self {
        BranchDatum {
            g_source,
            g_target,
            m: partitions.len() as u32,
            d,
            partitions,
        }
    }

    pub fn validate(&self) -> Result<(), HurwitzError> {
        let bad = |m: String| Err(HurwitzError::InvalidDatum(m));
        if self.d < 2 {
            return bad(format!("degree d = {} < 2", self.d));
        }
        if self.partitions.len() != self.m as usize {
            return bad(format!(
                "m = {} but {} partitions given",
                self.m,
                self.partitions.len()
            ));
        }
        for (i, p) in self.partitions.iter().enumerate() {
            if p.contains(&0) {
                return bad(format!("partition {} has a zero part", i + 1));
            }
            let total: u64 = p.iter().map(|&x| u64::from(x)).sum();
            if total != u64::from(self.d) {
                return bad(format!(
                    "partition {} sums to {total}, expected d = {}",
                    i + 1,
                    self.d
                ));
            }
        }
        Ok(())
    }

    /// Total number of preimages of the branch points.
    pub fn m_tilde(&self) -> u32 {
        self.partitions.iter().map(|p| p.len() as u32).sum()
    }

    fn parity_defect(&self) -> i64 {
        i64::from(self.m) * i64::from(self.d) - i64::from(self.m_tilde())
    }

    /// Riemann–Hurwitz plus the parity condition.
    pub fn is_compatible(&self) -> Result<bool, HurwitzError> {
        self.validate()?;
        let g_source = self.g_source.ok_or(HurwitzError::UnknownSourceGenus)?;
        let lhs = 2 - 2 * i64::from(g_source) - i64::from(self.m_tilde());
        let rhs = i64::from(self.d) * (2 - 2 * i64::from(self.g_target) - i64::from(self.m));
        Ok(lhs == rhs && self.parity_defect() % 2 == 0)
    }

    /// Sufficient criterion only: a cover of the projective line with one
    /// totally ramified branch point exists for any compatible datum.
    pub fn realizability(&self) -> Result<Realizability, HurwitzError> {
        if !self.is_compatible()? {
            return Err(HurwitzError::IncompatibleDatum);
        }
        let total = self
            .partitions
            .iter()
            .any(|p| p.len() == 1 && p[0] == self.d);
        Ok(if self.g_target == 0 && total {
            Realizability::Realizable
        } else {
            Realizability::Unknown
        })
    }
}

/// Genus of the source curve forced by Riemann–Hurwitz.
pub fn solve_source_genus(
    g_target: u32,
    d: u32,
    partitions: &[Vec<u32>],
) -> Result<u32, HurwitzError> {
    let datum = BranchDatum::new(None, g_target, d, partitions.to_vec());
    datum.validate()?;
    let defect = datum.parity_defect();
    if defect % 2 != 0 {
        return Err(HurwitzError::ParityViolation(defect));
    }
    let twice = 2
        - i64::from(datum.m_tilde())
        - i64::from(d) * (2 - 2 * i64::from(g_target) - i64::from(datum.m));
    if twice < 0 {
        return Err(HurwitzError::Negative(twice / 2));
    }
    if twice % 2 != 0 {
        return Err(HurwitzError::NonIntegral(twice));
    }
    Ok((twice / 2) as u32)
}

/// Classical form `2g - 2 = d(2h - 2) + Σ(d_ij - 1)`, used as a cross-check.
pub fn source_genus_by_ramification(g_target: u32, d: u32, partitions: &[Vec<u32>]) -> Option<u32> {
    let ramification: i64 = partitions.iter().flatten().map(|&x| i64::from(x) - 1).sum();
    let twice = i64::from(d) * (2 * i64::from(g_target) - 2) + ramification + 2;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}
