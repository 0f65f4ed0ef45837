use std::fmt;

use serde::{Serialize, Serializer};

use super::blowup::{even_blow_up_detailed, Direction};
use super::classify::{ade_label, Singularity};
use super::germ::Germ;
use super::GermError;

pub const DEFAULT_MAX_DEPTH: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub max_depth: u32,
    /// Stop at the depth cap and report `terminal_smooth = false` instead
    /// of failing with `DepthOverflow`.
    pub truncate: bool,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            max_depth: DEFAULT_MAX_DEPTH,
            truncate: false,
        }
    }
}

/// Label carried by a trace point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    /// Multiplicity 4 or more here or somewhere below.
    NonNegligibleInterior,
}

impl PointClass {
    pub fn is_ade(self) -> bool {
        self != PointClass::NonNegligibleInterior
    }

    pub fn is_a(self) -> bool {
        matches!(self, PointClass::A(_))
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::A(m) => write!(f, "A{m}"),
            PointClass::D(m) => write!(f, "D{m}"),
            PointClass::E6 => write!(f, "E6"),
            PointClass::E7 => write!(f, "E7"),
            PointClass::E8 => write!(f, "E8"),
            PointClass::NonNegligibleInterior => write!(f, "non-negligible"),
        }
    }
}

impl Serialize for PointClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitelyNearPoint {
    pub depth: u32,
    pub multiplicity: u32,
    pub k: u32,
    pub classification: PointClass,
    /// Index of the point this one lies over; `None` for the origin.
    pub parent: Option<usize>,
    /// Position on the parent's exceptional line.
    pub direction: Option<Direction>,
    pub germ: Germ,
}

/// Points in depth-first pre-order, siblings ordered by direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    pub points: Vec<InfinitelyNearPoint>,
    pub terminal_smooth: bool,
}

impl ResolutionTrace {
    pub fn multiplicities(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.multiplicity).collect()
    }

    /// `Σ k(k-1)` over all points.
    pub fn sum_k_km1(&self) -> u64 {
        self.points
            .iter()
            .map(|p| u64::from(p.k) * u64::from(p.k.saturating_sub(1)))
            .sum()
    }

    /// `Σ (k-1)^2` over all points.
    pub fn sum_km1_sq(&self) -> u64 {
        self.points.iter().map(|p| u64::from(p.k - 1).pow(2)).sum()
    }

    pub fn count_multiplicity(&self, m: u32) -> usize {
        self.points.iter().filter(|p| p.multiplicity == m).count()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.points
            .iter()
            .map(|p| p.multiplicity)
            .max()
            .unwrap_or(0)
    }

    pub fn children(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.points
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.parent == Some(index))
            .map(|(i, _)| i)
    }
}

struct Builder<'a> {
    options: &'a ResolveOptions,
    points: Vec<InfinitelyNearPoint>,
    truncated: Vec<bool>,
    terminal_smooth: bool,
}

impl Builder<'_> {
    fn visit(
        &mut self,
        germ: Germ,
        depth: u32,
        parent: Option<usize>,
        direction: Option<Direction>,
    ) -> Result<(), GermError> {
        let m = germ.multiplicity();
        if m < 2 {
            return Ok(());
        }
        let index = self.points.len();
        self.points.push(InfinitelyNearPoint {
            depth,
            multiplicity: m,
            k: m / 2,
            classification: PointClass::NonNegligibleInterior,
            parent,
            direction,
            germ: germ.clone(),
        });
        self.truncated.push(false);
        if depth >= self.options.max_depth {
            if self.options.truncate {
                self.terminal_smooth = false;
                self.truncated[index] = true;
                return Ok(());
            }
            return Err(GermError::DepthOverflow {
                max_depth: self.options.max_depth,
            });
        }
        for child in even_blow_up_detailed(&germ)?.points {
            self.visit(child.germ, depth + 1, Some(index), Some(child.direction))?;
        }
        Ok(())
    }

    /// Labels every point whose whole subtree stays at multiplicity ≤ 3.
    fn label(&mut self) -> Result<(), GermError> {
        let n = self.points.len();
        let mut worst: Vec<u32> = self.points.iter().map(|p| p.multiplicity).collect();
        let mut incomplete = self.truncated.clone();
        for i in (0..n).rev() {
            if let Some(parent) = self.points[i].parent {
                worst[parent] = worst[parent].max(worst[i]);
                incomplete[parent] |= incomplete[i];
            }
        }
        for i in 0..n {
            if worst[i] <= 3 && !incomplete[i] {
                self.points[i].classification = match ade_label(&self.points[i].germ)? {
                    Singularity::A(k) => PointClass::A(k),
                    Singularity::D(k) => PointClass::D(k),
                    Singularity::E6 => PointClass::E6,
                    Singularity::E7 => PointClass::E7,
                    Singularity::E8 => PointClass::E8,
                    Singularity::Smooth | Singularity::NonNegligible => {
                        PointClass::NonNegligibleInterior
                    }
                };
            }
        }
        Ok(())
    }
}

/// Even resolution of `g` with the given depth cap.
pub fn even_resolve(g: &Germ, max_depth: u32) -> Result<ResolutionTrace, GermError> {
    even_resolve_with(
        g,
        &ResolveOptions {
            max_depth,
            truncate: false,
        },
    )
}

pub fn even_resolve_with(g: &Germ, options: &ResolveOptions) -> Result<ResolutionTrace, GermError> {
    let mut builder = Builder {
        options,
        points: Vec::new(),
        truncated: Vec::new(),
        terminal_smooth: true,
    };
    builder.visit(g.clone(), 0, None, None)?;
    builder.label()?;
    Ok(ResolutionTrace {
        points: builder.points,
        terminal_smooth: builder.terminal_smooth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(text: &str) -> ResolutionTrace {
        even_resolve(&text.parse().unwrap(), DEFAULT_MAX_DEPTH).unwrap()
    }

    #[test]
    fn documented_traces() {
        let t = trace("y^2 - z^2");
        assert_eq!(t.multiplicities(), [2]);
        assert!(t.terminal_smooth);
        assert_eq!(t.points[0].classification, PointClass::A(1));

        let t = trace("y^8 - z^4");
        assert_eq!(t.multiplicities(), [4, 4]);
        assert_eq!(t.sum_k_km1(), 4);
        assert_eq!(t.sum_km1_sq(), 2);

        let t = trace("z*(y^3 - z^5)");
        assert_eq!(t.multiplicities(), [4, 2]);
        assert_eq!(t.sum_k_km1(), 2);
        assert_eq!(t.points[1].classification, PointClass::A(2));

        let t = trace("y^6 - z^6");
        assert_eq!(t.multiplicities(), [6]);
        assert!(t.terminal_smooth);
    }

    #[test]
    fn odd_multiplicity_descendants_are_nodes() {
        let t = trace("y^3 - z^3");
        assert_eq!(t.multiplicities(), [3, 2, 2, 2]);
        assert_eq!(t.points[0].classification, PointClass::D(4));
        for p in &t.points[1..] {
            assert_eq!(p.classification, PointClass::A(1));
            assert_eq!(p.parent, Some(0));
        }
    }

    #[test]
    fn genus_three_germ_has_a_node_below_the_quadruple_point() {
        let t = trace("z*(y^4 - z^3)");
        assert_eq!(t.multiplicities(), [4, 2]);
        assert_eq!(t.points[1].classification, PointClass::A(1));
        assert_eq!(
            t.points[0].classification,
            PointClass::NonNegligibleInterior
        );
    }

    #[test]
    fn residual_e6_after_quadruple_point() {
        let t = trace("y^7 - z^4");
        assert_eq!(t.multiplicities()[0], 4);
        assert_eq!(t.points[1].classification, PointClass::E6);
    }

    #[test]
    fn depth_cap() {
        let g: Germ = "y^2 - z^40".parse().unwrap();
        assert_eq!(
            even_resolve(&g, 5),
            Err(GermError::DepthOverflow { max_depth: 5 })
        );
        let t = even_resolve_with(
            &g,
            &ResolveOptions {
                max_depth: 5,
                truncate: true,
            },
        )
        .unwrap();
        assert!(!t.terminal_smooth);
        assert_eq!(t.points.len(), 6);
        assert!(t
            .points
            .iter()
            .all(|p| p.classification == PointClass::NonNegligibleInterior));
    }

    #[test]
    fn smooth_germ_has_empty_trace() {
        let t = trace("y - z^3");
        assert!(t.points.is_empty());
        assert!(t.terminal_smooth);
    }
}
