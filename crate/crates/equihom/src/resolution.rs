//! Free resolutions of GF(2) over the group algebra GF(2)[G].
//!
//! A resolution is a chain of free right GF(2)[G]-modules
//!
//! ```text
//! F_0 <- F_1 <- ... <- F_L
//! ```
//!
//! together with the augmentation `F_0 -> GF(2)` sending every group
//! element to 1. Differentials are stored as matrices of group algebra
//! elements; entry `(j, i)` of `d_p` is the coefficient of the j-th
//! generator of `F_{p-1}` in the image of the i-th generator of `F_p`.
//! With right modules, composing maps is the ordinary matrix product, and
//! expanding an entry through the left regular representation turns the
//! whole complex into GF(2) matrices, where exactness is checked by rank
//! counting. Exactness of the expansion is exactness of the resolution,
//! since forgetting the module structure changes no kernels or images.
//!
//! Two constructions are provided: the bar resolution (any group, ranks
//! `|G|^p`) and the minimal periodic resolution (cyclic groups, all ranks
//! 1, differentials alternating between `1 + t` and the norm).

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::group::{FiniteGroup, GroupAlgebraElem};

/// Cap on the total number of stored differential entries. The bar
/// resolution grows as `|G|^(2p)`, so budget exhaustion, not time, is the
/// failure mode worth guarding.
pub const BAR_ENTRY_BUDGET: usize = 2_000_000;

/// Chain of free GF(2)[G]-modules with a fixed augmentation.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    group: FiniteGroup,
    ranks: Vec<usize>,
    /// `diffs[p-1]` is `d_p`, row-major with shape `ranks[p-1] x ranks[p]`.
    diffs: Vec<Vec<GroupAlgebraElem>>,
}

impl FreeResolution {
    /// Assembles a resolution from raw parts without checking anything.
    /// Run [`FreeResolution::verify`] to certify the result.
    ///
    /// # Panics
    /// Panics if the differential shapes disagree with the ranks.
    #[must_use]
    pub fn from_parts(
        group: FiniteGroup,
        ranks: Vec<usize>,
        diffs: Vec<Vec<GroupAlgebraElem>>,
    ) -> Self {
        assert!(!ranks.is_empty());
        assert_eq!(diffs.len() + 1, ranks.len());
        for (p, d) in diffs.iter().enumerate() {
            assert_eq!(d.len(), ranks[p] * ranks[p + 1], "differential shape");
        }
        FreeResolution {
            group,
            ranks,
            diffs,
        }
    }

    /// Bar resolution up to homological degree `length`.
    ///
    /// Generators of `F_p` are the `|G|^p` tuples `[g_1|...|g_p]`, indexed
    /// big-endian by element index. The differential drops the last entry
    /// with a coefficient of `g_p`, merges each adjacent pair, and drops
    /// the first entry, all with GF(2) cancellation.
    pub fn bar(group: &FiniteGroup, length: usize) -> Result<Self> {
        let n = group.order();
        let mut ranks = Vec::with_capacity(length + 1);
        let mut entries: u128 = 0;
        let mut rank: u128 = 1;
        for p in 0..=length {
            if p > 0 {
                let prev = rank;
                rank *= n as u128;
                entries += prev * rank;
                if entries > BAR_ENTRY_BUDGET as u128 {
                    return Err(Error::ResolutionBudget {
                        entries: entries.min(usize::MAX as u128) as usize,
                        budget: BAR_ENTRY_BUDGET,
                    });
                }
            }
            ranks.push(rank as usize);
        }

        let mut diffs = Vec::with_capacity(length);
        for p in 1..=length {
            let (rows, cols) = (ranks[p - 1], ranks[p]);
            let mut d = vec![GroupAlgebraElem::zero(n); rows * cols];
            let mut tuple = vec![0usize; p];
            for col in 0..cols {
                // decode the big-endian tuple for this column
                let mut rem = col;
                for slot in (0..p).rev() {
                    tuple[slot] = rem % n;
                    rem /= n;
                }
                let mut add = |row: usize, g: usize| {
                    d[row * cols + col] =
                        d[row * cols + col] + GroupAlgebraElem::of(n, g);
                };
                // drop the last entry, acting by it on the right
                add(tuple_index(&tuple[..p - 1], n), tuple[p - 1]);
                // merge adjacent entries
                for i in 0..p.saturating_sub(1) {
                    let mut merged = Vec::with_capacity(p - 1);
                    merged.extend_from_slice(&tuple[..i]);
                    merged.push(group.mul(tuple[i], tuple[i + 1]));
                    merged.extend_from_slice(&tuple[i + 2..]);
                    add(tuple_index(&merged, n), 0);
                }
                // drop the first entry
                add(tuple_index(&tuple[1..], n), 0);
            }
            diffs.push(d);
        }
        Ok(FreeResolution {
            group: group.clone(),
            ranks,
            diffs,
        })
    }

    /// Minimal periodic resolution of a cyclic group, all ranks 1.
    ///
    /// Odd differentials are `1 + t` for a generator `t`; even ones are
    /// the norm. For the trivial group these degenerate to zero and the
    /// identity, and for order 2 both equal `1 + t`.
    pub fn periodic(group: &FiniteGroup, length: usize) -> Result<Self> {
        let t = group.cyclic_generator().ok_or(Error::NotCyclic)?;
        let n = group.order();
        let one_plus_t = GroupAlgebraElem::of(n, 0) + GroupAlgebraElem::of(n, t);
        let norm = group.norm_element();
        let diffs = (1..=length)
            .map(|p| vec![if p % 2 == 1 { one_plus_t } else { norm }])
            .collect();
        Ok(FreeResolution {
            group: group.clone(),
            ranks: vec![1; length + 1],
            diffs,
        })
    }

    #[must_use]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Homological length `L`; differentials exist for `1..=L`.
    #[must_use]
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    #[must_use]
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    #[must_use]
    pub fn rank(&self, p: usize) -> usize {
        self.ranks[p]
    }

    /// Entry `(row, col)` of `d_p`.
    #[must_use]
    pub fn diff_entry(&self, p: usize, row: usize, col: usize) -> GroupAlgebraElem {
        self.diffs[p - 1][row * self.ranks[p] + col]
    }

    /// `d_p` expanded to a GF(2) matrix through the left regular
    /// representation; shape `(N * ranks[p-1]) x (N * ranks[p])`.
    #[must_use]
    pub fn expanded(&self, p: usize) -> BitMatrix {
        let n = self.group.order();
        let (rows, cols) = (self.ranks[p - 1], self.ranks[p]);
        let mut m = BitMatrix::zeros(n * rows, n * cols);
        for j in 0..rows {
            for i in 0..cols {
                let entry = self.diff_entry(p, j, i);
                for g in entry.support_iter() {
                    for v in 0..n {
                        m.set(j * n + self.group.mul(g, v), i * n + v, true);
                    }
                }
            }
        }
        m
    }

    /// The augmentation expanded to a GF(2) row vector (all ones).
    #[must_use]
    pub fn augmentation_expanded(&self) -> BitMatrix {
        let width = self.group.order() * self.ranks[0];
        let mut m = BitMatrix::zeros(1, width);
        for c in 0..width {
            m.set(0, c, true);
        }
        m
    }

    /// Certifies the complex: every composite must vanish and the expanded
    /// chain must be exact at every checkable level.
    #[must_use]
    pub fn verify(&self) -> ResolutionReport {
        let length = self.length();
        let expanded: Vec<BitMatrix> = (1..=length).map(|p| self.expanded(p)).collect();
        let aug = self.augmentation_expanded();

        let augmentation_composite_rank = if length >= 1 {
            aug.mul(&expanded[0]).rank()
        } else {
            0
        };
        let d_squared_ranks = (2..=length)
            .map(|p| (p, expanded[p - 2].mul(&expanded[p - 1]).rank()))
            .collect();

        let mut exactness = Vec::new();
        for p in 0..length {
            let (dim_p, rank_out) = if p == 0 {
                let dim = self.group.order() * self.ranks[0];
                (dim, aug.rank())
            } else {
                (expanded[p - 1].cols(), expanded[p - 1].rank())
            };
            let kernel_dim = dim_p - rank_out;
            let image_rank = expanded[p].rank();
            exactness.push(ExactnessLevel {
                p,
                kernel_dim,
                image_rank,
            });
        }
        ResolutionReport {
            augmentation_composite_rank,
            d_squared_ranks,
            exactness,
        }
    }
}

fn tuple_index(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * n + g)
}

/// Kernel and image dimensions at one level of the expanded chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessLevel {
    pub p: usize,
    /// Dimension of the cycle space at level `p` (kernel of the outgoing
    /// map, which at `p = 0` is the augmentation).
    pub kernel_dim: usize,
    /// Rank of the incoming differential `d_{p+1}`.
    pub image_rank: usize,
}

/// Outcome of [`FreeResolution::verify`].
#[derive(Clone, Debug)]
pub struct ResolutionReport {
    /// Rank of the composite of the augmentation with `d_1`.
    pub augmentation_composite_rank: usize,
    /// Rank of each composite `d_{p-1} . d_p`, for `p` in `2..=L`.
    pub d_squared_ranks: Vec<(usize, usize)>,
    /// Kernel/image comparison at levels `0..L`.
    pub exactness: Vec<ExactnessLevel>,
}

impl ResolutionReport {
    #[must_use]
    pub fn is_exact(&self) -> bool {
        self.augmentation_composite_rank == 0
            && self.d_squared_ranks.iter().all(|&(_, r)| r == 0)
            && self
                .exactness
                .iter()
                .all(|lvl| lvl.kernel_dim == lvl.image_rank)
    }

    /// Human-readable defect list, empty iff exact.
    #[must_use]
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.augmentation_composite_rank != 0 {
            out.push(format!(
                "augmentation . d_1 has rank {}",
                self.augmentation_composite_rank
            ));
        }
        for &(p, r) in &self.d_squared_ranks {
            if r != 0 {
                out.push(format!("d_{} . d_{} has rank {}", p - 1, p, r));
            }
        }
        for lvl in &self.exactness {
            if lvl.kernel_dim != lvl.image_rank {
                out.push(format!(
                    "level {}: kernel dim {} but image rank {}",
                    lvl.p, lvl.kernel_dim, lvl.image_rank
                ));
            }
        }
        out
    }
}
