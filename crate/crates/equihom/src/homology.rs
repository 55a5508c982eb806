//! Equivariant homology of a group-equipped complex via the total complex
//! of the double complex "resolution tensor chains", together with the
//! spectral sequence of its column filtration.
//!
//! For a free resolution `F` and a complex `X`, the degree-`n` piece of
//! the total complex collects the blocks `F_p (x) C_q(X)` with
//! `p + q = n`; after factoring out the group, a block has one basis
//! vector per (free generator of `F_p`, q-cell) pair. The differential of
//! `e_i (x) c` has a horizontal part `sum_j e_j (x) (m_ji . c)` — the
//! resolution entry `m_ji` acting on the cell through the group action —
//! and a vertical part `e_i (x) dc`. Blocks are laid out in ascending
//! `p`, so the column filtration by `p` is a chain of coordinate-prefix
//! subspaces, which keeps page computations to plain subspace arithmetic.

use crate::complex::GCwComplex;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Subspace};
use crate::group::FiniteGroup;
use crate::resolution::FreeResolution;

/// Which resolution backs the computation. `Auto` picks the rank-1
/// periodic resolution for cyclic groups and the bar resolution
/// otherwise; results are independent of the choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResolutionChoice {
    #[default]
    Auto,
    Bar,
    Periodic,
}

impl ResolutionChoice {
    /// Builds the chosen resolution of the given length.
    pub fn build(self, group: &FiniteGroup, length: usize) -> Result<FreeResolution> {
        match self {
            ResolutionChoice::Bar => FreeResolution::bar(group, length),
            ResolutionChoice::Periodic => FreeResolution::periodic(group, length),
            ResolutionChoice::Auto => {
                if group.is_cyclic() {
                    FreeResolution::periodic(group, length)
                } else {
                    FreeResolution::bar(group, length)
                }
            }
        }
    }
}

/// One block `F_p (x) C_q` inside a total-complex degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub p: usize,
    pub q: usize,
    /// First coordinate of the block within its degree.
    pub offset: usize,
    /// `rank(F_p) * cells(q)`.
    pub width: usize,
}

/// Total complex of the double complex, truncated at a maximal degree.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    dims: Vec<usize>,
    /// `diffs[n-1]` is `D_n`, shape `dims[n-1] x dims[n]`.
    diffs: Vec<BitMatrix>,
    blocks: Vec<Vec<Block>>,
}

/// Assembles the total complex through total degree `max_degree`.
///
/// The resolution must belong to the same group as the complex and be at
/// least `max_degree` long, so that every degree has its full set of
/// blocks; homology is then available in degrees `0..max_degree`.
pub fn total_complex(
    res: &FreeResolution,
    x: &GCwComplex,
    max_degree: usize,
) -> Result<TotalComplex> {
    if res.group() != x.group() {
        return Err(Error::GroupMismatch {
            context: "total complex",
        });
    }
    if res.length() < max_degree {
        return Err(Error::DimensionMismatch {
            context: format!(
                "resolution of length {} cannot support total degree {}",
                res.length(),
                max_degree
            ),
        });
    }
    let top = x.dim();
    let mut blocks: Vec<Vec<Block>> = Vec::with_capacity(max_degree + 1);
    let mut dims = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let mut row = Vec::new();
        let mut offset = 0;
        for p in n.saturating_sub(top)..=n {
            let q = n - p;
            let width = res.rank(p) * x.cell_count(q);
            row.push(Block {
                p,
                q,
                offset,
                width,
            });
            offset += width;
        }
        dims.push(offset);
        blocks.push(row);
    }

    let mut diffs = Vec::with_capacity(max_degree);
    for n in 1..=max_degree {
        let mut d = BitMatrix::zeros(dims[n - 1], dims[n]);
        for block in &blocks[n] {
            let (p, q) = (block.p, block.q);
            let cells = x.cell_count(q);
            for i in 0..res.rank(p) {
                for c in 0..cells {
                    let col = block.offset + i * cells + c;
                    if q >= 1 {
                        // vertical part: e_i (x) dc into block (p, q-1)
                        let target = find_block(&blocks[n - 1], p);
                        let b = x.complex().boundary_matrix(q);
                        for r in 0..b.rows() {
                            if b.get(r, c) {
                                d.flip(target.offset + i * b.rows() + r, col);
                            }
                        }
                    }
                    if p >= 1 {
                        // horizontal part: resolution entries act on the cell
                        let target = find_block(&blocks[n - 1], p - 1);
                        for j in 0..res.rank(p - 1) {
                            let entry = res.diff_entry(p, j, i);
                            for g in entry.support_iter() {
                                let moved = x.action(q).act(g, c);
                                d.flip(target.offset + j * cells + moved, col);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    Ok(TotalComplex {
        dims,
        diffs,
        blocks,
    })
}

fn find_block(row: &[Block], p: usize) -> Block {
    row.iter()
        .find(|b| b.p == p)
        .copied()
        .expect("block present by construction")
}

impl TotalComplex {
    /// Highest constructed total degree.
    #[must_use]
    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Dimension of the degree-`n` piece.
    #[must_use]
    pub fn degree_dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// Differential `D_n` for `1 <= n <= max_degree`.
    #[must_use]
    pub fn diff(&self, n: usize) -> &BitMatrix {
        &self.diffs[n - 1]
    }

    /// Blocks of the degree-`n` piece, ascending in `p`.
    #[must_use]
    pub fn blocks(&self, n: usize) -> &[Block] {
        &self.blocks[n]
    }

    /// Dimension of the filtration stage `F_p` inside degree `n` (the
    /// blocks with column index at most `p`; they sit first).
    #[must_use]
    pub fn filtration_dim(&self, n: usize, p: i64) -> usize {
        self.blocks[n]
            .iter()
            .filter(|b| (b.p as i64) <= p)
            .map(|b| b.width)
            .sum()
    }

    /// Homology dimension in degree `k`, which must be below
    /// `max_degree` so that the incoming differential exists.
    #[must_use]
    pub fn homology_dim(&self, k: usize) -> usize {
        assert!(k < self.max_degree(), "degree too close to the truncation");
        let kernel = if k == 0 {
            self.dims[0]
        } else {
            self.dims[k] - self.diff(k).rank()
        };
        kernel - self.diff(k + 1).rank()
    }

    /// Homology dimensions in degrees `0..=upto`.
    #[must_use]
    pub fn homology_dims(&self, upto: usize) -> Vec<usize> {
        (0..=upto).map(|k| self.homology_dim(k)).collect()
    }
}

/// Dimensions of the equivariant homology of `x` in degrees `0..=cutoff`.
pub fn equivariant_homology_dims(
    x: &GCwComplex,
    cutoff: usize,
    choice: ResolutionChoice,
) -> Result<Vec<usize>> {
    let res = choice.build(x.group(), cutoff + 1)?;
    let total = total_complex(&res, x, cutoff + 1)?;
    Ok(total.homology_dims(cutoff))
}

/// Group homology with GF(2) coefficients: the equivariant homology of a
/// fixed point.
pub fn group_homology_dims(group: &FiniteGroup, cutoff: usize) -> Result<Vec<usize>> {
    equivariant_homology_dims(
        &GCwComplex::point_trivial(group),
        cutoff,
        ResolutionChoice::Auto,
    )
}

/// Equivariant cohomology dimensions in degrees `0..=cutoff`, computed on
/// the dual complex: the cochain differential in degree `k` is the
/// transpose of the chain differential `D_{k+1}`, and
/// `H^k = ker(delta_k) / im(delta_{k-1})`. Over a field the cohomology is
/// the dual of the homology, so the dimensions must agree with
/// [`equivariant_homology_dims`]; running the eliminations on the
/// transposed matrices keeps that duality an actual cross-check instead of
/// an alias.
pub fn cohomology_dims(
    x: &GCwComplex,
    cutoff: usize,
    choice: ResolutionChoice,
) -> Result<Vec<usize>> {
    let res = choice.build(x.group(), cutoff + 1)?;
    let total = total_complex(&res, x, cutoff + 1)?;
    let mut out = Vec::with_capacity(cutoff + 1);
    for k in 0..=cutoff {
        let outgoing_rank = total.diff(k + 1).transpose().rank();
        let kernel = total.degree_dim(k) - outgoing_rank;
        let incoming_rank = if k == 0 {
            0
        } else {
            total.diff(k).transpose().rank()
        };
        out.push(kernel - incoming_rank);
    }
    Ok(out)
}

/// One page of the spectral sequence, tabulated on the window
/// `0 <= p <= p_max`, `0 <= q <= q_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub p_max: usize,
    pub q_max: usize,
    /// `dims[p][q]`.
    dims: Vec<Vec<usize>>,
}

impl SpectralPage {
    #[must_use]
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims[p][q]
    }

    /// The dims of row `q` for `p = 0..=p_max`.
    #[must_use]
    pub fn row(&self, q: usize) -> Vec<usize> {
        (0..=self.p_max).map(|p| self.dims[p][q]).collect()
    }

    /// True if every tabulated entry agrees with `other`.
    #[must_use]
    pub fn same_dims(&self, other: &SpectralPage) -> bool {
        self.dims == other.dims
    }
}

/// Pages `E^0 .. E^r_max` of the column-filtration spectral sequence of
/// `x`, tabulated for `p <= cutoff` and `q <= dim x`.
///
/// All differentials that touch the window vanish once `r` exceeds
/// `dim x + 1` (their sources or targets leave the first quadrant or the
/// cell range), so pages beyond that bound repeat the stable page and
/// are returned as copies rather than recomputed.
pub fn spectral_pages(
    x: &GCwComplex,
    cutoff: usize,
    r_max: usize,
    choice: ResolutionChoice,
) -> Result<Vec<SpectralPage>> {
    let top = x.dim();
    let max_degree = cutoff + top + 1;
    let res = choice.build(x.group(), max_degree)?;
    let total = total_complex(&res, x, max_degree)?;
    let stable_r = top + 2;
    let mut pages: Vec<SpectralPage> = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        if r > stable_r {
            let mut copy = pages[pages.len() - 1].clone();
            copy.r = r;
            pages.push(copy);
            continue;
        }
        let dims = (0..=cutoff)
            .map(|p| (0..=top).map(|q| page_entry_dim(&total, p, q, r)).collect())
            .collect();
        pages.push(SpectralPage {
            r,
            p_max: cutoff,
            q_max: top,
            dims,
        });
    }
    Ok(pages)
}

/// Cycle space `Z^r_p` in total degree `n`: the part of the filtration
/// stage `F_p` that the differential sends into `F_{p-r}` one degree
/// down. Negative `r` drops the condition (giving `F_p` itself), and
/// negative `p` gives the zero space.
fn cycle_space(total: &TotalComplex, n: usize, p: i64, r: i64) -> Subspace {
    let ambient = total.degree_dim(n);
    if p < 0 {
        return Subspace::zero(ambient);
    }
    let stage = prefix_subspace(ambient, total.filtration_dim(n, p));
    if r < 0 || n == 0 {
        return stage;
    }
    let target_dim = if p - r < 0 {
        0
    } else {
        total.filtration_dim(n - 1, p - r)
    };
    let target = prefix_subspace(total.degree_dim(n - 1), target_dim);
    stage.intersect(&target.preimage(total.diff(n)))
}

/// Span of the first `k` coordinates.
fn prefix_subspace(ambient: usize, k: usize) -> Subspace {
    let mut basis = BitMatrix::zeros(k, ambient);
    for i in 0..k {
        basis.set(i, i, true);
    }
    Subspace::from_rows(&basis)
}

fn page_entry_dim(total: &TotalComplex, p: usize, q: usize, r: usize) -> usize {
    let n = p + q;
    let (p, r) = (p as i64, r as i64);
    let cycles = cycle_space(total, n, p, r);
    let lower = cycle_space(total, n, p - 1, r - 1);
    let boundaries = cycle_space(total, n + 1, p + r - 1, r - 1).image(total.diff(n + 1));
    let denominator = lower.sum(&boundaries);
    debug_assert!(cycles.contains_subspace(&denominator));
    cycles.dim() - denominator.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CwComplex;

    fn convolve_to(a: &[usize], b: &[usize], upto: usize) -> Vec<usize> {
        (0..=upto)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        a.get(i).copied().unwrap_or(0) * b.get(k - i).copied().unwrap_or(0)
                    })
                    .sum()
            })
            .collect()
    }

    fn dims(x: &GCwComplex, cutoff: usize, choice: ResolutionChoice) -> Vec<usize> {
        equivariant_homology_dims(x, cutoff, choice).unwrap()
    }

    #[test]
    fn totals_square_to_zero() {
        let cases = [
            GCwComplex::sphere_antipodal(2),
            GCwComplex::sphere_with_fixed_point(2),
            GCwComplex::circle_two_fixed(),
            GCwComplex::free_orbit_points(&FiniteGroup::cyclic(4)),
        ];
        for x in cases {
            for choice in [ResolutionChoice::Bar, ResolutionChoice::Periodic] {
                let res = choice.build(x.group(), 5).unwrap();
                let t = total_complex(&res, &x, 5).unwrap();
                for n in 2..=5 {
                    assert!(t.diff(n - 1).mul(t.diff(n)).is_zero());
                }
            }
        }
    }

    #[test]
    fn point_with_involution_has_one_dimensional_degrees() {
        let g = FiniteGroup::cyclic(2);
        let x = GCwComplex::point_trivial(&g);
        let res = FreeResolution::periodic(&g, 5).unwrap();
        let t = total_complex(&res, &x, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(t.degree_dim(n), 1);
        }
        // 1 + sigma acts as 1 + 1 = 0 on the fixed cell
        for n in 1..=5 {
            assert!(t.diff(n).is_zero());
        }
    }

    #[test]
    fn free_orbit_total_differentials_have_rank_one() {
        let g = FiniteGroup::cyclic(2);
        let x = GCwComplex::free_orbit_points(&g);
        let res = FreeResolution::periodic(&g, 5).unwrap();
        let t = total_complex(&res, &x, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(t.degree_dim(n), 2);
        }
        // 1 + sigma sends each point to the sum of both
        for n in 1..=5 {
            assert_eq!(t.diff(n).rank(), 1);
        }
        assert_eq!(t.homology_dims(4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn trivial_group_total_homology_is_plain_homology() {
        let g = FiniteGroup::trivial();
        for plain in [CwComplex::circle(), CwComplex::sphere(2), CwComplex::sphere(3)] {
            let expected = plain.homology_dims_to(4);
            let x = GCwComplex::trivial_action(&g, plain);
            for choice in [ResolutionChoice::Bar, ResolutionChoice::Periodic] {
                assert_eq!(dims(&x, 4, choice), expected);
            }
        }
    }

    #[test]
    fn antipodal_sphere_dims() {
        assert_eq!(
            dims(&GCwComplex::sphere_antipodal(2), 5, ResolutionChoice::Periodic),
            vec![1, 1, 1, 0, 0, 0]
        );
        assert_eq!(
            dims(&GCwComplex::sphere_antipodal(2), 5, ResolutionChoice::Bar),
            vec![1, 1, 1, 0, 0, 0]
        );
    }

    #[test]
    fn fixed_point_sphere_dims() {
        assert_eq!(
            dims(
                &GCwComplex::sphere_with_fixed_point(2),
                5,
                ResolutionChoice::Periodic
            ),
            vec![1, 1, 2, 2, 2, 2]
        );
        assert_eq!(
            dims(&GCwComplex::circle_two_fixed(), 4, ResolutionChoice::Auto),
            vec![1, 2, 2, 2, 2]
        );
    }

    #[test]
    fn sphere_family_dims() {
        for d in 1..=3 {
            let free = dims(&GCwComplex::sphere_antipodal(d), 5, ResolutionChoice::Auto);
            let expected_free: Vec<usize> =
                (0..=5).map(|k| usize::from(k <= d)).collect();
            assert_eq!(free, expected_free, "free action on the {d}-sphere");

            let fixed = dims(
                &GCwComplex::sphere_with_fixed_point(d),
                5,
                ResolutionChoice::Auto,
            );
            let expected_fixed: Vec<usize> =
                (0..=5).map(|k| if k >= d { 2 } else { 1 }).collect();
            assert_eq!(fixed, expected_fixed, "fixed-point action on the {d}-sphere");
        }
    }

    #[test]
    fn group_homology_values() {
        assert_eq!(
            group_homology_dims(&FiniteGroup::cyclic(2), 6).unwrap(),
            vec![1; 7]
        );
        assert_eq!(
            group_homology_dims(&FiniteGroup::trivial(), 4).unwrap(),
            vec![1, 0, 0, 0, 0]
        );
        assert_eq!(
            group_homology_dims(&FiniteGroup::cyclic(3), 4).unwrap(),
            vec![1, 0, 0, 0, 0]
        );
        assert_eq!(
            group_homology_dims(&FiniteGroup::cyclic(6), 4).unwrap(),
            vec![1, 1, 1, 1, 1]
        );
        // elementary abelian of rank 2: polynomial algebra on two classes
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
            .unwrap();
        assert_eq!(group_homology_dims(&v4, 3).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn resolution_choice_is_invisible() {
        let cases = [
            GCwComplex::sphere_antipodal(1),
            GCwComplex::sphere_with_fixed_point(2),
            GCwComplex::free_orbit_points(&FiniteGroup::cyclic(3)),
            GCwComplex::trivial_action(&FiniteGroup::cyclic(4), CwComplex::circle()),
        ];
        for x in cases {
            assert_eq!(
                dims(&x, 4, ResolutionChoice::Bar),
                dims(&x, 4, ResolutionChoice::Periodic)
            );
        }
    }

    #[test]
    fn free_action_matches_quotient() {
        let cases = [
            GCwComplex::sphere_antipodal(1),
            GCwComplex::sphere_antipodal(3),
            GCwComplex::free_orbit_points(&FiniteGroup::cyclic(5)),
            GCwComplex::induced_free(&FiniteGroup::cyclic(3), &CwComplex::sphere(2)),
        ];
        for x in cases {
            let quotient = x.quotient_free().unwrap();
            assert_eq!(
                dims(&x, 5, ResolutionChoice::Auto),
                quotient.homology_dims_to(5)
            );
        }
    }

    #[test]
    fn trivial_action_is_a_convolution() {
        let g = FiniteGroup::cyclic(2);
        let x = GCwComplex::trivial_action(&g, CwComplex::sphere(2));
        let group_dims = group_homology_dims(&g, 5).unwrap();
        let expected = convolve_to(&CwComplex::sphere(2).homology_dims(), &group_dims, 5);
        assert_eq!(dims(&x, 5, ResolutionChoice::Auto), expected);
        // incidentally equal to the fixed-point sphere's answer
        assert_eq!(expected, vec![1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn kunneth_on_a_mixed_product() {
        let a = GCwComplex::free_orbit_points(&FiniteGroup::cyclic(2));
        let b = GCwComplex::point_trivial(&FiniteGroup::cyclic(3));
        let p = a.product(&b).unwrap();
        let lhs = dims(&p, 4, ResolutionChoice::Auto);
        let rhs = convolve_to(
            &dims(&a, 4, ResolutionChoice::Auto),
            &dims(&b, 4, ResolutionChoice::Auto),
            4,
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cohomology_equals_homology() {
        let x = GCwComplex::sphere_with_fixed_point(2);
        assert_eq!(
            cohomology_dims(&x, 5, ResolutionChoice::Auto).unwrap(),
            dims(&x, 5, ResolutionChoice::Auto)
        );
    }

    #[test]
    fn group_mismatch_and_short_resolutions_are_rejected() {
        let x = GCwComplex::sphere_antipodal(1);
        let wrong = FreeResolution::periodic(&FiniteGroup::cyclic(3), 4).unwrap();
        assert!(matches!(
            total_complex(&wrong, &x, 3),
            Err(Error::GroupMismatch { .. })
        ));
        let short = FreeResolution::periodic(&FiniteGroup::cyclic(2), 2).unwrap();
        assert!(matches!(
            total_complex(&short, &x, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn antipodal_sphere_pages() {
        let x = GCwComplex::sphere_antipodal(2);
        let pages = spectral_pages(&x, 5, 4, ResolutionChoice::Periodic).unwrap();

        // page 1: vertical homology, one copy of H_q(S^2) per column
        let e1 = &pages[1];
        assert_eq!(e1.row(0), vec![1; 6]);
        assert_eq!(e1.row(1), vec![0; 6]);
        assert_eq!(e1.row(2), vec![1; 6]);

        // page 2: group homology with coefficients in H_q(S^2)
        let e2 = &pages[2];
        assert_eq!(e2.row(0), vec![1; 6]);
        assert_eq!(e2.row(1), vec![0; 6]);
        assert_eq!(e2.row(2), vec![1; 6]);

        // the first possibly-nonzero differential is d_3, so E^3 = E^2
        assert!(pages[3].same_dims(e2));

        // page 4: only the q = 0 row survives, truncated at p = 2
        let e4 = &pages[4];
        assert_eq!(e4.row(0), vec![1, 1, 1, 0, 0, 0]);
        assert_eq!(e4.row(1), vec![0; 6]);
        assert_eq!(e4.row(2), vec![0; 6]);
    }

    #[test]
    fn bar_resolution_first_page_scales_with_rank() {
        let x = GCwComplex::sphere_antipodal(2);
        let pages = spectral_pages(&x, 3, 1, ResolutionChoice::Bar).unwrap();
        let e1 = &pages[1];
        for p in 0..=3 {
            let rank = 1usize << p;
            assert_eq!(e1.dim(p, 0), rank);
            assert_eq!(e1.dim(p, 1), 0);
            assert_eq!(e1.dim(p, 2), rank);
        }
    }

    #[test]
    fn fixed_point_sphere_degenerates_at_page_two() {
        let x = GCwComplex::sphere_with_fixed_point(2);
        let pages = spectral_pages(&x, 4, 5, ResolutionChoice::Auto).unwrap();
        for r in 3..=5 {
            assert!(pages[r].same_dims(&pages[2]), "page {} changed", r);
        }
    }

    #[test]
    fn stable_page_totals_match_homology() {
        let cases = [
            GCwComplex::sphere_antipodal(2),
            GCwComplex::sphere_with_fixed_point(2),
            GCwComplex::circle_two_fixed(),
        ];
        for x in cases {
            let cutoff = 4;
            let r_stable = x.dim() + 2;
            let pages = spectral_pages(&x, cutoff, r_stable, ResolutionChoice::Auto).unwrap();
            let last = pages.last().unwrap();
            let homology = dims(&x, cutoff, ResolutionChoice::Auto);
            for (k, &expected) in homology.iter().enumerate().take(cutoff - x.dim() + 1) {
                let total: usize = (0..=k.min(last.q_max))
                    .map(|q| {
                        let p = k - q;
                        if p <= last.p_max {
                            last.dim(p, q)
                        } else {
                            0
                        }
                    })
                    .sum();
                assert_eq!(total, expected, "degree {k}");
            }
        }
    }

    #[test]
    fn zeroth_page_is_the_block_layout() {
        let x = GCwComplex::sphere_antipodal(2);
        let pages = spectral_pages(&x, 3, 0, ResolutionChoice::Periodic).unwrap();
        let e0 = &pages[0];
        for p in 0..=3 {
            for q in 0..=2 {
                assert_eq!(e0.dim(p, q), 2, "periodic rank 1 times 2 cells");
            }
        }
    }
}
