//! Finite CW complexes with GF(2) boundary matrices, and versions of them
//! whose cells are permuted by a finite group.
//!
//! A complex stores one cell count per dimension and one boundary matrix
//! per positive dimension. A group-equipped complex additionally stores
//! one permutation action per dimension; validity means the boundaries
//! compose to zero, every action is a homomorphism, and boundaries
//! commute with the action. Geometric actions that do not permute cells
//! must be subdivided by the caller until they do.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::group::{FiniteGroup, PermAction};

/// Outcome of one named validation check.
#[derive(Clone, Debug)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Empty when the check passed; otherwise a short failure description.
    pub detail: String,
}

/// A list of named checks; the complex is usable iff all passed.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    fn record(&mut self, name: &'static str, failure: Option<String>) {
        match failure {
            None => self.checks.push(ValidationCheck {
                name,
                passed: true,
                detail: String::new(),
            }),
            Some(detail) => self.checks.push(ValidationCheck {
                name,
                passed: false,
                detail,
            }),
        }
    }

    #[must_use]
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per failed check; empty string when everything passed.
    #[must_use]
    pub fn failure_summary(&self) -> String {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn into_result(self) -> Result<()> {
        if self.all_passed() {
            Ok(())
        } else {
            Err(Error::InvalidComplex {
                report: self.failure_summary(),
            })
        }
    }
}

/// Finite CW complex over GF(2): cell counts per dimension and boundary
/// matrices `boundary[q-1] = d_q` of shape `cells[q-1] x cells[q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwComplex {
    cells: Vec<usize>,
    boundary: Vec<BitMatrix>,
}

impl CwComplex {
    /// Builds and validates a complex. The cell-count list must be
    /// non-empty (a complex with no cells at all is `cells = [0]`).
    pub fn new(cells: Vec<usize>, boundary: Vec<BitMatrix>) -> Result<Self> {
        Self::validate_parts(&cells, &boundary).into_result()?;
        Ok(CwComplex { cells, boundary })
    }

    /// Runs the shape and `d.d = 0` checks without constructing anything.
    #[must_use]
    pub fn validate_parts(cells: &[usize], boundary: &[BitMatrix]) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut shape_failure = None;
        if cells.is_empty() {
            shape_failure = Some("cell-count list is empty".to_string());
        } else if boundary.len() + 1 != cells.len() {
            shape_failure = Some(format!(
                "{} dimensions but {} boundary matrices",
                cells.len(),
                boundary.len()
            ));
        } else {
            for (q, b) in boundary.iter().enumerate() {
                if b.rows() != cells[q] || b.cols() != cells[q + 1] {
                    shape_failure = Some(format!(
                        "boundary in dimension {} has shape {}x{}, expected {}x{}",
                        q + 1,
                        b.rows(),
                        b.cols(),
                        cells[q],
                        cells[q + 1]
                    ));
                    break;
                }
            }
        }
        let shapes_ok = shape_failure.is_none();
        report.record("boundary shapes", shape_failure);

        let mut square_failure = None;
        if shapes_ok {
            for q in 1..boundary.len() {
                if !boundary[q - 1].mul(&boundary[q]).is_zero() {
                    square_failure = Some(format!(
                        "composite of boundaries in dimensions {} and {} is nonzero",
                        q,
                        q + 1
                    ));
                    break;
                }
            }
        } else {
            square_failure = Some("skipped (bad shapes)".to_string());
        }
        report.record("boundary composites vanish", square_failure);
        report
    }

    /// Single point.
    #[must_use]
    pub fn point() -> Self {
        CwComplex {
            cells: vec![1],
            boundary: vec![],
        }
    }

    /// Circle as one vertex and one loop (zero boundary).
    #[must_use]
    pub fn circle() -> Self {
        CwComplex {
            cells: vec![1, 1],
            boundary: vec![BitMatrix::zeros(1, 1)],
        }
    }

    /// Minimal d-sphere: two points for `d = 0`, otherwise one 0-cell and
    /// one d-cell with zero boundaries.
    #[must_use]
    pub fn sphere(d: usize) -> Self {
        if d == 0 {
            return CwComplex {
                cells: vec![2],
                boundary: vec![],
            };
        }
        let mut cells = vec![0; d + 1];
        cells[0] = 1;
        cells[d] = 1;
        let boundary = (1..=d)
            .map(|q| BitMatrix::zeros(cells[q - 1], cells[q]))
            .collect();
        CwComplex { cells, boundary }
    }

    /// Top dimension.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    /// Number of q-cells; zero above the top dimension.
    #[must_use]
    pub fn cell_count(&self, q: usize) -> usize {
        self.cells.get(q).copied().unwrap_or(0)
    }

    #[must_use]
    pub fn cell_counts(&self) -> &[usize] {
        &self.cells
    }

    /// Boundary `d_q` for `q >= 1`; zero-shaped above the top dimension.
    #[must_use]
    pub fn boundary_matrix(&self, q: usize) -> BitMatrix {
        assert!(q >= 1, "boundary defined for dimension >= 1");
        self.boundary
            .get(q - 1)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.cell_count(q - 1), self.cell_count(q)))
    }

    /// GF(2) homology dimensions in degrees `0..=dim`.
    #[must_use]
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (1..=self.dim() + 1)
            .map(|q| self.boundary_matrix(q).rank())
            .collect();
        (0..=self.dim())
            .map(|q| {
                let below = if q == 0 { 0 } else { ranks[q - 1] };
                self.cells[q] - below - ranks[q]
            })
            .collect()
    }

    /// Homology dimensions padded with zeros through `max_degree`.
    #[must_use]
    pub fn homology_dims_to(&self, max_degree: usize) -> Vec<usize> {
        let mut dims = self.homology_dims();
        dims.resize(max_degree + 1, 0);
        dims.truncate(max_degree + 1);
        dims
    }

    /// Euler characteristic (alternating sum of cell counts).
    #[must_use]
    pub fn euler(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(q, &c)| if q % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// CW product with the Leibniz boundary `d(a x b) = da x b + a x db`.
    #[must_use]
    pub fn product(&self, other: &CwComplex) -> CwComplex {
        let (cells, boundary) = product_cells_boundary(self, other);
        CwComplex { cells, boundary }
    }
}

/// Block layout of product cells: in total dimension `n`, cells are
/// grouped by the dimension `i` of the left factor (ascending), and the
/// pair `(a, b)` sits at `offset(i) + a * right_count(n - i) + b`.
fn product_block_offset(
    left: &CwComplex,
    right: &CwComplex,
    n: usize,
    i: usize,
) -> usize {
    (0..i)
        .map(|k| left.cell_count(k) * right.cell_count(n - k))
        .sum()
}

fn product_cells_boundary(
    left: &CwComplex,
    right: &CwComplex,
) -> (Vec<usize>, Vec<BitMatrix>) {
    let top = left.dim() + right.dim();
    let cells: Vec<usize> = (0..=top)
        .map(|n| {
            (0..=n.min(left.dim()))
                .map(|i| left.cell_count(i) * right.cell_count(n - i))
                .sum()
        })
        .collect();
    let mut boundary = Vec::with_capacity(top);
    for n in 1..=top {
        let mut d = BitMatrix::zeros(cells[n - 1], cells[n]);
        for i in 0..=n.min(left.dim()) {
            let j = n - i;
            let (ca, cb) = (left.cell_count(i), right.cell_count(j));
            if ca == 0 || cb == 0 {
                continue;
            }
            let col_base = product_block_offset(left, right, n, i);
            let da = (i >= 1).then(|| left.boundary_matrix(i));
            let db = (j >= 1).then(|| right.boundary_matrix(j));
            for a in 0..ca {
                for b in 0..cb {
                    let col = col_base + a * cb + b;
                    if let Some(da) = &da {
                        let row_base = product_block_offset(left, right, n - 1, i - 1);
                        for r in 0..da.rows() {
                            if da.get(r, a) {
                                d.flip(row_base + r * cb + b, col);
                            }
                        }
                    }
                    if let Some(db) = &db {
                        let row_base = product_block_offset(left, right, n - 1, i);
                        let cb_low = right.cell_count(j - 1);
                        for r in 0..db.rows() {
                            if db.get(r, b) {
                                d.flip(row_base + a * cb_low + r, col);
                            }
                        }
                    }
                }
            }
        }
        boundary.push(d);
    }
    (cells, boundary)
}

/// CW complex whose cells are permuted by a finite group, with one
/// permutation action per dimension commuting with the boundaries.
#[derive(Clone, Debug)]
pub struct GCwComplex {
    group: FiniteGroup,
    complex: CwComplex,
    actions: Vec<PermAction>,
}

impl GCwComplex {
    /// Builds the complex and rejects it unless every check passes.
    pub fn new(
        group: FiniteGroup,
        complex: CwComplex,
        actions: Vec<PermAction>,
    ) -> Result<Self> {
        Self::validate_parts(&group, &complex, &actions).into_result()?;
        Ok(GCwComplex {
            group,
            complex,
            actions,
        })
    }

    /// Full validation report: underlying complex checks, action shape
    /// and homomorphism checks, and boundary equivariance.
    #[must_use]
    pub fn validate(&self) -> ValidationReport {
        Self::validate_parts(&self.group, &self.complex, &self.actions)
    }

    fn validate_parts(
        group: &FiniteGroup,
        complex: &CwComplex,
        actions: &[PermAction],
    ) -> ValidationReport {
        let mut report = CwComplex::validate_parts(&complex.cells, &complex.boundary);
        let plain_ok = report.all_passed();

        report.record(
            "one action per dimension",
            (actions.len() != complex.cells.len()).then(|| {
                format!(
                    "{} dimensions but {} actions",
                    complex.cells.len(),
                    actions.len()
                )
            }),
        );

        let mut degree_failure = None;
        for (q, act) in actions.iter().enumerate() {
            if act.degree() != complex.cell_count(q) {
                degree_failure = Some(format!(
                    "action in dimension {} permutes {} cells, expected {}",
                    q,
                    act.degree(),
                    complex.cell_count(q)
                ));
                break;
            }
        }
        report.record("action degrees", degree_failure);

        let mut hom_failure = None;
        for (q, act) in actions.iter().enumerate() {
            if let Err(e) = act.check_homomorphism(group) {
                hom_failure = Some(format!("dimension {}: {}", q, e));
                break;
            }
        }
        report.record("action homomorphisms", hom_failure);

        let mut equi_failure = None;
        if plain_ok && actions.len() == complex.cells.len() {
            'outer: for q in 1..=complex.dim() {
                let b = &complex.boundary[q - 1];
                for g in 0..group.order() {
                    let p_low = BitMatrix::permutation(actions[q - 1].perm(g));
                    let p_high = BitMatrix::permutation(actions[q].perm(g));
                    if p_low.mul(b) != b.mul(&p_high) {
                        equi_failure = Some(format!(
                            "element {} does not commute with the boundary in dimension {}",
                            g, q
                        ));
                        break 'outer;
                    }
                }
            }
        } else {
            equi_failure = Some("skipped (earlier failures)".to_string());
        }
        report.record("boundary equivariance", equi_failure);
        report
    }

    #[must_use]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[must_use]
    pub fn complex(&self) -> &CwComplex {
        &self.complex
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    #[must_use]
    pub fn cell_count(&self, q: usize) -> usize {
        self.complex.cell_count(q)
    }

    #[must_use]
    pub fn action(&self, q: usize) -> &PermAction {
        &self.actions[q]
    }

    /// Single fixed point.
    #[must_use]
    pub fn point_trivial(group: &FiniteGroup) -> Self {
        GCwComplex {
            group: group.clone(),
            complex: CwComplex::point(),
            actions: vec![PermAction::identity(group.order(), 1)],
        }
    }

    /// The whole complex carries the identity action in every dimension.
    #[must_use]
    pub fn trivial_action(group: &FiniteGroup, complex: CwComplex) -> Self {
        let actions = (0..=complex.dim())
            .map(|q| PermAction::identity(group.order(), complex.cell_count(q)))
            .collect();
        GCwComplex {
            group: group.clone(),
            complex,
            actions,
        }
    }

    /// One free orbit of `|G|` points, permuted by left translation.
    #[must_use]
    pub fn free_orbit_points(group: &FiniteGroup) -> Self {
        let n = group.order();
        let perms = (0..n)
            .map(|g| (0..n).map(|v| group.mul(g, v)).collect())
            .collect();
        let action = PermAction::from_element_perms(group, perms)
            .expect("left translation is an action");
        GCwComplex {
            group: group.clone(),
            complex: CwComplex {
                cells: vec![n],
                boundary: vec![],
            },
            actions: vec![action],
        }
    }

    /// d-sphere with the free involution swapping the two cells in every
    /// dimension; each boundary is the all-ones 2x2 matrix. The quotient
    /// is d-dimensional real projective space.
    #[must_use]
    pub fn sphere_antipodal(d: usize) -> Self {
        let group = FiniteGroup::cyclic(2);
        let cells = vec![2; d + 1];
        let boundary = (1..=d)
            .map(|_| BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]]))
            .collect();
        let actions = (0..=d)
            .map(|_| {
                PermAction::from_element_perms(&group, vec![vec![0, 1], vec![1, 0]])
                    .expect("swap is an action")
            })
            .collect();
        GCwComplex {
            group,
            complex: CwComplex { cells, boundary },
            actions,
        }
    }

    /// d-sphere with the involution that swaps the two top hemispheres
    /// and fixes the equatorial (d-1)-sphere pointwise. The fixed set is
    /// nonempty, so the action is not free.
    ///
    /// For `d = 1` the equator is two fixed vertices joined by two
    /// swapped edges; for `d >= 2` the equator is given its minimal cell
    /// structure (one 0-cell, one (d-1)-cell).
    ///
    /// # Panics
    /// Panics if `d = 0` (both points would be fixed by the swap only if
    /// the action were trivial; use [`GCwComplex::trivial_action`]).
    #[must_use]
    pub fn sphere_with_fixed_point(d: usize) -> Self {
        assert!(d >= 1, "needs a positive-dimensional sphere");
        let group = FiniteGroup::cyclic(2);
        let (cells, boundary) = if d == 1 {
            (
                vec![2, 2],
                vec![BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]])],
            )
        } else {
            let mut cells = vec![0; d + 1];
            cells[0] = 1;
            cells[d - 1] = 1;
            cells[d] = 2;
            let boundary = (1..=d)
                .map(|q| {
                    let mut b = BitMatrix::zeros(cells[q - 1], cells[q]);
                    if q == d {
                        b.set(0, 0, true);
                        b.set(0, 1, true);
                    }
                    b
                })
                .collect();
            (cells, boundary)
        };
        let actions = (0..=d)
            .map(|q| {
                let perms: Vec<Vec<usize>> = if q == d {
                    vec![vec![0, 1], vec![1, 0]]
                } else {
                    let id: Vec<usize> = (0..cells[q]).collect();
                    vec![id.clone(), id]
                };
                PermAction::from_element_perms(&group, perms).expect("valid action")
            })
            .collect();
        GCwComplex {
            group,
            complex: CwComplex { cells, boundary },
            actions,
        }
    }

    /// Circle with two fixed vertices and two swapped edges (the
    /// one-dimensional case of [`GCwComplex::sphere_with_fixed_point`]).
    #[must_use]
    pub fn circle_two_fixed() -> Self {
        Self::sphere_with_fixed_point(1)
    }

    /// `|G|` disjoint translated copies of a plain complex, freely
    /// permuted: cell `(c, g)` sits at index `c * |G| + g` and `h` sends
    /// it to `(c, h g)`. The free quotient recovers the input complex.
    #[must_use]
    pub fn induced_free(group: &FiniteGroup, base: &CwComplex) -> Self {
        let n = group.order();
        let cells: Vec<usize> = base.cells.iter().map(|&c| c * n).collect();
        let boundary = (1..=base.dim())
            .map(|q| {
                let b = base.boundary_matrix(q);
                let mut out = BitMatrix::zeros(cells[q - 1], cells[q]);
                for c in 0..b.cols() {
                    for r in 0..b.rows() {
                        if b.get(r, c) {
                            for g in 0..n {
                                out.set(r * n + g, c * n + g, true);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let actions = (0..=base.dim())
            .map(|q| {
                let perms = (0..n)
                    .map(|h| {
                        (0..cells[q])
                            .map(|idx| (idx / n) * n + group.mul(h, idx % n))
                            .collect()
                    })
                    .collect();
                PermAction::from_element_perms(group, perms).expect("translation action")
            })
            .collect();
        GCwComplex {
            group: group.clone(),
            complex: CwComplex {
                cells,
                boundary,
            },
            actions,
        }
    }

    /// Product complex with the componentwise action of the product
    /// group; cell blocks are ordered by the dimension of the left
    /// factor, matching [`CwComplex::product`].
    pub fn product(&self, other: &GCwComplex) -> Result<GCwComplex> {
        let group = FiniteGroup::direct_product(&self.group, &other.group)?;
        let complex = self.complex.product(&other.complex);
        let right_order = other.group.order();
        let mut actions = Vec::with_capacity(complex.dim() + 1);
        for n in 0..=complex.dim() {
            let perms = (0..group.order())
                .map(|e| {
                    let (g, h) = (e / right_order, e % right_order);
                    let mut perm = vec![0; complex.cell_count(n)];
                    for i in 0..=n.min(self.dim()) {
                        let j = n - i;
                        let (ca, cb) = (self.cell_count(i), other.cell_count(j));
                        if ca == 0 || cb == 0 {
                            continue;
                        }
                        let base =
                            product_block_offset(&self.complex, &other.complex, n, i);
                        for a in 0..ca {
                            for b in 0..cb {
                                perm[base + a * cb + b] = base
                                    + self.actions[i].act(g, a) * cb
                                    + other.actions[j].act(h, b);
                            }
                        }
                    }
                    perm
                })
                .collect();
            actions.push(PermAction::from_element_perms(&group, perms)?);
        }
        GCwComplex::new(group, complex, actions)
    }

    /// Restricts the action along a homomorphism `group -> self.group`
    /// given as an element-index table. Used to put a diagonal action on
    /// a product: pull its `G x G` action back along `g -> (g, g)`.
    pub fn pullback_action(&self, group: &FiniteGroup, hom: &[usize]) -> Result<GCwComplex> {
        if hom.len() != group.order() || hom.iter().any(|&v| v >= self.group.order()) {
            return Err(Error::Scenario(
                "homomorphism table has the wrong shape".to_string(),
            ));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if hom[group.mul(a, b)] != self.group.mul(hom[a], hom[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        let actions = (0..=self.dim())
            .map(|q| {
                let perms = (0..group.order())
                    .map(|g| self.actions[q].perm(hom[g]).to_vec())
                    .collect();
                PermAction::from_element_perms(group, perms)
            })
            .collect::<Result<Vec<_>>>()?;
        GCwComplex::new(group.clone(), self.complex.clone(), actions)
    }

    /// Collapses each cell orbit to one cell. Requires the action to be
    /// free on cells in every dimension — strictly stronger than
    /// freeness on points. The boundary of an orbit is the boundary of
    /// its smallest representative, projected to orbits over GF(2).
    pub fn quotient_free(&self) -> Result<CwComplex> {
        let n = self.group.order();
        // orbit index per cell, and the smallest representative per orbit
        let mut orbit_index: Vec<Vec<usize>> = Vec::with_capacity(self.dim() + 1);
        let mut reps: Vec<Vec<usize>> = Vec::with_capacity(self.dim() + 1);
        for q in 0..=self.dim() {
            let act = &self.actions[q];
            if let Some((element, cell)) = act.first_fixed_point() {
                return Err(Error::NonFreeAction {
                    dim: q,
                    cell,
                    element,
                });
            }
            let count = self.cell_count(q);
            let min_rep: Vec<usize> = (0..count)
                .map(|cell| (0..n).map(|g| act.act(g, cell)).min().unwrap_or(cell))
                .collect();
            let mut dim_reps: Vec<usize> =
                (0..count).filter(|&c| min_rep[c] == c).collect();
            dim_reps.sort_unstable();
            let index_of = |rep: usize| dim_reps.binary_search(&rep).unwrap();
            orbit_index.push((0..count).map(|c| index_of(min_rep[c])).collect());
            reps.push(dim_reps);
        }
        let cells: Vec<usize> = reps.iter().map(Vec::len).collect();
        let boundary = (1..=self.dim())
            .map(|q| {
                let b = &self.complex.boundary[q - 1];
                let mut out = BitMatrix::zeros(cells[q - 1], cells[q]);
                for (o, &rep) in reps[q].iter().enumerate() {
                    for (r, &orbit) in orbit_index[q - 1].iter().enumerate() {
                        if b.get(r, rep) {
                            out.flip(orbit, o);
                        }
                    }
                }
                out
            })
            .collect();
        Ok(CwComplex { cells, boundary })
    }
}
