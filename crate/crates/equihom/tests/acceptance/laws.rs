//! Randomized law suites: each function runs at least 100 cases from a
//! fixed seed and panics with a counterexample description on the first
//! violation, returning the number of cases it checked.

use equihom::complex::{CwComplex, GCwComplex};
use equihom::gf2::BitMatrix;
use equihom::group::FiniteGroup;
use equihom::homology::{equivariant_homology_dims, group_homology_dims, ResolutionChoice};
use equihom::invariant::{
    invariant_generators, jacobian_rank_at, orbit_separation_check, GeneratorSet, LinearAction,
    RatPoly,
};
use equihom::poincare::{evaluate, evaluate_nonequivariant, SetExpr};
use equihom::resolution::FreeResolution;
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(value: i64) -> BigRational {
    BigRational::from_integer(value.into())
}

fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

/// Integer matrices, one per group element, as exact rationals.
pub fn int_mats(mats: &[&[&[i64]]]) -> Vec<Vec<Vec<BigRational>>> {
    mats.iter()
        .map(|mat| {
            mat.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect()
        })
        .collect()
}

/// Small groups of mixed structure: cyclic, a noncyclic product, and a
/// nonabelian permutation group.
fn group_pool() -> Vec<(String, FiniteGroup)> {
    let klein = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
        .expect("small product");
    let (sym3, _) = FiniteGroup::from_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]])
        .expect("symmetric group on three letters");
    let mut pool: Vec<(String, FiniteGroup)> = (1..=6)
        .map(|n| (format!("Z/{n}"), FiniteGroup::cyclic(n)))
        .collect();
    pool.push(("Z/2 x Z/2".to_string(), klein));
    pool.push(("S_3".to_string(), sym3));
    pool
}

fn random_piece<R: Rng>(rng: &mut R) -> CwComplex {
    match rng.gen_range(0..3) {
        0 => CwComplex::point(),
        1 => CwComplex::circle(),
        _ => CwComplex::sphere(rng.gen_range(1..=3)),
    }
}

/// Disjoint union: cells concatenate per dimension and the boundary is
/// block-diagonal.
fn plain_union(a: &CwComplex, b: &CwComplex) -> CwComplex {
    let levels = a.cell_counts().len().max(b.cell_counts().len());
    let count = |c: &CwComplex, q: usize| c.cell_counts().get(q).copied().unwrap_or(0);
    let cells: Vec<usize> = (0..levels).map(|q| count(a, q) + count(b, q)).collect();
    let mut boundary = Vec::new();
    for q in 1..levels {
        let mut m = BitMatrix::zeros(cells[q - 1], cells[q]);
        if q < a.cell_counts().len() {
            let block = a.boundary_matrix(q);
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    if block.get(r, c) {
                        m.set(r, c, true);
                    }
                }
            }
        }
        if q < b.cell_counts().len() {
            let block = b.boundary_matrix(q);
            let (row_offset, col_offset) = (count(a, q - 1), count(a, q));
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    if block.get(r, c) {
                        m.set(row_offset + r, col_offset + c, true);
                    }
                }
            }
        }
        boundary.push(m);
    }
    CwComplex::new(cells, boundary).expect("disjoint unions of valid complexes are valid")
}

fn random_plain<R: Rng>(rng: &mut R) -> CwComplex {
    let mut acc = random_piece(rng);
    if rng.gen_bool(0.5) {
        acc = plain_union(&acc, &random_piece(rng));
    }
    acc
}

fn random_gcw<R: Rng>(rng: &mut R, group: &FiniteGroup) -> GCwComplex {
    match rng.gen_range(0..5) {
        0 => GCwComplex::point_trivial(group),
        1 => GCwComplex::free_orbit_points(group),
        2 => GCwComplex::induced_free(group, &random_plain(rng)),
        3 if group.order() == 2 => match rng.gen_range(0..3) {
            0 => GCwComplex::sphere_antipodal(rng.gen_range(1..=3)),
            1 => GCwComplex::sphere_with_fixed_point(rng.gen_range(1..=3)),
            _ => GCwComplex::circle_two_fixed(),
        },
        _ => GCwComplex::trivial_action(group, random_plain(rng)),
    }
}

/// Suite 1: every constructed resolution has d^2 = 0 and is exact
/// (including the augmentation step).
pub fn resolution_exactness_suite() -> usize {
    let mut rng = rng(0xE1);
    let mut cases = 0;
    for _ in 0..60 {
        let n = rng.gen_range(1..=8);
        let length = rng.gen_range(1..=10);
        let report = FreeResolution::periodic(&FiniteGroup::cyclic(n), length)
            .expect("periodic resolution of a cyclic group")
            .verify();
        assert!(
            report.is_exact(),
            "periodic resolution of Z/{n} at length {length}: {:?}",
            report.defects()
        );
        cases += 1;
    }
    let pool = group_pool();
    for _ in 0..60 {
        let (name, group) = &pool[rng.gen_range(0..pool.len())];
        let length_cap = match group.order() {
            0..=2 => 6,
            3..=4 => 4,
            _ => 3,
        };
        let length = rng.gen_range(1..=length_cap);
        let report = FreeResolution::bar(group, length)
            .expect("bar resolution within budget")
            .verify();
        assert!(
            report.is_exact(),
            "bar resolution of {name} at length {length}: {:?}",
            report.defects()
        );
        cases += 1;
    }
    cases
}

/// Suite 2: equivariant homology does not depend on the resolution.
pub fn resolution_independence_suite() -> usize {
    let mut rng = rng(0xE2);
    let mut cases = 0;
    while cases < 100 {
        let n = rng.gen_range(2..=4);
        let group = FiniteGroup::cyclic(n);
        let x = random_gcw(&mut rng, &group);
        let cutoff = if n == 2 {
            rng.gen_range(0..=4)
        } else {
            rng.gen_range(0..=2)
        };
        let bar = equivariant_homology_dims(&x, cutoff, ResolutionChoice::Bar).unwrap();
        let periodic = equivariant_homology_dims(&x, cutoff, ResolutionChoice::Periodic).unwrap();
        assert_eq!(
            bar, periodic,
            "bar and periodic dims differ over Z/{n} at cutoff {cutoff} \
             (cells {:?})",
            x.complex().cell_counts()
        );
        cases += 1;
    }
    cases
}

/// Suite 3: for free actions the equivariant homology is the homology of
/// the quotient, and the series of a free quotient matches the quotient's
/// own series.
pub fn free_action_law_suite() -> usize {
    let mut rng = rng(0xE3);
    let pool = group_pool();
    let mut cases = 0;
    while cases < 100 {
        match rng.gen_range(0..4) {
            0 => {
                // induced complex: the quotient collapses back to the base
                let (name, group) = &pool[rng.gen_range(0..pool.len())];
                let base = random_plain(&mut rng);
                let cutoff = if group.is_cyclic() {
                    rng.gen_range(0..=5)
                } else if group.order() <= 4 {
                    rng.gen_range(0..=2)
                } else {
                    1
                };
                let x = GCwComplex::induced_free(group, &base);
                let dims = equivariant_homology_dims(&x, cutoff, ResolutionChoice::Auto).unwrap();
                assert_eq!(
                    dims,
                    base.homology_dims_to(cutoff),
                    "induced complex over {name} (base cells {:?}) at cutoff {cutoff}",
                    base.cell_counts()
                );
            }
            1 => {
                // antipodal sphere: the quotient is real projective space,
                // whose mod-2 homology is one dimension in each degree <= d
                let d = rng.gen_range(1..=3);
                let cutoff = rng.gen_range(d..=8);
                let dims = equivariant_homology_dims(
                    &GCwComplex::sphere_antipodal(d),
                    cutoff,
                    ResolutionChoice::Auto,
                )
                .unwrap();
                let expected: Vec<usize> = (0..=cutoff).map(|k| usize::from(k <= d)).collect();
                assert_eq!(dims, expected, "antipodal sphere d = {d} at cutoff {cutoff}");
            }
            2 => {
                // one free orbit of points: the quotient is a single point
                let (name, group) = &pool[rng.gen_range(0..pool.len())];
                let cutoff = if group.is_cyclic() { 6 } else { 2 };
                let dims = equivariant_homology_dims(
                    &GCwComplex::free_orbit_points(group),
                    cutoff,
                    ResolutionChoice::Auto,
                )
                .unwrap();
                let expected: Vec<usize> = (0..=cutoff).map(|k| usize::from(k == 0)).collect();
                assert_eq!(dims, expected, "free orbit of points over {name}");
            }
            _ => {
                // series form: beta of a free quotient is the plain series
                // of the quotient
                let (name, group) = &pool[rng.gen_range(0..pool.len())];
                let base = random_plain(&mut rng);
                let cutoff = rng.gen_range(1..=6);
                let x = GCwComplex::induced_free(group, &base);
                let series = evaluate(
                    &SetExpr::FreeQuotient(x),
                    group,
                    cutoff,
                    ResolutionChoice::Auto,
                )
                .unwrap();
                let quotient = evaluate_nonequivariant(
                    &SetExpr::TrivialAction(base.clone()),
                    cutoff,
                )
                .unwrap();
                assert_eq!(
                    series, quotient,
                    "free-quotient series over {name} (base cells {:?})",
                    base.cell_counts()
                );
            }
        }
        cases += 1;
    }
    cases
}

fn convolution(a: &[usize], b: &[usize], upto: usize) -> Vec<usize> {
    (0..=upto)
        .map(|n| (0..=n).map(|p| a[p] * b[n - p]).sum())
        .collect()
}

/// Suite 4: for a trivial action the equivariant homology is the
/// convolution of the group homology with the plain homology.
pub fn trivial_action_convolution_suite() -> usize {
    let mut rng = rng(0xE4);
    let pool = group_pool();
    let mut cases = 0;
    while cases < 100 {
        let (name, group) = &pool[rng.gen_range(0..pool.len())];
        let plain = random_plain(&mut rng);
        let cutoff = if group.is_cyclic() {
            rng.gen_range(0..=5)
        } else if group.order() <= 4 {
            rng.gen_range(0..=3)
        } else {
            rng.gen_range(0..=2)
        };
        let x = GCwComplex::trivial_action(group, plain.clone());
        let dims = equivariant_homology_dims(&x, cutoff, ResolutionChoice::Auto).unwrap();
        let group_dims = group_homology_dims(group, cutoff).unwrap();
        let plain_dims = plain.homology_dims_to(cutoff);
        assert_eq!(
            dims,
            convolution(&group_dims, &plain_dims, cutoff),
            "trivial action of {name} on cells {:?} at cutoff {cutoff}",
            plain.cell_counts()
        );
        cases += 1;
    }
    cases
}

/// Suite 5: group homology of a direct product is the convolution of the
/// factors' group homologies (Kunneth over a field).
pub fn kunneth_convolution_suite() -> usize {
    let mut rng = rng(0xE5);
    let mut cases = 0;
    while cases < 100 {
        let (a, b) = loop {
            let a = rng.gen_range(1..=6);
            let b = rng.gen_range(1..=4);
            let coprime = gcd(a, b) == 1;
            // noncyclic products get the bar resolution; keep those small
            if coprime || a * b <= 4 || (a * b <= 6 && rng.gen_bool(0.5)) {
                break (a, b);
            }
        };
        let left = FiniteGroup::cyclic(a);
        let right = FiniteGroup::cyclic(b);
        let product = FiniteGroup::direct_product(&left, &right).unwrap();
        let cutoff = if product.is_cyclic() {
            rng.gen_range(1..=6)
        } else if product.order() <= 4 {
            rng.gen_range(1..=3)
        } else {
            rng.gen_range(1..=2)
        };
        let product_dims = group_homology_dims(&product, cutoff).unwrap();
        let left_dims = group_homology_dims(&left, cutoff).unwrap();
        let right_dims = group_homology_dims(&right, cutoff).unwrap();
        assert_eq!(
            product_dims,
            convolution(&left_dims, &right_dims, cutoff),
            "Kunneth for Z/{a} x Z/{b} at cutoff {cutoff}"
        );
        cases += 1;
    }
    cases
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    let density = [0.1, 0.3, 0.5][rng.gen_range(0..3)];
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Suite 6: GF(2) elimination identities — rank bounds, rank + nullity,
/// rank of the transpose, kernel membership, product rank bound, pivot
/// count.
pub fn gf2_rank_nullity_suite() -> usize {
    let mut rng = rng(0xE6);
    let mut cases = 0;
    while cases < 150 {
        let rows = rng.gen_range(1..=30);
        let cols = rng.gen_range(1..=30);
        let m = random_matrix(&mut rng, rows, cols);
        let rank = m.rank();
        assert!(rank <= rows.min(cols), "rank exceeds the smaller side");
        assert_eq!(rank, m.transpose().rank(), "rank differs from the transpose rank");
        let kernel = m.kernel_basis();
        assert_eq!(rank + kernel.len(), cols, "rank-nullity fails");
        for v in &kernel {
            assert!(m.mul_vec(v).is_zero(), "kernel vector not annihilated");
        }
        let (_, pivots) = m.rref();
        assert_eq!(pivots.len(), rank, "pivot count differs from rank");
        let k = rng.gen_range(1..=20);
        let other = random_matrix(&mut rng, cols, k);
        let product_rank = m.mul(&other).rank();
        assert!(
            product_rank <= rank.min(other.rank()),
            "product rank exceeds a factor's rank"
        );
        cases += 1;
    }
    cases
}

/// Linear actions of small groups with exact rational matrices.
fn action_pool() -> Vec<(&'static str, LinearAction)> {
    let c2 = FiniteGroup::cyclic(2);
    let identity2 = &[&[1i64, 0][..], &[0, 1][..]][..];
    let identity3 = &[&[1i64, 0, 0][..], &[0, 1, 0][..], &[0, 0, 1][..]][..];
    let reflection = LinearAction::new(
        c2.clone(),
        2,
        int_mats(&[identity2, &[&[-1, 0], &[0, 1]]]),
    )
    .unwrap();
    let center = LinearAction::new(
        c2.clone(),
        2,
        int_mats(&[identity2, &[&[-1, 0], &[0, -1]]]),
    )
    .unwrap();
    let swap = LinearAction::new(c2.clone(), 2, int_mats(&[identity2, &[&[0, 1], &[1, 0]]]))
        .unwrap();
    let rotation = LinearAction::new(
        FiniteGroup::cyclic(4),
        2,
        int_mats(&[
            identity2,
            &[&[0, -1], &[1, 0]],
            &[&[-1, 0], &[0, -1]],
            &[&[0, 1], &[-1, 0]],
        ]),
    )
    .unwrap();
    let plane_flip = LinearAction::new(
        c2,
        3,
        int_mats(&[identity3, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]]),
    )
    .unwrap();
    let three_cycle = LinearAction::new(
        FiniteGroup::cyclic(3),
        3,
        int_mats(&[
            identity3,
            &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]],
            &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]],
        ]),
    )
    .unwrap();
    let product = reflection.product(&center).unwrap();
    vec![
        ("coordinate reflection", reflection),
        ("central symmetry", center),
        ("coordinate swap", swap),
        ("quarter rotation", rotation),
        ("plane sign flip", plane_flip),
        ("coordinate 3-cycle", three_cycle),
        ("reflection x central product", product),
    ]
}

fn random_poly<R: Rng>(rng: &mut R, nvars: usize) -> RatPoly {
    let mut out = RatPoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=5) {
        let exponents: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
        let coeff = loop {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        out = &out + &RatPoly::from_integers(nvars, &[(exponents, coeff)]);
    }
    if rng.gen_bool(0.3) {
        out = out.scale(&ratio(1, rng.gen_range(2..=3)));
    }
    out
}

/// Suite 7: the Reynolds operator is an idempotent linear projection onto
/// the invariants.
pub fn reynolds_idempotence_suite() -> usize {
    let mut rng = rng(0xE7);
    let pool = action_pool();
    let mut cases = 0;
    while cases < 100 {
        let (name, action) = &pool[rng.gen_range(0..pool.len())];
        let f = random_poly(&mut rng, action.dim());
        let g = random_poly(&mut rng, action.dim());
        let rf = action.reynolds(&f);
        assert!(
            action.is_invariant(&rf),
            "Reynolds image not invariant under {name}: {rf}"
        );
        assert_eq!(
            action.reynolds(&rf),
            rf,
            "Reynolds not idempotent under {name}"
        );
        assert_eq!(
            action.reynolds(&(&f + &g)),
            &rf + &action.reynolds(&g),
            "Reynolds not additive under {name}"
        );
        cases += 1;
    }
    cases
}

fn random_point<R: Rng>(rng: &mut R, dim: usize) -> Vec<BigRational> {
    (0..dim)
        .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect()
}

/// Suite 8: the computed generators separate orbits on random samples.
pub fn orbit_separation_suite() -> usize {
    let mut rng = rng(0xE8);
    let pool = action_pool();
    let gens: Vec<GeneratorSet> = pool
        .iter()
        .map(|(_, action)| invariant_generators(action))
        .collect();
    let mut cases = 0;
    while cases < 100 {
        let index = rng.gen_range(0..pool.len());
        let (name, action) = &pool[index];
        let points: Vec<Vec<BigRational>> = (0..rng.gen_range(2..=4))
            .map(|_| random_point(&mut rng, action.dim()))
            .collect();
        let report =
            orbit_separation_check(action, gens[index].generators(), &points).unwrap();
        assert!(
            report.passed(),
            "orbit separation failed under {name}: {:?}",
            report.violations
        );
        cases += 1;
    }
    cases
}

fn has_trivial_stabilizer(action: &LinearAction, point: &[BigRational]) -> bool {
    (1..action.group().order()).all(|g| action.apply_to_point(g, point).as_slice() != point)
}

/// Suite 9: at points with trivial stabilizer the Jacobian of the
/// generator map has full rank.
pub fn jacobian_rank_suite() -> usize {
    let mut rng = rng(0xE9);
    let pool = action_pool();
    let gens: Vec<GeneratorSet> = pool
        .iter()
        .map(|(_, action)| invariant_generators(action))
        .collect();
    let mut cases = 0;
    while cases < 100 {
        let index = rng.gen_range(0..pool.len());
        let (name, action) = &pool[index];
        let point = loop {
            let candidate = random_point(&mut rng, action.dim());
            if has_trivial_stabilizer(action, &candidate) {
                break candidate;
            }
        };
        let rank = jacobian_rank_at(gens[index].generators(), &point).unwrap();
        assert_eq!(
            rank,
            action.dim(),
            "Jacobian rank under {name} at {point:?}"
        );
        cases += 1;
    }
    cases
}
