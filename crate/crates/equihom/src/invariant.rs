//! Exact invariant theory for rational linear actions of finite groups.
//!
//! Everything in this module is computed over the rational numbers with
//! arbitrary precision: multivariate polynomial arithmetic, Reynolds
//! averaging, extraction of a minimal homogeneous generating set for the
//! invariant algebra together with a per-degree completeness certificate,
//! polynomial relations between generators, induced maps between quotients,
//! orbit-separation checks on sample points, and exact Jacobian ranks.
//!
//! The quotient of `R^d` by a finite linear group is realised concretely as
//! the image of the generator map `x -> (p_1(x), ..., p_m(x))`; the functions
//! here compute that map, certify that it separates orbits, and describe its
//! image through polynomial relations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A monomial in a fixed number of variables, stored as an exponent vector.
///
/// The ordering is graded lexicographic: monomials are compared by total
/// degree first, then by comparing exponent vectors left to right, so among
/// monomials of equal degree the one with the higher power of an earlier
/// variable is the larger.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    #[must_use]
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial (all exponents zero).
    #[must_use]
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial consisting of a single variable.
    #[must_use]
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps)
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[must_use]
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Total degree where variable `i` counts with weight `weights[i]`.
    #[must_use]
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        assert_eq!(weights.len(), self.0.len(), "one weight per variable");
        self.0.iter().zip(weights).map(|(&e, &w)| e * w).sum()
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "mixed variable counts");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        assert_eq!(self.0.len(), other.0.len(), "mixed variable counts");
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered by the graded lexicographic order on
/// monomials; zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RatPoly {
    #[must_use]
    pub fn zero(nvars: usize) -> Self {
        RatPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    #[must_use]
    pub fn one(nvars: usize) -> Self {
        RatPoly::constant(nvars, BigRational::one())
    }

    #[must_use]
    pub fn constant(nvars: usize, value: BigRational) -> Self {
        let mut poly = RatPoly::zero(nvars);
        poly.insert_term(Monomial::constant(nvars), value);
        poly
    }

    /// The polynomial consisting of a single variable.
    #[must_use]
    pub fn var(nvars: usize, index: usize) -> Self {
        RatPoly::term(nvars, Monomial::var(nvars, index), BigRational::one())
    }

    /// A single-term polynomial; a zero coefficient yields the zero polynomial.
    #[must_use]
    pub fn term(nvars: usize, monomial: Monomial, coeff: BigRational) -> Self {
        assert_eq!(monomial.nvars(), nvars, "monomial has wrong variable count");
        let mut poly = RatPoly::zero(nvars);
        poly.insert_term(monomial, coeff);
        poly
    }

    /// Convenience constructor from integer coefficients; repeated exponent
    /// vectors accumulate.
    #[must_use]
    pub fn from_integers(nvars: usize, terms: &[(Vec<u32>, i64)]) -> Self {
        let mut poly = RatPoly::zero(nvars);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector has wrong length");
            poly.insert_term(
                Monomial::new(exps.clone()),
                BigRational::from_integer(BigInt::from(*coeff)),
            );
        }
        poly
    }

    fn insert_term(&mut self, monomial: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    #[must_use]
    pub fn coeff(&self, monomial: &Monomial) -> BigRational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree; the zero polynomial reports degree 0.
    #[must_use]
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest monomial in the graded lexicographic order.
    #[must_use]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    #[must_use]
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Rescaled so the leading coefficient is 1; the zero polynomial is
    /// returned unchanged.
    #[must_use]
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lead) => {
                let inv = BigRational::one() / lead;
                self.scale(&inv)
            }
        }
    }

    #[must_use]
    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return RatPoly::zero(self.nvars);
        }
        RatPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    #[must_use]
    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = RatPoly::one(self.nvars);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    #[must_use]
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "point has wrong dimension");
        let mut total = BigRational::zero();
        for (monomial, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (value, &exp) in point.iter().zip(monomial.exponents()) {
                term *= pow_rational(value, exp);
            }
            total += term;
        }
        total
    }

    /// Substitute `images[i]` for variable `i`. All images must share a
    /// variable count, which becomes the variable count of the result.
    #[must_use]
    pub fn substitute(&self, images: &[RatPoly]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let out_vars = images.first().map_or(0, RatPoly::nvars);
        for image in images {
            assert_eq!(image.nvars(), out_vars, "images disagree on variables");
        }
        let mut out = RatPoly::zero(out_vars);
        for (monomial, coeff) in &self.terms {
            let mut term = RatPoly::constant(out_vars, coeff.clone());
            for (image, &exp) in images.iter().zip(monomial.exponents()) {
                if exp > 0 {
                    term = &term * &image.pow(exp);
                }
            }
            out = &out + &term;
        }
        out
    }

    #[must_use]
    pub fn partial_deriv(&self, index: usize) -> Self {
        assert!(index < self.nvars, "variable index out of range");
        let mut out = RatPoly::zero(self.nvars);
        for (monomial, coeff) in &self.terms {
            let exp = monomial.exponents()[index];
            if exp == 0 {
                continue;
            }
            let mut exps = monomial.exponents().to_vec();
            exps[index] -= 1;
            out.insert_term(
                Monomial::new(exps),
                coeff * BigRational::from_integer(BigInt::from(exp)),
            );
        }
        out
    }

    /// Lift into a larger variable set, mapping variable `i` to variable
    /// `offset + i`.
    #[must_use]
    pub fn extended(&self, total_vars: usize, offset: usize) -> Self {
        assert!(
            offset + self.nvars <= total_vars,
            "lift does not fit in the target variable count"
        );
        let mut out = RatPoly::zero(total_vars);
        for (monomial, coeff) in &self.terms {
            let mut exps = vec![0; total_vars];
            exps[offset..offset + self.nvars].copy_from_slice(monomial.exponents());
            out.insert_term(Monomial::new(exps), coeff.clone());
        }
        out
    }

    /// Human-readable form with the given variable names, terms in
    /// descending graded lexicographic order.
    #[must_use]
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (position, (monomial, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if position == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let magnitude = coeff.abs();
            match render_monomial(monomial, names) {
                None => out.push_str(&magnitude.to_string()),
                Some(vars) => {
                    if !magnitude.is_one() {
                        out.push_str(&magnitude.to_string());
                        out.push('*');
                    }
                    out.push_str(&vars);
                }
            }
        }
        out
    }
}

fn render_monomial(monomial: &Monomial, names: &[String]) -> Option<String> {
    let parts: Vec<String> = monomial
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &exp)| exp > 0)
        .map(|(index, &exp)| {
            if exp == 1 {
                names[index].clone()
            } else {
                format!("{}^{}", names[index], exp)
            }
        })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// Numbered variable names `prefix1, prefix2, ...`.
#[must_use]
pub fn name_seq(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&name_seq("x", self.nvars)))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, other: &RatPoly) -> RatPoly {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut out = self.clone();
        for (monomial, coeff) in &other.terms {
            out.insert_term(monomial.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, other: &RatPoly) -> RatPoly {
        self + &(-other)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, other: &RatPoly) -> RatPoly {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut out = RatPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

fn pow_rational(base: &BigRational, exponent: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exponent {
        acc *= base;
    }
    acc
}

/// Parse a rational number written as `a` or `a/b` with integer parts.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::BadRational {
        text: text.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(bad());
    }
    let (numer_text, denom_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let numer: BigInt = numer_text.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom_text {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

/// A linear action of a finite group on rational `d`-space: one matrix per
/// group element, validated to be a genuine representation (the identity
/// element acts by the identity matrix and matrices compose according to the
/// group table, which also forces invertibility).
#[derive(Clone, Debug)]
pub struct LinearAction {
    group: FiniteGroup,
    dim: usize,
    mats: Vec<Vec<Vec<BigRational>>>,
}

impl LinearAction {
    pub fn new(group: FiniteGroup, dim: usize, mats: Vec<Vec<Vec<BigRational>>>) -> Result<Self> {
        if mats.len() != group.order() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "action needs one matrix per group element: got {} for a group of order {}",
                    mats.len(),
                    group.order()
                ),
            });
        }
        for mat in &mats {
            if mat.len() != dim || mat.iter().any(|row| row.len() != dim) {
                return Err(Error::DimensionMismatch {
                    context: format!("every action matrix must be {dim} by {dim}"),
                });
            }
        }
        let e = group.identity();
        if mats[e] != identity_matrix(dim) {
            return Err(Error::NotAHomomorphism { a: e, b: e });
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if mat_mul(&mats[a], &mats[b]) != mats[group.mul(a, b)] {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(LinearAction { group, dim, mats })
    }

    #[must_use]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn matrix(&self, element: usize) -> &[Vec<BigRational>] {
        &self.mats[element]
    }

    /// Image of a point under the matrix of `element`.
    #[must_use]
    pub fn apply_to_point(&self, element: usize, point: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(point.len(), self.dim, "point has wrong dimension");
        self.mats[element]
            .iter()
            .map(|row| {
                row.iter()
                    .zip(point)
                    .map(|(a, x)| a * x)
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    /// Action on polynomial functions: `element` sends `f` to the function
    /// `x -> f(M(element^-1) x)`, so that acting is a left group action.
    #[must_use]
    pub fn act(&self, element: usize, f: &RatPoly) -> RatPoly {
        assert_eq!(f.nvars(), self.dim, "polynomial has wrong variable count");
        let forms = linear_forms(&self.mats[self.group.inv(element)]);
        f.substitute(&forms)
    }

    #[must_use]
    pub fn is_invariant(&self, f: &RatPoly) -> bool {
        (0..self.group.order()).all(|g| self.act(g, f) == *f)
    }

    /// Group average of a polynomial: the exact projection onto the
    /// invariant subalgebra.
    #[must_use]
    pub fn reynolds(&self, f: &RatPoly) -> RatPoly {
        let mut total = RatPoly::zero(self.dim);
        for g in 0..self.group.order() {
            total = &total + &self.act(g, f);
        }
        let inv_order = BigRational::new(BigInt::one(), BigInt::from(self.group.order()));
        total.scale(&inv_order)
    }

    /// Block-diagonal action of the direct product group on the direct sum
    /// of the two spaces. The pair `(a, b)` acts at index `a * |H| + b`,
    /// matching the element numbering of the product group.
    pub fn product(&self, other: &LinearAction) -> Result<LinearAction> {
        let group = FiniteGroup::direct_product(&self.group, &other.group)?;
        let dim = self.dim + other.dim;
        let mut mats = Vec::with_capacity(group.order());
        for a in 0..self.group.order() {
            for b in 0..other.group.order() {
                let mut mat = vec![vec![BigRational::zero(); dim]; dim];
                for (i, row) in self.mats[a].iter().enumerate() {
                    for (j, entry) in row.iter().enumerate() {
                        mat[i][j] = entry.clone();
                    }
                }
                for (i, row) in other.mats[b].iter().enumerate() {
                    for (j, entry) in row.iter().enumerate() {
                        mat[self.dim + i][self.dim + j] = entry.clone();
                    }
                }
                mats.push(mat);
            }
        }
        LinearAction::new(group, dim, mats)
    }
}

fn identity_matrix(dim: usize) -> Vec<Vec<BigRational>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Rows of a matrix read as linear polynomials.
fn linear_forms(matrix: &[Vec<BigRational>]) -> Vec<RatPoly> {
    let dim = matrix.len();
    matrix
        .iter()
        .map(|row| {
            let mut form = RatPoly::zero(dim);
            for (j, entry) in row.iter().enumerate() {
                form = &form + &RatPoly::term(dim, Monomial::var(dim, j), entry.clone());
            }
            form
        })
        .collect()
}

/// One degree of a completeness certificate: the dimension of the span of
/// products of the extracted generators versus the dimension of the full
/// invariant subspace in that degree. The set is complete when the two agree
/// in every degree up to the group order, which bounds the degrees needed to
/// generate the invariant algebra in characteristic zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: u32,
    pub generated_dim: usize,
    pub invariant_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessCertificate {
    pub per_degree: Vec<DegreeCheck>,
}

impl CompletenessCertificate {
    #[must_use]
    pub fn complete(&self) -> bool {
        self.per_degree
            .iter()
            .all(|check| check.generated_dim == check.invariant_dim)
    }

    /// Descriptions of the degrees where the generated algebra falls short.
    #[must_use]
    pub fn defects(&self) -> Vec<String> {
        self.per_degree
            .iter()
            .filter(|check| check.generated_dim != check.invariant_dim)
            .map(|check| {
                format!(
                    "degree {}: generated dimension {} but invariant dimension {}",
                    check.degree, check.generated_dim, check.invariant_dim
                )
            })
            .collect()
    }
}

/// A homogeneous generating set for the invariant algebra of a linear
/// action, listed in descending graded lexicographic order of leading
/// monomials, together with its completeness certificate.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    nvars: usize,
    gens: Vec<RatPoly>,
    certificate: CompletenessCertificate,
}

impl GeneratorSet {
    #[must_use]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[must_use]
    pub fn generators(&self) -> &[RatPoly] {
        &self.gens
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    #[must_use]
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(RatPoly::degree).collect()
    }

    #[must_use]
    pub fn certificate(&self) -> &CompletenessCertificate {
        &self.certificate
    }
}

/// Extract a minimal homogeneous generating set for the invariant algebra.
///
/// For each degree up to the group order (the degree bound valid in
/// characteristic zero), the Reynolds images of the monomials of that degree
/// are scanned in descending graded lexicographic order, and an image is
/// kept exactly when it falls outside the span of products of generators
/// already kept. Candidates are normalised to leading coefficient 1, and the
/// final list is sorted by leading monomial, largest first, so the output is
/// canonical for a given action. The certificate re-checks, degree by
/// degree, that the kept generators span the full invariant subspace.
#[must_use]
pub fn invariant_generators(action: &LinearAction) -> GeneratorSet {
    let nvars = action.dim();
    let bound = action.group().order() as u32;
    let mut gens: Vec<RatPoly> = Vec::new();
    for degree in 1..=bound {
        let monos = monomials_of_degree(nvars, degree);
        let index = monomial_index(&monos);
        let mut span = QSpan::new(monos.len());
        for product in products_of_degree(&gens, nvars, degree) {
            span.insert(coeff_vector(&product, &index));
        }
        for monomial in &monos {
            let image = action.reynolds(&RatPoly::term(
                nvars,
                monomial.clone(),
                BigRational::one(),
            ));
            if image.is_zero() {
                continue;
            }
            if span.insert(coeff_vector(&image, &index)) {
                gens.push(image.monic());
            }
        }
    }
    gens.sort_by(|a, b| {
        let la = a.leading_monomial().expect("generators are nonzero");
        let lb = b.leading_monomial().expect("generators are nonzero");
        lb.cmp(la)
    });
    let certificate = certify(action, &gens);
    GeneratorSet {
        nvars,
        gens,
        certificate,
    }
}

/// Per-degree comparison of the algebra generated by `gens` against the full
/// invariant algebra of `action`, in degrees up to the group order.
#[must_use]
pub fn certify(action: &LinearAction, gens: &[RatPoly]) -> CompletenessCertificate {
    let nvars = action.dim();
    let bound = action.group().order() as u32;
    let mut per_degree = Vec::new();
    for degree in 1..=bound {
        let monos = monomials_of_degree(nvars, degree);
        let index = monomial_index(&monos);
        let mut generated = QSpan::new(monos.len());
        for product in products_of_degree(gens, nvars, degree) {
            generated.insert(coeff_vector(&product, &index));
        }
        let mut invariant = QSpan::new(monos.len());
        for monomial in &monos {
            let image = action.reynolds(&RatPoly::term(
                nvars,
                monomial.clone(),
                BigRational::one(),
            ));
            if !image.is_zero() {
                invariant.insert(coeff_vector(&image, &index));
            }
        }
        per_degree.push(DegreeCheck {
            degree,
            generated_dim: generated.dim(),
            invariant_dim: invariant.dim(),
        });
    }
    CompletenessCertificate { per_degree }
}

/// Evaluate the generator map at a point: the coordinates of its image in
/// the quotient.
pub fn quotient_eval(gens: &[RatPoly], point: &[BigRational]) -> Result<Vec<BigRational>> {
    for gen in gens {
        if gen.nvars() != point.len() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "point has {} coordinates but generators use {} variables",
                    point.len(),
                    gen.nvars()
                ),
            });
        }
    }
    Ok(gens.iter().map(|gen| gen.eval(point)).collect())
}

/// A pair of sample points on which the generator map disagrees with orbit
/// equivalence: either two points in the same orbit with different images
/// (impossible for invariant generators) or two points in different orbits
/// with equal images (a failure to separate).
#[derive(Clone, Debug)]
pub struct OrbitViolation {
    pub first: usize,
    pub second: usize,
    pub same_orbit: bool,
    pub identified: bool,
}

#[derive(Clone, Debug)]
pub struct OrbitSeparationReport {
    pub pairs_checked: usize,
    pub violations: Vec<OrbitViolation>,
}

impl OrbitSeparationReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check, over every pair of sample points, that the generator map
/// identifies two points exactly when they lie in the same orbit.
pub fn orbit_separation_check(
    action: &LinearAction,
    gens: &[RatPoly],
    points: &[Vec<BigRational>],
) -> Result<OrbitSeparationReport> {
    let mut values = Vec::with_capacity(points.len());
    for point in points {
        if point.len() != action.dim() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "sample point has {} coordinates but the action is on {} variables",
                    point.len(),
                    action.dim()
                ),
            });
        }
        values.push(quotient_eval(gens, point)?);
    }
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            pairs_checked += 1;
            let same_orbit = (0..action.group().order())
                .any(|g| action.apply_to_point(g, &points[i]) == points[j]);
            let identified = values[i] == values[j];
            if same_orbit != identified {
                violations.push(OrbitViolation {
                    first: i,
                    second: j,
                    same_orbit,
                    identified,
                });
            }
        }
    }
    Ok(OrbitSeparationReport {
        pairs_checked,
        violations,
    })
}

/// All polynomial relations among the generators up to a weighted degree.
///
/// Variable `i` of the output polynomials stands for generator `i` and
/// carries its degree as weight. The returned list is a basis of the exact
/// rational kernel of the expansion map on monomials of weighted degree at
/// most `max_weighted_degree`, canonical for the given generator list.
pub fn relations(gens: &[RatPoly], max_weighted_degree: u32) -> Result<Vec<RatPoly>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let weights = generator_weights(gens)?;
    let zmonos = weighted_monomials_upto(&weights, max_weighted_degree);
    let expansions: Vec<RatPoly> = zmonos
        .iter()
        .map(|zmono| expand_generator_monomial(gens, zmono))
        .collect();
    let (rows, _) = expansion_matrix(&expansions, None);
    let kernel = kernel_q(rows, zmonos.len());
    let m = gens.len();
    Ok(kernel
        .into_iter()
        .map(|coeffs| {
            let mut poly = RatPoly::zero(m);
            for (zmono, coeff) in zmonos.iter().zip(coeffs) {
                poly.insert_term(zmono.clone(), coeff);
            }
            poly
        })
        .collect())
}

/// Write an invariant polynomial as a polynomial in the generators.
///
/// Searches combinations of generator monomials of weighted degree at most
/// the degree of `f`, which is exhaustive for homogeneous generators. The
/// free coefficients of the underdetermined system are set to zero, so the
/// answer is canonical.
pub fn express_in_generators(f: &RatPoly, gens: &[RatPoly]) -> Result<RatPoly> {
    if f.is_zero() {
        return Ok(RatPoly::zero(gens.len()));
    }
    if gens.is_empty() {
        return Err(Error::NotExpressible {
            what: f.to_string(),
        });
    }
    for gen in gens {
        if gen.nvars() != f.nvars() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "polynomial uses {} variables but generators use {}",
                    f.nvars(),
                    gen.nvars()
                ),
            });
        }
    }
    let weights = generator_weights(gens)?;
    let zmonos = weighted_monomials_upto(&weights, f.degree());
    let expansions: Vec<RatPoly> = zmonos
        .iter()
        .map(|zmono| expand_generator_monomial(gens, zmono))
        .collect();
    let (mut rows, _) = expansion_matrix(&expansions, Some(f));
    let ncols = zmonos.len();
    let pivots = rref_q(&mut rows);
    if pivots.contains(&ncols) {
        return Err(Error::NotExpressible {
            what: f.to_string(),
        });
    }
    let mut solution = vec![BigRational::zero(); ncols];
    for (row, &pivot) in rows.iter().zip(&pivots) {
        solution[pivot] = row[ncols].clone();
    }
    let mut poly = RatPoly::zero(gens.len());
    for (zmono, coeff) in zmonos.iter().zip(solution) {
        poly.insert_term(zmono.clone(), coeff);
    }
    Ok(poly)
}

/// Whether two generator lists generate the same subalgebra, decided by
/// expressing each list in the other.
#[must_use]
pub fn algebra_equal(first: &[RatPoly], second: &[RatPoly]) -> bool {
    first
        .iter()
        .all(|f| express_in_generators(f, second).is_ok())
        && second
            .iter()
            .all(|g| express_in_generators(g, first).is_ok())
}

/// The map induced on quotients by an equivariant polynomial map.
///
/// `map` lists the components of a polynomial map from the source space to
/// the target space, both carrying actions of the same group. Equivariance
/// is checked exactly for every group element; the result expresses each
/// target generator composed with the map in the source generators, giving
/// the coordinates of the induced map between quotients.
pub fn induced_quotient_map(
    map: &[RatPoly],
    source: &LinearAction,
    source_gens: &[RatPoly],
    target: &LinearAction,
    target_gens: &[RatPoly],
) -> Result<Vec<RatPoly>> {
    if source.group() != target.group() {
        return Err(Error::GroupMismatch {
            context: "induced_quotient_map",
        });
    }
    if map.len() != target.dim() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "map has {} components but the target space has dimension {}",
                map.len(),
                target.dim()
            ),
        });
    }
    for component in map {
        if component.nvars() != source.dim() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "map components must use the {} source variables",
                    source.dim()
                ),
            });
        }
    }
    for g in 0..source.group().order() {
        let source_forms = linear_forms(source.matrix(g));
        for (i, component) in map.iter().enumerate() {
            let after_source = component.substitute(&source_forms);
            let mut after_target = RatPoly::zero(source.dim());
            for (j, other) in map.iter().enumerate() {
                after_target = &after_target + &other.scale(&target.matrix(g)[i][j]);
            }
            if after_source != after_target {
                return Err(Error::NotEquivariant { element: g });
            }
        }
    }
    target_gens
        .iter()
        .map(|q| express_in_generators(&q.substitute(map), source_gens))
        .collect()
}

/// Verify that the lifted generator sets of two actions together generate
/// the invariants of the block-diagonal product action.
pub fn product_action_check(
    left: &LinearAction,
    right: &LinearAction,
) -> Result<CompletenessCertificate> {
    let product = left.product(right)?;
    let left_gens = invariant_generators(left);
    let right_gens = invariant_generators(right);
    let total = left.dim() + right.dim();
    let mut lifted: Vec<RatPoly> = left_gens
        .generators()
        .iter()
        .map(|gen| gen.extended(total, 0))
        .collect();
    lifted.extend(
        right_gens
            .generators()
            .iter()
            .map(|gen| gen.extended(total, left.dim())),
    );
    Ok(certify(&product, &lifted))
}

/// Exact rank of the Jacobian matrix of the generator map at a point.
pub fn jacobian_rank_at(gens: &[RatPoly], point: &[BigRational]) -> Result<usize> {
    for gen in gens {
        if gen.nvars() != point.len() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "point has {} coordinates but generators use {} variables",
                    point.len(),
                    gen.nvars()
                ),
            });
        }
    }
    let rows: Vec<Vec<BigRational>> = gens
        .iter()
        .map(|gen| {
            (0..point.len())
                .map(|j| gen.partial_deriv(j).eval(point))
                .collect()
        })
        .collect();
    Ok(rank_q(rows))
}

fn generator_weights(gens: &[RatPoly]) -> Result<Vec<u32>> {
    let mut weights = Vec::with_capacity(gens.len());
    for gen in gens {
        let degree = gen.degree();
        if gen.is_zero() || degree == 0 {
            return Err(Error::DimensionMismatch {
                context: "generators must be nonconstant polynomials".to_string(),
            });
        }
        weights.push(degree);
    }
    Ok(weights)
}

/// Expand a monomial in generator variables into the underlying variables.
fn expand_generator_monomial(gens: &[RatPoly], zmono: &Monomial) -> RatPoly {
    let nvars = gens[0].nvars();
    let mut out = RatPoly::one(nvars);
    for (gen, &exp) in gens.iter().zip(zmono.exponents()) {
        if exp > 0 {
            out = &out * &gen.pow(exp);
        }
    }
    out
}

/// Assemble the coefficient matrix whose columns are the expansions, over
/// the union of their supports (plus the support of `rhs` when present,
/// which is appended as a final augmented column). Returns the rows and the
/// monomial order used for them.
fn expansion_matrix(
    expansions: &[RatPoly],
    rhs: Option<&RatPoly>,
) -> (Vec<Vec<BigRational>>, Vec<Monomial>) {
    let mut support: BTreeMap<Monomial, usize> = BTreeMap::new();
    for poly in expansions.iter().chain(rhs) {
        for (monomial, _) in poly.terms() {
            let next = support.len();
            support.entry(monomial.clone()).or_insert(next);
        }
    }
    let order: Vec<Monomial> = support.keys().cloned().collect();
    let index: BTreeMap<&Monomial, usize> = order.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let width = expansions.len() + usize::from(rhs.is_some());
    let mut rows = vec![vec![BigRational::zero(); width]; order.len()];
    for (col, poly) in expansions.iter().enumerate() {
        for (monomial, coeff) in poly.terms() {
            rows[index[monomial]][col] = coeff.clone();
        }
    }
    if let Some(f) = rhs {
        for (monomial, coeff) in f.terms() {
            rows[index[monomial]][expansions.len()] = coeff.clone();
        }
    }
    (rows, order)
}

/// Monomials of the given total degree in descending graded lexicographic
/// order.
#[must_use]
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0; nvars];
    fill_monomials(nvars, degree, 0, &mut current, &mut out);
    out
}

fn fill_monomials(
    nvars: usize,
    remaining: u32,
    position: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if position == nvars {
        if remaining == 0 {
            out.push(Monomial::new(current.clone()));
        }
        return;
    }
    if position + 1 == nvars {
        current[position] = remaining;
        out.push(Monomial::new(current.clone()));
        current[position] = 0;
        return;
    }
    let mut exp = remaining;
    loop {
        current[position] = exp;
        fill_monomials(nvars, remaining - exp, position + 1, current, out);
        if exp == 0 {
            break;
        }
        exp -= 1;
    }
    current[position] = 0;
}

/// Monomials of weighted degree at most `max`, sorted by weighted degree and
/// then by the monomial order.
fn weighted_monomials_upto(weights: &[u32], max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0; weights.len()];
    fill_weighted(weights, max, 0, &mut current, &mut out);
    out.sort_by(|a, b| {
        a.weighted_degree(weights)
            .cmp(&b.weighted_degree(weights))
            .then_with(|| a.cmp(b))
    });
    out
}

fn fill_weighted(
    weights: &[u32],
    budget: u32,
    position: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if position == weights.len() {
        out.push(Monomial::new(current.clone()));
        return;
    }
    let weight = weights[position].max(1);
    let mut exp = 0;
    while exp * weight <= budget {
        current[position] = exp;
        fill_weighted(weights, budget - exp * weight, position + 1, current, out);
        exp += 1;
    }
    current[position] = 0;
}

/// Products of the given polynomials (with repetition) whose total degree is
/// exactly `target`.
fn products_of_degree(gens: &[RatPoly], nvars: usize, target: u32) -> Vec<RatPoly> {
    let mut out = Vec::new();
    let unit = RatPoly::one(nvars);
    collect_products(gens, 0, target, &unit, &mut out);
    out
}

fn collect_products(
    gens: &[RatPoly],
    start: usize,
    remaining: u32,
    acc: &RatPoly,
    out: &mut Vec<RatPoly>,
) {
    if remaining == 0 {
        out.push(acc.clone());
        return;
    }
    for j in start..gens.len() {
        let degree = gens[j].degree();
        if degree == 0 || degree > remaining {
            continue;
        }
        let next = acc * &gens[j];
        collect_products(gens, j, remaining - degree, &next, out);
    }
}

fn monomial_index(monos: &[Monomial]) -> BTreeMap<Monomial, usize> {
    monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}

/// Coefficient vector of a polynomial over an indexed monomial basis; every
/// monomial of the polynomial must appear in the index.
fn coeff_vector(poly: &RatPoly, index: &BTreeMap<Monomial, usize>) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); index.len()];
    for (monomial, coeff) in poly.terms() {
        let position = index
            .get(monomial)
            .expect("polynomial monomial outside the indexed basis");
        out[*position] = coeff.clone();
    }
    out
}

/// A growing subspace of rational row vectors kept in reduced row echelon
/// form, supporting exact membership tests.
struct QSpan {
    ncols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl QSpan {
    fn new(ncols: usize) -> Self {
        QSpan {
            ncols,
            rows: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut vector: Vec<BigRational>) -> Vec<BigRational> {
        for row in &self.rows {
            let pivot = first_nonzero(row).expect("stored rows are nonzero");
            if !vector[pivot].is_zero() {
                let factor = vector[pivot].clone();
                for (entry, base) in vector.iter_mut().zip(row) {
                    *entry = &*entry - &(&factor * base);
                }
            }
        }
        vector
    }

    /// Add a vector to the span; returns whether the dimension grew.
    fn insert(&mut self, vector: Vec<BigRational>) -> bool {
        assert_eq!(vector.len(), self.ncols, "vector has wrong length");
        let mut vector = self.reduce(vector);
        let Some(pivot) = first_nonzero(&vector) else {
            return false;
        };
        let lead = vector[pivot].clone();
        for entry in &mut vector {
            *entry = &*entry / &lead;
        }
        for row in &mut self.rows {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (entry, base) in row.iter_mut().zip(&vector) {
                    *entry = &*entry - &(&factor * base);
                }
            }
        }
        let position = self
            .rows
            .partition_point(|row| first_nonzero(row).expect("stored rows are nonzero") < pivot);
        self.rows.insert(position, vector);
        true
    }
}

fn first_nonzero(vector: &[BigRational]) -> Option<usize> {
    vector.iter().position(|entry| !entry.is_zero())
}

/// In-place reduced row echelon form; returns the pivot columns.
fn rref_q(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let lead = rows[rank][col].clone();
        for entry in rows[rank].iter_mut() {
            *entry = &*entry / &lead;
        }
        let base = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, b) in row.iter_mut().zip(&base) {
                    *entry = &*entry - &(&factor * b);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    pivots
}

/// Canonical basis of the right kernel of a matrix given by rows.
fn kernel_q(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let pivots = rref_q(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut vector = vec![BigRational::zero(); ncols];
        vector[free] = BigRational::one();
        for (i, &pivot) in pivots.iter().enumerate() {
            vector[pivot] = -rows[i][free].clone();
        }
        basis.push(vector);
    }
    basis
}

fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    rref_q(&mut rows).len()
}
