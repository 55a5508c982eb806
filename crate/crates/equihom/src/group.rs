//! Finite groups as explicit multiplication tables, plus the two gadgets
//! the homology machinery needs from them: GF(2) group algebra elements
//! and permutation actions on finite cell sets.
//!
//! Elements are dense indices `0..N-1` with the identity at index 0.
//! Groups are capped at order [`ORDER_CAP`], which keeps group algebra
//! supports inside a `u128` and keeps bar resolution ranks `N^p` at desk
//! scale.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest supported group order.
pub const ORDER_CAP: usize = 128;

/// Finite group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

/// Groups compare by table identity; the recorded generating set is a
/// construction artifact and does not affect equality.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    fn from_table(order: usize, table: Vec<usize>, generators: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b;
                }
            }
        }
        debug_assert!(inverse.iter().all(|&i| i < order));
        FiniteGroup {
            order,
            table,
            inverse,
            generators,
        }
    }

    #[must_use]
    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// Cyclic group of order `n`; element `i` is the i-th power of the
    /// designated generator (index 1 when `n > 1`).
    ///
    /// # Panics
    /// Panics if `n` is zero or above [`ORDER_CAP`].
    #[must_use]
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs order at least 1");
        assert!(n <= ORDER_CAP, "cyclic group order above cap {ORDER_CAP}");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        let generators = if n > 1 { vec![1] } else { Vec::new() };
        FiniteGroup::from_table(n, table, generators)
    }

    /// Direct product; the pair `(a, b)` sits at index `a * right.order() + b`.
    ///
    /// The recorded generators are the left generators paired with the
    /// identity, then the identity paired with the right generators.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Result<Self> {
        let order = left.order * right.order;
        if order > ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                found: order,
                cap: ORDER_CAP,
            });
        }
        let n = right.order;
        let mut table = vec![0; order * order];
        for a1 in 0..left.order {
            for b1 in 0..right.order {
                for a2 in 0..left.order {
                    for b2 in 0..right.order {
                        let x = a1 * n + b1;
                        let y = a2 * n + b2;
                        table[x * order + y] = left.mul(a1, a2) * n + right.mul(b1, b2);
                    }
                }
            }
        }
        let mut generators: Vec<usize> = left.generators.iter().map(|&g| g * n).collect();
        generators.extend(right.generators.iter().copied());
        Ok(FiniteGroup::from_table(order, table, generators))
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    ///
    /// Returns the abstract group together with its defining action; the
    /// element at index `i` acts by the i-th discovered permutation, with
    /// the identity first and the rest in breadth-first order over the
    /// generators as given, so the numbering is deterministic.
    pub fn from_generators(
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<(Self, PermAction)> {
        for (index, g) in generators.iter().enumerate() {
            if !is_permutation(g, degree) {
                return Err(Error::BadPermutation { index, degree });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
        index_of.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for gen in generators {
                let next = compose(&elements[a], gen);
                if !index_of.contains_key(&next) {
                    if elements.len() == ORDER_CAP {
                        return Err(Error::OrderCapExceeded {
                            found: elements.len() + 1,
                            cap: ORDER_CAP,
                        });
                    }
                    index_of.insert(next.clone(), elements.len());
                    elements.push(next);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let order = elements.len();
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = index_of[&compose(&elements[a], &elements[b])];
            }
        }
        let mut gen_indices = Vec::new();
        for g in generators {
            let i = index_of[g];
            if !gen_indices.contains(&i) {
                gen_indices.push(i);
            }
        }
        let group = FiniteGroup::from_table(order, table, gen_indices);
        let action = PermAction {
            degree,
            perms: elements,
        };
        Ok((group, action))
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.order
    }

    #[must_use]
    pub fn identity(&self) -> usize {
        0
    }

    #[must_use]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[must_use]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[must_use]
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Designated generating set recorded at construction time.
    #[must_use]
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// First element of full order, if any.
    #[must_use]
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order).find(|&a| self.element_order(a) == self.order)
    }

    #[must_use]
    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    /// Sum of all group elements in the GF(2) group algebra.
    #[must_use]
    pub fn norm_element(&self) -> GroupAlgebraElem {
        GroupAlgebraElem::from_support(self.order, &(0..self.order).collect::<Vec<_>>())
    }

    /// Exhaustive associativity check; cheap for capped orders.
    #[must_use]
    pub fn check_associativity(&self) -> bool {
        for a in 0..self.order {
            for b in 0..self.order {
                for c in 0..self.order {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Index map of the diagonal homomorphism `g -> (g, g)` into the
    /// direct product of this group with itself, matching the
    /// [`FiniteGroup::direct_product`] layout.
    #[must_use]
    pub fn diagonal_into_square(&self) -> Vec<usize> {
        (0..self.order).map(|g| g * self.order + g).collect()
    }
}

fn is_permutation(p: &[usize], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Composition `(f . g)(x) = f(g(x))`.
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

// ================================================================
// Group algebra over GF(2)
// ================================================================

/// Element of the group algebra GF(2)[G], stored as its support set.
///
/// Addition is symmetric difference; multiplication convolves supports
/// through the group table, cancelling pairs mod 2.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    order: usize,
    support: u128,
}

impl GroupAlgebraElem {
    #[must_use]
    pub fn zero(order: usize) -> Self {
        debug_assert!(order <= ORDER_CAP);
        GroupAlgebraElem { order, support: 0 }
    }

    /// The identity of the algebra (the group identity with coefficient 1).
    #[must_use]
    pub fn one(order: usize) -> Self {
        GroupAlgebraElem::of(order, 0)
    }

    /// Single group element.
    #[must_use]
    pub fn of(order: usize, g: usize) -> Self {
        debug_assert!(g < order && order <= ORDER_CAP);
        GroupAlgebraElem {
            order,
            support: 1u128 << g,
        }
    }

    #[must_use]
    pub fn from_support(order: usize, elements: &[usize]) -> Self {
        let mut e = GroupAlgebraElem::zero(order);
        for &g in elements {
            debug_assert!(g < order);
            e.support ^= 1u128 << g;
        }
        e
    }

    #[must_use]
    pub fn mul(self, other: Self, group: &FiniteGroup) -> Self {
        assert_eq!(self.order, group.order());
        assert_eq!(other.order, group.order());
        let mut out = GroupAlgebraElem::zero(self.order);
        for a in self.support_iter() {
            for b in other.support_iter() {
                out.support ^= 1u128 << group.mul(a, b);
            }
        }
        out
    }

    #[must_use]
    pub fn is_zero(self) -> bool {
        self.support == 0
    }

    #[must_use]
    pub fn contains(self, g: usize) -> bool {
        self.support >> g & 1 == 1
    }

    #[must_use]
    pub fn support_len(self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn support_iter(self) -> impl Iterator<Item = usize> {
        let mut rem = self.support;
        std::iter::from_fn(move || {
            if rem == 0 {
                None
            } else {
                let tz = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                Some(tz)
            }
        })
    }
}

/// Characteristic-2 addition: supports combine by symmetric difference.
impl std::ops::Add for GroupAlgebraElem {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        assert_eq!(self.order, other.order);
        GroupAlgebraElem {
            order: self.order,
            support: self.support ^ other.support,
        }
    }
}

impl std::fmt::Debug for GroupAlgebraElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support_iter().map(|g| format!("g{g}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

// ================================================================
// Permutation actions
// ================================================================

/// Action of a group on a finite set `0..degree`, one permutation per
/// group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    degree: usize,
    perms: Vec<Vec<usize>>,
}

impl PermAction {
    /// Trivial action of a group of the given order.
    #[must_use]
    pub fn identity(order: usize, degree: usize) -> Self {
        PermAction {
            degree,
            perms: vec![(0..degree).collect(); order],
        }
    }

    /// Action from one permutation per group element, validated to be a
    /// homomorphism.
    pub fn from_element_perms(group: &FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "expected {} permutations, got {}",
                    group.order(),
                    perms.len()
                ),
            });
        }
        let degree = perms.first().map_or(0, Vec::len);
        for (index, p) in perms.iter().enumerate() {
            if !is_permutation(p, degree) {
                return Err(Error::BadPermutation { index, degree });
            }
        }
        let action = PermAction { degree, perms };
        action.check_homomorphism(group)?;
        Ok(action)
    }

    /// Extends permutations given for the group's designated generators to
    /// the whole group, then validates the homomorphism law.
    pub fn extend_from_generators(
        group: &FiniteGroup,
        gen_perms: &[Vec<usize>],
    ) -> Result<Self> {
        if gen_perms.len() != group.generators().len() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "group has {} designated generators, got {} permutations",
                    group.generators().len(),
                    gen_perms.len()
                ),
            });
        }
        let degree = gen_perms.first().map_or(0, Vec::len);
        for (index, p) in gen_perms.iter().enumerate() {
            if !is_permutation(p, degree) {
                return Err(Error::BadPermutation { index, degree });
            }
        }
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        perms[0] = Some((0..degree).collect());
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (&gen, gen_perm) in group.generators().iter().zip(gen_perms) {
                let b = group.mul(a, gen);
                if perms[b].is_none() {
                    let pa = perms[a].as_ref().expect("visited element has a perm");
                    perms[b] = Some(compose(pa, gen_perm));
                    queue.push_back(b);
                }
            }
        }
        if perms.iter().any(Option::is_none) {
            return Err(Error::Scenario(
                "designated generators do not generate the group".into(),
            ));
        }
        let action = PermAction {
            degree,
            perms: perms.into_iter().map(Option::unwrap).collect(),
        };
        action.check_homomorphism(group)?;
        Ok(action)
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[must_use]
    pub fn act(&self, element: usize, point: usize) -> usize {
        self.perms[element][point]
    }

    #[must_use]
    pub fn perm(&self, element: usize) -> &[usize] {
        &self.perms[element]
    }

    /// Exhaustive check that `act(ab) = act(a) . act(b)`.
    pub fn check_homomorphism(&self, group: &FiniteGroup) -> Result<()> {
        assert_eq!(self.perms.len(), group.order());
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                for x in 0..self.degree {
                    if self.perms[ab][x] != self.perms[a][self.perms[b][x]] {
                        return Err(Error::NotAHomomorphism { a, b });
                    }
                }
            }
        }
        Ok(())
    }

    /// True iff no element other than the identity fixes a point.
    #[must_use]
    pub fn is_free(&self) -> bool {
        self.first_fixed_point().is_none()
    }

    /// First `(element, point)` with a nontrivial stabilizer, if any.
    #[must_use]
    pub fn first_fixed_point(&self) -> Option<(usize, usize)> {
        for g in 1..self.perms.len() {
            for x in 0..self.degree {
                if self.perms[g][x] == x {
                    return Some((g, x));
                }
            }
        }
        None
    }
}
