//! ω-closed families of inductive subsets of ω.
//!
//! A family F is ω-closed when for any two members F1, F2 and any n ∈ ω the
//! set `F1 ∩ (-n + F2)` again belongs to F. On lower bounds this reads
//! `max(a, b - n) ∈ F` for all lower bounds a, b in F and all n; only
//! n ≤ max(F) needs checking, because for larger n the shifted bound is
//! negative and the max is just `a`, already a member. A finite family of
//! nonempty inductive sets is therefore ω-closed exactly when its lower
//! bounds form a contiguous interval; the validator walks the definition and
//! reports the first violating `(a, b, n)` with that corollary as the reason.
//!
//! ω-closure is what makes the extended product well defined: the set
//! component of any product of members is again a member, so multiplication
//! never leaves the family.

use std::fmt;

use crate::algebra::{Element, InductiveSet, Nat};

/// A member of a family: an inductive set, or the empty set for families
/// that declare one (products with set component ∅ collapse to `Zero`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FamilyMember {
    Inductive(InductiveSet),
    Empty,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("a family must contain at least one set")]
    NoSets,
    #[error(
        "not ω-closed: for a={a}, b={b}, n={n} the bound max(a, b-n) = {missing} is not in the \
         family (the lower bounds of an ω-closed family form a contiguous interval)"
    )]
    NotOmegaClosed { a: Nat, b: Nat, n: Nat, missing: Nat },
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element {element} does not belong to the monoid over {{{family}}}")]
    ElementNotInFamily { element: Element, family: OmegaClosedFamily },
}

/// A validated ω-closed family: a strictly increasing list of lower bounds,
/// plus a flag for the empty set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OmegaClosedFamily {
    lower_bounds: Vec<Nat>,
    contains_empty: bool,
}

impl OmegaClosedFamily {
    /// Validate a list of lower bounds (order and duplicates are tolerated)
    /// and build the family. Walks the closure condition directly and returns
    /// the first `(a, b, n)` violation in ascending `(a, b, n)` order.
    pub fn new(lower_bounds: &[Nat], contains_empty: bool) -> Result<Self, FamilyError> {
        if lower_bounds.is_empty() {
            return Err(FamilyError::NoSets);
        }
        let mut bounds = lower_bounds.to_vec();
        bounds.sort_unstable();
        bounds.dedup();
        let max = *bounds.last().expect("nonempty");
        for &a in &bounds {
            for &b in &bounds {
                for n in 0..=max {
                    let missing = (a as i64).max(b as i64 - n as i64) as Nat;
                    if bounds.binary_search(&missing).is_err() {
                        return Err(FamilyError::NotOmegaClosed { a, b, n, missing });
                    }
                }
            }
        }
        Ok(OmegaClosedFamily {
            lower_bounds: bounds,
            contains_empty,
        })
    }

    /// The three-set family {[0), [1), [2)}.
    pub fn f3() -> Self {
        OmegaClosedFamily::new(&[0, 1, 2], false).expect("contiguous")
    }

    /// The two-set family {[0), [1)}.
    pub fn f2() -> Self {
        OmegaClosedFamily::new(&[0, 1], false).expect("contiguous")
    }

    pub fn lower_bounds(&self) -> &[Nat] {
        &self.lower_bounds
    }

    pub fn contains_empty(&self) -> bool {
        self.contains_empty
    }

    /// Number of inductive sets (the empty set, if declared, not counted).
    pub fn level_count(&self) -> usize {
        self.lower_bounds.len()
    }

    pub fn min_bound(&self) -> Nat {
        self.lower_bounds[0]
    }

    pub fn max_bound(&self) -> Nat {
        *self.lower_bounds.last().expect("nonempty")
    }

    /// The monoid identity `(0, 0, [min))`.
    pub fn identity(&self) -> Element {
        Element::triple(0, 0, self.min_bound())
    }

    pub fn contains(&self, member: FamilyMember) -> bool {
        match member {
            FamilyMember::Empty => self.contains_empty,
            FamilyMember::Inductive(set) => {
                self.lower_bounds.binary_search(&set.lower_bound()).is_ok()
            }
        }
    }

    pub fn contains_element(&self, x: Element) -> bool {
        match x {
            Element::Zero => self.contains_empty,
            Element::Triple { set, .. } => self.contains(FamilyMember::Inductive(set)),
        }
    }

    pub fn members(&self) -> impl Iterator<Item = FamilyMember> + '_ {
        self.lower_bounds
            .iter()
            .map(|&a| FamilyMember::Inductive(InductiveSet::new(a)))
            .chain(self.contains_empty.then_some(FamilyMember::Empty))
    }

    /// Is every set of `other` also a set of `self`?
    pub fn is_superset_of(&self, other: &OmegaClosedFamily) -> bool {
        other.members().all(|m| self.contains(m))
    }

    /// Shift all lower bounds down so the least becomes 0. Returns the
    /// normalized family and the shift; `(i,j,[a)) ↦ (i,j,[a-shift))` is an
    /// isomorphism onto the normalized monoid.
    pub fn normalized(&self) -> (OmegaClosedFamily, Nat) {
        let shift = self.min_bound();
        let bounds: Vec<Nat> = self.lower_bounds.iter().map(|&a| a - shift).collect();
        (
            OmegaClosedFamily {
                lower_bounds: bounds,
                contains_empty: self.contains_empty,
            },
            shift,
        )
    }

    pub fn is_normalized(&self) -> bool {
        self.min_bound() == 0
    }

    /// Every element with both coordinates ≤ n, in canonical order: `Zero`
    /// first when the family declares the empty set, then triples
    /// lexicographically by `(i, j, lower bound)`.
    pub fn elements_up_to(&self, n: Nat) -> Vec<Element> {
        let mut out =
            Vec::with_capacity(self.lower_bounds.len() * ((n + 1) * (n + 1)) as usize + 1);
        if self.contains_empty {
            out.push(Element::Zero);
        }
        for i in 0..=n {
            for j in 0..=n {
                for &a in &self.lower_bounds {
                    out.push(Element::triple(i, j, a));
                }
            }
        }
        out
    }

    fn require_member(&self, x: Element) -> Result<(), AlgebraError> {
        if self.contains_element(x) {
            Ok(())
        } else {
            Err(AlgebraError::ElementNotInFamily {
                element: x,
                family: self.clone(),
            })
        }
    }

    /// Product of two members of this monoid. Rejects operands whose set
    /// component is not in the family; the result is then automatically a
    /// member again by ω-closure.
    pub fn multiply(&self, x: Element, y: Element) -> Result<Element, AlgebraError> {
        self.require_member(x)?;
        self.require_member(y)?;
        let product = x.multiply(y);
        debug_assert!(self.contains_element(product));
        Ok(product)
    }

    /// `x ≼ y` in the natural partial order, with membership validation.
    pub fn natural_leq(&self, x: Element, y: Element) -> Result<bool, AlgebraError> {
        self.require_member(x)?;
        self.require_member(y)?;
        Ok(x.natural_leq(y))
    }
}

impl fmt::Display for OmegaClosedFamily {
    /// The CLI text form: comma-separated bounds, with a trailing `,empty`
    /// when the empty set is a member. Round-trips through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bounds: Vec<String> = self.lower_bounds.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", bounds.join(","))?;
        if self.contains_empty {
            write!(f, ",empty")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn accepts_contiguous_families() {
        for bounds in [&[0u64, 1, 2][..], &[0], &[0, 1], &[1, 2], &[3]] {
            assert!(OmegaClosedFamily::new(bounds, false).is_ok(), "{bounds:?}");
        }
    }

    #[test]
    fn rejects_gapped_family_with_first_witness() {
        assert_eq!(
            OmegaClosedFamily::new(&[0, 2], false),
            Err(FamilyError::NotOmegaClosed { a: 0, b: 2, n: 1, missing: 1 })
        );
        assert_eq!(OmegaClosedFamily::new(&[], false), Err(FamilyError::NoSets));
    }

    #[test]
    fn input_order_and_duplicates_are_tolerated() {
        let fam = OmegaClosedFamily::new(&[2, 0, 1, 1], false).unwrap();
        assert_eq!(fam.lower_bounds(), &[0, 1, 2]);
    }

    #[test]
    fn normalization_shifts_to_zero() {
        let (norm, shift) = OmegaClosedFamily::new(&[1, 2], false).unwrap().normalized();
        assert_eq!(norm.lower_bounds(), &[0, 1]);
        assert_eq!(shift, 1);

        let (norm, shift) = OmegaClosedFamily::new(&[3], false).unwrap().normalized();
        assert_eq!(norm.lower_bounds(), &[0]);
        assert_eq!(shift, 3);
    }

    #[test]
    fn window_enumeration_counts_and_order() {
        let f3 = OmegaClosedFamily::f3();
        assert_eq!(
            f3.elements_up_to(0),
            vec![Element::triple(0, 0, 0), Element::triple(0, 0, 1), Element::triple(0, 0, 2)]
        );
        assert_eq!(f3.elements_up_to(1).len(), 12);
        let singleton = OmegaClosedFamily::new(&[0], false).unwrap();
        assert_eq!(singleton.elements_up_to(2).len(), 9);

        // canonical order is sorted and duplicate-free
        let window = f3.elements_up_to(4);
        let mut sorted = window.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(window, sorted);
    }

    #[test]
    fn zero_enumerates_first_for_families_with_empty() {
        let fam = OmegaClosedFamily::new(&[0], true).unwrap();
        let window = fam.elements_up_to(1);
        assert_eq!(window[0], Element::Zero);
        assert_eq!(window.len(), 5);
        // Zero is absorbing and a valid member here
        assert_eq!(fam.multiply(Element::Zero, Element::triple(1, 0, 0)).unwrap(), Element::Zero);
    }

    #[test]
    fn multiplication_validates_membership() {
        let f2 = OmegaClosedFamily::f2();
        assert!(f2.multiply(Element::triple(0, 0, 2), Element::triple(0, 0, 0)).is_err());
        assert!(f2.multiply(Element::Zero, Element::triple(0, 0, 0)).is_err());
        // the right factor's bound arrives shifted down by j1 - i2 = 1
        assert_eq!(
            f2.multiply(Element::triple(1, 1, 0), Element::triple(0, 0, 1)).unwrap(),
            Element::triple(1, 1, 0)
        );
    }

    #[test]
    fn products_of_members_never_reach_zero_without_empty() {
        let f3 = OmegaClosedFamily::f3();
        for x in f3.elements_up_to(4) {
            for y in f3.elements_up_to(4) {
                let product = x.multiply(y);
                assert!(!product.is_zero());
                assert!(f3.contains_element(product));
            }
        }
    }

    #[test]
    fn identity_is_two_sided() {
        let fam = OmegaClosedFamily::new(&[1, 2], false).unwrap();
        let e = fam.identity();
        assert_eq!(e, Element::triple(0, 0, 1));
        for x in fam.elements_up_to(5) {
            assert_eq!(e.multiply(x), x);
            assert_eq!(x.multiply(e), x);
        }
    }

    proptest! {
        /// ω-closed ⟺ the bounds are a contiguous interval (independent oracle
        /// for the definitional validator).
        #[test]
        fn validity_matches_contiguity(bounds in prop::collection::btree_set(0..12u64, 1..6)) {
            let bounds: Vec<Nat> = bounds.into_iter().collect();
            let contiguous = bounds.windows(2).all(|w| w[1] == w[0] + 1);
            prop_assert_eq!(OmegaClosedFamily::new(&bounds, false).is_ok(), contiguous);
        }

        /// The set component of a product of members is again a member.
        #[test]
        fn closure_under_products(lo in 0..4u64, len in 1..4u64, i1 in 0..6u64, j1 in 0..6u64, da in 0..4usize, i2 in 0..6u64, j2 in 0..6u64, db in 0..4usize) {
            let bounds: Vec<Nat> = (lo..lo + len).collect();
            let fam = OmegaClosedFamily::new(&bounds, false).unwrap();
            let a = bounds[da % bounds.len()];
            let b = bounds[db % bounds.len()];
            let product = Element::triple(i1, j1, a).multiply(Element::triple(i2, j2, b));
            prop_assert!(fam.contains_element(product));
        }
    }
}
