//! Elements of the bicyclic monoid and of its extension over families of
//! inductive subsets of ω.
//!
//! The base object is ω×ω with the bicyclic product: `(i1,j1)·(i2,j2)` cancels
//! the middle pair `j1` against `i2` and keeps the surplus on the side that
//! had more. The extension attaches an inductive subset of ω to each pair;
//! products shift and intersect the set components. An inductive subset is
//! fully described by its least element, so sets are stored as a single lower
//! bound and every set operation used here is O(1) arithmetic.
//!
//! A distinguished [`Element::Zero`] class absorbs every product whose set
//! component would come out empty. For families consisting of nonempty
//! inductive sets this never happens (the intersection of two inductive sets
//! is again nonempty), but the representation keeps the class so that families
//! declaring an empty member work uniformly.

use std::fmt;

/// An element of ω used as a coordinate or a set lower bound.
pub type Nat = u64;

/// The inductive subset `[a) = {x ∈ ω : x ≥ a}`, stored as its lower bound.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct InductiveSet(Nat);

impl InductiveSet {
    pub fn new(lower_bound: Nat) -> Self {
        InductiveSet(lower_bound)
    }

    pub fn lower_bound(self) -> Nat {
        self.0
    }

    pub fn contains(self, x: Nat) -> bool {
        x >= self.0
    }
}

impl fmt::Display for InductiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{})", self.0)
    }
}

/// An element of the extended monoid: either a triple `(i, j, [a))` or the
/// absorbing `Zero` class.
///
/// The derived ordering (`Zero` first, then lexicographic on `(i, j, a)`) is
/// the canonical enumeration order used by every window routine, so reports
/// and witnesses are deterministic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Element {
    Zero,
    Triple { i: Nat, j: Nat, set: InductiveSet },
}

impl Element {
    pub fn triple(i: Nat, j: Nat, lower_bound: Nat) -> Self {
        Element::Triple {
            i,
            j,
            set: InductiveSet::new(lower_bound),
        }
    }

    pub fn zero() -> Self {
        Element::Zero
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Element::Zero)
    }

    /// The set component, or `None` for `Zero`.
    pub fn set(self) -> Option<InductiveSet> {
        match self {
            Element::Zero => None,
            Element::Triple { set, .. } => Some(set),
        }
    }

    /// Product in the extended monoid.
    ///
    /// The pair part follows the bicyclic rule; the set part is the
    /// intersection of the left set shifted by `j1 - i2` with the right set
    /// (equivalently, of the left set with the right set shifted the other
    /// way). On lower bounds the shift-and-intersect collapses to a single
    /// signed max, clamped at the other bound, which is never negative. The
    /// two branches agree when `j1 == i2`. `Zero` absorbs.
    pub fn multiply(self, other: Element) -> Element {
        let (Element::Triple { i: i1, j: j1, set: f1 }, Element::Triple { i: i2, j: j2, set: f2 }) =
            (self, other)
        else {
            return Element::Zero;
        };
        let a = f1.lower_bound() as i64;
        let b = f2.lower_bound() as i64;
        if j1 <= i2 {
            // (j1 - i2 + [a)) ∩ [b) = [max(b, a + j1 - i2))
            let bound = b.max(a + j1 as i64 - i2 as i64) as Nat;
            Element::triple(i1 + (i2 - j1), j2, bound)
        } else {
            // [a) ∩ (i2 - j1 + [b)) = [max(a, b + i2 - j1))
            let bound = a.max(b + i2 as i64 - j1 as i64) as Nat;
            Element::triple(i1, (j1 - i2) + j2, bound)
        }
    }

    /// The inverse in the sense of inverse semigroups: swap the coordinates,
    /// keep the set. Satisfies `x·x⁻¹·x = x` and `x⁻¹·x·x⁻¹ = x⁻¹`.
    pub fn invert(self) -> Element {
        match self {
            Element::Zero => Element::Zero,
            Element::Triple { i, j, set } => Element::Triple { i: j, j: i, set },
        }
    }

    /// Idempotents are exactly the diagonal triples and `Zero`; equivalent to
    /// `self.multiply(self) == self` (cross-checked in tests).
    pub fn is_idempotent(self) -> bool {
        match self {
            Element::Zero => true,
            Element::Triple { i, j, .. } => i == j,
        }
    }

    /// The natural partial order of inverse semigroups, in its definitional
    /// form: `x ≼ y` iff `x = y·(x⁻¹·x)`.
    pub fn natural_leq(self, other: Element) -> bool {
        self == other.multiply(self.invert().multiply(self))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Zero => write!(f, "zero"),
            Element::Triple { i, j, set } => write!(f, "({},{},{})", i, j, set.lower_bound()),
        }
    }
}

/// An element `q^k p^l` of the plain bicyclic monoid, as the pair `(k, l)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BicyclicElement {
    pub k: Nat,
    pub l: Nat,
}

impl BicyclicElement {
    pub fn new(k: Nat, l: Nat) -> Self {
        BicyclicElement { k, l }
    }

    /// Bicyclic product: cancel `min(l1, k2)` of the middle exponents.
    pub fn multiply(self, other: BicyclicElement) -> BicyclicElement {
        let cancelled = self.l.min(other.k);
        BicyclicElement {
            k: self.k + other.k - cancelled,
            l: self.l + other.l - cancelled,
        }
    }

    /// Embed into the extended monoid at a fixed set level: `(k,l) ↦ (k,l,[a))`.
    /// For each level this is an injective homomorphism onto `B_ω^{[a)}`.
    pub fn embed_at(self, set: InductiveSet) -> Element {
        Element::triple(self.k, self.l, set.lower_bound())
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid symbol {symbol:?} at position {position}: words use only 'p' and 'q'")]
    InvalidSymbol { symbol: char, position: usize },
}

/// Reduce a word over `{p, q}` to its normal form `q^k p^l` by repeatedly
/// deleting `pq` factors (the defining relation `pq = 1`), and return the
/// exponent pair.
///
/// This is a literal string rewriter, independent of the pair arithmetic in
/// [`BicyclicElement::multiply`]; tests check the two routes agree.
pub fn normalize_bicyclic_word(word: &str) -> Result<BicyclicElement, WordError> {
    let mut symbols = Vec::with_capacity(word.len());
    for (position, symbol) in word.chars().enumerate() {
        match symbol {
            'p' | 'q' => symbols.push(symbol),
            _ => return Err(WordError::InvalidSymbol { symbol, position }),
        }
    }
    while let Some(at) = symbols.windows(2).position(|w| w == ['p', 'q']) {
        symbols.drain(at..at + 2);
    }
    // A word with no `pq` factor has every q before every p.
    let k = symbols.iter().take_while(|&&c| c == 'q').count();
    debug_assert!(symbols[k..].iter().all(|&c| c == 'p'));
    Ok(BicyclicElement::new(k as Nat, (symbols.len() - k) as Nat))
}
