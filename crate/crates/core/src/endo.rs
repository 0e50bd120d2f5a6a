//! Endomorphisms of the extended monoid.
//!
//! Two representations coexist. The named families are closed-form maps:
//!
//! * `alpha_bracket:k` on the three-set family {[0),[1),[2)} scales both
//!   coordinates by k on levels [0) and [1), and sends `(i,j,[2))` to
//!   `(k(i+1)-1, k(j+1)-1, [2))`.
//! * `alpha:k,p` on the two-set family {[0),[1)} scales by k on level [0)
//!   and sends `(i,j,[1))` to `(p+ki, p+kj, [1))`, for `0 ≤ p ≤ k-1`.
//! * `beta:k,p` on the two-set family is like `alpha:k,p` except the image
//!   of level [1) lands on level [0), for `k ≥ 2`, `1 ≤ p ≤ k-1`.
//!
//! The general representation is a [`GeneratorTable`]: the monoid over a
//! family with least bound m is generated by `gPlus = (1,0,[m))`,
//! `gMinus = (0,1,[m))` and the idempotents `(0,0,[a))`, because every triple
//! factors as `gPlus^i · (0,0,[a)) · gMinus^j`. A table records one image per
//! generator and is applied by multiplying the images along that
//! factorization, so a table describes the unique multiplicative extension of
//! its generator images — whether or not that extension actually is a
//! homomorphism is exactly what the window checks decide.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Element, Nat};
use crate::family::OmegaClosedFamily;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum EndoError {
    #[error("invalid endomorphism parameters: {reason}")]
    InvalidSpec { reason: String },
    #[error("element {element} lies outside the domain family {{{family}}}")]
    OutsideDomain { element: Element, family: OmegaClosedFamily },
    #[error("family mismatch: {{{left}}} vs {{{right}}}")]
    FamilyMismatch { left: OmegaClosedFamily, right: OmegaClosedFamily },
    #[error(
        "restriction is not closed: generator {generator} maps to {image}, which lies outside \
         the subfamily"
    )]
    NotClosedUnderRestriction { generator: Element, image: Element },
}

/// The generating set of the monoid over a family with least bound m.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generators {
    pub g_plus: Element,
    pub g_minus: Element,
    /// `(a, (0,0,[a)))` for every lower bound a of the family, ascending.
    pub idempotents: Vec<(Nat, Element)>,
}

impl Generators {
    pub fn of(family: &OmegaClosedFamily) -> Self {
        let m = family.min_bound();
        Generators {
            g_plus: Element::triple(1, 0, m),
            g_minus: Element::triple(0, 1, m),
            idempotents: family
                .lower_bounds()
                .iter()
                .map(|&a| (a, Element::triple(0, 0, a)))
                .collect(),
        }
    }
}

/// Images of the generators, defining a map by multiplicative extension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneratorTable {
    family: OmegaClosedFamily,
    img_plus: Element,
    img_minus: Element,
    img_e: BTreeMap<Nat, Element>,
}

impl GeneratorTable {
    /// Build a table over `family`. Requires exactly one idempotent image per
    /// lower bound, and every image must be a member of the family.
    pub fn new(
        family: OmegaClosedFamily,
        img_plus: Element,
        img_minus: Element,
        img_e: BTreeMap<Nat, Element>,
    ) -> Result<Self, EndoError> {
        let keys: Vec<Nat> = img_e.keys().copied().collect();
        if keys != family.lower_bounds() {
            return Err(EndoError::InvalidSpec {
                reason: format!(
                    "idempotent images must cover exactly the bounds {}, got {:?}",
                    family, keys
                ),
            });
        }
        for &image in [img_plus, img_minus].iter().chain(img_e.values()) {
            if !family.contains_element(image) {
                return Err(EndoError::OutsideDomain { element: image, family });
            }
        }
        Ok(GeneratorTable { family, img_plus, img_minus, img_e })
    }

    pub fn family(&self) -> &OmegaClosedFamily {
        &self.family
    }

    pub fn img_plus(&self) -> Element {
        self.img_plus
    }

    pub fn img_minus(&self) -> Element {
        self.img_minus
    }

    pub fn img_e(&self) -> &BTreeMap<Nat, Element> {
        &self.img_e
    }

    /// Image of `(i,j,[a))` along the factorization
    /// `gPlus^i · (0,0,[a)) · gMinus^j`.
    fn apply(&self, i: Nat, j: Nat, a: Nat) -> Element {
        let mut acc = self.img_e[&a];
        for _ in 0..i {
            acc = self.img_plus.multiply(acc);
        }
        for _ in 0..j {
            acc = acc.multiply(self.img_minus);
        }
        acc
    }
}

/// A monoid-endomorphism candidate: one of the closed-form named families,
/// or a generator-image table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EndoSpec {
    AlphaBracket { k: Nat },
    Alpha { k: Nat, p: Nat },
    Beta { k: Nat, p: Nat },
    Table(GeneratorTable),
}

impl EndoSpec {
    pub fn alpha_bracket(k: Nat) -> Result<Self, EndoError> {
        if k == 0 {
            return Err(EndoError::InvalidSpec {
                reason: "alpha_bracket requires k ≥ 1".into(),
            });
        }
        Ok(EndoSpec::AlphaBracket { k })
    }

    pub fn alpha(k: Nat, p: Nat) -> Result<Self, EndoError> {
        if k == 0 || p > k - 1 {
            return Err(EndoError::InvalidSpec {
                reason: format!("alpha requires k ≥ 1 and 0 ≤ p ≤ k-1, got k={k}, p={p}"),
            });
        }
        Ok(EndoSpec::Alpha { k, p })
    }

    pub fn beta(k: Nat, p: Nat) -> Result<Self, EndoError> {
        if k < 2 || p == 0 || p > k - 1 {
            return Err(EndoError::InvalidSpec {
                reason: format!("beta requires k ≥ 2 and 1 ≤ p ≤ k-1, got k={k}, p={p}"),
            });
        }
        Ok(EndoSpec::Beta { k, p })
    }

    pub fn table(table: GeneratorTable) -> Self {
        EndoSpec::Table(table)
    }

    /// The domain (= codomain) family.
    pub fn family(&self) -> OmegaClosedFamily {
        match self {
            EndoSpec::AlphaBracket { .. } => OmegaClosedFamily::f3(),
            EndoSpec::Alpha { .. } | EndoSpec::Beta { .. } => OmegaClosedFamily::f2(),
            EndoSpec::Table(t) => t.family().clone(),
        }
    }

    /// Apply to a member of the domain family.
    pub fn apply(&self, x: Element) -> Result<Element, EndoError> {
        let family = self.family();
        if !family.contains_element(x) {
            return Err(EndoError::OutsideDomain { element: x, family });
        }
        Ok(self.apply_unchecked(x))
    }

    /// Apply without the membership check; callers guarantee `x` is a member
    /// of the domain family.
    pub(crate) fn apply_unchecked(&self, x: Element) -> Element {
        let Element::Triple { i, j, set } = x else {
            return Element::Zero;
        };
        let a = set.lower_bound();
        let scaled = |k: Nat, offset: Nat, out: Nat| {
            let si = offset + k.checked_mul(i).expect("coordinate overflow");
            let sj = offset + k.checked_mul(j).expect("coordinate overflow");
            Element::triple(si, sj, out)
        };
        match *self {
            EndoSpec::AlphaBracket { k } => match a {
                0 | 1 => scaled(k, 0, a),
                // k(i+1)-1 = k-1 + ki
                _ => scaled(k, k - 1, 2),
            },
            EndoSpec::Alpha { k, p } => match a {
                0 => scaled(k, 0, 0),
                _ => scaled(k, p, 1),
            },
            EndoSpec::Beta { k, p } => match a {
                0 => scaled(k, 0, 0),
                _ => scaled(k, p, 0),
            },
            EndoSpec::Table(ref t) => t.apply(i, j, a),
        }
    }

    fn is_identity_form(&self) -> bool {
        matches!(self, EndoSpec::AlphaBracket { k: 1 } | EndoSpec::Alpha { k: 1, p: 0 })
    }

    /// Compose: apply `first`, then `second`. Both must live over the same
    /// family. Returns the closed form when one exists (products of named
    /// specs, identity neutral), otherwise a generator table obtained by
    /// pushing `first`'s generator images through `second`.
    pub fn compose(first: &EndoSpec, second: &EndoSpec) -> Result<EndoSpec, EndoError> {
        let family = first.family();
        if family != second.family() {
            return Err(EndoError::FamilyMismatch { left: family, right: second.family() });
        }
        if first.is_identity_form() {
            return Ok(second.clone());
        }
        if second.is_identity_form() {
            return Ok(first.clone());
        }
        let mul = |k1: Nat, k2: Nat| k1.checked_mul(k2).expect("scale overflow");
        match (first, second) {
            (&EndoSpec::AlphaBracket { k: k1 }, &EndoSpec::AlphaBracket { k: k2 }) => {
                EndoSpec::alpha_bracket(mul(k1, k2))
            }
            // On level [1): first gives p1 + k1·i, landing on the level named
            // by its kind; second then acts by its rule for that level.
            (&EndoSpec::Alpha { k: k1, p: p1 }, &EndoSpec::Alpha { k: k2, p: p2 }) => {
                EndoSpec::alpha(mul(k1, k2), p2 + mul(k2, p1))
            }
            (&EndoSpec::Alpha { k: k1, p: p1 }, &EndoSpec::Beta { k: k2, p: p2 }) => {
                EndoSpec::beta(mul(k1, k2), p2 + mul(k2, p1))
            }
            (&EndoSpec::Beta { k: k1, p: p1 }, &EndoSpec::Alpha { k: k2, .. })
            | (&EndoSpec::Beta { k: k1, p: p1 }, &EndoSpec::Beta { k: k2, .. }) => {
                EndoSpec::beta(mul(k1, k2), mul(k2, p1))
            }
            _ => {
                let gens = Generators::of(&family);
                let image = |g: Element| second.apply_unchecked(first.apply_unchecked(g));
                let img_e = gens
                    .idempotents
                    .iter()
                    .map(|&(a, e)| (a, image(e)))
                    .collect();
                Ok(EndoSpec::Table(GeneratorTable::new(
                    family.clone(),
                    image(gens.g_plus),
                    image(gens.g_minus),
                    img_e,
                )?))
            }
        }
    }

    /// Restrict to a subfamily, as a generator table over `sub`. Errors if
    /// some generator of the submonoid maps outside it — the restriction is
    /// then not an endomorphism of the submonoid, and that outcome is
    /// reported rather than repaired.
    pub fn restrict_to(&self, sub: &OmegaClosedFamily) -> Result<EndoSpec, EndoError> {
        let family = self.family();
        if !family.is_superset_of(sub) {
            return Err(EndoError::FamilyMismatch { left: family, right: sub.clone() });
        }
        let gens = Generators::of(sub);
        let mut images = Vec::new();
        for generator in [gens.g_plus, gens.g_minus]
            .into_iter()
            .chain(gens.idempotents.iter().map(|&(_, e)| e))
        {
            let image = self.apply_unchecked(generator);
            if !sub.contains_element(image) {
                return Err(EndoError::NotClosedUnderRestriction { generator, image });
            }
            images.push(image);
        }
        let img_e = gens
            .idempotents
            .iter()
            .map(|&(a, _)| a)
            .zip(images[2..].iter().copied())
            .collect();
        Ok(EndoSpec::Table(GeneratorTable::new(
            sub.clone(),
            images[0],
            images[1],
            img_e,
        )?))
    }

    /// Does the map send the monoid identity to itself?
    pub fn preserves_identity(&self) -> bool {
        let identity = self.family().identity();
        self.apply_unchecked(identity) == identity
    }

    /// Check `φ(x·y) = φ(x)·φ(y)` for all window pairs, in lexicographic
    /// order. `None` means the law holds on the window; otherwise the first
    /// violating pair is returned.
    pub fn check_homomorphism_on_window(&self, n: Nat) -> Option<HomomorphismWitness> {
        let family = self.family();
        let window = family.elements_up_to(n);
        let images: Vec<Element> = window.iter().map(|&x| self.apply_unchecked(x)).collect();
        for (xi, &x) in window.iter().enumerate() {
            for (yi, &y) in window.iter().enumerate() {
                let product_image = self.apply_unchecked(x.multiply(y));
                let image_product = images[xi].multiply(images[yi]);
                if product_image != image_product {
                    return Some(HomomorphismWitness { x, y, product_image, image_product });
                }
            }
        }
        None
    }

    /// Check injectivity on the window; `None` means no collision, otherwise
    /// the first colliding pair in lexicographic order.
    pub fn check_injective_on_window(&self, n: Nat) -> Option<InjectivityWitness> {
        let family = self.family();
        let mut seen: HashMap<Element, Element> = HashMap::new();
        for x in family.elements_up_to(n) {
            let image = self.apply_unchecked(x);
            if let Some(&first) = seen.get(&image) {
                return Some(InjectivityWitness { first, second: x, image });
            }
            seen.insert(image, x);
        }
        None
    }

    /// All window elements fixed by the map, in canonical order.
    pub fn fixed_points_in_window(&self, n: Nat) -> Vec<Element> {
        self.family()
            .elements_up_to(n)
            .into_iter()
            .filter(|&x| self.apply_unchecked(x) == x)
            .collect()
    }
}

/// First window pair violating `φ(x·y) = φ(x)·φ(y)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HomomorphismWitness {
    pub x: Element,
    pub y: Element,
    /// `φ(x·y)`
    pub product_image: Element,
    /// `φ(x)·φ(y)`
    pub image_product: Element,
}

impl fmt::Display for HomomorphismWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={}, y={}: image of x*y is {} but image(x)*image(y) is {}",
            self.x, self.y, self.product_image, self.image_product
        )
    }
}

/// First window collision of a non-injective map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InjectivityWitness {
    pub first: Element,
    pub second: Element,
    pub image: Element,
}

impl fmt::Display for InjectivityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} and {} share the image {}", self.first, self.second, self.image)
    }
}
