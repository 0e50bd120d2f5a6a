//! Bounded brute-force classification of injective monoid endomorphisms.
//!
//! A candidate endomorphism is a generator table: images for `gPlus`,
//! `gMinus`, and `(0,0,[a))` for each non-minimal bound a (the image of the
//! identity is forced to itself, since a monoid endomorphism fixes the
//! identity). The search enumerates all tables whose images have coordinates
//! within `image_bound`, prunes with necessary conditions extracted from the
//! structure of the monoid, and verifies every survivor on a finite window:
//! identity preservation, the homomorphism law on all window pairs, and
//! injectivity on the window. Survivors are matched against the closed-form
//! named families by reading the scale from the image of `gPlus` and the
//! offset from the image of `(0,0,[1))`, then confirming pointwise on the
//! window.
//!
//! Partitions of the search space by the image of `gPlus` are independent and
//! run in parallel; partition results are merged in canonical order, so two
//! runs with the same bounds produce identical reports (wall-clock time
//! aside).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algebra::{Element, Nat};
use crate::endo::{EndoSpec, GeneratorTable};
use crate::family::OmegaClosedFamily;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("bounds too small: image_bound must be ≥ 1 and window_n ≥ 2, got {image_bound}/{window_n}")]
    BoundsTooSmall { image_bound: Nat, window_n: Nat },
    #[error("classification supports families of 1 to 3 sets, got {levels}")]
    UnsupportedFamily { levels: usize },
}

/// Box for the search: candidate generator images have coordinates within
/// `image_bound`; all checks run on the window of elements with coordinates
/// within `window_n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchBounds {
    pub image_bound: Nat,
    pub window_n: Nat,
}

impl SearchBounds {
    /// `window_n` must be at least 2: smaller windows cannot exercise the
    /// carry produced when a generator power overruns an idempotent level.
    pub fn new(image_bound: Nat, window_n: Nat) -> Result<Self, ClassifyError> {
        if image_bound < 1 || window_n < 2 {
            return Err(ClassifyError::BoundsTooSmall { image_bound, window_n });
        }
        Ok(SearchBounds { image_bound, window_n })
    }

    /// Default window: the image box plus a margin of two, enough for every
    /// product of window generators used by the checks.
    pub fn for_image_bound(image_bound: Nat) -> Result<Self, ClassifyError> {
        SearchBounds::new(image_bound, image_bound + 2)
    }
}

/// Necessary conditions applied before the window checks. Counters report
/// how many full candidate tuples each rule removed; a tuple is attributed
/// to the first rule it fails, in the order below.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum PruneRule {
    /// The identity's image is pinned to the identity (enforced structurally
    /// by not enumerating it, so this counter stays 0).
    IdentityFixed,
    /// `gMinus · gPlus` is the identity, so the images must multiply to it.
    BicyclicRelation,
    /// Idempotent generators must have idempotent images.
    IdempotentImages,
    /// The chain `(0,0,[a))` descending in the natural order must be
    /// preserved by the images.
    OrderChain,
    /// Distinct idempotent generators must keep distinct images.
    DistinctIdempotents,
}

impl PruneRule {
    pub const ALL: [PruneRule; 5] = [
        PruneRule::IdentityFixed,
        PruneRule::BicyclicRelation,
        PruneRule::IdempotentImages,
        PruneRule::OrderChain,
        PruneRule::DistinctIdempotents,
    ];

    /// Short stable code used as the JSON report key.
    pub fn code(self) -> &'static str {
        match self {
            PruneRule::IdentityFixed => "P1",
            PruneRule::BicyclicRelation => "P2",
            PruneRule::IdempotentImages => "P3",
            PruneRule::OrderChain => "P4",
            PruneRule::DistinctIdempotents => "P5",
        }
    }
}

impl serde::Serialize for PruneRule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

/// One of the closed-form endomorphism families a survivor can match:
/// the three-set `alpha_bracket:k`, the two-set `alpha:k,p` / `beta:k,p`,
/// or plain coordinate scaling on a one-set monoid.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(tag = "kind")]
pub enum NamedEndo {
    #[serde(rename = "alpha_bracket")]
    AlphaBracket { k: Nat },
    #[serde(rename = "alpha")]
    Alpha { k: Nat, p: Nat },
    #[serde(rename = "beta")]
    Beta { k: Nat, p: Nat },
    #[serde(rename = "scaling")]
    Scaling { k: Nat },
}

impl NamedEndo {
    /// The closed-form image of `x`, used for pointwise confirmation.
    fn apply(self, x: Element) -> Element {
        let Element::Triple { i, j, set } = x else { return Element::Zero };
        let a = set.lower_bound();
        match self {
            NamedEndo::AlphaBracket { k } => match a {
                0 | 1 => Element::triple(k * i, k * j, a),
                _ => Element::triple(k * (i + 1) - 1, k * (j + 1) - 1, 2),
            },
            NamedEndo::Alpha { k, p } => match a {
                0 => Element::triple(k * i, k * j, 0),
                _ => Element::triple(p + k * i, p + k * j, 1),
            },
            NamedEndo::Beta { k, p } => match a {
                0 => Element::triple(k * i, k * j, 0),
                _ => Element::triple(p + k * i, p + k * j, 0),
            },
            NamedEndo::Scaling { k } => Element::triple(k * i, k * j, a),
        }
    }

    fn is_valid(self) -> bool {
        match self {
            NamedEndo::AlphaBracket { k } | NamedEndo::Scaling { k } => k >= 1,
            NamedEndo::Alpha { k, p } => k >= 1 && p < k,
            NamedEndo::Beta { k, p } => k >= 2 && (1..=k - 1).contains(&p),
        }
    }
}

impl std::fmt::Display for NamedEndo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NamedEndo::AlphaBracket { k } => write!(f, "alpha_bracket:{k}"),
            NamedEndo::Alpha { k, p } => write!(f, "alpha:{k},{p}"),
            NamedEndo::Beta { k, p } => write!(f, "beta:{k},{p}"),
            NamedEndo::Scaling { k } => write!(f, "scaling:{k}"),
        }
    }
}

/// A search survivor: the generator table that passed every window check,
/// and the named family it coincides with on the window, if any.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Candidate {
    pub spec: GeneratorTable,
    pub matched: Option<NamedEndo>,
}

/// Outcome of one bounded search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationReport {
    pub family: OmegaClosedFamily,
    pub bounds: SearchBounds,
    /// Survivors in canonical (table) order.
    pub candidates: Vec<Candidate>,
    /// Full tuples removed by each rule.
    pub pruned_counts: BTreeMap<PruneRule, u64>,
    pub elapsed: Duration,
}

impl ClassificationReport {
    /// Scales of the alpha_bracket survivors, ascending (for three-set runs).
    pub fn alpha_bracket_scales(&self) -> Vec<Nat> {
        let mut ks: Vec<Nat> = self
            .candidates
            .iter()
            .filter_map(|c| match c.matched {
                Some(NamedEndo::AlphaBracket { k }) => Some(k),
                _ => None,
            })
            .collect();
        ks.sort_unstable();
        ks
    }

    pub fn unmatched(&self) -> Vec<&Candidate> {
        self.candidates.iter().filter(|c| c.matched.is_none()).collect()
    }
}

/// The raw image tuple of one candidate, before any checks.
#[derive(Clone, Debug)]
struct ImageTuple {
    img_plus: Element,
    img_minus: Element,
    /// `(bound, image)` for the non-minimal bounds, ascending.
    img_e: Vec<(Nat, Element)>,
}

impl ImageTuple {
    fn into_table(self, family: &OmegaClosedFamily) -> GeneratorTable {
        let mut img_e: BTreeMap<Nat, Element> = self.img_e.into_iter().collect();
        img_e.insert(family.min_bound(), family.identity());
        GeneratorTable::new(family.clone(), self.img_plus, self.img_minus, img_e)
            .expect("search tuples are well formed")
    }
}

/// First rule in P1..P5 order that rejects a full tuple, if any. `None`
/// means the tuple goes on to the window checks.
fn first_failing_rule(family: &OmegaClosedFamily, tuple: &ImageTuple) -> Option<PruneRule> {
    let identity = family.identity();
    // P1 never fires: the identity's image is not part of the tuple at all.
    if tuple.img_minus.multiply(tuple.img_plus) != identity {
        return Some(PruneRule::BicyclicRelation);
    }
    if tuple.img_e.iter().any(|&(_, image)| !image.is_idempotent()) {
        return Some(PruneRule::IdempotentImages);
    }
    full_tuple_rule(identity, tuple)
}

/// The rules that need the complete tuple: the order chain (P4) and
/// distinctness of idempotent images (P5). Callers guarantee P2 and P3 hold.
fn full_tuple_rule(identity: Element, tuple: &ImageTuple) -> Option<PruneRule> {
    // (0,0,[b)) ≼ (0,0,[a)) for a ≤ b; images must repeat the chain.
    let chain: Vec<Element> = std::iter::once(identity)
        .chain(tuple.img_e.iter().map(|&(_, image)| image))
        .collect();
    if chain.windows(2).any(|w| !w[1].natural_leq(w[0])) {
        return Some(PruneRule::OrderChain);
    }
    for (idx, &(_, image)) in tuple.img_e.iter().enumerate() {
        if image == identity || tuple.img_e[..idx].iter().any(|&(_, other)| other == image) {
            return Some(PruneRule::DistinctIdempotents);
        }
    }
    None
}

/// Does the table satisfy all three window checks?
fn passes_window_checks(spec: &EndoSpec, window_n: Nat) -> bool {
    spec.preserves_identity()
        && spec.check_homomorphism_on_window(window_n).is_none()
        && spec.check_injective_on_window(window_n).is_none()
}

/// Match a surviving table against the named families: read the scale from
/// the image of `gPlus`, the offset and target level from the image of
/// `(0,0,[1))`, then confirm the closed form pointwise on the whole window.
fn match_named(table: &GeneratorTable, window: &[Element]) -> Option<NamedEndo> {
    let family = table.family();
    let Element::Triple { i: k, .. } = table.img_plus() else { return None };
    let named = match family.lower_bounds() {
        [0] => NamedEndo::Scaling { k },
        [0, 1] => {
            let Element::Triple { i: p, set, .. } = table.img_e()[&1] else { return None };
            match set.lower_bound() {
                1 => NamedEndo::Alpha { k, p },
                0 => NamedEndo::Beta { k, p },
                _ => return None,
            }
        }
        [0, 1, 2] => NamedEndo::AlphaBracket { k },
        _ => return None,
    };
    if !named.is_valid() {
        return None;
    }
    let spec = EndoSpec::Table(table.clone());
    window
        .iter()
        .all(|&x| spec.apply_unchecked(x) == named.apply(x))
        .then_some(named)
}

struct PartitionOutcome {
    survivors: Vec<GeneratorTable>,
    pruned: [u64; 5],
}

/// Search one partition: a fixed image of `gPlus`, all images of `gMinus`,
/// and all idempotent-image assignments.
///
/// Pruning is staged so that every counted tuple is attributed to the first
/// rule (in P1..P5 order) that the *full* tuple fails: P2 depends only on the
/// two bicyclic generator images and P3 only on individual idempotent images,
/// so both may cut whole subtrees, while P4 and P5 can be pre-empted by a
/// P3 failure at a later level and therefore only run on complete tuples.
fn search_partition(
    family: &OmegaClosedFamily,
    bounds: SearchBounds,
    images: &[Element],
    var_levels: &[Nat],
    img_plus: Element,
) -> PartitionOutcome {
    let mut outcome = PartitionOutcome { survivors: Vec::new(), pruned: [0; 5] };
    let per_level = images.len() as u64;
    let identity = family.identity();
    let mut tuple = ImageTuple { img_plus, img_minus: Element::Zero, img_e: Vec::new() };
    for &img_minus in images {
        tuple.img_minus = img_minus;
        tuple.img_e.clear();
        if tuple.img_minus.multiply(tuple.img_plus) != identity {
            outcome.pruned[PruneRule::BicyclicRelation as usize] +=
                per_level.pow(var_levels.len() as u32);
            continue;
        }
        assign_levels(family, bounds, images, var_levels, per_level, &mut tuple, &mut outcome);
    }
    outcome
}

/// Recursively assign idempotent images level by level, counting prunes with
/// multiplicative tails so that counters reflect full tuples.
fn assign_levels(
    family: &OmegaClosedFamily,
    bounds: SearchBounds,
    images: &[Element],
    remaining_levels: &[Nat],
    per_level: u64,
    tuple: &mut ImageTuple,
    outcome: &mut PartitionOutcome,
) {
    let Some((&level, rest)) = remaining_levels.split_first() else {
        if let Some(rule) = full_tuple_rule(family.identity(), tuple) {
            outcome.pruned[rule as usize] += 1;
            return;
        }
        let table = tuple.clone().into_table(family);
        let spec = EndoSpec::Table(table.clone());
        if passes_window_checks(&spec, bounds.window_n) {
            outcome.survivors.push(table);
        }
        return;
    };
    let tail = per_level.pow(rest.len() as u32);
    for &image in images {
        if !image.is_idempotent() {
            // Every completion shares this non-idempotent image, and no
            // earlier rule can fire: P2 was already checked above.
            outcome.pruned[PruneRule::IdempotentImages as usize] += tail;
            continue;
        }
        tuple.img_e.push((level, image));
        assign_levels(family, bounds, images, rest, per_level, tuple, outcome);
        tuple.img_e.pop();
    }
}

/// Enumerate every injective monoid endomorphism candidate of the monoid
/// over `family` whose generator images fit in the bounds, and match the
/// survivors against the named families.
pub fn enumerate_monoid_endos(
    family: &OmegaClosedFamily,
    bounds: SearchBounds,
) -> Result<ClassificationReport, ClassifyError> {
    SearchBounds::new(bounds.image_bound, bounds.window_n)?;
    if !(1..=3).contains(&family.level_count()) {
        return Err(ClassifyError::UnsupportedFamily { levels: family.level_count() });
    }
    let start = Instant::now();
    let images = family.elements_up_to(bounds.image_bound);
    let var_levels: Vec<Nat> = family.lower_bounds()[1..].to_vec();

    let outcomes: Vec<PartitionOutcome> = images
        .par_iter()
        .map(|&img_plus| search_partition(family, bounds, &images, &var_levels, img_plus))
        .collect();

    let mut pruned = [0u64; 5];
    let mut survivors: Vec<GeneratorTable> = Vec::new();
    for outcome in outcomes {
        for (total, part) in pruned.iter_mut().zip(outcome.pruned) {
            *total += part;
        }
        survivors.extend(outcome.survivors);
    }
    survivors.sort();

    let window = family.elements_up_to(bounds.window_n);
    let candidates = survivors
        .into_iter()
        .map(|table| {
            let matched = match_named(&table, &window);
            Candidate { spec: table, matched }
        })
        .collect();

    let pruned_counts = PruneRule::ALL.iter().map(|&r| (r, pruned[r as usize])).collect();
    Ok(ClassificationReport {
        family: family.clone(),
        bounds,
        candidates,
        pruned_counts,
        elapsed: start.elapsed(),
    })
}

/// Reference search with no pruning at all: every tuple goes straight to the
/// window checks. Exponentially slower; exists to cross-check that pruning
/// removes only tuples that would have failed anyway.
pub fn enumerate_without_pruning(
    family: &OmegaClosedFamily,
    bounds: SearchBounds,
) -> Result<Vec<GeneratorTable>, ClassifyError> {
    SearchBounds::new(bounds.image_bound, bounds.window_n)?;
    if !(1..=3).contains(&family.level_count()) {
        return Err(ClassifyError::UnsupportedFamily { levels: family.level_count() });
    }
    let images = family.elements_up_to(bounds.image_bound);
    let var_levels: Vec<Nat> = family.lower_bounds()[1..].to_vec();

    let mut survivors: Vec<GeneratorTable> = images
        .par_iter()
        .map(|&img_plus| {
            let mut found = Vec::new();
            let mut tuple =
                ImageTuple { img_plus, img_minus: Element::Zero, img_e: Vec::new() };
            for &img_minus in &images {
                tuple.img_minus = img_minus;
                exhaust_levels(family, bounds, &images, &var_levels, &mut tuple, &mut found);
            }
            found
        })
        .reduce(Vec::new, |mut acc, mut part| {
            acc.append(&mut part);
            acc
        });
    survivors.sort();
    Ok(survivors)
}

fn exhaust_levels(
    family: &OmegaClosedFamily,
    bounds: SearchBounds,
    images: &[Element],
    remaining_levels: &[Nat],
    tuple: &mut ImageTuple,
    found: &mut Vec<GeneratorTable>,
) {
    let Some((&level, rest)) = remaining_levels.split_first() else {
        let table = tuple.clone().into_table(family);
        if passes_window_checks(&EndoSpec::Table(table.clone()), bounds.window_n) {
            found.push(table);
        }
        return;
    };
    for &image in images {
        tuple.img_e.push((level, image));
        exhaust_levels(family, bounds, images, rest, tuple, found);
        tuple.img_e.pop();
    }
}

/// Visit every tuple in the search box along with the first pruning rule it
/// fails (`None` for tuples that reach the window checks). Test support for
/// the pruning-soundness property; only sensible at small bounds.
pub fn for_each_tuple_outcome(
    family: &OmegaClosedFamily,
    bounds: SearchBounds,
    mut visit: impl FnMut(GeneratorTable, Option<PruneRule>),
) -> Result<(), ClassifyError> {
    SearchBounds::new(bounds.image_bound, bounds.window_n)?;
    if !(1..=3).contains(&family.level_count()) {
        return Err(ClassifyError::UnsupportedFamily { levels: family.level_count() });
    }
    let images = family.elements_up_to(bounds.image_bound);
    let var_levels: Vec<Nat> = family.lower_bounds()[1..].to_vec();
    // odometer over the idempotent-image levels
    let mut indices = vec![0usize; var_levels.len()];
    for &img_plus in &images {
        for &img_minus in &images {
            indices.iter_mut().for_each(|ix| *ix = 0);
            loop {
                let img_e: Vec<(Nat, Element)> = var_levels
                    .iter()
                    .zip(&indices)
                    .map(|(&level, &ix)| (level, images[ix]))
                    .collect();
                let tuple = ImageTuple { img_plus, img_minus, img_e };
                let rule = first_failing_rule(family, &tuple);
                visit(tuple.into_table(family), rule);
                // advance the odometer, least-significant level last
                let mut pos = indices.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    indices[pos] += 1;
                    if indices[pos] < images.len() {
                        break;
                    }
                    indices[pos] = 0;
                }
                if indices.iter().all(|&ix| ix == 0) {
                    break;
                }
            }
        }
    }
    Ok(())
}

/// Verification outcome for the three-set classification: the search is run,
/// every survivor must match `alpha_bracket:k`, and every `alpha_bracket:k`
/// whose generator images fit in the box must appear.
#[derive(Clone, Debug)]
pub struct F3Verification {
    pub report: ClassificationReport,
    pub expected_scales: Vec<Nat>,
    pub matched_scales: Vec<Nat>,
    pub pass: bool,
}

pub fn verify_classification_f3(bounds: SearchBounds) -> Result<F3Verification, ClassifyError> {
    let family = OmegaClosedFamily::f3();
    let report = enumerate_monoid_endos(&family, bounds)?;
    // generator images of alpha_bracket:k are (k,0,[0)), (0,k,[0)),
    // (0,0,[1)), (k-1,k-1,[2)); all fit exactly when k ≤ image_bound
    let expected_scales: Vec<Nat> = (1..=bounds.image_bound).collect();
    let matched_scales = report.alpha_bracket_scales();
    let all_matched = report.candidates.iter().all(|c| {
        matches!(c.matched, Some(NamedEndo::AlphaBracket { .. }))
    });
    let pass = all_matched && matched_scales == expected_scales;
    Ok(F3Verification { report, expected_scales, matched_scales, pass })
}

/// The scaling endomorphisms compose like multiplication of their scales:
/// check the closed form symbolically and pointwise for all pairs up to
/// `max_k`, plus distinctness of the maps for distinct scales.
pub fn verify_composition_monoid(max_k: Nat) -> bool {
    let window = OmegaClosedFamily::f3().elements_up_to(8);
    let spec = |k| EndoSpec::alpha_bracket(k).expect("k ≥ 1");
    for k1 in 1..=max_k {
        for k2 in 1..=max_k {
            let composite = match EndoSpec::compose(&spec(k1), &spec(k2)) {
                Ok(c) => c,
                Err(_) => return false,
            };
            if composite != spec(k1 * k2) {
                return false;
            }
            let first = spec(k1);
            let second = spec(k2);
            for &x in &window {
                let stepwise = second.apply_unchecked(first.apply_unchecked(x));
                if composite.apply_unchecked(x) != stepwise {
                    return false;
                }
            }
        }
    }
    // distinct scales give distinct maps: they differ already at (1,0,[0))
    for k1 in 1..=max_k {
        for k2 in k1 + 1..=max_k {
            let probe = Element::triple(1, 0, 0);
            if spec(k1).apply_unchecked(probe) == spec(k2).apply_unchecked(probe) {
                return false;
            }
        }
    }
    true
}

/// Verification outcome for non-extension: every three-set survivor must
/// restrict on {[0),[1)} to `alpha:k,0` — never to an `alpha:k,p` with
/// p ≥ 1 and never to a `beta:k,p`.
#[derive(Clone, Debug)]
pub struct NonExtensionVerification {
    pub report: ClassificationReport,
    /// Per candidate (same order as the report): the named two-set family
    /// its restriction matches, if any.
    pub restriction_matches: Vec<Option<NamedEndo>>,
    pub pass: bool,
}

pub fn verify_non_extension(bounds: SearchBounds) -> Result<NonExtensionVerification, ClassifyError> {
    let family = OmegaClosedFamily::f3();
    let sub = OmegaClosedFamily::f2();
    let window = sub.elements_up_to(bounds.window_n);
    let report = enumerate_monoid_endos(&family, bounds)?;
    let mut restriction_matches = Vec::with_capacity(report.candidates.len());
    let mut pass = true;
    for candidate in &report.candidates {
        let matched = EndoSpec::Table(candidate.spec.clone())
            .restrict_to(&sub)
            .ok()
            .and_then(|restricted| match restricted {
                EndoSpec::Table(table) => match_named(&table, &window),
                _ => None,
            });
        pass &= matches!(matched, Some(NamedEndo::Alpha { p: 0, .. }));
        restriction_matches.push(matched);
    }
    Ok(NonExtensionVerification { report, restriction_matches, pass })
}

/// Fixed-point criterion: the identity fixes everything, while every
/// non-identity `alpha_bracket:k` fixes exactly the two idempotents
/// `(0,0,[0))` and `(0,0,[1))` — in particular fewer than three elements,
/// none of them non-idempotent.
pub fn verify_fixed_point_criterion(max_k: Nat, window_n: Nat) -> bool {
    let identity_fixed = EndoSpec::alpha_bracket(1)
        .expect("k ≥ 1")
        .fixed_points_in_window(window_n);
    if identity_fixed != OmegaClosedFamily::f3().elements_up_to(window_n) {
        return false;
    }
    for k in 2..=max_k {
        let fixed = EndoSpec::alpha_bracket(k).expect("k ≥ 1").fixed_points_in_window(window_n);
        let expected = vec![Element::triple(0, 0, 0), Element::triple(0, 0, 1)];
        if fixed != expected {
            return false;
        }
        if fixed.len() >= 3 || fixed.iter().any(|x| !x.is_idempotent()) {
            return false;
        }
    }
    true
}
