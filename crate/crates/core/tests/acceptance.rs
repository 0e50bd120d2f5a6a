//! Acceptance suite: ten end-to-end checks, each printing one pass/fail
//! line (run with `--nocapture` to see them in passing runs).
//!
//! Everything here is exact integer equality — no tolerances anywhere.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use bomega::classify::enumerate_without_pruning;
use bomega::{
    enumerate_monoid_endos, normalize_bicyclic_word, verify_classification_f3,
    verify_composition_monoid, verify_non_extension, BicyclicElement, Element, EndoSpec,
    FamilyError, NamedEndo, OmegaClosedFamily, SearchBounds,
};

fn criterion<F: FnOnce() + UnwindSafe>(number: u8, name: &str, body: F) {
    let outcome = catch_unwind(body);
    match &outcome {
        Ok(()) => println!("criterion {number:>2} ({name}): pass"),
        Err(_) => println!("criterion {number:>2} ({name}): FAIL"),
    }
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
}

#[test]
fn criterion_01_element_arithmetic_laws() {
    criterion(1, "arithmetic laws on a 147-element window", || {
        let started = Instant::now();
        let f3 = OmegaClosedFamily::f3();
        let window = f3.elements_up_to(6);
        assert_eq!(window.len(), 147);

        // cache all pairwise products once: 147² multiplies
        let products: Vec<Vec<Element>> = window
            .iter()
            .map(|&x| window.iter().map(|&y| x.multiply(y)).collect())
            .collect();

        // associativity over all ~3.17M ordered triples
        for (xi, &x) in window.iter().enumerate() {
            for (yi, &xy) in products[xi].iter().enumerate() {
                for (zi, &z) in window.iter().enumerate() {
                    let left = xy.multiply(z);
                    let right = x.multiply(products[yi][zi]);
                    assert_eq!(left, right, "associativity at triple ({xi},{yi},{zi})");
                }
            }
        }

        let identity = f3.identity();
        for &x in &window {
            // two-sided identity
            assert_eq!(identity.multiply(x), x);
            assert_eq!(x.multiply(identity), x);
            // inverse laws of an inverse monoid
            let inverse = x.invert();
            assert_eq!(x.multiply(inverse).multiply(x), x);
            assert_eq!(inverse.multiply(x).multiply(inverse), inverse);
        }

        // idempotents commute with each other
        let idempotents: Vec<Element> =
            window.iter().copied().filter(|x| x.is_idempotent()).collect();
        for &e in &idempotents {
            for &f in &idempotents {
                assert_eq!(e.multiply(f), f.multiply(e));
            }
        }

        assert!(started.elapsed() < Duration::from_secs(30), "took {:?}", started.elapsed());
    });
}

#[test]
fn criterion_02_scaling_maps_pass_window_checks() {
    criterion(2, "alpha_bracket:k verified on a window for k ≤ 8", || {
        for k in 1..=8 {
            let spec = EndoSpec::alpha_bracket(k).unwrap();
            assert!(spec.preserves_identity(), "k={k}");
            assert_eq!(spec.check_homomorphism_on_window(15), None, "k={k}");
            assert_eq!(spec.check_injective_on_window(15), None, "k={k}");
        }
    });
}

#[test]
fn criterion_03_fixed_point_sets() {
    criterion(3, "fixed points: 2 idempotents for k ≥ 2, everything for k = 1", || {
        let all = EndoSpec::alpha_bracket(1).unwrap().fixed_points_in_window(20);
        assert_eq!(all.len(), 3 * 21 * 21);

        for k in 2..=8 {
            let fixed = EndoSpec::alpha_bracket(k).unwrap().fixed_points_in_window(20);
            assert_eq!(
                fixed,
                vec![Element::triple(0, 0, 0), Element::triple(0, 0, 1)],
                "k={k}"
            );
            assert!(fixed.len() < 3);
            assert!(fixed.iter().all(|x| x.is_idempotent()));
        }
    });
}

#[test]
fn criterion_04_composition_is_a_commutative_monoid() {
    criterion(4, "composition of scaling maps multiplies the scales", || {
        assert!(verify_composition_monoid(10));
    });
}

#[test]
fn criterion_05_three_set_classification() {
    criterion(5, "three-set search finds exactly the scaling maps", || {
        let started = Instant::now();
        let verified = verify_classification_f3(SearchBounds::new(4, 6).unwrap()).unwrap();
        assert!(verified.pass);
        assert_eq!(verified.matched_scales, vec![1, 2, 3, 4]);
        assert!(verified.report.unmatched().is_empty());
        assert!(started.elapsed() < Duration::from_secs(300), "took {:?}", started.elapsed());

        // pruning removes only tuples the full checks would reject anyway
        let small = SearchBounds::new(2, 3).unwrap();
        let f3 = OmegaClosedFamily::f3();
        let pruned: Vec<_> = enumerate_monoid_endos(&f3, small)
            .unwrap()
            .candidates
            .into_iter()
            .map(|candidate| candidate.spec)
            .collect();
        let exhaustive = enumerate_without_pruning(&f3, small).unwrap();
        assert_eq!(pruned, exhaustive);
    });
}

#[test]
fn criterion_06_two_set_classification() {
    criterion(6, "two-set search finds exactly the alpha/beta maps", || {
        let report =
            enumerate_monoid_endos(&OmegaClosedFamily::f2(), SearchBounds::new(4, 6).unwrap())
                .unwrap();
        assert!(report.unmatched().is_empty());
        let matched: BTreeSet<String> =
            report.candidates.iter().map(|c| c.matched.unwrap().to_string()).collect();

        let mut expected = BTreeSet::new();
        for k in 1..=4u64 {
            for p in 0..k {
                expected.insert(NamedEndo::Alpha { k, p }.to_string());
            }
        }
        for k in 2..=4u64 {
            for p in 1..k {
                expected.insert(NamedEndo::Beta { k, p }.to_string());
            }
        }
        assert_eq!(matched, expected);
        assert_eq!(report.candidates.len(), 16);
    });
}

#[test]
fn criterion_07_no_beta_restriction_from_three_sets() {
    criterion(7, "every three-set survivor restricts to alpha:k,0", || {
        let verified = verify_non_extension(SearchBounds::new(4, 6).unwrap()).unwrap();
        assert!(verified.pass);
        assert!(!verified.restriction_matches.is_empty());
        for matched in &verified.restriction_matches {
            match matched {
                Some(NamedEndo::Alpha { p: 0, .. }) => {}
                other => panic!("restriction matched {other:?}"),
            }
        }
    });
}

#[test]
fn criterion_08_bicyclic_embedding_and_words() {
    criterion(8, "pair monoid embeds at every level; words fold correctly", || {
        // the embedding (k,l) ↦ (k,l,[s)) preserves products and is injective
        for s in 0..=2u64 {
            let set = bomega::InductiveSet::new(s);
            let mut images = BTreeSet::new();
            for k1 in 0..=10 {
                for l1 in 0..=10 {
                    let x = BicyclicElement::new(k1, l1);
                    assert!(images.insert(x.embed_at(set)), "collision at {x}");
                    for k2 in 0..=10 {
                        for l2 in 0..=10 {
                            let y = BicyclicElement::new(k2, l2);
                            assert_eq!(
                                x.embed_at(set).multiply(y.embed_at(set)),
                                x.multiply(y).embed_at(set),
                                "s={s} x={x} y={y}"
                            );
                        }
                    }
                }
            }
        }

        // string rewriting agrees with folded pair multiplication
        let mut rng = StdRng::seed_from_u64(20260817);
        for _ in 0..1000 {
            let length = rng.gen_range(0..=20);
            let word: String =
                (0..length).map(|_| if rng.gen_bool(0.5) { 'p' } else { 'q' }).collect();
            let rewritten = normalize_bicyclic_word(&word).unwrap();
            let folded = word.chars().fold(BicyclicElement::new(0, 0), |acc, c| {
                acc.multiply(match c {
                    'q' => BicyclicElement::new(1, 0),
                    _ => BicyclicElement::new(0, 1),
                })
            });
            assert_eq!(rewritten, folded, "word {word:?}");
        }
    });
}

#[test]
fn criterion_09_family_validation_and_normalization() {
    criterion(9, "family validator and bound-shift normalization", || {
        for good in [&[0, 1, 2][..], &[0], &[0, 1]] {
            assert!(OmegaClosedFamily::new(good, false).is_ok(), "{good:?}");
        }
        assert_eq!(
            OmegaClosedFamily::new(&[0, 2], false).unwrap_err(),
            FamilyError::NotOmegaClosed { a: 0, b: 2, n: 1, missing: 1 }
        );

        let shifted = OmegaClosedFamily::new(&[1, 2], false).unwrap();
        let (normalized, shift) = shifted.normalized();
        assert_eq!(normalized, OmegaClosedFamily::f2());
        assert_eq!(shift, 1);

        // the induced window map (i,j,[a)) ↦ (i,j,[a-1)) is a bijective
        // homomorphism between the two monoids
        let from = shifted.elements_up_to(6);
        let to = normalized.elements_up_to(6);
        let map = |x: Element| {
            let Element::Triple { i, j, set } = x else { unreachable!() };
            Element::triple(i, j, set.lower_bound() - shift)
        };
        let mapped: Vec<Element> = from.iter().map(|&x| map(x)).collect();
        assert_eq!(mapped, to, "window bijection");
        for &x in &from {
            for &y in &from {
                assert_eq!(map(x.multiply(y)), map(x).multiply(map(y)));
            }
        }
    });
}

#[test]
fn criterion_10_natural_partial_order() {
    criterion(10, "the natural order is a partial order and maps are monotone", || {
        let f3 = OmegaClosedFamily::f3();
        let window = f3.elements_up_to(5);
        assert_eq!(window.len(), 108);
        let n = window.len();

        let leq: Vec<Vec<bool>> = window
            .iter()
            .map(|&x| window.iter().map(|&y| x.natural_leq(y)).collect())
            .collect();

        for x in 0..n {
            assert!(leq[x][x], "reflexivity");
            for y in 0..n {
                if leq[x][y] && leq[y][x] {
                    assert_eq!(window[x], window[y], "antisymmetry");
                }
                if !leq[x][y] {
                    continue;
                }
                for (z, &y_below_z) in leq[y].iter().enumerate() {
                    if y_below_z {
                        assert!(leq[x][z], "transitivity");
                    }
                }
            }
        }

        // the descending chain through the idempotent levels
        let chain = [
            Element::triple(1, 1, 1),
            Element::triple(0, 0, 2),
            Element::triple(0, 0, 1),
            Element::triple(0, 0, 0),
        ];
        for pair in chain.windows(2) {
            assert!(pair[0].natural_leq(pair[1]), "{} ≼ {}", pair[0], pair[1]);
            assert!(!pair[1].natural_leq(pair[0]), "strict");
        }

        // every verified scaling map is monotone
        for k in 1..=8 {
            let spec = EndoSpec::alpha_bracket(k).unwrap();
            let images: Vec<Element> = window.iter().map(|&x| spec.apply(x).unwrap()).collect();
            for x in 0..n {
                for y in 0..n {
                    if leq[x][y] {
                        assert!(images[x].natural_leq(images[y]), "k={k} monotonicity");
                    }
                }
            }
        }
    });
}
