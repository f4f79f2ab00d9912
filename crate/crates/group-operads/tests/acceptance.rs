//! Acceptance suite: one test per criterion, each printing a pass line.
//! Tolerances are exact equalities throughout; sampled checks pin their
//! bounds and seeds here.

mod common;

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use group_operads::bar::{operad_pi1_check, pi1_iso_check};
use group_operads::braid::{generate_bk, BraidWord, Letter};
use group_operads::families::{
    hyperoct_candidate_crossed_violation, hyperoct_candidates_disagreement, RibbonElement,
    TwistSide,
};
use group_operads::fingroup::{FiniteGroup, SplitExtension};
use group_operads::monad::{
    kernel_membership, u_embed, untwist_iso_check, MonadElement, PointedAlphabet, PointedGSet,
};
use group_operads::operad::quotient::SubOperad;
use group_operads::operad::simplicial::{ribbon_as_wreath, DeltaElem, DeltaGroup};
use group_operads::operad::{
    axiom_suite, derived_identity_suite, Bounds, Element, Family,
};
use group_operads::Permutation;

const SEED: u64 = 7;

fn families_under_test() -> Vec<Family> {
    vec![
        Family::Trivial,
        Family::Symmetric,
        Family::Braid,
        Family::PureBraid,
        Family::Ribbon,
        Family::AbelianPower { modulus: 2 },
    ]
}

#[test]
fn criterion_01_axiom_suites() {
    // associativity, unitality, crossed homomorphism and self-action
    // equivariance: >= 10^3 samples per law, arities <= 5, braid word
    // length <= 10, all six families, within one minute
    let bounds = Bounds { max_arity: 5, size: 10, samples: 1000 };
    let start = Instant::now();
    for fam in families_under_test() {
        let report = axiom_suite(&fam, bounds, SEED);
        assert!(report.all_passed(), "{fam:?}:\n{report}");
        let derived = derived_identity_suite(&fam, bounds, SEED);
        assert!(derived.all_passed(), "{fam:?}:\n{derived}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "axiom suites took {elapsed:?}");
    println!("criterion 1: PASS - axiom suites clean for J,S,B,P,R,Z2 in {elapsed:?}");
}

#[test]
fn criterion_02_cabled_abelianization_exact() {
    // exponent_sum(cable(s_i^k; widths)) = k * m_i * m_{i+1}, exactly
    let mut checked = 0u64;
    for n in 2..=4usize {
        for i in 1..n {
            for k in 1..=5usize {
                let word =
                    BraidWord::new(n, vec![Letter::positive(i); k]).expect("index in range");
                for widths in all_widths(n, 3) {
                    let inners: Vec<BraidWord> =
                        widths.iter().map(|&m| BraidWord::identity(m)).collect();
                    let got = word.cable(&inners).expect("width count matches").exponent_sum();
                    let expected = (k * widths[i - 1] * widths[i]) as i64;
                    assert_eq!(got, expected, "n={n} i={i} k={k} widths={widths:?}");
                    checked += 1;
                }
            }
        }
    }
    println!("criterion 2: PASS - {checked} cabled abelianization identities exact");
}

#[test]
fn criterion_03_power_suboperad_divisibility() {
    // every element of the bounded enumeration keeps its cabled
    // abelianization divisible by k
    let mut checked = 0u64;
    let mut elements = 0u64;
    for k in 2..=4usize {
        for n in 2..=4usize {
            let set = generate_bk(k, n, 2, 12);
            elements += set.elements.len() as u64;
            for w in &set.elements {
                for widths in all_widths(n, 3) {
                    let inners: Vec<BraidWord> =
                        widths.iter().map(|&m| BraidWord::identity(m)).collect();
                    let phi = w.cable(&inners).expect("width count matches").exponent_sum();
                    assert_eq!(
                        phi.rem_euclid(k as i64),
                        0,
                        "k={k}: {w} with widths {widths:?}"
                    );
                    checked += 1;
                }
            }
        }
    }
    println!(
        "criterion 3: PASS - divisibility on {elements} generated elements, {checked} cablings"
    );
}

#[test]
fn criterion_04_equality_oracles_agree() {
    // left-greedy normal form vs the free-group action on 10^4 pairs
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples = 10_000usize;
    let mut equal_pairs = 0usize;
    for _ in 0..samples {
        let n = rng.gen_range(2..=5);
        let w1 = random_word(n, rng.gen_range(0..=12), &mut rng);
        let w2 = if rng.gen_bool(0.5) {
            random_word(n, rng.gen_range(0..=12), &mut rng)
        } else {
            rewrite_equal(&w1, &mut rng)
        };
        let garside = w1.equals(&w2).expect("same strand count");
        let artin = w1.artin_action() == w2.artin_action();
        assert_eq!(garside, artin, "{w1} vs {w2}");
        if garside {
            equal_pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "oracle comparison took {elapsed:?}");
    assert!(equal_pairs > samples / 10, "too few equal pairs to be meaningful");
    println!(
        "criterion 4: PASS - 100% agreement on {samples} pairs ({equal_pairs} equal) in {elapsed:?}"
    );
}

#[test]
fn criterion_05_fundamental_group_realization() {
    let bounds = Bounds { max_arity: 4, size: 6, samples: 150 };
    let report = operad_pi1_check(&Family::Symmetric, SubOperad::Whole, 4, bounds, SEED);
    assert!(report.all_passed(), "{report}");

    let s3 = FiniteGroup::symmetric(3);
    let s4 = FiniteGroup::symmetric(4);
    for (g, h) in [
        (&s3, FiniteGroup::alternating(3)),
        (&s4, FiniteGroup::klein_four()),
        (&s3, s3.clone()),
        (&s3, FiniteGroup::trivial(3)),
    ] {
        let report = pi1_iso_check(g, &h);
        assert!(report.all_passed(), "({}, {}):\n{report}", g.name, h.name);
    }
    println!(
        "criterion 5: PASS - spherical realization exact for the symmetric family (arity <= 4) and (S3,A3), (S4,V4), (G,G), (G,1)"
    );
}

#[test]
fn criterion_06_unique_factorization() {
    // full enumeration over the symmetric family: fast factorization
    // equals the brute-force all-witness search
    let alphabet = PointedAlphabet::with_base("xyz").expect("distinct letters");
    let mut enumerated = 0u64;
    for arity in 0..=4usize {
        for level in 0..=2usize {
            for m in common::enumerate_symmetric_elements(arity, level, &alphabet) {
                let fast = m.factorize().expect("oracle available");
                let brute = common::brute_force_factorize(&m, &alphabet);
                assert_eq!(fast, brute, "{m}");
                enumerated += 1;
            }
        }
    }

    // product of factors returns the element on random braid-side classes
    let fam = Family::Braid;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=4);
        let level = rng.gen_range(0..=2);
        let mut entries = vec![fam.identity(n)];
        for _ in 0..level {
            entries.push(fam.sample(n, 6, &mut rng));
        }
        let letters: Vec<char> = (0..n).map(|i| ['x', 'y', 'z'][i % 3]).collect();
        let m = MonadElement::canonicalize(&fam, entries, letters, &alphabet)
            .expect("valid data");
        let mut prod = MonadElement::unit(fam.clone(), m.level());
        for f in m.factorize().expect("oracle available") {
            assert!(f.is_irreducible().expect("oracle available"));
            prod = prod.product(&f).expect("same level");
        }
        assert_eq!(prod, m);
    }
    println!(
        "criterion 6: PASS - {enumerated} enumerated symmetric classes match the brute-force factorization; 1000 braid round-trips"
    );
}

#[test]
fn criterion_07_fibre_model() {
    let alphabet = PointedAlphabet::with_base("xyz").expect("distinct letters");
    let fam = Family::Braid;

    // the stored element: [(e, s1^2); (x,y)] * [(e,e); y]^-1 * [(e,e); x]^-1
    let e2 = fam.identity(2);
    let twist = Element::Braid("braid(2): s1 s1".parse().expect("literal"));
    let f1 = MonadElement::canonicalize(&fam, vec![e2, twist], vec!['x', 'y'], &alphabet)
        .expect("valid data");
    assert!(f1.is_irreducible().expect("oracle available"));
    let e1 = fam.identity(1);
    let fy = MonadElement::canonicalize(
        &fam,
        vec![e1.clone(), e1.clone()],
        vec!['y'],
        &alphabet,
    )
    .expect("valid data");
    let fx = MonadElement::canonicalize(&fam, vec![e1.clone(), e1], vec!['x'], &alphabet)
        .expect("valid data");
    let g = u_embed(&f1)
        .expect("oracle")
        .product(&u_embed(&fy).expect("oracle").inverse())
        .product(&u_embed(&fx).expect("oracle").inverse());
    assert!(!g.is_empty(), "the stored element must be nontrivial");
    assert!(kernel_membership(&g).expect("oracle"), "the stored element must die");

    // 100 generated kernel elements: words whose two halves share an image
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let level = 1;
        let mut entries = vec![fam.identity(n)];
        for _ in 0..level {
            entries.push(fam.sample(n, 6, &mut rng));
        }
        let letters: Vec<char> = (0..n).map(|i| ['x', 'y', 'z'][i % 3]).collect();
        let m = MonadElement::canonicalize(&fam, entries.clone(), letters.clone(), &alphabet)
            .expect("valid data");
        // multiply entries by pure braids: same symmetric image
        let mut entries2 = vec![fam.identity(n)];
        for e in &m.entries()[1..] {
            let pure = Family::PureBraid.sample(n, 6, &mut rng);
            entries2.push(fam.multiply(e, &pure).expect("same arity"));
        }
        let m2 = MonadElement::canonicalize(&fam, entries2, m.letters().to_vec(), &alphabet)
            .expect("valid data");
        let w = u_embed(&m)
            .expect("oracle")
            .product(&u_embed(&m2).expect("oracle").inverse());
        assert!(kernel_membership(&w).expect("oracle"), "{w}");
    }
    println!("criterion 7: PASS - stored fibre element and 100 generated kernel members verify");
}

#[test]
fn criterion_08_negative_fixtures() {
    // both candidate compositions on signed permutations break the
    // exchange law at arity 3, reproducibly
    for side in [TwistSide::Pre, TwistSide::Post] {
        let w1 = hyperoct_candidate_crossed_violation(side, 3);
        let w2 = hyperoct_candidate_crossed_violation(side, 3);
        assert!(w1.is_some(), "{side:?} candidate unexpectedly lawful");
        assert_eq!(w1, w2, "witness must be reproducible");
    }
    assert!(hyperoct_candidates_disagreement(3).is_some());

    // the ribbon/wreath pairing commutes with every face on 500 samples
    let ribbon = DeltaGroup::Operad(Family::Ribbon);
    let wreath = DeltaGroup::wreath(0, DeltaGroup::Operad(Family::Braid));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut face_checks = 0;
    while face_checks < 500 {
        let n = rng.gen_range(1..=4);
        let Element::Ribbon(r) = Family::Ribbon.sample(n, 6, &mut rng) else {
            unreachable!("ribbon family samples ribbon payloads");
        };
        for i in 1..=n {
            let via_ribbon = ribbon
                .face(&DeltaElem::Op(Element::Ribbon(r.clone())), i)
                .expect("index in range");
            let DeltaElem::Op(Element::Ribbon(lhs)) = via_ribbon else {
                panic!("ribbon face stays in the family");
            };
            let rhs = wreath
                .face(&ribbon_as_wreath(&r), i)
                .expect("index in range");
            assert!(wreath.equals(&ribbon_as_wreath(&lhs), &rhs), "face {i} of {r}");
            face_checks += 1;
        }
    }

    // and the stored degeneracy witness: one twisted ribbon
    let once = RibbonElement::new(BraidWord::identity(1), vec![1]).expect("framing count");
    let via_ribbon = ribbon
        .degeneracy(&DeltaElem::Op(Element::Ribbon(once.clone())), 1)
        .expect("index in range");
    let DeltaElem::Op(Element::Ribbon(split)) = via_ribbon else {
        panic!("ribbon degeneracy stays in the family");
    };
    let via_wreath = wreath
        .degeneracy(&ribbon_as_wreath(&once), 1)
        .expect("index in range");
    assert!(
        !wreath.equals(&ribbon_as_wreath(&split), &via_wreath),
        "the degeneracy mismatch witness must persist"
    );
    // the ribbon side twists the two halves around each other
    assert!(split
        .braid
        .equals(&"braid(2): s1 s1".parse().expect("literal"))
        .expect("same strands"));
    println!(
        "criterion 8: PASS - candidate compositions fail reproducibly at arity 3; ribbon/wreath faces agree on 500 samples with the stored degeneracy witness"
    );
}

#[test]
fn criterion_09_untwisting_bijection() {
    let s3 = FiniteGroup::symmetric(3);
    let a3 = FiniteGroup::alternating(3);
    let c2 = FiniteGroup::from_generators("C2", 3, &[Permutation::transposition(3, 1, 2)]);
    let ext = SplitExtension::new(s3.clone(), a3, c2).expect("split");
    let xs = PointedGSet::trivial(&s3, 2);
    let report = untwist_iso_check(&ext, &xs, 2);
    assert!(report.all_passed(), "{report}");
    println!(
        "criterion 9: PASS - untwisting bijection exact by full enumeration at levels 0..=2"
    );
}

fn all_widths(parts: usize, max_each: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..parts {
        let mut next = Vec::new();
        for prefix in &out {
            for w in 0..=max_each {
                let mut p = prefix.clone();
                p.push(w);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn random_word<R: Rng>(strands: usize, len: usize, rng: &mut R) -> BraidWord {
    let mut letters = Vec::with_capacity(len);
    if strands >= 2 {
        for _ in 0..len {
            letters.push(Letter {
                index: rng.gen_range(1..strands),
                inverse: rng.gen_bool(0.5),
            });
        }
    }
    BraidWord::new(strands, letters).expect("indices in range")
}

/// A different word for the same braid: cancelling pairs, the adjacent
/// relation, and far commutations inserted at random spots.
fn rewrite_equal<R: Rng>(w: &BraidWord, rng: &mut R) -> BraidWord {
    let n = w.strands();
    let mut letters: Vec<Letter> = w.letters().to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        let at = rng.gen_range(0..=letters.len());
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(1..n.max(2));
                let inv = rng.gen_bool(0.5);
                letters.insert(at, Letter { index: i, inverse: !inv });
                letters.insert(at, Letter { index: i, inverse: inv });
            }
            1 if n >= 3 => {
                let i = rng.gen_range(1..n - 1);
                for l in [
                    Letter::negative(i),
                    Letter::negative(i + 1),
                    Letter::negative(i),
                    Letter::positive(i + 1),
                    Letter::positive(i),
                    Letter::positive(i + 1),
                ]
                .into_iter()
                .rev()
                {
                    letters.insert(at, l);
                }
            }
            _ if n >= 4 => {
                let i = rng.gen_range(1..n - 2);
                let j = rng.gen_range(i + 2..n);
                for l in [
                    Letter::positive(i),
                    Letter::positive(j),
                    Letter::negative(i),
                    Letter::negative(j),
                ]
                .into_iter()
                .rev()
                {
                    letters.insert(at, l);
                }
            }
            _ => {}
        }
    }
    BraidWord::new(n, letters).expect("indices in range")
}
