//! Cross-checks the parabolic-membership criterion against brute-force
//! word search, and the purity bookkeeping of the exact sequence from
//! pure braids through braids to permutations.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use group_operads::braid::{BraidWord, Letter};
use group_operads::operad::{Element, Family};

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

/// All normal-form keys of products of block generators (both signs, both
/// sides of the cut) up to the given word length.
fn block_words_up_to(n: usize, cut: usize, max_len: usize) -> HashSet<String> {
    let mut gens: Vec<BraidWord> = Vec::new();
    for i in 1..n {
        if i != cut {
            gens.push(BraidWord::new(n, vec![Letter::positive(i)]).expect("in range"));
            gens.push(BraidWord::new(n, vec![Letter::negative(i)]).expect("in range"));
        }
    }
    let mut seen: HashSet<String> = HashSet::new();
    let mut frontier = vec![BraidWord::identity(n)];
    seen.insert(BraidWord::identity(n).normal_form().key());
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let prod = w.multiply(g).expect("same strands");
                if seen.insert(prod.normal_form().key()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    seen
}

#[test]
fn membership_matches_brute_force_search() {
    // positive side by explicit split certificates, negative side by
    // exhausting all block words of length <= 8
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 2..=4usize {
        for cut in 1..n {
            let table = block_words_up_to(n, cut, 8);
            for _ in 0..40 {
                let w = random_word(n, rng.gen_range(0..=4), &mut rng);
                let claimed = w.block_membership(cut).expect("cut in range");
                if claimed {
                    // a splitting braid reassembles from its two halves
                    let (l, r) = w.split_at(cut).expect("cut in range");
                    let reassembled = l.block_sum(&r);
                    assert!(
                        w.equals(&reassembled).expect("same strands"),
                        "{w} claimed to split at {cut}"
                    );
                } else {
                    assert!(
                        !table.contains(&w.normal_form().key()),
                        "{w} claimed not to split at {cut} but a block word matches"
                    );
                }
            }
        }
    }

    // the stored instance: a squared middle crossing never splits
    let w: BraidWord = "braid(4): s2 s2".parse().expect("literal");
    assert!(!w.block_membership(2).expect("cut in range"));
    let table = block_words_up_to(4, 2, 8);
    assert!(!table.contains(&w.normal_form().key()));
}

#[test]
fn projection_respects_equality() {
    // equal braids always project to the same permutation
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5);
        let w1 = random_word(n, rng.gen_range(0..=8), &mut rng);
        let w2 = random_word(n, rng.gen_range(0..=8), &mut rng);
        if w1.equals(&w2).expect("same strands") {
            assert_eq!(w1.to_permutation(), w2.to_permutation());
        }
        // and on pairs equal by construction
        let mut w3 = w1.multiply(&w2).expect("same strands");
        w3 = w3.multiply(&w2.inverse()).expect("same strands");
        assert!(w3.equals(&w1).expect("same strands"));
        assert_eq!(w3.to_permutation(), w1.to_permutation());
    }
}

#[test]
fn projection_is_a_homomorphism_for_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let a = random_word(n, rng.gen_range(0..=8), &mut rng);
        let b = random_word(n, rng.gen_range(0..=8), &mut rng);
        let lhs = a.multiply(&b).expect("same strands").to_permutation();
        let rhs = a
            .to_permutation()
            .compose(&b.to_permutation())
            .expect("same degree");
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn cabling_pure_inputs_stays_pure() {
    // the restriction of cabling to the pure kernel lands in the kernel
    let fam = Family::PureBraid;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let outer = fam.sample(k, 6, &mut rng);
        let inners: Vec<Element> = (0..k)
            .map(|_| fam.sample(rng.gen_range(0..=3), 6, &mut rng))
            .collect();
        let out = fam.gamma(&outer, &inners).expect("arities consistent");
        let Element::Braid(b) = &out else { panic!("braid payload expected") };
        assert!(b.is_pure(), "{b}");
    }
}

#[test]
fn generator_powers_alternate_crossedness() {
    // even powers of the generators project trivially, odd powers do not
    for k in 1..=6usize {
        for n in 2..=4usize {
            for i in 1..n {
                let w = BraidWord::new(n, vec![Letter::positive(i); k]).expect("in range");
                assert_eq!(w.is_pure(), k % 2 == 0, "k={k} i={i}");
            }
        }
    }
}
