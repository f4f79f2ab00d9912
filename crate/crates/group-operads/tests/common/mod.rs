//! Shared oracles for integration tests: brute-force factorization over
//! the symmetric family straight from the definition, independent of the
//! library's block-membership shortcut.

use group_operads::monad::{MonadElement, PointedAlphabet};
use group_operads::operad::{Element, Family};
use group_operads::Permutation;

/// Whether a permutation maps the first `cut` points into themselves,
/// checked directly on images.
fn perm_splits(p: &Permutation, cut: usize) -> bool {
    (0..cut).all(|i| p.apply(i) < cut)
}

/// Every witness `(b, cut)` such that translating the entries by `b` puts
/// all of them in block form at `cut`.
fn split_witnesses(m: &MonadElement) -> Vec<(Permutation, usize)> {
    let n = m.degree();
    let mut out = Vec::new();
    for b in Permutation::all(n) {
        for cut in 1..n {
            let ok = m.entries().iter().all(|e| {
                let Element::Perm(p) = e else { panic!("symmetric entries expected") };
                perm_splits(&b.compose(p).expect("same degree"), cut)
            });
            if ok {
                out.push((b.clone(), cut));
            }
        }
    }
    out
}

/// Splits along a witness: translate, cut the entries and letters, and
/// re-canonicalize both halves.
fn split_along(
    m: &MonadElement,
    b: &Permutation,
    cut: usize,
    alphabet: &PointedAlphabet,
) -> (MonadElement, MonadElement) {
    let n = m.degree();
    let fam = Family::Symmetric;
    let mut left_entries = Vec::new();
    let mut right_entries = Vec::new();
    for e in m.entries() {
        let Element::Perm(p) = e else { panic!("symmetric entries expected") };
        let t = b.compose(p).expect("same degree");
        let left: Vec<usize> = (0..cut).map(|i| t.apply(i)).collect();
        let right: Vec<usize> = (cut..n).map(|i| t.apply(i) - cut).collect();
        left_entries.push(Element::Perm(Permutation::from_images(left).expect("bijection")));
        right_entries.push(Element::Perm(Permutation::from_images(right).expect("bijection")));
    }
    // letters move along the inverse image of the translation
    let moved: Vec<char> = (0..n).map(|i| m.letters()[b.apply(i)]).collect();
    let left = MonadElement::canonicalize(
        &fam,
        left_entries,
        moved[..cut].to_vec(),
        alphabet,
    )
    .expect("valid halves");
    let right = MonadElement::canonicalize(
        &fam,
        right_entries,
        moved[cut..].to_vec(),
        alphabet,
    )
    .expect("valid halves");
    (left, right)
}

/// Factorization by exhaustive witness search. Recurses through every
/// witness and demands all routes agree, so a successful run certifies
/// uniqueness as well.
pub fn brute_force_factorize(
    m: &MonadElement,
    alphabet: &PointedAlphabet,
) -> Vec<MonadElement> {
    if m.degree() == 0 {
        return Vec::new();
    }
    let witnesses = split_witnesses(m);
    if witnesses.is_empty() {
        return vec![m.clone()];
    }
    let mut agreed: Option<Vec<MonadElement>> = None;
    for (b, cut) in witnesses {
        let (left, right) = split_along(m, &b, cut, alphabet);
        let mut factors = brute_force_factorize(&left, alphabet);
        factors.extend(brute_force_factorize(&right, alphabet));
        match &agreed {
            None => agreed = Some(factors),
            Some(prev) => assert_eq!(
                *prev, factors,
                "two split witnesses of {m} factor differently"
            ),
        }
    }
    agreed.expect("witness list was nonempty")
}

/// Every canonical monad element over the symmetric family with the given
/// arity, level and letters drawn from the alphabet.
pub fn enumerate_symmetric_elements(
    arity: usize,
    level: usize,
    alphabet: &PointedAlphabet,
) -> Vec<MonadElement> {
    let fam = Family::Symmetric;
    let letters = alphabet.non_base();
    let mut letter_choices: Vec<Vec<char>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &letter_choices {
            for &c in &letters {
                let mut p = prefix.clone();
                p.push(c);
                next.push(p);
            }
        }
        letter_choices = next;
    }
    let perms = Permutation::all(arity);
    let mut entry_choices: Vec<Vec<Element>> = vec![vec![Element::Perm(Permutation::identity(
        arity,
    ))]];
    for _ in 0..level {
        let mut next = Vec::new();
        for prefix in &entry_choices {
            for p in &perms {
                let mut t = prefix.clone();
                t.push(Element::Perm(p.clone()));
                next.push(t);
            }
        }
        entry_choices = next;
    }
    let mut out = Vec::new();
    for entries in &entry_choices {
        for ls in &letter_choices {
            out.push(
                MonadElement::canonicalize(&fam, entries.clone(), ls.clone(), alphabet)
                    .expect("canonical data"),
            );
        }
    }
    out
}
