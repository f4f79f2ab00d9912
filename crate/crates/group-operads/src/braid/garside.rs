//! Left-greedy normal form with the half twist as the Garside element.
//!
//! A braid is written `D^p x_1 ... x_l` where `D` is the positive half
//! twist, each `x_j` is a permutation braid (positive, any two strands
//! crossing at most once) identified with its permutation, and adjacent
//! factors are left-weighted: every generator that can start `x_{j+1}` can
//! finish `x_j`. Two words are equal in the braid group exactly when their
//! normal forms coincide, which makes the form a canonical key.

use std::fmt;

use crate::perm::Permutation;

use super::{BraidWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidNormalForm {
    strands: usize,
    infimum: i64,
    factors: Vec<Permutation>,
}

impl BraidNormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn infimum(&self) -> i64 {
        self.infimum
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    /// The canonical word: `|p|` copies of the half-twist word (inverted
    /// when `p < 0`) followed by one positive word per factor.
    pub fn canonical_word(&self) -> BraidWord {
        let n = self.strands;
        let mut word = BraidWord::identity(n);
        if self.infimum != 0 {
            let delta = word_of_permutation(&Permutation::reversal(n));
            for _ in 0..self.infimum.unsigned_abs() {
                if self.infimum > 0 {
                    for &l in &delta {
                        word.push(Letter::positive(l));
                    }
                } else {
                    for &l in delta.iter().rev() {
                        word.push(Letter::negative(l));
                    }
                }
            }
        }
        for f in &self.factors {
            for l in word_of_permutation(f) {
                word.push(Letter::positive(l));
            }
        }
        word
    }

    /// Stable text key; also the printed form.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BraidNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.infimum)?;
        for p in &self.factors {
            write!(f, " | [")?;
            for (i, v) in p.one_line().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Generators that can begin a positive word for `x`: descents of the
/// one-line image.
fn starting_set(x: &Permutation) -> Vec<usize> {
    let img = x.images();
    (1..x.degree()).filter(|&i| img[i - 1] > img[i]).collect()
}

/// Whether `s_i` can end a positive word for `x`: the value `i+1` sits left
/// of the value `i`.
fn finishes_with(x: &Permutation, i: usize) -> bool {
    let inv = x.inverse();
    inv.apply(i) < inv.apply(i - 1)
}

/// `x * s_i`: swaps the values `i, i+1` in the image.
fn append_gen(x: &Permutation, i: usize) -> Permutation {
    let mut img = x.images().to_vec();
    for v in img.iter_mut() {
        if *v == i - 1 {
            *v = i;
        } else if *v == i {
            *v = i - 1;
        }
    }
    Permutation::from_images(img).expect("still a bijection")
}

/// `s_i * x`: swaps positions `i, i+1` of the image.
fn prepend_gen_inverse(x: &Permutation, i: usize) -> Permutation {
    let mut img = x.images().to_vec();
    img.swap(i - 1, i);
    Permutation::from_images(img).expect("still a bijection")
}

/// Conjugation by the half twist: flips a permutation braid end to end.
fn tau(x: &Permutation) -> Permutation {
    let n = x.degree();
    let img: Vec<usize> = (0..n).map(|j| (n - 1) - x.apply((n - 1) - j)).collect();
    Permutation::from_images(img).expect("flip of a bijection")
}

/// Moves crossings from `b` to `a` until the pair is left-weighted.
/// Preserves the product `a * b`; returns whether anything moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let mut changed = false;
    loop {
        let mut moved = false;
        for i in starting_set(b) {
            if !finishes_with(a, i) {
                *a = append_gen(a, i);
                *b = prepend_gen_inverse(b, i);
                moved = true;
                changed = true;
                break;
            }
        }
        if !moved {
            return changed;
        }
    }
}

/// Computes the left-greedy normal form of a braid word.
pub(super) fn normal_form(word: &BraidWord) -> BraidNormalForm {
    let n = word.strands();
    let delta = Permutation::reversal(n);
    let mut infimum: i64 = 0;
    let mut factors: Vec<Permutation> = Vec::new();

    for l in word.letters() {
        if !l.inverse {
            factors.push(Permutation::transposition(n, l.index, l.index + 1));
        } else {
            // x s_i^-1 = D^-1 (tau x_1) ... (tau x_r) (D s_i^-1)
            infimum -= 1;
            for f in factors.iter_mut() {
                *f = tau(f);
            }
            factors.push(append_gen(&delta, l.index));
        }
    }

    loop {
        let mut changed = false;
        // absorb identity factors and migrate half twists into the exponent
        let mut j = 0;
        while j < factors.len() {
            if factors[j].is_identity() {
                factors.remove(j);
                changed = true;
            } else if n >= 2 && factors[j] == delta {
                infimum += 1;
                for f in factors.iter_mut().take(j) {
                    *f = tau(f);
                }
                factors.remove(j);
                changed = true;
            } else {
                j += 1;
            }
        }
        // one local left-weighting sweep
        for j in 0..factors.len().saturating_sub(1) {
            let (head, tail) = factors.split_at_mut(j + 1);
            if left_weight(&mut head[j], &mut tail[0]) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    BraidNormalForm { strands: n, infimum, factors }
}

/// A canonical positive word for a permutation braid: repeatedly peel the
/// smallest descent off the front.
pub(super) fn word_of_permutation(p: &Permutation) -> Vec<usize> {
    let mut word = Vec::with_capacity(p.inversions());
    let mut y = p.clone();
    while let Some(i) = starting_set(&y).into_iter().next() {
        word.push(i);
        y = prepend_gen_inverse(&y, i);
    }
    debug_assert!(y.is_identity());
    word
}
