//! The faithful action of braids on a free group, used as an independent
//! equality oracle for the word problem.
//!
//! A word in the free group on `x_1, ..., x_n` is a reduced vector of
//! signed generator indices. The generator `s_i` acts by
//! `x_i -> x_i x_{i+1} x_i^-1`, `x_{i+1} -> x_i`, fixing the others; its
//! inverse acts by `x_i -> x_{i+1}`, `x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}`.
//! Letters are applied left to right, substituting each step into the
//! accumulated images, so equal braids produce identical image tuples.

use super::{BraidWord, Letter};

/// Reduced word in free generators: positive `k` is `x_k`, negative is its
/// inverse. Indices are 1-based.
pub type FreeWord = Vec<i32>;

/// Appends a signed generator with free cancellation.
fn push_reduced(word: &mut FreeWord, g: i32) {
    if let Some(&top) = word.last() {
        if top == -g {
            word.pop();
            return;
        }
    }
    word.push(g);
}

/// Freely reduces a word.
pub fn free_reduce(word: &[i32]) -> FreeWord {
    let mut out = Vec::with_capacity(word.len());
    for &g in word {
        push_reduced(&mut out, g);
    }
    out
}

/// Substitutes the images of one braid letter into `word`.
fn substitute(word: &FreeWord, letter: Letter) -> FreeWord {
    let i = letter.index as i32;
    let mut out = Vec::with_capacity(word.len() + 2);
    for &g in word {
        let a = g.abs();
        let image: &[i32] = if !letter.inverse {
            if a == i {
                &[i, i + 1, -i]
            } else if a == i + 1 {
                &[i]
            } else {
                &[a]
            }
        } else if a == i {
            &[i + 1]
        } else if a == i + 1 {
            &[-(i + 1), i, i + 1]
        } else {
            &[a]
        };
        if g > 0 {
            for &h in image {
                push_reduced(&mut out, h);
            }
        } else {
            for &h in image.iter().rev() {
                push_reduced(&mut out, -h);
            }
        }
    }
    out
}

/// Images of the free generators `x_1, ..., x_n` under the braid.
pub fn artin_action(braid: &BraidWord) -> Vec<FreeWord> {
    let n = braid.strands();
    let mut images: Vec<FreeWord> = (1..=n as i32).map(|g| vec![g]).collect();
    for &l in braid.letters() {
        for img in images.iter_mut() {
            *img = substitute(img, l);
        }
    }
    images
}
