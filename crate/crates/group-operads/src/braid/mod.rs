//! Exact braid-group arithmetic.
//!
//! Words are sequences of Artin generators `s1, s2, ...` with signs. The
//! word problem is solved by the left-greedy normal form in [`garside`],
//! cross-checked by the faithful action on a free group in [`artin`]. The
//! operadic composition is cabling: each strand of an outer braid is
//! replaced by a whole inner braid, and strands cabled by zero-strand
//! braids are deleted.

mod artin;
mod garside;
mod generate;

pub use artin::{artin_action, free_reduce, FreeWord};
pub use garside::BraidNormalForm;
pub use generate::{generate_bk, BkSet};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("generator index {index} out of range for {strands} strands")]
    BadIndex { index: usize, strands: usize },
    #[error("cabling expects {expected} inner braids, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("block cut {cut} out of range for {strands} strands")]
    BadCut { cut: usize, strands: usize },
    #[error("cannot parse braid: {0}")]
    Parse(String),
}

/// One letter `s_index` or its inverse, `1 <= index <= strands - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(index: usize) -> Self {
        Letter { index, inverse: false }
    }

    pub fn negative(index: usize) -> Self {
        Letter { index, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { index: self.index, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A braid as a word in the standard generators. The empty word is the
/// identity; `B_0` and `B_1` are trivial groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        for l in &letters {
            if l.index == 0 || l.index + 1 > strands {
                return Err(BraidError::BadIndex { index: l.index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The generator `s_index` in `B_strands`.
    pub fn generator(strands: usize, index: usize) -> Result<Self, BraidError> {
        Self::new(strands, vec![Letter::positive(index)])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        debug_assert!(l.index >= 1 && l.index < self.strands);
        self.letters.push(l);
    }

    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Free cancellation of adjacent `s_i s_i^-1` pairs. Cheap cleanup only;
    /// equality still goes through the normal form.
    pub fn free_reduced(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if let Some(&top) = out.last() {
                if top.index == l.index && top.inverse != l.inverse {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// The projection to the symmetric group, `s_i -> (i, i+1)`, a
    /// homomorphism for the left-to-right product convention.
    pub fn to_permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for l in &self.letters {
            let t = Permutation::transposition(self.strands, l.index, l.index + 1);
            p = p.compose(&t).expect("same degree");
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        self.to_permutation().is_identity()
    }

    /// Image under abelianization `B_n -> Z`: the sum of letter signs.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn normal_form(&self) -> BraidNormalForm {
        garside::normal_form(self)
    }

    pub fn equals(&self, other: &BraidWord) -> Result<bool, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        Ok(self.normal_form() == other.normal_form())
    }

    /// Rewrites the word into the canonical word of its normal form, so that
    /// structurally equal words and equal braids coincide.
    pub fn canonicalize(&self) -> BraidWord {
        self.normal_form().canonical_word()
    }

    /// Operadic composition: replaces the i-th strand of `self` by
    /// `inners[i]`. A zero-strand inner braid deletes its strand. Scanning
    /// the outer word left to right, every letter crosses the two adjacent
    /// cables of current widths `p, q` and emits `p*q` crossings of the
    /// letter's sign; the inner braids are emitted first at their starting
    /// offsets.
    pub fn cable(&self, inners: &[BraidWord]) -> Result<BraidWord, BraidError> {
        let k = self.strands;
        if inners.len() != k {
            return Err(BraidError::ArityMismatch { expected: k, got: inners.len() });
        }
        let mut sizes: Vec<usize> = inners.iter().map(|b| b.strands()).collect();
        let m: usize = sizes.iter().sum();
        let mut out = BraidWord::identity(m);

        let mut offset = 0;
        for inner in inners {
            for l in &inner.letters {
                out.push(Letter { index: l.index + offset, inverse: l.inverse });
            }
            offset += inner.strands();
        }

        for l in &self.letters {
            let i = l.index - 1; // slots i, i+1 cross
            let offset: usize = sizes[..i].iter().sum();
            let (p, q) = (sizes[i], sizes[i + 1]);
            if !l.inverse {
                emit_block_crossing(&mut out, offset, p, q, false);
            } else {
                // inverse of the positive crossing of the swapped widths
                emit_block_crossing(&mut out, offset, q, p, true);
            }
            sizes.swap(i, i + 1);
        }
        Ok(out)
    }

    /// Cables every strand by the trivial braid on `k` strands.
    pub fn degree_map(&self, k: usize) -> BraidWord {
        let inners = vec![BraidWord::identity(k); self.strands];
        self.cable(&inners).expect("arity matches strand count")
    }

    /// Substitutes `k` parallel copies of `self` into the trivial braid.
    pub fn power_map(&self, k: usize) -> BraidWord {
        let outer = BraidWord::identity(k);
        let inners = vec![self.clone(); k];
        outer.cable(&inners).expect("arity matches strand count")
    }

    /// The reflection automorphism: every generator goes to its inverse.
    pub fn reflection(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| l.inverted()).collect(),
        }
    }

    /// Artin action on the free group with one generator per strand.
    pub fn artin_action(&self) -> Vec<FreeWord> {
        artin::artin_action(self)
    }

    /// Whether the braid lies in the parabolic subgroup of braids split at
    /// `cut`: the image of `B_cut x B_{n-cut}`.
    ///
    /// Decided by the support of the Artin action: the first `cut` free
    /// generators must map to words over the first `cut` generators, and the
    /// rest to words over the remaining ones. Splitting braids always pass;
    /// the converse is validated against brute-force word search at desk
    /// scale in the test suite and relied on as a stated assumption.
    pub fn block_membership(&self, cut: usize) -> Result<bool, BraidError> {
        let n = self.strands;
        if cut == 0 || cut >= n {
            return Err(BraidError::BadCut { cut, strands: n });
        }
        let images = self.artin_action();
        for (idx, word) in images.iter().enumerate() {
            let low_side = idx < cut;
            for &g in word {
                let gen = g.unsigned_abs() as usize;
                if low_side != (gen <= cut) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Splits a block braid at `cut` into its two halves. Only meaningful
    /// when the underlying permutation preserves the cut; entries are taken
    /// from a normal-form word whose letters all stay on one side.
    pub fn split_at(&self, cut: usize) -> Result<(BraidWord, BraidWord), BraidError> {
        let n = self.strands;
        if cut == 0 || cut > n {
            return Err(BraidError::BadCut { cut, strands: n });
        }
        // Delete the complementary strands via cabling: left half keeps
        // strands 1..=cut, right half the rest.
        let mut left_inners = Vec::with_capacity(n);
        let mut right_inners = Vec::with_capacity(n);
        for i in 0..n {
            let keep_left = i < cut;
            left_inners.push(BraidWord::identity(if keep_left { 1 } else { 0 }));
            right_inners.push(BraidWord::identity(if keep_left { 0 } else { 1 }));
        }
        let left = self.cable(&left_inners)?;
        let right = self.cable(&right_inners)?;
        Ok((left, right))
    }

    /// Block-diagonal product: `self` on the first strands, `other` after.
    pub fn block_sum(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend(
            other
                .letters
                .iter()
                .map(|l| Letter { index: l.index + self.strands, inverse: l.inverse }),
        );
        BraidWord { strands: self.strands + other.strands, letters }
    }
}

/// Appends the word crossing a block of `p` strands over a block of `q`
/// strands starting after `offset`; `invert` emits the inverse word.
fn emit_block_crossing(out: &mut BraidWord, offset: usize, p: usize, q: usize, invert: bool) {
    if p == 0 || q == 0 {
        return;
    }
    let mut letters = Vec::with_capacity(p * q);
    for r in 0..p {
        for c in 0..q {
            letters.push(Letter::positive(offset + p - r + c));
        }
    }
    if invert {
        for l in letters.into_iter().rev() {
            out.push(l.inverted());
        }
    } else {
        for l in letters {
            out.push(l);
        }
    }
}

/// The standard pure braid generator: strand `s` loops around strand `r`
/// (`1 <= r < s <= n`), a conjugate of a squared generator.
pub fn pure_generator(n: usize, r: usize, s: usize) -> BraidWord {
    assert!(r >= 1 && r < s && s <= n);
    let mut letters = Vec::new();
    for i in (r + 1..s).rev() {
        letters.push(Letter::positive(i));
    }
    letters.push(Letter::positive(r));
    letters.push(Letter::positive(r));
    for i in r + 1..s {
        letters.push(Letter::negative(i));
    }
    BraidWord { strands: n, letters }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid({}):", self.strands)?;
        if self.letters.is_empty() {
            return write!(f, " e");
        }
        for l in &self.letters {
            write!(f, " s{}", l.index)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Accepts `braid(3): s1 s2^-1 s1` and `braid(3): e`; exponents like
    /// `s1^3` or `s2^-2` expand to repeated letters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let rest = s
            .strip_prefix("braid(")
            .ok_or_else(|| BraidError::Parse(format!("expected braid(...) in {s:?}")))?;
        let close = rest
            .find(')')
            .ok_or_else(|| BraidError::Parse("missing ')' after strand count".into()))?;
        let strands: usize = rest[..close]
            .trim()
            .parse()
            .map_err(|_| BraidError::Parse(format!("bad strand count {:?}", &rest[..close])))?;
        let body = rest[close + 1..]
            .trim_start()
            .strip_prefix(':')
            .ok_or_else(|| BraidError::Parse("expected ':' after braid(n)".into()))?;
        parse_braid_body(strands, body)
    }
}

/// Parses the letter list of a braid literal, without the `braid(n):` head.
pub fn parse_braid_body(strands: usize, body: &str) -> Result<BraidWord, BraidError> {
    let mut letters = Vec::new();
    for tok in body.split_whitespace() {
        if tok == "e" {
            continue;
        }
        let tok_body = tok
            .strip_prefix('s')
            .ok_or_else(|| BraidError::Parse(format!("bad letter {tok:?}")))?;
        let (idx_str, exp) = match tok_body.split_once('^') {
            Some((i, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| BraidError::Parse(format!("bad exponent in {tok:?}")))?;
                (i, exp)
            }
            None => (tok_body, 1),
        };
        let index: usize = idx_str
            .parse()
            .map_err(|_| BraidError::Parse(format!("bad letter {tok:?}")))?;
        if index == 0 || index + 1 > strands {
            return Err(BraidError::BadIndex { index, strands });
        }
        for _ in 0..exp.unsigned_abs() {
            letters.push(Letter { index, inverse: exp < 0 });
        }
    }
    BraidWord::new(strands, letters)
}
