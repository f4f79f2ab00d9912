//! Payload types for the concrete families beyond permutations and plain
//! braids: ribbon braids (braids with integer framings), powers of a cyclic
//! abelian group, and signed permutations for the hyperoctahedral fixture.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::braid::{parse_braid_body, BraidError, BraidWord, Letter};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("framing count {framings} does not match {strands} strands")]
    FramingMismatch { framings: usize, strands: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// The full-twist word on `m` strands, `(s_1 ... s_{m-1})^m`, repeated
/// `twists` times (inverted when negative). Generates the center of the
/// braid group.
pub fn full_twist(m: usize, twists: i64) -> BraidWord {
    let mut word = BraidWord::identity(m);
    if m < 2 || twists == 0 {
        return word;
    }
    let positive = twists > 0;
    for _ in 0..twists.unsigned_abs() {
        if positive {
            for _ in 0..m {
                for i in 1..m {
                    word.push(Letter::positive(i));
                }
            }
        } else {
            for _ in 0..m {
                for i in (1..m).rev() {
                    word.push(Letter::negative(i));
                }
            }
        }
    }
    word
}

/// A ribbon braid: a braid together with one full-twist count per ribbon,
/// indexed by starting position. The group is the semidirect product of
/// the braid group acting on the framing lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonElement {
    pub braid: BraidWord,
    pub framings: Vec<i64>,
}

impl RibbonElement {
    pub fn new(braid: BraidWord, framings: Vec<i64>) -> Result<Self, FamilyError> {
        if framings.len() != braid.strands() {
            return Err(FamilyError::FramingMismatch {
                framings: framings.len(),
                strands: braid.strands(),
            });
        }
        Ok(RibbonElement { braid, framings })
    }

    pub fn identity(n: usize) -> Self {
        RibbonElement { braid: BraidWord::identity(n), framings: vec![0; n] }
    }

    pub fn strands(&self) -> usize {
        self.braid.strands()
    }

    /// Semidirect product: braids multiply, and the right factor's framings
    /// are pulled back along the left braid before adding, so framings stay
    /// indexed by starting position.
    pub fn multiply(&self, other: &RibbonElement) -> Result<RibbonElement, FamilyError> {
        if self.strands() != other.strands() {
            return Err(FamilyError::ArityMismatch(self.strands(), other.strands()));
        }
        let p = self.braid.to_permutation();
        let framings = self
            .framings
            .iter()
            .enumerate()
            .map(|(i, &t)| t + other.framings[p.apply(i)])
            .collect();
        Ok(RibbonElement { braid: self.braid.multiply(&other.braid)?, framings })
    }

    pub fn inverse(&self) -> RibbonElement {
        let p_inv = self.braid.to_permutation().inverse();
        let framings = (0..self.strands())
            .map(|i| -self.framings[p_inv.apply(i)])
            .collect();
        RibbonElement { braid: self.braid.inverse(), framings }
    }

    pub fn equals(&self, other: &RibbonElement) -> Result<bool, FamilyError> {
        Ok(self.framings == other.framings && self.braid.equals(&other.braid)?)
    }

    pub fn canonical(&self) -> RibbonElement {
        RibbonElement { braid: self.braid.canonicalize(), framings: self.framings.clone() }
    }

    /// Operadic composition: the braid part cables the outer braid with
    /// each inner braid premultiplied by its slot's full twist, and each
    /// inner framing block picks up the outer framing of its slot.
    /// Framings concatenate in starting-position order.
    pub fn gamma(&self, inners: &[RibbonElement]) -> Result<RibbonElement, FamilyError> {
        if inners.len() != self.strands() {
            return Err(FamilyError::ArityMismatch(self.strands(), inners.len()));
        }
        let mut cables = Vec::with_capacity(inners.len());
        let mut framings = Vec::new();
        for (i, inner) in inners.iter().enumerate() {
            let t = self.framings[i];
            let twist = full_twist(inner.strands(), t);
            cables.push(twist.multiply(&inner.braid)?);
            framings.extend(inner.framings.iter().map(|&u| u + t));
        }
        let braid = self.braid.cable(&cables)?;
        Ok(RibbonElement { braid, framings })
    }
}

impl fmt::Display for RibbonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ribbon({}):", self.strands())?;
        if self.braid.is_empty() {
            write!(f, " e")?;
        } else {
            for l in self.braid.letters() {
                write!(f, " s{}", l.index)?;
                if l.inverse {
                    write!(f, "^-1")?;
                }
            }
        }
        write!(f, " | t=(")?;
        for (i, t) in self.framings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for RibbonElement {
    type Err = FamilyError;

    /// Accepts `ribbon(2): s1 | t=(1,0)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let rest = s
            .strip_prefix("ribbon(")
            .ok_or_else(|| FamilyError::Parse(format!("expected ribbon(...) in {s:?}")))?;
        let close = rest
            .find(')')
            .ok_or_else(|| FamilyError::Parse("missing ')' after strand count".into()))?;
        let strands: usize = rest[..close]
            .trim()
            .parse()
            .map_err(|_| FamilyError::Parse("bad strand count".into()))?;
        let body = rest[close + 1..]
            .trim_start()
            .strip_prefix(':')
            .ok_or_else(|| FamilyError::Parse("expected ':' after ribbon(n)".into()))?;
        let (word_part, framing_part) = body
            .split_once('|')
            .ok_or_else(|| FamilyError::Parse("expected '| t=(...)' framings".into()))?;
        let braid = parse_braid_body(strands, word_part)?;
        let framing_part = framing_part.trim();
        let tuple = framing_part
            .strip_prefix("t=(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| FamilyError::Parse("expected t=(...)".into()))?;
        let framings: Vec<i64> = if tuple.trim().is_empty() {
            Vec::new()
        } else {
            tuple
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<i64>()
                        .map_err(|_| FamilyError::Parse(format!("bad framing {tok:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        RibbonElement::new(braid, framings)
    }
}

/// An element of the n-th power of a cyclic group, the carrier of the
/// non-crossed abelian-power operad. Modulus 0 means the integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianPowerElement {
    pub modulus: u64,
    pub entries: Vec<i64>,
}

impl AbelianPowerElement {
    fn reduce(modulus: u64, v: i64) -> i64 {
        if modulus == 0 {
            v
        } else {
            v.rem_euclid(modulus as i64)
        }
    }

    pub fn new(modulus: u64, entries: Vec<i64>) -> Self {
        let entries = entries
            .into_iter()
            .map(|v| Self::reduce(modulus, v))
            .collect();
        AbelianPowerElement { modulus, entries }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        AbelianPowerElement { modulus, entries: vec![0; n] }
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn multiply(&self, other: &AbelianPowerElement) -> Result<Self, FamilyError> {
        if self.modulus != other.modulus {
            return Err(FamilyError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.arity() != other.arity() {
            return Err(FamilyError::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(AbelianPowerElement::new(
            self.modulus,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn inverse(&self) -> Self {
        AbelianPowerElement::new(self.modulus, self.entries.iter().map(|v| -v).collect())
    }

    /// Entry at block-i position j of the composite is `a_i + b_{ij}`,
    /// blocks kept in order.
    pub fn gamma(&self, inners: &[AbelianPowerElement]) -> Result<Self, FamilyError> {
        if inners.len() != self.arity() {
            return Err(FamilyError::ArityMismatch(self.arity(), inners.len()));
        }
        let mut entries = Vec::new();
        for (i, inner) in inners.iter().enumerate() {
            if inner.modulus != self.modulus {
                return Err(FamilyError::ModulusMismatch(self.modulus, inner.modulus));
            }
            entries.extend(inner.entries.iter().map(|&b| self.entries[i] + b));
        }
        Ok(AbelianPowerElement::new(self.modulus, entries))
    }
}

impl fmt::Display for AbelianPowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zmod({})^{}: (", self.modulus, self.arity())?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for AbelianPowerElement {
    type Err = FamilyError;

    /// Accepts `zmod(2)^3: (1,0,1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let rest = s
            .strip_prefix("zmod(")
            .ok_or_else(|| FamilyError::Parse(format!("expected zmod(...) in {s:?}")))?;
        let close = rest
            .find(')')
            .ok_or_else(|| FamilyError::Parse("missing ')' after modulus".into()))?;
        let modulus: u64 = rest[..close]
            .trim()
            .parse()
            .map_err(|_| FamilyError::Parse("bad modulus".into()))?;
        let rest = rest[close + 1..].trim_start();
        let rest = rest
            .strip_prefix('^')
            .ok_or_else(|| FamilyError::Parse("expected ^arity".into()))?;
        let colon = rest
            .find(':')
            .ok_or_else(|| FamilyError::Parse("expected ':' after arity".into()))?;
        let arity: usize = rest[..colon]
            .trim()
            .parse()
            .map_err(|_| FamilyError::Parse("bad arity".into()))?;
        let tuple = rest[colon + 1..].trim();
        let tuple = tuple
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| FamilyError::Parse("expected (entries)".into()))?;
        let entries: Vec<i64> = if tuple.trim().is_empty() {
            Vec::new()
        } else {
            tuple
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<i64>()
                        .map_err(|_| FamilyError::Parse(format!("bad entry {tok:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        if entries.len() != arity {
            return Err(FamilyError::ArityMismatch(arity, entries.len()));
        }
        Ok(AbelianPowerElement::new(modulus, entries))
    }
}

/// A signed permutation: an element of the hyperoctahedral group, a sign
/// per strand (indexed by starting position) over an underlying
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub signs: Vec<bool>,
    pub perm: Permutation,
}

impl SignedPerm {
    pub fn new(signs: Vec<bool>, perm: Permutation) -> Result<Self, FamilyError> {
        if signs.len() != perm.degree() {
            return Err(FamilyError::ArityMismatch(signs.len(), perm.degree()));
        }
        Ok(SignedPerm { signs, perm })
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm { signs: vec![false; n], perm: Permutation::identity(n) }
    }

    pub fn arity(&self) -> usize {
        self.signs.len()
    }

    /// The half twist: order reversal with every sign flipped.
    pub fn half_twist(n: usize) -> Self {
        SignedPerm { signs: vec![true; n], perm: Permutation::reversal(n) }
    }

    /// All `2^n n!` signed permutations, ordered by sign weight, then sign
    /// bits, then underlying permutation.
    pub fn enumerate(n: usize) -> Vec<SignedPerm> {
        let mut out = Vec::new();
        for bits in 0u32..(1 << n) {
            let signs: Vec<bool> = (0..n).map(|i| (bits >> i) & 1 == 1).collect();
            for perm in Permutation::all(n) {
                out.push(SignedPerm { signs: signs.clone(), perm });
            }
        }
        out.sort_by_key(|s| {
            (
                s.signs.iter().filter(|&&b| b).count(),
                s.signs.clone(),
                s.perm.inversions(),
                s.perm.clone(),
            )
        });
        out
    }

    pub fn multiply(&self, other: &SignedPerm) -> Result<SignedPerm, FamilyError> {
        if self.arity() != other.arity() {
            return Err(FamilyError::ArityMismatch(self.arity(), other.arity()));
        }
        let signs = self
            .signs
            .iter()
            .enumerate()
            .map(|(i, &s)| s ^ other.signs[self.perm.apply(i)])
            .collect();
        Ok(SignedPerm { signs, perm: self.perm.compose(&other.perm).expect("same degree") })
    }

    pub fn inverse(&self) -> SignedPerm {
        let inv = self.perm.inverse();
        let signs = (0..self.arity()).map(|i| self.signs[inv.apply(i)]).collect();
        SignedPerm { signs, perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.signs.iter().all(|&s| !s)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "signed(")?;
        for &s in &self.signs {
            write!(f, "{}", if s { '1' } else { '0' })?;
        }
        write!(f, "; {})", self.perm)
    }
}

/// The two candidate extensions of "the half twist on one strand" to an
/// operadic composition on signed permutations. `Pre` multiplies each
/// slot's half twist before the inner element, `Post` after. Neither
/// satisfies the crossed-homomorphism law at arity 3 and beyond, because
/// the half twist is not central there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistSide {
    Pre,
    Post,
}

/// Candidate composition on signed permutations: the sign of each outer
/// strand inserts a half twist of that slot's whole block, on the chosen
/// side; the underlying permutations compose blockwise and the inner signs
/// ride along in starting-position order.
pub fn hyperoct_candidate_gamma(
    side: TwistSide,
    outer: &SignedPerm,
    inners: &[SignedPerm],
) -> Result<SignedPerm, FamilyError> {
    if inners.len() != outer.arity() {
        return Err(FamilyError::ArityMismatch(outer.arity(), inners.len()));
    }
    let mut twisted = Vec::with_capacity(inners.len());
    for (i, inner) in inners.iter().enumerate() {
        if outer.signs[i] {
            let h = SignedPerm::half_twist(inner.arity());
            twisted.push(match side {
                TwistSide::Pre => h.multiply(inner)?,
                TwistSide::Post => inner.multiply(&h)?,
            });
        } else {
            twisted.push(inner.clone());
        }
    }
    let blocks: Vec<Permutation> = twisted.iter().map(|t| t.perm.clone()).collect();
    let perm = outer
        .perm
        .block_compose(&blocks)
        .map_err(|_| FamilyError::ArityMismatch(outer.arity(), inners.len()))?;
    let mut signs = Vec::new();
    for t in &twisted {
        signs.extend_from_slice(&t.signs);
    }
    Ok(SignedPerm { signs, perm })
}

/// Deterministic search for the smallest exchange-law violation of a
/// candidate composition, with the composite at the given inner arity:
/// outer pairs range over the arity-1 group, inner pairs over the full
/// hyperoctahedral group in a fixed small-to-large order.
pub fn hyperoct_candidate_crossed_violation(side: TwistSide, inner_arity: usize) -> Option<String> {
    let outer_elems = SignedPerm::enumerate(1);
    let inner_elems = SignedPerm::enumerate(inner_arity);
    for a in &outer_elems {
        for a2 in &outer_elems {
            for b in &inner_elems {
                for b2 in &inner_elems {
                    let aa2 = a.multiply(a2).expect("arity 1");
                    let bb2 = b.multiply(b2).expect("same arity");
                    let lhs = hyperoct_candidate_gamma(side, &aa2, std::slice::from_ref(&bb2))
                        .expect("one slot");
                    // outer arity 1: reindexing by the image is trivial
                    let first = hyperoct_candidate_gamma(side, a, std::slice::from_ref(b))
                        .expect("one slot");
                    let second = hyperoct_candidate_gamma(side, a2, std::slice::from_ref(b2))
                        .expect("one slot");
                    let rhs = first.multiply(&second).expect("same arity");
                    if lhs != rhs {
                        return Some(format!("a={a} a'={a2} b={b} b'={b2}"));
                    }
                }
            }
        }
    }
    None
}

/// Where the two candidate compositions first disagree on `gamma(tau; b)`
/// at the given arity: the half twist fails to be central there.
pub fn hyperoct_candidates_disagreement(arity: usize) -> Option<String> {
    let tau = SignedPerm { signs: vec![true], perm: Permutation::identity(1) };
    for b in SignedPerm::enumerate(arity) {
        let pre = hyperoct_candidate_gamma(TwistSide::Pre, &tau, std::slice::from_ref(&b))
            .expect("one slot");
        let post = hyperoct_candidate_gamma(TwistSide::Post, &tau, std::slice::from_ref(&b))
            .expect("one slot");
        if pre != post {
            return Some(format!("b={b}: pre={pre} post={post}"));
        }
    }
    None
}
