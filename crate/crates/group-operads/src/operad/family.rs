//! One dispatch point for every concrete family: tagged elements with
//! uniform group operations, operadic composition, projection to
//! permutations, sampling and text forms.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::braid::{pure_generator, BraidError, BraidWord, Letter};
use crate::families::{AbelianPowerElement, FamilyError, RibbonElement};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("element belongs to {got}, expected {expected}")]
    FamilyMismatch { expected: String, got: String },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("composition expects {expected} inner elements, got {got}")]
    GammaArity { expected: usize, got: usize },
    #[error("index {index} out of range (1..={max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("block cut {cut} out of range for arity {arity}")]
    BadCut { cut: usize, arity: usize },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Tag and parameters of one concrete group-operad family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Every group trivial.
    Trivial,
    /// Symmetric groups under block composition.
    Symmetric,
    /// Braid groups under cabling.
    Braid,
    /// Pure braid groups, the kernel of the projection to permutations.
    PureBraid,
    /// Ribbon braid groups: braids with full-twist framings.
    Ribbon,
    /// Powers of one cyclic group; modulus 0 means the integers.
    AbelianPower { modulus: u64 },
}

/// A tagged element of one family at one arity.
///
/// Structural equality is only meaningful on canonicalized elements (braid
/// payloads rewritten to their normal-form word); semantic equality lives
/// in [`Family::equals`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Trivial(usize),
    Perm(Permutation),
    Braid(BraidWord),
    Ribbon(RibbonElement),
    Abelian(AbelianPowerElement),
}

impl Element {
    pub fn arity(&self) -> usize {
        match self {
            Element::Trivial(n) => *n,
            Element::Perm(p) => p.degree(),
            Element::Braid(b) => b.strands(),
            Element::Ribbon(r) => r.strands(),
            Element::Abelian(a) => a.arity(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Trivial(n) => write!(f, "triv({n})"),
            Element::Perm(p) => write!(f, "{p}"),
            Element::Braid(b) => write!(f, "{b}"),
            Element::Ribbon(r) => write!(f, "{r}"),
            Element::Abelian(a) => write!(f, "{a}"),
        }
    }
}

impl Family {
    /// Short tag used in reports and on the command line.
    pub fn tag(&self) -> String {
        match self {
            Family::Trivial => "J".into(),
            Family::Symmetric => "S".into(),
            Family::Braid => "B".into(),
            Family::PureBraid => "P".into(),
            Family::Ribbon => "R".into(),
            Family::AbelianPower { modulus } => format!("Z{modulus}"),
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        match tag {
            "J" => Some(Family::Trivial),
            "S" => Some(Family::Symmetric),
            "B" => Some(Family::Braid),
            "P" => Some(Family::PureBraid),
            "R" => Some(Family::Ribbon),
            _ => {
                let modulus = tag.strip_prefix('Z')?.parse().ok()?;
                Some(Family::AbelianPower { modulus })
            }
        }
    }

    /// Whether the projection to permutations is nontrivial.
    pub fn crossed(&self) -> bool {
        matches!(self, Family::Symmetric | Family::Braid | Family::Ribbon)
    }

    /// Checks that a payload belongs to this family (including purity for
    /// the pure braid family and modulus agreement for abelian powers).
    pub fn validate(&self, a: &Element) -> Result<(), OperadError> {
        let ok = match (self, a) {
            (Family::Trivial, Element::Trivial(_)) => true,
            (Family::Symmetric, Element::Perm(_)) => true,
            (Family::Braid, Element::Braid(_)) => true,
            (Family::PureBraid, Element::Braid(b)) => b.is_pure(),
            (Family::Ribbon, Element::Ribbon(_)) => true,
            (Family::AbelianPower { modulus }, Element::Abelian(x)) => x.modulus == *modulus,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(OperadError::FamilyMismatch {
                expected: self.tag(),
                got: format!("{a}"),
            })
        }
    }

    pub fn identity(&self, arity: usize) -> Element {
        match self {
            Family::Trivial => Element::Trivial(arity),
            Family::Symmetric => Element::Perm(Permutation::identity(arity)),
            Family::Braid | Family::PureBraid => Element::Braid(BraidWord::identity(arity)),
            Family::Ribbon => Element::Ribbon(RibbonElement::identity(arity)),
            Family::AbelianPower { modulus } => {
                Element::Abelian(AbelianPowerElement::identity(*modulus, arity))
            }
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, OperadError> {
        if a.arity() != b.arity() {
            return Err(OperadError::ArityMismatch(a.arity(), b.arity()));
        }
        match (a, b) {
            (Element::Trivial(n), Element::Trivial(_)) => Ok(Element::Trivial(*n)),
            (Element::Perm(x), Element::Perm(y)) => Ok(Element::Perm(x.compose(y)?)),
            (Element::Braid(x), Element::Braid(y)) => Ok(Element::Braid(x.multiply(y)?)),
            (Element::Ribbon(x), Element::Ribbon(y)) => Ok(Element::Ribbon(x.multiply(y)?)),
            (Element::Abelian(x), Element::Abelian(y)) => Ok(Element::Abelian(x.multiply(y)?)),
            _ => Err(OperadError::FamilyMismatch {
                expected: self.tag(),
                got: format!("{a} vs {b}"),
            }),
        }
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match a {
            Element::Trivial(n) => Element::Trivial(*n),
            Element::Perm(p) => Element::Perm(p.inverse()),
            Element::Braid(b) => Element::Braid(b.inverse()),
            Element::Ribbon(r) => Element::Ribbon(r.inverse()),
            Element::Abelian(x) => Element::Abelian(x.inverse()),
        }
    }

    /// Semantic equality: braid payloads compare by normal form.
    pub fn equals(&self, a: &Element, b: &Element) -> bool {
        match (a, b) {
            (Element::Trivial(n), Element::Trivial(m)) => n == m,
            (Element::Perm(x), Element::Perm(y)) => x == y,
            (Element::Braid(x), Element::Braid(y)) => x.equals(y).unwrap_or(false),
            (Element::Ribbon(x), Element::Ribbon(y)) => x.equals(y).unwrap_or(false),
            (Element::Abelian(x), Element::Abelian(y)) => x == y,
            _ => false,
        }
    }

    /// Rewrites the payload so that structural equality agrees with
    /// semantic equality.
    pub fn canonical(&self, a: &Element) -> Element {
        match a {
            Element::Braid(b) => Element::Braid(b.canonicalize()),
            Element::Ribbon(r) => Element::Ribbon(r.canonical()),
            other => other.clone(),
        }
    }

    pub fn is_element_identity(&self, a: &Element) -> bool {
        self.equals(a, &self.identity(a.arity()))
    }

    /// Operadic composition. An outer element of arity 0 with no inner
    /// elements passes through unchanged.
    pub fn gamma(&self, outer: &Element, inners: &[Element]) -> Result<Element, OperadError> {
        if inners.len() != outer.arity() {
            return Err(OperadError::GammaArity { expected: outer.arity(), got: inners.len() });
        }
        match outer {
            Element::Trivial(_) => {
                let m = inners.iter().map(|e| e.arity()).sum();
                for inner in inners {
                    self.validate(inner)?;
                }
                Ok(Element::Trivial(m))
            }
            Element::Perm(p) => {
                let blocks: Vec<Permutation> = inners
                    .iter()
                    .map(|e| match e {
                        Element::Perm(q) => Ok(q.clone()),
                        other => Err(OperadError::FamilyMismatch {
                            expected: self.tag(),
                            got: format!("{other}"),
                        }),
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Element::Perm(p.block_compose(&blocks)?))
            }
            Element::Braid(b) => {
                let blocks: Vec<BraidWord> = inners
                    .iter()
                    .map(|e| match e {
                        Element::Braid(w) => Ok(w.clone()),
                        other => Err(OperadError::FamilyMismatch {
                            expected: self.tag(),
                            got: format!("{other}"),
                        }),
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Element::Braid(b.cable(&blocks)?))
            }
            Element::Ribbon(r) => {
                let blocks: Vec<RibbonElement> = inners
                    .iter()
                    .map(|e| match e {
                        Element::Ribbon(x) => Ok(x.clone()),
                        other => Err(OperadError::FamilyMismatch {
                            expected: self.tag(),
                            got: format!("{other}"),
                        }),
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Element::Ribbon(r.gamma(&blocks)?))
            }
            Element::Abelian(x) => {
                let blocks: Vec<AbelianPowerElement> = inners
                    .iter()
                    .map(|e| match e {
                        Element::Abelian(y) => Ok(y.clone()),
                        other => Err(OperadError::FamilyMismatch {
                            expected: self.tag(),
                            got: format!("{other}"),
                        }),
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Element::Abelian(x.gamma(&blocks)?))
            }
        }
    }

    /// The projection to the symmetric groups; the identity map for the
    /// symmetric family, trivial exactly for the non-crossed families.
    pub fn to_permutation(&self, a: &Element) -> Permutation {
        match a {
            Element::Trivial(n) => Permutation::identity(*n),
            Element::Perm(p) => p.clone(),
            Element::Braid(b) => {
                if matches!(self, Family::PureBraid) {
                    Permutation::identity(b.strands())
                } else {
                    b.to_permutation()
                }
            }
            Element::Ribbon(r) => r.braid.to_permutation(),
            Element::Abelian(x) => Permutation::identity(x.arity()),
        }
    }

    /// Face map `1 <= i <= arity`: deletes the i-th strand by composing
    /// with a single empty slot.
    pub fn face(&self, a: &Element, i: usize) -> Result<Element, OperadError> {
        let n = a.arity();
        if i == 0 || i > n {
            return Err(OperadError::IndexOutOfRange { index: i, max: n });
        }
        let mut inners = vec![self.identity(1); n];
        inners[i - 1] = self.identity(0);
        self.gamma(a, &inners)
    }

    /// Degeneracy map `1 <= i <= arity`: doubles the i-th strand by
    /// composing with one two-strand identity slot.
    pub fn degeneracy(&self, a: &Element, i: usize) -> Result<Element, OperadError> {
        let n = a.arity();
        if i == 0 || i > n {
            return Err(OperadError::IndexOutOfRange { index: i, max: n });
        }
        let mut inners = vec![self.identity(1); n];
        inners[i - 1] = self.identity(2);
        self.gamma(a, &inners)
    }

    /// Whether the element lies in the block subgroup split at `cut`.
    /// `None` would mean the family carries no oracle; every family here
    /// carries one.
    pub fn block_membership(&self, a: &Element, cut: usize) -> Result<Option<bool>, OperadError> {
        let n = a.arity();
        if cut == 0 || cut >= n {
            return Err(OperadError::BadCut { cut, arity: n });
        }
        let ans = match a {
            Element::Trivial(_) => true,
            Element::Abelian(_) => true,
            Element::Perm(p) => (0..cut).all(|i| p.apply(i) < cut),
            Element::Braid(b) => b.block_membership(cut)?,
            Element::Ribbon(r) => r.braid.block_membership(cut)?,
        };
        Ok(Some(ans))
    }

    /// Splits a block element at `cut` into its two halves. The element
    /// must pass [`Family::block_membership`] first.
    pub fn block_split(&self, a: &Element, cut: usize) -> Result<(Element, Element), OperadError> {
        let n = a.arity();
        if cut == 0 || cut > n {
            return Err(OperadError::BadCut { cut, arity: n });
        }
        match a {
            Element::Trivial(_) => Ok((Element::Trivial(cut), Element::Trivial(n - cut))),
            Element::Perm(p) => {
                let left: Vec<usize> = (0..cut).map(|i| p.apply(i)).collect();
                let right: Vec<usize> = (cut..n).map(|i| p.apply(i) - cut).collect();
                Ok((
                    Element::Perm(Permutation::from_images(left)?),
                    Element::Perm(Permutation::from_images(right)?),
                ))
            }
            Element::Braid(b) => {
                let (l, r) = b.split_at(cut)?;
                Ok((Element::Braid(l), Element::Braid(r)))
            }
            Element::Ribbon(r) => {
                let (l, rr) = r.braid.split_at(cut)?;
                Ok((
                    Element::Ribbon(RibbonElement::new(l, r.framings[..cut].to_vec())?),
                    Element::Ribbon(RibbonElement::new(rr, r.framings[cut..].to_vec())?),
                ))
            }
            Element::Abelian(x) => Ok((
                Element::Abelian(AbelianPowerElement::new(x.modulus, x.entries[..cut].to_vec())),
                Element::Abelian(AbelianPowerElement::new(x.modulus, x.entries[cut..].to_vec())),
            )),
        }
    }

    /// Block-diagonal pairing `gamma(e_2; a, b)`.
    pub fn block_sum(&self, a: &Element, b: &Element) -> Result<Element, OperadError> {
        self.gamma(&self.identity(2), &[a.clone(), b.clone()])
    }

    /// Draws an element of the given arity; `size` bounds word length or
    /// entry magnitude. Deterministic for a fixed generator state.
    pub fn sample<R: Rng>(&self, arity: usize, size: usize, rng: &mut R) -> Element {
        match self {
            Family::Trivial => Element::Trivial(arity),
            Family::Symmetric => Element::Perm(Permutation::random(arity, rng)),
            Family::Braid => Element::Braid(random_braid(arity, size, rng)),
            Family::PureBraid => Element::Braid(random_pure_braid(arity, size, rng)),
            Family::Ribbon => {
                let braid = random_braid(arity, size, rng);
                let framings = (0..arity).map(|_| rng.gen_range(-2..=2)).collect();
                Element::Ribbon(RibbonElement::new(braid, framings).expect("lengths match"))
            }
            Family::AbelianPower { modulus } => {
                let hi = if *modulus == 0 { 4 } else { *modulus as i64 };
                let entries = (0..arity).map(|_| rng.gen_range(0..hi)).collect();
                Element::Abelian(AbelianPowerElement::new(*modulus, entries))
            }
        }
    }

    /// Same-arity shrink candidates for counterexample reporting, roughly
    /// in decreasing usefulness: the identity first, then smaller payloads.
    pub fn shrink(&self, a: &Element) -> Vec<Element> {
        let mut out = Vec::new();
        let e = self.identity(a.arity());
        if !self.equals(a, &e) {
            out.push(e);
        }
        match a {
            Element::Braid(b) => {
                for drop in 0..b.len() {
                    let letters: Vec<Letter> = b
                        .letters()
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != drop)
                        .map(|(_, &l)| l)
                        .collect();
                    out.push(Element::Braid(
                        BraidWord::new(b.strands(), letters).expect("indices unchanged"),
                    ));
                }
            }
            Element::Ribbon(r) => {
                for drop in 0..r.braid.len() {
                    let letters: Vec<Letter> = r
                        .braid
                        .letters()
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != drop)
                        .map(|(_, &l)| l)
                        .collect();
                    let braid = BraidWord::new(r.strands(), letters).expect("indices unchanged");
                    out.push(Element::Ribbon(
                        RibbonElement::new(braid, r.framings.clone()).expect("lengths match"),
                    ));
                }
                for i in 0..r.framings.len() {
                    if r.framings[i] != 0 {
                        let mut framings = r.framings.clone();
                        framings[i] = 0;
                        out.push(Element::Ribbon(
                            RibbonElement::new(r.braid.clone(), framings).expect("lengths match"),
                        ));
                    }
                }
            }
            Element::Perm(p) => {
                // cancel one inversion at a time
                let img = p.images();
                for i in 1..p.degree() {
                    if img[i - 1] > img[i] {
                        let mut v = img.to_vec();
                        v.swap(i - 1, i);
                        out.push(Element::Perm(Permutation::from_images(v).expect("bijection")));
                    }
                }
            }
            Element::Abelian(x) => {
                for i in 0..x.entries.len() {
                    if x.entries[i] != 0 {
                        let mut entries = x.entries.clone();
                        entries[i] = 0;
                        out.push(Element::Abelian(AbelianPowerElement::new(x.modulus, entries)));
                    }
                }
            }
            Element::Trivial(_) => {}
        }
        out
    }
}

fn random_braid<R: Rng>(strands: usize, max_len: usize, rng: &mut R) -> BraidWord {
    let mut letters = Vec::new();
    if strands >= 2 {
        // uniform length avoids parity artifacts at two strands
        let len = rng.gen_range(0..=max_len);
        for _ in 0..len {
            letters.push(Letter {
                index: rng.gen_range(1..strands),
                inverse: rng.gen_bool(0.5),
            });
        }
    }
    BraidWord::new(strands, letters).expect("indices in range")
}

fn random_pure_braid<R: Rng>(strands: usize, size: usize, rng: &mut R) -> BraidWord {
    let mut word = BraidWord::identity(strands);
    if strands < 2 {
        return word;
    }
    let count = (size / 3).max(1);
    for _ in 0..count {
        let r = rng.gen_range(1..strands);
        let s = rng.gen_range(r + 1..=strands);
        let gen = pure_generator(strands, r, s);
        let gen = if rng.gen_bool(0.5) { gen.inverse() } else { gen };
        word = word.multiply(&gen).expect("same strand count");
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_families() -> Vec<Family> {
        vec![
            Family::Trivial,
            Family::Symmetric,
            Family::Braid,
            Family::PureBraid,
            Family::Ribbon,
            Family::AbelianPower { modulus: 2 },
            Family::AbelianPower { modulus: 4 },
        ]
    }

    #[test]
    fn tags_round_trip() {
        for fam in all_families() {
            assert_eq!(Family::from_tag(&fam.tag()), Some(fam));
        }
    }

    #[test]
    fn samples_validate_and_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for fam in all_families() {
            for _ in 0..20 {
                let a = fam.sample(3, 6, &mut rng);
                fam.validate(&a).unwrap();
                let b = fam.sample(3, 6, &mut rng);
                let ab = fam.multiply(&a, &b).unwrap();
                fam.validate(&ab).unwrap();
                let inv = fam.inverse(&a);
                let e = fam.multiply(&a, &inv).unwrap();
                assert!(fam.is_element_identity(&e), "{fam:?}");
            }
        }
    }

    #[test]
    fn faces_and_degeneracies_change_arity() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for fam in all_families() {
            let a = fam.sample(3, 4, &mut rng);
            for i in 1..=3 {
                assert_eq!(fam.face(&a, i).unwrap().arity(), 2);
                assert_eq!(fam.degeneracy(&a, i).unwrap().arity(), 4);
                // deleting one of the doubled strands undoes the doubling
                let round = fam.face(&fam.degeneracy(&a, i).unwrap(), i).unwrap();
                assert!(fam.equals(&round, &a));
            }
            assert!(fam.face(&a, 4).is_err());
            assert!(fam.face(&a, 0).is_err());
        }
    }

    #[test]
    fn face_of_single_crossing_is_trivial() {
        let fam = Family::Braid;
        let b = Element::Braid("braid(2): s1".parse().unwrap());
        for i in 1..=2 {
            let d = fam.face(&b, i).unwrap();
            assert!(fam.is_element_identity(&d));
        }
    }

    #[test]
    fn degeneracy_of_unit_is_bigger_unit() {
        for fam in all_families() {
            let e1 = fam.identity(1);
            let s = fam.degeneracy(&e1, 1).unwrap();
            assert!(fam.equals(&s, &fam.identity(2)));
        }
    }

    #[test]
    fn projection_is_trivial_exactly_for_non_crossed() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for fam in all_families() {
            let mut saw_nontrivial = false;
            for _ in 0..40 {
                let a = fam.sample(4, 8, &mut rng);
                let p = fam.to_permutation(&a);
                if !p.is_identity() {
                    saw_nontrivial = true;
                }
                if !fam.crossed() {
                    assert!(p.is_identity(), "{fam:?} should be non-crossed");
                }
            }
            if fam.crossed() {
                assert!(saw_nontrivial, "{fam:?} should have nontrivial projections");
            }
        }
    }

    #[test]
    fn block_membership_and_split_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for fam in all_families() {
            for _ in 0..10 {
                let l = fam.sample(2, 4, &mut rng);
                let r = fam.sample(2, 4, &mut rng);
                let sum = fam.block_sum(&l, &r).unwrap();
                assert_eq!(fam.block_membership(&sum, 2).unwrap(), Some(true));
                let (l2, r2) = fam.block_split(&sum, 2).unwrap();
                assert!(fam.equals(&l2, &l));
                assert!(fam.equals(&r2, &r));
            }
        }
    }

    #[test]
    fn gamma_rejects_family_mixing() {
        let fam = Family::Symmetric;
        let p = Element::Perm(Permutation::identity(2));
        let b = Element::Braid(BraidWord::identity(1));
        let err = fam.gamma(&p, &[b, Element::Perm(Permutation::identity(1))]);
        assert!(matches!(err, Err(OperadError::FamilyMismatch { .. })));
    }
}
