//! Quotients by normal non-crossed sub-operads, kernels and images of the
//! projection to permutations, and the generation facts that make the
//! symmetric family minimal.

use rand::Rng;

use crate::perm::Permutation;

use super::family::{Element, Family, OperadError};
use super::laws::{law_rng, Bounds};
use super::report::{LawRecord, Report};

/// A normal sub-operad a family can be divided by. Only non-crossed
/// choices admit a quotient composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubOperad {
    /// The trivial sub-operad of identities.
    Trivial,
    /// The kernel of the projection to permutations.
    KernelPi,
    /// The whole family; non-crossed only.
    Whole,
}

/// Coset arithmetic for a family modulo a normal non-crossed sub-operad.
/// Cosets are carried by canonical representatives: the element itself,
/// the canonical lift of its permutation image, or the identity.
#[derive(Debug, Clone)]
pub struct QuotientOperad {
    pub family: Family,
    pub sub: SubOperad,
}

impl QuotientOperad {
    /// Rejects crossed sub-operads, which never inherit a composition.
    pub fn new(family: Family, sub: SubOperad) -> Result<Self, OperadError> {
        if sub == SubOperad::Whole && family.crossed() {
            return Err(OperadError::Precondition(format!(
                "cannot divide {} by itself: the sub-operad is crossed",
                family.tag()
            )));
        }
        Ok(QuotientOperad { family, sub })
    }

    /// Coset bookkeeping for dividing an operad the family acts on, such
    /// as its bar construction. Unlike [`QuotientOperad::new`] this admits
    /// any sub-operad: the action quotient exists even when the group
    /// quotient does not.
    pub fn for_action(family: Family, sub: SubOperad) -> Self {
        QuotientOperad { family, sub }
    }

    /// Canonical representative of the coset of `a`.
    pub fn representative(&self, a: &Element) -> Element {
        match self.sub {
            SubOperad::Trivial => self.family.canonical(a),
            SubOperad::Whole => self.family.identity(a.arity()),
            SubOperad::KernelPi => self.lift(&self.family.to_permutation(a)),
        }
    }

    /// The canonical section of the permutation image: the positive
    /// permutation-braid word for braid-like families, the permutation
    /// itself for the symmetric one.
    pub fn lift(&self, p: &Permutation) -> Element {
        if !self.family.crossed() {
            return self.family.identity(p.degree());
        }
        match &self.family {
            Family::Symmetric => Element::Perm(p.clone()),
            Family::Braid | Family::Ribbon => {
                let mut letters = Vec::new();
                // peel descents to spell a positive word for p
                let mut y = p.clone();
                loop {
                    let img = y.images();
                    let Some(i) = (1..y.degree()).find(|&i| img[i - 1] > img[i]) else {
                        break;
                    };
                    letters.push(crate::braid::Letter::positive(i));
                    let mut v = img.to_vec();
                    v.swap(i - 1, i);
                    y = Permutation::from_images(v).expect("bijection");
                }
                let word = crate::braid::BraidWord::new(p.degree(), letters)
                    .expect("indices in range");
                match &self.family {
                    Family::Braid => Element::Braid(word),
                    Family::Ribbon => Element::Ribbon(
                        crate::families::RibbonElement::new(word, vec![0; p.degree()])
                            .expect("framing count matches"),
                    ),
                    _ => unreachable!("matched above"),
                }
            }
            _ => unreachable!("crossed families are S, B, R"),
        }
    }

    /// Whether the sub-operad contains `a`.
    pub fn sub_contains(&self, a: &Element) -> bool {
        match self.sub {
            SubOperad::Trivial => self.family.is_element_identity(a),
            SubOperad::Whole => true,
            SubOperad::KernelPi => self.family.to_permutation(a).is_identity(),
        }
    }

    /// Samples an element of the sub-operad.
    pub fn sample_sub<R: Rng>(&self, arity: usize, size: usize, rng: &mut R) -> Element {
        match self.sub {
            SubOperad::Trivial => self.family.identity(arity),
            SubOperad::Whole => self.family.sample(arity, size, rng),
            SubOperad::KernelPi => match &self.family {
                Family::Braid => Family::PureBraid.sample(arity, size, rng),
                Family::Ribbon => {
                    let Element::Braid(b) = Family::PureBraid.sample(arity, size, rng) else {
                        unreachable!("pure braid family samples braid payloads");
                    };
                    let framings = (0..arity).map(|_| rng.gen_range(-2..=2)).collect();
                    Element::Ribbon(
                        crate::families::RibbonElement::new(b, framings)
                            .expect("framing count matches"),
                    )
                }
                Family::Symmetric => self.family.identity(arity),
                _ => self.family.sample(arity, size, rng),
            },
        }
    }

    /// Coset of `a`, as the canonicalized representative.
    pub fn coset(&self, a: &Element) -> Element {
        self.family.canonical(&self.representative(a))
    }

    /// Composition induced on cosets: compose representatives, take the
    /// coset again.
    pub fn gamma(&self, outer: &Element, inners: &[Element]) -> Result<Element, OperadError> {
        let composed = self.family.gamma(
            &self.representative(outer),
            &inners.iter().map(|b| self.representative(b)).collect::<Vec<_>>(),
        )?;
        Ok(self.coset(&composed))
    }
}

/// Checks that the induced composition is constant on cosets, and that
/// dividing the braid family by its pure kernel reproduces the symmetric
/// family arity by arity.
pub fn quotient_suite(q: &QuotientOperad, bounds: Bounds, seed: u64) -> Report {
    let mut report = Report::new();
    let fam = &q.family;
    let name = format!("{}-mod-{}", fam.tag(), match q.sub {
        SubOperad::Trivial => "J",
        SubOperad::KernelPi => "KerPi",
        SubOperad::Whole => "self",
    });

    // well-definedness: perturb every argument by sub-operad elements
    {
        let mut rng = law_rng(seed, "coset-gamma-well-defined", &name);
        let mut witness = None;
        let samples = bounds.samples.min(300);
        for _ in 0..samples {
            let k = rng.gen_range(1..=bounds.max_arity.min(3));
            let outer = fam.sample(k, bounds.size, &mut rng);
            let inners: Vec<Element> = (0..k)
                .map(|_| fam.sample(rng.gen_range(0..=2), bounds.size, &mut rng))
                .collect();
            let base = q.gamma(&outer, &inners).expect("arity-consistent inputs");
            // left-multiply every argument by a sub-operad element
            let outer2 = fam
                .multiply(&q.sample_sub(k, bounds.size, &mut rng), &outer)
                .expect("same arity");
            let inners2: Vec<Element> = inners
                .iter()
                .map(|b| {
                    fam.multiply(&q.sample_sub(b.arity(), bounds.size, &mut rng), b)
                        .expect("same arity")
                })
                .collect();
            let perturbed = q.gamma(&outer2, &inners2).expect("arity-consistent inputs");
            if !fam.equals(&base, &perturbed) {
                witness = Some(format!("outer={outer}; perturbed={outer2}"));
                break;
            }
        }
        report.push(match witness {
            None => LawRecord::pass("coset-gamma-well-defined", &name, samples),
            Some(w) => LawRecord::fail("coset-gamma-well-defined", &name, samples, w),
        });
    }

    // dividing by the kernel of pi gives the symmetric family
    if q.sub == SubOperad::KernelPi && fam.crossed() {
        let mut witness = None;
        let mut checked = 0usize;
        'outer: for k in 1..=4usize {
            for sigma in Permutation::all(k) {
                for widths in super::laws::compositions_exact(4, k) {
                    let mut tuples: Vec<Vec<Permutation>> = vec![widths
                        .iter()
                        .map(|&m| Permutation::identity(m))
                        .collect()];
                    // one non-identity tuple: reverse every block
                    tuples.push(widths.iter().map(|&m| Permutation::reversal(m)).collect());
                    for tuple in tuples {
                        checked += 1;
                        let outer = q.lift(&sigma);
                        let inners: Vec<Element> = tuple.iter().map(|t| q.lift(t)).collect();
                        let got = q.gamma(&outer, &inners).expect("arities consistent");
                        let expected =
                            sigma.block_compose(&tuple).expect("arities consistent");
                        if fam.to_permutation(&got) != expected {
                            witness = Some(format!("outer={sigma}; widths={widths:?}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        report.push(match witness {
            None => LawRecord::pass("quotient-matches-symmetric", &name, checked),
            Some(w) => LawRecord::fail("quotient-matches-symmetric", &name, checked, w),
        });
    }

    report
}

/// The projection morphism of a crossed family, with its kernel and image.
#[derive(Debug, Clone)]
pub struct PiMorphism {
    pub family: Family,
}

impl PiMorphism {
    pub fn kernel_contains(&self, a: &Element) -> bool {
        self.family.to_permutation(a).is_identity()
    }

    /// Generates the subgroup of `S_n` spanned by the images of `samples`
    /// drawn elements and checks it is everything.
    pub fn image_surjects<R: Rng>(
        &self,
        n: usize,
        samples: usize,
        size: usize,
        rng: &mut R,
    ) -> bool {
        let mut gens: Vec<Permutation> = Vec::new();
        for _ in 0..samples {
            let a = self.family.sample(n, size, rng);
            gens.push(self.family.to_permutation(&a));
        }
        subgroup_order(n, &gens) == (1..=n).product::<usize>()
    }
}

fn subgroup_order(n: usize, gens: &[Permutation]) -> usize {
    use std::collections::HashSet;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut frontier = vec![Permutation::identity(n)];
    seen.insert(Permutation::identity(n));
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.compose(h).expect("same degree");
            if seen.insert(gh.clone()) {
                frontier.push(gh);
            }
        }
    }
    seen.len()
}

/// Deletion data turning any non-identity permutation into the basic
/// transposition: choose an inversion and delete every other strand.
pub fn inversion_to_transposition(p: &Permutation) -> Option<Permutation> {
    let n = p.degree();
    for i in 0..n {
        for j in i + 1..n {
            if p.apply(i) > p.apply(j) {
                let mut blocks = vec![Permutation::identity(0); n];
                blocks[i] = Permutation::identity(1);
                blocks[j] = Permutation::identity(1);
                return Some(p.block_compose(&blocks).expect("block count matches"));
            }
        }
    }
    None
}

/// The three composites that produce every adjacent transposition from the
/// basic one: first slot of a pair, last slot of a pair, and the middle
/// slot of a triple.
pub fn transposition_recipe(n: usize, i: usize) -> Permutation {
    assert!(n >= 2 && i >= 1 && i < n);
    let swap = Permutation::transposition(2, 1, 2);
    let recipe = if i == 1 {
        Permutation::identity(2).block_compose(&[swap, Permutation::identity(n - 2)])
    } else if i == n - 1 {
        Permutation::identity(2).block_compose(&[Permutation::identity(n - 2), swap])
    } else {
        Permutation::identity(3).block_compose(&[
            Permutation::identity(i - 1),
            swap,
            Permutation::identity(n - i - 1),
        ])
    };
    recipe.expect("block count matches")
}

/// The minimality facts for the symmetric family: any non-identity element
/// reaches the basic transposition by deletion, and the recipes recover
/// every adjacent transposition up to degree 6.
pub fn symmetric_generation_report(bounds: Bounds, seed: u64) -> Report {
    let mut report = Report::new();

    {
        let mut rng = law_rng(seed, "deletion-reaches-swap", "S");
        let mut witness = None;
        let samples = bounds.samples;
        for _ in 0..samples {
            let n = rng.gen_range(2..=bounds.max_arity.max(2));
            let p = Permutation::random(n, &mut rng);
            if p.is_identity() {
                continue;
            }
            match inversion_to_transposition(&p) {
                Some(t) if t == Permutation::transposition(2, 1, 2) => {}
                _ => {
                    witness = Some(format!("{p}"));
                    break;
                }
            }
        }
        report.push(match witness {
            None => LawRecord::pass("deletion-reaches-swap", "S", samples),
            Some(w) => LawRecord::fail("deletion-reaches-swap", "S", samples, w),
        });
    }

    {
        let mut witness = None;
        let mut checked = 0usize;
        'outer: for n in 2..=6usize {
            for i in 1..n {
                checked += 1;
                if transposition_recipe(n, i) != Permutation::transposition(n, i, i + 1) {
                    witness = Some(format!("n={n} i={i}"));
                    break 'outer;
                }
            }
        }
        report.push(match witness {
            None => LawRecord::pass("transposition-recipes", "S", checked),
            Some(w) => LawRecord::fail("transposition-recipes", "S", checked, w),
        });
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn crossed_whole_quotient_rejected() {
        assert!(QuotientOperad::new(Family::Braid, SubOperad::Whole).is_err());
        assert!(QuotientOperad::new(Family::Symmetric, SubOperad::Whole).is_err());
        assert!(QuotientOperad::new(Family::PureBraid, SubOperad::Whole).is_ok());
        assert!(QuotientOperad::new(Family::Braid, SubOperad::KernelPi).is_ok());
    }

    #[test]
    fn trivial_quotient_is_identity_map() {
        let q = QuotientOperad::new(Family::Braid, SubOperad::Trivial).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = Family::Braid.sample(3, 6, &mut rng);
            assert!(Family::Braid.equals(&q.coset(&a), &a));
        }
    }

    #[test]
    fn braid_mod_pure_suite_passes() {
        let q = QuotientOperad::new(Family::Braid, SubOperad::KernelPi).unwrap();
        let bounds = Bounds { max_arity: 3, size: 5, samples: 80 };
        let report = quotient_suite(&q, bounds, 19);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn kernel_of_pi_is_purity() {
        let pi = PiMorphism { family: Family::Braid };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = Family::PureBraid.sample(4, 6, &mut rng);
            assert!(pi.kernel_contains(&a));
        }
        let s2: crate::braid::BraidWord = "braid(4): s2".parse().unwrap();
        assert!(!pi.kernel_contains(&Element::Braid(s2)));
    }

    #[test]
    fn pi_images_generate_symmetric_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for fam in [Family::Symmetric, Family::Braid, Family::Ribbon] {
            let pi = PiMorphism { family: fam };
            for n in 1..=5 {
                assert!(pi.image_surjects(n, 60, 8, &mut rng), "n={n}");
            }
        }
    }

    #[test]
    fn generation_report_passes() {
        let bounds = Bounds { max_arity: 6, size: 6, samples: 200 };
        let report = symmetric_generation_report(bounds, 23);
        assert!(report.all_passed(), "{report}");
    }
}
