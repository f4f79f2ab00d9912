//! The bar construction on a family of groups: level-l simplices are
//! (l+1)-tuples of same-arity elements, faces delete entries, degeneracies
//! duplicate them, and composition acts levelwise. Dividing by the
//! diagonal action of a subgroup leaves classes whose degree-1 spherical
//! part recovers the subgroup itself, which is the combinatorial account
//! of the fundamental group of the quotient.

use std::fmt;

use rand::Rng;

use crate::fingroup::{FiniteGroup, GroupError};
use crate::operad::laws::law_rng;
use crate::operad::quotient::{QuotientOperad, SubOperad};
use crate::operad::{Bounds, Element, Family, LawRecord, OperadError, Report};
use crate::perm::Permutation;

/// A level-l simplex: `l + 1` group elements of one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarSimplex {
    pub family: Family,
    pub entries: Vec<Element>,
}

impl BarSimplex {
    pub fn new(family: Family, entries: Vec<Element>) -> Result<Self, OperadError> {
        if entries.is_empty() {
            return Err(OperadError::Precondition("a simplex needs at least one entry".into()));
        }
        let arity = entries[0].arity();
        for e in &entries {
            family.validate(e)?;
            if e.arity() != arity {
                return Err(OperadError::ArityMismatch(arity, e.arity()));
            }
        }
        Ok(BarSimplex { family, entries })
    }

    pub fn base(family: Family, arity: usize, level: usize) -> Self {
        let e = family.identity(arity);
        BarSimplex { family, entries: vec![e; level + 1] }
    }

    pub fn arity(&self) -> usize {
        self.entries[0].arity()
    }

    pub fn level(&self) -> usize {
        self.entries.len() - 1
    }

    /// Face `d_i`, 0-based `0 <= i <= level`: deletes entry `i`.
    pub fn face(&self, i: usize) -> Result<BarSimplex, OperadError> {
        if self.level() == 0 || i > self.level() {
            return Err(OperadError::IndexOutOfRange { index: i, max: self.level() });
        }
        let mut entries = self.entries.clone();
        entries.remove(i);
        Ok(BarSimplex { family: self.family.clone(), entries })
    }

    /// Degeneracy `s_i`, 0-based `0 <= i <= level`: duplicates entry `i`.
    pub fn degeneracy(&self, i: usize) -> Result<BarSimplex, OperadError> {
        if i > self.level() {
            return Err(OperadError::IndexOutOfRange { index: i, max: self.level() });
        }
        let mut entries = self.entries.clone();
        entries.insert(i, entries[i].clone());
        Ok(BarSimplex { family: self.family.clone(), entries })
    }

    /// Levelwise operadic composition; all arguments must share the level.
    pub fn gamma(&self, inners: &[BarSimplex]) -> Result<BarSimplex, OperadError> {
        for inner in inners {
            if inner.level() != self.level() {
                return Err(OperadError::Precondition(format!(
                    "level mismatch: {} vs {}",
                    self.level(),
                    inner.level()
                )));
            }
        }
        let entries = (0..=self.level())
            .map(|l| {
                let row: Vec<Element> = inners.iter().map(|x| x.entries[l].clone()).collect();
                self.family.gamma(&self.entries[l], &row)
            })
            .collect::<Result<_, _>>()?;
        Ok(BarSimplex { family: self.family.clone(), entries })
    }

    /// The diagonal left translation by a group element of the same arity.
    pub fn act(&self, c: &Element) -> Result<BarSimplex, OperadError> {
        let entries = self
            .entries
            .iter()
            .map(|a| self.family.multiply(c, a))
            .collect::<Result<_, _>>()?;
        Ok(BarSimplex { family: self.family.clone(), entries })
    }

    pub fn equals(&self, other: &BarSimplex) -> bool {
        self.family == other.family
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| self.family.equals(a, b))
    }
}

impl fmt::Display for BarSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bar({},{})[", self.family.tag(), self.arity())?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// The class of a simplex under the diagonal action of a sub-operad's
/// group: a computable key for the coset of the head entry plus the
/// translation-invariant differences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetBarSimplex {
    pub family: Family,
    pub sub: SubOperad,
    arity: usize,
    /// key of the coset of `a_0`: the permutation image for the kernel
    /// quotient, the canonical element for the trivial one, nothing for
    /// the whole group
    pub key: Option<Element>,
    /// `a_0^{-1} a_j` for `j >= 1`, canonicalized
    pub diffs: Vec<Element>,
}

impl CosetBarSimplex {
    /// Canonicalizes a simplex: the class is `(key of a_0, a_0^{-1} a_j)`.
    pub fn canonicalize(sub: SubOperad, s: &BarSimplex) -> Result<Self, OperadError> {
        let fam = &s.family;
        let q = QuotientOperad::for_action(fam.clone(), sub);
        let a0_inv = fam.inverse(&s.entries[0]);
        let diffs = s.entries[1..]
            .iter()
            .map(|a| Ok(fam.canonical(&fam.multiply(&a0_inv, a)?)))
            .collect::<Result<_, OperadError>>()?;
        let key = match sub {
            SubOperad::Whole => None,
            _ => Some(q.coset(&s.entries[0])),
        };
        Ok(CosetBarSimplex { family: fam.clone(), sub, arity: s.arity(), key, diffs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn level(&self) -> usize {
        self.diffs.len()
    }

    /// A representative simplex of the class.
    pub fn representative(&self) -> BarSimplex {
        let fam = &self.family;
        let a0 = match &self.key {
            Some(k) => k.clone(),
            None => fam.identity(self.arity),
        };
        let mut entries = vec![a0.clone()];
        for d in &self.diffs {
            entries.push(fam.multiply(&a0, d).expect("same arity"));
        }
        BarSimplex { family: fam.clone(), entries }
    }

    pub fn face(&self, i: usize) -> Result<CosetBarSimplex, OperadError> {
        Self::canonicalize(self.sub, &self.representative().face(i)?)
    }

    pub fn degeneracy(&self, i: usize) -> Result<CosetBarSimplex, OperadError> {
        Self::canonicalize(self.sub, &self.representative().degeneracy(i)?)
    }

    /// Composition on classes through representatives.
    pub fn gamma(&self, inners: &[CosetBarSimplex]) -> Result<CosetBarSimplex, OperadError> {
        let rep = self.representative();
        let inner_reps: Vec<BarSimplex> =
            inners.iter().map(|c| c.representative()).collect();
        Self::canonicalize(self.sub, &rep.gamma(&inner_reps)?)
    }

    /// Spherical at level 1: both faces are the base vertex.
    pub fn is_spherical(&self) -> Result<bool, OperadError> {
        if self.level() != 1 {
            return Ok(false);
        }
        let arity = self.arity();
        let base = Self::canonicalize(self.sub, &BarSimplex::base(self.family.clone(), arity, 0))?;
        Ok(self.face(0)? == base && self.face(1)? == base)
    }

    /// The spherical class `(e, a)` of a subgroup element.
    pub fn spherical_of(
        family: &Family,
        sub: SubOperad,
        a: &Element,
    ) -> Result<CosetBarSimplex, OperadError> {
        let s = BarSimplex::new(family.clone(), vec![family.identity(a.arity()), a.clone()])?;
        Self::canonicalize(sub, &s)
    }
}

/// Checks the class arithmetic is well defined: translating every level
/// of a simplex by one subgroup element never changes the class of a
/// composition. This descent needs the sub-operad to be non-crossed;
/// translating by an element with a nontrivial permutation image
/// reorders the inner blocks instead.
pub fn bar_quotient_suite(
    family: &Family,
    sub: SubOperad,
    bounds: Bounds,
    seed: u64,
) -> Report {
    let mut report = Report::new();
    let name = format!("E{}-mod", family.tag());
    let q = QuotientOperad::for_action(family.clone(), sub);

    let mut rng = law_rng(seed, "bar-gamma-descends", &name);
    let samples = bounds.samples.min(300);
    let mut witness = None;
    for _ in 0..samples {
        let level = rng.gen_range(0..=2usize);
        let k = rng.gen_range(1..=bounds.max_arity.min(3));
        let outer = random_simplex(family, k, level, bounds.size, &mut rng);
        let inners: Vec<BarSimplex> = (0..k)
            .map(|_| random_simplex(family, rng.gen_range(0..=2), level, bounds.size, &mut rng))
            .collect();
        let plain = CosetBarSimplex::canonicalize(
            sub,
            &outer.gamma(&inners).expect("levels match"),
        )
        .expect("canonicalizes");
        // translate everything by subgroup elements
        let outer2 = outer
            .act(&q.sample_sub(k, bounds.size, &mut rng))
            .expect("same arity");
        let inners2: Vec<BarSimplex> = inners
            .iter()
            .map(|s| {
                s.act(&q.sample_sub(s.arity(), bounds.size, &mut rng))
                    .expect("same arity")
            })
            .collect();
        let translated = CosetBarSimplex::canonicalize(
            sub,
            &outer2.gamma(&inners2).expect("levels match"),
        )
        .expect("canonicalizes");
        if plain != translated {
            witness = Some(format!("outer={outer}"));
            break;
        }
    }
    report.push(match witness {
        None => LawRecord::pass("bar-gamma-descends", &name, samples),
        Some(w) => LawRecord::fail("bar-gamma-descends", &name, samples, w),
    });

    // canonicalization is idempotent and constant on orbits
    let mut rng = law_rng(seed, "bar-canonical-invariant", &name);
    let mut witness = None;
    for _ in 0..samples {
        let n = rng.gen_range(1..=bounds.max_arity.min(4));
        let s = random_simplex(family, n, rng.gen_range(0..=3), bounds.size, &mut rng);
        let c = CosetBarSimplex::canonicalize(sub, &s).expect("canonicalizes");
        let translated = s
            .act(&q.sample_sub(n, bounds.size, &mut rng))
            .expect("same arity");
        let c2 = CosetBarSimplex::canonicalize(sub, &translated).expect("canonicalizes");
        let c3 = CosetBarSimplex::canonicalize(sub, &c.representative()).expect("canonicalizes");
        if c != c2 || c != c3 {
            witness = Some(format!("{s}"));
            break;
        }
    }
    report.push(match witness {
        None => LawRecord::pass("bar-canonical-invariant", &name, samples),
        Some(w) => LawRecord::fail("bar-canonical-invariant", &name, samples, w),
    });

    report
}

fn random_simplex<R: Rng>(
    family: &Family,
    arity: usize,
    level: usize,
    size: usize,
    rng: &mut R,
) -> BarSimplex {
    let entries = (0..=level).map(|_| family.sample(arity, size, rng)).collect();
    BarSimplex { family: family.clone(), entries }
}

// ---------------------------------------------------------------------
// plain finite groups
// ---------------------------------------------------------------------

/// The class of a tuple in the bar construction of `g` divided by the
/// subgroup `h`: coset key of the head, then differences.
pub fn finite_bar_class(
    g: &FiniteGroup,
    h: &FiniteGroup,
    tuple: &[Permutation],
) -> Result<(usize, Vec<Permutation>), GroupError> {
    assert!(!tuple.is_empty());
    let key = g.coset_key(h, &tuple[0])?;
    let a0_inv = tuple[0].inverse();
    let diffs = tuple[1..]
        .iter()
        .map(|a| a0_inv.compose(a).expect("same degree"))
        .collect();
    Ok((key, diffs))
}

/// The spherical level-1 classes: both faces at the base vertex. Returns
/// the classes as their difference labels.
pub fn spherical_elements(
    g: &FiniteGroup,
    h: &FiniteGroup,
) -> Result<Vec<Permutation>, GroupError> {
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup(h.name.clone(), "different carrier".into()));
    }
    let base_key = g.coset_key(h, &g.identity())?;
    let mut seen = std::collections::BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            // d_1 (a, b) = (a), d_0 (a, b) = (b)
            if g.coset_key(h, a)? == base_key && g.coset_key(h, b)? == base_key {
                let (_, diffs) = finite_bar_class(g, h, &[a.clone(), b.clone()])?;
                seen.insert(diffs[0].clone());
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Verifies the natural bijection between a subgroup and the spherical
/// classes, including the composition rule read off 2-simplices: the
/// faces of the class of `(e, a, ab)` are the classes of `(e,a)`, `(e,b)`
/// and `(e,ab)`.
pub fn pi1_iso_check(g: &FiniteGroup, h: &FiniteGroup) -> Report {
    let mut report = Report::new();
    let name = format!("pi1(E{}/{})", g.name, h.name);

    let spherical = match spherical_elements(g, h) {
        Ok(v) => v,
        Err(e) => {
            report.push(LawRecord::fail("spherical-set", &name, 0, e.to_string()));
            return report;
        }
    };

    // the spherical labels are exactly the subgroup
    let mut subgroup: Vec<Permutation> = h.elements().to_vec();
    subgroup.sort();
    report.push(if spherical == subgroup {
        LawRecord::pass("spherical-set-is-subgroup", &name, g.order() * g.order())
    } else {
        LawRecord::fail(
            "spherical-set-is-subgroup",
            &name,
            g.order() * g.order(),
            format!("{} spherical vs {} subgroup elements", spherical.len(), subgroup.len()),
        )
    });

    // injectivity of a -> class(e, a)
    {
        let mut classes = std::collections::BTreeSet::new();
        for a in h.elements() {
            let class = finite_bar_class(g, h, &[g.identity(), a.clone()]).expect("members");
            classes.insert(class);
        }
        report.push(if classes.len() == h.order() {
            LawRecord::pass("spherical-map-injective", &name, h.order())
        } else {
            LawRecord::fail(
                "spherical-map-injective",
                &name,
                h.order(),
                format!("{} classes from {} elements", classes.len(), h.order()),
            )
        });
    }

    // the 2-simplex (e, a, ab) composes the two edge classes to the third
    {
        let mut witness = None;
        let mut checked = 0;
        'outer: for a in h.elements() {
            for b in h.elements() {
                checked += 1;
                let ab = a.compose(b).expect("same degree");
                let triangle = [g.identity(), a.clone(), ab.clone()];
                let d0 = finite_bar_class(g, h, &triangle[1..]).expect("members");
                let d1 =
                    finite_bar_class(g, h, &[triangle[0].clone(), triangle[2].clone()])
                        .expect("members");
                let d2 =
                    finite_bar_class(g, h, &[triangle[0].clone(), triangle[1].clone()])
                        .expect("members");
                let class_b =
                    finite_bar_class(g, h, &[g.identity(), b.clone()]).expect("members");
                let class_ab =
                    finite_bar_class(g, h, &[g.identity(), ab.clone()]).expect("members");
                let class_a =
                    finite_bar_class(g, h, &[g.identity(), a.clone()]).expect("members");
                if d0 != class_b || d1 != class_ab || d2 != class_a {
                    witness = Some(format!("a={a} b={b}"));
                    break 'outer;
                }
            }
        }
        report.push(match witness {
            None => LawRecord::pass("spherical-product-via-2-simplices", &name, checked),
            Some(w) => LawRecord::fail("spherical-product-via-2-simplices", &name, checked, w),
        });
    }

    report
}

/// For nested subgroups the spherical sets include one into the other the
/// same way the subgroups do.
pub fn pi1_naturality_check(
    g: &FiniteGroup,
    h: &FiniteGroup,
    bigger: &FiniteGroup,
) -> Report {
    let mut report = Report::new();
    let name = format!("pi1-naturality({} <= {} <= {})", h.name, bigger.name, g.name);
    if !h.is_subgroup_of(bigger) || !bigger.is_subgroup_of(g) {
        report.push(LawRecord::fail("pi1-naturality", &name, 0, "not a chain".into()));
        return report;
    }
    let small = spherical_elements(g, h).expect("subgroup chain");
    let large = spherical_elements(g, bigger).expect("subgroup chain");
    let included = small.iter().all(|a| large.contains(a));
    report.push(if included {
        LawRecord::pass("pi1-naturality", &name, small.len())
    } else {
        LawRecord::fail("pi1-naturality", &name, small.len(), "labels escape".into())
    });
    report
}

// ---------------------------------------------------------------------
// the operad-level realization
// ---------------------------------------------------------------------

/// Verifies that the spherical classes of the divided bar construction
/// recover the sub-operad: arity by arity as groups, compatibly with the
/// composition and the projection.
///
/// For the symmetric family everything is enumerated exactly; for the
/// braid family divided by its pure kernel the check is sampled, with the
/// spherical predicate characterized by purity of both entries.
pub fn operad_pi1_check(
    family: &Family,
    sub: SubOperad,
    max_arity: usize,
    bounds: Bounds,
    seed: u64,
) -> Report {
    let mut report = Report::new();
    let name = format!("pi1(E{}-bar)", family.tag());
    let q = QuotientOperad::for_action(family.clone(), sub);
    let mut rng = law_rng(seed, "operad-pi1", &name);

    // per-arity group isomorphism onto spherical classes
    let mut witness = None;
    let mut checked = 0usize;
    'arity: for n in 0..=max_arity {
        for _ in 0..bounds.samples.min(120) {
            checked += 1;
            let a = q.sample_sub(n, bounds.size, &mut rng);
            let b = q.sample_sub(n, bounds.size, &mut rng);
            let sa = CosetBarSimplex::spherical_of(family, sub, &a).expect("same arity");
            let sb = CosetBarSimplex::spherical_of(family, sub, &b).expect("same arity");
            if !sa.is_spherical().expect("level 1") {
                witness = Some(format!("class of (e, {a}) is not spherical"));
                break 'arity;
            }
            // injectivity on this pair
            let equal_elems = family.equals(&a, &b);
            if (sa == sb) != equal_elems {
                witness = Some(format!("classes of {a} and {b} collide"));
                break 'arity;
            }
            // the product through the 2-simplex matches the group product
            let ab = family.multiply(&a, &b).expect("same arity");
            let triangle = BarSimplex::new(
                family.clone(),
                vec![family.identity(n), a.clone(), ab.clone()],
            )
            .expect("equal arities");
            let class = |s: &BarSimplex| CosetBarSimplex::canonicalize(sub, s).expect("class");
            let d0 = class(&triangle.face(0).expect("level 2"));
            let sab = CosetBarSimplex::spherical_of(family, sub, &ab).expect("same arity");
            if d0 != sb || class(&triangle.face(1).expect("level 2")) != sab {
                witness = Some(format!("2-simplex of {a}, {b} mismatches"));
                break 'arity;
            }
            // projection compatibility
            let expected_pi = family.to_permutation(&a);
            let rep = sa.representative();
            if family.to_permutation(&rep.entries[1]) != expected_pi {
                witness = Some(format!("projection of class of {a} drifts"));
                break 'arity;
            }
        }
    }
    report.push(match witness {
        None => LawRecord::pass("spherical-group-iso", &name, checked),
        Some(w) => LawRecord::fail("spherical-group-iso", &name, checked, w),
    });

    // composition compatibility: gamma of spherical classes is the
    // spherical class of gamma
    let mut witness = None;
    let mut checked = 0usize;
    for _ in 0..bounds.samples.min(200) {
        checked += 1;
        let k = rng.gen_range(1..=max_arity.max(1));
        let a = q.sample_sub(k, bounds.size, &mut rng);
        let inners_elems: Vec<Element> = (0..k)
            .map(|_| q.sample_sub(rng.gen_range(0..=2), bounds.size, &mut rng))
            .collect();
        let expected = family
            .gamma(&a, &inners_elems)
            .expect("arity-consistent");
        let sa = CosetBarSimplex::spherical_of(family, sub, &a).expect("same arity");
        let inners: Vec<CosetBarSimplex> = inners_elems
            .iter()
            .map(|b| CosetBarSimplex::spherical_of(family, sub, b).expect("same arity"))
            .collect();
        let got = sa.gamma(&inners).expect("levels match");
        let want = CosetBarSimplex::spherical_of(family, sub, &expected).expect("same arity");
        if got != want {
            witness = Some(format!("gamma of spherical classes at outer {a}"));
            break;
        }
    }
    report.push(match witness {
        None => LawRecord::pass("spherical-gamma-compat", &name, checked),
        Some(w) => LawRecord::fail("spherical-gamma-compat", &name, checked, w),
    });

    // exact spherical enumeration for the symmetric family
    if matches!(family, Family::Symmetric) && sub == SubOperad::Whole {
        let mut witness = None;
        let mut checked = 0usize;
        'outer: for n in 0..=max_arity.min(4) {
            let perms = Permutation::all(n);
            let mut spherical = std::collections::BTreeSet::new();
            for a in &perms {
                for b in &perms {
                    checked += 1;
                    let s = BarSimplex::new(
                        family.clone(),
                        vec![Element::Perm(a.clone()), Element::Perm(b.clone())],
                    )
                    .expect("equal arities");
                    let c = CosetBarSimplex::canonicalize(sub, &s).expect("class");
                    if c.is_spherical().expect("level 1") {
                        spherical.insert(c.diffs[0].clone());
                    }
                }
            }
            // every class is spherical here and the labels are all of S_n
            if spherical.len() != perms.len() {
                witness = Some(format!(
                    "arity {n}: {} spherical labels vs {} group elements",
                    spherical.len(),
                    perms.len()
                ));
                break 'outer;
            }
        }
        report.push(match witness {
            None => LawRecord::pass("spherical-enumeration-exact", &name, checked),
            Some(w) => LawRecord::fail("spherical-enumeration-exact", &name, checked, w),
        });
    }

    // purity characterizes spherical classes over the kernel quotient
    if sub == SubOperad::KernelPi && family.crossed() {
        let mut witness = None;
        let mut checked = 0usize;
        for _ in 0..bounds.samples.min(300) {
            checked += 1;
            let n = rng.gen_range(1..=max_arity.max(1));
            let a = family.sample(n, bounds.size, &mut rng);
            let b = family.sample(n, bounds.size, &mut rng);
            let s = BarSimplex::new(family.clone(), vec![a.clone(), b.clone()])
                .expect("equal arities");
            let c = CosetBarSimplex::canonicalize(sub, &s).expect("class");
            let both_pure = family.to_permutation(&a).is_identity()
                && family.to_permutation(&b).is_identity();
            if c.is_spherical().expect("level 1") != both_pure {
                witness = Some(format!("({a}, {b})"));
                break;
            }
        }
        report.push(match witness {
            None => LawRecord::pass("spherical-iff-pure-entries", &name, checked),
            Some(w) => LawRecord::fail("spherical-iff-pure-entries", &name, checked, w),
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
    fn faces_and_degeneracies() {
        let fam = Family::Symmetric;
        let a = Element::Perm(Permutation::transposition(3, 1, 2));
        let b = Element::Perm(Permutation::transposition(3, 2, 3));
        let s = BarSimplex::new(fam.clone(), vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(s.level(), 1);
        // d_0 drops the head
        assert!(s.face(0).unwrap().equals(&BarSimplex::new(fam.clone(), vec![b.clone()]).unwrap()));
        assert!(s.face(1).unwrap().equals(&BarSimplex::new(fam.clone(), vec![a.clone()]).unwrap()));
        assert!(s.face(2).is_err());
        // s then d round-trips
        for i in 0..=1 {
            assert!(s.degeneracy(i).unwrap().face(i).unwrap().equals(&s));
        }
    }

    #[test]
    fn simplicial_identities_hold() {
        let fam = Family::Braid;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let s = random_simplex(&fam, 3, 3, 5, &mut rng);
            for j in 1..=s.level() {
                for i in 0..j {
                    let lhs = s.face(j).unwrap().face(i).unwrap();
                    let rhs = s.face(i).unwrap().face(j - 1).unwrap();
                    assert!(lhs.equals(&rhs));
                }
            }
        }
    }

    #[test]
    fn gamma_is_levelwise_and_commutes_with_projection() {
        let fam = Family::Braid;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let level = 2;
            let k = rng.gen_range(1..=3);
            let outer = random_simplex(&fam, k, level, 4, &mut rng);
            let inners: Vec<BarSimplex> = (0..k)
                .map(|_| random_simplex(&fam, rng.gen_range(0..=2), level, 4, &mut rng))
                .collect();
            let got = outer.gamma(&inners).unwrap();
            for l in 0..=level {
                let blocks: Vec<Permutation> = inners
                    .iter()
                    .map(|s| fam.to_permutation(&s.entries[l]))
                    .collect();
                let expected = fam
                    .to_permutation(&outer.entries[l])
                    .block_compose(&blocks)
                    .unwrap();
                assert_eq!(fam.to_permutation(&got.entries[l]), expected);
            }
            // identity simplices compose to identity simplices
            let e_out = BarSimplex::base(fam.clone(), k, level);
            let e_inn: Vec<BarSimplex> = inners
                .iter()
                .map(|s| BarSimplex::base(fam.clone(), s.arity(), level))
                .collect();
            let m = inners.iter().map(|s| s.arity()).sum();
            assert!(e_out.gamma(&e_inn).unwrap().equals(&BarSimplex::base(fam.clone(), m, level)));
        }
    }

    #[test]
    fn levelwise_action_is_equivariant() {
        // gamma(c.outer; c_i.inner_i) = gamma(c; c_1, ..., c_k) . gamma
        // of the inners reindexed by the inverse image of c
        let fam = Family::Braid;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..60 {
            let level = 1;
            let k = rng.gen_range(1..=3);
            let outer = random_simplex(&fam, k, level, 4, &mut rng);
            let inners: Vec<BarSimplex> = (0..k)
                .map(|_| random_simplex(&fam, rng.gen_range(0..=2), level, 4, &mut rng))
                .collect();
            let c = fam.sample(k, 4, &mut rng);
            let cs: Vec<Element> = inners
                .iter()
                .map(|s| fam.sample(s.arity(), 4, &mut rng))
                .collect();
            let lhs = {
                let moved_out = outer.act(&c).unwrap();
                let moved_in: Vec<BarSimplex> = inners
                    .iter()
                    .zip(&cs)
                    .map(|(s, ci)| s.act(ci).unwrap())
                    .collect();
                moved_out.gamma(&moved_in).unwrap()
            };
            let rhs = {
                let translator = fam.gamma(&c, &cs).unwrap();
                let inv = fam.to_permutation(&c).inverse();
                let reindexed: Vec<BarSimplex> =
                    (0..k).map(|i| inners[inv.apply(i)].clone()).collect();
                outer.gamma(&reindexed).unwrap().act(&translator).unwrap()
            };
            assert!(lhs.equals(&rhs));
        }
    }

    #[test]
    fn gamma_rejects_level_mismatch() {
        let fam = Family::Symmetric;
        let outer = BarSimplex::base(fam.clone(), 1, 1);
        let inner = BarSimplex::base(fam.clone(), 2, 2);
        assert!(outer.gamma(&[inner]).is_err());
    }

    #[test]
    fn quotient_suites_pass() {
        let bounds = Bounds { max_arity: 3, size: 4, samples: 60 };
        for (fam, sub) in [
            (Family::Symmetric, SubOperad::Trivial),
            (Family::Braid, SubOperad::KernelPi),
            (Family::Braid, SubOperad::Trivial),
            (Family::Ribbon, SubOperad::KernelPi),
            (Family::PureBraid, SubOperad::Whole),
            (Family::AbelianPower { modulus: 2 }, SubOperad::Whole),
        ] {
            let report = bar_quotient_suite(&fam, sub, bounds, 31);
            assert!(report.all_passed(), "{fam:?} {sub:?}:\n{report}");
        }
    }

    #[test]
    fn finite_pi1_small_cases() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = FiniteGroup::alternating(3);
        let spherical = spherical_elements(&s3, &a3).unwrap();
        assert_eq!(spherical.len(), 3);
        assert!(pi1_iso_check(&s3, &a3).all_passed());

        // trivial subgroup: only the degenerate base
        let triv = FiniteGroup::trivial(3);
        assert_eq!(spherical_elements(&s3, &triv).unwrap().len(), 1);
        assert!(pi1_iso_check(&s3, &triv).all_passed());

        // whole group: everything
        assert_eq!(spherical_elements(&s3, &s3).unwrap().len(), 6);
        assert!(pi1_iso_check(&s3, &s3).all_passed());
    }

    #[test]
    fn operad_pi1_symmetric_and_braid() {
        let bounds = Bounds { max_arity: 3, size: 4, samples: 60 };
        let report = operad_pi1_check(&Family::Symmetric, SubOperad::Whole, 3, bounds, 37);
        assert!(report.all_passed(), "{report}");
        let report = operad_pi1_check(&Family::Braid, SubOperad::KernelPi, 3, bounds, 37);
        assert!(report.all_passed(), "{report}");
        let report = operad_pi1_check(&Family::Braid, SubOperad::Trivial, 3, bounds, 37);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn naturality_along_inclusions() {
        let s4 = FiniteGroup::symmetric(4);
        let v4 = FiniteGroup::klein_four();
        let a4 = FiniteGroup::alternating(4);
        assert!(pi1_naturality_check(&s4, &v4, &a4).all_passed());
    }

    #[test]
    fn display_form() {
        let fam = Family::Symmetric;
        let s = BarSimplex::new(
            fam,
            vec![
                Element::Perm(Permutation::transposition(3, 1, 2)),
                Element::Perm(Permutation::identity(3)),
            ],
        )
        .unwrap();
        assert_eq!(s.to_string(), "bar(S,3)[perm[2,1,3], perm[1,2,3]]");
    }
}
