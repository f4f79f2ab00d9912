//! Crossed simplicial structure: faces and degeneracies derived from the
//! operad composition, wreath products, and the hyperoctahedral sequence.
//!
//! Faces and degeneracies here use 1-based labels `d_i: G_{n+1} -> G_n`
//! for `1 <= i <= n+1` and `s_i: G_n -> G_{n+1}` for `1 <= i <= n`. The
//! crossed laws twist products by permutation images:
//! `d_i(ab) = (d_i a)(d_{a(i)} b)` and `s_i(ab) = (s_i a)(s_{a(i)} b)`.

use std::fmt;

use rand::Rng;

use crate::families::SignedPerm;
use crate::perm::Permutation;

use super::family::{Element, Family, OperadError};
use super::laws::{law_rng, run_law, Bounds};
use super::report::{LawRecord, Report};

/// A sequence of groups with faces, degeneracies and a projection to the
/// symmetric groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaGroup {
    /// A group-operad family with `d_i`/`s_i` built from its composition.
    Operad(Family),
    /// The wreath product by one cyclic group (modulus 0 is the integers):
    /// coordinates ride along, faces delete and degeneracies duplicate the
    /// i-th coordinate. This is the plain product simplicial structure.
    Wreath { modulus: u64, base: Box<DeltaGroup> },
    /// The hyperoctahedral sequence of signed permutations, with the
    /// duplicated strand of a degeneracy swapping its two copies whenever
    /// the strand carries the reflection.
    Hyperoctahedral,
}

/// An element of a [`DeltaGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeltaElem {
    Op(Element),
    Wreath { coords: Vec<i64>, inner: Box<DeltaElem> },
    Signed(SignedPerm),
}

impl fmt::Display for DeltaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaElem::Op(e) => write!(f, "{e}"),
            DeltaElem::Wreath { coords, inner } => {
                write!(f, "(")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "; {inner})")
            }
            DeltaElem::Signed(s) => write!(f, "{s}"),
        }
    }
}

impl DeltaGroup {
    pub fn wreath(modulus: u64, base: DeltaGroup) -> DeltaGroup {
        DeltaGroup::Wreath { modulus, base: Box::new(base) }
    }

    pub fn name(&self) -> String {
        match self {
            DeltaGroup::Operad(f) => f.tag(),
            DeltaGroup::Wreath { modulus, base } => format!("Z{}wr{}", modulus, base.name()),
            DeltaGroup::Hyperoctahedral => "hyperoct".into(),
        }
    }

    fn reduce(modulus: u64, v: i64) -> i64 {
        if modulus == 0 {
            v
        } else {
            v.rem_euclid(modulus as i64)
        }
    }

    pub fn arity(&self, a: &DeltaElem) -> usize {
        match a {
            DeltaElem::Op(e) => e.arity(),
            DeltaElem::Wreath { coords, .. } => coords.len(),
            DeltaElem::Signed(s) => s.arity(),
        }
    }

    pub fn identity(&self, n: usize) -> DeltaElem {
        match self {
            DeltaGroup::Operad(f) => DeltaElem::Op(f.identity(n)),
            DeltaGroup::Wreath { base, .. } => DeltaElem::Wreath {
                coords: vec![0; n],
                inner: Box::new(base.identity(n)),
            },
            DeltaGroup::Hyperoctahedral => DeltaElem::Signed(SignedPerm::identity(n)),
        }
    }

    pub fn pi(&self, a: &DeltaElem) -> Permutation {
        match (self, a) {
            (DeltaGroup::Operad(f), DeltaElem::Op(e)) => f.to_permutation(e),
            (DeltaGroup::Wreath { base, .. }, DeltaElem::Wreath { inner, .. }) => base.pi(inner),
            (DeltaGroup::Hyperoctahedral, DeltaElem::Signed(s)) => s.perm.clone(),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn multiply(&self, a: &DeltaElem, b: &DeltaElem) -> Result<DeltaElem, OperadError> {
        match (self, a, b) {
            (DeltaGroup::Operad(f), DeltaElem::Op(x), DeltaElem::Op(y)) => {
                Ok(DeltaElem::Op(f.multiply(x, y)?))
            }
            (
                DeltaGroup::Wreath { modulus, base },
                DeltaElem::Wreath { coords: ca, inner: ia },
                DeltaElem::Wreath { coords: cb, inner: ib },
            ) => {
                if ca.len() != cb.len() {
                    return Err(OperadError::ArityMismatch(ca.len(), cb.len()));
                }
                let p = base.pi(ia);
                let coords = ca
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| Self::reduce(*modulus, c + cb[p.apply(i)]))
                    .collect();
                Ok(DeltaElem::Wreath {
                    coords,
                    inner: Box::new(base.multiply(ia, ib)?),
                })
            }
            (DeltaGroup::Hyperoctahedral, DeltaElem::Signed(x), DeltaElem::Signed(y)) => {
                Ok(DeltaElem::Signed(x.multiply(y)?))
            }
            _ => Err(OperadError::FamilyMismatch {
                expected: self.name(),
                got: format!("{a} / {b}"),
            }),
        }
    }

    pub fn inverse(&self, a: &DeltaElem) -> DeltaElem {
        match (self, a) {
            (DeltaGroup::Operad(f), DeltaElem::Op(x)) => DeltaElem::Op(f.inverse(x)),
            (DeltaGroup::Wreath { modulus, base }, DeltaElem::Wreath { coords, inner }) => {
                let p_inv = base.pi(inner).inverse();
                let inv_coords = (0..coords.len())
                    .map(|i| Self::reduce(*modulus, -coords[p_inv.apply(i)]))
                    .collect();
                DeltaElem::Wreath {
                    coords: inv_coords,
                    inner: Box::new(base.inverse(inner)),
                }
            }
            (DeltaGroup::Hyperoctahedral, DeltaElem::Signed(s)) => DeltaElem::Signed(s.inverse()),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn equals(&self, a: &DeltaElem, b: &DeltaElem) -> bool {
        match (self, a, b) {
            (DeltaGroup::Operad(f), DeltaElem::Op(x), DeltaElem::Op(y)) => f.equals(x, y),
            (
                DeltaGroup::Wreath { base, .. },
                DeltaElem::Wreath { coords: ca, inner: ia },
                DeltaElem::Wreath { coords: cb, inner: ib },
            ) => ca == cb && base.equals(ia, ib),
            (DeltaGroup::Hyperoctahedral, DeltaElem::Signed(x), DeltaElem::Signed(y)) => x == y,
            _ => false,
        }
    }

    /// Face `d_i`, `1 <= i <= arity`.
    pub fn face(&self, a: &DeltaElem, i: usize) -> Result<DeltaElem, OperadError> {
        let n = self.arity(a);
        if i == 0 || i > n {
            return Err(OperadError::IndexOutOfRange { index: i, max: n });
        }
        match (self, a) {
            (DeltaGroup::Operad(f), DeltaElem::Op(x)) => Ok(DeltaElem::Op(f.face(x, i)?)),
            (DeltaGroup::Wreath { base, .. }, DeltaElem::Wreath { coords, inner }) => {
                let mut coords = coords.clone();
                coords.remove(i - 1);
                Ok(DeltaElem::Wreath {
                    coords,
                    inner: Box::new(base.face(inner, i)?),
                })
            }
            (DeltaGroup::Hyperoctahedral, DeltaElem::Signed(s)) => {
                let mut signs = s.signs.clone();
                signs.remove(i - 1);
                let perm = s.perm.delete_point(i - 1);
                Ok(DeltaElem::Signed(SignedPerm::new(signs, perm)?))
            }
            _ => Err(OperadError::FamilyMismatch { expected: self.name(), got: format!("{a}") }),
        }
    }

    /// Degeneracy `s_i`, `1 <= i <= arity`.
    pub fn degeneracy(&self, a: &DeltaElem, i: usize) -> Result<DeltaElem, OperadError> {
        let n = self.arity(a);
        if i == 0 || i > n {
            return Err(OperadError::IndexOutOfRange { index: i, max: n });
        }
        match (self, a) {
            (DeltaGroup::Operad(f), DeltaElem::Op(x)) => Ok(DeltaElem::Op(f.degeneracy(x, i)?)),
            (DeltaGroup::Wreath { base, .. }, DeltaElem::Wreath { coords, inner }) => {
                let mut coords = coords.clone();
                coords.insert(i - 1, coords[i - 1]);
                Ok(DeltaElem::Wreath {
                    coords,
                    inner: Box::new(base.degeneracy(inner, i)?),
                })
            }
            (DeltaGroup::Hyperoctahedral, DeltaElem::Signed(s)) => {
                let mut signs = s.signs.clone();
                signs.insert(i - 1, signs[i - 1]);
                // a reflected strand swaps its two copies when doubled
                let perm = s.perm.insert_doubled(i - 1, s.signs[i - 1]);
                Ok(DeltaElem::Signed(SignedPerm::new(signs, perm)?))
            }
            _ => Err(OperadError::FamilyMismatch { expected: self.name(), got: format!("{a}") }),
        }
    }

    pub fn sample<R: Rng>(&self, arity: usize, size: usize, rng: &mut R) -> DeltaElem {
        match self {
            DeltaGroup::Operad(f) => DeltaElem::Op(f.sample(arity, size, rng)),
            DeltaGroup::Wreath { modulus, base } => {
                let hi = if *modulus == 0 { 4 } else { *modulus as i64 };
                let coords = (0..arity).map(|_| rng.gen_range(0..hi)).collect();
                DeltaElem::Wreath {
                    coords,
                    inner: Box::new(base.sample(arity, size, rng)),
                }
            }
            DeltaGroup::Hyperoctahedral => DeltaElem::Signed(SignedPerm {
                signs: (0..arity).map(|_| rng.gen_bool(0.5)).collect(),
                perm: Permutation::random(arity, rng),
            }),
        }
    }
}

struct PairCase {
    group: DeltaGroup,
    a: DeltaElem,
    b: DeltaElem,
    i: usize,
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={}; a={}; b={}", self.i, self.a, self.b)
    }
}

/// Simplicial identities, the crossed product laws and the commutation of
/// faces/degeneracies with the permutation image, all sampled.
pub fn crossed_simplicial_suite(group: &DeltaGroup, bounds: Bounds, seed: u64) -> Report {
    let name = group.name();
    let mut report = Report::new();

    report.push(run_law(
        "simplicial-identities",
        &name,
        bounds,
        seed,
        |rng| {
            let n = rng.gen_range(2..=bounds.max_arity.max(2));
            group.sample(n, bounds.size, rng)
        },
        |a| check_simplicial_identities(group, a),
        |_| Vec::new(),
    ));

    report.push(run_law(
        "crossed-face-product",
        &name,
        bounds,
        seed,
        |rng| {
            let n = rng.gen_range(1..=bounds.max_arity);
            PairCase {
                group: group.clone(),
                a: group.sample(n, bounds.size, rng),
                b: group.sample(n, bounds.size, rng),
                i: rng.gen_range(1..=n),
            }
        },
        |case| {
            let g = &case.group;
            let ab = match g.multiply(&case.a, &case.b) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let lhs = match g.face(&ab, case.i) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let ai = g.pi(&case.a).apply(case.i - 1) + 1;
            let rhs = match (g.face(&case.a, case.i), g.face(&case.b, ai)) {
                (Ok(x), Ok(y)) => match g.multiply(&x, &y) {
                    Ok(v) => v,
                    Err(_) => return false,
                },
                _ => return false,
            };
            g.equals(&lhs, &rhs)
        },
        |_| Vec::new(),
    ));

    report.push(run_law(
        "crossed-degeneracy-product",
        &name,
        bounds,
        seed,
        |rng| {
            let n = rng.gen_range(1..=bounds.max_arity);
            PairCase {
                group: group.clone(),
                a: group.sample(n, bounds.size, rng),
                b: group.sample(n, bounds.size, rng),
                i: rng.gen_range(1..=n),
            }
        },
        |case| {
            let g = &case.group;
            let ab = match g.multiply(&case.a, &case.b) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let lhs = match g.degeneracy(&ab, case.i) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let ai = g.pi(&case.a).apply(case.i - 1) + 1;
            let rhs = match (g.degeneracy(&case.a, case.i), g.degeneracy(&case.b, ai)) {
                (Ok(x), Ok(y)) => match g.multiply(&x, &y) {
                    Ok(v) => v,
                    Err(_) => return false,
                },
                _ => return false,
            };
            g.equals(&lhs, &rhs)
        },
        |_| Vec::new(),
    ));

    // the face diagram pins the image of d_i a exactly
    report.push(run_law(
        "face-diagram",
        &name,
        bounds,
        seed,
        |rng| {
            let n = rng.gen_range(1..=bounds.max_arity);
            let a = group.sample(n, bounds.size, rng);
            let i = rng.gen_range(1..=n);
            PairCase { group: group.clone(), b: group.identity(n), a, i }
        },
        |case| {
            let g = &case.group;
            let da = match g.face(&case.a, case.i) {
                Ok(v) => v,
                Err(_) => return false,
            };
            g.pi(&da) == g.pi(&case.a).delete_point(case.i - 1)
        },
        |_| Vec::new(),
    ));

    // the degeneracy diagram pins it only up to the order of the two copies
    report.push(run_law(
        "degeneracy-diagram",
        &name,
        bounds,
        seed,
        |rng| {
            let n = rng.gen_range(1..=bounds.max_arity);
            let a = group.sample(n, bounds.size, rng);
            let i = rng.gen_range(1..=n);
            PairCase { group: group.clone(), b: group.identity(n), a, i }
        },
        |case| {
            let g = &case.group;
            let sa = match g.degeneracy(&case.a, case.i) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let got = g.pi(&sa);
            let pa = g.pi(&case.a);
            got == pa.insert_doubled(case.i - 1, false)
                || got == pa.insert_doubled(case.i - 1, true)
        },
        |_| Vec::new(),
    ));

    report
}

fn check_simplicial_identities(group: &DeltaGroup, a: &DeltaElem) -> bool {
    let g = group;
    let n = g.arity(a);
    let eq = |x: &Result<DeltaElem, OperadError>, y: &Result<DeltaElem, OperadError>| match (x, y)
    {
        (Ok(x), Ok(y)) => g.equals(x, y),
        _ => false,
    };
    // d_i d_j = d_{j-1} d_i for i < j
    for j in 2..=n {
        for i in 1..j {
            let lhs = g.face(a, j).and_then(|x| g.face(&x, i));
            let rhs = g.face(a, i).and_then(|x| g.face(&x, j - 1));
            if !eq(&lhs, &rhs) {
                return false;
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j
    for j in 1..=n {
        for i in 1..=j {
            let lhs = g.degeneracy(a, j).and_then(|x| g.degeneracy(&x, i));
            let rhs = g.degeneracy(a, i).and_then(|x| g.degeneracy(&x, j + 1));
            if !eq(&lhs, &rhs) {
                return false;
            }
        }
    }
    // mixed identities
    for j in 1..=n {
        for i in 1..=n + 1 {
            let lhs = g.degeneracy(a, j).and_then(|x| g.face(&x, i));
            let ok = if i < j {
                eq(&lhs, &g.face(a, i).and_then(|x| g.degeneracy(&x, j - 1)))
            } else if i == j || i == j + 1 {
                match &lhs {
                    Ok(x) => g.equals(x, a),
                    Err(_) => false,
                }
            } else {
                eq(&lhs, &g.face(a, i - 1).and_then(|x| g.degeneracy(&x, j)))
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Whether the projection commutes with degeneracies, sampled. Not an
/// axiom: it holds for every group-operad family but fails for the
/// hyperoctahedral sequence, whose witness this returns.
pub fn pi_degeneracy_commutation(group: &DeltaGroup, bounds: Bounds, seed: u64) -> LawRecord {
    let name = group.name();
    run_law(
        "pi-commutes-with-degeneracies",
        &name,
        bounds,
        seed,
        |rng| {
            let n = rng.gen_range(1..=bounds.max_arity);
            let a = group.sample(n, bounds.size, rng);
            let i = rng.gen_range(1..=n);
            PairCase { group: group.clone(), b: group.identity(n), a, i }
        },
        |case| {
            let g = &case.group;
            match g.degeneracy(&case.a, case.i) {
                Ok(sa) => g.pi(&sa) == g.pi(&case.a).insert_doubled(case.i - 1, false),
                Err(_) => false,
            }
        },
        |_| Vec::new(),
    )
}

/// The smallest projection/degeneracy mismatch of the hyperoctahedral
/// sequence, found by ordered search: one reflected strand already fails.
pub fn hyperoct_pi_degeneracy_witness() -> Option<String> {
    for n in 1..=3usize {
        for s in SignedPerm::enumerate(n) {
            for i in 1..=n {
                let g = DeltaGroup::Hyperoctahedral;
                let a = DeltaElem::Signed(s.clone());
                let sa = g.degeneracy(&a, i).expect("index in range");
                if g.pi(&sa) != g.pi(&a).insert_doubled(i - 1, false) {
                    return Some(format!("s_{i} of {s}"));
                }
            }
        }
    }
    None
}

/// Pairs a ribbon element with its wreath counterpart (framings first,
/// braid second).
pub fn ribbon_as_wreath(r: &crate::families::RibbonElement) -> DeltaElem {
    DeltaElem::Wreath {
        coords: r.framings.clone(),
        inner: Box::new(DeltaElem::Op(Element::Braid(r.braid.clone()))),
    }
}

/// Checks that the ribbon/wreath pairing commutes with every face on
/// sampled elements, and returns the stored degeneracy mismatch: splitting
/// a twisted ribbon twists the two halves around each other, which the
/// plain wreath structure never does.
pub fn ribbon_wreath_comparison(bounds: Bounds, seed: u64) -> Report {
    let mut report = Report::new();
    let ribbon = DeltaGroup::Operad(Family::Ribbon);
    let wreath = DeltaGroup::wreath(0, DeltaGroup::Operad(Family::Braid));

    let mut rng = law_rng(seed, "ribbon-wreath-face-match", "R");
    let mut checked = 0usize;
    let mut witness = None;
    'outer: for _ in 0..bounds.samples {
        let n = rng.gen_range(1..=bounds.max_arity);
        let Element::Ribbon(r) = Family::Ribbon.sample(n, bounds.size, &mut rng) else {
            unreachable!("ribbon family samples ribbon payloads");
        };
        for i in 1..=n {
            checked += 1;
            let lhs = match ribbon.face(&DeltaElem::Op(Element::Ribbon(r.clone())), i) {
                Ok(DeltaElem::Op(Element::Ribbon(x))) => ribbon_as_wreath(&x),
                _ => {
                    witness = Some(format!("face {i} of {r} failed to evaluate"));
                    break 'outer;
                }
            };
            let rhs = match wreath.face(&ribbon_as_wreath(&r), i) {
                Ok(v) => v,
                Err(_) => {
                    witness = Some(format!("wreath face {i} of {r} failed to evaluate"));
                    break 'outer;
                }
            };
            if !wreath.equals(&lhs, &rhs) {
                witness = Some(format!("face {i} of {r}"));
                break 'outer;
            }
        }
    }
    report.push(match witness {
        None => LawRecord::pass("ribbon-wreath-face-match", "R", checked),
        Some(w) => LawRecord::fail("ribbon-wreath-face-match", "R", checked, w),
    });

    // the stored degeneracy mismatch: a single once-twisted ribbon
    let once = crate::families::RibbonElement::new(
        crate::braid::BraidWord::identity(1),
        vec![1],
    )
    .expect("framing count matches");
    let via_ribbon = ribbon
        .degeneracy(&DeltaElem::Op(Element::Ribbon(once.clone())), 1)
        .expect("index in range");
    let via_ribbon = match via_ribbon {
        DeltaElem::Op(Element::Ribbon(x)) => ribbon_as_wreath(&x),
        _ => unreachable!("ribbon degeneracy stays in the family"),
    };
    let via_wreath = wreath
        .degeneracy(&ribbon_as_wreath(&once), 1)
        .expect("index in range");
    report.push(if wreath.equals(&via_ribbon, &via_wreath) {
        LawRecord::fail(
            "ribbon-wreath-degeneracy-mismatch",
            "R",
            1,
            "expected the pairing to break on a twisted ribbon, but it commuted".into(),
        )
    } else {
        LawRecord::pass("ribbon-wreath-degeneracy-mismatch", "R", 1)
    });

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn groups_under_test() -> Vec<DeltaGroup> {
        vec![
            DeltaGroup::Operad(Family::Symmetric),
            DeltaGroup::Operad(Family::Braid),
            DeltaGroup::Operad(Family::PureBraid),
            DeltaGroup::Operad(Family::Ribbon),
            DeltaGroup::Operad(Family::AbelianPower { modulus: 2 }),
            DeltaGroup::wreath(2, DeltaGroup::Operad(Family::Symmetric)),
            DeltaGroup::wreath(0, DeltaGroup::Operad(Family::Braid)),
            DeltaGroup::Hyperoctahedral,
        ]
    }

    #[test]
    fn suites_pass_for_all_groups() {
        let bounds = Bounds { max_arity: 4, size: 4, samples: 40 };
        for g in groups_under_test() {
            let report = crossed_simplicial_suite(&g, bounds, 11);
            assert!(report.all_passed(), "{}:\n{report}", g.name());
        }
    }

    #[test]
    fn wreath_group_axioms() {
        let g = DeltaGroup::wreath(2, DeltaGroup::Operad(Family::Symmetric));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(0..=4);
            let a = g.sample(n, 4, &mut rng);
            let b = g.sample(n, 4, &mut rng);
            let c = g.sample(n, 4, &mut rng);
            let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            assert!(g.equals(&ab_c, &a_bc));
            let e = g.identity(n);
            assert!(g.equals(&g.multiply(&a, &e).unwrap(), &a));
            assert!(g.equals(&g.multiply(&a, &g.inverse(&a)).unwrap(), &e));
        }
    }

    #[test]
    fn wreath_of_two_by_symmetric_has_hyperoct_order() {
        // |Z/2 wr S_3| = 2^3 * 3! = 48 distinct elements
        let mut seen = std::collections::HashSet::new();
        for p in Permutation::all(3) {
            for bits in 0..8u32 {
                let coords = (0..3).map(|i| ((bits >> i) & 1) as i64).collect();
                let e = DeltaElem::Wreath {
                    coords,
                    inner: Box::new(DeltaElem::Op(Element::Perm(p.clone()))),
                };
                seen.insert(format!("{e}"));
            }
        }
        assert_eq!(seen.len(), 48);
    }

    #[test]
    fn wreath_conjugation_identity_for_faces() {
        // deleting coordinate i of a permuted tuple equals permuting the
        // tuple with coordinate h(i) deleted by the face of the permutation
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=5usize);
            let h = Permutation::random(n, &mut rng);
            let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let i = rng.gen_range(0..n);
            let permuted: Vec<i64> = (0..n).map(|j| coords[h.apply(j)]).collect();
            let mut lhs = permuted.clone();
            lhs.remove(i);
            let mut deleted = coords.clone();
            deleted.remove(h.apply(i));
            let dh = h.delete_point(i);
            let rhs: Vec<i64> = (0..n - 1).map(|j| deleted[dh.apply(j)]).collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hyperoct_breaks_pi_degeneracy_commutation() {
        let bounds = Bounds { max_arity: 4, size: 4, samples: 200 };
        let record = pi_degeneracy_commutation(&DeltaGroup::Hyperoctahedral, bounds, 13);
        assert!(!record.passed());
        let witness = hyperoct_pi_degeneracy_witness().expect("mismatch exists");
        assert!(witness.starts_with("s_1"), "{witness}");
        // but every group-operad family commutes
        for fam in [Family::Symmetric, Family::Braid, Family::Ribbon] {
            let record = pi_degeneracy_commutation(&DeltaGroup::Operad(fam), bounds, 13);
            assert!(record.passed(), "{record}");
        }
    }

    #[test]
    fn ribbon_wreath_comparison_matches_design() {
        let bounds = Bounds { max_arity: 3, size: 4, samples: 60 };
        let report = ribbon_wreath_comparison(bounds, 17);
        assert!(report.all_passed(), "{report}");
    }
}
