//! The definitional laws of a group operad and their derived identities,
//! as executable sampled checks with counterexample shrinking.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::family::{Element, Family};
use super::report::{LawRecord, Report};

/// Sampling bounds for the suites. Arity bounds apply to every arity in a
/// sampled case, composite arities included.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub max_arity: usize,
    /// word-length / magnitude budget per sampled element
    pub size: usize,
    pub samples: usize,
}

impl Bounds {
    pub fn default_profile() -> Self {
        Bounds { max_arity: 5, size: 10, samples: 1000 }
    }

    pub fn quick() -> Self {
        Bounds { max_arity: 4, size: 6, samples: 200 }
    }
}

/// Stable per-law seed derivation so record contents do not depend on the
/// order suites run in.
pub(crate) fn law_rng(seed: u64, law: &str, family: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in law.bytes().chain([0u8]).chain(family.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Runs one sampled law: draws `bounds.samples` cases, checks each, and on
/// the first failure greedily shrinks before reporting.
pub(crate) fn run_law<C, S, K, H>(
    law: &str,
    family_tag: &str,
    bounds: Bounds,
    seed: u64,
    mut sample: S,
    check: K,
    shrink: H,
) -> LawRecord
where
    C: std::fmt::Display,
    S: FnMut(&mut ChaCha8Rng) -> C,
    K: Fn(&C) -> bool,
    H: Fn(&C) -> Vec<C>,
{
    let mut rng = law_rng(seed, law, family_tag);
    for drawn in 0..bounds.samples {
        let case = sample(&mut rng);
        if !check(&case) {
            let mut worst = case;
            while let Some(smaller) = shrink(&worst).into_iter().find(|c| !check(c)) {
                worst = smaller;
            }
            return LawRecord::fail(law, family_tag, drawn + 1, format!("{worst}"));
        }
    }
    LawRecord::pass(law, family_tag, bounds.samples)
}

/// Splits `total` into `parts` nonnegative ordered summands uniformly over
/// cut positions.
fn random_composition<R: Rng>(total: usize, parts: usize, rng: &mut R) -> Vec<usize> {
    if parts == 0 {
        return Vec::new();
    }
    let mut cuts: Vec<usize> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in &cuts {
        out.push(c - prev);
        prev = *c;
    }
    out.push(total - prev);
    out
}

/// A case for the two-level associativity law.
struct AssocCase {
    family: Family,
    outer: Element,
    mids: Vec<Element>,
    inns: Vec<Element>,
}

impl std::fmt::Display for AssocCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a={}", self.outer)?;
        for b in &self.mids {
            write!(f, "; b={b}")?;
        }
        for c in &self.inns {
            write!(f, "; c={c}")?;
        }
        Ok(())
    }
}

fn sample_assoc(family: &Family, bounds: Bounds, rng: &mut ChaCha8Rng) -> AssocCase {
    let k = rng.gen_range(1..=bounds.max_arity);
    let outer = family.sample(k, bounds.size, rng);
    let m_total = rng.gen_range(0..=bounds.max_arity);
    let mids_arities = random_composition(m_total, k, rng);
    let mids: Vec<Element> = mids_arities
        .iter()
        .map(|&m| family.sample(m, bounds.size, rng))
        .collect();
    let n_total = rng.gen_range(0..=bounds.max_arity);
    let inns_arities = random_composition(n_total, m_total, rng);
    let inns: Vec<Element> = inns_arities
        .iter()
        .map(|&m| family.sample(m, bounds.size, rng))
        .collect();
    AssocCase { family: family.clone(), outer, mids, inns }
}

fn check_assoc(case: &AssocCase) -> bool {
    let fam = &case.family;
    let lhs_inner = match fam.gamma(&case.outer, &case.mids) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let lhs = match fam.gamma(&lhs_inner, &case.inns) {
        Ok(v) => v,
        Err(_) => return false,
    };
    // regroup the bottom row under each middle element
    let mut grouped = Vec::with_capacity(case.mids.len());
    let mut at = 0;
    for b in &case.mids {
        let m = b.arity();
        let slice = &case.inns[at..at + m];
        at += m;
        match fam.gamma(b, slice) {
            Ok(v) => grouped.push(v),
            Err(_) => return false,
        }
    }
    let rhs = match fam.gamma(&case.outer, &grouped) {
        Ok(v) => v,
        Err(_) => return false,
    };
    fam.equals(&lhs, &rhs)
}

fn shrink_assoc(case: &AssocCase) -> Vec<AssocCase> {
    let fam = &case.family;
    let mut out = Vec::new();
    // arity reductions first: empty out one middle block and its inners
    let mut at = 0;
    for i in 0..case.mids.len() {
        let m = case.mids[i].arity();
        if m > 0 {
            let mut mids = case.mids.clone();
            mids[i] = fam.identity(0);
            let mut inns = case.inns.clone();
            inns.drain(at..at + m);
            out.push(AssocCase {
                family: fam.clone(),
                outer: case.outer.clone(),
                mids,
                inns,
            });
        }
        at += m;
    }
    for i in 0..case.inns.len() {
        if case.inns[i].arity() > 0 {
            let mut inns = case.inns.clone();
            inns[i] = fam.identity(0);
            out.push(AssocCase {
                family: fam.clone(),
                outer: case.outer.clone(),
                mids: case.mids.clone(),
                inns,
            });
        }
    }
    for cand in fam.shrink(&case.outer) {
        out.push(AssocCase {
            family: fam.clone(),
            outer: cand,
            mids: case.mids.clone(),
            inns: case.inns.clone(),
        });
    }
    for i in 0..case.mids.len() {
        for cand in fam.shrink(&case.mids[i]) {
            let mut mids = case.mids.clone();
            mids[i] = cand;
            out.push(AssocCase {
                family: fam.clone(),
                outer: case.outer.clone(),
                mids,
                inns: case.inns.clone(),
            });
        }
    }
    for i in 0..case.inns.len() {
        for cand in fam.shrink(&case.inns[i]) {
            let mut inns = case.inns.clone();
            inns[i] = cand;
            out.push(AssocCase {
                family: fam.clone(),
                outer: case.outer.clone(),
                mids: case.mids.clone(),
                inns,
            });
        }
    }
    out
}

/// A case for the crossed-homomorphism / equivariance law.
struct CrossedCase {
    family: Family,
    a: Element,
    a2: Element,
    bs: Vec<Element>,
    bs2: Vec<Element>,
}

impl std::fmt::Display for CrossedCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a={}; a'={}", self.a, self.a2)?;
        for b in &self.bs {
            write!(f, "; b={b}")?;
        }
        for b in &self.bs2 {
            write!(f, "; b'={b}")?;
        }
        Ok(())
    }
}

fn sample_crossed(family: &Family, bounds: Bounds, rng: &mut ChaCha8Rng) -> CrossedCase {
    let k = rng.gen_range(1..=bounds.max_arity);
    let a = family.sample(k, bounds.size, rng);
    let a2 = family.sample(k, bounds.size, rng);
    let m_total = rng.gen_range(0..=bounds.max_arity);
    let arities = random_composition(m_total, k, rng);
    let bs: Vec<Element> = arities
        .iter()
        .map(|&m| family.sample(m, bounds.size, rng))
        .collect();
    let bs2: Vec<Element> = arities
        .iter()
        .map(|&m| family.sample(m, bounds.size, rng))
        .collect();
    CrossedCase { family: family.clone(), a, a2, bs, bs2 }
}

/// `gamma(a a'; b_1 b'_1, ...) = gamma(a; b) * gamma(a'; b' reindexed by
/// the inverse image of a)`.
fn check_crossed(case: &CrossedCase) -> bool {
    let fam = &case.family;
    let k = case.a.arity();
    let aa2 = match fam.multiply(&case.a, &case.a2) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let prods: Vec<Element> = match case
        .bs
        .iter()
        .zip(&case.bs2)
        .map(|(x, y)| fam.multiply(x, y))
        .collect::<Result<_, _>>()
    {
        Ok(v) => v,
        Err(_) => return false,
    };
    let lhs = match fam.gamma(&aa2, &prods) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let pa_inv = fam.to_permutation(&case.a).inverse();
    let reindexed: Vec<Element> = (0..k).map(|i| case.bs2[pa_inv.apply(i)].clone()).collect();
    let first = match fam.gamma(&case.a, &case.bs) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let second = match fam.gamma(&case.a2, &reindexed) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let rhs = match fam.multiply(&first, &second) {
        Ok(v) => v,
        Err(_) => return false,
    };
    fam.equals(&lhs, &rhs)
}

fn shrink_crossed(case: &CrossedCase) -> Vec<CrossedCase> {
    let fam = &case.family;
    let mut out = Vec::new();
    // arity reductions first: empty out one matched inner pair
    for i in 0..case.bs.len() {
        if case.bs[i].arity() > 0 {
            let mut c = clone_crossed(case);
            c.bs[i] = fam.identity(0);
            c.bs2[i] = fam.identity(0);
            out.push(c);
        }
    }
    for cand in fam.shrink(&case.a) {
        out.push(CrossedCase { family: fam.clone(), a: cand, ..clone_crossed(case) });
    }
    for cand in fam.shrink(&case.a2) {
        out.push(CrossedCase { family: fam.clone(), a2: cand, ..clone_crossed(case) });
    }
    for i in 0..case.bs.len() {
        for cand in fam.shrink(&case.bs[i]) {
            let mut c = clone_crossed(case);
            c.bs[i] = cand;
            out.push(c);
        }
        for cand in fam.shrink(&case.bs2[i]) {
            let mut c = clone_crossed(case);
            c.bs2[i] = cand;
            out.push(c);
        }
    }
    out
}

fn clone_crossed(case: &CrossedCase) -> CrossedCase {
    CrossedCase {
        family: case.family.clone(),
        a: case.a.clone(),
        a2: case.a2.clone(),
        bs: case.bs.clone(),
        bs2: case.bs2.clone(),
    }
}

/// The four definitional laws, each sampled within `bounds`.
pub fn axiom_suite(family: &Family, bounds: Bounds, seed: u64) -> Report {
    let tag = family.tag();
    let mut report = Report::new();

    report.push(run_law(
        "operad-associativity",
        &tag,
        bounds,
        seed,
        |rng| sample_assoc(family, bounds, rng),
        check_assoc,
        shrink_assoc,
    ));

    report.push(run_law(
        "operad-unitality",
        &tag,
        bounds,
        seed,
        |rng| {
            let n = rng.gen_range(0..=bounds.max_arity);
            family.sample(n, bounds.size, rng)
        },
        |a| {
            let e1 = family.identity(1);
            let left = match family.gamma(&e1, std::slice::from_ref(a)) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let units = vec![family.identity(1); a.arity()];
            let right = match family.gamma(a, &units) {
                Ok(v) => v,
                Err(_) => return false,
            };
            family.equals(&left, a) && family.equals(&right, a)
        },
        |a| family.shrink(a),
    ));

    report.push(run_law(
        "crossed-homomorphism",
        &tag,
        bounds,
        seed,
        |rng| sample_crossed(family, bounds, rng),
        check_crossed,
        shrink_crossed,
    ));

    // self-action equivariance: the same exchange rule read as the family
    // acting on itself
    report.push(run_law(
        "self-action-equivariance",
        &tag,
        bounds,
        seed,
        |rng| sample_crossed(family, bounds, rng),
        check_crossed,
        shrink_crossed,
    ));

    report
}

/// Identities that follow from the axioms: identity composite, the inverse
/// formula, centrality of unit-arity composites and commutativity of the
/// arity-1 group.
pub fn derived_identity_suite(family: &Family, bounds: Bounds, seed: u64) -> Report {
    let tag = family.tag();
    let mut report = Report::new();

    // gamma(e_k; e_{m_1}, ..., e_{m_k}) = e_m, enumerated exactly
    {
        let mut checked = 0usize;
        let mut witness = None;
        'outer: for k in 1..=bounds.max_arity.min(4) {
            for total in 0..=bounds.max_arity.min(4) {
                for comp in compositions_exact(total, k) {
                    let inners: Vec<Element> =
                        comp.iter().map(|&m| family.identity(m)).collect();
                    let got = family.gamma(&family.identity(k), &inners);
                    checked += 1;
                    let ok = match got {
                        Ok(v) => family.equals(&v, &family.identity(total)),
                        Err(_) => false,
                    };
                    if !ok {
                        witness = Some(format!("k={k} widths={comp:?}"));
                        break 'outer;
                    }
                }
            }
        }
        report.push(match witness {
            None => LawRecord::pass("identity-composite", &tag, checked),
            Some(w) => LawRecord::fail("identity-composite", &tag, checked, w),
        });
    }

    // gamma(a; b)^(-1) = gamma(a^(-1); inverses reindexed by image of a)
    report.push(run_law(
        "inverse-formula",
        &tag,
        bounds,
        seed,
        |rng| {
            let k = rng.gen_range(1..=bounds.max_arity);
            let a = family.sample(k, bounds.size, rng);
            let m_total = rng.gen_range(0..=bounds.max_arity);
            let arities = random_composition(m_total, k, rng);
            let bs: Vec<Element> = arities
                .iter()
                .map(|&m| family.sample(m, bounds.size, rng))
                .collect();
            GammaCase { family: family.clone(), a, bs }
        },
        |case| {
            let fam = &case.family;
            let lhs = match fam.gamma(&case.a, &case.bs) {
                Ok(v) => fam.inverse(&v),
                Err(_) => return false,
            };
            let pa_inv = fam.to_permutation(&case.a).inverse();
            let reindexed: Vec<Element> = (0..case.a.arity())
                .map(|i| fam.inverse(&case.bs[pa_inv.apply(i)]))
                .collect();
            let rhs = match fam.gamma(&fam.inverse(&case.a), &reindexed) {
                Ok(v) => v,
                Err(_) => return false,
            };
            fam.equals(&lhs, &rhs)
        },
        shrink_gamma,
    ));

    // gamma(a; e_k) commutes with everything for a of arity 1
    report.push(run_law(
        "unit-arity-centrality",
        &tag,
        bounds,
        seed,
        |rng| {
            let a = family.sample(1, bounds.size, rng);
            let k = rng.gen_range(1..=bounds.max_arity);
            let b = family.sample(k, bounds.size, rng);
            GammaCase { family: family.clone(), a, bs: vec![b] }
        },
        |case| {
            let fam = &case.family;
            let k = case.bs[0].arity();
            let c = match fam.gamma(&case.a, std::slice::from_ref(&fam.identity(k))) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let cb = fam.multiply(&c, &case.bs[0]);
            let bc = fam.multiply(&case.bs[0], &c);
            match (cb, bc) {
                (Ok(x), Ok(y)) => fam.equals(&x, &y),
                _ => false,
            }
        },
        shrink_gamma,
    ));

    // the arity-1 group is abelian
    report.push(run_law(
        "unit-arity-abelian",
        &tag,
        bounds,
        seed,
        |rng| {
            let a = family.sample(1, bounds.size, rng);
            let b = family.sample(1, bounds.size, rng);
            GammaCase { family: family.clone(), a, bs: vec![b] }
        },
        |case| {
            let fam = &case.family;
            match (
                fam.multiply(&case.a, &case.bs[0]),
                fam.multiply(&case.bs[0], &case.a),
            ) {
                (Ok(x), Ok(y)) => fam.equals(&x, &y),
                _ => false,
            }
        },
        shrink_gamma,
    ));

    report
}

struct GammaCase {
    family: Family,
    a: Element,
    bs: Vec<Element>,
}

impl std::fmt::Display for GammaCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a={}", self.a)?;
        for b in &self.bs {
            write!(f, "; b={b}")?;
        }
        Ok(())
    }
}

fn shrink_gamma(case: &GammaCase) -> Vec<GammaCase> {
    let fam = &case.family;
    let mut out = Vec::new();
    for cand in fam.shrink(&case.a) {
        out.push(GammaCase { family: fam.clone(), a: cand, bs: case.bs.clone() });
    }
    for i in 0..case.bs.len() {
        for cand in fam.shrink(&case.bs[i]) {
            let mut bs = case.bs.clone();
            bs[i] = cand;
            out.push(GammaCase { family: fam.clone(), a: case.a.clone(), bs });
        }
    }
    out
}

/// All ways to write exactly `total` as `parts` ordered nonnegative
/// summands.
pub(crate) fn compositions_exact(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; parts];
    fn rec(cur: &mut Vec<usize>, idx: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if idx + 1 == cur.len() {
            cur[idx] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[idx] = v;
            rec(cur, idx + 1, left - v, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut cur, 0, total, &mut out);
    out
}
