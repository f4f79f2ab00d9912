//! Bounded enumeration of the sub-operads generated by k-th powers of the
//! standard generators.
//!
//! The closure alternates two steps per round: close each arity under the
//! group operations, then close the whole sequence under cabling. Both
//! steps are truncated by a word-length bound and a per-arity element cap,
//! so membership is only ever certified positively; a set that hit a bound
//! is flagged as truncated.

use std::collections::BTreeMap;

use super::{BraidWord, Letter};

/// Result of the bounded enumeration at one arity.
#[derive(Debug, Clone)]
pub struct BkSet {
    pub power: usize,
    pub strands: usize,
    /// Representative words, keyed by normal form.
    pub elements: Vec<BraidWord>,
    /// Whether any bound cut the enumeration short.
    pub truncated: bool,
}

struct Enumeration {
    /// per arity: normal-form key -> shortest representative found
    sets: Vec<BTreeMap<String, BraidWord>>,
    max_len: usize,
    cap: usize,
    truncated: bool,
}

impl Enumeration {
    fn insert(&mut self, w: BraidWord) -> bool {
        let arity = w.strands();
        if w.len() > self.max_len {
            self.truncated = true;
            return false;
        }
        let set = &mut self.sets[arity];
        if set.len() >= self.cap {
            self.truncated = true;
            return false;
        }
        let key = w.normal_form().key();
        match set.get(&key) {
            Some(old) if old.len() <= w.len() => false,
            _ => {
                set.insert(key, w);
                true
            }
        }
    }

    fn words(&self, arity: usize) -> Vec<BraidWord> {
        self.sets[arity].values().cloned().collect()
    }
}

/// Enumerates the sub-operad generated by the k-th powers of the standard
/// generators, at every arity up to `strands`, doing `depth` rounds of
/// group closure followed by cabling closure. Words longer than `max_len`
/// are dropped and flagged.
pub fn generate_bk(power: usize, strands: usize, depth: usize, max_len: usize) -> BkSet {
    assert!(power >= 1 && strands >= 2 && depth >= 1);
    let cap = 200;
    let mut en = Enumeration {
        sets: (0..=strands).map(|_| BTreeMap::new()).collect(),
        max_len,
        cap,
        truncated: false,
    };

    // seed: identities and the k-th powers of every generator at every arity
    for n in 0..=strands {
        en.insert(BraidWord::identity(n));
        for i in 1..n {
            for inverse in [false, true] {
                let letters = vec![Letter { index: i, inverse }; power];
                en.insert(BraidWord::new(n, letters).expect("index in range"));
            }
        }
    }

    for _round in 0..depth {
        group_closure(&mut en, strands);
        gamma_closure(&mut en, strands);
    }
    group_closure(&mut en, strands);

    BkSet {
        power,
        strands,
        elements: en.words(strands),
        truncated: en.truncated,
    }
}

/// Closes each arity under products (inverses are present by seeding and
/// by closing over both signs of the generators).
fn group_closure(en: &mut Enumeration, strands: usize) {
    for n in 2..=strands {
        let mut frontier = en.words(n);
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let current = en.words(n);
            for a in &frontier {
                for b in &current {
                    if b.is_empty() {
                        continue;
                    }
                    if a.len() + b.len() > en.max_len {
                        en.truncated = true;
                        continue;
                    }
                    let prod = a.multiply(b).expect("same strand count");
                    if en.insert(prod.clone()) {
                        next.push(prod);
                    }
                    let prod = b.multiply(a).expect("same strand count");
                    if en.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
                let inv = a.inverse();
                if en.insert(inv.clone()) {
                    next.push(inv);
                }
            }
            frontier = next;
        }
    }
}

/// Closes the sequence of sets under cabling, pruning by the resulting
/// word length before building anything.
fn gamma_closure(en: &mut Enumeration, strands: usize) {
    let snapshot: Vec<Vec<BraidWord>> = (0..=strands).map(|n| en.words(n)).collect();
    for outer_arity in 1..=strands {
        for outer in &snapshot[outer_arity] {
            for widths in compositions(outer_arity, strands) {
                // cost of the outer crossings alone
                let mut crossing_cost = 0usize;
                {
                    let mut sizes = widths.clone();
                    for l in outer.letters() {
                        let i = l.index - 1;
                        crossing_cost += sizes[i] * sizes[i + 1];
                        sizes.swap(i, i + 1);
                    }
                }
                if crossing_cost > en.max_len {
                    en.truncated = true;
                    continue;
                }
                let budget = en.max_len - crossing_cost;
                let mut inners: Vec<BraidWord> = Vec::with_capacity(outer_arity);
                cable_tuples(en, &snapshot, outer, &widths, 0, budget, &mut inners);
            }
        }
    }
}

fn cable_tuples(
    en: &mut Enumeration,
    snapshot: &[Vec<BraidWord>],
    outer: &BraidWord,
    widths: &[usize],
    slot: usize,
    budget: usize,
    inners: &mut Vec<BraidWord>,
) {
    if slot == widths.len() {
        let cabled = outer.cable(inners).expect("widths consistent");
        en.insert(cabled);
        return;
    }
    for inner in &snapshot[widths[slot]] {
        if inner.len() > budget {
            continue;
        }
        inners.push(inner.clone());
        cable_tuples(en, snapshot, outer, widths, slot + 1, budget - inner.len(), inners);
        inners.pop();
    }
}

/// All ways to write totals `0..=max_total` as `parts` ordered nonnegative
/// summands.
fn compositions(parts: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; parts];
    fn rec(cur: &mut Vec<usize>, idx: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if idx == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[idx] = v;
            rec(cur, idx + 1, left - v, out);
        }
    }
    rec(&mut cur, 0, max_total, &mut out);
    out
}
