//! Exact symmetric-group arithmetic and the block composition that makes the
//! symmetric groups an operad.
//!
//! Products are read left to right: `(a * b)(i) = b(a(i))`, i.e. `a` acts
//! first. Every operation here sticks to that convention.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image is not a bijection of 1..={0}")]
    NotBijective(usize),
    #[error("block composition expects {expected} blocks, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A permutation of `{1, ..., n}` in one-line image form.
///
/// Internally the image is stored 0-based; the textual forms `perm[2,1,3]`
/// and `cyc(1 2)(3)` are 1-based. The degree-0 permutation is the unique
/// empty element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(PermError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation from a 1-based one-line image.
    pub fn from_one_line(line: &[usize]) -> Result<Self, PermError> {
        let n = line.len();
        if line.iter().any(|&v| v == 0 || v > n) {
            return Err(PermError::NotBijective(n));
        }
        Self::from_images(line.iter().map(|&v| v - 1).collect())
    }

    /// Builds a permutation from disjoint-or-not cycles over 1-based points;
    /// `degree` must cover every point mentioned.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut p = Permutation::identity(degree);
        for cycle in cycles {
            if cycle.iter().any(|&v| v == 0 || v > degree) {
                return Err(PermError::Parse(format!(
                    "cycle point out of range for degree {degree}"
                )));
            }
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cycle.len() {
                return Err(PermError::Parse("cycle repeats a point".into()));
            }
            let mut step = Permutation::identity(degree);
            for w in cycle.windows(2) {
                step.image[w[0] - 1] = w[1] - 1;
            }
            if cycle.len() > 1 {
                step.image[cycle[cycle.len() - 1] - 1] = cycle[0] - 1;
            }
            Permutation::from_images(step.image.clone())
                .map_err(|_| PermError::Parse("cycle repeats a point".into()))?;
            p = p.compose(&step).expect("same degree");
        }
        Ok(p)
    }

    /// The transposition `(a b)` inside `S_n`, 1-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1 && a <= n && b <= n && a != b);
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a - 1, b - 1);
        Permutation { image }
    }

    /// Order reversal `i -> n + 1 - i`, the permutation of the half twist.
    pub fn reversal(n: usize) -> Self {
        Permutation { image: (0..n).rev().collect() }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Applies the permutation to a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// 1-based one-line image, the emitted text form.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// Left-to-right product: `self` acts first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// Number of inversions; the length of the shortest positive word.
    pub fn inversions(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.image[i] > self.image[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Uniform random permutation, deterministic for a fixed generator state.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Permutation {
        let mut image: Vec<usize> = (0..n).collect();
        // Fisher-Yates
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            image.swap(i, j);
        }
        Permutation { image }
    }

    /// The permutation induced on the remaining points after deleting the
    /// 0-based point `i` (and its image), renumbering both sides.
    pub fn delete_point(&self, i: usize) -> Permutation {
        let n = self.degree();
        assert!(i < n);
        let v = self.image[i];
        let image = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let w = self.image[j];
                if w > v {
                    w - 1
                } else {
                    w
                }
            })
            .collect();
        Permutation { image }
    }

    /// Doubles the 0-based point `i`: the two copies map onto the doubled
    /// image point in order, or swapped.
    pub fn insert_doubled(&self, i: usize, swapped: bool) -> Permutation {
        let n = self.degree();
        assert!(i < n);
        let v = self.image[i];
        let shift = |w: usize| if w > v { w + 1 } else { w };
        let mut image = Vec::with_capacity(n + 1);
        for j in 0..n {
            if j == i {
                if swapped {
                    image.push(v + 1);
                    image.push(v);
                } else {
                    image.push(v);
                    image.push(v + 1);
                }
            } else {
                image.push(shift(self.image[j]));
            }
        }
        Permutation { image }
    }

    /// All permutations of degree `n` in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut image: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { image: image.clone() });
            // next lexicographic image
            let Some(i) = (1..n).rev().find(|&i| image[i - 1] < image[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| image[j] > image[i - 1]).expect("successor exists");
            image.swap(i - 1, j);
            image[i..].reverse();
        }
        out
    }

    /// Block-diagonal sum: `self` on the first strands, `other` shifted after.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let mut image = self.image.clone();
        image.extend(other.image.iter().map(|&v| v + n));
        Permutation { image }
    }

    /// Operadic composition of the symmetric groups: substitutes `blocks[i]`
    /// for the i-th strand of `self` and shuffles whole blocks the way
    /// `self` shuffles strands. Blocks of degree 0 vanish.
    ///
    /// Concretely this is `(t_1 + ... + t_k) * shuffle` where `+` is the
    /// block-diagonal sum and the shuffle sends the j-th position of input
    /// block `i` to the j-th position of the output slot `self(i)`; the
    /// output slot widths are the input widths permuted by `self^{-1}`.
    /// With this orientation the crossed-homomorphism law
    /// `gamma(aa'; b b') = gamma(a; b) * gamma(a'; b' reindexed by a^{-1})`
    /// holds on the nose.
    pub fn block_compose(&self, blocks: &[Permutation]) -> Result<Permutation, PermError> {
        let k = self.degree();
        if blocks.len() != k {
            return Err(PermError::ArityMismatch { expected: k, got: blocks.len() });
        }
        let sizes: Vec<usize> = blocks.iter().map(|b| b.degree()).collect();
        let m: usize = sizes.iter().sum();

        // input offsets per block
        let mut in_off = vec![0usize; k + 1];
        for i in 0..k {
            in_off[i + 1] = in_off[i] + sizes[i];
        }
        // output offsets per slot: slot t holds block self^{-1}(t)
        let inv = self.inverse();
        let mut out_off = vec![0usize; k + 1];
        for t in 0..k {
            out_off[t + 1] = out_off[t] + sizes[inv.apply(t)];
        }

        let mut image = vec![0usize; m];
        for i in 0..k {
            let slot = self.apply(i);
            for j in 0..sizes[i] {
                // block-diagonal part first, then the shuffle
                image[in_off[i] + j] = out_off[slot] + blocks[i].apply(j);
            }
        }
        Permutation::from_images(image).map_err(|_| PermError::NotBijective(m))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm[")?;
        for (i, v) in self.one_line().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `perm[2,1,3]` (one-line, 1-based) or `cyc(1 2)(3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("perm[").and_then(|r| r.strip_suffix(']')) {
            if body.trim().is_empty() {
                return Ok(Permutation::identity(0));
            }
            let line: Vec<usize> = body
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| PermError::Parse(format!("bad entry {tok:?}")))
                })
                .collect::<Result<_, _>>()?;
            return Permutation::from_one_line(&line);
        }
        if let Some(rest) = s.strip_prefix("cyc") {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            let mut rest = rest.trim();
            while let Some(inner) = rest.strip_prefix('(') {
                let end = inner
                    .find(')')
                    .ok_or_else(|| PermError::Parse("unclosed cycle".into()))?;
                let cycle: Vec<usize> = inner[..end]
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| PermError::Parse(format!("bad point {tok:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                cycles.push(cycle);
                rest = inner[end + 1..].trim();
            }
            if !rest.is_empty() {
                return Err(PermError::Parse(format!("trailing input {rest:?}")));
            }
            let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
            return Permutation::from_cycles(degree, &cycles);
        }
        Err(PermError::Parse(format!("unrecognized permutation literal {s:?}")))
    }
}
