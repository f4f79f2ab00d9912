//! Small finite groups as closed sets of permutations, enough for exact
//! bar-construction and splitting checks.

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} is not a subgroup: {1}")]
    NotSubgroup(String, String),
    #[error("element outside the group: {0}")]
    NotMember(String),
    #[error("the data does not split: {0}")]
    NotSplit(String),
}

/// A finite group of permutations of a fixed degree, closed under
/// composition and inverse, with constant-time membership.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub name: String,
    degree: usize,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroup {
    /// Closure of a generating set under composition.
    pub fn from_generators(name: &str, degree: usize, gens: &[Permutation]) -> Self {
        assert!(gens.iter().all(|g| g.degree() == degree));
        let mut elems = vec![Permutation::identity(degree)];
        let mut index = HashMap::new();
        index.insert(Permutation::identity(degree), 0usize);
        let mut frontier = vec![Permutation::identity(degree)];
        while let Some(g) = frontier.pop() {
            for h in gens {
                let gh = g.compose(h).expect("same degree");
                if !index.contains_key(&gh) {
                    index.insert(gh.clone(), elems.len());
                    elems.push(gh.clone());
                    frontier.push(gh);
                }
            }
        }
        // stable order independent of generator discovery order
        elems.sort();
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        FiniteGroup { name: name.into(), degree, elems, index }
    }

    pub fn symmetric(n: usize) -> Self {
        let gens: Vec<Permutation> = (1..n).map(|i| Permutation::transposition(n, i, i + 1)).collect();
        Self::from_generators(&format!("S{n}"), n, &gens)
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        for i in 1..n.saturating_sub(1) {
            // 3-cycles (i, i+1, i+2)
            gens.push(
                Permutation::transposition(n, i, i + 1)
                    .compose(&Permutation::transposition(n, i + 1, i + 2))
                    .expect("same degree"),
            );
        }
        Self::from_generators(&format!("A{n}"), n, &gens)
    }

    /// The Klein four-group of double transpositions inside degree 4.
    pub fn klein_four() -> Self {
        let a = Permutation::from_one_line(&[2, 1, 4, 3]).expect("bijection");
        let b = Permutation::from_one_line(&[3, 4, 1, 2]).expect("bijection");
        Self::from_generators("V4", 4, &[a, b])
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators("1", degree, &[])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.elems.iter().all(|p| other.contains(p))
    }

    pub fn is_normal_in(&self, other: &FiniteGroup) -> bool {
        if !self.is_subgroup_of(other) {
            return false;
        }
        other.elems.iter().all(|g| {
            self.elems.iter().all(|h| {
                let conj = g
                    .inverse()
                    .compose(h)
                    .and_then(|x| x.compose(g))
                    .expect("same degree");
                self.contains(&conj)
            })
        })
    }

    /// Index of the coset `H * a` inside this group, as the minimal member
    /// index: a canonical key for left cosets of `sub`.
    pub fn coset_key(&self, sub: &FiniteGroup, a: &Permutation) -> Result<usize, GroupError> {
        if !self.contains(a) {
            return Err(GroupError::NotMember(a.to_string()));
        }
        sub.elems
            .iter()
            .map(|h| {
                let ha = h.compose(a).expect("same degree");
                self.index_of(&ha).ok_or_else(|| {
                    GroupError::NotSubgroup(sub.name.clone(), format!("{h} leaves the group"))
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|keys| keys.into_iter().min().expect("subgroup is nonempty"))
    }
}

/// A split extension: a normal subgroup and a complementing subgroup whose
/// pointwise products reach every element exactly once.
#[derive(Debug, Clone)]
pub struct SplitExtension {
    pub whole: FiniteGroup,
    pub normal: FiniteGroup,
    pub complement: FiniteGroup,
}

impl SplitExtension {
    pub fn new(
        whole: FiniteGroup,
        normal: FiniteGroup,
        complement: FiniteGroup,
    ) -> Result<Self, GroupError> {
        if !normal.is_normal_in(&whole) {
            return Err(GroupError::NotSplit(format!(
                "{} is not normal in {}",
                normal.name, whole.name
            )));
        }
        if !complement.is_subgroup_of(&whole) {
            return Err(GroupError::NotSplit(format!(
                "{} is not a subgroup of {}",
                complement.name, whole.name
            )));
        }
        if normal.order() * complement.order() != whole.order() {
            return Err(GroupError::NotSplit("orders do not multiply up".into()));
        }
        // products n * h must be pairwise distinct
        let ext = SplitExtension { whole, normal, complement };
        let mut seen = std::collections::HashSet::new();
        for n in ext.normal.elements() {
            for h in ext.complement.elements() {
                let g = n.compose(h).expect("same degree");
                if !ext.whole.contains(&g) || !seen.insert(g) {
                    return Err(GroupError::NotSplit(
                        "products of the two parts do not enumerate the group".into(),
                    ));
                }
            }
        }
        Ok(ext)
    }

    /// Writes `g = n * h` with `n` normal and `h` in the complement.
    pub fn factor(&self, g: &Permutation) -> (Permutation, Permutation) {
        for h in self.complement.elements() {
            let n = g.compose(&h.inverse()).expect("same degree");
            if self.normal.contains(&n) {
                return (n, h.clone());
            }
        }
        unreachable!("split extensions factor every element");
    }
}
