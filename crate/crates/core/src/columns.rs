//! Column maps `a ↦ φ(a)_i` and the family of column sets they generate.

use std::collections::{HashMap, VecDeque};

use crate::substitution::{Letter, Substitution};

/// A total map from the alphabet to itself, stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnMap(Vec<Letter>);

impl ColumnMap {
    pub fn new(table: Vec<Letter>) -> Self {
        Self(table)
    }

    pub fn identity(size: usize) -> Self {
        Self((0..size as Letter).collect())
    }

    pub fn table(&self) -> &[Letter] {
        &self.0
    }

    pub fn apply(&self, letter: Letter) -> Letter {
        self.0[letter as usize]
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &ColumnMap) -> ColumnMap {
        ColumnMap(inner.0.iter().map(|&a| self.0[a as usize]).collect())
    }

    pub fn image(&self) -> LetterSet {
        LetterSet::from_iter(self.0.iter().copied())
    }

    pub fn image_of(&self, set: &LetterSet) -> LetterSet {
        LetterSet::from_iter(set.iter().map(|a| self.apply(a)))
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

/// A sorted set of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterSet(Vec<Letter>);

impl LetterSet {
    pub fn full(size: usize) -> Self {
        Self((0..size as Letter).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0.binary_search(&letter).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut v: Vec<Letter> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

/// The column sets of all powers of a substitution: the closure of the full
/// alphabet under the column maps, in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct ColumnFamily {
    sets: Vec<LetterSet>,
    index: HashMap<LetterSet, usize>,
    /// `successors[v][j]` is the index of `φ_j(sets[v])`.
    successors: Vec<Vec<usize>>,
}

impl ColumnFamily {
    pub fn sets(&self) -> &[LetterSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &LetterSet) -> bool {
        self.index.contains_key(set)
    }

    pub fn position(&self, set: &LetterSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Labelled edges: entry `j` of row `v` is the image of set `v` under
    /// column `j`.
    pub fn successors(&self) -> &[Vec<usize>] {
        &self.successors
    }

    pub fn has_singleton(&self) -> bool {
        self.sets.iter().any(LetterSet::is_singleton)
    }
}

pub fn column_sets(subst: &Substitution) -> ColumnFamily {
    let maps = subst.column_maps();
    let full = LetterSet::full(subst.size());
    let mut sets = vec![full.clone()];
    let mut index = HashMap::from([(full, 0usize)]);
    let mut successors: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let mut row = Vec::with_capacity(maps.len());
        for map in &maps {
            let image = map.image_of(&sets[v]);
            let id = match index.get(&image) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    index.insert(image.clone(), id);
                    sets.push(image);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if successors.len() <= v {
            successors.resize(v + 1, Vec::new());
        }
        successors[v] = row;
    }
    ColumnFamily { sets, index, successors }
}

/// Whether some column of some power of `φ` is constant.
pub fn has_coincidence(subst: &Substitution) -> bool {
    column_sets(subst).has_singleton()
}
