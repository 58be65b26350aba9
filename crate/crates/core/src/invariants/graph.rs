use crate::columns::{column_sets, ColumnFamily};
use crate::error::Result;
use crate::matrices::scc::tarjan;
use crate::structure;
use crate::substitution::Substitution;

/// Whether the column-set graph of the pure base has no two distinct cycles
/// through a common vertex.
///
/// Vertices are the column sets with at least two letters; each column index
/// `j` contributes its own edge `B → φ_j(B)`, so two columns acting the same
/// way on `B` count as two edges.
pub fn graph_condition(subst: &Substitution) -> Result<bool> {
    let pure = structure::pure_base(subst)?;
    Ok(family_condition(&column_sets(&pure.pure_base)))
}

pub(crate) fn family_condition(family: &ColumnFamily) -> bool {
    let keep: Vec<bool> = family.sets().iter().map(|s| s.len() >= 2).collect();
    let adjacency: Vec<Vec<usize>> = family
        .successors()
        .iter()
        .enumerate()
        .map(|(v, targets)| {
            if keep[v] {
                targets.iter().copied().filter(|&t| keep[t]).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let components = tarjan(&adjacency);
    let mut component_of = vec![0usize; adjacency.len()];
    for (c, members) in components.iter().enumerate() {
        for &v in members {
            component_of[v] = c;
        }
    }
    components.iter().enumerate().all(|(c, members)| {
        let internal = members
            .iter()
            .map(|&v| adjacency[v].iter().filter(|&&t| component_of[t] == c).count())
            .collect::<Vec<_>>();
        let total: usize = internal.iter().sum();
        total == 0 || internal.iter().all(|&n| n == 1)
    })
}
