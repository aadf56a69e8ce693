use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{GraphAutomorphism, Multigraph};
use crate::groups::{GroupDescriptor, GroupElement};
use crate::limits::Limits;
use crate::sheaf::{boundary_obstruction, BoundaryOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeClassification {
    /// Non-trivial orbits.
    pub orbit_count: usize,
    /// One boundary assignment per orbit (values in boundary order, first
    /// entry the identity), in order of first appearance.
    pub representatives: Vec<Vec<GroupElement>>,
    /// Number of normalized assignments in each orbit.
    pub orbit_sizes: Vec<usize>,
    /// Normalized assignments examined, including the trivial one.
    pub examined: usize,
}

/// Counts `Aut(X)`-orbits of non-trivial boundary classes. Assignments are
/// normalized by the diagonal (first boundary value the identity); each
/// automorphism acts by relabeling the boundary and recomputing the
/// relative invariant from scratch.
pub fn classify_tree_boundary(
    tree: &Multigraph,
    boundary: &[usize],
    group: &GroupDescriptor,
    automorphisms: &[GraphAutomorphism],
    limits: &Limits,
) -> Result<TreeClassification> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let Some(order) = group.order() else {
        return Err(Error::Unsupported(format!("tree classification needs a finite group, got {group}")));
    };
    if boundary.len() < 2 {
        return Err(Error::BoundaryMismatch("need at least two boundary vertices".into()));
    }
    let mut position = vec![None; tree.vertex_count()];
    for (i, &v) in boundary.iter().enumerate() {
        if v >= tree.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        if position[v].replace(i).is_some() {
            return Err(Error::BoundaryMismatch(format!("vertex {} listed twice", tree.vertex_id(v))));
        }
    }
    // Boundary permutation induced by each automorphism.
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for sigma in automorphisms {
        if !sigma.is_valid_for(tree) {
            return Err(Error::InvalidGraphMap("not an automorphism of the tree".into()));
        }
        let perm = boundary
            .iter()
            .map(|&v| position[sigma.vertex_map[v]])
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::BoundaryMismatch("automorphism does not preserve the boundary".into()))?;
        perms.push(perm);
    }
    if perms.is_empty() {
        perms.push((0..boundary.len()).collect());
    }

    let free = boundary.len() - 1;
    let total = order
        .checked_pow(free as u32)
        .filter(|&t| t <= limits.enumeration)
        .ok_or(Error::TooLarge {
            what: "boundary assignments",
            size: order.saturating_pow(free as u32),
            limit: limits.enumeration,
        })?;
    let elements = group.elements(limits.enumeration)?;

    let invariant_key = |beta: &[GroupElement]| -> Result<Option<Vec<usize>>> {
        match boundary_obstruction(tree, group, boundary, beta)? {
            BoundaryOutcome::Extends(_) => Ok(None),
            BoundaryOutcome::Obstructed { invariant, .. } => invariant
                .iter()
                .map(|x| group.element_index(x))
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    };

    let mut orbits: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut digits = vec![0usize; free];
    for _ in 0..total {
        let beta: Vec<GroupElement> = std::iter::once(group.identity())
            .chain(digits.iter().map(|&d| elements[d].clone()))
            .collect();
        if invariant_key(&beta)?.is_some() {
            let mut canonical: Option<Vec<usize>> = None;
            for perm in &perms {
                let mut moved = vec![group.identity(); beta.len()];
                for (i, &j) in perm.iter().enumerate() {
                    moved[j] = beta[i].clone();
                }
                let key = invariant_key(&moved)?.expect("automorphisms preserve non-triviality");
                if canonical.as_ref().is_none_or(|c| key < *c) {
                    canonical = Some(key);
                }
            }
            let canonical = canonical.expect("at least one automorphism");
            let slot = *orbits.entry(canonical).or_insert_with(|| {
                representatives.push(beta.clone());
                orbit_sizes.push(0);
                orbit_sizes.len() - 1
            });
            orbit_sizes[slot] += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < elements.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(TreeClassification {
        orbit_count: orbits.len(),
        representatives,
        orbit_sizes,
        examined: total as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_automorphisms;

    fn classify(tree: &Multigraph, group: &GroupDescriptor) -> TreeClassification {
        let auts = enumerate_automorphisms(tree).unwrap();
        classify_tree_boundary(tree, &tree.leaves(), group, &auts, &Limits::default()).unwrap()
    }

    #[test]
    fn stars_over_z2() {
        let counts: Vec<usize> = (2..=6)
            .map(|n| classify(&Multigraph::star(n), &GroupDescriptor::Cyclic(2)).orbit_count)
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn star_four_partitions() {
        let c = classify(&Multigraph::star(4), &GroupDescriptor::Cyclic(2));
        let mut splits: Vec<usize> = c
            .representatives
            .iter()
            .map(|beta| {
                let flipped = beta.iter().filter(|x| **x == GroupElement::Residue(1)).count();
                flipped.min(4 - flipped)
            })
            .collect();
        splits.sort();
        assert_eq!(splits, vec![1, 2]);
        assert_eq!(c.orbit_sizes.iter().sum::<usize>(), 7);
    }

    #[test]
    fn path_has_one_class() {
        let c = classify(&Multigraph::path(3), &GroupDescriptor::Cyclic(2));
        assert_eq!(c.orbit_count, 1);
        assert_eq!(c.examined, 2);
    }

    #[test]
    fn without_symmetry_every_class_is_its_own_orbit() {
        let t = Multigraph::star(3);
        let c = classify_tree_boundary(&t, &t.leaves(), &GroupDescriptor::Cyclic(3), &[], &Limits::default()).unwrap();
        assert_eq!(c.orbit_count, 8);
    }

    #[test]
    fn rejects_cycles_and_infinite_groups() {
        let c = Multigraph::cycle(3);
        assert_eq!(
            classify_tree_boundary(&c, &[0, 1], &GroupDescriptor::Cyclic(2), &[], &Limits::default()),
            Err(Error::NotATree)
        );
        let t = Multigraph::path(3);
        assert!(classify_tree_boundary(&t, &[0, 2], &GroupDescriptor::integers(), &[], &Limits::default()).is_err());
    }
}
