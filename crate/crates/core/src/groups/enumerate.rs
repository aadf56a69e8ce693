use std::collections::{HashMap, HashSet};

use super::hom::rule_points;
use super::{GroupDescriptor, GroupElement, Homomorphism};
use crate::error::{Error, Result};

/// Default cap on the number of candidate image assignments examined.
pub const DEFAULT_HOM_SEARCH_BOUND: u128 = 1_000_000;

pub fn enumerate_homomorphisms(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
) -> Result<Vec<Homomorphism>> {
    enumerate_homomorphisms_bounded(source, target, DEFAULT_HOM_SEARCH_BOUND)
}

/// Every homomorphism `source -> target`, found by searching generator
/// images and checking relations. Infinite groups are accepted only when
/// each generator has finitely many admissible images (for instance a
/// finite-order generator mapping into `Z^n`); otherwise the answer is
/// [`Error::Undecided`].
pub fn enumerate_homomorphisms_bounded(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
    bound: u128,
) -> Result<Vec<Homomorphism>> {
    source.validate()?;
    target.validate()?;
    let mut budget = bound;
    let rules = image_rules(source, target, &mut budget, bound)?;
    rules
        .into_iter()
        .map(|images| Homomorphism::new(source.clone(), target.clone(), images))
        .collect()
}

/// Bijective homomorphisms between finite groups.
pub fn enumerate_isomorphisms(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
    bound: u128,
) -> Result<Vec<Homomorphism>> {
    let (Some(n), Some(m)) = (source.order(), target.order()) else {
        return Err(Error::Undecided(format!(
            "isomorphism search between {source} and {target} needs finite groups"
        )));
    };
    if n != m {
        return Ok(Vec::new());
    }
    let elements = source.elements(bound)?;
    let mut out = Vec::new();
    for phi in enumerate_homomorphisms_bounded(source, target, bound)? {
        let image: HashSet<GroupElement> = phi.apply_all(&elements)?.into_iter().collect();
        if image.len() as u128 == n {
            out.push(phi);
        }
    }
    Ok(out)
}

pub fn enumerate_automorphisms_of(g: &GroupDescriptor, bound: u128) -> Result<Vec<Homomorphism>> {
    enumerate_isomorphisms(g, g, bound)
}

fn spend(budget: &mut u128, amount: u128, bound: u128) -> Result<()> {
    if amount > *budget {
        return Err(Error::TooLarge {
            what: "homomorphism search",
            size: amount.max(bound.saturating_add(1)),
            limit: bound,
        });
    }
    *budget -= amount;
    Ok(())
}

/// Image vectors in [`rule_points`] order for every homomorphism.
fn image_rules(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
    budget: &mut u128,
    bound: u128,
) -> Result<Vec<Vec<GroupElement>>> {
    match source {
        GroupDescriptor::FiniteTable(t) => {
            let gens = t.generating_set();
            let lists = gens
                .iter()
                .map(|&g| candidates(target, Some(t.element_order(g)), bound))
                .collect::<Result<Vec<_>>>()?;
            let mut out = Vec::new();
            for choice in cartesian(&lists, budget, bound)? {
                if let Some(table) = extend_from_generators(source, target, &gens, &choice)? {
                    out.push(table);
                }
            }
            Ok(out)
        }
        GroupDescriptor::DirectProduct(fs) => {
            let per_factor = fs
                .iter()
                .map(|f| image_rules(f, target, budget, bound))
                .collect::<Result<Vec<_>>>()?;
            let mut out = Vec::new();
            for combo in cartesian(&per_factor, budget, bound)? {
                let images: Vec<GroupElement> = combo.into_iter().flatten().collect();
                if accept(source, target, &images)? {
                    out.push(images);
                }
            }
            Ok(out)
        }
        _ => {
            let gens = rule_points(source);
            let lists = gens
                .iter()
                .map(|g| candidates(target, source.element_order(g)?, bound))
                .collect::<Result<Vec<_>>>()?;
            let mut out = Vec::new();
            for images in cartesian(&lists, budget, bound)? {
                if accept(source, target, &images)? {
                    out.push(images);
                }
            }
            Ok(out)
        }
    }
}

fn accept(source: &GroupDescriptor, target: &GroupDescriptor, images: &[GroupElement]) -> Result<bool> {
    match Homomorphism::new(source.clone(), target.clone(), images.to_vec()) {
        Ok(_) => Ok(true),
        Err(Error::InvalidHomomorphism(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Target elements whose order divides `order` (any element when `None`).
fn candidates(target: &GroupDescriptor, order: Option<u64>, bound: u128) -> Result<Vec<GroupElement>> {
    if target.is_finite() {
        let xs = target.elements(bound)?;
        return match order {
            None => Ok(xs),
            Some(m) => {
                let m = i64::try_from(m).map_err(|_| Error::Overflow)?;
                let mut out = Vec::new();
                for x in xs {
                    if target.is_identity(&target.pow(&x, m)?) {
                        out.push(x);
                    }
                }
                Ok(out)
            }
        };
    }
    let Some(m) = order else {
        return Err(Error::Undecided(format!(
            "an infinite-order generator has infinitely many images in {target}"
        )));
    };
    torsion_dividing(target, m, bound)
}

fn torsion_dividing(target: &GroupDescriptor, m: u64, bound: u128) -> Result<Vec<GroupElement>> {
    match target {
        GroupDescriptor::FreeAbelian(_) => Ok(vec![target.identity()]),
        GroupDescriptor::InfiniteDihedral => {
            if m % 2 == 1 {
                Ok(vec![target.identity()])
            } else {
                Err(Error::Undecided(format!(
                    "elements of order dividing {m} in {target} include infinitely many reflections"
                )))
            }
        }
        GroupDescriptor::DirectProduct(fs) => {
            let lists = fs
                .iter()
                .map(|f| torsion_dividing(f, m, bound))
                .collect::<Result<Vec<_>>>()?;
            let mut budget = bound;
            Ok(cartesian(&lists, &mut budget, bound)?
                .into_iter()
                .map(GroupElement::Tuple)
                .collect())
        }
        finite => candidates(finite, Some(m), bound),
    }
}

fn cartesian<T: Clone>(lists: &[Vec<T>], budget: &mut u128, bound: u128) -> Result<Vec<Vec<T>>> {
    let total = lists
        .iter()
        .try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128))
        .unwrap_or(u128::MAX);
    spend(budget, total, bound)?;
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for x in list {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Extends generator images along the Cayley graph; `None` on conflict.
fn extend_from_generators(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
    gens: &[usize],
    images: &[GroupElement],
) -> Result<Option<Vec<GroupElement>>> {
    let GroupDescriptor::FiniteTable(t) = source else {
        unreachable!("table sources only")
    };
    let mut map: HashMap<usize, GroupElement> = HashMap::new();
    map.insert(t.identity(), target.identity());
    let mut queue = vec![t.identity()];
    while let Some(x) = queue.pop() {
        let fx = map[&x].clone();
        for (&g, fg) in gens.iter().zip(images) {
            let y = t.mul(x, g);
            let fy = target.mul(&fx, fg)?;
            match map.get(&y) {
                Some(prev) if *prev != fy => return Ok(None),
                Some(_) => {}
                None => {
                    map.insert(y, fy);
                    queue.push(y);
                }
            }
        }
    }
    let table: Vec<GroupElement> = (0..t.order()).map(|i| map[&i].clone()).collect();
    Ok(accept(source, target, &table)?.then_some(table))
}
