use super::{Cochain1, NetworkSheaf};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::groups::GroupDescriptor;
use crate::limits::Limits;

/// Exhaustive partition of all 1-cochains of the constant sheaf into gauge
/// orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Enumeration {
    pub count: usize,
    /// Smallest cochain of each class in mixed-radix order.
    pub representatives: Vec<Cochain1>,
    pub class_sizes: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Every cochain is a cocycle on a graph, so this walks all `|G|^|E|`
/// cochains and joins each to its images under single-vertex generator
/// gauges. Those gauges generate the whole gauge group, so the components
/// are exactly the cohomology classes.
pub fn enumerate_h1_classes(graph: &Multigraph, group: &GroupDescriptor, limits: &Limits) -> Result<H1Enumeration> {
    let order = group.order().ok_or_else(|| {
        Error::Undecided(format!("{group} is infinite; classes cannot be enumerated"))
    })?;
    let total = order
        .checked_pow(graph.edge_count() as u32)
        .filter(|&t| t <= limits.enumeration)
        .ok_or(Error::TooLarge {
            what: "cochain enumeration",
            size: order.saturating_pow(graph.edge_count() as u32),
            limit: limits.enumeration,
        })? as usize;
    let sheaf = NetworkSheaf::constant(graph, group)?;
    let elements = group.elements(order)?;
    let gens = group.generators();
    let radix = order as usize;

    let decode = |mut idx: usize| -> Cochain1 {
        let mut values = Vec::with_capacity(graph.edge_count());
        for _ in 0..graph.edge_count() {
            values.push(elements[idx % radix].clone());
            idx /= radix;
        }
        Cochain1(values)
    };
    let encode = |c: &Cochain1| -> Result<usize> {
        let mut idx = 0;
        for x in c.0.iter().rev() {
            idx = idx * radix + group.element_index(x)?;
        }
        Ok(idx)
    };

    let mut gauges = Vec::new();
    for v in 0..graph.vertex_count() {
        for g in &gens {
            let mut xi = sheaf.identity_c0();
            xi.0[v] = g.clone();
            gauges.push(xi);
        }
    }
    let mut uf = UnionFind((0..total).collect());
    for idx in 0..total {
        let eta = decode(idx);
        for xi in &gauges {
            let moved = sheaf.twist(&eta, xi)?;
            uf.union(idx, encode(&moved)?);
        }
    }
    let mut reps = Vec::new();
    let mut sizes = vec![0usize; total];
    for idx in 0..total {
        let r = uf.find(idx);
        sizes[r] += 1;
        if r == idx {
            reps.push(idx);
        }
    }
    Ok(H1Enumeration {
        count: reps.len(),
        class_sizes: reps.iter().map(|&r| sizes[r]).collect(),
        representatives: reps.into_iter().map(decode).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::symmetric_group;

    fn count(g: &Multigraph, group: GroupDescriptor) -> usize {
        enumerate_h1_classes(g, &group, &Limits::default()).unwrap().count
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&Multigraph::cycle(4), GroupDescriptor::Cyclic(2)), 2);
        let s3 = GroupDescriptor::table(symmetric_group(3));
        assert_eq!(count(&Multigraph::rose(2), s3.clone()), 11);
        assert_eq!(count(&Multigraph::path(3), s3.clone()), 1);
        // One loop: conjugacy classes of S3.
        assert_eq!(count(&Multigraph::rose(1), s3), 3);
    }

    #[test]
    fn class_sizes_cover_everything() {
        let e = enumerate_h1_classes(&Multigraph::cycle(3), &GroupDescriptor::Cyclic(3), &Limits::default()).unwrap();
        assert_eq!(e.class_sizes.iter().sum::<usize>(), 27);
        assert_eq!(e.count, 3);
    }

    #[test]
    fn bound_is_enforced() {
        let limits = Limits::with_search_bound(10);
        assert!(matches!(
            enumerate_h1_classes(&Multigraph::cycle(4), &GroupDescriptor::Cyclic(2), &limits),
            Err(Error::TooLarge { .. })
        ));
    }
}
