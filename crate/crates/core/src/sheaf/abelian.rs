use super::{Cochain0, Cochain1, NetworkSheaf};
use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupElement, Homomorphism};
use crate::linalg::{cokernel, kernel_basis, smith_normal_form, solve_integer_linear, FgAbelianGroup, IntegerMatrix};
use crate::scalar::IntegerScalar;

/// Coordinate layout of a finitely generated abelian stalk: one modulus per
/// coordinate, `0` for a copy of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCoordinates {
    pub moduli: Vec<u64>,
}

impl AbelianCoordinates {
    pub fn of(g: &GroupDescriptor) -> Result<Self> {
        let mut moduli = Vec::new();
        collect_moduli(g, &mut moduli)?;
        Ok(Self { moduli })
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }
}

fn collect_moduli(g: &GroupDescriptor, out: &mut Vec<u64>) -> Result<()> {
    match g {
        GroupDescriptor::FreeAbelian(n) => out.extend(std::iter::repeat_n(0, *n)),
        GroupDescriptor::Cyclic(m) => out.push(*m),
        GroupDescriptor::DirectProduct(fs) => {
            for f in fs {
                collect_moduli(f, out)?;
            }
        }
        other => {
            return Err(Error::NonAbelian(format!(
                "{other} has no integer coordinates; only Z^n, Z/m and their products do"
            )))
        }
    }
    Ok(())
}

pub(crate) fn supports_coordinates(sheaf: &NetworkSheaf) -> bool {
    let g = sheaf.graph();
    (0..g.vertex_count()).all(|v| AbelianCoordinates::of(sheaf.vertex_stalk(v)).is_ok())
        && (0..g.edge_count()).all(|e| AbelianCoordinates::of(sheaf.edge_stalk(e)).is_ok())
}

fn to_coords(g: &GroupDescriptor, x: &GroupElement, out: &mut Vec<i64>) -> Result<()> {
    match (g, x) {
        (GroupDescriptor::FreeAbelian(_), GroupElement::Vector(v)) => out.extend_from_slice(v),
        (GroupDescriptor::Cyclic(_), GroupElement::Residue(r)) => {
            out.push(i64::try_from(*r).map_err(|_| Error::Overflow)?)
        }
        (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
            for (f, x) in fs.iter().zip(xs) {
                to_coords(f, x, out)?;
            }
        }
        _ => return Err(Error::DescriptorMismatch(format!("{x:?} has no coordinates in {g}"))),
    }
    Ok(())
}

fn from_coords<T: IntegerScalar>(g: &GroupDescriptor, coords: &mut std::slice::Iter<'_, T>) -> Result<GroupElement> {
    let mut next = || coords.next().cloned().ok_or_else(|| Error::DimensionMismatch("coordinate vector too short".into()));
    Ok(match g {
        GroupDescriptor::FreeAbelian(n) => GroupElement::Vector(
            (0..*n).map(|_| next()?.to_i64_checked()).collect::<Result<_>>()?,
        ),
        GroupDescriptor::Cyclic(m) => {
            let m_t = T::from(i64::try_from(*m).map_err(|_| Error::Overflow)?);
            let r = next()?.mod_floor(&m_t);
            GroupElement::Residue(r.to_i64_checked()? as u64)
        }
        GroupDescriptor::DirectProduct(fs) => {
            GroupElement::Tuple(fs.iter().map(|f| from_coords(f, coords)).collect::<Result<_>>()?)
        }
        other => return Err(Error::NonAbelian(format!("{other}"))),
    })
}

/// Columns are coordinates of the images of the source's unit vectors.
fn hom_matrix(h: &Homomorphism) -> Result<Vec<Vec<i64>>> {
    let rows = AbelianCoordinates::of(h.target())?.len();
    let gens = h.source().generators();
    let mut m = vec![vec![0i64; gens.len()]; rows];
    for (j, g) in gens.iter().enumerate() {
        let mut c = Vec::new();
        to_coords(h.target(), &h.apply(g)?, &mut c)?;
        for (i, v) in c.into_iter().enumerate() {
            m[i][j] = v;
        }
    }
    Ok(m)
}

struct Layout {
    v_off: Vec<usize>,
    e_off: Vec<usize>,
    v_mod: Vec<u64>,
    e_mod: Vec<u64>,
}

fn layout(sheaf: &NetworkSheaf) -> Result<Layout> {
    let g = sheaf.graph();
    let mut v_off = Vec::new();
    let mut v_mod = Vec::new();
    for v in 0..g.vertex_count() {
        v_off.push(v_mod.len());
        v_mod.extend(AbelianCoordinates::of(sheaf.vertex_stalk(v))?.moduli);
    }
    v_off.push(v_mod.len());
    let mut e_off = Vec::new();
    let mut e_mod = Vec::new();
    for e in 0..g.edge_count() {
        e_off.push(e_mod.len());
        e_mod.extend(AbelianCoordinates::of(sheaf.edge_stalk(e))?.moduli);
    }
    e_off.push(e_mod.len());
    Ok(Layout {
        v_off,
        e_off,
        v_mod,
        e_mod,
    })
}

fn coboundary_matrix<T: IntegerScalar>(sheaf: &NetworkSheaf, lay: &Layout) -> Result<IntegerMatrix<T>> {
    use super::Side;
    let mut d: IntegerMatrix<T> = IntegerMatrix::zeros(lay.e_mod.len(), lay.v_mod.len());
    for (e, edge) in sheaf.graph().edges().iter().enumerate() {
        for (side, v, sign) in [(Side::Tail, edge.tail, -1i64), (Side::Head, edge.head, 1)] {
            let m = hom_matrix(sheaf.restriction(e, side))?;
            for (i, row) in m.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    let cell = &mut d[(lay.e_off[e] + i, lay.v_off[v] + j)];
                    *cell = cell.add_checked(&T::from(sign * c))?;
                }
            }
        }
    }
    Ok(d)
}

/// Columns `m e_i` for every coordinate with a positive modulus.
fn relation_columns<T: IntegerScalar>(moduli: &[u64]) -> Result<IntegerMatrix<T>> {
    let rels: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i] != 0).collect();
    let mut r = IntegerMatrix::zeros(moduli.len(), rels.len());
    for (c, &i) in rels.iter().enumerate() {
        r[(i, c)] = T::from(i64::try_from(moduli[i]).map_err(|_| Error::Overflow)?);
    }
    Ok(r)
}

/// `H^0` and `H^1` of a sheaf with finitely generated abelian stalks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCohomology<T> {
    pub h0: FgAbelianGroup<T>,
    pub h1: FgAbelianGroup<T>,
    /// The coboundary in coordinates: rows index `C^1`, columns `C^0`.
    pub coboundary: IntegerMatrix<T>,
    /// Smith diagonal of the `H^1` presentation `[δ | relations]`.
    pub h1_invariants: Vec<T>,
}

/// Kernel and cokernel of `δ` through Smith normal form. Finite cyclic
/// factors enter as relation columns appended to the coboundary.
pub fn abelian_cohomology<T: IntegerScalar>(sheaf: &NetworkSheaf) -> Result<AbelianCohomology<T>> {
    let lay = layout(sheaf)?;
    let d = coboundary_matrix::<T>(sheaf, &lay)?;
    let r1 = relation_columns::<T>(&lay.e_mod)?;
    let presentation = d.hconcat(&r1)?;
    let snf = smith_normal_form(&presentation)?;
    let h1 = cokernel(&presentation)?;

    // H^0: x in Z^{c0} with δx in the relation lattice, modulo relations.
    let c0 = lay.v_mod.len();
    let k = kernel_basis(&presentation)?;
    let projected = IntegerMatrix::from_rows_with_cols(
        (0..c0).map(|i| k.row(i).to_vec()).collect(),
        k.cols(),
    )?;
    let h0 = if c0 == 0 {
        FgAbelianGroup::trivial()
    } else {
        let ps = smith_normal_form(&projected)?;
        let gv = projected.mul(&ps.right)?;
        let basis = IntegerMatrix::from_rows_with_cols(
            (0..c0).map(|i| gv.row(i)[..ps.rank].to_vec()).collect(),
            ps.rank,
        )?;
        let r0 = relation_columns::<T>(&lay.v_mod)?;
        let mut coords = Vec::with_capacity(r0.cols());
        for j in 0..r0.cols() {
            let c = solve_integer_linear(&basis, &r0.column(j))?.ok_or_else(|| {
                Error::InvalidSheaf("a restriction map does not respect a cyclic relation".into())
            })?;
            coords.push(c);
        }
        let mut p = IntegerMatrix::zeros(ps.rank, coords.len());
        for (j, c) in coords.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                p[(i, j)] = v.clone();
            }
        }
        cokernel(&p)?
    };
    Ok(AbelianCohomology {
        h0,
        h1,
        coboundary: d,
        h1_invariants: snf.invariant_factors(),
    })
}

/// Solves `twist(η, ξ) = η'` as the linear system `δξ = η' - η` modulo the
/// cyclic relations.
pub(crate) fn abelian_gauge_solve<T: IntegerScalar>(
    sheaf: &NetworkSheaf,
    eta: &Cochain1,
    eta2: &Cochain1,
) -> Result<Option<Cochain0>> {
    let lay = layout(sheaf)?;
    let d = coboundary_matrix::<T>(sheaf, &lay)?;
    let presentation = d.hconcat(&relation_columns::<T>(&lay.e_mod)?)?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for e in 0..sheaf.graph().edge_count() {
        to_coords(sheaf.edge_stalk(e), &eta.0[e], &mut a)?;
        to_coords(sheaf.edge_stalk(e), &eta2.0[e], &mut b)?;
    }
    let rhs: Vec<T> = a
        .iter()
        .zip(&b)
        .map(|(x, y)| T::from(*y).sub_checked(&T::from(*x)))
        .collect::<Result<_>>()?;
    let Some(sol) = solve_integer_linear(&presentation, &rhs)? else {
        return Ok(None);
    };
    let mut it = sol[..lay.v_mod.len()].iter();
    let xi = Cochain0(
        (0..sheaf.graph().vertex_count())
            .map(|v| from_coords(sheaf.vertex_stalk(v), &mut it))
            .collect::<Result<_>>()?,
    );
    if sheaf.twist(eta, &xi)? != *eta2 {
        return Err(Error::Undecided("linear solution failed re-verification".into()));
    }
    Ok(Some(xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;
    use num_bigint::BigInt;

    fn coh(g: &Multigraph, group: GroupDescriptor) -> AbelianCohomology<BigInt> {
        abelian_cohomology(&NetworkSheaf::constant(g, &group).unwrap()).unwrap()
    }

    fn cyclic(t: &[i64]) -> FgAbelianGroup<BigInt> {
        FgAbelianGroup {
            rank: 0,
            torsion: t.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    #[test]
    fn circle_and_rose_over_z() {
        let c = coh(&Multigraph::cycle(4), GroupDescriptor::integers());
        assert_eq!(c.h0, FgAbelianGroup::free(1));
        assert_eq!(c.h1, FgAbelianGroup::free(1));
        let r = coh(&Multigraph::rose(2), GroupDescriptor::integers());
        assert_eq!(r.h0, FgAbelianGroup::free(1));
        assert_eq!(r.h1, FgAbelianGroup::free(2));
        let p = coh(&Multigraph::path(3), GroupDescriptor::integers());
        assert_eq!(p.h0, FgAbelianGroup::free(1));
        assert!(p.h1.is_trivial());
    }

    #[test]
    fn finite_coefficients() {
        let c = coh(&Multigraph::cycle(4), GroupDescriptor::Cyclic(2));
        assert_eq!(c.h0, cyclic(&[2]));
        assert_eq!(c.h1, cyclic(&[2]));
        let g = GroupDescriptor::DirectProduct(vec![GroupDescriptor::Cyclic(2), GroupDescriptor::Cyclic(3)]);
        let r = coh(&Multigraph::rose(2), g);
        assert_eq!(r.h1.order().unwrap(), Some(BigInt::from(36)));
        assert_eq!(r.h1, cyclic(&[6, 6]));
    }

    #[test]
    fn mixed_stalks() {
        let g = GroupDescriptor::DirectProduct(vec![GroupDescriptor::integers(), GroupDescriptor::Cyclic(4)]);
        let c = coh(&Multigraph::cycle(3), g);
        assert_eq!(c.h1, FgAbelianGroup { rank: 1, torsion: vec![BigInt::from(4)] });
        assert_eq!(c.h0, FgAbelianGroup { rank: 1, torsion: vec![BigInt::from(4)] });
    }

    #[test]
    fn reduction_sheaf() {
        // Z at both vertices, Z/2 on the edge, reduction mod 2 on both sides:
        // sections are pairs with equal parity, H^1 = 0.
        let g = Multigraph::path(2);
        let z = GroupDescriptor::integers();
        let z2 = GroupDescriptor::Cyclic(2);
        let red = Homomorphism::new(z.clone(), z2.clone(), vec![GroupElement::Residue(1)]).unwrap();
        let sheaf = NetworkSheaf::general(&g, vec![z.clone(), z.clone()], vec![z2], vec![red.clone()], vec![red]).unwrap();
        let c: AbelianCohomology<BigInt> = abelian_cohomology(&sheaf).unwrap();
        assert_eq!(c.h0, FgAbelianGroup::free(2));
        assert!(c.h1.is_trivial());
    }

    #[test]
    fn dihedral_is_rejected() {
        let sheaf = NetworkSheaf::constant(&Multigraph::cycle(3), &GroupDescriptor::InfiniteDihedral).unwrap();
        assert!(matches!(abelian_cohomology::<i64>(&sheaf), Err(Error::NonAbelian(_))));
    }
}
