use super::{GroupDescriptor, GroupElement, Sign};
use crate::error::{Error, Result};

/// Some `x` with `x^-1 a_i x = b_i` for every `i`, or `None`.
///
/// Abelian kinds compare elementwise, table groups try every element, the
/// infinite dihedral group is solved in closed form and products factor
/// componentwise. Any returned conjugator has been re-verified.
pub fn simultaneous_conjugacy(
    g: &GroupDescriptor,
    a: &[GroupElement],
    b: &[GroupElement],
) -> Result<Option<GroupElement>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "tuples of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    for x in a.iter().chain(b) {
        g.check(x)?;
    }
    let found = solve(g, a, b)?;
    if let Some(x) = &found {
        for (ai, bi) in a.iter().zip(b) {
            if g.conjugate(ai, x)? != *bi {
                return Err(Error::Undecided(
                    "conjugator failed re-verification".into(),
                ));
            }
        }
    }
    Ok(found)
}

fn solve(g: &GroupDescriptor, a: &[GroupElement], b: &[GroupElement]) -> Result<Option<GroupElement>> {
    match g {
        GroupDescriptor::FreeAbelian(_) | GroupDescriptor::Cyclic(_) => {
            Ok((a == b).then(|| g.identity()))
        }
        GroupDescriptor::FiniteTable(t) => {
            if t.is_abelian() {
                return Ok((a == b).then(|| g.identity()));
            }
            for x in (0..t.order()).map(GroupElement::Index) {
                let mut ok = true;
                for (ai, bi) in a.iter().zip(b) {
                    if g.conjugate(ai, &x)? != *bi {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
        GroupDescriptor::InfiniteDihedral => dihedral(a, b),
        GroupDescriptor::DirectProduct(fs) => {
            let mut parts = Vec::with_capacity(fs.len());
            for (i, f) in fs.iter().enumerate() {
                let pick = |xs: &[GroupElement]| -> Vec<GroupElement> {
                    xs.iter()
                        .map(|x| match x {
                            GroupElement::Tuple(c) => c[i].clone(),
                            _ => unreachable!("membership checked"),
                        })
                        .collect()
                };
                match solve(f, &pick(a), &pick(b))? {
                    Some(x) => parts.push(x),
                    None => return Ok(None),
                }
            }
            Ok(Some(GroupElement::Tuple(parts)))
        }
    }
}

/// With `x = (k, sigma)`: `x^-1 (h, +1) x = (sigma h, +1)` and
/// `x^-1 (h, -1) x = (sigma (h - 2k), -1)`.
fn dihedral(a: &[GroupElement], b: &[GroupElement]) -> Result<Option<GroupElement>> {
    let parts = |x: &GroupElement| match x {
        GroupElement::Dihedral { h, eps } => (*h, *eps),
        _ => unreachable!("membership checked"),
    };
    'sigma: for sigma in [Sign::Plus, Sign::Minus] {
        let mut k: Option<i64> = None;
        for (ai, bi) in a.iter().zip(b) {
            let (h, e) = parts(ai);
            let (h2, e2) = parts(bi);
            if e != e2 {
                return Ok(None);
            }
            match e {
                Sign::Plus => {
                    if sigma.apply(h)? != h2 {
                        continue 'sigma;
                    }
                }
                Sign::Minus => {
                    // 2k = h - sigma h2
                    let twice = h.checked_sub(sigma.apply(h2)?).ok_or(Error::Overflow)?;
                    if twice % 2 != 0 {
                        continue 'sigma;
                    }
                    match k {
                        Some(prev) if prev != twice / 2 => continue 'sigma,
                        _ => k = Some(twice / 2),
                    }
                }
            }
        }
        return Ok(Some(GroupElement::Dihedral {
            h: k.unwrap_or(0),
            eps: sigma,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::symmetric_group;
    use super::*;
    use proptest::prelude::*;

    fn d(h: i64, e: i64) -> GroupElement {
        GroupElement::dihedral(h, e)
    }

    #[test]
    fn abelian_equal_tuples() {
        let g = GroupDescriptor::FreeAbelian(3);
        let x = vec![GroupElement::Vector(vec![2, 2, 1])];
        assert_eq!(simultaneous_conjugacy(&g, &x, &x).unwrap(), Some(g.identity()));
        let y = vec![GroupElement::Vector(vec![-2, -2, -1])];
        assert_eq!(simultaneous_conjugacy(&g, &x, &y).unwrap(), None);
    }

    #[test]
    fn dihedral_reflection_shift() {
        let g = GroupDescriptor::InfiniteDihedral;
        let x = simultaneous_conjugacy(&g, &[d(5, -1)], &[d(1, -1)]).unwrap();
        assert_eq!(x, Some(d(2, 1)));
        // Parity of reflections is a conjugacy invariant.
        assert_eq!(simultaneous_conjugacy(&g, &[d(0, -1)], &[d(1, -1)]).unwrap(), None);
        // Rotations only flip sign.
        assert_eq!(simultaneous_conjugacy(&g, &[d(3, 1)], &[d(-3, 1)]).unwrap(), Some(d(0, -1)));
        assert_eq!(simultaneous_conjugacy(&g, &[d(3, 1)], &[d(2, 1)]).unwrap(), None);
    }

    #[test]
    fn s3_transpositions() {
        let t = symmetric_group(3);
        let g = GroupDescriptor::table(t.clone());
        let a = GroupElement::Index(t.index_of("(12)").unwrap());
        let b = GroupElement::Index(t.index_of("(13)").unwrap());
        let x = simultaneous_conjugacy(&g, std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap().unwrap();
        assert_eq!(g.conjugate(&a, &x).unwrap(), b);
        // Oracle: exhaustive list of conjugators contains (23).
        let all: Vec<_> = g
            .elements(6)
            .unwrap()
            .into_iter()
            .filter(|y| g.conjugate(&a, y).unwrap() == b)
            .collect();
        assert!(all.contains(&GroupElement::Index(t.index_of("(23)").unwrap())));
        assert!(all.contains(&x));
        let c = GroupElement::Index(t.index_of("(123)").unwrap());
        assert_eq!(simultaneous_conjugacy(&g, &[a], &[c]).unwrap(), None);
    }

    fn dihedral_element() -> impl Strategy<Value = GroupElement> {
        (-30i64..30, prop::bool::ANY).prop_map(|(h, s)| d(h, if s { 1 } else { -1 }))
    }

    proptest! {
        #[test]
        fn dihedral_solver_finds_planted_conjugators(
            tuple in prop::collection::vec(dihedral_element(), 1..4),
            k in -20i64..20,
            s in prop::bool::ANY,
        ) {
            let g = GroupDescriptor::InfiniteDihedral;
            let x = d(k, if s { 1 } else { -1 });
            let conj: Vec<_> = tuple.iter().map(|a| g.conjugate(a, &x).unwrap()).collect();
            let found = simultaneous_conjugacy(&g, &tuple, &conj)?;
            prop_assert!(found.is_some());
            let back = simultaneous_conjugacy(&g, &conj, &tuple)?;
            prop_assert!(back.is_some());
        }

        #[test]
        fn dihedral_solver_is_symmetric(a in prop::collection::vec(dihedral_element(), 2), b in prop::collection::vec(dihedral_element(), 2)) {
            let g = GroupDescriptor::InfiniteDihedral;
            let fwd = simultaneous_conjugacy(&g, &a, &b)?.is_some();
            let bwd = simultaneous_conjugacy(&g, &b, &a)?.is_some();
            prop_assert_eq!(fwd, bwd);
        }
    }
}
