//! Exact structure groups.
//!
//! A [`GroupDescriptor`] names the group, a [`GroupElement`] is a tagged
//! payload that only makes sense together with its descriptor. All integer
//! arithmetic is checked; overflow is reported as [`Error::Overflow`].

mod conjugacy;
mod enumerate;
mod hom;
mod table;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use conjugacy::simultaneous_conjugacy;
pub use enumerate::{
    enumerate_automorphisms_of, enumerate_homomorphisms, enumerate_homomorphisms_bounded,
    enumerate_isomorphisms, DEFAULT_HOM_SEARCH_BOUND,
};
pub use hom::{rule_points, Homomorphism};
pub use table::{cube_rotation_group, symmetric_group, TableGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn apply(self, h: i64) -> Result<i64> {
        match self {
            Sign::Plus => Ok(h),
            Sign::Minus => h.checked_neg().ok_or(Error::Overflow),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// `Z^n` under addition.
    FreeAbelian(usize),
    /// `Z/m`; order 2 is written multiplicatively as `{+1, -1}`.
    Cyclic(u64),
    FiniteTable(Arc<TableGroup>),
    /// `Z ⋊ Z/2` as pairs `(h, eps)`.
    InfiniteDihedral,
    DirectProduct(Vec<GroupDescriptor>),
}

/// Payload for an element. Cyclic residues are stored additively even for
/// order 2; the `±1` notation only exists in rendering and parsing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Vector(Vec<i64>),
    Residue(u64),
    Index(usize),
    Dihedral { h: i64, eps: Sign },
    Tuple(Vec<GroupElement>),
}

impl GroupElement {
    pub fn dihedral(h: i64, eps: i64) -> Self {
        GroupElement::Dihedral {
            h,
            eps: Sign::from_value(eps).expect("eps must be +1 or -1"),
        }
    }

    pub fn scalar(n: i64) -> Self {
        GroupElement::Vector(vec![n])
    }
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        GroupDescriptor::Cyclic(1)
    }

    pub fn integers() -> Self {
        GroupDescriptor::FreeAbelian(1)
    }

    pub fn table(group: TableGroup) -> Self {
        GroupDescriptor::FiniteTable(Arc::new(group))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GroupDescriptor::FreeAbelian(_) => "free_abelian",
            GroupDescriptor::Cyclic(_) => "cyclic",
            GroupDescriptor::FiniteTable(_) => "finite_table",
            GroupDescriptor::InfiniteDihedral => "infinite_dihedral",
            GroupDescriptor::DirectProduct(_) => "direct_product",
        }
    }

    /// Checks that the descriptor itself is well formed.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupDescriptor::Cyclic(0) => Err(Error::InvalidGroup("cyclic order must be positive".into())),
            GroupDescriptor::DirectProduct(fs) => fs.iter().try_for_each(|f| f.validate()),
            _ => Ok(()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::FreeAbelian(n) => GroupElement::Vector(vec![0; *n]),
            GroupDescriptor::Cyclic(_) => GroupElement::Residue(0),
            GroupDescriptor::FiniteTable(t) => GroupElement::Index(t.identity()),
            GroupDescriptor::InfiniteDihedral => GroupElement::Dihedral { h: 0, eps: Sign::Plus },
            GroupDescriptor::DirectProduct(fs) => {
                GroupElement::Tuple(fs.iter().map(|f| f.identity()).collect())
            }
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (GroupDescriptor::FreeAbelian(n), GroupElement::Vector(v)) => v.len() == *n,
            (GroupDescriptor::Cyclic(m), GroupElement::Residue(r)) => r < m,
            (GroupDescriptor::FiniteTable(t), GroupElement::Index(i)) => *i < t.order(),
            (GroupDescriptor::InfiniteDihedral, GroupElement::Dihedral { .. }) => true,
            (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!(
                "{x:?} is not an element of {self}"
            )))
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        use GroupElement as E;
        match (self, a, b) {
            (GroupDescriptor::FreeAbelian(n), E::Vector(x), E::Vector(y))
                if x.len() == *n && y.len() == *n =>
            {
                x.iter()
                    .zip(y)
                    .map(|(p, q)| p.checked_add(*q).ok_or(Error::Overflow))
                    .collect::<Result<_>>()
                    .map(E::Vector)
            }
            (GroupDescriptor::Cyclic(m), E::Residue(x), E::Residue(y)) if x < m && y < m => {
                Ok(E::Residue(((*x as u128 + *y as u128) % *m as u128) as u64))
            }
            (GroupDescriptor::FiniteTable(t), E::Index(x), E::Index(y))
                if *x < t.order() && *y < t.order() =>
            {
                Ok(E::Index(t.mul(*x, *y)))
            }
            (
                GroupDescriptor::InfiniteDihedral,
                E::Dihedral { h: h1, eps: e1 },
                E::Dihedral { h: h2, eps: e2 },
            ) => {
                let h = h1.checked_add(e1.apply(*h2)?).ok_or(Error::Overflow)?;
                Ok(E::Dihedral { h, eps: e1.times(*e2) })
            }
            (GroupDescriptor::DirectProduct(fs), E::Tuple(xs), E::Tuple(ys))
                if fs.len() == xs.len() && fs.len() == ys.len() =>
            {
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.mul(x, y))
                    .collect::<Result<_>>()
                    .map(E::Tuple)
            }
            _ => Err(self.mismatch(&[a, b])),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        use GroupElement as E;
        match (self, a) {
            (GroupDescriptor::FreeAbelian(n), E::Vector(x)) if x.len() == *n => x
                .iter()
                .map(|p| p.checked_neg().ok_or(Error::Overflow))
                .collect::<Result<_>>()
                .map(E::Vector),
            (GroupDescriptor::Cyclic(m), E::Residue(x)) if x < m => {
                Ok(E::Residue(if *x == 0 { 0 } else { m - x }))
            }
            (GroupDescriptor::FiniteTable(t), E::Index(x)) if *x < t.order() => {
                Ok(E::Index(t.inverse(*x)))
            }
            (GroupDescriptor::InfiniteDihedral, E::Dihedral { h, eps }) => {
                // (h, e)^-1 = (-e h, e)
                let h = eps.apply(*h)?.checked_neg().ok_or(Error::Overflow)?;
                Ok(E::Dihedral { h, eps: *eps })
            }
            (GroupDescriptor::DirectProduct(fs), E::Tuple(xs)) if fs.len() == xs.len() => fs
                .iter()
                .zip(xs)
                .map(|(f, x)| f.inv(x))
                .collect::<Result<_>>()
                .map(E::Tuple),
            _ => Err(self.mismatch(&[a])),
        }
    }

    /// Membership-checked equality.
    pub fn eq(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.identity()
    }

    /// `a^-1 b`.
    pub fn left_divide(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.mul(&self.inv(a)?, b)
    }

    /// `x^-1 a x`.
    pub fn conjugate(&self, a: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        self.mul(&self.mul(&self.inv(x)?, a)?, x)
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        let mut base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Ordered product of a sequence.
    pub fn product<'a, I>(&self, items: I) -> Result<GroupElement>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        items
            .into_iter()
            .try_fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupDescriptor::FreeAbelian(0) => Some(1),
            GroupDescriptor::FreeAbelian(_) | GroupDescriptor::InfiniteDihedral => None,
            GroupDescriptor::Cyclic(m) => Some(*m as u128),
            GroupDescriptor::FiniteTable(t) => Some(t.order() as u128),
            GroupDescriptor::DirectProduct(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| f.order().and_then(|o| acc.checked_mul(o))),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupDescriptor::FreeAbelian(_) | GroupDescriptor::Cyclic(_) => true,
            GroupDescriptor::FiniteTable(t) => t.is_abelian(),
            GroupDescriptor::InfiniteDihedral => false,
            GroupDescriptor::DirectProduct(fs) => fs.iter().all(|f| f.is_abelian()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    /// Every element in a fixed order; errors for infinite groups or when the
    /// order exceeds `limit`.
    pub fn elements(&self, limit: u128) -> Result<Vec<GroupElement>> {
        let order = self.order().ok_or_else(|| {
            Error::Undecided(format!("{self} is infinite; its elements cannot be listed"))
        })?;
        if order > limit {
            return Err(Error::TooLarge {
                what: "group order",
                size: order,
                limit,
            });
        }
        Ok(match self {
            GroupDescriptor::FreeAbelian(_) => vec![self.identity()],
            GroupDescriptor::Cyclic(m) => (0..*m).map(GroupElement::Residue).collect(),
            GroupDescriptor::FiniteTable(t) => (0..t.order()).map(GroupElement::Index).collect(),
            GroupDescriptor::InfiniteDihedral => unreachable!("infinite"),
            GroupDescriptor::DirectProduct(fs) => {
                let mut acc: Vec<Vec<GroupElement>> = vec![Vec::new()];
                for f in fs {
                    let xs = f.elements(limit)?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            xs.iter().map(move |x| {
                                let mut p = prefix.clone();
                                p.push(x.clone());
                                p
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(GroupElement::Tuple).collect()
            }
        })
    }

    /// Position of `x` in [`GroupDescriptor::elements`] order.
    pub fn element_index(&self, x: &GroupElement) -> Result<usize> {
        self.check(x)?;
        match (self, x) {
            (GroupDescriptor::FreeAbelian(0), _) => Ok(0),
            (GroupDescriptor::Cyclic(_), GroupElement::Residue(r)) => Ok(*r as usize),
            (GroupDescriptor::FiniteTable(_), GroupElement::Index(i)) => Ok(*i),
            (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
                let mut idx = 0usize;
                for (f, x) in fs.iter().zip(xs) {
                    let o = f.order().ok_or_else(|| Error::Undecided("infinite factor".into()))?;
                    idx = idx * o as usize + f.element_index(x)?;
                }
                Ok(idx)
            }
            _ => Err(Error::Undecided(format!("{self} is infinite"))),
        }
    }

    /// Order of a single element, `None` when infinite.
    pub fn element_order(&self, x: &GroupElement) -> Result<Option<u64>> {
        self.check(x)?;
        Ok(match (self, x) {
            (GroupDescriptor::FreeAbelian(_), GroupElement::Vector(v)) => {
                if v.iter().all(|&c| c == 0) {
                    Some(1)
                } else {
                    None
                }
            }
            (GroupDescriptor::Cyclic(m), GroupElement::Residue(r)) => {
                Some(m / num_integer::gcd(*m, *r))
            }
            (GroupDescriptor::InfiniteDihedral, GroupElement::Dihedral { h, eps }) => match eps {
                Sign::Minus => Some(2),
                Sign::Plus if *h == 0 => Some(1),
                Sign::Plus => None,
            },
            (GroupDescriptor::FiniteTable(t), GroupElement::Index(i)) => Some(t.element_order(*i)),
            (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
                let mut l = 1u64;
                for (f, x) in fs.iter().zip(xs) {
                    match f.element_order(x)? {
                        Some(o) => l = num_integer::lcm(l, o),
                        None => return Ok(None),
                    }
                }
                Some(l)
            }
            _ => unreachable!("checked above"),
        })
    }

    /// Standard generators. Homomorphism rules are images of these.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupDescriptor::FreeAbelian(n) => (0..*n)
                .map(|i| {
                    let mut v = vec![0; *n];
                    v[i] = 1;
                    GroupElement::Vector(v)
                })
                .collect(),
            GroupDescriptor::Cyclic(m) => vec![GroupElement::Residue(if *m == 1 { 0 } else { 1 })],
            GroupDescriptor::FiniteTable(t) => t.generating_set().into_iter().map(GroupElement::Index).collect(),
            GroupDescriptor::InfiniteDihedral => vec![
                GroupElement::dihedral(1, 1),
                GroupElement::dihedral(0, -1),
            ],
            GroupDescriptor::DirectProduct(fs) => {
                let mut out = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    for g in f.generators() {
                        let mut parts: Vec<_> = fs.iter().map(|f| f.identity()).collect();
                        parts[i] = g;
                        out.push(GroupElement::Tuple(parts));
                    }
                }
                out
            }
        }
    }

    pub fn render(&self, x: &GroupElement) -> String {
        match (self, x) {
            (GroupDescriptor::FreeAbelian(1), GroupElement::Vector(v)) => v[0].to_string(),
            (GroupDescriptor::FreeAbelian(_), GroupElement::Vector(v)) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(", "))
            }
            (GroupDescriptor::Cyclic(2), GroupElement::Residue(r)) => {
                if *r == 0 { "+1".into() } else { "-1".into() }
            }
            (GroupDescriptor::Cyclic(_), GroupElement::Residue(r)) => r.to_string(),
            (GroupDescriptor::FiniteTable(t), GroupElement::Index(i)) if *i < t.order() => {
                t.name(*i).to_string()
            }
            (GroupDescriptor::InfiniteDihedral, GroupElement::Dihedral { h, eps }) => {
                format!("({h}, {})", if *eps == Sign::Plus { "+1" } else { "-1" })
            }
            (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) if fs.len() == xs.len() => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.render(x)).collect();
                format!("({})", parts.join(", "))
            }
            _ => format!("{x:?}"),
        }
    }

    pub fn render_all(&self, xs: &[GroupElement]) -> String {
        let parts: Vec<String> = xs.iter().map(|x| self.render(x)).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Element of `Z/2` from the `±1` notation.
    pub fn sign_element(s: Sign) -> GroupElement {
        GroupElement::Residue(if s == Sign::Plus { 0 } else { 1 })
    }

    fn mismatch(&self, xs: &[&GroupElement]) -> Error {
        Error::DescriptorMismatch(format!("{xs:?} do not all belong to {self}"))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::FreeAbelian(0) => write!(f, "1"),
            GroupDescriptor::FreeAbelian(1) => write!(f, "Z"),
            GroupDescriptor::FreeAbelian(n) => write!(f, "Z^{n}"),
            GroupDescriptor::Cyclic(1) => write!(f, "1"),
            GroupDescriptor::Cyclic(m) => write!(f, "Z/{m}"),
            GroupDescriptor::FiniteTable(t) => write!(f, "{}", t.label()),
            GroupDescriptor::InfiniteDihedral => write!(f, "Z x| Z/2"),
            GroupDescriptor::DirectProduct(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}
