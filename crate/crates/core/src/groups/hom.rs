use std::fmt;

use super::{GroupDescriptor, GroupElement, Sign};
use crate::error::{Error, Result};

/// Group homomorphism stored as the images of the source's standard
/// generators (see [`GroupDescriptor::generators`]), except for table
/// sources where every element's image is kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: GroupDescriptor,
    target: GroupDescriptor,
    images: Vec<GroupElement>,
}

impl Homomorphism {
    /// Builds from generator images and checks the defining relations:
    /// commuting images for `Z^n`, `g^m = 1` for `Z/m`, `s^2 = 1` and
    /// `s t s = t^-1` for the dihedral group, the full table for table
    /// groups, and factor relations plus cross-commutation for products.
    pub fn new(
        source: GroupDescriptor,
        target: GroupDescriptor,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        source.validate()?;
        target.validate()?;
        let expected = factor_image_count(&source);
        if images.len() != expected {
            return Err(Error::InvalidHomomorphism(format!(
                "{source} needs {expected} generator images, got {}",
                images.len()
            )));
        }
        for x in &images {
            target.check(x)?;
        }
        let hom = Self {
            source,
            target,
            images,
        };
        hom.check_relations()?;
        Ok(hom)
    }

    /// Image table for a finite table source, indexed like its elements.
    pub fn from_table(
        source: GroupDescriptor,
        target: GroupDescriptor,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        if !matches!(source, GroupDescriptor::FiniteTable(_)) {
            return Err(Error::InvalidHomomorphism("image tables need a table source".into()));
        }
        Self::new(source, target, images)
    }

    /// `Z^n -> Z^m` given by an `m x n` integer matrix (rows of length `n`).
    pub fn from_matrix(n: usize, m: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != m || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected a {m}x{n} matrix")));
        }
        let images = (0..n)
            .map(|j| GroupElement::Vector(rows.iter().map(|r| r[j]).collect()))
            .collect();
        Self::new(GroupDescriptor::FreeAbelian(n), GroupDescriptor::FreeAbelian(m), images)
    }

    pub fn identity(g: &GroupDescriptor) -> Self {
        Self {
            source: g.clone(),
            target: g.clone(),
            images: rule_points(g),
        }
    }

    pub fn trivial(source: &GroupDescriptor, target: &GroupDescriptor) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.identity(); factor_image_count(source)],
        }
    }

    /// `Z x| Z/2 -> Z/2 x Z/2`, `(h, eps) -> ((-1)^h, eps)`: the
    /// abelianization of the infinite dihedral group.
    pub fn dihedral_abelianization() -> Self {
        let target = GroupDescriptor::DirectProduct(vec![GroupDescriptor::Cyclic(2), GroupDescriptor::Cyclic(2)]);
        let t = GroupElement::Tuple(vec![GroupElement::Residue(1), GroupElement::Residue(0)]);
        let s = GroupElement::Tuple(vec![GroupElement::Residue(0), GroupElement::Residue(1)]);
        Self::new(GroupDescriptor::InfiniteDihedral, target, vec![t, s]).expect("abelianization is a homomorphism")
    }

    pub fn source(&self) -> &GroupDescriptor {
        &self.source
    }

    pub fn target(&self) -> &GroupDescriptor {
        &self.target
    }

    /// Generator images (all element images for table sources).
    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        self.source.check(x)?;
        apply_rule(&self.source, &self.target, &self.images, x)
    }

    pub fn apply_all(&self, xs: &[GroupElement]) -> Result<Vec<GroupElement>> {
        xs.iter().map(|x| self.apply(x)).collect()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Homomorphism) -> Result<Homomorphism> {
        if first.target != self.source {
            return Err(Error::DescriptorMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        let images = rule_points(&first.source)
            .iter()
            .map(|x| self.apply(&first.apply(x)?))
            .collect::<Result<_>>()?;
        Ok(Homomorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|x| self.target.is_identity(x))
    }

    fn check_relations(&self) -> Result<()> {
        check_rule(&self.source, &self.target, &self.images)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = rule_points(&self.source)
            .iter()
            .zip(&self.images)
            .map(|(g, x)| format!("{} -> {}", self.source.render(g), self.target.render(x)))
            .collect();
        format!("{} -> {}: {}", self.source, self.target, parts.join(", "))
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn apply_rule(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
    images: &[GroupElement],
    x: &GroupElement,
) -> Result<GroupElement> {
    match (source, x) {
        (GroupDescriptor::FreeAbelian(_), GroupElement::Vector(v)) => {
            let mut acc = target.identity();
            for (img, &c) in images.iter().zip(v) {
                acc = target.mul(&acc, &target.pow(img, c)?)?;
            }
            Ok(acc)
        }
        (GroupDescriptor::Cyclic(_), GroupElement::Residue(r)) => {
            target.pow(&images[0], i64::try_from(*r).map_err(|_| Error::Overflow)?)
        }
        (GroupDescriptor::FiniteTable(_), GroupElement::Index(i)) => Ok(images[*i].clone()),
        (GroupDescriptor::InfiniteDihedral, GroupElement::Dihedral { h, eps }) => {
            // (h, eps) = t^h s^[eps = -1]
            let rot = target.pow(&images[0], *h)?;
            match eps {
                Sign::Plus => Ok(rot),
                Sign::Minus => target.mul(&rot, &images[1]),
            }
        }
        (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
            let mut acc = target.identity();
            let mut offset = 0;
            for (f, xi) in fs.iter().zip(xs) {
                let count = factor_image_count(f);
                let part = apply_rule(f, target, &images[offset..offset + count], xi)?;
                acc = target.mul(&acc, &part)?;
                offset += count;
            }
            Ok(acc)
        }
        _ => Err(Error::DescriptorMismatch(format!("{x:?} not in {source}"))),
    }
}

/// Source elements whose images make up the rule, in storage order.
pub fn rule_points(g: &GroupDescriptor) -> Vec<GroupElement> {
    match g {
        GroupDescriptor::FiniteTable(t) => (0..t.order()).map(GroupElement::Index).collect(),
        GroupDescriptor::DirectProduct(fs) => {
            let mut out = Vec::new();
            for (i, f) in fs.iter().enumerate() {
                for x in rule_points(f) {
                    let mut parts: Vec<_> = fs.iter().map(|f| f.identity()).collect();
                    parts[i] = x;
                    out.push(GroupElement::Tuple(parts));
                }
            }
            out
        }
        g => g.generators(),
    }
}

fn factor_image_count(f: &GroupDescriptor) -> usize {
    match f {
        GroupDescriptor::FiniteTable(t) => t.order(),
        GroupDescriptor::DirectProduct(fs) => fs.iter().map(factor_image_count).sum(),
        g => g.generators().len(),
    }
}

fn fail(msg: String) -> Result<()> {
    Err(Error::InvalidHomomorphism(msg))
}

fn commute(target: &GroupDescriptor, a: &GroupElement, b: &GroupElement) -> Result<bool> {
    Ok(target.mul(a, b)? == target.mul(b, a)?)
}

fn check_rule(source: &GroupDescriptor, target: &GroupDescriptor, images: &[GroupElement]) -> Result<()> {
    match source {
        GroupDescriptor::FreeAbelian(_) => {
            for i in 0..images.len() {
                for j in 0..i {
                    if !commute(target, &images[i], &images[j])? {
                        return fail(format!(
                            "images of generators {j} and {i} do not commute"
                        ));
                    }
                }
            }
            Ok(())
        }
        GroupDescriptor::Cyclic(m) => {
            let e = i64::try_from(*m).map_err(|_| Error::Overflow)?;
            if !target.is_identity(&target.pow(&images[0], e)?) {
                return fail(format!(
                    "image {} of the generator does not have order dividing {m}",
                    target.render(&images[0])
                ));
            }
            Ok(())
        }
        GroupDescriptor::InfiniteDihedral => {
            let (t, s) = (&images[0], &images[1]);
            if !target.is_identity(&target.mul(s, s)?) {
                return fail(format!("image {} of s does not square to 1", target.render(s)));
            }
            let sts = target.mul(&target.mul(s, t)?, s)?;
            if sts != target.inv(t)? {
                return fail("images violate s t s = t^-1".into());
            }
            Ok(())
        }
        GroupDescriptor::FiniteTable(tab) => {
            let n = tab.order();
            for a in 0..n {
                for b in 0..n {
                    let lhs = &images[tab.mul(a, b)];
                    let rhs = target.mul(&images[a], &images[b])?;
                    if *lhs != rhs {
                        return fail(format!(
                            "phi({} {}) != phi({}) phi({})",
                            tab.name(a),
                            tab.name(b),
                            tab.name(a),
                            tab.name(b)
                        ));
                    }
                }
            }
            Ok(())
        }
        GroupDescriptor::DirectProduct(fs) => {
            let mut blocks = Vec::new();
            let mut offset = 0;
            for f in fs {
                let count = factor_image_count(f);
                let block = &images[offset..offset + count];
                check_rule(f, target, block)?;
                blocks.push(block);
                offset += count;
            }
            for i in 0..blocks.len() {
                for j in 0..i {
                    for a in blocks[i] {
                        for b in blocks[j] {
                            if !commute(target, a, b)? {
                                return fail(format!("images from factors {j} and {i} do not commute"));
                            }
                        }
                    }
                }
            }
            Ok(())
        }
    }
}
