use std::collections::HashMap;

use crate::error::{Error, Result};

const ASSOCIATIVITY_CHECK_BOUND: usize = 256;

/// Finite group given by a full multiplication table over named elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableGroup {
    label: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl TableGroup {
    /// Validates Latin-square shape, identity and inverses, and associativity
    /// up to 256 elements.
    pub fn new(label: impl Into<String>, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group needs at least one element".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidGroup(format!("element name {name:?} repeats")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n}")));
        }
        for (i, row) in table.iter().enumerate() {
            let mut hit = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::InvalidGroup(format!("row {} is not a permutation", names[i])));
                }
            }
        }
        for j in 0..n {
            let mut hit = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut hit[row[j]], true) {
                    return Err(Error::InvalidGroup(format!("column {} is not a permutation", names[j])));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverses = vec![0; n];
        for x in 0..n {
            inverses[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", names[x])))?;
        }
        if n <= ASSOCIATIVITY_CHECK_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({}, {}, {})",
                                names[a], names[b], names[c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self {
            label: label.into(),
            names,
            table,
            identity,
            inverses,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.table[x][g];
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// Greedy generating set: scan elements in order, keep those outside the
    /// subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        for x in 0..self.order() {
            if !inside[x] {
                gens.push(x);
                inside = self.closure(&gens);
            }
        }
        gens
    }
}

/// Multiplication `p * q = p ∘ q` on permutations of `0..n`.
fn permutation_group(label: &str, perms: Vec<Vec<usize>>, names: Vec<String>) -> TableGroup {
    let index: HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index[&q.iter().map(|&x| p[x]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    TableGroup::new(label, names, table).expect("permutation groups are groups")
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for x in (0..n).filter(|x| !p.contains(x)) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first && p.len() > 9 {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// `S_n` with elements named in cycle notation (`e`, `(12)`, `(123)`, ...),
/// listed in lexicographic order of their one-line forms.
pub fn symmetric_group(n: usize) -> TableGroup {
    assert!((1..=7).contains(&n), "symmetric_group supports 1..=7 points");
    let perms = all_permutations(n);
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    permutation_group(&format!("S{n}"), perms, names)
}

/// The 24 rotations of a cube: signed 3x3 permutation matrices with
/// determinant +1. Elements are named by the image of `(x,y,z)`, so the
/// quarter turn about the z axis is `(-y,x,z)`.
pub fn cube_rotation_group() -> TableGroup {
    let axes = ['x', 'y', 'z'];
    let mut mats: Vec<[[i8; 3]; 3]> = Vec::new();
    for p in all_permutations(3) {
        for signs in 0..8u8 {
            let mut m = [[0i8; 3]; 3];
            for i in 0..3 {
                m[i][p[i]] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            if det3(&m) == 1 {
                mats.push(m);
            }
        }
    }
    // Identity first.
    mats.sort_by_key(|m| std::cmp::Reverse((m[0][0], m[1][1], m[2][2])));
    let names: Vec<String> = mats
        .iter()
        .map(|m| {
            let parts: Vec<String> = m
                .iter()
                .map(|row| {
                    let j = row.iter().position(|&c| c != 0).expect("one entry per row");
                    format!("{}{}", if row[j] < 0 { "-" } else { "" }, axes[j])
                })
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let index: HashMap<[[i8; 3]; 3], usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let table = mats
        .iter()
        .map(|a| mats.iter().map(|b| index[&mul3(a, b)]).collect())
        .collect();
    TableGroup::new("cube rotations", names, table).expect("rotation matrices form a group")
}

fn mul3(a: &[[i8; 3]; 3], b: &[[i8; 3]; 3]) -> [[i8; 3]; 3] {
    let mut c = [[0i8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn det3(m: &[[i8; 3]; 3]) -> i8 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_shapes() {
        let s3 = symmetric_group(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.name(s3.identity()), "e");
        let t = s3.index_of("(12)").unwrap();
        assert_eq!(s3.element_order(t), 2);
        assert_eq!(s3.element_order(s3.index_of("(123)").unwrap()), 3);
        assert_eq!(s3.generating_set().len(), 2);
        assert_eq!(symmetric_group(4).order(), 24);
    }

    #[test]
    fn cube_rotations() {
        let g = cube_rotation_group();
        assert_eq!(g.order(), 24);
        assert_eq!(g.name(g.identity()), "(x,y,z)");
        let r = g.index_of("(-y,x,z)").unwrap();
        assert_eq!(g.element_order(r), 4);
        assert!(!g.is_abelian());
    }

    #[test]
    fn rejects_non_groups() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(TableGroup::new("bad", names.clone(), vec![vec![0, 0], vec![1, 1]]).is_err());
        assert!(TableGroup::new("bad", names.clone(), vec![vec![1, 0], vec![0, 1]]).is_ok());
        assert!(TableGroup::new("bad", vec!["a".into(), "a".into()], vec![vec![0, 1], vec![1, 0]]).is_err());
        // Latin square with identity but not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(TableGroup::new("loop", names, loop5), Err(Error::InvalidGroup(_))));
    }
}
