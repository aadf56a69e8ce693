use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;

use super::{check_morphism, ClassInvariant, GraphMap, Paradox, ParadoxMorphism};
use crate::error::{Error, Result};
use crate::graph::{enumerate_automorphisms_bounded, Walk};
use crate::groups::{
    enumerate_isomorphisms, simultaneous_conjugacy, GroupDescriptor, GroupElement, Homomorphism, Sign,
};
use crate::limits::Limits;
use crate::linalg::{smith_normal_form, solve_integer_linear, IntegerMatrix};
use crate::sheaf::SheafKind;

/// Which computation settled a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decider {
    Holonomy,
    SmithNormalForm,
    RelativeInvariant,
    BruteForce,
    Invariants,
}

impl fmt::Display for Decider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decider::Holonomy => "holonomy",
            Decider::SmithNormalForm => "SNF",
            Decider::RelativeInvariant => "relative-invariant",
            Decider::BruteForce => "brute-force",
            Decider::Invariants => "invariants",
        })
    }
}

/// A morphism `P₁ → P₂` whose graph map is a homotopy equivalence (or a
/// tree automorphism) and whose homomorphism is an isomorphism, already
/// checked for coherence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub morphism: ParadoxMorphism,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum IsoVerdict {
    Isomorphic { witness: IsoWitness, method: Decider },
    NotIsomorphic { invariant: String, method: Decider },
    Undecided { reason: String },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, IsoVerdict::Undecided { .. })
    }
}

fn iso(morphism: ParadoxMorphism, description: impl Into<String>, method: Decider) -> IsoVerdict {
    IsoVerdict::Isomorphic {
        witness: IsoWitness {
            morphism,
            description: description.into(),
        },
        method,
    }
}

fn not_iso(invariant: impl Into<String>, method: Decider) -> IsoVerdict {
    IsoVerdict::NotIsomorphic {
        invariant: invariant.into(),
        method,
    }
}

/// Decision ladder for isomorphism of paradoxes. Never fails: anything the
/// ladder cannot settle, including resource limits, comes back as
/// [`IsoVerdict::Undecided`].
pub fn are_isomorphic(p1: &Paradox, p2: &Paradox, limits: &Limits) -> IsoVerdict {
    match decide(p1, p2, limits) {
        Ok(v) => v,
        Err(e) => IsoVerdict::Undecided { reason: e.to_string() },
    }
}

fn decide(p1: &Paradox, p2: &Paradox, limits: &Limits) -> Result<IsoVerdict> {
    match (p1.invariant(), p2.invariant()) {
        (ClassInvariant::Holonomy(_), ClassInvariant::Holonomy(_)) => decide_constant(p1, p2, limits),
        (ClassInvariant::Relative(_), ClassInvariant::Relative(_)) => decide_tree(p1, p2, limits),
        _ => Ok(IsoVerdict::Undecided {
            reason: "isomorphism is decided for constant sheaves and for trees relative to their leaves".into(),
        }),
    }
}

/// Verifies a candidate and wraps it, or reports the failure as `None`.
fn confirm(map: GraphMap, hom: Homomorphism, p1: &Paradox, p2: &Paradox) -> Result<Option<ParadoxMorphism>> {
    let m = ParadoxMorphism { map, hom };
    Ok(check_morphism(&m, p1, p2)?.holds().then_some(m))
}

fn decide_constant(p1: &Paradox, p2: &Paradox, limits: &Limits) -> Result<IsoVerdict> {
    let (b1, b2) = (p1.graph().betti_number(), p2.graph().betti_number());
    if b1 != b2 {
        return Ok(not_iso(format!("b1 = {b1} vs {b2}: bases not homotopy equivalent"), Decider::Holonomy));
    }
    let g1 = p1.group().expect("constant sheaf");
    let g2 = p2.group().expect("constant sheaf");
    if p1.sheaf() == p2.sheaf() {
        if let Some(m) = confirm(GraphMap::identity(p1.graph()), Homomorphism::identity(g1), p1, p2)? {
            return Ok(iso(m, "identity", Decider::Holonomy));
        }
    }
    let words: Vec<FreeWord> = (0..b1).map(|i| vec![(i, 1)]).collect();
    let standard = standard_equivalence(p1, p2, &words)?;
    if g1 == g2 {
        if let Some(m) = confirm(standard.clone(), Homomorphism::identity(g1), p1, p2)? {
            return Ok(iso(m, "standard homotopy equivalence, identity on the group", Decider::Holonomy));
        }
    }
    match (g1, g2) {
        (GroupDescriptor::FreeAbelian(n), GroupDescriptor::FreeAbelian(m)) => {
            if n != m {
                return Ok(not_iso(format!("Z^{n} vs Z^{m}"), Decider::Invariants));
            }
            decide_free_abelian(p1, p2, *n)
        }
        (GroupDescriptor::InfiniteDihedral, GroupDescriptor::InfiniteDihedral) => decide_dihedral(p1, p2, &standard, limits),
        _ if g1.is_finite() && g2.is_finite() => decide_finite(p1, p2, limits),
        _ if g1.is_finite() != g2.is_finite() => Ok(not_iso(
            format!("{g1} and {g2} differ in order"),
            Decider::Invariants,
        )),
        _ if g1.is_abelian() != g2.is_abelian() => Ok(not_iso(
            format!("{g1} and {g2} differ in commutativity"),
            Decider::Invariants,
        )),
        _ => Ok(IsoVerdict::Undecided {
            reason: format!("no complete invariant for {g1} vs {g2} with b1 = {b1}"),
        }),
    }
}

/// Words in the free generators `x_0, x_1, ...` with signed exponents.
type FreeWord = Vec<(usize, i64)>;

/// `X₁ → X₂` collapsing the spanning tree of `X₁` onto the basepoint of
/// `X₂` and sending the `i`-th non-tree edge to the product of `X₂`'s
/// fundamental cycles spelled by `words[i]`. A homotopy equivalence
/// whenever the words define an automorphism of the free group.
fn standard_equivalence(p1: &Paradox, p2: &Paradox, words: &[FreeWord]) -> Result<GraphMap> {
    let h1 = p1.holonomy().expect("constant sheaf");
    let h2 = p2.holonomy().expect("constant sheaf");
    let (x1, x2) = (p1.graph(), p2.graph());
    let base = h2.basepoint;
    let non_tree = h1.tree.non_tree_edges(x1);
    let mut edge_map = vec![Walk::empty(base); x1.edge_count()];
    for (i, &e) in non_tree.iter().enumerate() {
        let mut walk = Walk::empty(base);
        for &(j, k) in &words[i] {
            let piece = if k > 0 {
                h2.cycles[j].clone()
            } else {
                h2.cycles[j].reversed(x2)?
            };
            for _ in 0..k.unsigned_abs() {
                walk = walk.concat(&piece, x2)?;
            }
        }
        edge_map[e] = walk;
    }
    GraphMap::new(x1, x2, vec![base; x1.vertex_count()], edge_map)
}

fn holonomy_matrix(p: &Paradox, n: usize) -> Result<IntegerMatrix<i128>> {
    let hol = &p.holonomy().expect("constant sheaf").holonomies;
    let mut m = IntegerMatrix::zeros(n, hol.len());
    for (j, h) in hol.iter().enumerate() {
        let GroupElement::Vector(v) = h else {
            return Err(Error::DescriptorMismatch("expected an integer vector".into()));
        };
        for i in 0..n {
            m[(i, j)] = v[i] as i128;
        }
    }
    Ok(m)
}

fn to_i64_rows(m: &IntegerMatrix<i128>) -> Result<Vec<Vec<i64>>> {
    m.to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
                .collect()
        })
        .collect()
}

fn unimodular_inverse(m: &IntegerMatrix<i128>) -> Result<IntegerMatrix<i128>> {
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0i128; n];
        e[i] = 1;
        cols.push(
            solve_integer_linear(m, &e)?
                .ok_or_else(|| Error::InvalidHomomorphism("matrix is not unimodular".into()))?,
        );
    }
    IntegerMatrix::from_rows((0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

/// Rendering of an invariant-factor list, e.g. `gcd 2` for one column.
fn describe_factors(f: &[i128], b: usize) -> String {
    if b == 1 {
        format!("gcd {}", f.first().copied().unwrap_or(0))
    } else {
        let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
        format!("Smith invariants [{}]", parts.join(", "))
    }
}

/// `Z^n` coefficients: isomorphic exactly when the `n x b₁` holonomy
/// matrices share Smith invariants (the `GL_n(Z) x GL_b(Z)` orbit; every
/// element of `GL_b(Z)` lifts to a free-group automorphism).
fn decide_free_abelian(p1: &Paradox, p2: &Paradox, n: usize) -> Result<IsoVerdict> {
    let h1 = holonomy_matrix(p1, n)?;
    let h2 = holonomy_matrix(p2, n)?;
    let b = h1.cols();
    let s1 = smith_normal_form(&h1)?;
    let s2 = smith_normal_form(&h2)?;
    let (f1, f2) = (s1.invariant_factors(), s2.invariant_factors());
    if f1 != f2 {
        return Ok(not_iso(
            format!("{} vs {}", describe_factors(&f1, b), describe_factors(&f2, b)),
            Decider::SmithNormalForm,
        ));
    }
    let identity_words: Vec<FreeWord> = (0..b).map(|i| vec![(i, 1)]).collect();
    if b == 1 {
        let neg = IntegerMatrix::<i128>::identity(n);
        let neg = IntegerMatrix::from_rows(
            neg.to_rows().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect(),
        )?;
        for (a, label) in [(IntegerMatrix::identity(n), "identity"), (neg, "-id")] {
            if a.mul(&h2)? == h1 {
                let hom = Homomorphism::from_matrix(n, n, &to_i64_rows(&a)?)?;
                let map = standard_equivalence(p1, p2, &identity_words)?;
                if let Some(m) = confirm(map, hom, p1, p2)? {
                    return Ok(iso(m, format!("GL{n}(Z) via {label}"), Decider::SmithNormalForm));
                }
            }
        }
    }
    // U₁H₁V₁ = D = U₂H₂V₂, so H₁ = (U₁⁻¹U₂) H₂ (V₂V₁⁻¹).
    let a = unimodular_inverse(&s1.left)?.mul(&s2.left)?;
    let bmat = s2.right.mul(&unimodular_inverse(&s1.right)?)?;
    debug_assert_eq!(a.mul(&h2)?.mul(&bmat)?, h1);
    let words = lift_to_free_automorphism(&bmat)?;
    let map = standard_equivalence(p1, p2, &words)?;
    let hom = Homomorphism::from_matrix(n, n, &to_i64_rows(&a)?)?;
    let rows: Vec<String> = to_i64_rows(&a)?
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    match confirm(map, hom, p1, p2)? {
        Some(m) => Ok(iso(m, format!("GL{n}(Z) via [{}]", rows.join("; ")), Decider::SmithNormalForm)),
        None => Err(Error::InvalidHomomorphism("constructed lattice witness failed coherence".into())),
    }
}

/// Free-group automorphism whose abelianization is `b` (column `i` is the
/// image of `x_i`), as words. Built from a column reduction of `b` to the
/// identity by transvections, swaps and sign changes, each of which lifts
/// to a Nielsen move.
fn lift_to_free_automorphism(b: &IntegerMatrix<i128>) -> Result<Vec<FreeWord>> {
    #[derive(Clone, Copy)]
    enum Move {
        /// column c += k * column p; lifts to x_c ↦ x_c x_p^k.
        Add { c: usize, p: usize, k: i128 },
        Swap(usize, usize),
        Negate(usize),
    }
    let n = b.rows();
    let mut m: Vec<Vec<i128>> = b.to_rows();
    let mut moves = Vec::new();
    let apply = |m: &mut Vec<Vec<i128>>, mv: Move| match mv {
        Move::Add { c, p, k } => {
            for row in m.iter_mut() {
                row[c] += k * row[p];
            }
        }
        Move::Swap(i, j) => {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        Move::Negate(i) => {
            for row in m.iter_mut() {
                row[i] = -row[i];
            }
        }
    };
    for r in 0..n {
        loop {
            let pivot = (r..n).filter(|&c| m[r][c] != 0).min_by_key(|&c| m[r][c].abs());
            let Some(p) = pivot else {
                return Err(Error::InvalidHomomorphism("matrix is not unimodular".into()));
            };
            if p != r {
                moves.push(Move::Swap(r, p));
                apply(&mut m, Move::Swap(r, p));
            }
            let mut done = true;
            for c in r + 1..n {
                if m[r][c] != 0 {
                    let k = -Integer::div_floor(&m[r][c], &m[r][r]);
                    let mv = Move::Add { c, p: r, k };
                    moves.push(mv);
                    apply(&mut m, mv);
                    done &= m[r][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        match m[r][r] {
            1 => {}
            -1 => {
                moves.push(Move::Negate(r));
                apply(&mut m, Move::Negate(r));
            }
            _ => return Err(Error::InvalidHomomorphism("matrix is not unimodular".into())),
        }
    }
    for c in (0..n).rev() {
        for i in c + 1..n {
            if m[i][c] != 0 {
                let mv = Move::Add { c, p: i, k: -m[i][c] };
                moves.push(mv);
                apply(&mut m, mv);
            }
        }
    }
    // b · R₁ ⋯ R_k = I, so b = R_k⁻¹ ⋯ R₁⁻¹ and the lift is the matching
    // composite of inverse Nielsen moves.
    let mut words: Vec<FreeWord> = (0..n).map(|i| vec![(i, 1)]).collect();
    for mv in moves.iter().rev() {
        let inverse: Vec<FreeWord> = (0..n)
            .map(|i| match *mv {
                Move::Add { c, p, k } if i == c => vec![(c, 1), (p, -(k as i64))],
                Move::Swap(a, b) if i == a => vec![(b, 1)],
                Move::Swap(a, b) if i == b => vec![(a, 1)],
                Move::Negate(a) if i == a => vec![(a, -1)],
                _ => vec![(i, 1)],
            })
            .collect();
        // words ← words ∘ inverse
        words = inverse.iter().map(|w| substitute(w, &words)).collect();
    }
    let mut check = IntegerMatrix::<i128>::zeros(n, n);
    for (i, w) in words.iter().enumerate() {
        for &(j, k) in w {
            check[(j, i)] += k as i128;
        }
    }
    if check != *b {
        return Err(Error::InvalidHomomorphism("free-group lift lost track of the matrix".into()));
    }
    Ok(words)
}

fn substitute(word: &FreeWord, images: &[FreeWord]) -> FreeWord {
    let mut out: FreeWord = Vec::new();
    for &(g, k) in word {
        for _ in 0..k.unsigned_abs() {
            let letters: FreeWord = if k > 0 {
                images[g].clone()
            } else {
                images[g].iter().rev().map(|&(h, e)| (h, -e)).collect()
            };
            for (h, e) in letters {
                push_letter(&mut out, h, e);
            }
        }
    }
    out
}

fn push_letter(w: &mut FreeWord, g: usize, k: i64) {
    if k == 0 {
        return;
    }
    if let Some(last) = w.last_mut() {
        if last.0 == g {
            last.1 += k;
            if last.1 == 0 {
                w.pop();
            }
            return;
        }
    }
    w.push((g, k));
}

fn dihedral_parts(x: &GroupElement) -> (i64, Sign) {
    match x {
        GroupElement::Dihedral { h, eps } => (*h, *eps),
        _ => unreachable!("dihedral holonomy"),
    }
}

/// Characteristic data of the image of `π₁` in `Z x| Z/2`: whether it
/// contains reflections, and the generator `d ≥ 0` of its rotation part.
fn dihedral_image_invariant(hol: &[GroupElement]) -> (bool, i64) {
    let mut d = 0i64;
    let mut first_reflection = None;
    for x in hol {
        let (h, eps) = dihedral_parts(x);
        match eps {
            Sign::Plus => d = d.gcd(&h),
            Sign::Minus => match first_reflection {
                None => first_reflection = Some(h),
                Some(a) => d = d.gcd(&(h - a)),
            },
        }
    }
    (first_reflection.is_some(), d)
}

fn decide_dihedral(p1: &Paradox, p2: &Paradox, standard: &GraphMap, limits: &Limits) -> Result<IsoVerdict> {
    let g = GroupDescriptor::InfiniteDihedral;
    let hol1 = &p1.holonomy().expect("constant sheaf").holonomies;
    let hol2 = &p2.holonomy().expect("constant sheaf").holonomies;
    let inv1 = dihedral_image_invariant(hol1);
    let inv2 = dihedral_image_invariant(hol2);
    let show = |(refl, d): (bool, i64)| {
        format!("image {} reflections, rotation part {d}Z", if refl { "with" } else { "without" })
    };
    if inv1 != inv2 {
        return Ok(not_iso(format!("{} vs {}", show(inv1), show(inv2)), Decider::Holonomy));
    }
    if hol1.len() != 1 {
        // Nielsen moves within a box around both tuples.
        let bound = hol1.iter().chain(hol2).map(|x| dihedral_parts(x).0.abs()).max().unwrap_or(0).max(1) * 2;
        let admissible = |t: &[GroupElement]| t.iter().all(|x| dihedral_parts(x).0.abs() <= bound);
        let outcome = nielsen_search(&g, hol2, limits.hom_search, admissible, |t| {
            Ok(dihedral_automorphism_between(t, hol1))
        })?;
        return match outcome {
            NielsenOutcome::Found(words, (sigma, k)) => {
                let hom = Homomorphism::new(
                    g.clone(),
                    g,
                    vec![GroupElement::dihedral(sigma, 1), GroupElement::dihedral(k, -1)],
                )?;
                let map = standard_equivalence(p1, p2, &words)?;
                match confirm(map, hom, p1, p2)? {
                    Some(m) => Ok(iso(
                        m,
                        format!("Nielsen moves, then t -> t^{sigma}, s -> t^{k} s"),
                        Decider::BruteForce,
                    )),
                    None => Err(Error::InvalidHomomorphism("dihedral witness failed coherence".into())),
                }
            }
            _ => Ok(IsoVerdict::Undecided {
                reason: format!(
                    "dihedral invariants agree ({}); no Nielsen-equivalent tuple with heights up to {bound}",
                    show(inv1)
                ),
            }),
        };
    }
    let (a, e1) = dihedral_parts(&hol1[0]);
    let (b, _) = dihedral_parts(&hol2[0]);
    // t ↦ t^±1, s ↦ t^k s.
    let (images, label) = match e1 {
        Sign::Plus if a == -b => (
            vec![GroupElement::dihedral(-1, 1), GroupElement::dihedral(0, -1)],
            "automorphism t -> t^-1".to_string(),
        ),
        Sign::Plus => (
            vec![GroupElement::dihedral(1, 1), GroupElement::dihedral(0, -1)],
            "identity".to_string(),
        ),
        Sign::Minus => (
            vec![GroupElement::dihedral(1, 1), GroupElement::dihedral(a - b, -1)],
            format!("automorphism s -> t^{} s", a - b),
        ),
    };
    let hom = Homomorphism::new(g.clone(), g, images)?;
    match confirm(standard.clone(), hom, p1, p2)? {
        Some(m) => Ok(iso(m, label, Decider::Holonomy)),
        None => Err(Error::InvalidHomomorphism("dihedral witness failed coherence".into())),
    }
}

enum NielsenOutcome<T> {
    Found(Vec<FreeWord>, T),
    /// Every reachable tuple was visited.
    Exhausted,
    /// The state budget ran out, or the admissibility filter pruned states.
    Incomplete,
}

/// Breadth-first search through tuples `w(start)` for `w` generated by
/// elementary Nielsen moves (`x_i -> x_i x_j^±1`, `x_j^±1 x_i`, `x_i^-1`,
/// swaps). Each state keeps the words over the original generators, so a
/// hit comes with an automorphism of the free group.
fn nielsen_search<T>(
    group: &GroupDescriptor,
    start: &[GroupElement],
    budget: u128,
    admissible: impl Fn(&[GroupElement]) -> bool,
    mut accept: impl FnMut(&[GroupElement]) -> Result<Option<T>>,
) -> Result<NielsenOutcome<T>> {
    let b = start.len();
    let identity: Vec<FreeWord> = (0..b).map(|i| vec![(i, 1)]).collect();
    let mut seen: HashSet<Vec<GroupElement>> = HashSet::from([start.to_vec()]);
    let mut queue = std::collections::VecDeque::from([(start.to_vec(), identity)]);
    let mut pruned = false;
    while let Some((tuple, words)) = queue.pop_front() {
        if let Some(t) = accept(&tuple)? {
            return Ok(NielsenOutcome::Found(words, t));
        }
        let mut moves: Vec<(usize, FreeWord, GroupElement)> = Vec::new();
        for i in 0..b {
            let inv_i = group.inv(&tuple[i])?;
            moves.push((i, substitute(&vec![(i, -1)], &words), inv_i));
            for j in 0..b {
                if i == j {
                    continue;
                }
                let inv_j = group.inv(&tuple[j])?;
                for (word, x) in [
                    (vec![(i, 1), (j, 1)], group.mul(&tuple[i], &tuple[j])?),
                    (vec![(i, 1), (j, -1)], group.mul(&tuple[i], &inv_j)?),
                    (vec![(j, 1), (i, 1)], group.mul(&tuple[j], &tuple[i])?),
                    (vec![(j, -1), (i, 1)], group.mul(&inv_j, &tuple[i])?),
                ] {
                    moves.push((i, substitute(&word, &words), x));
                }
            }
        }
        let mut next_states = Vec::new();
        for (i, word, x) in moves {
            let mut t = tuple.clone();
            t[i] = x;
            let mut w = words.clone();
            w[i] = word;
            next_states.push((t, w));
        }
        for i in 0..b {
            for j in i + 1..b {
                let (mut t, mut w) = (tuple.clone(), words.clone());
                t.swap(i, j);
                w.swap(i, j);
                next_states.push((t, w));
            }
        }
        for (t, w) in next_states {
            if !admissible(&t) {
                pruned = true;
                continue;
            }
            if seen.contains(&t) {
                continue;
            }
            if seen.len() as u128 >= budget {
                return Ok(NielsenOutcome::Incomplete);
            }
            seen.insert(t.clone());
            queue.push_back((t, w));
        }
    }
    Ok(if pruned { NielsenOutcome::Incomplete } else { NielsenOutcome::Exhausted })
}

/// `φ_{k,σ}: t -> t^σ, s -> t^k s` carrying `from` exactly onto `to`.
fn dihedral_automorphism_between(from: &[GroupElement], to: &[GroupElement]) -> Option<(i64, i64)> {
    for sigma in [1i64, -1] {
        let mut k = None;
        let ok = from.iter().zip(to).all(|(x, y)| {
            let ((h, e), (h2, e2)) = (dihedral_parts(x), dihedral_parts(y));
            if e != e2 {
                return false;
            }
            match e {
                Sign::Plus => sigma * h == h2,
                Sign::Minus => {
                    let shift = h2 - sigma * h;
                    *k.get_or_insert(shift) == shift
                }
            }
        });
        if ok {
            return Some((sigma, k.unwrap_or(0)));
        }
    }
    None
}

fn subgroup_order(group: &GroupDescriptor, gens: &[GroupElement], limit: u128) -> Result<usize> {
    let mut seen: HashSet<GroupElement> = HashSet::from([group.identity()]);
    let mut stack = vec![group.identity()];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = group.mul(&x, g)?;
            if seen.insert(y.clone()) {
                if seen.len() as u128 > limit {
                    return Err(Error::TooLarge {
                        what: "subgroup closure",
                        size: seen.len() as u128,
                        limit,
                    });
                }
                stack.push(y);
            }
        }
    }
    Ok(seen.len())
}

/// Finite groups: search `Iso(G₂, G₁)` against conjugacy (and, for a
/// single loop, inversion) of holonomies.
fn decide_finite(p1: &Paradox, p2: &Paradox, limits: &Limits) -> Result<IsoVerdict> {
    let g1 = p1.group().expect("constant sheaf");
    let g2 = p2.group().expect("constant sheaf");
    let isos = enumerate_isomorphisms(g2, g1, limits.hom_search)?;
    if isos.is_empty() {
        return Ok(not_iso(format!("{g2} and {g1} are not isomorphic"), Decider::BruteForce));
    }
    let hol1 = &p1.holonomy().expect("constant sheaf").holonomies;
    let hol2 = &p2.holonomy().expect("constant sheaf").holonomies;
    let n1 = subgroup_order(g1, hol1, limits.enumeration)?;
    let n2 = subgroup_order(g2, hol2, limits.enumeration)?;
    if n1 != n2 {
        return Ok(not_iso(format!("holonomy image of order {n1} vs {n2}"), Decider::Invariants));
    }
    let b = hol1.len();
    let inverted: Vec<GroupElement> = hol1.iter().map(|x| g1.inv(x)).collect::<Result<_>>()?;
    let forward: Vec<FreeWord> = (0..b).map(|i| vec![(i, 1)]).collect();
    let backward: Vec<FreeWord> = (0..b).map(|i| vec![(i, -1)]).collect();
    let orientations: &[(&[GroupElement], &Vec<FreeWord>, &str)] = if b == 1 {
        &[(hol1, &forward, ""), (&inverted, &backward, ", loop reversed")]
    } else {
        &[(hol1, &forward, "")]
    };
    for phi in &isos {
        let mapped = phi.apply_all(hol2)?;
        for &(target, words, note) in orientations {
            if simultaneous_conjugacy(g1, &mapped, target)?.is_some() {
                let map = standard_equivalence(p1, p2, words)?;
                if let Some(m) = confirm(map, phi.clone(), p1, p2)? {
                    return Ok(iso(m, format!("group isomorphism {}{note}", phi.describe()), Decider::BruteForce));
                }
            }
        }
    }
    if b == 1 {
        return Ok(not_iso(
            "no group isomorphism carries one holonomy to a conjugate of the other or its inverse",
            Decider::BruteForce,
        ));
    }
    let outcome = nielsen_search(g2, hol2, limits.enumeration, |_| true, |t| {
        for phi in &isos {
            if simultaneous_conjugacy(g1, &phi.apply_all(t)?, hol1)?.is_some() {
                return Ok(Some(phi.clone()));
            }
        }
        Ok(None)
    })?;
    match outcome {
        NielsenOutcome::Found(words, phi) => {
            let map = standard_equivalence(p1, p2, &words)?;
            match confirm(map, phi.clone(), p1, p2)? {
                Some(m) => Ok(iso(m, format!("Nielsen moves, then {}", phi.describe()), Decider::BruteForce)),
                None => Err(Error::InvalidHomomorphism("finite witness failed coherence".into())),
            }
        }
        NielsenOutcome::Exhausted => Ok(not_iso(
            "no tuple in the Aut(F_n) orbit of the holonomies matches under a group isomorphism and conjugation",
            Decider::BruteForce,
        )),
        NielsenOutcome::Incomplete => Ok(IsoVerdict::Undecided {
            reason: format!("Nielsen orbit of the holonomies exceeds the search bound ({})", limits.enumeration),
        }),
    }
}

/// Trees relative to their leaves: `Aut(X) x Aut(G)` acting on the class.
fn decide_tree(p1: &Paradox, p2: &Paradox, limits: &Limits) -> Result<IsoVerdict> {
    let (SheafKind::BoundaryTrivial { boundary: a1 }, SheafKind::BoundaryTrivial { boundary: a2 }) =
        (p1.sheaf().kind(), p2.sheaf().kind())
    else {
        unreachable!("relative invariants come from boundary sheaves");
    };
    if a1.len() != a2.len() {
        return Ok(not_iso(
            format!("{} vs {} boundary vertices", a1.len(), a2.len()),
            Decider::RelativeInvariant,
        ));
    }
    if p1.graph() != p2.graph() {
        return Ok(IsoVerdict::Undecided {
            reason: "tree paradoxes are compared over a common tree".into(),
        });
    }
    let g1 = p1.group().expect("boundary sheaf");
    let g2 = p2.group().expect("boundary sheaf");
    let homs = if g1.is_finite() && g2.is_finite() {
        enumerate_isomorphisms(g2, g1, limits.hom_search)?
    } else if g1 == g2 {
        vec![Homomorphism::identity(g1)]
    } else {
        return Ok(IsoVerdict::Undecided {
            reason: format!("no isomorphism search between {g2} and {g1}"),
        });
    };
    if homs.is_empty() {
        return Ok(not_iso(format!("{g2} and {g1} are not isomorphic"), Decider::BruteForce));
    }
    let auts = enumerate_automorphisms_bounded(p1.graph(), limits.automorphism_vertices)?;
    for sigma in &auts {
        let map = GraphMap::from_automorphism(p1.graph(), sigma)?;
        for phi in &homs {
            if let Some(m) = confirm(map.clone(), phi.clone(), p1, p2)? {
                let what = if sigma.is_identity() {
                    "identity tree map".to_string()
                } else {
                    "tree automorphism".to_string()
                };
                return Ok(iso(m, format!("{what}, group map {}", phi.describe()), Decider::RelativeInvariant));
            }
        }
    }
    if g1.is_finite() {
        Ok(not_iso(
            "relative invariants lie in different Aut(X) x Aut(G) orbits",
            Decider::RelativeInvariant,
        ))
    } else {
        Ok(IsoVerdict::Undecided {
            reason: format!("only the identity of {g1} was tried"),
        })
    }
}
