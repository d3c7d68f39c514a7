//! Finite groups stored as dense Cayley tables.
//!
//! Elements are the indices `0..n` and the identity is always index `0`.
//! Every derived object (subgroups, homomorphisms, actions) is expressed as
//! index arrays over these tables.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::maps::GroupHom;

pub type GroupRef = Arc<FiniteGroup>;

/// Default cap on the ambient order accepted by [`all_subgroups`].
pub const DEFAULT_SUBGROUP_CAP: usize = 2048;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    label: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("label", &self.label)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and builds a group from it.
    ///
    /// Checks run in the order: shape and range, Latin square, identity,
    /// associativity (exhaustive over all triples). If the identity is not
    /// at index 0 it is swapped with element 0.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedInput("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedInput(format!(
                    "row {i} has length {} but the table has {n} rows",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedInput(format!(
                        "entry ({i}, {j}) = {v} is out of range"
                    )));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table)
    }

    /// Same as [`FiniteGroup::from_table`] on a row-major flat table.
    pub fn from_flat(n: usize, mut table: Vec<u32>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::MalformedInput(format!(
                "flat table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        check_latin(n, &table)?;
        let e = (0..n)
            .find(|&e| (0..n).all(|i| table[e * n + i] as usize == i && table[i * n + e] as usize == i))
            .ok_or(Error::NoIdentity)?;
        if e != 0 {
            table = relabel_swap(n, &table, 0, e);
        }
        check_associative(n, &table)?;
        Ok(Self::from_trusted(n, table))
    }

    /// Builds a group from a table already known to satisfy the axioms with
    /// identity at 0. Only the inverse table is computed.
    pub(crate) fn from_trusted(n: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&v| v == 0).expect("latin row");
            inverse[a] = b as u32;
        }
        FiniteGroup {
            order: n,
            table,
            inverse,
            label: None,
        }
    }

    pub fn trivial() -> Self {
        Self::from_trusted(1, vec![0])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ab_ai = self.mul(ab, self.inv(a));
        self.mul(ab_ai, self.inv(b))
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn flat_table(&self) -> &[u32] {
        &self.table
    }

    /// Tables equal entrywise (labels ignored).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.table == other.table
    }
}

fn check_latin(n: usize, table: &[u32]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = table[i * n + j] as usize;
            if seen[v] == i {
                return Err(Error::NotLatinSquare(format!("row {i} repeats value {v}")));
            }
            seen[v] = i;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..n {
        for i in 0..n {
            let v = table[i * n + j] as usize;
            if seen[v] == j {
                return Err(Error::NotLatinSquare(format!("column {j} repeats value {v}")));
            }
            seen[v] = j;
        }
    }
    Ok(())
}

fn check_associative(n: usize, t: &[u32]) -> Result<()> {
    let first_bad = (0..n).into_par_iter().find_map_first(|i| {
        for j in 0..n {
            let ij = t[i * n + j] as usize;
            for k in 0..n {
                let jk = t[j * n + k] as usize;
                if t[ij * n + k] != t[i * n + jk] {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    match first_bad {
        Some((i, j, k)) => Err(Error::NotAssociative(i, j, k)),
        None => Ok(()),
    }
}

fn relabel_swap(n: usize, t: &[u32], a: usize, b: usize) -> Vec<u32> {
    let sigma = |x: usize| if x == a { b } else if x == b { a } else { x };
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            out[sigma(i) * n + sigma(j)] = sigma(t[i * n + j] as usize) as u32;
        }
    }
    out
}

/// A subgroup, stored as a sorted element list plus a membership mask.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.order() == other.parent.order() && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    /// Checks that `elements` is a subgroup of `parent`.
    pub fn new(parent: &GroupRef, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let s = Self::from_set(parent, elements);
        if !s.contains(0) {
            return Err(Error::MalformedInput("subgroup must contain the identity".into()));
        }
        for &a in &s.elements {
            if !s.contains(parent.inv(a)) {
                return Err(Error::MalformedInput(format!("not closed under inverse at {a}")));
            }
            for &b in &s.elements {
                if !s.contains(parent.mul(a, b)) {
                    return Err(Error::MalformedInput(format!(
                        "not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(s)
    }

    /// Caller guarantees closure.
    pub(crate) fn from_set(parent: &GroupRef, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut member = vec![false; parent.order()];
        for x in elements {
            member[x] = true;
        }
        Self::from_mask(parent, member)
    }

    pub(crate) fn from_mask(parent: &GroupRef, member: Vec<bool>) -> Self {
        let elements = member
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup {
            parent: parent.clone(),
            elements,
            member,
        }
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Self::from_set(parent, [0])
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Self::from_set(parent, 0..parent.order())
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| self.elements.iter().all(|&k| self.contains(g.conj(x, k))))
    }

    /// The subgroup as a group in its own right. Element `i` of the result is
    /// `self.elements()[i]`, so the identity stays at index 0.
    pub fn to_group(&self) -> FiniteGroup {
        let g = &self.parent;
        let mut index = vec![u32::MAX; g.order()];
        for (i, &x) in self.elements.iter().enumerate() {
            index[x] = i as u32;
        }
        let k = self.elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(index[g.mul(a, b)]);
            }
        }
        FiniteGroup::from_trusted(k, table)
    }

    /// Position of each parent element inside [`Subgroup::elements`].
    pub fn index_map(&self) -> Vec<Option<usize>> {
        let mut index = vec![None; self.parent.order()];
        for (i, &x) in self.elements.iter().enumerate() {
            index[x] = Some(i);
        }
        index
    }

    /// Intersection with another subgroup of the same parent.
    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Self::from_set(
            &self.parent,
            self.elements.iter().copied().filter(|&x| other.contains(x)),
        )
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        subgroup_generated(&self.parent, self.elements.iter().chain(other.elements.iter()).copied())
    }

    fn key(&self) -> Vec<u64> {
        mask_key(&self.member)
    }
}

fn mask_key(member: &[bool]) -> Vec<u64> {
    let mut key = vec![0u64; member.len().div_ceil(64)];
    for (i, &m) in member.iter().enumerate() {
        if m {
            key[i / 64] |= 1 << (i % 64);
        }
    }
    key
}

/// Smallest subgroup containing `seed`.
pub fn subgroup_generated(g: &GroupRef, seed: impl IntoIterator<Item = usize>) -> Subgroup {
    let gens: Vec<usize> = seed.into_iter().filter(|&x| x != 0).collect();
    let mut member = vec![false; g.order()];
    let mut elems = vec![0usize];
    member[0] = true;
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &s in &gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                elems.push(y);
            }
        }
        i += 1;
    }
    Subgroup::from_mask(g, member)
}

/// Joins `⟨x⟩` onto a closed subgroup using right cosets (Dimino's method).
fn extend_subgroup(g: &GroupRef, base: &Subgroup, base_gens: &[usize], x: usize) -> Vec<bool> {
    let mut member = base.member.clone();
    if member[x] {
        return member;
    }
    let mut gens = base_gens.to_vec();
    gens.push(x);
    let mut reps = vec![0usize];
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i];
        for &s in &gens {
            let y = g.mul(r, s);
            if !member[y] {
                for &k in &base.elements {
                    member[g.mul(k, y)] = true;
                }
                reps.push(y);
            }
        }
        i += 1;
    }
    member
}

/// Every subgroup of `g` exactly once, sorted by `(order, elements)`.
///
/// Cyclic subgroups seed the search; each known subgroup is then joined with
/// every cyclic subgroup it does not contain until no new subgroup appears.
pub fn all_subgroups(g: &GroupRef, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderLimitExceeded {
            what: format!("subgroup enumeration on a group of order {}", g.order()),
            cap,
        });
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    for x in 0..g.order() {
        let c = subgroup_generated(g, [x]);
        if seen.insert(c.key()) {
            cyclic.push((x, c));
        }
    }
    let mut all: Vec<Subgroup> = cyclic.iter().map(|(_, c)| c.clone()).collect();
    let mut frontier: Vec<(Subgroup, Vec<usize>)> =
        cyclic.iter().map(|(x, c)| (c.clone(), vec![*x])).collect();
    while !frontier.is_empty() {
        let produced: Vec<(Vec<bool>, Vec<usize>)> = frontier
            .par_iter()
            .flat_map_iter(|(k, gens)| {
                cyclic
                    .iter()
                    .filter(|(x, _)| !k.contains(*x))
                    .map(move |(x, _)| {
                        let mut ng = gens.clone();
                        ng.push(*x);
                        (extend_subgroup(g, k, gens, *x), ng)
                    })
            })
            .collect();
        let mut next = Vec::new();
        for (mask, gens) in produced {
            if seen.insert(mask_key(&mask)) {
                let s = Subgroup::from_mask(g, mask);
                all.push(s.clone());
                next.push((s, gens));
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(all)
}

pub fn center(g: &GroupRef) -> Subgroup {
    Subgroup::from_set(
        g,
        (0..g.order()).filter(|&z| (0..g.order()).all(|x| g.mul(z, x) == g.mul(x, z))),
    )
}

pub fn derived_subgroup(g: &GroupRef) -> Subgroup {
    let n = g.order();
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    subgroup_generated(g, comms)
}

pub fn is_normal(k: &Subgroup) -> bool {
    k.is_normal()
}

/// A quotient group together with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: GroupRef,
    pub projection: GroupHom,
    /// Minimal element of each coset, indexed by coset.
    pub representatives: Vec<usize>,
}

impl Quotient {
    pub fn coset_of(&self, x: usize) -> usize {
        self.projection.apply(x)
    }
}

/// `G/N` with cosets ordered by their minimal representative.
pub fn quotient(g: &GroupRef, normal: &Subgroup) -> Result<Quotient> {
    if !normal.is_normal() {
        return Err(Error::NotNormal(format!(
            "subgroup of order {} in group of order {}",
            normal.order(),
            g.order()
        )));
    }
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] == usize::MAX {
            let c = reps.len();
            reps.push(x);
            for &k in normal.elements() {
                coset[g.mul(x, k)] = c;
            }
        }
    }
    let m = reps.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)] as u32);
        }
    }
    let qg = Arc::new(FiniteGroup::from_trusted(m, table));
    let projection = GroupHom::new_unchecked(g.clone(), qg.clone(), coset);
    Ok(Quotient {
        group: qg,
        projection,
        representatives: reps,
    })
}

/// Direct product with elements `(a, b)` at index `a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            table.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
        }
    }
    FiniteGroup::from_trusted(n, table)
}
