//! Group homomorphisms and backtracking searches over generator images.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{center, subgroup_generated, FiniteGroup, GroupRef, Subgroup};

/// A total map between two finite groups. Constructors that accept
/// arbitrary image arrays check the homomorphism law.
#[derive(Clone)]
pub struct GroupHom {
    source: GroupRef,
    target: GroupRef,
    image: Vec<usize>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupHom{:?}", self.image)
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}
impl Eq for GroupHom {}

impl GroupHom {
    pub fn new(source: GroupRef, target: GroupRef, image: Vec<usize>) -> Result<Self> {
        if !is_homomorphism(&source, &target, &image) {
            return Err(Error::MalformedInput(format!(
                "map {:?} is not a homomorphism",
                image
            )));
        }
        Ok(GroupHom {
            source,
            target,
            image,
        })
    }

    pub(crate) fn new_unchecked(source: GroupRef, target: GroupRef, image: Vec<usize>) -> Self {
        debug_assert!(is_homomorphism(&source, &target, &image));
        GroupHom {
            source,
            target,
            image,
        }
    }

    pub fn identity(g: &GroupRef) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), (0..g.order()).collect())
    }

    pub fn trivial(source: &GroupRef, target: &GroupRef) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), vec![0; source.order()])
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_set(
            &self.source,
            (0..self.source.order()).filter(|&x| self.image[x] == 0),
        )
    }

    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup::from_set(&self.target, self.image.iter().copied())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup().is_whole()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        let image = self.image.iter().map(|&y| other.apply(y)).collect();
        GroupHom::new_unchecked(self.source.clone(), other.target.clone(), image)
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupHom::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            inv,
        ))
    }
}

/// Checks length, range, `image[0] = 0` and the product law on all pairs.
pub fn is_homomorphism(source: &FiniteGroup, target: &FiniteGroup, image: &[usize]) -> bool {
    let n = source.order();
    if image.len() != n || image.iter().any(|&y| y >= target.order()) {
        return false;
    }
    if image[0] != 0 {
        return false;
    }
    (0..n).all(|a| (0..n).all(|b| image[source.mul(a, b)] == target.mul(image[a], image[b])))
}

/// Greedy generating set: repeatedly adds the element of largest order (ties
/// to the smallest index) outside the current closure.
pub fn greedy_generators(g: &GroupRef) -> Vec<usize> {
    let orders = g.element_orders();
    let mut by_order: Vec<usize> = (1..g.order()).collect();
    by_order.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
    let mut gens = Vec::new();
    let mut closure = Subgroup::trivial(g);
    while !closure.is_whole() {
        let x = *by_order
            .iter()
            .find(|&&x| !closure.contains(x))
            .expect("closure is proper");
        gens.push(x);
        closure = subgroup_generated(g, gens.iter().copied());
    }
    gens
}

/// Breadth-first spanning tree of `⟨gens⟩`: `(element, parent, generator)`.
fn spanning_tree(g: &FiniteGroup, gens: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut out = vec![(0, 0, usize::MAX)];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].0;
        for (s, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            if !seen[y] {
                seen[y] = true;
                out.push((y, x, s));
            }
        }
        i += 1;
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Homomorphism,
    Isomorphism,
}

struct HomSearch<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    trees: Vec<Vec<(usize, usize, usize)>>,
    candidates: Vec<Vec<usize>>,
    mode: Mode,
}

impl<'a> HomSearch<'a> {
    fn new(source: &'a GroupRef, target: &'a GroupRef, mode: Mode) -> Self {
        let gens = greedy_generators(source);
        let trees = (1..=gens.len())
            .map(|k| spanning_tree(source, &gens[..k]))
            .collect();
        let t_orders = target.element_orders();
        let candidates = gens
            .iter()
            .map(|&s| {
                let o = source.element_order(s);
                (0..target.order())
                    .filter(|&y| match mode {
                        Mode::Homomorphism => o.is_multiple_of(t_orders[y]),
                        Mode::Isomorphism => t_orders[y] == o,
                    })
                    .collect()
            })
            .collect();
        HomSearch {
            source,
            target,
            gens,
            trees,
            candidates,
            mode,
        }
    }

    /// Extends the generator images in `imgs` over `⟨gens[..imgs.len()]⟩`,
    /// returning the partial map if it is consistent.
    fn extend(&self, imgs: &[usize]) -> Option<Vec<usize>> {
        let n = self.source.order();
        let mut f = vec![usize::MAX; n];
        if imgs.is_empty() {
            f[0] = 0;
            return Some(f);
        }
        let tree = &self.trees[imgs.len() - 1];
        f[0] = 0;
        for &(x, p, s) in &tree[1..] {
            f[x] = self.target.mul(f[p], imgs[s]);
        }
        for &(x, _, _) in tree {
            for (s, &gen) in self.gens[..imgs.len()].iter().enumerate() {
                if f[self.source.mul(x, gen)] != self.target.mul(f[x], imgs[s]) {
                    return None;
                }
            }
        }
        if self.mode == Mode::Isomorphism {
            let mut hit = vec![false; self.target.order()];
            for &(x, _, _) in tree {
                if hit[f[x]] {
                    return None;
                }
                hit[f[x]] = true;
            }
        }
        Some(f)
    }

    /// Depth-first search in canonical branch order; `visit` returns `false`
    /// to stop.
    fn run(&self, visit: &mut dyn FnMut(Vec<usize>) -> bool) {
        if self.mode == Mode::Isomorphism && self.source.order() != self.target.order() {
            return;
        }
        let mut imgs = Vec::with_capacity(self.gens.len());
        self.descend(&mut imgs, visit);
    }

    fn descend(&self, imgs: &mut Vec<usize>, visit: &mut dyn FnMut(Vec<usize>) -> bool) -> bool {
        let level = imgs.len();
        if level == self.gens.len() {
            let f = self.extend(imgs).expect("checked at previous level");
            return visit(f);
        }
        for &y in &self.candidates[level] {
            imgs.push(y);
            if self.extend(imgs).is_some() && !self.descend(imgs, visit) {
                imgs.pop();
                return false;
            }
            imgs.pop();
        }
        true
    }
}

/// All homomorphisms `source → target`, in canonical search order.
pub fn homomorphisms(source: &GroupRef, target: &GroupRef) -> Vec<GroupHom> {
    let search = HomSearch::new(source, target, Mode::Homomorphism);
    let mut out = Vec::new();
    search.run(&mut |f| {
        out.push(GroupHom::new_unchecked(source.clone(), target.clone(), f));
        true
    });
    out
}

/// All isomorphisms `a → b`.
pub fn isomorphisms(a: &GroupRef, b: &GroupRef) -> Vec<GroupHom> {
    if !invariants_match(a, b) {
        return Vec::new();
    }
    let search = HomSearch::new(a, b, Mode::Isomorphism);
    let mut out = Vec::new();
    search.run(&mut |f| {
        out.push(GroupHom::new_unchecked(a.clone(), b.clone(), f));
        true
    });
    out
}

pub fn automorphisms(g: &GroupRef) -> Vec<GroupHom> {
    isomorphisms(g, g)
}

/// Automorphisms as permutation arrays, with a cap on the group order.
pub fn automorphisms_capped(g: &GroupRef, cap: usize) -> Result<Vec<GroupHom>> {
    if g.order() > cap {
        return Err(Error::OrderLimitExceeded {
            what: format!("automorphism search on a group of order {}", g.order()),
            cap,
        });
    }
    Ok(automorphisms(g))
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut o = g.element_orders();
    o.sort_unstable();
    o
}

/// Cheap isomorphism invariants: order, abelianness, element-order multiset
/// and center size.
pub fn invariants_match(a: &GroupRef, b: &GroupRef) -> bool {
    a.order() == b.order()
        && a.is_abelian() == b.is_abelian()
        && order_profile(a) == order_profile(b)
        && center(a).order() == center(b).order()
}

/// Some isomorphism `a → b` (the first in canonical search order), if any.
pub fn find_isomorphism(a: &GroupRef, b: &GroupRef) -> Option<GroupHom> {
    if !invariants_match(a, b) {
        return None;
    }
    let search = HomSearch::new(a, b, Mode::Isomorphism);
    let mut found = None;
    search.run(&mut |f| {
        found = Some(f);
        false
    });
    found.map(|f| GroupHom::new_unchecked(a.clone(), b.clone(), f))
}

pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(&Arc::new(a.clone()), &Arc::new(b.clone())).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::perm::compose;

    fn arc(g: FiniteGroup) -> GroupRef {
        Arc::new(g)
    }

    fn all_bijections(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn homomorphism_predicate() {
        let z4 = catalog::cyclic(4);
        assert!(is_homomorphism(&z4, &z4, &[0, 1, 2, 3]));
        assert!(is_homomorphism(&z4, &z4, &[0, 0, 0, 0]));
        assert!(!is_homomorphism(&z4, &z4, &[0, 1, 3, 2]));
    }

    #[test]
    fn automorphism_counts_against_brute_force() {
        for (g, expected) in [
            (catalog::cyclic(5), 4),
            (catalog::cyclic(2), 1),
            (catalog::symmetric(3), 6),
            (catalog::klein(), 6),
            (catalog::dihedral(4), 8),
            (catalog::quaternion(), 24),
        ] {
            let n = g.order();
            let brute = all_bijections(n)
                .into_iter()
                .filter(|f| is_homomorphism(&g, &g, f))
                .count();
            assert_eq!(brute, expected);
            assert_eq!(automorphisms(&arc(g)).len(), expected);
        }
        // all maps Z5 -> Z5, not only bijections
        let z5 = catalog::cyclic(5);
        let mut count = 0;
        for code in 0..5usize.pow(5) {
            let f: Vec<usize> = (0..5).map(|i| code / 5usize.pow(i) % 5).collect();
            let bij = {
                let mut s = f.clone();
                s.sort();
                s == vec![0, 1, 2, 3, 4]
            };
            if bij && is_homomorphism(&z5, &z5, &f) {
                count += 1;
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn automorphisms_form_a_group() {
        for g in catalog::groups_up_to_order(8)
            .into_iter()
            .chain([catalog::alternating4(), catalog::dihedral(6)])
        {
            let g = arc(g);
            let auts: Vec<Vec<u32>> = automorphisms(&g)
                .iter()
                .map(|a| a.images().iter().map(|&x| x as u32).collect())
                .collect();
            for a in &auts {
                for b in &auts {
                    assert!(auts.contains(&compose(a, b)));
                }
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let z4 = arc(catalog::cyclic(4));
        let v4 = arc(catalog::klein());
        assert!(find_isomorphism(&z4, &v4).is_none());
        let s3 = arc(catalog::symmetric(3));
        let id = find_isomorphism(&s3, &s3).unwrap();
        assert!(id.is_bijective());

        // S3 as Z3 ⋊ Z2 written directly: (a, b) -> index 2a + b? use r^i s^j
        let mut table = Vec::new();
        for x in 0..6usize {
            for y in 0..6usize {
                let (i1, j1) = (x % 3, x / 3);
                let (i2, j2) = (y % 3, y / 3);
                let i = if j1 == 0 { (i1 + i2) % 3 } else { (i1 + 3 - i2) % 3 };
                table.push(((j1 + j2) % 2 * 3 + i) as u32);
            }
        }
        let sd = arc(FiniteGroup::from_flat(6, table).unwrap());
        let iso = find_isomorphism(&s3, &sd).unwrap();
        assert!(is_homomorphism(&s3, &sd, iso.images()));
        assert!(iso.is_bijective());
    }

    #[test]
    fn isomorphism_absence_matches_brute_force() {
        let groups: Vec<GroupRef> = catalog::groups_up_to_order(8).into_iter().map(arc).collect();
        for a in &groups {
            for b in &groups {
                let found = find_isomorphism(a, b);
                if let Some(f) = &found {
                    assert!(is_homomorphism(a, b, f.images()) && f.is_bijective());
                } else if a.order() == b.order() {
                    let any = all_bijections(a.order())
                        .into_iter()
                        .any(|f| is_homomorphism(a, b, &f));
                    assert!(!any);
                }
            }
        }
    }

    #[test]
    fn hom_counts() {
        let z6 = arc(catalog::cyclic(6));
        let z4 = arc(catalog::cyclic(4));
        // |Hom(Z6, Z4)| = gcd(6, 4)
        assert_eq!(homomorphisms(&z6, &z4).len(), 2);
        let s3 = arc(catalog::symmetric(3));
        // Hom(S3, S3): trivial, 3 onto order-2 subgroups, 6 automorphisms
        assert_eq!(homomorphisms(&s3, &s3).len(), 10);
    }
}
