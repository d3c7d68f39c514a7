//! Actions `φ: G → Aut(H)` stored as one permutation of `H` per element of `G`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, Subgroup};
use crate::maps::{automorphisms, homomorphisms, GroupHom};
use crate::perm::compose;

#[derive(Clone)]
pub struct ActionTable {
    acting: GroupRef,
    acted: GroupRef,
    perms: Vec<u32>,
}

impl std::fmt::Debug for ActionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionTable")
            .field("acting", &self.acting.order())
            .field("acted", &self.acted.order())
            .finish()
    }
}

impl PartialEq for ActionTable {
    fn eq(&self, other: &Self) -> bool {
        self.perms == other.perms
            && self.acting.same_table(&other.acting)
            && self.acted.same_table(&other.acted)
    }
}

impl ActionTable {
    /// Validates `perms[g]` as automorphisms of `acted` forming a
    /// homomorphism from `acting`.
    pub fn new(acting: GroupRef, acted: GroupRef, perms: Vec<Vec<usize>>) -> Result<Self> {
        let (ng, nh) = (acting.order(), acted.order());
        if perms.len() != ng {
            return Err(Error::InvalidAction(format!(
                "{} permutations given for a group of order {ng}",
                perms.len()
            )));
        }
        let mut flat = Vec::with_capacity(ng * nh);
        for (g, p) in perms.iter().enumerate() {
            if !crate::perm::is_permutation(p, nh) {
                return Err(Error::InvalidAction(format!(
                    "image of {g} is not a permutation of H"
                )));
            }
            flat.extend(p.iter().map(|&x| x as u32));
        }
        let action = ActionTable {
            acting,
            acted,
            perms: flat,
        };
        action.validate()?;
        Ok(action)
    }

    fn validate(&self) -> Result<()> {
        let (g, h) = (&self.acting, &self.acted);
        if (0..h.order()).any(|x| self.apply(0, x) != x) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for a in 0..g.order() {
            for x in 0..h.order() {
                for y in 0..h.order() {
                    if self.apply(a, h.mul(x, y)) != h.mul(self.apply(a, x), self.apply(a, y)) {
                        return Err(Error::InvalidAction(format!(
                            "image of {a} is not an automorphism (fails at {x}, {y})"
                        )));
                    }
                }
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for x in 0..h.order() {
                    if self.apply(ab, x) != self.apply(a, self.apply(b, x)) {
                        return Err(Error::InvalidAction(format!(
                            "not a homomorphism: φ({a}·{b}) ≠ φ({a})∘φ({b})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn from_flat_unchecked(acting: GroupRef, acted: GroupRef, perms: Vec<u32>) -> Self {
        ActionTable {
            acting,
            acted,
            perms,
        }
    }

    pub fn trivial(acting: &GroupRef, acted: &GroupRef) -> Self {
        let nh = acted.order();
        let perms = (0..acting.order())
            .flat_map(|_| 0..nh as u32)
            .collect();
        Self::from_flat_unchecked(acting.clone(), acted.clone(), perms)
    }

    /// Conjugation `φ_g(x) = g x g⁻¹` of a group on itself.
    pub fn adjoint(g: &GroupRef) -> Self {
        let n = g.order();
        let mut perms = Vec::with_capacity(n * n);
        for a in 0..n {
            for x in 0..n {
                perms.push(g.conj(a, x) as u32);
            }
        }
        Self::from_flat_unchecked(g.clone(), g.clone(), perms)
    }

    /// The acting group, `G`.
    pub fn acting(&self) -> &GroupRef {
        &self.acting
    }

    /// The group acted on, `H`.
    pub fn acted(&self) -> &GroupRef {
        &self.acted
    }

    /// `φ_g(h)`.
    #[inline]
    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.perms[g * self.acted.order() + h] as usize
    }

    pub fn perm(&self, g: usize) -> &[u32] {
        let nh = self.acted.order();
        &self.perms[g * nh..(g + 1) * nh]
    }

    pub fn perms(&self) -> Vec<Vec<usize>> {
        (0..self.acting.order())
            .map(|g| self.perm(g).iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn acts_trivially(&self, g: usize) -> bool {
        self.perm(g).iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.acting.order()).all(|g| self.acts_trivially(g))
    }

    /// `Ker φ ≤ G`.
    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_set(
            &self.acting,
            (0..self.acting.order()).filter(|&g| self.acts_trivially(g)),
        )
    }

    /// `Fix(φ) ≤ H`.
    pub fn fixed_points(&self) -> Subgroup {
        Subgroup::from_set(
            &self.acted,
            (0..self.acted.order())
                .filter(|&x| (0..self.acting.order()).all(|g| self.apply(g, x) == x)),
        )
    }

    /// Restriction to `L ≤ G` acting on `K ≤ H`, re-indexed onto the
    /// subgroups as groups in their own right. Fails unless `φ_ℓ(K) ⊆ K`.
    pub fn restrict(&self, l: &Subgroup, k: &Subgroup) -> Result<(ActionTable, GroupRef, GroupRef)> {
        let lg = Arc::new(l.to_group());
        let kg = Arc::new(k.to_group());
        let kidx = k.index_map();
        let mut perms = Vec::with_capacity(l.order() * k.order());
        for &g in l.elements() {
            for &x in k.elements() {
                let y = kidx[self.apply(g, x)].ok_or_else(|| {
                    Error::InvalidAction(format!("φ_{g} does not preserve the subgroup at {x}"))
                })?;
                perms.push(y as u32);
            }
        }
        Ok((
            Self::from_flat_unchecked(lg.clone(), kg.clone(), perms),
            lg,
            kg,
        ))
    }
}

/// `Aut(H)` under composition `(p·q)(x) = p(q(x))`, with the automorphism
/// realising each element.
pub struct AutomorphismGroup {
    pub group: GroupRef,
    pub perms: Vec<Vec<u32>>,
}

pub fn automorphism_group(h: &GroupRef) -> AutomorphismGroup {
    let mut perms: Vec<Vec<u32>> = automorphisms(h)
        .iter()
        .map(|a| a.images().iter().map(|&x| x as u32).collect())
        .collect();
    let id = perms
        .iter()
        .position(|p| p.iter().enumerate().all(|(i, &x)| i == x as usize))
        .expect("identity automorphism");
    perms.swap(0, id);
    let index: HashMap<&[u32], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = perms.len();
    let mut table = Vec::with_capacity(n * n);
    for p in &perms {
        for q in &perms {
            // (p ∘ q)(x) = p(q(x))
            let pq = compose(q, p);
            table.push(index[pq.as_slice()] as u32);
        }
    }
    AutomorphismGroup {
        group: Arc::new(FiniteGroup::from_trusted(n, table)),
        perms,
    }
}

/// Every action of `g` on `h`: all homomorphisms `G → Aut(H)`, in the
/// canonical order of the homomorphism search.
pub fn enumerate_actions(g: &GroupRef, h: &GroupRef, cap: usize) -> Result<Vec<ActionTable>> {
    if g.order() > cap || h.order() > cap {
        return Err(Error::OrderLimitExceeded {
            what: "action enumeration".into(),
            cap,
        });
    }
    let aut = automorphism_group(h);
    let homs: Vec<GroupHom> = homomorphisms(g, &aut.group);
    Ok(homs
        .into_iter()
        .map(|f| {
            let perms = (0..g.order())
                .flat_map(|x| aut.perms[f.apply(x)].iter().copied())
                .collect();
            ActionTable::from_flat_unchecked(g.clone(), h.clone(), perms)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn arc(g: crate::group::FiniteGroup) -> GroupRef {
        Arc::new(g)
    }

    #[test]
    fn action_counts() {
        let z2 = arc(catalog::cyclic(2));
        let z3 = arc(catalog::cyclic(3));
        let s3 = arc(catalog::symmetric(3));
        assert_eq!(enumerate_actions(&z2, &z3, 2048).unwrap().len(), 2);
        assert_eq!(enumerate_actions(&s3, &z2, 2048).unwrap().len(), 1);
        assert_eq!(enumerate_actions(&z3, &z3, 2048).unwrap().len(), 1);
        for a in enumerate_actions(&s3, &s3, 2048).unwrap() {
            assert!(a.validate().is_ok());
        }
    }

    #[test]
    fn rejects_non_homomorphic_action() {
        let z2 = arc(catalog::cyclic(2));
        let z3 = arc(catalog::cyclic(3));
        // inversion assigned to the identity
        let bad = ActionTable::new(z2.clone(), z3.clone(), vec![vec![0, 2, 1], vec![0, 1, 2]]);
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
        // Z3 acting by inversion is not a homomorphism
        let bad = ActionTable::new(
            z3.clone(),
            z3.clone(),
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]],
        );
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
        let ok = ActionTable::new(z2, z3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(ok.kernel().order(), 1);
        assert_eq!(ok.fixed_points().order(), 1);
    }

    #[test]
    fn adjoint_kernel_is_center() {
        let s3 = arc(catalog::symmetric(3));
        let ad = ActionTable::adjoint(&s3);
        assert!(ad.validate().is_ok());
        assert!(ad.kernel().is_trivial());
        let q8 = arc(catalog::quaternion());
        assert_eq!(ActionTable::adjoint(&q8).kernel().order(), 2);
    }
}
