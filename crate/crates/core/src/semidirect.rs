//! Semidirect products `G ⋉_φ H`.

use std::sync::Arc;

use crate::action::ActionTable;
use crate::group::{FiniteGroup, GroupRef};
use crate::maps::GroupHom;

/// `G ⋉_φ H` on pairs `(g, h)` stored at index `g·|H| + h`, with
/// `(g₁,h₁)(g₂,h₂) = (g₁g₂, h₁·φ_{g₁}(h₂))`.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: GroupRef,
    pub embed_g: GroupHom,
    pub embed_h: GroupHom,
    pub project_g: GroupHom,
    h_order: usize,
}

impl SemidirectProduct {
    pub fn new(action: &ActionTable) -> Self {
        let g = action.acting();
        let h = action.acted();
        let (ng, nh) = (g.order(), h.order());
        let n = ng * nh;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (g1, h1) = (x / nh, x % nh);
            for y in 0..n {
                let (g2, h2) = (y / nh, y % nh);
                table.push(pair_product(g, h, action, (g1, h1), (g2, h2), nh) as u32);
            }
        }
        let group = Arc::new(FiniteGroup::from_trusted(n, table));
        let embed_g =
            GroupHom::new_unchecked(g.clone(), group.clone(), (0..ng).map(|a| a * nh).collect());
        let embed_h = GroupHom::new_unchecked(h.clone(), group.clone(), (0..nh).collect());
        let project_g =
            GroupHom::new_unchecked(group.clone(), g.clone(), (0..n).map(|x| x / nh).collect());
        SemidirectProduct {
            group,
            embed_g,
            embed_h,
            project_g,
            h_order: nh,
        }
    }

    #[inline]
    pub fn pair(&self, g: usize, h: usize) -> usize {
        g * self.h_order + h
    }

    #[inline]
    pub fn unpair(&self, x: usize) -> (usize, usize) {
        (x / self.h_order, x % self.h_order)
    }

    /// `C(x) = x · embed_G(p(x))⁻¹`, which lands in `embed_H(H)`.
    pub fn c_map(&self, x: usize) -> usize {
        let g = self.project_g.apply(x);
        let eg = self.embed_g.apply(self.project_g.target().inv(g));
        self.group.mul(x, eg)
    }
}

#[inline]
pub(crate) fn pair_product(
    g: &FiniteGroup,
    h: &FiniteGroup,
    action: &ActionTable,
    (g1, h1): (usize, usize),
    (g2, h2): (usize, usize),
    nh: usize,
) -> usize {
    g.mul(g1, g2) * nh + h.mul(h1, action.apply(g1, h2))
}

pub fn semidirect_product(action: &ActionTable) -> SemidirectProduct {
    SemidirectProduct::new(action)
}
