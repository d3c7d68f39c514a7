//! Relative Rota-Baxter groups `(H, G, φ, R)`.
//!
//! `R: H → G` satisfies `R(h₁)R(h₂) = R(h₁·φ_{R(h₁)}(h₂))` for all pairs.
//! Substructures, ideals, quotients, the center and the commutator all live
//! here; the skew braces they induce are in [`crate::brace`].

use std::sync::Arc;

use rayon::prelude::*;

use crate::action::ActionTable;
use crate::error::{Error, Result};
use crate::group::{
    center, derived_subgroup, quotient, subgroup_generated, FiniteGroup, GroupRef, Quotient,
    Subgroup,
};
use crate::maps::{isomorphisms, GroupHom};
use crate::semidirect::SemidirectProduct;

#[derive(Clone, Debug, PartialEq)]
pub struct RelRB {
    action: Arc<ActionTable>,
    r: Vec<usize>,
}

/// Exhaustive check of the relative Rota-Baxter identity; returns the first
/// failing pair in row-major order.
pub fn validate_rrb(action: Arc<ActionTable>, r: Vec<usize>) -> Result<RelRB> {
    let (h, g) = (action.acted(), action.acting());
    if r.len() != h.order() {
        return Err(Error::MalformedInput(format!(
            "operator has {} entries for a group of order {}",
            r.len(),
            h.order()
        )));
    }
    if let Some(&x) = r.iter().find(|&&x| x >= g.order()) {
        return Err(Error::MalformedInput(format!("operator value {x} out of range")));
    }
    let rrb = RelRB { action, r };
    if let Some((a, b)) = rrb.first_violation() {
        return Err(Error::NotRotaBaxter(a, b));
    }
    Ok(rrb)
}

impl RelRB {
    pub fn new(action: Arc<ActionTable>, r: Vec<usize>) -> Result<Self> {
        validate_rrb(action, r)
    }

    pub(crate) fn new_unchecked(action: Arc<ActionTable>, r: Vec<usize>) -> Self {
        RelRB { action, r }
    }

    /// The zero operator `R ≡ e`, valid for every action.
    pub fn trivial(action: Arc<ActionTable>) -> Self {
        let n = action.acted().order();
        RelRB {
            action,
            r: vec![0; n],
        }
    }

    fn first_violation(&self) -> Option<(usize, usize)> {
        let (h, g) = (self.h(), self.g());
        let n = h.order();
        (0..n).into_par_iter().find_map_first(|a| {
            let ra = self.r[a];
            (0..n).find_map(|b| {
                let lhs = g.mul(ra, self.r[b]);
                let rhs = self.r[h.mul(a, self.action.apply(ra, b))];
                (lhs != rhs).then_some((a, b))
            })
        })
    }

    pub fn h(&self) -> &GroupRef {
        self.action.acted()
    }

    pub fn g(&self) -> &GroupRef {
        self.action.acting()
    }

    pub fn action(&self) -> &Arc<ActionTable> {
        &self.action
    }

    pub fn operator(&self) -> &[usize] {
        &self.r
    }

    #[inline]
    pub fn r(&self, h: usize) -> usize {
        self.r[h]
    }

    /// `h₁ ∘ h₂ = h₁·φ_{R(h₁)}(h₂)`.
    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.h().mul(a, self.action.apply(self.r[a], b))
    }

    pub fn is_bijective(&self) -> bool {
        self.h().order() == self.g().order() && {
            let mut seen = vec![false; self.g().order()];
            self.r.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        }
    }

    /// `Im R ≤ G`. The image is a subgroup because `R` is a homomorphism
    /// out of the descendent group.
    pub fn image(&self) -> Subgroup {
        Subgroup::from_set(self.g(), self.r.iter().copied())
    }
}

/// The descendent group `(H, ∘)` together with `R` as a homomorphism into `G`.
pub fn descendent_group(rrb: &RelRB) -> Result<(GroupRef, GroupHom)> {
    let n = rrb.h().order();
    let table = (0..n * n)
        .map(|x| rrb.circ(x / n, x % n) as u32)
        .collect();
    let mut d = FiniteGroup::from_flat(n, table)?;
    if let Some(label) = rrb.h().label() {
        d = d.with_label(format!("{label}_R"));
    }
    let d = Arc::new(d);
    let r = GroupHom::new(d.clone(), rrb.g().clone(), rrb.r.clone())?;
    Ok((d, r))
}

/// Cheap descendent table for callers that already trust the structure.
pub(crate) fn descendent_trusted(rrb: &RelRB) -> GroupRef {
    let n = rrb.h().order();
    let table = (0..n * n)
        .map(|x| rrb.circ(x / n, x % n) as u32)
        .collect();
    Arc::new(FiniteGroup::from_trusted(n, table))
}

/// `Gr(R) = {(R(h), h)}` inside `G ⋉_φ H`.
///
/// Panics if `h ↦ (R(h), h)` fails to be an isomorphism from the
/// descendent group, which would contradict the validated identity.
pub fn graph_subgroup(rrb: &RelRB) -> (SemidirectProduct, Subgroup) {
    let sd = SemidirectProduct::new(&rrb.action);
    let points: Vec<usize> = (0..rrb.h().order()).map(|h| sd.pair(rrb.r[h], h)).collect();
    let gr = Subgroup::new(&sd.group, points.iter().copied())
        .expect("graph of a relative Rota-Baxter operator is a subgroup");
    let d = descendent_trusted(rrb);
    let n = d.order();
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                points[d.mul(a, b)],
                sd.group.mul(points[a], points[b]),
                "graph map is not a homomorphism at ({a}, {b})"
            );
        }
    }
    (sd, gr)
}

/// `I(H, G, φ, R) = (H, Im R, φ|, R|)`. Element `i` of the new acting group
/// is `image.elements()[i]`.
pub fn restrict_to_image(rrb: &RelRB) -> RelRB {
    restrict_with_image(rrb).0
}

pub fn restrict_with_image(rrb: &RelRB) -> (RelRB, Subgroup) {
    let image = rrb.image();
    let (action, _, _) = rrb
        .action
        .restrict(&image, &Subgroup::whole(rrb.h()))
        .expect("H is invariant under any action");
    let index = image.index_map();
    let r = rrb.r.iter().map(|&x| index[x].unwrap()).collect();
    // keep the original H so that brace tables stay comparable
    let action = ActionTable::from_flat_unchecked(
        action.acting().clone(),
        rrb.h().clone(),
        action.perms().into_iter().flatten().map(|x| x as u32).collect(),
    );
    (RelRB::new_unchecked(Arc::new(action), r), image)
}

/// `ηR = Sψ` and `ψφ_g = φ'_{η(g)}ψ` for all `h`, `g`.
pub fn is_rrb_morphism(src: &RelRB, dst: &RelRB, psi: &GroupHom, eta: &GroupHom) -> bool {
    let shapes = psi.source().order() == src.h().order()
        && psi.target().order() == dst.h().order()
        && eta.source().order() == src.g().order()
        && eta.target().order() == dst.g().order();
    if !shapes {
        return false;
    }
    let nh = src.h().order();
    (0..nh).all(|h| eta.apply(src.r(h)) == dst.r(psi.apply(h)))
        && (0..src.g().order()).all(|g| {
            let eg = eta.apply(g);
            (0..nh).all(|h| {
                psi.apply(src.action.apply(g, h)) == dst.action.apply(eg, psi.apply(h))
            })
        })
}

/// Every RRB isomorphism `(ψ, η)`, ordered by `ψ` then `η` in the
/// canonical order of the isomorphism search.
pub fn rrb_isomorphisms(src: &RelRB, dst: &RelRB) -> Vec<(GroupHom, GroupHom)> {
    let etas = isomorphisms(src.g(), dst.g());
    if etas.is_empty() {
        return Vec::new();
    }
    isomorphisms(src.h(), dst.h())
        .into_iter()
        .flat_map(|psi| {
            etas.iter()
                .filter(|eta| is_rrb_morphism(src, dst, &psi, eta))
                .map(|eta| (psi.clone(), eta.clone()))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// A relative Rota-Baxter subgroup `(K, L, φ|, R|)`.
#[derive(Clone, Debug)]
pub struct RRBSub {
    pub parent: RelRB,
    pub k: Subgroup,
    pub l: Subgroup,
}

impl RRBSub {
    pub fn new(parent: &RelRB, k: Subgroup, l: Subgroup) -> Result<Self> {
        if let Some(&x) = k.elements().iter().find(|&&x| !l.contains(parent.r(x))) {
            return Err(Error::NotASubstructure(format!("R({x}) lies outside L")));
        }
        for &g in l.elements() {
            if let Some(&x) = k
                .elements()
                .iter()
                .find(|&&x| !k.contains(parent.action.apply(g, x)))
            {
                return Err(Error::NotASubstructure(format!(
                    "φ_{g} moves {x} outside K"
                )));
            }
        }
        Ok(RRBSub {
            parent: parent.clone(),
            k,
            l,
        })
    }

    /// The substructure as a relative Rota-Baxter group on `K` and `L`
    /// re-indexed as groups in their own right.
    pub fn to_rrb(&self) -> RelRB {
        let (action, _, _) = self
            .parent
            .action
            .restrict(&self.l, &self.k)
            .expect("validated substructure");
        let lidx = self.l.index_map();
        let r = self
            .k
            .elements()
            .iter()
            .map(|&x| lidx[self.parent.r(x)].unwrap())
            .collect();
        RelRB::new_unchecked(Arc::new(action), r)
    }
}

/// `(Ker ψ, Ker η)` as a substructure of `src`.
pub fn morphism_kernel(src: &RelRB, dst: &RelRB, psi: &GroupHom, eta: &GroupHom) -> Result<RRBSub> {
    if !is_rrb_morphism(src, dst, psi, eta) {
        return Err(Error::NotAMorphism("ηR = Sψ or ψφ = φ'ψ fails".into()));
    }
    RRBSub::new(src, psi.kernel(), eta.kernel())
}

/// `(Im ψ, Im η)` as a substructure of `dst`.
pub fn morphism_image(src: &RelRB, dst: &RelRB, psi: &GroupHom, eta: &GroupHom) -> Result<RRBSub> {
    if !is_rrb_morphism(src, dst, psi, eta) {
        return Err(Error::NotAMorphism("ηR = Sψ or ψφ = φ'ψ fails".into()));
    }
    RRBSub::new(dst, psi.image_subgroup(), eta.image_subgroup())
}

fn ideal_violation(rrb: &RelRB, k: &Subgroup, l: &Subgroup) -> Option<String> {
    let (h, g, act) = (rrb.h(), rrb.g(), &rrb.action);
    if !k.is_normal() {
        return Some("K is not normal in H".into());
    }
    if !l.is_normal() {
        return Some("L is not normal in G".into());
    }
    if let Some(&x) = k.elements().iter().find(|&&x| !l.contains(rrb.r(x))) {
        return Some(format!("R({x}) lies outside L"));
    }
    for a in 0..g.order() {
        if let Some(&x) = k.elements().iter().find(|&&x| !k.contains(act.apply(a, x))) {
            return Some(format!("φ_{a} moves {x} outside K"));
        }
    }
    for &a in l.elements() {
        if let Some(x) = (0..h.order()).find(|&x| !k.contains(h.mul(act.apply(a, x), h.inv(x)))) {
            return Some(format!("φ_{a}({x})·{x}⁻¹ lies outside K"));
        }
    }
    None
}

/// `K ⊴ H`, `L ⊴ G`, `R(K) ⊆ L`, `φ_g(K) ⊆ K` for every `g`, and
/// `φ_ℓ(h)h⁻¹ ∈ K` for every `ℓ ∈ L`.
pub fn is_ideal(rrb: &RelRB, k: &Subgroup, l: &Subgroup) -> bool {
    ideal_violation(rrb, k, l).is_none()
}

/// The quotient structure with both coset projections.
#[derive(Clone, Debug)]
pub struct RrbQuotient {
    pub rrb: RelRB,
    pub h: Quotient,
    pub g: Quotient,
}

impl RrbQuotient {
    /// The projection pair `(H → H/K, G → G/L)`.
    pub fn projections(&self) -> (&GroupHom, &GroupHom) {
        (&self.h.projection, &self.g.projection)
    }
}

/// `(H/K, G/L, φ̄, R̄)`, with well-definedness checked over every
/// representative.
pub fn quotient_rrb(rrb: &RelRB, k: &Subgroup, l: &Subgroup) -> Result<RrbQuotient> {
    if let Some(why) = ideal_violation(rrb, k, l) {
        return Err(Error::NotAnIdeal(why));
    }
    let hq = quotient(rrb.h(), k)?;
    let gq = quotient(rrb.g(), l)?;
    let (nh, ng) = (hq.group.order(), gq.group.order());
    let mut perms = vec![u32::MAX; ng * nh];
    for g in 0..rrb.g().order() {
        let cg = gq.coset_of(g);
        for h in 0..rrb.h().order() {
            let ch = hq.coset_of(h);
            let v = hq.coset_of(rrb.action.apply(g, h)) as u32;
            let slot = &mut perms[cg * nh + ch];
            if *slot == u32::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(Error::WellDefinednessViolation(format!(
                    "induced action differs on representatives of ({cg}, {ch})"
                )));
            }
        }
    }
    let mut r = vec![usize::MAX; nh];
    for h in 0..rrb.h().order() {
        let v = gq.coset_of(rrb.r(h));
        let slot = &mut r[hq.coset_of(h)];
        if *slot == usize::MAX {
            *slot = v;
        } else if *slot != v {
            return Err(Error::WellDefinednessViolation(format!(
                "induced operator differs on representatives of coset {}",
                hq.coset_of(h)
            )));
        }
    }
    let action = ActionTable::new(
        gq.group.clone(),
        hq.group.clone(),
        perms
            .chunks(nh)
            .map(|p| p.iter().map(|&x| x as usize).collect())
            .collect(),
    )?;
    let q = validate_rrb(Arc::new(action), r)?;
    Ok(RrbQuotient { rrb: q, h: hq, g: gq })
}

/// `Ker(φ∘R)`: the kernel of the homomorphism `(H, ∘) → Aut(H)`, read back
/// as a subset of `H`.
pub fn kernel_phi_r(rrb: &RelRB) -> Subgroup {
    Subgroup::from_set(
        rrb.h(),
        (0..rrb.h().order()).filter(|&x| rrb.action.acts_trivially(rrb.r(x))),
    )
}

/// `Z^φ_R(H) = Z(H) ∩ Ker(φR) ∩ Fix(φ)`.
pub fn center_subgroup(rrb: &RelRB) -> Subgroup {
    center(rrb.h())
        .intersect(&kernel_phi_r(rrb))
        .intersect(&rrb.action.fixed_points())
}

/// The center `(Z^φ_R(H), Ker φ)`; panics if it fails to be an ideal.
pub fn center_rrb(rrb: &RelRB) -> RRBSub {
    let z = center_subgroup(rrb);
    let kerphi = rrb.action.kernel();
    if let Some(why) = ideal_violation(rrb, &z, &kerphi) {
        panic!("center is not an ideal: {why}");
    }
    RRBSub {
        parent: rrb.clone(),
        k: z,
        l: kerphi,
    }
}

/// `H^(2) = ⟨φ_g(h)h⁻¹⟩`.
pub fn h2_subgroup(rrb: &RelRB) -> Subgroup {
    let (h, act) = (rrb.h(), &rrb.action);
    let gens = (0..rrb.g().order())
        .flat_map(|g| (0..h.order()).map(move |x| h.mul(act.apply(g, x), h.inv(x))));
    subgroup_generated(h, unique(gens, h.order()))
}

/// `H^φ = ⟨[H,H], H^(2)⟩`.
pub fn commutator_subgroup(rrb: &RelRB) -> Subgroup {
    derived_subgroup(rrb.h()).join(&h2_subgroup(rrb))
}

/// The commutator `(H^φ, G, φ|, R|)`; panics if it fails to be an ideal.
pub fn commutator_rrb(rrb: &RelRB) -> RRBSub {
    let k = commutator_subgroup(rrb);
    let l = Subgroup::whole(rrb.g());
    if let Some(why) = ideal_violation(rrb, &k, &l) {
        panic!("commutator is not an ideal: {why}");
    }
    RRBSub {
        parent: rrb.clone(),
        k,
        l,
    }
}

/// `H^{R,φ} = ⟨φ_{R(h₁)}(h₂)h₂⁻¹⟩`.
pub fn h_r_phi_subgroup(rrb: &RelRB) -> Subgroup {
    let h = rrb.h();
    let gens = (0..h.order()).flat_map(|a| {
        (0..h.order()).map(move |b| h.mul(rrb.action.apply(rrb.r(a), b), h.inv(b)))
    });
    subgroup_generated(h, unique(gens, h.order()))
}

fn unique(xs: impl Iterator<Item = usize>, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    xs.filter(|&x| !std::mem::replace(&mut seen[x], true)).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog;

    /// `S₃ = HL` with `H = ⟨(123)⟩`, `L = ⟨(12)⟩`, adjoint action and
    /// `R(hl) = l⁻¹`.
    pub(crate) fn s3_factorised() -> RelRB {
        let s3 = Arc::new(catalog::symmetric(3));
        let rot = (1..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let a3 = subgroup_generated(&s3, [rot]);
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let l = [0, t];
        let mut r = vec![usize::MAX; 6];
        for &h in a3.elements() {
            for &y in &l {
                r[s3.mul(h, y)] = s3.inv(y);
            }
        }
        RelRB::new(Arc::new(ActionTable::adjoint(&s3)), r).unwrap()
    }

    fn z5_pair() -> (RelRB, RelRB) {
        let z5 = Arc::new(catalog::cyclic(5));
        let act = Arc::new(ActionTable::trivial(&z5, &z5));
        (
            RelRB::new(act.clone(), (0..5).collect()).unwrap(),
            RelRB::trivial(act),
        )
    }

    #[test]
    fn validation() {
        let z2 = Arc::new(catalog::cyclic(2));
        let act = Arc::new(ActionTable::trivial(&z2, &z2));
        assert!(RelRB::new(act.clone(), vec![0, 1]).is_ok());
        assert!(RelRB::new(act.clone(), vec![0, 0]).is_ok());
        assert_eq!(
            RelRB::new(act, vec![1, 0]).unwrap_err(),
            Error::NotRotaBaxter(0, 0)
        );
        let s3 = Arc::new(catalog::symmetric(3));
        let ad = Arc::new(ActionTable::adjoint(&s3));
        for r in [vec![0; 6], s3_factorised().operator().to_vec()] {
            assert!(RelRB::new(ad.clone(), r).is_ok());
        }
    }

    #[test]
    fn cyclic_family_with_every_action() {
        // R(b^k) = a^n for odd k, e for even k, on Z_2m by Z_2n
        for (m, n) in [(1, 1), (2, 1), (3, 2), (2, 3)] {
            let h = Arc::new(catalog::cyclic(2 * m));
            let g = Arc::new(catalog::cyclic(2 * n));
            let r: Vec<usize> = (0..2 * m).map(|k| if k % 2 == 1 { n } else { 0 }).collect();
            for act in crate::action::enumerate_actions(&g, &h, 2048).unwrap() {
                assert!(RelRB::new(Arc::new(act), r.clone()).is_ok());
            }
        }
    }

    #[test]
    fn descendent_and_graph() {
        let rrb = s3_factorised();
        let (d, r) = descendent_group(&rrb).unwrap();
        assert_eq!(d.order(), 6);
        assert!(crate::maps::is_homomorphism(&d, rrb.g(), r.images()));
        let (sd, gr) = graph_subgroup(&rrb);
        assert_eq!(gr.order(), 6);
        assert_eq!(sd.group.order(), 36);

        let (id, zero) = z5_pair();
        let (d, r) = descendent_group(&id).unwrap();
        assert!(d.same_table(id.h()));
        assert!(r.is_bijective());
        let (sd, m) = graph_subgroup(&id);
        assert_eq!(m, subgroup_generated(&sd.group, [sd.pair(1, 1)]));
        let (sd, n) = graph_subgroup(&zero);
        assert_eq!(n.elements(), (0..5).map(|h| sd.pair(0, h)).collect::<Vec<_>>());
        assert!(descendent_group(&zero).unwrap().0.same_table(zero.h()));
    }

    #[test]
    fn image_restriction() {
        let rrb = s3_factorised();
        let (i, image) = restrict_with_image(&rrb);
        assert_eq!(image.order(), 2);
        assert_eq!(i.g().order(), 2);
        assert!(RelRB::new(i.action().clone(), i.operator().to_vec()).is_ok());
        let (_, zero) = z5_pair();
        assert_eq!(restrict_to_image(&zero).g().order(), 1);
        let (id, _) = z5_pair();
        assert_eq!(restrict_to_image(&id).operator(), id.operator());
    }

    #[test]
    fn morphisms() {
        let (id, zero) = z5_pair();
        let one = GroupHom::identity(id.h());
        assert!(is_rrb_morphism(&id, &id, &one, &one));
        assert!(!is_rrb_morphism(&id, &zero, &one, &one));
        let triv = GroupHom::trivial(id.h(), id.h());
        assert!(is_rrb_morphism(&zero, &zero, &triv, &triv));
        let ker = morphism_kernel(&id, &id, &one, &one).unwrap();
        assert!(ker.k.is_trivial() && ker.l.is_trivial());
        let im = morphism_image(&id, &id, &one, &one).unwrap();
        assert!(im.k.is_whole() && im.l.is_whole());
        let ker = morphism_kernel(&zero, &zero, &triv, &triv).unwrap();
        assert!(ker.k.is_whole() && ker.l.is_whole());
        assert!(matches!(
            morphism_kernel(&id, &zero, &one, &one),
            Err(Error::NotAMorphism(_))
        ));
    }

    #[test]
    fn ideals_and_quotients() {
        let rrb = s3_factorised();
        let (h, g) = (rrb.h().clone(), rrb.g().clone());
        assert!(is_ideal(&rrb, &Subgroup::whole(&h), &Subgroup::whole(&g)));
        let top = quotient_rrb(&rrb, &Subgroup::whole(&h), &Subgroup::whole(&g)).unwrap();
        assert_eq!(top.rrb.h().order(), 1);
        assert_eq!(top.rrb.g().order(), 1);
        let same = quotient_rrb(&rrb, &Subgroup::trivial(&h), &Subgroup::trivial(&g)).unwrap();
        assert_eq!(same.rrb.operator(), rrb.operator());

        let z = center_rrb(&rrb);
        assert!(z.k.is_trivial() && z.l.is_trivial());
        let q = quotient_rrb(&rrb, &z.k, &z.l).unwrap();
        assert_eq!(q.rrb.h().order(), 6);
        let (ph, pg) = q.projections();
        let ker = morphism_kernel(&rrb, &q.rrb, ph, pg).unwrap();
        assert_eq!((ker.k, ker.l), (z.k.clone(), z.l.clone()));

        // A3 in S3 is normal but the adjoint action of L = A3 moves
        // transpositions outside {e}
        let a3 = derived_subgroup(&h);
        assert!(!is_ideal(&rrb, &Subgroup::trivial(&h), &a3));
        assert!(matches!(
            quotient_rrb(&rrb, &Subgroup::trivial(&h), &a3),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn centers() {
        let z6 = Arc::new(catalog::cyclic(6));
        let z2 = Arc::new(catalog::cyclic(2));
        let rrb = RelRB::trivial(Arc::new(ActionTable::trivial(&z2, &z6)));
        let c = center_rrb(&rrb);
        assert!(c.k.is_whole() && c.l.is_whole());
        let s3 = Arc::new(catalog::symmetric(3));
        let rrb = RelRB::trivial(Arc::new(ActionTable::trivial(&z2, &s3)));
        let c = center_rrb(&rrb);
        assert!(c.k.is_trivial() && c.l.is_whole());
    }

    #[test]
    fn commutators() {
        let s3 = Arc::new(catalog::symmetric(3));
        let z2 = Arc::new(catalog::cyclic(2));
        let z3 = Arc::new(catalog::cyclic(3));
        let plain = RelRB::trivial(Arc::new(ActionTable::trivial(&z2, &s3)));
        assert!(h2_subgroup(&plain).is_trivial());
        assert_eq!(commutator_subgroup(&plain), derived_subgroup(&s3));
        assert!(h_r_phi_subgroup(&plain).is_trivial());

        let rrb = s3_factorised();
        assert_eq!(h2_subgroup(&rrb), derived_subgroup(&s3));
        assert_eq!(commutator_rrb(&rrb).k.order(), 3);

        let inv = ActionTable::new(z2, z3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let rrb = RelRB::trivial(Arc::new(inv));
        assert!(h2_subgroup(&rrb).is_whole());
        assert!(h_r_phi_subgroup(&rrb).is_trivial());
    }

    #[test]
    fn substructure_checks() {
        let rrb = s3_factorised();
        let h = rrb.h().clone();
        let a3 = derived_subgroup(&h);
        // R(A3) = {e} but adjoint conjugation by (12) preserves A3
        let sub = RRBSub::new(&rrb, a3.clone(), rrb.image()).unwrap();
        let as_rrb = sub.to_rrb();
        assert_eq!(as_rrb.h().order(), 3);
        assert!(RelRB::new(as_rrb.action().clone(), as_rrb.operator().to_vec()).is_ok());
        assert!(RRBSub::new(&rrb, Subgroup::whole(&h), Subgroup::trivial(rrb.g())).is_err());
    }
}
