//! Isoclinism of relative Rota-Baxter groups and its passage to skew braces.
//!
//! Both halves of a witness are RRB isomorphisms: `(ψ₁, η₁)` between the
//! quotients by the centers and `(ψ₂, η₂)` between the commutators. In
//! particular `η₂: G → L` is a group isomorphism, so structures whose acting
//! groups differ are never isoclinic.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{
    self, brace_diagram_violation, braces_isoclinic, induced_brace, induced_rrb, is_brace_hom,
    BraceIsoclinism, SkewBrace,
};
use crate::error::{Error, Result};
use crate::group::{center, derived_subgroup, quotient, GroupRef, Quotient, Subgroup};
use crate::maps::{isomorphisms, GroupHom};
use crate::rrb::{
    center_rrb, commutator_rrb, h_r_phi_subgroup, is_rrb_morphism, quotient_rrb,
    restrict_with_image, rrb_isomorphisms, RelRB, RrbQuotient,
};

/// Largest `|H|` or `|G|` accepted by [`rrb_isoclinic`].
pub const ISOCLINISM_ORDER_CAP: usize = 12;

/// `ω(h̄₁, h̄₂) = [h₁, h₂]` and `ω^φ(h̄₁, h̄₂) = φ_{R(h₁)}(h₂)h₂⁻¹` on cosets
/// of `Z^φ_R(H)`, stored row-major with values in `H`.
#[derive(Clone, Debug)]
pub struct OmegaMaps {
    pub cosets: Quotient,
    pub omega: Vec<usize>,
    pub omega_phi: Vec<usize>,
}

impl OmegaMaps {
    pub fn order(&self) -> usize {
        self.cosets.group.order()
    }

    pub fn omega(&self, x: usize, y: usize) -> usize {
        self.omega[x * self.order() + y]
    }

    pub fn omega_phi(&self, x: usize, y: usize) -> usize {
        self.omega_phi[x * self.order() + y]
    }
}

/// Tabulates both pairings and checks that every representative pair agrees
/// with the tabulated value and lands in `H^φ`.
pub fn omega_maps(rrb: &RelRB) -> Result<OmegaMaps> {
    let h = rrb.h();
    let z = center_rrb(rrb).k;
    let cosets = quotient(h, &z)?;
    let hphi = commutator_rrb(rrb).k;
    let m = cosets.group.order();
    let mut omega = vec![usize::MAX; m * m];
    let mut omega_phi = vec![usize::MAX; m * m];
    let n = h.order();
    for a in 0..n {
        let ra = rrb.r(a);
        for b in 0..n {
            let slot = cosets.coset_of(a) * m + cosets.coset_of(b);
            let w = h.commutator(a, b);
            let wp = h.mul(rrb.action().apply(ra, b), h.inv(b));
            for (table, v, name) in [(&mut omega, w, "ω"), (&mut omega_phi, wp, "ω^φ")] {
                if !hphi.contains(v) {
                    return Err(Error::WellDefinednessViolation(format!(
                        "{name}({a}, {b}) = {v} lies outside H^φ"
                    )));
                }
                if table[slot] == usize::MAX {
                    table[slot] = v;
                } else if table[slot] != v {
                    return Err(Error::WellDefinednessViolation(format!(
                        "{name} differs on representatives at ({a}, {b})"
                    )));
                }
            }
        }
    }
    Ok(OmegaMaps {
        cosets,
        omega,
        omega_phi,
    })
}

/// Everything the witness search and the bridge check need about one side.
#[derive(Clone, Debug)]
pub struct IsoclinismData {
    pub omega: OmegaMaps,
    /// `(H/Z^φ_R, G/Ker φ, φ̄, R̄)`.
    pub quotient: RrbQuotient,
    /// `H^φ` inside `H`.
    pub commutator: Subgroup,
    /// `(H^φ, G, φ|, R|)` on the elements of `commutator`, in order.
    pub commutator_rrb: RelRB,
}

pub fn isoclinism_data(rrb: &RelRB) -> Result<IsoclinismData> {
    let omega = omega_maps(rrb)?;
    let z = center_rrb(rrb);
    let quotient = quotient_rrb(rrb, &z.k, &z.l)?;
    let comm = commutator_rrb(rrb);
    Ok(IsoclinismData {
        omega,
        quotient,
        commutator_rrb: comm.to_rrb(),
        commutator: comm.k,
    })
}

/// Image arrays of `ψ₁: H/Z^φ_R(H) → K/Z^φ_S(K)`, `η₁: G/Ker φ → L/Ker φ'`,
/// `ψ₂: H^φ → K^φ'` and `η₂: G → L`. Cosets are indexed as in
/// [`crate::group::quotient`]; `H^φ` by position in its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoclinismWitness {
    pub psi1: Vec<usize>,
    pub eta1: Vec<usize>,
    pub psi2: Vec<usize>,
    pub eta2: Vec<usize>,
}

impl IsoclinismWitness {
    pub fn identity(rrb: &RelRB) -> Result<Self> {
        let d = isoclinism_data(rrb)?;
        Ok(IsoclinismWitness {
            psi1: (0..d.quotient.rrb.h().order()).collect(),
            eta1: (0..d.quotient.rrb.g().order()).collect(),
            psi2: (0..d.commutator.order()).collect(),
            eta2: (0..rrb.g().order()).collect(),
        })
    }
}

fn check_shape(name: &str, map: &[usize], source: usize, target: usize) -> Result<()> {
    if map.len() != source {
        return Err(Error::InvalidWitness(format!(
            "{name} has {} entries, expected {source}",
            map.len()
        )));
    }
    if let Some(x) = map.iter().find(|&&x| x >= target) {
        return Err(Error::InvalidWitness(format!(
            "{name} maps to {x}, outside a group of order {target}"
        )));
    }
    Ok(())
}

/// First coset pair `(x, y)` at which `ψ₂∘ω ≠ ω'∘(ψ₁×ψ₁)` or the same for
/// `ω^φ`.
fn diagram_violation(
    ad: &IsoclinismData,
    bd: &IsoclinismData,
    w: &IsoclinismWitness,
) -> Option<(usize, usize)> {
    let aidx = ad.commutator.index_map();
    let bcomm = bd.commutator.elements();
    let m = ad.omega.order();
    let image = |v: usize| bcomm[w.psi2[aidx[v].expect("ω lands in H^φ")]];
    (0..m).into_par_iter().find_map_first(|x| {
        (0..m).find_map(|y| {
            let (px, py) = (w.psi1[x], w.psi1[y]);
            let ok = image(ad.omega.omega(x, y)) == bd.omega.omega(px, py)
                && image(ad.omega.omega_phi(x, y)) == bd.omega.omega_phi(px, py);
            (!ok).then_some((x, y))
        })
    })
}

/// Why a witness fails, checked in this order: the commuting diagram first,
/// then the isomorphism and morphism conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessDefect {
    /// Coset pair of `H/Z^φ_R(H)` at which the diagram fails.
    Diagram(usize, usize),
    NotIsomorphism(&'static str),
    NotRrbMorphism(&'static str),
}

impl std::fmt::Display for WitnessDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessDefect::Diagram(x, y) => write!(f, "diagram fails at coset pair ({x}, {y})"),
            WitnessDefect::NotIsomorphism(m) => write!(f, "{m} is not a group isomorphism"),
            WitnessDefect::NotRrbMorphism(m) => write!(f, "{m} is not an RRB morphism"),
        }
    }
}

/// `Err(InvalidWitness)` when the arrays have the wrong shape for `(a, b)`.
pub fn witness_defect(a: &RelRB, b: &RelRB, w: &IsoclinismWitness) -> Result<Option<WitnessDefect>> {
    let (ad, bd) = (isoclinism_data(a)?, isoclinism_data(b)?);
    witness_defect_with(&ad, &bd, w)
}

fn witness_defect_with(
    ad: &IsoclinismData,
    bd: &IsoclinismData,
    w: &IsoclinismWitness,
) -> Result<Option<WitnessDefect>> {
    let (qa, qb) = (&ad.quotient.rrb, &bd.quotient.rrb);
    let (ca, cb) = (&ad.commutator_rrb, &bd.commutator_rrb);
    check_shape("psi1", &w.psi1, qa.h().order(), qb.h().order())?;
    check_shape("eta1", &w.eta1, qa.g().order(), qb.g().order())?;
    check_shape("psi2", &w.psi2, ca.h().order(), cb.h().order())?;
    check_shape("eta2", &w.eta2, ca.g().order(), cb.g().order())?;
    if let Some((x, y)) = diagram_violation(ad, bd, w) {
        return Ok(Some(WitnessDefect::Diagram(x, y)));
    }
    let iso = |name, src: &GroupRef, dst: &GroupRef, map: &[usize]| {
        GroupHom::new(src.clone(), dst.clone(), map.to_vec())
            .ok()
            .filter(GroupHom::is_bijective)
            .ok_or(WitnessDefect::NotIsomorphism(name))
    };
    let maps = (|| {
        let psi1 = iso("psi1", qa.h(), qb.h(), &w.psi1)?;
        let eta1 = iso("eta1", qa.g(), qb.g(), &w.eta1)?;
        let psi2 = iso("psi2", ca.h(), cb.h(), &w.psi2)?;
        let eta2 = iso("eta2", ca.g(), cb.g(), &w.eta2)?;
        if !is_rrb_morphism(qa, qb, &psi1, &eta1) {
            return Err(WitnessDefect::NotRrbMorphism("(psi1, eta1)"));
        }
        if !is_rrb_morphism(ca, cb, &psi2, &eta2) {
            return Err(WitnessDefect::NotRrbMorphism("(psi2, eta2)"));
        }
        Ok(())
    })();
    Ok(maps.err())
}

/// Searches RRB isomorphisms of the commutators (outer, in parallel) and of
/// the center quotients (inner) for a pair making the diagram commute.
pub fn rrb_isoclinic(a: &RelRB, b: &RelRB) -> Result<Option<IsoclinismWitness>> {
    rrb_isoclinic_capped(a, b, ISOCLINISM_ORDER_CAP)
}

pub fn rrb_isoclinic_capped(a: &RelRB, b: &RelRB, cap: usize) -> Result<Option<IsoclinismWitness>> {
    for x in [a, b] {
        let size = x.h().order().max(x.g().order());
        if size > cap {
            return Err(Error::SearchSpaceTooLarge {
                size: size as u128,
                cap: cap as u128,
            });
        }
    }
    if a == b {
        return IsoclinismWitness::identity(a).map(Some);
    }
    let (ad, bd) = (isoclinism_data(a)?, isoclinism_data(b)?);
    let (qa, qb) = (&ad.quotient.rrb, &bd.quotient.rrb);
    if qa.h().order() != qb.h().order()
        || qa.g().order() != qb.g().order()
        || ad.commutator.order() != bd.commutator.order()
        || a.g().order() != b.g().order()
        || invariant_orders(a) != invariant_orders(b)
    {
        return Ok(None);
    }
    let outer = rrb_isomorphisms(&ad.commutator_rrb, &bd.commutator_rrb);
    let psi1s = isomorphisms(qa.h(), qb.h());
    let eta1s = isomorphisms(qa.g(), qb.g());
    Ok(outer.par_iter().find_map_first(|(psi2, eta2)| {
        psi1s.iter().find_map(|psi1| {
            let mut w = IsoclinismWitness {
                psi1: psi1.images().to_vec(),
                eta1: Vec::new(),
                psi2: psi2.images().to_vec(),
                eta2: eta2.images().to_vec(),
            };
            if diagram_violation(&ad, &bd, &w).is_some() {
                return None;
            }
            let eta1 = eta1s.iter().find(|e| is_rrb_morphism(qa, qb, psi1, e))?;
            w.eta1 = eta1.images().to_vec();
            Some(w)
        })
    }))
}

/// Orders of `Im R/(Im R ∩ Ker φ)`, `H^{R,φ}` and `H/Z^{φ|}_{R|}(H)`, which
/// isoclinic structures share.
pub fn invariant_orders(rrb: &RelRB) -> [usize; 3] {
    let image = rrb.image();
    let kernel = rrb.action().kernel();
    let (i, _) = restrict_with_image(rrb);
    [
        image.order() / image.intersect(&kernel).order(),
        h_r_phi_subgroup(rrb).order(),
        rrb.h().order() / center_rrb(&i).k.order(),
    ]
}

/// Hall isoclinism data: `ξ₁` on `H/Z(H)` cosets and `ξ₂` on positions in
/// the sorted derived subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupIsoclinism {
    pub xi1: Vec<usize>,
    pub xi2: Vec<usize>,
}

struct HallData {
    central: Quotient,
    derived: Subgroup,
}

fn hall_data(h: &GroupRef) -> HallData {
    HallData {
        central: quotient(h, &center(h)).expect("center is normal"),
        derived: derived_subgroup(h),
    }
}

fn hall_violation(h: &GroupRef, hd: &HallData, k: &GroupRef, kd: &HallData, w: &GroupIsoclinism) -> bool {
    let kidx = kd.derived.index_map();
    let n = h.order();
    let lift = |x: usize| kd.central.representatives[w.xi1[hd.central.coset_of(x)]];
    (0..n).any(|a| {
        (0..n).any(|b| {
            let c = h.commutator(a, b);
            let pos = hd.derived.elements().binary_search(&c).expect("commutator in [H, H]");
            kidx[k.commutator(lift(a), lift(b))] != Some(w.xi2[pos])
        })
    })
}

/// Whether `(ξ₁, ξ₂)` are isomorphisms making the commutator squares commute.
pub fn is_group_isoclinism(h: &GroupRef, k: &GroupRef, w: &GroupIsoclinism) -> bool {
    let (hd, kd) = (hall_data(h), hall_data(k));
    let iso = |src: &GroupRef, dst: &GroupRef, map: &[usize]| {
        GroupHom::new(src.clone(), dst.clone(), map.to_vec()).is_ok_and(|f| f.is_bijective())
    };
    iso(&hd.central.group, &kd.central.group, &w.xi1)
        && iso(
            &Arc::new(hd.derived.to_group()),
            &Arc::new(kd.derived.to_group()),
            &w.xi2,
        )
        && !hall_violation(h, &hd, k, &kd, w)
}

/// First Hall isoclinism in the canonical order of the isomorphism searches.
pub fn groups_isoclinic(h: &GroupRef, k: &GroupRef) -> Option<GroupIsoclinism> {
    let (hd, kd) = (hall_data(h), hall_data(k));
    if hd.central.group.order() != kd.central.group.order() || hd.derived.order() != kd.derived.order() {
        return None;
    }
    let dh = Arc::new(hd.derived.to_group());
    let dk = Arc::new(kd.derived.to_group());
    let xi2s = isomorphisms(&dh, &dk);
    isomorphisms(&hd.central.group, &kd.central.group)
        .into_iter()
        .find_map(|xi1| {
            xi2s.iter().find_map(|xi2| {
                let w = GroupIsoclinism {
                    xi1: xi1.images().to_vec(),
                    xi2: xi2.images().to_vec(),
                };
                (!hall_violation(h, &hd, k, &kd, &w)).then_some(w)
            })
        })
}

/// What a valid witness yields: the brace isoclinism of the induced braces,
/// the Hall isoclinism of the underlying groups, and three invariants the
/// two structures must share.
#[derive(Clone, Debug, Serialize)]
pub struct BridgeCertificate {
    pub brace_witness: Option<BraceIsoclinism>,
    pub group_witness: Option<GroupIsoclinism>,
    /// `η₁` maps the image of `Im R` in `G/Ker φ` onto that of `Im S`.
    pub image_quotients_match: bool,
    /// `ψ₂(H^{R,φ}) = K^{S,φ}`.
    pub h_r_phi_match: bool,
    /// `ψ₁` induces a bijection `H/Z^{φ|}_{R|}(H) → K/Z^{φ|}_{S|}(K)`.
    pub annihilator_quotients_match: bool,
    pub theta_diagram_commutes: bool,
    pub group_diagram_commutes: bool,
}

impl BridgeCertificate {
    pub fn passes(&self) -> bool {
        self.brace_witness.is_some()
            && self.group_witness.is_some()
            && self.image_quotients_match
            && self.h_r_phi_match
            && self.annihilator_quotients_match
            && self.theta_diagram_commutes
            && self.group_diagram_commutes
    }
}

/// Map of cosets induced by `ψ₁` through coarser quotients on both sides:
/// `x ↦ ψ₁(x Z) ↦` its class in `dst`. `None` unless well defined and
/// bijective.
fn induced_coset_map(
    n: usize,
    za: &Quotient,
    zb: &Quotient,
    psi1: &[usize],
    src: impl Fn(usize) -> usize,
    dst: impl Fn(usize) -> usize,
    m: usize,
) -> Option<Vec<usize>> {
    let mut out = vec![usize::MAX; m];
    for h in 0..n {
        let v = dst(zb.representatives[psi1[za.coset_of(h)]]);
        let slot = &mut out[src(h)];
        if *slot == usize::MAX {
            *slot = v;
        } else if *slot != v {
            return None;
        }
    }
    let mut seen = vec![false; m];
    out.iter()
        .all(|&v| v < m && !std::mem::replace(&mut seen[v], true))
        .then_some(out)
}

/// Builds the brace and group isoclinisms a witness induces and evaluates
/// the shared invariants. A defective witness is `InvalidWitness`.
pub fn bridge_certificate(a: &RelRB, b: &RelRB, w: &IsoclinismWitness) -> Result<BridgeCertificate> {
    let (ad, bd) = (isoclinism_data(a)?, isoclinism_data(b)?);
    if let Some(defect) = witness_defect_with(&ad, &bd, w)? {
        return Err(Error::InvalidWitness(defect.to_string()));
    }
    let (za, zb) = (&ad.quotient.h, &bd.quotient.h);
    let (ab, bb) = (induced_brace(a), induced_brace(b));
    let (abd, bbd) = (brace::isoclinism_data(&ab), brace::isoclinism_data(&bb));
    let acomm = ad.commutator.index_map();
    let bcomm = bd.commutator.elements();
    let psi2_elem = |x: usize| acomm[x].map(|i| bcomm[w.psi2[i]]);

    // brace side: ξ₁ on annihilator quotients, ξ₂ = ψ₂ on the brace commutator
    let n = a.h().order();
    let xi1 = induced_coset_map(
        n,
        za,
        zb,
        &w.psi1,
        |h| abd.quotient.projection[h],
        |k| bbd.quotient.projection[k],
        abd.quotient.brace.order(),
    );
    let annihilator_quotients_match =
        xi1.is_some() && abd.quotient.brace.order() == bbd.quotient.brace.order();
    let bidx = bbd.commutator.index_map();
    let xi2: Option<Vec<usize>> = abd
        .commutator
        .elements()
        .iter()
        .map(|&x| psi2_elem(x).and_then(|k| bidx[k]))
        .collect();
    let xi2 = xi2.filter(|m| {
        let mut seen = vec![false; bbd.commutator.order()];
        m.len() == seen.len() && m.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    });
    let brace_witness = match (xi1, xi2) {
        (Some(xi1), Some(xi2))
            if is_brace_hom(&abd.quotient.brace, &bbd.quotient.brace, &xi1)
                && is_brace_hom(&abd.commutator_brace, &bbd.commutator_brace, &xi2) =>
        {
            Some(BraceIsoclinism { xi1, xi2 })
        }
        _ => None,
    };
    let theta_diagram_commutes = brace_witness
        .as_ref()
        .is_some_and(|bw| brace_diagram_violation(&ab, &abd, &bb, &bbd, bw).is_none());

    // group side: ψ₁ through H/Z(H), ψ₂ on [H, H]
    let (ha, hb) = (hall_data(a.h()), hall_data(b.h()));
    let gxi1 = induced_coset_map(
        n,
        za,
        zb,
        &w.psi1,
        |h| ha.central.coset_of(h),
        |k| hb.central.coset_of(k),
        ha.central.group.order(),
    )
    .filter(|_| ha.central.group.order() == hb.central.group.order());
    let gxi2: Option<Vec<usize>> = ha
        .derived
        .elements()
        .iter()
        .map(|&x| psi2_elem(x).and_then(|k| hb.derived.elements().binary_search(&k).ok()))
        .collect();
    let gxi2 = gxi2.filter(|_| ha.derived.order() == hb.derived.order());
    let group_witness = match (gxi1, gxi2) {
        (Some(xi1), Some(xi2)) => Some(GroupIsoclinism { xi1, xi2 }),
        _ => None,
    };
    let group_diagram_commutes = group_witness
        .as_ref()
        .is_some_and(|gw| is_group_isoclinism(a.h(), b.h(), gw));

    // η₁ on the images of Im R and Im S in G/Ker φ and L/Ker φ'
    let (ga, gb) = (&ad.quotient.g, &bd.quotient.g);
    let image_cosets = |q: &Quotient, image: &Subgroup| {
        let mut v: Vec<usize> = image.elements().iter().map(|&g| q.coset_of(g)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut mapped: Vec<usize> = image_cosets(ga, &a.image()).iter().map(|&c| w.eta1[c]).collect();
    mapped.sort_unstable();
    let image_quotients_match = mapped == image_cosets(gb, &b.image());

    let hra = h_r_phi_subgroup(a);
    let hrb = h_r_phi_subgroup(b);
    let mut mapped: Option<Vec<usize>> = hra.elements().iter().map(|&x| psi2_elem(x)).collect();
    if let Some(m) = mapped.as_mut() {
        m.sort_unstable();
    }
    let h_r_phi_match = mapped.as_deref() == Some(hrb.elements());

    Ok(BridgeCertificate {
        brace_witness,
        group_witness,
        image_quotients_match,
        h_r_phi_match,
        annihilator_quotients_match,
        theta_diagram_commutes,
        group_diagram_commutes,
    })
}

/// `Ok(false)` when the diagram or the isomorphism conditions fail, or when
/// any consequence recorded in [`BridgeCertificate`] does not hold.
pub fn check_bridge_theorem(a: &RelRB, b: &RelRB, w: &IsoclinismWitness) -> Result<bool> {
    if witness_defect(a, b, w)?.is_some() {
        return Ok(false);
    }
    Ok(bridge_certificate(a, b, w)?.passes())
}

/// Whether the image restrictions `I(a)` and `I(b)` are isoclinic.
pub fn image_restrictions_isoclinic(a: &RelRB, b: &RelRB) -> Result<bool> {
    let (ia, _) = restrict_with_image(a);
    let (ib, _) = restrict_with_image(b);
    Ok(rrb_isoclinic(&ia, &ib)?.is_some())
}

/// A pair of braces that are isoclinic while the structures
/// `(H^(·), H^(∘), λ, Id)` they induce are not.
#[derive(Clone, Debug, Serialize)]
pub struct ConverseCounterexample {
    pub first: String,
    pub second: String,
    pub brace_witness: BraceIsoclinism,
}

/// Scans pairs of trivial braces on `groups` for failures of the converse of
/// the bridge theorem.
pub fn find_converse_counterexamples(groups: &[GroupRef]) -> Result<Vec<ConverseCounterexample>> {
    let braces: Vec<SkewBrace> = groups.iter().map(SkewBrace::trivial).collect();
    let rrbs: Vec<RelRB> = braces.iter().map(induced_rrb).collect();
    let mut out = Vec::new();
    for i in 0..braces.len() {
        for j in i + 1..braces.len() {
            let Some(bw) = braces_isoclinic(&braces[i], &braces[j], ISOCLINISM_ORDER_CAP)? else {
                continue;
            };
            if rrb_isoclinic(&rrbs[i], &rrbs[j])?.is_none() {
                let label = |g: &GroupRef| g.label().unwrap_or("unnamed").to_owned();
                out.push(ConverseCounterexample {
                    first: label(&groups[i]),
                    second: label(&groups[j]),
                    brace_witness: bw,
                });
            }
        }
    }
    Ok(out)
}
