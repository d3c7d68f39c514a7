//! Skew left braces `(H, ·, ∘)` with `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`, their
//! Yang-Baxter solutions, ideals and isoclinism.
//!
//! Inverses written `a⁻¹` are always taken in the dot group; the circle
//! inverse is written `ā`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::action::ActionTable;
use crate::error::{Error, Result};
use crate::group::{derived_subgroup, quotient, subgroup_generated, FiniteGroup, GroupRef, Subgroup};
use crate::maps::{isomorphisms, GroupHom};
use crate::rrb::{descendent_group, RelRB};

#[derive(Clone, Debug)]
pub struct SkewBrace {
    dot: GroupRef,
    circ: GroupRef,
}

impl PartialEq for SkewBrace {
    fn eq(&self, other: &Self) -> bool {
        self.dot.same_table(&other.dot) && self.circ.same_table(&other.circ)
    }
}

fn first_brace_violation(dot: &FiniteGroup, circ: &FiniteGroup) -> Option<(usize, usize, usize)> {
    let n = dot.order();
    (0..n).into_par_iter().find_map_first(|a| {
        let ai = dot.inv(a);
        for b in 0..n {
            let ab = circ.mul(a, b);
            for c in 0..n {
                let lhs = circ.mul(a, dot.mul(b, c));
                let rhs = dot.mul(dot.mul(ab, ai), circ.mul(a, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
        None
    })
}

/// Exhaustive check of the brace law; reports the first failing triple.
pub fn validate_brace(dot: GroupRef, circ: GroupRef) -> Result<SkewBrace> {
    if dot.order() != circ.order() {
        return Err(Error::MalformedInput(format!(
            "dot group has order {} but circle group has order {}",
            dot.order(),
            circ.order()
        )));
    }
    if let Some((a, b, c)) = first_brace_violation(&dot, &circ) {
        return Err(Error::NotABrace(a, b, c));
    }
    Ok(SkewBrace { dot, circ })
}

impl SkewBrace {
    pub fn new(dot: GroupRef, circ: GroupRef) -> Result<Self> {
        validate_brace(dot, circ)
    }

    /// The trivial brace `a∘b = a·b`.
    pub fn trivial(g: &GroupRef) -> Self {
        SkewBrace {
            dot: g.clone(),
            circ: g.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &GroupRef {
        &self.dot
    }

    pub fn circ(&self) -> &GroupRef {
        &self.circ
    }

    /// `λ_a(b) = a⁻¹·(a∘b)`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.dot.mul(self.dot.inv(a), self.circ.mul(a, b))
    }

    /// `θ(a, b) = a·b·a⁻¹·b⁻¹`.
    pub fn theta(&self, a: usize, b: usize) -> usize {
        self.dot.commutator(a, b)
    }

    /// `θ*(a, b) = a⁻¹·(a∘b)·b⁻¹`.
    pub fn theta_star(&self, a: usize, b: usize) -> usize {
        self.dot.mul(self.lambda(a, b), self.dot.inv(b))
    }
}

/// `λ: (H, ∘) → Aut(H, ·)` as a validated action.
pub fn lambda_map(brace: &SkewBrace) -> ActionTable {
    let n = brace.order();
    let perms = (0..n)
        .map(|a| (0..n).map(|b| brace.lambda(a, b)).collect())
        .collect();
    ActionTable::new(brace.circ.clone(), brace.dot.clone(), perms)
        .expect("λ of a skew brace is an action")
}

/// `(H, ·, ∘_R)`.
pub fn induced_brace(rrb: &RelRB) -> SkewBrace {
    let (circ, _) = descendent_group(rrb).expect("descendent operation is a group");
    validate_brace(rrb.h().clone(), circ).expect("induced structure is a skew brace")
}

/// `(H^(·), H^(∘), λ, Id)`.
pub fn induced_rrb(brace: &SkewBrace) -> RelRB {
    let lambda = Arc::new(lambda_map(brace));
    RelRB::new(lambda, (0..brace.order()).collect()).expect("identity is an operator for λ")
}

pub fn is_trivial_brace(brace: &SkewBrace) -> bool {
    brace.dot.flat_table() == brace.circ.flat_table()
}

/// `Im R ⊆ Ker φ`, which decides whether the induced brace is trivial.
pub fn triviality_criterion(rrb: &RelRB) -> bool {
    rrb.operator().iter().all(|&g| rrb.action().acts_trivially(g))
}

/// First triple at which `(H, ∘, ·)` fails the brace law.
pub fn biskew_violation(brace: &SkewBrace) -> Option<(usize, usize, usize)> {
    first_brace_violation(&brace.circ, &brace.dot)
}

pub fn is_biskew(brace: &SkewBrace) -> bool {
    biskew_violation(brace).is_none()
}

/// A map on `X × X` stored as `r(a, b) = (f_a(b), g_b(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YBEMap {
    n: usize,
    f: Vec<u32>,
    g: Vec<u32>,
}

impl YBEMap {
    pub fn from_fn(n: usize, r: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let mut f = Vec::with_capacity(n * n);
        let mut g = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (x, y) = r(a, b);
                f.push(x as u32);
                g.push(y as u32);
            }
        }
        YBEMap { n, f, g }
    }

    /// `(a, b) ↦ (b, a)`.
    pub fn flip(n: usize) -> Self {
        Self::from_fn(n, |a, b| (b, a))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let i = a * self.n + b;
        (self.f[i] as usize, self.g[i] as usize)
    }

    /// Rows `(a, b, f_a(b), g_b(a))` in lexicographic order of `(a, b)`.
    pub fn rows(&self) -> Vec<[usize; 4]> {
        let n = self.n;
        (0..n * n)
            .map(|i| [i / n, i % n, self.f[i] as usize, self.g[i] as usize])
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.n * self.n];
        (0..self.n * self.n).all(|i| {
            let j = self.f[i] as usize * self.n + self.g[i] as usize;
            !std::mem::replace(&mut seen[j], true)
        })
    }

    /// `r` composed with the flip: `(a, b) ↦ (g_b(a), f_a(b))`.
    pub fn flipped(&self) -> YBEMap {
        Self::from_fn(self.n, |a, b| {
            let (x, y) = self.apply(a, b);
            (y, x)
        })
    }
}

/// Braid relation `r₁₂r₂₃r₁₂ = r₂₃r₁₂r₂₃` on every triple.
pub fn ybe_violation(m: &YBEMap) -> Option<(usize, usize, usize)> {
    let n = m.n;
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                let (x1, y1) = m.apply(x, y);
                let (y2, z2) = m.apply(y1, z);
                let (x3, y3) = m.apply(x1, y2);
                let lhs = (x3, y3, z2);
                let (y1, z1) = m.apply(y, z);
                let (x2, y2) = m.apply(x, y1);
                let (y3, z3) = m.apply(y2, z1);
                if lhs != (x2, y3, z3) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

pub fn verify_ybe(m: &YBEMap) -> bool {
    ybe_violation(m).is_none()
}

/// `R¹²R¹³R²³ = R²³R¹³R¹²` for `R` acting on `X³`, with `Rⁱʲ` acting on
/// factors `i` and `j`. For `R = flip ∘ r` this is equivalent to the braid
/// relation for `r`.
pub fn verify_ybe_matrix_form(rm: &YBEMap) -> bool {
    let n = rm.n;
    let r12 = |t: [usize; 3]| {
        let (a, b) = rm.apply(t[0], t[1]);
        [a, b, t[2]]
    };
    let r13 = |t: [usize; 3]| {
        let (a, c) = rm.apply(t[0], t[2]);
        [a, t[1], c]
    };
    let r23 = |t: [usize; 3]| {
        let (b, c) = rm.apply(t[1], t[2]);
        [t[0], b, c]
    };
    (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let t = [x, y, z];
                r12(r13(r23(t))) == r23(r13(r12(t)))
            })
        })
    })
}

/// Both `b ↦ f_a(b)` and `a ↦ g_b(a)` are bijections for every fixed
/// argument.
pub fn verify_nondegenerate(m: &YBEMap) -> bool {
    let n = m.n;
    (0..n).all(|a| {
        let mut seen = vec![false; n];
        (0..n).all(|b| !std::mem::replace(&mut seen[m.apply(a, b).0], true))
    }) && (0..n).all(|b| {
        let mut seen = vec![false; n];
        (0..n).all(|a| !std::mem::replace(&mut seen[m.apply(a, b).1], true))
    })
}

pub fn is_involutive(m: &YBEMap) -> bool {
    let n = m.n;
    (0..n).all(|a| {
        (0..n).all(|b| {
            let (x, y) = m.apply(a, b);
            m.apply(x, y) == (a, b)
        })
    })
}

/// `r(a, b) = (λ_a(b), λ⁻¹_{λ_a(b)}((a∘b)⁻¹·a·(a∘b)))`.
pub fn ybe_map(brace: &SkewBrace) -> Result<YBEMap> {
    let (dot, circ) = (&brace.dot, &brace.circ);
    let n = brace.order();
    let circ_inv: Vec<usize> = (0..n).map(|x| circ.inv(x)).collect();
    let m = YBEMap::from_fn(n, |a, b| {
        let x = brace.lambda(a, b);
        let ab = circ.mul(a, b);
        let y = dot.mul(dot.mul(dot.inv(ab), a), ab);
        // λ is a homomorphism from (H, ∘), so λ_x⁻¹ = λ_x̄
        (x, brace.lambda(circ_inv[x], y))
    });
    if !m.is_bijective() {
        return Err(Error::YbeViolation("pair map is not bijective".into()));
    }
    if let Some((x, y, z)) = ybe_violation(&m) {
        return Err(Error::YbeViolation(format!(
            "braid relation fails at ({x}, {y}, {z})"
        )));
    }
    if !verify_nondegenerate(&m) {
        return Err(Error::YbeViolation("solution is degenerate".into()));
    }
    Ok(m)
}

/// Left ideal that is normal in both groups.
pub fn is_brace_ideal(brace: &SkewBrace, s: &Subgroup) -> bool {
    let n = brace.order();
    s.is_normal()
        && s.elements()
            .iter()
            .all(|&x| (0..n).all(|a| s.contains(brace.lambda(a, x))))
        && s.elements()
            .iter()
            .all(|&x| (0..n).all(|a| s.contains(brace.circ.conj(a, x))))
}

/// `Ann(H) = Ker λ ∩ Z(H, ·) ∩ Fix λ`; panics if the commuting-element
/// description disagrees or the result is not an ideal.
pub fn annihilator(brace: &SkewBrace) -> Subgroup {
    let (dot, circ) = (&brace.dot, &brace.circ);
    let n = brace.order();
    let ker = |a: usize| (0..n).all(|b| brace.lambda(a, b) == b);
    let central = |a: usize| (0..n).all(|b| dot.mul(a, b) == dot.mul(b, a));
    let fixed = |a: usize| (0..n).all(|b| brace.lambda(b, a) == a);
    let first: Vec<usize> = (0..n).filter(|&a| ker(a) && central(a) && fixed(a)).collect();
    let second: Vec<usize> = (0..n)
        .filter(|&a| {
            (0..n).all(|b| {
                let ab = dot.mul(a, b);
                circ.mul(b, a) == ab && circ.mul(a, b) == ab && dot.mul(b, a) == ab
            })
        })
        .collect();
    assert_eq!(first, second, "annihilator characterizations disagree");
    let ann = Subgroup::new(dot, first).expect("annihilator is a subgroup");
    assert!(is_brace_ideal(brace, &ann), "annihilator is not an ideal");
    ann
}

/// Smallest ideal containing `seed`.
pub fn ideal_closure(brace: &SkewBrace, seed: impl IntoIterator<Item = usize>) -> Subgroup {
    let (dot, circ) = (&brace.dot, &brace.circ);
    let n = brace.order();
    let mut s = subgroup_generated(dot, seed);
    loop {
        let mut extra = Vec::new();
        for &x in s.elements() {
            for a in 0..n {
                for y in [dot.conj(a, x), circ.conj(a, x), brace.lambda(a, x)] {
                    if !s.contains(y) {
                        extra.push(y);
                    }
                }
            }
        }
        if extra.is_empty() {
            return s;
        }
        s = subgroup_generated(dot, s.elements().iter().copied().chain(extra));
    }
}

/// The ideal generated by every `a⁻¹·(a∘b)·b⁻¹`.
pub fn brace_h2(brace: &SkewBrace) -> Subgroup {
    let n = brace.order();
    let mut seen = vec![false; n];
    let gens: Vec<usize> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| brace.theta_star(a, b))
        .filter(|&x| !std::mem::replace(&mut seen[x], true))
        .collect();
    ideal_closure(brace, gens)
}

/// `H′ = ⟨[H, H]_·, H^(2)⟩`.
pub fn brace_commutator(brace: &SkewBrace) -> Subgroup {
    derived_subgroup(&brace.dot).join(&brace_h2(brace))
}

/// A subset closed under both operations, as a brace on its own indices
/// (`i ↦ s.elements()[i]`).
pub fn sub_brace(brace: &SkewBrace, s: &Subgroup) -> Result<SkewBrace> {
    let idx = s.index_map();
    let k = s.order();
    let mut circ = Vec::with_capacity(k * k);
    for &a in s.elements() {
        for &b in s.elements() {
            let c = idx[brace.circ.mul(a, b)].ok_or_else(|| {
                Error::NotASubstructure(format!("{a} ∘ {b} leaves the subset"))
            })?;
            circ.push(c as u32);
        }
    }
    Ok(SkewBrace {
        dot: Arc::new(s.to_group()),
        circ: Arc::new(FiniteGroup::from_flat(k, circ)?),
    })
}

/// `H/I` for an ideal `I`; `projection[x]` is the coset of `x`.
#[derive(Clone, Debug)]
pub struct BraceQuotient {
    pub brace: SkewBrace,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

pub fn brace_quotient(brace: &SkewBrace, ideal: &Subgroup) -> Result<BraceQuotient> {
    if !is_brace_ideal(brace, ideal) {
        return Err(Error::NotAnIdeal("subgroup is not a brace ideal".into()));
    }
    let q = quotient(&brace.dot, ideal)?;
    let m = q.group.order();
    let mut circ = vec![u32::MAX; m * m];
    let n = brace.order();
    for a in 0..n {
        for b in 0..n {
            let v = q.coset_of(brace.circ.mul(a, b)) as u32;
            let slot = &mut circ[q.coset_of(a) * m + q.coset_of(b)];
            if *slot == u32::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(Error::WellDefinednessViolation(format!(
                    "circle product differs on representatives of ({a}, {b})"
                )));
            }
        }
    }
    let circ = Arc::new(FiniteGroup::from_flat(m, circ)?);
    Ok(BraceQuotient {
        brace: validate_brace(q.group.clone(), circ)?,
        projection: q.projection.images().to_vec(),
        representatives: q.representatives,
    })
}

/// `ψ` preserves both operations.
pub fn is_brace_hom(src: &SkewBrace, dst: &SkewBrace, psi: &[usize]) -> bool {
    let n = src.order();
    psi.len() == n
        && psi.iter().all(|&x| x < dst.order())
        && (0..n).all(|a| {
            (0..n).all(|b| {
                psi[src.dot.mul(a, b)] == dst.dot.mul(psi[a], psi[b])
                    && psi[src.circ.mul(a, b)] == dst.circ.mul(psi[a], psi[b])
            })
        })
}

/// Every brace isomorphism, in the canonical order of the dot-group search.
pub fn brace_isomorphisms(a: &SkewBrace, b: &SkewBrace) -> Vec<Vec<usize>> {
    if a.order() != b.order() {
        return Vec::new();
    }
    isomorphisms(&a.dot, &b.dot)
        .into_iter()
        .map(|f| f.images().to_vec())
        .filter(|f| {
            let n = a.order();
            (0..n).all(|x| (0..n).all(|y| f[a.circ.mul(x, y)] == b.circ.mul(f[x], f[y])))
        })
        .collect()
}

pub fn find_brace_isomorphism(a: &SkewBrace, b: &SkewBrace) -> Option<Vec<usize>> {
    brace_isomorphisms(a, b).into_iter().next()
}

/// Quotient by the annihilator and the commutator, with the element maps
/// needed to evaluate `θ` and `θ*` on cosets.
#[derive(Clone, Debug)]
pub struct BraceIsoclinismData {
    pub quotient: BraceQuotient,
    pub commutator: Subgroup,
    pub commutator_brace: SkewBrace,
}

pub fn isoclinism_data(brace: &SkewBrace) -> BraceIsoclinismData {
    let ann = annihilator(brace);
    let quotient = brace_quotient(brace, &ann).expect("annihilator is an ideal");
    let commutator = brace_commutator(brace);
    let commutator_brace = sub_brace(brace, &commutator).expect("commutator is an ideal");
    BraceIsoclinismData {
        quotient,
        commutator,
        commutator_brace,
    }
}

/// `ξ₁: H/Ann(H) → K/Ann(K)` and `ξ₂: H′ → K′`, both on the re-indexed
/// carriers of [`BraceIsoclinismData`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BraceIsoclinism {
    pub xi1: Vec<usize>,
    pub xi2: Vec<usize>,
}

/// First pair `(a, b)` of elements of `H` where the `θ` or `θ*` square fails
/// to commute under `(ξ₁, ξ₂)`.
pub fn brace_diagram_violation(
    h: &SkewBrace,
    hd: &BraceIsoclinismData,
    k: &SkewBrace,
    kd: &BraceIsoclinismData,
    w: &BraceIsoclinism,
) -> Option<(usize, usize)> {
    let hidx = hd.commutator.index_map();
    let kidx = kd.commutator.index_map();
    let lift = |x: usize| kd.quotient.representatives[w.xi1[hd.quotient.projection[x]]];
    let n = h.order();
    for a in 0..n {
        for b in 0..n {
            let (ka, kb) = (lift(a), lift(b));
            for (src, dst) in [
                (h.theta(a, b), k.theta(ka, kb)),
                (h.theta_star(a, b), k.theta_star(ka, kb)),
            ] {
                let image = hidx[src].map(|i| kd.commutator.elements()[w.xi2[i]]);
                if image != Some(dst) || kidx[dst].is_none() {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Searches brace isomorphisms of the annihilator quotients and the
/// commutators making the `θ` and `θ*` squares commute.
pub fn braces_isoclinic(a: &SkewBrace, b: &SkewBrace, cap: usize) -> Result<Option<BraceIsoclinism>> {
    for x in [a, b] {
        if x.order() > cap {
            return Err(Error::SearchSpaceTooLarge {
                size: x.order() as u128,
                cap: cap as u128,
            });
        }
    }
    let (ad, bd) = (isoclinism_data(a), isoclinism_data(b));
    if ad.quotient.brace.order() != bd.quotient.brace.order()
        || ad.commutator.order() != bd.commutator.order()
    {
        return Ok(None);
    }
    let outer = brace_isomorphisms(&ad.commutator_brace, &bd.commutator_brace);
    let inner = brace_isomorphisms(&ad.quotient.brace, &bd.quotient.brace);
    for xi2 in &outer {
        for xi1 in &inner {
            let w = BraceIsoclinism {
                xi1: xi1.clone(),
                xi2: xi2.clone(),
            };
            if brace_diagram_violation(a, &ad, b, &bd, &w).is_none() {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// `ψ` extended to an RRB morphism between induced structures of bijective
/// operators: `η = S∘ψ∘R⁻¹`.
pub fn extend_brace_hom(src: &RelRB, dst: &RelRB, psi: &[usize]) -> Option<GroupHom> {
    if !src.is_bijective() {
        return None;
    }
    let mut r_inv = vec![0; src.g().order()];
    for (h, &g) in src.operator().iter().enumerate() {
        r_inv[g] = h;
    }
    let eta: Vec<usize> = (0..src.g().order()).map(|g| dst.r(psi[r_inv[g]])).collect();
    GroupHom::new(src.g().clone(), dst.g().clone(), eta).ok()
}
