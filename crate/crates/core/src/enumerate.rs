//! Enumeration of relative Rota-Baxter operators.
//!
//! Operators `R: H → G` for an action `φ` correspond to subgroups of
//! `G ⋉_φ H` of order `|H|` whose `H`-coordinates are all distinct: the
//! graph `{(R(h), h)}`. Two searches produce that set. One filters the full
//! subgroup lattice of the semidirect product; the other grows partial graphs
//! directly and never builds the product's table, which is what makes the
//! order-96 census feasible.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::action::ActionTable;
use crate::error::{Error, Result};
use crate::group::{all_subgroups, center, quotient, FiniteGroup, GroupRef, Subgroup};
use crate::io::{parse, GroupFile};
use crate::maps::{automorphisms, greedy_generators};
use crate::perm::DEFAULT_ORDER_CAP;
use crate::rrb::RelRB;
use crate::semidirect::SemidirectProduct;

pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 10_000_000;

/// The centerless groups of order 96, by small-group id.
pub const ORDER96_IDS: [u32; 5] = [64, 70, 71, 72, 227];

/// Expected operator counts for [`ORDER96_IDS`] under the adjoint action.
pub const ORDER96_COUNTS: [usize; 5] = [352, 1512, 528, 552, 4504];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Filter every subgroup of the semidirect product.
    Subgroups,
    /// Grow partial graphs one `H`-element at a time.
    Backtrack,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub h_label: String,
    pub g_label: String,
    pub action_index: usize,
    pub operator_count: usize,
    /// Present when equivalence classes were computed (adjoint actions only).
    pub class_count: Option<usize>,
    pub operators: Vec<Vec<usize>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn label(g: &FiniteGroup) -> String {
    g.label().unwrap_or("?").to_owned()
}

/// Elements of `H` in breadth-first order from its greedy generating set.
fn bfs_order(h: &GroupRef) -> Vec<usize> {
    let gens = greedy_generators(h);
    let mut seen = vec![false; h.order()];
    seen[0] = true;
    let mut order = vec![0];
    let mut i = 0;
    while i < order.len() {
        for &s in &gens {
            let y = h.mul(order[i], s);
            if !seen[y] {
                seen[y] = true;
                order.push(y);
            }
        }
        i += 1;
    }
    order
}

const UNSET: u32 = u32::MAX;

/// A subgroup of `G ⋉ H` meeting every coset of `G` at most once, stored as
/// the partial map `h ↦ g`.
#[derive(Clone)]
struct PartialGraph {
    assigned: Vec<u32>,
    elements: Vec<(u32, u32)>,
    gens: Vec<(u32, u32)>,
}

struct Search<'a> {
    action: &'a ActionTable,
    order: Vec<usize>,
}

impl Search<'_> {
    #[inline]
    fn mul(&self, (g1, h1): (u32, u32), (g2, h2): (u32, u32)) -> (u32, u32) {
        let (g, h) = (self.action.acting(), self.action.acted());
        let g1 = g1 as usize;
        (
            g.mul(g1, g2 as usize) as u32,
            h.mul(h1 as usize, self.action.apply(g1, h2 as usize)) as u32,
        )
    }

    fn root(&self) -> PartialGraph {
        let mut assigned = vec![UNSET; self.action.acted().order()];
        assigned[0] = 0;
        PartialGraph {
            assigned,
            elements: vec![(0, 0)],
            gens: Vec::new(),
        }
    }

    /// `⟨P, x⟩`, or `None` once two elements share an `H`-coordinate.
    fn extend(&self, p: &PartialGraph, x: (u32, u32)) -> Option<PartialGraph> {
        let mut q = p.clone();
        q.gens.push(x);
        let old = q.elements.len();
        let push = |q: &mut PartialGraph, y: (u32, u32)| -> bool {
            let slot = &mut q.assigned[y.1 as usize];
            if *slot == UNSET {
                *slot = y.0;
                q.elements.push(y);
                true
            } else {
                *slot == y.0
            }
        };
        // old elements are closed under the old generators
        for i in 0..old {
            let y = self.mul(q.elements[i], x);
            if !push(&mut q, y) {
                return None;
            }
        }
        let mut i = old;
        while i < q.elements.len() {
            let e = q.elements[i];
            for s in 0..q.gens.len() {
                let y = self.mul(e, q.gens[s]);
                if !push(&mut q, y) {
                    return None;
                }
            }
            i += 1;
        }
        Some(q)
    }

    fn next_free(&self, p: &PartialGraph) -> Option<usize> {
        self.order.iter().copied().find(|&h| p.assigned[h] == UNSET)
    }

    fn descend(&self, p: PartialGraph, out: &mut Vec<Vec<usize>>) {
        let Some(h) = self.next_free(&p) else {
            out.push(p.assigned.iter().map(|&g| g as usize).collect());
            return;
        };
        for g in 0..self.action.acting().order() {
            if let Some(q) = self.extend(&p, (g as u32, h as u32)) {
                self.descend(q, out);
            }
        }
    }
}

/// Every operator for `action`, found by growing partial graphs, in
/// lexicographic order.
///
/// Each step takes the first `h` (in breadth-first order of `H`) not yet
/// covered and tries every partner `g`; the closure of the partial graph is
/// discarded as soon as it hits some `h` twice. A complete graph determines
/// every choice along its path, so each operator is produced exactly once.
pub fn operators_by_search(action: &ActionTable) -> Vec<Vec<usize>> {
    let search = Search {
        action,
        order: bfs_order(action.acted()),
    };
    let root = search.root();
    let mut out: Vec<Vec<usize>> = match search.next_free(&root) {
        None => vec![vec![0]],
        Some(h) => (0..action.acting().order())
            .into_par_iter()
            .flat_map_iter(|g| {
                let mut local = Vec::new();
                if let Some(q) = search.extend(&root, (g as u32, h as u32)) {
                    search.descend(q, &mut local);
                }
                local
            })
            .collect(),
    };
    out.sort_unstable();
    out
}

/// `S(H, G, φ)`: subgroups of `G ⋉_φ H` of order `|H|` on which the
/// projection `C` onto `H` is bijective. Both strategies return the same
/// list, sorted by element set.
pub fn s_set(
    action: &ActionTable,
    strategy: Strategy,
    subgroup_cap: usize,
) -> Result<(SemidirectProduct, Vec<Subgroup>)> {
    let n = action.acting().order() * action.acted().order();
    let sd = SemidirectProduct::new(action);
    let nh = action.acted().order();
    let mut members = match strategy {
        Strategy::Subgroups => {
            if n > subgroup_cap {
                return Err(Error::OrderLimitExceeded {
                    what: "subgroup enumeration of the semidirect product".into(),
                    cap: subgroup_cap,
                });
            }
            all_subgroups(&sd.group, subgroup_cap)?
                .into_iter()
                .filter(|m| m.order() == nh && projects_bijectively(&sd, m))
                .collect()
        }
        Strategy::Backtrack => operators_by_search(action)
            .into_iter()
            .map(|r| {
                Subgroup::new(&sd.group, (0..nh).map(|h| sd.pair(r[h], h)))
                    .expect("search yields subgroups")
            })
            .collect::<Vec<_>>(),
    };
    members.sort_by(|a, b| a.elements().cmp(b.elements()));
    Ok((sd, members))
}

fn projects_bijectively(sd: &SemidirectProduct, m: &Subgroup) -> bool {
    let mut hit = vec![false; sd.embed_h.source().order()];
    m.elements().iter().all(|&x| {
        let (_, h) = sd.unpair(sd.c_map(x));
        !std::mem::replace(&mut hit[h], true)
    }) && hit.iter().all(|&b| b)
}

/// `R_M(h) = g_h` where `(g_h, h)` is the unique element of `M` over `h`.
pub fn rbo_from_subgroup(
    sd: &SemidirectProduct,
    action: &Arc<ActionTable>,
    m: &Subgroup,
) -> Result<RelRB> {
    let nh = action.acted().order();
    if m.order() != nh || !projects_bijectively(sd, m) {
        return Err(Error::NotInS(format!(
            "subgroup of order {} does not project bijectively onto H",
            m.order()
        )));
    }
    let mut r = vec![0; nh];
    for &x in m.elements() {
        let (g, h) = sd.unpair(x);
        r[h] = g;
    }
    RelRB::new(action.clone(), r)
}

/// All operators for one action, in lexicographic order of their value
/// arrays.
pub fn enumerate_rbo(action: &Arc<ActionTable>, action_index: usize) -> EnumerationReport {
    let start = Instant::now();
    let operators = operators_by_search(action);
    EnumerationReport {
        h_label: label(action.acted()),
        g_label: label(action.acting()),
        action_index,
        operator_count: operators.len(),
        class_count: None,
        operators,
        elapsed: start.elapsed(),
    }
}

/// Tests every map `H → G` against the defining identity.
pub fn brute_force_rbo(action: &Arc<ActionTable>, cap: u128) -> Result<Vec<RelRB>> {
    let (nh, ng) = (action.acted().order(), action.acting().order());
    let size = (ng as u128).checked_pow(nh as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let (h, g) = (action.acted(), action.acting());
    let found: Vec<Vec<usize>> = (0..size as u64)
        .into_par_iter()
        .filter_map(|mut code| {
            // most significant digit first, so codes run in lexicographic order
            let mut r = vec![0; nh];
            for slot in r.iter_mut().rev() {
                *slot = (code % ng as u64) as usize;
                code /= ng as u64;
            }
            let ok = (0..nh).all(|a| {
                (0..nh).all(|b| {
                    g.mul(r[a], r[b]) == r[h.mul(a, action.apply(r[a], b))]
                })
            });
            ok.then_some(r)
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|r| RelRB::new_unchecked(action.clone(), r))
        .collect())
}

/// Classes of Rota-Baxter operators on `G` (adjoint action) under
/// `A ∼ B` iff some `ψ ∈ Aut(G)` has `ψ(A(h))⁻¹·B(ψ(h)) ∈ Z(G)` for all `h`.
///
/// Returns the classes as index lists into `operators`, each sorted, ordered
/// by their lexicographically least operator.
pub fn rb_equivalence_classes(g: &GroupRef, operators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = g.order();
    let z = center(g);
    let q = quotient(g, &z).expect("the center is normal");
    let key = |r: &[usize]| -> Vec<u32> { r.iter().map(|&x| q.coset_of(x) as u32).collect() };
    // the relation only sees operators modulo Z(G), pointwise
    let mut keys: Vec<Vec<u32>> = Vec::new();
    let mut key_of_op = Vec::with_capacity(operators.len());
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    for r in operators {
        let k = key(r);
        let id = *index.entry(k.clone()).or_insert_with(|| {
            keys.push(k);
            keys.len() - 1
        });
        key_of_op.push(id);
    }
    // Aut(G) permutes the keys: (ψ·A)(x) = ψ(A(ψ⁻¹(x))) modulo Z(G)
    let auts = automorphisms(g);
    let edges: Vec<(usize, usize)> = auts
        .par_iter()
        .flat_map_iter(|psi| {
            let inv = psi.inverse().expect("automorphism");
            // Z(G) is characteristic, so ψ permutes its cosets
            let coset_image: Vec<u32> = q
                .representatives
                .iter()
                .map(|&rep| q.coset_of(psi.apply(rep)) as u32)
                .collect();
            keys.iter()
                .enumerate()
                .filter_map(|(i, k)| {
                    let moved: Vec<u32> = (0..n)
                        .map(|x| coset_image[k[inv.apply(x)] as usize])
                        .collect();
                    index.get(&moved).map(|&j| (i, j))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &k) in key_of_op.iter().enumerate() {
        let root = find(&mut parent, k);
        classes.entry(root).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    for c in &mut out {
        c.sort_by(|&a, &b| operators[a].cmp(&operators[b]));
    }
    out.sort_by(|a, b| operators[a[0]].cmp(&operators[b[0]]));
    out
}

/// Rota-Baxter operators on `g` with their class count.
pub fn enumerate_rb_with_classes(g: &GroupRef) -> EnumerationReport {
    let action = Arc::new(ActionTable::adjoint(g));
    let mut report = enumerate_rbo(&action, 0);
    let start = Instant::now();
    report.class_count = Some(rb_equivalence_classes(g, &report.operators).len());
    report.elapsed += start.elapsed();
    report
}

fn order96_source(id: u32) -> Option<&'static str> {
    Some(match id {
        64 => include_str!("../data/order96/sg96_64.json"),
        70 => include_str!("../data/order96/sg96_70.json"),
        71 => include_str!("../data/order96/sg96_71.json"),
        72 => include_str!("../data/order96/sg96_72.json"),
        227 => include_str!("../data/order96/sg96_227.json"),
        _ => return None,
    })
}

/// The shipped generator file for a centerless group of order 96.
pub fn order96_file(id: u32) -> Result<GroupFile> {
    let text = order96_source(id).ok_or_else(|| {
        Error::MalformedInput(format!(
            "no shipped group of order 96 with id {id}; expected one of {ORDER96_IDS:?}"
        ))
    })?;
    parse(text)
}

pub fn order96_group(id: u32) -> Result<FiniteGroup> {
    order96_file(id)?.build(DEFAULT_ORDER_CAP)
}

/// Counts Rota-Baxter operators on a centerless group of order 96 with the
/// backtracking search. Long-running, so it must be requested explicitly.
pub fn census_order96(id: u32, extended: bool) -> Result<EnumerationReport> {
    if !extended {
        return Err(Error::ExtendedModeRequired(format!(
            "census of SmallGroup(96,{id})"
        )));
    }
    let g = Arc::new(order96_group(id)?);
    Ok(enumerate_rbo(&Arc::new(ActionTable::adjoint(&g)), 0))
}
