//! Permutation-group ingestion: closure of a generator list into a Cayley
//! table.
//!
//! Permutations are image arrays on `0..degree` and compose left to right:
//! `(p * q)(x) = q(p(x))`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const DEFAULT_ORDER_CAP: usize = 20_000;

pub fn is_permutation(p: &[usize], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&x| q[x as usize]).collect()
}

/// A closed permutation group: the abstract group plus the permutation
/// realising each element.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    pub group: FiniteGroup,
    pub degree: usize,
    pub elements: Vec<Vec<u32>>,
}

impl PermutationGroup {
    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.elements.iter().position(|e| e.as_slice() == p)
    }
}

/// Closes `generators` under composition.
///
/// Elements are numbered in breadth-first discovery order from the identity
/// under right multiplication by the generators, so the identity is 0.
pub fn close_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<PermutationGroup> {
    for (i, g) in generators.iter().enumerate() {
        if !is_permutation(g, degree) {
            return Err(Error::MalformedInput(format!(
                "generator {i} is not a permutation of 0..{degree}"
            )));
        }
    }
    let gens: Vec<Vec<u32>> = generators
        .iter()
        .map(|g| g.iter().map(|&x| x as u32).collect())
        .filter(|g: &Vec<u32>| g.iter().enumerate().any(|(i, &x)| i as u32 != x))
        .collect();
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut elements = vec![identity];
    // parent[j], generator used to reach j
    let mut tree: Vec<(usize, usize)> = vec![(0, 0)];
    let k = gens.len();
    let mut right: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = compose(&elements[i], g);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= cap {
                        return Err(Error::OrderLimitExceeded {
                            what: "permutation group closure".into(),
                            cap,
                        });
                    }
                    index.insert(y.clone(), j);
                    elements.push(y);
                    tree.push((i, s));
                    j
                }
            };
            right.push(j as u32);
        }
        i += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let row = &mut table[a * n..(a + 1) * n];
        row[0] = a as u32;
        for j in 1..n {
            let (p, s) = tree[j];
            row[j] = right[row[p] as usize * k + s];
        }
    }
    Ok(PermutationGroup {
        group: FiniteGroup::from_trusted(n, table),
        degree,
        elements,
    })
}

pub fn group_from_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup> {
    close_permutations(degree, generators, cap).map(|p| p.group)
}
