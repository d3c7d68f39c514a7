//! Versioned JSON formats. Every document carries `"format": 1`; canonical
//! output has sorted keys and no insignificant whitespace.

use serde::{Deserialize, Serialize};

use std::sync::Arc;

use crate::action::ActionTable;
use crate::brace::{SkewBrace, YBEMap};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::isoclinism::IsoclinismWitness;
use crate::rrb::RelRB;
use crate::perm::group_from_permutations;

pub const FORMAT: u32 = 1;

/// Sorted-key compact JSON followed by a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value keeps object keys in a BTreeMap
    let v = serde_json::to_value(value).expect("serializable value");
    let mut s = serde_json::to_string(&v).expect("serializable value");
    s.push('\n');
    s
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    match v.get("format").and_then(|f| f.as_u64()) {
        Some(1) => {}
        Some(other) => {
            return Err(Error::MalformedInput(format!("unsupported format {other}")));
        }
        None => return Err(Error::MalformedInput("missing \"format\" field".into())),
    }
    serde_json::from_value(v).map_err(|e| Error::MalformedInput(e.to_string()))
}

/// A group given either by its Cayley table or by permutation generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            format: FORMAT,
            label: g.label().map(str::to_owned),
            table: Some(g.rows()),
            degree: None,
            generators: None,
        }
    }

    pub fn build(&self, order_cap: usize) -> Result<FiniteGroup> {
        let g = match (&self.table, self.degree, &self.generators) {
            (Some(t), None, None) => {
                if t.len() > order_cap {
                    return Err(Error::OrderLimitExceeded {
                        what: "group table".into(),
                        cap: order_cap,
                    });
                }
                FiniteGroup::from_table(t)?
            }
            (None, Some(d), Some(gens)) => group_from_permutations(d, gens, order_cap)?,
            (None, Some(d), None) => group_from_permutations(d, &[], order_cap)?,
            _ => {
                return Err(Error::MalformedInput(
                    "a group needs either \"table\" or \"degree\" with \"generators\"".into(),
                ))
            }
        };
        Ok(match &self.label {
            Some(l) => g.with_label(l.clone()),
            None => g,
        })
    }
}

/// A group inline, or a string naming one: strings ending in `.json` are
/// paths resolved by the caller, anything else is a catalog name such as
/// `"S3"` or `"Z2xZ2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Inline(GroupFile),
    Reference(String),
}

impl GroupSpec {
    /// Resolves the group, reading path references through `load`.
    pub fn resolve(
        &self,
        order_cap: usize,
        load: &dyn Fn(&str) -> Result<String>,
    ) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Inline(f) => f.build(order_cap),
            GroupSpec::Reference(r) if r.ends_with(".json") => {
                parse::<GroupFile>(&load(r)?)?.build(order_cap)
            }
            GroupSpec::Reference(r) => crate::catalog::by_name(r)
                .ok_or_else(|| Error::MalformedInput(format!("unknown group name {r:?}"))),
        }
    }
}

/// `(H, G, φ, R)` with `phi[g]` the permutation of `H` by which `g` acts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RrbFile {
    pub format: u32,
    pub h: GroupSpec,
    pub g: GroupSpec,
    pub phi: Vec<Vec<usize>>,
    pub r: Vec<usize>,
}

impl RrbFile {
    pub fn from_rrb(rrb: &RelRB) -> Self {
        RrbFile {
            format: FORMAT,
            h: GroupSpec::Inline(GroupFile::from_group(rrb.h())),
            g: GroupSpec::Inline(GroupFile::from_group(rrb.g())),
            phi: rrb.action().perms(),
            r: rrb.operator().to_vec(),
        }
    }

    pub fn build(&self, order_cap: usize, load: &dyn Fn(&str) -> Result<String>) -> Result<RelRB> {
        let h = Arc::new(self.h.resolve(order_cap, load)?);
        let g = Arc::new(self.g.resolve(order_cap, load)?);
        let action = ActionTable::new(g, h, self.phi.clone())?;
        RelRB::new(Arc::new(action), self.r.clone())
    }
}

/// A skew brace as two Cayley tables on the same labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraceFile {
    pub format: u32,
    pub dot: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
}

impl BraceFile {
    pub fn from_brace(b: &SkewBrace) -> Self {
        BraceFile {
            format: FORMAT,
            dot: b.dot().rows(),
            circ: b.circ().rows(),
        }
    }

    pub fn build(&self, order_cap: usize) -> Result<SkewBrace> {
        if self.dot.len() > order_cap {
            return Err(Error::OrderLimitExceeded {
                what: "brace".into(),
                cap: order_cap,
            });
        }
        let dot = FiniteGroup::from_table(&self.dot)?;
        let circ = FiniteGroup::from_table(&self.circ)?;
        // both tables must keep the identity at label 0
        if !dot.rows().iter().zip(&self.dot).all(|(a, b)| a == b)
            || !circ.rows().iter().zip(&self.circ).all(|(a, b)| a == b)
        {
            return Err(Error::MalformedInput(
                "label 0 must be the identity of both operations".into(),
            ));
        }
        SkewBrace::new(Arc::new(dot), Arc::new(circ))
    }
}

/// A map `r(a, b) = (f_a(b), g_b(a))` as rows `[a, b, f_a(b), g_b(a)]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YbeFile {
    pub format: u32,
    pub order: usize,
    pub rows: Vec<[usize; 4]>,
}

impl YbeFile {
    pub fn from_map(m: &YBEMap) -> Self {
        YbeFile {
            format: FORMAT,
            order: m.order(),
            rows: m.rows(),
        }
    }

    pub fn build(&self) -> Result<YBEMap> {
        let n = self.order;
        if self.rows.len() != n * n {
            return Err(Error::MalformedInput(format!(
                "{} rows for a set of size {n}",
                self.rows.len()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row[0] != i / n || row[1] != i % n || row[2] >= n || row[3] >= n {
                return Err(Error::MalformedInput(format!("row {i} is out of order or range")));
            }
        }
        Ok(YBEMap::from_fn(n, |a, b| {
            let row = self.rows[a * n + b];
            (row[2], row[3])
        }))
    }
}

/// An isoclinism witness as four image arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub format: u32,
    #[serde(flatten)]
    pub witness: IsoclinismWitness,
}

impl WitnessFile {
    pub fn new(witness: IsoclinismWitness) -> Self {
        WitnessFile {
            format: FORMAT,
            witness,
        }
    }
}
