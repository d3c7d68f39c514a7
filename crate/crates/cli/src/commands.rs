//! Command definitions and their reports.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rbgroups::action::{enumerate_actions, ActionTable};
use rbgroups::brace::{
    annihilator, brace_commutator, braces_isoclinic, induced_brace, is_biskew, is_involutive,
    is_trivial_brace, verify_ybe_matrix_form, ybe_map, SkewBrace,
};
use rbgroups::catalog;
use rbgroups::enumerate::{
    brute_force_rbo, census_order96, enumerate_rbo, rb_equivalence_classes, rbo_from_subgroup,
    s_set, Strategy, ORDER96_COUNTS, ORDER96_IDS,
};
use rbgroups::group::{center, derived_subgroup, FiniteGroup, GroupRef};
use rbgroups::io::{
    parse, BraceFile, GroupFile, GroupSpec, RrbFile, WitnessFile, YbeFile, FORMAT,
};
use rbgroups::isoclinism::{
    bridge_certificate, find_converse_counterexamples, rrb_isoclinic_capped, witness_defect,
};
use rbgroups::maps::automorphisms_capped;
use rbgroups::rrb::{center_subgroup, commutator_subgroup, RelRB};
use rbgroups::{Error, Result};
use serde_json::{json, Value};

use crate::config::{GlobalArgs, Settings};
use crate::manifest::sha256_hex;

#[derive(Parser, Debug)]
#[command(name = "rbg", version, about = "Relative Rota-Baxter operators, skew braces and isoclinism")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a group.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Enumerate relative Rota-Baxter operators.
    #[command(subcommand)]
    Rbo(RboCmd),
    /// Skew braces and their Yang-Baxter solutions.
    #[command(subcommand)]
    Brace(BraceCmd),
    /// Relative Rota-Baxter groups and isoclinism.
    #[command(subcommand)]
    Rrb(RrbCmd),
    /// Rota-Baxter operators on a shipped centerless group of order 96.
    Census96(CensusArgs),
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Basic invariants; `--emit` prints the canonical group document.
    Show {
        group: String,
        #[arg(long)]
        emit: bool,
    },
    /// The automorphism group.
    Auts {
        group: String,
        /// Include every automorphism as an image array.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum RboCmd {
    /// Operators for the chosen actions of G on H
    Enumerate(EnumerateArgs),
    /// Same as the top-level `census96`
    Census96(CensusArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    Backtrack,
    Subgroups,
}

#[derive(clap::Args, Debug)]
pub struct EnumerateArgs {
    /// The group acted on: a `.json` path or a catalog name.
    #[arg(long)]
    pub h: String,
    /// The acting group; defaults to `--h`.
    #[arg(long)]
    pub g: Option<String>,
    /// Index into the canonical list of actions of G on H.
    #[arg(long, conflicts_with_all = ["all_actions", "adjoint"])]
    pub phi: Option<usize>,
    /// One report per action, under `reports`.
    #[arg(long, conflicts_with = "adjoint")]
    pub all_actions: bool,
    /// Conjugation of H on itself (Rota-Baxter operators).
    #[arg(long)]
    pub adjoint: bool,
    /// Cross-check against exhaustive search over all maps H → G.
    #[arg(long)]
    pub oracle: bool,
    /// Count equivalence classes; needs `--adjoint`.
    #[arg(long, requires = "adjoint")]
    pub classes: bool,
    #[arg(long)]
    pub emit_operators: bool,
    #[arg(long, value_enum, default_value = "backtrack")]
    pub strategy: StrategyArg,
}

#[derive(clap::Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub id: u32,
    /// Allow the long-running census.
    #[arg(long)]
    pub extended: bool,
    #[arg(long)]
    pub emit_operators: bool,
}

#[derive(Subcommand, Debug)]
pub enum BraceCmd {
    /// Check the brace law and report basic invariants.
    Verify { file: PathBuf },
    /// Build and verify the Yang-Baxter solution; `--emit` prints its table.
    Ybe {
        file: PathBuf,
        #[arg(long)]
        emit: bool,
    },
    /// Search for a brace isoclinism.
    Isoclinic {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The brace induced by a relative Rota-Baxter group.
    Induce { rrb: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum RrbCmd {
    /// Check the operator identity and report basic invariants.
    Verify { file: PathBuf },
    /// Search for an isoclinism witness and check what it induces.
    Isoclinic {
        #[arg(long, required_unless_present = "find_converse_counterexample")]
        a: Option<PathBuf>,
        #[arg(long, required_unless_present = "find_converse_counterexample")]
        b: Option<PathBuf>,
        /// Print the witness document instead of the report.
        #[arg(long)]
        emit_witness: bool,
        /// Scan trivial braces on catalog groups for isoclinic braces whose
        /// induced structures are not isoclinic.
        #[arg(long, conflicts_with_all = ["a", "b", "emit_witness"])]
        find_converse_counterexample: bool,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
    /// Check a given witness and the consequences it implies.
    Bridge {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
}

/// Files read during a run, with their digests.
#[derive(Default)]
pub struct Inputs {
    files: RefCell<BTreeMap<String, String>>,
}

impl Inputs {
    pub fn read(&self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedInput(format!("cannot read {}: {e}", path.display())))?;
        self.files
            .borrow_mut()
            .insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        Ok(text)
    }

    pub fn digests(&self) -> Vec<(String, String)> {
        self.files.borrow().clone().into_iter().collect()
    }
}

struct Ctx<'a> {
    settings: &'a Settings,
    inputs: &'a Inputs,
}

impl Ctx<'_> {
    fn group(&self, spec: &str) -> Result<GroupRef> {
        let base = PathBuf::from(".");
        self.resolve(&GroupSpec::Reference(spec.to_owned()), &base)
    }

    fn resolve(&self, spec: &GroupSpec, base: &Path) -> Result<GroupRef> {
        let load = |p: &str| self.inputs.read(&base.join(p));
        spec.resolve(self.settings.caps.order_cap, &load).map(Arc::new)
    }

    fn rrb(&self, path: &Path) -> Result<RelRB> {
        let file: RrbFile = parse(&self.inputs.read(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let load = |p: &str| self.inputs.read(&base.join(p));
        file.build(self.settings.caps.order_cap, &load)
    }

    fn brace(&self, path: &Path) -> Result<SkewBrace> {
        parse::<BraceFile>(&self.inputs.read(path)?)?.build(self.settings.caps.order_cap)
    }
}

pub fn run(command: &Command, settings: &Settings, inputs: &Inputs) -> Result<Value> {
    let ctx = Ctx { settings, inputs };
    match command {
        Command::Group(GroupCmd::Show { group, emit }) => group_show(&ctx, group, *emit),
        Command::Group(GroupCmd::Auts { group, emit }) => group_auts(&ctx, group, *emit),
        Command::Rbo(RboCmd::Enumerate(args)) => rbo_enumerate(&ctx, args),
        Command::Rbo(RboCmd::Census96(args)) | Command::Census96(args) => census96(&ctx, args),
        Command::Brace(cmd) => brace(&ctx, cmd),
        Command::Rrb(cmd) => rrb(&ctx, cmd),
    }
}

fn label(g: &FiniteGroup) -> &str {
    g.label().unwrap_or("unnamed")
}

fn group_show(ctx: &Ctx, spec: &str, emit: bool) -> Result<Value> {
    if emit && spec.ends_with(".json") {
        // echo the document itself so that canonical input round-trips byte for byte
        let file: GroupFile = parse(&ctx.inputs.read(Path::new(spec))?)?;
        file.build(ctx.settings.caps.order_cap)?;
        return Ok(serde_json::to_value(file).expect("serializable"));
    }
    let g = ctx.group(spec)?;
    if emit {
        return Ok(serde_json::to_value(GroupFile::from_group(&g)).expect("serializable"));
    }
    let mut orders = BTreeMap::new();
    for o in g.element_orders() {
        *orders.entry(o.to_string()).or_insert(0usize) += 1;
    }
    Ok(json!({
        "format": FORMAT,
        "label": label(&g),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "center_order": center(&g).order(),
        "derived_order": derived_subgroup(&g).order(),
        "element_orders": orders,
    }))
}

fn group_auts(ctx: &Ctx, spec: &str, emit: bool) -> Result<Value> {
    let g = ctx.group(spec)?;
    let auts = automorphisms_capped(&g, ctx.settings.caps.order_cap)?;
    let mut report = json!({
        "format": FORMAT,
        "label": label(&g),
        "automorphism_count": auts.len(),
    });
    if emit {
        let mut images: Vec<&[usize]> = auts.iter().map(|a| a.images()).collect();
        images.sort_unstable();
        report["automorphisms"] = json!(images);
    }
    Ok(report)
}

fn rbo_enumerate(ctx: &Ctx, args: &EnumerateArgs) -> Result<Value> {
    let h = ctx.group(&args.h)?;
    let g = match &args.g {
        Some(spec) => ctx.group(spec)?,
        None => h.clone(),
    };
    let actions: Vec<(usize, ActionTable)> = if args.adjoint {
        if !g.same_table(&h) {
            return Err(Error::InvalidAction(
                "the adjoint action needs G and H to be the same group".into(),
            ));
        }
        vec![(0, ActionTable::adjoint(&h))]
    } else {
        let all = enumerate_actions(&g, &h, ctx.settings.caps.order_cap)?;
        let count = all.len();
        if args.all_actions {
            all.into_iter().enumerate().collect()
        } else {
            let i = args.phi.unwrap_or(0);
            let a = all.into_iter().nth(i).ok_or_else(|| {
                Error::MalformedInput(format!("action index {i} out of range ({count} actions)"))
            })?;
            vec![(i, a)]
        }
    };
    let mut reports = Vec::new();
    for (index, action) in actions {
        let action = Arc::new(action);
        let operators = match args.strategy {
            StrategyArg::Backtrack => enumerate_rbo(&action, index).operators,
            StrategyArg::Subgroups => {
                let (sd, members) = s_set(&action, Strategy::Subgroups, ctx.settings.caps.subgroup_cap)?;
                let mut ops = members
                    .iter()
                    .map(|m| rbo_from_subgroup(&sd, &action, m).map(|r| r.operator().to_vec()))
                    .collect::<Result<Vec<_>>>()?;
                ops.sort();
                ops
            }
        };
        let mut report = json!({
            "format": FORMAT,
            "h": label(&h),
            "g": label(&g),
            "action_index": index,
            "action_trivial": action.is_trivial(),
            "operator_count": operators.len(),
            "bijective_count": operators.iter().filter(|r| {
                r.len() == g.order() && r.iter().collect::<BTreeSet<_>>().len() == r.len()
            }).count(),
        });
        if args.oracle {
            let brute: BTreeSet<Vec<usize>> = brute_force_rbo(&action, ctx.settings.caps.brute_force_cap)?
                .into_iter()
                .map(|r| r.operator().to_vec())
                .collect();
            let found: BTreeSet<Vec<usize>> = operators.iter().cloned().collect();
            report["oracle_agrees"] = json!(brute == found);
            report["oracle_count"] = json!(brute.len());
        }
        if args.classes {
            report["class_count"] = json!(rb_equivalence_classes(&h, &operators).len());
        }
        if args.emit_operators {
            report["operators"] = json!(operators);
        }
        reports.push(report);
    }
    Ok(if args.all_actions {
        json!({ "format": FORMAT, "reports": reports })
    } else {
        reports.pop().expect("one action")
    })
}

fn census96(ctx: &Ctx, args: &CensusArgs) -> Result<Value> {
    let report = census_order96(args.id, args.extended || ctx.settings.extended)?;
    let expected = ORDER96_IDS
        .iter()
        .position(|&i| i == args.id)
        .map(|p| ORDER96_COUNTS[p]);
    let mut out = json!({
        "format": FORMAT,
        "id": args.id,
        "label": report.g_label,
        "operator_count": report.operator_count,
        "expected_count": expected,
        "matches_expected": expected == Some(report.operator_count),
    });
    if args.emit_operators {
        out["operators"] = json!(report.operators);
    }
    Ok(out)
}

fn brace(ctx: &Ctx, cmd: &BraceCmd) -> Result<Value> {
    match cmd {
        BraceCmd::Verify { file } => {
            let b = ctx.brace(file)?;
            Ok(json!({
                "format": FORMAT,
                "order": b.order(),
                "valid": true,
                "trivial": is_trivial_brace(&b),
                "biskew": is_biskew(&b),
                "annihilator_order": annihilator(&b).order(),
                "commutator_order": brace_commutator(&b).order(),
            }))
        }
        BraceCmd::Ybe { file, emit } => {
            let b = ctx.brace(file)?;
            let m = ybe_map(&b)?;
            if *emit {
                return Ok(serde_json::to_value(YbeFile::from_map(&m)).expect("serializable"));
            }
            Ok(json!({
                "format": FORMAT,
                "order": b.order(),
                "braid_relation": true,
                "nondegenerate": true,
                "matrix_form": verify_ybe_matrix_form(&m.flipped()),
                "involutive": is_involutive(&m),
            }))
        }
        BraceCmd::Isoclinic { a, b } => {
            let (x, y) = (ctx.brace(a)?, ctx.brace(b)?);
            let w = braces_isoclinic(&x, &y, ctx.settings.caps.isoclinism_cap)?;
            Ok(json!({
                "format": FORMAT,
                "isoclinic": w.is_some(),
                "witness": w,
            }))
        }
        BraceCmd::Induce { rrb } => {
            let r = ctx.rrb(rrb)?;
            Ok(serde_json::to_value(BraceFile::from_brace(&induced_brace(&r))).expect("serializable"))
        }
    }
}

fn rrb(ctx: &Ctx, cmd: &RrbCmd) -> Result<Value> {
    let cap = ctx.settings.caps.isoclinism_cap;
    match cmd {
        RrbCmd::Verify { file } => {
            let r = ctx.rrb(file)?;
            Ok(json!({
                "format": FORMAT,
                "h_order": r.h().order(),
                "g_order": r.g().order(),
                "valid": true,
                "bijective": r.is_bijective(),
                "image_order": r.image().order(),
                "induced_brace_trivial": is_trivial_brace(&induced_brace(&r)),
                "center_order": center_subgroup(&r).order(),
                "commutator_order": commutator_subgroup(&r).order(),
            }))
        }
        RrbCmd::Isoclinic {
            find_converse_counterexample: true,
            max_order,
            ..
        } => {
            let groups: Vec<GroupRef> = catalog::groups_up_to_order((*max_order).min(8))
                .into_iter()
                .map(Arc::new)
                .collect();
            let found = find_converse_counterexamples(&groups)?;
            Ok(json!({
                "format": FORMAT,
                "max_order": (*max_order).min(8),
                "counterexamples": found,
            }))
        }
        RrbCmd::Isoclinic {
            a, b, emit_witness, ..
        } => {
            let (a, b) = (a.as_deref().expect("required"), b.as_deref().expect("required"));
            let (x, y) = (ctx.rrb(a)?, ctx.rrb(b)?);
            let Some(w) = rrb_isoclinic_capped(&x, &y, cap)? else {
                return Ok(json!({ "format": FORMAT, "isoclinic": false }));
            };
            if *emit_witness {
                return Ok(serde_json::to_value(WitnessFile::new(w)).expect("serializable"));
            }
            let cert = bridge_certificate(&x, &y, &w)?;
            Ok(json!({
                "format": FORMAT,
                "isoclinic": true,
                "witness": w,
                "bridge_passes": cert.passes(),
                "bridge": cert,
            }))
        }
        RrbCmd::Bridge { a, b, witness } => {
            let (x, y) = (ctx.rrb(a)?, ctx.rrb(b)?);
            let w = parse::<WitnessFile>(&ctx.inputs.read(witness)?)?.witness;
            if let Some(defect) = witness_defect(&x, &y, &w)? {
                return Ok(json!({
                    "format": FORMAT,
                    "bridge_passes": false,
                    "defect": defect.to_string(),
                }));
            }
            let cert = bridge_certificate(&x, &y, &w)?;
            Ok(json!({
                "format": FORMAT,
                "bridge_passes": cert.passes(),
                "bridge": cert,
            }))
        }
    }
}
