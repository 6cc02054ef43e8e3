//! One handler per subcommand, each returning a finished report.

use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::{json, Value};
use subindex_core::setcalc::{self, ceil_log2};
use subindex_core::subfactor::{self, ClassifyOptions, Reduction, RsfaMode, SubfactorReport};
use subindex_core::zlab::analysis::{default_guard, dl_infinity_z, gap_analysis, growth_criterion};
use subindex_core::zlab::certificates::{fibonacci_gap_certificate, maillet_window, pow2_gap_certificate};
use subindex_core::zlab::infer::{infer_epset, squares_complement, Inferred, Transform};
use subindex_core::zlab::rsfa_z::{
    interval_subf0, minimal_radius, pervasive_dif, rsfa_z, scaling_identity_check, verify_subfactor_z,
    ZSubfactorReport,
};
use subindex_core::zlab::screen::criteria_screen;
use subindex_core::zlab::seq::{parse_bfile, DEFAULT_WINDOW};
use subindex_core::zlab::{EPSet, SequenceKind, SequenceSpec};
use subindex_core::{Error, FiniteGroup, GroupSubset, ProofStatus, Side};

use crate::report::{to_value, Report};
use crate::*;

pub const DEFAULT_MAX_ORDER: usize = 4096;
/// Exact covering is exponential; above this order it needs `--force`.
pub const COVER_ORDER_LIMIT: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Cap(_) => 1,
            CliError::Core(e) if e.is_cap() => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn max_order() -> Result<usize> {
    match std::env::var("SUBINDEX_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| input(format!("SUBINDEX_MAX_ORDER=`{v}` is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn parse_group(spec: &str) -> Result<FiniteGroup> {
    Ok(FiniteGroup::parse_spec(spec, max_order()?)?)
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| input(format!("--{flag}: `{t}` is not a valid element"))))
        .collect()
}

fn parse_subset(g: &FiniteGroup, flag: &str, s: &str) -> Result<GroupSubset> {
    Ok(g.subset(&parse_list::<usize>(flag, s)?)?)
}

fn require<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| input(format!("--{flag} is required here")))
}

fn check_cap(g: &FiniteGroup, cap: u64) -> Result<()> {
    if g.order() as u64 > cap {
        return Err(CliError::Cap(format!("group order {} exceeds --cap {cap}", g.order())));
    }
    Ok(())
}

fn side_name(s: Side) -> &'static str {
    s.as_str()
}

fn parse_epset(flag: &str, s: &str) -> Result<EPSet> {
    s.parse().map_err(|e: Error| input(format!("--{flag}: {e}")))
}

pub fn group(a: &GroupArgs) -> Result<Report> {
    let g = parse_group(&a.spec)?;
    let subset = a.subset.as_deref().map(|s| parse_subset(&g, "subset", s)).transpose()?;
    let need = || subset.clone().ok_or_else(|| input("--subset is required for this analysis"));
    let base = |anchor| {
        Report::new("group", anchor)
            .input("spec", &a.spec)
            .input("subset", &subset)
            .input("analysis", format!("{:?}", a.analysis).to_lowercase())
    };
    match a.analysis {
        GroupAnalysis::Info => {
            let subgroups = (g.order() <= COVER_ORDER_LIMIT).then(|| g.subgroups().len());
            let mut r = base("finite group basics").result(json!({
                "name": g.name(),
                "order": g.order(),
                "abelian": g.is_abelian(),
                "subgroup_count": subgroups,
            }));
            r.line(format!("{}: order {}, abelian {}", g.name(), g.order(), g.is_abelian()));
            Ok(r)
        }
        GroupAnalysis::Dlinf => {
            let s = need()?;
            let mut rows = Vec::new();
            let mut res = serde_json::Map::new();
            for side in a.side.sides() {
                let p = setcalc::dif_profile(&g, &s, side)?;
                let relation = p.dl_infinity == 0 || ceil_log2(p.diameter) + 1 == p.dl_infinity;
                let v = json!({
                    "dl_infinity": p.dl_infinity,
                    "diameter": p.diameter,
                    "chain_sizes": p.chain.iter().map(GroupSubset::len).collect::<Vec<_>>(),
                    "closure": p.closure,
                    "log_diameter_relation": relation,
                });
                rows.push((side, p.dl_infinity, p.diameter, relation));
                res.insert(side_name(side).into(), v);
            }
            // A single side reports its fields at top level.
            let result = if res.len() == 1 {
                res.into_iter().next().unwrap().1
            } else {
                Value::Object(res)
            };
            let mut r = base("difference length and Cayley diameter").result(result);
            for (side, dl, d, rel) in rows {
                r.row(&[
                    ("side", json!(side_name(side))),
                    ("dl_infinity", json!(dl)),
                    ("diameter", json!(d)),
                    ("log_diameter_relation", json!(rel)),
                ]);
                r.line(format!("{} dl^inf = {dl}, diameter = {d}, dl = ceil(log2 diam) + 1: {rel}", side_name(side)));
            }
            Ok(r)
        }
        GroupAnalysis::Dif | GroupAnalysis::Complement => {
            let s = need()?;
            let mut res = serde_json::Map::new();
            let mut r = base(if a.analysis == GroupAnalysis::Dif {
                "difference sets"
            } else {
                "complement of the difference set"
            });
            for side in a.side.sides() {
                let set = match a.analysis {
                    GroupAnalysis::Dif => setcalc::dif(&g, &s, side),
                    _ => setcalc::complement_c(&g, &s, side, a.adjoin_identity),
                };
                r.row(&[("side", json!(side_name(side))), ("set", to_value(&set)), ("size", json!(set.len()))]);
                r.line(format!("{}: {set} ({} elements)", side_name(side), set.len()));
                res.insert(side_name(side).into(), to_value(&set));
            }
            Ok(r.result(Value::Object(res)))
        }
        GroupAnalysis::Generating => {
            let s = need()?;
            let mut res = serde_json::Map::new();
            let mut r = base("generating length");
            for side in a.side.sides() {
                let n = setcalc::generating_length(&g, &s, side)?;
                r.row(&[("side", json!(side_name(side))), ("generating_length", json!(n))]);
                r.line(format!("{}: generating length {n}", side_name(side)));
                res.insert(side_name(side).into(), json!(n));
            }
            Ok(r.result(Value::Object(res)))
        }
        GroupAnalysis::Cover => {
            let s = need()?;
            if g.order() > COVER_ORDER_LIMIT && !a.force {
                return Err(CliError::Cap(format!(
                    "exact covering above order {COVER_ORDER_LIMIT} needs --force (order {})",
                    g.order()
                )));
            }
            let c = setcalc::covering_number(&g, &s)?;
            let mut r = base("covering bound for the lower subindex").result(json!({
                "covering_number": c.size,
                "translators": c.witness,
            }));
            for x in c.witness.iter() {
                r.row(&[("translator", json!(x))]);
            }
            r.line(format!("cov = {} with X = {}", c.size, c.witness));
            Ok(r)
        }
        GroupAnalysis::Pack => {
            let s = need()?;
            let mut res = serde_json::Map::new();
            let mut r = base("packing number equals the upper subindex");
            for side in a.side.sides() {
                let p = setcalc::packing_number(&g, &s, side)?;
                r.row(&[
                    ("side", json!(side_name(side))),
                    ("packing_number", json!(p.size)),
                    ("translators", to_value(&p.witness)),
                ]);
                r.line(format!("{}: pack = {} with translators {}", side_name(side), p.size, p.witness));
                res.insert(side_name(side).into(), json!({"packing_number": p.size, "translators": p.witness}));
            }
            Ok(r.result(Value::Object(res)))
        }
    }
}

fn subfactor_rows(r: &mut Report, rep: &SubfactorReport) {
    for (kind, list) in [("min", &rep.witnesses_min), ("max", &rep.witnesses_max)] {
        for w in list {
            r.row(&[
                ("side", json!(side_name(rep.side))),
                ("kind", json!(kind)),
                ("size", json!(w.len())),
                ("subfactor", to_value(w)),
            ]);
        }
    }
}

pub fn subset(a: &SubsetArgs) -> Result<Report> {
    let g = parse_group(&a.spec)?;
    check_cap(&g, a.cap)?;
    let s = parse_subset(&g, "subset", &a.subset)?;
    let base = |anchor| {
        Report::new("subset", anchor)
            .input("spec", &a.spec)
            .input("subset", &s)
            .input("side", format!("{:?}", a.side).to_lowercase())
            .input("op", format!("{:?}", a.op).to_lowercase())
    };
    match a.op {
        SubsetOp::Indices | SubsetOp::Rsfa => {
            let mode = match a.mode {
                ModeArg::All => RsfaMode::All,
                ModeArg::FirstMin => RsfaMode::FirstMin,
                ModeArg::FirstMax => RsfaMode::FirstMax,
            };
            let mut r = base(if a.op == SubsetOp::Indices {
                "subindex inequalities"
            } else {
                "RSFA subfactor enumeration"
            });
            let mut res = serde_json::Map::new();
            let mut reports = Vec::new();
            for side in a.side.sides() {
                let rep = match a.op {
                    SubsetOp::Indices => subfactor::analyze(&g, &s, side)?,
                    _ => subfactor::rsfa(&g, &s, side, mode)?,
                };
                subfactor_rows(&mut r, &rep);
                r.line(format!(
                    "{}: lower {} upper {} stable {}",
                    side_name(side),
                    rep.lower,
                    rep.upper,
                    rep.stable
                ));
                res.insert(
                    side_name(side).into(),
                    json!({
                        "lower": rep.lower,
                        "upper": rep.upper,
                        "stable": rep.stable,
                        "witnesses_min": rep.witnesses_min,
                        "witnesses_max": rep.witnesses_max,
                        "rsfa_numbers": rep.rsfa_numbers,
                    }),
                );
                reports.push(rep);
            }
            if reports.len() == 2 {
                let v: Vec<usize> = reports.iter().flat_map(|x| [x.lower, x.upper]).collect();
                let two_sided = v.iter().all(|&x| x == v[0]);
                res.insert("index_stable".into(), json!(two_sided));
                r.line(format!("index stable: {two_sided}"));
            }
            Ok(r.result(Value::Object(res)))
        }
        SubsetOp::Subf1 => {
            let mut r = base("maximal subfactors as cliques");
            let mut res = serde_json::Map::new();
            for side in a.side.sides() {
                let fam = subfactor::enumerate_subf1(&g, &s, side)?;
                for b in &fam {
                    r.row(&[("side", json!(side_name(side))), ("size", json!(b.len())), ("subfactor", to_value(b))]);
                }
                r.line(format!("{}: {} maximal subfactors containing the identity", side_name(side), fam.len()));
                res.insert(side_name(side).into(), to_value(&fam));
            }
            Ok(r.result(Value::Object(res)))
        }
        SubsetOp::Singleton => {
            let single = subfactor::singleton_subf1_check(&g, &s)?;
            let c1 = setcalc::complement_c(&g, &s, Side::Left, true);
            let mut r = base("singleton subfactor family").result(json!({
                "singleton": single,
                "c1": c1,
            }));
            r.row(&[("singleton", json!(single)), ("c1", to_value(&c1))]);
            r.line(format!("C¹(A) = {c1} is a subgroup (unique subfactor): {single}"));
            Ok(r)
        }
    }
}

pub fn classify(a: &ClassifyArgs) -> Result<Report> {
    let g = parse_group(&a.spec)?;
    check_cap(&g, a.cap)?;
    let opts = ClassifyOptions {
        reduction: match a.reduction {
            ReductionArg::None => Reduction::None,
            ReductionArg::Translation => Reduction::Translation,
            ReductionArg::TranslationInversion => Reduction::TranslationInversion,
        },
        exhaustive_limit: a.exhaustive_limit,
        require_exhaustive: a.require_exhaustive,
        seed: a.seed,
        samples: a.samples as usize,
    };
    // Progress goes to stderr in tenths, never to the report stream.
    let last = AtomicU64::new(0);
    let quiet = a.quiet;
    let progress = move |done: u64, total: u64| {
        if quiet || total == 0 {
            return;
        }
        let tenth = done * 10 / total;
        if last.fetch_max(tenth, Ordering::Relaxed) < tenth {
            eprintln!("progress: {done}/{total}");
        }
    };
    let v = subfactor::classify_group_with_progress(&g, &opts, &progress)?;
    let mut r = Report::new("classify", "index stability of finite groups")
        .input("spec", &a.spec)
        .input("reduction", v.reduction)
        .input("seed", a.seed)
        .input("samples", a.samples)
        .result(json!({
            "verdict": v.label(),
            "group": v.group,
            "order": v.order,
            "mode": v.mode,
            "right_stable": v.right_stable,
            "left_stable": v.left_stable,
            "two_sided_stable": v.two_sided_stable,
            "counterexample": v.counterexample,
            "index_spectrum": v.index_spectrum,
            "subindex_spectrum": v.subindex_spectrum,
            "subsets_examined": v.subsets_examined,
            "research_flags": v.research_flags,
        }));
    for x in &v.subindex_spectrum {
        r.row(&[("spectrum", json!("subindex")), ("value", json!(x))]);
    }
    for x in &v.index_spectrum {
        r.row(&[("spectrum", json!("stable_index")), ("value", json!(x))]);
    }
    r.line(format!("{} (order {}): {}, {:?}", v.group, v.order, v.label(), v.mode));
    if let Some(c) = &v.counterexample {
        r.line(format!("witness {} with subindices {:?}", c.subset, c.indices));
    }
    r.line(format!("subindex values {:?}, stable indices {:?}", v.subindex_spectrum, v.index_spectrum));
    Ok(r)
}

fn sequence_spec(src: &SourceArgs) -> Result<Option<SequenceSpec>> {
    let kind = match (&src.sequence, &src.bfile) {
        (Some(_), Some(_)) => return Err(input("give either --sequence or --bfile, not both")),
        (Some(name), None) => SequenceSpec::parse_kind(name, src.from, src.k).map_err(|e| input(e.to_string()))?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| input(format!("--bfile {}: {e}", path.display())))?;
            let name = path.file_stem().map_or("bfile".into(), |s| s.to_string_lossy().into_owned());
            parse_bfile(&name, &text)?
        }
        (None, None) => return Ok(None),
    };
    if let SequenceKind::KthPowers(0) | SequenceKind::PowersBase(0 | 1) = kind {
        return Err(input("--k is out of range for this sequence"));
    }
    let mut spec = SequenceSpec::new(kind).with_window(src.window.unwrap_or(DEFAULT_WINDOW));
    if src.symmetrize {
        spec = spec.symmetrized();
    }
    Ok(Some(spec))
}

fn inferred_value(inf: &Inferred) -> Value {
    to_value(inf)
}

fn zrows(r: &mut Report, z: &ZSubfactorReport) {
    for (kind, list) in [("min", &z.witnesses_min), ("max", &z.witnesses_max)] {
        for w in list {
            r.row(&[("kind", json!(kind)), ("size", json!(w.len())), ("subfactor", json!(w))]);
        }
    }
}

fn status(z: &ZSubfactorReport) -> ProofStatus {
    if z.lower_status == ProofStatus::Proven && z.upper_status == ProofStatus::Proven {
        ProofStatus::Proven
    } else {
        ProofStatus::BoundOnly
    }
}

pub fn zset(a: &ZsetArgs) -> Result<Report> {
    let spec = sequence_spec(&a.source)?;
    let sources = [spec.is_some(), a.epset.is_some(), a.dif.is_some()];
    if sources.iter().filter(|&&x| x).count() > 1 {
        return Err(input("give one of --sequence/--bfile, --epset or --dif"));
    }
    let guard = |s: &SequenceSpec| a.guard.unwrap_or_else(|| default_guard(s));
    let set_a = a.epset.as_deref().map(|s| parse_epset("epset", s)).transpose()?;
    let op_name = format!("{:?}", a.op).to_lowercase();
    let mut base = Report::new("zset", "").input("op", &op_name);
    if let Some(s) = &spec {
        base = base.input("sequence", s.name()).input("window", s.window).input("guard", guard(s));
    }
    if let Some(s) = &set_a {
        base = base.input("epset", s);
    }

    // Dif(A) from whichever source was given.
    let dif_of = |base: &mut Report| -> Result<EPSet> {
        if let Some(d) = &a.dif {
            let d = parse_epset("dif", d)?;
            base.input.insert("dif".into(), to_value(&d));
            return Ok(d);
        }
        if let Some(s) = &set_a {
            return Ok(s.dif());
        }
        let s = spec.as_ref().ok_or_else(|| input("give --sequence, --bfile, --epset or --dif"))?;
        match infer_epset(s, Transform::Dif, guard(s), a.cap as i64)? {
            Inferred::Fitted { set, .. } => Ok(set),
            Inferred::Inconclusive { reason } => Err(CliError::Cap(format!(
                "Dif({}) is not eventually periodic on the window ({reason}); raise --window or --cap",
                s.name()
            ))),
        }
    };
    let with_anchor = |r: Report, anchor: &'static str| Report { paper_anchor: anchor, ..r };

    match a.op {
        ZsetOp::Infer => {
            let s = spec.as_ref().ok_or_else(|| input("--op infer needs --sequence or --bfile"))?;
            let t = match a.transform {
                TransformArg::Dif => Transform::Dif,
                TransformArg::Identity => Transform::Identity,
            };
            let inf = infer_epset(s, t, guard(s), a.cap as i64)?;
            let mut r = with_anchor(base, "eventually periodic structure of difference sets")
                .input("transform", t)
                .result(inferred_value(&inf));
            match inf.set() {
                Some(set) => {
                    r.row(&[("set", to_value(set)), ("modulus", json!(set.modulus()))]);
                    r.line(format!("fitted {set}"));
                }
                None => r.line("inconclusive on this window"),
            }
            Ok(r)
        }
        ZsetOp::Dif => {
            let mut base = base;
            let d = dif_of(&mut base)?;
            let mut r = with_anchor(base, "difference set").result(json!({"dif": d, "syndetic": d.has_residues()}));
            r.row(&[("dif", to_value(&d))]);
            r.line(format!("Dif(A) = {d}"));
            Ok(r)
        }
        ZsetOp::Rsfa => {
            let mut base = base;
            let d = dif_of(&mut base)?;
            let radius = a.radius.unwrap_or_else(|| minimal_radius(&d));
            let z = rsfa_z(&d, radius)?;
            let mut r = with_anchor(base, "exact RSFA over the integers")
                .input("radius", radius)
                .result(json!({
                    "dif": d,
                    "complement": z.complement,
                    "lower": z.lower,
                    "upper": z.upper,
                    "status": status(&z),
                    "lower_status": z.lower_status,
                    "upper_status": z.upper_status,
                    "stable": z.is_stable(),
                    "witnesses_min": z.witnesses_min,
                    "witnesses_max": z.witnesses_max,
                    "rsfa_numbers": z.rsfa_numbers,
                    "rsfa_numbers_complete": z.rsfa_numbers_complete,
                    "states": z.states,
                }));
            zrows(&mut r, &z);
            r.line(format!("Dif(A) = {d}"));
            r.line(format!("lower {} upper {} ({:?})", z.lower, z.upper, status(&z)));
            if let Some(w) = z.witnesses_min.first() {
                r.line(format!("minimum witness {w:?}"));
            }
            Ok(r)
        }
        ZsetOp::Verify => {
            let mut base = base;
            let d = dif_of(&mut base)?;
            let b: Vec<i64> = parse_list("b", require(&a.b, "b")?)?;
            let ok = verify_subfactor_z(&d, &b);
            let mut r = with_anchor(base, "subfactor condition over the integers")
                .input("b", &b)
                .result(json!({"dif": d, "b": b, "is_subfactor": ok}));
            r.row(&[("b", json!(b)), ("is_subfactor", json!(ok))]);
            r.line(format!("{b:?} is a subfactor: {ok}"));
            Ok(r)
        }
        ZsetOp::Scaling => {
            let mut base = base;
            let d = dif_of(&mut base)?;
            let m = *require(&a.m, "m")?;
            if m == 0 {
                return Err(input("--m must be nonzero"));
            }
            let c = scaling_identity_check(&d, m)?;
            let mut r = with_anchor(base, "scaling identity for subindices").input("m", m).result(&c);
            r.row(&[
                ("m", json!(m)),
                ("base_lower", to_value(c.base.0)),
                ("base_upper", to_value(c.base.1)),
                ("scaled_lower", to_value(c.scaled.0)),
                ("scaled_upper", to_value(c.scaled.1)),
                ("holds", json!(c.holds)),
            ]);
            r.line(format!("|Z:{m}A| = {}/{} vs |{m}|·{}/{}: {}", c.scaled.0, c.scaled.1, c.base.0, c.base.1, c.holds));
            Ok(r)
        }
        ZsetOp::SquaresComplement => {
            let n0 = a.source.from;
            let c = squares_complement(n0);
            let mut r = with_anchor(base, "perfect-square complement")
                .input("from", n0)
                .result(json!({"complement": c, "dif": c.complement()}));
            for f in c.flips() {
                r.row(&[("flip", json!(f))]);
            }
            r.line(format!("C = {c}"));
            Ok(r)
        }
        ZsetOp::Intervals => {
            let n = *require(&a.n, "n")?;
            let fam = interval_subf0(n);
            let mut r = with_anchor(base, "pervasive interval subfactors").input("n", n).result(json!({
                "dif": pervasive_dif(n),
                "intervals": fam.iter().map(|(b, ok)| json!({"set": b, "is_subfactor": ok})).collect::<Vec<_>>(),
            }));
            for (b, ok) in &fam {
                r.row(&[("set", json!(b)), ("is_subfactor", json!(ok))]);
            }
            r.line(format!("{} intervals, all subfactors: {}", fam.len(), fam.iter().all(|x| x.1)));
            Ok(r)
        }
        op => {
            let s = set_a.ok_or_else(|| input("set algebra needs --epset"))?;
            let other = || -> Result<EPSet> { parse_epset("other", require(&a.other, "other")?) };
            let out = match op {
                ZsetOp::Union => s.union(&other()?),
                ZsetOp::Intersect => s.intersect(&other()?),
                ZsetOp::Minus => s.minus(&other()?),
                ZsetOp::Sumset => s.sumset(&other()?),
                ZsetOp::Complement => s.complement(),
                ZsetOp::Negate => s.negate(),
                ZsetOp::Shift => s.shift(*require(&a.t, "t")?),
                ZsetOp::Scale => {
                    let m = *require(&a.m, "m")?;
                    if m == 0 {
                        return Err(input("--m must be nonzero"));
                    }
                    s.scale(m)
                }
                _ => unreachable!("handled above"),
            };
            let mut r = with_anchor(base, "eventually periodic set algebra").result(json!({"set": out}));
            r.row(&[("set", to_value(&out))]);
            r.line(format!("{out}"));
            Ok(r)
        }
    }
}

pub fn seq(a: &SeqArgs) -> Result<Report> {
    let spec = sequence_spec(&a.source)?;
    let need = || spec.clone().ok_or_else(|| input("--sequence or --bfile is required for this analysis"));
    let base = |anchor| {
        let mut r = Report::new("seq", anchor).input("analysis", format!("{:?}", a.analysis).to_lowercase());
        if let Some(s) = &spec {
            r = r.input("sequence", s.name()).input("window", s.window);
        }
        r
    };
    let range = |lo: u32, hi: u32| -> Result<(u32, u32)> {
        let (l, h) = (a.lo.unwrap_or(lo), a.hi.unwrap_or(hi));
        if l > h {
            return Err(input(format!("--lo {l} exceeds --hi {h}")));
        }
        Ok((l, h))
    };
    match a.analysis {
        SeqAnalysis::Gaps => {
            let g = gap_analysis(&need()?)?;
            let mut r = base("syndeticity of difference sets").result(&g);
            for (p, m) in &g.gap_trend {
                r.row(&[("prefix", json!(p)), ("max_gap", json!(m))]);
            }
            r.line(format!("max gap {} on the window, verdict {:?}", g.max_gap, g.verdict));
            Ok(r)
        }
        SeqAnalysis::Growth => {
            let g = growth_criterion(&need()?)?;
            let mut r = base("growth criterion for non-syndeticity").result(&g);
            for (i, d) in g.tail.iter().enumerate() {
                r.row(&[("tail_index", json!(i)), ("a_n_minus_2a_n_1", json!(d))]);
            }
            r.line(format!("{} over {} terms: {:?}", g.sequence, g.terms, g.verdict));
            Ok(r)
        }
        SeqAnalysis::Dlinf => {
            let d = dl_infinity_z(&need()?, a.max_n)?;
            let mut r = base("difference length of integer sequences").input("max_n", a.max_n).result(&d);
            for (n, set) in d.chain.iter().enumerate() {
                r.row(&[("n", json!(n + 1)), ("dif_n", to_value(set))]);
            }
            for w in &d.windows {
                r.row(&[("radius", json!(w.radius)), ("sizes", json!(w.sizes)), ("saturated_at", json!(w.saturated_at))]);
            }
            r.line(format!("dl^inf exact {:?}, certified lower bound {}", d.exact, d.certified_lower));
            Ok(r)
        }
        SeqAnalysis::Screen => {
            let s = criteria_screen(&need()?)?;
            let mut r = base("necessary conditions for non-index-stability").result(&s);
            for c in &s.conditions {
                r.row(&[
                    ("label", json!(c.label)),
                    ("statement", json!(c.statement)),
                    ("status", to_value(c.status)),
                    ("basis", json!(c.basis)),
                ]);
                r.line(format!("({}) {}: {:?}", c.label, c.statement, c.status));
            }
            r.line(format!("verdict {:?}", s.verdict));
            Ok(r)
        }
        SeqAnalysis::Fibonacci => {
            let (lo, hi) = range(6, 40)?;
            if hi > 85 {
                return Err(CliError::Cap(format!("--hi {hi} exceeds 85, the last Fibonacci index in i64")));
            }
            let rows = fibonacci_gap_certificate(lo as usize, hi as usize);
            let mut r = base("Fibonacci numbers are not syndetic").input("lo", lo).input("hi", hi).result(&rows);
            for row in &rows {
                r.row(&[
                    ("k", json!(row.k)),
                    ("lo", json!(row.lo)),
                    ("hi", json!(row.hi)),
                    ("certified", json!(row.open_empty)),
                    ("open_empty", json!(row.open_empty)),
                    ("closed_empty", json!(row.closed_empty)),
                    ("hit", json!(row.hit.map(|h| h.2))),
                ]);
            }
            let certified = rows.iter().filter(|x| x.open_empty).count();
            r.line(format!("{certified}/{} open intervals free of differences", rows.len()));
            Ok(r)
        }
        SeqAnalysis::Pow2 => {
            let (lo, hi) = range(2, 30)?;
            if hi > 60 {
                return Err(CliError::Cap(format!("--hi {hi} exceeds 60, the last exponent in i64")));
            }
            let rows = pow2_gap_certificate(lo, hi);
            let mut r = base("powers of 2 avoid the intervals J_n").input("lo", lo).input("hi", hi).result(&rows);
            for row in &rows {
                r.row(&[
                    ("n", json!(row.n)),
                    ("lo", json!(row.lo)),
                    ("hi", json!(row.hi)),
                    ("certified", json!(row.certified)),
                ]);
            }
            let certified = rows.iter().filter(|x| x.certified).count();
            r.line(format!("{certified}/{} intervals certified", rows.len()));
            Ok(r)
        }
        SeqAnalysis::Maillet => {
            let m = maillet_window(a.even_bound, a.prime_bound)?;
            let mut r = base("even numbers as differences of primes")
                .input("even_bound", a.even_bound)
                .input("prime_bound", a.prime_bound)
                .result(json!({
                    "even_bound": m.even_bound,
                    "prime_bound": m.prime_bound,
                    "checked": m.witnesses.len() + m.failures.len(),
                    "failures": m.failures,
                    "sums_in_dif": m.sums_in_dif,
                    "sum_free": m.sum_free,
                }));
            for &(e, q, p) in &m.witnesses {
                r.row(&[("even", json!(e)), ("q", json!(q)), ("q_plus_even", json!(p))]);
            }
            r.line(format!(
                "{} even numbers, {} failures, C+C ⊆ Dif: {}, sum-free: {}",
                m.witnesses.len() + m.failures.len(),
                m.failures.len(),
                m.sums_in_dif,
                m.sum_free
            ));
            Ok(r)
        }
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Report> {
    let base = |anchor| Report::new("verify", anchor).input("op", format!("{:?}", a.op).to_lowercase());
    match a.op {
        VerifyOp::Multiplicativity => {
            let g = parse_group(require(&a.spec, "spec")?)?;
            let h = parse_subset(&g, "subgroup", require(&a.subgroup, "subgroup")?)?;
            let s = parse_subset(&g, "subset", require(&a.subset, "subset")?)?;
            let holds = subfactor::check_subgroup_multiplicativity(&g, &h, &s)?;
            let mut r = base("subindex multiplicativity through a subgroup")
                .input("spec", &a.spec)
                .input("subgroup", &h)
                .input("subset", &s)
                .result(json!({"holds": holds, "subgroup_index": g.order() / h.len()}));
            r.row(&[("holds", json!(holds))]);
            r.line(format!("|G:A| = |G:H|·|H:A| on all four sides: {holds}"));
            Ok(r)
        }
        VerifyOp::ComplementIndex => {
            let g = parse_group(require(&a.spec, "spec")?)?;
            let hs = match &a.subgroup {
                Some(s) => vec![parse_subset(&g, "subgroup", s)?],
                None => g.subgroups(),
            };
            let mut r = base("indices of subgroup complements").input("spec", &a.spec);
            let mut out = Vec::new();
            for h in &hs {
                let idx = subfactor::subgroup_complement_index(&g, h)?;
                r.row(&[
                    ("subgroup", to_value(h)),
                    ("subgroup_index", json!(g.order() / h.len())),
                    ("complement_index", json!(idx)),
                ]);
                out.push(json!({"subgroup": h, "subgroup_index": g.order() / h.len(), "complement_index": idx}));
            }
            r.line(format!("{} subgroups checked", out.len()));
            Ok(r.result(json!({"subgroups": out})))
        }
        VerifyOp::Singleton => {
            let g = parse_group(require(&a.spec, "spec")?)?;
            let s = parse_subset(&g, "subset", require(&a.subset, "subset")?)?;
            let single = subfactor::singleton_subf1_check(&g, &s)?;
            let mut r = base("singleton subfactor family")
                .input("spec", &a.spec)
                .input("subset", &s)
                .result(json!({"singleton": single}));
            r.row(&[("singleton", json!(single))]);
            r.line(format!("unique subfactor containing the identity: {single}"));
            Ok(r)
        }
        VerifyOp::Product => {
            let g1 = parse_group(require(&a.spec, "spec")?)?;
            let g2 = parse_group(require(&a.spec2, "spec2")?)?;
            let s1 = parse_subset(&g1, "subset", require(&a.subset, "subset")?)?;
            let s2 = parse_subset(&g2, "subset2", require(&a.subset2, "subset2")?)?;
            let c = subfactor::product_inequality_check(&g1, &s1, &g2, &s2)?;
            let mut r = base("product inequality for subindices")
                .input("spec", &a.spec)
                .input("spec2", &a.spec2)
                .input("subset", &s1)
                .input("subset2", &s2)
                .result(&c);
            r.row(&[
                ("product_lower", json!(c.product_lower)),
                ("factor_lower_product", json!(c.factor_lower_product)),
                ("factor_upper_product", json!(c.factor_upper_product)),
                ("product_upper", json!(c.product_upper)),
                ("holds", json!(c.holds)),
            ]);
            r.line(format!(
                "{} ≤ {} ≤ {} ≤ {}: {}",
                c.product_lower, c.factor_lower_product, c.factor_upper_product, c.product_upper, c.holds
            ));
            Ok(r)
        }
        VerifyOp::GcdLaw => {
            let (x, y) = (*require(&a.a, "a")?, *require(&a.b, "b")?);
            if x == 0 || y == 0 {
                return Err(input("--a and --b must be nonzero"));
            }
            let set = EPSet::multiples(x).union(&EPSet::multiples(y));
            let d = set.dif();
            let z = rsfa_z(&d, minimal_radius(&d))?;
            let g = gcd(x, y);
            let holds = z.lower.finite() == Some(g) && z.upper.finite() == Some(g);
            let mut r = base("subindex of a union of two subgroups")
                .input("a", x)
                .input("b", y)
                .result(json!({"set": set, "dif": d, "lower": z.lower, "upper": z.upper, "gcd": g, "holds": holds}));
            r.row(&[("lower", to_value(z.lower)), ("upper", to_value(z.upper)), ("gcd", json!(g)), ("holds", json!(holds))]);
            r.line(format!("|Z : {x}Z ∪ {y}Z| = {}/{} vs gcd {g}: {holds}", z.lower, z.upper));
            Ok(r)
        }
        VerifyOp::Pervasive => {
            let n = *require(&a.n, "n")?;
            let d = pervasive_dif(n);
            let z = rsfa_z(&d, minimal_radius(&d))?;
            let fam = interval_subf0(n);
            let all = fam.iter().all(|x| x.1);
            let mut r = base("pervasive integer sets").input("n", n).result(json!({
                "dif": d,
                "lower": z.lower,
                "upper": z.upper,
                "intervals_are_subfactors": all,
            }));
            r.row(&[("lower", to_value(z.lower)), ("upper", to_value(z.upper)), ("intervals_are_subfactors", json!(all))]);
            r.line(format!("index {}/{}, every interval [-x, n-x] a subfactor: {all}", z.lower, z.upper));
            Ok(r)
        }
    }
}

fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
