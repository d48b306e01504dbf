use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use champ_core::descent::{cech_cosimplicial, descent_category, holim_delta2, holim_vs_descent, stack_check, stackify, GrpdPresheaf, HolimMode};
use champ_core::fincat::presentation::{RewriteBounds, RewriteSystem};
use champ_core::fincat::{FinCat, Mor};
use champ_core::grothendieck::{pseudo_sections, strictify, total_category, PseudoFunctor, SectionKind};
use champ_core::json::{
    CatPresheafJson, CategoryJson, CosimplicialJson, GrpdPresheafJson, PresheafJson, PseudoFunctorJson, ReedyJson, SimpSetJson, SiteJson,
};
use champ_core::reedy::{check_reedy, regular_filtration};
use champ_core::simplicial::{bd_certificate, cech_resolution, fundamental_category, nerve, segal_check, SegalStatus};
use champ_core::site::{check_site, is_sheaf, sheafify, FinSite};
use champ_core::{corpus, Error};

use crate::{Cli, Command, Kind, Mode};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Inconclusive(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive { .. } => CliError::Inconclusive(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub positive: bool,
    pub message: String,
    pub result: Value,
}

type Run = Result<Outcome, CliError>;

fn positive(message: impl Into<String>, result: Value) -> Run {
    Ok(Outcome { positive: true, message: message.into(), result })
}

fn verdict(ok: bool, message: impl Into<String>, result: Value) -> Run {
    Ok(Outcome { positive: ok, message: message.into(), result })
}

/// Loaded inputs, kept for the report digest.
pub struct Context {
    pub command: String,
    flags: Vec<(String, String)>,
    inputs: Vec<(String, Vec<u8>)>,
}

impl Context {
    pub fn new(cli: &Cli) -> Context {
        let command = format!("{:?}", cli.command).split([' ', '{']).next().unwrap_or_default().to_string();
        let command = kebab(&command);
        let mode = match cli.mode {
            Mode::Descent => "descent",
            Mode::Lax => "lax",
        };
        let flags = vec![
            ("trunc".into(), cli.trunc.to_string()),
            ("max-word-len".into(), cli.max_word_len.to_string()),
            ("mode".into(), mode.into()),
        ];
        Context { command, flags, inputs: Vec::new() }
    }

    pub fn digest(&self) -> String {
        crate::report::digest(&self.command, &self.flags, &self.inputs)
    }

    fn flag(&mut self, name: &str, value: &str) {
        self.flags.push((name.into(), value.into()));
    }

    fn load<T: DeserializeOwned>(&mut self, role: &str, path: &Path) -> Result<T, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let value = serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())));
        self.inputs.push((role.into(), bytes));
        value
    }
}

fn kebab(camel: &str) -> String {
    let mut out = String::new();
    for (i, ch) in camel.chars().enumerate() {
        if ch.is_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.extend(ch.to_lowercase());
        } else {
            out.push(ch);
        }
    }
    out
}

fn parse_cover(c: &FinCat, text: &str) -> Result<Vec<Mor>, CliError> {
    text.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()).map(|id| c.morphism(id).map_err(CliError::from)).collect()
}

fn bounds(cli: &Cli) -> RewriteBounds {
    RewriteBounds::new(cli.max_word_len)
}

fn load_site(ctx: &mut Context, path: &Path) -> Result<FinSite, CliError> {
    Ok(ctx.load::<SiteJson>("site", path)?.build()?)
}

fn load_grpd(ctx: &mut Context, path: &Path, site: &FinSite) -> Result<GrpdPresheaf, CliError> {
    Ok(ctx.load::<GrpdPresheafJson>("presheaf", path)?.build(site)?)
}

fn class_counts(f: &GrpdPresheaf) -> Value {
    let c = &f.base;
    Value::Object(c.objects().map(|x| (c.object_id(x).to_string(), json!(f.fibers[x].iso_classes().len()))).collect())
}

pub fn run(cli: &Cli, ctx: &mut Context) -> Run {
    match &cli.command {
        Command::Validate { input, kind } => validate(ctx, input, *kind),
        Command::Nerve { input } => {
            let c = ctx.load::<CategoryJson>("in", input)?.build()?;
            let x = nerve(&c, cli.trunc);
            let sizes: Vec<usize> = (0..=x.trunc()).map(|p| x.level_size(p)).collect();
            positive(format!("cells per level {sizes:?}"), json!(SimpSetJson::from_sset(&x)))
        }
        Command::SegalCheck { input } => {
            let x = ctx.load::<SimpSetJson>("in", input)?.build()?;
            let levels = segal_check(&x);
            let ok = levels.iter().all(|l| l.status == SegalStatus::Bijective);
            verdict(ok, if ok { "Segal maps bijective" } else { "Segal map not bijective" }, json!(levels))
        }
        Command::Tau1 { input } => {
            let x = ctx.load::<SimpSetJson>("in", input)?.build()?;
            let p = fundamental_category(&x);
            let rs = RewriteSystem::complete(&p, bounds(cli))?;
            let c = rs.category()?.cat;
            positive(
                format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms()),
                json!({ "generators": p.generators.len(), "relations": p.relations.len(), "category": CategoryJson::from_cat(&c) }),
            )
        }
        Command::Subdivide { input } => {
            let c = Arc::new(ctx.load::<CategoryJson>("in", input)?.build()?);
            let cert = bd_certificate(&c, bounds(cli))?;
            let mut summary = cert.summary();
            summary["inverts_exactly_delta"] = json!(cert.inverts_exactly_delta());
            let ok = cert.is_certified() && cert.inverts_exactly_delta();
            verdict(ok, if ok { "certified" } else { "not certified" }, summary)
        }
        Command::CechResolution { site, cover } => {
            let s = load_site(ctx, site)?;
            ctx.flag("cover", cover);
            let cov = parse_cover(&s.cat, cover)?;
            let r = cech_resolution(&s, &cov, cli.trunc)?;
            let ok = r.objects.iter().flat_map(|o| &o.fibers).all(|f| if f.in_sieve { f.components == 1 } else { f.lifts.is_empty() });
            let objects: Vec<Value> = r
                .objects
                .iter()
                .map(|o| json!({ "object": s.cat.object_id(o.object), "lifts": o.lifts.len(), "components": o.components, "fibers": o.fibers }))
                .collect();
            verdict(ok, if ok { "contractible over the sieve, empty off it" } else { "resolution is not the sieve" }, json!(objects))
        }
        Command::Reedy { input } => {
            let r = ctx.load::<ReedyJson>("in", input)?.build()?;
            let violations = check_reedy(&r);
            let filtration = violations.is_empty().then(|| regular_filtration(&r, cli.trunc));
            let ok = violations.is_empty() && filtration.as_ref().is_some_and(|f| f.holds());
            verdict(ok, if ok { "Reedy; filtration counts agree" } else { "not Reedy or filtration mismatch" }, json!({ "violations": violations, "filtration": filtration }))
        }
        Command::Grothendieck { input } => {
            let a = ctx.load::<CatPresheafJson>("in", input)?.build_cat_presheaf()?;
            let t = total_category(&a);
            positive(format!("{} objects, {} morphisms", t.cat.num_objects(), t.cat.num_morphisms()), json!(CategoryJson::from_cat(&t.cat)))
        }
        Command::Sections { input } => {
            let a = ctx.load::<CatPresheafJson>("in", input)?.build_cat_presheaf()?;
            let kind = if cli.mode == Mode::Lax { SectionKind::Lax } else { SectionKind::Eq };
            let s = pseudo_sections(&PseudoFunctor::from_strict(&a), kind);
            positive(
                format!("{} sections, {} morphisms", s.cat.num_objects(), s.cat.num_morphisms()),
                json!({ "kind": kind, "category": CategoryJson::from_cat(&s.cat), "iso_classes": s.cat.iso_classes().len() }),
            )
        }
        Command::Strictify { input } => {
            let p = ctx.load::<PseudoFunctorJson>("in", input)?.build()?;
            let s = strictify(&p)?;
            let ok = s.all_equivalences();
            verdict(
                ok,
                if ok { "objectwise equivalences" } else { "comparison is not an equivalence" },
                json!({ "verdicts": s.verdicts, "presheaf": CatPresheafJson::from_cat_presheaf(&s.presheaf) }),
            )
        }
        Command::Sheafify { site, presheaf } => {
            let s = load_site(ctx, site)?;
            let f = ctx.load::<PresheafJson>("presheaf", presheaf)?.build_on(s.cat.clone())?;
            let was = is_sheaf(&f, &s);
            let (g, _) = sheafify(&f, &s)?;
            let ok = is_sheaf(&g, &s);
            verdict(ok, if was { "already a sheaf" } else { "sheafified" }, json!({ "was_sheaf": was, "sheaf": PresheafJson::from_presheaf(&g) }))
        }
        Command::CheckSite { site } => {
            let s = load_site(ctx, site)?;
            let r = check_site(&s);
            verdict(r.is_valid(), if r.is_valid() { "valid" } else { "invalid" }, json!(r))
        }
        Command::Descent { site, presheaf, cover } => {
            let s = load_site(ctx, site)?;
            let f = load_grpd(ctx, presheaf, &s)?;
            ctx.flag("cover", cover);
            let cov = parse_cover(&s.cat, cover)?;
            let d = descent_category(&s, &cov, &f)?;
            let v = d.comparison_verdict();
            let global = f.fibers[s.cat.tgt(cov[0])].iso_classes().len();
            let message = format!("{} classes vs {}", d.iso_class_count(), global);
            verdict(
                v.is_equivalence(),
                message,
                json!({ "objects": d.cat.num_objects(), "morphisms": d.cat.num_morphisms(), "iso_classes": d.iso_class_count(), "global_classes": global, "comparison": v }),
            )
        }
        Command::Holim { input, site, presheaf, cover } => {
            let mode = if cli.mode == Mode::Lax { HolimMode::Lax } else { HolimMode::Descent };
            let (a, cross) = match (input, site, presheaf, cover) {
                (Some(i), None, None, None) => (ctx.load::<CosimplicialJson>("in", i)?.build()?, None),
                (None, Some(si), Some(p), Some(c)) => {
                    let s = load_site(ctx, si)?;
                    let f = load_grpd(ctx, p, &s)?;
                    ctx.flag("cover", c);
                    let cov = parse_cover(&s.cat, c)?;
                    let [u] = cov[..] else {
                        return Err(CliError::Input("holim takes a single arrow as cover".into()));
                    };
                    let cross = (mode == HolimMode::Descent).then(|| holim_vs_descent(&s, u, &f)).transpose()?;
                    (cech_cosimplicial(&s, u, &f)?, cross)
                }
                _ => return Err(CliError::Input("give either --in or all of --site, --presheaf and --cover".into())),
            };
            let h = holim_delta2(&a, mode);
            let classes = h.cat.iso_classes().len();
            let ok = cross.as_ref().is_none_or(|v| v.is_equivalence());
            verdict(
                ok,
                format!("{classes} iso classes"),
                json!({ "mode": mode, "objects": h.cat.num_objects(), "morphisms": h.cat.num_morphisms(), "iso_classes": classes, "versus_descent": cross }),
            )
        }
        Command::CheckStack { site, presheaf } => {
            let s = load_site(ctx, site)?;
            let f = load_grpd(ctx, presheaf, &s)?;
            let r = stack_check(&f, &s);
            verdict(r.is_stack(), r.summary(), json!(r))
        }
        Command::Stackify { site, presheaf } => {
            let s = load_site(ctx, site)?;
            let f = load_grpd(ctx, presheaf, &s)?;
            let st = stackify(&f, &s)?;
            let after = stack_check(&st.presheaf, &s);
            verdict(
                after.is_stack(),
                format!("after {} passes: {}", st.passes, after.summary()),
                json!({ "classes_before": class_counts(&f), "classes_after": class_counts(&st.presheaf), "presheaf": CatPresheafJson::from_grpd_presheaf(&st.presheaf) }),
            )
        }
        Command::Export { .. } => unreachable!("handled before dispatch"),
    }
}

fn validate(ctx: &mut Context, input: &Path, kind: Kind) -> Run {
    let built: Result<String, Error> = match kind {
        Kind::Category => {
            let j = ctx.load::<CategoryJson>("in", input)?;
            let morphisms = j.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect();
            let compose = j.compose.iter().map(|[f, g, h]| ((f.clone(), g.clone()), h.clone())).collect();
            let c = FinCat::from_named(j.objects.clone(), morphisms, &j.identities, &compose)?;
            let report = c.check();
            return verdict(
                report.is_valid(),
                if report.is_valid() { format!("valid category, {} objects, {} morphisms", c.num_objects(), c.num_morphisms()) } else { "category axioms fail".into() },
                json!(report),
            );
        }
        Kind::Sset => ctx.load::<SimpSetJson>("in", input)?.build().map(|x| format!("truncated at {}", x.trunc())),
        Kind::Site => {
            let s = ctx.load::<SiteJson>("in", input)?.build()?;
            let r = check_site(&s);
            return verdict(r.is_valid(), if r.is_valid() { "valid" } else { "invalid" }, json!(r));
        }
        Kind::Presheaf => ctx.load::<PresheafJson>("in", input)?.build().map(|_| "valid presheaf".into()),
        Kind::CatPresheaf => ctx.load::<CatPresheafJson>("in", input)?.build_cat_presheaf().map(|_| "valid presheaf of categories".into()),
        Kind::Pseudo => {
            let p = ctx.load::<PseudoFunctorJson>("in", input)?.build()?;
            let v = p.violations();
            return verdict(v.is_empty(), if v.is_empty() { "coherent" } else { "incoherent" }, json!(v));
        }
        Kind::Reedy => {
            let r = ctx.load::<ReedyJson>("in", input)?.build()?;
            let v = check_reedy(&r);
            return verdict(v.is_empty(), if v.is_empty() { "Reedy" } else { "not Reedy" }, json!(v));
        }
        Kind::Cosimplicial => ctx.load::<CosimplicialJson>("in", input)?.build().map(|_| "cosimplicial identities hold".into()),
    };
    match built {
        Ok(m) => positive(m, Value::Null),
        Err(e) => verdict(false, e.to_string(), Value::Null),
    }
}

/// Built-in examples by name.
pub fn export_names() -> Vec<String> {
    let mut names: Vec<String> = corpus::categories().into_iter().map(|(n, _)| format!("category/{n}")).collect();
    names.extend(corpus::sites().into_iter().map(|(n, _)| format!("site/{n}")));
    names.extend(corpus::reedy_categories().into_iter().map(|(n, _)| format!("reedy/{n}")));
    names.extend(corpus::presheaves_over_interval().into_iter().map(|(n, _)| format!("cat-presheaf/{n}")));
    for (site, s) in corpus::sites() {
        names.extend(corpus::grpd_presheaves(&s).into_iter().map(|(n, _)| format!("grpd-presheaf/{site}/{n}")));
    }
    names.push("pseudo/twisted_associator".into());
    names.extend(["sset/nerve_interval", "sset/horn_2_1", "sset/boundary_2"].map(String::from));
    names
}

pub fn export(name: &str) -> Option<String> {
    let (kind, key) = name.split_once('/')?;
    let value = match kind {
        "category" => json!(CategoryJson::from_cat(&corpus::categories().into_iter().find(|(n, _)| *n == key)?.1)),
        "site" => json!(SiteJson::from_site(&corpus::sites().into_iter().find(|(n, _)| *n == key)?.1)),
        "reedy" => json!(ReedyJson::from_reedy(&corpus::reedy_categories().into_iter().find(|(n, _)| *n == key)?.1)),
        "cat-presheaf" => json!(CatPresheafJson::from_cat_presheaf(&corpus::presheaves_over_interval().into_iter().find(|(n, _)| *n == key)?.1)),
        "grpd-presheaf" => {
            let (site, presheaf) = key.split_once('/')?;
            let s = corpus::sites().into_iter().find(|(n, _)| *n == site)?.1;
            let f = corpus::grpd_presheaves(&s).into_iter().find(|(n, _)| *n == presheaf)?.1;
            json!(GrpdPresheafJson::Table(CatPresheafJson::from_grpd_presheaf(&f)))
        }
        "pseudo" if key == "twisted_associator" => json!(PseudoFunctorJson::from_pseudo(&corpus::twisted_associator())),
        "sset" => {
            use champ_core::fincat::builtins;
            use champ_core::simplicial::{boundary, horn};
            let x = match key {
                "nerve_interval" => nerve(&builtins::interval(), 2),
                "horn_2_1" => horn(2, 1, 2),
                "boundary_2" => boundary(2, 2),
                _ => return None,
            };
            json!(SimpSetJson::from_sset(&x))
        }
        _ => return None,
    };
    Some(serde_json::to_string_pretty(&value).expect("values serialize"))
}
