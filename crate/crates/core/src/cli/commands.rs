use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{read_json, reproduce, write_json, CliError, Command, GlobalOpts, Outcome, Scalars, Status};
use crate::chartheory::{center_grading_map, isotypic_decomposition, CharacterTable, MatrixRep, MatrixRepDoc};
use crate::decomp::{pushforward, DecompositionAlgebra, DecompositionAlgebraDoc};
use crate::exactlin::{FromScalar, Rational, Spectral, C64};
use crate::fpgroup::{abelianized_grading, finest_grading, FpError, GroupElement};
use crate::fusion::{FusionLaw, FusionMorphism, FusionMorphismDoc};
use crate::miyamoto::{
    central_extension_check, check_stability_and_unique_type, is_miyamoto_closed, miyamoto_group, universal_presentation,
    MiyamotoContext, RCharacter, RCharacterDoc,
};
use crate::permgroup::{catalog_group, Perm, PermGroup, PermGroupDoc};
use crate::scheme::{
    bose_mesner, norton_algebra, norton_axial_certificate, norton_generalized_decomposition, scheme_from_group,
    AssociationScheme, BoseMesner, SchemeDoc, SchemeError,
};

/// Runs `$body` with `F` bound to the scalar field chosen by `$mode`, using
/// rationals in auto mode when `$exact` holds.
macro_rules! with_scalars {
    ($mode:expr, $exact:expr, $f:ident => $body:expr) => {{
        let rational = match $mode {
            Scalars::Rational => true,
            Scalars::Complex => false,
            Scalars::Auto => $exact,
        };
        if rational {
            type $f = Rational;
            $body
        } else {
            type $f = C64;
            $body
        }
    }};
}

pub(super) fn dispatch(command: &Command, global: &GlobalOpts) -> Result<Outcome, CliError> {
    match command {
        Command::Grade { law, enumerate } => grade(law, *enumerate, global),
        Command::Classlaw { group } => classlaw(group),
        Command::Replaw { table } => replaw(table),
        Command::Verify { decalg } => {
            let doc: DecompositionAlgebraDoc = read_json(decalg)?;
            with_scalars!(global.scalars, doc_is_exact(&doc), F => verify::<F>(&doc))
        }
        Command::Pushforward { decalg, morphism } => {
            let doc: DecompositionAlgebraDoc = read_json(decalg)?;
            let m: FusionMorphismDoc = read_json(morphism)?;
            with_scalars!(global.scalars, doc_is_exact(&doc), F => push::<F>(&doc, &m))
        }
        Command::Miyamoto { decalg, characters, universal, central_check, elements } => {
            let doc: DecompositionAlgebraDoc = read_json(decalg)?;
            let chars = if characters == "pm1" { None } else { Some(read_json::<CharactersDoc>(Path::new(characters))?) };
            let opts = MiyamotoOpts { universal: *universal, central_check: *central_check, elements: *elements };
            with_scalars!(global.scalars, doc_is_exact(&doc), F => miyamoto::<F>(&doc, chars.as_ref(), opts, global))
        }
        Command::Isotypic { rep, table } => {
            let doc: MatrixRepDoc = read_json(rep)?;
            let table = load_table(table)?;
            let exact = table.is_exact() && doc.matrices.iter().flatten().flatten().all(|s| s.is_exact());
            with_scalars!(global.scalars, exact, F => isotypic::<F>(&doc, &table))
        }
        Command::Scheme { group, domain, scheme_out } => scheme(group, domain, scheme_out.as_deref(), global),
        Command::Norton { scheme, eigenspace, certify, generalized } => {
            let doc: SchemeDoc = read_json(scheme)?;
            let s = AssociationScheme::from_doc(&doc)?;
            with_bose_mesner(&s, global.scalars, |bm| norton(bm, *eigenspace, *certify, *generalized), |bm| norton(bm, *eigenspace, *certify, *generalized))
        }
        Command::Reproduce { id } => reproduce(id),
    }
}

fn doc_is_exact(doc: &DecompositionAlgebraDoc) -> bool {
    let value = serde_json::to_value(doc).expect("serializable");
    fn walk(v: &Value) -> bool {
        match v {
            Value::Object(m) => !(m.contains_key("re") && m.contains_key("im")) && m.values().all(walk),
            Value::Array(a) => a.iter().all(walk),
            _ => true,
        }
    }
    walk(&value)
}

fn load_table(path: &Path) -> Result<CharacterTable, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    Ok(CharacterTable::from_json(&text)?)
}

/// A group JSON path or `catalog:NAME`.
pub(super) fn load_group(spec: &str) -> Result<PermGroup, CliError> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(catalog_group(name)?);
    }
    let doc: PermGroupDoc = read_json(Path::new(spec))?;
    Ok(PermGroup::try_from(doc)?)
}

fn grade(path: &Path, enumerate: bool, global: &GlobalOpts) -> Result<Outcome, CliError> {
    let law: FusionLaw = read_json(path)?;
    let grading = abelianized_grading(&law)?;
    let mut report = json!({
        "elements": law.labels(),
        "abelian": grading.report(),
    });
    let mut status = Status::Valid;
    if enumerate {
        report["finest"] = match finest_grading(&law, global.max_cosets) {
            Ok(g) => {
                let map: IndexMap<&str, &[usize]> = law
                    .labels()
                    .iter()
                    .zip(&g.map)
                    .map(|(l, e)| match e {
                        GroupElement::Perm(p) => (l.as_str(), p.as_slice()),
                        GroupElement::Vector(_) => unreachable!("enumerated gradings are permutations"),
                    })
                    .collect();
                json!({ "order": g.group.order(), "map": map })
            }
            Err(FpError::Exhausted { cosets_defined }) => {
                status = Status::Exhausted;
                json!({ "exhausted": true, "cosets_defined": cosets_defined })
            }
            Err(e) => return Err(e.into()),
        };
    }
    Ok(Outcome::new(status, report))
}

fn classlaw(spec: &str) -> Result<Outcome, CliError> {
    let group = load_group(spec)?;
    let law = group.class_fusion_law()?;
    let grading = abelianized_grading(&law)?;
    let oracle = group.abelianization()?.invariant_factors;
    let factors = grading.invariant_factors().map(<[u64]>::to_vec);
    let matches = factors.as_deref() == Some(oracle.as_slice());
    let report = json!({
        "group": group.name(),
        "order": group.order()?,
        "law": law,
        "grading": grading.report(),
        "abelianization": oracle,
        "matches_abelianization": matches,
    });
    Ok(Outcome::new(Status::from_valid(matches), report))
}

fn replaw(path: &Path) -> Result<Outcome, CliError> {
    let table = load_table(path)?;
    let law = table.representation_fusion_law()?;
    let grading = abelianized_grading(&law)?;
    let center = center_grading_map(&table).ok().map(|c| c.summary);
    let valid = center.as_ref().is_none_or(|c| c.matches_abelianized);
    let report = json!({
        "group": table.group_name(),
        "law": law,
        "grading": grading.report(),
        "center": center,
    });
    Ok(Outcome::new(Status::from_valid(valid), report))
}

fn verify<F: FromScalar>(doc: &DecompositionAlgebraDoc) -> Result<Outcome, CliError> {
    let d = DecompositionAlgebra::<F>::from_doc(doc)?;
    let report = d.verify();
    let status = Status::from_valid(report.valid && report.axial != Some(false));
    Ok(Outcome::new(status, json!({ "dim": d.dim(), "indices": d.indices, "report": report })))
}

fn push<F: FromScalar>(doc: &DecompositionAlgebraDoc, m: &FusionMorphismDoc) -> Result<Outcome, CliError> {
    let d = DecompositionAlgebra::<F>::from_doc(doc)?;
    let xi = FusionMorphism::from_doc(m, Some(&d.law))?;
    let pushed = pushforward(&d, &xi)?;
    let report = pushed.verify();
    let status = Status::from_valid(report.valid);
    Ok(Outcome::new(status, json!({ "decomposition_algebra": pushed.to_doc(), "report": report })))
}

/// Either a bare list of characters of the law's group, or characters of
/// the target of a grading.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub(super) enum CharactersDoc {
    List(Vec<RCharacterDoc>),
    Graded {
        #[serde(default)]
        grading: Option<FusionMorphismDoc>,
        characters: Vec<RCharacterDoc>,
    },
}

#[derive(Clone, Copy, Debug)]
struct MiyamotoOpts {
    universal: bool,
    central_check: bool,
    elements: bool,
}

fn miyamoto<F: FromScalar>(
    doc: &DecompositionAlgebraDoc,
    chars: Option<&CharactersDoc>,
    opts: MiyamotoOpts,
    global: &GlobalOpts,
) -> Result<Outcome, CliError> {
    let d = DecompositionAlgebra::<F>::from_doc(doc)?;
    let ctx = match chars {
        None => MiyamotoContext::z2(&d)?,
        Some(CharactersDoc::List(list)) | Some(CharactersDoc::Graded { grading: None, characters: list }) => {
            let chars = list.iter().map(|c| RCharacter::from_doc(c, &d.law)).collect::<Result<_, _>>()?;
            MiyamotoContext::new(d, chars)?
        }
        Some(CharactersDoc::Graded { grading: Some(g), characters }) => {
            let zeta = FusionMorphism::from_doc(g, Some(&d.law))?;
            let chars = characters.iter().map(|c| RCharacter::from_doc(c, zeta.target())).collect::<Result<_, _>>()?;
            MiyamotoContext::from_grading(&d, &zeta, chars)?
        }
    };
    let group = miyamoto_group(&ctx, global.group_cap);
    let closure = is_miyamoto_closed(&ctx);
    let stability = check_stability_and_unique_type(&ctx).ok();
    let generators: Vec<String> = group.generators.iter().map(|&(i, c)| format!("t[{}]", ctx.pair_label(i, c))).collect();
    let mut group_report = json!({
        "order": group.order(),
        "exhausted": group.exhausted,
        "generators": generators,
    });
    if opts.elements {
        let elements: Vec<Value> = group
            .elements
            .iter()
            .zip(&group.words)
            .map(|(m, w)| {
                let rows: Vec<Vec<_>> = m.to_rows().iter().map(|r| r.iter().map(F::to_scalar).collect()).collect();
                json!({ "word": w.iter().map(|&g| &generators[g]).collect::<Vec<_>>(), "matrix": rows })
            })
            .collect();
        group_report["elements"] = Value::Array(elements);
    }
    let mut report = json!({
        "indices": ctx.indices(),
        "characters": ctx.characters().iter().map(|c| &c.label).collect::<Vec<_>>(),
        "group": group_report,
        "closed": closure.is_closed(),
        "closure_failure": closure.failure.map(|f| json!({
            "index": ctx.indices()[f.index],
            "character": ctx.characters()[f.character].label,
            "source": ctx.indices()[f.source],
        })),
        "stability": stability,
    });
    if opts.universal {
        let up = universal_presentation(&ctx)?;
        report["universal"] = json!({
            "presentation": up.presentation,
            "closure_pairs_present": up.closure_pairs_present,
        });
    }
    let mut status = if group.exhausted { Status::Exhausted } else { Status::Valid };
    if opts.central_check {
        match central_extension_check(&ctx, global.max_cosets) {
            Ok(ext) => {
                if !ext.kernel_central {
                    status = Status::Invalid;
                }
                report["central_extension"] = serde_json::to_value(ext).expect("serializable");
            }
            Err(crate::miyamoto::MiyError::Exhausted { cosets_defined }) => {
                status = Status::Exhausted;
                report["central_extension"] = json!({ "exhausted": true, "cosets_defined": cosets_defined });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::new(status, report))
}

fn isotypic<F: FromScalar>(doc: &MatrixRepDoc, table: &CharacterTable) -> Result<Outcome, CliError> {
    let rep = MatrixRep::<F>::from_doc(doc)?;
    let iso = isotypic_decomposition(&rep, table)?;
    Ok(Outcome::new(Status::Valid, serde_json::to_value(iso.report()).expect("serializable")))
}

/// The permutation action named by `domain`.
pub(super) fn action_on(group: &PermGroup, domain: &str) -> Result<PermGroup, CliError> {
    if domain == "natural" {
        return Ok(group.clone());
    }
    if let Some(k) = domain.strip_prefix("subsets:") {
        let k: usize = k.parse().map_err(|_| CliError::Usage(format!("bad subset size in `{domain}`")))?;
        if k == 0 || k > group.degree() {
            return Err(CliError::Usage(format!("subset size {k} out of range")));
        }
        return Ok(group.on_k_subsets(k)?.0);
    }
    if let Some(images) = domain.strip_prefix("class:") {
        let images = images
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Usage(format!("bad permutation in `{domain}`")))?;
        return Ok(group.on_class(&Perm::new(images)?)?.0);
    }
    Err(CliError::Usage(format!("unknown domain `{domain}`; use natural, subsets:K or class:IMAGES")))
}

/// Runs `exact` on the rational Bose–Mesner algebra, or `float` on the
/// complex one when the spectrum is not rational or complex scalars are asked for.
pub(super) fn with_bose_mesner<T>(
    scheme: &AssociationScheme,
    mode: Scalars,
    exact: impl FnOnce(&BoseMesner<Rational>) -> Result<T, CliError>,
    float: impl FnOnce(&BoseMesner<C64>) -> Result<T, CliError>,
) -> Result<T, CliError> {
    match mode {
        Scalars::Complex => float(&bose_mesner(scheme)?),
        Scalars::Rational => exact(&bose_mesner(scheme)?),
        Scalars::Auto => match bose_mesner::<Rational>(scheme) {
            Ok(bm) => exact(&bm),
            Err(SchemeError::Eigen(_)) => float(&bose_mesner(scheme)?),
            Err(e) => Err(e.into()),
        },
    }
}

pub(super) fn bose_mesner_report<F: Spectral>(bm: &BoseMesner<F>) -> Value {
    let scalars = |v: &[F]| v.iter().map(F::to_scalar).collect::<Vec<_>>();
    json!({
        "scalars": if F::EXACT { "rational" } else { "complex" },
        "dims": bm.dims(),
        "eigenvalues": bm.eigenvalues.iter().map(|r| scalars(r)).collect::<Vec<_>>(),
        "krein": bm.krein.iter().map(|a| a.iter().map(|b| scalars(b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "krein_condition": bm.krein_condition(),
        "idempotents_ok": bm.check_idempotents(),
        "intersection_numbers_ok": bm.check_intersection_numbers(),
        "sigma_residual": bm.sigma_identity_residual(),
    })
}

fn scheme(spec: &str, domain: &str, out: Option<&Path>, global: &GlobalOpts) -> Result<Outcome, CliError> {
    let group = load_group(spec)?;
    let action = action_on(&group, domain)?;
    let s = scheme_from_group(&action)?;
    if let Some(path) = out {
        write_json(path, &s.to_doc())?;
    }
    let bm = with_bose_mesner(&s, global.scalars, |bm| Ok(bose_mesner_report(bm)), |bm| Ok(bose_mesner_report(bm)))?;
    let valid = bm["krein_condition"] == true && bm["idempotents_ok"] == true && bm["intersection_numbers_ok"] == true;
    let report = json!({
        "n": s.n(),
        "classes": s.classes(),
        "symmetric": s.is_symmetric(),
        "generously_transitive": action.is_generously_transitive()?,
        "valencies": s.valencies(),
        "transpose": (0..=s.classes()).map(|i| s.transpose_of(i)).collect::<Vec<_>>(),
        "intersection_numbers": s.intersection_numbers(),
        "bose_mesner": bm,
        "scheme": s.to_doc(),
    });
    Ok(Outcome::new(Status::from_valid(valid), report))
}

fn norton<F: Spectral>(bm: &BoseMesner<F>, i: usize, certify: bool, generalized: bool) -> Result<Outcome, CliError> {
    let algebra = norton_algebra(bm, i)?;
    let zero = (0..algebra.dim()).all(|a| (0..algebra.dim()).all(|b| algebra.algebra.basis_product(a, b).iter().all(|v| v.is_zero())));
    let mut report = json!({
        "index": i,
        "dim": algebra.dim(),
        "trivial_eigenspace": i == 0,
        "q_iii": bm.q(i, i, i).to_scalar(),
        "product_is_zero": zero,
        "commutative": algebra.algebra.is_commutative(),
        "algebra": algebra.algebra.to_doc(),
        "basis": algebra.space.basis().iter().map(|v| v.iter().map(F::to_scalar).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    let mut status = Status::Valid;
    if certify || generalized {
        let cert = if generalized { norton_generalized_decomposition(bm, i)? } else { norton_axial_certificate(bm, i)? };
        let summary = cert.summary();
        status = Status::from_valid(summary.valid && (generalized || summary.full_eigenbasis));
        report["certificate"] = json!({
            "summary": summary,
            "report": cert.object.verify(),
            "decomposition_algebra": cert.object.to_doc(),
        });
    }
    Ok(Outcome::new(status, report))
}
