//! One function per subcommand; each delegates to the engines in `ocoh`.

use ocoh::algebra::{check_associative, check_bimodule};
use ocoh::cohomology::{delta_pair, CAssComplex, OComplex, PairComplex};
use ocoh::complex::{cohomology, squares_to_zero, Complex};
use ocoh::deformation::{check_pair_deformation, is_extensible, obstruction};
use ocoh::dendriform::{check_compatible_dendriform, induced_dendriform, CDendComplex, CompatibleDendriform};
use ocoh::linfty::{mc_check, mc_defect, COAComplex, LInftyElement};
use ocoh::operators::*;
use ocoh::report::CheckReport;
use ocoh::Error;
use serde_json::json;

use crate::document::{DendriformBlock, WorkspaceDocument};
use crate::report::Report;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ComplexKind {
    /// `δ_T` of the first operator.
    O,
    /// `δ_(T1,T2)` of the pair.
    Co,
    /// The induced compatible associative algebra on `M` with coefficients in `A`.
    Cass,
    /// `δ_cOA` of the compatible O-operator algebra.
    Coa,
    /// `δ_cDend` of the dendriform block, or of the induced structure.
    Cdend,
}

impl ComplexKind {
    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::O => "o",
            ComplexKind::Co => "co",
            ComplexKind::Cass => "cass",
            ComplexKind::Coa => "coa",
            ComplexKind::Cdend => "cdend",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Cohomology { complex: ComplexKind, degree: usize },
    Mc,
    Obstruct { order: Option<usize> },
    Extend,
    Aybe,
    Dendriform { max_degree: usize },
    Induce,
}

pub fn run_command(cmd: &Command, doc: &WorkspaceDocument) -> Result<Report, CliError> {
    match cmd {
        Command::Check => check(doc),
        Command::Cohomology { complex, degree } => cohomology_report(doc, *complex, *degree),
        Command::Mc => mc(doc),
        Command::Obstruct { order } => obstruct(doc, *order),
        Command::Extend => extend(doc),
        Command::Aybe => aybe(doc),
        Command::Dendriform { max_degree } => dendriform(doc, *max_degree),
        Command::Induce => induce(doc),
    }
}

fn check(doc: &WorkspaceDocument) -> Result<Report, CliError> {
    let mut r = Report::new("check");
    let ctx = doc.context()?;
    r.check("algebra associative", check_associative(&ctx.alg));
    r.check("bimodule", check_bimodule(&ctx.alg, &ctx.bim)?);
    if doc.operators.is_some() {
        let p = doc.pair()?;
        r.check("T1 O-operator", is_ooperator(&p.ctx, &p.t1)?);
        r.check("T2 O-operator", is_ooperator(&p.ctx, &p.t2)?);
        r.check("compatible pair", is_compatible_pair(&p)?);
    }
    if let Some(cd) = doc.dendriform()? {
        r.check("compatible dendriform", check_compatible_dendriform(&cd));
    }
    if doc.deformation.is_some() {
        let d = doc.deformation(None)?;
        r.arg("order", d.order());
        r.check("pair deformation", check_pair_deformation(&d)?);
    }
    if doc.tensors.is_some() {
        let alg = doc.algebra()?;
        let (r1, r2) = doc.tensors()?;
        r.check("r1 AYBE", aybe_check(&alg, &r1)?);
        if let Some(r2) = &r2 {
            r.check("r2 AYBE", aybe_check(&alg, r2)?);
            r.check("compatible AYBE", compatible_aybe_check(&alg, &r1, r2)?);
        }
    }
    Ok(r)
}

fn build_complex(doc: &WorkspaceDocument, kind: ComplexKind) -> Result<Box<dyn Complex>, CliError> {
    Ok(match kind {
        ComplexKind::O => {
            let p = doc.pair()?;
            Box::new(OComplex::new(p.ctx, p.t1)?)
        }
        ComplexKind::Co => Box::new(PairComplex::new(doc.pair()?)?),
        ComplexKind::Cass => {
            let p = doc.pair()?;
            Box::new(CAssComplex::new(induced_compatible_algebra(&p)?, induced_compatible_bimodule(&p)?)?)
        }
        ComplexKind::Coa => Box::new(COAComplex::new(&doc.pair()?)?),
        ComplexKind::Cdend => Box::new(CDendComplex::new(dendriform_of(doc)?)?),
    })
}

fn dendriform_of(doc: &WorkspaceDocument) -> Result<CompatibleDendriform, CliError> {
    match doc.dendriform()? {
        Some(cd) => Ok(cd),
        None if doc.operators.is_some() => Ok(induced_dendriform(&doc.pair()?)?),
        None => Err(CliError::Usage("this command needs a \"dendriform\" or an \"operators\" block".into())),
    }
}

fn require_squares(c: &dyn Complex, n: usize) -> Result<(), CliError> {
    if !squares_to_zero(c, n)? {
        return Err(Error::Logic(format!("{}: δ∘δ is nonzero on degree {n}", c.name())).into());
    }
    Ok(())
}

fn cohomology_report(doc: &WorkspaceDocument, kind: ComplexKind, n: usize) -> Result<Report, CliError> {
    let mut r = Report::new("cohomology");
    r.arg("complex", kind.name());
    r.arg("degree", n);
    let c = build_complex(doc, kind)?;
    if n > 0 {
        require_squares(c.as_ref(), n - 1)?;
    }
    require_squares(c.as_ref(), n)?;
    let h = cohomology(c.as_ref(), n)?;
    r.result("cochain_dim", c.dim(n));
    r.result("dim_cocycles", h.dim_cocycles);
    r.result("dim_coboundaries", h.dim_coboundaries);
    r.result("cohomology_dim", h.cohomology_dim);
    Ok(r)
}

fn mc(doc: &WorkspaceDocument) -> Result<Report, CliError> {
    let mut r = Report::new("mc");
    let alpha = LInftyElement::from_pair(&doc.pair()?)?;
    let d = mc_defect(&alpha)?;
    let nonzero: Vec<_> = d
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| json!([i, x.to_string()]))
        .collect();
    r.check("Maurer-Cartan", mc_check(&alpha)?);
    r.result("defect", d.to_json());
    r.result("nonzero_components", nonzero);
    Ok(r)
}

fn valid_deformation(r: &mut Report, d: &ocoh::deformation::PairDeformation) -> Result<bool, CliError> {
    let rep = check_pair_deformation(d)?;
    let ok = rep.passed;
    r.check("pair deformation", rep);
    Ok(ok)
}

fn obstruct(doc: &WorkspaceDocument, order: Option<usize>) -> Result<Report, CliError> {
    let mut r = Report::new("obstruct");
    let d = doc.deformation(order)?;
    r.arg("order", d.order());
    if !valid_deformation(&mut r, &d)? {
        return Ok(r);
    }
    let ob = obstruction(&d)?;
    let mut cocycle = CheckReport::new("");
    cocycle.expect_zero("δ(Ob) = 0", &[], delta_pair(&d.base(), &ob)?.coords());
    r.check("obstruction cocycle", cocycle);
    r.result("obstruction", &ob);
    r.result("obstruction_is_zero", ob.is_zero());
    Ok(r)
}

fn extend(doc: &WorkspaceDocument) -> Result<Report, CliError> {
    let mut r = Report::new("extend");
    let d = doc.deformation(None)?;
    r.arg("order", d.order());
    if !valid_deformation(&mut r, &d)? {
        return Ok(r);
    }
    let ext = is_extensible(&d)?;
    let mut verdict = CheckReport::new("");
    match &ext.witness {
        Some(w) => {
            let mut blocks = doc.deformation.clone().expect("checked above");
            blocks.t1.truncate(d.order());
            blocks.t2.truncate(d.order());
            blocks.t1.push(w.parts()[0].to_matrix());
            blocks.t2.push(w.parts()[1].to_matrix());
            r.result("witness", w);
            r.result("extended_deformation", blocks);
        }
        None => {
            verdict.fail("obstruction class is nonzero", &[]);
            r.result("witness", "not extensible");
        }
    }
    r.check("extensible", verdict);
    r.result("obstruction", &ext.obstruction);
    r.result("rank_delta", ext.rank_delta);
    r.result("rank_augmented", ext.rank_augmented);
    Ok(r)
}

fn aybe(doc: &WorkspaceDocument) -> Result<Report, CliError> {
    let mut r = Report::new("aybe");
    let alg = doc.algebra()?;
    let (r1, r2) = doc.tensors()?;
    let rep = aybe_check(&alg, &r1)?;
    let solves = rep.passed;
    r.check("r1 AYBE", rep);
    if solves {
        let t = rb_from_tensor(&alg, &r1)?;
        r.check("r1 Rota-Baxter image", is_ooperator(&t.ctx, &t.map)?);
        r.result("rota_baxter_r1", t.matrix());
    }
    r.result("r1_skew", is_skew(&r1));
    if let Some(r2) = r2 {
        let rep = compatible_aybe_check(&alg, &r1, &r2)?;
        let compatible = rep.passed;
        r.check("compatible AYBE", rep);
        r.result("r2_skew", is_skew(&r2));
        if compatible && is_skew(&r1) && is_skew(&r2) {
            let (s1, s2) = (sharp(&alg, &r1)?, sharp(&alg, &r2)?);
            let p = OperatorPair::new(s1.ctx.clone(), s1.map.clone(), s2.map.clone())?;
            r.check("sharp pair on the coadjoint bimodule", is_compatible_pair(&p)?);
            r.result("sharp_operators", json!({ "T1": s1.matrix(), "T2": s2.matrix() }));
        }
    }
    Ok(r)
}

fn dendriform(doc: &WorkspaceDocument, max_degree: usize) -> Result<Report, CliError> {
    let mut r = Report::new("dendriform");
    r.arg("degree", max_degree);
    let cd = dendriform_of(doc)?;
    r.result("source", if doc.dendriform.is_some() { "dendriform block" } else { "induced from operators" });
    let rep = check_compatible_dendriform(&cd);
    let ok = rep.passed;
    r.check("compatible dendriform", rep);
    if !ok {
        return Ok(r);
    }
    let c = CDendComplex::new(cd)?;
    for n in 0..=max_degree {
        require_squares(&c, n)?;
    }
    r.result("differential_squares_to_zero_through_degree", max_degree);
    let dims = (0..=max_degree)
        .map(|n| cohomology(&c, n).map(|h| h.cohomology_dim))
        .collect::<Result<Vec<_>, _>>()?;
    r.result("cohomology_dims", dims);
    Ok(r)
}

fn induce(doc: &WorkspaceDocument) -> Result<Report, CliError> {
    let mut r = Report::new("induce");
    let p = doc.pair()?;
    let c = induced_compatible_algebra(&p)?;
    let cb = induced_compatible_bimodule(&p)?;
    let cd = induced_dendriform(&p)?;
    r.result(
        "compatible_algebra",
        json!({ "dim": c.dim(), "mu1": c.first.table(), "mu2": c.second.table() }),
    );
    r.result(
        "compatible_bimodule",
        json!({
            "algebra_dim": c.dim(),
            "dim": cb.first.module_dim(),
            "left1": cb.first.left_table(),
            "right1": cb.first.right_table(),
            "left2": cb.second.left_table(),
            "right2": cb.second.right_table(),
        }),
    );
    r.result("dendriform", DendriformBlock::from_structure(&cd));
    Ok(r)
}

/// The input document with its `dendriform` block replaced by the induced one.
pub fn induced_document(doc: &WorkspaceDocument) -> Result<WorkspaceDocument, CliError> {
    let cd = induced_dendriform(&doc.pair()?)?;
    let mut out = doc.clone();
    out.dendriform = Some(DendriformBlock::from_structure(&cd));
    Ok(out)
}
