//! The workspace document: one JSON file describing an algebra, a bimodule
//! over it and any of the structures built on top.
//!
//! Bilinear products are tables `t[i][j]` holding the coefficient vector of
//! `e_i * e_j`; linear maps are matrices whose rows index the output basis.

use std::fmt;

use ocoh::algebra::{adjoint_bimodule, Algebra, Bimodule};
use ocoh::cochain::{Context, MMap};
use ocoh::deformation::PairDeformation;
use ocoh::dendriform::{CompatibleDendriform, DendriformAlgebra};
use ocoh::operators::{OperatorPair, TwoTensor};
use ocoh::tensor::Tensor;
use ocoh::Scalar;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub type Table = Vec<Vec<Vec<Scalar>>>;
pub type Matrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceDocument {
    pub field: String,
    pub algebra: AlgebraBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operators: Option<OperatorsBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dendriform: Option<DendriformBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensors: Option<TensorsBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraBlock {
    pub dim: usize,
    pub mu: Table,
}

/// `left[i][u]` is `e_i · m_u`, `right[u][i]` is `m_u · e_i`. Without this
/// block the adjoint bimodule is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleBlock {
    pub dim: usize,
    pub left: Table,
    pub right: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorsBlock {
    #[serde(rename = "T1")]
    pub t1: Matrix,
    #[serde(rename = "T2")]
    pub t2: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DendriformBlock {
    pub dim: usize,
    pub prec1: Table,
    pub succ1: Table,
    pub prec2: Table,
    pub succ2: Table,
}

/// Higher terms `T_{k,1}, ..., T_{k,N}` of a deformation of `operators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationBlock {
    #[serde(rename = "T1")]
    pub t1: Vec<Matrix>,
    #[serde(rename = "T2")]
    pub t2: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorsBlock {
    pub r1: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaError {
    /// JSON path such as `$.algebra.mu[0][1]`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub doc: WorkspaceDocument,
    /// Unknown keys, by path.
    pub warnings: Vec<String>,
}

fn json_path(p: &str) -> String {
    if p == "." || p.is_empty() {
        "$".into()
    } else {
        format!("$.{p}")
    }
}

/// Parses and validates a document. Unknown keys are reported as warnings;
/// everything else that is wrong comes back as errors with JSON paths.
pub fn parse_workspace(text: &str) -> Result<Parsed, Vec<SchemaError>> {
    let mut unknown = Vec::new();
    let mut de = serde_json::Deserializer::from_str(text);
    let mut note = |p: serde_ignored::Path| unknown.push(json_path(&p.to_string()));
    let doc: WorkspaceDocument =
        serde_path_to_error::deserialize(serde_ignored::Deserializer::new(&mut de, &mut note)).map_err(|e| {
            vec![SchemaError { path: json_path(&e.path().to_string()), message: e.into_inner().to_string() }]
        })?;
    de.end().map_err(|e| vec![SchemaError { path: "$".into(), message: e.to_string() }])?;
    let errors = doc.validate();
    if !errors.is_empty() {
        return Err(errors);
    }
    let warnings = unknown.into_iter().map(|p| format!("{p}: unknown key ignored")).collect();
    Ok(Parsed { doc, warnings })
}

struct Validator(Vec<SchemaError>);

impl Validator {
    fn err(&mut self, path: String, message: String) {
        self.0.push(SchemaError { path, message });
    }

    fn len(&mut self, path: &str, got: usize, want: usize) -> bool {
        if got != want {
            self.err(path.to_string(), format!("expected {want} entries, found {got}"));
            return false;
        }
        true
    }

    fn table(&mut self, path: &str, t: &Table, dims: [usize; 3]) {
        if !self.len(path, t.len(), dims[0]) {
            return;
        }
        for (i, row) in t.iter().enumerate() {
            let p = format!("{path}[{i}]");
            if !self.len(&p, row.len(), dims[1]) {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                self.len(&format!("{p}[{j}]"), v.len(), dims[2]);
            }
        }
    }

    fn matrix(&mut self, path: &str, m: &Matrix, rows: usize, cols: usize) {
        if !self.len(path, m.len(), rows) {
            return;
        }
        for (i, r) in m.iter().enumerate() {
            self.len(&format!("{path}[{i}]"), r.len(), cols);
        }
    }
}

impl WorkspaceDocument {
    pub fn algebra_dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn module_dim(&self) -> usize {
        self.bimodule.as_ref().map_or(self.algebra.dim, |b| b.dim)
    }

    fn validate(&self) -> Vec<SchemaError> {
        let mut v = Validator(Vec::new());
        if self.field != "rational" {
            v.err("$.field".into(), format!("only \"rational\" is supported, found {:?}", self.field));
        }
        let (da, dm) = (self.algebra_dim(), self.module_dim());
        v.table("$.algebra.mu", &self.algebra.mu, [da; 3]);
        if let Some(b) = &self.bimodule {
            v.table("$.bimodule.left", &b.left, [da, dm, dm]);
            v.table("$.bimodule.right", &b.right, [dm, da, dm]);
        }
        if let Some(o) = &self.operators {
            v.matrix("$.operators.T1", &o.t1, da, dm);
            v.matrix("$.operators.T2", &o.t2, da, dm);
        }
        if let Some(d) = &self.dendriform {
            if self.bimodule.is_some() || self.operators.is_some() {
                if d.dim != dm {
                    v.err("$.dendriform.dim".into(), format!("the dendriform structure lives on M, of dimension {dm}"));
                }
            }
            for (name, t) in [("prec1", &d.prec1), ("succ1", &d.succ1), ("prec2", &d.prec2), ("succ2", &d.succ2)] {
                v.table(&format!("$.dendriform.{name}"), t, [d.dim; 3]);
            }
        }
        if let Some(d) = &self.deformation {
            if self.operators.is_none() {
                v.err("$.deformation".into(), "a deformation needs the \"operators\" block it deforms".into());
            }
            if d.t1.len() != d.t2.len() {
                v.err("$.deformation".into(), "T1 and T2 need the same number of terms".into());
            }
            for (name, terms) in [("T1", &d.t1), ("T2", &d.t2)] {
                for (i, m) in terms.iter().enumerate() {
                    v.matrix(&format!("$.deformation.{name}[{i}]"), m, da, dm);
                }
            }
        }
        if let Some(t) = &self.tensors {
            v.matrix("$.tensors.r1", &t.r1, da, da);
            if let Some(r2) = &t.r2 {
                v.matrix("$.tensors.r2", r2, da, da);
            }
        }
        v.0
    }

    pub fn to_json_string(&self) -> String {
        let v = serde_json::to_value(self).expect("documents serialize");
        serde_json::to_string_pretty(&v).expect("values serialize")
    }

    pub fn algebra(&self) -> Result<Algebra, CliError> {
        Ok(Algebra::from_table(&self.algebra.mu)?)
    }

    pub fn context(&self) -> Result<Context, CliError> {
        let alg = self.algebra()?;
        let bim = match &self.bimodule {
            Some(b) => Bimodule::from_tables(alg.dim(), b.dim, &b.left, &b.right)?,
            None => adjoint_bimodule(&alg),
        };
        Ok(Context::new(alg, bim)?)
    }

    pub fn pair(&self) -> Result<OperatorPair, CliError> {
        let o = self.operators.as_ref().ok_or_else(|| missing("operators"))?;
        Ok(OperatorPair::from_matrices(self.context()?, &o.t1, &o.t2)?)
    }

    /// The deformation `T_k + Σ_{i <= order} t^i T_{k,i}`; `order` defaults
    /// to the number of supplied terms.
    pub fn deformation(&self, order: Option<usize>) -> Result<PairDeformation, CliError> {
        let p = self.pair()?;
        let d = self.deformation.as_ref().ok_or_else(|| missing("deformation"))?;
        let n = order.unwrap_or(d.t1.len());
        if n > d.t1.len() {
            return Err(CliError::Usage(format!(
                "order {n} requested but the deformation block has {} terms",
                d.t1.len()
            )));
        }
        let dm = p.ctx.dm();
        let terms = |base: &MMap, ms: &[Matrix]| -> Result<Vec<MMap>, CliError> {
            let mut out = vec![base.clone()];
            for m in &ms[..n] {
                out.push(MMap::from_matrix(m, dm)?);
            }
            Ok(out)
        };
        let (t1, t2) = (terms(&p.t1, &d.t1)?, terms(&p.t2, &d.t2)?);
        Ok(PairDeformation::new(p.ctx, t1, t2)?)
    }

    pub fn dendriform(&self) -> Result<Option<CompatibleDendriform>, CliError> {
        let Some(b) = &self.dendriform else { return Ok(None) };
        let one = |prec: &Table, succ: &Table| -> Result<DendriformAlgebra, CliError> {
            Ok(DendriformAlgebra::new(b.dim, table_tensor(prec, b.dim)?, table_tensor(succ, b.dim)?)?)
        };
        Ok(Some(CompatibleDendriform::new(one(&b.prec1, &b.succ1)?, one(&b.prec2, &b.succ2)?)?))
    }

    pub fn tensors(&self) -> Result<(TwoTensor, Option<TwoTensor>), CliError> {
        let t = self.tensors.as_ref().ok_or_else(|| missing("tensors"))?;
        let r2 = t.r2.as_ref().map(|r| TwoTensor::new(r.clone())).transpose()?;
        Ok((TwoTensor::new(t.r1.clone())?, r2))
    }
}

fn missing(block: &str) -> CliError {
    CliError::Usage(format!("this command needs the \"{block}\" block"))
}

fn table_tensor(t: &Table, dim: usize) -> Result<Tensor, CliError> {
    let data = t.iter().flatten().flatten().cloned().collect();
    Ok(Tensor::from_data(vec![dim, dim], dim, data)?)
}

pub fn tensor_table(t: &Tensor) -> Table {
    let d = t.in_dims();
    (0..d[0]).map(|i| (0..d[1]).map(|j| t.slot(&[i, j]).to_vec()).collect()).collect()
}

impl DendriformBlock {
    pub fn from_structure(cd: &CompatibleDendriform) -> Self {
        DendriformBlock {
            dim: cd.dim(),
            prec1: tensor_table(cd.first.prec()),
            succ1: tensor_table(cd.first.succ()),
            prec2: tensor_table(cd.second.prec()),
            succ2: tensor_table(cd.second.succ()),
        }
    }
}
