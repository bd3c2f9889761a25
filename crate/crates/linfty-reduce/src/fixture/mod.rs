//! The JSON fixture format (`schema: 1`).
//!
//! Rationals are `"p/q"` strings, `ħ`-series are arrays of rationals indexed by the
//! power of `ħ`, indices are 0-based. A polynomial multivector is a list of terms
//! `{coeff, exps, dirs}` meaning `coeff · x^exps ∂_{dirs[0]} ∧ ∂_{dirs[1]} ∧ …`.
//! `mc_element` and `momentum_perturbation` use the ambient layout `(α_1..α_n, C)`;
//! `action` and `connection` live on `C` alone.

pub mod samples;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::equivariant::{ConnectionData, MomentumPerturbation, ProductModel};
use crate::error::{Error, Result};
use crate::graded::scalar::{format_scalar, parse_scalar};
use crate::graded::{FormalSeries, Scalar};
use crate::poly::{LieAlgebraData, OneForm, PolyMultivector, PolySpace};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub schema: u32,
    pub name: String,
    pub lie_algebra: LieAlgebraSpec,
    pub model: ModelSpec,
    pub action: Vec<Vec<TermSpec>>,
    pub connection: Option<Vec<Vec<Vec<TermSpec>>>>,
    pub mc_element: Vec<TermSpec>,
    pub momentum_perturbation: Option<Vec<Vec<TermSpec>>>,
    pub truncation: TruncationSpec,
    pub probes: ProbeSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraSpec {
    pub dim: usize,
    /// `f^k_ij` with `[e_i, e_j] = f^k_ij e_k`; both orders of `(i, j)` are listed.
    pub structure_constants: Vec<StructureConstant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub m_red: usize,
    pub n_fiber: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: Vec<String>,
    pub exps: Vec<u16>,
    pub dirs: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    pub nh: usize,
    pub nt: usize,
    pub arity_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    pub seed: u64,
    pub count: usize,
}

/// A validated fixture.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub model: ProductModel,
    pub connection: Option<ConnectionData>,
    pub pi: PolyMultivector,
    pub momentum_perturbation: MomentumPerturbation,
    pub truncation: TruncationSpec,
    pub probes: ProbeSpec,
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Invalid { path: p, msg } => Error::invalid(format!("{path}.{p}"), msg),
        other => Error::invalid(path, other.to_string()),
    }
}

fn series(path: &str, coeff: &[String], order: usize) -> Result<FormalSeries> {
    if coeff.is_empty() || coeff.len() > order + 1 {
        return Err(Error::invalid(path, format!("expected 1..={} coefficients, got {}", order + 1, coeff.len())));
    }
    let mut cs: Vec<Scalar> = Vec::with_capacity(order + 1);
    for (n, c) in coeff.iter().enumerate() {
        cs.push(parse_scalar(c).map_err(|e| Error::invalid(format!("{path}[{n}]"), e.to_string()))?);
    }
    cs.resize(order + 1, Scalar::from_integer(0.into()));
    FormalSeries::new(cs)
}

fn read_poly(path: &str, terms: &[TermSpec], space: &PolySpace, dim: usize, order: usize) -> Result<PolyMultivector> {
    let mut out = space.zero();
    for (n, t) in terms.iter().enumerate() {
        let p = format!("{path}[{n}]");
        if t.exps.len() != dim {
            return Err(Error::invalid(format!("{p}.exps"), format!("expected {dim} exponents, got {}", t.exps.len())));
        }
        if t.dirs.iter().any(|&d| d >= dim) || t.dirs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                format!("{p}.dirs"),
                format!("expected strictly increasing indices below {dim}"),
            ));
        }
        let c = series(&format!("{p}.coeff"), &t.coeff, order)?;
        let unit = space.term(Scalar::from_integer(1.into()), &t.exps, &t.dirs);
        out.add_mul_series(&unit, &c);
    }
    Ok(out)
}

fn write_poly(x: &PolyMultivector) -> Vec<TermSpec> {
    x.iter().map(|(k, c)| TermSpec { coeff: c.to_strings(), exps: k.exps.clone(), dirs: k.wedge_indices() }).collect()
}

const INLINE_WIDTH: usize = 96;

fn write_json(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let compact = serde_json::to_string(v).expect("json");
    let inline = !matches!(v, Value::Array(xs) if xs.iter().any(|x| x.as_array().is_some_and(|a| !a.is_empty())));
    if inline && indent + compact.len() <= INLINE_WIDTH {
        out.push_str(&compact.replace(",\"", ", \"").replace("\":", "\": "));
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(xs) => {
            out.push_str("[\n");
            for (n, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                write_json(x, indent + 1, out);
                out.push_str(if n + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (n, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("json"));
                out.push_str(": ");
                write_json(x, indent + 1, out);
                out.push_str(if n + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => out.push_str(&compact),
    }
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: FixtureFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::invalid(if path.is_empty() { "$".to_string() } else { path }, e.into_inner().to_string())
        })?;
        if file.schema != SCHEMA {
            return Err(Error::invalid("schema", format!("unsupported schema {}, expected {SCHEMA}", file.schema)));
        }
        Ok(file)
    }

    /// The canonical on-disk form: indented JSON with short values kept on one line and a
    /// trailing newline.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("fixture serializes");
        let mut s = String::new();
        write_json(&v, 0, &mut s);
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<Fixture> {
        let la = &self.lie_algebra;
        let mut entries = Vec::new();
        for (n, c) in la.structure_constants.iter().enumerate() {
            let v = parse_scalar(&c.value)
                .map_err(|e| Error::invalid(format!("lie_algebra.structure_constants[{n}].value"), e.to_string()))?;
            entries.push(((c.i, c.j, c.k), v));
        }
        let algebra = LieAlgebraData::new(la.dim, &entries).map_err(|e| at("lie_algebra", e))?;
        let n = la.dim;
        let m = self.model.m_red + self.model.n_fiber;
        let c_space = PolySpace::new(0, m, 0);
        let mut fields = Vec::new();
        for (i, f) in self.action.iter().enumerate() {
            fields.push(read_poly(&format!("action[{i}]"), f, &c_space, m, 0)?);
        }
        let model = ProductModel::new(algebra, self.model.m_red, m, fields).map_err(|e| match e {
            Error::Invalid { path, msg } if path.starts_with("action") => Error::invalid(path, msg),
            Error::Capacity(msg) => Error::Capacity(msg),
            other => at("model", other),
        })?;
        let connection = match &self.connection {
            None => None,
            Some(forms) => {
                let mut omega = Vec::new();
                for (i, w) in forms.iter().enumerate() {
                    if w.len() != m {
                        return Err(Error::invalid(
                            format!("connection[{i}]"),
                            format!("expected {m} components, got {}", w.len()),
                        ));
                    }
                    let mut comps = Vec::new();
                    for (a, c) in w.iter().enumerate() {
                        let f = read_poly(&format!("connection[{i}][{a}]"), c, &c_space, m, 0)?;
                        if f.keys().any(|k| k.wedge != 0) {
                            return Err(Error::invalid(format!("connection[{i}][{a}]"), "expected a function"));
                        }
                        comps.push(f);
                    }
                    omega.push(OneForm { comps });
                }
                Some(ConnectionData::new(&model, omega).map_err(|e| at("connection", e))?)
            }
        };
        let t = self.truncation;
        if t.arity_cap == 0 {
            return Err(Error::invalid("truncation.arity_cap", "must be positive"));
        }
        let dim = n + m;
        let space = model.space(t.nh);
        let pi = read_poly("mc_element", &self.mc_element, &space, dim, t.nh)?;
        if pi.keys().any(|k| k.arity() != 2) {
            return Err(Error::invalid("mc_element", "expected a bivector field"));
        }
        if let Some(k) = pi.keys().find(|k| model.alpha_degree(k) as usize > t.nt) {
            return Err(Error::Capacity(format!(
                "mc_element has α-degree {} above the Taylor truncation nt = {}",
                model.alpha_degree(k),
                t.nt
            )));
        }
        let momentum_perturbation = match &self.momentum_perturbation {
            None => MomentumPerturbation::zero(&model, t.nh),
            Some(comps) => {
                let mut fs = Vec::new();
                for (i, c) in comps.iter().enumerate() {
                    fs.push(read_poly(&format!("momentum_perturbation[{i}]"), c, &space, dim, t.nh)?);
                }
                MomentumPerturbation::new(&model, fs).map_err(|e| at("momentum_perturbation", e))?
            }
        };
        Ok(Fixture {
            name: self.name.clone(),
            model,
            connection,
            pi,
            momentum_perturbation,
            truncation: t,
            probes: self.probes,
        })
    }
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Self> {
        FixtureFile::parse(text)?.validate()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::invalid(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    pub fn to_file(&self) -> FixtureFile {
        let m = &self.model;
        let algebra = m.algebra();
        let structure_constants = algebra
            .entries()
            .into_iter()
            .map(|((i, j, k), v)| StructureConstant { i, j, k, value: format_scalar(&v) })
            .collect();
        FixtureFile {
            schema: SCHEMA,
            name: self.name.clone(),
            lie_algebra: LieAlgebraSpec { dim: algebra.dim(), structure_constants },
            model: ModelSpec { m_red: m.m_red(), n_fiber: m.fiber_dim() },
            action: (0..m.n()).map(|i| write_poly(m.action().field(i))).collect(),
            connection: self
                .connection
                .as_ref()
                .map(|c| c.omega().iter().map(|w| w.comps.iter().map(write_poly).collect()).collect()),
            mc_element: write_poly(&self.pi),
            momentum_perturbation: if self.momentum_perturbation.is_zero() {
                None
            } else {
                Some(self.momentum_perturbation.components().iter().map(write_poly).collect())
            },
            truncation: self.truncation,
            probes: self.probes,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }

    /// Lowers the truncation; raising `nh` beyond the stored data is invalid input.
    pub fn with_truncation(&self, nh: Option<usize>, nt: Option<usize>, arity_cap: Option<usize>) -> Result<Self> {
        let mut out = self.clone();
        if let Some(nh) = nh {
            if nh > self.truncation.nh {
                return Err(Error::invalid(
                    "--nh",
                    format!("the fixture is only known modulo ħ^{}", self.truncation.nh + 1),
                ));
            }
            out.truncation.nh = nh;
            out.pi = self.pi.with_order(nh);
            out.momentum_perturbation = self.momentum_perturbation.with_order(nh);
        }
        if let Some(nt) = nt {
            if let Some(k) = out.pi.keys().find(|k| self.model.alpha_degree(k) as usize > nt) {
                return Err(Error::Capacity(format!(
                    "mc_element has α-degree {} above nt = {nt}",
                    self.model.alpha_degree(k)
                )));
            }
            out.truncation.nt = nt;
        }
        if let Some(cap) = arity_cap {
            if cap == 0 {
                return Err(Error::invalid("--arity-cap", "must be positive"));
            }
            out.truncation.arity_cap = cap;
        }
        Ok(out)
    }
}
