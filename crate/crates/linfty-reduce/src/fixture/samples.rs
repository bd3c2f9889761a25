//! The shipped fixtures, rebuilt from the reference structures in
//! [`crate::equivariant::samples`].

use super::{Fixture, ProbeSpec, TruncationSpec};
use crate::equivariant::samples::{
    affine_connection, gauge_field, gauge_perturbation, lifted_structure, reduced_structure,
};
use crate::equivariant::{ConnectionData, MomentumPerturbation, ProductModel};
use crate::error::{Error, Result};
use crate::poly::PolyMultivector;

pub const NH: usize = 3;
pub const NT: usize = 4;
pub const ARITY_CAP: usize = 4;

/// How a reference model's fixture is assembled.
#[derive(Clone, Debug)]
pub struct SampleModel {
    pub name: &'static str,
    pub model: ProductModel,
    pub connection: Option<ConnectionData>,
    /// `π_red = ∂_u∧∂_v` times the `M_red` coordinate with this index.
    pub scale: Option<usize>,
    /// Gauge by `u·Σα_k∂_{α_k}` instead of `u∂_{α_1}`.
    pub euler: bool,
    /// Multiply `π_red` by `ħ`.
    pub hbar: bool,
}

pub fn models() -> Vec<SampleModel> {
    let t = ProductModel::translation();
    let ct = ConnectionData::coordinate(&t).expect("coordinate connection");
    let a = ProductModel::affine();
    let ca = affine_connection(&a).expect("affine connection");
    vec![
        SampleModel { name: "translation", model: t, connection: Some(ct), scale: None, euler: false, hbar: false },
        SampleModel { name: "affine", model: a, connection: Some(ca), scale: Some(0), euler: false, hbar: true },
        SampleModel {
            name: "so3",
            model: ProductModel::so3_trivial(),
            connection: None,
            scale: Some(1),
            euler: true,
            hbar: false,
        },
    ]
}

pub fn model(name: &str) -> Result<SampleModel> {
    models().into_iter().find(|m| m.name == name).ok_or_else(|| Error::Argument(format!("no sample model {name:?}")))
}

impl SampleModel {
    /// The expected reduced structure modulo `ħ^{order+1}`.
    pub fn reduced(&self, order: usize) -> PolyMultivector {
        let red = reduced_structure(&self.model, self.scale, order);
        if self.hbar {
            red.mul_hbar(1)
        } else {
            red
        }
    }

    /// The classical lift `π_KKS + π_C` of [`Self::reduced`].
    pub fn classical(&self, order: usize) -> Result<PolyMultivector> {
        lifted_structure(&self.model, self.connection.as_ref(), &self.reduced(order), ARITY_CAP)
    }

    /// The gauge-perturbed pair `(π', J')`.
    pub fn perturbed(&self, order: usize) -> Result<(PolyMultivector, MomentumPerturbation)> {
        let pi = self.classical(order)?;
        gauge_perturbation(&self.model, &pi, &gauge_field(&self.model, self.euler, order))
    }

    pub fn fixture(&self, perturbed: bool) -> Result<Fixture> {
        let (name, pi, jp) = if perturbed {
            let (pi, jp) = self.perturbed(NH)?;
            (format!("{}-perturbed", self.name), pi, jp)
        } else {
            (self.name.to_string(), self.classical(NH)?, MomentumPerturbation::zero(&self.model, NH))
        };
        Ok(Fixture {
            name,
            model: self.model.clone(),
            connection: self.connection.clone(),
            pi,
            momentum_perturbation: jp,
            truncation: TruncationSpec { nh: NH, nt: NT, arity_cap: ARITY_CAP },
            probes: ProbeSpec { seed: 7, count: 6 },
        })
    }
}

/// Every shipped fixture as `(file stem, fixture)`.
pub fn all() -> Result<Vec<(String, Fixture)>> {
    let mut out = Vec::new();
    for m in models() {
        for perturbed in [false, true] {
            let f = m.fixture(perturbed)?;
            out.push((f.name.clone(), f));
        }
    }
    Ok(out)
}
