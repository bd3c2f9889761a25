//! The `reduce` and `transfer` operations on a loaded fixture.

use crate::equivariant::{ProbeSampler, ProbeShape};
use crate::error::{Error, Result};
use crate::fixture::Fixture;
use crate::graded::SymElement;
use crate::hpl::KoszulComplex;
use crate::linfty::{check_linfty_morphism, LinftyMorphism};
use crate::poly::{Mono, PolyMultivector};
use crate::report::{format_element, Check, Report, Section};
use crate::retract::{build_inclusion, build_projection};
use crate::suites::Suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Linfty,
    Hpl,
    Both,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub linfty: Option<PolyMultivector>,
    pub hpl: Option<PolyMultivector>,
    /// `linfty − hpl` when both ran.
    pub difference: Option<PolyMultivector>,
}

/// The formal MC residual of the fixture; zero when `(π, J + ħJ')` is a formal
/// Poisson structure with momentum map.
pub fn mc_residual(fx: &Fixture) -> PolyMultivector {
    fx.model.formal_mc_residual(&fx.pi, &fx.momentum_perturbation)
}

/// Runs the requested pipelines; an MC violation is a contract error carrying the residual.
pub fn reduce(fx: &Fixture, pipeline: Pipeline) -> Result<Reduction> {
    let r = mc_residual(fx);
    if !r.is_zero() {
        return Err(Error::Contract(format!("MC residual {}", format_element(&r, &fx.model.names()))));
    }
    let jp = &fx.momentum_perturbation;
    let linfty = match pipeline {
        Pipeline::Linfty | Pipeline::Both => Some(fx.model.reduce_linfty(&fx.pi, jp, fx.truncation.arity_cap)?),
        Pipeline::Hpl => None,
    };
    let hpl = match pipeline {
        Pipeline::Hpl | Pipeline::Both => {
            Some(KoszulComplex::new(&fx.model, fx.truncation.nh).reduced_structure(&fx.pi, jp)?)
        }
        Pipeline::Linfty => None,
    };
    let difference = match (&linfty, &hpl) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    Ok(Reduction { linfty, hpl, difference })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    P,
    I,
}

#[derive(Clone, Debug)]
pub struct Transfer {
    /// `(probe word, value of the order-k component)`.
    pub values: Vec<(Vec<PolyMultivector>, PolyMultivector)>,
    pub verdict: Check,
}

fn evaluate(
    f: &LinftyMorphism<Mono, Mono>,
    k: usize,
    probes: &[Vec<PolyMultivector>],
) -> Result<Vec<(Vec<PolyMultivector>, PolyMultivector)>> {
    probes
        .iter()
        .map(|t| {
            let refs: Vec<&PolyMultivector> = t.iter().collect();
            Ok((t.clone(), f.component_on(k, &SymElement::product_of(&refs, 0))?))
        })
        .collect()
}

/// Evaluates `P_k` (Taylor to Cartan) or `I_k` (`T_poly(M_red)` to Cartan) on the
/// fixture's probe words and checks the order-`k` morphism equation on them.
pub fn transfer(fx: &Fixture, direction: Direction, k: usize) -> Result<Transfer> {
    let (m, cap) = (&fx.model, fx.truncation.arity_cap);
    if k == 0 {
        return Err(Error::invalid("--order", "must be at least 1"));
    }
    if k > cap {
        return Err(Error::Capacity(format!("order {k} exceeds the arity cap {cap}")));
    }
    let mut s = ProbeSampler::new(fx.probes.seed);
    let count = fx.probes.count.max(1);
    let (values, check, name) = match direction {
        Direction::P => {
            let r = m.j_retract(0, cap);
            let p = build_projection(&r, cap)?;
            let probes = s.tuples(m, &ProbeShape { max_c_arity: 1, ..ProbeShape::taylor() }, k, count, 0);
            (evaluate(&p, k, &probes)?, check_linfty_morphism(&p, &r.b, &r.a, k, &probes)?, "P")
        }
        Direction::I => {
            let conn =
                fx.connection.as_ref().ok_or_else(|| Error::invalid("connection", "required for --direction I"))?;
            let r = m.cartan_retract(conn, 0, cap);
            let inc = build_inclusion(&r, cap)?;
            let probes = s.tuples(m, &ProbeShape::reduced(), k, count, 0);
            (evaluate(&inc, k, &probes)?, check_linfty_morphism(&inc, &r.a, &r.b, k, &probes)?, "I")
        }
    };
    let verdict =
        Check { name: format!("{name} is L-infinity at order {k}"), passed: check.passed, witness: check.witness };
    Ok(Transfer { values, verdict })
}

/// `check`: the named suite's checks.
pub fn check_report(fx: &Fixture, suite: Suite) -> Result<Report> {
    let checks = suite.run(fx)?;
    Ok(Report::new(
        "check",
        &fx.name,
        checks,
        vec![Section { title: "suite".into(), lines: vec![suite.name().into()] }],
    ))
}

/// `reduce`: the reduced structure from each pipeline and their difference. A
/// non-MC fixture yields a failed report carrying the residual.
pub fn reduce_report(fx: &Fixture, pipeline: Pipeline) -> Result<Report> {
    let names = fx.model.names();
    let residual = mc_residual(fx);
    if !residual.is_zero() {
        let fail = Check::fail("MC equation", format_element(&residual, &names));
        return Ok(Report::new("reduce", &fx.name, vec![fail], vec![]));
    }
    let r = reduce(fx, pipeline)?;
    let mut checks = vec![Check::pass("MC equation")];
    let mut sections = Vec::new();
    if let Some(x) = &r.linfty {
        sections.push(Section::element("linfty", x, &names));
    }
    if let Some(x) = &r.hpl {
        sections.push(Section::element("hpl", x, &names));
    }
    if let Some(d) = &r.difference {
        checks.push(Check::zero(format!("linfty - hpl = 0 mod ħ^{}", fx.truncation.nh + 1), d, &names));
        sections.push(Section::element("difference", d, &names));
    }
    Ok(Report::new("reduce", &fx.name, checks, sections))
}

/// `transfer`: the order-`k` component on the probe words and its morphism check.
pub fn transfer_report(fx: &Fixture, direction: Direction, k: usize) -> Result<Report> {
    let names = fx.model.names();
    let t = transfer(fx, direction, k)?;
    let lines = t
        .values
        .iter()
        .map(|(w, v)| {
            let args: Vec<String> = w.iter().map(|x| format_element(x, &names)).collect();
            format!("[{}] -> {}", args.join("; "), format_element(v, &names))
        })
        .collect();
    let title = format!("{}_{k}", if direction == Direction::P { "P" } else { "I" });
    Ok(Report::new("transfer", &fx.name, vec![t.verdict], vec![Section { title, lines }]))
}
